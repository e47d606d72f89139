//! Command-line front end: phantom generation, binary and nonbinary
//! descriptions, feature extraction, feature correlation, and ranking
//! evaluation. All outputs are CSV (and optional PPM heat maps) and are
//! byte-identical for identical inputs, flags and seed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypoquant::csvfmt::{escape, read_ranking, sig, write_csv};
use hypoquant::heatmap::save_heatmap;
use hypoquant::manifest::{write_phantom, Dataset};
use hypoquant::pipeline::{
    average_matrices, band_features, binary_description, correlate_features, normalized_rois,
    sampled_rows, scalar_features, AnalysisConfig, BinaryDescription, CorrelationBlock,
    NonbinaryDescription, ThresholdMode,
};
use hypoquant::{pipeline, Error};
use hypoquant_core::eigen::{fit_pca, project};
use hypoquant_core::phantom::{generate, PhantomSpec};
use hypoquant_core::stats::{accuracy, rank_to_clusters};
use hypoquant_core::{Feature, Hemisphere, Rect, SamplingMethod};

#[derive(Parser)]
#[command(
    name = "hypoquant",
    version,
    about = "Quantifies ROI darkness in grayscale datasets with binary and eigen descriptors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset with planted darkness and ground truth.
    Phantom(PhantomArgs),
    /// Per-subject hypointensity loads and the light-to-dark ranking.
    Binary(DescribeArgs),
    /// Eigen projections and distances to the darkest reference subject.
    Nonbinary(DescribeArgs),
    /// Per-subject binary band features and eigen component features.
    Features(FeaturesArgs),
    /// Correlation heat maps between binary and nonbinary features.
    Correlate(CorrelateArgs),
    /// Score a ranking CSV against a labeled manifest.
    Evaluate(EvaluateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum HemisphereArg {
    Left,
    Right,
    Whole,
}

impl From<HemisphereArg> for Hemisphere {
    fn from(value: HemisphereArg) -> Self {
        match value {
            HemisphereArg::Left => Hemisphere::Left,
            HemisphereArg::Right => Hemisphere::Right,
            HemisphereArg::Whole => Hemisphere::Whole,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplingArg {
    Shuffle,
    Balanced,
}

impl From<SamplingArg> for SamplingMethod {
    fn from(value: SamplingArg) -> Self {
        match value {
            SamplingArg::Shuffle => SamplingMethod::Shuffle,
            SamplingArg::Balanced => SamplingMethod::Balanced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdArg {
    Reference,
    Adaptive,
}

#[derive(Args)]
struct CommonArgs {
    /// Dataset manifest (JSON).
    #[arg(long)]
    manifest: PathBuf,
    /// Which hemisphere mask to analyze.
    #[arg(long, value_enum, default_value = "whole")]
    hemisphere: HemisphereArg,
    /// How variable-size ROIs are reduced to a common length.
    #[arg(long, value_enum, default_value = "balanced")]
    sampling: SamplingArg,
    /// Base sampling seed; HYPOQUANT_SEED overrides the default.
    #[arg(long)]
    seed: Option<u64>,
    /// Fraction of total variance the eigen description retains.
    #[arg(long, default_value_t = 0.70)]
    variance_fraction: f64,
    /// Threshold source for the binary description.
    #[arg(long, value_enum, default_value = "adaptive")]
    threshold: ThresholdArg,
    /// Reference rectangle "row,col,rows,cols" (reference threshold only).
    #[arg(long, value_parser = parse_rect)]
    rect: Option<Rect>,
    /// Candidate count for the adaptive threshold sweep.
    #[arg(long, default_value_t = 101)]
    k: usize,
    /// Relative-normalize ROI rows before the eigen fit.
    #[arg(long, default_value_t = false)]
    row_normalize: bool,
    /// Worker threads for per-subject stages.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct DescribeArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FeaturesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of radial bands per hemisphere tessellation.
    #[arg(long, default_value_t = 10)]
    tessellation: usize,
}

#[derive(Args)]
struct CorrelateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Single tessellation size for per-band scalar features.
    #[arg(long, default_value_t = 10)]
    tessellation: usize,
    /// Description sizes for the multi-tessellation mode, e.g. "3,4,10".
    /// When set, features become whole descriptions of these sizes.
    #[arg(long, value_delimiter = ',')]
    tessellations: Vec<usize>,
    /// Which descriptor families to correlate.
    #[arg(long, value_delimiter = ',', default_value = "binary,nonbinary")]
    features: Vec<String>,
    /// Sampling seeds to average the matrices over (shuffle sampling).
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    /// Also render each matrix as a PPM heat map.
    #[arg(long, default_value_t = false)]
    ppm: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Ranking CSV (rank,id) to score, light to dark.
    #[arg(long)]
    predicted: PathBuf,
    /// Manifest with ground-truth labels for every subject.
    #[arg(long)]
    truth: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct PhantomArgs {
    /// Output directory for the dataset tree.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 30)]
    subjects: usize,
    #[arg(long, default_value_t = 64)]
    width: usize,
    #[arg(long, default_value_t = 64)]
    height: usize,
    /// Background tissue intensity inside the brain disc.
    #[arg(long, default_value_t = 200.0)]
    base: f64,
    /// Intensity drop of the planted dark blob.
    #[arg(long, default_value_t = 60.0)]
    delta: f64,
    /// Gaussian noise sigma.
    #[arg(long, default_value_t = 6.0)]
    noise_sigma: f64,
    /// Largest planted hypointense fraction; fractions are evenly spaced
    /// from 0 to this value.
    #[arg(long, default_value_t = 0.6)]
    max_fraction: f64,
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_rect(text: &str) -> Result<Rect, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err("expected row,col,rows,cols".into());
    }
    let mut numbers = [0usize; 4];
    for (slot, part) in numbers.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad rectangle component {part:?}: {e}"))?;
    }
    Ok(Rect::new(numbers[0], numbers[1], numbers[2], numbers[3]))
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("HYPOQUANT_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(42)
}

enum RunError {
    Usage(String),
    Data(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Data(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(1)
        }
        Err(RunError::Data(error)) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Phantom(args) => run_phantom(args),
        Command::Binary(args) => run_binary(args),
        Command::Nonbinary(args) => run_nonbinary(args),
        Command::Features(args) => run_features(args),
        Command::Correlate(args) => run_correlate(args),
        Command::Evaluate(args) => run_evaluate(args),
    }
}

fn config_from(common: &CommonArgs, tessellation: usize) -> Result<AnalysisConfig, RunError> {
    let threshold = match common.threshold {
        ThresholdArg::Adaptive => {
            if common.k < 2 {
                return Err(RunError::Usage("--k must be at least 2".into()));
            }
            ThresholdMode::Adaptive {
                candidates: common.k,
            }
        }
        ThresholdArg::Reference => match common.rect {
            Some(rect) => ThresholdMode::Reference(rect),
            None => {
                return Err(RunError::Usage(
                    "--threshold reference needs --rect row,col,rows,cols".into(),
                ))
            }
        },
    };
    if !(common.variance_fraction > 0.0 && common.variance_fraction <= 1.0) {
        return Err(RunError::Usage(
            "--variance-fraction must be in (0, 1]".into(),
        ));
    }
    if tessellation == 0 {
        return Err(RunError::Usage("--tessellation must be at least 1".into()));
    }
    Ok(AnalysisConfig {
        hemisphere: common.hemisphere.into(),
        sampling: common.sampling.into(),
        seed: resolve_seed(common.seed),
        variance_fraction: common.variance_fraction,
        threshold,
        tessellation,
        threads: common.threads.max(1),
        row_normalize: common.row_normalize,
    })
}

fn ensure_out_dir(path: &Path) -> Result<(), RunError> {
    std::fs::create_dir_all(path).map_err(|e| RunError::Data(Error::io(path, e)))
}

fn run_phantom(args: PhantomArgs) -> Result<(), RunError> {
    let spec = PhantomSpec::standard(
        args.subjects,
        args.width,
        args.height,
        args.base,
        args.delta,
        args.noise_sigma,
        args.max_fraction,
        resolve_seed(args.seed),
    );
    let dataset = generate(&spec).map_err(Error::Core)?;
    ensure_out_dir(&args.out)?;
    let manifest = write_phantom(&dataset, &args.out)?;
    println!("wrote {}", manifest.display());
    println!("wrote {}", args.out.join("planted_ranking.csv").display());
    println!("wrote {}", args.out.join("planted_clusters.csv").display());
    Ok(())
}

fn write_hypoload_csv(
    dir: &Path,
    dataset: &Dataset,
    binary: &BinaryDescription,
) -> Result<(), Error> {
    let header = vec![
        "id".to_string(),
        "threshold".to_string(),
        "hypo_count".to_string(),
        "total".to_string(),
        "hypo_load".to_string(),
    ];
    let rows: Vec<Vec<String>> = dataset
        .subjects
        .iter()
        .zip(&binary.loads)
        .map(|(subject, load)| {
            vec![
                escape(&subject.id),
                sig(load.threshold),
                load.hypo_count.to_string(),
                load.total.to_string(),
                sig(load.load),
            ]
        })
        .collect();
    write_csv(&dir.join("hypoload.csv"), &header, &rows)
}

fn write_ranking_csv(path: &Path, ranking: &hypoquant_core::Ranking) -> Result<(), Error> {
    let header = vec!["rank".to_string(), "id".to_string()];
    let rows: Vec<Vec<String>> = ranking
        .ids()
        .iter()
        .enumerate()
        .map(|(i, id)| vec![(i + 1).to_string(), escape(id)])
        .collect();
    write_csv(path, &header, &rows)
}

fn write_threshold_report(
    dir: &Path,
    report: &hypoquant_core::ThresholdReport,
) -> Result<(), Error> {
    let header = vec![
        "threshold".to_string(),
        "tpr".to_string(),
        "fpr".to_string(),
        "selected".to_string(),
    ];
    let rows: Vec<Vec<String>> = report
        .candidates
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                sig(c.threshold),
                sig(c.tpr),
                sig(c.fpr),
                if i == report.chosen_index { "1" } else { "0" }.to_string(),
            ]
        })
        .collect();
    write_csv(&dir.join("threshold_report.csv"), &header, &rows)
}

fn run_binary(args: DescribeArgs) -> Result<(), RunError> {
    let config = config_from(&args.common, 10)?;
    let dataset = Dataset::load(&args.common.manifest)?;
    let rois = normalized_rois(&dataset, config.hemisphere, config.threads)?;
    let binary = binary_description(&dataset, &rois, &config)?;
    ensure_out_dir(&args.common.out)?;
    write_hypoload_csv(&args.common.out, &dataset, &binary)?;
    println!("wrote {}", args.common.out.join("hypoload.csv").display());
    write_ranking_csv(&args.common.out.join("ranking.csv"), &binary.ranking)?;
    println!("wrote {}", args.common.out.join("ranking.csv").display());
    if let Some(report) = &binary.report {
        write_threshold_report(&args.common.out, report)?;
        println!(
            "wrote {}",
            args.common.out.join("threshold_report.csv").display()
        );
    }
    Ok(())
}

fn write_projection_csvs(
    dir: &Path,
    dataset: &Dataset,
    nonbinary: &NonbinaryDescription,
) -> Result<(), Error> {
    let retained = nonbinary.model.retained();
    let mut header = vec!["id".to_string()];
    header.extend((1..=retained).map(|i| format!("g{i}")));
    let rows: Vec<Vec<String>> = dataset
        .subjects
        .iter()
        .zip(&nonbinary.projections)
        .map(|(subject, p)| {
            let mut row = vec![escape(&subject.id)];
            row.extend(p.coefficients.iter().map(|&g| sig(g)));
            row
        })
        .collect();
    write_csv(&dir.join("projections.csv"), &header, &rows)?;

    let rank_of: std::collections::BTreeMap<&str, usize> = nonbinary
        .result
        .ranking
        .ids()
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i + 1))
        .collect();
    let header = vec!["id".to_string(), "distance".to_string(), "rank".to_string()];
    let rows: Vec<Vec<String>> = nonbinary
        .result
        .distances
        .iter()
        .map(|(id, d)| vec![escape(id), sig(*d), rank_of[id.as_str()].to_string()])
        .collect();
    write_csv(&dir.join("distances.csv"), &header, &rows)
}

fn run_nonbinary(args: DescribeArgs) -> Result<(), RunError> {
    let config = config_from(&args.common, 10)?;
    let dataset = Dataset::load(&args.common.manifest)?;
    let rois = normalized_rois(&dataset, config.hemisphere, config.threads)?;
    let binary = binary_description(&dataset, &rois, &config)?;
    let nonbinary = pipeline::nonbinary_description(&dataset, &rois, &binary, &config)?;
    ensure_out_dir(&args.common.out)?;
    write_projection_csvs(&args.common.out, &dataset, &nonbinary)?;
    println!(
        "wrote {}",
        args.common.out.join("projections.csv").display()
    );
    println!("wrote {}", args.common.out.join("distances.csv").display());
    write_ranking_csv(
        &args.common.out.join("ranking.csv"),
        &nonbinary.result.ranking,
    )?;
    println!("wrote {}", args.common.out.join("ranking.csv").display());
    println!("reference subject: {}", nonbinary.result.reference_id);
    Ok(())
}

fn run_features(args: FeaturesArgs) -> Result<(), RunError> {
    let config = config_from(&args.common, args.tessellation)?;
    let dataset = Dataset::load(&args.common.manifest)?;
    let rois = normalized_rois(&dataset, config.hemisphere, config.threads)?;
    let binary = binary_description(&dataset, &rois, &config)?;
    let bands = band_features(
        &dataset,
        &binary,
        config.hemisphere,
        config.tessellation,
        config.threads,
    )?;
    let nonbinary = pipeline::nonbinary_description(&dataset, &rois, &binary, &config)?;
    ensure_out_dir(&args.common.out)?;

    let mut header = vec![
        "id".to_string(),
        "threshold".to_string(),
        "hypo_load".to_string(),
    ];
    header.extend((1..=config.tessellation).map(|i| format!("f{i}")));
    let rows: Vec<Vec<String>> = dataset
        .subjects
        .iter()
        .zip(&binary.loads)
        .zip(&bands)
        .map(|((subject, load), features)| {
            let mut row = vec![escape(&subject.id), sig(load.threshold), sig(load.load)];
            row.extend(features.iter().map(|&f| sig(f)));
            row
        })
        .collect();
    write_csv(&args.common.out.join("binary_features.csv"), &header, &rows)?;
    println!(
        "wrote {}",
        args.common.out.join("binary_features.csv").display()
    );

    let retained = nonbinary.model.retained();
    let mut header = vec!["id".to_string()];
    header.extend((1..=retained).map(|i| format!("g{i}")));
    let rows: Vec<Vec<String>> = dataset
        .subjects
        .iter()
        .zip(&nonbinary.projections)
        .map(|(subject, p)| {
            let mut row = vec![escape(&subject.id)];
            row.extend(p.features().iter().map(|&g| sig(g)));
            row
        })
        .collect();
    write_csv(
        &args.common.out.join("nonbinary_features.csv"),
        &header,
        &rows,
    )?;
    println!(
        "wrote {}",
        args.common.out.join("nonbinary_features.csv").display()
    );
    Ok(())
}

/// Builds description-level features (one multi-dimensional vector per
/// subject and description size) for the multi-tessellation mode.
fn description_features(
    dataset: &Dataset,
    rois: &[hypoquant_core::RoiIntensities],
    binary: &BinaryDescription,
    config: &AnalysisConfig,
    sizes: &[usize],
    seed: u64,
) -> Result<(Vec<Feature>, Vec<Feature>), RunError> {
    let mut binary_descriptions = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let bands = band_features(dataset, binary, config.hemisphere, size, config.threads)?;
        binary_descriptions.push(Feature {
            label: format!("bin{size}"),
            values: bands,
        });
    }

    let mut run_config = config.clone();
    run_config.seed = seed;
    let rows = sampled_rows(dataset, rois, &run_config)?;
    let mut model = fit_pca(&rows).map_err(Error::Core)?;
    if model.is_degenerate() {
        return Err(RunError::Data(Error::Data(
            "all ROI rows are identical; eigen description is undefined".into(),
        )));
    }
    let available = model.eigenvalues().len();
    let largest = sizes.iter().copied().max().unwrap_or(0);
    if largest > available {
        return Err(RunError::Data(Error::Data(format!(
            "description size {largest} exceeds the {available} nonzero components"
        ))));
    }
    model.retain_fraction(1.0).map_err(Error::Core)?;
    let projections: Vec<_> = rows
        .iter()
        .map(|row| project(&model, row))
        .collect::<Result<_, _>>()
        .map_err(Error::Core)?;
    let mut nonbinary_descriptions = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let values: Vec<Vec<f64>> = projections
            .iter()
            .map(|p| p.coefficients[..size].to_vec())
            .collect();
        nonbinary_descriptions.push(Feature {
            label: format!("eig{size}"),
            values,
        });
    }
    Ok((binary_descriptions, nonbinary_descriptions))
}

fn run_correlate(args: CorrelateArgs) -> Result<(), RunError> {
    let config = config_from(&args.common, args.tessellation)?;
    let want_binary = args.features.iter().any(|f| f == "binary");
    let want_nonbinary = args.features.iter().any(|f| f == "nonbinary");
    if let Some(unknown) = args
        .features
        .iter()
        .find(|f| *f != "binary" && *f != "nonbinary")
    {
        return Err(RunError::Usage(format!(
            "unknown feature family {unknown:?} (expected binary and/or nonbinary)"
        )));
    }
    if !want_binary && !want_nonbinary {
        return Err(RunError::Usage("--features selects nothing".into()));
    }
    if args.tessellations.contains(&0) {
        return Err(RunError::Usage(
            "--tessellations sizes must be at least 1".into(),
        ));
    }

    let dataset = Dataset::load(&args.common.manifest)?;
    let rois = normalized_rois(&dataset, config.hemisphere, config.threads)?;
    let binary = binary_description(&dataset, &rois, &config)?;
    let seeds = if args.seeds.is_empty() {
        vec![config.seed]
    } else {
        args.seeds.clone()
    };

    let mut blocks: Vec<CorrelationBlock> = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let (binary_features, nonbinary_features) = if args.tessellations.is_empty() {
            let bands = band_features(
                &dataset,
                &binary,
                config.hemisphere,
                config.tessellation,
                config.threads,
            )?;
            let mut run_config = config.clone();
            run_config.seed = seed;
            let nonbinary = pipeline::nonbinary_description(&dataset, &rois, &binary, &run_config)?;
            scalar_features(&bands, &nonbinary.projections)
        } else {
            description_features(&dataset, &rois, &binary, &config, &args.tessellations, seed)?
        };
        let block = correlate_features(
            want_binary.then_some(binary_features.as_slice()),
            want_nonbinary.then_some(nonbinary_features.as_slice()),
        )?;
        blocks.push(block);
    }

    ensure_out_dir(&args.common.out)?;
    let write_block = |name: &str,
                       pick: &dyn Fn(&CorrelationBlock) -> Option<&hypoquant_core::CorrMatrix>|
     -> Result<(), RunError> {
        let matrices: Vec<hypoquant_core::CorrMatrix> =
            blocks.iter().filter_map(|b| pick(b).cloned()).collect();
        if matrices.is_empty() {
            return Ok(());
        }
        let averaged = average_matrices(&matrices)?;
        let path = args.common.out.join(format!("{name}.csv"));
        write_corr_csv(&path, &averaged)?;
        println!("wrote {}", path.display());
        if args.ppm {
            let ppm = args.common.out.join(format!("{name}.ppm"));
            save_heatmap(&averaged, &ppm)?;
            println!("wrote {}", ppm.display());
        }
        Ok(())
    };
    write_block("binary_binary", &|b| b.binary_binary.as_ref())?;
    write_block("nonbinary_nonbinary", &|b| b.nonbinary_nonbinary.as_ref())?;
    write_block("binary_nonbinary", &|b| b.binary_nonbinary.as_ref())?;
    Ok(())
}

fn write_corr_csv(path: &Path, matrix: &hypoquant_core::CorrMatrix) -> Result<(), Error> {
    let mut header = vec!["feature".to_string()];
    header.extend(matrix.col_labels.iter().map(|l| escape(l)));
    let rows: Vec<Vec<String>> = matrix
        .row_labels
        .iter()
        .zip(&matrix.values)
        .map(|(label, row)| {
            let mut cells = vec![escape(label)];
            cells.extend(row.iter().map(|v| match v {
                Some(v) => sig(*v),
                None => "nan".to_string(),
            }));
            cells
        })
        .collect();
    write_csv(path, &header, &rows)
}

fn run_evaluate(args: EvaluateArgs) -> Result<(), RunError> {
    let dataset = Dataset::load(&args.truth)?;
    let truth = dataset.ground_truth().ok_or_else(|| {
        RunError::Data(Error::Data(
            "evaluation needs a label for every subject in the manifest".into(),
        ))
    })?;
    let ranking = read_ranking(&args.predicted)?;
    let sizes = dataset
        .cluster_sizes()
        .expect("labels checked above")
        .ordered_sizes();
    let predicted = rank_to_clusters(&ranking, &sizes).map_err(Error::Core)?;
    let report = accuracy(&predicted, &truth).map_err(Error::Core)?;

    ensure_out_dir(&args.out)?;
    let header = vec![
        "cluster".to_string(),
        "common".to_string(),
        "total".to_string(),
        "ratio".to_string(),
    ];
    let mut rows: Vec<Vec<String>> = report
        .per_cluster
        .iter()
        .map(|&(cluster, common, total)| {
            vec![
                cluster.as_str().to_string(),
                common.to_string(),
                total.to_string(),
                sig(common as f64 / total as f64),
            ]
        })
        .collect();
    rows.push(vec![
        "overall".to_string(),
        String::new(),
        String::new(),
        sig(report.accuracy),
    ]);
    let path = args.out.join("evaluation.csv");
    write_csv(&path, &header, &rows)?;
    println!("wrote {}", path.display());
    for &(cluster, common, total) in &report.per_cluster {
        println!("{}: {common} of {total} in common", cluster.as_str());
    }
    println!("accuracy: {}", sig(report.accuracy));
    Ok(())
}

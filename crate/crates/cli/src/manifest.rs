//! JSON dataset manifests and on-disk dataset trees.
//!
//! A manifest lists subjects with paths (relative to the manifest file) to a
//! PGM image and one mask per hemisphere, plus an optional ground-truth
//! cluster label:
//!
//! ```json
//! {"subjects": [{"id": "s01", "image": "images/s01.pgm",
//!                "roi_left": "masks/s01_left.pgm",
//!                "roi_right": "masks/s01_right.pgm",
//!                "label": "dark"}]}
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use hypoquant_core::phantom::PhantomDataset;
use hypoquant_core::{Cluster, ClusterCount, Clustering, GrayImage, Hemisphere, RoiMask};

use crate::csvfmt;
use crate::error::{Error, Result};
use crate::pnm::{load_mask, load_pgm, save_pgm};

#[derive(Debug, Serialize, Deserialize)]
struct ManifestDoc {
    subjects: Vec<ManifestSubject>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestSubject {
    id: String,
    image: String,
    roi_left: String,
    roi_right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// One loaded subject: image, hemisphere masks and their union.
#[derive(Debug, Clone)]
pub struct Subject {
    pub id: String,
    pub image: GrayImage,
    pub left: RoiMask,
    pub right: RoiMask,
    pub whole: RoiMask,
    pub label: Option<Cluster>,
}

impl Subject {
    pub fn mask(&self, hemisphere: Hemisphere) -> &RoiMask {
        match hemisphere {
            Hemisphere::Left => &self.left,
            Hemisphere::Right => &self.right,
            Hemisphere::Whole => &self.whole,
        }
    }
}

/// Subjects in manifest order.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub subjects: Vec<Subject>,
}

impl Dataset {
    /// Loads and validates every file a manifest references.
    pub fn load(manifest_path: &Path) -> Result<Dataset> {
        let text = fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
        let doc: ManifestDoc = serde_json::from_str(&text).map_err(|e| Error::Manifest {
            path: manifest_path.to_path_buf(),
            reason: e.to_string(),
        })?;
        if doc.subjects.is_empty() {
            return Err(Error::Manifest {
                path: manifest_path.to_path_buf(),
                reason: "manifest lists no subjects".into(),
            });
        }
        let base = manifest_path.parent().unwrap_or(Path::new("."));
        let mut seen = BTreeSet::new();
        let mut subjects = Vec::with_capacity(doc.subjects.len());
        for entry in &doc.subjects {
            if entry.id.is_empty() {
                return Err(Error::Manifest {
                    path: manifest_path.to_path_buf(),
                    reason: "subject with empty id".into(),
                });
            }
            if !seen.insert(entry.id.clone()) {
                return Err(Error::Manifest {
                    path: manifest_path.to_path_buf(),
                    reason: format!("duplicate subject id {}", entry.id),
                });
            }
            let wrap = Error::for_subject(&entry.id);
            let subject = (|| -> Result<Subject> {
                let image = load_pgm(&base.join(&entry.image))?;
                let left = load_mask(&base.join(&entry.roi_left), &image, Hemisphere::Left)?;
                let right = load_mask(&base.join(&entry.roi_right), &image, Hemisphere::Right)?;
                let whole = left.union(&right)?;
                let label = match &entry.label {
                    None => None,
                    Some(text) => Some(Cluster::parse(text).ok_or_else(|| {
                        Error::Data(format!(
                            "invalid label {text:?} (expected light, mid or dark)"
                        ))
                    })?),
                };
                Ok(Subject {
                    id: entry.id.clone(),
                    image,
                    left,
                    right,
                    whole,
                    label,
                })
            })()
            .map_err(wrap)?;
            subjects.push(subject);
        }
        Ok(Dataset { subjects })
    }

    pub fn len(&self) -> usize {
        self.subjects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subjects.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.subjects.iter().map(|s| s.id.clone()).collect()
    }

    /// Labels in dataset order, present only when every subject is labeled.
    pub fn labels(&self) -> Option<Vec<Cluster>> {
        self.subjects.iter().map(|s| s.label).collect()
    }

    /// Cluster sizes, defined only when every subject is labeled.
    pub fn cluster_sizes(&self) -> Option<ClusterCount> {
        self.labels().map(|labels| ClusterCount::tally(&labels))
    }

    /// Ground-truth clustering, when fully labeled.
    pub fn ground_truth(&self) -> Option<Clustering> {
        let labels = self.labels()?;
        Clustering::from_pairs(
            self.subjects
                .iter()
                .zip(labels)
                .map(|(s, label)| (s.id.clone(), label)),
        )
        .ok()
    }
}

/// Writes a generated phantom dataset as a manifest + PGM tree consumable by
/// `Dataset::load`, together with the planted ranking and clusters as CSV.
/// Returns the manifest path.
pub fn write_phantom(dataset: &PhantomDataset, out_dir: &Path) -> Result<PathBuf> {
    let images = out_dir.join("images");
    let masks = out_dir.join("masks");
    fs::create_dir_all(&images).map_err(|e| Error::io(&images, e))?;
    fs::create_dir_all(&masks).map_err(|e| Error::io(&masks, e))?;

    let mask_image = |mask: &RoiMask| -> GrayImage {
        let mut pixels = vec![0.0; mask.width() * mask.height()];
        for &(r, c) in mask.members() {
            pixels[r * mask.width() + c] = 255.0;
        }
        GrayImage::new(mask.width(), mask.height(), pixels).expect("valid mask image")
    };

    let mut entries = Vec::with_capacity(dataset.subjects.len());
    for subject in &dataset.subjects {
        let image_rel = format!("images/{}.pgm", subject.id);
        let left_rel = format!("masks/{}_left.pgm", subject.id);
        let right_rel = format!("masks/{}_right.pgm", subject.id);
        save_pgm(&subject.image, &out_dir.join(&image_rel))?;
        save_pgm(&mask_image(&subject.left), &out_dir.join(&left_rel))?;
        save_pgm(&mask_image(&subject.right), &out_dir.join(&right_rel))?;
        entries.push(ManifestSubject {
            id: subject.id.clone(),
            image: image_rel,
            roi_left: left_rel,
            roi_right: right_rel,
            label: Some(subject.label.as_str().to_string()),
        });
    }
    let manifest_path = out_dir.join("manifest.json");
    let doc = ManifestDoc { subjects: entries };
    let json = serde_json::to_string_pretty(&doc).expect("manifest serializes");
    fs::write(&manifest_path, json + "\n").map_err(|e| Error::io(&manifest_path, e))?;

    let ranking_rows: Vec<Vec<String>> = dataset
        .planted_ranking
        .ids()
        .iter()
        .enumerate()
        .map(|(i, id)| vec![(i + 1).to_string(), csvfmt::escape(id)])
        .collect();
    csvfmt::write_csv(
        &out_dir.join("planted_ranking.csv"),
        &["rank".to_string(), "id".to_string()],
        &ranking_rows,
    )?;

    let cluster_rows: Vec<Vec<String>> = dataset
        .planted_clusters
        .iter()
        .map(|(id, cluster)| vec![csvfmt::escape(id), cluster.as_str().to_string()])
        .collect();
    csvfmt::write_csv(
        &out_dir.join("planted_clusters.csv"),
        &["id".to_string(), "cluster".to_string()],
        &cluster_rows,
    )?;

    Ok(manifest_path)
}

//! On-disk formats: snapshot directories, manifests, and atomic writes.
//!
//! A snapshot directory holds one `snapshot_<l>.edges` file per level with
//! directed `u v l` records, plus `manifest.json`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::RewireConfig;
use crate::snapshot::{RelationalEdgeSet, SnapshotSequence};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Provenance block shared by every command's manifest.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub command: String,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub input_digests: BTreeMap<String, String>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub level: usize,
    pub directed_added: usize,
    pub undirected_added: usize,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotManifest {
    pub n: usize,
    pub m: usize,
    pub config: RewireConfig,
    pub rewiring_enabled: bool,
    pub levels: Vec<LevelEntry>,
    #[serde(flatten)]
    pub run: Option<RunInfo>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn level_file_name(level: usize) -> String {
    format!("snapshot_{level}.edges")
}

/// Directed `u v l` records of one level.
pub fn format_level(set: &RelationalEdgeSet) -> String {
    let mut out = String::new();
    for (v, u) in set.directed_records() {
        let _ = writeln!(out, "{v} {u} {}", set.level());
    }
    out
}

fn parse_level(text: &str, level: usize, n: usize) -> Result<RelationalEdgeSet> {
    let mut targets = vec![Vec::new(); n];
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::InvalidToken {
                    line: idx + 1,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let [v, u, l] = nums[..] else {
            return Err(Error::MalformedLine {
                line: idx + 1,
                found: nums.len(),
            });
        };
        if l != level {
            return Err(Error::Snapshot(format!(
                "record tagged level {l} in the level {level} file"
            )));
        }
        if v >= n || u >= n {
            return Err(Error::NodeOutOfRange { node: v.max(u), n });
        }
        targets[v].push(u as u32);
    }
    RelationalEdgeSet::new(level, targets)
}

pub fn manifest_for(seq: &SnapshotSequence, run: Option<RunInfo>) -> SnapshotManifest {
    SnapshotManifest {
        n: seq.base().node_count(),
        m: seq.base().edge_count(),
        config: seq.config().clone(),
        rewiring_enabled: seq.num_levels() > 0,
        levels: seq
            .levels()
            .iter()
            .map(|set| LevelEntry {
                level: set.level(),
                directed_added: set.directed_count(),
                undirected_added: set.undirected_count(),
                file: level_file_name(set.level()),
            })
            .collect(),
        run,
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `bytes` to `path` through a temporary sibling file, so a failed
/// write never leaves a partial file behind.
pub fn write_file_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = parent_dir(path);
    let mut tmp = tempfile::NamedTempFile::new_in(&parent)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Fills a fresh temporary directory with `fill` and moves it to `dir`,
/// replacing any previous contents. On error nothing is left at `dir`'s
/// temporary location.
pub fn write_dir_atomic<F>(dir: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&Path) -> Result<()>,
{
    let parent = parent_dir(dir);
    fs::create_dir_all(&parent)?;
    let tmp = tempfile::Builder::new()
        .prefix(".laser-tmp-")
        .tempdir_in(&parent)?;
    fill(tmp.path())?;
    if dir.exists() {
        fs::remove_dir_all(dir)?;
    }
    let staged = tmp.keep();
    fs::rename(&staged, dir)?;
    Ok(())
}

fn parent_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Writes level files and the manifest into `dir`.
pub fn write_snapshot_dir(seq: &SnapshotSequence, dir: &Path, run: Option<RunInfo>) -> Result<()> {
    let manifest = manifest_for(seq, run);
    write_dir_atomic(dir, |tmp| {
        for set in seq.levels() {
            fs::write(tmp.join(level_file_name(set.level())), format_level(set))?;
        }
        fs::write(tmp.join(MANIFEST_FILE), to_json_pretty(&manifest)?)?;
        Ok(())
    })
}

pub fn read_manifest(dir: &Path) -> Result<SnapshotManifest> {
    let text = fs::read_to_string(dir.join(MANIFEST_FILE))?;
    Ok(serde_json::from_str(&text)?)
}

/// Rebuilds a sequence from a snapshot directory written for `base`.
pub fn read_snapshot_dir(dir: &Path, base: &Graph) -> Result<SnapshotSequence> {
    let manifest = read_manifest(dir)?;
    if manifest.n != base.node_count() || manifest.m != base.edge_count() {
        return Err(Error::Snapshot(format!(
            "manifest describes n={} m={}, graph has n={} m={}",
            manifest.n,
            manifest.m,
            base.node_count(),
            base.edge_count()
        )));
    }
    let levels = manifest
        .levels
        .iter()
        .map(|entry| {
            let text = fs::read_to_string(dir.join(&entry.file))?;
            parse_level(&text, entry.level, base.node_count())
        })
        .collect::<Result<Vec<_>>>()?;
    SnapshotSequence::new(base.clone(), levels, manifest.config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewire::laser_rewire;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn snapshot_dir_round_trip() {
        let g = Graph::from_edges(6, (1..6).map(|i| (i - 1, i))).unwrap();
        let config = RewireConfig {
            snapshots: 2,
            rho_density: 0.5,
            seed: 4,
            ..Default::default()
        };
        let seq = laser_rewire(&g, &config).unwrap();
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("out");
        write_snapshot_dir(&seq, &dir, None).unwrap();
        assert_eq!(read_snapshot_dir(&dir, &g).unwrap(), seq);
        let manifest = read_manifest(&dir).unwrap();
        assert_eq!(manifest.levels.len(), 2);
        assert_eq!(manifest.levels[0].file, "snapshot_1.edges");

        let other = Graph::from_edges(6, [(0, 1)]).unwrap();
        assert!(read_snapshot_dir(&dir, &other).is_err());
    }

    #[test]
    fn failed_fill_leaves_nothing() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("out");
        let res = write_dir_atomic(&dir, |p| {
            fs::write(p.join("partial"), "x")?;
            Err(Error::Snapshot("boom".into()))
        });
        assert!(res.is_err());
        assert!(!dir.exists());
        assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 0);
    }

    #[test]
    fn level_parse_errors() {
        assert!(parse_level("0 2 2\n", 1, 3).is_err());
        assert!(parse_level("0 5 1\n", 1, 3).is_err());
        assert!(parse_level("0 2\n", 1, 3).is_err());
        assert_eq!(
            parse_level("# c\n0 2 1\n", 1, 3).unwrap().directed_count(),
            1
        );
    }
}

//! Audio I/O, dataset manifests, the synthetic attacker corpus, ASVspoof
//! protocol parsing, and train/test split procedures.

mod manifest;
mod protocol;
mod split;
mod synth;
mod wav;

pub use manifest::{read_manifest, write_manifest};
pub use protocol::{parse_asvspoof_protocol, ProtocolWarning};
pub use split::{split_in_domain, split_out_of_domain};
pub use synth::{synth_corpus, write_corpus, SynthAttackerConfig, SynthCorpusConfig};
pub use wav::{read_wav, write_wav};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};

/// Mono PCM audio in [-1, 1] with its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl Waveform {
    /// Validates the invariants: non-empty, rate > 0, all |x| <= 1.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidConfig("empty waveform".into()));
        }
        if sample_rate == 0 {
            return Err(Error::InvalidConfig("sample_rate must be positive".into()));
        }
        if let Some(bad) = samples.iter().find(|s| !s.is_finite() || s.abs() > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sample out of range [-1, 1]: {bad}"
            )));
        }
        Ok(Waveform {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Duration in seconds.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// Attacker identity. `A0` is reserved for bonafide speech; spoofed audio
/// carries the attack system's label (`A1`..`A19` for ASVspoof-style sets,
/// arbitrary strings for synthetic or unknown attackers). Labels compare by
/// exact identity: `A1` and `A01` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttackerLabel(String);

impl AttackerLabel {
    pub fn new(id: impl Into<String>) -> Self {
        AttackerLabel(id.into())
    }

    /// The bonafide class.
    pub fn bonafide() -> Self {
        AttackerLabel("A0".to_string())
    }

    pub fn is_bonafide(&self) -> bool {
        self.0 == "A0"
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AttackerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Speaker gender metadata carried by some corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

/// Where an utterance's audio lives.
#[derive(Debug, Clone, PartialEq)]
pub enum UtteranceSource {
    /// Audio on disk (WAV is the decodable path).
    Path(PathBuf),
    /// Audio held in memory (synthetic corpora before being written out).
    Inline(Waveform),
    /// Referenced by a protocol file but not found on disk; kept so the
    /// manifest still accounts for the row.
    Unresolved(String),
}

/// One utterance row of a dataset manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct UtteranceRecord {
    pub utterance_id: String,
    pub source: UtteranceSource,
    pub label: Option<AttackerLabel>,
    pub speaker_gender: Option<Gender>,
}

impl UtteranceRecord {
    /// Loads the audio, reading from disk if necessary.
    pub fn load_waveform(&self) -> Result<Waveform> {
        match &self.source {
            UtteranceSource::Inline(w) => Ok(w.clone()),
            UtteranceSource::Path(p) => read_wav(p),
            UtteranceSource::Unresolved(name) => Err(Error::Io {
                path: PathBuf::from(name),
                source: std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    "audio source unresolved",
                ),
            }),
        }
    }
}

/// How a manifest came to be.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    /// Generated by [`synth_corpus`] from a config and master seed.
    Synthetic { seed: u64 },
    /// Read from an external manifest or protocol file.
    External { source: PathBuf },
    /// Constructed in memory.
    InMemory,
}

/// An ordered collection of utterance records.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    pub records: Vec<UtteranceRecord>,
    pub provenance: Provenance,
}

impl DatasetManifest {
    /// Validates non-emptiness and utterance-id uniqueness.
    pub fn new(records: Vec<UtteranceRecord>, provenance: Provenance) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InvalidConfig("manifest has no records".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for r in &records {
            if !seen.insert(r.utterance_id.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate utterance_id {}",
                    r.utterance_id
                )));
            }
        }
        Ok(DatasetManifest {
            records,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Distinct labels present, sorted.
    pub fn labels(&self) -> Vec<AttackerLabel> {
        let mut set: Vec<AttackerLabel> = self
            .records
            .iter()
            .filter_map(|r| r.label.clone())
            .collect();
        set.sort();
        set.dedup();
        set
    }

    /// Count of records carrying the given label.
    pub fn count_label(&self, label: &AttackerLabel) -> usize {
        self.records
            .iter()
            .filter(|r| r.label.as_ref() == Some(label))
            .count()
    }
}

pub(crate) fn path_display(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

//! RIFF/WAVE PCM 16-bit mono reader and writer.
//!
//! Deliberately narrow: exactly one format is supported so that the
//! int16 <-> float scaling is bit-exact and round trips within 1 LSB.
//! No resampling is ever performed; feature definitions are
//! sample-rate-aware and silent resampling would hide unit bugs.

use super::Waveform;
use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::Path;

const SCALE: f64 = 1.0 / 32768.0;

/// Reads a PCM 16-bit mono WAV file. Samples are scaled by 1/32768 into
/// [-1, 1); the sample rate comes from the header unchanged.
pub fn read_wav(path: impl AsRef<Path>) -> Result<Waveform> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    decode_wav(&bytes)
}

/// Decodes WAV bytes; see [`read_wav`].
pub fn decode_wav(bytes: &[u8]) -> Result<Waveform> {
    let mut c = Cursor { bytes, pos: 0 };
    if c.take(4)? != b"RIFF" {
        return Err(Error::WavFormat("missing RIFF header".into()));
    }
    c.take(4)?; // riff size, unchecked: trailing metadata chunks are legal
    if c.take(4)? != b"WAVE" {
        return Err(Error::WavFormat("missing WAVE marker".into()));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // (format, channels, rate, bits)
    let mut data: Option<&[u8]> = None;
    while c.remaining() >= 8 {
        let id: [u8; 4] = c.take(4)?.try_into().unwrap();
        let size = u32::from_le_bytes(c.take(4)?.try_into().unwrap()) as usize;
        let chunk = c.take(size)?;
        match &id {
            b"fmt " => {
                if chunk.len() < 16 {
                    return Err(Error::WavFormat("fmt chunk truncated".into()));
                }
                let format = u16::from_le_bytes([chunk[0], chunk[1]]);
                let channels = u16::from_le_bytes([chunk[2], chunk[3]]);
                let rate = u32::from_le_bytes([chunk[4], chunk[5], chunk[6], chunk[7]]);
                let bits = u16::from_le_bytes([chunk[14], chunk[15]]);
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(chunk),
            _ => {} // LIST, fact, ... skipped
        }
        if size % 2 == 1 {
            // chunks are word-aligned
            let _ = c.take(1);
        }
    }

    let (format, channels, rate, bits) =
        fmt.ok_or_else(|| Error::WavFormat("missing fmt chunk".into()))?;
    if format != 1 {
        return Err(Error::WavFormat(format!(
            "unsupported format tag {format} (want PCM = 1)"
        )));
    }
    if channels != 1 {
        return Err(Error::WavFormat(format!(
            "unsupported channel count {channels} (want mono)"
        )));
    }
    if bits != 16 {
        return Err(Error::WavFormat(format!(
            "unsupported bit depth {bits} (want 16)"
        )));
    }
    if rate == 0 {
        return Err(Error::WavFormat("sample rate 0".into()));
    }
    let data = data.ok_or_else(|| Error::WavFormat("missing data chunk".into()))?;
    if data.len() % 2 != 0 {
        return Err(Error::WavFormat("data chunk has odd byte length".into()));
    }
    let samples: Vec<f64> = data
        .chunks_exact(2)
        .map(|b| i16::from_le_bytes([b[0], b[1]]) as f64 * SCALE)
        .collect();
    if samples.is_empty() {
        return Err(Error::WavFormat("data chunk empty".into()));
    }
    Waveform::new(samples, rate)
}

/// Writes a waveform as PCM 16-bit mono, quantizing with round-to-nearest.
pub fn write_wav(w: &Waveform, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_wav(w)?;
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&bytes).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Encodes a waveform to WAV bytes; see [`write_wav`].
pub fn encode_wav(w: &Waveform) -> Result<Vec<u8>> {
    if w.is_empty() {
        return Err(Error::InvalidConfig("empty waveform".into()));
    }
    let n = w.len();
    let data_len = (n * 2) as u32;
    let mut out = Vec::with_capacity(44 + n * 2);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&w.sample_rate().to_le_bytes());
    let byte_rate = w.sample_rate() * 2;
    out.extend_from_slice(&byte_rate.to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in w.samples() {
        let q = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    Ok(out)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::WavFormat("file truncated".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::DetRng;

    fn sine(freq: f64, dur: f64, amp: f64, rate: u32) -> Waveform {
        let n = (dur * rate as f64).round() as usize;
        let samples = (0..n)
            .map(|i| amp * (2.0 * std::f64::consts::PI * freq * i as f64 / rate as f64).sin())
            .collect();
        Waveform::new(samples, rate).unwrap()
    }

    #[test]
    fn scales_int16_linearly() {
        // hand-built file: int16 values [16384, -16384] at 16 kHz
        let w = Waveform::new(vec![0.5, -0.5], 16000).unwrap();
        let bytes = encode_wav(&w).unwrap();
        let back = decode_wav(&bytes).unwrap();
        assert_eq!(back.samples(), &[0.5, -0.5]);
        assert_eq!(back.sample_rate(), 16000);
    }

    #[test]
    fn round_trip_within_one_lsb() {
        let w = sine(220.0, 1.0, 0.999, 16000);
        let back = decode_wav(&encode_wav(&w).unwrap()).unwrap();
        assert_eq!(back.sample_rate(), 16000);
        let max_err = w
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_err <= 1.0 / 32768.0, "max_err {max_err}");
    }

    #[test]
    fn rejects_stereo() {
        let w = Waveform::new(vec![0.1, 0.2], 8000).unwrap();
        let mut bytes = encode_wav(&w).unwrap();
        bytes[22] = 2; // channel count field
        let err = decode_wav(&bytes).unwrap_err();
        assert!(err.to_string().contains("channel count"), "{err}");
    }

    #[test]
    fn rejects_8_bit() {
        let w = Waveform::new(vec![0.1, 0.2], 8000).unwrap();
        let mut bytes = encode_wav(&w).unwrap();
        bytes[34] = 8; // bits per sample field
        let err = decode_wav(&bytes).unwrap_err();
        assert!(err.to_string().contains("bit depth"), "{err}");
    }

    #[test]
    fn rejects_truncated() {
        let w = sine(100.0, 0.01, 0.5, 8000);
        let bytes = encode_wav(&w).unwrap();
        let err = decode_wav(&bytes[..30]).unwrap_err();
        assert!(matches!(err, Error::WavFormat(_)));
    }

    #[test]
    fn rejects_empty_waveform_write() {
        let err = Waveform::new(vec![], 8000).unwrap_err();
        assert!(err.to_string().contains("empty waveform"));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.wav");
        let w = sine(220.0, 0.25, 0.7, 16000);
        write_wav(&w, &p).unwrap();
        let back = read_wav(&p).unwrap();
        assert_eq!(back.sample_rate(), 16000);
        assert_eq!(back.len(), w.len());
    }

    #[test]
    fn prop_round_trip_any_samples() {
        // randomized round-trip property at a few lengths
        let mut rng = DetRng::new(99);
        for len in [1usize, 2, 17, 333] {
            let samples: Vec<f64> = (0..len).map(|_| rng.symmetric().clamp(-1.0, 1.0)).collect();
            let w = Waveform::new(samples, 48000).unwrap();
            let back = decode_wav(&encode_wav(&w).unwrap()).unwrap();
            assert_eq!(back.sample_rate(), 48000);
            for (a, b) in w.samples().iter().zip(back.samples()) {
                assert!((a - b).abs() <= 1.0 / 32768.0);
            }
        }
    }
}

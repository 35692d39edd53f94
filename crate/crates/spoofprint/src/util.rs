//! Seeded randomness and deterministic text formatting shared across modules.
//!
//! Every random draw in this crate goes through [`DetRng`], which reads raw
//! ChaCha8 output words and maps them to floats/indices with fixed arithmetic.
//! This keeps generated corpora, weight initialization, and batch sampling
//! bit-identical for a given seed, independent of any distribution-sampling
//! code that might change between releases of the `rand` ecosystem.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// SplitMix64 step; used to derive stream seeds from (master seed, indices).
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a per-item seed from a master seed and up to two indices.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(a)).wrapping_add(b))
}

/// Deterministic RNG: ChaCha8 words mapped to floats and bounded indices.
pub struct DetRng {
    inner: ChaCha8Rng,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform in [-1, 1).
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }

    /// Uniform index in [0, n) via widening multiply.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal via Box-Muller (consumes two words).
    pub fn normal(&mut self) -> f64 {
        let u1 = self.unit().max(1e-300);
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

/// Format a float with 9 significant digits, printf `%.9g` style: positional
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed. Used for all CSV float output so reruns are byte-identical.
pub fn fmt_g9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..9).contains(&exp) {
        let s = format!("{:.8e}", v);
        return trim_exp_zeros(&s);
    }
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    trim_frac_zeros(&s)
}

fn trim_frac_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

fn trim_exp_zeros(s: &str) -> String {
    // "1.23000000e-12" -> "1.23e-12"
    match s.split_once('e') {
        Some((mant, exp)) => format!("{}e{}", trim_frac_zeros(mant), exp),
        None => s.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_seed_distinguishes_indices() {
        let a = derive_seed(7, 0, 0);
        let b = derive_seed(7, 0, 1);
        let c = derive_seed(7, 1, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn det_rng_reproducible() {
        let mut r1 = DetRng::new(42);
        let mut r2 = DetRng::new(42);
        for _ in 0..100 {
            assert_eq!(r1.next_u64(), r2.next_u64());
        }
    }

    #[test]
    fn unit_in_range() {
        let mut r = DetRng::new(1);
        for _ in 0..1000 {
            let v = r.unit();
            assert!((0.0..1.0).contains(&v));
        }
    }

    #[test]
    fn index_bounds() {
        let mut r = DetRng::new(3);
        for _ in 0..1000 {
            assert!(r.index(7) < 7);
        }
    }

    #[test]
    fn g9_formatting() {
        assert_eq!(fmt_g9(0.0), "0");
        assert_eq!(fmt_g9(1.0), "1");
        assert_eq!(fmt_g9(-3.0103), "-3.0103");
        assert_eq!(fmt_g9(0.5), "0.5");
        assert_eq!(fmt_g9(123456789.0), "123456789");
        assert_eq!(fmt_g9(1234567891.0), "1.23456789e9");
        assert_eq!(fmt_g9(0.000123456789), "0.000123456789");
        assert_eq!(fmt_g9(1e-12), "1e-12");
        assert_eq!(fmt_g9(219.17808219178082), "219.178082");
    }

    #[test]
    fn g9_roundtrip_close() {
        let vals = [1.0 / 3.0, 2.0f64.sqrt(), -0.09677419, 5.1666e-7, 3.2e11];
        for &v in &vals {
            let parsed: f64 = fmt_g9(v).parse().unwrap();
            assert!(
                ((parsed - v) / v).abs() < 1e-8,
                "{} -> {} -> {}",
                v,
                fmt_g9(v),
                parsed
            );
        }
    }
}

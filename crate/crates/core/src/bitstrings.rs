//! Fixed-length binary words and the aperiodic-string counts used by the
//! polygon states.
//!
//! Position 1 of a string is the most significant bit of its word, so the
//! word value of `I` is also the computational-basis index of `|I⟩`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Result, WernerError};

pub const MAX_LEN: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: u32,
    len: u8,
}

fn mask(len: usize) -> u32 {
    (1u32 << len) - 1
}

fn check_len(len: usize) -> Result<()> {
    if (1..=MAX_LEN).contains(&len) {
        Ok(())
    } else {
        Err(WernerError::LengthOutOfRange(len))
    }
}

impl BitString {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        check_len(len)?;
        if bits & !mask(len) != 0 {
            return Err(WernerError::ValueTooWide { value: bits, len });
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// Word value, equal to the basis index of the corresponding ket.
    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Bit at 1-based `pos`.
    pub fn bit(self, pos: usize) -> Result<u8> {
        self.check_pos(pos)?;
        Ok(((self.bits >> (self.len() - pos)) & 1) as u8)
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & mask(self.len()),
            len: self.len,
        }
    }

    /// `I_ℓ`: the string with only position `pos` complemented.
    pub fn flip_bit(self, pos: usize) -> Result<Self> {
        self.check_pos(pos)?;
        Ok(Self {
            bits: self.bits ^ (1 << (self.len() - pos)),
            len: self.len,
        })
    }

    /// `π^k I` where `(πI)_j = i_{j+1 mod m}`; negative `k` shifts the other way.
    pub fn cyclic_shift(self, k: i64) -> Self {
        let m = self.len() as i64;
        let k = k.rem_euclid(m) as u32;
        Self {
            bits: rotate_left(self.bits, self.len(), k),
            len: self.len,
        }
    }

    pub fn is_aperiodic(self) -> bool {
        is_aperiodic_word(self.bits, self.len())
    }

    fn check_pos(self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.len() {
            Err(WernerError::PositionOutOfRange {
                pos,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

fn rotate_left(bits: u32, len: usize, k: u32) -> u32 {
    if k == 0 {
        return bits;
    }
    let len = len as u32;
    ((bits << k) | (bits >> (len - k))) & mask(len as usize)
}

fn proper_divisors(m: usize) -> impl Iterator<Item = usize> {
    (1..m).filter(move |d| m.is_multiple_of(*d))
}

fn is_aperiodic_word(bits: u32, len: usize) -> bool {
    proper_divisors(len).all(|d| rotate_left(bits, len, d as u32) != bits)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 1..=self.len() {
            let b = (self.bits >> (self.len() - pos)) & 1;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = WernerError;

    fn from_str(s: &str) -> Result<Self> {
        check_len(s.len())?;
        let mut bits = 0u32;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => return Err(WernerError::Parse(format!("bad bit `{other}` in `{s}`"))),
            }
        }
        Self::new(bits, s.len())
    }
}

/// `A(m)`: aperiodic `m`-bit strings, by exhaustive scan.
pub fn count_aperiodic(m: usize) -> Result<u64> {
    check_len(m)?;
    Ok((0..1u32 << m)
        .into_par_iter()
        .filter(|&b| is_aperiodic_word(b, m))
        .count() as u64)
}

/// `P(m) = 2^m − A(m)`.
pub fn count_periodic(m: usize) -> Result<u64> {
    Ok((1u64 << m) - count_aperiodic(m)?)
}

fn check_pair(m: usize, a: usize, b: usize) -> Result<()> {
    check_len(m)?;
    if a == 0 || a >= b || b > m {
        return Err(WernerError::InvalidPair { a, b, len: m });
    }
    Ok(())
}

fn scan_with_00(m: usize, a: usize, b: usize, aperiodic: bool) -> Result<u64> {
    check_pair(m, a, b)?;
    let zeros = (1u32 << (m - a)) | (1u32 << (m - b));
    Ok((0..1u32 << m)
        .into_par_iter()
        .filter(|&w| w & zeros == 0 && is_aperiodic_word(w, m) == aperiodic)
        .count() as u64)
}

/// `A₀₀(m)`: aperiodic strings with a zero at both positions `a < b`.
pub fn count_aperiodic_with_00(m: usize, a: usize, b: usize) -> Result<u64> {
    scan_with_00(m, a, b, true)
}

/// `P₀₀(m)`: periodic strings with a zero at both positions `a < b`.
pub fn count_periodic_with_00(m: usize, a: usize, b: usize) -> Result<u64> {
    scan_with_00(m, a, b, false)
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `A(m) = Σ_{d|m} μ(d) 2^{m/d}`.
pub fn count_aperiodic_mobius(m: usize) -> Result<u64> {
    check_len(m)?;
    let total: i64 = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| mobius(d as u64) * (1i64 << (m / d)))
        .sum();
    Ok(total as u64)
}

/// `P(m) = Σ_{d|m, d<m} A(d)`.
pub fn count_periodic_by_divisors(m: usize) -> Result<u64> {
    check_len(m)?;
    proper_divisors(m).map(count_aperiodic_mobius).sum()
}

/// Iterator over all aperiodic strings of length `m`, in increasing word order.
pub fn aperiodic_strings(m: usize) -> Result<impl Iterator<Item = BitString>> {
    check_len(m)?;
    Ok((0..1u32 << m)
        .filter(move |&b| is_aperiodic_word(b, m))
        .map(move |bits| BitString { bits, len: m as u8 }))
}

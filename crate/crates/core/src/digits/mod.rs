//! Digit streams: Champernowne and pi expansions, externally supplied digit
//! files, and seeded pseudo-random controls.

mod pi;

use std::fmt;
use std::fs;
use std::path::Path;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::rng_from_seed;

pub use pi::{pi_digits, pi_digits_with, PiOptions, DEFAULT_PI_BUDGET};

/// Largest base representable in the one-character-per-digit file format.
pub const MAX_BASE: u32 = 36;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigitError {
    #[error("base {0} outside 2..=36")]
    InvalidBase(u32),
    #[error("pi is only available in base 2 or 10, not {0}")]
    UnsupportedPiBase(u32),
    #[error("{requested} digits requested but the compute budget is {budget}; supply a reference digit file")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("reference digits disagree with computed digits at position {position}")]
    ReferenceMismatch { position: usize },
    #[error("reference stream is base {found}, expected base {expected}")]
    ReferenceBase { expected: u32, found: u32 },
    #[error("digit file has no '# base=B' header")]
    MissingBaseHeader,
    #[error("digit file contains no digits")]
    EmptyFile,
    #[error("malformed digit {ch:?} at line {line} for base {base}")]
    MalformedDigit { ch: char, line: usize, base: u32 },
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u8, base: u32 },
    #[error("io error: {0}")]
    Io(String),
}

/// Where a digit stream came from. Carried into every downstream artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Champernowne,
    Pi,
    File(String),
    Prng(u64),
    Binarized(Box<Provenance>),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Champernowne => f.write_str("champernowne"),
            Provenance::Pi => f.write_str("pi"),
            Provenance::File(p) => write!(f, "file:{p}"),
            Provenance::Prng(seed) => write!(f, "prng:{seed}"),
            Provenance::Binarized(inner) => write!(f, "binarize({inner})"),
        }
    }
}

/// Finite base-`b` digit sequence with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    base: u32,
    digits: Vec<u8>,
    provenance: Provenance,
}

impl DigitStream {
    pub fn new(base: u32, digits: Vec<u8>, provenance: Provenance) -> Result<Self, DigitError> {
        check_base(base)?;
        if let Some(&bad) = digits.iter().find(|&&d| u32::from(d) >= base) {
            return Err(DigitError::DigitOutOfRange { digit: bad, base });
        }
        Ok(DigitStream {
            base,
            digits,
            provenance,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// First `count` digits (or all, if shorter), same provenance.
    pub fn prefix(&self, count: usize) -> DigitStream {
        DigitStream {
            base: self.base,
            digits: self.digits[..count.min(self.digits.len())].to_vec(),
            provenance: self.provenance.clone(),
        }
    }

    /// Serializes in the digit-file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("# base={}\n# provenance={}\n", self.base, self.provenance);
        for line in self.digits.chunks(80) {
            out.extend(line.iter().map(|&d| digit_char(d)));
            out.push('\n');
        }
        out
    }
}

fn check_base(base: u32) -> Result<(), DigitError> {
    if !(2..=MAX_BASE).contains(&base) {
        return Err(DigitError::InvalidBase(base));
    }
    Ok(())
}

fn digit_char(d: u8) -> char {
    char::from_digit(u32::from(d), MAX_BASE).expect("digit below 36")
}

/// First `count` digits of the base-`b` Champernowne expansion, built by
/// concatenating 1, 2, 3, ... written in base `b`.
pub fn champernowne_digits(base: u32, count: usize) -> Result<DigitStream, DigitError> {
    check_base(base)?;
    let mut digits = Vec::with_capacity(count);
    let mut scratch = Vec::new();
    let mut k: u64 = 1;
    while digits.len() < count {
        scratch.clear();
        let mut x = k;
        while x > 0 {
            scratch.push((x % u64::from(base)) as u8);
            x /= u64::from(base);
        }
        let take = (count - digits.len()).min(scratch.len());
        digits.extend(scratch.iter().rev().take(take));
        k += 1;
    }
    Ok(DigitStream {
        base,
        digits,
        provenance: Provenance::Champernowne,
    })
}

/// Maps digit `d` to 0 if `d < base/2` and to 1 otherwise. Base-2 input is
/// returned unchanged.
pub fn binarize(s: &DigitStream) -> DigitStream {
    if s.base == 2 {
        return s.clone();
    }
    let half = s.base as f64 / 2.0;
    DigitStream {
        base: 2,
        digits: s
            .digits
            .iter()
            .map(|&d| u8::from(f64::from(d) >= half))
            .collect(),
        provenance: Provenance::Binarized(Box::new(s.provenance.clone())),
    }
}

/// Seeded uniform digits.
pub fn prng_digits(base: u32, count: usize, seed: u64) -> Result<DigitStream, DigitError> {
    check_base(base)?;
    let mut rng = rng_from_seed(seed);
    let digits = (0..count).map(|_| rng.random_range(0..base) as u8).collect();
    Ok(DigitStream {
        base,
        digits,
        provenance: Provenance::Prng(seed),
    })
}

/// Parses the digit-file format: `#` comment lines, a required `# base=B`
/// header, then digits as contiguous ASCII characters (whitespace ignored).
pub fn parse_digit_text(text: &str, provenance: Provenance) -> Result<DigitStream, DigitError> {
    let mut base = None;
    let mut digits = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if base.is_none() {
                if let Some(b) = comment.trim().strip_prefix("base=") {
                    let b: u32 = b.trim().parse().map_err(|_| DigitError::MissingBaseHeader)?;
                    check_base(b)?;
                    base = Some(b);
                }
            }
            continue;
        }
        for ch in trimmed.chars().filter(|c| !c.is_whitespace()) {
            let b = base.ok_or(DigitError::MissingBaseHeader)?;
            let d = ch
                .to_digit(MAX_BASE)
                .filter(|&d| d < b)
                .ok_or(DigitError::MalformedDigit {
                    ch,
                    line: idx + 1,
                    base: b,
                })?;
            digits.push(d as u8);
        }
    }
    let base = base.ok_or(DigitError::MissingBaseHeader)?;
    if digits.is_empty() {
        return Err(DigitError::EmptyFile);
    }
    Ok(DigitStream {
        base,
        digits,
        provenance,
    })
}

pub fn load_digit_file(path: &Path) -> Result<DigitStream, DigitError> {
    let text = fs::read_to_string(path).map_err(|e| DigitError::Io(format!("{}: {e}", path.display())))?;
    parse_digit_text(&text, Provenance::File(path.display().to_string()))
}

//! Digits of pi, leading integer digit included.
//!
//! Base 10 uses the Rabinowitz–Wagon spigot in base 10^4 (four digits per
//! pass, shrinking working array). Base 2 uses BBP hexadecimal digit
//! extraction, six hex digits per evaluation, expanded to bits after the
//! integer part `11`.

use super::{DigitError, DigitStream, Provenance};

/// Largest digit count computed natively unless overridden.
pub const DEFAULT_PI_BUDGET: usize = 100_000;

/// Digits verified against the computation when a reference file is used
/// beyond the budget.
const REFERENCE_CHECK_LEN: usize = 4096;

#[derive(Debug, Clone, Default)]
pub struct PiOptions<'a> {
    /// Compute budget; `None` means [`DEFAULT_PI_BUDGET`].
    pub budget: Option<usize>,
    /// Reference digits (same base) that computed digits must agree with,
    /// and the fallback source when `count` exceeds the budget.
    pub reference: Option<&'a DigitStream>,
}

pub fn pi_digits(base: u32, count: usize) -> Result<DigitStream, DigitError> {
    pi_digits_with(base, count, &PiOptions::default())
}

pub fn pi_digits_with(base: u32, count: usize, opts: &PiOptions<'_>) -> Result<DigitStream, DigitError> {
    if base != 2 && base != 10 {
        return Err(DigitError::UnsupportedPiBase(base));
    }
    if let Some(r) = opts.reference {
        if r.base() != base {
            return Err(DigitError::ReferenceBase {
                expected: base,
                found: r.base(),
            });
        }
    }
    let budget = opts.budget.unwrap_or(DEFAULT_PI_BUDGET);
    let compute = |n: usize| if base == 10 { decimal(n) } else { binary(n) };

    if count <= budget {
        let digits = compute(count);
        if let Some(r) = opts.reference {
            verify(&digits, r.digits())?;
        }
        return DigitStream::new(base, digits, Provenance::Pi);
    }

    match opts.reference {
        Some(r) if r.len() >= count => {
            let check = compute(REFERENCE_CHECK_LEN.min(budget));
            verify(&check, r.digits())?;
            Ok(r.prefix(count))
        }
        _ => Err(DigitError::BudgetExceeded {
            requested: count,
            budget,
        }),
    }
}

fn verify(computed: &[u8], reference: &[u8]) -> Result<(), DigitError> {
    match computed.iter().zip(reference).position(|(a, b)| a != b) {
        Some(position) => Err(DigitError::ReferenceMismatch { position }),
        None => Ok(()),
    }
}

fn decimal(count: usize) -> Vec<u8> {
    if count == 0 {
        return Vec::new();
    }
    const CHUNK: u64 = 10_000;
    // Each term of the mixed-radix series contributes log10(2) digits;
    // 14 terms cover one 4-digit chunk. Two guard chunks absorb the tail.
    let chunks = count.div_ceil(4) + 2;
    let mut c = chunks * 14;
    let mut f = vec![CHUNK / 5; c + 1];
    f[c] = 0;

    let mut raw: Vec<u64> = Vec::with_capacity(chunks);
    let mut carry = 0u64;
    while c > 0 {
        let mut d = 0u64;
        let mut g = (c * 2) as u64;
        let mut b = c;
        loop {
            d += f[b] * CHUNK;
            g -= 1;
            f[b] = d % g;
            d /= g;
            g -= 1;
            b -= 1;
            if b == 0 {
                break;
            }
            d *= b as u64;
        }
        raw.push(carry + d / CHUNK);
        carry = d % CHUNK;
        c -= 14;
    }

    // A chunk can reach 10^4; push the excess into earlier chunks.
    for i in (1..raw.len()).rev() {
        if raw[i] >= CHUNK {
            raw[i - 1] += raw[i] / CHUNK;
            raw[i] %= CHUNK;
        }
    }

    let mut digits = Vec::with_capacity(raw.len() * 4);
    for chunk in raw {
        let mut group = [0u8; 4];
        let mut x = chunk;
        for slot in group.iter_mut().rev() {
            *slot = (x % 10) as u8;
            x /= 10;
        }
        digits.extend_from_slice(&group);
    }
    digits.truncate(count);
    digits
}

fn binary(count: usize) -> Vec<u8> {
    let mut bits = Vec::with_capacity(count);
    bits.extend([1u8, 1].iter().take(count));
    let mut position = 0u64;
    while bits.len() < count {
        for hex in hex_digits_at(position, HEX_PER_CALL) {
            for shift in (0..4).rev() {
                if bits.len() < count {
                    bits.push((hex >> shift) & 1);
                }
            }
        }
        position += HEX_PER_CALL as u64;
    }
    bits
}

const HEX_PER_CALL: usize = 6;

/// Hex digits of pi's fractional part starting at 0-based `position`.
fn hex_digits_at(position: u64, n: usize) -> Vec<u8> {
    let x = 4.0 * series(1, position) - 2.0 * series(4, position) - series(5, position) - series(6, position);
    let mut frac = x - x.floor();
    (0..n)
        .map(|_| {
            frac *= 16.0;
            let digit = frac.floor();
            frac -= digit;
            digit as u8
        })
        .collect()
}

/// Fractional part of sum_k 16^(d-k) / (8k + j).
fn series(j: u64, d: u64) -> f64 {
    let mut s = 0.0f64;
    for k in 0..=d {
        let denom = 8 * k + j;
        s += pow_mod(16, d - k, denom) as f64 / denom as f64;
        s -= s.floor();
    }
    let mut k = d + 1;
    loop {
        let term = 16f64.powi(-((k - d) as i32)) / (8 * k + j) as f64;
        if term < 1e-17 {
            break;
        }
        s += term;
        k += 1;
    }
    s - s.floor()
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_examples() {
        assert_eq!(pi_digits(10, 6).unwrap().digits(), &[3, 1, 4, 1, 5, 9]);
        assert_eq!(pi_digits(10, 1).unwrap().digits(), &[3]);
        assert!(pi_digits(10, 0).unwrap().is_empty());
    }

    #[test]
    fn binary_examples() {
        assert_eq!(pi_digits(2, 4).unwrap().digits(), &[1, 1, 0, 0]);
        // 3.243F6A88 in hex
        let bits = pi_digits(2, 2 + 32).unwrap();
        let word = bits.digits()[2..].iter().fold(0u32, |w, &b| w << 1 | u32::from(b));
        assert_eq!(word, 0x243F_6A88);
    }

    #[test]
    fn budget_and_base_errors() {
        let opts = PiOptions {
            budget: Some(10),
            reference: None,
        };
        assert_eq!(
            pi_digits_with(10, 11, &opts),
            Err(DigitError::BudgetExceeded {
                requested: 11,
                budget: 10
            })
        );
        assert_eq!(pi_digits(16, 3), Err(DigitError::UnsupportedPiBase(16)));
    }

    #[test]
    fn reference_mismatch_is_reported() {
        let bogus = DigitStream::new(10, vec![3, 1, 4, 2], Provenance::File("bogus".into())).unwrap();
        let opts = PiOptions {
            budget: None,
            reference: Some(&bogus),
        };
        assert_eq!(
            pi_digits_with(10, 6, &opts),
            Err(DigitError::ReferenceMismatch { position: 3 })
        );
    }
}

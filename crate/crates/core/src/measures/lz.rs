//! LZ78 phrase counting as a compression-length proxy.

use std::collections::HashMap;

use serde::Serialize;

use super::MeasureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LzComplexity {
    /// Number of LZ78 phrases, counting a trailing phrase that repeats an
    /// existing dictionary entry.
    pub phrases: usize,
    /// `phrases * (ceil(log2 phrases) + 1)`: a pointer plus one literal bit
    /// per phrase.
    pub compressed_bits: u64,
}

/// LZ78 parse: each phrase is the shortest prefix of the remaining input not
/// yet in the dictionary.
pub fn lz_complexity(bits: &[u8]) -> Result<LzComplexity, MeasureError> {
    if bits.is_empty() {
        return Err(MeasureError::EmptySequence);
    }
    // trie: (parent node, symbol) -> child node; node 0 is the root
    let mut trie: HashMap<(usize, u8), usize> = HashMap::new();
    let mut node = 0usize;
    let mut phrases = 0usize;
    for &b in bits {
        match trie.get(&(node, b)) {
            Some(&child) => node = child,
            None => {
                let id = trie.len() + 1;
                trie.insert((node, b), id);
                phrases += 1;
                node = 0;
            }
        }
    }
    if node != 0 {
        phrases += 1;
    }
    let width = u64::from(usize::BITS - (phrases - 1).leading_zeros());
    Ok(LzComplexity {
        phrases,
        compressed_bits: phrases as u64 * (width + 1),
    })
}

//! Enumeration of small braid words whose closures are knots.

use crate::braid::{BraidWord, Letter, Sign};

/// Every knot-closing word on `1..=max_strands` strands with at most
/// `max_len` letters, by strands, then length, then lexicographically.
pub fn knot_words(max_strands: usize, max_len: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for b in 1..=max_strands {
        let alphabet: Vec<Letter> = (1..b)
            .flat_map(|g| [Sign::Positive, Sign::Negative].map(|sign| Letter { generator: g, sign }))
            .collect();
        for len in 0..=max_len {
            if alphabet.is_empty() && len > 0 {
                break;
            }
            let mut idx = vec![0usize; len];
            loop {
                let letters = idx.iter().map(|&i| alphabet[i]).collect();
                if let Ok(w) = BraidWord::new(b, letters) {
                    out.push(w);
                }
                // odometer increment
                let mut k = len;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < alphabet.len() {
                        break;
                    }
                    idx[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if len == 0 || k == usize::MAX {
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let w = knot_words(3, 6);
        assert_eq!(w.len(), 2899);
        assert_eq!(w.iter().filter(|w| w.strands() == 3 && w.len() == 6).count(), 2688);
        assert_eq!(knot_words(1, 3).len(), 1);
    }
}

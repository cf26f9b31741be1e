//! Sign words over `{+, -}`: the colors carried by disc boundaries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_char().to_string())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite sequence of signs. The empty word is the color of scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Sign>);

/// Coarse shape of a word, as used when building the free extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordClass {
    Empty,
    /// Even length with strictly alternating signs.
    Alternating,
    /// Balanced, not alternating, first sign equals last sign.
    SameEnds,
    BalancedOther,
    Unbalanced,
}

/// Maximally alternately signed blocks of a word, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasDecomposition {
    pub blocks: Vec<Word>,
}

impl MasDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every letter of the decomposed word.
    pub fn block_of_letter(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, w)| std::iter::repeat_n(b, w.len()))
            .collect()
    }

    pub fn concat(&self) -> Word {
        Word(self.blocks.iter().flat_map(|b| b.0.iter().copied()).collect())
    }
}

impl Word {
    pub fn new(signs: Vec<Sign>) -> Self {
        Word(signs)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Alternating word of length `n` starting with `first`.
    pub fn alternating(first: Sign, n: usize) -> Self {
        let mut s = first;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(s);
            s = s.flip();
        }
        Word(v)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn first(&self) -> Option<Sign> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Sign> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `w*`: reverse the word and flip every sign.
    pub fn involution(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.flip()).collect())
    }

    pub fn count(&self, sign: Sign) -> usize {
        self.0.iter().filter(|&&s| s == sign).count()
    }

    pub fn is_balanced(&self) -> bool {
        self.count(Sign::Plus) == self.count(Sign::Minus)
    }

    /// Adjacent letters differ (says nothing about length parity).
    pub fn is_alternately_signed(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1])
    }

    pub fn classify(&self) -> WordClass {
        if self.is_empty() {
            WordClass::Empty
        } else if !self.is_balanced() {
            WordClass::Unbalanced
        } else if self.is_alternately_signed() {
            // balanced + alternating forces even length
            WordClass::Alternating
        } else if self.first() == self.last() {
            WordClass::SameEnds
        } else {
            WordClass::BalancedOther
        }
    }

    /// Cyclic shift moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Result<Word> {
        if k > self.len() {
            return Err(Error::OutOfRange(format!(
                "rotation by {k} on a word of length {}",
                self.len()
            )));
        }
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Ok(Word(v))
    }

    /// Split at every position where two adjacent signs are equal.
    pub fn mas_decompose(&self) -> Result<MasDecomposition> {
        if self.is_empty() {
            return Err(Error::Undefined("MAS decomposition of the empty word".into()));
        }
        let mut blocks = Vec::new();
        let mut cur = vec![self.0[0]];
        for &s in &self.0[1..] {
            if s == *cur.last().unwrap() {
                blocks.push(Word(std::mem::take(&mut cur)));
            }
            cur.push(s);
        }
        blocks.push(Word(cur));
        Ok(MasDecomposition { blocks })
    }

    /// `(w_odd, w_even)`: concatenations of the odd- and even-indexed MAS
    /// blocks (1-based), for words with an even number of blocks.
    pub fn mas_parity_split(&self) -> Result<(Word, Word)> {
        let dec = self.mas_decompose()?;
        if dec.len() % 2 != 0 {
            return Err(Error::OddBlockCount {
                word: self.to_string(),
                blocks: dec.len(),
            });
        }
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for (i, b) in dec.blocks.iter().enumerate() {
            if i % 2 == 0 {
                odd.extend_from_slice(&b.0);
            } else {
                even.extend_from_slice(&b.0);
            }
        }
        Ok((Word(odd), Word(even)))
    }

    /// Smallest `k` such that `rotate(k)` starts and ends with the same sign.
    pub fn same_ends_rotation(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&k| self.0[(k + n - 1) % n] == self.0[k])
    }

    /// Every word of length exactly `n`, in lexicographic order with `+ < -`.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        (0u64..(1u64 << n)).map(move |bits| {
            Word(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(Word::all_of_length)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let trimmed = s.trim();
        if trimmed == "∅" {
            return Ok(Word::empty());
        }
        trimmed
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?} in word {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn involution_examples() {
        assert_eq!(w("").involution(), w(""));
        assert_eq!(w("+").involution(), w("-"));
        assert_eq!(w("+--").involution(), w("++-"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(w("+-+-").classify(), WordClass::Alternating);
        assert_eq!(w("+--+").classify(), WordClass::SameEnds);
        assert_eq!(w("-++-").classify(), WordClass::SameEnds);
        assert_eq!(w("++").classify(), WordClass::Unbalanced);
        assert_eq!(w("").classify(), WordClass::Empty);
        assert_eq!(w("++--").classify(), WordClass::BalancedOther);
        assert_eq!(w("+-+").classify(), WordClass::Unbalanced);
    }

    #[test]
    fn mas_examples() {
        let blocks = |s: &str| -> Vec<String> {
            w(s).mas_decompose().unwrap().blocks.iter().map(|b| b.to_string()).collect()
        };
        assert_eq!(blocks("+--+"), ["+-", "-+"]);
        assert_eq!(blocks("+-+-"), ["+-+-"]);
        assert_eq!(blocks("++"), ["+", "+"]);
        assert!(matches!(w("").mas_decompose(), Err(Error::Undefined(_))));
    }

    #[test]
    fn parity_split_examples() {
        assert_eq!(w("+--+").mas_parity_split().unwrap(), (w("+-"), w("-+")));
        assert_eq!(w("-++-").mas_parity_split().unwrap(), (w("-+"), w("+-")));
        // blocks (+-)(-+)(+-)(-+)
        assert_eq!(
            w("+--++--+").mas_parity_split().unwrap(),
            (w("+-+-"), w("-+-+"))
        );
        assert!(matches!(
            w("+-+").mas_parity_split(),
            Err(Error::OddBlockCount { blocks: 1, .. })
        ));
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(w("+-").rotate(1).unwrap(), w("-+"));
        assert_eq!(w("+--+").rotate(2).unwrap(), w("-++-"));
        assert_eq!(w("+--+").rotate(0).unwrap(), w("+--+"));
        assert!(w("+-").rotate(3).is_err());
    }

    #[test]
    fn involution_is_involutive_exhaustive() {
        for x in Word::all_up_to(12) {
            assert_eq!(x.involution().involution(), x);
            assert_eq!(x.involution().len(), x.len());
        }
    }

    #[test]
    fn same_ends_words_have_even_block_structure() {
        for x in Word::all_up_to(12) {
            if x.classify() != WordClass::SameEnds {
                continue;
            }
            let dec = x.mas_decompose().unwrap();
            assert_eq!(dec.len() % 2, 0, "{x}");
            let odd_starting = |s: Sign| {
                dec.blocks
                    .iter()
                    .filter(|b| b.len() % 2 == 1 && b.first() == Some(s))
                    .count()
            };
            assert_eq!(odd_starting(Sign::Plus), odd_starting(Sign::Minus), "{x}");
            assert!(dec.blocks.iter().any(|b| b.len() % 2 == 0), "{x}");
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::ANY, 0..=max).prop_map(|bits| {
            Word::new(bits.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }).collect())
        })
    }

    proptest! {
        #[test]
        fn mas_blocks_concatenate_and_are_maximal(x in arb_word(14)) {
            prop_assume!(!x.is_empty());
            let dec = x.mas_decompose().unwrap();
            prop_assert_eq!(dec.concat(), x.clone());
            for b in &dec.blocks {
                prop_assert!(b.is_alternately_signed());
            }
            for p in dec.blocks.windows(2) {
                prop_assert_eq!(p[0].last(), p[1].first());
            }
        }

        #[test]
        fn parity_split_interleaves_back(x in arb_word(14)) {
            prop_assume!(!x.is_empty());
            let dec = x.mas_decompose().unwrap();
            prop_assume!(dec.len() % 2 == 0);
            let (odd, even) = x.mas_parity_split().unwrap();
            let mut oi = 0;
            let mut ei = 0;
            let mut rebuilt = Vec::new();
            for (i, b) in dec.blocks.iter().enumerate() {
                let (src, idx) = if i % 2 == 0 { (&odd, &mut oi) } else { (&even, &mut ei) };
                rebuilt.extend_from_slice(&src.signs()[*idx..*idx + b.len()]);
                *idx += b.len();
            }
            prop_assert_eq!(Word::new(rebuilt), x);
        }

        #[test]
        fn rotation_round_trip(x in arb_word(14), k in 0usize..15) {
            prop_assume!(k <= x.len());
            let r = x.rotate(k).unwrap();
            prop_assert_eq!(r.rotate(x.len() - k).unwrap(), x);
        }

        #[test]
        fn text_encoding_round_trip(x in arb_word(14)) {
            prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
        }
    }
}

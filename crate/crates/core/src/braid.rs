//! Braid words on `n` strands and the combinatorics that only depends on the
//! word: the permutation homomorphism `B_n -> S_n`, the exponent sum, Markov
//! moves and closure component counts.
//!
//! Words are kept exactly as written. Two words are never compared as braids;
//! equality of braids is certified only through representation values.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("malformed braid token `{0}`")]
    MalformedToken(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i64),
}

/// Exponent of a single Artin generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Self, BraidError> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(BraidError::BadSign(other)),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// `σ_index^{±1}`, with `index` starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Letter { index, sign }
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, Sign::Positive)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, Sign::Negative)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.index, self.sign.flip())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "s{}", self.index),
            Sign::Negative => write!(f, "s{}^-1", self.index),
        }
    }
}

/// A word in the Artin generators of `B_n`. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::IndexOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        BraidWord::new(strands, Vec::new())
    }

    /// Builds a word from `(index, ±1)` pairs.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i64)]) -> Result<Self, BraidError> {
        let letters = pairs
            .iter()
            .map(|&(i, s)| Ok(Letter::new(i, Sign::from_i64(s)?)))
            .collect::<Result<Vec<_>, BraidError>>()?;
        BraidWord::new(strands, letters)
    }

    /// Parses the whitespace separated grammar `s<k>` / `s<k>^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        let letters = text.split_whitespace().map(parse_token).collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pairs(&self) -> Vec<(usize, i64)> {
        self.letters.iter().map(|l| (l.index, l.sign.as_i64())).collect()
    }

    /// Concatenation `self · other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Cancels adjacent `σ_i σ_i^-1` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Image under `σ_i ↦ (i, i+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        // images[k-1] is where the strand starting at k currently sits
        for l in &self.letters {
            for img in images.iter_mut() {
                if *img == l.index {
                    *img = l.index + 1;
                } else if *img == l.index + 1 {
                    *img = l.index;
                }
            }
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// The homomorphism `B_n -> Z` with `σ_i ↦ 1`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    /// The natural inclusion `B_n -> B_{strands}`.
    pub fn include(&self, strands: usize) -> Result<BraidWord, BraidError> {
        if strands < self.strands {
            return Err(BraidError::StrandMismatch(self.strands, strands));
        }
        Ok(BraidWord { strands, letters: self.letters.clone() })
    }

    /// First Markov move: `g · self · g^-1`.
    pub fn markov_conjugate(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// Second Markov move: `σ_n^{±1} · ι(self)` in `B_{n+1}`.
    pub fn markov_stabilize(&self, sign: Sign) -> BraidWord {
        let n = self.strands;
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(Letter::new(n, sign));
        letters.extend_from_slice(&self.letters);
        BraidWord { strands: n + 1, letters }
    }

    /// Number of link components of the closure.
    pub fn closure_component_count(&self) -> usize {
        self.permutation().cycle_count()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn parse_token(tok: &str) -> Result<Letter, BraidError> {
    let bad = || BraidError::MalformedToken(tok.to_string());
    let body = tok.strip_prefix('s').ok_or_else(bad)?;
    let (digits, sign) = match body.strip_suffix("^-1") {
        Some(d) => (d, Sign::Negative),
        None => (body, Sign::Positive),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index = usize::from_str(digits).map_err(|_| bad())?;
    Ok(Letter::new(index, sign))
}

/// A bijection of `{1..n}`; `images[k-1]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    /// `self` followed by `other`, matching the left-to-right word order.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Permutation { images: self.images.iter().map(|&i| other.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// Cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k - 1] {
                seen[k - 1] = true;
                cycle.push(k);
                k = self.apply(k);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(n: usize, text: &str) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let word = w(3, "s1 s2^-1");
        assert_eq!(word.pairs(), vec![(1, 1), (2, -1)]);
        assert!(w(4, "").is_empty());
        assert_eq!(BraidWord::parse("s3", 3), Err(BraidError::IndexOutOfRange { index: 3, strands: 3 }));
        assert!(matches!(BraidWord::parse("x1", 3), Err(BraidError::MalformedToken(_))));
        assert!(matches!(BraidWord::parse("s1^2", 3), Err(BraidError::MalformedToken(_))));
        assert!(matches!(BraidWord::parse("s", 3), Err(BraidError::MalformedToken(_))));
        assert!(matches!(BraidWord::parse("s0", 3), Err(BraidError::IndexOutOfRange { .. })));
    }

    #[test]
    fn print_round_trip() {
        let word = w(5, "s1 s4^-1  s2\ts3");
        assert_eq!(word.to_string(), "s1 s4^-1 s2 s3");
        assert_eq!(w(5, &word.to_string()), word);
    }

    #[test]
    fn group_law() {
        assert!(w(2, "s1 s1^-1").free_reduce().is_empty());
        assert_eq!(w(3, "s1 s2").inverse(), w(3, "s2^-1 s1^-1"));
        assert_eq!(w(3, "s1 s2 s2^-1 s1").free_reduce(), w(3, "s1 s1"));
        assert_eq!(w(3, "s1").compose(&w(4, "s1")), Err(BraidError::StrandMismatch(3, 4)));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w(2, "s1").permutation().images(), &[2, 1]);
        assert!(w(3, "").permutation().is_identity());
        // (12)(23)(12) = (13)
        assert_eq!(w(3, "s1 s2 s1").permutation().images(), &[3, 2, 1]);
    }

    #[test]
    fn purity() {
        assert!(w(2, "s1 s1").is_pure());
        assert!(!w(2, "s1").is_pure());
        // (12)(23)(12)(23) is a 3-cycle
        let p = w(3, "s1 s2^-1 s1 s2^-1").permutation();
        assert!(!p.is_identity());
        assert_eq!(p.cycle_count(), 1);
    }

    #[test]
    fn exponent_sums_and_markov_moves() {
        assert_eq!(w(3, "s1 s2^-1").exponent_sum(), 0);
        assert_eq!(w(2, "s1 s1 s1").exponent_sum(), 3);
        assert_eq!(w(1, "").markov_stabilize(Sign::Positive), w(2, "s1"));
        assert_eq!(w(3, "s1").markov_conjugate(&w(3, "s2")).unwrap(), w(3, "s2 s1 s2^-1"));
        assert_eq!(w(2, "s1").markov_stabilize(Sign::Negative), w(3, "s2^-1 s1"));
    }

    #[test]
    fn closure_components() {
        assert_eq!(w(2, "s1").closure_component_count(), 1);
        assert_eq!(w(3, "").closure_component_count(), 3);
        assert_eq!(w(2, "s1 s1").closure_component_count(), 2);
    }

    #[test]
    fn cycles_are_canonical() {
        let p = Permutation::from_images(vec![3, 1, 2, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 3, 2], vec![4]]);
        assert!(Permutation::from_images(vec![1, 1]).is_none());
        assert!(p.then(&p.inverse()).is_identity());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
            (2..=max_n).prop_flat_map(move |n| {
                proptest::collection::vec((1..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
                    let letters = ls
                        .into_iter()
                        .map(|(i, p)| Letter::new(i, if p { Sign::Positive } else { Sign::Negative }))
                        .collect();
                    BraidWord::new(n, letters).unwrap()
                })
            })
        }

        fn pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
            (word(max_n, max_len), proptest::collection::vec((0usize..64, any::<bool>()), 0..=max_len)).prop_map(
                |(a, raw)| {
                    let n = a.strands();
                    let letters = raw
                        .into_iter()
                        .map(|(i, p)| Letter::new(1 + i % (n - 1), if p { Sign::Positive } else { Sign::Negative }))
                        .collect();
                    let b = BraidWord::new(n, letters).unwrap();
                    (a, b)
                },
            )
        }

        // Permutation composition done directly on arrays, independent of `then`.
        fn compose_by_hand(a: &Permutation, b: &Permutation) -> Vec<usize> {
            (1..=a.len()).map(|k| b.images()[a.images()[k - 1] - 1]).collect()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            #[test]
            fn word_times_inverse_reduces_to_identity(a in word(6, 12)) {
                prop_assert!(a.compose(&a.inverse()).unwrap().free_reduce().is_empty());
            }

            #[test]
            fn permutation_is_a_homomorphism((a, b) in pair(6, 10)) {
                let ab = a.compose(&b).unwrap().permutation();
                prop_assert_eq!(ab.images(), &compose_by_hand(&a.permutation(), &b.permutation())[..]);
            }

            #[test]
            fn exponent_sum_is_additive((a, b) in pair(6, 10)) {
                prop_assert_eq!(a.compose(&b).unwrap().exponent_sum(), a.exponent_sum() + b.exponent_sum());
            }

            #[test]
            fn markov_moves_shift_exponent_sum((w, g) in pair(5, 8)) {
                prop_assert_eq!(w.markov_conjugate(&g).unwrap().exponent_sum(), w.exponent_sum());
                prop_assert_eq!(w.markov_stabilize(Sign::Positive).exponent_sum(), w.exponent_sum() + 1);
                prop_assert_eq!(w.markov_stabilize(Sign::Negative).exponent_sum(), w.exponent_sum() - 1);
            }

            #[test]
            fn conjugation_conjugates_the_permutation((w, g) in pair(5, 8)) {
                let pg = g.permutation();
                let gw = Permutation::from_images(compose_by_hand(&pg, &w.permutation())).unwrap();
                let expected = compose_by_hand(&gw, &pg.inverse());
                let p = w.markov_conjugate(&g).unwrap().permutation();
                prop_assert_eq!(p.images(), &expected[..]);
            }

            #[test]
            fn pure_words_close_to_n_components(w in word(6, 10)) {
                if w.is_pure() {
                    prop_assert_eq!(w.closure_component_count(), w.strands());
                }
            }

            #[test]
            fn parse_display_round_trip(w in word(7, 12)) {
                prop_assert_eq!(BraidWord::parse(&w.to_string(), w.strands()).unwrap(), w);
            }
        }
    }
}

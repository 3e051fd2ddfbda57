use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::kernel::Monomial;

/// Sequence of variable indices `i_1..i_n`, standing for `dx_{i_1}...dx_{i_n}`.
pub type Word = SmallVec<[u8; 4]>;

/// A left-normal-form monomial `x^a dx_{i_1}...dx_{i_n}`.
///
/// Ordered by form-degree, then monomial, then word; cloning is a refcount
/// bump.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Arc<(Monomial, Word)>);

impl Label {
    pub fn new(mono: Monomial, word: Word) -> Self {
        Label(Arc::new((mono, word)))
    }

    pub fn unit(nvars: usize) -> Self {
        Label::new(Monomial::one(nvars), Word::new())
    }

    pub fn mono(&self) -> &Monomial {
        &self.0 .0
    }

    pub fn word(&self) -> &Word {
        &self.0 .1
    }

    pub fn form_degree(&self) -> usize {
        self.word().len()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        if !self.mono().is_one() || self.word().is_empty() {
            parts.push(self.mono().fmt_with(names));
        }
        for &i in self.word() {
            parts.push(format!("d{}", names[i as usize]));
        }
        parts.join("*")
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.form_degree()
            .cmp(&other.form_degree())
            .then_with(|| self.mono().cmp(other.mono()))
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.mono().exponents(), self.word().as_slice())
    }
}

/// All words of length `n` over `m` letters, in lexicographic order.
pub fn words(m: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * m);
        for w in &out {
            for i in 0..m {
                let mut w2 = w.clone();
                w2.push(i as u8);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

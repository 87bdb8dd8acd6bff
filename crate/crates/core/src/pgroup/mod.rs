//! The partial-group interface and the algorithms that only need word
//! membership and ∇: validators, P-sets, normalizers, quotients and
//! isomorphism search.

use std::sync::Arc;

use thiserror::Error;

mod axioms;
mod charted;
mod iso;
mod normalizer;
pub(crate) mod pset;
mod quotient;
pub mod serial;

pub use axioms::{validate_axioms, AxiomReport, Violation};
pub use charted::{Ambient, ChartedPartialGroup};
pub use iso::{check_isomorphism, check_map, iso_search, IsoOutcome, IsoSearch, MapReport};
pub use normalizer::{insertion_criterion, normalizer};
pub use pset::{friendly_part, validate_pset, FriendlyPart, PSet};
pub use quotient::{Congruence, Quotient};
pub use serial::TabulatedPartialGroup;

/// Elements are dense indices `0..size()`.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgError {
    #[error("unknown element {0}")]
    UnknownElement(Elem),
    #[error("not a word: {0:?}")]
    NotAWord(Vec<Elem>),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("normalizer candidates disagree: {0}")]
    CandidateMismatch(String),
    #[error("invalid partial group data: {0}")]
    InvalidStructure(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

pub trait PartialGroup: Send + Sync {
    fn size(&self) -> usize;
    fn unit(&self) -> Elem;
    fn inverse(&self, e: Elem) -> Elem;
    /// Membership of `w` in P_n, n = |w|. Letters must be valid indices.
    fn is_word(&self, w: &[Elem]) -> bool;
    /// ∇(w), or `None` when `w` is not a word.
    fn nabla(&self, w: &[Elem]) -> Option<Elem>;
    fn name(&self, e: Elem) -> String;

    /// Letters `e` with `w·e` a word. Realizations may override this with
    /// something faster than testing every element.
    fn extensions(&self, w: &[Elem]) -> Vec<Elem> {
        let mut buf = w.to_vec();
        buf.push(0);
        let last = buf.len() - 1;
        (0..self.size())
            .filter(|&e| {
                buf[last] = e;
                self.is_word(&buf)
            })
            .collect()
    }

    /// Largest word length answered exactly, `None` for all lengths.
    fn exact_depth(&self) -> Option<usize> {
        None
    }

    /// The charted realization behind this value, if it is one.
    fn as_charted(&self) -> Option<&ChartedPartialGroup> {
        None
    }
}

pub type PgRef = Arc<dyn PartialGroup>;

fn check_letters(pg: &dyn PartialGroup, w: &[Elem]) -> Result<(), PgError> {
    match w.iter().find(|&&e| e >= pg.size()) {
        Some(&e) => Err(PgError::UnknownElement(e)),
        None => Ok(()),
    }
}

/// Word membership with letter validation.
pub fn word_in(pg: &dyn PartialGroup, w: &[Elem]) -> Result<bool, PgError> {
    check_letters(pg, w)?;
    Ok(w.is_empty() || pg.is_word(w))
}

/// ∇ with letter validation.
pub fn reduce(pg: &dyn PartialGroup, w: &[Elem]) -> Result<Elem, PgError> {
    check_letters(pg, w)?;
    pg.nabla(w).ok_or_else(|| PgError::NotAWord(w.to_vec()))
}

/// Reversed inverse word (π_n⁻¹, …, π₁⁻¹).
pub fn inverse_word(pg: &dyn PartialGroup, w: &[Elem]) -> Vec<Elem> {
    w.iter().rev().map(|&e| pg.inverse(e)).collect()
}

/// Element names of a word, for reports.
pub fn word_names(pg: &dyn PartialGroup, w: &[Elem]) -> Vec<String> {
    w.iter().map(|&e| pg.name(e)).collect()
}

/// Visits every word of length 1..=max_len, shortest prefixes first
/// (depth-first). Stops early when `f` returns false; returns whether the
/// walk finished.
pub fn for_each_word(pg: &dyn PartialGroup, max_len: usize, mut f: impl FnMut(&[Elem]) -> bool) -> bool {
    fn go(pg: &dyn PartialGroup, w: &mut Vec<Elem>, max_len: usize, f: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        if !f(w) {
            return false;
        }
        if w.len() == max_len {
            return true;
        }
        for e in pg.extensions(w) {
            w.push(e);
            let ok = go(pg, w, max_len, f);
            w.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if max_len == 0 {
        return true;
    }
    let mut w = Vec::with_capacity(max_len);
    for e in 0..pg.size() {
        w.push(e);
        let ok = go(pg, &mut w, max_len, &mut f);
        w.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// All words of length exactly `n`, in lexicographic order.
pub fn words_of_len(pg: &dyn PartialGroup, n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for_each_word(pg, n, |w| {
        if w.len() == n {
            out.push(w.to_vec());
        }
        true
    });
    out
}

/// |P_n| for n = 1..=max_len.
pub fn word_counts(pg: &dyn PartialGroup, max_len: usize) -> Vec<usize> {
    let mut counts = vec![0; max_len];
    for_each_word(pg, max_len, |w| {
        counts[w.len() - 1] += 1;
        true
    });
    counts
}

/// Clamp a requested depth to what the realization answers exactly.
pub fn effective_depth(pg: &dyn PartialGroup, depth: usize) -> usize {
    pg.exact_depth().map_or(depth, |d| d.min(depth))
}

/// Whether words of this length are answered exactly.
pub fn fits(pg: &dyn PartialGroup, len: usize) -> bool {
    pg.exact_depth().map_or(true, |d| len <= d)
}

/// Default validation depth: 4, or the `PARADE_DEPTH` environment variable.
pub fn default_depth() -> usize {
    std::env::var("PARADE_DEPTH").ok().and_then(|s| s.parse().ok()).filter(|&d| d >= 2).unwrap_or(4)
}

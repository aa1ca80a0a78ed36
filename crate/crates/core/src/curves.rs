//! Words in the peripheral generators, the half-twist braid action and the
//! audit that every sampled simple closed curve is non-hyperbolic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::psl2::GroupElement;
use crate::rep::SphereRep;

/// Traces with `|tr| > 2 + HYPERBOLIC_MARGIN` are reported as hyperbolic.
pub const HYPERBOLIC_MARGIN: f64 = 1e-6;

/// Words longer than this are not expanded letter by letter.
pub const MAX_WORD_LEN: usize = 100_000;

/// A freely reduced word; letter `k` is `c_k` and `-k` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// `c_i c_{i+1} ... c_j`, the curve around punctures `i..=j`.
pub fn base_curve(n: usize, i: usize, j: usize) -> Result<Word> {
    if i < 1 || i > j || j > n || (i == 1 && j == n) {
        return Err(Error::InvalidRange { n, i, j });
    }
    Ok(Word::new((i..=j).map(|k| k as i32)))
}

/// All base curves `(i, j)` for `n` punctures, in lexicographic order.
pub fn base_curves(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 1 && j == n))
        .collect()
}

fn image_of_generator(k: i32, sign: i32, letter: i32) -> Vec<i32> {
    let (g, s) = (letter.abs(), letter.signum());
    let image = match (sign > 0, g - k) {
        (true, 0) => vec![k, k + 1, -k],
        (true, 1) => vec![k],
        (false, 0) => vec![k + 1],
        (false, 1) => vec![-(k + 1), k, k + 1],
        _ => vec![g],
    };
    if s > 0 {
        image
    } else {
        image.iter().rev().map(|l| -l).collect()
    }
}

/// Half-twist `σ_k^{±1}` acting letterwise: for `+1`,
/// `c_k ↦ c_k c_{k+1} c_k^{-1}` and `c_{k+1} ↦ c_k`; `-1` is the inverse.
pub fn braid_act(k: usize, sign: i32, w: &Word) -> Word {
    let k = k as i32;
    Word::new(w.letters.iter().flat_map(|&l| image_of_generator(k, sign, l)))
}

pub fn evaluate(rho: &SphereRep, w: &Word) -> GroupElement {
    w.letters.iter().fold(GroupElement::IDENTITY, |acc, &l| {
        let g = rho.generator(l.unsigned_abs() as usize);
        if l > 0 {
            acc * g
        } else {
            acc * g.inverse()
        }
    })
}

/// `ρ ∘ σ_k^{±1}` on the generators, so that `evaluate(ρ, braid_act(k, s, w))`
/// equals `evaluate(braid_rep(ρ, k, s), w)`.
pub fn braid_rep(gens: &mut [GroupElement], k: usize, sign: i32) {
    let (a, b) = (gens[k - 1], gens[k]);
    if sign > 0 {
        gens[k - 1] = b.conjugate_by(&a);
        gens[k] = a;
    } else {
        gens[k - 1] = b;
        gens[k] = a.conjugate_by(&b.inverse());
    }
}

/// One sampled curve: a base curve pushed through a sequence of half-twists
/// (applied to the word first to last).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub sample: usize,
    pub base: (usize, usize),
    pub braids: Vec<(usize, i32)>,
    pub abs_trace: f64,
}

impl CurveSample {
    /// The word of the curve, or `None` once it exceeds [`MAX_WORD_LEN`].
    pub fn word(&self, n: usize) -> Option<Word> {
        let mut w = base_curve(n, self.base.0, self.base.1).ok()?;
        for &(k, s) in &self.braids {
            w = braid_act(k, s, &w);
            if w.len() > MAX_WORD_LEN {
                return None;
            }
        }
        Some(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<CurveSample>,
    pub warnings: Vec<CurveSample>,
    pub max_abs_trace: f64,
    pub samples: usize,
}

impl AuditReport {
    pub fn empty() -> Self {
        AuditReport {
            violations: Vec::new(),
            warnings: Vec::new(),
            max_abs_trace: 0.0,
            samples: 0,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Combines two reports; entries are kept sorted by sample index.
    pub fn merge(mut self, other: AuditReport) -> AuditReport {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
        self.violations.sort_by_key(|s| s.sample);
        self.warnings.sort_by_key(|s| s.sample);
        self.max_abs_trace = self.max_abs_trace.max(other.max_abs_trace);
        self.samples += other.samples;
        self
    }

    fn record(&mut self, sample: CurveSample) {
        self.samples += 1;
        self.max_abs_trace = self.max_abs_trace.max(sample.abs_trace);
        if sample.abs_trace > 2.0 + HYPERBOLIC_MARGIN {
            self.violations.push(sample);
        } else if sample.abs_trace > 2.0 {
            self.warnings.push(sample);
        }
    }
}

/// Samples curves cyclically over the base curves, each pushed through a
/// random braid of length uniform in `0..=depth`, and flags hyperbolic images.
///
/// Images are computed from the braided generators rather than the expanded
/// word, whose length grows exponentially with `depth`.
pub fn audit_non_hyperbolic(rho: &SphereRep, depth: usize, samples: usize, seed: u64) -> AuditReport {
    let n = rho.n();
    let bases = base_curves(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AuditReport::empty();
    for sample in 0..samples {
        let base = bases[sample % bases.len()];
        let len = rng.gen_range(0..=depth);
        let braids: Vec<(usize, i32)> = (0..len)
            .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let mut gens = rho.gens().to_vec();
        for &(k, s) in braids.iter().rev() {
            braid_rep(&mut gens, k, s);
        }
        let image = gens[base.0 - 1..base.1]
            .iter()
            .fold(GroupElement::IDENTITY, |acc, g| acc * *g);
        report.record(CurveSample {
            sample,
            base,
            braids,
            abs_trace: image.abs_trace(),
        });
    }
    report
}

//! The defining-set code `C_{D_a} = {(Tr(x d))_{d in D_a} : x in F_{p^m}}`
//! with `D_a = {x != 0 : f(x) = a}`, and two independent weight-hierarchy
//! searches.
//!
//! [`ghw_wei`] minimizes the support of `r`-dimensional subcodes directly.
//! [`ghw_lemma1`] instead maximizes `|D ∩ H|` over `(m - r)`-dimensional
//! subspaces `H` of the message space; it needs the message map to be
//! injective. Both split the subspace stream across worker threads and must
//! give the same answer for any worker count.

use std::collections::BTreeMap;
use std::ops::Range;
use std::thread;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Scalar};
use crate::linalg::{self, Matrix};
use crate::quadform::QuadraticForm;
use crate::subspace::{Subspace, SubspaceEnumerator};

#[derive(Debug, Clone)]
pub struct DefiningSetCode {
    form: QuadraticForm,
    level: Scalar,
    defining_set: Vec<FieldElement>,
    /// Row `j` is the codeword of the `j`-th basis vector `x^j`.
    generator: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub coords: Vec<u32>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }
}

/// `(d_1, ..., d_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightHierarchy {
    pub values: Vec<u64>,
}

impl WeightHierarchy {
    /// Structural violations for a code of length `n`: strict monotonicity,
    /// the generalized Singleton bound `d_r <= n - k + r`, and `d_k = n`.
    pub fn violations(&self, n: u64) -> Vec<String> {
        let k = self.values.len() as u64;
        let mut out = Vec::new();
        for (i, w) in self.values.windows(2).enumerate() {
            if w[0] >= w[1] {
                out.push(format!("d_{} = {} >= d_{} = {}", i + 1, w[0], i + 2, w[1]));
            }
        }
        for (i, &d) in self.values.iter().enumerate() {
            let r = i as u64 + 1;
            if d + k > n + r {
                out.push(format!("d_{r} = {d} exceeds the Singleton bound {}", (n + r).saturating_sub(k)));
            }
        }
        match self.values.last() {
            Some(&last) if last != n => out.push(format!("d_k = {last} != n = {n}")),
            _ => {}
        }
        out
    }
}

/// Knobs for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub jobs: usize,
    /// Stop the `|D ∩ H|` maximization once this count is reached. Off by
    /// default so the search stays independent of any closed form.
    pub lemma1_stop_at: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            lemma1_stop_at: None,
        }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        Self {
            jobs: jobs.max(1),
            ..Self::default()
        }
    }
}

impl DefiningSetCode {
    /// Collects `D_a` in field enumeration order.
    pub fn build(form: &QuadraticForm, a: Scalar) -> Result<Self> {
        let rank = form.rank();
        let m = form.m();
        if rank != m {
            return Err(Error::Degenerate { rank, m });
        }
        let spec = form.spec();
        let level = Scalar(a.0 % spec.p());
        let defining_set: Vec<FieldElement> = spec
            .elements()
            .skip(1)
            .filter(|x| form.evaluate(x.coeffs()) == level)
            .collect();
        if defining_set.is_empty() {
            return Err(Error::EmptyDefiningSet { level: level.0 });
        }
        let mut code = Self {
            form: form.clone(),
            level,
            defining_set,
            generator: Vec::new(),
        };
        code.generator = (0..m)
            .map(|j| {
                let mut c = vec![0; m];
                c[j] = 1;
                code.encode(&spec.element(&c).expect("basis vector")).coords
            })
            .collect();
        Ok(code)
    }

    pub fn spec(&self) -> &FieldSpec {
        self.form.spec()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn level(&self) -> Scalar {
        self.level
    }

    pub fn defining_set(&self) -> &[FieldElement] {
        &self.defining_set
    }

    pub fn len(&self) -> usize {
        self.defining_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defining_set.is_empty()
    }

    /// Message dimension `m`.
    pub fn m(&self) -> usize {
        self.form.m()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// `(Tr(x d_1), ..., Tr(x d_n))`.
    pub fn encode(&self, x: &FieldElement) -> Codeword {
        let spec = self.spec();
        Codeword {
            coords: self
                .defining_set
                .iter()
                .map(|d| spec.trace(&spec.mul(x, d)).0)
                .collect(),
        }
    }

    /// Codeword of a message given by coordinates, via the generator matrix.
    pub fn encode_coords(&self, x: &[u32]) -> Vec<u32> {
        let fp = self.spec().prime_field();
        let mut out = vec![0u32; self.len()];
        for (&xj, row) in x.iter().zip(&self.generator) {
            if xj == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = fp.add(*o, fp.mul(xj, g));
            }
        }
        out
    }

    /// Rank of the message-to-codeword map.
    pub fn dimension(&self) -> usize {
        linalg::rank(self.spec().prime_field(), &self.generator, self.len())
    }

    fn require_full_dimension(&self) -> Result<()> {
        let dimension = self.dimension();
        if dimension != self.m() {
            return Err(Error::DegenerateDimension {
                dimension,
                m: self.m(),
            });
        }
        Ok(())
    }

    /// Exhaustive weight distribution over all `p^m` messages.
    pub fn weight_distribution(&self) -> BTreeMap<usize, u64> {
        let mut dist = BTreeMap::new();
        let full = Subspace::full(self.spec().prime_field(), self.m());
        for x in full.members() {
            let w = self.encode_coords(&x).iter().filter(|&&c| c != 0).count();
            *dist.entry(w).or_insert(0) += 1;
        }
        dist
    }

    fn support_mask(&self, x: &[u32]) -> Vec<u64> {
        let mut mask = vec![0u64; self.len().div_ceil(64)];
        for (i, c) in self.encode_coords(x).iter().enumerate() {
            if *c != 0 {
                mask[i / 64] |= 1 << (i % 64);
            }
        }
        mask
    }

    /// Indicator of `D` over integer-encoded field elements.
    fn indicator(&self) -> Vec<bool> {
        let p = self.spec().p();
        let mut ind = vec![false; self.spec().order() as usize];
        for d in &self.defining_set {
            ind[d.index(p) as usize] = true;
        }
        ind
    }
}

/// Builds `C_{D_a}`; fails on a degenerate form or an empty defining set.
pub fn build_code(form: &QuadraticForm, a: Scalar) -> Result<DefiningSetCode> {
    DefiningSetCode::build(form, a)
}

fn check_r(code: &DefiningSetCode, r: usize) -> Result<()> {
    if r == 0 || r > code.m() {
        return Err(Error::DimensionOutOfRange { r, max: code.m() });
    }
    Ok(())
}

/// Runs `work` on disjoint index ranges of the stream, one per worker, and
/// folds the per-range results with `combine`.
fn scan<T, W, C>(en: &SubspaceEnumerator, jobs: usize, work: W, combine: C) -> T
where
    T: Send,
    W: Fn(Range<u64>) -> T + Sync,
    C: Fn(T, T) -> T,
{
    let ranges = en.partition(jobs.max(1));
    if ranges.len() <= 1 {
        return work(0..en.len());
    }
    let results: Vec<T> = thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let work = &work;
                s.spawn(move || work(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    results.into_iter().reduce(combine).expect("at least one range")
}

/// `d_r` as the minimum support size over `r`-dimensional subcodes.
pub fn ghw_wei(code: &DefiningSetCode, r: usize) -> Result<u64> {
    ghw_wei_with(code, r, SearchOptions::default())
}

pub fn ghw_wei_with(code: &DefiningSetCode, r: usize, opts: SearchOptions) -> Result<u64> {
    check_r(code, r)?;
    code.require_full_dimension()?;
    let en = SubspaceEnumerator::for_field(code.spec(), r)?;
    let best = scan(
        &en,
        opts.jobs,
        |range| {
            let mut best = u64::MAX;
            for v in en.range(range) {
                let mut mask = code.support_mask(&v.basis()[0]);
                for b in &v.basis()[1..] {
                    for (acc, w) in mask.iter_mut().zip(code.support_mask(b)) {
                        *acc |= w;
                    }
                }
                let size = mask.iter().map(|w| w.count_ones() as u64).sum();
                best = best.min(size);
            }
            best
        },
        u64::min,
    );
    Ok(best)
}

/// `d_r = n - max |D ∩ H|` over `(m - r)`-dimensional `H`.
pub fn ghw_lemma1(code: &DefiningSetCode, r: usize) -> Result<u64> {
    ghw_lemma1_with(code, r, SearchOptions::default())
}

pub fn ghw_lemma1_with(code: &DefiningSetCode, r: usize, opts: SearchOptions) -> Result<u64> {
    check_r(code, r)?;
    code.require_full_dimension()?;
    let indicator = code.indicator();
    let en = SubspaceEnumerator::for_field(code.spec(), code.m() - r)?;
    let stop = opts.lemma1_stop_at.unwrap_or(u64::MAX);
    let best = scan(
        &en,
        opts.jobs,
        |range| {
            let mut best = 0u64;
            for h in en.range(range) {
                let hits = h
                    .member_indices()
                    .filter(|&i| indicator[i as usize])
                    .count() as u64;
                best = best.max(hits);
                if best >= stop {
                    break;
                }
            }
            best
        },
        u64::max,
    );
    Ok(code.len() as u64 - best)
}

/// Which exhaustive search to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Wei,
    Lemma1,
}

pub fn weight_hierarchy(
    code: &DefiningSetCode,
    method: SearchMethod,
    opts: SearchOptions,
) -> Result<WeightHierarchy> {
    code.require_full_dimension()?;
    let values = (1..=code.m())
        .map(|r| match method {
            SearchMethod::Wei => ghw_wei_with(code, r, opts),
            SearchMethod::Lemma1 => ghw_lemma1_with(code, r, opts),
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(WeightHierarchy { values })
}

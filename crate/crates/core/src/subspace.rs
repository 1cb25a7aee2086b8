//! `F_p`-subspaces of `F_p^m` in canonical reduced row-echelon form, and
//! their exhaustive enumeration.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, PrimeField};
use crate::linalg;

/// A subspace of `F_p^m`, stored as its RREF basis. Two subspaces are equal
/// iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    fp: PrimeField,
    m: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(fp: PrimeField, m: usize) -> Self {
        Self {
            fp,
            m,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(fp: PrimeField, m: usize) -> Self {
        Self {
            fp,
            m,
            basis: linalg::identity(m),
            pivots: (0..m).collect(),
        }
    }

    /// RREF of the span of `vectors`; entries are reduced mod `p`.
    pub fn canonicalize(fp: PrimeField, m: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
            rows.push(v.iter().map(|&c| c % fp.p()).collect::<Vec<u32>>());
        }
        let pivots = linalg::rref(fp, &mut rows, m);
        Ok(Self {
            fp,
            m,
            basis: rows,
            pivots,
        })
    }

    /// Span of field elements viewed as coordinate vectors.
    pub fn span(spec: &FieldSpec, elements: &[FieldElement]) -> Result<Self> {
        let rows: Vec<Vec<u32>> = elements.iter().map(|e| e.coeffs().to_vec()).collect();
        Self::canonicalize(spec.prime_field(), spec.m(), &rows)
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        // reduce v against the RREF basis; membership iff the residue vanishes
        let mut w: Vec<u32> = v.iter().map(|&c| c % self.p()).collect();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for (x, &b) in w.iter_mut().zip(row) {
                    *x = self.fp.sub(*x, self.fp.mul(c, b));
                }
            }
        }
        w.iter().all(|&c| c == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Vectors orthogonal to every basis row under the standard dot product.
    fn annihilator_rows(&self) -> Vec<Vec<u32>> {
        if self.basis.is_empty() {
            return linalg::identity(self.m);
        }
        linalg::kernel(self.fp, &self.basis, self.m)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.m, other.m, "subspaces of different ambient spaces");
        let mut constraints = self.annihilator_rows();
        constraints.extend(other.annihilator_rows());
        let rows = if constraints.is_empty() {
            linalg::identity(self.m)
        } else {
            linalg::kernel(self.fp, &constraints, self.m)
        };
        Subspace::canonicalize(self.fp, self.m, &rows).expect("rows have ambient length")
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.m, other.m, "subspaces of different ambient spaces");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::canonicalize(self.fp, self.m, &rows).expect("rows have ambient length")
    }

    /// Number of vectors, `p^dim`.
    pub fn cardinality(&self) -> u64 {
        (self.p() as u64).pow(self.dim() as u32)
    }

    /// Every vector of the subspace exactly once.
    pub fn members(&self) -> Members<'_> {
        Members {
            space: self,
            digits: vec![0; self.dim()],
            current: vec![0; self.m],
            done: false,
        }
    }

    /// Integer encodings `sum v_i p^i` of every member.
    pub fn member_indices(&self) -> impl Iterator<Item = u64> + '_ {
        let p = self.p() as u64;
        self.members()
            .map(move |v| v.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64))
    }

    /// Parses the `row;row;...` format with comma-separated digits per row.
    /// The empty string is the zero subspace.
    pub fn parse(fp: PrimeField, m: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut rows = Vec::new();
        if !s.is_empty() {
            for row in s.split(';') {
                let v = row
                    .split(',')
                    .map(|d| d.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<u32>, _>>()
                    .map_err(|e| Error::Verification(format!("bad subspace row {row:?}: {e}")))?;
                rows.push(v);
            }
        }
        Self::canonicalize(fp, m, &rows)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Iterator over all vectors of a subspace, as coordinate vectors.
pub struct Members<'a> {
    space: &'a Subspace,
    digits: Vec<u32>,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for Members<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let fp = self.space.fp;
        // base-p counter over the coefficients; bumping digit k adds basis row k,
        // and a wrap to zero has added it p times, which is zero
        let mut k = 0;
        loop {
            if k == self.digits.len() {
                self.done = true;
                break;
            }
            for (x, &b) in self.current.iter_mut().zip(&self.space.basis[k]) {
                *x = fp.add(*x, b);
            }
            self.digits[k] += 1;
            if self.digits[k] == fp.p() {
                self.digits[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        Some(out)
    }
}

/// Number of `r`-dimensional subspaces of `F_p^m`.
pub fn gaussian_binomial(m: usize, r: usize, p: u32) -> Result<u128> {
    if r > m {
        return Err(Error::DimensionOutOfRange { r, max: m });
    }
    let p = p as u128;
    let pow = |e: usize| -> Result<u128> {
        p.checked_pow(e as u32).ok_or(Error::Overflow("gaussian binomial"))
    };
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num = num
            .checked_mul(pow(m - i)? - 1)
            .ok_or(Error::Overflow("gaussian binomial"))?;
        den = den
            .checked_mul(pow(r - i)? - 1)
            .ok_or(Error::Overflow("gaussian binomial"))?;
    }
    Ok(num / den)
}

#[derive(Debug, Clone)]
struct Pattern {
    pivots: Vec<usize>,
    /// (row, column) of each free entry, row-major.
    free: Vec<(usize, usize)>,
    offset: u64,
    count: u64,
}

/// All `r`-dimensional subspaces of `F_p^m`, ordered by pivot-column set
/// (lexicographic) and then by free entries (row-major, first entry most
/// significant). Supports random access so the stream can be split into
/// disjoint index ranges.
#[derive(Debug, Clone)]
pub struct SubspaceEnumerator {
    fp: PrimeField,
    m: usize,
    r: usize,
    patterns: Vec<Pattern>,
    total: u64,
}

impl SubspaceEnumerator {
    pub fn new(fp: PrimeField, m: usize, r: usize) -> Result<Self> {
        if r > m {
            return Err(Error::DimensionOutOfRange { r, max: m });
        }
        let mut patterns = Vec::new();
        let mut total = 0u64;
        for pivots in combinations(m, r) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..m)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let count = (fp.p() as u64)
                .checked_pow(free.len() as u32)
                .ok_or(Error::Overflow("subspace count"))?;
            patterns.push(Pattern {
                pivots,
                free,
                offset: total,
                count,
            });
            total = total
                .checked_add(count)
                .ok_or(Error::Overflow("subspace count"))?;
        }
        Ok(Self {
            fp,
            m,
            r,
            patterns,
            total,
        })
    }

    pub fn for_field(spec: &FieldSpec, r: usize) -> Result<Self> {
        Self::new(spec.prime_field(), spec.m(), r)
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    /// The subspace at position `index` of the stream.
    pub fn get(&self, index: u64) -> Option<Subspace> {
        if index >= self.total {
            return None;
        }
        let pi = self
            .patterns
            .partition_point(|pat| pat.offset + pat.count <= index);
        let pat = &self.patterns[pi];
        let mut rest = index - pat.offset;
        let mut basis = vec![vec![0u32; self.m]; self.r];
        for (row, &pc) in pat.pivots.iter().enumerate() {
            basis[row][pc] = 1;
        }
        let p = self.fp.p() as u64;
        for &(row, col) in pat.free.iter().rev() {
            basis[row][col] = (rest % p) as u32;
            rest /= p;
        }
        Some(Subspace {
            fp: self.fp,
            m: self.m,
            basis,
            pivots: pat.pivots.clone(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        self.range(0..self.total)
    }

    pub fn range(&self, range: Range<u64>) -> impl Iterator<Item = Subspace> + '_ {
        let end = range.end.min(self.total);
        (range.start..end).map(move |i| self.get(i).expect("index in range"))
    }

    /// Splits `0..len` into at most `parts` contiguous, disjoint, covering ranges.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let chunk = self.total.div_ceil(parts).max(1);
        (0..parts)
            .map(|i| (i * chunk).min(self.total)..((i + 1) * chunk).min(self.total))
            .filter(|r| !r.is_empty())
            .collect()
    }
}

/// `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

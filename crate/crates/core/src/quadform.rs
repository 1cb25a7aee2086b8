//! Quadratic forms on `F_p^m` given by symmetric Gram matrices.
//!
//! A form is `f(x) = x^T A x` with associated bilinear form `F(x, y) = x^T A y`
//! (odd characteristic, so the factor one half in the polarization identity is
//! absorbed into `A`). Coordinates are taken in the polynomial basis of the
//! attached [`FieldSpec`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, PrimeField, Scalar};
use crate::linalg::{self, Matrix};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    spec: FieldSpec,
    gram: Matrix,
}

/// Result of congruence diagonalization: `M^T A M = diag(diagonal)`, with the
/// nonzero entries first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub change_of_basis: Matrix,
    pub diagonal: Vec<u32>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&d| d != 0).count()
    }
}

/// Rank and discriminant sign of a form restricted to a subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Restriction {
    pub dim: usize,
    pub rank: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Which closed form governs the weight hierarchy of `C_{D_a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremTag {
    /// `m` even, `a != 0`.
    T1,
    /// `m` odd, `a != 0`, `eta(a) = master_sign * epsilon`.
    T2,
    /// `m` odd, `a != 0`, `eta(a) = -master_sign * epsilon`.
    T3,
    /// `m` even, `a = 0`, `epsilon = master_sign`.
    T4,
    /// `m` even, `a = 0`, `epsilon = -master_sign`.
    T5,
    /// `m` odd, `a = 0`.
    T6,
}

impl TheoremTag {
    /// Case dispatch on `(p, m, epsilon, a)`.
    pub fn select(p: u32, m: usize, epsilon: i8, a: Scalar) -> TheoremTag {
        let fp = PrimeField::new(p).expect("odd prime");
        let master = master_sign(p, m);
        let a_zero = a.0 % p == 0;
        match (m % 2 == 0, a_zero) {
            (true, false) => TheoremTag::T1,
            (true, true) if epsilon == master => TheoremTag::T4,
            (true, true) => TheoremTag::T5,
            (false, true) => TheoremTag::T6,
            (false, false) if fp.character(a.0) == master * epsilon => TheoremTag::T2,
            (false, false) => TheoremTag::T3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::T1 => "T1",
            TheoremTag::T2 => "T2",
            TheoremTag::T3 => "T3",
            TheoremTag::T4 => "T4",
            TheoremTag::T5 => "T5",
            TheoremTag::T6 => "T6",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(-1)^{m(p-1)/4}` for even `m`, `(-1)^{(m-1)(p-1)/4}` for odd `m`.
pub fn master_sign(p: u32, m: usize) -> i8 {
    let half = (p as u64 - 1) / 2;
    let exponent = (m as u64 / 2) * half;
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormClassification {
    pub m_parity: Parity,
    pub rank: usize,
    pub epsilon: i8,
    pub master_sign: i8,
    pub nondegenerate: bool,
    pub theorem: TheoremTag,
}

impl QuadraticForm {
    /// Builds a form from a Gram matrix; entries are reduced mod `p` (negative
    /// values allowed) and must be symmetric afterwards.
    pub fn from_gram(spec: FieldSpec, entries: &[Vec<i64>]) -> Result<Self> {
        let m = spec.m();
        let fp = spec.prime_field();
        if entries.len() != m || entries.iter().any(|r| r.len() != m) {
            return Err(Error::GramShape {
                m,
                rows: entries.len(),
                cols: entries.first().map_or(0, |r| r.len()),
            });
        }
        let gram: Matrix = entries
            .iter()
            .map(|r| r.iter().map(|&v| fp.reduce(v)).collect())
            .collect();
        for i in 0..m {
            for j in i + 1..m {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { spec, gram })
    }

    pub fn identity(spec: FieldSpec) -> Self {
        let gram = linalg::identity(spec.m());
        Self { spec, gram }
    }

    pub fn diagonal(spec: FieldSpec, diag: &[i64]) -> Result<Self> {
        let m = spec.m();
        if diag.len() != m {
            return Err(Error::GramShape {
                m,
                rows: diag.len(),
                cols: diag.len(),
            });
        }
        let entries: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { diag[i] } else { 0 }).collect())
            .collect();
        Self::from_gram(spec, &entries)
    }

    /// The form `x -> Tr(gamma x^2)`; its Gram entries are `Tr(gamma v_i v_j)`
    /// over the polynomial basis `v_i = x^i`.
    pub fn from_trace_scale(spec: FieldSpec, gamma: &FieldElement) -> Result<Self> {
        if gamma.coeffs().len() != spec.m() {
            return Err(Error::ForeignElement {
                p: spec.p(),
                m: spec.m(),
            });
        }
        if gamma.is_zero() {
            return Err(Error::ZeroScale);
        }
        let m = spec.m();
        let basis: Vec<FieldElement> = (0..m)
            .map(|i| {
                let mut c = vec![0; m];
                c[i] = 1;
                spec.element(&c).expect("basis vector")
            })
            .collect();
        let mut gram = vec![vec![0u32; m]; m];
        for i in 0..m {
            for j in i..m {
                let prod = spec.mul(gamma, &spec.mul(&basis[i], &basis[j]));
                let t = spec.trace(&prod).0;
                gram[i][j] = t;
                gram[j][i] = t;
            }
        }
        Ok(Self { spec, gram })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    pub fn p(&self) -> u32 {
        self.spec.p()
    }

    fn fp(&self) -> PrimeField {
        self.spec.prime_field()
    }

    /// `x^T A x`.
    pub fn evaluate(&self, x: &[u32]) -> Scalar {
        Scalar(linalg::bilinear(self.fp(), &self.gram, x, x))
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[u32], y: &[u32]) -> Scalar {
        Scalar(linalg::bilinear(self.fp(), &self.gram, x, y))
    }

    pub fn diagonalize(&self) -> Diagonalization {
        diagonalize_matrix(self.fp(), &self.gram)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.fp(), &self.gram, self.m())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.m()
    }

    /// `eta(Delta(f))`: the character of the determinant at full rank, of the
    /// product of the nonzero diagonal entries otherwise, and `1` at rank 0.
    pub fn discriminant_sign(&self) -> i8 {
        let fp = self.fp();
        if self.rank() == self.m() {
            return fp.character(linalg::det(fp, &self.gram));
        }
        sign_of_diagonal(fp, &self.diagonalize())
    }

    /// Determinant of `(F(b_i, b_j))`.
    pub fn gram_discriminant(&self, elements: &[Vec<u32>]) -> Scalar {
        Scalar(linalg::det(self.fp(), &self.gram_of(elements)))
    }

    fn gram_of(&self, elements: &[Vec<u32>]) -> Matrix {
        elements
            .iter()
            .map(|x| elements.iter().map(|y| self.bilinear(x, y).0).collect())
            .collect()
    }

    /// Rank and discriminant sign of `f` restricted to `h`. The zero subspace
    /// has rank 0 and sign 1.
    pub fn restrict(&self, h: &Subspace) -> Restriction {
        let g = self.gram_of(h.basis());
        let fp = self.fp();
        let diag = diagonalize_matrix(fp, &g);
        Restriction {
            dim: h.dim(),
            rank: diag.rank(),
            sign: sign_of_diagonal(fp, &diag),
        }
    }

    /// `{x : F(x, y) = 0 for all y in h}`. Requires a non-degenerate form.
    pub fn dual_space(&self, h: &Subspace) -> Result<Subspace> {
        let rank = self.rank();
        if rank != self.m() {
            return Err(Error::Degenerate { rank, m: self.m() });
        }
        Ok(self.orthogonal(h))
    }

    fn orthogonal(&self, h: &Subspace) -> Subspace {
        let m = self.m();
        let fp = self.fp();
        if h.dim() == 0 {
            return Subspace::full(fp, m);
        }
        // rows b^T A for each basis vector b
        let constraints = linalg::mul(fp, &h.basis().to_vec(), &self.gram, m);
        let rows = linalg::kernel(fp, &constraints, m);
        Subspace::canonicalize(fp, m, &rows).expect("kernel rows have ambient length")
    }

    /// Totally isotropic: `F` vanishes on all pairs of basis vectors.
    pub fn is_totally_isotropic(&self, h: &Subspace) -> bool {
        let b = h.basis();
        b.iter()
            .enumerate()
            .all(|(i, x)| b[i..].iter().all(|y| self.bilinear(x, y).is_zero()))
    }

    pub fn classify(&self, a: Scalar) -> Result<FormClassification> {
        let rank = self.rank();
        let m = self.m();
        if rank != m {
            return Err(Error::Degenerate { rank, m });
        }
        let epsilon = self.discriminant_sign();
        Ok(FormClassification {
            m_parity: if m % 2 == 0 { Parity::Even } else { Parity::Odd },
            rank,
            epsilon,
            master_sign: master_sign(self.p(), m),
            nondegenerate: true,
            theorem: TheoremTag::select(self.p(), m, epsilon, Scalar(a.0 % self.p())),
        })
    }
}

fn sign_of_diagonal(fp: PrimeField, d: &Diagonalization) -> i8 {
    let prod = d
        .diagonal
        .iter()
        .take_while(|&&x| x != 0)
        .fold(1u32, |acc, &x| fp.mul(acc, x));
    fp.character(prod)
}

/// Symmetric Gaussian elimination by congruence. Pivot: first nonzero
/// diagonal entry of the remaining block; failing that, the first nonzero
/// off-diagonal `(i, j)` in row-major order, made diagonal by `v_i <- v_i + v_j`.
pub fn diagonalize_matrix(fp: PrimeField, gram: &Matrix) -> Diagonalization {
    let n = gram.len();
    let mut a = gram.clone();
    let mut basis = linalg::identity(n);

    // basis columns hold the new basis vectors in old coordinates
    let col_axpy = |mat: &mut Matrix, dst: usize, src: usize, c: u32| {
        for row in mat.iter_mut() {
            let v = fp.mul(c, row[src]);
            row[dst] = fp.add(row[dst], v);
        }
    };
    let row_axpy = |mat: &mut Matrix, dst: usize, src: usize, c: u32| {
        for j in 0..mat[dst].len() {
            let v = fp.mul(c, mat[src][j]);
            mat[dst][j] = fp.add(mat[dst][j], v);
        }
    };

    for k in 0..n {
        let pivot = match (k..n).find(|&i| a[i][i] != 0) {
            Some(i) => i,
            None => {
                let off = (k..n).find_map(|i| (i + 1..n).find(|&j| a[i][j] != 0).map(|j| (i, j)));
                let Some((i, j)) = off else {
                    break;
                };
                col_axpy(&mut a, i, j, 1);
                row_axpy(&mut a, i, j, 1);
                col_axpy(&mut basis, i, j, 1);
                i
            }
        };
        if pivot != k {
            a.swap(pivot, k);
            for row in a.iter_mut() {
                row.swap(pivot, k);
            }
            for row in basis.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let inv = fp.inv(a[k][k]).expect("pivot is nonzero");
        for j in k + 1..n {
            if a[j][k] == 0 {
                continue;
            }
            let c = fp.neg(fp.mul(a[j][k], inv));
            col_axpy(&mut a, j, k, c);
            row_axpy(&mut a, j, k, c);
            col_axpy(&mut basis, j, k, c);
        }
    }
    Diagonalization {
        diagonal: (0..n).map(|i| a[i][i]).collect(),
        change_of_basis: basis,
    }
}

/// Textual form descriptors: `identity`, `diag:c1,...,cm`,
/// `gram:a11,a12,...,amm` (row-major), and `trace:g` where `g` is the integer
/// encoding of the scale (or its comma-separated coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormDescriptor {
    Identity,
    Diagonal(Vec<i64>),
    Gram(Vec<i64>),
    TraceIndex(u64),
    TraceCoords(Vec<u32>),
}

fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("bad number {t:?}")))
        .collect()
}

impl FormDescriptor {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "identity" {
            return Ok(FormDescriptor::Identity);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("unknown form {s:?}; expected identity, diag:..., gram:... or trace:..."))?;
        match kind {
            "diag" => Ok(FormDescriptor::Diagonal(parse_list(rest)?)),
            "gram" => Ok(FormDescriptor::Gram(parse_list(rest)?)),
            "trace" if rest.contains(',') => Ok(FormDescriptor::TraceCoords(parse_list(rest)?)),
            "trace" => rest
                .trim()
                .parse()
                .map(FormDescriptor::TraceIndex)
                .map_err(|_| format!("bad trace scale {rest:?}")),
            other => Err(format!("unknown form kind {other:?}")),
        }
    }

    pub fn build(&self, spec: &FieldSpec) -> Result<QuadraticForm> {
        let m = spec.m();
        match self {
            FormDescriptor::Identity => Ok(QuadraticForm::identity(spec.clone())),
            FormDescriptor::Diagonal(d) => QuadraticForm::diagonal(spec.clone(), d),
            FormDescriptor::Gram(entries) => {
                if entries.len() != m * m {
                    return Err(Error::GramShape {
                        m,
                        rows: entries.len() / m.max(1),
                        cols: m,
                    });
                }
                let rows: Vec<Vec<i64>> = entries.chunks(m).map(|c| c.to_vec()).collect();
                QuadraticForm::from_gram(spec.clone(), &rows)
            }
            FormDescriptor::TraceIndex(i) => {
                if *i >= spec.order() {
                    return Err(Error::ForeignElement { p: spec.p(), m });
                }
                QuadraticForm::from_trace_scale(spec.clone(), &spec.from_index(*i))
            }
            FormDescriptor::TraceCoords(c) => {
                let gamma = spec.element(c)?;
                QuadraticForm::from_trace_scale(spec.clone(), &gamma)
            }
        }
    }
}

impl fmt::Display for FormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FormDescriptor::Identity => f.write_str("identity"),
            FormDescriptor::Diagonal(d) => write!(f, "diag:{}", join(d)),
            FormDescriptor::Gram(g) => write!(f, "gram:{}", join(g)),
            FormDescriptor::TraceIndex(i) => write!(f, "trace:{i}"),
            FormDescriptor::TraceCoords(c) => {
                let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "trace:{}", c.join(","))
            }
        }
    }
}

/// Parses a comma-separated ascending-degree coefficient list such as `1,0,1`.
pub fn parse_modulus(s: &str) -> std::result::Result<Vec<u32>, String> {
    parse_list(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::SubspaceEnumerator;

    fn spec(p: u32, m: usize) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn diag(p: u32, d: &[i64]) -> QuadraticForm {
        QuadraticForm::diagonal(spec(p, d.len()), d).unwrap()
    }

    fn gram(p: u32, rows: &[&[i64]]) -> QuadraticForm {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        QuadraticForm::from_gram(spec(p, rows.len()), &rows).unwrap()
    }

    fn line(p: u32, v: &[u32]) -> Subspace {
        Subspace::canonicalize(PrimeField::new(p).unwrap(), v.len(), &[v.to_vec()]).unwrap()
    }

    #[test]
    fn from_gram_examples() {
        let f = QuadraticForm::identity(spec(3, 2));
        assert_eq!(f.evaluate(&[1, 1]), Scalar(2));
        let g = diag(3, &[1, 2]);
        assert_eq!(g.evaluate(&[0, 1]), Scalar(2));
        assert!(QuadraticForm::from_gram(spec(3, 2), &[vec![0, 1], vec![1, 2]]).is_ok());
        assert_eq!(
            QuadraticForm::from_gram(spec(3, 2), &[vec![0, 1], vec![2, 2]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
        assert!(matches!(
            QuadraticForm::from_gram(spec(3, 2), &[vec![1]]),
            Err(Error::GramShape { .. })
        ));
    }

    #[test]
    fn trace_form_examples() {
        let s = spec(3, 2);
        let f = QuadraticForm::from_trace_scale(s.clone(), &s.one()).unwrap();
        assert_eq!(f.gram(), &vec![vec![2, 0], vec![0, 1]]);
        let s1 = spec(3, 1);
        let f1 = QuadraticForm::from_trace_scale(s1.clone(), &s1.one()).unwrap();
        assert_eq!(f1.gram(), &vec![vec![1]]);
        assert_eq!(
            QuadraticForm::from_trace_scale(s.clone(), &s.zero()),
            Err(Error::ZeroScale)
        );
    }

    #[test]
    fn trace_forms_are_nondegenerate() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let s = spec(p, m);
            for gamma in s.elements().skip(1) {
                let f = QuadraticForm::from_trace_scale(s.clone(), &gamma).unwrap();
                assert_eq!(f.rank(), m);
                // agrees with evaluating Tr(gamma x^2) directly
                for x in s.elements().step_by(7) {
                    let direct = s.trace(&s.mul(&gamma, &s.mul(&x, &x)));
                    assert_eq!(f.evaluate(x.coeffs()), direct);
                }
            }
        }
    }

    #[test]
    fn evaluate_and_bilinear_examples() {
        let f = QuadraticForm::identity(spec(3, 2));
        assert_eq!(f.evaluate(&[0, 0]), Scalar(0));
        assert_eq!(f.bilinear(&[1, 2], &[0, 0]), Scalar(0));
        assert_eq!(f.bilinear(&[1, 0], &[0, 1]), Scalar(0));
        assert_eq!(diag(3, &[2, 1]).evaluate(&[1, 1]), Scalar(0));
        let h = gram(3, &[&[0, 1], &[1, 0]]);
        assert_eq!(h.bilinear(&[1, 0], &[0, 1]), Scalar(1));
    }

    #[test]
    fn polarization_exhaustive() {
        for f in [gram(3, &[&[1, 2, 0], &[2, 0, 1], &[0, 1, 2]]), gram(5, &[&[0, 3], &[3, 1]])] {
            let s = f.spec().clone();
            let fp = s.prime_field();
            for x in s.elements() {
                for y in s.elements() {
                    let lhs = fp.mul(2, f.bilinear(x.coeffs(), y.coeffs()).0);
                    let sum = s.add(&x, &y);
                    let rhs = fp.sub(
                        fp.sub(f.evaluate(sum.coeffs()).0, f.evaluate(x.coeffs()).0),
                        f.evaluate(y.coeffs()).0,
                    );
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.bilinear(x.coeffs(), y.coeffs()), f.bilinear(y.coeffs(), x.coeffs()));
                }
                assert_eq!(f.bilinear(x.coeffs(), x.coeffs()), f.evaluate(x.coeffs()));
            }
        }
    }

    fn check_diagonalization(f: &QuadraticForm) {
        let fp = f.spec().prime_field();
        let m = f.m();
        let d = f.diagonalize();
        let mt = linalg::transpose(&d.change_of_basis, m);
        let prod = linalg::mul(fp, &linalg::mul(fp, &mt, f.gram(), m), &d.change_of_basis, m);
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { d.diagonal[i] } else { 0 };
                assert_eq!(prod[i][j], want);
            }
        }
        assert_ne!(linalg::det(fp, &d.change_of_basis), 0);
        assert_eq!(d.rank(), f.rank());
        assert!(d.diagonal[d.rank()..].iter().all(|&x| x == 0));
    }

    #[test]
    fn diagonalize_examples() {
        let f = diag(3, &[1, 2, 0]);
        let d = f.diagonalize();
        assert_eq!(d.change_of_basis, linalg::identity(3));
        assert_eq!(d.diagonal, vec![1, 2, 0]);

        let h = gram(3, &[&[0, 1], &[1, 0]]);
        let d = h.diagonalize();
        let fp = PrimeField::new(3).unwrap();
        assert_eq!(fp.character(fp.mul(d.diagonal[0], d.diagonal[1])), -1);
        check_diagonalization(&h);

        let g = diag(3, &[1, 1, 1, 0]);
        assert_eq!(g.rank(), 3);
        assert_eq!(g.diagonalize().diagonal.iter().filter(|&&x| x == 0).count(), 1);
    }

    #[test]
    fn diagonalize_random_forms() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for p in [3u32, 5, 7] {
            for m in 1..=5 {
                for _ in 0..30 {
                    let mut rows = vec![vec![0i64; m]; m];
                    for i in 0..m {
                        for j in i..m {
                            // bias toward zeros so hyperbolic / degenerate cases show up
                            let v = if next() % 3 == 0 { (next() % p as u64) as i64 } else { 0 };
                            rows[i][j] = v;
                            rows[j][i] = v;
                        }
                    }
                    let f = QuadraticForm::from_gram(spec(p, m), &rows).unwrap();
                    check_diagonalization(&f);
                    if f.rank() == m {
                        assert_eq!(sign_of_diagonal(PrimeField::new(p).unwrap(), &f.diagonalize()), f.discriminant_sign());
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_invariance() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for p in [3u32, 5] {
            let fp = PrimeField::new(p).unwrap();
            let m = 4;
            let base = gram(p, &[&[1, 1, 0, 0], &[1, 2, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 2]]);
            let mut tried = 0;
            while tried < 50 {
                let mm: Matrix = (0..m).map(|_| (0..m).map(|_| (next() % p as u64) as u32).collect()).collect();
                if linalg::det(fp, &mm) == 0 {
                    continue;
                }
                tried += 1;
                let mt = linalg::transpose(&mm, m);
                let g = linalg::mul(fp, &linalg::mul(fp, &mt, base.gram(), m), &mm, m);
                let rows: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
                let f = QuadraticForm::from_gram(spec(p, m), &rows).unwrap();
                assert_eq!(f.discriminant_sign(), base.discriminant_sign());
                for a in 0..p {
                    assert_eq!(f.classify(Scalar(a)).unwrap(), base.classify(Scalar(a)).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_and_sign_examples() {
        assert_eq!(QuadraticForm::identity(spec(3, 4)).rank(), 4);
        assert_eq!(diag(3, &[0, 0, 0]).rank(), 0);
        assert_eq!(diag(3, &[1, 2, 0]).rank(), 2);
        assert_eq!(QuadraticForm::identity(spec(3, 2)).discriminant_sign(), 1);
        assert_eq!(diag(3, &[1, 2]).discriminant_sign(), -1);
        assert_eq!(diag(3, &[0, 0]).discriminant_sign(), 1);
    }

    #[test]
    fn gram_discriminant_examples() {
        let f = diag(3, &[1, 2]);
        assert_eq!(f.gram_discriminant(&[vec![1, 1]]), Scalar(0));
        let id = QuadraticForm::identity(spec(3, 2));
        assert_eq!(id.gram_discriminant(&[vec![1, 0], vec![0, 1]]), Scalar(1));
        let g = gram(5, &[&[1, 2, 0], &[2, 3, 4], &[0, 4, 1]]);
        let basis = linalg::identity(3);
        assert_eq!(g.gram_discriminant(&basis).0, linalg::det(PrimeField::new(5).unwrap(), g.gram()));
    }

    #[test]
    fn restrict_examples() {
        let id = QuadraticForm::identity(spec(3, 2));
        let full = Subspace::full(PrimeField::new(3).unwrap(), 2);
        let r = id.restrict(&full);
        assert_eq!((r.rank, r.sign), (2, 1));
        let r = id.restrict(&line(3, &[1, 1]));
        assert_eq!((r.rank, r.sign), (1, -1));
        let r = diag(3, &[1, 2]).restrict(&line(3, &[1, 1]));
        assert_eq!((r.rank, r.sign), (0, 1));
    }

    #[test]
    fn dual_space_examples() {
        let fp = PrimeField::new(3).unwrap();
        let id = QuadraticForm::identity(spec(3, 2));
        assert_eq!(id.dual_space(&Subspace::zero(fp, 2)).unwrap(), Subspace::full(fp, 2));
        assert_eq!(id.dual_space(&line(3, &[1, 0])).unwrap(), line(3, &[0, 1]));
        let g = diag(3, &[1, 2]);
        assert_eq!(g.dual_space(&line(3, &[1, 1])).unwrap(), line(3, &[1, 1]));
        assert!(matches!(
            diag(3, &[1, 0]).dual_space(&line(3, &[1, 0])),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn dual_space_and_restriction_laws_over_f3_4() {
        let fp = PrimeField::new(3).unwrap();
        let forms = [QuadraticForm::identity(spec(3, 4)), diag(3, &[1, 1, 1, 2])];
        let all: Vec<Subspace> = (0..=4)
            .flat_map(|r| SubspaceEnumerator::new(fp, 4, r).unwrap().iter().collect::<Vec<_>>())
            .collect();
        for f in &forms {
            for h in &all {
                let d = f.dual_space(h).unwrap();
                assert_eq!(h.dim() + d.dim(), 4);
                assert_eq!(&f.dual_space(&d).unwrap(), h);
                let r = f.restrict(h);
                assert_eq!(r.rank, h.dim() - h.intersect(&d).dim());
            }
            // inclusion reversal on a sample of pairs
            for h in all.iter().step_by(5) {
                for g in all.iter().step_by(7) {
                    if h.is_subspace_of(g) {
                        assert!(f.dual_space(g).unwrap().is_subspace_of(&f.dual_space(h).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = QuadraticForm::identity(spec(3, 4)).classify(Scalar(0)).unwrap();
        assert_eq!((c.epsilon, c.master_sign, c.theorem), (1, 1, TheoremTag::T4));
        let c = diag(3, &[1, 1, 1, 2]).classify(Scalar(0)).unwrap();
        assert_eq!((c.epsilon, c.theorem), (-1, TheoremTag::T5));
        let c = QuadraticForm::identity(spec(3, 3)).classify(Scalar(2)).unwrap();
        assert_eq!((c.master_sign, c.theorem), (-1, TheoremTag::T2));
        assert_eq!(c.m_parity, Parity::Odd);
        let c = QuadraticForm::identity(spec(3, 3)).classify(Scalar(1)).unwrap();
        assert_eq!(c.theorem, TheoremTag::T3);
        assert!(matches!(diag(3, &[1, 0, 1]).classify(Scalar(1)), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn descriptors() {
        let s = spec(3, 2);
        for text in ["identity", "diag:1,2", "gram:0,1,1,2", "trace:1", "trace:0,1"] {
            let d = FormDescriptor::parse(text).unwrap();
            assert_eq!(d.to_string(), text);
            assert!(d.build(&s).is_ok(), "{text}");
        }
        assert_eq!(
            FormDescriptor::parse("trace:1").unwrap().build(&s).unwrap().gram(),
            &vec![vec![2, 0], vec![0, 1]]
        );
        assert!(FormDescriptor::parse("gram:0,1,2,2").unwrap().build(&s).is_err());
        assert!(FormDescriptor::parse("gram:1,2,3").unwrap().build(&s).is_err());
        assert!(FormDescriptor::parse("trace:9").unwrap().build(&s).is_err());
        assert!(FormDescriptor::parse("trace:0").unwrap().build(&s).is_err());
        assert!(FormDescriptor::parse("diag:1,x").is_err());
        assert!(FormDescriptor::parse("cube").is_err());
        assert_eq!(parse_modulus("1,0,1").unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn master_sign_values() {
        // p = 3: (p-1)/2 = 1, so the sign is (-1)^{floor(m/2)}
        assert_eq!(master_sign(3, 2), -1);
        assert_eq!(master_sign(3, 3), -1);
        assert_eq!(master_sign(3, 4), 1);
        assert_eq!(master_sign(3, 5), 1);
        // p = 5: (p-1)/2 = 2, always +1
        assert!((1..8).all(|m| master_sign(5, m) == 1));
        assert_eq!(master_sign(7, 2), -1);
    }
}

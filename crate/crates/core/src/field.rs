//! Exact arithmetic in `F_p` and `F_{p^m}` for odd primes `p`.
//!
//! Extension-field elements are coordinate vectors in the polynomial basis
//! `1, x, ..., x^{m-1}` modulo a monic irreducible polynomial. The integer
//! encoding of an element is `sum coeffs[i] * p^i`; enumeration follows it.

use std::fmt;

use crate::error::{Error, Result};

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(pub u32);

impl Scalar {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// Quadratic character via Euler's criterion: 0 at 0, +1 on nonzero
    /// squares, -1 otherwise.
    pub fn character(self, c: u32) -> i8 {
        let c = c % self.p;
        if c == 0 {
            return 0;
        }
        if self.pow(c, ((self.p - 1) / 2) as u64) == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest quadratic non-residue in `[1, p)`.
    pub fn smallest_nonresidue(self) -> u32 {
        (2..self.p)
            .find(|&c| self.character(c) == -1)
            .expect("odd prime field has non-residues")
    }
}

/// Quadratic character of `F_p`.
pub fn quadratic_character(c: Scalar, p: u32) -> i8 {
    PrimeField { p }.character(c.0)
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p, ascending-degree coefficients, trimmed of leading zeros.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(fp: PrimeField, a: &[u32], modulus: &[u32]) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = modulus.len() - 1;
    let lead_inv = fp.inv(modulus[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = fp.mul(*r.last().unwrap(), lead_inv);
        for (i, &mc) in modulus.iter().enumerate() {
            r[shift + i] = fp.sub(r[shift + i], fp.mul(c, mc));
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mulmod(fp: PrimeField, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
        }
    }
    poly_rem(fp, &prod, modulus)
}

fn poly_gcd(fp: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(fp, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a degree-`m` polynomial is irreducible iff it shares no
/// factor with `x^{p^i} - x` for `1 <= i <= m/2`.
fn is_irreducible(fp: PrimeField, modulus: &[u32]) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    if modulus[0] == 0 {
        return false;
    }
    let mut h = vec![0, 1]; // x
    for _ in 1..=m / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u32];
        let mut base = h.clone();
        let mut e = fp.p();
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(fp, &acc, &base, modulus);
            }
            base = poly_mulmod(fp, &base, &base, modulus);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = fp.sub(diff[1], 1);
        let g = poly_gcd(fp, modulus, &diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Monic irreducible polynomial of degree `m` over `F_p` with the smallest
/// integer encoding `sum c_i p^i` of its low coefficients `(c_0, ..., c_{m-1})`.
pub fn default_modulus(p: u32, m: usize) -> Result<Vec<u32>> {
    let fp = PrimeField::new(p)?;
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut coeffs = vec![0u32; m + 1];
    coeffs[m] = 1;
    loop {
        if is_irreducible(fp, &coeffs) {
            return Ok(coeffs);
        }
        // increment (c_0, ..., c_{m-1}) as a base-p counter, c_0 least significant
        let mut i = 0;
        loop {
            if i == m {
                unreachable!("irreducible polynomials exist in every degree");
            }
            coeffs[i] += 1;
            if coeffs[i] == p {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// An element of `F_{p^m}` as its coordinate vector in the polynomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Integer encoding `sum coeffs[i] * p^i`.
    pub fn index(&self, p: u32) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The field `F_{p^m}` with a fixed monic irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    fp: PrimeField,
    m: usize,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// `F_{p^m}` with the default modulus.
    pub fn new(p: u32, m: usize) -> Result<Self> {
        let modulus = default_modulus(p, m)?;
        Self::with_modulus(p, modulus)
    }

    /// `F_{p^m}` with a caller-supplied modulus (ascending-degree coefficients,
    /// degree `m`, monic). Irreducibility is checked.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} is not reduced mod {p}"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("polynomial is not monic".into()));
        }
        if !is_irreducible(fp, &modulus) {
            return Err(Error::InvalidModulus(format!(
                "polynomial {modulus:?} is reducible over F_{p}"
            )));
        }
        let m = modulus.len() - 1;
        Ok(Self { fp, m, modulus })
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^m`.
    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.m as u32)
    }

    /// Builds an element from coordinates, reducing each mod `p`.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: coeffs.len(),
            });
        }
        Ok(FieldElement {
            coeffs: coeffs.iter().map(|&c| c % self.p()).collect(),
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_scalar(Scalar(1))
    }

    /// Embeds `c` in `F_{p^m}`.
    pub fn from_scalar(&self, c: Scalar) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c.0 % self.p();
        FieldElement { coeffs }
    }

    /// Inverse of [`FieldElement::index`].
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.p() as u64;
        let mut coeffs = vec![0u32; self.m];
        for c in coeffs.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        FieldElement { coeffs }
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.m || a.coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::ForeignElement {
                p: self.p(),
                m: self.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.fp.add(x, y))
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.fp.sub(x, y))
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| self.fp.neg(x)).collect(),
        }
    }

    pub fn scale(&self, c: Scalar, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| self.fp.mul(c.0, x)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let fp = self.fp;
        let m = self.m;
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
            }
        }
        // x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1}) for the monic modulus
        for k in (m..2 * m - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                prod[k - m + i] = fp.sub(prod[k - m + i], fp.mul(top, mc));
            }
        }
        prod.truncate(m);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Checked arithmetic on possibly foreign operands.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
        })
    }

    /// Absolute trace `x + x^p + ... + x^{p^{m-1}}`.
    pub fn trace(&self, x: &FieldElement) -> Scalar {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..self.m {
            y = self.pow(&y, self.p() as u64);
            acc = self.add(&acc, &y);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        Scalar(acc.coeffs[0])
    }

    /// Whether `x` is a nonzero square in `F_{p^m}`.
    pub fn is_square(&self, x: &FieldElement) -> bool {
        !x.is_zero() && self.pow(x, (self.order() - 1) / 2) == self.one()
    }

    /// Nonzero non-square with the smallest integer encoding.
    pub fn smallest_nonsquare(&self) -> FieldElement {
        self.elements()
            .skip(1)
            .find(|x| !self.is_square(x))
            .expect("odd-order field has non-squares")
    }

    /// All `p^m` elements in ascending integer encoding.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            spec: self,
            next: 0,
            end: self.order(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// Iterator over the elements of a field in integer-encoding order.
pub struct Elements<'a> {
    spec: &'a FieldSpec,
    next: u64,
    end: u64,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.end {
            return None;
        }
        let e = self.spec.from_index(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements<'_> {}

//! Closed-form counts and weight hierarchies.
//!
//! Everything here is a pure integer function of `(p, m, epsilon, a, r)`;
//! no field arithmetic is involved, so these can be checked independently of
//! the enumeration code in [`crate::code`].

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::quadform::{master_sign, TheoremTag};

/// `p - 1` at zero, `-1` elsewhere.
pub fn v_func(x: Scalar, p: u32) -> i128 {
    if x.0 % p == 0 {
        p as i128 - 1
    } else {
        -1
    }
}

fn pw(p: u32, e: i64) -> Result<i128> {
    if e < 0 {
        return Err(Error::Verification(format!("negative exponent {e} in closed form")));
    }
    (p as i128)
        .checked_pow(e as u32)
        .ok_or(Error::Overflow("closed form power"))
}

/// Number of `x` in a `d`-dimensional subspace `H` with `f(x) = a`, given the
/// rank `rank` of `f|_H` and the discriminant sign `sign` of `f|_H`.
///
/// Even rank: `p^{d-1} + v(a) eta((-1)^{R/2}) sign p^{d-(R+2)/2}`.
/// Odd rank: `p^{d-1} + eta((-1)^{(R-1)/2} a) sign p^{d-(R+1)/2}`.
/// The zero subspace (`d = 0`) contains exactly one solution when `a = 0`.
pub fn prop1_count(d: usize, rank: usize, sign: i8, a: Scalar, p: u32) -> Result<i128> {
    let fp = PrimeField::new(p)?;
    if rank > d {
        return Err(Error::InvalidRank { rank, dim: d });
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Verification(format!("discriminant sign {sign} is not +-1")));
    }
    let a = a.0 % p;
    if d == 0 {
        return Ok(if a == 0 { 1 } else { 0 });
    }
    let (d, r) = (d as i64, rank as i64);
    let base = pw(p, d - 1)?;
    let minus_one = p - 1;
    let term = if r % 2 == 0 {
        let chi = fp.character(fp.pow(minus_one, (r / 2) as u64)) as i128;
        v_func(Scalar(a), p) * chi * sign as i128 * pw(p, d - (r + 2) / 2)?
    } else {
        let arg = fp.mul(fp.pow(minus_one, ((r - 1) / 2) as u64), a);
        fp.character(arg) as i128 * sign as i128 * pw(p, d - (r + 1) / 2)?
    };
    Ok(base + term)
}

/// Length `n = |D_a|` of the code from a non-degenerate form with sign
/// `epsilon`; the zero vector is excluded when `a = 0`.
pub fn predicted_length(p: u32, m: usize, epsilon: i8, a: Scalar) -> Result<i128> {
    let count = prop1_count(m, m, epsilon, a, p)?;
    Ok(if a.0 % p == 0 { count - 1 } else { count })
}

/// Predicted weight hierarchy `(d_1, ..., d_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyPrediction {
    pub theorem: TheoremTag,
    pub values: Vec<u64>,
    pub predicted_length: u64,
}

/// Candidate values of `d_r` under `tag`: one per branch whose range covers
/// `r` (two at the shared boundary `r = m/2` of T1 and T4).
fn branch_values(tag: TheoremTag, p: u32, m: usize, epsilon: i8, r: usize) -> Result<Vec<i128>> {
    let (mi, ri) = (m as i64, r as i64);
    let pm1 = pw(p, mi - 1)?;
    let q = p as i128;
    let mut out = Vec::with_capacity(2);
    // 2r vs m avoids fractional comparisons with m/2
    let (lt_half, le_half, ge_half, gt_half) = (2 * r < m, 2 * r <= m, 2 * r >= m, 2 * r > m);
    match tag {
        TheoremTag::T1 => {
            let s = (master_sign(p, m) * epsilon) as i128;
            let h = pw(p, (mi - 2) / 2)?;
            if r >= 1 && le_half {
                out.push(pm1 - pw(p, mi - ri - 1)? - (s + 1) * h);
            }
            if ge_half && r < m {
                out.push(pm1 - 2 * pw(p, mi - ri - 1)? - s * h);
            }
            if r == m {
                out.push(pm1 - s * h);
            }
        }
        TheoremTag::T2 => {
            let h = pw(p, (mi - 1) / 2)?;
            if r >= 1 && lt_half {
                out.push(pm1 - pw(p, mi - ri - 1)?);
            }
            if gt_half && r < m {
                out.push(pm1 + h - 2 * pw(p, mi - ri - 1)?);
            }
            if r == m {
                out.push(pm1 + h);
            }
        }
        TheoremTag::T3 => {
            let h = pw(p, (mi - 1) / 2)?;
            if r >= 1 && lt_half {
                out.push(pm1 - pw(p, mi - ri - 1)? - h - pw(p, (mi - 3) / 2)?);
            }
            if gt_half && r < m {
                out.push(pm1 - h - 2 * pw(p, mi - ri - 1)?);
            }
            if r == m {
                out.push(pm1 - h);
            }
        }
        TheoremTag::T4 => {
            if r >= 1 && le_half {
                out.push(pm1 - pw(p, mi - ri - 1)?);
            }
            if ge_half && r <= m {
                out.push(pm1 + (q - 1) * pw(p, (mi - 2) / 2)? - pw(p, mi - ri)?);
            }
        }
        TheoremTag::T5 => {
            if r == 1 {
                out.push((q - 1) * (pw(p, mi - 2)? - pw(p, (mi - 2) / 2)?));
            }
            if r >= 2 && le_half {
                out.push(
                    pm1 - pw(p, mi - ri - 1)?
                        - (q - 1) * (pw(p, (mi - 2) / 2)? + pw(p, (mi - 4) / 2)?),
                );
            }
            if gt_half && r <= m {
                out.push(pm1 - pw(p, mi - ri)? - (q - 1) * pw(p, (mi - 2) / 2)?);
            }
        }
        TheoremTag::T6 => {
            if r >= 1 && lt_half {
                out.push(pm1 - pw(p, mi - ri - 1)? - (q - 1) * pw(p, (mi - 3) / 2)?);
            }
            if gt_half && r <= m {
                out.push(pm1 - pw(p, mi - ri)?);
            }
        }
    }
    Ok(out)
}

/// `d_r` under the theorem `tag`. Where two branches both cover `r`, both are
/// evaluated and must agree.
pub fn closed_form_value(tag: TheoremTag, p: u32, m: usize, epsilon: i8, r: usize) -> Result<i128> {
    let vals = branch_values(tag, p, m, epsilon, r)?;
    let Some(&first) = vals.first() else {
        return Err(Error::DimensionOutOfRange { r, max: m });
    };
    if let Some(&other) = vals.iter().find(|&&v| v != first) {
        return Err(Error::BranchDisagreement {
            r,
            left: first,
            right: other,
        });
    }
    Ok(first)
}

/// Full predicted hierarchy for a non-degenerate form of sign `epsilon` over
/// `F_{p^m}` at level `a`.
pub fn ghw_closed_form(p: u32, m: usize, epsilon: i8, a: Scalar) -> Result<HierarchyPrediction> {
    PrimeField::new(p)?;
    if m < 3 {
        return Err(Error::SmallDegree { m });
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Verification(format!("epsilon {epsilon} is not +-1")));
    }
    let a = Scalar(a.0 % p);
    let tag = TheoremTag::select(p, m, epsilon, a);
    let mut values = Vec::with_capacity(m);
    for r in 1..=m {
        let v = closed_form_value(tag, p, m, epsilon, r)?;
        values.push(u64::try_from(v).map_err(|_| Error::Verification(format!("negative d_{r} = {v}")))?);
    }
    let n = predicted_length(p, m, epsilon, a)?;
    let n = u64::try_from(n).map_err(|_| Error::Overflow("predicted length"))?;
    if values[m - 1] != n {
        return Err(Error::Verification(format!(
            "d_m = {} differs from the predicted length {n}",
            values[m - 1]
        )));
    }
    Ok(HierarchyPrediction {
        theorem: tag,
        values,
        predicted_length: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_func_examples() {
        assert_eq!(v_func(Scalar(0), 3), 2);
        assert_eq!(v_func(Scalar(1), 3), -1);
        for p in [3u32, 5, 7] {
            assert_eq!((0..p).map(|x| v_func(Scalar(x), p)).sum::<i128>(), 0);
        }
    }

    /// Counts `sum diag_i x_i^2 = a` over `F_p^d` by brute force.
    fn brute_diag_count(p: u32, diag: &[u32], a: u32) -> i128 {
        let d = diag.len();
        let total = (p as usize).pow(d as u32);
        (0..total)
            .filter(|&mut_idx| {
                let mut idx = mut_idx;
                let mut s = 0u64;
                for &c in diag {
                    let x = (idx % p as usize) as u64;
                    idx /= p as usize;
                    s += c as u64 * x * x;
                }
                (s % p as u64) as u32 == a
            })
            .count() as i128
    }

    #[test]
    fn prop1_examples() {
        assert_eq!(prop1_count(2, 2, 1, Scalar(0), 3).unwrap(), 1);
        assert_eq!(brute_diag_count(3, &[1, 1], 0), 1);
        assert_eq!(prop1_count(2, 2, -1, Scalar(0), 3).unwrap(), 5);
        assert_eq!(brute_diag_count(3, &[1, 2], 0), 5);
        assert_eq!(prop1_count(3, 3, 1, Scalar(1), 3).unwrap(), 6);
        assert_eq!(brute_diag_count(3, &[1, 1, 1], 1), 6);
        assert_eq!(prop1_count(3, 3, 1, Scalar(0), 3).unwrap(), 9);
        assert_eq!(prop1_count(3, 3, -1, Scalar(0), 3).unwrap(), 9);
        assert!(prop1_count(2, 3, 1, Scalar(0), 3).is_err());
    }

    #[test]
    fn prop1_matches_diagonal_brute_force() {
        // diag(1, ..., 1, g, 0, ..., 0) covers both signs at every rank
        for p in [3u32, 5, 7] {
            let g = PrimeField::new(p).unwrap().smallest_nonresidue();
            for d in 1..=4usize {
                for rank in 0..=d {
                    for nonres in [false, true] {
                        if rank == 0 && nonres {
                            continue;
                        }
                        let mut diag = vec![1u32; rank];
                        if nonres {
                            diag[rank - 1] = g;
                        }
                        diag.resize(d, 0);
                        let sign = if nonres { -1 } else { 1 };
                        for a in 0..p {
                            assert_eq!(
                                prop1_count(d, rank, sign, Scalar(a), p).unwrap(),
                                brute_diag_count(p, &diag, a),
                                "p={p} d={d} rank={rank} sign={sign} a={a}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prop1_total_identity() {
        for p in [3u32, 5, 7] {
            for d in 0..=6usize {
                for rank in 0..=d {
                    for sign in [1i8, -1] {
                        let total: i128 = (0..p)
                            .map(|a| prop1_count(d, rank, sign, Scalar(a), p).unwrap())
                            .sum();
                        assert_eq!(total, (p as i128).pow(d as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn predicted_length_examples() {
        assert_eq!(predicted_length(3, 4, 1, Scalar(0)).unwrap(), 32);
        assert_eq!(predicted_length(3, 3, 1, Scalar(2)).unwrap(), 12);
        assert_eq!(predicted_length(3, 2, 1, Scalar(1)).unwrap(), 4);
    }

    #[test]
    fn worked_hierarchies() {
        let cases: [(u32, usize, i8, u32, TheoremTag, &[u64]); 5] = [
            (3, 3, 1, 0, TheoremTag::T6, &[4, 6, 8]),
            (3, 4, 1, 0, TheoremTag::T4, &[18, 24, 30, 32]),
            (3, 4, -1, 0, TheoremTag::T5, &[12, 16, 18, 20]),
            (3, 3, 1, 2, TheoremTag::T2, &[6, 10, 12]),
            (3, 3, 1, 1, TheoremTag::T3, &[2, 4, 6]),
        ];
        for (p, m, eps, a, tag, want) in cases {
            let h = ghw_closed_form(p, m, eps, Scalar(a)).unwrap();
            assert_eq!(h.theorem, tag);
            assert_eq!(h.values, want);
        }
    }

    #[test]
    fn small_degree_rejected() {
        assert_eq!(ghw_closed_form(3, 2, 1, Scalar(1)), Err(Error::SmallDegree { m: 2 }));
        assert!(ghw_closed_form(3, 4, 0, Scalar(1)).is_err());
    }

    #[test]
    fn boundary_branches_agree() {
        for p in [3u32, 5, 7] {
            for m in [4usize, 6, 8] {
                for eps in [1i8, -1] {
                    for tag in [TheoremTag::T1, TheoremTag::T4] {
                        let vals = branch_values(tag, p, m, eps, m / 2).unwrap();
                        assert_eq!(vals.len(), 2);
                        assert_eq!(vals[0], vals[1], "{tag} p={p} m={m} eps={eps}");
                    }
                }
            }
        }
    }

    #[test]
    fn hierarchies_are_well_formed() {
        for p in [3u32, 5, 7] {
            for m in 3..=8usize {
                for eps in [1i8, -1] {
                    for a in 0..p {
                        let h = ghw_closed_form(p, m, eps, Scalar(a)).unwrap();
                        let n = h.predicted_length;
                        assert_eq!(h.values[m - 1], n);
                        for r in 1..=m {
                            assert!(h.values[r - 1] <= n - m as u64 + r as u64);
                            if r > 1 {
                                assert!(h.values[r - 2] < h.values[r - 1], "{:?} p={p} m={m}", h);
                            }
                        }
                    }
                }
            }
        }
    }
}

//! Period-matrix data for a quadratic continued fraction: the product
//! Γ_α of partial-quotient matrices over one period, its dominant
//! eigenvalue, and the per-residue closed-form constants for convergent
//! denominators and differences along arithmetic progressions.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::quad::squarefree_decompose;
use super::{CfExpansion, QuadError, QuadExt};

/// Closed-form constants for one residue class k < P:
/// `q_{nP+k} = C·λ₁ⁿ + D·λ₂ⁿ` and `β_{nP+k} = E·λ₂ⁿ` for all n ≥ m,
/// where λ₁ = ‖Γ_α‖ and λ₂ = (det Γ_α · ‖Γ_α‖)⁻¹.
#[derive(Clone, Debug)]
pub struct ShiftConstants {
    pub m: u32,
    pub c: QuadExt,
    pub d: QuadExt,
    pub e: QuadExt,
}

/// Γ_α and derived spectral data for a period multiple t·P(α).
#[derive(Clone, Debug)]
pub struct GammaData {
    /// Row-major [[a, b], [c, d]] product of Γ_k over the effective period.
    pub matrix: [BigInt; 4],
    /// det Γ ∈ {−1, +1}.
    pub det: i8,
    /// Dominant eigenvalue λ₁ = ‖Γ‖ > 1, a unit of the field.
    pub norm: QuadExt,
    /// Second eigenvalue λ₂ with |λ₂| < 1; equals det/λ₁.
    pub second: QuadExt,
    /// Effective period length (t·P(α)).
    pub period: usize,
    /// Constants for residues 0, …, period−1.
    pub residues: Vec<ShiftConstants>,
}

impl GammaData {
    /// Data for the canonical period P(α).
    pub fn compute(cf: &CfExpansion) -> Result<GammaData, QuadError> {
        GammaData::compute_multiple(cf, 1)
    }

    /// Data for the period multiple t·P(α); `t = 2` forces det = +1 when the
    /// single-period determinant is −1.
    pub fn compute_multiple(cf: &CfExpansion, t: usize) -> Result<GammaData, QuadError> {
        assert!(t >= 1);
        let p_eff = cf.period_len() * t;
        let n0 = cf.n_start();

        // Γ = ∏_{k=n0}^{n0+p_eff−1} [[a_k, 1], [1, 0]].
        let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
        for k in n0..n0 + p_eff {
            let a = cf.quotient(k);
            let c0 = &m[0] * &a + &m[1];
            let c2 = &m[2] * &a + &m[3];
            m = [c0, m[0].clone(), c2, m[2].clone()];
        }
        let det_big = &m[0] * &m[3] - &m[1] * &m[2];
        let det = det_big.to_i8().filter(|d| *d == 1 || *d == -1).expect("unimodular product");

        let tr = &m[0] + &m[3];
        let disc = &tr * &tr - BigInt::from(4) * &det_big;
        let disc_u = disc.to_u64().ok_or(QuadError::QuotientTooLarge)?;
        let (sq, f) = squarefree_decompose(disc_u);
        debug_assert_eq!(f, cf.field(), "eigenvalues lie in the field of α");
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let tr_rat = BigRational::from_integer(tr.clone());
        let sq_rat = BigRational::from_integer(BigInt::from(sq));
        let norm = QuadExt::new(&tr_rat * &half, &sq_rat * &half, f)?;
        let second = QuadExt::new(&tr_rat * &half, -(&sq_rat * &half), f)?;
        debug_assert!(norm.cmp_exact(&QuadExt::one()) == Ok(core::cmp::Ordering::Greater));
        debug_assert!(second.abs().cmp_exact(&QuadExt::one()) == Ok(core::cmp::Ordering::Less));

        // Enough exact convergents to seed and then minimize every residue.
        let alpha = cf.value();
        let safe_n = |k: usize| -> usize {
            // Smallest m ≥ 0 with m·p_eff + k ≥ n0 − 1: the 2-term linear
            // recurrence over one period step is valid from there on.
            if n0 == 0 {
                0
            } else {
                (n0 - 1).saturating_sub(k).div_ceil(p_eff)
            }
        };
        let max_m0 = (0..p_eff).map(safe_n).max().unwrap_or(0);
        let needed = (max_m0 + 12) * p_eff + p_eff + 2;
        let mut qs: Vec<BigInt> = Vec::with_capacity(needed);
        let mut betas: Vec<QuadExt> = Vec::with_capacity(needed);
        for (p, q) in cf.convergent_iter().take(needed) {
            betas.push(QuadExt::from_bigint(q.clone()) * alpha.clone() - QuadExt::from_bigint(p));
            qs.push(q);
        }

        let mut residues = Vec::with_capacity(p_eff);
        for k in 0..p_eff {
            let m0 = safe_n(k);
            let at = |n: usize| -> usize { n * p_eff + k };
            let q_of = |n: usize| QuadExt::from_bigint(qs[at(n)].clone());

            // Solve C, D from samples at n = m0, m0+1.
            let lam_m = norm.pow(m0 as u32);
            let mu_m = second.pow(m0 as u32);
            let denom = (&second - &norm) * &mu_m;
            let d_const = (q_of(m0 + 1) - q_of(m0) * norm.clone()).checked_div(&denom)?;
            let c_const = (q_of(m0) - &d_const * &mu_m).checked_div(&lam_m)?;

            // Solve (C', E) for β; C' must vanish.
            let b_of = |n: usize| betas[at(n)].clone();
            let e_num = b_of(m0 + 1) - b_of(m0) * norm.clone();
            let e_const = e_num.checked_div(&denom)?;
            let c_beta = (b_of(m0) - &e_const * &mu_m).checked_div(&lam_m)?;
            debug_assert!(c_beta.is_zero(), "difference sequence has no growing component");

            // Minimize m by exact downward checks.
            let mut m_q = m0;
            while m_q > 0 {
                let n = m_q - 1;
                let expect = &c_const * &norm.pow(n as u32) + &d_const * &second.pow(n as u32);
                if q_of(n) == expect {
                    m_q = n;
                } else {
                    break;
                }
            }
            let mut m_b = m0;
            while m_b > 0 {
                let n = m_b - 1;
                let expect = &e_const * &second.pow(n as u32);
                if b_of(n) == expect {
                    m_b = n;
                } else {
                    break;
                }
            }
            let m_final = m_q.max(m_b) as u32;

            // The identities must reproduce the recurrence for n = m..m+10.
            for n in m_final..m_final + 11 {
                let nq = &c_const * &norm.pow(n) + &d_const * &second.pow(n);
                let nb = &e_const * &second.pow(n);
                assert!(
                    q_of(n as usize) == nq && b_of(n as usize) == nb,
                    "closed forms disagree with the recurrence at residue {k}, n = {n}"
                );
            }

            residues.push(ShiftConstants { m: m_final, c: c_const, d: d_const, e: e_const });
        }

        Ok(GammaData { matrix: m, det, norm, second, period: p_eff, residues })
    }

    /// Smallest index J such that β_{j+period} = λ₂·β_j for every j ≥ J.
    pub fn beta_shift_start(&self) -> usize {
        self.residues
            .iter()
            .enumerate()
            .map(|(k, sc)| sc.m as usize * self.period + k)
            .max()
            .unwrap_or(0)
    }
}

/// Exact limit constant and a numeric report for the growth of
/// `[u v^{P(α)·n} w]` against ‖Γ_α‖^{|v|·n}, the words read as integer
/// parts in the Ostrowski system of the expansion.
#[derive(Clone, Debug)]
pub struct PumpingData {
    pub constant: QuadExt,
    /// ‖Γ_α‖^{|v|}, the per-step growth factor.
    pub growth: QuadExt,
    /// (n, numeric ratio) samples for the report.
    pub samples: Vec<(u32, f64)>,
}

/// Value of a digit word against the convergent denominators: the word is
/// most-significant first, digit i (from the right) weighs q_i.
pub fn ostrowski_int_value(cf: &CfExpansion, word: &[u32]) -> BigInt {
    let mut total = BigInt::zero();
    let n = word.len();
    for (i, (_, q)) in cf.convergent_iter().take(n).enumerate() {
        let digit = word[n - 1 - i];
        if digit != 0 {
            total += BigInt::from(digit) * q;
        }
    }
    total
}

pub fn pumping_constant(
    cf: &CfExpansion,
    gamma: &GammaData,
    u: &[u32],
    v: &[u32],
    w: &[u32],
    n_samples: u32,
) -> Result<PumpingData, QuadError> {
    assert_eq!(gamma.period, cf.period_len(), "pumping uses the canonical period");
    if v.is_empty() {
        return Err(QuadError::Parse(0, alloc::string::String::from("v must be nonempty")));
    }
    if u.iter().all(|&d| d == 0) && v.iter().all(|&d| d == 0) {
        return Err(QuadError::Parse(0, alloc::string::String::from("[u] or [v] must be nonzero")));
    }
    let p = gamma.period;
    let l = v.len();
    let off = w.len();
    let lam = &gamma.norm;

    // Coefficient of λ₁^{L·n} contributed by a digit at absolute position
    // `pos` (held fixed relative to the right end as n grows):
    // q_pos ~ C_{pos mod P} · λ₁^{⌊pos/P⌋}.
    let weight = |pos: usize| -> QuadExt {
        let r = pos % p;
        gamma.residues[r].c.clone() * lam.pow((pos / p) as u32)
    };

    let mut a_u = QuadExt::zero();
    for (s, &digit) in u.iter().rev().enumerate() {
        if digit != 0 {
            a_u = a_u + QuadExt::from_int(digit as i64) * weight(off + s);
        }
    }
    let mut b_sum = QuadExt::zero();
    for rho in 0..p {
        for (s, &digit) in v.iter().rev().enumerate() {
            if digit != 0 {
                b_sum = b_sum + QuadExt::from_int(digit as i64) * weight(rho * l + off + s);
            }
        }
    }
    let growth = lam.pow(l as u32);
    let constant = a_u + b_sum.checked_div(&(growth.clone() - QuadExt::one()))?;

    let mut samples = Vec::new();
    for n in 0..=n_samples {
        samples.push((n, pumping_ratio(cf, gamma, u, v, w, n).to_f64()));
    }
    Ok(PumpingData { constant, growth, samples })
}

/// Exact ratio `[u v^{P·n} w] / ‖Γ_α‖^{|v|·n}` as a field element.
pub fn pumping_ratio(
    cf: &CfExpansion,
    gamma: &GammaData,
    u: &[u32],
    v: &[u32],
    w: &[u32],
    n: u32,
) -> QuadExt {
    let mut word: Vec<u32> = Vec::new();
    word.extend_from_slice(u);
    for _ in 0..(gamma.period as u32 * n) {
        word.extend_from_slice(v);
    }
    word.extend_from_slice(w);
    let value = QuadExt::from_bigint(ostrowski_int_value(cf, &word));
    let denom = gamma.norm.pow(v.len() as u32 * n);
    value.checked_div(&denom).expect("norm power is nonzero")
}

#[cfg(test)]
mod tests {
    use super::super::quad::quad;
    use super::*;
    use crate::quadfield::CfExpansion;

    fn sqrt2_cf() -> CfExpansion {
        CfExpansion::expand(&QuadExt::sqrt_of(2).unwrap()).unwrap()
    }

    fn phi_cf() -> CfExpansion {
        CfExpansion::expand(&quad((1, 2), (1, 2), 5)).unwrap()
    }

    #[test]
    fn gamma_for_sqrt2() {
        let g = GammaData::compute(&sqrt2_cf()).unwrap();
        let m: Vec<i64> = g.matrix.iter().map(|b| b.to_i64().unwrap()).collect();
        assert_eq!(m, [2, 1, 1, 0]);
        assert_eq!(g.det, -1);
        assert_eq!(g.norm, QuadExt::one() + QuadExt::sqrt_of(2).unwrap());
        assert_eq!(g.second, QuadExt::one() - QuadExt::sqrt_of(2).unwrap());
        let sc = &g.residues[0];
        assert_eq!(sc.c, quad((2, 4), (1, 4), 2)); // (2+√2)/4
        assert_eq!(sc.d, quad((2, 4), (-1, 4), 2)); // (2−√2)/4
        assert_eq!(sc.e, quad((-1, 1), (1, 1), 2)); // √2−1
        assert_eq!(sc.m, 0);
    }

    #[test]
    fn gamma_for_phi() {
        let g = GammaData::compute(&phi_cf()).unwrap();
        let m: Vec<i64> = g.matrix.iter().map(|b| b.to_i64().unwrap()).collect();
        assert_eq!(m, [1, 1, 1, 0]);
        assert_eq!(g.det, -1);
        assert_eq!(g.norm, quad((1, 2), (1, 2), 5));
        // C = φ/√5 = (5+√5)/10.
        assert_eq!(g.residues[0].c, quad((5, 10), (1, 10), 5));
    }

    #[test]
    fn gamma_identities_for_period_two() {
        // √3 = [1; (1 2)]: identities for both residues are checked inside
        // compute(); reaching here means they held for n = m..m+10.
        let cf = CfExpansion::expand(&QuadExt::sqrt_of(3).unwrap()).unwrap();
        let g = GammaData::compute(&cf).unwrap();
        assert_eq!(g.det, 1);
        assert_eq!(g.period, 2);
        assert_eq!(g.norm, QuadExt::from_int(2) + QuadExt::sqrt_of(3).unwrap());
        // Doubled period of √2: det becomes +1, norm squares.
        let g2 = GammaData::compute_multiple(&sqrt2_cf(), 2).unwrap();
        assert_eq!(g2.det, 1);
        assert_eq!(g2.norm, quad((3, 1), (2, 1), 2));
    }

    #[test]
    fn pumping_sqrt2_single_weight() {
        // [1·0ⁿ] = q_n grows like C₀·(1+√2)ⁿ.
        let cf = sqrt2_cf();
        let g = GammaData::compute(&cf).unwrap();
        let data = pumping_constant(&cf, &g, &[1], &[0], &[], 10).unwrap();
        assert_eq!(data.constant, quad((2, 4), (1, 4), 2));
        // Exact ratio converges: |ratio(12) − C| < 10⁻⁶.
        let diff = (pumping_ratio(&cf, &g, &[1], &[0], &[], 12) - data.constant).abs();
        assert!(diff.cmp_exact(&quad((1, 1_000_000), (0, 1), 2)).unwrap().is_lt());
    }

    #[test]
    fn pumping_phi_all_ones() {
        let cf = phi_cf();
        let g = GammaData::compute(&cf).unwrap();
        let data = pumping_constant(&cf, &g, &[], &[1], &[], 40).unwrap();
        // C = φ²/√5 = (5+3√5)/10... sanity via the exact ratio at n = 40.
        let diff = (pumping_ratio(&cf, &g, &[], &[1], &[], 40) - data.constant.clone()).abs();
        assert!(diff.cmp_exact(&quad((1, 1_000_000), (0, 1), 5)).unwrap().is_lt());
        assert_eq!(data.constant, quad((5, 10), (3, 10), 5));
    }

    #[test]
    fn pumping_rejects_zero_words() {
        let cf = sqrt2_cf();
        let g = GammaData::compute(&cf).unwrap();
        assert!(pumping_constant(&cf, &g, &[0], &[0], &[0], 0).is_err());
        assert!(pumping_constant(&cf, &g, &[1], &[], &[], 0).is_err());
    }

    #[test]
    fn pumping_with_tail_word() {
        // w only shifts positions; the limit constant absorbs the shift.
        let cf = sqrt2_cf();
        let g = GammaData::compute(&cf).unwrap();
        let data = pumping_constant(&cf, &g, &[1], &[0], &[0, 0], 0).unwrap();
        // [1 0ⁿ 0 0] = q_{n+2} ~ C₀ λ² λⁿ.
        let lam = QuadExt::one() + QuadExt::sqrt_of(2).unwrap();
        assert_eq!(data.constant, quad((2, 4), (1, 4), 2) * lam.pow(2));
        let diff = (pumping_ratio(&cf, &g, &[1], &[0], &[0, 0], 14) - data.constant).abs();
        assert!(diff.cmp_exact(&quad((1, 1_000_000), (0, 1), 2)).unwrap().is_lt());
    }
}

//! Word-level conversion between the Ostrowski system of a quadratic
//! irrational and the power system of a unit γ > 1 of the same field.
//!
//! The conversion runs the regularity construction explicitly: reduce to
//! the dominant eigenvalue Λ of a determinant-one period power via
//! unit-group exponent matching and digit regrouping, thin the word so all
//! digits near the radix mark vanish, split the result into
//! arithmetic-progression tracks, map each track into the Λ-power system
//! by reversal or shift, recombine with the exact closed-form constants,
//! and normalize.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::limits::Limits;
use crate::quadfield::{CfExpansion, GammaData, QuadExt};

use super::system::{NumSystem, OstrowskiSystem};
use super::word::EpWord;
use super::EpError;

/// Reads an 𝒮_{γⁿ}-representation as an 𝒮_γ word by placing digit w_i at
/// index n·i, then normalizes in 𝒮_γ. The value is preserved exactly.
pub fn regroup_spread(w: &EpWord, base: &QuadExt, n: u32) -> Result<EpWord, EpError> {
    assert!(n >= 1);
    let spread_int: Vec<u32> = {
        let mut out = Vec::new();
        for (i, &d) in w.int_digits().iter().enumerate() {
            out.push(d);
            if i + 1 < w.int_digits().len() {
                out.extend(core::iter::repeat(0).take(n as usize - 1));
            }
        }
        out
    };
    // Fractional digit at −k moves to −n·k: insert n−1 zeros before each.
    let spread_frac = |digits: &[u32]| -> Vec<u32> {
        let mut out = Vec::new();
        for &d in digits {
            out.extend(core::iter::repeat(0).take(n as usize - 1));
            out.push(d);
        }
        out
    };
    let placed = EpWord::new(spread_int, spread_frac(w.frac_pre()), spread_frac(w.frac_period()));
    let sys = NumSystem::power(base.clone())?;
    let sys_n = NumSystem::power(base.pow(n))?;
    debug_assert_eq!(sys.eval(&placed), sys_n.eval(w));
    sys.normalize(&placed)
}

/// Groups an 𝒮_γ-representation into the 𝒮_{γⁿ} system: the value is
/// re-expanded greedily against the powers of γⁿ.
pub fn regroup_group(w: &EpWord, base: &QuadExt, n: u32) -> Result<EpWord, EpError> {
    assert!(n >= 1);
    let sys = NumSystem::power(base.clone())?;
    let sys_n = NumSystem::power(base.pow(n))?;
    sys_n.rep(&sys.eval(w))
}

/// The bijection Φ: the 𝒮_γ-normalized representation of the value of an
/// 𝒪_α-normalized word, for γ a unit > 1 of the field of α.
pub fn convert_phi(
    osys: &OstrowskiSystem,
    w: &EpWord,
    gamma: &QuadExt,
) -> Result<EpWord, EpError> {
    let cf = osys.cf();
    let limits = *NumSystem::Ostrowski(osys.clone()).limits();
    if !is_unit_above_one(gamma, cf) {
        return Err(EpError::NotAUnit);
    }
    let full = NumSystem::Ostrowski(osys.clone());
    if !full.is_normalized(w) {
        return Err(EpError::NotNormalized);
    }

    // Determinant-one reduction: work over the period multiple with det +1.
    let t = if osys.gamma().det == 1 { 1 } else { 2 };
    let ge = GammaData::compute_multiple(cf, t)?;
    debug_assert_eq!(ge.det, 1);
    let lam = ge.norm.clone();

    // Unit-group exponent matching γ^k = Λ^ℓ (rank one, so a relation exists).
    let (exp_gamma, exp_lam) = match_unit_exponents(gamma, &lam, limits.exponent_cap)?;

    // Digit thinning f_N with N a multiple of the effective period, past
    // every closed-form threshold.
    let value = full.eval(w);
    let thin = ThinContext::new(cf, &ge, &limits)?;
    let thinned = thin.thin_word(&value)?;

    // Track split and h-maps: digits along index progression r mod period
    // become power words, integer-side ones twice (reversal and mirror).
    let pe = ge.period;
    let n0 = thin.n0;
    let s_lam = NumSystem::power(lam.clone())?;
    let mut total = QuadExt::zero();
    for r in 0..pe {
        let (x_r, y_r) = int_tracks(&thinned, pe, r, n0);
        let z_r = frac_track(&thinned, pe, r, n0);
        let sc = &ge.residues[r];
        total = total
            + sc.c.clone() * s_lam.eval(&x_r)
            + sc.d.clone() * s_lam.eval(&y_r)
            + sc.e.clone() * s_lam.eval(&z_r);
    }
    assert_eq!(total, value, "track recombination must reproduce the value");

    // Normalize in 𝒮_Λ, then regroup through 𝒮_{Λ^ℓ} = 𝒮_{γ^k} into 𝒮_γ.
    let in_lam = s_lam.rep(&total)?;
    let result = if exp_gamma == 1 && exp_lam == 1 {
        in_lam
    } else {
        let grouped = regroup_group(&in_lam, &lam, exp_lam)?;
        regroup_spread(&grouped, gamma, exp_gamma)?
    };
    let s_gamma = NumSystem::power(gamma.clone())?;
    debug_assert_eq!(s_gamma.eval(&result), value);
    Ok(result)
}

fn is_unit_above_one(gamma: &QuadExt, cf: &CfExpansion) -> bool {
    if gamma.is_rational() || gamma.radicand() != cf.field() {
        return false;
    }
    if gamma.cmp_exact(&QuadExt::one()) != Ok(Ordering::Greater) {
        return false;
    }
    if !gamma.is_algebraic_integer() {
        return false;
    }
    let norm = gamma.norm();
    norm == num_rational::BigRational::one() || norm == -num_rational::BigRational::one()
}

/// Minimal (k, ℓ) with γ^k = Λ^ℓ, found by walking the two power sequences.
fn match_unit_exponents(gamma: &QuadExt, lam: &QuadExt, cap: u32) -> Result<(u32, u32), EpError> {
    let mut k = 1u32;
    let mut l = 1u32;
    let mut gp = gamma.clone();
    let mut lp = lam.clone();
    loop {
        match gp.cmp_exact(&lp).expect("same field") {
            Ordering::Equal => return Ok((k, l)),
            Ordering::Less => {
                k += 1;
                if k > cap {
                    return Err(EpError::UnitMatchCap(cap));
                }
                gp = gp * gamma.clone();
            }
            Ordering::Greater => {
                l += 1;
                if l > cap {
                    return Err(EpError::UnitMatchCap(cap));
                }
                lp = lp * lam.clone();
            }
        }
    }
}

/// Integer-side tracks of residue r: digits d_n at positions n·Pe + r ≥ n0
/// become the integer word X_r (digit d_n at index n) and the mirrored
/// fractional word Y_r (digit d_n at index −n).
fn int_tracks(thinned: &EpWord, pe: usize, r: usize, n0: usize) -> (EpWord, EpWord) {
    let len = thinned.int_len();
    let mut entries: Vec<(usize, u32)> = Vec::new();
    let mut pos = if r >= n0 { r } else { r + pe * ((n0 - r).div_ceil(pe)) };
    while pos < len {
        let d = thinned.digit(pos as i64);
        if d != 0 {
            entries.push((pos / pe, d));
        }
        pos += pe;
    }
    if entries.is_empty() {
        return (EpWord::zero(), EpWord::zero());
    }
    let n_max = entries.last().expect("nonempty").0;
    let mut x_int = alloc::vec![0u32; n_max + 1];
    for &(n, d) in &entries {
        x_int[n_max - n] = d;
    }
    let k_max = n_max;
    let mut y_pre = alloc::vec![0u32; k_max];
    for &(n, d) in &entries {
        debug_assert!(n >= 1, "thinned integer digits sit above the period threshold");
        y_pre[n - 1] = d;
    }
    (EpWord::new(x_int, Vec::new(), Vec::new()), EpWord::new(Vec::new(), y_pre, Vec::new()))
}

/// Fractional-side track of residue r: digits at positions −(n·Pe + r + 1)
/// with n·Pe + r ≥ n0 − 1 become the word Z_r with digit at index −n
/// (index 0 for n = 0).
fn frac_track(thinned: &EpWord, pe: usize, r: usize, n0: usize) -> EpWord {
    // Smallest admissible n.
    let j_min = n0 - 1;
    let n_min = if r >= j_min { 0 } else { (j_min - r).div_ceil(pe) };
    let digit_at = |n: usize| -> u32 { thinned.digit(-((n * pe + r + 1) as i64)) };

    let p_word = thinned.frac_period().len();
    if p_word == 0 {
        let k_end = thinned.frac_pre().len(); // positions beyond are zero
        let n_end = (k_end + pe) / pe + 1;
        let mut int0 = 0u32;
        let mut pre: Vec<u32> = Vec::new();
        for n in n_min..=n_end {
            let d = digit_at(n);
            if n == 0 {
                int0 = d;
            } else {
                while pre.len() < n {
                    pre.push(0);
                }
                pre[n - 1] = d;
            }
        }
        let int = if int0 != 0 { alloc::vec![int0] } else { Vec::new() };
        return EpWord::new(int, pre, Vec::new());
    }
    // Eventually periodic: the track inherits period lcm(p_word, pe)/pe.
    let p_track = lcm(p_word, pe) / pe;
    // Positions are periodic once n·pe + r + 1 exceeds the word preperiod;
    // keep index 0 (the integer-side digit) out of the cycle.
    let stable_n = {
        let pre_len = thinned.frac_pre().len();
        let past_pre =
            if r + 1 > pre_len { n_min } else { n_min.max((pre_len - r).div_ceil(pe)) };
        past_pre.max(1)
    };
    let mut int0 = 0u32;
    let mut pre: Vec<u32> = alloc::vec![0u32; stable_n - 1];
    for n in n_min..stable_n {
        let d = digit_at(n);
        if n == 0 {
            int0 = d;
        } else {
            pre[n - 1] = d;
        }
    }
    let period: Vec<u32> = (stable_n..stable_n + p_track).map(digit_at).collect();
    let int = if int0 != 0 { alloc::vec![int0] } else { Vec::new() };
    EpWord::new(int, pre, period)
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x.max(1)
    };
    a / gcd * b
}

/// Exact machinery for the thinning map: tail sums of the difference
/// sequence by parity, the digit bound, and the windowed greedy expansion
/// over the restricted weight set.
struct ThinContext<'a> {
    cf: &'a CfExpansion,
    limits: Limits,
    /// Thinning threshold: digits at |i| < n0 vanish; a multiple of the
    /// effective period past every closed-form threshold.
    n0: usize,
    /// Shift data at the doubled-parity period, det +1, λ₂ > 0.
    p2: usize,
    mu: QuadExt,
    /// Class sums Σ_{l ≥ l_s, l ≡ s (p2)} β_l at the base index, per residue.
    betas: Vec<QuadExt>,
    /// Digit bound for the thinned representation.
    bound: u64,
    /// S⁺(j) = Σ_{l ≥ j even} β_l and S⁻(j) = Σ_{l ≥ j odd} −β_l at j = j0.
    spos0: QuadExt,
    sneg0: QuadExt,
}

impl<'a> ThinContext<'a> {
    fn new(cf: &'a CfExpansion, ge: &GammaData, limits: &Limits) -> Result<ThinContext<'a>, EpError> {
        let pe = ge.period;
        let pa = cf.period_len();
        let p2 = lcm(2, pe);
        let g2 = GammaData::compute_multiple(cf, p2 / pa)?;
        debug_assert_eq!(g2.det, 1);
        let mu = g2.second.clone();
        debug_assert!(mu.is_positive());

        let m_hat = ge.residues.iter().map(|s| s.m as usize).max().unwrap_or(0);
        let j2 = g2.beta_shift_start();
        let n0 = pe * (m_hat + 1).max((j2 + 2).div_ceil(pe));
        let j0 = n0 - 1;

        // Exact β values up to one p2 block past j0.
        let alpha = cf.value();
        let needed = j0 + 2 * p2 + 2;
        let mut betas: Vec<QuadExt> = Vec::with_capacity(needed);
        for (p, q) in cf.convergent_iter().take(needed) {
            betas.push(QuadExt::from_bigint(q) * alpha.clone() - QuadExt::from_bigint(p));
        }

        // Tail sums from j0 by residue class mod p2, then by parity.
        let geo = (QuadExt::one() - mu.clone()).inverse()?;
        let mut spos0 = QuadExt::zero();
        let mut sneg0 = QuadExt::zero();
        for s in 0..p2 {
            let l_s = if s >= j0 % p2 { j0 - (j0 % p2) + s } else { j0 - (j0 % p2) + p2 + s };
            debug_assert!(l_s >= j0 && l_s < j0 + p2);
            let n_s = (l_s - s) / p2;
            debug_assert!(n_s >= g2.residues[s].m as usize);
            let class_sum = g2.residues[s].e.clone() * mu.pow(n_s as u32) * geo.clone();
            if l_s % 2 == 0 {
                spos0 = spos0 + class_sum;
            } else {
                sneg0 = sneg0 - class_sum;
            }
        }
        debug_assert!(spos0.is_positive() && sneg0.is_positive());

        // Digit bound: enough fractional capacity to absorb one weight gap,
        // plus the worst per-step ratio so the greedy never strands.
        let q_n0 = QuadExt::from_bigint(cf.convergents(n0 as i64).1);
        let mut bound_q = q_n0.checked_div(&spos0)?.ceil().to_u64().ok_or(EpError::DigitBoundTooLarge)?;
        let mut spos = spos0.clone();
        let mut sneg = sneg0.clone();
        for j in j0..j0 + p2 {
            // Move the sums from j to j+1.
            if j % 2 == 0 {
                spos = spos - betas[j].clone();
            } else {
                sneg = sneg + betas[j].clone();
            }
            let denom = spos.clone() + sneg.clone();
            let ratio = betas[j].abs().checked_div(&denom)?.ceil().to_u64().ok_or(EpError::DigitBoundTooLarge)?;
            bound_q = bound_q.max(ratio);
        }
        let bound = bound_q + cf.max_quotient() + 2;

        Ok(ThinContext { cf, limits: *limits, n0, p2, mu, betas, bound, spos0, sneg0 })
    }

    fn beta(&self, j: usize) -> QuadExt {
        if j < self.betas.len() {
            self.betas[j].clone()
        } else {
            // Extend through the exact period-shift identity.
            let steps = (j - (self.betas.len() - 1)).div_ceil(self.p2);
            let base = j - steps * self.p2;
            self.betas[base].clone() * self.mu.pow(steps as u32)
        }
    }

    /// A representation of x with the same value, zero digits at |i| < n0,
    /// and digits bounded by `self.bound`: greedy on the integer side with a
    /// window landing at position n0, lexicographically maximal windowed
    /// greedy on the fractional side.
    fn thin_word(&self, x: &QuadExt) -> Result<EpWord, EpError> {
        debug_assert!(!x.is_negative());
        let j0 = self.n0 - 1;
        let b_big = BigInt::from(self.bound);
        let b_quad = QuadExt::from_bigint(b_big.clone());

        // Integer side: plain greedy down to n0 + 1, window landing at n0.
        let mut qs: Vec<BigInt> = Vec::new();
        for (_, q) in self.cf.convergent_iter().take(self.n0 + 1) {
            qs.push(q);
        }
        let mut rem = x.clone();
        let mut int_digits: Vec<(usize, u64)> = Vec::new();
        let top_opt = {
            let mut top: Option<usize> = None;
            let mut i = self.n0;
            let mut q_i = QuadExt::from_bigint(qs[self.n0].clone());
            // Climb while q_{i+1} ≤ rem.
            let mut iter_qs = self.cf.convergent_iter().skip(self.n0 + 1);
            loop {
                if q_i.cmp_exact(&rem).expect("same field") != Ordering::Greater {
                    top = Some(i);
                    let (_, q_next) = iter_qs.next().expect("infinite");
                    qs.push(q_next.clone());
                    q_i = QuadExt::from_bigint(q_next);
                    i += 1;
                } else {
                    break;
                }
            }
            top
        };
        if let Some(top) = top_opt {
            for i in (self.n0 + 1..=top).rev() {
                let qi = QuadExt::from_bigint(qs[i].clone());
                let d = rem.checked_div(&qi)?.floor();
                let d64 = d.to_u64().ok_or(EpError::DigitBoundTooLarge)?;
                if d64 > 0 {
                    rem = rem - QuadExt::from_bigint(d) * qi;
                    int_digits.push((i, d64));
                }
            }
        }
        // Window landing at n0: rem − d·q_{n0} ∈ [−B·S⁻, B·S⁺].
        let q_n0 = QuadExt::from_bigint(qs[self.n0].clone());
        let upper = b_quad.clone() * self.spos0.clone();
        let d_land = {
            let excess = rem.clone() - upper.clone();
            if excess.is_positive() {
                excess.checked_div(&q_n0)?.ceil()
            } else {
                BigInt::zero()
            }
        };
        let d_land_u = d_land.to_u64().ok_or(EpError::DigitBoundTooLarge)?;
        if d_land_u > 0 {
            rem = rem - QuadExt::from_bigint(d_land.clone()) * q_n0;
            int_digits.push((self.n0, d_land_u));
        }
        debug_assert!(d_land_u <= self.bound);
        debug_assert!(rem.cmp_exact(&upper) != Ok(Ordering::Greater));
        debug_assert!(
            rem.cmp_exact(&(-(b_quad.clone() * self.sneg0.clone()))) != Ok(Ordering::Less)
        );

        // Fractional side: windowed lexicographically-maximal greedy over
        // weights β_j, j ≥ j0, with exact scaled-orbit period detection.
        let mut frac_digits: Vec<u64> = Vec::new();
        let mut seen: BTreeMap<(usize, _), usize> = BTreeMap::new();
        let mut t = rem;
        let mut spos = self.spos0.clone();
        let mut sneg = self.sneg0.clone();
        let mut j = j0;
        let mu_inv = self.mu.inverse()?;
        let mut scale = QuadExt::one();
        let (pre_digits, cycle_digits) = loop {
            let rclass = (j - j0) % self.p2;
            if rclass == 0 && j > j0 {
                scale = scale * mu_inv.clone();
            }
            let key = (rclass, (t.clone() * scale.clone()).orbit_key());
            if let Some(&at) = seen.get(&key) {
                let cycle = frac_digits.split_off(at);
                break (frac_digits, cycle);
            }
            if seen.len() >= self.limits.orbit_cap {
                return Err(EpError::OrbitCap(self.limits.orbit_cap));
            }
            seen.insert(key, frac_digits.len());

            let beta_j = self.beta(j);
            // Advance the tail sums to j+1.
            if j % 2 == 0 {
                spos = spos - beta_j.clone();
            } else {
                sneg = sneg + beta_j.clone();
            }
            let d = if j % 2 == 0 {
                // β_j > 0: maximal digit keeping t − d·β_j ≥ −B·S⁻(j+1).
                let room = t.clone() + b_quad.clone() * sneg.clone();
                let d = room.checked_div(&beta_j)?.floor();
                d.max(BigInt::zero()).min(b_big.clone())
            } else {
                // β_j < 0: maximal digit keeping t − d·β_j ≤ B·S⁺(j+1).
                let room = b_quad.clone() * spos.clone() - t.clone();
                let d = room.checked_div(&(-beta_j.clone()))?.floor();
                d.max(BigInt::zero()).min(b_big.clone())
            };
            let d64 = d.to_u64().expect("clamped to bound");
            t = t - QuadExt::from_bigint(d) * beta_j;
            // The invariant window must hold after every step.
            debug_assert!(
                t.cmp_exact(&(b_quad.clone() * spos.clone())) != Ok(Ordering::Greater)
                    && t.cmp_exact(&(-(b_quad.clone() * sneg.clone()))) != Ok(Ordering::Less),
                "thinning greedy left its window at j = {j}"
            );
            frac_digits.push(d64);
            j += 1;
        };

        // Assemble: integer digits at recorded positions, fractional digits
        // at positions n0, n0+1, … (zeros below).
        let top_pos = int_digits.iter().map(|&(i, _)| i).max();
        let int_vec: Vec<u32> = match top_pos {
            None => Vec::new(),
            Some(top) => {
                let mut v = alloc::vec![0u32; top + 1];
                for &(i, d) in &int_digits {
                    v[top - i] = d.to_u32().ok_or(EpError::DigitBoundTooLarge)?;
                }
                v
            }
        };
        let mut pre: Vec<u32> = alloc::vec![0u32; j0];
        for &d in &pre_digits {
            pre.push(d.to_u32().ok_or(EpError::DigitBoundTooLarge)?);
        }
        let cycle: Vec<u32> = cycle_digits
            .iter()
            .map(|&d| d.to_u32().ok_or(EpError::DigitBoundTooLarge))
            .collect::<Result<_, _>>()?;
        Ok(EpWord::new(int_vec, pre, cycle))
    }
}

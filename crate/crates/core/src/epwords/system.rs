//! Numeration systems over extended ω-words: power systems 𝒮_γ for a
//! Pisot base and Ostrowski systems 𝒪_α for a quadratic irrational,
//! with exact evaluation, greedy representations, normalization and
//! order.
//!
//! Weight conventions: the power system weighs index i by γ^i; the
//! Ostrowski system weighs index i ≥ 0 by the convergent denominator q_i
//! and index −k (k ≥ 1) by the difference β_{k−1}. Digit w₀ is then
//! constrained like b₁ of the integer representation and digit w₋₁ like
//! b₁ of the fractional one, which makes every nonnegative real
//! representable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::limits::Limits;
use crate::quadfield::{CfExpansion, GammaData, QuadExt};

use super::word::{cmp_streams, EpWord};
use super::EpError;

/// Power numeration system with a Pisot base γ > 1 and digits ≤ ⌈γ⌉ − 1.
#[derive(Clone, Debug)]
pub struct PowerSystem {
    base: QuadExt,
    m: u32,
    /// Quasi-greedy expansion d*(1) as (preperiod, cycle); the strict
    /// lexicographic bound on every digit suffix of a normalized word.
    dstar_pre: Vec<u32>,
    dstar_cycle: Vec<u32>,
    limits: Limits,
}

/// Ostrowski numeration system of a quadratic irrational.
#[derive(Clone, Debug)]
pub struct OstrowskiSystem {
    cf: CfExpansion,
    gamma: GammaData,
    m: u32,
    limits: Limits,
}

#[derive(Clone, Debug)]
pub enum NumSystem {
    Power(PowerSystem),
    Ostrowski(OstrowskiSystem),
}

impl NumSystem {
    /// Power system for a Pisot base; non-Pisot bases are rejected because
    /// the automata constructions depend on the Pisot property.
    pub fn power(base: QuadExt) -> Result<NumSystem, EpError> {
        NumSystem::power_with_limits(base, Limits::default())
    }

    pub fn power_with_limits(base: QuadExt, limits: Limits) -> Result<NumSystem, EpError> {
        if !base.is_pisot() {
            return Err(EpError::NotPisot);
        }
        let m = (base.ceil() - BigInt::from(1))
            .to_u32()
            .ok_or(EpError::DigitBoundTooLarge)?;
        let (dstar_pre, dstar_cycle) = quasi_greedy_of_one(&base, limits.orbit_cap)?;
        Ok(NumSystem::Power(PowerSystem { base, m, dstar_pre, dstar_cycle, limits }))
    }

    pub fn ostrowski(cf: CfExpansion) -> Result<NumSystem, EpError> {
        NumSystem::ostrowski_with_limits(cf, Limits::default())
    }

    pub fn ostrowski_with_limits(cf: CfExpansion, limits: Limits) -> Result<NumSystem, EpError> {
        let gamma = GammaData::compute(&cf)?;
        let m = cf.max_quotient().to_u32().ok_or(EpError::DigitBoundTooLarge)?;
        Ok(NumSystem::Ostrowski(OstrowskiSystem { cf, gamma, m, limits }))
    }

    /// Digit bound M of the system.
    pub fn digit_bound(&self) -> u32 {
        match self {
            NumSystem::Power(p) => p.m,
            NumSystem::Ostrowski(o) => o.m,
        }
    }

    pub fn limits(&self) -> &Limits {
        match self {
            NumSystem::Power(p) => &p.limits,
            NumSystem::Ostrowski(o) => &o.limits,
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> NumSystem {
        match &mut self {
            NumSystem::Power(p) => p.limits = limits,
            NumSystem::Ostrowski(o) => o.limits = limits,
        }
        self
    }

    pub fn as_power(&self) -> Option<&PowerSystem> {
        match self {
            NumSystem::Power(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_ostrowski(&self) -> Option<&OstrowskiSystem> {
        match self {
            NumSystem::Ostrowski(o) => Some(o),
            _ => None,
        }
    }

    /// The field element U₀ (value 1 in both supported systems).
    pub fn u0(&self) -> QuadExt {
        match self {
            NumSystem::Power(_) => QuadExt::one(),
            NumSystem::Ostrowski(_) => QuadExt::one(), // q₀ = 1
        }
    }

    /// Weight U_i as an exact field element.
    pub fn weight(&self, index: i64) -> QuadExt {
        match self {
            NumSystem::Power(p) => p.base.powi(index).expect("base is nonzero"),
            NumSystem::Ostrowski(o) => {
                if index >= 0 {
                    QuadExt::from_bigint(o.cf.convergents(index).1)
                } else {
                    o.cf.difference(-index - 1)
                }
            }
        }
    }

    /// Exact value Σ_i w_i·U_i of a word; defined for arbitrary bounded
    /// digits, not only digits ≤ M.
    pub fn eval(&self, w: &EpWord) -> QuadExt {
        match self {
            NumSystem::Power(p) => p.eval(w),
            NumSystem::Ostrowski(o) => o.eval(w),
        }
    }

    /// The normalized representation ρ(x) of a nonnegative field element.
    pub fn rep(&self, x: &QuadExt) -> Result<EpWord, EpError> {
        match self {
            NumSystem::Power(p) => p.greedy_rep(x),
            NumSystem::Ostrowski(o) => o.rep(x),
        }
    }

    /// ρ([w]): the normalization of an arbitrary bounded word.
    pub fn normalize(&self, w: &EpWord) -> Result<EpWord, EpError> {
        self.rep(&self.eval(w))
    }

    /// ρ([w₁] + [w₂]).
    pub fn add(&self, w1: &EpWord, w2: &EpWord) -> Result<EpWord, EpError> {
        self.rep(&(self.eval(w1) + self.eval(w2)))
    }

    /// Membership in the image of ρ, decided by digit conditions (Ostrowski)
    /// or the quasi-greedy suffix bound (power).
    pub fn is_normalized(&self, w: &EpWord) -> bool {
        match self {
            NumSystem::Power(p) => p.is_normalized(w),
            NumSystem::Ostrowski(o) => o.is_normalized(w),
        }
    }

    /// Order of values decided on the digits alone; both words must be
    /// normalized.
    pub fn compare(&self, w1: &EpWord, w2: &EpWord) -> Result<Ordering, EpError> {
        if !self.is_normalized(w1) || !self.is_normalized(w2) {
            return Err(EpError::NotNormalized);
        }
        // Integer parts: canonical forms have no leading zeros, so the longer
        // one is larger; equal lengths compare lexicographically. This is the
        // greedy dominance order in both systems.
        let ord = w1
            .int_len()
            .cmp(&w2.int_len())
            .then_with(|| w1.int_digits().cmp(w2.int_digits()));
        if ord != Ordering::Equal {
            return Ok(ord);
        }
        // Fractional parts: first differing position k decides; in the power
        // system the smaller digit always loses, in the Ostrowski system the
        // rule twists with the parity of k.
        let bound = {
            let p1 = w1.frac_period().len().max(1);
            let p2 = w2.frac_period().len().max(1);
            w1.frac_pre().len().max(w2.frac_pre().len()) + lcm(p1, p2) + 1
        };
        for k in 1..=bound as i64 {
            let d1 = w1.digit(-k);
            let d2 = w2.digit(-k);
            if d1 != d2 {
                let digit_ord = d1.cmp(&d2);
                return Ok(match self {
                    NumSystem::Power(_) => digit_ord,
                    NumSystem::Ostrowski(_) => {
                        if k % 2 == 1 {
                            digit_ord
                        } else {
                            digit_ord.reverse()
                        }
                    }
                });
            }
        }
        Ok(Ordering::Equal)
    }
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

/// Greedy digits of 1 in base γ, adjusted to the quasi-greedy expansion:
/// a finite expansion t₁…t_m 0^ω becomes the cycle (t₁…t_{m−1}(t_m−1))^ω.
fn quasi_greedy_of_one(base: &QuadExt, cap: usize) -> Result<(Vec<u32>, Vec<u32>), EpError> {
    let mut digits: Vec<u32> = Vec::new();
    let mut seen: BTreeMap<_, usize> = BTreeMap::new();
    let mut t = QuadExt::one();
    loop {
        if t.is_zero() {
            // Finite d(1) = t₁…t_m: quasi-greedy cycle decrements the last digit.
            let mut cycle = digits;
            let last = cycle.last_mut().expect("d(1) starts with ⌊γ⌋ ≥ 1");
            *last -= 1;
            return Ok((Vec::new(), cycle));
        }
        if let Some(&at) = seen.get(&t.orbit_key()) {
            let cycle = digits.split_off(at);
            return Ok((digits, cycle));
        }
        if seen.len() >= cap {
            return Err(EpError::OrbitCap(cap));
        }
        seen.insert(t.orbit_key(), digits.len());
        let scaled = t * base.clone();
        let d = scaled.floor();
        digits.push(d.to_u32().ok_or(EpError::DigitBoundTooLarge)?);
        t = scaled - QuadExt::from_bigint(d);
    }
}

impl PowerSystem {
    pub fn base(&self) -> &QuadExt {
        &self.base
    }

    /// d*(1) as (preperiod, cycle).
    pub fn quasi_greedy_one(&self) -> (&[u32], &[u32]) {
        (&self.dstar_pre, &self.dstar_cycle)
    }

    fn eval(&self, w: &EpWord) -> QuadExt {
        let mut total = QuadExt::zero();
        let n = w.int_len();
        for (i, &d) in w.int_digits().iter().enumerate() {
            if d != 0 {
                total = total + QuadExt::from_int(d as i64) * self.base.pow((n - 1 - i) as u32);
            }
        }
        let inv = self.base.inverse().expect("base > 1");
        let mut wt = inv.clone();
        for &d in w.frac_pre() {
            if d != 0 {
                total = total + QuadExt::from_int(d as i64) * wt.clone();
            }
            wt = wt * inv.clone();
        }
        let p = w.frac_period().len();
        if p > 0 {
            // wt is now γ^{-(pre+1)}, the weight of the first period digit.
            let mut block = QuadExt::zero();
            let mut bwt = wt;
            for &d in w.frac_period() {
                if d != 0 {
                    block = block + QuadExt::from_int(d as i64) * bwt.clone();
                }
                bwt = bwt * inv.clone();
            }
            let ratio = inv.pow(p as u32);
            total = total + block.checked_div(&(QuadExt::one() - ratio)).expect("γ > 1");
        }
        total
    }

    /// The greedy (lexicographically maximal digit-bounded) representation,
    /// with the remainder orbit tracked exactly for period detection.
    fn greedy_rep(&self, x: &QuadExt) -> Result<EpWord, EpError> {
        if x.is_negative() {
            return Err(EpError::NegativeValue);
        }
        if !x.compatible(&self.base) {
            return Err(EpError::Quad(crate::quadfield::QuadError::FieldMismatch(
                x.radicand(),
                self.base.radicand(),
            )));
        }
        let mut int_digits: Vec<u32> = Vec::new();
        let mut r = x.clone();
        if r.cmp_exact(&QuadExt::one()).expect("same field") != Ordering::Less {
            let mut top = 0u32;
            let mut wt = self.base.clone();
            while wt.cmp_exact(&r).expect("same field") != Ordering::Greater {
                wt = wt * self.base.clone();
                top += 1;
            }
            // wt = γ^{top+1} > r ≥ γ^{top}
            for _ in 0..=top {
                wt = wt.checked_div(&self.base).expect("base nonzero");
                let d = r.checked_div(&wt).expect("weight nonzero").floor();
                let d32 = d.to_u32().ok_or(EpError::DigitBoundTooLarge)?;
                debug_assert!(d32 <= self.m, "greedy digit within bound");
                int_digits.push(d32);
                if d32 != 0 {
                    r = r - QuadExt::from_bigint(d) * wt.clone();
                }
            }
        }
        // Fractional part: the orbit of r under t ↦ γ·t − ⌊γ·t⌋.
        let mut frac: Vec<u32> = Vec::new();
        let mut seen: BTreeMap<_, usize> = BTreeMap::new();
        let (pre, period) = loop {
            if let Some(&at) = seen.get(&r.orbit_key()) {
                let period = frac.split_off(at);
                break (frac, period);
            }
            if seen.len() >= self.limits.orbit_cap {
                return Err(EpError::OrbitCap(self.limits.orbit_cap));
            }
            seen.insert(r.orbit_key(), frac.len());
            let scaled = r * self.base.clone();
            let d = scaled.floor();
            frac.push(d.to_u32().ok_or(EpError::DigitBoundTooLarge)?);
            r = scaled - QuadExt::from_bigint(d);
        };
        Ok(EpWord::new(int_digits, pre, period))
    }

    /// Parry admissibility: every digit suffix of the stream (integer part
    /// followed by the fractional tail) is strictly lexicographically below
    /// d*(1), and digits respect the bound M.
    fn is_normalized(&self, w: &EpWord) -> bool {
        if w.max_digit() > self.m {
            return false;
        }
        let starts = suffix_starts(w);
        for s in starts {
            if !self.suffix_below_dstar(w, s) {
                return false;
            }
        }
        true
    }

    fn suffix_below_dstar(&self, w: &EpWord, start: i64) -> bool {
        let stream = w.stream_from(start);
        let (stable, p) = stream.tail();
        let dp = self.dstar_pre.len();
        let dc = self.dstar_cycle.len();
        let bound = stable.max(dp) + lcm(p, dc) + 1;
        for i in 0..bound {
            let a = stream.at(i);
            let t = if i < dp {
                self.dstar_pre[i]
            } else {
                self.dstar_cycle[(i - dp) % dc]
            };
            match a.cmp(&t) {
                Ordering::Less => return true,
                Ordering::Greater => return false,
                Ordering::Equal => continue,
            }
        }
        false // equal to d*(1): not strictly below
    }
}

/// Suffix start positions that cover every distinct suffix of the word:
/// all integer positions, the fractional preperiod, and one full period.
fn suffix_starts(w: &EpWord) -> Vec<i64> {
    let mut out = Vec::new();
    let n = w.int_len() as i64;
    for i in (0..=n.max(0)).rev() {
        out.push(i);
    }
    let pre = w.frac_pre().len() as i64;
    let per = w.frac_period().len().max(1) as i64;
    for k in 1..=pre + per {
        out.push(-k);
    }
    out
}

impl OstrowskiSystem {
    pub fn cf(&self) -> &CfExpansion {
        &self.cf
    }

    pub fn gamma(&self) -> &GammaData {
        &self.gamma
    }

    pub fn alpha(&self) -> &QuadExt {
        self.cf.value()
    }

    fn eval(&self, w: &EpWord) -> QuadExt {
        let mut total = QuadExt::zero();
        let n = w.int_len();
        if n > 0 {
            let mut conv = self.cf.convergent_iter();
            let mut qs: Vec<BigInt> = Vec::with_capacity(n);
            for _ in 0..n {
                qs.push(conv.next().expect("infinite").1);
            }
            let mut acc = BigInt::zero();
            for (i, &d) in w.int_digits().iter().enumerate() {
                if d != 0 {
                    acc += BigInt::from(d) * &qs[n - 1 - i];
                }
            }
            total = QuadExt::from_bigint(acc);
        }
        let p = w.frac_period().len();
        let pre_len = w.frac_pre().len();
        let pa = self.gamma.period;
        let j_stable = self.gamma.beta_shift_start();
        // Tail becomes exactly geometric from position k0 on.
        let k0 = if p == 0 { pre_len + 1 } else { (pre_len + 1).max(j_stable + 1) };
        let p2 = if p == 0 { 0 } else { lcm(p, pa) };
        let needed = k0 + p2; // β indices up to k0 + p2 − 2
        let alpha = self.cf.value();
        let mut betas: Vec<QuadExt> = Vec::with_capacity(needed);
        for (pk, qk) in self.cf.convergent_iter().take(needed) {
            betas.push(QuadExt::from_bigint(qk) * alpha.clone() - QuadExt::from_bigint(pk));
        }
        for k in 1..k0 {
            let d = w.digit(-(k as i64));
            if d != 0 {
                total = total + QuadExt::from_int(d as i64) * betas[k - 1].clone();
            }
        }
        if p > 0 {
            let mut block = QuadExt::zero();
            for j in 0..p2 {
                let k = k0 + j;
                let d = w.digit(-(k as i64));
                if d != 0 {
                    block = block + QuadExt::from_int(d as i64) * betas[k - 1].clone();
                }
            }
            let ratio = self.gamma.second.pow((p2 / pa) as u32);
            total = total + block.checked_div(&(QuadExt::one() - ratio)).expect("|λ₂| < 1");
        }
        total
    }

    fn rep(&self, x: &QuadExt) -> Result<EpWord, EpError> {
        if x.is_negative() {
            return Err(EpError::NegativeValue);
        }
        if !x.compatible(self.alpha()) {
            return Err(EpError::Quad(crate::quadfield::QuadError::FieldMismatch(
                x.radicand(),
                self.alpha().radicand(),
            )));
        }
        // Split x = N + c with c in the unit window [−β₀, 1−β₀).
        let beta0 = self.cf.difference(0);
        let n_int = (x.clone() + beta0).floor();
        debug_assert!(!n_int.is_negative());
        let int_digits = self.int_digits_of(&n_int)?;
        let c = x.clone() - QuadExt::from_bigint(n_int);
        let (pre, period) = self.frac_digits_of(&c)?;
        Ok(EpWord::new(int_digits, pre, period))
    }

    /// Greedy integer digits against the denominator sequence q₀, q₁, ….
    fn int_digits_of(&self, n: &BigInt) -> Result<Vec<u32>, EpError> {
        if n.is_zero() {
            return Ok(Vec::new());
        }
        let mut qs: Vec<BigInt> = Vec::new();
        for (_, q) in self.cf.convergent_iter() {
            if &q > n {
                break;
            }
            qs.push(q);
        }
        let mut digits = Vec::with_capacity(qs.len());
        let mut rem = n.clone();
        for q in qs.iter().rev() {
            let d = (&rem / q).to_u32().ok_or(EpError::DigitBoundTooLarge)?;
            digits.push(d);
            if d != 0 {
                rem -= BigInt::from(d) * q;
            }
        }
        debug_assert!(rem.is_zero());
        Ok(digits)
    }

    /// Fractional digits of c ∈ [−β₀, 1−β₀) by the window-greedy rule.
    ///
    /// At step j (digit at weight β_j) the remaining tail must land in the
    /// achievable window of step j+1, which depends on whether the chosen
    /// digit caps the next one. Uniqueness of the digit is the uniqueness
    /// of the Ostrowski expansion.
    fn frac_digits_of(&self, c: &QuadExt) -> Result<(Vec<u32>, Vec<u32>), EpError> {
        let pa = self.gamma.period;
        let j_stable = self.gamma.beta_shift_start();
        // Scale factor for orbit detection: positive power of λ₂.
        let sp = if self.gamma.second.is_positive() { pa } else { 2 * pa };
        let mu_inv = self
            .gamma
            .second
            .pow((sp / pa) as u32)
            .inverse()
            .expect("λ₂ ≠ 0");

        let alpha = self.cf.value().clone();
        let mut betas: Vec<QuadExt> = Vec::new();
        let mut conv = self.cf.convergent_iter();
        let mut extend_betas = |betas: &mut Vec<QuadExt>, upto: usize| {
            while betas.len() < upto {
                let (p, q) = conv.next().expect("infinite");
                betas.push(QuadExt::from_bigint(q) * alpha.clone() - QuadExt::from_bigint(p));
            }
        };

        let minus_one = -QuadExt::one();
        let beta_at = |betas: &[QuadExt], j: i64| -> QuadExt {
            if j < 0 {
                minus_one.clone() // β_{−1} = −1
            } else {
                betas[j as usize].clone()
            }
        };

        let mut digits: Vec<u32> = Vec::new();
        let mut t = c.clone();
        let mut capped = true; // the first fractional digit satisfies b₁ < a₁
        let mut seen: BTreeMap<(usize, bool, _), usize> = BTreeMap::new();
        let mut scale = QuadExt::one();
        let mut j = 0usize;
        loop {
            if t.is_zero() && !capped {
                // Zero remainder in the free state: all further digits are 0.
                break Ok((digits, Vec::new()));
            }
            if j >= j_stable {
                let rclass = (j - j_stable) % sp;
                if rclass == 0 && j > j_stable {
                    scale = scale.clone() * mu_inv.clone();
                }
                let key = (rclass, capped, (t.clone() * scale.clone()).orbit_key());
                if let Some(&at) = seen.get(&key) {
                    let period = digits.split_off(at);
                    break Ok((digits, period));
                }
                if seen.len() >= self.limits.orbit_cap {
                    break Err(EpError::OrbitCap(self.limits.orbit_cap));
                }
                seen.insert(key, digits.len());
            }
            extend_betas(&mut betas, j + 3);
            let cap_full = self.cf.quotient_u64(j + 1);
            let cap = cap_full - if capped { 1 } else { 0 };
            let beta_j = beta_at(&betas, j as i64);
            let mut chosen: Option<(u32, QuadExt, bool)> = None;
            for b in 0..=cap {
                let t_next = t.clone() - QuadExt::from_int(b as i64) * beta_j.clone();
                let next_capped = b > 0;
                if self.in_window(&betas, j + 1, next_capped, &t_next) {
                    debug_assert!(chosen.is_none(), "Ostrowski digit must be unique");
                    chosen = Some((b as u32, t_next, next_capped));
                    #[cfg(not(debug_assertions))]
                    break;
                }
            }
            let (b, t_next, next_capped) =
                chosen.expect("window-greedy digit exists for window values");
            digits.push(b);
            t = t_next;
            capped = next_capped;
            j += 1;
        }
    }

    /// Membership of t in the achievable-tail window at weight index j ≥ 1.
    /// Free window: [min(−β_j, −β_{j−1}), max(−β_j, −β_{j−1})); the capped
    /// variant removes the maximal-digit option on the corresponding side.
    fn in_window(&self, betas: &[QuadExt], j: usize, capped: bool, t: &QuadExt) -> bool {
        debug_assert!(j >= 1, "windows start at j = 1");
        let b_j = &betas[j];
        let b_prev = &betas[j - 1];
        let (mut lo, mut hi) = if j % 2 == 0 {
            // β_j > 0 > β_{j−1}
            (-b_j.clone(), -b_prev.clone())
        } else {
            (-b_prev.clone(), -b_j.clone())
        };
        if capped {
            if j % 2 == 0 {
                hi = hi - b_j.clone();
            } else {
                lo = lo - b_j.clone();
            }
        }
        t.cmp_exact(&lo).expect("same field") != Ordering::Less
            && t.cmp_exact(&hi).expect("same field") == Ordering::Less
    }

    /// Digit side conditions of the Ostrowski representation plus the
    /// infinitely-many-odd liveness condition, checked exactly on the
    /// eventually periodic word.
    fn is_normalized(&self, w: &EpWord) -> bool {
        // Bounds and couplings must hold over one full repetition pattern.
        let pa = self.cf.period_len();
        let pre_a = self.cf.n_start().max(1); // caps are periodic for k ≥ this
        let scan_int = w.int_len();
        // Integer side: digit at position i is b_{i+1} ≤ a_{i+1};
        // b_{i+1} = a_{i+1} forces b_i = 0; b₁ < a₁.
        for i in 0..scan_int {
            let d = w.digit(i as i64) as u64;
            let cap = self.cf.quotient_u64(i + 1);
            if i == 0 {
                if d >= cap {
                    return false;
                }
            } else {
                if d > cap {
                    return false;
                }
                if d == cap && w.digit(i as i64 - 1) != 0 {
                    return false;
                }
            }
        }
        // Fractional side: digit at position k is b_k ≤ a_k (b₁ < a₁);
        // b_{k+1} = a_{k+1} forces b_k = 0.
        let p = w.frac_period().len().max(1);
        let scan_frac = w.frac_pre().len().max(pre_a) + lcm(lcm(p, pa), 2) * 2 + 2;
        for k in 1..=scan_frac {
            let d = w.digit(-(k as i64)) as u64;
            let cap = self.cf.quotient_u64(k);
            if k == 1 {
                if d >= cap {
                    return false;
                }
            } else if d > cap {
                return false;
            }
            if k >= 2 && d == cap && w.digit(-(k as i64 - 1)) != 0 {
                return false;
            }
        }
        // Liveness: b_k < a_k for infinitely many odd k. With an all-zero
        // tail this is automatic; otherwise inspect one repetition block of
        // the combined (digit, cap) pattern.
        if w.frac_period().is_empty() {
            return true;
        }
        let k_start = w.frac_pre().len().max(pre_a) + 1;
        let block = lcm(lcm(p, pa), 2);
        let mut found = false;
        for k in k_start..k_start + block {
            if k % 2 == 1 && (w.digit(-(k as i64)) as u64) < self.cf.quotient_u64(k) {
                found = true;
                break;
            }
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{parse_quad, quad, CfExpansion};
    use alloc::string::ToString;
    use alloc::vec;

    fn power(text: &str) -> NumSystem {
        NumSystem::power(parse_quad(text).unwrap()).unwrap()
    }

    fn ostrowski(text: &str) -> NumSystem {
        NumSystem::ostrowski(CfExpansion::expand(&parse_quad(text).unwrap()).unwrap()).unwrap()
    }

    fn w(text: &str) -> EpWord {
        super::super::word::parse_word(text).unwrap()
    }

    #[test]
    fn eval_power_basics() {
        let s = power("1+√2");
        assert_eq!(s.eval(&w("1.0")), QuadExt::one());
        // 0.(10) in base 1+√2 is γ/(γ²−1) = 1/2.
        assert_eq!(s.eval(&w("0.(10)")), quad((1, 2), (0, 1), 2));
    }

    #[test]
    fn eval_ostrowski_basics() {
        let s = ostrowski("√2");
        // Single fractional digit at U₋₁ = β₀ = √2−1.
        assert_eq!(s.eval(&w("0.1")), quad((-1, 1), (1, 1), 2));
        assert_eq!(s.eval(&w("200.0")), QuadExt::from_int(10));
        // Periodic fractional tail sums geometrically.
        let v = s.eval(&w("0.(01)"));
        let direct = s.weight(-2).checked_div(&(QuadExt::one() - quad((3, 1), (-2, 1), 2))).unwrap();
        assert_eq!(v, direct);
    }

    #[test]
    fn greedy_power_examples() {
        let s = power("1+√2");
        assert_eq!(s.rep(&QuadExt::one()).unwrap().to_string(), "1.0");
        assert_eq!(s.rep(&quad((1, 2), (0, 1), 2)).unwrap().to_string(), "0.(10)");
        let s2 = power("3+2√2");
        assert_eq!(s2.rep(&quad((-1, 1), (1, 1), 2)).unwrap().to_string(), "0.(2)");
    }

    #[test]
    fn greedy_digit_bound_and_inequality() {
        let s = power("1+√2");
        for num in [1i64, 3, 7, 10, 25] {
            let x = quad((num, 4), (1, 3), 2);
            let wd = s.rep(&x).unwrap();
            assert!(wd.max_digit() <= s.digit_bound());
            assert_eq!(s.eval(&wd), x, "round trip for {x}");
            // Greedy inequality over a window of indices.
            let top = wd.int_len() as i64 + 2;
            for j in (-30..top).rev() {
                let mut partial = QuadExt::zero();
                for i in -60..j {
                    let d = wd.digit(i);
                    if d != 0 {
                        partial = partial + QuadExt::from_int(d as i64) * s.weight(i);
                    }
                }
                assert!(
                    partial.cmp_exact(&s.weight(j)).unwrap() == Ordering::Less,
                    "greedy inequality at j = {j} for {x}"
                );
            }
        }
    }

    #[test]
    fn ostrowski_rep_examples() {
        let phi = ostrowski("1/2+1/2√5");
        assert_eq!(phi.rep(&QuadExt::from_int(10)).unwrap().to_string(), "100100.0");
        let s2 = ostrowski("√2");
        assert_eq!(s2.rep(&QuadExt::from_int(10)).unwrap().to_string(), "200.0");
        assert_eq!(s2.rep(&quad((-1, 1), (1, 1), 2)).unwrap().to_string(), "0.1");
        // φ's first weight exceeds the fractional window, and b₁ < a₁ = 1
        // forbids a digit at weight q₀, so ρ(φ−1) = q₁ + β₁ = 10.01.
        assert_eq!(phi.rep(&quad((-1, 2), (1, 2), 5)).unwrap().to_string(), "10.01");
        assert_eq!(phi.rep(&QuadExt::one()).unwrap().to_string(), "10.0");
    }

    #[test]
    fn round_trip_eval_rep() {
        let systems = [
            power("1/2+1/2√5"),
            power("1+√2"),
            power("3+2√2"),
            ostrowski("1/2+1/2√5"),
            ostrowski("√2"),
        ];
        for s in &systems {
            for (n, den) in [(0i64, 1i64), (1, 1), (7, 2), (13, 5), (29, 3), (100, 7)] {
                let x = quad((n, den), (0, 1), 2);
                let word = s.rep(&x).unwrap();
                assert_eq!(s.eval(&word), x);
                assert!(s.is_normalized(&word), "rep output normalized: {word} for {x}");
            }
        }
    }

    #[test]
    fn normalize_and_add() {
        let phi = power("1/2+1/2√5");
        // φ⁻¹ + φ⁻² = 1.
        assert_eq!(phi.normalize(&w("0.11")).unwrap().to_string(), "1.0");
        let s = power("1+√2");
        assert_eq!(s.add(&w("1.0"), &w("1.0")).unwrap().to_string(), "2.0");
        assert_eq!(s.add(&w("0.(10)"), &w("0.(10)")).unwrap().to_string(), "1.0");
    }

    #[test]
    fn parry_admissibility() {
        let s = power("3+2√2"); // d*(1) = 5 4^ω
        assert!(s.is_normalized(&w("0.(2)")));
        assert!(s.is_normalized(&w("5.4")));
        assert!(!s.is_normalized(&w("5.(4)"))); // equals d*(1): excluded
        assert!(!s.is_normalized(&w("0.55")));
        let phi = power("1/2+1/2√5"); // d*(1) = (10)^ω
        assert!(phi.is_normalized(&w("0.(10)")) == false); // value 1, not greedy
        assert!(phi.is_normalized(&w("1.0")));
        assert!(!phi.is_normalized(&w("0.11")));
        assert!(phi.is_normalized(&w("10.01")));
        let (pre, cyc) = phi.as_power().unwrap().quasi_greedy_one();
        assert!(pre.is_empty());
        assert_eq!(cyc, &[1, 0]);
    }

    #[test]
    fn ostrowski_normalized_conditions() {
        let s2 = ostrowski("√2");
        assert!(s2.is_normalized(&w("200.0")));
        assert!(!s2.is_normalized(&w("210.0"))); // digit 2 = a₃ needs a zero after it
        assert!(s2.is_normalized(&w("1.0")));
        assert!(!s2.is_normalized(&w("0.2"))); // b₁ < a₁ = 2 fails
        assert!(s2.is_normalized(&w("0.1")));
        let phi = ostrowski("1/2+1/2√5");
        assert!(!phi.is_normalized(&w("0.1"))); // b₁ < a₁ = 1 forces 0
        assert!(phi.is_normalized(&w("10.01")));
        assert!(!phi.is_normalized(&w("1.01"))); // digit at q₀ breaks b₁ < a₁
        assert!(!phi.is_normalized(&w("11.0")));
        assert!(phi.is_normalized(&w("100.0")));
    }

    #[test]
    fn ostrowski_liveness_condition() {
        let s2 = ostrowski("√2");
        // Digits 2 = a_k at every odd k ≥ 3, zero elsewhere: couplings hold
        // but only finitely many odd positions stay strict.
        let bad = EpWord::new(vec![], vec![0, 0], vec![2, 0]);
        assert!(!s2.is_normalized(&bad), "all-odd-max tail rejected");
        // The even-side max pattern keeps every odd digit strict.
        let good = EpWord::new(vec![], vec![], vec![0, 2]);
        assert!(s2.is_normalized(&good));
        let good2 = EpWord::new(vec![], vec![], vec![1, 0]);
        assert!(s2.is_normalized(&good2));
    }

    #[test]
    fn compare_against_eval() {
        let systems = [power("1+√2"), ostrowski("√2"), ostrowski("1/2+1/2√5")];
        let values = [
            quad((0, 1), (0, 1), 2),
            quad((1, 1), (0, 1), 2),
            quad((1, 2), (0, 1), 2),
            quad((7, 3), (0, 1), 2),
            quad((13, 4), (0, 1), 2),
            quad((2, 7), (0, 1), 2),
        ];
        for s in &systems {
            for x in &values {
                for y in &values {
                    let wx = s.rep(x).unwrap();
                    let wy = s.rep(y).unwrap();
                    assert_eq!(
                        s.compare(&wx, &wy).unwrap(),
                        x.cmp_exact(y).unwrap(),
                        "compare {x} vs {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn compare_ostrowski_parity_rule() {
        let phi = ostrowski("1/2+1/2√5");
        // 0.0 vs 0.(01): first difference at k = 2 (even): larger digit is smaller.
        let a = w("0.0");
        let b = w("0.(01)");
        assert!(phi.is_normalized(&b));
        let ord = phi.compare(&a, &b).unwrap();
        let ev = phi.eval(&a).cmp_exact(&phi.eval(&b)).unwrap();
        assert_eq!(ord, ev);
        // Spec example: 0.01 < 0.0 because β₁ = φ−2 < 0.
        let c = w("0.01");
        assert_eq!(phi.compare(&c, &a).unwrap(), Ordering::Less);
        assert_eq!(phi.compare(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn compare_rejects_unnormalized() {
        let phi = power("1/2+1/2√5");
        assert!(matches!(phi.compare(&w("0.11"), &w("1.0")), Err(EpError::NotNormalized)));
    }
}

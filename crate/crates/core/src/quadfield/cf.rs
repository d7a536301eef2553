//! Ultimately periodic continued fractions of positive quadratic irrationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QuadError, QuadExt};

/// The continued fraction `[a₀; a₁, a₂, …]` of a positive quadratic
/// irrational, stored as `a₀` plus the eventually periodic tail `a₁, a₂, …`
/// in canonical form: minimal preperiod, primitive period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    a0: BigInt,
    preperiod: Vec<u64>,
    period: Vec<u64>,
    d: u64,
    alpha: QuadExt,
}

impl CfExpansion {
    /// Expands a positive irrational via the reduced-surd iteration
    /// `(P + √D)/Q`, detecting the cycle on exact surd states.
    pub fn expand(x: &QuadExt) -> Result<CfExpansion, QuadError> {
        if x.is_rational() {
            return Err(QuadError::RationalInput);
        }
        if !x.is_positive() {
            return Err(QuadError::NegativeInput);
        }
        let d = x.radicand();

        // x = (u + bscaled·√d) / w with integers; flip signs so the √d
        // coefficient is +1 after folding it into D.
        let (anum, aden) = (x.rational_part().numer().clone(), x.rational_part().denom().clone());
        let (bnum, bden) = (x.radical_part().numer().clone(), x.radical_part().denom().clone());
        let mut p = &anum * &bden;
        let mut q = &aden * &bden;
        let bscaled = &bnum * &aden;
        if bscaled.is_negative() {
            p = -p;
            q = -q;
        }
        let mut big_d = &bscaled * &bscaled * BigInt::from(d);

        // The classical iteration needs Q | D − P².
        if !((&big_d - &p * &p) % &q).is_zero() {
            let qa = q.abs();
            p *= &qa;
            big_d *= &qa * &qa;
            q *= &qa;
        }

        let mut quotients: Vec<BigInt> = Vec::new();
        let mut seen: BTreeMap<(BigInt, BigInt), usize> = BTreeMap::new();
        let (cycle_start, cycle_end) = loop {
            if let Some(&at) = seen.get(&(p.clone(), q.clone())) {
                break (at, quotients.len());
            }
            seen.insert((p.clone(), q.clone()), quotients.len());
            let a = floor_surd(&p, &big_d, &q);
            quotients.push(a.clone());
            let p_next = &a * &q - &p;
            let q_next = (&big_d - &p_next * &p_next) / &q;
            p = p_next;
            q = q_next;
        };

        let a0 = quotients[0].clone();
        let to_u64 = |b: &BigInt| b.to_u64().ok_or(QuadError::QuotientTooLarge);
        // Tail quotients a₁, a₂, …; the cycle found on states may start at
        // index 0 (a₀ itself periodic), in which case the tail cycle is the
        // same block rotated behind a₀.
        let mut pre: Vec<u64> = Vec::new();
        let mut cyc: Vec<u64> = Vec::new();
        if cycle_start == 0 {
            for b in &quotients[1..cycle_end] {
                cyc.push(to_u64(b)?);
            }
            cyc.push(to_u64(&quotients[0])?);
        } else {
            for b in &quotients[1..cycle_start] {
                pre.push(to_u64(b)?);
            }
            for b in &quotients[cycle_start..cycle_end] {
                cyc.push(to_u64(b)?);
            }
        }
        let (preperiod, period) = canonicalize_tail(pre, cyc);
        Ok(CfExpansion { a0, preperiod, period, d, alpha: x.clone() })
    }

    /// Builds an expansion from explicit data; the value is reconstructed
    /// exactly from the periodic tail.
    pub fn from_parts(a0: BigInt, preperiod: Vec<u64>, period: Vec<u64>) -> Result<CfExpansion, QuadError> {
        if period.is_empty() || period.iter().any(|&a| a == 0) || preperiod.iter().any(|&a| a == 0) {
            return Err(QuadError::RationalInput);
        }
        let (preperiod, period) = canonicalize_tail(preperiod, period);
        let alpha = reconstruct_value(&a0, &preperiod, &period)?;
        let d = alpha.radicand();
        Ok(CfExpansion { a0, preperiod, period, d, alpha })
    }

    pub fn value(&self) -> &QuadExt {
        &self.alpha
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Period length P(α).
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Minimal N(α) with `a_n = a_{n+P}` for all n ≥ N(α).
    pub fn n_start(&self) -> usize {
        let l = self.preperiod.len();
        if l == 0 {
            let last = *self.period.last().expect("period nonempty");
            if self.a0 == BigInt::from(last) {
                0
            } else {
                1
            }
        } else {
            l + 1
        }
    }

    /// Partial quotient `a_k`.
    pub fn quotient(&self, k: usize) -> BigInt {
        if k == 0 {
            return self.a0.clone();
        }
        let l = self.preperiod.len();
        if k <= l {
            BigInt::from(self.preperiod[k - 1])
        } else {
            BigInt::from(self.period[(k - 1 - l) % self.period.len()])
        }
    }

    /// Tail quotient `a_k` for k ≥ 1 as a machine integer.
    pub fn quotient_u64(&self, k: usize) -> u64 {
        debug_assert!(k >= 1);
        let l = self.preperiod.len();
        if k <= l {
            self.preperiod[k - 1]
        } else {
            self.period[(k - 1 - l) % self.period.len()]
        }
    }

    /// Digit bound M^α = max_{k≥1} a_k.
    pub fn max_quotient(&self) -> u64 {
        self.preperiod.iter().chain(self.period.iter()).copied().max().expect("period nonempty")
    }

    /// Exact convergents (p_k, q_k); k = -1 yields the seed (1, 0).
    pub fn convergents(&self, k: i64) -> (BigInt, BigInt) {
        assert!(k >= -1);
        let mut it = ConvergentIter::new(self);
        let mut cur = (BigInt::one(), BigInt::zero());
        for _ in 0..=k {
            cur = it.next().expect("infinite sequence");
        }
        cur
    }

    /// Iterator over (p_k, q_k) from k = 0 upward.
    pub fn convergent_iter(&self) -> ConvergentIter<'_> {
        ConvergentIter::new(self)
    }

    /// The k-th difference β_k = q_k·α − p_k; seeds β_{-1} = -1, β_{-2} = α.
    pub fn difference(&self, k: i64) -> QuadExt {
        match k {
            -2 => self.alpha.clone(),
            -1 => -QuadExt::one(),
            k => {
                let (p, q) = self.convergents(k);
                QuadExt::from_bigint(q) * self.alpha.clone() - QuadExt::from_bigint(p)
            }
        }
    }

    /// The k-th complete quotient ζ_k = [a_k; a_{k+1}, …], exactly.
    pub fn complete_quotient(&self, k: u32) -> QuadExt {
        // ζ_k = −β_{k−2} / β_{k−1}
        let k = k as i64;
        let num = -self.difference(k - 2);
        let den = self.difference(k - 1);
        num.checked_div(&den).expect("differences are nonzero")
    }

    /// Re-expands the exact value; used as a round-trip check.
    pub fn reexpand(&self) -> Result<CfExpansion, QuadError> {
        CfExpansion::expand(&self.alpha)
    }
}

/// Streams convergents (p_k, q_k) for k = 0, 1, 2, … by the standard
/// recurrence `q_{k+1} = a_{k+1} q_k + q_{k-1}`.
pub struct ConvergentIter<'a> {
    cf: &'a CfExpansion,
    k: usize,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl<'a> ConvergentIter<'a> {
    fn new(cf: &'a CfExpansion) -> Self {
        ConvergentIter {
            cf,
            k: 0,
            prev: (BigInt::zero(), BigInt::one()), // (p_{-2}, q_{-2})
            cur: (BigInt::one(), BigInt::zero()),  // (p_{-1}, q_{-1})
        }
    }
}

impl<'a> Iterator for ConvergentIter<'a> {
    type Item = (BigInt, BigInt);
    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        let a = self.cf.quotient(self.k);
        let p = &a * &self.cur.0 + &self.prev.0;
        let q = &a * &self.cur.1 + &self.prev.1;
        self.prev = core::mem::replace(&mut self.cur, (p.clone(), q.clone()));
        self.k += 1;
        Some((p, q))
    }
}

/// Exact ⌊(P + √D)/Q⌋ for integers with D > 0 non-square, Q ≠ 0.
fn floor_surd(p: &BigInt, d: &BigInt, q: &BigInt) -> BigInt {
    let s = d.sqrt();
    let guess = (p + &s).div_floor(q);
    // k ≤ (P + √D)/Q  ⟺  kQ − P ≤ √D for Q > 0, and kQ − P ≥ √D for Q < 0;
    // √D is irrational so ties never occur.
    let below = |k: &BigInt| -> bool {
        let lhs = k * q - p;
        if q.is_positive() {
            lhs.is_negative() || &(&lhs * &lhs) < d
        } else {
            !lhs.is_negative() && &(&lhs * &lhs) > d
        }
    };
    let mut cand = guess;
    while !below(&cand) {
        cand -= 1;
    }
    while below(&(&cand + 1u8)) {
        cand += 1;
    }
    cand
}

/// Minimal preperiod, primitive period.
fn canonicalize_tail(mut pre: Vec<u64>, mut cyc: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
    // Shrink the cycle to its primitive root.
    let n = cyc.len();
    for p in 1..=n / 2 {
        if n % p == 0 && (p..n).all(|i| cyc[i] == cyc[i - p]) {
            cyc.truncate(p);
            break;
        }
    }
    // Pull cycle content out of the preperiod while the boundary matches.
    while let Some(&last) = pre.last() {
        if last == *cyc.last().expect("cycle nonempty") {
            pre.pop();
            let l = cyc.pop().expect("cycle nonempty");
            cyc.insert(0, l);
        } else {
            break;
        }
    }
    (pre, cyc)
}

/// Exact value of `[a₀; pre, (cyc)]`: solve the purely periodic tail from its
/// Möbius fixed point, then fold the preperiod back in.
fn reconstruct_value(a0: &BigInt, pre: &[u64], cyc: &[u64]) -> Result<QuadExt, QuadError> {
    // Tail ζ = [c₁; c₂, …, c_P, ζ]: with M = Γ_{c₁}···Γ_{c_P} = [[A,B],[C,E]],
    // ζ = (Aζ + B)/(Cζ + E), so Cζ² + (E−A)ζ − B = 0.
    let (mut a, mut b, mut c, mut e) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &q in cyc {
        // Multiply on the right by [[q,1],[1,0]].
        let (na, nb) = (&a * q + &b, a);
        let (nc, ne) = (&c * q + &e, c);
        a = na;
        b = nb;
        c = nc;
        e = ne;
    }
    let two = BigInt::from(2);
    let qa = c.clone();
    let qb = &e - &a;
    let qc = -b;
    // Roots (−qb ± √(qb² − 4·qa·qc)) / (2 qa); the tail is the root > 1.
    let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
    let disc_u = disc.to_u64().ok_or(QuadError::QuotientTooLarge)?;
    let (sq, f) = super::quad::squarefree_decompose(disc_u);
    if f < 2 {
        return Err(QuadError::RationalInput);
    }
    let denom = BigRational::from_integer(&two * &qa);
    let root = |sign: i64| -> QuadExt {
        let ra = BigRational::from_integer(-qb.clone()) / denom.clone();
        let rb = BigRational::from_integer(BigInt::from(sign) * BigInt::from(sq)) / denom.clone();
        QuadExt::new(ra, rb, f).expect("squarefree by construction")
    };
    let mut zeta = root(1);
    if !(zeta.cmp_exact(&QuadExt::one()) == Ok(core::cmp::Ordering::Greater)) {
        zeta = root(-1);
    }
    // α = [a₀; pre, ζ] by folding from the right.
    let mut val = zeta;
    for &q in pre.iter().rev() {
        val = QuadExt::from_int(q as i64) + val.inverse()?;
    }
    Ok(QuadExt::from_bigint(a0.clone()) + val.inverse()?)
}

impl fmt::Display for CfExpansion {
    /// Prints `[a0; p1 p2 (c1 c2)]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.a0)?;
        for p in &self.preperiod {
            write!(f, " {p}")?;
        }
        write!(f, " (")?;
        for (i, c) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")]")
    }
}

/// Parses the `[a0; p1 p2 (c1 c2)]` form produced by `Display`.
pub fn parse_cf(input: &str) -> Result<CfExpansion, QuadError> {
    let s = input.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| QuadError::Parse(0, String::from("expected [ ... ]")))?;
    let (head, tail) = inner
        .split_once(';')
        .ok_or_else(|| QuadError::Parse(1, String::from("expected ';' after a0")))?;
    let a0: BigInt = head
        .trim()
        .parse()
        .map_err(|_| QuadError::Parse(1, String::from("bad a0")))?;
    let tail = tail.trim();
    let open = tail
        .find('(')
        .ok_or_else(|| QuadError::Parse(0, String::from("expected '(' before period")))?;
    let close = tail
        .find(')')
        .ok_or_else(|| QuadError::Parse(0, String::from("expected ')' after period")))?;
    let parse_list = |part: &str| -> Result<Vec<u64>, QuadError> {
        part.split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| QuadError::Parse(0, String::from("bad quotient"))))
            .collect()
    };
    let pre = parse_list(&tail[..open])?;
    let cyc = parse_list(&tail[open + 1..close])?;
    CfExpansion::from_parts(a0, pre, cyc)
}

#[cfg(test)]
mod tests {
    use super::super::quad::quad;
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn sqrt2_cf() -> CfExpansion {
        CfExpansion::expand(&QuadExt::sqrt_of(2).unwrap()).unwrap()
    }

    fn phi_cf() -> CfExpansion {
        CfExpansion::expand(&quad((1, 2), (1, 2), 5)).unwrap()
    }

    /// Independent oracle: partial quotients by the direct greedy iteration
    /// a_k = ⌊ζ⌋, ζ ← 1/(ζ − a_k), in exact field arithmetic.
    fn greedy_quotients(x: &QuadExt, count: usize) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut zeta = x.clone();
        for _ in 0..count {
            let a = zeta.floor();
            out.push(a.clone());
            zeta = (zeta - QuadExt::from_bigint(a)).inverse().unwrap();
        }
        out
    }

    #[test]
    fn expansion_of_classic_values() {
        let phi = phi_cf();
        assert_eq!(phi.to_string(), "[1; (1)]");
        assert_eq!(sqrt2_cf().to_string(), "[1; (2)]");
        let silver = CfExpansion::expand(&(QuadExt::one() + QuadExt::sqrt_of(2).unwrap())).unwrap();
        assert_eq!(silver.to_string(), "[2; (2)]");
        let sqrt3 = CfExpansion::expand(&QuadExt::sqrt_of(3).unwrap()).unwrap();
        assert_eq!(sqrt3.to_string(), "[1; (1 2)]");
    }

    #[test]
    fn expansion_matches_greedy_oracle() {
        let samples = [
            QuadExt::sqrt_of(2).unwrap(),
            quad((1, 2), (1, 2), 5),
            QuadExt::sqrt_of(3).unwrap(),
            quad((7, 3), (2, 5), 13),
            quad((0, 1), (3, 7), 6),
            quad((10, 1), (1, 1), 2).inverse().unwrap(), // small value, a0 = 0
        ];
        for x in samples {
            let cf = CfExpansion::expand(&x).unwrap();
            let oracle = greedy_quotients(&x, 40);
            for (k, expect) in oracle.iter().enumerate() {
                assert_eq!(&cf.quotient(k), expect, "quotient {k} of {x}");
            }
        }
    }

    #[test]
    fn period_and_start_indices() {
        assert_eq!((phi_cf().period_len(), phi_cf().n_start()), (1, 0));
        assert_eq!((sqrt2_cf().period_len(), sqrt2_cf().n_start()), (1, 1));
        let sqrt3 = CfExpansion::expand(&QuadExt::sqrt_of(3).unwrap()).unwrap();
        assert_eq!((sqrt3.period_len(), sqrt3.n_start()), (2, 1));
        assert_eq!(sqrt3.max_quotient(), 2);
    }

    #[test]
    fn rational_input_rejected() {
        assert!(matches!(
            CfExpansion::expand(&QuadExt::from_int(3)),
            Err(QuadError::RationalInput)
        ));
    }

    #[test]
    fn convergents_frozen_values() {
        assert_eq!(sqrt2_cf().convergents(3), (BigInt::from(17), BigInt::from(12)));
        assert_eq!(phi_cf().convergents(5), (BigInt::from(13), BigInt::from(8)));
        // k = 0 base case (a₀, 1), and the k = −1 seed.
        assert_eq!(sqrt2_cf().convergents(0), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(sqrt2_cf().convergents(-1), (BigInt::from(1), BigInt::from(0)));
    }

    #[test]
    fn convergents_reduce_and_evaluate() {
        // Cross-check against folding the finite fraction [a0; a1..ak] exactly.
        use num_integer::Integer;
        for cf in [sqrt2_cf(), phi_cf()] {
            for k in 0..12i64 {
                let (p, q) = cf.convergents(k);
                assert!(p.gcd(&q).is_one());
                let mut val = BigRational::from_integer(cf.quotient(k as usize));
                for j in (0..k as usize).rev() {
                    val = BigRational::from_integer(cf.quotient(j)) + val.recip();
                }
                assert_eq!(val, BigRational::new(p, q));
            }
        }
    }

    #[test]
    fn determinant_identity_k_to_30() {
        // p_k q_{k−1} − p_{k−1} q_k = (−1)^{k+1}, exactly, both test fields.
        for cf in [sqrt2_cf(), phi_cf()] {
            for k in 0..=30i64 {
                let (pk, qk) = cf.convergents(k);
                let (pk1, qk1) = cf.convergents(k - 1);
                let det = &pk * &qk1 - &pk1 * &qk;
                let expect = if k % 2 == 0 { BigInt::from(-1) } else { BigInt::from(1) };
                assert_eq!(det, expect, "k = {k}");
            }
        }
    }

    #[test]
    fn difference_frozen_values() {
        let cf = sqrt2_cf();
        let sqrt2 = QuadExt::sqrt_of(2).unwrap();
        assert_eq!(cf.difference(0), sqrt2.clone() - QuadExt::one());
        assert_eq!(cf.difference(1), QuadExt::from_int(2) * sqrt2.clone() - QuadExt::from_int(3));
        assert_eq!(cf.difference(2), QuadExt::from_int(5) * sqrt2 - QuadExt::from_int(7));
    }

    #[test]
    fn difference_recurrence_and_alternating_signs() {
        for cf in [sqrt2_cf(), phi_cf()] {
            for k in 0..=30i64 {
                let lhs = cf.difference(k + 1);
                let a = QuadExt::from_bigint(cf.quotient((k + 1) as usize));
                let rhs = a * cf.difference(k) + cf.difference(k - 1);
                assert_eq!(lhs, rhs, "β recurrence at k = {k}");
                let expect_positive = k % 2 == 0;
                assert_eq!(cf.difference(k).is_positive(), expect_positive);
            }
        }
    }

    #[test]
    fn complete_quotients() {
        let phi = phi_cf();
        assert_eq!(phi.complete_quotient(1), quad((1, 2), (1, 2), 5));
        let cf = sqrt2_cf();
        assert_eq!(cf.complete_quotient(0), QuadExt::sqrt_of(2).unwrap());
        assert_eq!(cf.complete_quotient(1), QuadExt::one() + QuadExt::sqrt_of(2).unwrap());
        // ζ_k = a_k + 1/ζ_{k+1} for a stretch of indices.
        for k in 0..8 {
            let lhs = cf.complete_quotient(k);
            let rhs = QuadExt::from_bigint(cf.quotient(k as usize))
                + cf.complete_quotient(k + 1).inverse().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reexpansion_round_trip() {
        let samples = [
            quad((7, 3), (2, 5), 13),
            quad((0, 1), (3, 7), 6),
            quad((3, 1), (2, 1), 2),
            quad((9, 2), (-1, 3), 11) + QuadExt::from_int(2), // keep it positive
        ];
        for x in samples {
            assert!(x.is_positive());
            let cf = CfExpansion::expand(&x).unwrap();
            let back = cf.reexpand().unwrap();
            assert_eq!(cf, back);
            assert_eq!(cf.value(), &x);
        }
    }

    #[test]
    fn from_parts_reconstructs_value() {
        let cf = CfExpansion::from_parts(BigInt::from(1), vec![], vec![1]).unwrap();
        assert_eq!(cf.value(), &quad((1, 2), (1, 2), 5));
        let cf = CfExpansion::from_parts(BigInt::from(1), vec![], vec![2]).unwrap();
        assert_eq!(cf.value(), &QuadExt::sqrt_of(2).unwrap());
        // Non-canonical input gets canonicalized: [1; 2 (2)] = [1; (2)].
        let cf = CfExpansion::from_parts(BigInt::from(1), vec![2], vec![2, 2]).unwrap();
        assert_eq!(cf.preperiod(), &[] as &[u64]);
        assert_eq!(cf.period(), &[2]);
    }

    #[test]
    fn parse_cf_round_trip() {
        for text in ["[1; (1)]", "[1; (2)]", "[2; 1 3 (1 2)]"] {
            let cf = parse_cf(text).unwrap();
            assert_eq!(cf.to_string(), text);
        }
        assert!(parse_cf("[1; 2 3]").is_err());
        assert!(parse_cf("1; (2)").is_err());
    }
}

//! Extended ω-words with finite integer part and eventually periodic
//! fractional part: the computable fragment of the bi-infinite digit
//! sequences evaluated by numeration systems.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::EpError;

/// A bi-infinite digit sequence `x_N … x_0 ⋆ x_{−1} x_{−2} …` that is zero
/// far left and eventually periodic on the right, in canonical form:
/// no leading integer zeros, minimal fractional preperiod, primitive
/// fractional period, all-zero tails stored as the empty period.
///
/// Canonical form makes structural equality coincide with digitwise
/// equality of the underlying sequences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EpWord {
    int_digits: Vec<u32>,
    frac_pre: Vec<u32>,
    frac_period: Vec<u32>,
}

impl EpWord {
    pub fn new(int_digits: Vec<u32>, frac_pre: Vec<u32>, frac_period: Vec<u32>) -> EpWord {
        let mut w = EpWord { int_digits, frac_pre, frac_period };
        w.canonicalize();
        w
    }

    pub fn zero() -> EpWord {
        EpWord::new(Vec::new(), Vec::new(), Vec::new())
    }

    /// Single digit 1 at the given index (positive: integer side, negative:
    /// fractional side).
    pub fn unit(index: i64) -> EpWord {
        if index >= 0 {
            let mut int = alloc::vec![1u32];
            int.extend(core::iter::repeat(0).take(index as usize));
            EpWord::new(int, Vec::new(), Vec::new())
        } else {
            let k = (-index) as usize;
            let mut pre = alloc::vec![0u32; k];
            pre[k - 1] = 1;
            EpWord::new(Vec::new(), pre, Vec::new())
        }
    }

    fn canonicalize(&mut self) {
        while self.int_digits.first() == Some(&0) {
            self.int_digits.remove(0);
        }
        if !self.frac_period.is_empty() {
            // Primitive period.
            let n = self.frac_period.len();
            for p in 1..=n / 2 {
                if n % p == 0 && (p..n).all(|i| self.frac_period[i] == self.frac_period[i - p]) {
                    self.frac_period.truncate(p);
                    break;
                }
            }
            if self.frac_period.iter().all(|&d| d == 0) {
                self.frac_period.clear();
            }
        }
        if self.frac_period.is_empty() {
            while self.frac_pre.last() == Some(&0) {
                self.frac_pre.pop();
            }
        } else {
            // Minimal preperiod: rotate the boundary digit out of the preperiod.
            while let Some(&last) = self.frac_pre.last() {
                if last == *self.frac_period.last().expect("period nonempty") {
                    self.frac_pre.pop();
                    let d = self.frac_period.pop().expect("period nonempty");
                    self.frac_period.insert(0, d);
                } else {
                    break;
                }
            }
        }
    }

    /// Integer digits, most significant first; empty for values below 1.
    pub fn int_digits(&self) -> &[u32] {
        &self.int_digits
    }

    pub fn frac_pre(&self) -> &[u32] {
        &self.frac_pre
    }

    pub fn frac_period(&self) -> &[u32] {
        &self.frac_period
    }

    /// Number of integer digit positions (index of the leading digit + 1).
    pub fn int_len(&self) -> usize {
        self.int_digits.len()
    }

    /// Digit at signed index: `digit(0)` multiplies U₀, `digit(-1)`
    /// multiplies U₋₁.
    pub fn digit(&self, index: i64) -> u32 {
        if index >= 0 {
            let i = index as usize;
            let n = self.int_digits.len();
            if i < n {
                self.int_digits[n - 1 - i]
            } else {
                0
            }
        } else {
            let k = (-index) as usize; // fractional position 1, 2, …
            if k <= self.frac_pre.len() {
                self.frac_pre[k - 1]
            } else if self.frac_period.is_empty() {
                0
            } else {
                let off = k - 1 - self.frac_pre.len();
                self.frac_period[off % self.frac_period.len()]
            }
        }
    }

    pub fn max_digit(&self) -> u32 {
        self.int_digits
            .iter()
            .chain(self.frac_pre.iter())
            .chain(self.frac_period.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.int_digits.is_empty() && self.frac_pre.is_empty() && self.frac_period.is_empty()
    }

    /// The fractional tail is all zeros.
    pub fn is_integral(&self) -> bool {
        self.frac_pre.is_empty() && self.frac_period.is_empty()
    }

    /// The digit sequence read from `start` rightwards (deeper into the
    /// fractional tail), as an eventually periodic stream.
    pub(crate) fn stream_from(&self, start: i64) -> DigitStream<'_> {
        DigitStream { word: self, start }
    }
}

/// Eventually periodic infinite digit stream, used for lexicographic
/// comparisons against expansion bounds.
#[derive(Clone, Copy)]
pub(crate) struct DigitStream<'a> {
    word: &'a EpWord,
    start: i64,
}

impl<'a> DigitStream<'a> {
    pub(crate) fn at(&self, offset: usize) -> u32 {
        self.word.digit(self.start - offset as i64)
    }

    /// Offsets beyond which the stream is purely periodic, and the period.
    pub(crate) fn tail(&self) -> (usize, usize) {
        let pre_end = -(self.word.frac_pre.len() as i64);
        let stable = if self.start <= pre_end { 0 } else { (self.start - pre_end) as usize };
        let p = self.word.frac_period.len().max(1);
        (stable, p)
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
        x
    };
    a / gcd * b
}

/// Exact lexicographic comparison of two eventually periodic streams.
pub(crate) fn cmp_streams(a: &DigitStream<'_>, b: &DigitStream<'_>) -> core::cmp::Ordering {
    let (sa, pa) = a.tail();
    let (sb, pb) = b.tail();
    let bound = sa.max(sb) + lcm(pa, pb) + 1;
    for i in 0..bound {
        match a.at(i).cmp(&b.at(i)) {
            core::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    core::cmp::Ordering::Equal
}

impl fmt::Display for EpWord {
    /// Word literal: `INT "." PRE "(" PERIOD ")"`, digits juxtaposed when
    /// every digit is ≤ 9 and comma-separated otherwise. The all-zero
    /// fractional tail prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let commas = self.max_digit() > 9;
        let join = |f: &mut fmt::Formatter<'_>, digits: &[u32], sep_before: bool| -> fmt::Result {
            for (i, d) in digits.iter().enumerate() {
                if commas && (i > 0 || sep_before) {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
            Ok(())
        };
        if self.int_digits.is_empty() {
            write!(f, "0")?;
        } else {
            join(f, &self.int_digits, false)?;
        }
        write!(f, ".")?;
        if self.frac_pre.is_empty() && self.frac_period.is_empty() {
            return write!(f, "0");
        }
        join(f, &self.frac_pre, false)?;
        if !self.frac_period.is_empty() {
            if commas && !self.frac_pre.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            join(f, &self.frac_period, false)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses the word literal grammar emitted by `Display`.
pub fn parse_word(input: &str) -> Result<EpWord, EpError> {
    let s = input.trim();
    let dot = s
        .find('.')
        .ok_or_else(|| EpError::Parse(0, String::from("expected '.' radix mark")))?;
    let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
    let commas = s.contains(',');

    let parse_digits = |part: &str, base_off: usize| -> Result<Vec<u32>, EpError> {
        let mut out = Vec::new();
        if commas {
            for (i, tok) in part.split(',').enumerate() {
                let tok = tok.trim();
                if tok.is_empty() {
                    if part.trim().is_empty() && i == 0 {
                        break;
                    }
                    return Err(EpError::Parse(base_off, String::from("empty digit")));
                }
                out.push(
                    tok.parse::<u32>()
                        .map_err(|_| EpError::Parse(base_off, String::from("bad digit")))?,
                );
            }
        } else {
            for (i, ch) in part.chars().enumerate() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| EpError::Parse(base_off + i, String::from("bad digit")))?;
                out.push(d);
            }
        }
        Ok(out)
    };

    let int_digits = parse_digits(int_part, 0)?;
    let (pre_txt, per_txt) = match frac_part.find('(') {
        Some(open) => {
            let close = frac_part
                .rfind(')')
                .ok_or_else(|| EpError::Parse(dot + 1 + open, String::from("unclosed period")))?;
            if close + 1 != frac_part.len() {
                return Err(EpError::Parse(dot + 1 + close, String::from("trailing input")));
            }
            let mut pre = &frac_part[..open];
            // Tolerate a separating comma before the period group.
            if commas {
                pre = pre.strip_suffix(',').unwrap_or(pre);
            }
            (pre, &frac_part[open + 1..close])
        }
        None => (frac_part, ""),
    };
    let frac_pre = parse_digits(pre_txt, dot + 1)?;
    let frac_period = parse_digits(per_txt, dot + 1)?;
    if frac_pre.is_empty() && frac_period.is_empty() && per_txt.is_empty() && pre_txt.is_empty() {
        return Err(EpError::Parse(dot + 1, String::from("missing fractional part")));
    }
    Ok(EpWord::new(int_digits, frac_pre, frac_period))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn canonical_form() {
        // Leading integer zeros stripped.
        let w = EpWord::new(vec![0, 0, 1, 0], vec![], vec![]);
        assert_eq!(w.int_digits(), &[1, 0]);
        // All-zero period becomes empty; trailing preperiod zeros dropped.
        let w = EpWord::new(vec![1], vec![1, 0, 0], vec![0, 0]);
        assert_eq!(w.frac_pre(), &[1]);
        assert_eq!(w.frac_period(), &[] as &[u32]);
        // Period made primitive and rotated into minimal preperiod.
        let w = EpWord::new(vec![], vec![0], vec![1, 0, 1, 0]);
        assert_eq!(w.frac_pre(), &[] as &[u32]);
        assert_eq!(w.frac_period(), &[0, 1]);
    }

    #[test]
    fn digit_indexing() {
        let w = EpWord::new(vec![2, 0, 1], vec![3], vec![4, 5]);
        assert_eq!(w.digit(2), 2);
        assert_eq!(w.digit(1), 0);
        assert_eq!(w.digit(0), 1);
        assert_eq!(w.digit(5), 0);
        assert_eq!(w.digit(-1), 3);
        assert_eq!(w.digit(-2), 4);
        assert_eq!(w.digit(-3), 5);
        assert_eq!(w.digit(-4), 4);
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(EpWord::new(vec![1, 0, 0, 1, 0, 0], vec![], vec![]).to_string(), "100100.0");
        assert_eq!(EpWord::new(vec![], vec![], vec![1, 0]).to_string(), "0.(10)");
        assert_eq!(EpWord::new(vec![2, 0, 0], vec![], vec![]).to_string(), "200.0");
        assert_eq!(EpWord::new(vec![12, 0], vec![3], vec![1, 0]).to_string(), "12,0.3,(1,0)");
        assert_eq!(EpWord::zero().to_string(), "0.0");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["100100.0", "0.(10)", "200.0", "1.0", "0.01", "12,0.3,(1,0)", "0.(2)"] {
            let w = parse_word(text).unwrap();
            assert_eq!(w.to_string(), text, "round trip of {text}");
        }
        // Non-canonical input parses to the canonical form.
        assert_eq!(parse_word("007.10(00)").unwrap().to_string(), "7.1");
        assert!(parse_word("12").is_err());
        assert!(parse_word("1.2x").is_err());
    }

    #[test]
    fn stream_comparison() {
        let a = EpWord::new(vec![], vec![], vec![1, 0]);
        let b = EpWord::new(vec![], vec![1, 0, 1], vec![0]);
        // (10)^ω vs 101 0^ω: differ at offset 3.
        let ord = cmp_streams(&a.stream_from(-1), &b.stream_from(-1));
        assert_eq!(ord, core::cmp::Ordering::Greater);
        let ord = cmp_streams(&a.stream_from(-1), &a.stream_from(-1));
        assert_eq!(ord, core::cmp::Ordering::Equal);
        // Same word, shifted start: (10)^ω from −1 vs from −2.
        let ord = cmp_streams(&a.stream_from(-1), &a.stream_from(-2));
        assert_eq!(ord, core::cmp::Ordering::Greater);
    }
}

//! Fractions, continued fractions and integer compositions.
//!
//! Everything here is exact integer arithmetic. The continued-fraction
//! convention is top-down: `eval_cf([a1, ..., an]) = a1 + 1/(a2 + ... + 1/an)`,
//! so the first entry is the integer part. All operations are exact for
//! numerators well beyond 10^6 (u64 arithmetic; the continued-fraction
//! recurrence grows at most like Fibonacci numbers in the entry sum).

use crate::Error;
use std::fmt;

/// A positive rational `p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    p: u64,
    q: u64,
}

impl Fraction {
    /// Builds `p/q`, reducing to lowest terms. Zero values are rejected.
    pub fn new(p: u64, q: u64) -> Result<Self, Error> {
        if p == 0 || q == 0 {
            return Err(Error::ZeroFraction);
        }
        let g = gcd(p, q);
        Ok(Fraction { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// True when the fraction classifies a 2-component link rather than a knot.
    pub fn is_link(&self) -> bool {
        self.p.is_multiple_of(2)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Greatest common divisor (Euclid).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Conway normal form: a nonempty sequence of positive twist counts.
///
/// The derived `Ord` is lexicographic on the entry sequence, which is the
/// order used whenever a deterministic representative has to be picked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConwayForm(Vec<u32>);

impl ConwayForm {
    pub fn new(entries: Vec<u32>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyForm);
        }
        if entries.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        Ok(ConwayForm(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: forms are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total number of crossings: the sum of all entries.
    pub fn crossing_count(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Parses `"2,1,2"` or `"[2,1,2]"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body);
        let entries = body
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad Conway entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConwayForm::new(entries)
    }
}

impl fmt::Display for ConwayForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Evaluates the continued fraction `a1 + 1/(a2 + ... + 1/an)`.
///
/// The fold runs right to left: starting from `an/1`, each step maps
/// `r/s` to `(a*r + s)/r`. Consecutive convergents are coprime, so the
/// result is automatically in lowest terms.
///
/// ```
/// use twobridge::rational::{ConwayForm, eval_cf};
/// let f = eval_cf(&ConwayForm::new(vec![6, 1, 4]).unwrap());
/// assert_eq!((f.p(), f.q()), (34, 5));
/// ```
pub fn eval_cf(form: &ConwayForm) -> Fraction {
    // tail value p/q, folded from the last entry; a + q/p = (a*p + q)/p
    let (mut p, mut q) = (1u64, 0u64);
    for &a in form.entries().iter().rev() {
        let top = (a as u64)
            .checked_mul(p)
            .and_then(|v| v.checked_add(q))
            .expect("continued fraction overflow");
        q = p;
        p = top;
    }
    debug_assert_eq!(gcd(p, q), 1);
    Fraction { p, q }
}

/// All ordered sequences of positive integers summing to `n`, in
/// lexicographic order. There are exactly `2^(n-1)` of them.
///
/// ```
/// use twobridge::rational::compositions;
/// let c3: Vec<String> = compositions(3).unwrap().iter().map(|f| f.to_string()).collect();
/// assert_eq!(c3, ["[1,1,1]", "[1,2]", "[2,1]", "[3]"]);
/// ```
pub fn compositions(n: u32) -> Result<Vec<ConwayForm>, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("compositions of 0 are rejected".into()));
    }
    let mut out = Vec::with_capacity(1usize << (n.min(24) - 1));
    let mut prefix = Vec::new();
    fill(n, &mut prefix, &mut out);
    Ok(out)
}

fn fill(remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<ConwayForm>) {
    if remaining == 0 {
        out.push(ConwayForm(prefix.clone()));
        return;
    }
    for first in 1..=remaining {
        prefix.push(first);
        fill(remaining - first, prefix, out);
        prefix.pop();
    }
}

/// The compositions of `total` whose continued fraction equals `target`.
///
/// Brute force over all `2^(total-1)` compositions; an empty result means no
/// expansion of that length exists. Results inherit the lexicographic order
/// of [`compositions`].
pub fn expansions(target: Fraction, total: u32) -> Vec<ConwayForm> {
    compositions(total)
        .map(|all| {
            all.into_iter()
                .filter(|form| eval_cf(form) == target)
                .collect()
        })
        .unwrap_or_default()
}

/// The canonical all-positive continued fraction of `p/q` (Euclid quotients).
///
/// For `q >= 2` the final entry is at least 2; `p/1` gives `[p]`. Any
/// positive fraction > 1 in lowest terms has exactly two all-positive
/// expansions, this one and its tail split `[..., a] -> [..., a-1, 1]`,
/// and both have the same entry sum.
pub fn euclid_cf(f: Fraction) -> ConwayForm {
    let (mut p, mut q) = (f.p(), f.q());
    let mut entries = Vec::new();
    while q != 0 {
        entries.push((p / q) as u32);
        let r = p % q;
        p = q;
        q = r;
    }
    ConwayForm(entries)
}

//! Schubert equivalence of 2-bridge links.
//!
//! For even `p`, the links `L(p, q)` and `L(p, q')` are equivalent as
//! unoriented links iff `q = q'` or `q*q' = 1 (mod p)`; reversing the
//! orientation of one component gives the mirror of `L(p, p-q)`. The link
//! tables this crate targets list links up to orientation *and* mirror
//! image, so a class here is the orbit of `q` under both moves:
//! `{q, q^-1, p-q, (p-q)^-1}` mod `p`.

use crate::rational::{euclid_cf, gcd, ConwayForm, Fraction};
use crate::Error;
use std::collections::BTreeSet;
use std::fmt;

/// The inverse of `q` mod `p`, in `(0, p)`. Errors when `gcd(q, p) != 1`.
///
/// ```
/// use twobridge::equivalence::mod_inverse;
/// assert_eq!(mod_inverse(3, 14).unwrap(), 5); // 3*5 = 15 = 1 (mod 14)
/// ```
pub fn mod_inverse(q: u64, p: u64) -> Result<u64, Error> {
    if p < 2 || gcd(q % p, p) != 1 {
        return Err(Error::NonCoprime { q, p });
    }
    // extended Euclid on (p, q), tracking only the coefficient of q
    let (mut r0, mut r1) = (p as i128, (q % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(p as i128) as u64)
}

/// Schubert's unoriented criterion: same `p` and `q = q'` or `q*q' = 1 (mod p)`.
pub fn unoriented_equivalent(a: (u64, u64), b: (u64, u64)) -> bool {
    let ((p, q), (p2, q2)) = (a, b);
    if p != p2 {
        return false;
    }
    q % p == q2 % p || ((q as u128 * q2 as u128) % p as u128) == 1
}

/// Reversing one component of `L(p, q)` yields `L(p, q-p)`, i.e. the mirror
/// image of `L(p, p-q)`; this returns that mirror representative `(p, p-q)`.
pub fn reverse_orientation(pair: (u64, u64)) -> (u64, u64) {
    let (p, q) = pair;
    (p, p - q % p)
}

/// The full orbit `{q, q^-1, p-q, (p-q)^-1}` mod `p`, duplicates collapsed.
///
/// The orbit always has 1, 2 or 4 elements.
pub fn class_members(p: u64, q: u64) -> Result<BTreeSet<u64>, Error> {
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::OddNumerator(p));
    }
    let q = q % p;
    if q == 0 || gcd(q, p) != 1 {
        return Err(Error::NonCoprime { q, p });
    }
    let inv = mod_inverse(q, p)?;
    let mut members = BTreeSet::new();
    members.insert(q);
    members.insert(inv);
    members.insert(p - q);
    members.insert(p - inv); // (p-q)^-1 = -(q^-1) = p - inv (mod p)
    Ok(members)
}

/// An equivalence class of 2-bridge links under Schubert moves, orientation
/// reversal and mirror image, with a canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkClass {
    p: u64,
    members: BTreeSet<u64>,
    canonical_q: u64,
    chosen_form: ConwayForm,
    amphichiral: bool,
}

impl LinkClass {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// All denominators `q' < p` equivalent to the representative.
    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    /// The minimum member, used as the canonical denominator.
    pub fn canonical_q(&self) -> u64 {
        self.canonical_q
    }

    /// Deterministic representative form: the lexicographically least
    /// minimal-length expansion over all members, at the class's crossing
    /// number.
    pub fn chosen_form(&self) -> &ConwayForm {
        &self.chosen_form
    }

    /// Minimal crossing number: the entry sum of the canonical expansion of
    /// any member (all members agree).
    pub fn crossing_number(&self) -> u32 {
        self.chosen_form.crossing_count()
    }

    /// True when the mirror image is already unoriented-equivalent to the
    /// link itself, i.e. `p - q = q^-1 (mod p)`.
    pub fn amphichiral(&self) -> bool {
        self.amphichiral
    }

    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.p, self.canonical_q).expect("class members are valid")
    }

    pub fn contains(&self, q: u64) -> bool {
        self.members.contains(&(q % self.p))
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.canonical_q)
    }
}

/// Canonicalizes `(p, q)` into its [`LinkClass`]. Idempotent: every member
/// of the orbit produces the identical class.
///
/// ```
/// use twobridge::equivalence::canonicalize;
/// let class = canonicalize(14, 9).unwrap();
/// assert_eq!(class.canonical_q(), 3);
/// assert_eq!(class.crossing_number(), 7);
/// ```
pub fn canonicalize(p: u64, q: u64) -> Result<LinkClass, Error> {
    let members = class_members(p, q)?;
    let canonical_q = *members.iter().next().unwrap();

    // Each member's canonical continued fraction realizes the crossing
    // number; minimal length + lexicographic order picks the representative.
    let mut chosen: Option<ConwayForm> = None;
    let mut crossing_number: Option<u32> = None;
    for &m in &members {
        let cf = euclid_cf(Fraction::new(p, m)?);
        let total = cf.crossing_count();
        match crossing_number {
            None => crossing_number = Some(total),
            Some(t) => debug_assert_eq!(t, total, "members disagree on crossing number"),
        }
        let better = match &chosen {
            None => true,
            Some(best) => (cf.len(), &cf) < (best.len(), best),
        };
        if better {
            chosen = Some(cf);
        }
    }

    let inv = mod_inverse(canonical_q, p)?;
    Ok(LinkClass {
        p,
        amphichiral: p - canonical_q == inv,
        members,
        canonical_q,
        chosen_form: chosen.unwrap(),
    })
}

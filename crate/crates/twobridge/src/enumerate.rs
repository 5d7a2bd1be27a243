//! The tabulation pipeline: enumerate compositions, keep the even-numerator
//! ones, collapse Schubert-equivalent candidates into classes, and emit one
//! deterministic row per class.

use crate::equivalence::{canonicalize, LinkClass};
use crate::rational::{compositions, eval_cf, ConwayForm, Fraction};
use crate::Error;
use std::collections::BTreeMap;

/// A composition together with its continued-fraction value; only kept when
/// the numerator is even (links, not knots).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCandidate {
    pub form: ConwayForm,
    pub fraction: Fraction,
}

/// One tabulated link class at a given crossing number.
#[derive(Debug, Clone)]
pub struct TabulationRow {
    pub crossing_number: u32,
    pub link_class: LinkClass,
    /// How many raw candidates collapsed into this class.
    pub raw_count: usize,
    /// 2 when the class has a palindromic expansion (one orientation),
    /// 4 otherwise (two orientations of the link and of its mirror).
    pub oriented_multiplicity: u8,
}

/// All compositions of `n` whose fraction has even numerator, paired with
/// their fractions, in lexicographic form order. Requires `n >= 3`.
pub fn enumerate_raw(n: u32) -> Result<Vec<RawCandidate>, Error> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "tabulation starts at 3 crossings (got {n})"
        )));
    }
    Ok(compositions(n)?
        .into_iter()
        .map(|form| {
            let fraction = eval_cf(&form);
            RawCandidate { form, fraction }
        })
        .filter(|c| c.fraction.is_link())
        .collect())
}

/// Collapses `enumerate_raw(n)` into one row per link class, ordered by
/// ascending `(p, canonical_q)`.
pub fn tabulate(n: u32) -> Result<Vec<TabulationRow>, Error> {
    let raw = enumerate_raw(n)?;
    let mut groups: BTreeMap<(u64, u64), (LinkClass, Vec<ConwayForm>)> = BTreeMap::new();
    for cand in raw {
        let class = canonicalize(cand.fraction.p(), cand.fraction.q())?;
        groups
            .entry((class.p(), class.canonical_q()))
            .or_insert_with(|| (class, Vec::new()))
            .1
            .push(cand.form);
    }
    Ok(groups
        .into_values()
        .map(|(link_class, forms)| {
            debug_assert_eq!(link_class.crossing_number(), n);
            debug_assert!(forms.contains(link_class.chosen_form()));
            TabulationRow {
                crossing_number: n,
                raw_count: forms.len(),
                oriented_multiplicity: if forms.iter().any(|f| f.is_palindrome()) {
                    2
                } else {
                    4
                },
                link_class,
            }
        })
        .collect())
}

/// Concatenated `tabulate(n)` for `4 <= n <= n_max`, ascending.
pub fn tabulate_range(n_max: u32) -> Result<Vec<TabulationRow>, Error> {
    if n_max < 4 {
        return Err(Error::InvalidInput(format!(
            "range tabulation needs n_max >= 4 (got {n_max})"
        )));
    }
    let mut rows = Vec::new();
    for n in 4..=n_max {
        rows.extend(tabulate(n)?);
    }
    Ok(rows)
}

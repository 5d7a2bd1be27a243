//! Splitting numbers of 2-bridge links whose class admits a Conway form
//! `C(2a1, b1, 2a2, b2, ..., 2an)`: odd length, every odd-position entry
//! even. For such a form the splitting number is `a1 + a2 + ... + an`, half
//! the sum of the odd-position entries.
//!
//! Absence of a certificate means the pattern criterion does not apply at
//! this crossing number, not that the splitting number is unknown.

use crate::equivalence::LinkClass;
use crate::rational::{expansions, ConwayForm, Fraction};

/// Witness that a form matches the splitting pattern, with the resulting
/// splitting number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCertificate {
    pub pattern_form: ConwayForm,
    /// The half-twist counts `a1, ..., an` (odd positions halved).
    pub a_values: Vec<u32>,
    /// The splitting number: sum of the `a_values`.
    pub sp: u32,
}

/// Checks the pattern: odd length and even entries at positions 1, 3, 5, ...
///
/// ```
/// use twobridge::rational::ConwayForm;
/// use twobridge::splitting::match_pattern;
///
/// let cert = match_pattern(&ConwayForm::new(vec![2, 6, 2]).unwrap()).unwrap();
/// assert_eq!(cert.sp, 2);
/// assert!(match_pattern(&ConwayForm::new(vec![3, 3]).unwrap()).is_none());
/// ```
pub fn match_pattern(form: &ConwayForm) -> Option<SplittingCertificate> {
    if form.len().is_multiple_of(2) {
        return None;
    }
    let mut a_values = Vec::with_capacity(form.len() / 2 + 1);
    for (i, &entry) in form.entries().iter().enumerate() {
        if i % 2 == 0 {
            if entry % 2 != 0 {
                return None;
            }
            a_values.push(entry / 2);
        }
    }
    let sp = a_values.iter().sum();
    Some(SplittingCertificate {
        pattern_form: form.clone(),
        a_values,
        sp,
    })
}

/// Searches every expansion of every class member at the given crossing
/// number for a pattern form. Returns the first certificate in member order
/// (members ascending, expansions lexicographic); all certificates of one
/// class must agree on the splitting number.
pub fn splitting_number(
    class: &LinkClass,
    crossing_number: u32,
) -> Option<(u32, SplittingCertificate)> {
    let mut found: Option<SplittingCertificate> = None;
    for &q in class.members() {
        let target = Fraction::new(class.p(), q).expect("class members are valid");
        for form in expansions(target, crossing_number) {
            if let Some(cert) = match_pattern(&form) {
                match &found {
                    None => found = Some(cert),
                    Some(first) => assert_eq!(
                        first.sp, cert.sp,
                        "pattern certificates disagree for class {class}"
                    ),
                }
            }
        }
    }
    found.map(|cert| (cert.sp, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::canonicalize;
    use crate::rational::compositions;
    use crate::rational::eval_cf;

    fn form(v: &[u32]) -> ConwayForm {
        ConwayForm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(match_pattern(&form(&[2, 6, 2])).unwrap().sp, 2);
        assert_eq!(match_pattern(&form(&[8, 1, 2])).unwrap().sp, 5);
        let cert = match_pattern(&form(&[2, 1, 2, 1, 2])).unwrap();
        assert_eq!(cert.sp, 3);
        assert_eq!(cert.a_values, vec![1, 1, 1]);
        assert!(match_pattern(&form(&[3, 3])).is_none());
        assert!(match_pattern(&form(&[3, 1, 2])).is_none());
        // single even entry is the shortest pattern
        assert_eq!(match_pattern(&form(&[2])).unwrap().sp, 1);
    }

    #[test]
    fn splitting_number_examples() {
        let (sp, cert) = splitting_number(&canonicalize(62, 23).unwrap(), 10).unwrap();
        assert_eq!(sp, 3);
        assert_eq!(cert.pattern_form, form(&[2, 1, 2, 3, 2]));

        let (sp, cert) = splitting_number(&canonicalize(34, 5).unwrap(), 11).unwrap();
        assert_eq!(sp, 5);
        assert_eq!(cert.pattern_form, form(&[6, 1, 4]));

        let (sp, _) = splitting_number(&canonicalize(8, 3).unwrap(), 5).unwrap();
        assert_eq!(sp, 2);

        assert!(splitting_number(&canonicalize(10, 3).unwrap(), 6).is_none());
    }

    #[test]
    fn certificates_agree_across_members() {
        // the agreement assert inside splitting_number runs on every class
        for n in 4..=11u32 {
            let mut seen = std::collections::BTreeSet::new();
            for c in compositions(n).unwrap() {
                let f = eval_cf(&c);
                if !f.is_link() {
                    continue;
                }
                let class = canonicalize(f.p(), f.q()).unwrap();
                if seen.insert((class.p(), class.canonical_q())) {
                    let _ = splitting_number(&class, n);
                }
            }
        }
    }

    #[test]
    fn sp_bounds_when_certificate_exists() {
        for n in 4..=11u32 {
            for c in compositions(n).unwrap() {
                let f = eval_cf(&c);
                if !f.is_link() {
                    continue;
                }
                let class = canonicalize(f.p(), f.q()).unwrap();
                if let Some((sp, _)) = splitting_number(&class, n) {
                    assert!(sp >= 1 && sp <= n / 2, "class {class}: sp {sp}");
                }
            }
        }
    }
}

//! Diagram invariants: Kauffman bracket, writhe, linking number, and the
//! orientation/mirror-quotiented identification key.
//!
//! The bracket is evaluated as a plain state sum: each crossing is smoothed
//! the A-way or the B-way, loops are counted, and the states contribute
//! `A^(a-b) * delta^(loops-1)` with loop value `delta = -A^2 - A^-2`. With at
//! most 20 crossings this is at most ~10^6 states, and for the tables in
//! this crate (11 crossings) at most 2048 — slow and simple on purpose, so
//! it can serve as the oracle for anything cleverer.

use crate::diagram::{gauss_code, GaussCode, PlanarDiagram};
use crate::laurent::Laurent;
use crate::Error;
use std::collections::BTreeSet;
use std::fmt;

/// Largest crossing count the exhaustive state sum accepts.
pub const MAX_BRACKET_CROSSINGS: usize = 20;

/// The Kauffman bracket, normalized so the crossingless unknot has bracket 1.
///
/// For a PD crossing `X(i,j,k,l)` the A-smoothing joins `i-j` and `k-l`,
/// the B-smoothing joins `i-l` and `j-k`.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<Laurent, Error> {
    let nc = d.crossing_count();
    if nc > MAX_BRACKET_CROSSINGS {
        return Err(Error::BracketCapacity {
            crossings: nc,
            max: MAX_BRACKET_CROSSINGS,
        });
    }

    // dense arc indices
    let arcs: Vec<u32> = {
        let mut set = BTreeSet::new();
        for t in d.crossings() {
            set.extend(t.iter().copied());
        }
        set.into_iter().collect()
    };
    let idx = |arc: u32| arcs.binary_search(&arc).unwrap();
    let dense: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|t| std::array::from_fn(|k| idx(t[k])))
        .collect();

    let loop_pows: Vec<Laurent> = {
        let mut pows = vec![Laurent::one()];
        for _ in 0..nc + d.free_loops() as usize + 1 {
            pows.push(pows.last().unwrap() * &Laurent::loop_value());
        }
        pows
    };

    let mut bracket = Laurent::zero();
    let mut parent: Vec<usize> = Vec::with_capacity(arcs.len());
    for state in 0u32..1 << nc {
        parent.clear();
        parent.extend(0..arcs.len());
        let find = |mut x: usize, parent: &mut Vec<usize>| {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        };
        let mut a_count: i32 = 0;
        for (c, t) in dense.iter().enumerate() {
            let pairs = if state >> c & 1 == 0 {
                a_count += 1;
                [(t[0], t[1]), (t[2], t[3])]
            } else {
                [(t[0], t[3]), (t[1], t[2])]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(x, &mut parent), find(y, &mut parent));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let mut loops = d.free_loops() as usize;
        for i in 0..arcs.len() {
            if find(i, &mut parent) == i {
                loops += 1;
            }
        }
        if nc == 0 {
            loops = d.free_loops() as usize;
        }
        let b_count = nc as i32 - a_count;
        bracket += &(&Laurent::monomial(a_count - b_count, 1) * &loop_pows[loops - 1]);
    }

    debug_assert!(
        bracket.is_zero()
            || (bracket.min_exp().unwrap() >= -(3 * nc as i32) - 2
                && bracket.max_exp().unwrap() <= 3 * nc as i32 + 2),
        "bracket exponents out of the sanity range"
    );
    Ok(bracket)
}

/// Sum of crossing signs over all crossings of the diagram.
pub fn writhe(g: &GaussCode) -> i64 {
    let total: i64 = g.components().iter().flatten().map(|v| v.sign as i64).sum();
    // every crossing is visited exactly twice
    total / 2
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(g: &GaussCode) -> Result<i64, Error> {
    if g.component_count() != 2 {
        return Err(Error::NotTwoComponents(g.component_count()));
    }
    let in_first: BTreeSet<u32> = g.components()[0].iter().map(|v| v.crossing).collect();
    let inter: i64 = g.components()[1]
        .iter()
        .filter(|v| in_first.contains(&v.crossing))
        .map(|v| v.sign as i64)
        .sum();
    Ok(inter / 2)
}

/// A canonical fingerprint of a 2-component diagram, invariant under arc
/// relabeling, mirror image, and reversal of either component.
///
/// It is the set of writhe-normalized brackets `(-A^3)^(-w) * <D>` over both
/// relative orientations (their writhes differ by four times the linking
/// number), closed under `A -> A^-1`, serialized canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentificationKey {
    canonical: String,
}

impl IdentificationKey {
    pub fn as_str(&self) -> &str {
        &self.canonical
    }
}

impl fmt::Display for IdentificationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical)
    }
}

/// Computes the [`IdentificationKey`] of a 2-component diagram.
pub fn identification_key(d: &PlanarDiagram) -> Result<IdentificationKey, Error> {
    let g = gauss_code(d);
    let lk = linking_number(&g)?;
    let w = writhe(&g);
    let bracket = kauffman_bracket(d)?;

    let f1 = &Laurent::minus_a_cubed_pow(-w) * &bracket;
    let f2 = &f1 * &Laurent::monomial((12 * lk) as i32, 1);
    let mut set = BTreeSet::new();
    for f in [&f1, &f2] {
        set.insert(f.to_string());
        set.insert(f.invert_variable().to_string());
    }
    Ok(IdentificationKey {
        canonical: set.into_iter().collect::<Vec<_>>().join(";"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::rational::ConwayForm;

    fn diagram(v: &[u32]) -> PlanarDiagram {
        build_diagram(&ConwayForm::new(v.to_vec()).unwrap())
    }

    #[test]
    fn bracket_of_unknot_diagram_is_one() {
        let b = kauffman_bracket(&PlanarDiagram::unknot()).unwrap();
        assert_eq!(b, Laurent::one());
    }

    #[test]
    fn bracket_of_kinks() {
        let pos = PlanarDiagram::from_crossings(vec![[1, 1, 2, 2]]).unwrap();
        assert_eq!(kauffman_bracket(&pos).unwrap(), Laurent::monomial(3, -1));
        let neg = PlanarDiagram::from_crossings(vec![[1, 2, 2, 1]]).unwrap();
        assert_eq!(kauffman_bracket(&neg).unwrap(), Laurent::monomial(-3, -1));
    }

    #[test]
    fn bracket_of_hopf_template() {
        let b = kauffman_bracket(&diagram(&[2])).unwrap();
        let expected = &Laurent::monomial(4, -1) + &Laurent::monomial(-4, -1);
        assert_eq!(b, expected);
        assert_eq!(b.to_string(), "-1*A^-4+-1*A^4");
    }

    #[test]
    fn trefoil_normalized_bracket_matches_literature() {
        // f = (-A^3)^(-w) <D> of a trefoil is -A^(+-16) + A^(+-12) + A^(+-4)
        let d = diagram(&[3]);
        let g = gauss_code(&d);
        let f = &Laurent::minus_a_cubed_pow(-writhe(&g)) * &kauffman_bracket(&d).unwrap();
        let right: Laurent = [(16, -1), (12, 1), (4, 1)]
            .iter()
            .fold(Laurent::zero(), |acc, &(e, c)| {
                &acc + &Laurent::monomial(e, c)
            });
        let left = right.invert_variable();
        assert!(f == right || f == left, "got {f}");
    }

    #[test]
    fn hopf_linking_number() {
        let g = gauss_code(&diagram(&[2]));
        assert_eq!(linking_number(&g).unwrap().abs(), 1);
        let g4 = gauss_code(&diagram(&[4]));
        assert_eq!(linking_number(&g4).unwrap().abs(), 2);
    }

    #[test]
    fn linking_number_needs_two_components() {
        let g = gauss_code(&diagram(&[3]));
        assert!(matches!(
            linking_number(&g),
            Err(Error::NotTwoComponents(1))
        ));
    }

    #[test]
    fn bracket_capacity_guard() {
        let d = diagram(&[21]);
        assert!(matches!(
            kauffman_bracket(&d),
            Err(Error::BracketCapacity { crossings: 21, .. })
        ));
    }

    #[test]
    fn bracket_invariant_under_relabeling() {
        let d = diagram(&[2, 1, 2]);
        // shift all arc ids and rotate each tuple by two (also a valid PD of
        // the same diagram), then permute the crossing list
        let mut tuples: Vec<[u32; 4]> = d
            .crossings()
            .iter()
            .map(|t| [t[2] + 7, t[3] + 7, t[0] + 7, t[1] + 7])
            .collect();
        tuples.reverse();
        let relabeled = PlanarDiagram::from_crossings(tuples).unwrap();
        assert_eq!(
            kauffman_bracket(&d).unwrap(),
            kauffman_bracket(&relabeled).unwrap()
        );
        assert_eq!(
            identification_key(&d).unwrap(),
            identification_key(&relabeled).unwrap()
        );
    }

    #[test]
    fn mirror_bracket_is_variable_inverse() {
        for v in [&[2u32][..], &[4], &[2, 1, 2], &[2, 3, 2]] {
            let d = diagram(v);
            let b = kauffman_bracket(&d).unwrap();
            let bm = kauffman_bracket(&d.mirror()).unwrap();
            assert_eq!(bm, b.invert_variable());
        }
    }

    #[test]
    fn key_examples() {
        // both forms expand members of the (14,5) class
        assert_eq!(
            identification_key(&diagram(&[2, 1, 4])).unwrap(),
            identification_key(&diagram(&[4, 1, 2])).unwrap()
        );
        // mirror invariance by construction
        let d = diagram(&[2, 3, 2]);
        assert_eq!(
            identification_key(&d).unwrap(),
            identification_key(&d.mirror()).unwrap()
        );
        // distinct classes separate
        assert_ne!(
            identification_key(&diagram(&[2, 3, 2])).unwrap(),
            identification_key(&diagram(&[3, 1, 1, 2])).unwrap()
        );
    }

    #[test]
    fn positive_kink_multiplies_bracket() {
        // splice a positive curl into arc 1 of the Hopf template
        // [X(1,3,2,4),X(4,2,3,1)]: the arc becomes 5 -> kink -> 6, with the
        // curl itself as arc 7 entering over (positive crossing X(5,6,7,7))
        let base = diagram(&[2]);
        let with_kink =
            PlanarDiagram::from_crossings(vec![[6, 3, 2, 4], [4, 2, 3, 5], [5, 6, 7, 7]]).unwrap();
        assert_eq!(with_kink.crossing_sign(2), 1);
        let expected = &kauffman_bracket(&base).unwrap() * &Laurent::monomial(3, -1);
        assert_eq!(kauffman_bracket(&with_kink).unwrap(), expected);
        // and the writhe normalization cancels it in the key polynomial
        let g_base = gauss_code(&base);
        let g_kink = gauss_code(&with_kink);
        assert_eq!(writhe(&g_kink), writhe(&g_base) + 1);
    }
}

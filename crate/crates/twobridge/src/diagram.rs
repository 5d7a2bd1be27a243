//! Planar diagrams of 2-bridge links: the standard 4-plat template, PD codes
//! and Gauss codes.
//!
//! `build_diagram` realizes a Conway form as the standard alternating
//! diagram: a rational tangle grown twist region by twist region and closed
//! off by the two bridges. The tangle is assembled from the innermost entry
//! `an` outward, adding `ai` twists on the right side of the tangle for odd
//! `i` and on the bottom for even `i`; the numerator closure then joins the
//! two top corners and the two bottom corners. This is exactly the template
//! whose fraction is `a1 + 1/(a2 + ... + 1/an)`.
//!
//! PD convention: each crossing lists its four incident arcs counterclockwise
//! starting from the incoming under-arc, serialized as `X(i,j,k,l)`.

use crate::rational::ConwayForm;
use crate::Error;
use std::collections::BTreeMap;
use std::fmt;

/// A link diagram as a list of PD crossings plus derived traversal data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    arc_count: u32,
    free_loops: u32,
    /// Per crossing: the over-strand enters at tuple position 3 (positive
    /// crossing) rather than position 1 (negative crossing).
    over_in_slot3: Vec<bool>,
    /// Arc ids per component in flow order, each starting at the component's
    /// smallest arc id; components ordered by that smallest id.
    components: Vec<Vec<u32>>,
    /// Per arc: the (crossing, tuple position) it flows into.
    arc_head: BTreeMap<u32, (usize, usize)>,
}

impl PlanarDiagram {
    /// Validates PD tuples and derives orientations, components and the
    /// planarity certificate.
    ///
    /// Requirements: at least one crossing, every arc id appearing exactly
    /// twice, a globally consistent orientation (position 0 = incoming
    /// under, position 2 = outgoing under), a connected underlying graph,
    /// and Euler characteristic 2 for the face structure induced by the
    /// counterclockwise tuples.
    pub fn from_crossings(crossings: Vec<[u32; 4]>) -> Result<Self, Error> {
        if crossings.is_empty() {
            return Err(Error::MalformedDiagram("no crossings".into()));
        }
        let nc = crossings.len();

        let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, tuple) in crossings.iter().enumerate() {
            for (s, &arc) in tuple.iter().enumerate() {
                occurrences.entry(arc).or_default().push((c, s));
            }
        }
        for (&arc, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::MalformedDiagram(format!(
                    "arc {arc} appears {} times (expected 2)",
                    occ.len()
                )));
            }
        }
        if occurrences.len() != 2 * nc {
            return Err(Error::MalformedDiagram(format!(
                "{} arcs for {} crossings (expected {})",
                occurrences.len(),
                nc,
                2 * nc
            )));
        }

        let other = |arc: u32, at: (usize, usize)| -> (usize, usize) {
            let occ = &occurrences[&arc];
            if occ[0] == at {
                occ[1]
            } else {
                occ[0]
            }
        };

        // Orientation: dir[c][s] = Some(true) when the arc at that position
        // flows into the crossing. Under positions are fixed by convention;
        // over positions propagate through arcs and the one-in-one-out rule.
        let mut dir: Vec<[Option<bool>; 4]> = vec![[None; 4]; nc];
        let mut queue: Vec<(usize, usize)> = Vec::new();
        let set = |dir: &mut Vec<[Option<bool>; 4]>,
                   queue: &mut Vec<(usize, usize)>,
                   c: usize,
                   s: usize,
                   value: bool|
         -> Result<(), Error> {
            match dir[c][s] {
                Some(v) if v == value => Ok(()),
                Some(_) => Err(Error::MalformedDiagram(format!(
                    "inconsistent orientation at crossing {c}"
                ))),
                None => {
                    dir[c][s] = Some(value);
                    queue.push((c, s));
                    Ok(())
                }
            }
        };
        for c in 0..nc {
            set(&mut dir, &mut queue, c, 0, true)?;
            set(&mut dir, &mut queue, c, 2, false)?;
        }
        loop {
            while let Some((c, s)) = queue.pop() {
                let value = dir[c][s].unwrap();
                let (c2, s2) = other(crossings[c][s], (c, s));
                set(&mut dir, &mut queue, c2, s2, !value)?;
                if s == 1 || s == 3 {
                    set(&mut dir, &mut queue, c, 4 - s, !value)?;
                }
            }
            // components lying entirely on over-strands are direction-free;
            // fix them deterministically
            match (0..nc).find(|&c| dir[c][1].is_none()) {
                Some(c) => set(&mut dir, &mut queue, c, 1, true)?,
                None => break,
            }
        }

        let over_in_slot3: Vec<bool> = (0..nc).map(|c| dir[c][3] == Some(true)).collect();

        let mut arc_head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (&arc, occ) in &occurrences {
            let heads: Vec<_> = occ
                .iter()
                .filter(|&&(c, s)| dir[c][s] == Some(true))
                .collect();
            if heads.len() != 1 {
                return Err(Error::MalformedDiagram(format!(
                    "arc {arc} does not have exactly one head"
                )));
            }
            arc_head.insert(arc, *heads[0]);
        }

        // components by successor walk
        let mut components = Vec::new();
        let mut visited: BTreeMap<u32, bool> = occurrences.keys().map(|&a| (a, false)).collect();
        let arcs: Vec<u32> = occurrences.keys().copied().collect();
        for &start in &arcs {
            if visited[&start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut arc = start;
            loop {
                comp.push(arc);
                *visited.get_mut(&arc).unwrap() = true;
                let (c, s) = arc_head[&arc];
                arc = crossings[c][(s + 2) % 4];
                if arc == start {
                    break;
                }
            }
            components.push(comp);
        }

        // connectivity of the 4-valent graph
        let mut uf = UnionFind::new(nc);
        for occ in occurrences.values() {
            uf.union(occ[0].0, occ[1].0);
        }
        if (0..nc).any(|c| uf.find(c) != uf.find(0)) {
            return Err(Error::MalformedDiagram("diagram is disconnected".into()));
        }

        // planarity: faces of the rotation system must satisfy V - E + F = 2
        let mut face_seen = vec![false; 4 * nc];
        let mut faces = 0usize;
        for start in 0..4 * nc {
            if face_seen[start] {
                continue;
            }
            faces += 1;
            let mut dart = start;
            while !face_seen[dart] {
                face_seen[dart] = true;
                let (c, s) = (dart / 4, dart % 4);
                let (c2, s2) = other(crossings[c][s], (c, s));
                dart = 4 * c2 + (s2 + 1) % 4;
            }
        }
        if nc + faces != 2 * nc + 2 {
            return Err(Error::MalformedDiagram(format!(
                "not a planar rotation system (V={nc}, E={}, F={faces})",
                2 * nc
            )));
        }

        Ok(PlanarDiagram {
            arc_count: 2 * nc as u32,
            crossings,
            free_loops: 0,
            over_in_slot3,
            components,
            arc_head,
        })
    }

    /// The crossingless unknot diagram (one free loop).
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            arc_count: 0,
            free_loops: 1,
            over_in_slot3: Vec::new(),
            components: Vec::new(),
            arc_head: BTreeMap::new(),
        }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    /// Closed curves not passing through any crossing.
    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// +1 when the over-strand enters counterclockwise-after the incoming
    /// under-strand's opposite (tuple position 3), -1 otherwise.
    pub fn crossing_sign(&self, c: usize) -> i8 {
        if self.over_in_slot3[c] {
            1
        } else {
            -1
        }
    }

    /// The mirror image: every crossing switched. Tuples are rotated so the
    /// old over-strand becomes the incoming under-strand.
    pub fn mirror(&self) -> Self {
        let tuples = self
            .crossings
            .iter()
            .zip(&self.over_in_slot3)
            .map(|(t, &in3)| {
                if in3 {
                    [t[3], t[0], t[1], t[2]]
                } else {
                    [t[1], t[2], t[3], t[0]]
                }
            })
            .collect();
        let mut mirrored =
            PlanarDiagram::from_crossings(tuples).expect("mirror of a valid diagram is valid");
        mirrored.free_loops = self.free_loops;
        mirrored
    }

    /// `[X(1,4,2,5),X(...),...]` with arcs exactly as stored.
    pub fn to_pd_string(&self) -> String {
        let body: Vec<String> = self
            .crossings
            .iter()
            .map(|t| format!("X({},{},{},{})", t[0], t[1], t[2], t[3]))
            .collect();
        format!("[{}]", body.join(","))
    }

    /// Parses the `to_pd_string` form (whitespace tolerated).
    pub fn parse_pd(text: &str) -> Result<Self, Error> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedDiagram("PD code must be bracketed".into()))?;
        let mut tuples = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let rest2 = rest
                .strip_prefix("X(")
                .ok_or_else(|| Error::MalformedDiagram(format!("expected X( at {rest:?}")))?;
            let close = rest2
                .find(')')
                .ok_or_else(|| Error::MalformedDiagram("unterminated crossing".into()))?;
            let nums: Vec<u32> = rest2[..close]
                .split(',')
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::MalformedDiagram(format!("bad arc id {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if nums.len() != 4 {
                return Err(Error::MalformedDiagram(format!(
                    "crossing with {} arcs",
                    nums.len()
                )));
            }
            tuples.push([nums[0], nums[1], nums[2], nums[3]]);
            rest = rest2[close + 1..]
                .strip_prefix(',')
                .unwrap_or(&rest2[close + 1..]);
        }
        PlanarDiagram::from_crossings(tuples)
    }
}

/// One pass of a strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussVisit {
    /// 1-based crossing id.
    pub crossing: u32,
    pub over: bool,
    /// Geometric sign of the crossing.
    pub sign: i8,
}

/// Per-component sequences of crossing visits.
///
/// Serializes as over-positive signed crossing ids, components separated by
/// `/`: the Hopf template gives `-1,2/1,-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    components: Vec<Vec<GaussVisit>>,
}

impl GaussCode {
    pub fn components(&self) -> &[Vec<GaussVisit>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (j, v) in comp.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                let signed = if v.over {
                    v.crossing as i64
                } else {
                    -(v.crossing as i64)
                };
                write!(f, "{signed}")?;
            }
        }
        Ok(())
    }
}

/// Builds the standard alternating 4-plat diagram of a Conway form.
///
/// The crossing count equals the entry sum, and the component count obeys
/// the parity law: two components exactly when the numerator of the
/// continued fraction is even.
///
/// ```
/// use twobridge::rational::ConwayForm;
/// use twobridge::diagram::{build_diagram, component_count};
///
/// let d = build_diagram(&ConwayForm::new(vec![2, 1, 2]).unwrap());
/// assert_eq!(d.crossing_count(), 5);
/// assert_eq!(component_count(&d), 2);
/// ```
pub fn build_diagram(form: &ConwayForm) -> PlanarDiagram {
    // Tangle ends are numbered 4*crossing + slot with slots counterclockwise
    // 0=NW, 1=SW, 2=SE, 3=NE. The over-strand is always the SW-NE diagonal,
    // which makes the template alternating.
    const NW: usize = 0;
    const NE: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;

    #[derive(Clone, Copy)]
    enum CornerState {
        Joined(usize),
        Port(usize),
    }
    use CornerState::*;

    fn consume(
        corners: &mut [CornerState; 4],
        conns: &mut Vec<(usize, usize)>,
        corner: usize,
        end: usize,
    ) {
        match corners[corner] {
            Port(p) => conns.push((p, end)),
            Joined(o) => corners[o] = Port(end),
        }
    }

    let entries = form.entries();
    let n = entries.len();
    let mut conns: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let mut corners: [CornerState; 4] = if n % 2 == 1 {
        // zero tangle: NW-NE and SW-SE strands
        [Joined(NE), Joined(NW), Joined(SE), Joined(SW)]
    } else {
        // infinity tangle: NW-SW and NE-SE strands
        [Joined(SW), Joined(SE), Joined(NW), Joined(NE)]
    };

    for i in (1..=n).rev() {
        for _ in 0..entries[i - 1] {
            let e = |slot: usize| 4 * next + slot;
            if i % 2 == 1 {
                // twist on the right: west side takes old NE (upper) and SE
                consume(&mut corners, &mut conns, NE, e(0));
                consume(&mut corners, &mut conns, SE, e(1));
                corners[NE] = Port(e(3));
                corners[SE] = Port(e(2));
            } else {
                // twist at the bottom: north side takes old SW and SE
                consume(&mut corners, &mut conns, SW, e(0));
                consume(&mut corners, &mut conns, SE, e(3));
                corners[SW] = Port(e(1));
                corners[SE] = Port(e(2));
            }
            next += 1;
        }
    }

    // numerator closure: the two bridges
    let bridge = |a: CornerState, b: CornerState| match (a, b) {
        (Port(x), Port(y)) => (x, y),
        _ => unreachable!("nonempty form always produces ports"),
    };
    conns.push(bridge(corners[NW], corners[NE]));
    conns.push(bridge(corners[SW], corners[SE]));

    let nc = next;
    let mut end_conn = vec![usize::MAX; 4 * nc];
    for (i, &(a, b)) in conns.iter().enumerate() {
        end_conn[a] = i;
        end_conn[b] = i;
    }
    let other_end = |conn: usize, end: usize| {
        let (a, b) = conns[conn];
        if a == end {
            b
        } else {
            a
        }
    };

    // Arc numbering: traverse the component of the top bridge first,
    // entering the tangle at the NW corner, then the bottom bridge.
    let top = conns.len() - 2;
    let bottom = conns.len() - 1;
    let mut arc_no = vec![0u32; conns.len()];
    let mut under_in = vec![usize::MAX; nc];
    let mut next_arc = 1u32;
    for (start_conn, start_end) in [(top, conns[top].0), (bottom, conns[bottom].0)] {
        if arc_no[start_conn] != 0 {
            continue;
        }
        let (mut conn, mut enter) = (start_conn, start_end);
        loop {
            arc_no[conn] = next_arc;
            next_arc += 1;
            let (c, s) = (enter / 4, enter % 4);
            if s % 2 == 0 {
                under_in[c] = s; // the NW-SE diagonal is the under-strand
            }
            let exit = 4 * c + (s + 2) % 4;
            conn = end_conn[exit];
            enter = other_end(conn, exit);
            if conn == start_conn && enter == start_end {
                break;
            }
        }
    }
    debug_assert!(arc_no.iter().all(|&a| a != 0));
    debug_assert!(under_in.iter().all(|&s| s != usize::MAX));

    let tuples: Vec<[u32; 4]> = (0..nc)
        .map(|c| {
            let u = under_in[c];
            std::array::from_fn(|k| arc_no[end_conn[4 * c + (u + k) % 4]])
        })
        .collect();

    PlanarDiagram::from_crossings(tuples).expect("template diagram is always well-formed")
}

/// Traverses each component, recording over/under and the crossing sign.
pub fn gauss_code(d: &PlanarDiagram) -> GaussCode {
    let components = d
        .components
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|arc| {
                    let (c, s) = d.arc_head[arc];
                    GaussVisit {
                        crossing: (c + 1) as u32,
                        over: s % 2 == 1,
                        sign: d.crossing_sign(c),
                    }
                })
                .collect()
        })
        .collect();
    GaussCode { components }
}

/// Number of closed strands, free loops included.
pub fn component_count(d: &PlanarDiagram) -> usize {
    d.components.len() + d.free_loops as usize
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

//! The labeled Lagrangian diagram of a special front.
//!
//! The special front of K(p,q,h) projects to a two-sphere as a descending
//! spiral of `h+v` horizontal levels joined by short connectors, crossed
//! once per level-change by the single ascending curve near azimuth 0. For
//! cover order `k = 1` this pins the whole combinatorial structure:
//!
//! * crossings `1..=s` (top-down, `s = h+v-1`), one per descending
//!   connector, with chord pair `a_j` (preferred, "+" on north/south
//!   quadrants) and `b_j`;
//! * `s+2` complementary regions: two one-cornered polar caps and the
//!   "between" regions `R_1..R_s`, where `R_i` picks up the east and west
//!   quadrants of crossing `i`, the south quadrant of crossing `i-1`, and
//!   the north quadrant of crossing `i+1`;
//! * all area concentrates in the single region `R_h` flanked by the long
//!   box-`h` connector, with total Lagrangian area `1/p`.
//!
//! Defects follow the rule `n(R) = -area(R) + Σ ε(i)·l(a_i)` over
//! preferred-generator corners, `ε = +1` on `a⁺` (north/south) quadrants
//! and `-1` on `a⁻` (east/west) quadrants. Capping paths wind about the
//! poles in whole spiral turns; the winding of the minimal admissible path
//! is the multiple of `p` congruent to the arc offset mod `h+v`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lens_arith::{mod_inverse, ChordKind, GridOneSpec};
use crate::rational::Frac;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    North,
    East,
    South,
    West,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pole {
    North,
    South,
}

/// One corner of a complementary region: which crossing, which quadrant,
/// and the defect sign `ε` of the preferred chord there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: usize,
    pub quadrant: Quadrant,
    pub sign: i8,
}

impl Corner {
    fn new(crossing: usize, quadrant: Quadrant) -> Self {
        let sign = match quadrant {
            Quadrant::North | Quadrant::South => 1,
            Quadrant::East | Quadrant::West => -1,
        };
        Corner {
            crossing,
            quadrant,
            sign,
        }
    }
}

/// A generator of the algebra: one Reeb chord over a crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub crossing: usize,
    pub kind: ChordKind,
    pub length: Frac,
    /// Grading reduced into `[0, modulus)` when the modulus is nonzero;
    /// `None` in crossings-only mode (k > 1).
    pub grading: Option<Frac>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// 1-based index, counted from the top down.
    pub index: usize,
    /// Box label B(j) on the grid diagram.
    pub box_label: u32,
    /// Chord step count x_j.
    pub steps: u32,
    pub a: Generator,
    pub b: Generator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub id: usize,
    pub corners: Vec<Corner>,
    pub area: Frac,
    pub defect: Frac,
    pub contains_pole: Option<Pole>,
}

/// A capping path for an a-type generator: the chord plus a spiral arc of
/// the knot returning to the crossing, turning once through an `a⁺`
/// quadrant. `side` names the pole the bounded disc misses the opposite of
/// (`North` = the disc avoids the south pole).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappingPath {
    pub crossing: usize,
    pub side: Pole,
    /// Rotation number of the tangent vector, in `Z - 1/4`.
    pub rotation: Frac,
    /// Winding about the north pole; admissible ⇔ `winding ≡ 0 (mod p)`,
    /// and the minimal admissible path is constructed.
    pub winding: i64,
    /// Disc defect `n(D_η)`.
    pub disc_defect: Frac,
    /// True for the two paths that bound discs contributing constant terms.
    pub bounds_disc: bool,
}

impl CappingPath {
    pub fn is_admissible(&self, p: u32) -> bool {
        self.winding % p as i64 == 0
    }
}

/// The crossing boxes of the Lagrangian diagram, in top-down order: the
/// multiset `{x : x < h, k|x} ∪ {y : y ≤ v, k|y}` realized as box labels.
/// Size `h+v-1` when `k = 1`.
pub fn crossing_set(spec: &GridOneSpec) -> Vec<u32> {
    (1..=spec.crossing_count())
        .map(|j| spec.box_label(j))
        .collect()
}

/// Crossing data (boxes, step counts, lengths) without region labeling;
/// valid for any cover order.
pub fn crossings(spec: &GridOneSpec) -> Vec<Crossing> {
    (1..=spec.crossing_count())
        .map(|j| Crossing {
            index: j,
            box_label: spec.box_label(j),
            steps: spec.chord_steps(j),
            a: Generator {
                crossing: j,
                kind: ChordKind::A,
                length: spec.chord_length(j, ChordKind::A),
                grading: None,
            },
            b: Generator {
                crossing: j,
                kind: ChordKind::B,
                length: spec.chord_length(j, ChordKind::B),
                grading: None,
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDiagram {
    pub spec: GridOneSpec,
    pub crossings: Vec<Crossing>,
    pub regions: Vec<Region>,
    /// `2|h-v|`; 0 means gradings are not reduced.
    pub grading_modulus: u32,
}

impl LabeledDiagram {
    /// Builds the fully labeled diagram. Requires a primitive spec with
    /// `k = 1`; for `k > 1` only [`crossings`] and [`crossing_set`] apply.
    pub fn build(spec: &GridOneSpec) -> Result<Self> {
        spec.require_primitive()?;
        spec.require_simple_cover()?;

        let s = spec.crossing_count();
        let mut crossings = crossings(spec);
        let regions = build_regions(spec, &crossings);

        // Non-polar defects are forced integral by the area term at R_h.
        for r in &regions[1..=s] {
            assert!(
                r.defect.is_integer(),
                "non-polar region {} has defect {}",
                r.id,
                r.defect
            );
        }

        let modulus = spec.grading_modulus();
        let mut diagram = LabeledDiagram {
            spec: *spec,
            crossings: Vec::new(),
            regions,
            grading_modulus: modulus,
        };
        for c in &mut crossings {
            let g_a = grading_unreduced_inner(&diagram, spec, c.index);
            let g_b = Frac::from_int(3) - g_a;
            c.a.grading = Some(reduce(g_a, modulus));
            c.b.grading = Some(reduce(g_b, modulus));
        }
        diagram.crossings = crossings;
        Ok(diagram)
    }

    pub fn crossing(&self, j: usize) -> &Crossing {
        &self.crossings[j - 1]
    }

    /// Grading before reduction mod the grading modulus: an odd integer
    /// plus `4v/p` for a-type generators, and `3` minus that for b-type.
    pub fn grading_unreduced(&self, j: usize, kind: ChordKind) -> Frac {
        let g_a = grading_unreduced_inner(self, &self.spec, j);
        match kind {
            ChordKind::A => g_a,
            ChordKind::B => Frac::from_int(3) - g_a,
        }
    }

    /// Grading reduced into `[0, modulus)` (unreduced when modulus is 0).
    pub fn grading(&self, j: usize, kind: ChordKind) -> Frac {
        reduce(self.grading_unreduced(j, kind), self.grading_modulus)
    }

    /// Both capping paths of every a-type generator, crossing by crossing.
    pub fn capping_paths(&self) -> Vec<CappingPath> {
        let mut out = Vec::with_capacity(2 * self.crossings.len());
        for j in 1..=self.crossings.len() {
            out.push(self.capping_path(j, Pole::North));
            out.push(self.capping_path(j, Pole::South));
        }
        out
    }

    /// The minimal admissible capping path of `a_j` on the given side.
    pub fn capping_path(&self, j: usize, side: Pole) -> CappingPath {
        let spec = &self.spec;
        let span = (spec.h + spec.v) as i64;
        let p = spec.p() as i64;
        let offset = match side {
            Pole::North => j as i64,
            Pole::South => span - j as i64,
        };
        let winding = minimal_admissible_winding(p, span, offset);
        let raw = self.raw_capping_disc_defect(j, side, winding);
        // The two winding-exactly-p paths bound the constant-term discs,
        // and those discs have vanishing multiplicity-weighted defect.
        let bounds_disc = winding == p;
        if bounds_disc {
            debug_assert!(raw.is_zero(), "disc-bounding path has raw defect {raw}");
        }
        let disc_defect = raw + Frac::new(spec.v as i64, p);
        CappingPath {
            crossing: j,
            side,
            rotation: Frac::from_int(winding) - Frac::new(1, 4),
            winding,
            disc_defect,
            bounds_disc,
        }
    }

    /// Multiplicity-weighted defect of the disc swept by a capping arc of
    /// the given winding: the arc makes `winding` spiral turns, one level
    /// per turn, so each region's multiplicity counts the turns on the far
    /// side of it from the missed pole.
    fn raw_capping_disc_defect(&self, j: usize, side: Pole, winding: i64) -> Frac {
        let spec = &self.spec;
        let span = (spec.h + spec.v) as i64;
        let s = self.regions.len() - 2;
        let j = j as i64;
        let passes = |level: i64, first: i64, m: i64| -> i64 {
            // `first` consecutive levels (starting after the turn) get one
            // extra pass beyond the `m` full wraps.
            let covered = match side {
                Pole::North => level <= first,
                Pole::South => level > j,
            };
            m + if covered { 1 } else { 0 }
        };
        let (start_levels, m) = match side {
            Pole::North => (j, (winding - j) / span),
            Pole::South => (span - j, (winding - (span - j)) / span),
        };
        let pole_cap = match side {
            Pole::North => &self.regions[0],
            Pole::South => &self.regions[s + 1],
        };
        let mut total = pole_cap.defect * winding;
        for ell in 1..=s as i64 {
            let mult: i64 = match side {
                Pole::North => ((ell + 1)..=span).map(|lv| passes(lv, start_levels, m)).sum(),
                Pole::South => (1..=ell).map(|lv| passes(lv, start_levels, m)).sum(),
            };
            total += self.regions[ell as usize].defect * mult;
        }
        total
    }

    /// Defect of the disc bounded by the knot on the side missing the
    /// south pole: equal to its area, `v/p`, in the centered limit.
    pub fn knot_disc_defect(&self) -> Frac {
        Frac::new(self.spec.v as i64, self.spec.p() as i64)
    }
}

/// Recomputes a region's defect from its corner data,
/// `n(R) = -area(R) + Σ ε(i)·l(a_i)`.
pub fn region_defect(diagram: &LabeledDiagram, region: &Region) -> Frac {
    let chord_sum: Frac = region
        .corners
        .iter()
        .map(|c| diagram.crossing(c.crossing).a.length * c.sign as i64)
        .sum();
    chord_sum - region.area
}

/// The x-defect of a disc presented by its region multiplicities and corner
/// data: the weighted defect sum, minus one per non-preferred negative
/// corner, plus one if the positive corner is non-preferred.
pub fn x_defect(
    diagram: &LabeledDiagram,
    regions_with_mult: &[(usize, i64)],
    positive: (usize, ChordKind),
    negatives: &[(usize, ChordKind)],
) -> Frac {
    let mut total: Frac = regions_with_mult
        .iter()
        .map(|&(id, mult)| diagram.regions[id].defect * mult)
        .sum();
    for &(_, kind) in negatives {
        if kind == ChordKind::B {
            total -= Frac::from_int(1);
        }
    }
    if positive.1 == ChordKind::B {
        total += Frac::from_int(1);
    }
    total
}

fn build_regions(spec: &GridOneSpec, crossings: &[Crossing]) -> Vec<Region> {
    let s = crossings.len();
    let p = spec.p() as i64;
    let h = spec.h as usize;
    let length = |j: usize| crossings[j - 1].a.length;

    let mut regions = Vec::with_capacity(s + 2);
    regions.push(Region {
        id: 0,
        corners: vec![Corner::new(1, Quadrant::North)],
        area: Frac::ZERO,
        defect: length(1),
        contains_pole: Some(Pole::North),
    });
    for i in 1..=s {
        let mut corners = Vec::with_capacity(4);
        if i >= 2 {
            corners.push(Corner::new(i - 1, Quadrant::South));
        }
        corners.push(Corner::new(i, Quadrant::East));
        corners.push(Corner::new(i, Quadrant::West));
        if i <= s - 1 {
            corners.push(Corner::new(i + 1, Quadrant::North));
        }
        let area = if i == h { Frac::new(1, p) } else { Frac::ZERO };
        let chord_sum: Frac = corners
            .iter()
            .map(|c| length(c.crossing) * c.sign as i64)
            .sum();
        regions.push(Region {
            id: i,
            corners,
            area,
            defect: chord_sum - area,
            contains_pole: None,
        });
    }
    regions.push(Region {
        id: s + 1,
        corners: vec![Corner::new(s, Quadrant::South)],
        area: Frac::ZERO,
        defect: length(s),
        contains_pole: Some(Pole::South),
    });
    regions
}

fn grading_unreduced_inner(diagram: &LabeledDiagram, spec: &GridOneSpec, j: usize) -> Frac {
    let p = spec.p() as i64;
    let eta = diagram.capping_path(j, Pole::North);
    // |a_j| = 2⌈r(η)⌉ - 2((p-1)/p)·w_N(η) - 1 + 4·n(D_η)
    Frac::from_int(2 * eta.rotation.ceil())
        - Frac::new(2 * (p - 1) * eta.winding, p)
        - Frac::from_int(1)
        + eta.disc_defect * 4
}

fn reduce(g: Frac, modulus: u32) -> Frac {
    if modulus == 0 {
        g
    } else {
        g.rem_mod(modulus as i64)
    }
}

/// The winding (in spiral turns) of the minimal admissible capping arc:
/// the unique multiple of `p` in `(0, p·span)` congruent to `offset`
/// mod `span`. Well-defined because `gcd(p, span) = 1` for primitive
/// specs with `k = 1`.
fn minimal_admissible_winding(p: i64, span: i64, offset: i64) -> i64 {
    let mu = (offset.rem_euclid(span) * mod_inverse(p, span)).rem_euclid(span);
    debug_assert!(mu >= 1 && mu < span);
    p * mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::KnotError;
    use crate::lens_arith::GridOneSpec;

    fn spec(p: u32, q: u32, s: u32) -> GridOneSpec {
        GridOneSpec::new(p, q, s).unwrap()
    }

    fn diagram(p: u32, q: u32, s: u32) -> LabeledDiagram {
        LabeledDiagram::build(&spec(p, q, s)).unwrap()
    }

    #[test]
    fn crossing_set_examples() {
        assert_eq!(crossing_set(&spec(5, 2, 3)), vec![1, 2, 3]);
        assert_eq!(crossing_set(&spec(8, 3, 5)), vec![2, 4]);
        // h, v < k leaves no crossings: K(9,4,1) has k = 3, h = 1, v = 2.
        let k941 = spec(9, 4, 1);
        assert_eq!(k941.k, 3);
        assert!(crossing_set(&k941).is_empty());
    }

    #[test]
    fn diagram_counts() {
        let d = diagram(5, 2, 3);
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.regions.len(), 5);

        let d = diagram(7, 6, 1);
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.regions.len(), 3);

        let d = diagram(7, 6, 2);
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.regions.len(), 5);
    }

    #[test]
    fn build_rejects_bad_specs() {
        assert!(matches!(
            LabeledDiagram::build(&spec(9, 8, 3)),
            Err(KnotError::NotPrimitive { .. })
        ));
        assert!(matches!(
            LabeledDiagram::build(&spec(8, 3, 5)),
            Err(KnotError::CoverNontrivial { k: 2 })
        ));
    }

    #[test]
    fn region_structure_k523() {
        let d = diagram(5, 2, 3);
        // x = (1, 2, 3): polar defects 1/5 and 3/5; betweens 0, 0, -1.
        assert_eq!(d.regions[0].defect, Frac::new(1, 5));
        assert_eq!(d.regions[4].defect, Frac::new(3, 5));
        assert_eq!(d.regions[1].defect, Frac::ZERO);
        assert_eq!(d.regions[2].defect, Frac::ZERO);
        assert_eq!(d.regions[3].defect, Frac::from_int(-1));
        // The large region sits at R_h.
        assert_eq!(d.regions[3].area, Frac::new(1, 5));
        let total_area: Frac = d.regions.iter().map(|r| r.area).sum();
        assert_eq!(total_area, Frac::new(1, 5));
    }

    #[test]
    fn region_defect_matches_stored() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (11, 4, 5), (13, 12, 2)] {
            let d = diagram(p, q, s);
            for r in &d.regions {
                assert_eq!(region_defect(&d, r), r.defect);
                match r.contains_pole {
                    Some(_) => {
                        assert_eq!(r.corners.len(), 1);
                        assert_eq!((r.defect * p as i64).denom(), 1);
                    }
                    None => {
                        assert!(r.corners.len() <= 4);
                        assert!(r.defect.is_integer());
                    }
                }
            }
            assert_eq!(d.regions.len(), d.crossings.len() + 2);
        }
    }

    #[test]
    fn defect_total_is_minus_one_over_p() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (9, 2, 4), (13, 12, 2)] {
            let d = diagram(p, q, s);
            let total: Frac = d.regions.iter().map(|r| r.defect).sum();
            assert_eq!(total, Frac::new(-1, p as i64));
        }
    }

    #[test]
    fn x_defect_quadrant_adjustments() {
        let d = diagram(5, 2, 3);
        // Word with one non-preferred negative corner and a non-preferred
        // positive corner: defect 0 + 1 - 1 = 0.
        let zero_defect = vec![(1, 1), (2, 1)]; // n(R_1) = n(R_2) = 0
        assert_eq!(
            x_defect(
                &d,
                &zero_defect,
                (1, ChordKind::B),
                &[(3, ChordKind::B), (1, ChordKind::A)]
            ),
            Frac::ZERO
        );
        // All-preferred corners: plain defect sum.
        assert_eq!(
            x_defect(&d, &[(3, 2)], (1, ChordKind::A), &[(2, ChordKind::A)]),
            Frac::from_int(-2)
        );
    }

    #[test]
    fn x_defect_of_constant_term_disc() {
        // K(5,4,1): the south capping disc has multiplicities S-cap: 5,
        // R_1: 2 and positive corner a_1; its x-defect vanishes.
        let d = diagram(5, 4, 1);
        assert_eq!(
            x_defect(&d, &[(2, 5), (1, 2)], (1, ChordKind::A), &[]),
            Frac::ZERO
        );
    }

    #[test]
    fn capping_paths_flag_the_two_constant_discs() {
        // K(7,6,2): j = 7 mod 4 = 3, so a_3 north and a_1 south.
        let d = diagram(7, 6, 2);
        let bounding: Vec<(usize, Pole)> = d
            .capping_paths()
            .iter()
            .filter(|c| c.bounds_disc)
            .map(|c| (c.crossing, c.side))
            .collect();
        assert_eq!(bounding, vec![(1, Pole::South), (3, Pole::North)]);

        // p ≡ 1 mod 4 puts the north disc on a_1 instead.
        let d = diagram(13, 12, 2);
        let bounding: Vec<(usize, Pole)> = d
            .capping_paths()
            .iter()
            .filter(|c| c.bounds_disc)
            .map(|c| (c.crossing, c.side))
            .collect();
        assert_eq!(bounding, vec![(1, Pole::North), (3, Pole::South)]);

        // h = 1: both constant discs cap the unique generator.
        let d = diagram(7, 6, 1);
        let bounding: Vec<(usize, Pole)> = d
            .capping_paths()
            .iter()
            .filter(|c| c.bounds_disc)
            .map(|c| (c.crossing, c.side))
            .collect();
        assert_eq!(bounding, vec![(1, Pole::North), (1, Pole::South)]);
    }

    #[test]
    fn capping_paths_are_admissible() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (11, 4, 5), (9, 2, 4)] {
            let d = diagram(p, q, s);
            let paths = d.capping_paths();
            assert_eq!(paths.len(), 2 * d.crossings.len());
            for c in &paths {
                assert!(c.is_admissible(p));
                assert!((c.rotation + Frac::new(1, 4)).is_integer());
            }
            assert_eq!(paths.iter().filter(|c| c.bounds_disc).count(), 2);
        }
    }

    #[test]
    fn gradings_k523() {
        let d = diagram(5, 2, 3);
        assert_eq!(d.grading_modulus, 4);
        assert_eq!(d.grading_unreduced(1, ChordKind::A), Frac::new(9, 5));
        assert_eq!(d.grading_unreduced(2, ChordKind::A), Frac::new(19, 5));
        assert_eq!(d.grading_unreduced(3, ChordKind::A), Frac::new(29, 5));
        assert_eq!(d.grading(3, ChordKind::A), Frac::new(9, 5));
    }

    #[test]
    fn grading_invariants() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (11, 4, 5), (9, 2, 4), (13, 12, 2)] {
            let d = diagram(p, q, s);
            let frac_4v = Frac::new(4 * d.spec.v as i64, p as i64).fract();
            assert!(!frac_4v.is_zero());
            let mut previous: Option<Frac> = None;
            for j in 1..=d.crossings.len() {
                let a = d.grading_unreduced(j, ChordKind::A);
                let b = d.grading_unreduced(j, ChordKind::B);
                assert_eq!(a + b, Frac::from_int(3));
                assert_eq!(a.fract(), frac_4v);
                if let Some(prev) = previous {
                    let diff = a - prev;
                    assert!(diff.is_integer() && diff.numer() % 2 == 0);
                }
                previous = Some(a);
            }
        }
    }

    #[test]
    fn knot_disc_defect_is_v_over_p() {
        assert_eq!(diagram(5, 4, 1).knot_disc_defect(), Frac::new(1, 5));
        assert_eq!(diagram(7, 6, 2).knot_disc_defect(), Frac::new(2, 7));
    }
}

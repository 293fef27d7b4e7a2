//! The lifted grid diagram and its loop calculus.
//!
//! A primitive K(p,q,h) lifts to a rotation-invariant grid number `p`
//! diagram in the three-sphere. In the centered-basepoint limit the lifted
//! front is pure index arithmetic: the knot visits `p·(h+v)` corners, one
//! period of `h` rightward then `v` downward unit steps per copy, each row
//! shifted `q` columns from the last. Reeb chords are slope-one diagonals:
//! the chord pair of crossing `j` joins a crossing corner to the box-0
//! corner `x_j` diagonal steps up-right of it.
//!
//! N- and S-loops are the simple closed curves on this front that alternate
//! `b`-chords (traversed down-left) with strand runs — forward (right/down)
//! for N-loops, backward (up/left) for S-loops — and close up in the torus
//! class of a vertical, respectively horizontal, curve. Replacing the base
//! `b`-chord by its complementary `a`-chord (traversed up-right) shifts the
//! class by the orbit class and yields the generator loops whose words are
//! the boundary-word fragments of the differential.
//!
//! The loop search is a depth-first traversal over the corner incidence
//! structure with direction constraints as edge admissibility, vertex
//! revisits forbidden, and the homotopy class enforced through exact
//! displacement accounting in the universal cover.

use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};
use crate::lens_arith::{mod_inverse, ChordKind, GridOneSpec};

/// Homotopy class and strand direction of a loop: N-loops run with the
/// knot orientation, S-loops against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoopKind {
    N,
    S,
}

/// One lift of a chord pair: `corner` is the crossing corner and
/// `a_corner` the box-0 corner `a_steps` up-right of it along the orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordPair {
    pub crossing: usize,
    pub corner: usize,
    pub a_corner: usize,
    pub a_steps: u32,
    pub b_steps: u32,
}

/// A loop on the lifted front: the base chord, the corners traversed, and
/// the boundary word read off the remaining chords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopPath {
    pub kind: LoopKind,
    /// `B` for plain N/S-loops; `A` marks a generator loop whose base
    /// chord is the preferred chord of `base_crossing`.
    pub base_generator: ChordKind,
    pub base_crossing: usize,
    pub corners: Vec<usize>,
    /// Crossing indices of the non-base chords, in traversal order; this
    /// is the boundary word (all letters b-type).
    pub word: Vec<usize>,
}

/// N- and S-side generator loops of one a-type generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorLoops {
    pub crossing: usize,
    pub n_loops: Vec<LoopPath>,
    pub s_loops: Vec<LoopPath>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedDiagram {
    pub spec: GridOneSpec,
    /// Corners per period of the lifted knot, `h + v`.
    span: u32,
    /// Total corners, `p · (h+v)`.
    n_corners: usize,
    /// Chord pair lifts, grouped by crossing then by period of the
    /// crossing corner.
    pairs: Vec<ChordPair>,
    /// Crossing corner -> index into `pairs`.
    chord_at: Vec<Option<usize>>,
}

impl LiftedDiagram {
    /// Lifts a primitive diagram. Non-primitive specs are rejected: their
    /// preimage splits into gcd(h,p) components and carries no single
    /// closed front.
    pub fn new(spec: &GridOneSpec) -> Result<Self> {
        spec.require_primitive()?;
        let span = spec.h + spec.v;
        let n_corners = spec.p() as usize * span as usize;
        let mut lifted = LiftedDiagram {
            spec: *spec,
            span,
            n_corners,
            pairs: Vec::new(),
            chord_at: vec![None; n_corners],
        };

        let p = spec.p();
        for j in 1..=spec.crossing_count() {
            let delta = spec.crossing_offset(j);
            let x = spec.chord_steps(j);
            for period in 0..p {
                let corner = (period * span + delta) as usize;
                let (row, col) = lifted.position(corner);
                let a_row = (row + x) % p;
                let a_corner = lifted.box0_corner_at_row(a_row);
                debug_assert_eq!(lifted.position(a_corner).1, (col + x) % p);
                let idx = lifted.pairs.len();
                lifted.pairs.push(ChordPair {
                    crossing: j,
                    corner,
                    a_corner,
                    a_steps: x,
                    b_steps: p / spec.k - x,
                });
                lifted.chord_at[corner] = Some(idx);
            }
        }
        debug_assert!(lifted.positions_chain());
        Ok(lifted)
    }

    /// Grid number of the lifted diagram (= p).
    pub fn grid_number(&self) -> u32 {
        self.spec.p()
    }

    pub fn corner_count(&self) -> usize {
        self.n_corners
    }

    pub fn chord_pairs(&self) -> &[ChordPair] {
        &self.pairs
    }

    fn offset(&self, corner: usize) -> u32 {
        (corner % self.span as usize) as u32
    }

    /// Copy index of a period: the lift of the fundamental domain walked
    /// by the knot shifts down `v` rows per period.
    fn copy_of_period(&self, period: u32) -> u32 {
        let p = self.spec.p() as i64;
        ((-(period as i64) * self.spec.v as i64).rem_euclid(p)) as u32
    }

    /// (row, col) of a corner on the p×p grid.
    pub fn position(&self, corner: usize) -> (u32, u32) {
        let spec = &self.spec;
        let p = spec.p();
        let period = (corner / self.span as usize) as u32;
        let delta = self.offset(corner);
        let rho = self.copy_of_period(period);
        let base_col = (rho as u64 * spec.q() as u64) % p as u64;
        if delta <= spec.h {
            (rho, ((base_col + delta as u64) % p as u64) as u32)
        } else {
            (
                (rho + p - (delta - spec.h)) % p,
                ((base_col + spec.h as u64) % p as u64) as u32,
            )
        }
    }

    /// The box-0 corner (knot offset 0) in the given row; rows and copies
    /// agree for offset-0 corners, and copies hit every row once.
    fn box0_corner_at_row(&self, row: u32) -> usize {
        let p = self.spec.p() as i64;
        let period = (-(row as i64) * mod_inverse(self.spec.v as i64, p)).rem_euclid(p);
        period as usize * self.span as usize
    }

    /// Forward unit step along the knot: rightward inside the horizontal
    /// run, downward along the vertical run.
    fn forward_disp(&self, corner: usize) -> (i64, i64) {
        if self.offset(corner) < self.spec.h {
            (0, 1)
        } else {
            (-1, 0)
        }
    }

    fn positions_chain(&self) -> bool {
        let p = self.spec.p() as i64;
        (0..self.n_corners).all(|t| {
            let (r, c) = self.position(t);
            let (dr, dc) = self.forward_disp(t);
            let (r2, c2) = self.position((t + 1) % self.n_corners);
            (r as i64 + dr).rem_euclid(p) == r2 as i64 && (c as i64 + dc).rem_euclid(p) == c2 as i64
        })
    }

    /// The fixed representative chord of a crossing: the lift whose lower
    /// endpoint (the tail of its up-right arc) lies in row 0. For b-chords
    /// the tail is the box-0 corner; for a-chords the crossing corner.
    pub fn base_pair(&self, crossing: usize, generator: ChordKind) -> &ChordPair {
        let hit = self
            .pairs
            .iter()
            .filter(|pr| pr.crossing == crossing)
            .find(|pr| match generator {
                ChordKind::B => self.position(pr.a_corner).0 == 0,
                ChordKind::A => self.position(pr.corner).0 == 0,
            });
        hit.expect("every crossing has one lift per row")
    }

    /// All N- or S-loops through the fixed representative b-chord of
    /// `base_crossing`. Requires k = 1.
    pub fn enumerate_loops(&self, kind: LoopKind, base_crossing: usize) -> Result<Vec<LoopPath>> {
        self.spec.require_simple_cover()?;
        Ok(self.search(kind, ChordKind::B, base_crossing))
    }

    /// All generator loops of `a_j`: N- and S-loops with the fixed
    /// representative a-chord of crossing `j` as base. Each one is a
    /// summand of the boundary of `a_j`. Requires k = 1.
    pub fn loops_for_generator(&self, j: usize) -> Result<GeneratorLoops> {
        self.spec.require_simple_cover()?;
        Ok(GeneratorLoops {
            crossing: j,
            n_loops: self.search(LoopKind::N, ChordKind::A, j),
            s_loops: self.search(LoopKind::S, ChordKind::A, j),
        })
    }

    fn search(&self, kind: LoopKind, base_gen: ChordKind, base_crossing: usize) -> Vec<LoopPath> {
        let p = self.spec.p() as i64;
        let base = *self.base_pair(base_crossing, base_gen);
        // Displacement of the base chord and homotopy-class target, in
        // (Δrow, Δcol) over the universal cover. Replacing b by a shifts
        // the class by the full orbit class (1,1).
        let (d0, target) = match (kind, base_gen) {
            (LoopKind::N, ChordKind::B) => (-(base.b_steps as i64), (-p, 0)),
            (LoopKind::S, ChordKind::B) => (-(base.b_steps as i64), (0, -p)),
            (LoopKind::N, ChordKind::A) => (base.a_steps as i64, (0, p)),
            (LoopKind::S, ChordKind::A) => (base.a_steps as i64, (p, 0)),
        };
        let mut dfs = LoopDfs {
            lifted: self,
            forward: kind == LoopKind::N,
            // The monotone coordinate never increases after the base
            // chord, so falling below the target is terminal.
            prune_row: kind == LoopKind::N,
            start: base.corner,
            target,
            visited: vec![false; self.n_corners],
            corners: vec![base.corner, base.a_corner],
            word: Vec::new(),
            found: Vec::new(),
            drow: d0,
            dcol: d0,
            kind,
            base_gen,
            base_crossing,
        };
        dfs.visited[base.corner] = true;
        dfs.visited[base.a_corner] = true;
        dfs.step_from(base.a_corner);
        dfs.found
    }
}

struct LoopDfs<'a> {
    lifted: &'a LiftedDiagram,
    forward: bool,
    prune_row: bool,
    start: usize,
    target: (i64, i64),
    visited: Vec<bool>,
    corners: Vec<usize>,
    word: Vec<usize>,
    found: Vec<LoopPath>,
    drow: i64,
    dcol: i64,
    kind: LoopKind,
    base_gen: ChordKind,
    base_crossing: usize,
}

impl LoopDfs<'_> {
    fn pruned(&self) -> bool {
        let floor = match self.base_gen {
            ChordKind::B => -(self.lifted.spec.p() as i64),
            ChordKind::A => 0,
        };
        let mono = if self.prune_row { self.drow } else { self.dcol };
        mono < floor
    }

    /// Explores continuations from `at`: one strand step, or a chord exit
    /// when standing on a crossing corner.
    fn step_from(&mut self, at: usize) {
        let n = self.lifted.n_corners;
        let (next, dr, dc) = if self.forward {
            let (dr, dc) = self.lifted.forward_disp(at);
            ((at + 1) % n, dr, dc)
        } else {
            let prev = (at + n - 1) % n;
            let (dr, dc) = self.lifted.forward_disp(prev);
            (prev, -dr, -dc)
        };
        self.drow += dr;
        self.dcol += dc;
        if next == self.start {
            if (self.drow, self.dcol) == self.target {
                self.record();
            }
        } else if !self.visited[next] && !self.pruned() {
            self.visited[next] = true;
            self.corners.push(next);
            self.step_from(next);
            self.corners.pop();
            self.visited[next] = false;
        }
        self.drow -= dr;
        self.dcol -= dc;

        // Chord exit: b-chords leave a crossing corner down-left to the
        // box-0 corner of their pair.
        if let Some(idx) = self.lifted.chord_at[at] {
            let pair = self.lifted.pairs[idx];
            let steps = pair.b_steps as i64;
            let next = pair.a_corner;
            if !self.visited[next] {
                self.drow -= steps;
                self.dcol -= steps;
                if !self.pruned() {
                    self.visited[next] = true;
                    self.corners.push(next);
                    self.word.push(pair.crossing);
                    self.step_from(next);
                    self.word.pop();
                    self.corners.pop();
                    self.visited[next] = false;
                }
                self.drow += steps;
                self.dcol += steps;
            }
        }
    }

    fn record(&mut self) {
        self.found.push(LoopPath {
            kind: self.kind,
            base_generator: self.base_gen,
            base_crossing: self.base_crossing,
            corners: self.corners.clone(),
            word: self.word.clone(),
        });
    }
}

/// Maximal switch-chord parameter for the q = p-1, h = 2 family: S-loops
/// see `2k+1` switching chords with `2k+1` the largest odd number at most
/// `(p-1)/2`; N-loops see `2k` with `2k` the largest even one.
pub fn max_switch_chords(p: u32, kind: LoopKind) -> u32 {
    assert!(p >= 3 && p % 2 == 1, "defined for odd p ≥ 3");
    let half = (p - 1) / 2;
    match kind {
        LoopKind::S => (half - 1) / 2,
        LoopKind::N => half / 2,
    }
}

/// A closed-form loop count together with its parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopCount {
    pub k: u32,
    pub count: u64,
    pub parity: u8,
}

impl LoopCount {
    fn new(k: u32, count: u64) -> Self {
        LoopCount {
            k,
            count,
            parity: (count % 2) as u8,
        }
    }
}

/// `S(k) = k + 1 + Σ_{i=1..k} i·S(k-i)`, `S(0) = 1`: the number of
/// S-loops through the fixed chord when `2k+1` switching chords are
/// available, i.e. odd-length alternating subsequences starting with A.
pub fn count_s(k: u32) -> LoopCount {
    let mut memo = vec![1u64];
    for m in 1..=k as usize {
        let sum: u64 = (1..=m).map(|i| i as u64 * memo[m - i]).sum();
        memo.push(m as u64 + 1 + sum);
    }
    LoopCount::new(k, memo[k as usize])
}

/// `N(k) = 1 + Σ_{i=1..k} i·N(k-i)`, `N(0) = 1` (and `N(1) = 2`): N-loops
/// through the fixed chord with `2k` switching chords, i.e. even-length
/// alternating subsequences starting with A, the empty one included.
pub fn count_n(k: u32) -> LoopCount {
    let mut memo = vec![1u64];
    for m in 1..=k as usize {
        let sum: u64 = (1..=m).map(|i| i as u64 * memo[m - i]).sum();
        memo.push(1 + sum);
    }
    LoopCount::new(k, memo[k as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubseqParity {
    Odd,
    Even,
}

/// Brute-force oracle for the loop recursions: enumerates all `2^(2k+1)`
/// subsequences of the alternating word `ABAB…A` and counts those that
/// alternate, start with A, and have the requested length parity (odd ones
/// must end with A; the empty subsequence counts as even).
pub fn count_subseq_bruteforce(k: u32, parity: SubseqParity) -> Result<u64> {
    const LIMIT: u32 = 15;
    if k > LIMIT {
        return Err(KnotError::OracleBudget { k, limit: LIMIT });
    }
    let len = 2 * k + 1;
    let mut total = 0u64;
    'mask: for mask in 0u64..(1u64 << len) {
        let picked = mask.count_ones();
        match parity {
            SubseqParity::Odd if picked % 2 == 0 => continue,
            SubseqParity::Even if picked % 2 == 1 => continue,
            _ => {}
        }
        if mask == 0 {
            // Empty subsequence: counted on the even side only.
            total += 1;
            continue;
        }
        // Letter at position i (0-based) is A exactly when i is even.
        let mut rest = mask;
        let first = rest.trailing_zeros();
        if first % 2 != 0 {
            continue; // starts with B
        }
        let mut prev = first;
        rest &= rest - 1;
        let mut last = first;
        while rest != 0 {
            let i = rest.trailing_zeros();
            if i % 2 == prev % 2 {
                continue 'mask; // two equal letters in a row
            }
            prev = i;
            last = i;
            rest &= rest - 1;
        }
        if parity == SubseqParity::Odd && last % 2 != 0 {
            continue; // odd-length paths must end with A
        }
        total += 1;
    }
    Ok(total)
}

/// Loop counts by word length: entry `m` is the number of loops whose word
/// has `m` switching chords. S-side entries sit at odd `m ≤ 2k+1`, N-side
/// at even `m ≤ 2k` with the empty word included at `m = 0`.
pub fn subseq_counts_by_length(k: u32, kind: LoopKind) -> Vec<u64> {
    let len = match kind {
        LoopKind::S => 2 * k as usize + 1,
        LoopKind::N => 2 * k as usize,
    };
    let mut end_a = vec![0u64; len + 1];
    let mut end_b = vec![0u64; len + 1];
    for pos in 1..=len {
        if pos % 2 == 1 {
            // letter A
            for m in (2..=pos).rev() {
                end_a[m] += end_b[m - 1];
            }
            end_a[1] += 1;
        } else {
            for m in (2..=pos).rev() {
                end_b[m] += end_a[m - 1];
            }
        }
    }
    let mut counts = vec![0u64; len + 1];
    match kind {
        LoopKind::S => {
            for m in (1..=len).step_by(2) {
                counts[m] = end_a[m];
            }
        }
        LoopKind::N => {
            counts[0] = 1;
            for m in (2..=len).step_by(2) {
                counts[m] = end_b[m];
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lifted(p: u32, q: u32, s: u32) -> LiftedDiagram {
        LiftedDiagram::new(&GridOneSpec::new(p, q, s).unwrap()).unwrap()
    }

    #[test]
    fn lift_examples() {
        let l = lifted(5, 2, 3);
        assert_eq!(l.grid_number(), 5);
        assert_eq!(l.corner_count(), 20);

        let err = LiftedDiagram::new(&GridOneSpec::new(9, 8, 3).unwrap());
        assert!(matches!(err, Err(KnotError::NotPrimitive { g: 3, .. })));

        // k = 2 lifts fine; only loop enumeration needs k = 1.
        let l = lifted(8, 3, 5);
        assert_eq!(l.grid_number(), 8);
        assert!(l.enumerate_loops(LoopKind::N, 1).is_err());
    }

    #[test]
    fn chord_lifts_preserve_length() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (11, 4, 5), (8, 3, 5)] {
            let l = lifted(p, q, s);
            let spec = l.spec;
            assert_eq!(
                l.pairs.len(),
                spec.crossing_count() * spec.p() as usize
            );
            for pr in l.chord_pairs() {
                assert_eq!(pr.a_steps, spec.chord_steps(pr.crossing));
                assert_eq!(pr.a_steps + pr.b_steps, spec.p() / spec.k);
            }
        }
    }

    #[test]
    fn k762_loop_counts_match_figures() {
        let l = lifted(7, 6, 2);
        // b_N is the chord at crossing 3 (7 mod 4 = 3).
        let s_loops = l.enumerate_loops(LoopKind::S, 3).unwrap();
        let n_loops = l.enumerate_loops(LoopKind::N, 3).unwrap();
        assert_eq!(s_loops.len(), 3);
        assert_eq!(n_loops.len(), 2);
        // Words are powers of b_2 with odd (S) / even (N) exponent.
        for lp in &s_loops {
            assert!(lp.word.iter().all(|&c| c == 2));
            assert_eq!(lp.word.len() % 2, 1);
        }
        for lp in &n_loops {
            assert!(lp.word.iter().all(|&c| c == 2));
            assert_eq!(lp.word.len() % 2, 0);
        }
        // One N-loop traverses no switching chords: the capping-path loop.
        assert_eq!(n_loops.iter().filter(|lp| lp.word.is_empty()).count(), 1);
    }

    #[test]
    fn h1_family_has_unique_loops() {
        for p in [3u32, 5, 7, 11] {
            let l = lifted(p, p - 1, 1);
            assert_eq!(l.enumerate_loops(LoopKind::N, 1).unwrap().len(), 1);
            assert_eq!(l.enumerate_loops(LoopKind::S, 1).unwrap().len(), 1);
        }
        let l = lifted(7, 6, 1);
        let n = l.enumerate_loops(LoopKind::N, 1).unwrap();
        assert!(n[0].word.is_empty());
    }

    #[test]
    fn generator_loops_match_plain_loops() {
        let l = lifted(7, 6, 2);
        let gl = l.loops_for_generator(3).unwrap();
        assert_eq!(gl.s_loops.len(), 3);
        assert_eq!(gl.n_loops.len(), 2);
        // The empty-word N-loop is the constant term of the boundary.
        assert_eq!(gl.n_loops.iter().filter(|lp| lp.word.is_empty()).count(), 1);
    }

    #[test]
    fn max_switch_chords_examples() {
        assert_eq!(max_switch_chords(11, LoopKind::S), 2);
        assert_eq!(max_switch_chords(7, LoopKind::N), 1);
        assert_eq!(max_switch_chords(3, LoopKind::S), 0);
        assert_eq!(max_switch_chords(7, LoopKind::S), 1);
        assert_eq!(max_switch_chords(15, LoopKind::S), 3);
        assert_eq!(max_switch_chords(15, LoopKind::N), 3);
    }

    #[test]
    fn recursion_values() {
        let s: Vec<u64> = (0..4).map(|k| count_s(k).count).collect();
        assert_eq!(s, vec![1, 3, 8, 21]);
        let n: Vec<u64> = (0..4).map(|k| count_n(k).count).collect();
        assert_eq!(n, vec![1, 2, 5, 13]);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_subseq_bruteforce(1, SubseqParity::Odd).unwrap(), 3);
        assert_eq!(count_subseq_bruteforce(2, SubseqParity::Odd).unwrap(), 8);
        assert_eq!(count_subseq_bruteforce(0, SubseqParity::Even).unwrap(), 1);
        assert!(matches!(
            count_subseq_bruteforce(16, SubseqParity::Odd),
            Err(KnotError::OracleBudget { .. })
        ));
    }

    #[test]
    fn recursions_agree_with_bruteforce_small() {
        for k in 0..=8 {
            assert_eq!(
                count_s(k).count,
                count_subseq_bruteforce(k, SubseqParity::Odd).unwrap()
            );
            assert_eq!(
                count_n(k).count,
                count_subseq_bruteforce(k, SubseqParity::Even).unwrap()
            );
        }
    }

    #[test]
    fn length_distributions_sum_to_totals() {
        for k in 0..=10u32 {
            let s: u64 = subseq_counts_by_length(k, LoopKind::S).iter().sum();
            assert_eq!(s, count_s(k).count);
            let n: u64 = subseq_counts_by_length(k, LoopKind::N).iter().sum();
            assert_eq!(n, count_n(k).count);
        }
        assert_eq!(subseq_counts_by_length(1, LoopKind::S), vec![0, 2, 0, 1]);
        assert_eq!(subseq_counts_by_length(1, LoopKind::N), vec![1, 0, 1]);
    }

    #[test]
    fn geometric_counts_match_recursions_small() {
        for p in [3u32, 5, 7, 9, 11, 13] {
            let spec = GridOneSpec::new(p, p - 1, 2).unwrap();
            if spec.h != 2 {
                continue; // p = 3 normalizes to h = 1
            }
            let l = LiftedDiagram::new(&spec).unwrap();
            let base = (p % 4) as usize; // crossing of b_N
            let s_count = l.enumerate_loops(LoopKind::S, base).unwrap().len() as u64;
            let n_count = l.enumerate_loops(LoopKind::N, base).unwrap().len() as u64;
            assert_eq!(s_count, count_s(max_switch_chords(p, LoopKind::S)).count);
            assert_eq!(n_count, count_n(max_switch_chords(p, LoopKind::N)).count);
        }
    }
}

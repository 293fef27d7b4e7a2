//! Exact modular arithmetic for grid number one diagrams.
//!
//! A grid number one diagram on the Heegaard torus of L(p,q) is a row of `p`
//! boxes with two basepoints, `s` boxes apart. Everything the rest of the
//! crate needs — the vertical length `v`, the normalized separation `h`, the
//! cover order `k = gcd(q-1, p)`, box labels, chord step counts, and chord
//! lengths — is derived here by exact arithmetic mod `p`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};
use crate::rational::Frac;

/// The lens space L(p,q), presented as the quotient of S³ by a cyclic
/// rotation of order `p` twisting the two solid tori by `q` and `1` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensParams {
    pub p: u32,
    pub q: u32,
}

impl LensParams {
    /// Requires `0 < q < p`, `gcd(p,q) = 1`, and `q ≠ 1` (the diagram
    /// calculus implemented here is defined for q ≠ 1).
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 || q >= p {
            return Err(KnotError::InvalidLens {
                p,
                q,
                reason: "need 0 < q < p".into(),
            });
        }
        if p.gcd(&q) != 1 {
            return Err(KnotError::InvalidLens {
                p,
                q,
                reason: format!("gcd(p,q) = {} ≠ 1", p.gcd(&q)),
            });
        }
        if q == 1 {
            return Err(KnotError::InvalidLens {
                p,
                q,
                reason: "q = 1 unsupported".into(),
            });
        }
        Ok(LensParams { p, q })
    }

    /// Order of the intermediate cyclic cover, `k = gcd(q-1, p)`.
    pub fn cover_order(&self) -> u32 {
        cover_order(self.p, self.q)
    }
}

/// The unique `v` in `(0,p)` with `s + v·q ≡ 0 (mod p)`: the box count of
/// the vertical segment closing up a horizontal separation of `s` boxes.
///
/// Rejects `s ≡ 0 (mod p)`, where both basepoints would share a box.
pub fn vertical_length(p: u32, q: u32, s: u32) -> Result<u32> {
    if s % p == 0 {
        return Err(KnotError::DegenerateSeparation { p });
    }
    let (p, q, s) = (p as i64, q as i64, (s % p) as i64);
    // q is invertible mod p, so v = -s * q^{-1} mod p.
    let v = (-s * mod_inverse(q, p)).rem_euclid(p);
    debug_assert!(v > 0 && v < p && (s + v * q) % p == 0);
    Ok(v as u32)
}

/// Normalizes the basepoint separation: the diagrams with separations `s`
/// and `p-s` give isotopic knots, and the representative with
/// `h + v(h) ≤ p` is used throughout. Ties (`s + v(s) = p`) resolve to
/// `min(s, p-s)`.
pub fn normalize_h(p: u32, q: u32, s: u32) -> Result<u32> {
    let v = vertical_length(p, q, s)?;
    let s = s % p;
    match (s + v).cmp(&p) {
        std::cmp::Ordering::Less => Ok(s),
        std::cmp::Ordering::Greater => Ok(p - s),
        std::cmp::Ordering::Equal => Ok(s.min(p - s)),
    }
}

/// `k = gcd(q-1, p)`, the order of the cyclic cover sitting between S³ and
/// L(p,q) in the Lagrangian-projection picture.
pub fn cover_order(p: u32, q: u32) -> u32 {
    (q - 1).gcd(&p).max(1)
}

/// A normalized grid number one diagram: the triple (p, q, h) together with
/// the derived vertical length `v` and cover order `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridOneSpec {
    pub lens: LensParams,
    pub h: u32,
    pub v: u32,
    pub k: u32,
}

impl GridOneSpec {
    /// Builds the spec from a raw basepoint separation, normalizing it.
    pub fn new(p: u32, q: u32, s: u32) -> Result<Self> {
        let lens = LensParams::new(p, q)?;
        let h = normalize_h(p, q, s)?;
        let v = vertical_length(p, q, h)?;
        let k = cover_order(p, q);
        let spec = GridOneSpec { lens, h, v, k };
        debug_assert!((h + v * q) % p == 0);
        debug_assert!(h + v <= p);
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.lens.p
    }

    pub fn q(&self) -> u32 {
        self.lens.q
    }

    /// Primitive ⇔ the knot generates first homology ⇔ gcd(h, p) = 1.
    pub fn is_primitive(&self) -> bool {
        self.h.gcd(&self.p()) == 1
    }

    pub fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(KnotError::NotPrimitive {
                p: self.p(),
                q: self.q(),
                h: self.h,
                g: self.h.gcd(&self.p()),
            })
        }
    }

    pub fn require_simple_cover(&self) -> Result<()> {
        if self.k == 1 {
            Ok(())
        } else {
            Err(KnotError::CoverNontrivial { k: self.k })
        }
    }

    /// Number of crossings of the Lagrangian diagram:
    /// `|{x : x < h, k|x}| + |{y : y ≤ v, k|y}| = (h-1)/k + v/k`.
    pub fn crossing_count(&self) -> usize {
        ((self.h - 1) / self.k + self.v / self.k) as usize
    }

    /// Box index of the corner at knot offset `δ ∈ [1, h+v)`: corners at
    /// offsets `1..=h` sit in boxes `1..=h`; vertical corners at offset
    /// `δ > h` sit in box `h + (δ-h)·q mod p`.
    pub(crate) fn box_of_offset(&self, delta: u32) -> u32 {
        debug_assert!(delta >= 1 && delta < self.h + self.v);
        if delta <= self.h {
            delta
        } else {
            ((self.h as u64 + (delta - self.h) as u64 * self.q() as u64) % self.p() as u64) as u32
        }
    }

    /// Knot offset of the j-th crossing (1-based, counted top-down): the
    /// j-th offset in `[1, h+v)` whose box index is divisible by `k`.
    pub(crate) fn crossing_offset(&self, j: usize) -> u32 {
        debug_assert!(j >= 1 && j <= self.crossing_count());
        if self.k == 1 {
            return j as u32;
        }
        let mut seen = 0;
        for delta in 1..(self.h + self.v) {
            if self.box_of_offset(delta) % self.k == 0 {
                seen += 1;
                if seen == j {
                    return delta;
                }
            }
        }
        unreachable!("crossing index {j} out of range");
    }

    /// `B(j)`: box label of the j-th crossing, `B(j) = kj` for `j ≤ h/k`
    /// and `(-qk)(s+1-j) mod p` above, with `s` the crossing count.
    pub fn box_label(&self, j: usize) -> u32 {
        self.box_of_offset(self.crossing_offset(j))
    }

    /// `x_j`: least positive integer with `B(j) + (1-q)·x_j ≡ 0 (mod p)`.
    /// Always lies in `[1, p/k]`.
    pub fn chord_steps(&self, j: usize) -> u32 {
        let p = self.p() as i64;
        let b = self.box_label(j) as i64;
        let step = (1 - self.q() as i64).rem_euclid(p);
        // gcd(1-q, p) = k divides B(j), so the solution set is an arithmetic
        // progression of step p/k; scan for the least positive member.
        let mut x = 1i64;
        loop {
            if (b + step * x) % p == 0 {
                debug_assert!(x <= p / self.k as i64);
                return x as u32;
            }
            x += 1;
            assert!(x <= p, "no chord step solution for j={j}");
        }
    }

    /// Length of a chord at crossing `j`, as a fraction of the orbital
    /// period: `l(a_j) = k·x_j / p` and `l(b_j) = 1 - l(a_j)`.
    pub fn chord_length(&self, j: usize, kind: ChordKind) -> Frac {
        let a = Frac::new((self.k * self.chord_steps(j)) as i64, self.p() as i64);
        match kind {
            ChordKind::A => a,
            ChordKind::B => Frac::from_int(1) - a,
        }
    }

    /// Grading modulus `2(h+v) - 4v = 2|h-v|` (0 means no reduction).
    pub fn grading_modulus(&self) -> u32 {
        2 * self.h.abs_diff(self.v)
    }
}

/// The two complementary Reeb chords over a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordKind {
    /// Preferred chord: "+" on the north/south quadrants.
    A,
    /// Complementary chord: "+" on the east/west quadrants.
    B,
}

/// Azimuth map between the front and Lagrangian projections: angles are
/// exact fractions of a full turn, and `phi = (p/k)(theta1 - theta2) mod 1`.
pub fn phi_of_theta(lens: LensParams, theta1: Frac, theta2: Frac) -> Frac {
    let ratio = Frac::new(lens.p as i64, lens.cover_order() as i64);
    ((theta1 - theta2) * ratio).rem_mod(1)
}

/// Modular inverse of `a` mod `m` for coprime inputs.
pub(crate) fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = i64::extended_gcd(&a.rem_euclid(m), &m);
    debug_assert_eq!(e.gcd, 1, "no inverse of {a} mod {m}");
    e.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, q: u32, s: u32) -> GridOneSpec {
        GridOneSpec::new(p, q, s).unwrap()
    }

    #[test]
    fn vertical_length_examples() {
        assert_eq!(vertical_length(5, 2, 3).unwrap(), 1);
        assert_eq!(vertical_length(7, 6, 2).unwrap(), 2);
        assert_eq!(vertical_length(8, 3, 5).unwrap(), 1);
    }

    #[test]
    fn vertical_length_rejects_degenerate() {
        assert!(matches!(
            vertical_length(5, 2, 0),
            Err(KnotError::DegenerateSeparation { p: 5 })
        ));
        assert!(vertical_length(5, 2, 5).is_err());
    }

    #[test]
    fn normalize_h_examples() {
        assert_eq!(normalize_h(5, 2, 3).unwrap(), 3);
        assert_eq!(normalize_h(5, 2, 2).unwrap(), 3);
        assert_eq!(normalize_h(7, 6, 2).unwrap(), 2);
    }

    #[test]
    fn normalize_h_tie_takes_smaller_side() {
        // p=8, q=3, s=4: v(4)=4, so s+v = p; the tie resolves to min(4,4).
        assert_eq!(vertical_length(8, 3, 4).unwrap(), 4);
        assert_eq!(normalize_h(8, 3, 4).unwrap(), 4);
    }

    #[test]
    fn normalize_h_is_idempotent() {
        for p in 3..40u32 {
            for q in 2..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for s in 1..p {
                    let h = normalize_h(p, q, s).unwrap();
                    assert_eq!(normalize_h(p, q, h).unwrap(), h, "p={p} q={q} s={s}");
                }
            }
        }
    }

    #[test]
    fn cover_order_examples() {
        assert_eq!(cover_order(5, 2), 1);
        assert_eq!(cover_order(8, 3), 2);
        assert_eq!(cover_order(9, 8), 1);
    }

    #[test]
    fn primitivity_examples() {
        assert!(spec(5, 2, 3).is_primitive());
        assert!(!spec(9, 8, 3).is_primitive());
        assert!(spec(11, 7, 1).is_primitive());
    }

    #[test]
    fn lens_params_reject_bad_input() {
        assert!(LensParams::new(5, 1).is_err());
        assert!(LensParams::new(6, 3).is_err());
        assert!(LensParams::new(5, 5).is_err());
        assert!(LensParams::new(5, 0).is_err());
    }

    #[test]
    fn box_label_examples() {
        let k523 = spec(5, 2, 3);
        assert_eq!(k523.box_label(1), 1);
        assert_eq!(k523.box_label(3), 3);
        // K(7,6,2), j=3: (-6)(4-3) mod 7 = 1.
        let k762 = spec(7, 6, 2);
        assert_eq!(k762.box_label(3), 1);
    }

    #[test]
    fn chord_steps_examples() {
        let k523 = spec(5, 2, 3);
        assert_eq!(k523.chord_steps(1), 1);
        assert_eq!(k523.chord_steps(3), 3);
        let k762 = spec(7, 6, 2);
        assert_eq!(k762.chord_steps(2), 6);
    }

    #[test]
    fn chord_length_examples() {
        let k523 = spec(5, 2, 3);
        assert_eq!(k523.chord_length(1, ChordKind::A), Frac::new(1, 5));
        assert_eq!(k523.chord_length(1, ChordKind::B), Frac::new(4, 5));
    }

    #[test]
    fn chord_lengths_are_complementary() {
        for (p, q, s) in [(5, 2, 3), (7, 6, 2), (11, 4, 5), (13, 12, 2), (8, 3, 5)] {
            let sp = spec(p, q, s);
            for j in 1..=sp.crossing_count() {
                let sum = sp.chord_length(j, ChordKind::A) + sp.chord_length(j, ChordKind::B);
                assert_eq!(sum, Frac::from_int(1));
                assert!(sp.chord_steps(j) >= 1);
                assert!(sp.k * sp.chord_steps(j) <= p);
            }
        }
    }

    #[test]
    fn q_max_forces_equal_sides() {
        // q = p-1 forces v = h, hence grading modulus 0.
        for p in [3u32, 5, 7, 9, 15, 21] {
            let sp = spec(p, p - 1, 2);
            assert_eq!(sp.h, sp.v);
            assert_eq!(sp.grading_modulus(), 0);
        }
    }

    #[test]
    fn phi_of_theta_examples() {
        let l52 = LensParams::new(5, 2).unwrap();
        assert_eq!(phi_of_theta(l52, Frac::ZERO, Frac::ZERO), Frac::ZERO);
        assert_eq!(phi_of_theta(l52, Frac::new(1, 5), Frac::ZERO), Frac::ZERO);
        // L(8,3): p/k = 4, so a 1/8 turn maps to a half turn.
        let l83 = LensParams::new(8, 3).unwrap();
        assert_eq!(
            phi_of_theta(l83, Frac::new(1, 8), Frac::ZERO),
            Frac::new(1, 2)
        );
    }

    #[test]
    fn crossing_offsets_cover_box_multiples() {
        let sp = spec(8, 3, 5); // k = 2, v = 1
        assert_eq!(sp.crossing_count(), 2);
        assert_eq!(sp.box_label(1), 2);
        assert_eq!(sp.box_label(2), 4);
    }
}

//! Built-in invariant suite behind the CLI `selftest` verb.

use serde::{Deserialize, Serialize};

use crate::dga;
use crate::lagrangian::{crossing_set, LabeledDiagram};
use crate::lens_arith::{ChordKind, GridOneSpec};
use crate::loops::{
    count_n, count_s, count_subseq_bruteforce, max_switch_chords, LiftedDiagram, LoopKind,
    SubseqParity,
};
use crate::rational::Frac;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, outcome: Result<String, String>) -> CheckResult {
    match outcome {
        Ok(detail) => CheckResult {
            name: name.into(),
            pass: true,
            detail,
        },
        Err(detail) => CheckResult {
            name: name.into(),
            pass: false,
            detail,
        },
    }
}

/// Deterministic sample of primitive k = 1 specs for structural checks.
fn sample_specs(p_max: u32) -> Vec<GridOneSpec> {
    let mut out = Vec::new();
    for p in 3..=p_max {
        for q in 2..p {
            for s in 1..p {
                if let Ok(spec) = GridOneSpec::new(p, q, s) {
                    if spec.k == 1 && spec.is_primitive() {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out.dedup();
    out
}

fn recursion_vs_oracle() -> Result<String, String> {
    for k in 0..=8 {
        let s = count_s(k).count;
        let s_brute = count_subseq_bruteforce(k, SubseqParity::Odd).map_err(|e| e.to_string())?;
        if s != s_brute {
            return Err(format!("S({k}): recursion {s} vs oracle {s_brute}"));
        }
        let n = count_n(k).count;
        let n_brute = count_subseq_bruteforce(k, SubseqParity::Even).map_err(|e| e.to_string())?;
        if n != n_brute {
            return Err(format!("N({k}): recursion {n} vs oracle {n_brute}"));
        }
    }
    Ok("S(k), N(k) match the subsequence oracle for k ≤ 8".into())
}

fn parity_periodicity() -> Result<String, String> {
    for k in 3..=30u32 {
        if count_s(k).parity != count_s(k - 3).parity {
            return Err(format!("S parity breaks at k={k}"));
        }
        if count_n(k).parity != count_n(k - 3).parity {
            return Err(format!("N parity breaks at k={k}"));
        }
    }
    for k in 0..=30u32 {
        let s_odd = count_s(k).parity == 1;
        if s_odd != (k % 3 != 2) {
            return Err(format!("S({k}) parity off the mod-3 law"));
        }
        let n_odd = count_n(k).parity == 1;
        if n_odd != (k % 3 != 1) {
            return Err(format!("N({k}) parity off the mod-3 law"));
        }
    }
    Ok("period-3 parity laws hold for k ≤ 30".into())
}

fn crossing_counts() -> Result<String, String> {
    let specs = sample_specs(40);
    for spec in &specs {
        let set = crossing_set(spec);
        let expected = (spec.h + spec.v - 1) as usize;
        if set.len() != expected {
            return Err(format!(
                "K({},{},{}): {} crossings, expected {expected}",
                spec.p(),
                spec.q(),
                spec.h,
                set.len()
            ));
        }
    }
    Ok(format!(
        "crossing count h+v-1 on {} primitive k=1 specs",
        specs.len()
    ))
}

fn diagram_labeling() -> Result<String, String> {
    let specs = sample_specs(30);
    for spec in &specs {
        let d = LabeledDiagram::build(spec).map_err(|e| e.to_string())?;
        if d.regions.len() != d.crossings.len() + 2 {
            return Err(format!("region count off for K({},{},{})", spec.p(), spec.q(), spec.h));
        }
        let area: Frac = d.regions.iter().map(|r| r.area).sum();
        if area != Frac::new(1, spec.p() as i64) {
            return Err(format!("total area {area} ≠ 1/{}", spec.p()));
        }
        let frac_4v = Frac::new(4 * spec.v as i64, spec.p() as i64).fract();
        for j in 1..=d.crossings.len() {
            let a = d.grading_unreduced(j, ChordKind::A);
            let b = d.grading_unreduced(j, ChordKind::B);
            if a + b != Frac::from_int(3) || a.fract() != frac_4v || frac_4v.is_zero() {
                return Err(format!("grading law fails at K({},{},{}) a{j}", spec.p(), spec.q(), spec.h));
            }
        }
    }
    Ok(format!("labeling and grading laws on {} diagrams", specs.len()))
}

fn loops_vs_recursion() -> Result<String, String> {
    for p in (5..=19u32).step_by(2) {
        let spec = GridOneSpec::new(p, p - 1, 2).map_err(|e| e.to_string())?;
        let lifted = LiftedDiagram::new(&spec).map_err(|e| e.to_string())?;
        let base = (p % 4) as usize;
        let s_count = lifted
            .enumerate_loops(LoopKind::S, base)
            .map_err(|e| e.to_string())?
            .len() as u64;
        let n_count = lifted
            .enumerate_loops(LoopKind::N, base)
            .map_err(|e| e.to_string())?
            .len() as u64;
        let s_expect = count_s(max_switch_chords(p, LoopKind::S)).count;
        let n_expect = count_n(max_switch_chords(p, LoopKind::N)).count;
        if s_count != s_expect || n_count != n_expect {
            return Err(format!(
                "p={p}: loops ({s_count},{n_count}) vs recursions ({s_expect},{n_expect})"
            ));
        }
    }
    Ok("geometric loop counts equal S(k), N(k) for odd p ≤ 19".into())
}

fn vanishing_family() -> Result<String, String> {
    for p in (3..=31u32).step_by(2) {
        let r = dga::verify_vanishing_family(p).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!("h=1 family fails at p={p}"));
        }
    }
    Ok("h=1 family: vanishing differential and two augmentations, p ≤ 31".into())
}

fn mod12_scan() -> Result<String, String> {
    for p in (3..=99u32).step_by(2) {
        let row = dga::verify_mod12_family(p).map_err(|e| e.to_string())?;
        if !row.agree {
            return Err(format!("search and predicate disagree at p={p}"));
        }
    }
    Ok("augmentation existence matches the mod-12 classes for odd p ≤ 99".into())
}

fn geometric_fragment_checks() -> Result<String, String> {
    for p in (5..=13u32).step_by(2) {
        let spec = GridOneSpec::new(p, p - 1, 2).map_err(|e| e.to_string())?;
        let f = dga::assemble_fragment_geometric(&spec).map_err(|e| e.to_string())?;
        for &j in &[1usize, 3] {
            match &f.entries[&j] {
                dga::FragmentEntry::Words(ws) => {
                    if ws.iter().any(|(w, _)| w.letters().iter().any(|&c| c != 2)) {
                        return Err(format!("p={p}: polar letter in ∂a{j}"));
                    }
                }
                _ => return Err("geometric entry not materialized".into()),
            }
        }
        // All four tie assignments leave the middle generator even.
        for eps_sw in [false, true] {
            for eps_polar in [false, true] {
                let eps = dga::Assignment(
                    [(1, eps_polar), (2, eps_sw), (3, eps_polar)].into_iter().collect(),
                );
                let count = dga::special_disc_count(&f, &eps, 2)
                    .ok_or("middle entry not materialized")?;
                if count % 2 != 0 {
                    return Err(format!("p={p}: odd middle count under {eps}"));
                }
            }
        }
    }
    Ok("reflection parity and polar-letter filter hold for p ≤ 13".into())
}

/// Runs every named invariant check.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("recursion_vs_oracle", recursion_vs_oracle()),
        check("parity_periodicity", parity_periodicity()),
        check("crossing_counts", crossing_counts()),
        check("diagram_labeling", diagram_labeling()),
        check("loops_vs_recursion", loops_vs_recursion()),
        check("vanishing_family", vanishing_family()),
        check("mod12_scan", mod12_scan()),
        check("geometric_fragment_checks", geometric_fragment_checks()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for r in run_all() {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }
}

//! Report structures and their text/JSON/CSV renderings.
//!
//! JSON output is schema-stable and free of timestamps: identical
//! invocations produce byte-identical documents. CSV is defined for the
//! scan verb only, with the fixed header
//! `p,p_mod_12,k_S,k_N,S_parity,N_parity,exists,predicate,agree`.

use serde::Serialize;

use lensknot::dga::{AugCandidate, Mod12Row};
use lensknot::lagrangian::{LabeledDiagram, Pole, Region};
use lensknot::selftest::CheckResult;
use lensknot::{Frac, GridOneSpec};

pub const SCAN_CSV_HEADER: &str = "p,p_mod_12,k_S,k_N,S_parity,N_parity,exists,predicate,agree";

#[derive(Debug, Clone, Serialize)]
pub struct SpecEcho {
    pub p: u32,
    pub q: u32,
    pub h_input: u32,
    pub h: u32,
    pub v: u32,
    pub k: u32,
    pub primitive: bool,
}

impl SpecEcho {
    pub fn new(spec: &GridOneSpec, h_input: u32) -> Self {
        SpecEcho {
            p: spec.p(),
            q: spec.q(),
            h_input,
            h: spec.h,
            v: spec.v,
            k: spec.k,
            primitive: spec.is_primitive(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingReport {
    pub index: usize,
    pub box_label: u32,
    pub steps: u32,
    pub length_a: Frac,
    pub length_b: Frac,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading_a: Option<Frac>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading_b: Option<Frac>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub id: usize,
    pub pole: Option<String>,
    pub corners: usize,
    pub area: Frac,
    pub defect: Frac,
}

impl RegionReport {
    fn new(r: &Region) -> Self {
        RegionReport {
            id: r.id,
            pole: r.contains_pole.map(|p| match p {
                Pole::North => "north".to_string(),
                Pole::South => "south".to_string(),
            }),
            corners: r.corners.len(),
            area: r.area,
            defect: r.defect,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    #[serde(flatten)]
    pub spec: SpecEcho,
    pub labeling_supported: bool,
    pub crossing_count: usize,
    pub crossing_boxes: Vec<u32>,
    pub crossings: Vec<CrossingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading_modulus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<RegionReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_terms: Option<Vec<String>>,
}

impl AnalyzeReport {
    pub fn labeled(spec: &GridOneSpec, h_input: u32, diagram: &LabeledDiagram) -> Self {
        let crossings = diagram
            .crossings
            .iter()
            .map(|c| CrossingReport {
                index: c.index,
                box_label: c.box_label,
                steps: c.steps,
                length_a: c.a.length,
                length_b: c.b.length,
                grading_a: c.a.grading,
                grading_b: c.b.grading,
            })
            .collect();
        let constant_terms = diagram
            .capping_paths()
            .iter()
            .filter(|cp| cp.bounds_disc)
            .map(|cp| {
                let side = match cp.side {
                    Pole::North => "north",
                    Pole::South => "south",
                };
                format!("a{} ({side})", cp.crossing)
            })
            .collect();
        AnalyzeReport {
            spec: SpecEcho::new(spec, h_input),
            labeling_supported: true,
            crossing_count: diagram.crossings.len(),
            crossing_boxes: diagram.crossings.iter().map(|c| c.box_label).collect(),
            crossings,
            grading_modulus: Some(diagram.grading_modulus),
            regions: Some(diagram.regions.iter().map(RegionReport::new).collect()),
            constant_terms: Some(constant_terms),
        }
    }

    pub fn crossings_only(spec: &GridOneSpec, h_input: u32) -> Self {
        let crossings = lensknot::lagrangian::crossings(spec)
            .into_iter()
            .map(|c| CrossingReport {
                index: c.index,
                box_label: c.box_label,
                steps: c.steps,
                length_a: c.a.length,
                length_b: c.b.length,
                grading_a: None,
                grading_b: None,
            })
            .collect();
        AnalyzeReport {
            spec: SpecEcho::new(spec, h_input),
            labeling_supported: false,
            crossing_count: spec.crossing_count(),
            crossing_boxes: lensknot::lagrangian::crossing_set(spec),
            crossings,
            grading_modulus: None,
            regions: None,
            constant_terms: None,
        }
    }

    pub fn text(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "K({},{},{}): h={} v={} k={} primitive={}\n",
            s.p, s.q, s.h_input, s.h, s.v, s.k, s.primitive
        );
        out += &format!(
            "crossings: {} (boxes: {})\n",
            self.crossing_count,
            self.crossing_boxes
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        if !self.labeling_supported {
            out += "full labeling unsupported for k > 1; listing crossings only\n";
        }
        if !self.crossings.is_empty() {
            out += "  j   box   x_j   l(a)    l(b)      |a|       |b|\n";
            for c in &self.crossings {
                let fmt_or_dash = |g: &Option<Frac>| match g {
                    Some(g) => g.to_string(),
                    None => "-".to_string(),
                };
                out += &format!(
                    "  {:<3} {:<5} {:<5} {:<7} {:<9} {:<9} {}\n",
                    c.index,
                    c.box_label,
                    c.steps,
                    c.length_a.to_string(),
                    c.length_b.to_string(),
                    fmt_or_dash(&c.grading_a),
                    fmt_or_dash(&c.grading_b),
                );
            }
        }
        if let Some(m) = self.grading_modulus {
            out += &format!("grading modulus: {m}\n");
        }
        if let Some(regions) = &self.regions {
            out += &format!("regions: {}\n", regions.len());
            for r in regions {
                let pole = r.pole.as_deref().unwrap_or("-");
                out += &format!(
                    "  id {:<3} pole {:<6} corners {} area {:<5} defect {}\n",
                    r.id, pole, r.corners, r.area.to_string(), r.defect
                );
            }
        }
        if let Some(consts) = &self.constant_terms {
            out += &format!("constant terms: {}\n", consts.join(", "));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopRow {
    pub crossing: usize,
    pub n_loops: usize,
    pub s_loops: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub k_s: u32,
    pub k_n: u32,
    pub s_recursion: u64,
    pub n_recursion: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_bruteforce: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_bruteforce: Option<u64>,
    pub base_crossing: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopsReport {
    #[serde(flatten)]
    pub spec: SpecEcho,
    pub rows: Vec<LoopRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl LoopsReport {
    pub fn text(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "K({},{},{}): loops through the fixed representative chord of each crossing\n",
            s.p, s.q, s.h_input
        );
        for r in &self.rows {
            out += &format!("  b{}: S:{} N:{}\n", r.crossing, r.s_loops, r.n_loops);
        }
        if let Some(o) = &self.oracle {
            out += &format!(
                "oracle (base b{}): S(k_S={}) = {}, N(k_N={}) = {}",
                o.base_crossing, o.k_s, o.s_recursion, o.k_n, o.n_recursion
            );
            if let (Some(sb), Some(nb)) = (o.s_bruteforce, o.n_bruteforce) {
                out += &format!(", brute force S={sb} N={nb}");
            }
            out += &format!(" -> {}\n", if o.agree { "agree" } else { "DISAGREE" });
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentReport {
    #[serde(flatten)]
    pub spec: SpecEcho,
    pub in_verified_family: bool,
    pub forced: bool,
    pub exists: bool,
    pub candidates: Vec<AugCandidate>,
}

impl AugmentReport {
    pub fn text(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "K({},{},{}): augmentation exists = {}\n",
            s.p, s.q, s.h_input, self.exists
        );
        if !self.in_verified_family {
            out += "note: outside the verified family; fragment assembled geometrically\n";
        }
        for c in &self.candidates {
            out += &format!("  {}\n", c.eps);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub p_min: u32,
    pub p_max: u32,
    pub rows: Vec<Mod12Row>,
    pub all_agree: bool,
}

impl ScanReport {
    pub fn text(&self) -> String {
        let mut out = format!("{}\n", SCAN_CSV_HEADER.replace(',', "  "));
        for r in &self.rows {
            out += &format!(
                "{:<3} {:<8} {:<3} {:<3} {:<8} {:<8} {:<6} {:<9} {}\n",
                r.p, r.p_mod_12, r.k_s, r.k_n, r.s_parity, r.n_parity, r.exists, r.predicted,
                r.agree
            );
        }
        out += &format!("all rows agree: {}\n", self.all_agree);
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(SCAN_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out += &format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.p, r.p_mod_12, r.k_s, r.k_n, r.s_parity, r.n_parity, r.exists, r.predicted,
                r.agree
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl SelftestReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out += &format!(
                "{} {} — {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        out += &format!("all checks pass: {}\n", self.all_pass);
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

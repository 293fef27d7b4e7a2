//! Command-line front end: per-knot analysis, loop enumeration,
//! augmentation decisions, range scans, and the invariant selftest.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical-scope error,
//! 3 verification disagreement.

mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lensknot::dga::{self, assemble_fragment, assemble_fragment_geometric, augmentation_search};
use lensknot::lagrangian::LabeledDiagram;
use lensknot::loops::{
    count_n, count_s, count_subseq_bruteforce, max_switch_chords, LiftedDiagram, LoopKind,
    SubseqParity,
};
use lensknot::selftest;
use lensknot::{GridOneSpec, KnotError};

use report::{
    to_json, AnalyzeReport, AugmentReport, LoopRow, LoopsReport, OracleReport, ScanReport,
    SelftestReport, SpecEcho,
};

const EXIT_USAGE: u8 = 1;
const EXIT_SCOPE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "lensknot",
    version,
    about = "Grid number one Legendrian knots in lens spaces: diagrams, loops, augmentations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Labeled diagram of K(p,q,h): crossings, lengths, regions, gradings
    Analyze {
        p: u32,
        q: u32,
        /// Basepoint separation; normalized to the canonical h
        h: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// N-/S-loop counts through the fixed chord of each crossing
    Loops {
        p: u32,
        q: u32,
        h: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Cross-check loop counts against the closed recursions and the
        /// brute-force subsequence oracle (q = p-1, h = 2 family)
        #[arg(long)]
        oracle: bool,
    },
    /// Decide augmentation existence for K(p,q,h)
    Augment {
        p: u32,
        q: u32,
        h: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Accept specs outside the verified family (geometric assembly)
        #[arg(long)]
        force: bool,
    },
    /// Scan odd p in [p_min, p_max] with q = p-1, h = 2: search vs predicate
    Scan {
        p_min: u32,
        p_max: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the built-in invariant suite
    Selftest {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_SCOPE)
        }
    }
}

fn require_text_or_json(format: Format) -> Result<(), String> {
    if format == Format::Csv {
        Err("csv output is only defined for the scan verb".into())
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<u8, KnotError> {
    match cli.cmd {
        Cmd::Analyze { p, q, h, format } => {
            if let Err(msg) = require_text_or_json(format) {
                eprintln!("error: {msg}");
                return Ok(EXIT_USAGE);
            }
            let spec = GridOneSpec::new(p, q, h)?;
            let rep = if spec.k == 1 && spec.is_primitive() {
                let diagram = LabeledDiagram::build(&spec)?;
                AnalyzeReport::labeled(&spec, h, &diagram)
            } else {
                AnalyzeReport::crossings_only(&spec, h)
            };
            emit(format, rep.text(), &rep);
            Ok(0)
        }
        Cmd::Loops {
            p,
            q,
            h,
            format,
            oracle,
        } => {
            if let Err(msg) = require_text_or_json(format) {
                eprintln!("error: {msg}");
                return Ok(EXIT_USAGE);
            }
            let spec = GridOneSpec::new(p, q, h)?;
            spec.require_primitive()?;
            spec.require_simple_cover()?;
            let lifted = LiftedDiagram::new(&spec)?;
            let mut rows = Vec::new();
            for j in 1..=spec.crossing_count() {
                rows.push(LoopRow {
                    crossing: j,
                    n_loops: lifted.enumerate_loops(LoopKind::N, j)?.len(),
                    s_loops: lifted.enumerate_loops(LoopKind::S, j)?.len(),
                });
            }
            let oracle_rep = if oracle {
                Some(build_oracle_report(&spec, &rows)?)
            } else {
                None
            };
            let disagree = oracle_rep.as_ref().is_some_and(|o| !o.agree);
            let rep = LoopsReport {
                spec: SpecEcho::new(&spec, h),
                rows,
                oracle: oracle_rep,
            };
            emit(format, rep.text(), &rep);
            Ok(if disagree { EXIT_DISAGREE } else { 0 })
        }
        Cmd::Augment {
            p,
            q,
            h,
            format,
            force,
        } => {
            if let Err(msg) = require_text_or_json(format) {
                eprintln!("error: {msg}");
                return Ok(EXIT_USAGE);
            }
            let spec = GridOneSpec::new(p, q, h)?;
            let in_family = dga::in_verified_family(&spec);
            if !in_family && !force {
                return Err(KnotError::OutOfVerifiedScope {
                    what: format!(
                        "K({p},{q},{}) — rerun with --force for best-effort geometric assembly",
                        spec.h
                    ),
                });
            }
            let fragment = if in_family {
                assemble_fragment(&spec)?
            } else {
                assemble_fragment_geometric(&spec)?
            };
            let candidates = augmentation_search(&fragment);
            let rep = AugmentReport {
                spec: SpecEcho::new(&spec, h),
                in_verified_family: in_family,
                forced: force,
                exists: !candidates.is_empty(),
                candidates,
            };
            emit(format, rep.text(), &rep);
            Ok(0)
        }
        Cmd::Scan {
            p_min,
            p_max,
            format,
        } => {
            if p_min > p_max {
                eprintln!("error: p_min {p_min} exceeds p_max {p_max}");
                return Ok(EXIT_USAGE);
            }
            let mut rows = Vec::new();
            for p in p_min..=p_max {
                if p < 3 || p % 2 == 0 {
                    continue; // gcd(p-2, p) = 2 for even p
                }
                rows.push(dga::verify_mod12_family(p)?);
            }
            let all_agree = rows.iter().all(|r| r.agree);
            let rep = ScanReport {
                p_min,
                p_max,
                rows,
                all_agree,
            };
            match format {
                Format::Csv => print!("{}", rep.csv()),
                Format::Text => print!("{}", rep.text()),
                Format::Json => print!("{}", to_json(&rep)),
            }
            Ok(if all_agree { 0 } else { EXIT_DISAGREE })
        }
        Cmd::Selftest { format } => {
            if let Err(msg) = require_text_or_json(format) {
                eprintln!("error: {msg}");
                return Ok(EXIT_USAGE);
            }
            let checks = selftest::run_all();
            let all_pass = checks.iter().all(|c| c.pass);
            let rep = SelftestReport { checks, all_pass };
            emit(format, rep.text(), &rep);
            Ok(if all_pass { 0 } else { EXIT_DISAGREE })
        }
    }
}

fn build_oracle_report(spec: &GridOneSpec, rows: &[LoopRow]) -> Result<OracleReport, KnotError> {
    let p = spec.p();
    if !dga::in_verified_family(spec) || spec.h != 2 {
        return Err(KnotError::OutOfVerifiedScope {
            what: format!(
                "--oracle compares against S(k)/N(k), defined for q = p-1, h = 2 (got K({},{},{}))",
                p,
                spec.q(),
                spec.h
            ),
        });
    }
    let k_s = max_switch_chords(p, LoopKind::S);
    let k_n = max_switch_chords(p, LoopKind::N);
    let s_recursion = count_s(k_s).count;
    let n_recursion = count_n(k_n).count;
    // Brute-force counts included while the subset enumeration stays in
    // budget; the recursion is compared either way.
    let s_bruteforce = count_subseq_bruteforce(k_s, SubseqParity::Odd).ok();
    let n_bruteforce = count_subseq_bruteforce(k_n, SubseqParity::Even).ok();
    let base_crossing = (p % 4) as usize;
    let row = rows
        .iter()
        .find(|r| r.crossing == base_crossing)
        .expect("base crossing enumerated");
    let mut agree = row.s_loops as u64 == s_recursion && row.n_loops as u64 == n_recursion;
    if let (Some(sb), Some(nb)) = (s_bruteforce, n_bruteforce) {
        agree = agree && sb == s_recursion && nb == n_recursion;
    }
    Ok(OracleReport {
        k_s,
        k_n,
        s_recursion,
        n_recursion,
        s_bruteforce,
        n_bruteforce,
        base_crossing,
        agree,
    })
}

fn emit<T: serde::Serialize>(format: Format, text: String, rep: &T) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => print!("{}", to_json(rep)),
        Format::Csv => unreachable!("csv rejected earlier"),
    }
}

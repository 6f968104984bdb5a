//! Golden-file regression over the bundled fixtures.

use rayon::prelude::*;
use recollement::analyzer::triangular_verdicts;
use recollement::fixtures::{self, QUIVERS, TRIANGULAR};
use recollement::report::{analyze, cutoff_inconsistencies, from_json, to_canonical_json, AnalysisOptions};
use recollement::{parse_algebra_file, PrimeField};
use similar::TextDiff;

use crate::commands::with_field;
use crate::error::{io, CliError};
use crate::CorpusArgs;

pub const DEFAULT_CUTOFF: usize = 30;

#[derive(Debug, Clone)]
enum Entry {
    Quiver { fixture: &'static str, idempotent: String },
    Triangular { fixture: &'static str },
}

impl Entry {
    fn id(&self) -> String {
        match self {
            Entry::Quiver { fixture, idempotent } => format!("{fixture}.{idempotent}"),
            Entry::Triangular { fixture } => format!("{fixture}.triangular"),
        }
    }
}

/// Every declared idempotent of every fixture, plus `all`, plus the
/// triangular specs; sorted by id.
fn entries() -> Vec<Entry> {
    let mut out = Vec::new();
    for (fixture, text) in QUIVERS {
        let qp = parse_algebra_file(text).expect("bundled fixture parses");
        let mut names: Vec<String> = qp.idempotents.iter().map(|(n, _)| n.clone()).collect();
        if !names.iter().any(|n| n == "all") {
            names.push("all".into());
        }
        out.extend(names.into_iter().map(|idempotent| Entry::Quiver { fixture, idempotent }));
    }
    out.extend(TRIANGULAR.iter().map(|(fixture, _)| Entry::Triangular { fixture }));
    out.sort_by_key(Entry::id);
    out
}

fn compute(entry: &Entry, cutoff: usize) -> Result<String, CliError> {
    match entry {
        Entry::Quiver { fixture, idempotent } => {
            let text = fixtures::quiver_source(fixture).expect("bundled");
            let qp = parse_algebra_file(text).map_err(recollement::Error::from)?;
            let opts = AnalysisOptions { cutoff, ..AnalysisOptions::default() };
            let report = with_field!(qp.field, |f| analyze(fixture, text, &qp, idempotent, &f, &opts)?);
            Ok(to_canonical_json(&report)?)
        }
        Entry::Triangular { fixture } => {
            let f = PrimeField::new(101)?;
            let report = triangular_verdicts(&fixtures::triangular(fixture, &f)?, cutoff)?;
            Ok(to_canonical_json(&report)?)
        }
    }
}

enum Outcome {
    Pass,
    Blessed,
    Skipped(String),
    Fail(String),
}

fn check(entry: &Entry, args: &CorpusArgs) -> Outcome {
    let cutoff = args.cutoff.unwrap_or(DEFAULT_CUTOFF);
    let path = args.golden.join(format!("{}.json", entry.id()));
    let fresh = match compute(entry, cutoff) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(format!("analysis failed: {e}")),
    };
    if args.bless {
        return match std::fs::write(&path, &fresh).map_err(io(&path)) {
            Ok(()) => Outcome::Blessed,
            Err(e) => Outcome::Fail(e.to_string()),
        };
    }
    let golden = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(format!("{}: {e}", path.display())),
    };
    if cutoff == DEFAULT_CUTOFF {
        if golden == fresh {
            return Outcome::Pass;
        }
        let diff = TextDiff::from_lines(&golden, &fresh)
            .unified_diff()
            .context_radius(2)
            .header(&path.display().to_string(), "computed")
            .to_string();
        return Outcome::Fail(format!("differs from golden\n{diff}"));
    }
    // a different cutoff only has to be consistent with the golden run
    if matches!(entry, Entry::Triangular { .. }) {
        return Outcome::Skipped("no consistency check under a cutoff override".into());
    }
    match (from_json(&golden), from_json(&fresh)) {
        (Ok(g), Ok(f)) => {
            let issues = cutoff_inconsistencies(&g, &f);
            if issues.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("inconsistent with golden: {}", issues.join("; ")))
            }
        }
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(e.to_string()),
    }
}

pub fn run(args: &CorpusArgs) -> Result<(), CliError> {
    let all = entries();
    let outcomes: Vec<Outcome> = if args.run_all {
        all.par_iter().map(|e| check(e, args)).collect()
    } else {
        all.iter().map(|e| check(e, args)).collect()
    };
    let mut failed = 0;
    for (entry, outcome) in all.iter().zip(&outcomes) {
        let (tag, detail) = match outcome {
            Outcome::Pass => ("pass", None),
            Outcome::Blessed => ("blessed", None),
            Outcome::Skipped(why) => ("skipped", Some(why)),
            Outcome::Fail(why) => {
                failed += 1;
                ("FAIL", Some(why))
            }
        };
        println!("{:<24} {tag}", entry.id());
        if let Some(d) = detail {
            for line in d.lines() {
                println!("    {line}");
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Corpus { failed, total: all.len() });
    }
    Ok(())
}

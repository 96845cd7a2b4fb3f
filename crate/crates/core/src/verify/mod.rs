//! Exhaustive verification of the order's structural properties on a finite
//! group.
//!
//! Each check quantifies over every tuple in its scope (all subsets `I, J`,
//! all coset pairs, all expressions up to a width cap, ...) and records every
//! tuple that violates the statement. The smallest counterexamples, ordered
//! by total length and then ShortLex, are rendered in the report.

mod checks;
mod context;

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};

use context::Ctx;

/// An element-level Bruhat comparator `x <= y`. The suite takes every order
/// comparison from it, so a faulty comparator shows up as failures.
pub type Comparator = Arc<dyn Fn(&CoxeterGroup, Element, Element) -> bool + Send + Sync>;

/// Rendered counterexamples kept per check.
pub const MAX_RENDERED: usize = 20;

/// Random triples drawn for associativity when the group is too large to
/// test exhaustively.
pub const DEFAULT_SAMPLES: usize = 100_000;

/// Groups up to this size get exhaustive associativity checks.
pub const EXHAUSTIVE_TRIPLE_LIMIT: usize = 48;

pub struct CheckInfo {
    pub name: &'static str,
    pub statement: &'static str,
}

/// Every check, in report order.
pub const CHECKS: &[CheckInfo] = &[
    CheckInfo {
        name: "bruhat-subword",
        statement: "x <= y iff x is the product of a subword of the canonical word of y",
    },
    CheckInfo {
        name: "monoid-laws",
        statement: "s*s = s; e*w = w*e = w; w_I*w_I = w_I; w*s = w iff s is a right descent of w; x*y = (x*ys)*s and s is a right descent of x*y for every right descent s of y",
    },
    CheckInfo {
        name: "monoid-assoc",
        statement: "(x*y)*z = x*(y*z)",
    },
    CheckInfo {
        name: "length-additivity",
        statement: "l(x*y) >= max(l(x), l(y)); l(xy) = l(x)+l(y) iff xy = x*y",
    },
    CheckInfo {
        name: "star-monotone",
        statement: "a <= b implies a*c <= b*c",
    },
    CheckInfo {
        name: "lifting",
        statement: "v <= w implies some x' <= x has vx <= w.x' (and xv <= x'.w)",
    },
    CheckInfo {
        name: "lifting-factor",
        statement: "v <= w = z.x implies some x' <= x^-1 has vx' <= z (and x'v <= z when w = x.z)",
    },
    CheckInfo {
        name: "projection-monotone",
        statement: "for I in K, J in L the quotient map to K\\W/L is order preserving",
    },
    CheckInfo {
        name: "projection-preimage",
        statement: "the fibre of q under the quotient map has a unique maximum M, its max element is max(q), and pi(p) <= q iff p <= M",
    },
    CheckInfo {
        name: "coset-structure",
        statement: "unique min and max; l(p) = 2l(max) - l(I) - l(J); max = w_I*min*w_J; size = |W_I||W_J|/|W_rightred|; redundancies conjugate; l(p) = 0 iff p is the identity coset",
    },
    CheckInfo {
        name: "rex-search",
        statement: "the searched expression of p is reduced, expresses p and has length l(p)",
    },
    CheckInfo {
        name: "bruhat-min-max",
        statement: "min(p) <= min(q) iff max(p) <= max(q)",
    },
    CheckInfo {
        name: "bruhat-reduced-paths",
        statement: "p <= q iff p is the terminus of a path subordinate to some reduced expression of q",
    },
    CheckInfo {
        name: "bruhat-any-expression",
        statement: "p <= q iff p is a terminus for every expression of q (expressions up to the width cap)",
    },
    CheckInfo {
        name: "term-lower-set",
        statement: "Term(E) = {<= p} for every expression E of p up to the width cap",
    },
    CheckInfo {
        name: "term-concat",
        statement: "Term(E)*Term(F) is contained in Term(E.F)",
    },
    CheckInfo {
        name: "term-up-down",
        statement: "Term(E.[J,Js]) = Term(E)*(W_J W_Js); Term(E.[J,J-t]) = cosets inside some member of Term(E), containing Term(E)*(W_J W_J-t) = {W_I max(p) W_J-t}",
    },
    CheckInfo {
        name: "path-concat",
        statement: "the concatenation of subordinate paths is subordinate to the concatenated expression, ends at the star product of termini, and forward.forward is the forward path",
    },
    CheckInfo {
        name: "star-inclusion",
        statement: "q' inside q with K' in K implies p*q' inside p*q",
    },
    CheckInfo {
        name: "concat-monotone",
        statement: "q' <= q implies p*q'*r <= p*q*r",
    },
    CheckInfo {
        name: "concat-strict",
        statement: "q' < q and p.q.r reduced implies p*q'*r < p.q.r",
    },
    CheckInfo {
        name: "star-absorbs",
        statement: "with r the unique (J,S)-coset, p*q'*r = p*q*r",
    },
    CheckInfo {
        name: "length-order",
        statement: "q <= p implies l(q) <= l(p), with equality iff q = p",
    },
    CheckInfo {
        name: "unique-forward-path",
        statement: "a reduced expression of p has exactly one subordinate path ending at p, the forward path",
    },
    CheckInfo {
        name: "expression-structure",
        statement: "singlestep and multistep lengths and cosets agree; multistep round trip; reduced iff length = l(p); slices of reduced expressions are reduced; forward terminus = expressed coset",
    },
    CheckInfo {
        name: "reduced-composition",
        statement: "p.q exists iff max(p*q) = max(p).(w_J^-1 max(q)) = (max(p) w_J^-1).max(q), iff concatenated reduced expressions stay reduced",
    },
    CheckInfo {
        name: "path-enumeration",
        statement: "enumerated paths are subordinate, distinct, agree with path counting, and include exactly one forward path",
    },
];

/// One tab-separated line per check: name, statement.
pub fn manifest() -> String {
    let mut out = String::from("check\tstatement\n");
    for c in CHECKS {
        writeln!(out, "{}\t{}", c.name, c.statement).expect("writing to a String");
    }
    out
}

/// Outcome of one check on one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub group: String,
    /// Number of tuples tested.
    pub universe: u64,
    /// Number of tuples that failed.
    pub failure_count: u64,
    /// The smallest failures, rendered, at most [`MAX_RENDERED`].
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Runs checks against one group.
pub struct Verifier<'g> {
    group: &'g CoxeterGroup,
    width_cap: usize,
    samples: usize,
    seed: u64,
    leq: Comparator,
}

impl<'g> Verifier<'g> {
    pub fn new(group: &'g CoxeterGroup, width_cap: usize) -> Self {
        Verifier {
            group,
            width_cap,
            samples: DEFAULT_SAMPLES,
            seed: 0x5eed,
            leq: Arc::new(|g: &CoxeterGroup, x, y| g.bruhat_leq(x, y)),
        }
    }

    /// Replaces the Bruhat comparator (for fault injection).
    pub fn with_comparator(mut self, leq: Comparator) -> Self {
        self.leq = leq;
        self
    }

    pub fn with_samples(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    /// Runs the named checks, or all of them when `names` is empty. Results
    /// follow the order of [`CHECKS`].
    pub fn run(&self, names: &[&str]) -> Result<Vec<CheckResult>> {
        for name in names {
            if !CHECKS.iter().any(|c| c.name == *name) {
                return Err(Error::UnknownCheckName(name.to_string()));
            }
        }
        let selected: Vec<&'static str> = CHECKS
            .iter()
            .map(|c| c.name)
            .filter(|n| names.is_empty() || names.contains(n))
            .collect();
        let ctx = Ctx::new(self.group, self.width_cap, self.samples, self.seed, &self.leq);
        Ok(selected
            .par_iter()
            .map(|&name| {
                let start = Instant::now();
                let tally = checks::run(&ctx, name);
                CheckResult {
                    name,
                    group: self.group.name().to_string(),
                    universe: tally.universe,
                    failure_count: tally.count,
                    failures: tally.into_rendered(),
                    elapsed: start.elapsed(),
                }
            })
            .collect())
    }
}

/// Runs the named checks (all when empty) with the true Bruhat order.
pub fn run_suite(group: &CoxeterGroup, width_cap: usize, names: &[&str]) -> Result<Vec<CheckResult>> {
    Verifier::new(group, width_cap).run(names)
}

/// Tab-separated report with a header row. Elapsed times are included only
/// when `timings` is set, so the default report is reproducible byte for
/// byte.
pub fn report_tsv(results: &[CheckResult], timings: bool) -> String {
    let mut out = String::from("check\tgroup\tuniverse\tfailures\tstatus");
    if timings {
        out.push_str("\telapsed_ms");
    }
    out.push('\n');
    for r in results {
        write!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.name,
            r.group,
            r.universe,
            r.failure_count,
            if r.passed() { "pass" } else { "FAIL" }
        )
        .expect("writing to a String");
        if timings {
            write!(out, "\t{}", r.elapsed.as_millis()).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Human-readable summary listing counterexamples of failed checks.
pub fn summary(results: &[CheckResult]) -> String {
    let mut out = String::new();
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.passed()).collect();
    let tuples: u64 = results.iter().map(|r| r.universe).sum();
    for r in &failed {
        writeln!(out, "FAIL {} on {}: {} of {} tuples", r.name, r.group, r.failure_count, r.universe)
            .expect("writing to a String");
        for f in &r.failures {
            writeln!(out, "  {f}").expect("writing to a String");
        }
        if r.failure_count as usize > r.failures.len() {
            writeln!(out, "  ... {} more", r.failure_count as usize - r.failures.len())
                .expect("writing to a String");
        }
    }
    writeln!(
        out,
        "{} of {} checks passed ({} tuples tested)",
        results.len() - failed.len(),
        results.len(),
        tuples
    )
    .expect("writing to a String");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_suite_passes() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let results = run_suite(&g, 6, &[]).unwrap();
        assert_eq!(results.len(), CHECKS.len());
        for r in &results {
            assert!(r.passed(), "{}", summary(&results));
            assert!(r.universe > 0, "{} tested nothing", r.name);
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let err = run_suite(&g, 4, &["length-order", "no-such-check"]).unwrap_err();
        assert!(matches!(err, Error::UnknownCheckName(ref n) if n == "no-such-check"));
    }

    #[test]
    fn selection_follows_check_order() {
        let g = CoxeterGroup::preset("A2").unwrap();
        let names: Vec<_> = run_suite(&g, 4, &["length-order", "bruhat-subword"])
            .unwrap()
            .iter()
            .map(|r| r.name)
            .collect();
        assert_eq!(names, ["bruhat-subword", "length-order"]);
    }

    #[test]
    fn faulty_comparator_is_caught() {
        let g = CoxeterGroup::preset("B2").unwrap();
        let results = Verifier::new(&g, 6)
            .with_comparator(Arc::new(|_: &CoxeterGroup, x: Element, y: Element| x.index() <= y.index()))
            .run(&["bruhat-subword", "bruhat-reduced-paths", "length-order"])
            .unwrap();
        assert!(!results[0].passed());
        assert!(!results[1].passed());
        assert!(results[1].failures.len() <= MAX_RENDERED);
        let text = summary(&results);
        assert!(text.contains("FAIL bruhat-reduced-paths on B2"));
    }

    #[test]
    fn report_is_deterministic() {
        let g = CoxeterGroup::preset("B2").unwrap();
        let a = report_tsv(&run_suite(&g, 5, &[]).unwrap(), false);
        let b = report_tsv(&run_suite(&g, 5, &[]).unwrap(), false);
        assert_eq!(a, b);
        assert!(a.starts_with("check\tgroup\tuniverse\tfailures\tstatus\n"));
        assert_eq!(a.lines().count(), CHECKS.len() + 1);
    }

    #[test]
    fn manifest_lists_every_check() {
        let m = manifest();
        assert_eq!(m.lines().count(), CHECKS.len() + 1);
        let mut names: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }
}

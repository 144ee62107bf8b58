//! Acceptance run: every criterion at its stated tolerance and time budget.
//! Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use verlinde_lab::fusion::{mckay_graph, VerObject};
use verlinde_lab::verify::{run, Config, Report, Suite, SuiteReport};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    suites: &'static [Suite],
    /// Extra structural checks on the reports, e.g. instance counts.
    extra: fn(&[SuiteReport]) -> Result<(), String>,
}

fn report<'a>(reports: &'a [SuiteReport], property_prefix: &str) -> Result<&'a Report, String> {
    reports
        .iter()
        .flat_map(|s| &s.reports)
        .find(|r| r.property.starts_with(property_prefix))
        .ok_or_else(|| format!("no report for {property_prefix:?}"))
}

fn expect_instances(reports: &[SuiteReport], prefix: &str, at_least: u64) -> Result<(), String> {
    let r = report(reports, prefix)?;
    if r.instances >= at_least {
        Ok(())
    } else {
        Err(format!("{:?} ran {} instances, expected at least {at_least}", r.property, r.instances))
    }
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "fusion rule equals semisimplified oracle tensor, p ∈ {2,3,5,7}",
            budget: Duration::from_secs(60),
            suites: &[Suite::FusionOracle],
            extra: |r| {
                // all (p-1)^2 simple pairs and 50 random pairs per prime
                expect_instances(r, "semisimplify(lift L_i", 1 + 4 + 16 + 36)?;
                expect_instances(r, "semisimplify(lift X", 200)
            },
        },
        Criterion {
            id: 2,
            title: "FPdim is a ring homomorphism, p ≤ 13, exact",
            budget: Duration::from_secs(60),
            suites: &[Suite::FpdimHom],
            extra: |r| {
                expect_instances(r, "fpdim(X ⊗ Y)", 200)?;
                expect_instances(r, "fpdim(X ⊕ Y)", 200)
            },
        },
        Criterion {
            id: 3,
            title: "δ multiplicative, congruent mod p, bounded below, second identity",
            budget: Duration::from_secs(300),
            suites: &[Suite::Delta],
            extra: |r| expect_instances(r, "δ(S²V)", 40),
        },
        Criterion {
            id: 4,
            title: "ad(L_i) = i, alternating powers of sums, ad sub-multiplicative and additive",
            budget: Duration::from_secs(300),
            suites: &[Suite::Alt],
            extra: |r| {
                expect_instances(r, "ad(L_i) = i", 2 + 4)?;
                expect_instances(r, "ad(L_i ⊗ L_j)", 4 + 16)?;
                expect_instances(r, "ad(L_i ⊕ L_j)", 4 + 16)
            },
        },
        Criterion {
            id: 5,
            title: "p-adic dimension equals ad, digit extraction round-trips",
            budget: Duration::from_secs(300),
            suites: &[Suite::Padic],
            extra: |r| {
                expect_instances(r, "padic_dimension_of", 50)?;
                expect_instances(r, "digit extraction", 100)
            },
        },
        Criterion {
            id: 6,
            title: "Frobenius table, collapse, enhanced restriction, monoidality, p ∈ {3,5,7}",
            budget: Duration::from_secs(10),
            suites: &[Suite::Frobenius],
            extra: |r| expect_instances(r, "Fr(L_i ⊗ L_j)", 4 + 16 + 36),
        },
        Criterion {
            id: 7,
            title: "Fr_+^(2) and Fr_+ ∘ Fr_+ agree on small modules",
            budget: Duration::from_secs(600),
            suites: &[Suite::FrPlus],
            extra: |r| expect_instances(r, "Fr_+^{(2)}", 2 * (5 + 3)),
        },
        Criterion {
            id: 8,
            title: "sd of trivial modules, sd ≤ ad",
            budget: Duration::from_secs(120),
            suites: &[Suite::Sd],
            extra: |r| expect_instances(r, "sd(k^m) = m", 2 * 12),
        },
        Criterion {
            id: 9,
            title: "greedy chain to ρ, James envelope, faithfulness bound",
            budget: Duration::from_secs(120),
            suites: &[Suite::Partitions],
            extra: |r| expect_instances(r, "sasha_bound", 20),
        },
        Criterion {
            id: 10,
            title: "McKay graph of L_2 is A_4 at p = 5 and A_6 at p = 7",
            budget: Duration::from_secs(10),
            suites: &[Suite::Mckay],
            extra: |_| {
                for (p, n) in [(5u32, 4usize), (7, 6)] {
                    let g = mckay_graph(&VerObject::simple(p, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    if !(g.is_path() && g.vertices.len() == n && g.edges.len() == 2 * (n - 1)) {
                        return Err(format!("p={p}: {g:?}"));
                    }
                }
                Ok(())
            },
        },
    ]
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let mut all_passed = true;
    for c in criteria() {
        let start = Instant::now();
        let outcome = c
            .suites
            .iter()
            .map(|&s| run(s, &cfg).map_err(|e| format!("{s}: {e}")))
            .collect::<Result<Vec<_>, _>>();
        let elapsed = start.elapsed();
        let verdict = outcome.and_then(|reports| {
            (c.extra)(&reports)?;
            let failures: Vec<String> = reports
                .iter()
                .flat_map(|s| &s.reports)
                .flat_map(|r| r.failures.iter().map(move |f| format!("{}: {f}", r.property)))
                .collect();
            if !failures.is_empty() {
                return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
            }
            if elapsed > c.budget {
                return Err(format!("took {elapsed:.1?}, budget {:?}", c.budget));
            }
            Ok(reports.iter().flat_map(|s| &s.reports).map(|r| r.instances).sum::<u64>())
        });
        match verdict {
            Ok(instances) => println!("PASS criterion {:>2}: {} [{instances} instances, {elapsed:.2?}]", c.id, c.title),
            Err(why) => {
                all_passed = false;
                println!("FAIL criterion {:>2}: {} [{elapsed:.2?}] {why}", c.id, c.title);
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

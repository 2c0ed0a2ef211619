//! Bundled scenario catalog: named instances with expected-property checks.
//!
//! Each scenario wraps one of the JSON instances shipped in `instances/`
//! plus a list of named checks with tolerances; `tradeoff-lab examples
//! --run <name>` evaluates them and exits nonzero on any failure.

use serde::Serialize;

use crate::disturbance::cw_sandwich_check;
use crate::harness::{analyze, AnalyzeConfig, Instance, TradeoffReport};
use crate::{Error, Result};

use super::schema::parse_instance;

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub instance_json: &'static str,
}

pub fn catalog() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "vonneumann_orthogonal",
            description: "uniform orthogonal pair + matching von Neumann: perfect average \
                          fidelity yet maximal quantum disturbance",
            instance_json: include_str!("../../instances/vonneumann_orthogonal.json"),
        },
        Scenario {
            name: "vonneumann_nonorthogonal",
            description: "uniform {|0>, |+>} + von Neumann: irreducible source, all \
                          disturbance notions equivalent",
            instance_json: include_str!("../../instances/vonneumann_nonorthogonal.json"),
        },
        Scenario {
            name: "cw_qubit",
            description: "eigenbasis+MUB ensemble of I/2: entropy-defect loss sandwiches \
                          quantum disturbance",
            instance_json: include_str!("../../instances/cw_qubit.json"),
        },
        Scenario {
            name: "depolarizing",
            description: "one-outcome completely depolarizing instrument: coherent \
                          information -1, disturbance exceeds input entropy",
            instance_json: include_str!("../../instances/depolarizing.json"),
        },
        Scenario {
            name: "unitary_branches",
            description: "unitary-weighted branches: exactly recoverable, zero information \
                          gain and disturbance",
            instance_json: include_str!("../../instances/unitary_branches.json"),
        },
        Scenario {
            name: "weak_irreducible",
            description: "p = (0.99, 0.01) over {|0>, |+>}: irreducible but weakly so, the \
                          f-bound degrades gracefully",
            instance_json: include_str!("../../instances/weak_irreducible.json"),
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioCheck {
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub scenario: String,
    pub checks: Vec<ScenarioCheck>,
    pub report: TradeoffReport,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("scenario {}\n", self.scenario);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<52} observed {:+.6e} (tol {:.0e}) {}\n",
                c.name,
                c.observed,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn approx(name: &str, got: f64, want: f64, tol: f64) -> ScenarioCheck {
    ScenarioCheck {
        name: name.to_string(),
        passed: (got - want).abs() <= tol,
        observed: got - want,
        tolerance: tol,
    }
}

fn at_least(name: &str, slack: f64, tol: f64) -> ScenarioCheck {
    ScenarioCheck {
        name: name.to_string(),
        passed: slack >= -tol,
        observed: slack,
        tolerance: tol,
    }
}

fn exact_zero(name: &str, got: f64) -> ScenarioCheck {
    ScenarioCheck {
        name: name.to_string(),
        passed: got == 0.0,
        observed: got,
        tolerance: 0.0,
    }
}

fn scenario_checks(name: &str, instance: &Instance, report: &TradeoffReport) -> Result<Vec<ScenarioCheck>> {
    let mut checks = Vec::new();
    match name {
        "vonneumann_orthogonal" => {
            let f_av = report.f_av.ok_or_else(|| {
                Error::InternalError("pure scenario must report f_av".into())
            })?;
            checks.push(approx("f_av = 1", f_av, 1.0, 1e-6));
            checks.push(approx("I(X:X̂) = 1 bit", report.mutual_info, 1.0, 1e-9));
            checks.push(approx("δ = 1 bit", report.delta, 1.0, 1e-9));
            checks.push(approx("ι = 1 bit", report.iota, 1.0, 1e-9));
            checks.push(approx(
                "single-Kraus equality |δ - ι|",
                report.slacks.eq18,
                0.0,
                1e-8,
            ));
            checks.push(exact_zero("ζ = 0 exactly", report.zeta.unwrap_or(f64::NAN)));
        }
        "vonneumann_nonorthogonal" => {
            let f_av = report.f_av.unwrap_or(f64::NAN);
            checks.push(at_least("f_av strictly below 1", 1.0 - 1e-3 - f_av, 0.0));
            checks.push(approx(
                "ζ = √2/8",
                report.zeta.unwrap_or(f64::NAN),
                2f64.sqrt() / 8.0,
                1e-9,
            ));
            let theo = report.theorem_one.as_ref().expect("pure ensemble");
            checks.push(at_least("theorem-1a slack", theo.slack_a, 1e-7));
            checks.push(at_least("theorem-1b slack", theo.slack_b, 1e-7));
            if theo.rhs_applicable {
                checks.push(at_least(
                    "theorem-1c slack (applicable)",
                    theo.slack_c.unwrap_or(f64::NEG_INFINITY),
                    1e-7,
                ));
            }
        }
        "cw_qubit" => {
            let rho = instance.ensemble.average_state();
            let (lo, hi) = cw_sandwich_check(&rho, &instance.instrument)?;
            checks.push(at_least("sandwich Δχ ≤ δ", lo, 1e-7));
            checks.push(at_least("sandwich δ ≤ 2Δχ", hi, 1e-7));
            checks.push(approx("δ = 1 bit", report.delta, 1.0, 1e-9));
        }
        "depolarizing" => {
            checks.push(approx("δ = 2 bits (I_c = -1)", report.delta, 2.0, 1e-9));
            checks.push(approx("ι = 0", report.iota, 0.0, 1e-9));
            checks.push(approx("f_e = 1/4", report.f_e, 0.25, 1e-6));
            checks.push(ScenarioCheck {
                name: "δ exceeds S(ϱ_s), surfaced not asserted".into(),
                passed: report.delta_exceeds_input_entropy,
                observed: report.delta - report.input_entropy,
                tolerance: 0.0,
            });
        }
        "unitary_branches" => {
            checks.push(at_least("f_e ≥ 1 - 1e-5", report.f_e - (1.0 - 1e-5), 0.0));
            let f_av = report.f_av.unwrap_or(f64::NAN);
            checks.push(at_least("f_av ≥ 1 - 1e-5", f_av - (1.0 - 1e-5), 0.0));
            checks.push(approx("δ = 0", report.delta, 0.0, 1e-9));
            checks.push(approx("ι = 0", report.iota, 0.0, 1e-9));
        }
        "weak_irreducible" => {
            checks.push(approx(
                "ζ = (√2/4)·0.01",
                report.zeta.unwrap_or(f64::NAN),
                2f64.sqrt() / 4.0 * 0.01,
                1e-9,
            ));
            let theo = report.theorem_one.as_ref().expect("pure ensemble");
            checks.push(at_least("theorem-1a slack", theo.slack_a, 1e-7));
            checks.push(at_least("theorem-1b slack", theo.slack_b, 1e-7));
            if theo.rhs_applicable {
                checks.push(at_least(
                    "theorem-1c slack (applicable)",
                    theo.slack_c.unwrap_or(f64::NEG_INFINITY),
                    1e-7,
                ));
            }
        }
        other => {
            return Err(Error::Unknown {
                kind: "scenario",
                name: other.to_string(),
            })
        }
    }
    Ok(checks)
}

pub fn run_scenario(name: &str) -> Result<ScenarioOutcome> {
    let scenario = catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Unknown {
            kind: "scenario",
            name: name.to_string(),
        })?;
    let instance = parse_instance(scenario.instance_json)?;
    let report = analyze(&instance, &AnalyzeConfig::default())?;
    let checks = scenario_checks(name, &instance, &report)?;
    Ok(ScenarioOutcome {
        scenario: name.to_string(),
        checks,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_six_entries() {
        let names: Vec<&str> = catalog().iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            vec![
                "vonneumann_orthogonal",
                "vonneumann_nonorthogonal",
                "cw_qubit",
                "depolarizing",
                "unitary_branches",
                "weak_irreducible"
            ]
        );
    }

    #[test]
    fn bundled_instances_parse() {
        for s in catalog() {
            let inst = parse_instance(s.instance_json)
                .unwrap_or_else(|e| panic!("{} failed to parse: {e}", s.name));
            assert_eq!(inst.ensemble.d(), inst.instrument.in_dim());
        }
    }

    #[test]
    fn unknown_scenario_rejected() {
        assert!(matches!(
            run_scenario("nope"),
            Err(Error::Unknown { .. })
        ));
    }
}

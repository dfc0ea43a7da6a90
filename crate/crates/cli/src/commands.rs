use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use comvar::bounds::{classify, search_with_top, vmpq_report};
use comvar::pluecker::{self, gamma, MatrixPencil};
use comvar::pointcount::{
    count_table, estimate_dimension, verify_example_a, verify_involution, PointCountTable,
    VarietyId,
};
use comvar::spectral::spectral_data;
use comvar::{FieldMatrix, Modulus};

use crate::args::{Command, VarietyKind};
use crate::input::parse_matrices;
use crate::CliError;

/// A command result and whether its checks passed.
pub struct Outcome {
    pub result: Value,
    pub verified: bool,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Result<Self, CliError> {
        Self::checked(result, true)
    }

    fn checked(result: impl Serialize, verified: bool) -> Result<Self, CliError> {
        Ok(Self {
            result: serde_json::to_value(result).map_err(CliError::internal)?,
            verified,
        })
    }
}

pub fn dispatch(cmd: &Command, budget: u64, seed: u64) -> Result<Outcome, CliError> {
    match cmd {
        Command::Bound { composition, n } => {
            if let Some(n) = n {
                if *n != composition.n() {
                    return Err(CliError::Config(format!(
                        "composition {composition} sums to {}, not {n}",
                        composition.n()
                    )));
                }
            }
            let cert = classify(composition);
            let mut v = serde_json::to_value(&cert).map_err(CliError::internal)?;
            v["exceeds_ct0_directly"] = json!(cert.exceeds_ct0_directly());
            v["exceeds_ct0_with_orbit"] = json!(cert.exceeds_ct0_with_orbit());
            Outcome::ok(v)
        }
        Command::Search { n, top } => Outcome::ok(search_with_top(*n, *top)?),
        Command::Count {
            variety,
            n,
            composition,
            m,
            p,
            q,
            rank_a,
            rank_b,
            primes,
        } => {
            let kind = clap::ValueEnum::to_possible_value(variety)
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            let need = |v: Option<usize>, name: &str| {
                v.ok_or_else(|| CliError::Config(format!("--variety {kind} needs --{name}")))
            };
            let id = match variety {
                VarietyKind::Nt => VarietyId::Nt { n: need(*n, "n")? },
                VarietyKind::Ct => VarietyId::Ct { n: need(*n, "n")? },
                VarietyKind::NtJ => {
                    let composition = composition
                        .clone()
                        .ok_or_else(|| CliError::Config("--variety nt-j needs --composition".into()))?;
                    if n.is_some_and(|n| n != composition.n()) {
                        return Err(CliError::Config(format!(
                            "composition {composition} does not sum to {}",
                            n.unwrap_or_default()
                        )));
                    }
                    VarietyId::NtBlock { composition }
                }
                VarietyKind::Vmpq => VarietyId::Vmpq {
                    m: need(*m, "m")?,
                    p: need(*p, "p")?,
                    q: need(*q, "q")?,
                    rank_cap_a: *rank_a,
                    rank_cap_b: *rank_b,
                },
            };
            let table = count_table(id, primes, budget)?;
            let estimate = estimate_dimension(&table).ok();
            Outcome::ok(json!({ "table": table, "estimate": estimate }))
        }
        Command::ExampleA { q } => {
            let r = verify_example_a(*q, budget)?;
            Outcome::checked(r, r.uncovered == 0)
        }
        Command::Lemma11 {
            m,
            p,
            q,
            verify,
            primes,
        } => lemma11(*m, *p, *q, verify.then_some(primes.as_slice()), budget),
        Command::Spectral { matrix } => {
            let ms = read_matrices(matrix)?;
            let x = &ms[0];
            let y = ms.get(1).unwrap_or(x);
            Outcome::ok(spectral_data(x, y)?)
        }
        Command::Gamma { pair } => {
            let ms = read_matrices(pair)?;
            let [x, y] = &ms[..] else {
                return Err(CliError::Config("gamma needs two matrices".into()));
            };
            let pencil = MatrixPencil::new(x.clone(), y.clone())?;
            let commutator = FieldMatrix::commutator(x, y).map_err(CliError::internal)?;
            let (coords, residuals) = match gamma(&pencil) {
                Ok(v) => {
                    let r = v.image_equation_residuals();
                    (Some(v), Some(r))
                }
                Err(pluecker::PlueckerError::Degenerate) => (None, None),
                Err(e) => return Err(e.into()),
            };
            let agrees = residuals.as_ref().map_or(true, |r| *r == commutator);
            Outcome::checked(
                json!({
                    "n": pencil.n(),
                    "in_c0": pencil.in_c0(),
                    "commutes": pencil.commutes(),
                    "gamma": coords,
                    "residuals": residuals,
                    "commutator": commutator,
                    "residuals_match_commutator": agrees,
                }),
                agrees,
            )
        }
        Command::ExampleE { q } => {
            let r = pluecker::verify_example_e(*q)?;
            let ok = r.all_equal;
            Outcome::checked(r, ok)
        }
        Command::Gamma4 { q } => {
            let r = pluecker::verify_gamma4_image(*q)?;
            Outcome::checked(r, r.holds())
        }
        Command::Involution { n, q, samples } => {
            if *n == 0 {
                return Err(CliError::Config("--n must be positive".into()));
            }
            let r = verify_involution(*n, *q, *samples, seed, budget)?;
            Outcome::checked(r, r.holds())
        }
    }
}

fn read_matrices(path: &Path) -> Result<Vec<FieldMatrix>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_matrices(&text)
}

#[derive(Serialize)]
struct StratumCheck {
    a: usize,
    b: usize,
    dim: u64,
    estimated_dim: Option<i64>,
    consistent: bool,
    table: PointCountTable,
}

fn lemma11(
    m: usize,
    p: usize,
    q: usize,
    primes: Option<&[Modulus]>,
    budget: u64,
) -> Result<Outcome, CliError> {
    let report = vmpq_report(m, p, q)?;
    let ci_dims_agree = !report.is_complete_intersection
        || report
            .components
            .iter()
            .all(|c| c.dim == report.expected_dim());
    let Some(primes) = primes else {
        return Outcome::checked(
            json!({ "report": report, "ci_dims_agree": ci_dims_agree }),
            ci_dims_agree,
        );
    };

    let full = count_table(
        VarietyId::Vmpq {
            m,
            p,
            q,
            rank_cap_a: None,
            rank_cap_b: None,
        },
        primes,
        budget,
    )?;
    let full_estimate = estimate_dimension(&full).ok();
    let full_ok = full_estimate
        .as_ref()
        .is_some_and(|e| e.consistent && e.estimated_dim == report.dim() as i64);

    let mut strata = Vec::new();
    for c in &report.components {
        let table = count_table(
            VarietyId::Vmpq {
                m,
                p,
                q,
                rank_cap_a: Some(c.a),
                rank_cap_b: Some(c.b),
            },
            primes,
            budget,
        )?;
        let est = estimate_dimension(&table).ok();
        strata.push(StratumCheck {
            a: c.a,
            b: c.b,
            dim: c.dim,
            estimated_dim: est.as_ref().map(|e| e.estimated_dim),
            consistent: est.as_ref().is_some_and(|e| e.consistent),
            table,
        });
    }
    let strata_ok = strata
        .iter()
        .all(|s| s.estimated_dim == Some(s.dim as i64));
    let verified = ci_dims_agree && full_ok && strata_ok;
    Outcome::checked(
        json!({
            "report": report,
            "ci_dims_agree": ci_dims_agree,
            "full": { "dim": report.dim(), "estimate": full_estimate, "table": full },
            "strata": strata,
            "dims_agree": full_ok && strata_ok,
        }),
        verified,
    )
}

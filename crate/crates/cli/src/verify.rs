use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use jetforge_core::connection::{
    build_xi, check_right_equivariance, is_flat_along, series_oracle, ConnectionChart,
};
use jetforge_core::hodge::{alpha, alpha_via_oracle, check_hr1, eta_chartlocal};
use jetforge_core::jet_algebra::JetPoint;
use jetforge_core::{random, rational, JetError, Rational, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub struct Report {
    pub value: Value,
    pub failed: bool,
}

const CHECKS: [&str; 5] = [
    "alpha_dual_route",
    "dual_route",
    "equivariance",
    "flatness",
    "hr1",
];

fn pick_basepoint<R: Rng>(
    chart: &ConnectionChart,
    rng: &mut R,
    case: usize,
) -> Result<Vec<Rational>> {
    let named: Vec<&Vec<Rational>> = chart.basepoints().values().collect();
    if !named.is_empty() {
        return Ok(named[case % named.len()].clone());
    }
    for _ in 0..64 {
        let p = random::point(rng, chart.n());
        if chart.check_point(&p).is_ok() {
            return Ok(p);
        }
    }
    Err(JetError::SingularPoint(
        "no regular base point found".into(),
    ))
}

fn run_case(
    chart: &ConnectionChart,
    seed: u64,
    case: usize,
    max_order: u32,
) -> Result<(Value, BTreeMap<&'static str, Outcome>)> {
    let mut rng = random::seeded(seed.wrapping_add(case as u64));
    let s = pick_basepoint(chart, &mut rng, case)?;
    let dims = 1 + case % 2;
    let order = 1 + (case as u32) % max_order.max(1);
    let sigma: JetPoint = random::jet(&mut rng, &s, dims, order);
    let m = chart.m();
    let init = random::invertible_matrix(&mut rng, m);
    let a = random::invertible_matrix(&mut rng, m);

    let mut out = BTreeMap::new();
    let table = build_xi(chart, order);
    let f = table.beta(chart, &sigma, &init)?;
    out.insert(
        "dual_route",
        Outcome::of(series_oracle(chart, &sigma, &init)? == f),
    );
    out.insert(
        "equivariance",
        Outcome::of(check_right_equivariance(chart, &sigma, &init, &a)?),
    );
    out.insert("flatness", Outcome::of(is_flat_along(chart, &sigma, &f)?));
    out.insert(
        "alpha_dual_route",
        Outcome::of(alpha(chart, &sigma, &init)? == alpha_via_oracle(chart, &sigma, &init)?),
    );
    let hr1 = if chart.gram_is_flat() && chart.frame_satisfies_hr1() {
        match eta_chartlocal(chart, &sigma) {
            Ok(w) => Outcome::of(check_hr1(&chart.hodge_data(), &w.flag)),
            Err(JetError::NoRationalFvPoint(_)) => Outcome::Skipped,
            Err(e) => return Err(e),
        }
    } else {
        Outcome::Skipped
    };
    out.insert("hr1", hr1);
    let value = json!({
        "index": case,
        "dims": dims,
        "order": order,
        "basepoint": s.iter().map(rational::format).collect::<Vec<_>>(),
        "checks": out.iter().map(|(k, v)| (k.to_string(), json!(v.label()))).collect::<serde_json::Map<_, _>>(),
    });
    Ok((value, out))
}

/// Runs every case (in parallel) and merges the results by case index.
pub fn verify(chart: &ConnectionChart, seed: u64, cases: usize, max_order: u32) -> Result<Report> {
    let integrable = chart.is_integrable();
    let results: Vec<Result<(Value, BTreeMap<&'static str, Outcome>)>> = if integrable {
        (0..cases)
            .into_par_iter()
            .map(|k| run_case(chart, seed, k, max_order))
            .collect()
    } else {
        Vec::new()
    };
    let mut case_values = Vec::with_capacity(results.len());
    let mut summary: BTreeMap<&str, BTreeMap<&str, usize>> = CHECKS
        .iter()
        .map(|&c| {
            (
                c,
                ["fail", "pass", "skipped"]
                    .iter()
                    .map(|&o| (o, 0))
                    .collect(),
            )
        })
        .collect();
    let mut failed = !integrable;
    for r in results {
        let (value, outcomes) = r?;
        for (name, o) in outcomes {
            *summary
                .get_mut(name)
                .expect("known check")
                .get_mut(o.label())
                .expect("label") += 1;
            failed |= o == Outcome::Fail;
        }
        case_values.push(value);
    }
    Ok(Report {
        value: json!({
            "seed": seed,
            "max_order": max_order,
            "integrable": integrable,
            "cases": case_values,
            "summary": summary,
            "ok": !failed,
        }),
        failed,
    })
}

//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use umbracal::verify::{self, Check};

struct Criterion {
    id: u32,
    title: &'static str,
    checks: fn() -> Vec<Check>,
}

fn one(c: Check) -> Vec<Check> {
    vec![c]
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Hermite number listings, exact",
        checks: verify::hermite_number_checks,
    },
    Criterion {
        id: 2,
        title: "Newton binomial, umbral vs direct, 100 seeded points",
        checks: || one(verify::newton_binomial_check()),
    },
    Criterion {
        id: 3,
        title: "Mellin transform of the Gaussian",
        checks: verify::mellin_checks,
    },
    Criterion {
        id: 4,
        title: "quartic Gaussian integral",
        checks: || one(verify::quartic_check()),
    },
    Criterion {
        id: 5,
        title: "projected super-Gaussian integral",
        checks: verify::super_gaussian_checks,
    },
    Criterion {
        id: 6,
        title: "erf series vs quadrature, N = 60",
        checks: || vec![verify::erf_check(), verify::erf_symmetry_check()],
    },
    Criterion {
        id: 7,
        title: "repeated-derivative series",
        checks: verify::derivative_series_checks,
    },
    Criterion {
        id: 8,
        title: "Gabor Hermite series vs direct transform, N = 40",
        checks: verify::gabor_checks,
    },
    Criterion {
        id: 9,
        title: "Airy-exponential identity and Ai(0)",
        checks: || {
            verify::airy_checks()
                .into_iter()
                .filter(|c| c.name != "airy_integral")
                .collect()
        },
    },
    Criterion {
        id: 10,
        title: "multinomial expansion vs three-variable Hermite",
        checks: || one(verify::multinomial_check()),
    },
    Criterion {
        id: 11,
        title: "heat equation solvers",
        checks: || {
            let mut v = vec![verify::heat_closed_form_check()];
            v.extend(verify::heat_airy_checks());
            v.push(verify::semigroup_check());
            v.extend(verify::quartic_checks());
            v
        },
    },
    Criterion {
        id: 12,
        title: "lacunary routes and figure sweep",
        checks: || {
            let mut v = verify::lacunary_route_checks();
            v.push(verify::lacunary_figure_check());
            v
        },
    },
    Criterion {
        id: 13,
        title: "heat polynomials by finite differences",
        checks: || one(verify::heat_polynomial_check()),
    },
];

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let checks = (c.checks)();
        let ok = checks.iter().all(|k| k.passed);
        println!(
            "criterion {:>2} {}: {} ({:.2?})",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            start.elapsed()
        );
        for k in &checks {
            println!("    {k}");
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}

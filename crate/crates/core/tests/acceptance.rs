//! Acceptance gate: one PASS/FAIL line per criterion, followed by indented details.
//!
//! Every comparison is exact rational equality. The process exits nonzero when a
//! failure appears that is not in `KNOWN_TABLE_CONFLICTS`.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;

use spinh::checks::{self, CheckOutcome};
use spinh::closed_forms::genus_one_closed;
use spinh::cohft::omega_integral;
use spinh::golden::{appendix_b, compare_appendix_b};
use spinh::hurwitz::{piecewise_polynomiality_probe, quasi_polynomiality_probe};
use spinh::rational::{q, qi, Q};
use spinh::Partition;

const TOLERANCE: &str = "tolerance 0 (exact rational equality)";

/// Published cells that differ from the value all independent routes agree on.
/// The first eleven are genus-zero two-part cells. Characters, recursion and ELSV agree
/// there on `(2s/|μ|) ∏ μ_i^{⌊μ_i/2s⌋}/⌊μ_i/2s⌋!`, while the table entries match
/// the same product with ceilings. The last is a genus-one cell where characters,
/// recursion and the closed genus-one formula all give 3645/16.
const KNOWN_TABLE_CONFLICTS: [(u32, u32, &[u32]); 12] = [
    (2, 0, &[3, 1]),
    (2, 0, &[5, 1]),
    (2, 0, &[3, 3]),
    (2, 0, &[5, 3]),
    (2, 0, &[5, 5]),
    (4, 0, &[3, 1]),
    (4, 0, &[7, 1]),
    (4, 0, &[5, 3]),
    (4, 0, &[9, 3]),
    (4, 0, &[7, 5]),
    (4, 0, &[9, 7]),
    (2, 1, &[9]),
];

fn is_known(r: u32, g: u32, mu: &Partition) -> bool {
    KNOWN_TABLE_CONFLICTS
        .iter()
        .any(|&(kr, kg, km)| kr == r && kg == g && km == mu.parts())
}

#[derive(Default)]
struct Gate {
    passed: usize,
    total: usize,
    unexpected: usize,
}

impl Gate {
    /// Prints the criterion line; `failures` are `(description, known)` pairs.
    fn criterion(
        &mut self,
        id: &str,
        title: &str,
        cases: usize,
        failures: &[(String, bool)],
        started: Instant,
    ) {
        self.total += 1;
        let ok = failures.is_empty() && cases > 0;
        if ok {
            self.passed += 1;
        }
        println!(
            "[{}] {id}. {title}: {}/{} cases, {TOLERANCE}, {:.1}s",
            if ok { "PASS" } else { "FAIL" },
            cases - failures.len().min(cases),
            cases,
            started.elapsed().as_secs_f64()
        );
        for (what, known) in failures {
            println!(
                "       {} {what}",
                if *known {
                    "known conflict:"
                } else {
                    "UNEXPECTED:"
                }
            );
            if !known {
                self.unexpected += 1;
            }
        }
        if cases == 0 {
            println!("       UNEXPECTED: no cases ran");
            self.unexpected += 1;
        }
    }

    fn sub(&self, ok: bool, what: &str) {
        println!("       {} {what}", if ok { "ok  " } else { "FAIL" });
    }
}

fn unexpected(outcome: &CheckOutcome) -> Vec<(String, bool)> {
    outcome
        .failures
        .iter()
        .map(|f| (format!("{}: {f}", outcome.name), false))
        .collect()
}

fn merge(outcomes: &[CheckOutcome]) -> (usize, Vec<(String, bool)>) {
    (
        outcomes.iter().map(|o| o.cases).sum(),
        outcomes.iter().flat_map(unexpected).collect(),
    )
}

fn criterion_1(gate: &mut Gate) {
    let t = Instant::now();
    let rows = compare_appendix_b().expect("golden comparison");
    let failures: Vec<(String, bool)> = rows
        .iter()
        .filter(|c| !c.matches())
        .map(|c| {
            let computed = match &c.computed {
                Ok(v) => v.to_string(),
                Err(e) => e.to_string(),
            };
            (
                format!(
                    "r={} g={} μ={}: table {}, characters {}",
                    c.cell.r, c.cell.g, c.cell.mu, c.cell.value, computed
                ),
                is_known(c.cell.r, c.cell.g, &c.cell.mu),
            )
        })
        .collect();
    gate.criterion(
        "1",
        "published single-number tables via characters",
        rows.len(),
        &failures,
        t,
    );
    let pick = |r: u32, g: u32, mu: &[u32]| {
        rows.iter()
            .find(|c| c.cell.r == r && c.cell.g == g && c.cell.mu.parts() == mu)
            .expect("cell present")
    };
    for (r, g, mu, value) in [
        (2, 2, &[5][..], q(5975, 144)),
        (4, 2, &[13], q(12793131, 80)),
        (2, 0, &[5, 5, 5], q(15625, 2)),
    ] {
        let c = pick(r, g, mu);
        gate.sub(
            c.matches() && c.cell.value == value,
            &format!("r={r} g={g} μ={} = {value}", c.cell.mu),
        );
    }
}

fn criterion_2(gate: &mut Gate) {
    let t = Instant::now();
    let r2 = checks::recursion_vs_characters(&[
        (0, 1, 2, 9),
        (1, 1, 2, 9),
        (2, 1, 2, 9),
        (0, 2, 2, 10),
        (1, 2, 2, 10),
        (0, 3, 2, 15),
    ])
    .expect("r = 2 recursion");
    let r4 =
        checks::recursion_vs_characters(&[(0, 1, 4, 19), (1, 1, 4, 19)]).expect("r = 4 recursion");
    let (cases, failures) = merge(&[r2, r4]);
    gate.criterion(
        "2",
        "topological recursion equals characters",
        cases,
        &failures,
        t,
    );
}

fn criterion_3(gate: &mut Gate) {
    let t = Instant::now();
    let triple = checks::one_part_routes(2, 19, &[2, 4, 6]).expect("one-part routes");
    let (mut cases, mut failures) = merge(&[triple]);
    for cell in appendix_b()
        .expect("golden data")
        .iter()
        .filter(|c| c.g == 1 && c.mu.len() == 1)
    {
        cases += 1;
        let closed = genus_one_closed(cell.mu.parts()[0], cell.r).expect("genus-one formula");
        if closed != cell.value {
            failures.push((
                format!(
                    "genus-one formula r={} μ={}: table {}, formula {closed}",
                    cell.r, cell.mu, cell.value
                ),
                is_known(cell.r, cell.g, &cell.mu),
            ));
        }
    }
    gate.criterion(
        "3",
        "finite-difference, Stirling and character routes; genus-one formula vs table",
        cases,
        &failures,
        t,
    );
}

fn criterion_4(gate: &mut Gate) {
    let t = Instant::now();
    let elsv = checks::elsv_vs_characters(2, 2, 9, &[2, 4]).expect("ELSV sweep");
    let (mut cases, mut failures) = merge(&[elsv]);
    for s in 1..=3u32 {
        let r = 2 * s;
        let with_psi = omega_integral(1, &[0], r, &[1]).expect("omega");
        let bare = omega_integral(1, &[0], r, &[0]).expect("omega");
        let off: Vec<Q> = (1..s)
            .map(|a| omega_integral(1, &[a], r, &[0]).expect("omega"))
            .collect();
        cases += 1;
        if with_psi != qi(s as i64) / qi(24)
            || bare != q(1, 48 * s as i64)
            || off.iter().any(|x| !x.is_zero())
        {
            failures.push((
                format!("genus-one one-point class for s={s}: {with_psi}, {bare}"),
                false,
            ));
        }
    }
    gate.criterion(
        "4",
        "spin ELSV equals characters; genus-one one-point class",
        cases,
        &failures,
        t,
    );
}

fn criterion_5(gate: &mut Gate) {
    let t = Instant::now();
    let r2 =
        checks::reduced_curve_law(2, &[(0, 3), (1, 1), (1, 2), (2, 1)]).expect("reduced law r = 2");
    let r4 = checks::reduced_curve_law(4, &[(0, 3), (1, 1)]).expect("reduced law r = 4");
    let (cases, failures) = merge(&[r2, r4]);
    gate.criterion(
        "5",
        "reduced-curve law for the correlators",
        cases,
        &failures,
        t,
    );
}

fn criterion_6(gate: &mut Gate) {
    let t = Instant::now();
    let outcomes = [
        checks::row_orthogonality(10).expect("rows"),
        checks::column_orthogonality(10).expect("columns"),
        checks::euler_counts(30),
        checks::fock_algebra(4, 6).expect("operator algebra"),
    ];
    let (mut cases, mut failures) = merge(&outcomes);
    let mut subs = Vec::new();
    let quasi: [(u32, usize, u32, &[u32], usize); 6] = [
        (1, 1, 2, &[0], 8),
        (1, 1, 4, &[0], 8),
        (0, 3, 2, &[0, 0, 0], 8),
        (0, 3, 4, &[1, 0, 0], 8),
        (1, 2, 2, &[0, 0], 14),
        (1, 2, 4, &[1, 1], 14),
    ];
    for (g, n, r, residues, samples) in quasi {
        let rep =
            quasi_polynomiality_probe(g, n, r, residues, samples).expect("quasi-polynomial probe");
        cases += 1;
        let what = format!(
            "quasi-polynomial (g,n)=({g},{n}) r={r} residues {residues:?}: fitted on {}, held out {}",
            rep.fit_points, rep.holdout_points
        );
        if !rep.passed() {
            failures.push((what.clone(), false));
        }
        subs.push((rep.passed(), what));
    }
    let piecewise: [(u32, usize, usize, u32, u32); 4] = [
        (1, 1, 1, 2, 15),
        (1, 2, 1, 2, 15),
        (1, 2, 2, 2, 18),
        (1, 3, 1, 2, 15),
    ];
    for (g, m, n, r, max_size) in piecewise {
        let rep = piecewise_polynomiality_probe(g, m, n, r, max_size).expect("piecewise probe");
        cases += 1;
        let fitted = rep
            .chambers
            .iter()
            .filter(|c| c.polynomial.is_some())
            .count();
        let what = if rep.empty_domain {
            format!("piecewise (m,n)=({m},{n}) g={g}: ℓ(μ)+ℓ(ν) odd, no covers, holds vacuously")
        } else {
            format!(
                "piecewise (m,n)=({m},{n}) g={g} r={r}: chambers fitted {fitted}, degrees {:?}, separated chamber pairs {}",
                rep.allowed_degrees, rep.chamber_pairs
            )
        };
        if !rep.passed() {
            failures.push((what.clone(), false));
        }
        subs.push((rep.passed(), what));
    }
    gate.criterion("6", "property suites", cases, &failures, t);
    for (ok, what) in subs {
        gate.sub(ok, &what);
    }
}

fn criterion_7(gate: &mut Gate) {
    let t = Instant::now();
    let (cases, failures) =
        merge(&[checks::two_point_genus_zero(9, &[2, 4]).expect("two-point series")]);
    gate.criterion(
        "7",
        "two-point genus-zero series equals connected double numbers",
        cases,
        &failures,
        t,
    );
}

fn main() -> ExitCode {
    let mut gate = Gate::default();
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    println!(
        "acceptance: {}/{} criteria pass, {} unexpected failures",
        gate.passed, gate.total, gate.unexpected
    );
    if gate.unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

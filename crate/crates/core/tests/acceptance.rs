//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero on any
//! failure that is not an analyzed, expected one.

use glq_core::chartab::shared;
use glq_core::gamma::verify::{verify, Scope, VerdictReport};
use glq_core::gamma::{check_fe_n_gt_m, gamma_intertwining_oracle, normalized_gamma, shahidi_gamma};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const TOL_IDENTITY: f64 = 1e-7;
const TOL_LOG: f64 = 1e-6;
const TOL_TABLES: f64 = 1e-8;

struct Line {
    id: &'static str,
    pass: bool,
    expected_fail: bool,
    detail: String,
    elapsed: Duration,
}

struct Run {
    lines: Vec<Line>,
}

impl Run {
    fn push(&mut self, id: &'static str, pass: bool, detail: String, elapsed: Duration, budget: Option<Duration>) {
        let (pass, detail) = match budget {
            Some(b) if elapsed > b => (false, format!("{detail}; over the {}s budget", b.as_secs())),
            _ => (pass, detail),
        };
        let line = Line {
            id,
            pass,
            expected_fail: false,
            detail,
            elapsed,
        };
        print_line(&line);
        self.lines.push(line);
    }

    fn expect_fail(&mut self, id: &'static str, pass: bool, detail: String, elapsed: Duration) {
        let line = Line {
            id,
            pass,
            expected_fail: true,
            detail,
            elapsed,
        };
        print_line(&line);
        self.lines.push(line);
    }

    /// Registry checks at explicit scopes with a pinned tolerance.
    fn registry(&mut self, id: &'static str, checks: &[(&str, &[(usize, u32)], f64)], budget: Option<Duration>) {
        let start = Instant::now();
        let mut pass = true;
        let mut parts = Vec::new();
        for &(thm, pairs, tol) in checks {
            let scope = Scope {
                pairs: pairs.to_vec(),
                tolerance: Some(tol),
                ..Scope::default()
            };
            match verify(thm, &scope) {
                Ok(r) => {
                    pass &= r.pass;
                    parts.push(summary(&r));
                }
                Err(e) => {
                    pass = false;
                    parts.push(format!("{thm}: error {e}"));
                }
            }
        }
        self.push(id, pass, parts.join("; "), start.elapsed(), budget);
    }
}

fn summary(r: &VerdictReport) -> String {
    let mut s = format!(
        "{} {} n={} max={:.2e} tol={:.0e}",
        r.theorem,
        if r.pass { "ok" } else { "FAILED" },
        r.instances,
        r.max_residual,
        r.tolerance
    );
    if !r.pass {
        if let Some(w) = &r.worst {
            s += &format!(" worst=[{w}]");
        }
    }
    s
}

fn print_line(l: &Line) {
    let verdict = match (l.pass, l.expected_fail) {
        (true, _) => "PASS",
        (false, true) => "FAIL (expected)",
        (false, false) => "FAIL",
    };
    println!("{:<17} {:<32} {:>7.2}s  {}", format!("[{verdict}]"), l.id, l.elapsed.as_secs_f64(), l.detail);
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn oracle_coherence(run: &mut Run) {
    let start = Instant::now();
    let triples: [(usize, usize, u32); 8] =
        [(1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 1, 5), (2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2)];
    let mut worst = 0f64;
    let mut count = 0;
    let mut err = None;
    for (n, m, q) in triples {
        let c = shared(q, n.max(m)).unwrap();
        for pi in c.generic(n) {
            for sigma in c.generic(m) {
                match (shahidi_gamma(&c, pi, sigma, 1), gamma_intertwining_oracle(&c, pi, sigma, 1)) {
                    (Ok(s), Ok(o)) => {
                        worst = worst.max((s.value - o.value).norm());
                        count += 1;
                    }
                    (Err(e), _) | (_, Err(e)) => err = Some(e.to_string()),
                }
            }
        }
    }
    let pass = err.is_none() && count > 0 && worst < TOL_IDENTITY;
    let detail = format!("{count} generic pairs, max |shahidi − oracle| = {worst:.2e}{}", err.map_or(String::new(), |e| format!("; error {e}")));
    run.push("3 oracle coherence", pass, detail, start.elapsed(), None);
}

/// The rule stated with σ ≅ π̌ in place of π ≅ σ, tested as worded.
fn cuspidal_sizes_dual_wording(run: &mut Run) {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for q in [2, 3] {
        let c = shared(q, 3).unwrap();
        let cusp: Vec<_> = (1..=3).flat_map(|k| c.cuspidal(k)).collect();
        for &pi in &cusp {
            for &sigma in &cusp {
                let g = normalized_gamma(&c, pi, sigma, 1).unwrap().value;
                let l = g.norm().ln() / (q as f64).ln();
                let want = if c.dual(pi) == sigma { -(pi.n as f64) / 2.0 } else { 0.0 };
                total += 1;
                if (l - want).abs() > TOL_LOG {
                    bad.push(format!("q={q} {pi}×{sigma}"));
                }
            }
        }
    }
    let detail = format!(
        "σ ≅ π̌ wording: {} of {total} cuspidal pairs disagree (first: {}); non-self-dual cuspidals of GL_2(F_3), GL_3(F_2) make it unattainable",
        bad.len(),
        bad.first().map_or("none", String::as_str)
    );
    run.expect_fail("4 sizes (σ ≅ π̌ wording)", bad.is_empty(), detail, start.elapsed());
}

fn functional_equations(run: &mut Run) {
    let start = Instant::now();
    let mut worst = 0f64;
    let mut count = 0;
    let mut pass = true;
    for (q, n) in [(3, 2), (2, 3)] {
        let c = shared(q, n).unwrap();
        for pi in c.cuspidal(n) {
            for chi in c.irreps(1) {
                let r = check_fe_n_gt_m(&c, pi, chi, 1).unwrap();
                worst = worst.max(r.max_residual);
                count += r.instances;
                pass &= r.max_residual < TOL_IDENTITY;
            }
        }
    }
    let scope = Scope {
        pairs: vec![(2, 3)],
        tolerance: Some(TOL_IDENTITY),
        ..Scope::default()
    };
    let eq = verify("thm.fe_n_eq_m", &scope).unwrap();
    pass &= eq.pass;
    let detail = format!(
        "(n,m)=(2,1) q=3 and (3,1) q=2: {count} residuals, max {worst:.2e}; {}",
        summary(&eq)
    );
    run.push("9 functional equations", pass, detail, start.elapsed(), None);
}

fn main() -> ExitCode {
    let total = Instant::now();
    let mut run = Run { lines: Vec::new() };
    let t = TOL_IDENTITY;
    run.registry("1 appendix γ(π×π̌) = −1", &[("thm.appendix_minus_one", &[(2, 3), (2, 5), (3, 2)], t)], secs(60));
    run.registry("2 multiplicativity", &[("thm.multiplicativity", &[(3, 2), (3, 3)], t)], secs(300));
    oracle_coherence(&mut run);
    run.registry(
        "4 |γ̃| laws",
        &[
            ("prop.cuspidal_sizes", &[(3, 2), (3, 3)], TOL_LOG),
            ("thm.support_abs", &[(3, 2), (3, 3)], TOL_LOG),
        ],
        None,
    );
    cuspidal_sizes_dual_wording(&mut run);
    run.registry(
        "5 converse theorems",
        &[
            ("thm.abs_converse", &[(3, 3)], 0.5),
            ("thm.improved_converse", &[(2, 2), (2, 3), (3, 2), (3, 3)], 0.5),
        ],
        secs(600),
    );
    run.registry("6 Gauss-sum product", &[("thm.kondo", &[(2, 3), (2, 5), (3, 2)], t)], None);
    run.registry("7 two-block values", &[("thm.two_block", &[(2, 3), (2, 5), (3, 2), (3, 3)], t)], None);
    run.registry(
        "8 three-block values",
        &[
            ("thm.three_block", &[(3, 2), (3, 3)], t),
            ("rem.three_block_simple", &[(3, 2), (3, 3)], t),
        ],
        None,
    );
    functional_equations(&mut run);
    run.registry(
        "10 structural suites",
        &[("struct.tables", &[], TOL_TABLES), ("struct.bessel", &[], TOL_TABLES)],
        secs(600),
    );
    run.registry(
        "11 change of ψ, contragredient",
        &[
            ("thm.change_of_psi", &[(2, 3)], t),
            ("thm.contragredient", &[(2, 3)], t),
            ("cor.contragredient", &[(2, 3)], t),
        ],
        None,
    );
    let unexpected = run.lines.iter().filter(|l| !l.pass && !l.expected_fail).count();
    let expected = run.lines.iter().filter(|l| !l.pass && l.expected_fail).count();
    println!(
        "{} lines, {unexpected} unexpected failures, {expected} expected failures, {:.1}s",
        run.lines.len(),
        total.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

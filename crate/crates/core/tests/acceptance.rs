//! One pass/fail line per acceptance criterion. Known failures are listed in `DOCUMENTED`
//! and do not affect the exit status; any other failure does.

use std::time::Instant;

use num_rational::BigRational;
use qheis::braid::{
    check_braid_relations, check_markov, check_turaev, check_w_grading, check_w_independence, parse_braid,
};
use qheis::classical::check_cybe;
use qheis::fock::{
    check_formula_vs_oracle, check_rep_relations, gomez_sierra, pi3_rmatrix_from_universal, pi3_rmatrix_literal,
    ribbon_spectrum, rmatrix_oracle, Reading, RepParams, C,
};
use qheis::hopf_verify::{self as hv, CheckReport};
use qheis::pbw::{Algebra, Preset};
use qheis::rtt::{self, Rewriting, Strategy, Sym};
use qheis::series::rat;
use qheis::Truncation;

const EXACT: &str = "exact";
const REP_TOL: f64 = 1e-10;
const BRAID_TOL: f64 = 1e-9;
const TAIL_TOL: f64 = 1e-6;
const MARKOV_TOL: f64 = 1e-8;
const W_TOL: f64 = 1e-8;

/// Sub-identities known to fail, with the reason printed next to them.
const DOCUMENTED: &[(&str, &str)] = &[
    ("spectral CYBE x_u=", "spectral classical r(x) solves CYBE only at x_u = x_v = 1"),
    ("S(u) = e^{-2hE} e^{-w Ap} u", "antipode of u needs e^{-2wA+}; the printed exponent leaves a residual"),
    ("= 0 for i != k", "off-diagonal partial traces are nonzero once w != 0 (degree-raising entries)"),
];

struct Line {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Line {
    fn new() -> Self {
        Line { failures: Vec::new(), notes: Vec::new() }
    }

    fn report(&mut self, r: &CheckReport) {
        if !r.pass {
            let failed: Vec<&String> = r
                .notes
                .iter()
                .filter(|n| n.ends_with("residual terms") || n.ends_with(": failed") || n.contains("entries off"))
                .collect();
            if failed.is_empty() {
                self.failures.push(format!("{} ({})", r.check, r.preset));
            }
            for n in failed {
                self.failures.push(format!("{} [{}]: {n}", r.check, r.preset));
            }
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn undocumented(&self) -> Vec<&String> {
        self.failures.iter().filter(|f| documented(f).is_none()).collect()
    }
}

fn documented(failure: &str) -> Option<&'static str> {
    DOCUMENTED.iter().find(|(pat, _)| failure.contains(pat)).map(|(_, why)| *why)
}

struct Summary {
    undocumented: usize,
}

impl Summary {
    fn emit(&mut self, n: usize, title: &str, tol: &str, start: Instant, limit_s: f64, line: Line) {
        let secs = start.elapsed().as_secs_f64();
        let mut line = line;
        if secs > limit_s {
            line.failures.push(format!("runtime {secs:.1} s over {limit_s} s"));
        }
        let status = if line.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {n}: {title} [tol {tol}] ({secs:.2} s, limit {limit_s} s)");
        let mut reasons: Vec<&str> = Vec::new();
        for f in &line.failures {
            match documented(f) {
                Some(why) => {
                    println!("    documented: {f}");
                    if !reasons.contains(&why) {
                        reasons.push(why);
                    }
                }
                None => println!("    UNDOCUMENTED: {f}"),
            }
        }
        for why in reasons {
            println!("    known: {why}");
        }
        for note in &line.notes {
            println!("    note: {note}");
        }
        self.undocumented += line.undocumented().len();
    }
}

fn t(kh: u32, kw: u32) -> Truncation {
    Truncation::new(kh, kw)
}

fn criterion_1(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    for p in Preset::ALL {
        let a4 = hv::algebra_for(p, t(4, 4));
        let a3 = hv::algebra_for(p, t(3, 3));
        for r in [
            hv::check_hopf_axioms(&a4, p),
            hv::check_quasitriangular(&a3, p),
            hv::check_qybe(&a3, p),
        ] {
            match r {
                Ok(r) => line.report(&r),
                Err(e) => line.require(&format!("{}: {e}", p.name()), false),
            }
        }
    }
    line.notes.push("Hopf axioms at (4,4); quasitriangularity and QYBE at (3,3); all three presets".into());
    s.emit(1, "exact Hopf, quasitriangular and QYBE suite", EXACT, start, 60.0, line);
}

fn criterion_2(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    let grid = [rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2)];
    let pairs: Vec<(BigRational, BigRational)> =
        grid.iter().flat_map(|a| grid.iter().map(move |b| (a.clone(), b.clone()))).collect();
    line.report(&check_cybe(&pairs));
    line.notes.push("five constant r-matrices and the spectral family on {1, 2, 3, 1/2}²".into());
    s.emit(2, "classical Yang-Baxter suite", EXACT, start, 5.0, line);
}

fn criterion_3(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    let two = hv::algebra_for(Preset::TwoParameter, t(3, 3));
    for r in [hv::check_twist_conditions(&two), hv::check_v_element(&two), hv::check_r_twist_form(&two)] {
        match r {
            Ok(r) => line.report(&r),
            Err(e) => line.require(&e.to_string(), false),
        }
    }
    for p in Preset::ALL {
        let a = hv::algebra_for(p, t(3, 3));
        for r in [hv::check_casimir(&a, p), hv::check_u_ribbon(&a, p)] {
            match r {
                Ok(r) => {
                    line.notes.extend(r.notes.iter().filter(|n| n.starts_with("S(u) =")).map(|n| format!("{}: {n}", p.name())));
                    line.report(&r);
                }
                Err(e) => line.require(&e.to_string(), false),
            }
        }
    }
    s.emit(3, "twist, v element, Casimir, u and ribbon element", EXACT, start, 60.0, line);
}

/// `(h, w, e, n)` with `Re(he) > 0`. On `|r⟩`, `θ` is an alternating binomial sum of size
/// `e^{-2her}` times `e^{2he(r+n)}`, so its f64 error grows roughly like
/// `1e-16 (2 - e^{-2he})^r e^{2her}`; at `D = 12` that stays below 1e-10 only for `he ≲ 0.35`.
fn grid() -> Vec<(f64, f64, C, C)> {
    vec![
        (0.3, 0.2, C::from(1.0), C::from(0.0)),
        (0.3, 0.0, C::from(1.0), C::from(0.5)),
        (0.15, 0.4, C::from(0.8), C::from(0.2)),
        (0.3, -0.5, C::new(1.0, 0.2), C::from(0.3)),
        (0.1, 0.6, C::from(1.5), C::from(-0.7)),
        (0.5, 0.3, C::from(0.4), C::from(1.0)),
    ]
}

fn criterion_4(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    for trunc in [t(2, 2), t(3, 3)] {
        let alg = Algebra::new(trunc);
        let ok = pi3_rmatrix_from_universal(&alg).map(|m| m == pi3_rmatrix_literal(trunc)).unwrap_or(false);
        line.require(&format!("(π₃⊗π₃)(R) is the 9×9 block matrix at ({},{})", trunc.kh, trunc.kw), ok);
    }
    for (h, w, e, n) in grid() {
        let p = RepParams::new(C::from(h), C::from(w), e, n, 12).expect("valid grid point");
        line.report(&check_rep_relations(&p, REP_TOL));
    }
    line.notes.push(format!("{} parameter points, D = 12", grid().len()));
    s.emit(4, "representation fidelity", "exact / 1e-10", start, 60.0, line);
}

fn criterion_5(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    let mut literal_off = 0;
    for (h, w, e, n) in grid() {
        let p1 = RepParams::new(C::from(h), C::from(w), e, n, 6).expect("valid grid point");
        let p2 = p1.with_color(e * 0.9 + 0.1, n - 0.25);
        line.report(&check_formula_vs_oracle(&p1, &p2, Reading::Corrected, REP_TOL));
        let lit = check_formula_vs_oracle(&p1, &p2, Reading::Literal, REP_TOL);
        literal_off += lit.residual_terms;
        if w == 0.0 {
            // the w = 0 reduction to the closed form
            let r = rmatrix_oracle(&p1, &p2);
            let mut worst = 0.0f64;
            for k in 0..6usize.pow(4) {
                let idx = [k / 216, (k / 36) % 6, (k / 6) % 6, k % 6];
                let z = r[(idx[2] * 6 + idx[3], idx[0] * 6 + idx[1])];
                worst = worst.max((z - gomez_sierra(&p1, &p2, idx)).norm());
            }
            line.require(&format!("w = 0 closed form, worst {worst:.2e}"), worst < REP_TOL);
        }
    }
    line.notes.push("index corrections in force: f_0^s = δ_{s,0}; inverse sum runs to r2' - r1 without the r2 cap".into());
    line.notes.push(format!("formula as printed disagrees with the oracle on {literal_off} elements over the grid"));
    s.emit(5, "R-matrix formula against the factorized oracle", "1e-10", start, 60.0, line);
}

fn criterion_6(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    for (h, w, e, n) in grid() {
        let p = RepParams::new(C::from(h), C::from(w), e, n, 12).expect("valid grid point");
        let sp = ribbon_spectrum(&p, REP_TOL);
        let eig = C::new(sp.eigenvalue[0], sp.eigenvalue[1]);
        let want = C::new(sp.expected[0], sp.expected[1]);
        line.require(&format!("θ scalar at h={h}, w={w}"), sp.scalar);
        line.require(&format!("θ eigenvalue e^{{(2n-1)he}} at h={h}, w={w}"), (eig - want).norm() < REP_TOL);
        if n == C::from(0.5) {
            line.require("θ = 1 at n = 1/2", (eig - 1.0).norm() < REP_TOL);
        }
    }
    s.emit(6, "ribbon spectrum", "1e-10", start, 60.0, line);
}

fn criterion_7(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    let base = |w: f64, d: usize| RepParams::real(0.05, w, 1.0, 0.3, d).expect("valid parameters");

    let p = RepParams::real(0.3, 0.2, 1.0, 0.3, 5).expect("valid parameters");
    let colors = [p, p.with_color(C::new(0.7, 0.1), C::from(0.1)), p.with_color(C::from(1.3), C::from(-0.4))];
    for c in [[p; 3], colors] {
        match check_braid_relations(&c, BRAID_TOL) {
            Ok(r) => line.report(&r),
            Err(e) => line.require(&e.to_string(), false),
        }
    }

    for w in [0.0, 0.2] {
        match check_turaev(&base(w, 16), 4, TAIL_TOL) {
            Ok(r) => line.report(&r),
            Err(e) => line.require(&e.to_string(), false),
        }
    }

    let b2 = ["B2: s1 s1 s1", "B2: s1^-1 s1^-1 s1", "B2: s1 s1 s1 s1 s1 s1^-1"];
    let b3 = ["B3: s1 s2^-1 s1 s2^-1", "B3: s1 s1 s2 s1^-1", "B3: s1 s2 s1 s2 s1 s2"];
    for (words, d) in [(&b2, 16), (&b3, 8)] {
        for text in words.iter() {
            let word = parse_braid(text).expect("valid braid");
            let mut r = check_markov(&word, &base(0.2, d), 2 * d, MARKOV_TOL, TAIL_TOL);
            r.preset = text.to_string();
            line.report(&r);
        }
    }

    let ws = [C::from(0.0), C::from(0.1), C::from(0.3)];
    for text in ["B2: s1 s1 s1", "B3: s1 s2^-1 s1 s2^-1", "B3: s1 s1 s2 s1^-1"] {
        let word = parse_braid(text).expect("valid braid");
        let mut r = check_w_independence(&word, &base(0.0, 8), &ws, W_TOL);
        r.preset = text.to_string();
        line.report(&r);
        let mut r = check_w_grading(&word, &RepParams::real(0.2, 0.4, 1.0, 0.3, 4).expect("valid"), 1e-12);
        r.preset = text.to_string();
        line.report(&r);
    }
    line.notes.push("h = 0.05, e = 1, n = 0.3; Markov II new strand at 3D; q = e^h".into());
    s.emit(7, "braid and link suite", "1e-9 / 1e-8 / tail 1e-6", start, 300.0, line);
}

fn criterion_8(s: &mut Summary) {
    let start = Instant::now();
    let mut line = Line::new();
    let trunc = t(3, 3);
    for r in [rtt::check_rtt(trunc), rtt::check_mutations(trunc), rtt::check_group_hopf(trunc), rtt::check_reductions(trunc)]
    {
        match r {
            Ok(r) => line.report(&r),
            Err(e) => line.require(&e.to_string(), false),
        }
    }
    // confluence on every word of length ≤ 4
    let left = Rewriting::with(trunc, None, Strategy::Leftmost);
    let right = Rewriting::with(trunc, None, Strategy::Rightmost);
    let mut words: Vec<Vec<Sym>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..4 {
        words = words.iter().flat_map(|w| Sym::ALL.iter().map(move |&s| [w.clone(), vec![s]].concat())).collect();
        all.extend(words.iter().cloned());
    }
    let divergent = all.iter().filter(|w| left.reduce(&left.word((*w).clone())) != right.reduce(&right.word((*w).clone()))).count();
    line.require(&format!("confluence: {divergent} of {} words disagree", all.len()), divergent == 0);
    line.notes.push("81 RTT entries, 18 mutations, Hopf maps from T ⊗̇ T and T^{-1}, both one-parameter limits".into());
    s.emit(8, "RTT suite", EXACT, start, 60.0, line);
}

fn main() {
    let mut s = Summary { undocumented: 0 };
    criterion_1(&mut s);
    criterion_2(&mut s);
    criterion_3(&mut s);
    criterion_4(&mut s);
    criterion_5(&mut s);
    criterion_6(&mut s);
    criterion_7(&mut s);
    criterion_8(&mut s);
    if s.undocumented > 0 {
        println!("{} undocumented failure(s)", s.undocumented);
        std::process::exit(1);
    }
}

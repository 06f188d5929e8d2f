//! The `validate` command: every axiom suite of a model, one report line
//! per identity family.

use hopfcyc_core::bicomplex::Bicomplex;
use hopfcyc_core::conv::Convolution;
use hopfcyc_core::cyclic::CyclicModule;
use hopfcyc_core::hopf::{Bicrossed, Structure};
use hopfcyc_core::lie::Violation;
use hopfcyc_core::models::MatchedPairModel;

use crate::report::CheckLine;

/// Which suites to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckSet {
    /// Every suite.
    All,
    /// Lie-algebra and matched-pair conditions.
    Lie,
    /// Group laws, actions, γ cocycle, Lie compatibility.
    Group,
    /// Hopf axioms of ℛ, 𝒰, ℋ, MPI and SAYD.
    Hopf,
    /// The trace identities on the convolution algebra.
    Trace,
    /// Cocyclic-module identities and the step bicomplexes.
    Cyclic,
}

impl CheckSet {
    fn includes(self, s: CheckSet) -> bool {
        self == CheckSet::All || self == s
    }
}

/// Options of a validation run.
#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    /// Suites to run.
    pub checks: CheckSet,
    /// Degree bound for the Hopf and cyclic test families.
    pub degree_bound: u32,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { checks: CheckSet::All, degree_bound: 2 }
    }
}

fn line(name: &str, r: hopfcyc_core::Result<Vec<Violation>>, cases: &str) -> CheckLine {
    match r {
        Ok(v) => CheckLine::from_violations(name, &v, cases),
        Err(e) => CheckLine::fail(name, format!("not evaluated: {e}")),
    }
}

fn select(v: &[Violation], prefix: &str) -> Vec<Violation> {
    v.iter().filter(|x| x.check.starts_with(prefix)).cloned().collect()
}

fn lie_suite(m: &MatchedPairModel, out: &mut Vec<CheckLine>) {
    let (g1, g2) = (&m.lie.g1, &m.lie.g2);
    let mut anti = g1.antisymmetry_violations();
    anti.extend(g2.antisymmetry_violations());
    out.push(CheckLine::from_violations("lie.antisymmetry", &anti, "g1, g2"));
    let mut jac = g1.jacobi_violations();
    jac.extend(g2.jacobi_violations());
    out.push(CheckLine::from_violations("lie.jacobi", &jac, "g1, g2"));
    let mp = m.lie.validate();
    for k in 1..=4 {
        let name = format!("mp.cond{k}");
        out.push(CheckLine::from_violations(&name, &select(&mp, &name), "all basis triples"));
    }
    out.push(match m.lie.bicrossed_lie() {
        Ok(a) => CheckLine::from_violations("lie.bicrossed.jacobi", &a.jacobi_violations(), &format!("dim {}", a.dim())),
        Err(e) => CheckLine::fail("lie.bicrossed.jacobi", e.to_string()),
    });
}

fn group_suite(m: &MatchedPairModel, out: &mut Vec<CheckLine>) {
    let g = &m.group;
    match g.axiom_violations() {
        Ok(v) => {
            for fam in ["group.g1", "group.g2", "group.act", "group.matched"] {
                out.push(CheckLine::from_violations(fam, &select(&v, fam), "symbolic"));
            }
        }
        Err(e) => out.push(CheckLine::fail("group.axioms", format!("not evaluated: {e}"))),
    }
    out.push(line("group.gamma", g.gamma_violations(), "cocycle, Γ, det"));
    out.push(line("group.lie_compat", g.lie_compat_violations(&m.lie), "declared vs frame-derived"));
    out.push(if g.right_action_is_affine() {
        CheckLine::pass("group.affine_right_action", "log(ψ◁φ) affine in log ψ")
    } else {
        CheckLine::fail("group.affine_right_action", "log(ψ◁φ) is not affine in log ψ")
    });
}

fn hopf_suite(h: &Bicrossed, d: u32, out: &mut Vec<CheckLine>) {
    let cases = format!("degree ≤ {d}");
    out.push(CheckLine::from_violations("hopf.rep", &h.verify_rep_hopf(d), &cases));
    out.push(CheckLine::from_violations("hopf.u", &h.verify_u_hopf(d + 1), &format!("degree ≤ {}", d + 1)));
    out.push(CheckLine::from_violations("hopf.matched", &h.verify_matched_hopf(d, d), &cases));
    let b = d.min(1);
    for (s, tag) in [(Structure::Bowtie, "bowtie"), (Structure::Cop, "H")] {
        out.push(CheckLine::from_violations(
            &format!("hopf.bicrossed.{tag}"),
            &h.verify_bicrossed_hopf(s, b, b),
            &format!("bidegree ≤ ({b},{b})"),
        ));
    }
    out.push(CheckLine::from_violations("hopf.mpi", &h.verify_mpi(Structure::Cop, d), "δ(σ)=1, S_δ²=σ(·)σ⁻¹"));
    out.push(CheckLine::from_violations("hopf.sayd", &h.verify_sayd(Structure::Cop, d), "generators"));
}

fn trace_suite(m: &MatchedPairModel, out: &mut Vec<CheckLine>) {
    let r = (|| -> hopfcyc_core::Result<_> {
        let c = Convolution::new(m)?;
        let cases = c.trace_cases()?;
        let hs = c.hopf().generators(1);
        let t = c.verify_trace_identities(&hs, &cases)?;
        let a = c.verify_module_algebra(&hs, &cases[..cases.len().min(8)])?;
        Ok((cases.len(), t, a))
    })();
    match r {
        Ok((n, t, a)) => {
            for fam in ["trace.sigma_trace", "trace.delta_invariance", "trace.integration_by_parts"] {
                out.push(CheckLine::from_violations(fam, &select(&t, fam), &format!("{n} Hermite cases")));
            }
            out.push(CheckLine::from_violations("action.module_algebra", &a, "generators × 8 cases"));
        }
        Err(e) => out.push(CheckLine::fail("trace", format!("not evaluated: {e}"))),
    }
}

fn cyclic_suite(m: &MatchedPairModel, h: &Bicrossed, d: u32, out: &mut Vec<CheckLine>) {
    let cm = CyclicModule::new(h, Structure::Cop);
    let mut words = Vec::new();
    for n in 0..=3 {
        words.extend(cm.test_words(n, 6));
    }
    let v = cm.verify_lambda_identities(&words);
    let cases = format!("{} words, n ≤ 3", words.len());
    out.push(CheckLine::from_violations(
        "cyclic.simplicial",
        &select(&v, "cyclic.")
            .into_iter()
            .filter(|x| !x.check.contains("b_") && !x.check.contains("B_") && !x.check.contains("bB"))
            .collect::<Vec<_>>(),
        &cases,
    ));
    let bb: Vec<Violation> =
        v.iter().filter(|x| x.check.contains("b_") || x.check.contains("B_") || x.check.contains("bB")).cloned().collect();
    out.push(CheckLine::from_violations("cyclic.b_B", &bb, &cases));
    let steps = (|| -> hopfcyc_core::Result<_> {
        let bc = Bicomplex::new(m)?;
        let mut xs = Vec::new();
        for p in 0..=2 {
            xs.extend(bc.test_cochains(p, d, 4));
        }
        bc.verify_step_identities(&xs)
    })();
    out.push(line("bicomplex.steps", steps, "p ≤ 2"));
}

/// Runs the selected suites.  The Hopf-level suites are reported as
/// failing (not evaluated) when the bicrossed product cannot be built.
pub fn validate(m: &MatchedPairModel, opts: ValidateOptions) -> Vec<CheckLine> {
    let mut out = Vec::new();
    if opts.checks.includes(CheckSet::Lie) {
        lie_suite(m, &mut out);
    }
    if opts.checks.includes(CheckSet::Group) {
        group_suite(m, &mut out);
    }
    let needs_hopf = [CheckSet::Hopf, CheckSet::Trace, CheckSet::Cyclic].iter().any(|&s| opts.checks.includes(s));
    if needs_hopf {
        match m.bicrossed() {
            Ok(h) => {
                if opts.checks.includes(CheckSet::Hopf) {
                    hopf_suite(&h, opts.degree_bound, &mut out);
                }
                if opts.checks.includes(CheckSet::Trace) {
                    trace_suite(m, &mut out);
                }
                if opts.checks.includes(CheckSet::Cyclic) {
                    cyclic_suite(m, &h, opts.degree_bound, &mut out);
                }
            }
            Err(e) => out.push(CheckLine::fail("hopf.build", format!("not evaluated: {e}"))),
        }
    }
    out
}

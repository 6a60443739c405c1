use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::falsify::falsify_with_count;
use super::rg::{build_rg, check_even_form, system_sizes};
use super::specialize::{along, beta_set, curves, j_max, TripleIndex};
use crate::error::{Error, Result};
use crate::numkernel::{format_rational, MultiPoly, Rational, UniPoly};
use crate::sturm::{
    common_positive_point, exists_both_positive_int, int_from_upoly, nonneg_by_multiplicity, ChainStats,
};

pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_WORK_CAP: u64 = 1_000_000;
pub const DEFAULT_MAX_SYSTEM: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    UnknownCapped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::UnknownCapped => "unknown-capped",
        }
    }
}

/// How condition `(∗)` is evaluated for a triple.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StarMode {
    /// `r_{n+1} ≢ 0` and `g⁺` takes a negative value: one decision.
    #[default]
    Combined,
    /// Both disjuncts, each through `exists_both_positive`.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub samples: u64,
    pub seed: u64,
    /// Maximum number of univariate sign decisions.
    pub work_cap: Option<u64>,
    /// Maximum order of either determinant matrix.
    pub max_system: Option<usize>,
    pub mode: StarMode,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            work_cap: Some(DEFAULT_WORK_CAP),
            max_system: Some(DEFAULT_MAX_SYSTEM),
            mode: StarMode::Combined,
        }
    }
}

impl DecideOptions {
    pub fn exhaustive() -> Self {
        DecideOptions {
            work_cap: None,
            max_system: None,
            ..Default::default()
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.work_cap.is_none() && self.max_system.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// Constant input.
    Trivial,
    /// Index of the sample that hit.
    Sampling(u64),
    /// Curve point `t` of a triple satisfying `(∗)`.
    Triple { index: TripleIndex, t: Rational },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorkLog {
    pub samples_drawn: u64,
    pub system_sizes: Vec<usize>,
    pub r_g_size: usize,
    pub j_count: u64,
    pub beta_count: usize,
    pub beta_deduplicated: bool,
    /// Triples visited, including vacuous ones.
    pub triples_examined: u64,
    /// Triples with `g⁺ ≡ 0` or `r_{n+1} ≡ 0`, settled without a decision.
    pub triples_vacuous: u64,
    pub sturm_decisions: u64,
    pub chains: ChainStats,
    /// Every triple was visited.
    pub enumeration_complete: bool,
    pub cap_hit: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub witness: Option<Vec<Rational>>,
    pub witness_value: Option<Rational>,
    pub witness_source: Option<WitnessSource>,
    pub options: DecideOptions,
    pub work_log: WorkLog,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn point_text(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

impl DecisionReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let o = &self.options;
        let w = &self.work_log;
        writeln!(s, "verdict: {}", self.verdict.name()).unwrap();
        if let (Some(x), Some(v)) = (&self.witness, &self.witness_value) {
            writeln!(s, "witness: {}", point_text(x)).unwrap();
            writeln!(s, "witness value: {}", format_rational(v)).unwrap();
        }
        match &self.witness_source {
            Some(WitnessSource::Trivial) => writeln!(s, "witness source: constant input").unwrap(),
            Some(WitnessSource::Sampling(k)) => writeln!(s, "witness source: sampling, sample {k}").unwrap(),
            Some(WitnessSource::Triple { index, t }) => writeln!(
                s,
                "witness source: triple j={} beta={:?} r={} at t={}",
                index.j,
                index.beta,
                index.r,
                format_rational(t)
            )
            .unwrap(),
            None => {}
        }
        writeln!(s, "mode: {}", if o.is_exhaustive() { "exhaustive" } else { "capped" }).unwrap();
        writeln!(s, "seed: {}", o.seed).unwrap();
        writeln!(s, "samples: {}", o.samples).unwrap();
        writeln!(s, "work cap: {}", opt(&o.work_cap)).unwrap();
        writeln!(s, "max system: {}", opt(&o.max_system)).unwrap();
        writeln!(s, "work log:").unwrap();
        writeln!(s, "  samples drawn: {}", w.samples_drawn).unwrap();
        writeln!(s, "  system sizes: {:?}", w.system_sizes).unwrap();
        writeln!(s, "  |R_g|: {}", w.r_g_size).unwrap();
        writeln!(s, "  |J|: {}", w.j_count).unwrap();
        writeln!(s, "  |B|: {}{}", w.beta_count, if w.beta_deduplicated { " (deduplicated)" } else { "" }).unwrap();
        writeln!(s, "  triples examined: {}", w.triples_examined).unwrap();
        writeln!(s, "  triples vacuous: {}", w.triples_vacuous).unwrap();
        writeln!(s, "  sturm decisions: {}", w.sturm_decisions).unwrap();
        writeln!(
            s,
            "  chains: {} built, {} elements, longest {}",
            w.chains.chains, w.chains.elements, w.chains.longest
        )
        .unwrap();
        writeln!(s, "  enumeration complete: {}", w.enumeration_complete).unwrap();
        if let Some(c) = &w.cap_hit {
            writeln!(s, "  cap: {c}").unwrap();
        }
        for n in &w.notes {
            writeln!(s, "  note: {n}").unwrap();
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let o = &self.options;
        let w = &self.work_log;
        let source = self.witness_source.as_ref().map(|src| match src {
            WitnessSource::Trivial => json!({"kind": "constant"}),
            WitnessSource::Sampling(k) => json!({"kind": "sampling", "sample": k}),
            WitnessSource::Triple { index, t } => json!({
                "kind": "triple",
                "j": index.j,
                "beta": index.beta,
                "r": index.r,
                "t": format_rational(t),
            }),
        });
        json!({
            "verdict": self.verdict.name(),
            "witness": self.witness.as_ref().map(|x| x.iter().map(format_rational).collect::<Vec<_>>()),
            "witness_value": self.witness_value.as_ref().map(format_rational),
            "witness_source": source,
            "config": {
                "mode": if o.is_exhaustive() { "exhaustive" } else { "capped" },
                "seed": o.seed,
                "samples": o.samples,
                "work_cap": o.work_cap,
                "max_system": o.max_system,
            },
            "work_log": {
                "samples_drawn": w.samples_drawn,
                "system_sizes": w.system_sizes,
                "r_g_size": w.r_g_size,
                "j_count": w.j_count,
                "beta_count": w.beta_count,
                "beta_deduplicated": w.beta_deduplicated,
                "triples_examined": w.triples_examined,
                "triples_vacuous": w.triples_vacuous,
                "sturm_decisions": w.sturm_decisions,
                "chains": w.chains.chains,
                "chain_elements": w.chains.elements,
                "longest_chain": w.chains.longest,
                "enumeration_complete": w.enumeration_complete,
                "cap": w.cap_hit,
                "notes": w.notes,
            },
        })
    }
}

struct Run<'a> {
    g: &'a MultiPoly,
    opts: DecideOptions,
    log: WorkLog,
}

impl Run<'_> {
    fn report(self, verdict: Verdict, witness: Option<(Vec<Rational>, WitnessSource)>) -> Result<DecisionReport> {
        let (witness, witness_value, witness_source) = match witness {
            Some((x, src)) => {
                let v = self.g.eval(&x)?;
                if !v.is_negative() {
                    return Err(Error::Internal("witness does not re-evaluate to a negative value".into()));
                }
                (Some(x), Some(v), Some(src))
            }
            None => (None, None, None),
        };
        Ok(DecisionReport {
            verdict,
            witness,
            witness_value,
            witness_source,
            options: self.opts,
            work_log: self.log,
        })
    }

    fn charge(&mut self, decisions: u64) -> bool {
        if let Some(cap) = self.opts.work_cap {
            if self.log.sturm_decisions + decisions > cap {
                self.log.cap_hit = Some(format!("work cap of {cap} sign decisions reached"));
                return false;
            }
        }
        self.log.sturm_decisions += decisions;
        true
    }

    /// `(∗)` for nonzero `g⁺` and `r_{n+1}`.
    fn star(&mut self, g_plus: &UniPoly, g_minus: &UniPoly, r_last: &UniPoly) -> Result<Option<bool>> {
        match self.opts.mode {
            StarMode::Combined => {
                if !self.charge(1) {
                    return Ok(None);
                }
                let gi = int_from_upoly(g_plus);
                Ok(Some(!nonneg_by_multiplicity(&gi, &mut self.log.chains)))
            }
            StarMode::Literal => {
                let neg = |p: &UniPoly| p.scale(&Rational::from_integer((-1).into()));
                let pairs = [(neg(g_plus), r_last.clone()), (neg(g_minus), neg(r_last))];
                for (p, q) in &pairs {
                    if !self.charge(1) {
                        return Ok(None);
                    }
                    if exists_both_positive_int(&int_from_upoly(p), &int_from_upoly(q), &mut self.log.chains)? {
                        return Ok(Some(true));
                    }
                }
                Ok(Some(false))
            }
        }
    }
}

/// Decides `g ≥ 0` for a homogeneous form of even degree.
pub fn decide_nonneg(g: &MultiPoly, opts: &DecideOptions) -> Result<DecisionReport> {
    let d = check_even_form(g)?;
    let n = g.nvars();
    let mut run = Run {
        g,
        opts: opts.clone(),
        log: WorkLog::default(),
    };
    if g.is_zero() {
        run.log.enumeration_complete = true;
        run.log.notes.push("zero polynomial".into());
        return run.report(Verdict::Yes, None);
    }
    if d == 0 {
        run.log.enumeration_complete = true;
        run.log.notes.push("constant polynomial".into());
        let c = g.eval(&vec![Rational::zero(); n])?;
        if c.is_negative() {
            return run.report(Verdict::No, Some((vec![Rational::zero(); n], WitnessSource::Trivial)));
        }
        return run.report(Verdict::Yes, None);
    }

    let sampling = falsify_with_count(g, opts.samples, opts.seed);
    run.log.samples_drawn = sampling.drawn;
    if let Some(x) = sampling.witness {
        return run.report(Verdict::No, Some((x, WitnessSource::Sampling(sampling.drawn - 1))));
    }

    let sizes = system_sizes(n, d);
    run.log.system_sizes = sizes.to_vec();
    if let Some(max) = opts.max_system {
        let largest = sizes[0].max(sizes[1]);
        if largest > max {
            run.log.cap_hit = Some(format!(
                "determinant matrix of order {largest} exceeds the limit {max}; exhaustive mode not run"
            ));
            return run.report(Verdict::UnknownCapped, None);
        }
    }

    let data = build_rg(g, n, d)?;
    let jm = j_max(n, d);
    let (betas, dedup) = beta_set(n, d);
    run.log.r_g_size = data.r_g.len();
    run.log.j_count = jm + 1;
    run.log.beta_count = betas.len();
    run.log.beta_deduplicated = dedup;
    if dedup {
        run.log.notes.push(format!(
            "n = 1: the beta pattern gives (1, 0) for all {} values of i",
            jm + 1
        ));
    }

    for (ri, r) in data.r_g.iter().enumerate() {
        for beta in &betas {
            let cs = curves(beta, r)?;
            let r_last = &cs[n];
            let top = cs[..n].iter().filter_map(|c| c.degree().finite()).max();
            // beyond the largest curve degree every derivative vanishes and g⁺ ≡ g(0) = 0
            let live = match top {
                Some(t) if !r_last.is_zero() => (t as u64).min(jm) + 1,
                _ => 0,
            };
            run.log.triples_examined += jm + 1 - live;
            run.log.triples_vacuous += jm + 1 - live;
            for j in 0..live as usize {
                run.log.triples_examined += 1;
                let (g_plus, g_minus) = along(g, j, &cs)?;
                if g_plus != g_minus {
                    return Err(Error::Internal("mirror specialization differs for an even form".into()));
                }
                if g_plus.is_zero() {
                    run.log.triples_vacuous += 1;
                    continue;
                }
                match run.star(&g_plus, &g_minus, r_last)? {
                    None => {
                        run.log.triples_examined -= 1;
                        return run.report(Verdict::UnknownCapped, None);
                    }
                    Some(false) => {}
                    Some(true) => {
                        let minus_one = Rational::from_integer((-1).into());
                        let t = common_positive_point(&g_plus.scale(&minus_one), &UniPoly::one())?
                            .ok_or_else(|| Error::Internal("condition holds but g is never negative on the curve".into()))?;
                        let x: Vec<Rational> = cs[..n].iter().map(|c| c.nth_derivative(j).eval(&t)).collect();
                        let index = TripleIndex {
                            j,
                            beta: beta.clone(),
                            r: ri,
                        };
                        return run.report(Verdict::No, Some((x, WitnessSource::Triple { index, t })));
                    }
                }
            }
        }
    }
    run.log.enumeration_complete = true;
    run.report(Verdict::Yes, None)
}

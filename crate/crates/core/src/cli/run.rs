use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use super::report::write_report;
use super::schema::*;
use crate::bridge::{self, BridgeContext, FaltingsOutcome, PairOutcome, SheafVerdict};
use crate::error::{Error, Result};
use crate::exactla::{ExtField, Field, FieldSpec, FiniteField, PrimeField, Rationals};
use crate::kron::{self, Detection, KroneckerModule, Route, Verdict};
use crate::polygraded::cohomology::{is_pure, resolve};
use crate::polygraded::{dim_and_multiplicity, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Hilbert,
    Cohomology,
    Regular,
    Pure,
    Phi,
    Phidual,
    AdjointCheck,
    SsModule,
    SsSheaf,
    Gr,
    SEquiv,
    Theta,
    ThetaDetect,
    Conditions,
    Correspondence,
    Faltings,
    Separate,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    /// Whether `--in` files are modules rather than sheaves.
    fn takes_modules(self) -> bool {
        matches!(
            self,
            Command::Phidual | Command::SsModule | Command::SEquiv | Command::ThetaDetect | Command::Separate
        )
    }

    fn needs_seed(self) -> bool {
        matches!(self, Command::ThetaDetect | Command::Separate)
    }
}

/// One command over a set of input documents.
#[derive(Clone, Debug, Parser)]
#[command(name = "kronsheaf", version, about = "Sheaves on P^r and Kronecker modules", allow_negative_numbers = true)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long = "in")]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub sheaf: Vec<PathBuf>,
    #[arg(long)]
    pub module: Vec<PathBuf>,
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    #[arg(long)]
    pub delta: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Q, Fp:<p> or Fq:<p>:<e>; defaults to the field named by the inputs.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub n: i64,
    /// Defaults to n + 1.
    #[arg(long)]
    pub m: Option<i64>,
    /// Degrees searched above the top presentation degree.
    #[arg(long)]
    pub degree_cap: Option<u32>,
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long)]
    pub max_power: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Doc {
    path: String,
    value: Value,
}

struct Inputs {
    sheaves: Vec<Doc>,
    modules: Vec<Doc>,
    gamma: Option<Doc>,
    delta: Option<Doc>,
}

fn load(p: &PathBuf) -> Result<Doc> {
    let path = p.display().to_string();
    let text = std::fs::read_to_string(p).map_err(|e| Error::parse(&path, e.to_string()))?;
    let value = serde_json::from_str(&text).map_err(|e| Error::parse(&path, e.to_string()))?;
    Ok(Doc { path, value })
}

impl Inputs {
    fn load(cfg: &RunConfig) -> Result<Self> {
        let all = |v: &[PathBuf]| v.iter().map(load).collect::<Result<Vec<_>>>();
        let mut sheaves = all(&cfg.sheaf)?;
        let mut modules = all(&cfg.module)?;
        let extra = all(&cfg.inputs)?;
        for d in extra {
            // gr takes either kind; a module document carries an action
            let is_module = match cfg.command {
                Command::Gr => d.value.get("action").is_some(),
                c => c.takes_modules(),
            };
            if is_module {
                modules.push(d);
            } else {
                sheaves.push(d);
            }
        }
        Ok(Inputs {
            sheaves,
            modules,
            gamma: cfg.gamma.as_ref().map(load).transpose()?,
            delta: cfg.delta.as_ref().map(load).transpose()?,
        })
    }

    fn docs(&self) -> impl Iterator<Item = &Doc> {
        self.sheaves
            .iter()
            .chain(&self.modules)
            .chain(&self.gamma)
            .chain(&self.delta)
    }

    fn field_spec(&self, flag: Option<&str>) -> Result<FieldSpec> {
        if let Some(s) = flag {
            return FieldSpec::from_flag(s).map_err(|e| Error::parse("--field", e.to_string()));
        }
        for d in self.docs() {
            if let Some(s) = field_of(&d.value, &d.path)? {
                return Ok(s);
            }
        }
        Err(Error::parse("--field", "no field given and none named by the inputs"))
    }

    fn sheaves<F: Field>(&self, f: &F) -> Result<Vec<Presentation<F>>> {
        self.sheaves.iter().map(|d| parse_presentation(f, &d.value, &d.path)).collect()
    }

    fn modules<F: Field>(&self, f: &F) -> Result<Vec<KroneckerModule<F>>> {
        self.modules.iter().map(|d| parse_module(f, &d.value, &d.path)).collect()
    }

    fn one_sheaf<F: Field>(&self, f: &F) -> Result<Presentation<F>> {
        let mut v = self.sheaves(f)?;
        match v.len() {
            1 => Ok(v.remove(0)),
            k => Err(Error::parse("--sheaf", format!("expected one sheaf, got {k}"))),
        }
    }

    fn one_module<F: Field>(&self, f: &F) -> Result<KroneckerModule<F>> {
        let mut v = self.modules(f)?;
        match v.len() {
            1 => Ok(v.remove(0)),
            k => Err(Error::parse("--module", format!("expected one module, got {k}"))),
        }
    }
}

fn route_name(r: Route) -> Value {
    match r {
        Route::Degenerate => json!("degenerate"),
        Route::Enumeration => json!("enumeration"),
        Route::Theta(k) => json!(format!("theta:{k}")),
        Route::Certified => json!("certified"),
    }
}

fn verdict(label: &str, witness: Value) -> Value {
    json!({"verdict": label, "witness": witness})
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

/// Commands defined over any field; `None` for the finite-field ones.
fn run_any<F: Field>(cmd: Command, inp: &Inputs, ctx: &BridgeContext<F>) -> Result<Option<Value>> {
    let f = &ctx.field;
    let slack = ctx.degree_cap;
    let out = match cmd {
        Command::Hilbert => {
            let e = inp.one_sheaf(f)?;
            let res = resolve(&e, slack)?;
            let hp = res.hilbert_polynomial();
            let (dim, mult) = match dim_and_multiplicity(&hp) {
                Ok((d, m)) => (json!(d), json!(m.to_string())),
                Err(_) => (Value::Null, Value::Null),
            };
            json!({"hilbert_polynomial": hp_to_json(&hp), "dimension": dim, "multiplicity": mult, "reg_bound": res.reg_bound()})
        }
        Command::Cohomology => {
            let e = inp.one_sheaf(f)?;
            let res = resolve(&e, slack)?;
            let table: Vec<Value> = (ctx.n..=ctx.m)
                .map(|t| json!({"twist": t, "h": (0..=res.r()).map(|i| res.cohomology(i, t)).collect::<Vec<_>>()}))
                .collect();
            json!({"table": table})
        }
        Command::Regular => {
            let e = inp.one_sheaf(f)?;
            let res = resolve(&e, slack)?;
            let top = res.reg_bound();
            let mut least = top;
            while least > top - 64 && res.is_n_regular(least - 1) {
                least -= 1;
            }
            let least = if least <= top - 64 { Value::Null } else { json!(least) };
            json!({"regular": res.is_n_regular(ctx.n), "n": ctx.n, "regularity": least})
        }
        Command::Pure => {
            let e = inp.one_sheaf(f)?;
            let res = resolve(&e, slack)?;
            json!({"pure": is_pure(&res, slack)?})
        }
        Command::Phi => {
            let e = inp.one_sheaf(f)?;
            let data = bridge::phi_data(&e, ctx)?;
            json!({"module": module_to_json(&data.module), "hilbert_polynomial": hp_to_json(&data.resolution.hilbert_polynomial())})
        }
        Command::Phidual => {
            let m = inp.one_module(f)?;
            let e = bridge::phi_dual(&m, ctx)?;
            let hp = resolve(&e, slack)?.hilbert_polynomial();
            json!({"sheaf": presentation_to_json(&e), "hilbert_polynomial": hp_to_json(&hp)})
        }
        Command::AdjointCheck => {
            if let Some(d) = inp.modules.first() {
                let m = parse_module(f, &d.value, &d.path)?;
                json!({"unit": bridge::unit_is_iso(&m, ctx)?})
            } else {
                let e = inp.one_sheaf(f)?;
                let c = bridge::counit_is_iso(&e, ctx)?;
                let m = bridge::phi(&e, ctx)?;
                json!({
                    "counit": c.iso,
                    "counit_detail": {
                        "check_degree": c.check_degree,
                        "surjective": c.surjective,
                        "hp_source": hp_to_json(&c.hp_source),
                        "hp_target": hp_to_json(&c.hp_target),
                    },
                    "unit": bridge::unit_is_iso(&m, ctx)?,
                })
            }
        }
        Command::Theta => {
            let value = match (&inp.gamma, &inp.delta) {
                (Some(g), None) => {
                    let g = parse_theta_shape(f, &g.value, &g.path)?;
                    if inp.modules.is_empty() {
                        let d = bridge::delta_from_gamma(&g, ctx)?;
                        bridge::theta_delta(&d, &inp.one_sheaf(f)?, ctx)?
                    } else {
                        kron::theta_gamma(&g, &inp.one_module(f)?)?
                    }
                }
                (None, Some(d)) => {
                    let d = parse_delta(&d.value, &d.path, ctx)?;
                    bridge::theta_delta(&d, &inp.one_sheaf(f)?, ctx)?
                }
                _ => return Err(Error::parse("--gamma/--delta", "give exactly one of --gamma and --delta")),
            };
            json!({"value": f.format(&value), "nonzero": !f.is_zero(&value)})
        }
        Command::Faltings => {
            let Some(d) = &inp.delta else {
                return Err(Error::parse("--delta", "missing"));
            };
            let d = parse_delta(&d.value, &d.path, ctx)?;
            match bridge::faltings_check(&d, &inp.one_sheaf(f)?, ctx)? {
                FaltingsOutcome::Checked {
                    agree,
                    theta_nonzero,
                    hom_dim,
                    ext1_dim,
                } => json!({
                    "outcome": "checked",
                    "agree": agree,
                    "theta_nonzero": theta_nonzero,
                    "hom_dim": hom_dim,
                    "ext1_dim": ext1_dim,
                }),
                FaltingsOutcome::HypothesisFailed(why) => json!({"outcome": "hypothesis_failed", "reason": why}),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(out))
}

fn run_finite<F: FiniteField>(cmd: Command, inp: &Inputs, ctx: &BridgeContext<F>) -> Result<Value> {
    if let Some(v) = run_any(cmd, inp, ctx)? {
        return Ok(v);
    }
    let f = &ctx.field;
    let opts = ctx.stability_options();
    let out = match cmd {
        Command::SsModule => {
            let m = inp.one_module(f)?;
            match kron::is_semistable(&m, &opts) {
                Ok(o) => {
                    let route = route_name(o.route);
                    let v = match o.verdict {
                        Verdict::Semistable => verdict("semistable", Value::Null),
                        Verdict::Unstable(s) => verdict("unstable", submodule_to_json(&s)),
                    };
                    merge(v, json!({"route": route}))
                }
                Err(Error::BudgetExhausted(why)) => merge(verdict("inconclusive", Value::Null), json!({"reason": why})),
                Err(e) => return Err(e),
            }
        }
        Command::SsSheaf => {
            let e = inp.one_sheaf(f)?;
            let oracle = if ctx.r == 1 {
                json!(bridge::p1_semistable_oracle(&e, ctx.degree_cap)?.semistable)
            } else {
                Value::Null
            };
            match bridge::sheaf_semistable(&e, ctx) {
                Ok(rep) => {
                    let route = rep.route.map(route_name).unwrap_or(Value::Null);
                    let v = match rep.verdict {
                        SheafVerdict::Semistable => verdict("semistable", Value::Null),
                        SheafVerdict::Unstable(w) => verdict(
                            "unstable",
                            json!({
                                "submodule": submodule_to_json(&w.submodule),
                                "subsheaf": presentation_to_json(&w.subsheaf),
                                "hilbert_polynomial": hp_to_json(&w.hilbert_polynomial),
                            }),
                        ),
                        SheafVerdict::NotApplicable(why) => {
                            merge(verdict("not_applicable", Value::Null), json!({"reason": why}))
                        }
                    };
                    merge(v, json!({"route": route, "oracle_semistable": oracle}))
                }
                Err(Error::BudgetExhausted(why)) => merge(
                    verdict("inconclusive", Value::Null),
                    json!({"reason": why, "oracle_semistable": oracle}),
                ),
                Err(e) => return Err(e),
            }
        }
        Command::Gr => {
            if inp.modules.is_empty() {
                let r = bridge::transport_gr(&inp.sheaves(f)?, ctx)?;
                json!({"passed": r.passed, "module_factors": r.module_factors, "sheaf_factors": r.sheaf_factors})
            } else {
                let m = inp.one_module(f)?;
                let s = kron::s_filtration(&m, &opts)?;
                json!({
                    "chain": s.chain.iter().map(submodule_to_json).collect::<Vec<_>>(),
                    "factors": s.factors.iter().map(module_to_json).collect::<Vec<_>>(),
                })
            }
        }
        Command::SEquiv => {
            let ms = inp.modules(f)?;
            if ms.len() != 2 {
                return Err(Error::parse("--module", format!("expected two modules, got {}", ms.len())));
            }
            json!({"s_equivalent": kron::s_equivalent(&ms[0], &ms[1], &opts)?})
        }
        Command::ThetaDetect => {
            let m = inp.one_module(f)?;
            let (d, big) = kron::detect_ss_theta(&m, ctx.theta_budget, ctx.max_power, ctx.seed)?;
            match d {
                Detection::Semistable { k, witness, value } => verdict(
                    "semistable",
                    json!({
                        "k": k,
                        "gamma": theta_shape_to_json(&big, &witness),
                        "value": big.format(&value),
                    }),
                ),
                Detection::Inconclusive => verdict("inconclusive", Value::Null),
            }
        }
        Command::Conditions => {
            let r = bridge::check_conditions(&inp.sheaves(f)?, ctx)?;
            let c = |c: &bridge::conditions::Condition| {
                json!({
                    "passed": c.passed,
                    "checked": c.checked,
                    "corpus_relative": c.corpus_relative,
                    "counterexamples": c.counterexamples,
                })
            };
            json!({"C1": c(&r.c1), "C2": c(&r.c2), "C3": c(&r.c3), "C4": c(&r.c4), "C5": c(&r.c5), "exhaustive": r.exhaustive})
        }
        Command::Correspondence => {
            let r = bridge::tight_correspondence(&inp.one_sheaf(f)?, ctx)?;
            let pairs: Vec<Value> = r
                .pairs
                .iter()
                .map(|p| {
                    json!({
                        "v_dim": p.v_dim,
                        "v_tight_dim": p.v_tight_dim,
                        "w_dim": p.w_dim,
                        "h0_n": p.h0_n,
                        "h0_m": p.h0_m,
                        "hilbert_polynomial": hp_to_json(&p.hp),
                        "dims_match": p.dims_match,
                        "equal_slope": p.equal_slope,
                        "factor_ok": p.factor_ok,
                    })
                })
                .collect();
            json!({
                "semistable": r.semistable,
                "exhaustive": r.exhaustive,
                "mismatches": r.mismatches,
                "factor_failures": r.factor_failures,
                "pairs": pairs,
            })
        }
        Command::Separate => {
            let r = bridge::separation_experiment(&inp.modules(f)?, &opts)?;
            let pairs: Vec<Value> = r
                .pairs
                .iter()
                .map(|p| {
                    let (label, st) = match p.outcome {
                        PairOutcome::Separated(s, t) => ("separated", json!([s, t])),
                        PairOutcome::NotSeparated => ("not_separated", Value::Null),
                        PairOutcome::Violation(s, t) => ("violation", json!([s, t])),
                        PairOutcome::BudgetExhausted => ("budget_exhausted", Value::Null),
                    };
                    json!({"i": p.i, "j": p.j, "s_equivalent": p.s_equivalent, "outcome": label, "shapes": st})
                })
                .collect();
            json!({"samples": r.samples, "field_order": r.field_order, "violations": r.violations(), "pairs": pairs})
        }
        _ => unreachable!("handled by run_any"),
    };
    Ok(out)
}

fn context<F: Field>(field: &F, cfg: &RunConfig) -> Result<BridgeContext<F>> {
    let m = cfg.m.unwrap_or(cfg.n + 1);
    let mut ctx = BridgeContext::new(field, cfg.r, cfg.n, m)?.with_degree_cap(cfg.degree_cap.map(i64::from));
    if let Some(b) = cfg.budget {
        ctx.theta_budget = b;
    }
    if let Some(k) = cfg.max_power {
        ctx.max_power = k;
    }
    ctx.seed = cfg.seed.unwrap_or(0);
    Ok(ctx)
}

fn run_in<F: Field>(
    field: &F,
    cfg: &RunConfig,
    inp: &Inputs,
    body: impl FnOnce(&BridgeContext<F>) -> Result<Value>,
) -> Result<Value> {
    let ctx = context(field, cfg)?;
    let result = body(&ctx)?;
    Ok(json!({
        "command": cfg.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "ctx": ctx_to_json(&ctx),
        "seed": ctx.seed,
        "inputs": inp.docs().map(|d| d.path.clone()).collect::<Vec<_>>(),
        "result": result,
    }))
}

/// Runs one command and returns its report document.
pub fn run(cfg: &RunConfig) -> Result<Value> {
    if cfg.command.needs_seed() && cfg.seed.is_none() {
        return Err(Error::parse("--seed", "this command samples at random and needs an explicit seed"));
    }
    let inp = Inputs::load(cfg)?;
    let cmd = cfg.command;
    match inp.field_spec(cfg.field.as_deref())? {
        FieldSpec::Rationals => run_in(&Rationals, cfg, &inp, |ctx| {
            run_any(cmd, &inp, ctx)?.ok_or(Error::InfiniteField)
        }),
        FieldSpec::Prime { p } => {
            let f = PrimeField::new(p).map_err(|e| Error::parse("--field", e.to_string()))?;
            run_in(&f, cfg, &inp, |ctx| run_finite(cmd, &inp, ctx))
        }
        FieldSpec::Extension { p, e, min_poly } => {
            let f = ExtField::with_modulus(p, e, min_poly).map_err(|e| Error::parse("--field", e.to_string()))?;
            run_in(&f, cfg, &inp, |ctx| run_finite(cmd, &inp, ctx))
        }
    }
}

/// Exit status for an error; verdicts always exit 0.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::DegreeCapExceeded { .. } => 3,
        Error::ResolutionIncomplete(_) => 4,
        Error::NotRegular(_)
        | Error::NotSemistable
        | Error::InvalidContext(_)
        | Error::WeightMismatch(_)
        | Error::DimHMismatch { .. }
        | Error::InfiniteField
        | Error::WrongDimension(_)
        | Error::VarMismatch(..)
        | Error::FieldMismatch(_)
        | Error::DimensionMismatch(_)
        | Error::InvalidField(_)
        | Error::EmptySubmodule => 5,
        _ => 1,
    }
}

/// Runs, writes the report and returns the process exit code.
pub fn main_with(cfg: &RunConfig) -> i32 {
    let res = run(cfg).and_then(|doc| write_report(&doc, cfg.out.as_deref()));
    match res {
        Ok(()) => 0,
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", json!({"error": e.to_string(), "exit_code": code}));
            code
        }
    }
}

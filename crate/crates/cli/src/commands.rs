use std::collections::BTreeMap;
use std::path::Path;

use mustafin_core::coeffs::PrimeField;
use mustafin_core::degeneration::{
    chow_closed_form, chow_component_bound, integral_model, model_ideal, monomial_components, primary_certificates,
    special_fibre_of_model, support_of_fibre, SubvarietyInput, SupportReport,
};
use mustafin_core::groebner::budget::Budget;
use mustafin_core::mustafin::{
    borel_fixed_check, check_against, conjecture_check, expected_fibre_d4, hilbert_cross_check,
    intersection_of_components, minor_pipeline_d4, minors_ideal, special_fibre, CheckMode, ComponentVector, ConjectureReport,
    HilbertReport, LatticeConfig, PipelineReport,
};
use mustafin_core::poly::{parse_poly, BlockKind, MPoly, VarUniverse};
use mustafin_core::specialize::{
    check_specialization, generic_sample, mustafin_obstructions, obstruction_polynomials,
    Assignment, ObstructionSet, ObstructionStrings, SpecializationCheck,
};
use mustafin_core::syzygy::{admissibility_certificate, curve_cover_check, AdmissibilityReport, SyzygyDatum, SyzygyStrings};
use mustafin_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::acceptance;
use crate::args::{Command, DegenCmd, ModeArg, MustafinCmd, RunConfig, SpecCmd, SuiteCmd, SyzCmd};
use crate::batch::{run_trials, BatchOptions, BatchReport};
use crate::input::{
    read_json, resolve_field, AssignmentFile, ConfigFile, CurveFile, FieldSpec, ProblemFile, Shape,
};
use crate::{CliError, Outcome};

/// Offset between a trial's configuration seed and its random curve seed.
pub const CURVE_SEED_OFFSET: u64 = 1_000_003;

/// The fully resolved inputs, embedded in every report.
#[derive(Clone, Debug, Serialize)]
struct Resolved {
    config: ConfigFile,
    seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve: Option<CurveFile>,
}

struct Ctx {
    file: ConfigFile,
    field: PrimeField,
    seeds: Vec<u64>,
    opts: BatchOptions,
}

impl Ctx {
    fn new(rc: &RunConfig) -> std::result::Result<Self, CliError> {
        let path = rc.config.as_ref().ok_or_else(|| CliError::Usage("--config is required".into()))?;
        let mut file: ConfigFile = read_json(path)?;
        let field = resolve_field(rc.field.as_deref(), file.field.as_ref())?;
        file.field = Some(FieldSpec::Text(format!("fp:{}", mustafin_core::coeffs::Field::characteristic(&field))));
        let seeds = match file.shape()? {
            Shape::Random => (0..rc.trials as u64).map(|k| rc.seed + k).collect(),
            _ if rc.trials == 0 => Vec::new(),
            _ => vec![rc.seed],
        };
        let opts = BatchOptions { threads: rc.threads, budget: Budget::from_caps(rc.cap_seconds, rc.cap_mb), verbose: rc.verbose };
        file.build(&field, rc.seed)?;
        Ok(Ctx { file, field, seeds, opts })
    }

    fn resolved(&self, curve: Option<&CurveFile>) -> Resolved {
        Resolved { config: self.file.clone(), seeds: self.seeds.clone(), curve: curve.cloned() }
    }

    fn config(&self, seed: u64) -> Result<LatticeConfig<PrimeField>> {
        self.file.build(&self.field, seed).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    fn batch<T, F>(&self, curve: Option<&CurveFile>, trial: F) -> Outcome
    where
        T: Serialize + Send,
        F: Fn(u64) -> Result<(T, bool)> + Sync,
    {
        let results = run_trials(&self.seeds, &self.opts, trial);
        let report = BatchReport::new(self.resolved(curve), results);
        Outcome::new(&report, report.all_passed())
    }
}

pub(crate) fn dispatch(rc: &RunConfig) -> std::result::Result<Outcome, CliError> {
    match &rc.command {
        Command::Mustafin { cmd } => mustafin(rc, cmd),
        Command::Degen { cmd } => degen(rc, cmd),
        Command::Spec { cmd } => spec(rc, cmd),
        Command::Syz { cmd: SyzCmd::Admissible { data, curve } } => syz(rc, data, curve.as_deref()),
        Command::Suite { cmd: SuiteCmd::Acceptance } => {
            let opts = acceptance::SuiteOptions { threads: rc.threads, ..Default::default() };
            let suite = acceptance::run_suite(&opts);
            let mut out = Outcome::new(&suite, suite.passed);
            out.lines = suite.criteria.iter().map(|c| c.line()).collect();
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct FibreTrial {
    generators: Vec<String>,
}

#[derive(Serialize)]
pub struct ConjectureTrial {
    pub report: ConjectureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertReport>,
}

/// One conjecture trial with the Hilbert comparison when the containments hold.
pub fn conjecture_trial(cfg: &LatticeConfig<PrimeField>, mode: CheckMode, hilbert_bound: u64) -> Result<(ConjectureTrial, bool)> {
    let fibre = special_fibre(cfg)?;
    let report = check_against(cfg, &fibre, mode)?;
    let hilbert = if report.equal { Some(hilbert_cross_check(cfg, &fibre, hilbert_bound)?) } else { None };
    let ok = report.equal && hilbert.as_ref().is_some_and(|h| h.agree);
    Ok((ConjectureTrial { report, hilbert }, ok))
}

#[derive(Serialize)]
struct BorelReport {
    config: ConfigFile,
    intersection_borel_fixed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    explicit_d4_borel_fixed: Option<bool>,
}

fn mustafin(rc: &RunConfig, cmd: &MustafinCmd) -> std::result::Result<Outcome, CliError> {
    let ctx = Ctx::new(rc)?;
    Ok(match cmd {
        MustafinCmd::Fibre => ctx.batch(None, |s| {
            let f = special_fibre(&ctx.config(s)?)?;
            Ok((FibreTrial { generators: f.to_strings() }, true))
        }),
        MustafinCmd::Conjecture { mode, hilbert_bound } => {
            let mode = match mode {
                ModeArg::Both => CheckMode::BothContainments,
                ModeArg::ForwardOnly => CheckMode::ForwardOnly,
            };
            ctx.batch(None, |s| conjecture_trial(&ctx.config(s)?, mode, *hilbert_bound))
        }
        MustafinCmd::Pipeline => ctx.batch(None, |s| {
            let r: PipelineReport = minor_pipeline_d4(&ctx.config(s)?)?;
            let ok = r.passed;
            Ok((r, ok))
        }),
        MustafinCmd::Borel => {
            let (d, n) = (ctx.file.d, ctx.file.n);
            let inter = intersection_of_components(&ctx.field, d, n).map_err(CliError::input)?;
            let a = borel_fixed_check(&inter, d, n).map_err(CliError::input)?;
            let b = if d == 4 && n == 3 {
                let e = expected_fibre_d4(&ctx.field, n).map_err(CliError::input)?;
                Some(borel_fixed_check(&e, d, n).map_err(CliError::input)?)
            } else {
                None
            };
            let r = BorelReport { config: ctx.file.clone(), intersection_borel_fixed: a, explicit_d4_borel_fixed: b };
            Outcome::new(&r, a && b.unwrap_or(true))
        }
    })
}

#[derive(Serialize)]
struct ModelTrial {
    curve: Vec<String>,
    generators: Vec<String>,
}

#[derive(Serialize)]
pub struct FibreComponents {
    pub fibre: Vec<String>,
    pub components: Vec<Vec<String>>,
    pub certified: bool,
    /// Primary component vectors whose ideal lies in each component.
    pub certificates: Vec<Vec<ComponentVector>>,
    /// Distinct primary vectors over all components.
    pub fired: usize,
}

pub fn fibre_components(cfg: &LatticeConfig<PrimeField>, fibre: &mustafin_core::poly::Ideal<PrimeField>) -> Result<FibreComponents> {
    let comps = monomial_components(cfg, fibre)?;
    let certificates = primary_certificates(cfg.d, cfg.n, &comps);
    let mut fired: Vec<&ComponentVector> = certificates.iter().flatten().collect();
    fired.sort();
    fired.dedup();
    Ok(FibreComponents {
        fibre: fibre.to_strings(),
        fired: fired.len(),
        components: comps.primes,
        certified: comps.certified,
        certificates,
    })
}

#[derive(Serialize)]
pub struct SupportTrial {
    pub curve: Vec<String>,
    pub support: SupportReport,
    pub components: FibreComponents,
    pub bound: u64,
}

/// Support analysis of one curve, with component certificates and the bound.
pub fn support_trial(cfg: &LatticeConfig<PrimeField>, x: &SubvarietyInput<PrimeField>) -> Result<(SupportTrial, bool)> {
    if !conjecture_check(cfg, CheckMode::BothContainments)?.equal {
        return Err(Error::Genericity("genericity violated, resample".into()));
    }
    let fibre = special_fibre_of_model(cfg, x)?;
    let support = support_of_fibre(cfg, &fibre)?;
    let components = fibre_components(cfg, &fibre)?;
    let bound = chow_component_bound(cfg.d, cfg.n, x.dim, x.degree)?;
    let ok = support.delta == Some(1)
        && support.star_like
        && components.certified
        && components.certificates.iter().all(|c| c.len() == 1)
        && components.fired as u64 <= bound;
    let curve = x.gens.iter().map(|g| g.to_string()).collect();
    Ok((SupportTrial { curve, support, components, bound }, ok))
}

#[derive(Serialize)]
struct BoundReport {
    config: ConfigFile,
    curve: CurveFile,
    dim: usize,
    degree: u64,
    bound: u64,
    closed_form: u64,
}

fn degen(rc: &RunConfig, cmd: &DegenCmd) -> std::result::Result<Outcome, CliError> {
    let mut ctx = Ctx::new(rc)?;
    let path = match cmd {
        DegenCmd::Model { curve } | DegenCmd::Fibre { curve } | DegenCmd::Support { curve } | DegenCmd::Bound { curve } => curve,
    };
    let curve: CurveFile = read_json(path)?;
    let d = ctx.file.d;
    curve.build(&ctx.field, d, rc.seed + CURVE_SEED_OFFSET)?;
    if curve.is_random() && ctx.file.shape()? != Shape::Random && rc.trials > 1 {
        ctx.seeds = (0..rc.trials as u64).map(|k| rc.seed + k).collect();
    }
    let field = ctx.field;
    let x_for = |s: u64| curve.build(&field, d, s + CURVE_SEED_OFFSET).map_err(|e| Error::InvalidConfig(e.to_string()));
    Ok(match cmd {
        DegenCmd::Model { .. } => ctx.batch(Some(&curve), |s| {
            let cfg = ctx.config(s)?;
            let x = x_for(s)?;
            let m = model_ideal(&cfg, &x)?;
            let (m, _) = integral_model(&m, cfg.pi_var(), Some(&cfg.bayer_weights()))?;
            Ok((ModelTrial { curve: x.gens.iter().map(|g| g.to_string()).collect(), generators: m.to_strings() }, true))
        }),
        DegenCmd::Fibre { .. } => ctx.batch(Some(&curve), |s| {
            let cfg = ctx.config(s)?;
            let fibre = special_fibre_of_model(&cfg, &x_for(s)?)?;
            let c = fibre_components(&cfg, &fibre)?;
            let ok = c.certified;
            Ok((c, ok))
        }),
        DegenCmd::Support { .. } => ctx.batch(Some(&curve), |s| support_trial(&ctx.config(s)?, &x_for(s)?)),
        DegenCmd::Bound { .. } => {
            let x = x_for(rc.seed).map_err(CliError::input)?;
            let bound = chow_component_bound(d, ctx.file.n, x.dim, x.degree).map_err(CliError::input)?;
            let r = BoundReport {
                config: ctx.file.clone(),
                curve,
                dim: x.dim,
                degree: x.degree,
                bound,
                closed_form: chow_closed_form(ctx.file.n, x.dim, x.degree),
            };
            Outcome::new(&r, true)
        }
    })
}

/// A free problem: generators and saturating element in a named universe.
struct Problem {
    gens: Vec<MPoly<PrimeField>>,
    a: MPoly<PrimeField>,
}

fn problem(field: &PrimeField, p: &ProblemFile) -> std::result::Result<Problem, CliError> {
    let u = VarUniverse::new(p.variables.iter().cloned()).map_err(CliError::input)?;
    let parse = |s: &str| parse_poly(field, &u, s).map_err(|e| CliError::Usage(format!("`{s}`: {e}")));
    let gens = p.gens.iter().map(|s| parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    let a = parse(p.a.as_deref().unwrap_or("pi"))?;
    Ok(Problem { gens, a })
}

fn assignment(field: &PrimeField, a: &AssignmentFile) -> std::result::Result<Assignment<PrimeField>, CliError> {
    Assignment::parse(field, a.iter().map(|(k, v)| (k.as_str(), v.as_str()))).map_err(CliError::input)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CheckData {
    Problem(ProblemFile),
    Assignment(AssignmentFile),
}

#[derive(Serialize)]
struct ObstructionReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<ConfigFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    problem: Option<ProblemFile>,
    obstructions: ObstructionStrings,
}

#[derive(Serialize)]
struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<ConfigFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    problem: Option<ProblemFile>,
    assignment: BTreeMap<String, String>,
    check: SpecializationCheck,
}

#[derive(Serialize)]
struct SampleTrial {
    assignment: BTreeMap<String, String>,
    attempts: usize,
}

fn spec(rc: &RunConfig, cmd: &SpecCmd) -> std::result::Result<Outcome, CliError> {
    let mut assignment_file = None;
    let problem_file = match cmd {
        SpecCmd::Obstructions { data: Some(p), .. } => Some(read_json::<ProblemFile>(p)?),
        SpecCmd::Check { data } => match read_json::<CheckData>(data)? {
            CheckData::Problem(p) => Some(p),
            CheckData::Assignment(m) => {
                assignment_file = Some(m);
                None
            }
        },
        _ => None,
    };
    if let Some(pf) = problem_file {
        let field = resolve_field(rc.field.as_deref(), None)?;
        let pr = problem(&field, &pf)?;
        return Ok(match cmd {
            SpecCmd::Check { .. } => {
                let a = assignment(&field, pf.assignment.as_ref().ok_or_else(|| CliError::Usage("problem file lacks an assignment".into()))?)?;
                let check = check_specialization(&pr.gens, &pr.a, &a, &BlockKind::DegRevLex).map_err(CliError::input)?;
                let ok = check.passed;
                let r = CheckReport { config: None, assignment: a.to_strings(), problem: Some(pf), check };
                Outcome::new(&r, ok)
            }
            _ => {
                let obs = obstruction_polynomials(&pr.gens, &pr.a, &BlockKind::DegRevLex).map_err(CliError::input)?;
                let r = ObstructionReport { config: None, problem: Some(pf), obstructions: obs.to_strings() };
                Outcome::new(&r, obs.complete)
            }
        });
    }
    let ctx = Ctx::new(rc)?;
    let (d, n, n_vec) = (ctx.file.d, ctx.file.n, ctx.file.n_vec.clone());
    let symbolic = LatticeConfig::symbolic(&ctx.field, d, n, n_vec).map_err(CliError::input)?;
    Ok(match cmd {
        SpecCmd::Obstructions { force, .. } => {
            let obs = mustafin_core::groebner::budget::with_budget(ctx.opts.budget, || mustafin_obstructions(&symbolic, *force))
                .map_err(CliError::input)?;
            let r = ObstructionReport { config: Some(ctx.file.clone()), problem: None, obstructions: obs.to_strings() };
            Outcome::new(&r, obs.complete)
        }
        SpecCmd::Check { .. } => {
            let map = assignment_file.unwrap_or_default();
            let a = assignment(&ctx.field, &map)?;
            let minors = minors_ideal(&symbolic).map_err(CliError::input)?;
            let pi = MPoly::var(&ctx.field, minors.universe(), symbolic.pi_var());
            let check = check_specialization(minors.generators(), &pi, &a, &BlockKind::DegRevLex).map_err(CliError::input)?;
            let ok = check.passed;
            let r = CheckReport { config: Some(ctx.file.clone()), problem: None, assignment: a.to_strings(), check };
            Outcome::new(&r, ok)
        }
        SpecCmd::Sample { cap, data } => {
            let obs = match data {
                Some(p) => {
                    let s: ObstructionStrings = read_json(p)?;
                    Some(ObstructionSet::parse(&ctx.field, &symbolic.universe(), &s).map_err(CliError::input)?)
                }
                None => None,
            };
            let mut seeds_ctx = ctx;
            seeds_ctx.seeds = (0..rc.trials as u64).map(|k| rc.seed + k).collect();
            let field = seeds_ctx.field;
            seeds_ctx.batch(None, |s| {
                let r = generic_sample(s, &field, d, n, obs.as_ref(), *cap)?;
                Ok((SampleTrial { assignment: r.assignment.to_strings(), attempts: r.attempts }, true))
            })
        }
    })
}

#[derive(Serialize)]
struct SyzTrial {
    datum: SyzygyStrings,
    admissibility: AdmissibilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    covers_curve: Option<bool>,
}

fn syz(rc: &RunConfig, data: &Path, curve: Option<&Path>) -> std::result::Result<Outcome, CliError> {
    let ctx = Ctx::new(rc)?;
    let strings: SyzygyStrings = read_json(data)?;
    let curve: Option<CurveFile> = curve.map(read_json).transpose()?;
    let d = ctx.file.d;
    SyzygyDatum::parse(&ctx.config(rc.seed).map_err(CliError::input)?, &strings).map_err(CliError::input)?;
    Ok(ctx.batch(curve.as_ref(), |s| {
        let cfg = ctx.config(s)?;
        let datum = SyzygyDatum::parse(&cfg, &strings)?;
        let adm = admissibility_certificate(&datum, &cfg)?;
        let covers = match &curve {
            Some(c) => {
                let x = c.build(&ctx.field, d, s + CURVE_SEED_OFFSET).map_err(|e| Error::InvalidConfig(e.to_string()))?;
                let forms: Vec<_> = adm.forms.iter().map(|f| f.numerator.clone()).collect();
                Some(curve_cover_check(&x, &forms)?)
            }
            None => None,
        };
        let ok = adm.admissible && covers.unwrap_or(true);
        Ok((SyzTrial { datum: datum.to_strings(), admissibility: adm.report(), covers_curve: covers }, ok))
    }))
}

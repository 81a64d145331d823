//! The substitution `A_i ↦ a_i` of parameters by elements of L[π], the
//! conditions on the `a_i` under which a symbolic Groebner basis of a
//! saturation specializes to one, and seeded sampling of assignments
//! satisfying them.
//!
//! Parameters are the variables whose names start with `A`. They live in the
//! lowest block of every order here, together with `pi`, so a basis over the
//! base field doubles as a basis over the coefficient ring `L[π, A]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffs::{Field, PiPoly, PiRing};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_groebner, normal_form, saturate_with_order, GroebnerBasis, Reducer, RingMode};
use crate::linalg::det_field;
use crate::mustafin::{minors_ideal, parameter_name, Entries, LatticeConfig};
use crate::poly::{parse_poly, BlockKind, Ideal, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};

/// Largest symbolic lattice shape attempted without an explicit override.
pub const SYMBOLIC_CAP: (usize, usize) = (3, 2);

pub fn is_parameter(name: &str) -> bool {
    name.starts_with('A')
}

pub fn parameter_vars(u: &VarUniverse) -> Vec<usize> {
    (0..u.len()).filter(|&v| is_parameter(u.name(v))).collect()
}

/// Values in L[π] for parameter names.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<F: Field> {
    pub field: F,
    pub values: BTreeMap<String, PiPoly<F::Elem>>,
}

impl<F: Field> Assignment<F> {
    pub fn new(field: &F) -> Self {
        Assignment { field: field.clone(), values: BTreeMap::new() }
    }

    pub fn set(&mut self, name: &str, value: PiPoly<F::Elem>) {
        self.values.insert(name.to_string(), value);
    }

    pub fn set_constant(&mut self, name: &str, c: F::Elem) {
        let v = PiRing::new(self.field.clone()).constant(c);
        self.set(name, v);
    }

    /// Values written as polynomials in `pi`.
    pub fn parse<'a>(field: &F, entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let u = VarUniverse::new(["pi"])?;
        let ring = PiRing::new(field.clone());
        let mut out = Self::new(field);
        for (name, text) in entries {
            let p = parse_poly(field, &u, text)?;
            let top = p.terms().iter().map(|(m, _)| m.exp(0) as usize).max().unwrap_or(0);
            let mut coeffs = vec![field.zero(); top + 1];
            for (m, c) in p.terms() {
                coeffs[m.exp(0) as usize] = c.clone();
            }
            out.set(name, ring.from_coeffs(coeffs));
        }
        Ok(out)
    }

    /// Values as text, keyed by parameter name.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        let u = VarUniverse::new(["pi"]).expect("one name");
        self.values
            .iter()
            .map(|(k, v)| {
                let terms = v
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !self.field.is_zero(c))
                    .map(|(e, c)| (Monomial::var(1, 0, e as u32), c.clone()))
                    .collect::<Vec<_>>();
                (k.clone(), MPoly::from_terms(&self.field, &u, terms).to_string())
            })
            .collect()
    }
}

/// `u` without its parameter variables.
pub fn specialized_universe(u: &VarUniverse) -> Result<Arc<VarUniverse>> {
    VarUniverse::new(u.names().iter().filter(|n| !is_parameter(n)).cloned())
}

fn value_poly<F: Field>(field: &F, target: &Arc<VarUniverse>, name: &str, v: &PiPoly<F::Elem>) -> Result<MPoly<F>> {
    let nonconstant = v.coeffs().len() > 1;
    let terms: Vec<(Monomial, F::Elem)> = match target.index_of("pi") {
        Some(pi) => v
            .coeffs()
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::var(target.len(), pi, e as u32), c.clone()))
            .collect(),
        None if nonconstant => {
            return Err(Error::InvalidConfig(format!("value of {name} involves pi, which the target lacks")));
        }
        None => v.coeffs().iter().map(|c| (Monomial::one(target.len()), c.clone())).collect(),
    };
    Ok(MPoly::from_terms(field, target, terms))
}

/// Image of `f` under `A_i ↦ a_i`, in [`specialized_universe`].
pub fn subst<F: Field>(a: &Assignment<F>, f: &MPoly<F>) -> Result<MPoly<F>> {
    let target = specialized_universe(f.universe())?;
    subst_into(a, f, &target)
}

fn subst_into<F: Field>(a: &Assignment<F>, f: &MPoly<F>, target: &Arc<VarUniverse>) -> Result<MPoly<F>> {
    let u = f.universe();
    let mut images = HashMap::new();
    for v in f.support_vars() {
        let name = u.name(v);
        if !is_parameter(name) {
            continue;
        }
        let val = a.values.get(name).ok_or_else(|| Error::UncoveredParameter(name.to_string()))?;
        images.insert(v, value_poly(&a.field, target, name, val)?);
    }
    f.substitute_into(target, &images)
}

pub fn subst_ideal<F: Field>(a: &Assignment<F>, ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let target = specialized_universe(ideal.universe())?;
    let gens = ideal.generators().iter().map(|g| subst_into(a, g, &target)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), &target, gens.into_iter().filter(|g| !g.is_zero()).collect())
}

/// Conditions on an assignment: `unit_conditions` must specialize to units of
/// the valuation ring (nonzero at π = 0), `nonzero_conditions` to nonzero
/// elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionSet<F: Field> {
    pub unit_conditions: Vec<MPoly<F>>,
    pub nonzero_conditions: Vec<MPoly<F>>,
    /// False when a resource cap cut the computation short.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionStrings {
    pub unit_conditions: Vec<String>,
    pub nonzero_conditions: Vec<String>,
    pub complete: bool,
}

impl<F: Field> ObstructionSet<F> {
    pub fn to_strings(&self) -> ObstructionStrings {
        ObstructionStrings {
            unit_conditions: self.unit_conditions.iter().map(|p| p.to_string()).collect(),
            nonzero_conditions: self.nonzero_conditions.iter().map(|p| p.to_string()).collect(),
            complete: self.complete,
        }
    }

    pub fn parse(field: &F, u: &Arc<VarUniverse>, s: &ObstructionStrings) -> Result<Self> {
        let p = |v: &[String]| v.iter().map(|t| parse_poly(field, u, t)).collect::<Result<Vec<_>>>();
        Ok(ObstructionSet {
            unit_conditions: p(&s.unit_conditions)?,
            nonzero_conditions: p(&s.nonzero_conditions)?,
            complete: s.complete,
        })
    }
}

/// The symbolic side: `⟨gens, 1 - y·a⟩` in the order `[y] > [main] > [π] > [A]`.
struct Symbolic<F: Field> {
    big: Arc<VarUniverse>,
    y: usize,
    /// The parameters.
    lower: Vec<usize>,
    order: TermOrder,
    gens: Vec<MPoly<F>>,
}

fn symbolic<F: Field>(gens: &[MPoly<F>], a: &MPoly<F>, main_kind: &BlockKind) -> Result<Symbolic<F>> {
    let u = a.universe().clone();
    let field = a.ring().clone();
    let yname = u.fresh_names("y", 1);
    let big = u.extend(&yname)?;
    let y = u.len();
    let pi = u.index_of("pi");
    let lower: Vec<usize> = (0..u.len()).filter(|&v| is_parameter(u.name(v))).collect();
    let main: Vec<usize> = (0..u.len()).filter(|&v| !lower.contains(&v) && Some(v) != pi).collect();
    let mut blocks = vec![OrderBlock::new(vec![y], BlockKind::DegRevLex)];
    if !main.is_empty() {
        blocks.push(OrderBlock::new(main, main_kind.clone()));
    }
    if let Some(v) = pi {
        blocks.push(OrderBlock::new(vec![v], BlockKind::DegRevLex));
    }
    if !lower.is_empty() {
        blocks.push(OrderBlock::new(lower.clone(), BlockKind::DegRevLex));
    }
    let order = TermOrder::block(&big, blocks)?;
    let mut all = gens.iter().map(|g| g.change_universe(&big)).collect::<Result<Vec<_>>>()?;
    let yv = MPoly::var(&field, &big, y);
    all.push(&MPoly::one(&field, &big) - &(&yv * &a.change_universe(&big)?));
    Ok(Symbolic { big, y, lower, order, gens: all })
}

impl<F: Field> Symbolic<F> {
    /// Leading coefficient of `f` over `L[A]`: the terms sharing the
    /// non-parameter part of the leading monomial, with that part removed.
    fn leading_coeff(&self, f: &MPoly<F>) -> Result<MPoly<F>> {
        let lm = f.leading_monomial(&self.order)?;
        let main_part = |m: &Monomial| -> Vec<u32> {
            m.exps().iter().enumerate().map(|(v, &e)| if self.lower.contains(&v) { 0 } else { e }).collect()
        };
        let key = main_part(lm);
        let terms: Vec<_> = f
            .terms()
            .iter()
            .filter(|(m, _)| main_part(m) == key)
            .map(|(m, c)| {
                let e: Vec<u32> = m.exps().iter().enumerate().map(|(v, &e)| if self.lower.contains(&v) { e } else { 0 }).collect();
                (Monomial::from_exps(e), c.clone())
            })
            .collect();
        Ok(MPoly::from_terms(f.ring(), &self.big, terms))
    }

    fn pi(&self) -> Option<usize> {
        self.big.index_of("pi")
    }
}

/// Divides out the π-content and the leading coefficient; `None` for constants.
fn condition<F: Field>(p: &MPoly<F>, pi: Option<usize>, target: &Arc<VarUniverse>) -> Result<Option<MPoly<F>>> {
    let p = match pi {
        Some(v) => {
            let k = p.terms().iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
            p.divide_monomial(&Monomial::var(p.nvars(), v, k)).expect("power divides every term")
        }
        None => p.clone(),
    };
    if p.is_constant() {
        return Ok(None);
    }
    let order = TermOrder::degrevlex(p.universe());
    let lc = p.leading_coeff(&order)?.clone();
    let monic = p.scale(&p.ring().inv(&lc)?);
    Ok(Some(monic.change_universe(target)?))
}

fn push_unique<F: Field>(v: &mut Vec<MPoly<F>>, p: MPoly<F>) {
    if !v.contains(&p) {
        v.push(p);
    }
}

fn s_polynomial<F: Field>(f: &MPoly<F>, g: &MPoly<F>, order: &TermOrder) -> Result<Option<MPoly<F>>> {
    let (cf, mf) = f.leading_term(order)?;
    let (cg, mg) = g.leading_term(order)?;
    if mf.lcm(mg) == mf.mul(mg) {
        return Ok(None);
    }
    let l = mf.lcm(mg);
    let ring = f.ring();
    let a = f.mul_term(&ring.inv(cf)?, &l.div(mf).expect("divides"))?;
    let b = g.mul_term(&ring.inv(cg)?, &l.div(mg).expect("divides"))?;
    Ok(Some(&a - &b))
}

fn obstructions_of<F: Field>(s: &Symbolic<F>, gb: &GroebnerBasis<F>, target: &Arc<VarUniverse>) -> Result<ObstructionSet<F>> {
    let pi = s.pi();
    let mut units = Vec::new();
    for g in gb.elements() {
        if let Some(c) = condition(&s.leading_coeff(g)?, pi, target)? {
            push_unique(&mut units, c);
        }
    }
    let mut nonzero = Vec::new();
    let mut complete = true;
    let elems = gb.elements();
    'pairs: for j in 0..elems.len() {
        for i in 0..j {
            let Some(sp) = s_polynomial(&elems[i], &elems[j], &s.order)? else { continue };
            let trace = match normal_form(&sp, elems, &s.order) {
                Ok((_, t)) => t,
                Err(Error::ResourceCapped(_)) => {
                    complete = false;
                    break 'pairs;
                }
                Err(e) => return Err(e),
            };
            for h in trace.intermediates(&sp, elems)? {
                if h.is_zero() {
                    continue;
                }
                if let Some(c) = condition(&s.leading_coeff(&h)?, pi, target)? {
                    push_unique(&mut nonzero, c);
                }
            }
        }
    }
    Ok(ObstructionSet { unit_conditions: units, nonzero_conditions: nonzero, complete })
}

/// The polynomials of the parameters whose specializations must be units,
/// respectively nonzero, for the symbolic basis of `sat(⟨gens⟩, a)` to
/// specialize to a basis of the specialized saturation.
pub fn obstruction_polynomials<F: Field>(gens: &[MPoly<F>], a: &MPoly<F>, main_kind: &BlockKind) -> Result<ObstructionSet<F>> {
    let s = symbolic(gens, a, main_kind)?;
    let target = a.universe().clone();
    let gb = match buchberger(&s.gens, &s.order, RingMode::Field) {
        Ok(gb) => gb,
        Err(Error::ResourceCapped(_)) => {
            return Ok(ObstructionSet { unit_conditions: Vec::new(), nonzero_conditions: Vec::new(), complete: false })
        }
        Err(e) => return Err(e),
    };
    obstructions_of(&s, &gb, &target)
}

/// Obstructions of the symbolic lattice configuration's saturation by π.
/// Shapes beyond [`SYMBOLIC_CAP`] are refused unless `force` is set.
pub fn mustafin_obstructions<F: Field>(config: &LatticeConfig<F>, force: bool) -> Result<ObstructionSet<F>> {
    if config.is_concrete() {
        return Err(Error::InvalidConfig("symbolic entries required".into()));
    }
    if !force && (config.d > SYMBOLIC_CAP.0 || config.n > SYMBOLIC_CAP.1) {
        return Err(Error::ResourceCapped(format!(
            "symbolic runs are limited to d <= {}, n <= {}",
            SYMBOLIC_CAP.0, SYMBOLIC_CAP.1
        )));
    }
    let minors = minors_ideal(config)?;
    let pi = MPoly::var(&config.field, minors.universe(), config.pi_var());
    obstruction_polynomials(minors.generators(), &pi, &BlockKind::DegRevLex)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationCheck {
    /// The specialized symbolic basis is a Groebner basis.
    pub is_groebner: bool,
    /// Specializing the saturation equals saturating the specialization.
    pub commutes: bool,
    pub passed: bool,
    pub diagnosis: Vec<String>,
}

fn is_unit_value<F: Field>(p: &MPoly<F>) -> bool {
    let pi = p.universe().index_of("pi");
    p.terms().iter().any(|(m, _)| pi.is_none_or(|v| m.exp(v) == 0))
}

/// Evaluates the conditions; returns the violated ones as diagnosis lines.
pub fn violated_conditions<F: Field>(obs: &ObstructionSet<F>, a: &Assignment<F>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for u in &obs.unit_conditions {
        if !is_unit_value(&subst(a, u)?) {
            out.push(format!("unit condition {u} violated"));
        }
    }
    for p in &obs.nonzero_conditions {
        if subst(a, p)?.is_zero() {
            out.push(format!("nonzero condition {p} violated"));
        }
    }
    Ok(out)
}

fn restrict_order(order: &TermOrder, target: &Arc<VarUniverse>) -> Result<TermOrder> {
    let src = order.universe();
    let blocks = order
        .blocks()
        .iter()
        .filter_map(|b| {
            let vars: Vec<usize> = b.vars.iter().filter_map(|&v| target.index_of(src.name(v))).collect();
            if vars.is_empty() {
                return None;
            }
            let kind = match &b.kind {
                BlockKind::WeightedDegRevLex(w) => BlockKind::WeightedDegRevLex(
                    b.vars.iter().zip(w).filter(|(v, _)| target.index_of(src.name(**v)).is_some()).map(|(_, &x)| x).collect(),
                ),
                k => k.clone(),
            };
            Some(OrderBlock::new(vars, kind))
        })
        .collect();
    TermOrder::block(target, blocks)
}

fn same_ideal<F: Field>(field: &F, a: &[MPoly<F>], b: &[MPoly<F>], order: &TermOrder) -> Result<bool> {
    let ga = buchberger(a, order, RingMode::Field)?;
    let gb = buchberger(b, order, RingMode::Field)?;
    let ra = Reducer::new(field, ga.elements(), order)?;
    let rb = Reducer::new(field, gb.elements(), order)?;
    for g in gb.elements() {
        if !ra.reduces_to_zero(g)? {
            return Ok(false);
        }
    }
    for g in ga.elements() {
        if !rb.reduces_to_zero(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Specializes the symbolic basis of `⟨gens, 1 - y·a⟩` and checks that it is
/// a Groebner basis and that saturation commutes with the substitution.
pub fn check_specialization<F: Field>(
    gens: &[MPoly<F>],
    a: &MPoly<F>,
    assignment: &Assignment<F>,
    main_kind: &BlockKind,
) -> Result<SpecializationCheck> {
    let field = a.ring().clone();
    let s = symbolic(gens, a, main_kind)?;
    let gb = buchberger(&s.gens, &s.order, RingMode::Field)?;
    let obs = obstructions_of(&s, &gb, a.universe())?;
    let mut diagnosis = violated_conditions(&obs, assignment)?;

    let big_t = specialized_universe(&s.big)?;
    let order_t = restrict_order(&s.order, &big_t)?;
    let spec: Vec<MPoly<F>> = gb
        .elements()
        .iter()
        .map(|g| subst_into(assignment, g, &big_t))
        .filter(|g| !matches!(g, Ok(p) if p.is_zero()))
        .collect::<Result<_>>()?;
    let is_gb = is_groebner(&spec, &order_t, RingMode::Field)?.is_groebner;
    if !is_gb {
        diagnosis.push("specialized basis is not a Groebner basis".into());
    }

    let target = specialized_universe(a.universe())?;
    let y_name = s.big.name(s.y).to_string();
    let left: Vec<MPoly<F>> = spec
        .iter()
        .filter(|g| !g.involves(big_t.index_of(&y_name).expect("y kept")))
        .map(|g| g.change_universe(&target))
        .collect::<Result<_>>()?;
    let order_small = restrict_order(&s.order, &target)?;
    let conc = gens.iter().map(|g| subst_into(assignment, g, &target)).collect::<Result<Vec<_>>>()?;
    let conc: Vec<_> = conc.into_iter().filter(|g| !g.is_zero()).collect();
    let a_conc = subst_into(assignment, a, &target)?;
    let right = if a_conc.is_zero() {
        vec![MPoly::one(&field, &target)]
    } else {
        let sat = saturate_with_order(&Ideal::new(&field, &target, conc)?, &[a_conc], &order_small)?;
        sat.groebner_basis(&order_small)?
    };
    let commutes = same_ideal(&field, &left, &right, &order_small)?;
    if !commutes {
        diagnosis.push("saturation does not commute with the substitution".into());
    }
    Ok(SpecializationCheck { is_groebner: is_gb, commutes, passed: is_gb && commutes, diagnosis })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport<F: Field> {
    pub assignment: Assignment<F>,
    pub attempts: usize,
}

/// Uniform assignment of every `A[i][j][l]` for the shape `(d, n)` with all
/// `M_l` invertible modulo π, redrawn until the obstructions (if given) hold.
pub fn generic_sample<F: Field>(
    seed: u64,
    field: &F,
    d: usize,
    n: usize,
    obstructions: Option<&ObstructionSet<F>>,
    cap: usize,
) -> Result<SampleReport<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violated = String::from("none checked");
    for attempt in 1..=cap.max(1) {
        let mut a = Assignment::new(field);
        let mut mats = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let mut m = vec![vec![field.zero(); d]; d];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = field.sample_from(rng.gen());
                    a.set_constant(&parameter_name(i + 1, j + 1, l), x.clone());
                }
            }
            mats.push(m);
        }
        if let Some(l) = mats.iter().position(|m| field.is_zero(&det_field(field, m))) {
            violated = format!("M_{l} singular modulo pi");
            continue;
        }
        if let Some(obs) = obstructions {
            let bad = violated_conditions(obs, &a)?;
            if let Some(first) = bad.into_iter().next() {
                violated = first;
                continue;
            }
        }
        return Ok(SampleReport { assignment: a, attempts: attempt });
    }
    Err(Error::SampleCap { attempts: cap.max(1), violated })
}

/// Uniform constant values for `names`, redrawn until the obstructions (if
/// given) hold.
pub fn sample_assignment<F: Field>(
    seed: u64,
    field: &F,
    names: &[String],
    obstructions: Option<&ObstructionSet<F>>,
    cap: usize,
) -> Result<SampleReport<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violated = String::from("none checked");
    for attempt in 1..=cap.max(1) {
        let mut a = Assignment::new(field);
        for name in names {
            a.set_constant(name, field.sample_from(rng.gen()));
        }
        match obstructions.map(|o| violated_conditions(o, &a)).transpose()?.and_then(|v| v.into_iter().next()) {
            Some(first) => violated = first,
            None => return Ok(SampleReport { assignment: a, attempts: attempt }),
        }
    }
    Err(Error::SampleCap { attempts: cap.max(1), violated })
}

/// The concrete configuration with entries read from `assignment`.
pub fn config_from_assignment<F: Field>(
    field: &F,
    d: usize,
    n: usize,
    n_vec: Vec<u32>,
    assignment: &Assignment<F>,
) -> Result<LatticeConfig<F>> {
    let mut mats = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let mut m = Vec::with_capacity(d);
        for i in 1..=d {
            let mut row = Vec::with_capacity(d);
            for j in 1..=d {
                let name = parameter_name(i, j, l);
                row.push(assignment.values.get(&name).cloned().ok_or(Error::UncoveredParameter(name))?);
            }
            m.push(row);
        }
        mats.push(m);
    }
    LatticeConfig::new(field, d, n, n_vec, Entries::Concrete(mats))
}

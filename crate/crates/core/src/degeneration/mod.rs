//! Mustafin models of subvarieties `X ⊂ ℙ^{d-1}`: the closure of the image of
//! `X` under `(g_0^{-1}, …, g_n^{-1})∘Δ`, its integral model and special fibre,
//! and the position of that fibre among the components `V(I_v)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, intersect_monomial_ideals, is_weighted_homogeneous, radical_membership, saturate_by_variable,
    saturate_with_order, GroebnerBasis, Reducer, RingMode,
};
use crate::linalg::{adjugate_poly, det_field, det_poly};
use crate::mustafin::{
    build_g, component_length, component_vectors, conjecture_check, fibre_of_saturated, ideal_iv, primary_flag, star_flag,
    working_order, CheckMode, ComponentVector, LatticeConfig,
};
use crate::poly::{grid_blocks, grid_index, grid_name, parse_poly, BlockKind, Ideal, MPoly, Monomial, OrderBlock, TermOrder, VarUniverse};

/// `y1, …, yd, pi`: the ambient coordinates of `X` and the uniformizer.
pub fn y_universe(d: usize) -> Arc<VarUniverse> {
    VarUniverse::new((1..=d).map(|k| format!("y{k}")).chain(std::iter::once("pi".to_string())))
        .expect("distinct names")
}

/// A projective subvariety `X = V(I′)` with its declared dimension and degree.
#[derive(Clone, Debug)]
pub struct SubvarietyInput<F: Field> {
    pub d: usize,
    pub field: F,
    /// Generators in [`y_universe`], homogeneous in the `y` variables.
    pub gens: Vec<MPoly<F>>,
    pub dim: usize,
    pub degree: u64,
}

impl<F: Field> SubvarietyInput<F> {
    pub fn new(field: &F, d: usize, gens: Vec<MPoly<F>>, dim: usize, degree: u64) -> Result<Self> {
        if d < 2 || dim > d - 1 || degree == 0 {
            return Err(Error::InvalidConfig(format!("bad subvariety data: d = {d}, dim = {dim}, degree = {degree}")));
        }
        let u = y_universe(d);
        let ys = vec![(0..d).collect::<Vec<_>>()];
        let mut moved = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.change_universe(&u)?;
            if !g.is_multihomogeneous(&ys) {
                return Err(Error::InvalidConfig(format!("generator {g} is not homogeneous in y")));
            }
            moved.push(g);
        }
        Ok(SubvarietyInput { d, field: field.clone(), gens: moved, dim, degree })
    }

    /// Parses generators written in `y1, …, yd` and `pi`.
    pub fn parse(field: &F, d: usize, gens: &[String], dim: usize, degree: u64) -> Result<Self> {
        let u = y_universe(d);
        let gens = gens.iter().map(|s| parse_poly(field, &u, s)).collect::<Result<Vec<_>>>()?;
        Self::new(field, d, gens, dim, degree)
    }

    pub fn whole_space(field: &F, d: usize) -> Result<Self> {
        Self::new(field, d, Vec::new(), d - 1, 1)
    }

    /// The coordinate point `V(y2, …, yd)`.
    pub fn coordinate_point(field: &F, d: usize) -> Result<Self> {
        let u = y_universe(d);
        Self::new(field, d, (1..d).map(|k| MPoly::var(field, &u, k)).collect(), 0, 1)
    }

    /// Intersection of `codim` seeded random hyperplanes.
    pub fn random_linear(field: &F, d: usize, codim: usize, seed: u64) -> Result<Self> {
        if codim >= d {
            return Err(Error::InvalidConfig("codimension must be below d".into()));
        }
        let u = y_universe(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = (0..codim)
            .map(|_| {
                let terms: Vec<_> = (0..d).map(|k| (Monomial::var(u.len(), k, 1), field.sample_from(rng.gen()))).collect();
                MPoly::from_terms(field, &u, terms)
            })
            .collect();
        Self::new(field, d, gens, d - 1 - codim, 1)
    }
    /// A seeded random quadric `yᵀ S y` with `S` symmetric and nonsingular,
    /// so smooth when the characteristic is odd.
    pub fn random_quadric(field: &F, d: usize, seed: u64) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidConfig("quadrics need odd characteristic".into()));
        }
        let u = y_universe(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let mut s = vec![vec![field.zero(); d]; d];
            for i in 0..d {
                for j in i..d {
                    let c = field.sample_from(rng.gen());
                    s[i][j] = c.clone();
                    s[j][i] = c;
                }
            }
            if field.is_zero(&det_field(field, &s)) {
                continue;
            }
            let two = field.from_i64(2);
            let mut terms = Vec::new();
            for i in 0..d {
                for j in i..d {
                    let m = Monomial::var(u.len(), i, 1).mul(&Monomial::var(u.len(), j, 1));
                    terms.push((m, if i == j { s[i][i].clone() } else { field.mul(&two, &s[i][j]) }));
                }
            }
            return Self::new(field, d, vec![MPoly::from_terms(field, &u, terms)], d - 2, 2);
        }
        Err(Error::Genericity("no nonsingular quadric found".into()))
    }
}

/// Variable layout of the graph computation: grid, π, then `y`, then `α`.
struct Graph<F: Field> {
    big: Arc<VarUniverse>,
    base: Arc<VarUniverse>,
    ys: Vec<usize>,
    alphas: Vec<usize>,
    weights: Vec<u32>,
    adj: Vec<Vec<Vec<MPoly<F>>>>,
}

fn graph<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>) -> Result<Graph<F>> {
    if !config.is_concrete() {
        return Err(Error::InvalidConfig("concrete entries required".into()));
    }
    if x.d != config.d {
        return Err(Error::InvalidConfig(format!("subvariety lives in P^{}, lattices in dimension {}", x.d - 1, config.d)));
    }
    let d = config.d;
    let base = config.universe();
    let mut extra: Vec<String> = (1..=d).map(|k| format!("y{k}")).collect();
    extra.extend((0..=config.n).map(|j| format!("alpha{j}")));
    let big = base.extend(&extra)?;
    let b = base.len();
    let ys: Vec<usize> = (b..b + d).collect();
    let alphas: Vec<usize> = (b + d..b + d + config.n + 1).collect();
    let e = config.exponents();
    let top = *e.iter().max().expect("d >= 2");
    let total: u32 = e.iter().sum();
    let mut weights = config.bayer_weights();
    weights.extend(std::iter::repeat(top + 1).take(d));
    weights.extend(std::iter::repeat(total).take(config.n + 1));
    let mut adj = Vec::with_capacity(config.n + 1);
    for (l, g) in build_g(config).into_iter().enumerate() {
        let g: Vec<Vec<MPoly<F>>> =
            g.iter().map(|r| r.iter().map(|c| c.change_universe(&big)).collect()).collect::<Result<_>>()?;
        if det_poly(&g)?.is_zero() {
            return Err(Error::Singular(format!("g_{l} is not invertible")));
        }
        adj.push(adjugate_poly(&g)?);
    }
    Ok(Graph { big, base, ys, alphas, weights, adj })
}

impl<F: Field> Graph<F> {
    /// `(adj(g_l)·y)_i`, 1-based `i`.
    fn image(&self, field: &F, l: usize, i: usize) -> MPoly<F> {
        let mut acc = MPoly::zero(field, &self.big);
        for (k, &yk) in self.ys.iter().enumerate() {
            acc = &acc + &(&self.adj[l][i - 1][k] * &MPoly::var(field, &self.big, yk));
        }
        acc
    }

    fn lift(&self, x: &SubvarietyInput<F>) -> Result<Vec<MPoly<F>>> {
        x.gens.iter().map(|g| g.change_universe(&self.big)).collect()
    }

    fn rest(&self, skip: &[usize]) -> Vec<usize> {
        (0..self.big.len()).filter(|v| !skip.contains(v)).collect()
    }

    /// Weighted revlex with `first` as a leading elimination block.
    fn elim_order(&self, first: &[usize], homogeneous: bool) -> Result<TermOrder> {
        let rest = self.rest(first);
        let kind = |vs: &[usize]| {
            if homogeneous {
                BlockKind::WeightedDegRevLex(vs.iter().map(|&v| self.weights[v]).collect())
            } else {
                BlockKind::DegRevLex
            }
        };
        TermOrder::block(&self.big, vec![OrderBlock::new(first.to_vec(), kind(first)), OrderBlock::new(rest.clone(), kind(&rest))])
    }

    fn keep_free(&self, gens: Vec<MPoly<F>>, vars: &[usize]) -> Vec<MPoly<F>> {
        gens.into_iter().filter(|g| !vars.iter().any(|&v| g.involves(v))).collect()
    }

    fn to_base(&self, field: &F, gens: Vec<MPoly<F>>) -> Result<Ideal<F>> {
        let gens = gens.iter().map(|g| g.change_universe(&self.base)).collect::<Result<Vec<_>>>()?;
        Ideal::new(field, &self.base, gens)
    }
}

/// Ideal over `K` of the closure of the image of `X`, in the grid and π.
///
/// Built from the graph relations `α_l x_{il} - (adj(g_l)·y)_i` and `I′(y)`:
/// eliminate `y`, saturate by every `α_l`, eliminate the `α_l`.
pub fn model_ideal<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>) -> Result<Ideal<F>> {
    let field = &config.field;
    let gr = graph(config, x)?;
    let mut gens = gr.lift(x)?;
    for l in 0..=config.n {
        for i in 1..=config.d {
            let ax = &MPoly::var(field, &gr.big, gr.alphas[l]) * &MPoly::var(field, &gr.big, grid_index(config.d, i, l));
            gens.push(&ax - &gr.image(field, l, i));
        }
    }
    let homogeneous = gens.iter().all(|g| is_weighted_homogeneous(g, &gr.weights));
    if !homogeneous {
        let mut both = gr.ys.clone();
        both.extend(&gr.alphas);
        let order = gr.elim_order(&both, false)?;
        let prod = gr.alphas.iter().fold(MPoly::one(field, &gr.big), |acc, &a| &acc * &MPoly::var(field, &gr.big, a));
        let sat = saturate_with_order(&Ideal::new(field, &gr.big, gens)?, &[prod], &order)?;
        let kept = gr.keep_free(sat.groebner_basis(&order)?, &both);
        return gr.to_base(field, kept);
    }
    let gb = buchberger(&gens, &gr.elim_order(&gr.ys, true)?, RingMode::Field)?;
    let mut cur = gr.keep_free(gb.into_elements(), &gr.ys);
    for &a in &gr.alphas {
        cur = saturate_by_variable(&cur, &gr.big, a, &gr.weights)?.into_elements();
    }
    let gb = buchberger(&cur, &gr.elim_order(&gr.alphas, true)?, RingMode::Field)?;
    let kept = gr.keep_free(gb.into_elements(), &gr.alphas);
    gr.to_base(field, kept)
}

/// The same ideal from the rank conditions `rk [x_{·l} | adj(g_l)·y] <= 1`:
/// eliminate `y` after saturating by seeded random linear forms in `y` and in
/// each column block (removing the loci `y = 0` and `x_{·l} = 0`).
pub fn model_ideal_rank<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>, seed: u64) -> Result<Ideal<F>> {
    let field = &config.field;
    let gr = graph(config, x)?;
    let d = config.d;
    let mut gens = gr.lift(x)?;
    for l in 0..=config.n {
        for a in 1..=d {
            for b in a + 1..=d {
                let xa = MPoly::var(field, &gr.big, grid_index(d, a, l));
                let xb = MPoly::var(field, &gr.big, grid_index(d, b, l));
                gens.push(&(&xa * &gr.image(field, l, b)) - &(&xb * &gr.image(field, l, a)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut linear = |vars: Vec<usize>| {
        let terms: Vec<_> = vars.iter().map(|&v| (Monomial::var(gr.big.len(), v, 1), field.sample_from(rng.gen()))).collect();
        MPoly::from_terms(field, &gr.big, terms)
    };
    let mut prod = linear(gr.ys.clone());
    for l in 0..=config.n {
        prod = &prod * &linear((1..=d).map(|i| grid_index(d, i, l)).collect());
    }
    let order = gr.elim_order(&gr.ys, false)?;
    let sat = saturate_with_order(&Ideal::new(field, &gr.big, gens)?, &[prod], &order)?;
    let kept = gr.keep_free(sat.groebner_basis(&order)?, &gr.ys);
    let kept = gr.keep_free(kept, &gr.alphas);
    gr.to_base(field, kept)
}

/// Removes from each generator the largest power of `pi_var` dividing it.
pub fn strip_pi_powers<F: Field>(gens: &[MPoly<F>], pi_var: usize) -> Vec<MPoly<F>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let k = g.terms().iter().map(|(m, _)| m.exp(pi_var)).min().unwrap_or(0);
            g.divide_monomial(&Monomial::var(g.nvars(), pi_var, k)).expect("power divides every term")
        })
        .collect()
}

/// `sat(⟨h_1, …, h_ν⟩, π)` after clearing π-powers from the generators.
/// With `weights` making the generators homogeneous the result carries a
/// reduced basis in weighted revlex with π last; otherwise the saturation
/// goes through an auxiliary variable and degrevlex.
pub fn integral_model<F: Field>(ideal: &Ideal<F>, pi_var: usize, weights: Option<&[u32]>) -> Result<(Ideal<F>, GroebnerBasis<F>)> {
    let u = ideal.universe();
    let field = ideal.ring();
    let gens = strip_pi_powers(ideal.generators(), pi_var);
    let ones = vec![1u32; u.len()];
    let w = weights.unwrap_or(&ones);
    if gens.iter().all(|g| is_weighted_homogeneous(g, w)) {
        let gb = saturate_by_variable(&gens, u, pi_var, w)?;
        let ideal = Ideal::new(field, u, gb.elements().to_vec())?.with_basis(gb.order(), gb.elements().to_vec());
        return Ok((ideal, gb));
    }
    let order = TermOrder::degrevlex(u);
    let pi = MPoly::var(field, u, pi_var);
    let sat = saturate_with_order(&Ideal::new(field, u, gens)?, &[pi], &order)?;
    let elems = sat.groebner_basis(&order)?;
    Ok((sat, GroebnerBasis::from_parts(elems, order, RingMode::Field)))
}

/// Fibre over the residue field of the integral model of `X`, in the grid
/// variables, with a cached Groebner basis under the fibre order.
pub fn special_fibre_of_model<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>) -> Result<Ideal<F>> {
    let model = model_ideal(config, x)?;
    fibre_of_model_ideal(config, &model)
}

pub(crate) fn fibre_of_model_ideal<F: Field>(config: &LatticeConfig<F>, model: &Ideal<F>) -> Result<Ideal<F>> {
    let w = config.bayer_weights();
    let (_, gb) = integral_model(model, config.pi_var(), Some(&w))?;
    if *gb.order() == working_order(config)? {
        return fibre_of_saturated(config, &gb);
    }
    let u = config.universe();
    let mut gens = gb.elements().to_vec();
    gens.push(MPoly::var(&config.field, &u, config.pi_var()));
    let order = working_order(config)?;
    let with_pi = buchberger(&gens, &order, RingMode::Field)?;
    fibre_of_saturated(config, &GroebnerBasis::from_parts(with_pi.into_elements(), order, RingMode::Field))
}

/// Whether the two model backends give the same integral model.
pub fn model_cross_check<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>, seed: u64) -> Result<bool> {
    let w = config.bayer_weights();
    let (a, ga) = integral_model(&model_ideal(config, x)?, config.pi_var(), Some(&w))?;
    let (b, gb) = integral_model(&model_ideal_rank(config, x, seed)?, config.pi_var(), Some(&w))?;
    let ra = Reducer::new(&config.field, ga.elements(), ga.order())?;
    let rb = Reducer::new(&config.field, gb.elements(), gb.order())?;
    for g in b.generators() {
        if !ra.reduces_to_zero(g)? {
            return Ok(false);
        }
    }
    for g in a.generators() {
        if !rb.reduces_to_zero(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub l: usize,
    pub contained: bool,
    /// A generator of `∩_{Y_l} I_v` outside the radical of the fibre.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    /// Least `l` with the fibre inside the union of components of length `<= l`.
    pub delta: Option<usize>,
    pub per_level: Vec<LevelReport>,
    pub star_like: bool,
    pub seed: Option<u64>,
}

/// `∩ I_v` over the component vectors accepted by `keep`; the unit ideal
/// when none is.
pub fn family_intersection<F: Field>(
    field: &F,
    d: usize,
    n: usize,
    keep: impl Fn(&ComponentVector) -> bool,
) -> Result<Ideal<F>> {
    let ideals: Vec<_> = component_vectors(d, n).into_iter().filter(|v| keep(v)).map(|v| ideal_iv(field, &v, d)).collect();
    if ideals.is_empty() {
        let u = VarUniverse::grid(d, n, &[])?;
        return Ideal::new(field, &u, vec![MPoly::one(field, &u)]);
    }
    intersect_monomial_ideals(&ideals)
}

/// First generator of `j` outside `√fibre`, if any.
fn radical_witness<F: Field>(config: &LatticeConfig<F>, fibre: &Ideal<F>, j: &Ideal<F>) -> Result<Option<String>> {
    let order = crate::mustafin::fibre_order(config)?;
    let basis = fibre.groebner_basis(&order)?;
    let reducer = Reducer::new(&config.field, &basis, &order)?;
    for g in j.generators() {
        let g = g.change_universe(fibre.universe())?;
        if reducer.reduces_to_zero(&g)? {
            continue;
        }
        if !radical_membership(&g, fibre)? {
            return Ok(Some(g.to_string()));
        }
    }
    Ok(None)
}

/// Locates the fibre of the model of `X` among the components of the
/// ambient fibre, after confirming that the ambient fibre is `∩ I_v`.
pub fn support_analysis<F: Field>(config: &LatticeConfig<F>, x: &SubvarietyInput<F>) -> Result<SupportReport> {
    let ambient = conjecture_check(config, CheckMode::BothContainments)?;
    if !ambient.equal {
        return Err(Error::Genericity("genericity violated, resample".into()));
    }
    let fibre = special_fibre_of_model(config, x)?;
    support_of_fibre(config, &fibre)
}

/// As [`support_analysis`], for an already computed fibre and without the
/// ambient check.
pub fn support_of_fibre<F: Field>(config: &LatticeConfig<F>, fibre: &Ideal<F>) -> Result<SupportReport> {
    let (d, n) = (config.d, config.n);
    let mut per_level = Vec::with_capacity(d);
    for l in 0..d {
        let j = family_intersection(&config.field, d, n, |v| component_length(v, d).1 <= l)?;
        let witness = radical_witness(config, fibre, &j)?;
        per_level.push(LevelReport { l, contained: witness.is_none(), witness });
    }
    let delta = per_level.iter().find(|r| r.contained).map(|r| r.l);
    let star = family_intersection(&config.field, d, n, |v| star_flag(v, d))?;
    let star_like = radical_witness(config, fibre, &star)?.is_none();
    Ok(SupportReport { delta, per_level, star_like, seed: config.seed })
}

/// Minimal primes generated by grid variables that contain the fibre, and
/// whether their intersection is certified to equal the radical of the fibre.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialComponents {
    pub primes: Vec<Vec<String>>,
    pub certified: bool,
}

pub fn monomial_components<F: Field>(config: &LatticeConfig<F>, fibre: &Ideal<F>) -> Result<MonomialComponents> {
    let u = fibre.universe().clone();
    let nv = u.len();
    if nv > 20 {
        return Err(Error::ResourceCapped("too many variables to enumerate coordinate primes".into()));
    }
    let gens = fibre.generators();
    let inside = |mask: u32, g: &MPoly<F>| g.terms().iter().all(|(m, _)| m.support().any(|v| mask >> v & 1 == 1));
    let mut masks: Vec<u32> = (0..1u32 << nv).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|&f| f & m == f) {
            continue;
        }
        if gens.iter().all(|g| inside(m, g)) {
            found.push(m);
        }
    }
    let ideals: Vec<Ideal<F>> = found
        .iter()
        .map(|&m| {
            let g = (0..nv).filter(|v| m >> v & 1 == 1).map(|v| MPoly::var(&config.field, &u, v)).collect();
            Ideal::new(&config.field, &u, g)
        })
        .collect::<Result<_>>()?;
    let certified = if ideals.is_empty() {
        false
    } else {
        let meet = intersect_monomial_ideals(&ideals)?;
        radical_witness(config, fibre, &meet)?.is_none()
    };
    let primes = found.iter().map(|&m| (0..nv).filter(|v| m >> v & 1 == 1).map(|v| u.name(v).to_string()).collect()).collect();
    Ok(MonomialComponents { primes, certified })
}

/// Primary component vectors `v` with `I_v` inside each coordinate prime.
pub fn primary_certificates(d: usize, n: usize, comps: &MonomialComponents) -> Vec<Vec<ComponentVector>> {
    let primary: Vec<ComponentVector> = component_vectors(d, n).into_iter().filter(|v| primary_flag(v)).collect();
    comps
        .primes
        .iter()
        .map(|p| {
            primary
                .iter()
                .filter(|v| v.0.iter().enumerate().all(|(j, &vj)| (1..=vj).all(|i| p.contains(&grid_name(i, j)))))
                .cloned()
                .collect()
        })
        .collect()
}

/// `deg X · #{m ∈ [0, d-1]^{n+1} : Σ m_i = (n+1)(d-1) - dim X}`.
pub fn chow_component_bound(d: usize, n: usize, dim: usize, degree: u64) -> Result<u64> {
    if d < 1 || dim > d - 1 {
        return Err(Error::InvalidConfig(format!("dimension {dim} out of range for d = {d}")));
    }
    let target = (n + 1) * (d - 1) - dim;
    Ok(degree * count_bounded(n + 1, d - 1, target))
}

/// Number of vectors of `slots` entries in `[0, cap]` summing to `total`.
fn count_bounded(slots: usize, cap: usize, total: usize) -> u64 {
    let mut ways = vec![0u64; total + 1];
    ways[0] = 1;
    for _ in 0..slots {
        let mut next = vec![0u64; total + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for k in 0..=cap.min(total - s) {
                next[s + k] += w;
            }
        }
        ways = next;
    }
    ways[total]
}

/// `deg X · C(n + dim X, dim X - 1)`, zero for points.
pub fn chow_closed_form(n: usize, dim: usize, degree: u64) -> u64 {
    if dim == 0 {
        return 0;
    }
    let (top, k) = ((n + dim) as u64, (dim - 1) as u64);
    let mut c = 1u64;
    for i in 0..k {
        c = c * (top - i) / (i + 1);
    }
    degree * c
}

/// Per-column multihomogeneity of every generator.
pub fn is_multihomogeneous_model<F: Field>(config: &LatticeConfig<F>, ideal: &Ideal<F>) -> bool {
    let blocks = grid_blocks(config.d, config.n);
    ideal.generators().iter().all(|g| g.is_multihomogeneous(&blocks))
}

#[cfg(test)]
mod tests;

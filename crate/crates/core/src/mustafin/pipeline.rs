use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::poly::{grid_index, MPoly, Monomial};

use super::{column_forms, minor, LatticeConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    /// π-power every polynomial of the stage must be divisible by.
    pub pi_power: u32,
    pub polynomials: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub passed: bool,
    pub stages: Vec<StageReport>,
    /// First stage with a failure.
    pub failed_stage: Option<String>,
    /// Coefficient of `π^{2n_2} x_{3α}x_{3β}x_{3γ}x_{3δ}` nonzero for every permutation.
    pub final_coefficients_nonzero: bool,
    pub seed: Option<u64>,
}

struct Ctx<'a, F: Field> {
    cfg: &'a LatticeConfig<F>,
    nv: usize,
    pi: usize,
}

impl<F: Field> Ctx<'_, F> {
    fn x(&self, i: usize, j: usize) -> Monomial {
        Monomial::var(self.nv, grid_index(4, i, j), 1)
    }

    fn pi_pow(&self, k: u32) -> Monomial {
        Monomial::var(self.nv, self.pi, k)
    }

    fn xs(&self, f: &[(usize, usize)]) -> Monomial {
        f.iter().fold(Monomial::one(self.nv), |m, &(i, j)| m.mul(&self.x(i, j)))
    }

    /// Coefficient of `π^k · m` in `f`.
    fn coeff(&self, f: &MPoly<F>, k: u32, m: &Monomial) -> F::Elem {
        f.coeff(&m.mul(&self.pi_pow(k)))
    }

    /// `a·f - b·g` for scalars.
    fn comb(&self, a: &F::Elem, f: &MPoly<F>, b: &F::Elem, g: &MPoly<F>) -> MPoly<F> {
        &f.scale(a) - &g.scale(b)
    }

    /// Divisibility by `π^k` and the exact support of `π^{-k} f mod π`.
    fn check(&self, f: &MPoly<F>, k: u32, expected: &[Monomial], label: &str) -> Option<String> {
        if f.is_zero() {
            return Some(format!("{label}: vanishes"));
        }
        let mut low = BTreeSet::new();
        for (m, _) in f.terms() {
            let e = m.exp(self.pi);
            if e < k {
                return Some(format!("{label}: not divisible by pi^{k}"));
            }
            if e == k {
                let mut ex = m.exps().to_vec();
                ex[self.pi] = 0;
                low.insert(ex);
            }
        }
        let want: BTreeSet<Vec<u32>> = expected.iter().map(|m| m.exps().to_vec()).collect();
        if low != want {
            let u = f.universe();
            let show = |s: &BTreeSet<Vec<u32>>| {
                s.iter()
                    .map(|e| MPoly::monomial(&self.cfg.field, u, self.cfg.field.one(), Monomial::from_exps(e.clone())).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Some(format!("{label}: support mod pi is {{{}}}, expected {{{}}}", show(&low), show(&want)));
        }
        None
    }
}

fn push_stage(stages: &mut Vec<StageReport>, stage: &str, pi_power: u32, results: Vec<Option<String>>) -> bool {
    let polynomials = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let ok = failures.is_empty();
    stages.push(StageReport { stage: stage.into(), pi_power, polynomials, failures });
    ok
}

/// Runs the successive minor combinations for `d = 4`, `n = 3`, checking the
/// π-divisibility and mod-π support of every intermediate polynomial.
pub fn minor_pipeline_d4<F: Field>(config: &LatticeConfig<F>) -> Result<PipelineReport> {
    if config.d != 4 || config.n != 3 {
        return Err(Error::InvalidConfig("the pipeline needs d = 4 and n = 3".into()));
    }
    if !config.is_concrete() {
        return Err(Error::InvalidConfig("the pipeline needs concrete entries".into()));
    }
    let (n1, n2, n3) = (config.n_vec[0], config.n_vec[1], config.n_vec[2]);
    if 2 * n1 >= n2 || 2 * n2 >= n3 {
        return Err(Error::InvalidConfig("the pipeline needs 2 n_1 < n_2 and 2 n_2 < n_3".into()));
    }
    let u = config.universe();
    let cx = Ctx { cfg: config, nv: u.len(), pi: config.pi_var() };
    let forms = column_forms(config);
    let mut stages = Vec::new();
    let report = |stages: Vec<StageReport>, finals: bool| {
        let failed_stage = stages.iter().find(|s| !s.failures.is_empty()).map(|s| s.stage.clone());
        PipelineReport { passed: failed_stage.is_none() && finals, stages, failed_stage, final_coefficients_nonzero: finals, seed: config.seed }
    };

    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut m1s = BTreeMap::new();
    let mut r1 = Vec::new();
    for &(a, b) in &pairs {
        let m = |g: usize, d: usize| minor(&forms, (a, b), (g, d));
        let x11 = cx.xs(&[(1, a), (1, b)]);
        let c = |g: usize, d: usize| cx.coeff(&m(g, d), 0, &x11);
        let rows = [((1, 3), (1, 2)), ((2, 3), (1, 2)), ((1, 4), (1, 3)), ((3, 4), (1, 3)), ((1, 4), (1, 2)), ((2, 4), (1, 4))];
        let ms: Vec<MPoly<F>> = rows
            .iter()
            .map(|&(p, q)| cx.comb(&c(p.0, p.1), &m(q.0, q.1), &c(q.0, q.1), &m(p.0, p.1)))
            .collect();
        let want = [cx.xs(&[(1, a), (2, b)]), cx.xs(&[(2, a), (1, b)])];
        for (j, f) in ms.iter().enumerate() {
            r1.push(cx.check(f, n1, &want, &format!("m1[{}]({a},{b})", j + 1)));
        }
        m1s.insert((a, b), ms);
    }
    if !push_stage(&mut stages, "m1", n1, r1) {
        return Ok(report(stages, false));
    }

    let mut m2s = BTreeMap::new();
    let mut r2 = Vec::new();
    for &(a, b) in &pairs {
        let m1 = &m1s[&(a, b)];
        let e = |r: usize| config.entry(a, r, 1);
        let ms = vec![
            &(&e(2) * &m1[0]) - &(&e(1) * &m1[1]),
            &(&e(3) * &m1[2]) - &(&e(1) * &m1[3]),
            &(&e(4) * &m1[4]) - &(&e(1) * &m1[5]),
        ];
        let want = [cx.xs(&[(2, a), (1, b)])];
        for (j, f) in ms.iter().enumerate() {
            r2.push(cx.check(f, n1, &want, &format!("m2[{}]({a},{b})", j + 1)));
        }
        m2s.insert((a, b), ms);
    }
    if !push_stage(&mut stages, "m2", n1, r2) {
        return Ok(report(stages, false));
    }

    let mut m3s = BTreeMap::new();
    let mut r3 = Vec::new();
    for &(a, b) in &pairs {
        let m2 = &m2s[&(a, b)];
        let p = cx.xs(&[(2, a), (1, b)]);
        let c0 = cx.coeff(&m2[0], n1, &p);
        let ms: Vec<_> = (1..3).map(|j| cx.comb(&c0, &m2[j], &cx.coeff(&m2[j], n1, &p), &m2[0])).collect();
        let want = [cx.xs(&[(2, a), (2, b)])];
        for (j, f) in ms.iter().enumerate() {
            r3.push(cx.check(f, 2 * n1, &want, &format!("m3[{}]({a},{b})", j + 1)));
        }
        m3s.insert((a, b), ms);
    }
    if !push_stage(&mut stages, "m3", 2 * n1, r3) {
        return Ok(report(stages, false));
    }

    let mut m4s = BTreeMap::new();
    let mut r4 = Vec::new();
    for &(a, b) in &pairs {
        let m3 = &m3s[&(a, b)];
        let p = cx.xs(&[(2, a), (2, b)]);
        let f = cx.comb(&cx.coeff(&m3[1], 2 * n1, &p), &m3[0], &cx.coeff(&m3[0], 2 * n1, &p), &m3[1]);
        r4.push(cx.check(&f, n2, &[cx.xs(&[(3, a), (1, b)])], &format!("m4({a},{b})")));
        m4s.insert((a, b), f);
    }
    if !push_stage(&mut stages, "m4", n2, r4) {
        return Ok(report(stages, false));
    }

    let mut triples = BTreeMap::new();
    let mut r5 = Vec::new();
    for &(a, b) in &pairs {
        for g in (0..4).filter(|&g| g != a && g != b) {
            let (fa, fg) = (&m4s[&(a, b)], &m4s[&(g, b)]);
            let ca = cx.coeff(fa, n2, &cx.xs(&[(1, b), (3, a)]));
            let cg = cx.coeff(fg, n2, &cx.xs(&[(1, b), (3, g)]));
            let f = &fg.mul_term(&ca, &cx.x(3, a))? - &fa.mul_term(&cg, &cx.x(3, g))?;
            r5.push(cx.check(&f, n1 + n2, &[cx.xs(&[(3, a), (2, b), (3, g)])], &format!("m({a},{b},{g})")));
            triples.insert((a, b, g), f);
        }
    }
    if !push_stage(&mut stages, "triple", n1 + n2, r5) {
        return Ok(report(stages, false));
    }

    let mut r6 = Vec::new();
    let mut finals = true;
    for (&(a, b, g), fg) in &triples {
        let dl = 6 - a - b - g;
        let fd = &triples[&(a, b, dl)];
        let cg = cx.coeff(fg, n1 + n2, &cx.xs(&[(3, a), (2, b), (3, g)]));
        let cd = cx.coeff(fd, n1 + n2, &cx.xs(&[(3, a), (2, b), (3, dl)]));
        let f = &fd.mul_term(&cg, &cx.x(3, g))? - &fg.mul_term(&cd, &cx.x(3, dl))?;
        let top = cx.xs(&[(3, 0), (3, 1), (3, 2), (3, 3)]);
        if config.field.is_zero(&cx.coeff(&f, 2 * n2, &top)) {
            finals = false;
        }
        r6.push(cx.check(&f, 2 * n2, &[top], &format!("m({a},{b},{g},{dl})")));
    }
    push_stage(&mut stages, "quadruple", 2 * n2, r6);
    Ok(report(stages, finals))
}

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{Field, PiPoly, PiRing, Ring};
use crate::error::{Error, Result};
use crate::linalg::det_field;
use crate::poly::{grid_index, MPoly, Monomial, VarUniverse};

/// Matrix entries `a_ij^(l)`: concrete elements of L[π] indexed `[l][i][j]`,
/// or one symbolic parameter `A[i][j][l]` per entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Entries<F: Field> {
    Concrete(Vec<Vec<Vec<PiPoly<F::Elem>>>>),
    Symbolic,
}

/// The input datum `(d, n, n_vec, a)` of a lattice configuration.
#[derive(Clone, Debug)]
pub struct LatticeConfig<F: Field> {
    pub d: usize,
    pub n: usize,
    pub n_vec: Vec<u32>,
    pub field: F,
    pub entries: Entries<F>,
    /// Seed the entries were sampled from, if any.
    pub seed: Option<u64>,
}

/// Rejection cap when sampling entries whose reductions must be invertible.
const MAX_RESAMPLES: usize = 1000;

impl<F: Field> LatticeConfig<F> {
    pub fn new(field: &F, d: usize, n: usize, n_vec: Vec<u32>, entries: Entries<F>) -> Result<Self> {
        let cfg = LatticeConfig { d, n, n_vec, field: field.clone(), entries, seed: None };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Entries drawn uniformly from the base field (constant in π), redrawing
    /// a matrix whenever its determinant vanishes.
    pub fn random(field: &F, d: usize, n: usize, n_vec: Vec<u32>, seed: u64) -> Result<Self> {
        check_shape(d, &n_vec)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PiRing::new(field.clone());
        let mut mats = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let mut tries = 0;
            let m = loop {
                let m: Vec<Vec<F::Elem>> =
                    (0..d).map(|_| (0..d).map(|_| field.sample_from(rng.gen())).collect()).collect();
                if !field.is_zero(&det_field(field, &m)) {
                    break m;
                }
                tries += 1;
                if tries >= MAX_RESAMPLES {
                    return Err(Error::Genericity("no invertible matrix found".into()));
                }
            };
            mats.push(m.into_iter().map(|r| r.into_iter().map(|c| ring.constant(c)).collect()).collect());
        }
        let mut cfg = Self::new(field, d, n, n_vec, Entries::Concrete(mats))?;
        cfg.seed = Some(seed);
        Ok(cfg)
    }

    /// All `M_l` equal to the identity.
    pub fn identity(field: &F, d: usize, n: usize, n_vec: Vec<u32>) -> Result<Self> {
        let ring = PiRing::new(field.clone());
        let id: Vec<Vec<_>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Self::new(field, d, n, n_vec, Entries::Concrete(vec![id; n + 1]))
    }

    pub fn symbolic(field: &F, d: usize, n: usize, n_vec: Vec<u32>) -> Result<Self> {
        Self::new(field, d, n, n_vec, Entries::Symbolic)
    }

    fn validate(&self) -> Result<()> {
        check_shape(self.d, &self.n_vec)?;
        if let Entries::Concrete(m) = &self.entries {
            if m.len() != self.n + 1 {
                return Err(Error::InvalidConfig(format!("expected {} matrices, got {}", self.n + 1, m.len())));
            }
            let ring = self.pi_ring();
            for (l, ml) in m.iter().enumerate() {
                if ml.len() != self.d || ml.iter().any(|r| r.len() != self.d) {
                    return Err(Error::InvalidConfig(format!("matrix {l} is not {0}x{0}", self.d)));
                }
                let red: Vec<Vec<F::Elem>> =
                    ml.iter().map(|r| r.iter().map(|c| ring.reduce_mod_pi(c)).collect()).collect();
                if self.field.is_zero(&det_field(&self.field, &red)) {
                    return Err(Error::Singular(format!("matrix {l} is singular modulo pi")));
                }
            }
        }
        Ok(())
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self.entries, Entries::Concrete(_))
    }

    pub fn pi_ring(&self) -> PiRing<F> {
        PiRing::new(self.field.clone())
    }

    /// Column exponents `e = (0, n_1, …, n_{d-1})`.
    pub fn exponents(&self) -> Vec<u32> {
        std::iter::once(0).chain(self.n_vec.iter().copied()).collect()
    }

    /// Grid variables, then `pi`, then the parameters when symbolic.
    pub fn universe(&self) -> Arc<VarUniverse> {
        let mut extras = vec!["pi".to_string()];
        if !self.is_concrete() {
            extras.extend(self.parameter_names());
        }
        let refs: Vec<&str> = extras.iter().map(|s| s.as_str()).collect();
        VarUniverse::grid(self.d, self.n, &refs).expect("grid names are distinct")
    }

    /// Grid variables only.
    pub fn fibre_universe(&self) -> Arc<VarUniverse> {
        VarUniverse::grid(self.d, self.n, &[]).expect("grid names are distinct")
    }

    pub fn pi_var(&self) -> usize {
        self.d * (self.n + 1)
    }

    /// `A[i][j][l]` for every entry, ordered by `l`, then `i`, then `j`.
    pub fn parameter_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.d * self.d * (self.n + 1));
        for l in 0..=self.n {
            for i in 1..=self.d {
                for j in 1..=self.d {
                    out.push(parameter_name(i, j, l));
                }
            }
        }
        out
    }

    /// Weights making every matrix entry `a_rc π^{e_c} x_{cl}` of weight
    /// `N + 1`: π gets 1 and `x_{cl}` gets `N + 1 - e_c`. Covers the grid and π.
    pub fn bayer_weights(&self) -> Vec<u32> {
        let e = self.exponents();
        let top = *e.iter().max().expect("d >= 1");
        let mut w = vec![0u32; self.pi_var() + 1];
        for l in 0..=self.n {
            for c in 1..=self.d {
                w[grid_index(self.d, c, l)] = top + 1 - e[c - 1];
            }
        }
        w[self.pi_var()] = 1;
        w
    }

    /// Entry `a_{rc}^{(l)}` (1-based `r`, `c`) as a polynomial in `universe()`.
    pub fn entry(&self, l: usize, r: usize, c: usize) -> MPoly<F> {
        let u = self.universe();
        match &self.entries {
            Entries::Concrete(m) => {
                let pi = self.pi_var();
                let terms = m[l][r - 1][c - 1]
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !self.field.is_zero(a))
                    .map(|(k, a)| (Monomial::var(u.len(), pi, k as u32), a.clone()))
                    .collect::<Vec<_>>();
                MPoly::from_terms(&self.field, &u, terms)
            }
            Entries::Symbolic => {
                let v = u.index_of(&parameter_name(r, c, l)).expect("parameter present");
                MPoly::var(&self.field, &u, v)
            }
        }
    }

    /// Concrete entry `a_{rc}^{(l)}` reduced modulo π (1-based `r`, `c`).
    pub fn entry_mod_pi(&self, l: usize, r: usize, c: usize) -> Option<F::Elem> {
        match &self.entries {
            Entries::Concrete(m) => Some(self.pi_ring().reduce_mod_pi(&m[l][r - 1][c - 1])),
            Entries::Symbolic => None,
        }
    }
}

pub fn parameter_name(i: usize, j: usize, l: usize) -> String {
    format!("A[{i}][{j}][{l}]")
}

fn check_shape(d: usize, n_vec: &[u32]) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidConfig("d must be at least 2".into()));
    }
    if n_vec.len() != d - 1 {
        return Err(Error::InvalidConfig(format!("n_vec must have {} entries", d - 1)));
    }
    if n_vec[0] == 0 || n_vec.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("n_vec must be positive and strictly increasing".into()));
    }
    Ok(())
}

/// `g_l = M_l · diag(1, π^{n_1}, …, π^{n_{d-1}})`, indexed `[l][r][c]` (0-based).
pub fn build_g<F: Field>(config: &LatticeConfig<F>) -> Vec<Vec<Vec<MPoly<F>>>> {
    let u = config.universe();
    let e = config.exponents();
    let pi = config.pi_var();
    (0..=config.n)
        .map(|l| {
            (1..=config.d)
                .map(|r| {
                    (1..=config.d)
                        .map(|c| {
                            let s = Monomial::var(u.len(), pi, e[c - 1]);
                            config.entry(l, r, c).mul_term(&config.field.one(), &s).expect("small exponents")
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Columns `g_l · (x_{1l}, …, x_{dl})ᵀ`, indexed `[l][r]` (0-based).
pub fn column_forms<F: Field>(config: &LatticeConfig<F>) -> Vec<Vec<MPoly<F>>> {
    let g = build_g(config);
    let u = config.universe();
    let f = &config.field;
    g.iter()
        .enumerate()
        .map(|(l, gl)| {
            gl.iter()
                .map(|row| {
                    let mut acc = MPoly::zero(f, &u);
                    for (c, a) in row.iter().enumerate() {
                        let x = MPoly::var(f, &u, grid_index(config.d, c + 1, l));
                        acc = &acc + &(a * &x);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

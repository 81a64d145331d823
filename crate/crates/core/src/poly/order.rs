use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, VarUniverse};

/// Ordering inside one block of a block order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Earlier variables in the block are greater.
    Lex,
    DegRevLex,
    /// Degree-reverse-lexicographic with the total degree replaced by a
    /// positive weight vector (one weight per block variable).
    WeightedDegRevLex(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

impl OrderBlock {
    pub fn new(vars: Vec<usize>, kind: BlockKind) -> Self {
        OrderBlock { vars, kind }
    }
}

/// A monomial order on a fixed universe, compiled to an integer matrix whose
/// rows are compared lexicographically.
#[derive(Clone, Debug)]
pub struct TermOrder {
    universe: Arc<VarUniverse>,
    blocks: Vec<OrderBlock>,
    rows: Vec<Vec<(usize, i64)>>,
}

impl PartialEq for TermOrder {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && *self.universe == *other.universe
    }
}

impl TermOrder {
    pub fn block(universe: &Arc<VarUniverse>, blocks: Vec<OrderBlock>) -> Result<Self> {
        let n = universe.len();
        let mut seen = BTreeSet::new();
        let mut rows = Vec::with_capacity(n);
        for b in &blocks {
            if b.vars.is_empty() {
                return Err(Error::InvalidOrder("empty block".into()));
            }
            for &v in &b.vars {
                if v >= n {
                    return Err(Error::InvalidOrder(format!("variable index {v} out of range")));
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidOrder(format!(
                        "variable {} listed twice",
                        universe.name(v)
                    )));
                }
            }
            match &b.kind {
                BlockKind::Lex => {
                    rows.extend(b.vars.iter().map(|&v| vec![(v, 1)]));
                }
                BlockKind::DegRevLex => {
                    rows.push(b.vars.iter().map(|&v| (v, 1)).collect());
                    rows.extend(b.vars[1..].iter().rev().map(|&v| vec![(v, -1)]));
                }
                BlockKind::WeightedDegRevLex(w) => {
                    if w.len() != b.vars.len() || w.iter().any(|&x| x == 0) {
                        return Err(Error::InvalidOrder(
                            "weights must be positive, one per block variable".into(),
                        ));
                    }
                    rows.push(b.vars.iter().zip(w).map(|(&v, &x)| (v, x as i64)).collect());
                    rows.extend(b.vars[1..].iter().rev().map(|&v| vec![(v, -1)]));
                }
            }
        }
        if seen.len() != n {
            let missing = (0..n).find(|v| !seen.contains(v)).unwrap();
            return Err(Error::InvalidOrder(format!(
                "variable {} not covered",
                universe.name(missing)
            )));
        }
        Ok(TermOrder { universe: universe.clone(), blocks, rows })
    }

    /// Lexicographic order with variable 0 greatest.
    pub fn lex(universe: &Arc<VarUniverse>) -> Self {
        Self::block(universe, vec![OrderBlock::new((0..universe.len()).collect(), BlockKind::Lex)])
            .unwrap_or_else(|_| Self::trivial(universe))
    }

    /// Lexicographic order with the given variables from greatest to least.
    pub fn lex_by_names(universe: &Arc<VarUniverse>, names: &[&str]) -> Result<Self> {
        let vars = names.iter().map(|s| universe.require(s)).collect::<Result<Vec<_>>>()?;
        Self::block(universe, vec![OrderBlock::new(vars, BlockKind::Lex)])
    }

    pub fn degrevlex(universe: &Arc<VarUniverse>) -> Self {
        Self::block(
            universe,
            vec![OrderBlock::new((0..universe.len()).collect(), BlockKind::DegRevLex)],
        )
        .unwrap_or_else(|_| Self::trivial(universe))
    }

    /// Block order given by variable names, first block greatest.
    pub fn blocks_by_names(
        universe: &Arc<VarUniverse>,
        blocks: &[(&[&str], BlockKind)],
    ) -> Result<Self> {
        let bs = blocks
            .iter()
            .map(|(names, kind)| {
                Ok(OrderBlock::new(
                    names.iter().map(|s| universe.require(s)).collect::<Result<Vec<_>>>()?,
                    kind.clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::block(universe, bs)
    }

    fn trivial(universe: &Arc<VarUniverse>) -> Self {
        TermOrder { universe: universe.clone(), blocks: Vec::new(), rows: Vec::new() }
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn blocks(&self) -> &[OrderBlock] {
        &self.blocks
    }

    pub fn nvars(&self) -> usize {
        self.universe.len()
    }

    /// Sparse rows of the order matrix.
    pub fn rows(&self) -> &[Vec<(usize, i64)>] {
        &self.rows
    }

    pub fn key(&self, exps: &[u32]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(v, w)| w * exps[v] as i64).sum())
            .collect()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.cmp_unchecked(a.exps(), b.exps()))
    }

    pub(crate) fn cmp_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        for r in &self.rows {
            let x: i64 = r.iter().map(|&(v, w)| w * a[v] as i64).sum();
            let y: i64 = r.iter().map(|&(v, w)| w * b[v] as i64).sum();
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Whether every monomial involving one of `vars` exceeds every monomial
    /// free of them.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        let target: BTreeSet<usize> = vars.iter().copied().collect();
        if target.is_empty() {
            return true;
        }
        let mut covered = BTreeSet::new();
        for b in &self.blocks {
            match b.kind {
                BlockKind::Lex => {
                    for &v in &b.vars {
                        if !target.contains(&v) {
                            return false;
                        }
                        covered.insert(v);
                        if covered == target {
                            return true;
                        }
                    }
                }
                _ => {
                    if !b.vars.iter().all(|v| target.contains(v)) {
                        return false;
                    }
                    covered.extend(b.vars.iter().copied());
                    if covered == target {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.vars.iter().map(|&v| self.universe.name(v)).collect();
                let kind = match &b.kind {
                    BlockKind::Lex => "lex".to_string(),
                    BlockKind::DegRevLex => "degrevlex".to_string(),
                    BlockKind::WeightedDegRevLex(w) => format!("wdegrevlex{w:?}"),
                };
                format!("{kind}({})", names.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" > "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn lex_prefers_x_over_y_squared() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let o = TermOrder::lex(&u);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn degrevlex_basics() {
        let u = VarUniverse::new(["x", "y", "z"]).unwrap();
        let o = TermOrder::degrevlex(&u);
        // x^2 > xy > y^2 > xz
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 0]), &m(&[1, 0, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn mismatch_is_error() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let o = TermOrder::lex(&u);
        assert_eq!(o.compare(&m(&[1]), &m(&[0, 1])), Err(Error::UniverseMismatch));
    }

    #[test]
    fn coverage_enforced() {
        let u = VarUniverse::new(["x", "y"]).unwrap();
        assert!(TermOrder::block(&u, vec![OrderBlock::new(vec![0], BlockKind::Lex)]).is_err());
    }

    #[test]
    fn elimination_detection() {
        let u = VarUniverse::new(["y", "x", "z"]).unwrap();
        let o = TermOrder::block(
            &u,
            vec![
                OrderBlock::new(vec![0], BlockKind::Lex),
                OrderBlock::new(vec![1, 2], BlockKind::DegRevLex),
            ],
        )
        .unwrap();
        assert!(o.eliminates(&[0]));
        assert!(!o.eliminates(&[1]));
        assert!(TermOrder::lex(&u).eliminates(&[0, 1]));
        assert!(!TermOrder::degrevlex(&u).eliminates(&[0]));
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Named variables with a stable index ↔ name bijection.
#[derive(Debug, PartialEq, Eq)]
pub struct VarUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarUniverse { names, index }))
    }

    pub fn empty() -> Arc<Self> {
        Self::new(Vec::<String>::new()).expect("empty universe is valid")
    }

    /// Grid variables `x[i][j]` (i = 1..d, j = 0..n) stored column block by
    /// column block, followed by `extras` in the given order.
    pub fn grid(d: usize, n: usize, extras: &[&str]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(d * (n + 1) + extras.len());
        for j in 0..=n {
            for i in 1..=d {
                names.push(grid_name(i, j));
            }
        }
        names.extend(extras.iter().map(|s| s.to_string()));
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new universe with `extra` appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>> {
        Self::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// Names in `extra` that are not yet present, made unique by priming.
    pub fn fresh_names(&self, base: &str, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut k = 1;
        while out.len() < count {
            let cand = if count == 1 && k == 1 {
                base.to_string()
            } else {
                format!("{base}[{k}]")
            };
            let mut name = cand.clone();
            while self.index.contains_key(&name) || out.contains(&name) {
                name.push('\'');
            }
            out.push(name);
            k += 1;
        }
        out
    }
}

pub fn grid_name(i: usize, j: usize) -> String {
    format!("x[{i}][{j}]")
}

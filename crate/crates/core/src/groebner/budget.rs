//! Per-thread resource caps and the optional pair trace log.
//!
//! A cap is installed for the duration of a closure; every Groebner
//! computation on that thread polls it. Trials run on worker threads, so each
//! trial carries its own cap.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    /// Upper bound on the total number of stored terms in a running basis.
    pub max_terms: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    /// Term cap derived from a memory cap in MiB with a rough per-term cost.
    pub fn from_caps(seconds: Option<f64>, megabytes: Option<u64>) -> Self {
        Budget {
            time: seconds.map(Duration::from_secs_f64),
            max_terms: megabytes.map(|mb| (mb as usize).saturating_mul(1 << 20) / 256),
        }
    }
}

#[derive(Clone, Copy)]
struct Active {
    deadline: Option<Instant>,
    max_terms: Option<usize>,
}

thread_local! {
    static ACTIVE: RefCell<Option<Active>> = const { RefCell::new(None) };
    static TRACE: RefCell<Option<Vec<String>>> = const { RefCell::new(None) };
}

/// Runs `f` with `budget` installed on the current thread.
pub fn with_budget<T>(budget: Budget, f: impl FnOnce() -> T) -> T {
    let active = Active {
        deadline: budget.time.map(|d| Instant::now() + d),
        max_terms: budget.max_terms,
    };
    let prev = ACTIVE.with(|a| a.replace(Some(active)));
    let out = f();
    ACTIVE.with(|a| *a.borrow_mut() = prev);
    out
}

pub(crate) fn check_time() -> Result<()> {
    ACTIVE.with(|a| match *a.borrow() {
        Some(Active { deadline: Some(d), .. }) if Instant::now() >= d => {
            Err(Error::ResourceCapped("time limit reached".into()))
        }
        _ => Ok(()),
    })
}

pub(crate) fn check_terms(count: usize) -> Result<()> {
    ACTIVE.with(|a| match *a.borrow() {
        Some(Active { max_terms: Some(m), .. }) if count > m => {
            Err(Error::ResourceCapped("memory limit reached".into()))
        }
        _ => Ok(()),
    })
}

/// Runs `f` while collecting one trace line per processed pair.
pub fn capture_trace<T>(f: impl FnOnce() -> T) -> (T, Vec<String>) {
    let prev = TRACE.with(|t| t.replace(Some(Vec::new())));
    let out = f();
    let lines = TRACE.with(|t| std::mem::replace(&mut *t.borrow_mut(), prev)).unwrap_or_default();
    (out, lines)
}

pub(crate) fn tracing() -> bool {
    TRACE.with(|t| t.borrow().is_some())
}

pub(crate) fn trace_line(line: String) {
    TRACE.with(|t| {
        if let Some(v) = t.borrow_mut().as_mut() {
            v.push(line);
        }
    });
}

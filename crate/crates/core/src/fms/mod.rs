//! Finite-model search: per-variable candidate lists, filtered predicate by predicate.

mod candidates;

use thiserror::Error;

use crate::zcore::{Expr, Pred, TypeExpr, Value};
use crate::zeval::{eval_expr, eval_pred, Env};
use crate::ztype::{admits, TypedSpec, Universe};

use candidates::{odometer_step, Gen};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("FSS must be at least 1")]
    ZeroFss,
    #[error("MAX must be at least 1")]
    ZeroMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    fss: usize,
    max: usize,
    /// Fill numeric seeds up to FSS from the default lists when the spec has too few literals.
    pub pad_numeric: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { fss: 3, max: 10_000, pad_numeric: false }
    }
}

impl SearchConfig {
    pub fn new(fss: usize, max: usize) -> Result<Self, ConfigError> {
        if fss == 0 {
            return Err(ConfigError::ZeroFss);
        }
        if max == 0 {
            return Err(ConfigError::ZeroMax);
        }
        Ok(SearchConfig { fss, max, pad_numeric: false })
    }

    pub fn with_padding(mut self, pad: bool) -> Self {
        self.pad_numeric = pad;
        self
    }

    pub fn fss(&self) -> usize {
        self.fss
    }

    pub fn max(&self) -> usize {
        self.max
    }
}

/// Integer candidates for ℤ and ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericSeed {
    pub int: Vec<i64>,
    pub nat: Vec<i64>,
}

/// `[0 .. fss-1]`
pub fn default_nat(fss: usize) -> Vec<i64> {
    (0..fss as i64).collect()
}

/// `[-(fss div 2 + (fss mod 2 - 1)) .. fss div 2]`
pub fn default_int(fss: usize) -> Vec<i64> {
    let f = fss as i64;
    (-(f / 2 + (f % 2 - 1))..=f / 2).collect()
}

/// Distinct integer literals of the predicates, in textual order.
pub fn int_literals(spec: &TypedSpec) -> Vec<i64> {
    let mut out = Vec::new();
    for p in &spec.spec.preds {
        let (l, r) = p.operands();
        for e in [l, r] {
            e.walk(&mut |x| {
                if let Expr::IntLit(i) = x {
                    if !out.contains(i) {
                        out.push(*i);
                    }
                }
            });
        }
    }
    out
}

pub fn numeric_seed(spec: &TypedSpec, cfg: &SearchConfig) -> NumericSeed {
    let lits: Vec<i64> = int_literals(spec).into_iter().take(cfg.fss).collect();
    let pad = |mut v: Vec<i64>, defaults: Vec<i64>| {
        if v.is_empty() {
            return defaults;
        }
        if cfg.pad_numeric {
            for d in defaults {
                if v.len() >= cfg.fss {
                    break;
                }
                if !v.contains(&d) {
                    v.push(d);
                }
            }
        }
        v
    };
    let nat: Vec<i64> = lits.iter().copied().filter(|i| *i >= 0).collect();
    NumericSeed { int: pad(lits, default_int(cfg.fss)), nat: pad(nat, default_nat(cfg.fss)) }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Note {
    #[error("candidates for `{var}` truncated to {kept}")]
    CandidateExplosion { var: String, kept: usize },
    #[error("`{var}` has no candidate satisfying its declaration")]
    NoCandidates { var: String },
}

/// Candidate values per variable, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    pub per_var: Vec<(String, Vec<Value>)>,
    pub notes: Vec<Note>,
}

impl FiniteModel {
    /// Product of the list lengths, saturating.
    pub fn estimated_size(&self) -> u128 {
        self.per_var.iter().fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128))
    }
}

/// The universe the search assumes for basic types: `B1 .. Bfss` for each basic `B`.
pub fn search_universe(spec: &TypedSpec, cfg: &SearchConfig) -> Universe {
    Universe::fresh(&spec.types.basics, cfg.fss)
}

/// A literal the variable is equated to, if any predicate has the form `v = closed-expr`.
fn pinned_value(spec: &TypedSpec, var: &str) -> Option<Value> {
    spec.spec.preds.iter().find_map(|p| {
        let Pred::Equal(a, b) = p else { return None };
        let lit = match (a, b) {
            (Expr::Var(v), e) | (e, Expr::Var(v)) if v == var && e.is_closed() => e,
            _ => return None,
        };
        eval_expr(lit, &Env::new(), &spec.types).ok()
    })
}

pub fn build_candidates(var: &str, t: &TypeExpr, spec: &TypedSpec, cfg: &SearchConfig) -> (Vec<Value>, Vec<Note>) {
    let seed = numeric_seed(spec, cfg);
    build_with_seed(var, t, spec, cfg, &seed)
}

fn build_with_seed(
    var: &str,
    t: &TypeExpr,
    spec: &TypedSpec,
    cfg: &SearchConfig,
    seed: &NumericSeed,
) -> (Vec<Value>, Vec<Note>) {
    let universe = search_universe(spec, cfg);
    let mut notes = Vec::new();
    let mut list = match pinned_value(spec, var) {
        Some(v) => vec![v],
        None => {
            let mut gen = Gen { seed, fss: cfg.fss, limit: cfg.max, truncated: false };
            let list = gen.of(t);
            if gen.truncated {
                notes.push(Note::CandidateExplosion { var: var.to_string(), kept: list.len() });
            }
            list
        }
    };
    list.retain(|v| admits(t, v, &universe).is_ok());
    if !spec.spec.preds.iter().any(|p| p.mentions_var(var)) {
        // any singleton will do; prefer the integer nearest zero
        let pick = list.iter().min_by_key(|v| match v {
            Value::Int(i) => (i.unsigned_abs(), *i < 0),
            _ => (0, false),
        });
        list = pick.cloned().into_iter().collect();
    }
    if list.is_empty() {
        notes.push(Note::NoCandidates { var: var.to_string() });
    }
    (list, notes)
}

pub fn finite_model(spec: &TypedSpec, cfg: &SearchConfig) -> FiniteModel {
    let seed = numeric_seed(spec, cfg);
    let mut per_var = Vec::new();
    let mut notes = Vec::new();
    for v in &spec.vars {
        let (list, n) = build_with_seed(&v.name, &v.declared, spec, cfg, &seed);
        per_var.push((v.name.clone(), list));
        notes.extend(n);
    }
    FiniteModel { per_var, notes }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Witness(Env),
    /// The model ran out at predicate `at` (zero-based), or had an empty candidate list.
    Exhausted { at: Option<usize> },
    /// MAX elements were explored without a witness.
    Capped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Model elements enumerated (never above MAX).
    pub explored: usize,
    /// Survivors after each predicate, for the stages that ran.
    pub survivors: Vec<usize>,
    pub estimated_size: u128,
    pub notes: Vec<Note>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Search {
    pub result: SearchResult,
    pub stats: SearchStats,
}

fn holds(p: &Pred, env: &Env, spec: &TypedSpec) -> bool {
    eval_pred(p, env, &spec.types).unwrap_or(false)
}

/// Builds the finite model and filters its product predicate by predicate.
///
/// Elements are enumerated with the first declared variable varying slowest; the first
/// stage explores at most MAX of them and later stages only filter the survivors.
pub fn search(spec: &TypedSpec, cfg: &SearchConfig) -> Search {
    let model = finite_model(spec, cfg);
    let mut stats = SearchStats {
        estimated_size: model.estimated_size(),
        notes: model.notes.clone(),
        ..Default::default()
    };
    if model.per_var.iter().any(|(_, c)| c.is_empty()) {
        return Search { result: SearchResult::Exhausted { at: None }, stats };
    }

    let lists = &model.per_var;
    let preds = &spec.spec.preds;
    let mut idx = vec![0usize; lists.len()];
    let mut survivors: Vec<Env> = Vec::new();
    let mut complete = false;
    while stats.explored < cfg.max {
        let env: Env = lists.iter().zip(&idx).map(|((n, c), &i)| (n.clone(), c[i].clone())).collect();
        stats.explored += 1;
        if preds.first().map_or(true, |p| holds(p, &env, spec)) {
            survivors.push(env);
        }
        let more = lists.iter().rev().zip(idx.iter_mut().rev()).any(|((_, c), i)| {
            odometer_step(std::slice::from_mut(i), c.len())
        });
        if !more {
            complete = true;
            break;
        }
    }
    let empty = |stats: SearchStats, at: usize| Search {
        result: if complete { SearchResult::Exhausted { at: Some(at) } } else { SearchResult::Capped },
        stats,
    };
    if !preds.is_empty() {
        stats.survivors.push(survivors.len());
        if survivors.is_empty() {
            return empty(stats, 0);
        }
    }
    for (k, p) in preds.iter().enumerate().skip(1) {
        survivors.retain(|env| holds(p, env, spec));
        stats.survivors.push(survivors.len());
        if survivors.is_empty() {
            return empty(stats, k);
        }
    }
    match survivors.into_iter().next() {
        Some(w) => Search { result: SearchResult::Witness(w), stats },
        None => empty(stats, 0),
    }
}

#[cfg(test)]
mod tests;

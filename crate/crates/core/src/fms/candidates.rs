//! Per-type candidate generation. Every generator yields values in canonical order and
//! stops once `limit` values have been produced.

use crate::zcore::{SynKind, TypeExpr, Value};

use super::NumericSeed;

pub(crate) struct Gen<'a> {
    pub seed: &'a NumericSeed,
    pub fss: usize,
    pub limit: usize,
    /// Set when some list was cut short at `limit`.
    pub truncated: bool,
}

impl Gen<'_> {
    pub fn of(&mut self, t: &TypeExpr) -> Vec<Value> {
        let mut out = match t {
            TypeExpr::Int => self.seed.int.iter().copied().map(Value::Int).collect(),
            TypeExpr::Nat => self.seed.nat.iter().copied().map(Value::Int).collect(),
            TypeExpr::Free { name, constants } => constants
                .iter()
                .enumerate()
                .map(|(i, c)| Value::enum_const(name, c, i as u32))
                .collect(),
            TypeExpr::Basic(b) => (1..=self.fss).map(|i| Value::basic(b, &format!("{b}{i}"))).collect(),
            TypeExpr::Product(l, r) => {
                let ls = self.of(l);
                let rs = self.of(r);
                let mut out = Vec::new();
                'outer: for a in &ls {
                    for b in &rs {
                        if out.len() == self.limit {
                            self.truncated = true;
                            break 'outer;
                        }
                        out.push(Value::pair(a.clone(), b.clone()));
                    }
                }
                out
            }
            TypeExpr::Power(e) => {
                let elems = sorted(self.of(e));
                self.subsets(&elems)
            }
            TypeExpr::Synonym(SynKind::Finset, args) => {
                let elems = sorted(self.of(&args[0]));
                self.subsets(&elems)
            }
            TypeExpr::Synonym(SynKind::Rel, args) => {
                let elems = sorted(self.of(&TypeExpr::product(args[0].clone(), args[1].clone())));
                self.subsets(&elems)
            }
            TypeExpr::Synonym(SynKind::Pfun | SynKind::Ffun, args) => {
                let dom = sorted(self.of(&args[0]));
                let ran = sorted(self.of(&args[1]));
                self.partial_maps(&dom, &ran)
            }
            TypeExpr::Synonym(SynKind::Fun, args) => {
                let dom = sorted(self.of(&args[0]));
                let ran = sorted(self.of(&args[1]));
                self.total_maps(&dom, &ran)
            }
            TypeExpr::Synonym(SynKind::Seq, args) => {
                let elems = sorted(self.of(&args[0]));
                self.sequences(&elems)
            }
        };
        out.sort();
        out.dedup();
        out
    }

    fn full(&mut self, out: &[Value]) -> bool {
        if out.len() >= self.limit {
            self.truncated = true;
            true
        } else {
            false
        }
    }

    /// Subsets of cardinality at most FSS, by cardinality then lexicographically.
    fn subsets(&mut self, elems: &[Value]) -> Vec<Value> {
        let mut out = Vec::new();
        for k in 0..=self.fss.min(elems.len()) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if self.full(&out) {
                    return out;
                }
                out.push(Value::set(idx.iter().map(|&i| elems[i].clone())));
                if !next_combination(&mut idx, elems.len()) {
                    break;
                }
            }
        }
        out
    }

    /// Partial maps with at most FSS pairs.
    fn partial_maps(&mut self, dom: &[Value], ran: &[Value]) -> Vec<Value> {
        let mut out = Vec::new();
        for k in 0..=self.fss.min(dom.len()) {
            let mut pairs = Vec::with_capacity(k);
            if !self.maps_dfs(dom, ran, 0, k, &mut pairs, &mut out) {
                break;
            }
        }
        out
    }

    /// Depth-first over increasing domain positions; returns false once the limit is hit.
    fn maps_dfs(
        &mut self,
        dom: &[Value],
        ran: &[Value],
        start: usize,
        remaining: usize,
        pairs: &mut Vec<Value>,
        out: &mut Vec<Value>,
    ) -> bool {
        if remaining == 0 {
            if self.full(out) {
                return false;
            }
            out.push(Value::set(pairs.iter().cloned()));
            return true;
        }
        for d in start..=dom.len() - remaining {
            for y in ran {
                pairs.push(Value::pair(dom[d].clone(), y.clone()));
                let go_on = self.maps_dfs(dom, ran, d + 1, remaining - 1, pairs, out);
                pairs.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    /// Every map from all of `dom` into `ran`.
    fn total_maps(&mut self, dom: &[Value], ran: &[Value]) -> Vec<Value> {
        let mut out = Vec::new();
        let mut pairs = Vec::with_capacity(dom.len());
        self.maps_dfs(dom, ran, 0, dom.len(), &mut pairs, &mut out);
        out
    }

    /// Sequences of length at most FSS.
    fn sequences(&mut self, elems: &[Value]) -> Vec<Value> {
        let mut out = Vec::new();
        for len in 0..=self.fss {
            if len > 0 && elems.is_empty() {
                break;
            }
            let mut idx = vec![0usize; len];
            loop {
                if self.full(&out) {
                    return out;
                }
                out.push(Value::set(
                    idx.iter().enumerate().map(|(i, &j)| Value::pair(Value::Int(i as i64 + 1), elems[j].clone())),
                ));
                if !odometer_step(&mut idx, elems.len()) {
                    break;
                }
            }
        }
        out
    }
}

fn sorted(mut v: Vec<Value>) -> Vec<Value> {
    v.sort();
    v.dedup();
    v
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances a base-`n` counter whose first digit is most significant.
pub(crate) fn odometer_step(idx: &mut [usize], n: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < n {
            return true;
        }
        idx[i] = 0;
    }
    false
}

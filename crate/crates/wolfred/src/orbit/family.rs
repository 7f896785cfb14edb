//! Matching a type sum against the 24 named families. Each family row is a
//! list of slots; parameterized slots accept their zero-parameter
//! degenerations (the aliasing rules folding 48 raw combinations into 24
//! rows), and rows are tried in table order with nondegenerate matches
//! preferred, which makes the assignment deterministic.

use super::exactnum::ParamVal;
use super::types::{FamilyLabel, FamilyName, IndecomposableType, Kind, SignTag, TypeSum};
use crate::error::OrbitError;

/// One slot of a family row.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Slot {
    /// A fixed nilpotent summand `D_k^s(0)`.
    Nil(u32, SignTag),
    /// `D_k(z,-z)`, z real; z = 0 stays indecomposable for odd k and
    /// degenerates into `D_k^+(0) + D_k^-(0)` for even k.
    Real(u32),
    /// `D_k^s(z,-z)`, z = ib with b > 0; b = 0 degenerates into two copies
    /// of `D_k^s(0)` (even k only).
    Imag(u32, SignTag),
    /// The complex quadruple; degenerates into two equal real pairs or a
    /// +/- pair of equal imaginary pairs.
    Quad,
}

fn rows() -> Vec<(FamilyName, Vec<Slot>)> {
    use FamilyName::*;
    use SignTag::{Minus as M, Plus as P};
    vec![
        (I1, vec![Slot::Nil(6, P)]),
        (II1, vec![Slot::Nil(4, P), Slot::Imag(0, M)]),
        (II2, vec![Slot::Nil(4, M), Slot::Real(0)]),
        (II3, vec![Slot::Real(2), Slot::Nil(0, M)]),
        (II4, vec![Slot::Imag(2, P), Slot::Nil(0, P)]),
        (II5, vec![Slot::Imag(1, M), Slot::Nil(2, P)]),
        (II6, vec![Slot::Real(1), Slot::Nil(2, P)]),
        (II7, vec![Slot::Imag(1, P), Slot::Nil(2, P)]),
        (III1, vec![Slot::Quad, Slot::Nil(2, P)]),
        (III2, vec![Slot::Nil(2, M), Slot::Real(0), Slot::Imag(0, M)]),
        (III3, vec![Slot::Imag(0, P), Slot::Nil(2, P), Slot::Imag(0, M)]),
        (III4, vec![Slot::Nil(2, P), Slot::Real(0), Slot::Real(0)]),
        (III5, vec![Slot::Imag(1, M), Slot::Real(0), Slot::Nil(0, M)]),
        (III6, vec![Slot::Real(1), Slot::Real(0), Slot::Nil(0, M)]),
        (III7, vec![Slot::Imag(1, P), Slot::Real(0), Slot::Nil(0, M)]),
        (III8, vec![Slot::Imag(1, M), Slot::Nil(0, P), Slot::Imag(0, M)]),
        (III9, vec![Slot::Real(1), Slot::Nil(0, P), Slot::Imag(0, M)]),
        (III10, vec![Slot::Imag(1, P), Slot::Nil(0, P), Slot::Imag(0, M)]),
        (IV1, vec![Slot::Quad, Slot::Real(0), Slot::Nil(0, M)]),
        (IV2, vec![Slot::Quad, Slot::Nil(0, P), Slot::Imag(0, M)]),
        (IV3, vec![Slot::Imag(0, P), Slot::Real(0), Slot::Imag(0, M), Slot::Nil(0, M)]),
        (IV4, vec![Slot::Imag(0, P), Slot::Nil(0, P), Slot::Imag(0, M), Slot::Imag(0, M)]),
        (IV5, vec![Slot::Real(0), Slot::Real(0), Slot::Real(0), Slot::Nil(0, M)]),
        (IV6, vec![Slot::Real(0), Slot::Real(0), Slot::Nil(0, P), Slot::Imag(0, M)]),
    ]
}

/// Multiset of remaining summands during matching.
#[derive(Debug, Clone)]
struct Pool {
    items: Vec<IndecomposableType>,
    used: Vec<bool>,
}

impl Pool {
    fn take<F: Fn(&IndecomposableType) -> bool>(&mut self, pred: F) -> Option<usize> {
        for (i, item) in self.items.iter().enumerate() {
            if !self.used[i] && pred(item) {
                self.used[i] = true;
                return Some(i);
            }
        }
        None
    }
    fn put_back(&mut self, i: usize) {
        self.used[i] = false;
    }
    fn all_used(&self) -> bool {
        self.used.iter().all(|u| *u)
    }
}

fn param_of(item: &IndecomposableType) -> ParamVal {
    match &item.kind {
        Kind::RealPair { a } => a.clone(),
        Kind::ImagPair { b, .. } => b.clone(),
        _ => ParamVal::from_f64(0.0),
    }
}

/// Try to satisfy `slots[idx..]` from the pool; on success, parameters are
/// appended in slot order. `degenerate` counts zero-parameter alias uses.
fn match_slots(
    slots: &[Slot],
    idx: usize,
    pool: &mut Pool,
    params: &mut Vec<ParamVal>,
    degenerate: &mut usize,
) -> bool {
    if idx == slots.len() {
        return pool.all_used();
    }
    let slot = slots[idx];
    match slot {
        Slot::Nil(k, s) => {
            if let Some(i) = pool.take(|t| t.height == k && t.kind == (Kind::Zero { sign: s })) {
                if match_slots(slots, idx + 1, pool, params, degenerate) {
                    return true;
                }
                pool.put_back(i);
            }
            false
        }
        Slot::Real(k) => {
            // nondegenerate first: any real pair of that height
            let candidates: Vec<usize> = (0..pool.items.len())
                .filter(|&i| {
                    !pool.used[i]
                        && pool.items[i].height == k
                        && matches!(pool.items[i].kind, Kind::RealPair { .. })
                })
                .collect();
            for i in candidates {
                pool.used[i] = true;
                params.push(param_of(&pool.items[i]));
                if match_slots(slots, idx + 1, pool, params, degenerate) {
                    return true;
                }
                params.pop();
                pool.put_back(i);
            }
            // zero degeneration for even k: D_k^+(0) + D_k^-(0)
            if k % 2 == 0 {
                if let Some(i) =
                    pool.take(|t| t.height == k && t.kind == (Kind::Zero { sign: SignTag::Plus }))
                {
                    if let Some(j) = pool
                        .take(|t| t.height == k && t.kind == (Kind::Zero { sign: SignTag::Minus }))
                    {
                        params.push(ParamVal::from_f64(0.0));
                        *degenerate += 1;
                        if match_slots(slots, idx + 1, pool, params, degenerate) {
                            return true;
                        }
                        *degenerate -= 1;
                        params.pop();
                        pool.put_back(j);
                    }
                    pool.put_back(i);
                }
            }
            false
        }
        Slot::Imag(k, s) => {
            let candidates: Vec<usize> = (0..pool.items.len())
                .filter(|&i| {
                    !pool.used[i]
                        && pool.items[i].height == k
                        && matches!(&pool.items[i].kind, Kind::ImagPair { sign, .. } if *sign == s)
                })
                .collect();
            for i in candidates {
                pool.used[i] = true;
                params.push(param_of(&pool.items[i]));
                if match_slots(slots, idx + 1, pool, params, degenerate) {
                    return true;
                }
                params.pop();
                pool.put_back(i);
            }
            // zero degeneration for even k: two copies of D_k^s(0)
            if k % 2 == 0 {
                if let Some(i) = pool.take(|t| t.height == k && t.kind == (Kind::Zero { sign: s })) {
                    if let Some(j) =
                        pool.take(|t| t.height == k && t.kind == (Kind::Zero { sign: s }))
                    {
                        params.push(ParamVal::from_f64(0.0));
                        *degenerate += 1;
                        if match_slots(slots, idx + 1, pool, params, degenerate) {
                            return true;
                        }
                        *degenerate -= 1;
                        params.pop();
                        pool.put_back(j);
                    }
                    pool.put_back(i);
                }
            }
            false
        }
        Slot::Quad => {
            // genuine quadruple
            let candidates: Vec<usize> = (0..pool.items.len())
                .filter(|&i| !pool.used[i] && matches!(pool.items[i].kind, Kind::Quad { .. }))
                .collect();
            for i in candidates {
                pool.used[i] = true;
                let (re, im) = match &pool.items[i].kind {
                    Kind::Quad { re, im } => (re.clone(), im.clone()),
                    _ => unreachable!(),
                };
                params.push(re);
                params.push(im);
                if match_slots(slots, idx + 1, pool, params, degenerate) {
                    return true;
                }
                params.pop();
                params.pop();
                pool.put_back(i);
            }
            // real degeneration: two equal real pairs (z = a, b -> 0)
            let reals: Vec<usize> = (0..pool.items.len())
                .filter(|&i| {
                    !pool.used[i]
                        && pool.items[i].height == 0
                        && matches!(pool.items[i].kind, Kind::RealPair { .. })
                })
                .collect();
            for &i in &reals {
                for &j in &reals {
                    if j <= i || pool.used[i] || pool.used[j] {
                        continue;
                    }
                    let (pi, pj) = (param_of(&pool.items[i]), param_of(&pool.items[j]));
                    if !pi.approx_eq(&pj, 1e-9) {
                        continue;
                    }
                    pool.used[i] = true;
                    pool.used[j] = true;
                    params.push(pi);
                    params.push(ParamVal::from_f64(0.0));
                    *degenerate += 1;
                    if match_slots(slots, idx + 1, pool, params, degenerate) {
                        return true;
                    }
                    *degenerate -= 1;
                    params.pop();
                    params.pop();
                    pool.put_back(j);
                    pool.put_back(i);
                }
            }
            // imaginary degeneration: D0+(ib) + D0-(ib) (z = ib, a -> 0)
            let plus: Vec<usize> = (0..pool.items.len())
                .filter(|&i| {
                    !pool.used[i]
                        && pool.items[i].height == 0
                        && matches!(&pool.items[i].kind, Kind::ImagPair { sign: SignTag::Plus, .. })
                })
                .collect();
            for &i in &plus {
                let bi = param_of(&pool.items[i]);
                pool.used[i] = true;
                if let Some(j) = pool.take(|t| {
                    t.height == 0
                        && matches!(&t.kind, Kind::ImagPair { sign: SignTag::Minus, b }
                            if b.approx_eq(&bi, 1e-9))
                }) {
                    params.push(ParamVal::from_f64(0.0));
                    params.push(bi.clone());
                    *degenerate += 1;
                    if match_slots(slots, idx + 1, pool, params, degenerate) {
                        return true;
                    }
                    *degenerate -= 1;
                    params.pop();
                    params.pop();
                    pool.put_back(j);
                }
                pool.put_back(i);
            }
            // full zero degeneration: 2 D0+(0) + 2 D0-(0)
            let mut taken = Vec::new();
            for s in [SignTag::Plus, SignTag::Plus, SignTag::Minus, SignTag::Minus] {
                if let Some(i) = pool.take(|t| t.height == 0 && t.kind == (Kind::Zero { sign: s })) {
                    taken.push(i);
                } else {
                    for i in taken.drain(..) {
                        pool.put_back(i);
                    }
                    return false;
                }
            }
            params.push(ParamVal::from_f64(0.0));
            params.push(ParamVal::from_f64(0.0));
            *degenerate += 1;
            if match_slots(slots, idx + 1, pool, params, degenerate) {
                return true;
            }
            *degenerate -= 1;
            params.pop();
            params.pop();
            for i in taken {
                pool.put_back(i);
            }
            false
        }
    }
}

/// Assign a type sum of dimension 7 and signature (3,4) to its family row.
pub fn family_label(ts: &TypeSum) -> Result<FamilyLabel, OrbitError> {
    if ts.dimension() != 7 || ts.signature() != (3, 4) {
        let (p, q) = ts.signature();
        return Err(OrbitError::BadTypeSum { dim: ts.dimension(), p, q });
    }
    let mut best: Option<(usize, FamilyName, Vec<ParamVal>)> = None;
    for (name, slots) in rows() {
        let mut pool = Pool {
            items: ts.summands().to_vec(),
            used: vec![false; ts.summands().len()],
        };
        let mut params = Vec::new();
        let mut degenerate = 0usize;
        if match_slots(&slots, 0, &mut pool, &mut params, &mut degenerate) {
            debug_assert_eq!(params.len(), name.param_count());
            match &best {
                Some((d, _, _)) if *d <= degenerate => {}
                _ => best = Some((degenerate, name, params)),
            }
            if degenerate == 0 {
                break; // rows are in table order; first exact match wins
            }
        }
    }
    match best {
        Some((_, name, params)) => Ok(FamilyLabel { name, params }),
        None => Err(OrbitError::NoFamilyMatch(ts.to_string())),
    }
}

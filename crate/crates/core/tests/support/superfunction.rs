//! Schouten bracket as the odd Poisson bracket on superfunctions `f(x) ξ_I`,
//! written independently of the generator-and-word engine:
//!
//! `[P, Q] = sum_i (P ∂⃖ξ_i)(∂x_i Q) - (P ∂⃖x_i)(∂⃗ξ_i Q)`.

use std::collections::BTreeMap;

use homcat_core::poly_geometry::PolyMultivectorField;
use homcat_core::{ExtIndex, Polynomial};

type Super = BTreeMap<Vec<usize>, Polynomial>;

fn to_super(x: &PolyMultivectorField) -> Super {
    x.terms().map(|(i, f)| (i.indices().to_vec(), f.clone())).collect()
}

fn add(out: &mut Super, k: Vec<usize>, f: Polynomial) {
    let e = out.entry(k.clone()).or_insert_with(|| Polynomial::zero(f.nvars()));
    *e += &f;
    if e.is_zero() {
        out.remove(&k);
    }
}

/// Sorts the concatenation by adjacent swaps, counting the sign.
fn merge(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut neg = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                neg = !neg;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((neg, v))
}

fn mul(p: &Super, q: &Super) -> Super {
    let mut out = Super::new();
    for (i, f) in p {
        for (j, g) in q {
            if let Some((neg, k)) = merge(i, j) {
                let c = f * g;
                add(&mut out, k, if neg { -&c } else { c });
            }
        }
    }
    out
}

/// Removes `ξ_a` from the left (`right = false`) or right end.
fn d_xi(p: &Super, a: usize, right: bool) -> Super {
    let mut out = Super::new();
    for (i, f) in p {
        if let Some(pos) = i.iter().position(|&b| b == a) {
            let moves = if right { i.len() - 1 - pos } else { pos };
            let mut k = i.clone();
            k.remove(pos);
            add(&mut out, k, if moves % 2 == 1 { -f } else { f.clone() });
        }
    }
    out
}

fn d_x(p: &Super, a: usize) -> Super {
    let mut out = Super::new();
    for (i, f) in p {
        add(&mut out, i.clone(), f.partial(a).unwrap());
    }
    out
}

pub fn schouten_oracle(p: &PolyMultivectorField, q: &PolyMultivectorField) -> PolyMultivectorField {
    let n = p.num_vars();
    let (sp, sq) = (to_super(p), to_super(q));
    let mut out = Super::new();
    for a in 0..n {
        for (k, f) in mul(&d_xi(&sp, a, true), &d_x(&sq, a)) {
            add(&mut out, k, f);
        }
        for (k, f) in mul(&d_x(&sp, a), &d_xi(&sq, a, false)) {
            add(&mut out, k, -&f);
        }
    }
    PolyMultivectorField::from_terms(n, out.into_iter().map(|(k, f)| (ExtIndex::new(k).unwrap(), f))).unwrap()
}

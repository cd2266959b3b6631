//! Deterministic factorization over GF(q): squarefree decomposition followed
//! by Berlekamp splitting with exhaustive constant shifts.

use super::{Elem, Poly};
use crate::linalg::Matrix;

/// Factors `f` into monic irreducibles with multiplicities, sorted by degree
/// and then by coefficients. The leading unit of `f` is dropped.
pub fn poly_factor(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        for g in berlekamp(&part) {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += mult,
                None => out.push((g, mult)),
            }
        }
    }
    out.sort_by_key(|a| a.0.sort_key());
    out
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let g = f.monic();
            let d = g.derivative();
            !d.is_zero() && g.gcd(&d).is_one() && berlekamp_subalgebra(&g).len() == 1
        }
    }
}

/// Inverse Frobenius on coefficients of a polynomial in x^p.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let inv_frob = field.degree() - 1;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.frobenius(c, inv_frob)).collect();
    Poly::new(field, coeffs)
}

/// Squarefree factorization of a monic polynomial: pairs (squarefree part, multiplicity).
fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        i += 1;
        c = c.exact_div(&y).unwrap();
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c.monic())) {
            out.push((g, m * p));
        }
    }
    out
}

/// Basis of {h : h^q = h mod g} for monic squarefree g, as polynomials.
fn berlekamp_subalgebra(g: &Poly) -> Vec<Poly> {
    let field = g.field();
    let n = g.degree().unwrap();
    let q = field.order() as u64;
    let xq = Poly::x(field).pow_mod(q, g).unwrap();
    let mut m = Matrix::zeros(field, n, n);
    let mut r = Poly::one(field);
    for i in 0..n {
        for j in 0..n {
            m.set(j, i, r.coeff(j));
        }
        m.set(i, i, field.sub(m.get(i, i), Elem::ONE));
        r = r.mul(&xq).rem(g).unwrap();
    }
    m.kernel()
        .basis_vectors()
        .into_iter()
        .map(|v| Poly::new(field, v))
        .collect()
}

fn berlekamp(g: &Poly) -> Vec<Poly> {
    let field = g.field();
    if g.degree().unwrap_or(0) <= 1 {
        return vec![g.monic()];
    }
    let basis = berlekamp_subalgebra(g);
    let r = basis.len();
    let mut factors = vec![g.clone()];
    for h in basis.iter().filter(|h| h.degree().unwrap_or(0) > 0) {
        if factors.len() == r {
            break;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut pieces = Vec::new();
            for s in field.elements() {
                let d = u.gcd(&h.sub(&Poly::constant(field, s)));
                if d.degree().unwrap_or(0) > 0 {
                    pieces.push(d);
                }
            }
            if pieces.is_empty() {
                next.push(u);
            } else {
                next.extend(pieces);
            }
        }
        factors = next;
    }
    factors.iter().map(|f| f.monic()).collect()
}

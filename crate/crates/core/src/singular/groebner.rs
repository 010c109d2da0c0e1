//! Buchberger's algorithm for affine ideals in two variables, stored as
//! polynomials in x (u) and y (v) with graded order x > y.

use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn sugar_of(p: &Poly) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Full reduction of `f` by `basis`.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let field = f.field();
    let leads: Vec<(Monomial, Scalar)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("nonzero basis element");
            (*m, c.inv().expect("nonzero"))
        })
        .collect();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = leads[k].0.quotient(&m);
                let coef = &c * &leads[k].1;
                p = &p - &basis[k].mul_term(&coef, &q);
            }
            None => {
                rem.push((m, c.clone()));
                p = &p - &Poly::term(c, m);
            }
        }
    }
    Poly::from_terms(field, rem)
}

fn s_poly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let a = f.mul_term(&gc.clone(), &fm.quotient(lcm));
    let b = g.mul_term(&fc.clone(), &gm.quotient(lcm));
    &a - &b
}

/// Reduced Gröbner basis, monic and sorted by leading monomial.
pub fn buchberger2(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let add = |h: Poly, s: u32, basis: &mut Vec<Poly>, sugars: &mut Vec<u32>, pairs: &mut Vec<Pair>| {
        let h = h.monic();
        let hm = h.leading_monomial().unwrap();
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let gm = g.leading_monomial().unwrap();
            let lcm = gm.lcm(&hm);
            let sugar = (sugars[i] + lcm.degree() - gm.degree()).max(s + lcm.degree() - hm.degree());
            pairs.push(Pair { i, j: k, lcm, sugar });
        }
        basis.push(h);
        sugars.push(s);
    };
    for g in gens {
        let h = normal_form(g, &basis);
        if !h.is_zero() {
            add(h, sugar_of(g), &mut basis, &mut sugars, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| pairs[a].lcm.cmp(&pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let fm = basis[pair.i].leading_monomial().unwrap();
        let gm = basis[pair.j].leading_monomial().unwrap();
        // coprime leading monomials reduce to zero
        if fm.gcd(&gm).degree() == 0 {
            continue;
        }
        // chain criterion: some third leading monomial divides the lcm and its
        // pairs with both ends are still queued or already handled
        let chain = basis.iter().enumerate().any(|(k, b)| {
            k != pair.i
                && k != pair.j
                && b.leading_monomial().unwrap().divides(&pair.lcm)
                && !pairs.iter().any(|p| (p.i, p.j) == (pair.i.min(k), pair.i.max(k)))
                && !pairs.iter().any(|p| (p.i, p.j) == (pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let h = normal_form(&s, &basis);
        if !h.is_zero() {
            add(h, pair.sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }
    reduce_basis(basis)
}

fn reduce_basis(mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by_key(|g| g.leading_monomial().unwrap());
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let gm = g.leading_monomial().unwrap();
        if minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&gm)) {
            continue;
        }
        minimal.retain(|h| !gm.divides(&h.leading_monomial().unwrap()));
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = Poly::term(Scalar::one(minimal[k].field()), minimal[k].leading_monomial().unwrap());
        let tail = &minimal[k] - &lead;
        out.push((&lead + &normal_form(&tail, &others)).monic());
    }
    out.sort_by_key(|g| g.leading_monomial().unwrap());
    out
}

/// Every S-polynomial reduces to zero.
pub fn is_groebner(basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].leading_monomial().unwrap().lcm(&basis[j].leading_monomial().unwrap());
            if !normal_form(&s_poly(&basis[i], &basis[j], &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldId;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    #[test]
    fn trivial_bases() {
        assert_eq!(buchberger2(&[p("x"), p("y")]), vec![p("y"), p("x")]);
        let g = buchberger2(&[p("x^2"), p("x*y"), p("y^2")]);
        assert_eq!(g.len(), 3);
        assert!(is_groebner(&g));
    }

    #[test]
    fn two_circles() {
        let g = buchberger2(&[p("x^2+y^2-1"), p("x^2+y^2-2*x")]);
        assert!(is_groebner(&g));
        assert!(g.contains(&p("x-1/2")));
        assert!(normal_form(&p("y^2-3/4"), &g).is_zero());
        let unit = buchberger2(&[p("x"), p("x-1")]);
        assert_eq!(unit, vec![p("1")]);
    }
}

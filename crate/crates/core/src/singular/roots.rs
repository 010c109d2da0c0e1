//! Roots in the ground field of univariate polynomials: Cantor–Zassenhaus
//! over GF(p), p-adic lifting plus rational reconstruction over ℚ and ℚ(i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::multimodular::{prime_sequence, rational_reconstruction};
use crate::scalar::{powmod, FieldId, Gaussian, Scalar};
use crate::upoly::UPoly;

/// Distinct roots in the field plus the squarefree part that does not split.
#[derive(Debug, Clone)]
pub struct RootSplit {
    pub roots: Vec<Scalar>,
    pub residual: UPoly,
}

impl RootSplit {
    pub fn residual_degree(&self) -> usize {
        self.residual.degree().unwrap_or(0)
    }
}

pub fn field_roots(f: &UPoly) -> RootSplit {
    let field = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return RootSplit {
            roots: Vec::new(),
            residual: UPoly::one(field),
        };
    }
    let sq = f.squarefree_part();
    let mut roots = match field {
        FieldId::Fp(p) => fp_roots(&sq, p),
        FieldId::Q => rational_roots(&sq),
        FieldId::QI => gaussian_roots(&sq),
    };
    roots.sort_by_key(|r| r.to_string());
    roots.dedup();
    let mut residual = sq;
    for r in &roots {
        let (q, rem) = residual.div_rem(&UPoly::linear(r));
        debug_assert!(rem.is_zero());
        residual = q;
    }
    RootSplit {
        roots,
        residual: residual.monic(),
    }
}

fn fp_roots(f: &UPoly, p: u64) -> Vec<Scalar> {
    let field = FieldId::Fp(p);
    let t = UPoly::x(field);
    let f = f.monic();
    if p < 64 {
        return (0..p)
            .map(|v| Scalar::from_i64(field, v as i64))
            .filter(|v| f.eval(v).is_zero())
            .collect();
    }
    // product of the linear factors
    let frob = t.pow_mod(p as u128, &f);
    let g = frob.sub(&t).gcd(&f);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc2a1);
    split_linear(&g, p, &mut rng, &mut out);
    out
}

fn split_linear(g: &UPoly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Scalar>) {
    let field = FieldId::Fp(p);
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(-&g.coeffs()[0]);
        }
        Some(d) => loop {
            let a = Scalar::from_i64(field, rng.gen_range(0..p.min(i64::MAX as u64)) as i64);
            let shifted = UPoly::new(field, vec![a, Scalar::one(field)]);
            let h = shifted.pow_mod(((p - 1) / 2) as u128, g).sub(&UPoly::one(field)).gcd(g);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < d {
                split_linear(&h, p, rng, out);
                split_linear(&g.div_rem(&h).0, p, rng, out);
                return;
            }
        },
    }
}

/// Integer coefficient vector (low to high) of a rational polynomial, made primitive.
fn integer_coeffs(f: &UPoly) -> Vec<BigInt> {
    let qs: Vec<BigRational> = f.coeffs().iter().map(|c| c.to_rational().expect("rational")).collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    ints.into_iter().map(|a| a / &g).collect()
}

fn modp(v: &BigInt, m: &BigInt) -> BigInt {
    v.mod_floor(m)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Horner evaluation of an integer polynomial modulo `m`.
fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| modp(&(acc * x + a), m))
}

fn deriv(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * BigInt::from(k)).collect()
}

/// Residues mod p of an integer polynomial; `None` if the degree drops or
/// the image is not squarefree.
fn good_reduction(c: &[BigInt], p: u64) -> Option<UPoly> {
    let field = FieldId::Fp(p);
    let up = UPoly::new(field, c.iter().map(|a| Scalar::from_bigint(field, a)).collect());
    (up.degree() == Some(c.len() - 1) && up.is_squarefree()).then_some(up)
}

/// Newton lifting of simple roots of `c` from mod p to mod p^k ≥ `target`.
fn lift_roots(c: &[BigInt], roots: &[u64], p: u64, target: &BigInt) -> (Vec<BigInt>, BigInt) {
    let dc = deriv(c);
    let mut m = BigInt::from(p);
    let mut rs: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(r)).collect();
    while &m <= target {
        let m2 = &m * &m;
        for r in rs.iter_mut() {
            let fr = eval_mod(c, r, &m2);
            let dr = eval_mod(&dc, r, &m2);
            let inv = inv_mod(&dr, &m2).expect("simple root");
            *r = modp(&(&*r - fr * inv), &m2);
        }
        m = m2;
    }
    (rs, m)
}

fn strip_zero_roots(c: &mut Vec<BigInt>) -> bool {
    let mut had = false;
    while c.first().is_some_and(Zero::is_zero) {
        c.remove(0);
        had = true;
    }
    had
}

fn rational_roots(f: &UPoly) -> Vec<Scalar> {
    let mut c = integer_coeffs(f);
    let mut out = Vec::new();
    if strip_zero_roots(&mut c) {
        out.push(Scalar::zero(FieldId::Q));
    }
    if c.len() <= 1 {
        return out;
    }
    // a root r/s has s | lc and r | c₀
    let bound = c[0].abs().max(c.last().unwrap().abs());
    let target: BigInt = BigInt::from(2) * &bound * &bound;
    for p in prime_sequence() {
        let Some(up) = good_reduction(&c, p) else { continue };
        let rp: Vec<u64> = fp_roots(&up, p).iter().map(|s| s.residue().unwrap()).collect();
        let (lifted, m) = lift_roots(&c, &rp, p, &target);
        let half: BigInt = (&m >> 1u32).sqrt();
        for r in lifted {
            if let Some(q) = rational_reconstruction(&r, &m, &half) {
                let s = Scalar::Q(q);
                if f.eval(&s).is_zero() {
                    out.push(s);
                }
            }
        }
        return out;
    }
    unreachable!("prime sequence exhausted")
}

fn gaussian_parts(c: &Scalar) -> (BigRational, BigRational) {
    match c {
        Scalar::QI(g) => (g.re.clone(), g.im.clone()),
        Scalar::Q(q) => (q.clone(), BigRational::zero()),
        _ => unreachable!("Gaussian input"),
    }
}

/// Square root of −1 modulo a prime p ≡ 1 (mod 4).
fn sqrt_minus_one(p: u64) -> u64 {
    (2..p)
        .map(|c| powmod(c, (p - 1) / 4, p))
        .find(|&s| ((s as u128 * s as u128) % p as u128) as u64 == p - 1)
        .expect("p ≡ 1 mod 4")
}

fn gaussian_roots(f: &UPoly) -> Vec<Scalar> {
    // integral real and imaginary parts
    let parts: Vec<(BigRational, BigRational)> = f.coeffs().iter().map(gaussian_parts).collect();
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, (a, b)| acc.lcm(a.denom()).lcm(b.denom()));
    let to_int = |q: &BigRational| q.numer() * (&den / q.denom());
    let mut re: Vec<BigInt> = parts.iter().map(|(a, _)| to_int(a)).collect();
    let mut im: Vec<BigInt> = parts.iter().map(|(_, b)| to_int(b)).collect();
    let mut out = Vec::new();
    while re.first().is_some_and(Zero::is_zero) && im.first().is_some_and(Zero::is_zero) {
        re.remove(0);
        im.remove(0);
        if out.is_empty() {
            out.push(Scalar::zero(FieldId::QI));
        }
    }
    if re.len() <= 1 {
        return out;
    }
    // coefficient bound for the norm f·f̄, then for its factors of degree ≤ 2
    let n = re.len();
    let mut norm1 = BigInt::zero();
    for i in 0..n {
        for j in 0..n {
            let a = (&re[i] * &re[j] + &im[i] * &im[j]).abs();
            let b = (&im[i] * &re[j] - &re[i] * &im[j]).abs();
            norm1 += a + b;
        }
    }
    let mbound = BigInt::from(2) * norm1 + 1;
    let target = BigInt::from(18) * &mbound * &mbound;
    for p in prime_sequence().filter(|p| p % 4 == 1) {
        let s = sqrt_minus_one(p);
        let image = |sign: i64| -> Vec<BigInt> {
            re.iter()
                .zip(&im)
                .map(|(a, b)| a + BigInt::from(sign) * b * BigInt::from(s))
                .collect()
        };
        let (c1, c2) = (image(1), image(-1));
        let (Some(u1), Some(u2)) = (good_reduction(&c1, p), good_reduction(&c2, p)) else {
            continue;
        };
        let r1: Vec<u64> = fp_roots(&u1, p).iter().map(|x| x.residue().unwrap()).collect();
        let r2: Vec<u64> = fp_roots(&u2, p).iter().map(|x| x.residue().unwrap()).collect();
        if r1.is_empty() || r2.is_empty() {
            return out;
        }
        // lift s and both root sets together
        let (sk, m) = lift_roots(&[BigInt::one(), BigInt::zero(), BigInt::one()], &[s], p, &target);
        let sk = &sk[0];
        let lifted_image = |sign: i64| -> Vec<BigInt> {
            re.iter()
                .zip(&im)
                .map(|(a, b)| modp(&(a + BigInt::from(sign) * b * sk), &m))
                .collect()
        };
        let (l1, _) = lift_roots(&lifted_image(1), &r1, p, &target);
        let (l2, _) = lift_roots(&lifted_image(-1), &r2, p, &target);
        // the conjugate root ᾱ is a root of the second image under the same s
        let half: BigInt = (&m >> 1u32).sqrt();
        let inv2 = inv_mod(&BigInt::from(2), &m).unwrap();
        let inv2s = inv_mod(&(BigInt::from(2) * sk), &m).unwrap();
        for a in &l1 {
            for b in &l2 {
                let u = modp(&((a + b) * &inv2), &m);
                let v = modp(&((a - b) * &inv2s), &m);
                let (Some(uq), Some(vq)) = (
                    rational_reconstruction(&u, &m, &half),
                    rational_reconstruction(&v, &m, &half),
                ) else {
                    continue;
                };
                let cand = Scalar::QI(Gaussian { re: uq, im: vq });
                if f.eval(&cand).is_zero() {
                    out.push(cand);
                    break;
                }
            }
        }
        return out;
    }
    unreachable!("prime sequence exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_roots_with_residual() {
        // (t - 2/3)(t + 5)^2 (t^2 + 1)
        let f = FieldId::Q;
        let a = UPoly::linear(&q(2, 3));
        let b = UPoly::linear(&q(-5, 1));
        let c = UPoly::from_i64(f, &[1, 0, 1]);
        let r = field_roots(&a.mul(&b).mul(&b).mul(&c));
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&q(2, 3)) && r.roots.contains(&q(-5, 1)));
        assert_eq!(r.residual, c);
    }

    #[test]
    fn gaussian_and_prime_roots() {
        let r = field_roots(&UPoly::from_i64(FieldId::QI, &[1, 0, 1]));
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&Scalar::imaginary_unit()));
        assert_eq!(r.residual_degree(), 0);
        let alpha = Scalar::gaussian(BigRational::new(3.into(), 7.into()), BigRational::new((-2).into(), 5.into()));
        let g = UPoly::linear(&alpha).mul(&UPoly::from_i64(FieldId::QI, &[3, 1, 0, 1]));
        let r = field_roots(&g);
        assert_eq!(r.roots, vec![alpha]);
        assert_eq!(r.residual_degree(), 3);
        let fp = FieldId::fp(65537).unwrap();
        let h = UPoly::from_i64(fp, &[-6, 11, -6, 1]);
        let r = field_roots(&h);
        assert_eq!(r.roots.len(), 3);
        let big = FieldId::fp(1_000_000_007).unwrap();
        let h = UPoly::from_i64(big, &[1, 0, 1]);
        assert_eq!(field_roots(&h).roots.len(), 0);
    }
}

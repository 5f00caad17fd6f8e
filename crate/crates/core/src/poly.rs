//! Dense univariate polynomials over a [`FiniteField`].

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::matrix::Matrix;

const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 16;

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.field.format_elem(c);
            terms.push(match (i, c == Elem::ONE) {
                (0, _) => cs,
                (1, true) => "t".into(),
                (1, false) => format!("{cs}t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{cs}t^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &FiniteField, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &FiniteField) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    /// The indeterminate `t`.
    pub fn t(field: &FiniteField) -> Poly {
        Poly::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `t - a`.
    pub fn linear(field: &FiniteField, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem::ONE])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                f.add(a, b)
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Elem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| self.field.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Invariant(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(a)` for a square matrix `a` over the same field.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let n = a.require_square()?;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add_scalar(c);
        }
        Ok(acc)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, e.g. an embedding into an extension.
    pub fn map_coeffs(&self, target: &FiniteField, f: impl Fn(Elem) -> Elem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| f(c)).collect())
    }
}

/// Monic gcd; `gcd(f, 0)` is `f` made monic.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Formal derivative.
pub fn derivative(f: &Poly) -> Poly {
    let field = f.field();
    let c = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.from_int((i as u64 % field.characteristic()) as i64), c))
        .collect();
    Poly::new(field, c)
}

/// Squarefree means `gcd(f, f') = 1`.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    Ok(poly_gcd(f, &derivative(f))?.is_one())
}

/// Ben-Or: `f` of degree `k` is irreducible iff `gcd(t^(q^j) - t, f) = 1`
/// for `1 <= j <= k/2`.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(k) = f.degree() else { return false };
    if k == 0 {
        return false;
    }
    let field = f.field();
    let q = field.size() as u128;
    let t = Poly::t(field);
    let mut h = t.clone();
    for _ in 0..k / 2 {
        h = h.pow_mod(q, f).expect("nonzero modulus");
        let g = poly_gcd(&h.sub(&t), f).expect("nonzero modulus");
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// Degrees of the distinct irreducible factors of `f` over its coefficient
/// field.
pub fn irreducible_factor_degrees(f: &Poly) -> Result<BTreeSet<usize>> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let field = f.field();
    let q = field.size() as u128;
    let t = Poly::t(field);
    let mut rest = f.monic();
    let mut out = BTreeSet::new();
    let mut h = t.clone();
    for d in 1..=deg {
        if rest.degree() == Some(0) {
            break;
        }
        h = h.pow_mod(q, f)?;
        // h = t^(q^d) mod f; the gcd collects every factor of degree dividing d.
        let g = poly_gcd(&h.rem(&rest)?.sub(&t), &rest)?;
        if !g.is_one() {
            out.insert(d);
            loop {
                let common = poly_gcd(&rest, &g)?;
                if common.is_one() {
                    break;
                }
                rest = rest.exact_div(&common)?;
            }
        }
    }
    Ok(out)
}

/// All roots of `f` in `field`, with multiplicity, in ascending packed
/// order. `f` must already have coefficients in `field`.
pub fn roots_in_field(f: &Poly, field: &FiniteField) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.field() != field {
        return Err(Error::FieldMismatch);
    }
    let distinct = if field.size() <= EXHAUSTIVE_ROOT_LIMIT {
        field.elements().filter(|&a| f.eval(a).is_zero()).collect()
    } else {
        split_roots(f)?
    };
    let mut out = Vec::new();
    for a in distinct {
        let lin = Poly::linear(field, a);
        let mut g = f.clone();
        while let Ok(q) = g.exact_div(&lin) {
            out.push(a);
            g = q;
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct roots by equal-degree splitting of `gcd(f, t^Q - t)`.
fn split_roots(f: &Poly) -> Result<Vec<Elem>> {
    let field = f.field();
    let q = field.size() as u128;
    let t = Poly::t(field);
    let g = poly_gcd(f, &t.pow_mod(q, f)?.sub(&t))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut stack = vec![g];
    let mut roots = Vec::new();
    while let Some(g) = stack.pop() {
        match g.degree() {
            Some(0) | None => continue,
            Some(1) => {
                roots.push(field.neg(g.monic().coeffs()[0]));
                continue;
            }
            _ => {}
        }
        loop {
            let a = Elem(rng.gen_range(0..field.size()));
            let h = if field.characteristic() == 2 {
                // Absolute trace of c*t: sum of its 2^i powers.
                let c = if a.is_zero() { Elem::ONE } else { a };
                let scaled = Poly::new(field, vec![Elem::ZERO, c]).rem(&g)?;
                let mut acc = scaled.clone();
                let mut cur = scaled;
                for _ in 1..field.degree() {
                    cur = cur.mul(&cur).rem(&g)?;
                    acc = acc.add(&cur);
                }
                acc
            } else {
                let probe = Poly::new(field, vec![a, Elem::ONE]);
                probe.pow_mod((q - 1) / 2, &g)?.sub(&Poly::one(field))
            };
            let d = poly_gcd(&h, &g)?;
            if d.degree().is_some_and(|x| x > 0) && d.degree() < g.degree() {
                let other = g.exact_div(&d)?;
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn p3(c: &[i64]) -> Poly {
        let f = make_field(3, 1).unwrap();
        Poly::new(&f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn gcd_examples() {
        assert!(poly_gcd(&p3(&[1, 0, 1]), &p3(&[0, 2])).unwrap().is_one());
        assert_eq!(poly_gcd(&p3(&[0, 0, 1]), &p3(&[0, 2])).unwrap(), p3(&[0, 1]));
        let f = p3(&[2, 0, 2]);
        assert_eq!(poly_gcd(&f, &Poly::zero(f.field())).unwrap(), p3(&[1, 0, 1]));
        assert_eq!(poly_gcd(&Poly::zero(f.field()), &Poly::zero(f.field())), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&p3(&[1, 0, 1])), p3(&[0, 2]));
        assert!(derivative(&p3(&[0, 0, 0, 1])).is_zero());
        assert!(derivative(&p3(&[2])).is_zero());
    }

    #[test]
    fn roots_examples() {
        let k = make_field(3, 2).unwrap();
        let f = Poly::new(&k, vec![Elem(1), Elem(0), Elem(1)]);
        let i = k.generator();
        let mut expect = vec![i, k.neg(i)];
        expect.sort();
        assert_eq!(roots_in_field(&f, &k).unwrap(), expect);
        assert!(roots_in_field(&p3(&[1, 0, 1]), &make_field(3, 1).unwrap()).unwrap().is_empty());
        // t^3 - a = (t - a^(1/3))^3.
        let a = k.from_coeffs(&[2, 1]).unwrap();
        let g = Poly::new(&k, vec![k.neg(a), Elem(0), Elem(0), Elem(1)]);
        assert_eq!(roots_in_field(&g, &k).unwrap(), vec![k.pth_root(a); 3]);
    }

    #[test]
    fn splitting_agrees_with_scan() {
        // Build a product of linear factors in GF(3^11), too large to scan.
        let k = make_field(3, 11).unwrap();
        let rs = [Elem(5), Elem(77777), Elem(77777), Elem(123456), Elem(0)];
        let mut f = Poly::one(&k);
        for &r in &rs {
            f = f.mul(&Poly::linear(&k, r));
        }
        // And an irreducible quadratic factor with no roots.
        let nonsquare = k.elements().skip(1).find(|&a| k.pow(a, (k.size() as u128 - 1) / 2) != Elem::ONE).unwrap();
        f = f.mul(&Poly::new(&k, vec![k.neg(nonsquare), Elem(0), Elem(1)]));
        let mut expect = rs.to_vec();
        expect.sort();
        assert_eq!(roots_in_field(&f, &k).unwrap(), expect);

        let k2 = make_field(2, 17).unwrap();
        let mut f = Poly::one(&k2);
        for r in [Elem(3), Elem(9999), Elem(1)] {
            f = f.mul(&Poly::linear(&k2, r));
        }
        assert_eq!(roots_in_field(&f, &k2).unwrap(), vec![Elem(1), Elem(3), Elem(9999)]);
    }

    #[test]
    fn factor_degrees() {
        // (t^2+1)(t-1)^2 over GF(3).
        let f = p3(&[1, 0, 1]).mul(&p3(&[-1, 1])).mul(&p3(&[-1, 1]));
        assert_eq!(irreducible_factor_degrees(&f).unwrap(), [1, 2].into_iter().collect());
        // t^3 - t - 1 is irreducible over GF(3).
        assert_eq!(irreducible_factor_degrees(&p3(&[-1, -1, 0, 1])).unwrap(), [3].into_iter().collect());
        assert!(is_irreducible(&p3(&[-1, -1, 0, 1])));
        assert!(!is_irreducible(&p3(&[0, 0, 1])));
    }
}

//! Finite fields `GF(p^k)` with deterministic moduli, Frobenius maps and
//! subfield towers.
//!
//! Elements are stored packed: the residue polynomial `c_0 + c_1 t + ... +
//! c_{k-1} t^{k-1}` is the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! Fields up to `2^16` elements multiply through log/exp tables, larger ones
//! fall back to schoolbook polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};

const MAX_SIZE: u64 = 1 << 62;
const TABLE_LIMIT: u64 = 1 << 16;

/// A packed field element. Only meaningful together with its [`FiniteField`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    // exp has length 2(q-1) so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: usize,
    size: u64,
    modulus: Vec<u64>,
    radix: Vec<u64>,
    tables: Option<Tables>,
}

/// `GF(p^k)` realised as `GF(p)[t] / (f)` for the canonical modulus `f`.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) = GF({})[t]/({})", self.0.p, self.0.k, self.0.p, self.modulus_string())
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns `GF(p^k)` with the lexicographically first monic irreducible
/// modulus of degree `k` (coefficients compared from the top degree down).
pub fn make_field(p: u64, k: usize) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge { p, k });
    }
    let mut size = 1u64;
    for _ in 0..k {
        size = size
            .checked_mul(p)
            .filter(|s| *s <= MAX_SIZE)
            .ok_or(Error::FieldTooLarge { p, k })?;
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        canonical_modulus(p, k, size)?
    };
    let field = FiniteField::build(p, k, size, modulus);
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, k)).or_insert(field).clone())
}

fn canonical_modulus(p: u64, k: usize, size: u64) -> Result<Vec<u64>> {
    let prime = make_field(p, 1)?;
    for n in 0..size {
        let mut digits = Vec::with_capacity(k + 1);
        let mut rest = n;
        for _ in 0..k {
            digits.push(rest % p);
            rest /= p;
        }
        // t divides anything with zero constant term.
        if digits[0] == 0 {
            continue;
        }
        digits.push(1);
        let f = Poly::new(&prime, digits.iter().map(|&d| Elem(d)).collect());
        if poly::is_irreducible(&f) {
            return Ok(digits);
        }
    }
    unreachable!("every degree has an irreducible polynomial")
}

impl FiniteField {
    fn build(p: u64, k: usize, size: u64, modulus: Vec<u64>) -> FiniteField {
        let mut radix = Vec::with_capacity(k);
        let mut r = 1u64;
        for _ in 0..k {
            radix.push(r);
            r = r.wrapping_mul(p);
        }
        let mut inner = Inner { p, k, size, modulus, radix, tables: None };
        if size <= TABLE_LIMIT && size > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField(Arc::new(inner))
    }

    /// The prime subfield of `self`.
    pub fn prime_field(&self) -> FiniteField {
        make_field(self.0.p, 1).expect("characteristic is prime")
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Coefficients of the monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given residue coefficients, lowest degree first.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.k {
            return Err(Error::NotInField);
        }
        let mut v = 0u64;
        for (c, r) in coeffs.iter().zip(&self.0.radix) {
            v += (c % self.0.p) * r;
        }
        Ok(Elem(v))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.k);
        let mut rest = a.0;
        for _ in 0..self.0.k {
            out.push(rest % self.0.p);
            rest /= self.0.p;
        }
        out
    }

    /// The class of `t`.
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            Elem(self.0.p)
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.size
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.size).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u64);
        for &r in &self.0.radix {
            let d = x % p + y % p;
            out += if d >= p { d - p } else { d } * r;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out) = (a.0, 0u64);
        for &r in &self.0.radix {
            let d = x % p;
            out += if d == 0 { 0 } else { p - d } * r;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.k == 1 {
            return Elem(a.0 * b.0 % self.0.p);
        }
        match &self.0.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => mul_slow(&self.0, a, b),
        }
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a.0 != 0, "inverse of zero in {self:?}");
        let q1 = self.0.size - 1;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((q1 - l) % q1) as usize] as u64)
            }
            None => self.pow(a, (q1 - 1) as u128),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let q1 = (self.0.size - 1) as u128;
        let e = e % q1;
        if e == 0 {
            return Elem::ONE;
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a.0 as usize] as u128;
            return Elem(t.exp[(l * e % q1) as usize] as u64);
        }
        let mut base = a;
        let mut acc = Elem::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^e)`; `e` is taken modulo the degree, so negative exponents
    /// give the inverse automorphisms.
    pub fn frobenius(&self, a: Elem, e: i64) -> Elem {
        let e = e.rem_euclid(self.0.k as i64) as u32;
        if e == 0 || a.0 == 0 {
            return a;
        }
        self.pow(a, (self.0.p as u128).pow(e))
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.frobenius(a, self.0.k as i64 - 1)
    }

    /// `log_p q`, provided `q` is the size of a subfield.
    pub fn subfield_exponent(&self, q: u64) -> Result<usize> {
        let err = Error::NotASubfield { q, p: self.0.p, k: self.0.k };
        let mut m = 0usize;
        let mut s = 1u64;
        while s < q {
            s = s.checked_mul(self.0.p).ok_or_else(|| err.clone())?;
            m += 1;
        }
        if s != q || m == 0 || !self.0.k.is_multiple_of(m) {
            return Err(err);
        }
        Ok(m)
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let c: Vec<String> = self.coeffs(a).iter().map(u64::to_string).collect();
        format!("[{}]", c.join(","))
    }
}

fn mul_slow(f: &Inner, a: Elem, b: Elem) -> Elem {
    let (p, k) = (f.p, f.k);
    let unpack = |mut x: u64| {
        let mut d = vec![0u64; k];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (unpack(a.0), unpack(b.0));
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for j in 0..k {
            let sub = c * f.modulus[j] % p;
            prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
        }
        prod[i] = 0;
    }
    let mut out = 0u64;
    for (d, r) in prod.iter().zip(&f.radix) {
        out += d * r;
    }
    Elem(out)
}

fn pow_slow(f: &Inner, a: Elem, mut e: u64) -> Elem {
    let mut base = a;
    let mut acc = Elem::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(f, acc, base);
        }
        base = mul_slow(f, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.size;
    let q1 = q - 1;
    let factors = prime_factors(q1);
    let g = (2..q)
        .map(Elem)
        .find(|&g| factors.iter().all(|&r| pow_slow(f, g, q1 / r) != Elem::ONE))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * q1 as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = Elem::ONE;
    for (i, slot) in exp.iter_mut().take(q1 as usize).enumerate() {
        *slot = cur.0 as u32;
        log[cur.0 as usize] = i as u32;
        cur = mul_slow(f, cur, g);
    }
    let (lo, hi) = exp.split_at_mut(q1 as usize);
    hi.copy_from_slice(lo);
    Tables { exp, log }
}

/// Closure of `v` under componentwise `a -> a^q`, listed starting at `v`.
pub fn galois_orbit(field: &FiniteField, v: &[Elem], q: u64) -> Result<Vec<Vec<Elem>>> {
    let m = field.subfield_exponent(q)? as i64;
    let mut orbit = vec![v.to_vec()];
    loop {
        let next: Vec<Elem> = orbit.last().unwrap().iter().map(|&a| field.frobenius(a, m)).collect();
        if next == orbit[0] {
            return Ok(orbit);
        }
        orbit.push(next);
    }
}

/// `[GF(q)(v) : GF(q)]`: the least `d >= 1` with `a^(q^d) = a` for every entry.
pub fn field_degree_of(field: &FiniteField, v: &[Elem], q: u64) -> Result<usize> {
    Ok(galois_orbit(field, v, q)?.len())
}

struct TowerInner {
    base: FiniteField,
    ext: FiniteField,
    degree: usize,
    embed: Vec<Elem>,
    pullback: HashMap<Elem, Elem>,
}

/// A base field `F = GF(p^m)` together with a fixed extension
/// `K = GF(p^(m D))` and a fixed embedding `F -> K`.
#[derive(Clone)]
pub struct Tower(Arc<TowerInner>);

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.0.base == other.0.base && self.0.degree == other.0.degree
    }
}

impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} < {:?})", self.0.base, self.0.ext)
    }
}

impl Tower {
    pub fn new(base: &FiniteField, degree: usize) -> Result<Tower> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if base.size() > TABLE_LIMIT {
            return Err(Error::FieldTooLarge { p: base.characteristic(), k: base.degree() });
        }
        let ext = make_field(base.characteristic(), base.degree() * degree)?;
        let embed: Vec<Elem> = if base.degree() == 1 {
            base.elements().collect()
        } else {
            // Send the class of t to the least root of the base modulus in K.
            let f = Poly::new(&ext, base.modulus().iter().map(|&c| Elem(c)).collect());
            let theta = *poly::roots_in_field(&f, &ext)?
                .iter()
                .min()
                .ok_or_else(|| Error::Invariant("base modulus has no root in extension".into()))?;
            base.elements()
                .map(|a| {
                    let mut acc = Elem::ZERO;
                    for &c in base.coeffs(a).iter().rev() {
                        acc = ext.add(ext.mul(acc, theta), Elem(c));
                    }
                    acc
                })
                .collect()
        };
        let pullback = embed.iter().enumerate().map(|(i, &e)| (e, Elem(i as u64))).collect();
        Ok(Tower(Arc::new(TowerInner { base: base.clone(), ext, degree, embed, pullback })))
    }

    /// The trivial tower `F = K`.
    pub fn trivial(base: &FiniteField) -> Result<Tower> {
        Tower::new(base, 1)
    }

    pub fn base(&self) -> &FiniteField {
        &self.0.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.0.ext
    }

    /// `[K : F]`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// `|F|`.
    pub fn q(&self) -> u64 {
        self.0.base.size()
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.0.embed[a.0 as usize]
    }

    pub fn pullback(&self, a: Elem) -> Option<Elem> {
        self.0.pullback.get(&a).copied()
    }

    /// `a^(q^e)` in `K`, a generator of `Gal(K/F)` for `e = 1`.
    pub fn frobenius_q(&self, a: Elem, e: i64) -> Elem {
        self.0.ext.frobenius(a, e * self.0.base.degree() as i64)
    }

    /// Whether this tower's extension contains `other`'s extension compatibly
    /// (same base and a degree multiple).
    pub fn refines(&self, degree: usize) -> bool {
        self.0.degree.is_multiple_of(degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus_string(), "t^3 + t + 1");
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(make_field(2, 70), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn frobenius_examples() {
        let k = make_field(3, 2).unwrap();
        let i = k.generator();
        assert_eq!(k.mul(i, i), k.from_int(-1));
        assert_eq!(k.frobenius(i, 1), k.neg(i));
        assert_eq!(k.frobenius(i, 2), i);
        let f = make_field(3, 1).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 1), a);
        }
    }

    #[test]
    fn pth_root_examples() {
        let k = make_field(3, 2).unwrap();
        let i = k.generator();
        assert_eq!(k.pth_root(k.neg(i)), i);
        assert_eq!(k.pth_root(Elem::ONE), Elem::ONE);
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.pth_root(Elem(2)), Elem(2));
    }

    #[test]
    fn orbit_examples() {
        let k = make_field(3, 2).unwrap();
        let i = k.generator();
        let lam = k.from_coeffs(&[1, 2]).unwrap();
        let orbit = galois_orbit(&k, &[i, lam], 3).unwrap();
        assert_eq!(orbit, vec![vec![i, lam], vec![k.neg(i), k.from_coeffs(&[1, 1]).unwrap()]]);
        assert_eq!(galois_orbit(&k, &[Elem(1), Elem(2)], 3).unwrap().len(), 1);
        assert_eq!(field_degree_of(&k, &[i], 3).unwrap(), 2);
        assert_eq!(field_degree_of(&k, &[i], 9).unwrap(), 1);
        assert!(galois_orbit(&k, &[i], 27).is_err());
        assert!(galois_orbit(&k, &[i], 4).is_err());

        // i in GF(81): i^9 = i, so the orbit over GF(3) has two members.
        let k4 = make_field(3, 4).unwrap();
        let t = k4
            .elements()
            .find(|&a| k4.mul(a, a) == k4.from_int(-1))
            .unwrap();
        assert_eq!(k4.pow(t, 9), t);
        let orbit = galois_orbit(&k4, &[t], 3).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(orbit[1], vec![k4.neg(t)]);
    }

    #[test]
    fn slow_and_table_arithmetic_agree() {
        // GF(2^17) has no tables; check the field axioms on a sample.
        let big = make_field(2, 17).unwrap();
        assert!(big.0.tables.is_none());
        let a = Elem(12345);
        let b = Elem(99999);
        let c = Elem(7);
        assert_eq!(big.mul(a, big.add(b, c)), big.add(big.mul(a, b), big.mul(a, c)));
        assert_eq!(big.mul(a, big.inv(a)), Elem::ONE);
        assert_eq!(big.pth_root(big.frobenius(a, 1)), a);
    }

    #[test]
    fn tower_embedding_is_a_homomorphism() {
        let base = make_field(2, 2).unwrap();
        let tower = Tower::new(&base, 3).unwrap();
        let ext = tower.ext();
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(tower.embed(base.add(a, b)), ext.add(tower.embed(a), tower.embed(b)));
                assert_eq!(tower.embed(base.mul(a, b)), ext.mul(tower.embed(a), tower.embed(b)));
            }
            assert_eq!(tower.pullback(tower.embed(a)), Some(a));
            assert_eq!(tower.frobenius_q(tower.embed(a), 1), tower.embed(a));
        }
    }
}

//! Exact arithmetic in GF(p^e) with a deterministic, enumerable element order.
//!
//! Elements are indexed by 0..q: index i corresponds to the coefficient
//! vector given by the base-p digits of i, constant coefficient first.
//! Index 0 is the additive identity and index 1 the multiplicative identity.
//! Multiplication, inversion and powers go through discrete log/antilog
//! tables built once per field.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the field order; enumeration-based oracles make no sense
/// beyond desk scale.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

/// JSON shape of a field: `{"p": 3, "e": 2, "modulus": [2, 2, 1]}` with the
/// modulus coefficients listed constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
}

struct FieldInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus of degree e, constant term first (length e+1).
    modulus: Vec<u64>,
    /// exp[i] = index of g^i for a fixed generator g, doubled so that
    /// exp[a + b] works without reduction for a, b < q-1.
    exp: Vec<u64>,
    /// log[idx] for idx in 1..q.
    log: Vec<u64>,
}

/// A finite field GF(p^e). Cheap to clone; all state is immutable and shared.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Polynomials over GF(p), dense, constant term first. Used only while
/// constructing a field (modulus search, log table bootstrap).
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*m.last().unwrap(), 1);
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = shift + j;
                    let sub = (lead * mj) % p;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

fn index_to_coeffs(mut idx: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = vec![0u64; e as usize];
    for c in out.iter_mut() {
        *c = idx % p;
        idx /= p;
    }
    out
}

fn coeffs_to_index(coeffs: &[u64], p: u64) -> u64 {
    let mut idx = 0u64;
    for &c in coeffs.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

/// Trial division by every monic polynomial of degree 1..=deg(f)/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // Monic divisors of degree d: enumerate the p^d low coefficient vectors.
        let count = p.pow(d as u32);
        for lo in 0..count {
            let mut g = index_to_coeffs(lo, p, d as u32);
            g.push(1);
            if poly::is_zero(&poly::rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree e
/// over GF(p), comparing coefficient vectors from the constant term upward.
fn canonical_modulus(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        // x: prime fields skip polynomial reduction entirely.
        return vec![0, 1];
    }
    let e = e as usize;
    let mut coeffs = vec![0u64; e];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        // Advance in lex order: the constant term is the most significant
        // position, so increment from the high end of the vector.
        let mut pos = e;
        loop {
            debug_assert!(pos > 0, "no irreducible polynomial found");
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

impl FiniteField {
    /// Builds GF(p^e) with the canonical modulus and the default order cap.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_order_cap(p, e, DEFAULT_ORDER_CAP)
    }

    /// Builds GF(p^e) with an explicit order cap.
    pub fn with_order_cap(p: u64, e: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::DegreeZero);
        }
        let order = BigUint::from(p).pow(e);
        if order > BigUint::from(cap) {
            return Err(Error::OrderTooLarge { order, cap });
        }
        let modulus = canonical_modulus(p, e);
        Self::build(p, e, modulus)
    }

    /// Builds the field described by `desc`, validating that the modulus is
    /// monic, has degree e and is irreducible. Any valid modulus is accepted,
    /// not only the canonical one.
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        if !is_prime(desc.p) {
            return Err(Error::NonPrime(desc.p));
        }
        if desc.e == 0 {
            return Err(Error::DegreeZero);
        }
        let order = BigUint::from(desc.p).pow(desc.e);
        if order > BigUint::from(DEFAULT_ORDER_CAP) {
            return Err(Error::OrderTooLarge {
                order,
                cap: DEFAULT_ORDER_CAP,
            });
        }
        if desc.modulus.len() != desc.e as usize + 1
            || desc.modulus.last() != Some(&1)
            || desc.modulus.iter().any(|&c| c >= desc.p)
        {
            return Err(Error::InvalidInput(format!(
                "modulus must be monic of degree {} with coefficients below {}",
                desc.e, desc.p
            )));
        }
        if desc.e > 1 && !is_irreducible(&desc.modulus, desc.p) {
            return Err(Error::InvalidInput("modulus is reducible".into()));
        }
        Self::build(desc.p, desc.e, desc.modulus.clone())
    }

    fn build(p: u64, e: u32, modulus: Vec<u64>) -> Result<Self> {
        let q = p.pow(e);
        let raw_mul = |a: u64, b: u64| -> u64 {
            if e == 1 {
                (a * b) % p
            } else {
                let prod = poly::mul(
                    &index_to_coeffs(a, p, e),
                    &index_to_coeffs(b, p, e),
                    p,
                );
                coeffs_to_index(&poly::rem(&prod, &modulus, p), p)
            }
        };
        let raw_pow = |mut base: u64, mut n: u64| -> u64 {
            let mut acc = 1u64;
            while n > 0 {
                if n & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                n >>= 1;
            }
            acc
        };

        // Find a multiplicative generator: order q-1 exactly.
        let factors = prime_factors(q - 1);
        let mut generator = 0;
        for cand in 2..q.max(3) {
            if q == 2 {
                generator = 1;
                break;
            }
            if factors.iter().all(|&f| raw_pow(cand, (q - 1) / f) != 1) {
                generator = cand;
                break;
            }
        }
        debug_assert!(q == 2 || generator >= 2, "no generator found");

        let mut exp = vec![0u64; 2 * (q - 1) as usize];
        let mut log = vec![0u64; q as usize];
        let mut cur = 1u64;
        for i in 0..(q - 1) as usize {
            exp[i] = cur;
            exp[i + (q - 1) as usize] = cur;
            log[cur as usize] = i as u64;
            cur = raw_mul(cur, generator);
        }
        debug_assert_eq!(cur, 1, "generator order is not q-1");

        Ok(FiniteField {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus,
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// The field order q = p^e.
    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first (length e+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.inner.p,
            e: self.inner.e,
            modulus: self.inner.modulus.clone(),
        }
    }

    /// The element with the given enumeration index.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.inner.q {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.inner.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            index,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 1,
        }
    }

    /// All q elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| FieldElement {
            field: self.clone(),
            index: i,
        })
    }

    // Index-level arithmetic: the fast path used by matrices and enumerators.

    #[inline]
    pub fn add_idx(&self, a: u64, b: u64) -> u64 {
        let f = &*self.inner;
        if f.p == 2 {
            a ^ b
        } else if f.e == 1 {
            (a + b) % f.p
        } else {
            let mut out = 0u64;
            let mut pw = 1u64;
            let (mut x, mut y) = (a, b);
            for _ in 0..f.e {
                out += ((x % f.p + y % f.p) % f.p) * pw;
                x /= f.p;
                y /= f.p;
                pw *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: u64) -> u64 {
        let f = &*self.inner;
        if f.p == 2 {
            a
        } else if f.e == 1 {
            (f.p - a) % f.p
        } else {
            let mut out = 0u64;
            let mut pw = 1u64;
            let mut x = a;
            for _ in 0..f.e {
                out += ((f.p - x % f.p) % f.p) * pw;
                x /= f.p;
                pw *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub_idx(&self, a: u64, b: u64) -> u64 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_idx(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.inner;
        let n = f.q - 1;
        Ok(f.exp[((n - f.log[a as usize]) % n) as usize])
    }

    #[inline]
    pub fn div_idx(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul_idx(a, self.inv_idx(b)?))
    }

    /// a^n with a^0 = 1 (also for a = 0).
    pub fn pow_idx(&self, a: u64, n: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        let m = f.q - 1;
        let e = (f.log[a as usize] as u128 * (n % m) as u128 % m as u128) as u64;
        f.exp[e as usize]
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if *self == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        self.element(self.add_idx(a.index, b.index))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        self.element(self.sub_idx(a.index, b.index))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        self.element(self.mul_idx(a.index, b.index))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_same(a)?;
        self.check_same(b)?;
        self.element(self.div_idx(a.index, b.index)?)
    }
}

/// Builds the field of the given order, factoring it as p^e.
pub fn field_from_order(q: u64) -> Result<FiniteField> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let p = factors[0];
    let mut e = 0u32;
    let mut n = q;
    while n > 1 {
        n /= p;
        e += 1;
    }
    FiniteField::new(p, e)
}

/// An element of a finite field, identified by its enumeration index.
#[derive(Clone)]
pub struct FieldElement {
    field: FiniteField,
    index: u64,
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// The enumeration index; this is also the JSON representation.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coefficient vector over GF(p), constant coefficient first, length e.
    pub fn coeffs(&self) -> Vec<u64> {
        index_to_coeffs(self.index, self.field.p(), self.field.e())
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            index: self.field.pow_idx(self.index, n),
        }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            field: self.field.clone(),
            index: self.field.inv_idx(self.index)?,
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.index == other.index
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index, self.field.order())
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.field.$checked(self, rhs).expect("field element op")
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);
element_binop!(Mul, mul, mul);
element_binop!(Div, div, div);

//! Exact arithmetic in cyclotomic fields Q(ζ_L).
//!
//! A [`CycloScalar`] is a polynomial in ζ_L with rational coefficients,
//! reduced modulo the L-th cyclotomic polynomial Φ_L. Reduction modulo Φ_L
//! (rather than x^L − 1) makes coefficient comparison decide field equality,
//! so `1 + ζ_3 + ζ_3²` compares equal to zero.

mod rational;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use smallvec::SmallVec;
use thiserror::Error;

pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("mixed root orders: {left} and {right}")]
    MixedRootOrder { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("root order must be positive")]
    InvalidRootOrder,
    #[error("root order {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },
}

/// Coefficients of Φ_L, lowest degree first.
///
/// Computed by dividing x^L − 1 by Φ_d for every proper divisor d of L.
pub fn cyclotomic_polynomial(order: u32) -> Vec<i64> {
    assert!(order >= 1, "cyclotomic_polynomial requires L >= 1");
    let mut cache: HashMap<u32, Vec<i128>> = HashMap::new();
    cyclotomic_i128(order, &mut cache)
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn cyclotomic_i128(order: u32, cache: &mut HashMap<u32, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = cache.get(&order) {
        return p.clone();
    }
    // x^L - 1
    let mut num = vec![0i128; order as usize + 1];
    num[0] = -1;
    num[order as usize] = 1;
    for d in 1..order {
        if order % d == 0 {
            let div = cyclotomic_i128(d, cache);
            num = exact_div_monic(&num, &div);
        }
    }
    cache.insert(order, num.clone());
    num
}

/// Exact quotient of integer polynomials by a monic divisor.
fn exact_div_monic(num: &[i128], div: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, dj) in div.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Precomputed data for Q(ζ_L): Φ_L and the reduced form of every power ζ^k.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    /// Shared field descriptor for root order `order`.
    pub fn get(order: u32) -> &'static CycloField {
        static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = fields.lock().expect("field registry poisoned");
        guard
            .entry(order)
            .or_insert_with(|| Box::leak(Box::new(CycloField::build(order))))
    }

    fn build(order: u32) -> CycloField {
        assert!(order >= 1);
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for j in (1..degree).rev() {
                next[j] = cur[j - 1];
            }
            for (j, slot) in next.iter_mut().enumerate() {
                *slot -= top * modulus[j];
            }
            cur = next;
        }
        CycloField {
            order,
            degree,
            modulus,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

type Coeffs = SmallVec<[Rational; 4]>;

/// An element of Q(ζ_L) in reduced form.
#[derive(Clone)]
pub struct CycloScalar {
    field: &'static CycloField,
    coeffs: Coeffs,
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloScalar {
    pub fn zero(order: u32) -> Self {
        let field = CycloField::get(order);
        CycloScalar {
            field,
            coeffs: SmallVec::from_elem(Rational::zero(), field.degree),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_int(n))
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = r;
        s
    }

    /// ζ_L^k, with k reduced modulo L.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let field = CycloField::get(order);
        let idx = k.rem_euclid(order as i64) as usize;
        CycloScalar {
            field,
            coeffs: field.powers[idx].iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    /// Builds Σ r_k ζ^{k} from arbitrary (coefficient, exponent) terms.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, i64)>,
    {
        let field = CycloField::get(order);
        let mut coeffs: Coeffs = SmallVec::from_elem(Rational::zero(), field.degree);
        for (r, k) in terms {
            if r.is_zero() {
                continue;
            }
            let idx = k.rem_euclid(order as i64) as usize;
            for (slot, &p) in coeffs.iter_mut().zip(&field.powers[idx]) {
                if p != 0 {
                    *slot += &r.mul_int(p);
                }
            }
        }
        CycloScalar { field, coeffs }
    }

    pub fn root_order(&self) -> u32 {
        self.field.order
    }

    /// Reduced coefficients of 1, ζ, …, ζ^{φ(L)−1}.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero reduced terms as (numerator, denominator, power of ζ).
    pub fn terms(&self) -> Vec<(BigInt, BigInt, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.numer(), c.denom(), k as u32))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Returns the rational value when the scalar lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Exponent k with self = ζ_L^k, if the scalar is an L-th root of unity.
    pub fn root_exponent(&self) -> Option<u32> {
        let field = self.field;
        (0..field.order).find(|&k| {
            field.powers[k as usize]
                .iter()
                .zip(&self.coeffs)
                .all(|(&p, c)| *c == Rational::from_int(p))
        })
    }

    fn check_same(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field.order != other.field.order {
            return Err(ScalarError::MixedRootOrder {
                left: self.field.order,
                right: other.field.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloScalar {
            field: self.field,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloScalar {
            field: self.field,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycloScalar {
                field: self.field,
                coeffs: smallvec::smallvec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        // rational multiples short-circuit the convolution
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        let mut prod: SmallVec<[Rational; 8]> = SmallVec::from_elem(Rational::zero(), 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += &(a * b);
            }
        }
        let m = &self.field.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if m[j] != 0 {
                    prod[k - d + j] -= &c.mul_int(m[j]);
                }
            }
        }
        prod.truncate(d);
        Ok(CycloScalar {
            field: self.field,
            coeffs: prod.into_iter().collect(),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloScalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against Φ_L.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            let inv = r.inv().ok_or(ScalarError::DivisionByZero)?;
            return Ok(Self::from_rational(self.field.order, inv));
        }
        let modulus: Vec<Rational> = self.field.modulus.iter().map(|&c| Rational::from_int(c)).collect();
        let a: Vec<Rational> = self.coeffs.to_vec();
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (modulus, poly::trim(a));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly::divrem(&r0, &r1);
            let s2 = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_L is irreducible
        let c = r1[0].inv().ok_or(ScalarError::DivisionByZero)?;
        let terms = s1.into_iter().enumerate().map(|(k, s)| (&s * &c, k as i64));
        Ok(Self::from_terms(self.field.order, terms))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&other.inv()?)
    }

    /// Re-expresses the scalar in Q(ζ_M) for a multiple M of L, via ζ_L = ζ_M^{M/L}.
    pub fn lift(&self, order: u32) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::InvalidRootOrder);
        }
        if order % self.field.order != 0 {
            return Err(ScalarError::NotAMultiple {
                from: self.field.order,
                to: order,
            });
        }
        if order == self.field.order {
            return Ok(self.clone());
        }
        let m = (order / self.field.order) as i64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k as i64 * m));
        Ok(Self::from_terms(order, terms))
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Self::one(self.field.order);
        for _ in 0..e.unsigned_abs() {
            result = &result * &base;
        }
        Ok(result)
    }
}

mod poly {
    //! Dense polynomials over Q, lowest degree first; used only by `inv`.
    use super::Rational;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Rational::is_zero) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                &x - &y
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = b.last().expect("division by zero polynomial").inv().unwrap();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lead_inv;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &(&c * bj);
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            /// Panics when the operands live in different fields; use the
            /// `checked_*` methods to handle that case.
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                self.$checked(rhs).expect("scalar operands must share a root order")
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$m(rhs)
            }
        }
    };
}
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(self.field.order, rhs.field.order, "scalar operands must share a root order");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(self.field.order, rhs.field.order, "scalar operands must share a root order");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("z{}", self.field.order),
                _ => format!("z{}^{}", self.field.order, k),
            };
            match (mag.is_one(), k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, _) => write!(f, "{zeta}")?,
                (false, _) => write!(f, "{mag}*{zeta}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [L={}]", self.field.order)
    }
}

/// Least common multiple of a list of positive integers (1 for an empty list).
pub fn lcm_all<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    values.into_iter().fold(1u32, |acc, v| acc.lcm(&v.max(1)))
}

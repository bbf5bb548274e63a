//! Finite fields of odd characteristic.
//!
//! Elements of `F_q`, `q = p^n`, are stored as integers in `[0, q)`. For a
//! prime field the integer is the residue itself. For an extension the
//! integer is the base-`p` digit expansion of the representative polynomial
//! modulo the defining polynomial: digit `i` is the coefficient of `x^i`.
//! This makes the representation canonical (fully reduced, unique zero and
//! one) and lets elements be compared and hashed as plain integers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest extension-field order backed by lookup tables.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// Extension fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u32 = 729;

/// An element of `F_q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
#[repr(transparent)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Canonical integer encoding in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic defining polynomial over `F_p`, low degree first; empty when `n == 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// Description of `F_q` together with the arithmetic on its elements.
///
/// Cloning is cheap (reference counted); a `Field` is immutable.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.n, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over F_p, used only while building extension tables.
fn fp_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // subtract c * x^(k-n) * modulus (monic)
        for (j, &m) in modulus.iter().enumerate() {
            let idx = k - n + j;
            prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
        }
    }
    prod.truncate(n);
    prod.into_iter().map(|x| x as u32).collect()
}

fn digits_of(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Unsupported(format!("characteristic {p} exceeds 2^31")));
        }
        Ok(Field(Arc::new(Inner { p: p as u32, n: 1, q: p as u32, modulus: Vec::new(), tables: None })))
    }

    /// Builds `F_{p^n}`. With `n > 1` and no modulus, the smallest monic
    /// irreducible of degree `n` is used, ordering candidates by their
    /// coefficient vector read from `x^{n-1}` down to the constant term.
    /// A supplied modulus is given low degree first and must be monic.
    pub fn new(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        let base = Field::prime(p)?;
        if n == 0 {
            return Err(Error::Unsupported("extension degree must be at least 1".into()));
        }
        if n == 1 {
            if let Some(m) = modulus {
                if m.len() != 2 || m[1] != 1 {
                    return Err(Error::ReducibleModulus);
                }
            }
            return Ok(base);
        }
        let q = (p as u128).pow(n);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::Unsupported(format!("extension field of order {q} is too large")));
        }
        let p32 = p as u32;
        let ring = crate::poly::PolyRing::new(base.clone());
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| c % p32).collect();
                if m.len() != n as usize + 1 || m[n as usize] != 1 {
                    return Err(Error::ReducibleModulus);
                }
                let f = crate::poly::Poly::from_indices(&m);
                if !crate::residue::is_irreducible(&ring, &f)? {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => {
                let count = (q as u64) as u32;
                let mut found = None;
                for k in 0..count {
                    // digit n-1 is the most significant, so increasing k
                    // walks candidates lexicographically from x^{n-1} down.
                    let mut m = digits_of(k, p32, n);
                    m.push(1);
                    let f = crate::poly::Poly::from_indices(&m);
                    if crate::residue::is_irreducible(&ring, &f)? {
                        found = Some(m);
                        break;
                    }
                }
                found.expect("an irreducible polynomial of every degree exists")
            }
        };
        let tables = Self::build_tables(p32, n, q as u32, &modulus);
        Ok(Field(Arc::new(Inner { p: p32, n, q: q as u32, modulus, tables: Some(tables) })))
    }

    fn build_tables(p: u32, n: u32, q: u32, modulus: &[u32]) -> Tables {
        let order = (q - 1) as u64;
        let factors = prime_factors_u64(order);
        let pow = |base: &[u32], mut e: u64| -> Vec<u32> {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = fp_mulmod(&acc, &b, modulus, p as u64);
                }
                b = fp_mulmod(&b, &b, modulus, p as u64);
                e >>= 1;
            }
            acc
        };
        let is_one = |v: &[u32]| v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0);
        let mut generator = None;
        for cand in 2..q {
            let g = digits_of(cand, p, n);
            if factors.iter().all(|&l| !is_one(&pow(&g, order / l))) {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group of a finite field is cyclic");
        let len = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * len];
        let mut log = vec![0u32; q as usize];
        let mut cur = digits_of(1, p, n);
        for i in 0..len {
            let idx = index_of(&cur, p);
            exp[i] = idx;
            exp[i + len] = idx;
            log[idx as usize] = i as u32;
            cur = fp_mulmod(&cur, &g, modulus, p as u64);
            cur.resize(n as usize, 0);
        }
        let neg =
            (0..q).map(|x| index_of(&digits_of(x, p, n).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p)).collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for x in 0..q {
                let dx = digits_of(x, p, n);
                for y in 0..q {
                    let dy = digits_of(y, p, n);
                    let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                    t[(x * q + y) as usize] = index_of(&s, p);
                }
            }
            t
        });
        Tables { exp, log, neg, add }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    /// Defining polynomial over `F_p` (low degree first), empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Element from its canonical index; `None` if out of range.
    pub fn elem(&self, index: u32) -> Option<FieldElem> {
        (index < self.0.q).then_some(FieldElem(index))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, x: i64) -> FieldElem {
        FieldElem(x.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element whose representative polynomial over `F_p` has the given
    /// coefficients (low degree first). Coefficients are reduced mod `p`;
    /// the vector must not be longer than `n`.
    pub fn from_base_coeffs(&self, coeffs: &[i64]) -> Option<FieldElem> {
        if coeffs.len() > self.0.n as usize {
            return None;
        }
        let digits: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(self.0.p as i64) as u32).collect();
        Some(FieldElem(index_of(&digits, self.0.p)))
    }

    /// Coefficients of the representative polynomial over `F_p`, trailing zeros removed.
    pub fn base_coeffs(&self, x: FieldElem) -> Vec<u32> {
        let mut d = digits_of(x.0, self.0.p, self.0.n);
        while d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.0;
        match &inner.tables {
            None => {
                let s = a.0 + b.0;
                FieldElem(if s >= inner.p { s - inner.p } else { s })
            }
            Some(t) => match &t.add {
                Some(add) => FieldElem(add[(a.0 * inner.q + b.0) as usize]),
                None => {
                    let (mut x, mut y, p) = (a.0, b.0, inner.p);
                    let (mut out, mut scale) = (0u32, 1u32);
                    for _ in 0..inner.n {
                        out += ((x % p + y % p) % p) * scale;
                        x /= p;
                        y /= p;
                        scale = scale.wrapping_mul(p);
                    }
                    FieldElem(out)
                }
            },
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let inner = &*self.0;
        match &inner.tables {
            None => FieldElem(if a.0 == 0 { 0 } else { inner.p - a.0 }),
            Some(t) => FieldElem(t.neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.0;
        match &inner.tables {
            None => FieldElem(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElem::ZERO
                } else {
                    FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let inner = &*self.0;
        Some(match &inner.tables {
            None => {
                // extended Euclid on (a, p)
                let (mut r0, mut r1) = (inner.p as i64, a.0 as i64);
                let (mut s0, mut s1) = (0i64, 1i64);
                while r1 != 0 {
                    let qt = r0 / r1;
                    (r0, r1) = (r1, r0 - qt * r1);
                    (s0, s1) = (s1, s0 - qt * s1);
                }
                FieldElem(s0.rem_euclid(inner.p as i64) as u32)
            }
            Some(t) => {
                let l = t.log[a.0 as usize];
                FieldElem(t.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with an exponent of arbitrary size (reduced mod `q - 1` for units).
    pub fn pow_big(&self, a: FieldElem, e: &BigUint) -> FieldElem {
        if e.is_zero() {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let r = (e % BigUint::from(self.0.q - 1)).to_u64().unwrap_or(0);
        self.pow(a, r)
    }

    /// A square root, if one exists (Tonelli-Shanks in `F_q^x`).
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return Some(a);
        }
        let order = (self.0.q - 1) as u64;
        if self.pow(a, order / 2) != FieldElem::ONE {
            return None;
        }
        let mut s = 0u32;
        let mut odd = order;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z =
            self.units().find(|&z| self.pow(z, order / 2) != FieldElem::ONE).expect("odd q has a quadratic nonresidue");
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while t != FieldElem::ONE {
            let mut i = 0u32;
            let mut tt = t;
            while tt != FieldElem::ONE {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q).map(FieldElem)
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.0.q).map(FieldElem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(0..self.0.q))
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(1..self.0.q))
    }

    /// `q` as a big integer.
    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.0.q)
    }

    /// `q^d - 1`.
    pub fn unit_group_order(&self, d: usize) -> BigUint {
        num_traits::pow(self.order_big(), d) - BigUint::one()
    }

    /// Text form: the integer for prime fields, `[c0,c1,...]` for extensions.
    pub fn format_elem(&self, x: FieldElem) -> String {
        if self.is_prime_field() {
            x.0.to_string()
        } else {
            let d = self.base_coeffs(x);
            if d.is_empty() {
                "[0]".to_string()
            } else {
                let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.q(), 3);
        let two = f.from_i64(2);
        assert_eq!(f.mul(two, two), f.one());
        assert_eq!(f.inv(two), Some(two));
        assert_eq!(f.neg(f.one()), two);
    }

    #[test]
    fn even_and_composite_characteristic_rejected() {
        assert!(matches!(Field::new(2, 1, None), Err(Error::EvenCharacteristic)));
        assert!(matches!(Field::new(9, 1, None), Err(Error::NotPrime(9))));
    }

    #[test]
    fn f9_with_x2_plus_1() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.q(), 9);
        // x * x = -1
        let x = f.from_base_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(x, x), f.from_i64(-1));
        for a in f.units() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn default_modulus_is_smallest_irreducible() {
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f25 = Field::new(5, 2, None).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        assert!(matches!(Field::new(5, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus)));
    }

    #[test]
    fn extension_addition_matches_digits_without_table() {
        // 3^7 exceeds the addition-table limit
        let f = Field::new(3, 7, None).unwrap();
        let a = f.from_base_coeffs(&[2, 1, 0, 2, 1, 1, 2]).unwrap();
        let b = f.from_base_coeffs(&[1, 2, 2, 2, 0, 1, 1]).unwrap();
        assert_eq!(f.base_coeffs(f.add(a, b)), vec![0, 0, 2, 1, 1, 2]);
        assert_eq!(f.add(a, f.neg(a)), f.zero());
    }

    #[test]
    fn square_roots() {
        for (p, n) in [(3u64, 1u32), (5, 1), (13, 1), (3, 2), (5, 2)] {
            let f = Field::new(p, n, None).unwrap();
            for a in f.elements() {
                let sq = f.mul(a, a);
                let r = f.sqrt(sq).unwrap();
                assert_eq!(f.mul(r, r), sq);
            }
        }
    }
}

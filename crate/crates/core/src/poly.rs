//! Dense univariate polynomials over `F_q`.
//!
//! A [`Poly`] is a coefficient vector, lowest degree first, with no trailing
//! zero; the zero polynomial is the empty vector. Arithmetic lives on
//! [`PolyRing`], which carries the coefficient field.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Degree of the zero polynomial.
pub const NEG_INF: i64 = i64::MIN;

/// Operand length below which multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Modulus degree from which reductions use a precomputed inverse.
pub const BARRETT_THRESHOLD: usize = 48;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly(Vec<FieldElem>);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<u32> = self.0.iter().map(|c| c.index()).collect();
        write!(f, "Poly{idx:?}")
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![FieldElem::ONE])
    }

    /// The indeterminate `T`.
    pub fn t() -> Poly {
        Poly(vec![FieldElem::ZERO, FieldElem::ONE])
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FieldElem::ZERO; k + 1];
        v[k] = c;
        Poly(v)
    }

    /// Builds a polynomial from coefficients (lowest degree first), trimming zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Coefficients given by canonical element indices. Indices are not range checked.
    pub(crate) fn from_indices(idx: &[u32]) -> Poly {
        Poly::from_coeffs(idx.iter().map(|&i| FieldElem(i)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.0
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.0.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == FieldElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Degree, with [`NEG_INF`] for zero.
    pub fn deg(&self) -> i64 {
        if self.0.is_empty() {
            NEG_INF
        } else {
            self.0.len() as i64 - 1
        }
    }

    /// Degree as an option (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree, counting zero as 0. Handy for size estimates.
    pub fn size_deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<FieldElem> {
        self.0.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(FieldElem::ONE)
    }

    /// The unique constant equal to this polynomial.
    pub fn constant_part(&self) -> Result<FieldElem> {
        match self.0.len() {
            0 => Ok(FieldElem::ZERO),
            1 => Ok(self.0[0]),
            _ => Err(Error::NotConstant),
        }
    }
}

/// Arithmetic in `F_q[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> PolyRing {
        PolyRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn constant(&self, c: FieldElem) -> Poly {
        Poly::constant(c)
    }

    pub fn from_i64(&self, c: i64) -> Poly {
        Poly::constant(self.field.from_i64(c))
    }

    /// Polynomial with small integer coefficients, lowest degree first.
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        let (long, short) = if f.0.len() >= g.0.len() { (f, g) } else { (g, f) };
        let mut out = long.0.clone();
        for (o, &c) in out.iter_mut().zip(&short.0) {
            *o = self.field.add(*o, c);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly(f.0.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.0.len().max(g.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.sub(f.coeff(i), g.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, f: &Poly, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(f.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    /// `f * T^k`.
    pub fn shift(&self, f: &Poly, k: usize) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FieldElem::ZERO; k];
        v.extend_from_slice(&f.0);
        Poly(v)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, f: &Poly) -> Poly {
        match f.lead() {
            None => Poly::zero(),
            Some(l) if l == FieldElem::ONE => f.clone(),
            Some(l) => self.scale(f, self.field.inv(l).expect("nonzero lead")),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.mul_slices(&f.0, &g.0))
    }

    pub fn square(&self, f: &Poly) -> Poly {
        self.mul(f, f)
    }

    /// Full product of two nonempty coefficient slices (length `a + b - 1`).
    fn mul_slices(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        if b.len() < KARATSUBA_THRESHOLD {
            return self.schoolbook(a, b);
        }
        if a.len() >= 2 * b.len() {
            // unbalanced: cut the long operand into pieces the size of the short one
            let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
            for (k, chunk) in a.chunks(b.len()).enumerate() {
                let part = self.mul_slices(chunk, b);
                let off = k * b.len();
                for (i, c) in part.into_iter().enumerate() {
                    out[off + i] = self.field.add(out[off + i], c);
                }
            }
            return out;
        }
        self.karatsuba(a, b)
    }

    fn karatsuba(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let h = a.len().max(b.len()) / 2;
        let (a0, a1) = a.split_at(h.min(a.len()));
        let (b0, b1) = b.split_at(h.min(b.len()));
        let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
        let z0 = if a0.is_empty() || b0.is_empty() { Vec::new() } else { self.mul_slices(a0, b0) };
        let z2 = if a1.is_empty() || b1.is_empty() { Vec::new() } else { self.mul_slices(a1, b1) };
        let sum = |x: &[FieldElem], y: &[FieldElem]| -> Vec<FieldElem> {
            let n = x.len().max(y.len());
            (0..n)
                .map(|i| {
                    let u = x.get(i).copied().unwrap_or_default();
                    let v = y.get(i).copied().unwrap_or_default();
                    f.add(u, v)
                })
                .collect()
        };
        let sa = sum(a0, a1);
        let sb = sum(b0, b1);
        let mut z1 = self.mul_slices(&sa, &sb);
        for (i, &c) in z0.iter().enumerate() {
            z1[i] = f.sub(z1[i], c);
        }
        for (i, &c) in z2.iter().enumerate() {
            z1[i] = f.sub(z1[i], c);
        }
        for (i, c) in z0.into_iter().enumerate() {
            out[i] = f.add(out[i], c);
        }
        for (i, c) in z1.into_iter().enumerate() {
            if h + i < out.len() {
                out[h + i] = f.add(out[h + i], c);
            }
        }
        for (i, c) in z2.into_iter().enumerate() {
            out[2 * h + i] = f.add(out[2 * h + i], c);
        }
        out
    }

    fn schoolbook(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let n = a.len() + b.len() - 1;
        if f.is_prime_field() {
            // accumulate in u64 and reduce only when overflow is possible
            let p = f.p() as u64;
            let max_term = (p - 1) * (p - 1);
            let batch = (u64::MAX - p).checked_div(max_term).map_or(usize::MAX, |b| b as usize);
            let mut acc = vec![0u64; n];
            let mut pending = 0usize;
            for (i, &x) in a.iter().enumerate() {
                let x = x.0 as u64;
                if x == 0 {
                    continue;
                }
                if pending == batch {
                    acc.iter_mut().for_each(|v| *v %= p);
                    pending = 0;
                }
                for (slot, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
                    *slot += x * y.0 as u64;
                }
                pending += 1;
            }
            acc.into_iter().map(|v| FieldElem((v % p) as u32)).collect()
        } else {
            let mut out = vec![FieldElem::ZERO; n];
            for (i, &x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
            out
        }
    }

    /// Quotient and remainder with `deg rem < deg g`.
    pub fn divrem(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
        let gd = g.degree().ok_or(Error::DivisionByZero)?;
        let fd = match f.degree() {
            Some(d) if d >= gd => d,
            _ => return Ok((Poly::zero(), f.clone())),
        };
        let fld = &self.field;
        let inv = fld.inv(g.lead().expect("nonzero")).expect("nonzero lead");
        let mut r = f.0.clone();
        let mut quo = vec![FieldElem::ZERO; fd - gd + 1];
        for k in (0..=fd - gd).rev() {
            let c = r[k + gd];
            if c.is_zero() {
                continue;
            }
            let t = fld.mul(c, inv);
            quo[k] = t;
            let nt = fld.neg(t);
            for (j, &gc) in g.0.iter().enumerate() {
                if !gc.is_zero() {
                    r[k + j] = fld.add(r[k + j], fld.mul(nt, gc));
                }
            }
        }
        r.truncate(gd);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(self.divrem(f, g)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn exact_div(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(f, g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("{} / {}", self.format(f), self.format(g))))
        }
    }

    pub fn divides(&self, g: &Poly, f: &Poly) -> bool {
        if g.is_zero() {
            return f.is_zero();
        }
        self.rem(f, g).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// `(d, s, t)` with `d` the monic gcd and `d = s f + t g`.
    pub fn xgcd(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly)> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = self.field.inv(r0.lead().expect("nonzero gcd")).expect("nonzero");
        Ok((self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l)))
    }

    /// Exact power in `A`.
    pub fn pow(&self, f: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = f.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// Exact power with a big exponent. The exponent must fit the result's degree into memory.
    pub fn pow_big(&self, f: &Poly, e: &BigUint) -> Result<Poly> {
        if e.is_zero() || f.is_one() {
            return Ok(Poly::one());
        }
        if f.is_constant() {
            return Ok(Poly::constant(self.field.pow_big(f.coeff(0), e)));
        }
        let e = e.to_u64().ok_or_else(|| Error::Unsupported("exponent too large for an exact power".into()))?;
        Ok(self.pow(f, e))
    }

    /// `base^exp mod modulus` by binary exponentiation.
    pub fn powmod(&self, base: &Poly, exp: &BigUint, modulus: &Poly) -> Result<Poly> {
        let m = Modulus::new(self, modulus)?;
        Ok(m.pow(self, base, exp))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, max_deg: usize) -> Poly {
        Poly::from_coeffs((0..=max_deg).map(|_| self.field.random(rng)).collect())
    }

    /// Random polynomial of exact degree `deg` with the given leading coefficient.
    pub fn random_with_lead<R: Rng + ?Sized>(&self, rng: &mut R, deg: usize, lead: FieldElem) -> Poly {
        let mut v: Vec<FieldElem> = (0..deg).map(|_| self.field.random(rng)).collect();
        v.push(lead);
        Poly::from_coeffs(v)
    }

    /// Evaluation at a field element (Horner).
    pub fn eval(&self, f: &Poly, x: FieldElem) -> FieldElem {
        f.0.iter().rev().fold(FieldElem::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Square root in `A`, if `f` is a perfect square. Coefficients are solved
    /// from the top down; the result has a square leading coefficient root
    /// chosen by [`Field::sqrt`].
    pub fn sqrt(&self, f: &Poly) -> Option<Poly> {
        let d = match f.degree() {
            None => return Some(Poly::zero()),
            Some(d) => d,
        };
        if d % 2 == 1 {
            return None;
        }
        let fld = &self.field;
        let h = d / 2;
        let lead = fld.sqrt(f.0[d])?;
        let two_lead_inv = fld.inv(fld.add(lead, lead)).expect("odd characteristic");
        let mut root = vec![FieldElem::ZERO; h + 1];
        root[h] = lead;
        // coefficient of T^{h+k} in root^2 determines root[k] for k < h
        for k in (0..h).rev() {
            let target = f.0[h + k];
            let mut s = FieldElem::ZERO;
            for i in (k + 1)..=h {
                let j = h + k - i;
                if j > k && j <= h {
                    s = fld.add(s, fld.mul(root[i], root[j]));
                }
            }
            root[k] = fld.mul(fld.sub(target, s), two_lead_inv);
        }
        let r = Poly::from_coeffs(root);
        (self.square(&r) == *f).then_some(r)
    }

    /// Text form: `coeff*T^k` terms joined by `+`, highest degree first.
    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in f.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = self.field.format_elem(c);
            let term = match k {
                0 => coeff,
                _ => {
                    let mono = if k == 1 { "T".to_string() } else { format!("T^{k}") };
                    if c == FieldElem::ONE {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Parses the text form. Whitespace is ignored, repeated degrees add up,
    /// and `-` is accepted between terms as a convenience.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let fld = &self.field;
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut acc: Vec<FieldElem> = Vec::new();
        let mut first = true;
        while pos < bytes.len() {
            let mut negate = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negate = bytes[pos] == b'-';
                pos += 1;
            } else if !first {
                return Err(Error::Parse(format!("expected '+' at offset {pos} in {s:?}")));
            }
            first = false;
            let end = bytes[pos..]
                .iter()
                .scan(0i32, |depth, &b| {
                    match b {
                        b'[' => *depth += 1,
                        b']' => *depth -= 1,
                        b'+' | b'-' if *depth == 0 => return None,
                        _ => {}
                    }
                    Some(())
                })
                .count();
            let term = &s[pos..pos + end];
            pos += end;
            let (c, k) = self.parse_term(term)?;
            let c = if negate { fld.neg(c) } else { c };
            if acc.len() <= k {
                acc.resize(k + 1, FieldElem::ZERO);
            }
            acc[k] = fld.add(acc[k], c);
        }
        Ok(Poly::from_coeffs(acc))
    }

    fn parse_term(&self, term: &str) -> Result<(FieldElem, usize)> {
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff, mono) = match term.find('T') {
            None => (Some(term), None),
            Some(i) => {
                let (c, m) = term.split_at(i);
                let c = match c.strip_suffix('*') {
                    Some(c) => Some(c),
                    None if c.is_empty() => None,
                    None => return Err(Error::Parse(format!("missing '*' in term {term:?}"))),
                };
                (c, Some(m))
            }
        };
        let c = match coeff {
            None => FieldElem::ONE,
            Some(c) => self.parse_coeff(c)?,
        };
        let k = match mono {
            None => 0,
            Some("T") => 1,
            Some(m) => m
                .strip_prefix("T^")
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad monomial {m:?}")))?,
        };
        if k > 1 << 26 {
            return Err(Error::Parse(format!("degree {k} too large")));
        }
        Ok((c, k))
    }

    fn parse_coeff(&self, c: &str) -> Result<FieldElem> {
        let fld = &self.field;
        let p = fld.p() as u64;
        let digit = |d: &str| -> Result<i64> {
            let v: u64 = d.parse().map_err(|_| Error::Parse(format!("bad coefficient {d:?}")))?;
            if v >= p {
                return Err(Error::Parse(format!("coefficient {v} not in [0, {p})")));
            }
            Ok(v as i64)
        };
        if let Some(inner) = c.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let digits = inner.split(',').map(digit).collect::<Result<Vec<i64>>>()?;
            fld.from_base_coeffs(&digits).ok_or_else(|| Error::Parse(format!("too many base coefficients in {c:?}")))
        } else {
            Ok(fld.from_i64(digit(c)?))
        }
    }
}

/// A fixed modulus with whatever precomputation speeds up repeated reduction.
pub struct Modulus {
    f: Poly,
    /// Inverse of the reversed modulus modulo `T^{deg f + 1}`, when large.
    rev_inv: Option<Vec<FieldElem>>,
}

impl Modulus {
    pub fn new(ring: &PolyRing, f: &Poly) -> Result<Modulus> {
        let d = f.degree().ok_or(Error::DivisionByZero)?;
        let rev_inv = (d >= BARRETT_THRESHOLD).then(|| {
            let rev: Vec<FieldElem> = f.0.iter().rev().copied().collect();
            series_inverse(ring, &rev, d + 1)
        });
        Ok(Modulus { f: f.clone(), rev_inv })
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.size_deg()
    }

    /// Remainder of `g` modulo the stored polynomial.
    pub fn reduce(&self, ring: &PolyRing, g: &Poly) -> Poly {
        let d = self.degree();
        let gd = match g.degree() {
            Some(x) if x >= d => x,
            _ => return g.clone(),
        };
        match &self.rev_inv {
            Some(inv) if gd <= 2 * d => {
                // quotient from the reversed series: q_rev = rev(g) * rev(f)^{-1} mod T^{k+1}
                let k = gd - d;
                let g_rev: Vec<FieldElem> = g.0.iter().rev().take(k + 1).copied().collect();
                let inv = &inv[..inv.len().min(k + 1)];
                let mut q_rev = ring.mul_slices(&g_rev, inv);
                q_rev.truncate(k + 1);
                q_rev.resize(k + 1, FieldElem::ZERO);
                q_rev.reverse();
                let q = Poly::from_coeffs(q_rev);
                let r = ring.sub(g, &ring.mul(&q, &self.f));
                debug_assert!(r.deg() < d as i64);
                r
            }
            Some(_) => {
                // fold the top in chunks
                let mut cur = g.clone();
                while cur.deg() >= d as i64 {
                    let top = cur.size_deg();
                    if top <= 2 * d {
                        return self.reduce(ring, &cur);
                    }
                    let cut = top - 2 * d + 1;
                    let low = Poly::from_coeffs(cur.0[..cut].to_vec());
                    let high = Poly::from_coeffs(cur.0[cut..].to_vec());
                    let high = self.reduce(ring, &high);
                    cur = ring.add(&ring.shift(&high, cut), &low);
                }
                cur
            }
            None => ring.rem(g, &self.f).expect("nonzero modulus"),
        }
    }

    pub fn mul(&self, ring: &PolyRing, a: &Poly, b: &Poly) -> Poly {
        self.reduce(ring, &ring.mul(a, b))
    }

    pub fn pow(&self, ring: &PolyRing, base: &Poly, exp: &BigUint) -> Poly {
        if self.degree() == 0 {
            return Poly::zero();
        }
        let base = self.reduce(ring, base);
        let mut acc = Poly::one();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.mul(ring, &acc, &acc);
            if exp.bit(i) {
                acc = self.mul(ring, &acc, &base);
            }
        }
        acc
    }
}

/// Power series inverse of `s` (with `s[0] != 0`) modulo `T^n`, by Newton iteration.
fn series_inverse(ring: &PolyRing, s: &[FieldElem], n: usize) -> Vec<FieldElem> {
    let f = ring.field();
    let mut g = vec![f.inv(s[0]).expect("unit constant term")];
    let mut prec = 1usize;
    while prec < n {
        prec = (2 * prec).min(n);
        // g <- g (2 - s g) mod T^prec
        let s_trunc = &s[..s.len().min(prec)];
        let mut sg = ring.mul_slices(s_trunc, &g);
        sg.truncate(prec);
        for c in sg.iter_mut() {
            *c = f.neg(*c);
        }
        if sg.is_empty() {
            sg.push(FieldElem::ZERO);
        }
        sg[0] = f.add(sg[0], f.from_i64(2));
        let mut next = ring.mul_slices(&g, &sg);
        next.truncate(prec);
        g = next;
    }
    g.resize(n.max(1), FieldElem::ZERO);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3() -> PolyRing {
        PolyRing::new(Field::new(3, 1, None).unwrap())
    }

    #[test]
    fn product_and_division_over_f3() {
        let r = f3();
        let a = r.from_ints(&[1, 1]);
        let b = r.from_ints(&[2, 1]);
        let prod = r.mul(&a, &b);
        assert_eq!(prod, r.from_ints(&[2, 0, 1]));
        assert_eq!(r.divrem(&prod, &a).unwrap(), (b.clone(), Poly::zero()));
        assert!(matches!(r.exact_div(&prod, &Poly::t()), Err(Error::InexactDivision(_))));
        assert!(matches!(r.divrem(&prod, &Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcd_examples() {
        let r = f3();
        let f = r.from_ints(&[2, 0, 1]);
        let g = r.from_ints(&[1, 1]);
        assert_eq!(r.gcd(&f, &g).unwrap(), g);
        assert_eq!(r.gcd(&r.scale(&f, r.field().from_i64(2)), &Poly::zero()).unwrap(), f);
        let (d, s, t) = r.xgcd(&Poly::t(), &g).unwrap();
        assert_eq!(d, Poly::one());
        assert_eq!((s, t), (r.from_i64(2), r.from_i64(1)));
        assert!(matches!(r.gcd(&Poly::zero(), &Poly::zero()), Err(Error::BothZero)));
    }

    #[test]
    fn powmod_examples() {
        let r = f3();
        let m = r.from_ints(&[1, 0, 1]);
        let e4 = BigUint::from(4u32);
        assert_eq!(r.powmod(&r.from_ints(&[1, 1]), &e4, &m).unwrap(), r.from_i64(2));
        assert_eq!(r.powmod(&Poly::t(), &BigUint::from(2u32), &m).unwrap(), r.from_i64(2));
        assert_eq!(r.powmod(&Poly::t(), &BigUint::from(0u32), &m).unwrap(), Poly::one());
    }

    #[test]
    fn pow_examples() {
        let r = f3();
        assert_eq!(r.pow(&r.from_ints(&[1, 1]), 2), r.from_ints(&[1, 2, 1]));
        assert_eq!(r.pow(&r.from_ints(&[5, 7]), 0), Poly::one());
        assert_eq!(r.pow(&r.from_ints(&[0, 2]), 3), r.from_ints(&[0, 0, 0, 2]));
    }

    #[test]
    fn constant_part_examples() {
        let r = f3();
        assert_eq!(r.from_i64(2).constant_part().unwrap(), r.field().from_i64(2));
        assert_eq!(Poly::zero().constant_part().unwrap(), FieldElem::ZERO);
        assert!(matches!(Poly::t().constant_part(), Err(Error::NotConstant)));
    }

    #[test]
    fn zero_has_sentinel_degree() {
        assert_eq!(Poly::zero().deg(), NEG_INF);
        assert_eq!(Poly::t().deg(), 1);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(3u64, 1u32), (7, 1), (3, 2), (2147483647, 1)] {
            let r = PolyRing::new(Field::new(p, n, None).unwrap());
            for (da, db) in [(40, 40), (100, 33), (257, 31), (500, 120), (64, 1)] {
                let a = r.random(&mut rng, da);
                let b = r.random(&mut rng, db);
                let fast = r.mul(&a, &b);
                let slow = Poly::from_coeffs(r.schoolbook(&a.0, &b.0));
                assert_eq!(fast, slow, "p={p} n={n} {da}x{db}");
            }
        }
    }

    #[test]
    fn barrett_reduction_matches_long_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(3u64, 1u32), (5, 2)] {
            let r = PolyRing::new(Field::new(p, n, None).unwrap());
            for d in [48usize, 60, 130] {
                let m = r.random_with_lead(&mut rng, d, r.field().from_i64(2));
                let md = Modulus::new(&r, &m).unwrap();
                for gd in [d - 1, d, 2 * d - 2, 2 * d, 5 * d + 3] {
                    let g = r.random(&mut rng, gd);
                    assert_eq!(md.reduce(&r, &g), r.rem(&g, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let r = f3();
        let f = r.parse("2*T^3 + T + 1").unwrap();
        assert_eq!(f, r.from_ints(&[1, 1, 0, 2]));
        assert_eq!(r.format(&f), "2*T^3+T+1");
        assert_eq!(r.parse("T-1").unwrap(), r.from_ints(&[2, 1]));
        assert_eq!(r.format(&Poly::zero()), "0");
        assert!(r.parse("3*T").is_err());
        assert!(r.parse("2T").is_err());

        let r9 = PolyRing::new(Field::new(3, 2, None).unwrap());
        let g = r9.parse("[0,1]*T^2+[2]").unwrap();
        assert_eq!(r9.format(&g), "[0,1]*T^2+[2]");
        assert_eq!(r9.parse(&r9.format(&g)).unwrap(), g);
    }

    #[test]
    fn square_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = PolyRing::new(Field::new(5, 1, None).unwrap());
        for _ in 0..50 {
            let a = r.random(&mut rng, 6);
            let sq = r.square(&a);
            let root = r.sqrt(&sq).unwrap();
            assert_eq!(r.square(&root), sq);
        }
        assert!(r.sqrt(&Poly::t()).is_none());
    }
}

//! Decomposition of a matrix of determinant one into a [`Certificate`].
//!
//! The stages build on each other: `lemma31` fixes a bottom row, `lemma32`
//! fixes the top row of a power `alpha^r`, `lemma33` reduces that power to a
//! diagonal matrix, `corollary34` rewrites it as a product of words and
//! quintuples, `corollary35` combines two coprime powers into `alpha`, and
//! [`decompose`] chooses the powers from a pair of primes.
//!
//! Quintuples returned by the stages are already Lambda parameters: the
//! factor they stand for is `lambda_eval(params)` (or `lambda_t_eval`).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::families::{lambda_eval, lambda_from_quintuple, lambda_t_eval, Quintuple};
use crate::field::FieldElem;
use crate::matrix::Mat2;
use crate::mix_seed;
use crate::poly::{Poly, PolyRing};
use crate::residue::{
    amm_root, bezout_exponents, coprime_degree_pair_search_bounded, dirichlet_search, norm_exponent,
    power_residue_symbol, DegreePredicate,
};
use crate::words::{epsilon_diag_word, Family, Side, Word};

/// Default bound on the predicted degree of `alpha^r`.
pub const DEFAULT_DEGREE_CAP: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Re-verify every stage by direct evaluation.
    pub checked: bool,
    /// Refuse powers whose predicted entry degree exceeds this.
    pub degree_cap: Option<u64>,
    /// Candidates per degree in prime searches.
    pub retry_cap: Option<u64>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { checked: false, degree_cap: Some(DEFAULT_DEGREE_CAP), retry_cap: None }
    }
}

impl DecomposeOptions {
    pub fn checked() -> Self {
        DecomposeOptions { checked: true, ..Default::default() }
    }
}

fn stage_check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::StageCheckFailed(what.into()))
    }
}

fn unit_poly(e: FieldElem) -> Poly {
    Poly::constant(e)
}

/// Applies elementary factors on the right, `(side, matrix parameter)`.
fn apply(r: &PolyRing, m: &Mat2, factors: &[(Side, &Poly)]) -> Mat2 {
    let mut m = m.clone();
    for (side, p) in factors {
        if p.is_zero() {
            continue;
        }
        m = match side {
            Side::Upper => m.mul_upper(r, p),
            Side::Lower => m.mul_lower(r, p),
        };
    }
    m
}

// ---------------------------------------------------------------- lemma31

/// Output of [`lemma31`].
#[derive(Clone, Debug)]
pub struct Lemma31 {
    pub m: Poly,
    pub n: Poly,
    pub eps: FieldElem,
    /// Lambda parameters of the `M_Lambda` factor.
    pub beta: Quintuple,
    /// `b + m (1 + a u)`.
    pub prime: Poly,
    pub a1: Poly,
    pub d1: Poly,
    /// The product of `alpha` with the six factors.
    pub result: Mat2,
    pub trials: u64,
    pub checks: u64,
    pub peak_degree: usize,
}

/// `alpha (um)_{12} n_{21} (-p u)_{12} Lambda(beta) (-n u / eps)_{12} (-eps m)_{21}`.
pub fn lemma31_product(r: &PolyRing, alpha: &Mat2, u: &Poly, out: &Lemma31) -> Mat2 {
    let f = r.field();
    let um = r.mul(u, &out.m);
    let pu = r.neg(&r.mul(&out.prime, u));
    let lam = apply(r, alpha, &[(Side::Upper, &um), (Side::Lower, &out.n), (Side::Upper, &pu)]);
    let inv = f.inv(out.eps).expect("unit");
    let t4 = r.neg(&r.scale(&r.mul(u, &out.n), inv));
    let t5 = r.neg(&r.scale(&out.m, out.eps));
    let x = lam.mul(r, &lambda_eval(r, &out.beta));
    apply(r, &x, &[(Side::Upper, &t4), (Side::Lower, &t5)])
}

/// Brings `alpha = [[1 + a u, b u], [*, *]]` to a matrix with bottom row
/// `(eps b, 1 + a u)`.
pub fn lemma31(
    r: &PolyRing,
    alpha: &Mat2,
    a: &Poly,
    b: &Poly,
    u: &Poly,
    seed: u64,
    opts: &DecomposeOptions,
) -> Result<Lemma31> {
    let f = r.field();
    let q = f.q() as u64;
    let top = r.add(&Poly::one(), &r.mul(a, u));
    if alpha.a != top || alpha.b != r.mul(b, u) {
        return Err(Error::PreconditionShape("top row is not (1 + a u, b u)".into()));
    }
    alpha.require_sl2(r)?;

    let mut out = if top.is_zero() {
        // a, u and b are units here. Closed form found by solving the
        // bottom-row equations with beta = 1; checked below on every call.
        let bu = r.mul(b, u);
        let n = Poly::constant(f.inv(bu.constant_part()?).ok_or(Error::DivisionByZero)?);
        let b2u = r.mul(&r.square(b), u);
        let m = r.mul(b, &r.sub(&r.sub(&alpha.d, &Poly::one()), &b2u));
        Lemma31 {
            m,
            n,
            eps: f.one(),
            beta: Quintuple::zero(),
            prime: b.clone(),
            a1: Poly::zero(),
            d1: Poly::zero(),
            result: Mat2::identity(),
            trials: 0,
            checks: 0,
            peak_degree: 0,
        }
    } else {
        let pred =
            DegreePredicate::Congruent { residue: q - 2, modulus: q - 1, min_deg: (b.deg() + 1).max(1) as usize };
        let hit = dirichlet_search(r, &top, b, pred, mix_seed(seed, 0x31), opts.retry_cap)?;
        let prime = hit.prime.poly().clone();
        let m = hit.m;
        let (eps, a1) = if r.divides(&prime, a) {
            (f.one(), Poly::zero())
        } else {
            let e1 = power_residue_symbol(r, a, &prime, q - 1)?;
            let target = r.scale(a, e1);
            let a1 = amm_root(r, &target, &prime, q - 1, mix_seed(seed, 0x3a))?;
            (f.inv(e1).expect("residue symbols are units"), a1)
        };
        let a1_half = r.pow(&a1, (q - 1) / 2);
        let a1_full = r.square(&a1_half);
        let n = r.exact_div(&r.sub(&r.scale(&a1_full, eps), a), &prime)?;
        let um = r.mul(u, &m);
        let pu = r.neg(&r.mul(&prime, u));
        let lam = apply(r, alpha, &[(Side::Upper, &um), (Side::Lower, &n), (Side::Upper, &pu)]);
        let w = r.mul(u, &a1_half);
        let d1 = if w.is_zero() {
            if !lam.d.is_one() {
                return Err(Error::InexactDivision("d - 1 with u a1^(q1) = 0".into()));
            }
            Poly::zero()
        } else {
            r.exact_div(&r.sub(&lam.d, &Poly::one()), &w)?
        };
        let raw = Quintuple::new(d1.clone(), r.scale(&prime, eps), r.neg(&lam.c), r.scale(&a1_half, eps), w);
        let beta = lambda_from_quintuple(r, &raw)?;
        let peak = lam.max_degree();
        Lemma31 {
            m,
            n,
            eps,
            beta,
            prime,
            a1,
            d1,
            result: Mat2::identity(),
            trials: hit.trials,
            checks: 0,
            peak_degree: peak,
        }
    };
    out.result = lemma31_product(r, alpha, u, &out);
    out.peak_degree = out.peak_degree.max(out.result.max_degree());
    if top.is_zero() {
        let ok = out.result.c == r.scale(b, out.eps) && out.result.d.is_zero();
        stage_check(ok, "lemma31 closed form")?;
    }
    if opts.checked {
        let row = (r.scale(b, out.eps), top);
        stage_check(out.result.c == row.0 && out.result.d == row.1, "lemma31 bottom row")?;
        stage_check(out.beta.is_valid(r), "lemma31 quintuple")?;
        out.checks += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- lemma32

/// `(u, v)` with `alpha^r = u alpha + v I`, by binary powering on the
/// Cayley-Hamilton relation `alpha^2 = tr(alpha) alpha - I`.
pub fn cayley_hamilton_power(r: &PolyRing, alpha: &Mat2, e: &BigUint) -> (Poly, Poly) {
    let t = r.add(&alpha.a, &alpha.d);
    // (x1 alpha + y1)(x2 alpha + y2) = (x1 x2 t + x1 y2 + x2 y1) alpha + (y1 y2 - x1 x2)
    let mul = |(x1, y1): &(Poly, Poly), (x2, y2): &(Poly, Poly)| -> (Poly, Poly) {
        let xx = r.mul(x1, x2);
        let x = r.add(&r.add(&r.mul(&xx, &t), &r.mul(x1, y2)), &r.mul(x2, y1));
        let y = r.sub(&r.mul(y1, y2), &xx);
        (x, y)
    };
    let mut acc = (Poly::zero(), Poly::one());
    for i in (0..e.bits()).rev() {
        acc = mul(&acc, &acc);
        if e.bit(i) {
            acc = mul(&acc, &(Poly::one(), Poly::zero()));
        }
    }
    acc
}

/// Output of [`lemma32`].
#[derive(Clone, Debug)]
pub struct Lemma32 {
    pub u: Poly,
    pub v: Poly,
    pub u1: Poly,
    pub u2: Poly,
    pub v1: Poly,
    pub v2: Poly,
    /// `t^(1) .. t^(10)`.
    pub t: [Poly; 10],
    pub w1: Poly,
    pub w2: Poly,
    pub eps1: FieldElem,
    pub eps2: FieldElem,
    pub eps: FieldElem,
    /// Lambda parameters.
    pub beta: Quintuple,
    /// LambdaT parameters.
    pub gamma: Quintuple,
    pub power: Mat2,
    pub result: Mat2,
    pub first: Lemma31,
    pub second: Lemma31,
    pub checks: u64,
}

impl Lemma32 {
    fn trials(&self) -> u64 {
        self.first.trials + self.second.trials
    }

    fn peak_degree(&self) -> usize {
        self.power.max_degree().max(self.first.peak_degree).max(self.second.peak_degree)
    }
}

/// `power t1_{12} t2_{21} t3_{12} Lambda(beta) t4_{12} t5_{21} t6_{12} t7_{21} LambdaT(gamma) t8_{21} t9_{12} t10_{21}`.
pub fn lemma32_product(r: &PolyRing, power: &Mat2, t: &[Poly; 10], beta: &Quintuple, gamma: &Quintuple) -> Mat2 {
    use Side::{Lower as L, Upper as U};
    let x = apply(r, power, &[(U, &t[0]), (L, &t[1]), (U, &t[2])]).mul(r, &lambda_eval(r, beta));
    let x = apply(r, &x, &[(U, &t[3]), (L, &t[4]), (U, &t[5]), (L, &t[6])]).mul(r, &lambda_t_eval(r, gamma));
    apply(r, &x, &[(L, &t[7]), (U, &t[8]), (L, &t[9])])
}

fn check_degree(alpha: &Mat2, e: &BigUint, opts: &DecomposeOptions) -> Result<()> {
    if let Some(cap) = opts.degree_cap {
        let d = BigUint::from(alpha.max_degree().max(1)) * e;
        if d > BigUint::from(cap) {
            let predicted = d.to_u64().unwrap_or(u64::MAX);
            return Err(Error::DegreeCapExceeded { predicted, cap });
        }
    }
    Ok(())
}

/// Brings `alpha^r` to a matrix with top row `(a^r, eps b)`.
pub fn lemma32(r: &PolyRing, alpha: &Mat2, e: &BigUint, seed: u64, opts: &DecomposeOptions) -> Result<Lemma32> {
    alpha.require_sl2(r)?;
    if e.is_zero() {
        return Err(Error::PreconditionViolated("exponent must be positive".into()));
    }
    check_degree(alpha, e, opts)?;
    let f = r.field();
    let (a, b) = (&alpha.a, &alpha.b);
    let (u, v) = cayley_hamilton_power(r, alpha, e);
    let power = Mat2::new(r.add(&r.mul(&u, a), &v), r.mul(&u, b), r.mul(&u, &alpha.c), r.add(&r.mul(&u, &alpha.d), &v));
    let one = Poly::one();
    let vm1 = r.sub(&v, &one);
    let vp1 = r.add(&v, &one);
    let (u1, u2) = if u.is_zero() {
        if v.is_one() {
            (Poly::zero(), Poly::one())
        } else {
            (Poly::one(), Poly::zero())
        }
    } else {
        let g = r.gcd(&u, &vm1)?;
        let rest = r.exact_div(&u, &g)?;
        (g, rest)
    };
    let v1 = if u1.is_zero() {
        if !vm1.is_zero() {
            return Err(Error::InexactDivision("v - 1 by u1 = 0".into()));
        }
        Poly::zero()
    } else {
        r.exact_div(&vm1, &u1)?
    };
    let v2 = if u2.is_zero() {
        if !vp1.is_zero() {
            return Err(Error::InexactDivision("v + 1 by u2 = 0".into()));
        }
        Poly::zero()
    } else {
        // u2 | v + 1 because v - 1 and v + 1 differ by the unit 2
        r.exact_div(&vp1, &u2)?
    };

    // first pass: top row of alpha^r is (1 + u1 (v1 + u2 a), u1 (u2 b))
    let a_first = r.add(&v1, &r.mul(&u2, a));
    let b_first = r.mul(&u2, b);
    let first = lemma31(r, &power, &a_first, &b_first, &u1, mix_seed(seed, 1), opts)?;
    let eps1 = first.eps;
    let inv1 = f.inv(eps1).expect("unit");
    let t1 = r.mul(&u1, &first.m);
    let t2 = first.n.clone();
    let t3 = r.neg(&r.mul(&first.prime, &u1));
    let t4 = r.neg(&r.scale(&r.mul(&u1, &first.n), inv1));
    let w1 = r.neg(&r.scale(&first.m, eps1));
    let rho = first.result.clone();

    // second pass on chi = -J rho J^{-1}, whose top row is (1 + u2 (-v2 - u1 a), u2 (eps1 b))
    let chi = rho.j_conjugate(r).neg(r);
    let a_second = r.neg(&r.add(&v2, &r.mul(&u1, a)));
    let b_second = r.scale(b, eps1);
    let second = lemma31(r, &chi, &a_second, &b_second, &u2, mix_seed(seed, 2), opts)?;
    let eps2 = second.eps;
    let inv2 = f.inv(eps2).expect("unit");
    let w2 = r.mul(&u2, &second.m);
    let t5 = r.sub(&w1, &w2);
    let t6 = r.neg(&second.n);
    let t7 = r.mul(&second.prime, &u2);
    let t8 = r.scale(&r.mul(&u2, &second.n), inv2);
    let t9 = r.scale(&second.m, eps2);
    let eps = f.mul(eps1, eps2);

    // top-left is now v + u a; one more lower factor turns it into a^r
    let ar = r.pow_big(a, e)?;
    let t10 = if b.is_zero() {
        if ar != power.a {
            return Err(Error::InexactDivision("a^r - (u a + v) with b = 0".into()));
        }
        Poly::zero()
    } else {
        r.exact_div(&r.sub(&ar, &power.a), &r.scale(b, eps))?
    };
    let t = [t1, t2, t3, t4, t5, t6, t7, t8, t9, t10];
    let beta = first.beta.clone();
    let gamma = second.beta.clone();
    let result = lemma32_product(r, &power, &t, &beta, &gamma);
    let mut out = Lemma32 {
        u,
        v,
        u1,
        u2,
        v1,
        v2,
        t,
        w1,
        w2,
        eps1,
        eps2,
        eps,
        beta,
        gamma,
        power,
        result,
        checks: first.checks + second.checks,
        first,
        second,
    };
    if opts.checked {
        let (u, v) = (&out.u, &out.v);
        stage_check(out.u1.is_zero() || out.u1.is_monic(), "lemma32 u1 monic")?;
        stage_check(r.mul(&out.u1, &out.u2) == *u, "lemma32 u = u1 u2")?;
        stage_check(r.sub(v, &one) == r.mul(&out.u1, &out.v1), "lemma32 v - 1")?;
        stage_check(r.add(v, &one) == r.mul(&out.u2, &out.v2), "lemma32 v + 1")?;
        stage_check(out.result.b == r.scale(b, eps), "lemma32 top right")?;
        stage_check(out.result.a == ar, "lemma32 top left")?;
        out.checks += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- lemma33

/// Output of [`lemma33`].
#[derive(Clone, Debug)]
pub struct Lemma33 {
    /// `t^(1) .. t^(12)`.
    pub t: [Poly; 12],
    pub beta: Quintuple,
    pub gamma: Quintuple,
    pub eps: FieldElem,
    /// The unit produced by the top-row step.
    pub eps1: FieldElem,
    pub inner: Lemma32,
    pub checks: u64,
}

/// `alpha^r times the twelve-parameter word`, expected to be `diag(eps, 1/eps)`.
pub fn lemma33_product(r: &PolyRing, power: &Mat2, out: &Lemma33) -> Mat2 {
    let t10: [Poly; 10] = out.t[..10].to_vec().try_into().expect("ten");
    let x = lemma32_product(r, power, &t10, &out.beta, &out.gamma);
    apply(r, &x, &[(Side::Upper, &out.t[10]), (Side::Lower, &out.t[11])])
}

/// Needs `a^r = eps (mod b)`; finds a word with `alpha^r word = diag(eps, 1/eps)`.
pub fn lemma33(
    r: &PolyRing,
    alpha: &Mat2,
    e: &BigUint,
    eps: FieldElem,
    seed: u64,
    opts: &DecomposeOptions,
) -> Result<Lemma33> {
    let f = r.field();
    if eps.is_zero() {
        return Err(Error::ZeroUnit);
    }
    alpha.require_sl2(r)?;
    let (a, b) = (&alpha.a, &alpha.b);
    let ar_red = if b.is_zero() { r.pow_big(a, e)? } else { r.powmod(a, e, b)? };
    let eps_p = unit_poly(eps);
    let holds = if b.is_zero() { ar_red == eps_p } else { r.rem(&r.sub(&ar_red, &eps_p), b)?.is_zero() };
    if !holds {
        return Err(Error::PreconditionViolated("a^r is not congruent to the unit modulo b".into()));
    }
    let inner = lemma32(r, alpha, e, seed, opts)?;
    let eps1 = inner.eps;
    let rho = &inner.result;
    // rho = [[a^r, eps1 b], [*, *]]
    let (w2, t11) = if b.is_zero() {
        (Poly::zero(), Poly::zero())
    } else {
        let e1b = r.scale(b, eps1);
        let w2 = r.exact_div(&r.sub(&eps_p, &rho.a), &e1b)?;
        let t11 = r.neg(&r.scale(&e1b, f.inv(eps).expect("unit")));
        (w2, t11)
    };
    let after = apply(r, rho, &[(Side::Lower, &w2), (Side::Upper, &t11)]);
    // [[eps, 0], [m, 1/eps]]
    let t12 = r.neg(&r.scale(&after.c, eps));
    let mut t: Vec<Poly> = inner.t[..9].to_vec();
    t.push(r.add(&inner.t[9], &w2));
    t.push(t11);
    t.push(t12);
    let mut out = Lemma33 {
        t: t.try_into().expect("twelve"),
        beta: inner.beta.clone(),
        gamma: inner.gamma.clone(),
        eps,
        eps1,
        checks: inner.checks,
        inner,
    };
    if opts.checked {
        let d = lemma33_product(r, &out.inner.power, &out);
        let inv = unit_poly(f.inv(eps).expect("unit"));
        stage_check(d == Mat2::diag(eps_p, inv), "lemma33 diagonal")?;
        out.checks += 1;
    }
    Ok(out)
}

// ------------------------------------------------------------ corollary34

/// Output of [`corollary34`]: `alpha^r = diag(eps, 1/eps) chi5 LambdaT(gamma) chi4 Lambda(beta) chi3`.
#[derive(Clone, Debug)]
pub struct Corollary34 {
    pub eps: FieldElem,
    pub chi5: Word,
    pub gamma: Quintuple,
    pub chi4: Word,
    pub beta: Quintuple,
    pub chi3: Word,
    pub inner: Lemma33,
    pub checks: u64,
}

impl Corollary34 {
    pub fn eval(&self, r: &PolyRing) -> Mat2 {
        let f = r.field();
        let d = Mat2::diag(unit_poly(self.eps), unit_poly(f.inv(self.eps).expect("unit")));
        d.mul(r, &self.chi5.eval(r))
            .mul(r, &lambda_t_eval(r, &self.gamma))
            .mul(r, &self.chi4.eval(r))
            .mul(r, &lambda_eval(r, &self.beta))
            .mul(r, &self.chi3.eval(r))
    }
}

pub fn corollary34(
    r: &PolyRing,
    alpha: &Mat2,
    e: &BigUint,
    eps: FieldElem,
    seed: u64,
    opts: &DecomposeOptions,
) -> Result<Corollary34> {
    let l = lemma33(r, alpha, e, eps, seed, opts)?;
    let t = &l.t;
    let neg = |p: &Poly| r.neg(p);
    let chi5 = Word::g(vec![t[11].clone(), t[10].clone(), t[9].clone(), t[8].clone(), t[7].clone()]);
    let chi4 = Word::g(vec![t[6].clone(), t[5].clone(), t[4].clone(), t[3].clone()]);
    let chi3 = Word::f(vec![neg(&t[2]), neg(&t[1]), neg(&t[0])]);
    // the inverse of a member of M_Lambda (or its J-conjugate) is indexed by the inverse quintuple
    let gamma = lambda_from_quintuple(r, &l.gamma.inverse(r))?;
    let beta = lambda_from_quintuple(r, &l.beta.inverse(r))?;
    let mut out = Corollary34 { eps, chi5, gamma, chi4, beta, chi3, checks: l.checks, inner: l };
    if opts.checked {
        stage_check(out.eval(r) == out.inner.inner.power, "corollary34 product")?;
        out.checks += 1;
    }
    Ok(out)
}

// ------------------------------------------------------------ corollary35

/// Output of [`corollary35`]:
/// `alpha = chi9 LambdaT(gamma) chi4 Lambda(beta) chi3 chi9h Lambda(gamma_h) chi4h LambdaT(beta_h) chi3h`.
#[derive(Clone, Debug)]
pub struct Corollary35 {
    pub r: BigUint,
    pub s: BigUint,
    pub h1: BigUint,
    pub h2: BigUint,
    pub chi9: Word,
    pub gamma: Quintuple,
    pub chi4: Word,
    pub beta: Quintuple,
    pub chi3: Word,
    pub chi9_h: Word,
    pub gamma_h: Quintuple,
    pub chi4_h: Word,
    pub beta_h: Quintuple,
    pub chi3_h: Word,
    pub forward: Corollary34,
    pub backward: Corollary34,
    pub checks: u64,
}

impl Corollary35 {
    pub fn eval(&self, r: &PolyRing) -> Mat2 {
        [
            self.chi9.eval(r),
            lambda_t_eval(r, &self.gamma),
            self.chi4.eval(r),
            lambda_eval(r, &self.beta),
            self.chi3.eval(r),
            self.chi9_h.eval(r),
            lambda_eval(r, &self.gamma_h),
            self.chi4_h.eval(r),
            lambda_t_eval(r, &self.beta_h),
            self.chi3_h.eval(r),
        ]
        .iter()
        .fold(Mat2::identity(), |acc, m| acc.mul(r, m))
    }
}

/// Needs `gcd(r, s) = 1`, `a^r = eps1 (mod b)` and `a^s = eps2 (mod c)`.
#[allow(clippy::too_many_arguments)]
pub fn corollary35(
    r: &PolyRing,
    alpha: &Mat2,
    er: &BigUint,
    es: &BigUint,
    eps1: FieldElem,
    eps2: FieldElem,
    seed: u64,
    opts: &DecomposeOptions,
) -> Result<Corollary35> {
    let f = r.field();
    let (h1, h2) = bezout_exponents(er, es)?;
    let big_r = er * &h1;
    let big_s = es * &h2;
    // alpha = alpha^R alpha^{-S} with R - S = 1
    let forward = corollary34(r, alpha, &big_r, f.pow_big(eps1, &h1), mix_seed(seed, 0x35a), opts)?;
    let backward = corollary34(r, &alpha.transpose(), &big_s, f.pow_big(eps2, &h2), mix_seed(seed, 0x35b), opts)?;

    let chi9 = epsilon_diag_word(r, forward.eps, Family::G)?.compose(r, &forward.chi5)?;
    // J (alpha^T)^S J^{-1} = alpha^{-S}; conjugation swaps F and G, and Lambda and LambdaT
    let inv_eps2 = f.inv(backward.eps).expect("unit");
    let chi9_h = epsilon_diag_word(r, inv_eps2, Family::F)?.compose(r, &backward.chi5.j_conjugate(r))?;
    let mut out = Corollary35 {
        r: er.clone(),
        s: es.clone(),
        h1,
        h2,
        chi9,
        gamma: forward.gamma.clone(),
        chi4: forward.chi4.clone(),
        beta: forward.beta.clone(),
        chi3: forward.chi3.clone(),
        chi9_h,
        gamma_h: backward.gamma.clone(),
        chi4_h: backward.chi4.j_conjugate(r),
        beta_h: backward.beta.clone(),
        chi3_h: backward.chi3.j_conjugate(r),
        checks: forward.checks + backward.checks,
        forward,
        backward,
    };
    if opts.checked {
        stage_check(out.chi9.arity() == 9 && out.chi9_h.arity() == 9, "corollary35 arities")?;
        stage_check(out.eval(r) == *alpha, "corollary35 product")?;
        out.checks += 1;
    }
    Ok(out)
}

// -------------------------------------------------------------- decompose

/// Data of the `a != 0` branch.
#[derive(Clone, Debug)]
pub struct GeneralCase {
    pub u: Poly,
    pub v: Poly,
    /// `a u + b`.
    pub p1: Poly,
    /// `a v + c`.
    pub p2: Poly,
    pub e1: BigUint,
    pub e2: BigUint,
    pub eps1: FieldElem,
    pub eps2: FieldElem,
    pub cor: Corollary35,
}

#[derive(Clone, Debug)]
pub enum CaseTrace {
    /// `a = 0`, so `alpha = [[0, -eps], [1/eps, d]]`.
    ZeroCorner {
        eps: FieldElem,
    },
    /// `alpha = I`, answered by the all-zero certificate.
    Identity,
    General(Box<GeneralCase>),
}

/// Everything [`decompose`] computed on the way.
#[derive(Clone, Debug)]
pub struct DecompositionTrace {
    pub case: CaseTrace,
    /// Stage postconditions re-verified (checked mode only).
    pub stage_checks: u64,
    /// Irreducibility tests spent in prime searches.
    pub search_trials: u64,
    /// Largest entry degree seen in an intermediate matrix.
    pub peak_degree: usize,
}

impl DecompositionTrace {
    /// Degrees of the two primes and the exponents `(r, s, h1, h2)`, when present.
    pub fn summary(&self) -> Option<(usize, usize, BigUint, BigUint, BigUint, BigUint)> {
        match &self.case {
            CaseTrace::ZeroCorner { .. } | CaseTrace::Identity => None,
            CaseTrace::General(g) => Some((
                g.p1.size_deg(),
                g.p2.size_deg(),
                g.cor.r.clone(),
                g.cor.s.clone(),
                g.cor.h1.clone(),
                g.cor.h2.clone(),
            )),
        }
    }
}

fn cor34_stats(c: &Corollary34) -> (u64, usize) {
    let l = &c.inner.inner;
    (l.trials(), l.peak_degree())
}

/// Writes `alpha` as a nine-slot certificate.
pub fn decompose(
    r: &PolyRing,
    alpha: &Mat2,
    seed: u64,
    opts: &DecomposeOptions,
) -> Result<(Certificate, DecompositionTrace)> {
    alpha.require_sl2(r)?;
    let f = r.field();
    let q = f.q();
    if *alpha == Mat2::identity() {
        let trace = DecompositionTrace { case: CaseTrace::Identity, stage_checks: 0, search_trials: 0, peak_degree: 0 };
        return Ok((Certificate::zero(), trace));
    }
    if alpha.a.is_zero() {
        // b c = -1, so b = -eps and c = 1/eps with alpha = antidiag(eps) (eps d)_{12}
        let eps = f.neg(alpha.b.constant_part()?);
        let inv = f.inv(eps).ok_or(Error::ZeroUnit)?;
        let ed = r.scale(&alpha.d, eps);
        let chi9 = Word::g(vec![unit_poly(f.neg(inv)), unit_poly(eps), unit_poly(f.neg(inv)), r.neg(&ed)]).pad(9)?;
        let cert = Certificate { chi9, ..Certificate::zero() };
        let mut trace = DecompositionTrace {
            case: CaseTrace::ZeroCorner { eps },
            stage_checks: 0,
            search_trials: 0,
            peak_degree: 0,
        };
        if opts.checked {
            stage_check(crate::certificate::omega_eval(r, &cert)? == *alpha, "decompose a = 0")?;
            trace.stage_checks += 1;
        }
        return Ok((cert, trace));
    }

    let (a, b, c) = (&alpha.a, &alpha.b, &alpha.c);
    // the forward power alpha'^R has entries of degree about R deg(alpha'),
    // and deg(alpha') >= deg(alpha)
    let scale = alpha.max_degree().max(1) as u64;
    let max_cost = opts.degree_cap.map(|cap| cap / scale);
    let hit = coprime_degree_pair_search_bounded(r, a, b, c, mix_seed(seed, 0x5ea), opts.retry_cap, max_cost).map_err(
        |e| match e {
            Error::DegreeCapExceeded { predicted, .. } => Error::DegreeCapExceeded {
                predicted: predicted.saturating_mul(scale),
                cap: opts.degree_cap.unwrap_or(u64::MAX),
            },
            e => e,
        },
    )?;
    let (u, v) = (hit.u.clone(), hit.v.clone());
    // v_{21} alpha u_{12} = [[a, p1], [p2, *]]
    let shifted = Mat2::lower(v.clone()).mul(r, alpha).mul_upper(r, &u);
    debug_assert!(shifted.b == hit.p1 && shifted.c == hit.p2);
    let d1 = hit.p1.degree().expect("prime");
    let d2 = hit.p2.degree().expect("prime");
    let e1 = norm_exponent(q, d1);
    let e2 = norm_exponent(q, d2);
    if !e1.gcd(&e2).is_one() {
        return Err(Error::NotCoprimeExponents);
    }
    let qm1 = q as u64 - 1;
    let eps1 = power_residue_symbol(r, a, &hit.p1, qm1)?;
    let eps2 = power_residue_symbol(r, a, &hit.p2, qm1)?;
    let cor = corollary35(r, &shifted, &e1, &e2, eps1, eps2, seed, opts)?;

    // alpha = (-v)_{21} (...) (-u)_{12}
    let chi9 = Word::g(vec![v.clone()]).compose(r, &cor.chi9)?;
    let chi11 = cor.chi3.compose(r, &cor.chi9_h)?;
    let mut tail = cor.chi3_h.params();
    tail.push(u.clone());
    let chi4_s = Word::g(tail);
    let cert = Certificate {
        chi9,
        gamma: cor.gamma.clone(),
        chi4: cor.chi4.clone(),
        beta: cor.beta.clone(),
        chi11,
        gamma_h: cor.gamma_h.clone(),
        chi4_h: cor.chi4_h.clone(),
        beta_h: cor.beta_h.clone(),
        chi4_s,
    };
    cert.check_shape()?;
    let (tf, pf) = cor34_stats(&cor.forward);
    let (tb, pb) = cor34_stats(&cor.backward);
    let mut trace = DecompositionTrace {
        stage_checks: cor.checks,
        search_trials: hit.trials + tf + tb,
        peak_degree: pf.max(pb).max(cert.max_degree()),
        case: CaseTrace::General(Box::new(GeneralCase { u, v, p1: hit.p1, p2: hit.p2, e1, e2, eps1, eps2, cor })),
    };
    if opts.checked {
        stage_check(crate::certificate::omega_eval(r, &cert)? == *alpha, "decompose")?;
        trace.stage_checks += 1;
    }
    Ok((cert, trace))
}

/// The 52 parameters of a matrix with top row `(a, b)`.
pub fn um2_parametrize(r: &PolyRing, a: &Poly, b: &Poly, seed: u64, opts: &DecomposeOptions) -> Result<Vec<Poly>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::NotUnimodular);
    }
    let (g, s, t) = r.xgcd(a, b)?;
    if !g.is_one() {
        return Err(Error::NotUnimodular);
    }
    // s a + t b = 1
    let alpha = Mat2::new(a.clone(), b.clone(), r.neg(&t), s);
    let (cert, _) = decompose(r, &alpha, seed, opts)?;
    Ok(cert.flatten())
}

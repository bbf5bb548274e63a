//! Irreducibility, prime search in progressions, power residue symbols and
//! root extraction in residue fields `A / p`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{prime_factors_u64, FieldElem};
use crate::poly::{Modulus, Poly, PolyRing};
use crate::rng_for;

/// Steps of the distinct-degree filter run before the full test.
const EARLY_ABORT_STEPS: usize = 24;

/// Admissible degrees of a searched prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreePredicate {
    /// `deg = residue (mod modulus)` and `deg >= min_deg`.
    Congruent {
        residue: u64,
        modulus: u64,
        min_deg: usize,
    },
    Exact(usize),
}

impl DegreePredicate {
    pub fn admits(&self, d: usize) -> bool {
        match *self {
            DegreePredicate::Congruent { residue, modulus, min_deg } => {
                d >= min_deg && (d as u64) % modulus == residue % modulus
            }
            DegreePredicate::Exact(e) => d == e,
        }
    }

    fn first_at_least(&self, lo: usize) -> Option<usize> {
        match *self {
            DegreePredicate::Congruent { residue, modulus, min_deg } => {
                let start = lo.max(min_deg) as u64;
                let r = residue % modulus;
                let d = start + (r + modulus - start % modulus) % modulus;
                Some(d as usize)
            }
            DegreePredicate::Exact(e) => (e >= lo).then_some(e),
        }
    }
}

/// A monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoly {
    poly: Poly,
}

impl PrimePoly {
    pub fn new(ring: &PolyRing, poly: Poly) -> Result<PrimePoly> {
        if !poly.is_monic() || poly.is_constant() || !is_irreducible(ring, &poly)? {
            return Err(Error::NotPrimePoly);
        }
        Ok(PrimePoly { poly })
    }

    pub(crate) fn new_unchecked(poly: Poly) -> PrimePoly {
        PrimePoly { poly }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.size_deg()
    }
}

/// `T^q mod f`, then repeated Frobenius; `gcd(T^{q^i} - T, f) = 1` for the
/// early steps and Rabin's conditions at the end.
pub fn is_irreducible(ring: &PolyRing, f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ZeroOrConstant),
    };
    if n == 1 {
        return Ok(true);
    }
    // a repeated or linear factor shows up cheaply through a zero
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let m = Modulus::new(ring, f)?;
    let q = BigUint::from(ring.field().q());
    let t = Poly::t();
    let divisors: Vec<usize> = prime_factors_u64(n as u64).into_iter().map(|l| n / l as usize).collect();
    let mut x = t.clone();
    for i in 1..=n {
        x = m.pow(ring, &x, &q);
        if i < n && (i <= EARLY_ABORT_STEPS.min(n / 2) || divisors.contains(&i)) {
            let g = ring.gcd(&ring.sub(&x, &t), f)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        if i == n {
            return Ok(x == t);
        }
    }
    unreachable!()
}

/// `(m / p)_d`: zero if `p | m`, else the constant `m^{(q^deg p - 1)/d} mod p`.
pub fn power_residue_symbol(ring: &PolyRing, m: &Poly, prime: &Poly, d: u64) -> Result<FieldElem> {
    let qm1 = (ring.field().q() - 1) as u64;
    if d == 0 || !qm1.is_multiple_of(d) {
        return Err(Error::InvalidD { d, q_minus_1: qm1 });
    }
    let deg = prime.degree().filter(|&x| x >= 1).ok_or(Error::NotPrimePoly)?;
    let md = Modulus::new(ring, prime)?;
    let red = md.reduce(ring, m);
    if red.is_zero() {
        return Ok(FieldElem::ZERO);
    }
    let e = ring.field().unit_group_order(deg) / BigUint::from(d);
    md.pow(ring, &red, &e).constant_part().map_err(|_| Error::NonConstantResidue)
}

/// Result of a prime search.
#[derive(Clone, Debug)]
pub struct DirichletHit {
    pub m: Poly,
    pub prime: PrimePoly,
    pub trials: u64,
}

/// Admissible degrees always tried. Past these the search goes on while
/// fewer than `SEARCH_LEVELS * retry_cap` candidates have been tested, so
/// degrees with only a handful of candidates do not end it early.
pub const SEARCH_LEVELS: usize = 3;

/// Finds `m` with `p = residue + m * step` monic irreducible and of admissible degree.
///
/// Degrees are tried smallest first. At each degree the candidates are
/// enumerated completely when there are at most `retry_cap` of them
/// (starting from a seeded offset), otherwise `retry_cap` random candidates
/// are drawn. `retry_cap` defaults to `64 * degree`.
pub fn dirichlet_search(
    ring: &PolyRing,
    step: &Poly,
    residue: &Poly,
    pred: DegreePredicate,
    seed: u64,
    retry_cap: Option<u64>,
) -> Result<DirichletHit> {
    let sd = step.degree().ok_or(Error::DivisionByZero)?;
    if !ring.gcd(step, residue)?.is_one() {
        return Err(Error::NotCoprime);
    }
    let fld = ring.field();
    let r0 = ring.rem(residue, step)?;
    let shift = ring.exact_div(&ring.sub(&r0, residue), step)?;
    let mut rng = rng_for(seed, 0xd1c);
    let mut trials = 0u64;
    let mut tried = Vec::new();

    // the lone representative below the step degree
    if let Some(d0) = r0.degree() {
        if d0 < sd && d0 >= 1 && pred.admits(d0) && r0.is_monic() {
            trials += 1;
            if is_irreducible(ring, &r0)? {
                return Ok(DirichletHit { m: shift, prime: PrimePoly::new_unchecked(r0), trials });
            }
        }
    }

    let lead = fld.inv(step.lead().expect("nonzero")).expect("nonzero");
    let q = fld.q() as u64;
    let mut level_start = sd.max(1);
    let mut budget = None;
    for level in 0.. {
        let d = match pred.first_at_least(level_start) {
            Some(d) => d,
            None => break,
        };
        let cap = retry_cap.unwrap_or(64 * d as u64).max(1);
        // at least SEARCH_LEVELS degrees, and beyond that until the
        // candidates tried add up to SEARCH_LEVELS full levels
        let total = *budget.get_or_insert(cap * SEARCH_LEVELS as u64);
        if level >= SEARCH_LEVELS && trials >= total {
            break;
        }
        level_start = d + 1;
        tried.push(d);
        let free = d - sd;
        let count = u32::try_from(free).ok().and_then(|f| q.checked_pow(f));
        let candidate = |lower: Vec<FieldElem>| -> Poly {
            let mut c = lower;
            c.push(lead);
            let mp = Poly::from_coeffs(c);
            ring.add(&r0, &ring.mul(&mp, step))
        };
        let check = |mp_lower: Vec<FieldElem>, trials: &mut u64| -> Result<Option<DirichletHit>> {
            *trials += 1;
            let p = candidate(mp_lower);
            if is_irreducible(ring, &p)? {
                let m = ring.add(&ring.exact_div(&ring.sub(&p, &r0), step)?, &shift);
                return Ok(Some(DirichletHit { m, prime: PrimePoly::new_unchecked(p), trials: *trials }));
            }
            Ok(None)
        };
        match count {
            Some(n) if n <= cap => {
                let offset = rng.gen_range(0..n);
                for k in 0..n {
                    let mut idx = (offset + k) % n;
                    let mut lower = Vec::with_capacity(free);
                    for _ in 0..free {
                        lower.push(FieldElem((idx % q) as u32));
                        idx /= q;
                    }
                    if let Some(hit) = check(lower, &mut trials)? {
                        return Ok(hit);
                    }
                }
            }
            _ => {
                for _ in 0..cap {
                    let lower = (0..free).map(|_| fld.random(&mut rng)).collect();
                    if let Some(hit) = check(lower, &mut trials)? {
                        return Ok(hit);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!("no prime at degrees {tried:?} after {trials} trials")))
}

/// Result of the coprime-degree pair search.
#[derive(Clone, Debug)]
pub struct PairHit {
    pub u: Poly,
    pub v: Poly,
    /// `a u + b`, irreducible (monic unless it is the reduced remainder of `b`).
    pub p1: Poly,
    /// `a v + c`, likewise.
    pub p2: Poly,
    pub trials: u64,
}

/// `(q^d - 1)/(q - 1)`.
pub fn norm_exponent(q: u32, d: usize) -> BigUint {
    let q = BigUint::from(q);
    (num_traits::pow(q.clone(), d) - 1u32) / (q - 1u32)
}

/// Minimal positive `h1` (and the matching `h2 >= 1`) with `r h1 - s h2 = 1`.
pub fn bezout_exponents(r: &BigUint, s: &BigUint) -> Result<(BigUint, BigUint)> {
    if r.is_zero() || s.is_zero() || !r.gcd(s).is_one() {
        return Err(Error::NotCoprimeExponents);
    }
    let ri = num_bigint::BigInt::from(r.clone());
    let si = num_bigint::BigInt::from(s.clone());
    let eg = ri.extended_gcd(&si);
    let sb = num_bigint::BigInt::from(s.clone());
    let mut h1 = eg.x.mod_floor(&sb);
    if h1.is_zero() {
        h1 = sb.clone();
    }
    loop {
        let num = &ri * &h1 - 1;
        if num >= sb {
            let h2: num_bigint::BigInt = num / &sb;
            return Ok((h1.to_biguint().expect("positive"), h2.to_biguint().expect("positive")));
        }
        h1 += &sb;
    }
}

/// The exponent `r h1` that the pipeline raises to for a degree pair.
pub fn pair_cost(q: u32, d1: usize, d2: usize) -> BigUint {
    let r = norm_exponent(q, d1);
    let s = norm_exponent(q, d2);
    let (h1, _) = bezout_exponents(&r, &s).expect("coprime degrees give coprime exponents");
    r * h1
}

/// Largest degree offset above `deg a` the pair search considers.
pub const PAIR_SEARCH_SPAN: usize = 10;

/// Finds `u, v` with `a u + b`, `a v + c` irreducible of coprime degrees.
///
/// Candidate degree pairs are ranked by the exponent they force later
/// (`r h1`), then by total degree. For each side the available degrees are
/// the degree of `b mod a` (a single candidate) and every degree from
/// `deg a` up, where the candidates are made monic.
pub fn coprime_degree_pair_search(
    ring: &PolyRing,
    a: &Poly,
    b: &Poly,
    c: &Poly,
    seed: u64,
    retry_cap: Option<u64>,
) -> Result<PairHit> {
    coprime_degree_pair_search_bounded(ring, a, b, c, seed, retry_cap, None)
}

/// As [`coprime_degree_pair_search`], skipping degree pairs whose exponent
/// `r h1` exceeds `max_cost`. If every pair is skipped the error is
/// `DegreeCapExceeded` with the smallest exponent and `max_cost` (both in
/// exponent units, not degrees).
pub fn coprime_degree_pair_search_bounded(
    ring: &PolyRing,
    a: &Poly,
    b: &Poly,
    c: &Poly,
    seed: u64,
    retry_cap: Option<u64>,
    max_cost: Option<u64>,
) -> Result<PairHit> {
    let ad = a.degree().ok_or_else(|| Error::PreconditionViolated("a = 0".into()))?;
    if !ring.gcd(a, b)?.is_one() || !ring.gcd(a, c)?.is_one() {
        return Err(Error::NotCoprime);
    }
    let q = ring.field().q();
    let max_d = ad.max(1) + PAIR_SEARCH_SPAN;
    let side_degrees = |x: &Poly| -> Vec<usize> {
        let mut ds = Vec::new();
        if let Some(rd) = ring.rem(x, a).ok().and_then(|r| r.degree()) {
            if rd >= 1 && rd < ad {
                ds.push(rd);
            }
        }
        ds.extend(ad.max(1)..=max_d);
        ds
    };
    let d1s = side_degrees(b);
    let d2s = side_degrees(c);
    let mut pairs: Vec<(BigUint, usize, usize, usize)> = Vec::new();
    for &d1 in &d1s {
        for &d2 in &d2s {
            if d1.gcd(&d2) == 1 {
                pairs.push((pair_cost(q, d1, d2), d1 + d2, d1, d2));
            }
        }
    }
    pairs.sort();
    // cheapest exponent among the pairs the bound removed
    let mut pruned: Option<(u64, u64)> = None;
    if let Some(limit) = max_cost {
        let lb = BigUint::from(limit);
        if let Some(first_out) = pairs.iter().find(|p| p.0 > lb) {
            pruned = Some((first_out.0.to_u64().unwrap_or(u64::MAX), limit));
        }
        pairs.retain(|p| p.0 <= lb);
    }
    let mut cache1: Vec<(usize, Option<(Poly, Poly)>)> = Vec::new();
    let mut cache2: Vec<(usize, Option<(Poly, Poly)>)> = Vec::new();
    let mut trials = 0u64;
    for (_, _, d1, d2) in pairs {
        let s1 = side_lookup(ring, a, b, d1, seed ^ 0x1111, retry_cap, &mut cache1, &mut trials)?;
        let Some((u, p1)) = s1 else { continue };
        let s2 = side_lookup(ring, a, c, d2, seed ^ 0x2222, retry_cap, &mut cache2, &mut trials)?;
        let Some((v, p2)) = s2 else { continue };
        return Ok(PairHit { u, v, p1, p2, trials });
    }
    if let Some((predicted, cap)) = pruned {
        return Err(Error::DegreeCapExceeded { predicted, cap });
    }
    Err(Error::SearchExhausted(format!("no coprime-degree prime pair up to degree {max_d}")))
}

#[allow(clippy::too_many_arguments)]
fn side_lookup(
    ring: &PolyRing,
    a: &Poly,
    x: &Poly,
    d: usize,
    seed: u64,
    retry_cap: Option<u64>,
    cache: &mut Vec<(usize, Option<(Poly, Poly)>)>,
    trials: &mut u64,
) -> Result<Option<(Poly, Poly)>> {
    if let Some((_, hit)) = cache.iter().find(|(k, _)| *k == d) {
        return Ok(hit.clone());
    }
    let hit = side_search(ring, a, x, d, seed.wrapping_add(d as u64), retry_cap, trials)?;
    cache.push((d, hit.clone()));
    Ok(hit)
}

/// An irreducible `a w + x` of degree exactly `d`, with its multiplier `w`.
fn side_search(
    ring: &PolyRing,
    a: &Poly,
    x: &Poly,
    d: usize,
    seed: u64,
    retry_cap: Option<u64>,
    trials: &mut u64,
) -> Result<Option<(Poly, Poly)>> {
    let ad = a.size_deg();
    let r0 = ring.rem(x, a)?;
    let shift = ring.exact_div(&ring.sub(&r0, x), a)?;
    if d < ad {
        if r0.degree() == Some(d) {
            *trials += 1;
            if is_irreducible(ring, &r0)? {
                return Ok(Some((shift, r0)));
            }
        }
        return Ok(None);
    }
    match dirichlet_search(ring, a, &r0, DegreePredicate::Exact(d), seed, retry_cap) {
        Ok(hit) => {
            *trials += hit.trials;
            let w = ring.add(&hit.m, &shift);
            Ok(Some((w, hit.prime.poly().clone())))
        }
        Err(Error::SearchExhausted(_)) => {
            *trials += retry_cap.unwrap_or(64 * d as u64);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// An `r`-th root of `c` modulo the prime `p`, canonicalized to the root
/// whose coefficient vector (lowest degree first) is smallest.
pub fn amm_root(ring: &PolyRing, c: &Poly, prime: &Poly, r: u64, seed: u64) -> Result<Poly> {
    let deg = prime.degree().filter(|&d| d >= 1).ok_or(Error::NotPrimePoly)?;
    if r == 0 {
        return Err(Error::NotAnRthPower);
    }
    let md = Modulus::new(ring, prime)?;
    let c = md.reduce(ring, c);
    if c.is_zero() {
        return Err(Error::NotAnRthPower);
    }
    let order = ring.field().unit_group_order(deg);
    let rb = BigUint::from(r);
    let r_eff = rb.gcd(&order);
    if !md.pow(ring, &c, &(&order / &r_eff)).is_one() {
        return Err(Error::NotAnRthPower);
    }
    let mut rng = rng_for(seed, 0xa11);
    // x -> x^r is a bijection on the part of r coprime to the group order;
    // the rest is every prime power of r whose prime divides the order
    let r_eff_u = r_eff.to_u64().expect("divides r");
    let mut coprime = r;
    let mut smooth = 1u64;
    for l in prime_factors_u64(r_eff_u) {
        while coprime.is_multiple_of(l) {
            coprime /= l;
            smooth *= l;
        }
    }
    let mut x = c.clone();
    let mut remaining = smooth;
    for l in prime_factors_u64(r_eff_u) {
        while remaining.is_multiple_of(l) {
            remaining /= l;
            x = ell_root(ring, &md, &x, l, &order, remaining, &mut rng)?;
        }
    }
    if coprime > 1 {
        let k = BigUint::from(coprime).modinv(&order).ok_or(Error::NotAnRthPower)?;
        x = md.pow(ring, &x, &k);
    }
    debug_assert_eq!(md.pow(ring, &x, &rb), c);
    // all roots are x times an r_eff-th root of unity
    let zeta = root_of_unity(ring, &md, r_eff_u, &order, &mut rng);
    let mut best = x.clone();
    let mut cur = x;
    for _ in 1..r_eff_u {
        cur = md.mul(ring, &cur, &zeta);
        if lex_less(&cur, &best, deg) {
            best = cur.clone();
        }
    }
    Ok(best)
}

fn lex_less(a: &Poly, b: &Poly, n: usize) -> bool {
    (0..n).map(|i| a.coeff(i)).lt((0..n).map(|i| b.coeff(i)))
}

fn random_unit<R: Rng>(ring: &PolyRing, deg: usize, rng: &mut R) -> Poly {
    loop {
        let p = ring.random(rng, deg - 1);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A primitive `n`-th root of unity in the residue field (`n` divides the group order).
fn root_of_unity<R: Rng>(ring: &PolyRing, md: &Modulus, n: u64, order: &BigUint, rng: &mut R) -> Poly {
    if n == 1 {
        return Poly::one();
    }
    let primes = prime_factors_u64(n);
    let cof = order / BigUint::from(n);
    loop {
        let z = md.pow(ring, &random_unit(ring, md.degree(), rng), &cof);
        if primes.iter().all(|&l| !md.pow(ring, &z, &BigUint::from(n / l)).is_one()) {
            return z;
        }
    }
}

/// An `l`-th root of `c` that is itself a `rest`-th power (so that further
/// roots can be taken). `c` must be an `l * rest`-th power.
fn ell_root<R: Rng>(
    ring: &PolyRing,
    md: &Modulus,
    c: &Poly,
    l: u64,
    order: &BigUint,
    rest: u64,
    rng: &mut R,
) -> Result<Poly> {
    let lb = BigUint::from(l);
    let mut s = 0u32;
    let mut t = order.clone();
    while (&t % &lb).is_zero() {
        t /= &lb;
        s += 1;
    }
    // x0 = c^{l^{-1} mod t}; the error x0^l / c lies in the l-Sylow subgroup
    let u = lb.modinv(&t).unwrap_or_else(BigUint::zero);
    let x0 = if t.is_one() { c.clone() } else { md.pow(ring, c, &u) };
    let x = if s == 0 {
        x0
    } else {
        let z = loop {
            let g = random_unit(ring, md.degree(), rng);
            if !md.pow(ring, &g, &(order / &lb)).is_one() {
                break md.pow(ring, &g, &t);
            }
        };
        let x0l = md.pow(ring, &x0, &lb);
        let cinv = field_inverse(ring, md, c)?;
        let err = md.mul(ring, &x0l, &cinv);
        let j = sylow_log(ring, md, &err, &z, l, s)?;
        if j % l != 0 {
            return Err(Error::NotAnRthPower);
        }
        // x = x0 * z^{-j/l}
        let sylow_order = l.pow(s);
        let e = (sylow_order - (j / l) % sylow_order) % sylow_order;
        md.mul(ring, &x0, &md.pow(ring, &z, &BigUint::from(e)))
    };
    if rest == 1 {
        return Ok(x);
    }
    // pick the branch that is still a rest-th power
    let zeta = root_of_unity(ring, md, l, order, rng);
    let test_exp = order / BigUint::from(rest);
    let mut cand = x;
    for _ in 0..l {
        if md.pow(ring, &cand, &test_exp).is_one() {
            return Ok(cand);
        }
        cand = md.mul(ring, &cand, &zeta);
    }
    Err(Error::NotAnRthPower)
}

/// Discrete log of `h` to base `z` of order `l^s` (Pohlig-Hellman digits).
fn sylow_log(ring: &PolyRing, md: &Modulus, h: &Poly, z: &Poly, l: u64, s: u32) -> Result<u64> {
    let gamma = md.pow(ring, z, &BigUint::from(l.pow(s - 1)));
    let zinv = field_inverse(ring, md, z)?;
    let mut j = 0u64;
    for i in 0..s {
        let cur = md.mul(ring, h, &md.pow(ring, &zinv, &BigUint::from(j)));
        let hi = md.pow(ring, &cur, &BigUint::from(l.pow(s - 1 - i)));
        let mut acc = Poly::one();
        let mut digit = None;
        for dgt in 0..l {
            if acc == hi {
                digit = Some(dgt);
                break;
            }
            acc = md.mul(ring, &acc, &gamma);
        }
        j += digit.ok_or(Error::NotAnRthPower)? * l.pow(i);
    }
    Ok(j)
}

fn field_inverse(ring: &PolyRing, md: &Modulus, x: &Poly) -> Result<Poly> {
    let (g, s, _) = ring.xgcd(x, md.poly())?;
    if !g.is_one() {
        return Err(Error::NotPrimePoly);
    }
    Ok(md.reduce(ring, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(p: u64, n: u32) -> PolyRing {
        PolyRing::new(Field::new(p, n, None).unwrap())
    }

    #[test]
    fn irreducibility_examples() {
        let r3 = ring(3, 1);
        let r5 = ring(5, 1);
        assert!(is_irreducible(&r3, &r3.from_ints(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&r5, &r5.from_ints(&[1, 0, 1])).unwrap());
        for c in 0..5 {
            assert!(is_irreducible(&r5, &r5.from_ints(&[c, 1])).unwrap());
        }
        assert!(matches!(is_irreducible(&r3, &r3.from_i64(2)), Err(Error::ZeroOrConstant)));
    }

    #[test]
    fn dirichlet_examples() {
        let r = ring(3, 1);
        let hit = dirichlet_search(
            &r,
            &Poly::t(),
            &Poly::one(),
            DegreePredicate::Congruent { residue: 1, modulus: 2, min_deg: 1 },
            0,
            None,
        )
        .unwrap();
        assert_eq!(hit.m, Poly::one());
        assert_eq!(hit.prime.poly(), &r.from_ints(&[1, 1]));

        let quad = [r.from_ints(&[1, 0, 1]), r.from_ints(&[2, 1, 1]), r.from_ints(&[2, 2, 1])];
        for seed in 0..10 {
            let hit = dirichlet_search(&r, &Poly::one(), &Poly::zero(), DegreePredicate::Exact(2), seed, None).unwrap();
            assert!(quad.contains(hit.prime.poly()));
        }
        let t2 = r.from_ints(&[0, 0, 1]);
        assert!(matches!(
            dirichlet_search(&r, &Poly::t(), &t2, DegreePredicate::Exact(3), 0, None),
            Err(Error::NotCoprime)
        ));
    }

    #[test]
    fn symbol_examples() {
        let r = ring(3, 1);
        let two = r.from_i64(2);
        assert_eq!(power_residue_symbol(&r, &two, &Poly::t(), 2).unwrap(), r.field().from_i64(2));
        assert_eq!(power_residue_symbol(&r, &Poly::t(), &Poly::t(), 2).unwrap(), FieldElem::ZERO);
        let m = r.from_ints(&[1, 1]);
        let p = r.from_ints(&[1, 0, 1]);
        assert_eq!(power_residue_symbol(&r, &m, &p, 2).unwrap(), r.field().from_i64(2));
        assert!(matches!(power_residue_symbol(&r, &m, &p, 4), Err(Error::InvalidD { .. })));
    }

    #[test]
    fn root_examples() {
        let r = ring(3, 1);
        let p = r.from_ints(&[1, 0, 1]);
        for seed in 0..8 {
            assert_eq!(amm_root(&r, &r.from_i64(2), &p, 2, seed).unwrap(), Poly::t());
        }
        // 1 is a root, but the canonical choice among the fourth roots of unity is T
        let root = amm_root(&r, &Poly::one(), &p, 4, 0).unwrap();
        assert_eq!(r.powmod(&root, &BigUint::from(4u32), &p).unwrap(), Poly::one());
        assert_eq!(root, Poly::t());
        assert!(matches!(amm_root(&r, &r.from_i64(2), &Poly::t(), 2, 0), Err(Error::NotAnRthPower)));
    }

    #[test]
    fn roots_of_composite_order() {
        // the unit group of F_25 has order 24, so every r here shares a Sylow part with it
        let rr = ring(5, 1);
        let prime = rr.from_ints(&[2, 0, 1]); // T^2 + 2 irreducible over F_5
        assert!(is_irreducible(&rr, &prime).unwrap());
        for r_exp in [2u64, 3, 4, 6, 8, 12, 24] {
            for k in 1..10 {
                let base = rr.from_ints(&[k, (k * 3) % 5]);
                if base.is_zero() {
                    continue;
                }
                let c = rr.powmod(&base, &BigUint::from(r_exp), &prime).unwrap();
                let root = amm_root(&rr, &c, &prime, r_exp, k as u64).unwrap();
                assert_eq!(rr.powmod(&root, &BigUint::from(r_exp), &prime).unwrap(), c);
            }
        }
    }

    #[test]
    fn roots_past_the_sylow_part() {
        // units mod T over F_3 have order 2; r = 4 and r = 12 carry 2^2
        let r = ring(3, 1);
        for rr in [4u64, 8, 12] {
            let root = amm_root(&r, &Poly::one(), &Poly::t(), rr, 0).unwrap();
            assert_eq!(r.powmod(&root, &BigUint::from(rr), &Poly::t()).unwrap(), Poly::one());
            assert_eq!(root, Poly::one());
        }
        let r9 = ring(3, 2);
        let p = r9.from_ints(&[1, 1]);
        let c = r9.powmod(&r9.from_ints(&[2]), &BigUint::from(16u32), &p).unwrap();
        let root = amm_root(&r9, &c, &p, 16, 3).unwrap();
        assert_eq!(r9.powmod(&root, &BigUint::from(16u32), &p).unwrap(), c);
    }

    #[test]
    fn bezout_examples() {
        let b = |x: u32| BigUint::from(x);
        assert_eq!(bezout_exponents(&b(1), &b(1)).unwrap(), (b(2), b(1)));
        assert_eq!(bezout_exponents(&b(1), &b(4)).unwrap(), (b(5), b(1)));
        assert!(matches!(bezout_exponents(&b(2), &b(2)), Err(Error::NotCoprimeExponents)));
        assert_eq!(bezout_exponents(&b(40), &b(13)).unwrap(), (b(1), b(3)));
    }

    #[test]
    fn pair_search_examples() {
        let r = ring(3, 1);
        let hit = coprime_degree_pair_search(&r, &Poly::one(), &Poly::zero(), &Poly::zero(), 0, None).unwrap();
        for p in [&hit.p1, &hit.p2] {
            assert!(is_irreducible(&r, p).unwrap());
        }
        assert_eq!(hit.p1, hit.u);
        assert_eq!(hit.p2, hit.v);
        assert_eq!(gcd_deg(&hit), 1);

        let t = Poly::t();
        let hit = coprime_degree_pair_search(&r, &t, &Poly::one(), &r.from_i64(2), 5, None).unwrap();
        assert_eq!(hit.p1, r.add(&r.mul(&t, &hit.u), &Poly::one()));
        assert_eq!(hit.p2, r.add(&r.mul(&t, &hit.v), &r.from_i64(2)));
        assert!(is_irreducible(&r, &hit.p1).unwrap() && is_irreducible(&r, &hit.p2).unwrap());
        assert_eq!(gcd_deg(&hit), 1);

        assert!(coprime_degree_pair_search(&r, &Poly::zero(), &Poly::one(), &Poly::one(), 0, None).is_err());
    }

    fn gcd_deg(h: &PairHit) -> usize {
        h.p1.size_deg().gcd(&h.p2.size_deg())
    }
}

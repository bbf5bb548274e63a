//! The polynomial matrices Psi, Gamma, Lambda and Lambda^T, and the
//! quintuples that index the set `M_Lambda`.

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::poly::{Poly, PolyRing};

/// `[[1 + m1 m2 m3, m1^2 m3], [-m2^2 m3, 1 - m1 m2 m3]]`, unipotent.
pub fn psi_eval(r: &PolyRing, m1: &Poly, m2: &Poly, m3: &Poly) -> Mat2 {
    let w = r.mul(&r.mul(m1, m2), m3);
    Mat2::new(
        r.add(&Poly::one(), &w),
        r.mul(&r.square(m1), m3),
        r.neg(&r.mul(&r.square(m2), m3)),
        r.sub(&Poly::one(), &w),
    )
}

/// A preimage under Psi of a unipotent matrix of determinant one.
///
/// With `a = 1 + w` we have `w^2 = -bc`. Take `m3` a unit multiple of
/// `gcd(b, c)` such that `b / m3` and `-c / m3` are squares; their roots are
/// `m1`, `m2` up to the sign that makes `m1 m2 m3 = w`.
pub fn psi_factor(r: &PolyRing, m: &Mat2) -> Result<(Poly, Poly, Poly)> {
    m.require_sl2(r)?;
    if r.add(&m.a, &m.d) != r.from_i64(2) {
        return Err(Error::NotUnipotent);
    }
    let w = r.sub(&m.a, &Poly::one());
    if m.b.is_zero() && m.c.is_zero() {
        return Ok((Poly::zero(), Poly::zero(), Poly::zero()));
    }
    let g = r.gcd(&m.b, &m.c)?;
    let f = r.field();
    for eps in f.units() {
        let m3 = r.scale(&g, eps);
        let bq = r.exact_div(&m.b, &m3)?;
        let cq = r.exact_div(&r.neg(&m.c), &m3)?;
        let (Some(m1), Some(mut m2)) = (r.sqrt(&bq), r.sqrt(&cq)) else { continue };
        let prod = r.mul(&r.mul(&m1, &m2), &m3);
        if prod != w {
            m2 = r.neg(&m2);
        }
        if r.mul(&r.mul(&m1, &m2), &m3) == w {
            return Ok((m1, m2, m3));
        }
    }
    Err(Error::NoUnitAdjustment)
}

fn gamma_block(r: &PolyRing, x: &Poly, y: &Poly) -> Mat2 {
    let xy = r.mul(x, y);
    Mat2::new(r.sub(&Poly::one(), &xy), r.square(x), r.neg(&r.square(y)), r.add(&Poly::one(), &xy))
}

/// `B(m2, m4) B(m1, m3) B(m2, m4) [[0, -1], [1, 0]]` with
/// `B(x, y) = [[1 - xy, x^2], [-y^2, 1 + xy]]`.
pub fn gamma_eval(r: &PolyRing, m1: &Poly, m2: &Poly, m3: &Poly, m4: &Poly) -> Mat2 {
    let outer = gamma_block(r, m2, m4);
    let inner = gamma_block(r, m1, m3);
    let prod = outer.mul(r, &inner).mul(r, &outer);
    // right multiplication by [[0, -1], [1, 0]] maps columns (x, y) to (y, -x)
    Mat2::new(prod.b.clone(), r.neg(&prod.a), prod.d.clone(), r.neg(&prod.c))
}

/// Parameters with `gamma_eval(params) = alpha alpha^T`: the entries of `alpha` in order.
pub fn gamma_factor(r: &PolyRing, alpha: &Mat2) -> Result<[Poly; 4]> {
    alpha.require_sl2(r)?;
    Ok([alpha.a.clone(), alpha.b.clone(), alpha.c.clone(), alpha.d.clone()])
}

/// `(a, b, c, d, e)` indexing `M1 M2` with `M1 = [[1 + ae, b e^2], [c, 1 + de]]`
/// and `M2 = [[1 + ae, c e^2], [b, 1 + de]]`; valid when `det M1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quintuple {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub e: Poly,
}

impl Quintuple {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly, e: Poly) -> Quintuple {
        Quintuple { a, b, c, d, e }
    }

    pub fn zero() -> Quintuple {
        Quintuple::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero())
    }

    pub fn from_array(p: [Poly; 5]) -> Quintuple {
        let [a, b, c, d, e] = p;
        Quintuple { a, b, c, d, e }
    }

    pub fn to_array(&self) -> [Poly; 5] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone()]
    }

    pub fn is_zero(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d, &self.e].iter().all(|p| p.is_zero())
    }

    pub fn m1(&self, r: &PolyRing) -> Mat2 {
        let e2 = r.square(&self.e);
        Mat2::new(
            r.add(&Poly::one(), &r.mul(&self.a, &self.e)),
            r.mul(&self.b, &e2),
            self.c.clone(),
            r.add(&Poly::one(), &r.mul(&self.d, &self.e)),
        )
    }

    pub fn m2(&self, r: &PolyRing) -> Mat2 {
        let e2 = r.square(&self.e);
        Mat2::new(
            r.add(&Poly::one(), &r.mul(&self.a, &self.e)),
            r.mul(&self.c, &e2),
            self.b.clone(),
            r.add(&Poly::one(), &r.mul(&self.d, &self.e)),
        )
    }

    pub fn is_valid(&self, r: &PolyRing) -> bool {
        self.m1(r).is_sl2(r)
    }

    pub fn require_valid(&self, r: &PolyRing) -> Result<()> {
        if self.is_valid(r) {
            Ok(())
        } else {
            Err(Error::QuintupleNotSL2)
        }
    }

    /// The member `M1 M2` of `M_Lambda`.
    pub fn matrix(&self, r: &PolyRing) -> Mat2 {
        self.m1(r).mul(r, &self.m2(r))
    }

    /// Quintuple of the inverse matrix: `(d, -c, -b, a, e)`, since
    /// `M1' = M2^{-1}` and `M2' = M1^{-1}`.
    pub fn inverse(&self, r: &PolyRing) -> Quintuple {
        Quintuple::new(self.d.clone(), r.neg(&self.c), r.neg(&self.b), self.a.clone(), self.e.clone())
    }

    pub fn max_degree(&self) -> usize {
        [&self.a, &self.b, &self.c, &self.d, &self.e].iter().map(|p| p.size_deg()).max().unwrap_or(0)
    }
}

/// Lambda parameters whose value is the quintuple's matrix `M1 M2`.
///
/// For `e != 0` this is the quintuple itself. For `e = 0` every quintuple is
/// valid but Lambda only agrees with `M1 M2 = (b + c)_{2,1}` when `a + d = 0`,
/// so `(0, b, c, 0, 0)` is returned.
pub fn lambda_from_quintuple(r: &PolyRing, t: &Quintuple) -> Result<Quintuple> {
    t.require_valid(r)?;
    if t.e.is_zero() {
        Ok(Quintuple::new(Poly::zero(), t.b.clone(), t.c.clone(), Poly::zero(), Poly::zero()))
    } else {
        Ok(t.clone())
    }
}

/// `diag(m5, 1) Gamma(1 + m1 m5, m2 m5, m3 m5, 1 + m4 m5) diag(m5, 1)^{-1}`
/// as a polynomial in the five parameters.
///
/// The lower-left entry of the Gamma value is divisible by `m5` as a
/// polynomial, so the conjugation is computed by exact division; at `m5 = 0`
/// the quotient is the limit `m2 + m3 - 2 m1 - 2 m4`.
pub fn lambda_eval(r: &PolyRing, t: &Quintuple) -> Mat2 {
    if t.e.is_zero() {
        let two = r.from_i64(2);
        let c = r.sub(&r.add(&t.b, &t.c), &r.mul(&two, &r.add(&t.a, &t.d)));
        return Mat2::lower(c);
    }
    let one = Poly::one();
    let g = gamma_eval(
        r,
        &r.add(&one, &r.mul(&t.a, &t.e)),
        &r.mul(&t.b, &t.e),
        &r.mul(&t.c, &t.e),
        &r.add(&one, &r.mul(&t.d, &t.e)),
    );
    let c = r.exact_div(&g.c, &t.e).expect("Lambda is a polynomial matrix");
    Mat2::new(g.a, r.mul(&t.e, &g.b), c, g.d)
}

/// `J Lambda J^{-1}`.
pub fn lambda_t_eval(r: &PolyRing, t: &Quintuple) -> Mat2 {
    lambda_eval(r, t).j_conjugate(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> PolyRing {
        PolyRing::new(Field::new(3, 1, None).unwrap())
    }

    #[test]
    fn psi_examples() {
        let r = ring();
        let z = Poly::zero();
        assert!(psi_eval(&r, &z, &z, &z).is_identity());
        let u = Mat2::upper(Poly::one());
        assert_eq!(psi_factor(&r, &u).unwrap(), (Poly::one(), Poly::zero(), Poly::one()));
        let m = Mat2::new(r.from_i64(2), Poly::one(), r.from_i64(-1), Poly::zero());
        let (m1, m2, m3) = psi_factor(&r, &m).unwrap();
        assert_eq!(psi_eval(&r, &m1, &m2, &m3), m);
        assert!(matches!(psi_factor(&r, &Mat2::diag(r.from_i64(2), r.from_i64(2))), Err(Error::NotUnipotent)));
    }

    #[test]
    fn gamma_examples() {
        let r = ring();
        let (o, z) = (Poly::one(), Poly::zero());
        assert!(gamma_eval(&r, &o, &z, &z, &o).is_identity());
        let a = Mat2::upper(o.clone());
        let aat = a.mul(&r, &a.transpose());
        assert_eq!(aat, Mat2::new(r.from_i64(2), o.clone(), o.clone(), o.clone()));
        assert_eq!(gamma_eval(&r, &o, &o, &z, &o), aat);
        let b = Mat2::new(r.from_i64(2), o.clone(), o.clone(), o.clone());
        let bbt = b.mul(&r, &b.transpose());
        assert_eq!(bbt, Mat2::new(r.from_i64(5), r.from_i64(3), r.from_i64(3), r.from_i64(2)));
        let [p1, p2, p3, p4] = gamma_factor(&r, &b).unwrap();
        assert_eq!(gamma_eval(&r, &p1, &p2, &p3, &p4), bbt);
    }

    #[test]
    fn lambda_examples() {
        let r = ring();
        assert!(lambda_eval(&r, &Quintuple::zero()).is_identity());
        let o = Poly::one();
        let t = Quintuple::new(o.clone(), o.clone(), Poly::zero(), o.clone(), o.clone());
        assert_eq!(t.m1(&r), Mat2::new(r.from_i64(2), o.clone(), Poly::zero(), r.from_i64(2)));
        assert_eq!(t.m2(&r), Mat2::new(r.from_i64(2), Poly::zero(), o.clone(), r.from_i64(2)));
        let lam = Mat2::new(r.from_i64(2), r.from_i64(2), r.from_i64(2), o.clone());
        assert_eq!(t.matrix(&r), lam);
        assert_eq!(lambda_eval(&r, &t), lam);
        assert!(lam.is_sl2(&r));
        assert_eq!(lambda_t_eval(&r, &t), lam.j_conjugate(&r));
    }

    #[test]
    fn lambda_at_zero_e_is_the_limit() {
        // with constant a..d, Lambda(a, b, c, d, T) evaluated at T = 0 is Lambda(a, b, c, d, 0)
        let r = PolyRing::new(Field::new(5, 1, None).unwrap());
        let f = r.field();
        for k in 0..200i64 {
            let [a, b, c, d] = [k % 5, (k / 5) % 5, (k / 25) % 5, (k * 7 + 3) % 5].map(|x| r.from_i64(x));
            let at_t = lambda_eval(&r, &Quintuple::new(a.clone(), b.clone(), c.clone(), d.clone(), Poly::t()));
            let at_zero = lambda_eval(&r, &Quintuple::new(a, b, c, d, Poly::zero()));
            let ev = |p: &Poly| Poly::constant(r.eval(p, f.zero()));
            let limit = Mat2::new(ev(&at_t.a), ev(&at_t.b), ev(&at_t.c), ev(&at_t.d));
            assert_eq!(limit, at_zero);
        }
        // off the component a + d = 0 it differs from M1 M2, which the conversion repairs
        let t = Quintuple::new(Poly::t(), r.from_ints(&[1, 2]), r.from_ints(&[0, 0, 1]), r.from_i64(2), Poly::zero());
        assert_ne!(lambda_eval(&r, &t), t.matrix(&r));
        let conv = lambda_from_quintuple(&r, &t).unwrap();
        assert_eq!(lambda_eval(&r, &conv), t.matrix(&r));
        let good = Quintuple::new(Poly::t(), t.b.clone(), t.c.clone(), r.neg(&Poly::t()), Poly::zero());
        assert_eq!(lambda_eval(&r, &good), good.matrix(&r));
    }

    #[test]
    fn inverse_quintuple() {
        let r = ring();
        let t = Quintuple::new(Poly::one(), Poly::one(), Poly::zero(), Poly::one(), Poly::one());
        let inv = t.inverse(&r);
        assert!(inv.is_valid(&r));
        assert_eq!(inv.matrix(&r), t.matrix(&r).inv(&r).unwrap());
    }
}

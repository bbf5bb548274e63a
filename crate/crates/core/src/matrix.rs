//! 2x2 matrices over `F_q[T]`.

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl Mat2 {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(Poly::one(), Poly::zero(), Poly::zero(), Poly::one())
    }

    /// `m_{1,2} = [[1, m], [0, 1]]`.
    pub fn upper(m: Poly) -> Mat2 {
        Mat2::new(Poly::one(), m, Poly::zero(), Poly::one())
    }

    /// `m_{2,1} = [[1, 0], [m, 1]]`.
    pub fn lower(m: Poly) -> Mat2 {
        Mat2::new(Poly::one(), Poly::zero(), m, Poly::one())
    }

    pub fn diag(x: Poly, y: Poly) -> Mat2 {
        Mat2::new(x, Poly::zero(), Poly::zero(), y)
    }

    pub fn entries(&self) -> [&Poly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Largest entry degree (zero entries count as 0).
    pub fn max_degree(&self) -> usize {
        self.entries().iter().map(|e| e.size_deg()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn mul(&self, r: &PolyRing, o: &Mat2) -> Mat2 {
        let e = |x: &Poly, y: &Poly, z: &Poly, w: &Poly| r.add(&r.mul(x, y), &r.mul(z, w));
        Mat2::new(
            e(&self.a, &o.a, &self.b, &o.c),
            e(&self.a, &o.b, &self.b, &o.d),
            e(&self.c, &o.a, &self.d, &o.c),
            e(&self.c, &o.b, &self.d, &o.d),
        )
    }

    /// `self * m_{1,2}`.
    pub fn mul_upper(&self, r: &PolyRing, m: &Poly) -> Mat2 {
        Mat2::new(
            self.a.clone(),
            r.add(&r.mul(&self.a, m), &self.b),
            self.c.clone(),
            r.add(&r.mul(&self.c, m), &self.d),
        )
    }

    /// `self * m_{2,1}`.
    pub fn mul_lower(&self, r: &PolyRing, m: &Poly) -> Mat2 {
        Mat2::new(
            r.add(&self.a, &r.mul(&self.b, m)),
            self.b.clone(),
            r.add(&self.c, &r.mul(&self.d, m)),
            self.d.clone(),
        )
    }

    pub fn scale(&self, r: &PolyRing, s: &Poly) -> Mat2 {
        Mat2::new(r.mul(&self.a, s), r.mul(&self.b, s), r.mul(&self.c, s), r.mul(&self.d, s))
    }

    pub fn neg(&self, r: &PolyRing) -> Mat2 {
        Mat2::new(r.neg(&self.a), r.neg(&self.b), r.neg(&self.c), r.neg(&self.d))
    }

    pub fn det(&self, r: &PolyRing) -> Poly {
        r.sub(&r.mul(&self.a, &self.d), &r.mul(&self.b, &self.c))
    }

    pub fn is_sl2(&self, r: &PolyRing) -> bool {
        self.det(r).is_one()
    }

    /// Inverse; the determinant must be a nonzero constant.
    pub fn inv(&self, r: &PolyRing) -> Result<Mat2> {
        let det = self.det(r);
        let dc = det.constant_part().map_err(|_| Error::NonUnitDeterminant)?;
        let di = r.field().inv(dc).ok_or(Error::NonUnitDeterminant)?;
        let s = Poly::constant(di);
        Ok(Mat2::new(r.mul(&self.d, &s), r.neg(&r.mul(&self.b, &s)), r.neg(&r.mul(&self.c, &s)), r.mul(&self.a, &s)))
    }

    /// `J x J^{-1}` with `J = [[0, 1], [-1, 0]]`, i.e. `[[d, -c], [-b, a]]`.
    pub fn j_conjugate(&self, r: &PolyRing) -> Mat2 {
        Mat2::new(self.d.clone(), r.neg(&self.c), r.neg(&self.b), self.a.clone())
    }

    /// `J = [[0, 1], [-1, 0]]`.
    pub fn j(r: &PolyRing) -> Mat2 {
        Mat2::new(Poly::zero(), Poly::one(), r.from_i64(-1), Poly::zero())
    }

    pub fn require_sl2(&self, r: &PolyRing) -> Result<()> {
        let det = self.det(r);
        if det.is_one() {
            Ok(())
        } else {
            Err(Error::NotSL2(r.format(&det)))
        }
    }

    /// Entries in the text grammar, row-major.
    pub fn format(&self, r: &PolyRing) -> [[String; 2]; 2] {
        [[r.format(&self.a), r.format(&self.b)], [r.format(&self.c), r.format(&self.d)]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> PolyRing {
        PolyRing::new(Field::new(3, 1, None).unwrap())
    }

    #[test]
    fn inverse_of_elementary() {
        let r = ring();
        let m = r.from_ints(&[1, 2]);
        assert_eq!(Mat2::upper(m.clone()).inv(&r).unwrap(), Mat2::upper(r.neg(&m)));
        let bad = Mat2::diag(Poly::t(), Poly::one());
        assert!(matches!(bad.inv(&r), Err(Error::NonUnitDeterminant)));
    }

    #[test]
    fn transpose_of_j() {
        let r = ring();
        assert_eq!(Mat2::j(&r).transpose(), Mat2::j(&r).neg(&r));
    }

    #[test]
    fn j_conjugation() {
        let r = ring();
        let m = r.from_ints(&[0, 1, 1]);
        assert_eq!(Mat2::upper(m.clone()).j_conjugate(&r), Mat2::lower(r.neg(&m)));
        assert_eq!(Mat2::identity().j_conjugate(&r), Mat2::identity());
        let x = Mat2::new(r.from_ints(&[1, 1]), Poly::t(), r.from_ints(&[2, 0, 1]), r.from_i64(2));
        assert_eq!(x.j_conjugate(&r).j_conjugate(&r), x);
        // agrees with the explicit product J x J^{-1}
        let j = Mat2::j(&r);
        let explicit = j.mul(&r, &x).mul(&r, &j.inv(&r).unwrap());
        assert_eq!(x.j_conjugate(&r), explicit);
    }

    #[test]
    fn elementary_shortcuts_match_products() {
        let r = ring();
        let x = Mat2::new(r.from_ints(&[1, 1]), Poly::t(), r.from_ints(&[2, 0, 1]), r.from_i64(2));
        let m = r.from_ints(&[2, 1]);
        assert_eq!(x.mul_upper(&r, &m), x.mul(&r, &Mat2::upper(m.clone())));
        assert_eq!(x.mul_lower(&r, &m), x.mul(&r, &Mat2::lower(m)));
    }
}

//! Alternating products of elementary matrices.
//!
//! `F_r(m1..mr) = m1_{1,2} m2_{2,1} ...` starts with an upper factor.
//! `G_r(m1..mr) = (-m1)_{2,1} (-m2)_{1,2} ...` starts with a lower factor and
//! negates every parameter; it is the `J`-conjugate of `F_r` with the same
//! parameters. Zero parameters are kept because the arity is part of the
//! meaning of a word.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::Mat2;
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F,
    G,
    /// Arbitrary sides, parameters used as given.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    family: Family,
    /// Word parameters; for `G` the matrices use their negatives.
    factors: Vec<(Side, Poly)>,
}

impl Word {
    fn alternating(family: Family, start: Side, params: Vec<Poly>) -> Word {
        let mut side = start;
        let mut factors = Vec::with_capacity(params.len());
        for p in params {
            factors.push((side, p));
            side = side.flip();
        }
        Word { family, factors }
    }

    pub fn f(params: Vec<Poly>) -> Word {
        Word::alternating(Family::F, Side::Upper, params)
    }

    pub fn g(params: Vec<Poly>) -> Word {
        Word::alternating(Family::G, Side::Lower, params)
    }

    pub fn zero(family: Family, arity: usize) -> Word {
        match family {
            Family::G => Word::g(vec![Poly::zero(); arity]),
            _ => Word::f(vec![Poly::zero(); arity]),
        }
    }

    /// A product of elementary matrices with the given sides and matrix parameters.
    pub fn raw(factors: Vec<(Side, Poly)>) -> Word {
        Word { family: Family::Raw, factors }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[(Side, Poly)] {
        &self.factors
    }

    pub fn params(&self) -> Vec<Poly> {
        self.factors.iter().map(|(_, p)| p.clone()).collect()
    }

    /// `(side, parameter of the elementary matrix)` in product order.
    pub fn matrix_factors(&self, r: &PolyRing) -> Vec<(Side, Poly)> {
        self.factors.iter().map(|(s, p)| (*s, if self.family == Family::G { r.neg(p) } else { p.clone() })).collect()
    }

    pub fn eval(&self, r: &PolyRing) -> Mat2 {
        let mut m = Mat2::identity();
        for (side, p) in self.matrix_factors(r) {
            if p.is_zero() {
                continue;
            }
            m = match side {
                Side::Upper => m.mul_upper(r, &p),
                Side::Lower => m.mul_lower(r, &p),
            };
        }
        m
    }

    /// Concatenation, merging the two seam factors when they share a side.
    /// `eval(x.compose(y)) = eval(x) * eval(y)`; an empty word is the identity.
    pub fn compose(&self, r: &PolyRing, other: &Word) -> Result<Word> {
        if self.factors.is_empty() {
            return Ok(other.clone());
        }
        if other.factors.is_empty() {
            return Ok(self.clone());
        }
        if self.family != other.family {
            return Err(Error::FamilyMismatch);
        }
        let mut factors = self.factors.clone();
        let mut rest = other.factors.iter();
        if let (Some(last), Some(first)) = (factors.last_mut(), other.factors.first()) {
            if last.0 == first.0 {
                last.1 = r.add(&last.1, &first.1);
                rest.next();
            }
        }
        factors.extend(rest.cloned());
        Ok(Word { family: self.family, factors })
    }

    /// Appends zero factors, continuing the alternation.
    pub fn pad(&self, target: usize) -> Result<Word> {
        if target < self.arity() {
            return Err(Error::BadArity(format!("cannot pad arity {} to {target}", self.arity())));
        }
        let mut factors = self.factors.clone();
        let mut side = match (factors.last(), self.family) {
            (Some((s, _)), _) => s.flip(),
            (None, Family::G) => Side::Lower,
            (None, _) => Side::Upper,
        };
        while factors.len() < target {
            factors.push((side, Poly::zero()));
            side = side.flip();
        }
        Ok(Word { family: self.family, factors })
    }

    /// Word for the inverse matrix: reversed factors with negated matrix
    /// parameters, renamed as `F` or `G` by its first side.
    pub fn invert(&self, r: &PolyRing) -> Word {
        let mut mf = self.matrix_factors(r);
        mf.reverse();
        let raw: Vec<(Side, Poly)> = mf.into_iter().map(|(s, p)| (s, r.neg(&p))).collect();
        if raw.is_empty() {
            return self.clone();
        }
        Word::from_matrix_factors(r, raw)
    }

    /// Names an alternating list of elementary factors as `F` (upper first) or `G` (lower first).
    pub fn from_matrix_factors(r: &PolyRing, mf: Vec<(Side, Poly)>) -> Word {
        let alternating = mf.windows(2).all(|w| w[0].0 != w[1].0);
        match mf.first() {
            Some((Side::Upper, _)) if alternating => Word { family: Family::F, factors: mf },
            Some((Side::Lower, _)) if alternating => {
                Word { family: Family::G, factors: mf.into_iter().map(|(s, p)| (s, r.neg(&p))).collect() }
            }
            _ => Word::raw(mf),
        }
    }

    /// `J`-conjugate: `F_r <-> G_r` with the same parameters.
    pub fn j_conjugate(&self, r: &PolyRing) -> Word {
        let flipped = || self.factors.iter().map(|(s, p)| (s.flip(), p.clone())).collect();
        match self.family {
            Family::F => Word { family: Family::G, factors: flipped() },
            Family::G => Word { family: Family::F, factors: flipped() },
            Family::Raw => {
                Word { family: Family::Raw, factors: self.factors.iter().map(|(s, p)| (s.flip(), r.neg(p))).collect() }
            }
        }
    }
}

/// `diag(eps, eps^{-1})` as `G_4((eps-1)/eps, -1, 1-eps, 1/eps)` or `F_4(-eps, eps^{-1}-1, 1, eps-1)`.
pub fn epsilon_diag_word(r: &PolyRing, eps: FieldElem, family: Family) -> Result<Word> {
    let f = r.field();
    let inv = f.inv(eps).ok_or(Error::ZeroUnit)?;
    let one = f.one();
    let c = |x: FieldElem| Poly::constant(x);
    Ok(match family {
        Family::G => Word::g(vec![c(f.mul(f.sub(eps, one), inv)), c(f.neg(one)), c(f.sub(one, eps)), c(inv)]),
        _ => Word::f(vec![c(f.neg(eps)), c(f.sub(inv, one)), c(one), c(f.sub(eps, one))]),
    })
}

/// `[[0, -eps], [eps^{-1}, 0]]` as `G_3(-eps^{-1}, eps, -eps^{-1})` or `F_3(-eps, eps^{-1}, -eps)`.
pub fn antidiag_word(r: &PolyRing, eps: FieldElem, family: Family) -> Result<Word> {
    let f = r.field();
    let inv = f.inv(eps).ok_or(Error::ZeroUnit)?;
    let c = |x: FieldElem| Poly::constant(x);
    Ok(match family {
        Family::G => Word::g(vec![c(f.neg(inv)), c(eps), c(f.neg(inv))]),
        _ => Word::f(vec![c(f.neg(eps)), c(inv), c(f.neg(eps))]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> PolyRing {
        PolyRing::new(Field::new(3, 1, None).unwrap())
    }

    #[test]
    fn eval_examples() {
        let r = ring();
        let m1 = r.from_ints(&[1, 1]);
        let m2 = r.from_ints(&[0, 2]);
        assert_eq!(Word::f(vec![m1.clone()]).eval(&r), Mat2::upper(m1.clone()));
        let f2 = Word::f(vec![m1.clone(), m2.clone()]).eval(&r);
        let expect = Mat2::new(r.add(&Poly::one(), &r.mul(&m1, &m2)), m1.clone(), m2.clone(), Poly::one());
        assert_eq!(f2, expect);
        assert_eq!(Word::g(vec![m1.clone()]).eval(&r), Mat2::lower(r.neg(&m1)));
    }

    #[test]
    fn compose_merges_at_seam() {
        let r = ring();
        let p = |k: i64| r.from_ints(&[k, 1]);
        let f3 = Word::f(vec![p(0), p(1), p(2)]);
        let f9 = Word::f((0..9).map(p).collect());
        let f11 = f3.compose(&r, &f9).unwrap();
        assert_eq!(f11.arity(), 11);
        assert_eq!(f11.params()[2], r.add(&p(2), &p(0)));
        assert_eq!(f11.eval(&r), f3.eval(&r).mul(&r, &f9.eval(&r)));

        let f4 = Word::f((0..4).map(p).collect());
        let f5 = Word::f((0..5).map(p).collect());
        assert_eq!(f4.compose(&r, &f5).unwrap().arity(), 9);
        assert_eq!(f4.compose(&r, &Word::f(vec![])).unwrap(), f4);
        assert!(matches!(f4.compose(&r, &Word::g(vec![p(1)])), Err(Error::FamilyMismatch)));
    }

    #[test]
    fn pad_examples() {
        let r = ring();
        let f3 = Word::f(vec![Poly::t(), Poly::one(), r.from_i64(2)]);
        let f5 = f3.pad(5).unwrap();
        assert_eq!(f5.params()[3..], [Poly::zero(), Poly::zero()]);
        assert_eq!(f5.eval(&r), f3.eval(&r));
        assert_eq!(f3.pad(3).unwrap(), f3);
        assert!(f3.pad(2).is_err());
        let g9 = Word::g(vec![Poly::one(); 4]).pad(9).unwrap();
        assert_eq!((g9.family(), g9.arity()), (Family::G, 9));
    }

    #[test]
    fn invert_renames_family() {
        let r = ring();
        let t: Vec<Poly> = (8..=12).map(|k| r.from_ints(&[k, 1])).collect();
        // t8_{21} t9_{12} t10_{21} t11_{12} t12_{21}
        let mf: Vec<(Side, Poly)> = t
            .iter()
            .enumerate()
            .map(|(i, p)| (if i % 2 == 0 { Side::Lower } else { Side::Upper }, p.clone()))
            .collect();
        let w = Word::raw(mf);
        let inv = w.invert(&r);
        let mut rev = t.clone();
        rev.reverse();
        assert_eq!(inv, Word::g(rev));
        assert_eq!(inv.eval(&r), w.eval(&r).inv(&r).unwrap());
        assert_eq!(Word::f(vec![Poly::t()]).invert(&r).eval(&r), Mat2::upper(r.neg(&Poly::t())));
    }

    #[test]
    fn j_conjugate_swaps() {
        let r = ring();
        let w = Word::f(vec![Poly::t()]);
        let g = w.j_conjugate(&r);
        assert_eq!(g, Word::g(vec![Poly::t()]));
        assert_eq!(g.eval(&r), w.eval(&r).j_conjugate(&r));
        assert_eq!(g.j_conjugate(&r), w);
    }

    #[test]
    fn unit_words() {
        let r = ring();
        let f = r.field();
        let two = f.from_i64(2);
        let g = epsilon_diag_word(&r, f.one(), Family::G).unwrap();
        assert_eq!(g, Word::g(vec![Poly::zero(), r.from_i64(-1), Poly::zero(), Poly::one()]));
        assert!(g.eval(&r).is_identity());
        let g2 = epsilon_diag_word(&r, two, Family::G).unwrap();
        assert_eq!(g2.params(), vec![r.from_i64(2); 4]);
        assert_eq!(g2.eval(&r), Mat2::diag(r.from_i64(2), r.from_i64(2)));
        let f2 = epsilon_diag_word(&r, two, Family::F).unwrap();
        assert_eq!(f2.params(), vec![r.from_i64(1); 4]);
        assert_eq!(f2.eval(&r), Mat2::diag(r.from_i64(2), r.from_i64(2)));
        let a = antidiag_word(&r, f.one(), Family::G).unwrap();
        assert_eq!(a.params(), vec![r.from_i64(2), r.from_i64(1), r.from_i64(2)]);
        let anti = Mat2::new(Poly::zero(), r.from_i64(2), Poly::one(), Poly::zero());
        assert_eq!(a.eval(&r), anti);
        assert_eq!(antidiag_word(&r, f.one(), Family::F).unwrap().eval(&r), anti);
        assert_eq!(anti.mul(&r, &anti), Mat2::identity().neg(&r));
        assert!(matches!(epsilon_diag_word(&r, f.zero(), Family::F), Err(Error::ZeroUnit)));
    }
}

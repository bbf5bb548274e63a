//! Seeded random inputs: elementary products and valid quintuples.

use rand::Rng;

use crate::families::Quintuple;
use crate::matrix::Mat2;
use crate::poly::PolyRing;
use crate::words::{Side, Word};

/// Product of `1..=max_factors` elementary matrices with random sides and
/// parameters of degree at most `max_deg`.
pub fn random_elementary_word<R: Rng + ?Sized>(r: &PolyRing, rng: &mut R, max_factors: usize, max_deg: usize) -> Word {
    let k = rng.gen_range(1..=max_factors.max(1));
    let factors = (0..k)
        .map(|_| {
            let side = if rng.gen_bool(0.5) { Side::Upper } else { Side::Lower };
            (side, r.random(rng, max_deg))
        })
        .collect();
    Word::raw(factors)
}

pub fn random_sl2<R: Rng + ?Sized>(r: &PolyRing, rng: &mut R, max_factors: usize, max_deg: usize) -> Mat2 {
    random_elementary_word(r, rng, max_factors, max_deg).eval(r)
}

/// A quintuple with `det M1 = 1`. `M1` is taken as
/// `(y1)_{21} (b e^2)_{12} (y2)_{21}`, which has the required shape for
/// `(a, b, c, d) = (b e y2, b, y1 + y2 + b e^2 y1 y2, b e y1)`.
pub fn random_quintuple<R: Rng + ?Sized>(r: &PolyRing, rng: &mut R, max_deg: usize) -> Quintuple {
    let small = max_deg.min(1);
    let e = r.random(rng, small);
    let b = r.random(rng, max_deg);
    if e.is_zero() {
        // every quintuple with e = 0 is valid
        let a = r.random(rng, max_deg);
        let c = r.random(rng, max_deg);
        let d = r.random(rng, max_deg);
        return Quintuple::new(a, b, c, d, e);
    }
    let y1 = r.random(rng, small);
    let y2 = r.random(rng, small);
    let be = r.mul(&b, &e);
    let c = r.add(&r.add(&y1, &y2), &r.mul(&r.mul(&be, &e), &r.mul(&y1, &y2)));
    Quintuple::new(r.mul(&be, &y2), b, c, r.mul(&be, &y1), e)
}

//! Covering points for ordinary repeats.
//!
//! A repeat is represented by the point `(beg(u'), beg(u''), c)`. It covers
//! from above every point in the box `i' ≤ i ≤ i' + c'/6`, `j' ≤ j ≤ j' + c'/6`,
//! `2c'/3 ≤ c ≤ c'`, and from below the box with `c' ≤ c ≤ 3c'/2`. Fractional
//! edges are compared exactly by cross-multiplying integers.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{inverse_cube, ratio, BigRational, Rational};
use crate::repeats::GappedRepeat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub i: u64,
    pub j: u64,
    pub c: u64,
}

impl Point {
    pub fn new(i: u64, j: u64, c: u64) -> Self {
        Point { i, j, c }
    }
}

pub fn to_point(rep: &GappedRepeat) -> Point {
    Point::new(rep.beg1 as u64, rep.beg2() as u64, rep.copy_len as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverMode {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverBox {
    pub origin: Point,
    pub mode: CoverMode,
}

impl CoverBox {
    pub fn above(origin: Point) -> Self {
        CoverBox {
            origin,
            mode: CoverMode::Above,
        }
    }

    pub fn below(origin: Point) -> Self {
        CoverBox {
            origin,
            mode: CoverMode::Below,
        }
    }

    /// Integer extent of the box along `i` (and, shifted, `j`).
    pub fn side(&self) -> u64 {
        self.origin.c / 6
    }

    pub fn i_range(&self) -> (u64, u64) {
        (self.origin.i, self.origin.i + self.side())
    }

    pub fn j_range(&self) -> (u64, u64) {
        (self.origin.j, self.origin.j + self.side())
    }

    /// Integer copy lengths inside the box.
    pub fn c_range(&self) -> (u64, u64) {
        let c = self.origin.c;
        match self.mode {
            CoverMode::Above => ((2 * c).div_ceil(3), c),
            CoverMode::Below => (c, 3 * c / 2),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        let (i0, i1) = self.i_range();
        let (j0, j1) = self.j_range();
        let (c0, c1) = self.c_range();
        (i0..=i1).flat_map(move |i| {
            (j0..=j1).flat_map(move |j| (c0..=c1).map(move |c| Point::new(i, j, c)))
        })
    }

    /// True iff the two boxes share an integer point.
    pub fn intersects(&self, other: &CoverBox) -> bool {
        let meet = |a: (u64, u64), b: (u64, u64)| a.0.max(b.0) <= a.1.min(b.1);
        meet(self.i_range(), other.i_range())
            && meet(self.j_range(), other.j_range())
            && meet(self.c_range(), other.c_range())
    }
}

pub fn covers(cover: &CoverBox, q: &Point) -> bool {
    let o = &cover.origin;
    let in_i = o.i <= q.i && 6 * (q.i - o.i) <= o.c;
    let in_j = o.j <= q.j && 6 * (q.j - o.j) <= o.c;
    let in_c = match cover.mode {
        CoverMode::Above => 3 * q.c >= 2 * o.c && q.c <= o.c,
        CoverMode::Below => q.c >= o.c && 2 * q.c <= 3 * o.c,
    };
    in_i && in_j && in_c
}

/// `ρ(i, j, c) = 1/c³`.
pub fn weight(q: &Point) -> Rational {
    let c = q.c as i128;
    ratio(1, c * c * c)
}

pub fn weight_sum<'a>(points: impl IntoIterator<Item = &'a Point>) -> BigRational {
    points
        .into_iter()
        .fold(BigRational::zero(), |acc, q| acc + inverse_cube(q.c))
}

/// `Σ_{2c'/3 ≤ c ≤ c'} 1/c³`, exactly.
pub fn tail_weight(c_top: u64) -> BigRational {
    let lo = (2 * c_top).div_ceil(3);
    (lo..=c_top).fold(BigRational::zero(), |acc, c| acc + inverse_cube(c))
}

const SCALE_BITS: u32 = 64;

/// Certified lower bound `L ≤ 32·c'²·tail_weight(c')`, returned as `(L·2⁶⁴)`
/// rounded down, or `None` on overflow.
fn scaled_tail_lower(c_top: u64) -> Option<u128> {
    let lo = (2 * c_top).div_ceil(3);
    let numer = 32u128
        .checked_mul(u128::from(c_top))?
        .checked_mul(u128::from(c_top))?
        .checked_mul(1u128 << SCALE_BITS)?;
    let mut total = 0u128;
    for c in lo..=c_top {
        let cube = u128::from(c)
            .checked_mul(u128::from(c))?
            .checked_mul(u128::from(c))?;
        total = total.checked_add(numer / cube)?;
    }
    Some(total)
}

/// Decides `tail_weight(c') ≥ 5/(32c'²)` exactly. A fixed-point lower bound
/// settles every case met in practice; the big-rational sum is the fallback.
pub fn tail_weight_holds(c_top: u64) -> bool {
    if c_top == 0 {
        return true;
    }
    if let Some(lower) = scaled_tail_lower(c_top) {
        if lower >= 5u128 << SCALE_BITS {
            return true;
        }
    }
    tail_weight_holds_exact(c_top)
}

pub fn tail_weight_holds_exact(c_top: u64) -> bool {
    let c = BigInt::from(c_top);
    tail_weight(c_top) >= BigRational::new(BigInt::from(5), BigInt::from(32) * &c * &c)
}

/// True iff the tail-weight inequality holds for every `c'` in `1..=cmax`.
pub fn tail_weight_lower_bound_check(cmax: u64) -> bool {
    (1..=cmax).all(tail_weight_holds)
}

/// Certified lower bound on `tail_weight(c') / (5/(32c'²))`, as an exact rational.
pub fn tail_weight_margin(c_top: u64) -> Rational {
    match scaled_tail_lower(c_top) {
        Some(lower) => ratio(lower as i128, 5i128 << SCALE_BITS),
        None => {
            let c = BigInt::from(c_top);
            let exact = tail_weight(c_top) * BigRational::from_integer(BigInt::from(32) * &c * &c)
                / BigRational::from_integer(BigInt::from(5));
            // floor to 1/2^32 so the value fits
            let scaled = (exact * BigRational::from_integer(BigInt::one() << 32u32)).floor();
            ratio(
                scaled.to_integer().to_i128().unwrap_or(i128::MAX),
                1i128 << 32,
            )
        }
    }
}

/// `ρ(V^a[σ])` for a repeat with copy length `c'`: `(⌊c'/6⌋+1)²` cells per
/// copy length.
pub fn above_box_weight(c_top: u64) -> BigRational {
    let side = BigInt::from(c_top / 6 + 1);
    tail_weight(c_top) * BigRational::from_integer(&side * &side)
}

/// Decides `ρ(V^a[σ]) > 5/1152` for copy length `c'`.
pub fn above_box_weight_exceeds(c_top: u64) -> bool {
    if c_top == 0 {
        return false;
    }
    let side = u128::from(c_top / 6 + 1);
    let certified = scaled_tail_lower(c_top).and_then(|lower| {
        let lhs = 1152u128.checked_mul(side * side)?.checked_mul(lower)?;
        // 1152·side²·L > 5·32c'²·2⁶⁴
        let rhs = 160u128
            .checked_mul(u128::from(c_top) * u128::from(c_top))?
            .checked_mul(1u128 << SCALE_BITS)?;
        Some(lhs > rhs)
    });
    if certified == Some(true) {
        return true;
    }
    above_box_weight(c_top) > BigRational::new(BigInt::from(5), BigInt::from(1152))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn point_examples() {
        assert_eq!(to_point(&GappedRepeat::new(1, 2, 3)), Point::new(1, 4, 2));
        assert_eq!(to_point(&GappedRepeat::new(2, 1, 2)), Point::new(2, 4, 1));
    }

    #[test]
    fn cover_examples() {
        let o = Point::new(1, 10, 6);
        assert!(covers(&CoverBox::above(o), &Point::new(2, 11, 4)));
        assert!(!covers(&CoverBox::above(o), &Point::new(3, 10, 6)));
        assert!(covers(&CoverBox::below(o), &Point::new(1, 10, 9)));
        assert!(!covers(&CoverBox::below(o), &Point::new(1, 10, 10)));
        assert!(!covers(&CoverBox::above(o), &Point::new(1, 10, 3)));
        assert!(!covers(&CoverBox::above(o), &Point::new(0, 10, 6)));
    }

    #[test]
    fn boxes_cover_their_origin() {
        for c in 1..50 {
            let o = Point::new(5, 20, c);
            assert!(covers(&CoverBox::above(o), &o));
            assert!(covers(&CoverBox::below(o), &o));
        }
    }

    #[test]
    fn box_points_agree_with_predicate() {
        for c in 1..=13 {
            for mode in [CoverMode::Above, CoverMode::Below] {
                let b = CoverBox {
                    origin: Point::new(3, 9, c),
                    mode,
                };
                let listed: Vec<Point> = b.points().collect();
                let mut scanned = Vec::new();
                for i in 0..8 {
                    for j in 6..14 {
                        for cc in 1..25 {
                            let q = Point::new(i, j, cc);
                            if covers(&b, &q) {
                                scanned.push(q);
                            }
                        }
                    }
                }
                assert_eq!(listed, scanned);
            }
        }
    }

    #[test]
    fn intersection_matches_point_scan() {
        let origins = [
            (1, 10, 6),
            (2, 11, 7),
            (1, 12, 12),
            (3, 10, 4),
            (2, 10, 9),
            (9, 30, 6),
        ];
        for &(a, b, c) in &origins {
            for &(d, e, f) in &origins {
                for mode in [CoverMode::Above, CoverMode::Below] {
                    let x = CoverBox {
                        origin: Point::new(a, b, c),
                        mode,
                    };
                    let y = CoverBox {
                        origin: Point::new(d, e, f),
                        mode,
                    };
                    let shared = x.points().any(|q| covers(&y, &q));
                    assert_eq!(x.intersects(&y), shared);
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&Point::new(5, 9, 2)), ratio(1, 8));
        let pts = [Point::new(1, 2, 1), Point::new(1, 3, 2)];
        assert_eq!(weight_sum(&pts), crate::rational::to_big(&ratio(9, 8)));
        let unit: Vec<Point> = CoverBox::above(Point::new(4, 8, 1)).points().collect();
        assert_eq!(unit, vec![Point::new(4, 8, 1)]);
        assert_eq!(weight(&unit[0]), int(1));
    }

    #[test]
    fn tail_examples() {
        assert!(tail_weight_lower_bound_check(1));
        assert!(tail_weight_lower_bound_check(3));
        assert_eq!(
            tail_weight(3),
            crate::rational::to_big(&(ratio(1, 8) + ratio(1, 27)))
        );
        for c in 1..200 {
            assert_eq!(tail_weight_holds(c), tail_weight_holds_exact(c));
        }
        assert!(tail_weight_margin(1) >= int(1));
    }

    #[test]
    fn box_weight_matches_materialised_sum() {
        for c in 1..=20 {
            let b = CoverBox::above(Point::new(1, 1, c));
            let pts: Vec<Point> = b.points().collect();
            assert_eq!(weight_sum(&pts), above_box_weight(c));
            assert!(above_box_weight_exceeds(c));
        }
    }
}

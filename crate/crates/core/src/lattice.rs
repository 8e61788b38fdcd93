//! Unimodular lattices `Λ_{a,b}`, the horocycle shear and slope-ordered
//! primitive vectors.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bcz::{return_time_exact, RationalPoint};
use crate::numerics::{floor, BigInt, BigRational};
use crate::{Error, Result};

pub type Vector = (BigRational, BigRational);

/// A rank-two lattice spanned by `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    pub u: Vector,
    pub v: Vector,
}

fn det(u: &Vector, v: &Vector) -> BigRational {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn dot(u: &Vector, v: &Vector) -> BigRational {
    &u.0 * &v.0 + &u.1 * &v.1
}

fn sub_mul(u: &Vector, m: &BigRational, v: &Vector) -> Vector {
    (&u.0 - m * &v.0, &u.1 - m * &v.1)
}

impl Lattice2 {
    /// Builds a lattice, flipping `v` if needed so the determinant is positive.
    pub fn new(u: Vector, v: Vector) -> Result<Self> {
        let d = det(&u, &v);
        if d.is_zero() {
            return Err(Error::SingularBasis);
        }
        let v = if d.is_negative() { (-v.0, -v.1) } else { v };
        Ok(Self { u, v })
    }

    pub fn integer() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        Self {
            u: (o.clone(), z.clone()),
            v: (z, o),
        }
    }

    pub fn determinant(&self) -> BigRational {
        det(&self.u, &self.v)
    }

    /// `i·u + j·v`.
    pub fn point(&self, i: &BigInt, j: &BigInt) -> Vector {
        let (i, j) = (BigRational::from_integer(i.clone()), BigRational::from_integer(j.clone()));
        (&i * &self.u.0 + &j * &self.v.0, &i * &self.u.1 + &j * &self.v.1)
    }
}

/// `Λ_{a,b}`, spanned by `(a, 0)` and `(b, 1/a)`.
pub fn lattice_of_point(pt: &RationalPoint) -> Lattice2 {
    let (a, b) = (pt.a(), pt.b());
    Lattice2 {
        u: (a.clone(), BigRational::zero()),
        v: (b, a.recip()),
    }
}

/// Applies the shear `(x, y) ↦ (x, y - t·x)`.
pub fn horocycle(l: &Lattice2, t: &BigRational) -> Lattice2 {
    let shear = |w: &Vector| (w.0.clone(), &w.1 - t * &w.0);
    Lattice2 {
        u: shear(&l.u),
        v: shear(&l.v),
    }
}

/// Whether the two bases span the same lattice.
pub fn lattice_eq(l1: &Lattice2, l2: &Lattice2) -> Result<bool> {
    let d2 = l2.determinant();
    if d2.is_zero() || l1.determinant().is_zero() {
        return Err(Error::SingularBasis);
    }
    // coordinates of l1's basis vectors in l2's basis, by Cramer's rule
    let coords = |w: &Vector| (det(w, &l2.v) / &d2, det(&l2.u, w) / &d2);
    let (m11, m21) = coords(&l1.u);
    let (m12, m22) = coords(&l1.v);
    let integral = [&m11, &m12, &m21, &m22].iter().all(|m| m.is_integer());
    let m_det = &m11 * &m22 - &m12 * &m21;
    Ok(integral && m_det.abs().is_one())
}

/// Checks `Λ_{T(a,b)} = h_{R(a,b)} Λ_{a,b}`.
pub fn first_return_check(pt: &RationalPoint) -> Result<bool> {
    let t = return_time_exact(&pt.a(), &pt.b());
    lattice_eq(
        &lattice_of_point(&pt.step()),
        &horocycle(&lattice_of_point(pt), &t),
    )
}

/// Default candidate budget for [`primitive_points_by_slope`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 50_000_000;

/// The `m` primitive vectors of `Λ_{a,b}` in the strip `0 < x ≤ 1, y > 0`
/// with the smallest slopes `y/x`, in increasing slope order.
pub fn primitive_points_by_slope(
    pt: &RationalPoint,
    m: usize,
    budget: u64,
) -> Result<Vec<Vector>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    // u(a, 0) + v(b, 1/a) = (w/D, vD/A) with w = uA + vB; slope ∝ v/w
    let (a, b, d) = pt.scaled();
    let mut best: Vec<(BigInt, BigInt)> = Vec::with_capacity(m + 1);
    let mut examined = 0u64;
    let mut v = BigInt::one();
    loop {
        if best.len() == m {
            let (vm, wm) = &best[m - 1];
            // every vector in row v has slope at least v/D
            if &v * wm > vm * d {
                break;
            }
        }
        let u_lo: BigInt = (-(&v * b)).div_floor(a) + 1;
        let u_hi: BigInt = (d - &v * b).div_floor(a);
        let mut u = u_lo;
        while u <= u_hi {
            examined += 1;
            if examined > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            if u.gcd(&v).is_one() {
                let w = &u * a + &v * b;
                let pos = best.partition_point(|(vi, wi)| vi * &w < &v * wi);
                if pos < m {
                    best.insert(pos, (v.clone(), w));
                    best.truncate(m);
                }
            }
            u += 1;
        }
        v += 1;
    }
    let dq = BigRational::from_integer(d.clone());
    let aq = BigRational::from_integer(a.clone());
    Ok(best
        .into_iter()
        .map(|(v, w)| (BigRational::new(w, d.clone()), BigRational::from_integer(v) * &dq / &aq))
        .collect())
}

/// Shortest vector data for `α₁(Λ) = 1/min ‖v‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct Alpha1 {
    pub shortest: Vector,
    pub norm_sq: BigRational,
    pub value: f64,
}

/// Lagrange–Gauss reduction; returns the reduced basis, shortest first.
pub fn gauss_reduce(l: &Lattice2) -> (Vector, Vector) {
    let (mut b1, mut b2) = (l.u.clone(), l.v.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    loop {
        if dot(&b2, &b2) < dot(&b1, &b1) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let mu = floor(&(dot(&b1, &b2) / dot(&b1, &b1) + &half));
        if mu.is_zero() {
            return (b1, b2);
        }
        b2 = sub_mul(&b2, &BigRational::from_integer(mu), &b1);
    }
}

pub fn alpha1(l: &Lattice2) -> Alpha1 {
    let (b1, _) = gauss_reduce(l);
    let norm_sq = dot(&b1, &b1);
    let value = 1.0 / norm_sq.to_f64().unwrap_or(f64::NAN).sqrt();
    Alpha1 {
        shortest: b1,
        norm_sq,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, ratio};

    fn rp(a: (i64, i64), b: (i64, i64)) -> RationalPoint {
        RationalPoint::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    fn vec2(x: BigRational, y: BigRational) -> Vector {
        (x, y)
    }

    #[test]
    fn lattice_examples() {
        let z = lattice_of_point(&rp((1, 1), (1, 1)));
        assert_eq!(z, Lattice2::new(vec2(int(1), int(0)), vec2(int(1), int(1))).unwrap());
        assert!(lattice_eq(&z, &Lattice2::integer()).unwrap());
        let half = lattice_of_point(&rp((1, 2), (1, 1)));
        assert_eq!(half.u, vec2(ratio(1, 2), int(0)));
        assert_eq!(half.v, vec2(int(1), int(2)));
        assert_eq!(half.determinant(), int(1));
        assert!(!lattice_eq(&half, &Lattice2::integer()).unwrap());
        let third = lattice_of_point(&rp((1, 3), (1, 1)));
        assert_eq!(third.v, vec2(int(1), int(3)));
        assert!(lattice_eq(&third, &third).unwrap());
        let z2 = Lattice2::new(vec2(int(1), int(1)), vec2(int(0), int(1))).unwrap();
        assert!(lattice_eq(&z2, &Lattice2::integer()).unwrap());
    }

    #[test]
    fn horocycle_examples() {
        let z = Lattice2::integer();
        assert_eq!(horocycle(&z, &int(0)), z);
        let sheared = horocycle(&z, &int(1));
        assert_eq!(sheared.u, vec2(int(1), int(-1)));
        assert!(lattice_eq(&sheared, &z).unwrap());
        let third = lattice_of_point(&rp((1, 3), (1, 1)));
        let image = lattice_of_point(&rp((1, 1), (2, 3)));
        assert!(lattice_eq(&horocycle(&third, &int(3)), &image).unwrap());
        let l = horocycle(&third, &ratio(2, 7));
        assert_eq!(horocycle(&l, &ratio(5, 7)), horocycle(&third, &int(1)));
    }

    #[test]
    fn singular_bases() {
        let bad = Lattice2 {
            u: vec2(int(1), int(2)),
            v: vec2(int(2), int(4)),
        };
        assert_eq!(lattice_eq(&bad, &Lattice2::integer()), Err(Error::SingularBasis));
        assert!(Lattice2::new(bad.u, bad.v).is_err());
    }

    #[test]
    fn first_return_examples() {
        for pt in [rp((1, 1), (1, 1)), rp((1, 3), (1, 1)), rp((3, 5), (4, 5))] {
            assert!(first_return_check(&pt).unwrap());
        }
        // a wrong return time fails
        let pt = rp((1, 3), (1, 1));
        let wrong = horocycle(&lattice_of_point(&pt), &int(2));
        assert!(!lattice_eq(&lattice_of_point(&pt.step()), &wrong).unwrap());
    }

    #[test]
    fn slope_order_examples() {
        let xs = |pt, m| -> Vec<BigRational> {
            primitive_points_by_slope(&pt, m, DEFAULT_ENUMERATION_BUDGET)
                .unwrap()
                .into_iter()
                .map(|p| p.0)
                .collect()
        };
        assert_eq!(xs(rp((1, 3), (1, 1)), 4), [int(1), ratio(2, 3), int(1), ratio(1, 3)]);
        let pts = primitive_points_by_slope(&rp((1, 1), (1, 1)), 2, 100).unwrap();
        assert_eq!(pts, [vec2(int(1), int(1)), vec2(int(1), int(2))]);
        assert!(xs(rp((2, 5), (4, 5)), 0).is_empty());
        assert!(matches!(
            primitive_points_by_slope(&rp((1, 3), (1, 1)), 40, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn alpha1_examples() {
        assert_eq!(alpha1(&Lattice2::integer()).norm_sq, int(1));
        let half = alpha1(&lattice_of_point(&rp((1, 2), (1, 1))));
        assert_eq!(half.norm_sq, ratio(1, 4));
        assert_eq!(half.value, 2.0);
        assert_eq!(alpha1(&lattice_of_point(&rp((1, 1), (1, 1)))).value, 1.0);
    }
}

//! Exact arithmetic in the Eisenstein and Gaussian integer rings and the
//! orientation-preserving motions of the plane that preserve them.
//!
//! A point is stored by its two integer coordinates in the ring basis
//! `(1, ζ)` with `ζ = e^{iπ/3}` (Eisenstein) or `(1, i)` (Gaussian). Rotations
//! are integers modulo the lattice order `N` (6 or 4), so no rounding ever
//! takes place here. The coefficient type is generic so the same code runs
//! over machine integers and arbitrary precision integers.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use num_traits::Signed;

/// Integer coefficient type for lattice coordinates.
pub trait Coefficient:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + Hash + From<i32>
{
}

impl<T> Coefficient for T where
    T: Integer + Signed + Clone + fmt::Debug + fmt::Display + Hash + From<i32>
{
}

/// The two rings of integers whose unit groups realize the rotational symmetry
/// of the regular tilings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    /// `Z[ζ]`, `ζ` a primitive sixth root of unity; triangular and hexagonal tilings.
    Eisenstein,
    /// `Z[i]`; the square tiling.
    Gaussian,
}

impl Lattice {
    /// Order of the rotation group of the lattice.
    pub fn order(self) -> u32 {
        match self {
            Lattice::Eisenstein => 6,
            Lattice::Gaussian => 4,
        }
    }

    /// Multiplicative unit `ζ^k` (resp. `i^k`) as a point.
    pub fn unit<T: Coefficient>(self, k: i64) -> LatticePoint<T> {
        let n = self.order() as i64;
        let k = k.rem_euclid(n);
        let (a, b) = match (self, k) {
            (Lattice::Eisenstein, 0) => (1, 0),
            (Lattice::Eisenstein, 1) => (0, 1),
            (Lattice::Eisenstein, 2) => (-1, 1),
            (Lattice::Eisenstein, 3) => (-1, 0),
            (Lattice::Eisenstein, 4) => (0, -1),
            (Lattice::Eisenstein, _) => (1, -1),
            (Lattice::Gaussian, 0) => (1, 0),
            (Lattice::Gaussian, 1) => (0, 1),
            (Lattice::Gaussian, 2) => (-1, 0),
            (Lattice::Gaussian, _) => (0, -1),
        };
        LatticePoint::new(self, T::from(a), T::from(b))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Eisenstein => "eisenstein",
            Lattice::Gaussian => "gaussian",
        })
    }
}

/// The point `a + b·ζ` (Eisenstein) or `a + b·i` (Gaussian).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint<T> {
    pub lattice: Lattice,
    pub a: T,
    pub b: T,
}

impl<T: Coefficient> LatticePoint<T> {
    pub fn new(lattice: Lattice, a: T, b: T) -> Self {
        LatticePoint { lattice, a, b }
    }

    pub fn zero(lattice: Lattice) -> Self {
        Self::new(lattice, T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplication by the generating unit (`ζ` or `i`).
    pub fn rotate_once(&self) -> Self {
        match self.lattice {
            // ζ² = ζ − 1
            Lattice::Eisenstein => Self::new(
                self.lattice,
                -self.b.clone(),
                self.a.clone() + self.b.clone(),
            ),
            Lattice::Gaussian => Self::new(self.lattice, -self.b.clone(), self.a.clone()),
        }
    }

    /// Multiplication by `ζ^k` (`i^k`); `k` is taken modulo the lattice order.
    pub fn rotate(&self, k: i64) -> Self {
        let k = k.rem_euclid(self.lattice.order() as i64);
        let mut p = self.clone();
        for _ in 0..k {
            p = p.rotate_once();
        }
        p
    }

    /// Ring product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.lattice, other.lattice);
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        let ac = a.clone() * c.clone();
        let bd = b.clone() * d.clone();
        let cross = a.clone() * d.clone() + b.clone() * c.clone();
        match self.lattice {
            Lattice::Eisenstein => Self::new(self.lattice, ac - bd.clone(), cross + bd),
            Lattice::Gaussian => Self::new(self.lattice, ac - bd, cross),
        }
    }

    /// Field norm `|p|²`; always a nonnegative integer.
    pub fn norm(&self) -> T {
        let (a, b) = (self.a.clone(), self.b.clone());
        match self.lattice {
            Lattice::Eisenstein => a.clone() * a.clone() + a * b.clone() + b.clone() * b,
            Lattice::Gaussian => a.clone() * a + b.clone() * b,
        }
    }

    /// Is this a unit of the ring (a point at distance one from the origin)?
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// If this point is a unit `ζ^k`, returns `k`.
    pub fn unit_exponent(&self) -> Option<u32> {
        (0..self.lattice.order()).find(|&k| self.lattice.unit::<T>(k as i64) == *self)
    }

    /// Representative of the orbit `{ζ^k·p}` with lexicographically least `(a, b)`.
    pub fn canonical_rotation(&self) -> Self {
        (0..self.lattice.order() as i64)
            .map(|k| self.rotate(k))
            .min_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)))
            .expect("lattice order is positive")
    }

    /// Converts coefficients to another integer type.
    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> LatticePoint<U> {
        LatticePoint::new(self.lattice, f(&self.a), f(&self.b))
    }
}

impl<T: Coefficient> std::ops::Add for LatticePoint<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.lattice, rhs.lattice);
        LatticePoint::new(self.lattice, self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Coefficient> std::ops::Sub for LatticePoint<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.lattice, rhs.lattice);
        LatticePoint::new(self.lattice, self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Coefficient> std::ops::Neg for LatticePoint<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LatticePoint::new(self.lattice, -self.a, -self.b)
    }
}

impl<T: Coefficient> fmt::Display for LatticePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = match self.lattice {
            Lattice::Eisenstein => "w",
            Lattice::Gaussian => "i",
        };
        write!(f, "({}, {}){}", self.a, self.b, unit)
    }
}

/// An orientation-preserving motion `p ↦ ζ^rot·p + trans` of the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeMotion<T> {
    pub rot: u32,
    pub trans: LatticePoint<T>,
}

impl<T: Coefficient> LatticeMotion<T> {
    pub fn identity(lattice: Lattice) -> Self {
        LatticeMotion {
            rot: 0,
            trans: LatticePoint::zero(lattice),
        }
    }

    pub fn new(rot: i64, trans: LatticePoint<T>) -> Self {
        let n = trans.lattice.order() as i64;
        LatticeMotion {
            rot: rot.rem_euclid(n) as u32,
            trans,
        }
    }

    pub fn translation(trans: LatticePoint<T>) -> Self {
        Self::new(0, trans)
    }

    pub fn lattice(&self) -> Lattice {
        self.trans.lattice
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && self.trans.is_zero()
    }

    pub fn is_translation(&self) -> bool {
        self.rot == 0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        LatticeMotion::new(
            self.rot as i64 + other.rot as i64,
            self.trans.clone() + other.trans.rotate(self.rot as i64),
        )
    }

    pub fn inverse(&self) -> Self {
        let back = -(self.rot as i64);
        LatticeMotion::new(back, -self.trans.rotate(back))
    }

    pub fn apply(&self, p: &LatticePoint<T>) -> LatticePoint<T> {
        p.rotate(self.rot as i64) + self.trans.clone()
    }

    /// Rotates a direction (a unit) without translating it.
    pub fn apply_linear(&self, v: &LatticePoint<T>) -> LatticePoint<T> {
        v.rotate(self.rot as i64)
    }

    /// Group commutator `a∘b∘a⁻¹∘b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> LatticeMotion<U> {
        LatticeMotion {
            rot: self.rot,
            trans: self.trans.map_coefficients(f),
        }
    }
}

impl<T: Coefficient> fmt::Display for LatticeMotion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rot {}/{} trans {}",
            self.rot,
            self.lattice().order(),
            self.trans
        )
    }
}

/// A basis `(u, v)` of a full-rank sublattice, in ring coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis<T> {
    pub lattice: Lattice,
    pub u: LatticePoint<T>,
    pub v: LatticePoint<T>,
}

impl<T: Coefficient> LatticeBasis<T> {
    pub fn new(u: LatticePoint<T>, v: LatticePoint<T>) -> Self {
        debug_assert_eq!(u.lattice, v.lattice);
        LatticeBasis {
            lattice: u.lattice,
            u,
            v,
        }
    }

    /// Signed determinant of `(u, v)` in ring coordinates.
    pub fn det(&self) -> T {
        self.u.a.clone() * self.v.b.clone() - self.u.b.clone() * self.v.a.clone()
    }

    /// Index of the spanned sublattice in the full ring.
    pub fn index(&self) -> T {
        self.det().abs()
    }

    /// Hermite normal form: `u = (a, 0)`, `v = (b, c)` with `a, c > 0` and
    /// `0 ≤ b < a`. Two bases span the same sublattice iff their normal forms agree.
    pub fn hermite(&self) -> Option<Self> {
        hermite_basis(self.lattice, &[self.u.clone(), self.v.clone()])
    }

    /// Is `p` in the span of the basis?
    pub fn contains(&self, p: &LatticePoint<T>) -> bool {
        match self.hermite() {
            Some(h) => {
                let (a, b, c) = (h.u.a.clone(), h.v.a.clone(), h.v.b.clone());
                if !p.b.is_multiple_of(&c) {
                    return false;
                }
                let k = p.b.clone() / c;
                (p.a.clone() - k * b).is_multiple_of(&a)
            }
            None => false,
        }
    }

    /// Reduces `p` to its representative `(x, y)` with `0 ≤ x < a`, `0 ≤ y < c`.
    pub fn reduce(&self, p: &LatticePoint<T>) -> Option<LatticePoint<T>> {
        let h = self.hermite()?;
        let (a, b, c) = (h.u.a.clone(), h.v.a.clone(), h.v.b.clone());
        let k = p.b.div_floor(&c);
        let y = p.b.clone() - k.clone() * c;
        let x = (p.a.clone() - k * b).mod_floor(&a);
        Some(LatticePoint::new(self.lattice, x, y))
    }
}

/// Hermite normal form basis of the Z-span of `points`, or `None` if they do
/// not span a rank-two lattice.
pub fn hermite_basis<T: Coefficient>(
    lattice: Lattice,
    points: &[LatticePoint<T>],
) -> Option<LatticeBasis<T>> {
    // Row-reduce on the `b` coordinate first to get (b', c) with c = gcd of b's.
    let mut rows: Vec<(T, T)> = points
        .iter()
        .map(|p| (p.a.clone(), p.b.clone()))
        .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
        .collect();
    let mut pivot: Option<(T, T)> = None;
    let mut rest: Vec<T> = Vec::new();
    for (a, b) in rows.drain(..) {
        let (mut x, mut y) = (a, b);
        match pivot.take() {
            None => {
                if y.is_zero() {
                    rest.push(x);
                } else {
                    pivot = Some((x, y));
                }
            }
            Some((mut px, mut py)) => {
                // Euclid on the second coordinate.
                while !y.is_zero() {
                    let q = py.div_floor(&y);
                    let nx = px.clone() - q.clone() * x.clone();
                    let ny = py.clone() - q * y.clone();
                    px = x;
                    py = y;
                    x = nx;
                    y = ny;
                }
                pivot = Some((px, py));
                if !x.is_zero() {
                    rest.push(x);
                }
            }
        }
    }
    let (mut pb, mut pc) = pivot?;
    let mut a = T::zero();
    for x in rest {
        a = a.gcd(&x);
    }
    if a.is_zero() {
        return None;
    }
    if pc.is_negative() {
        pb = -pb;
        pc = -pc;
    }
    let b = pb.mod_floor(&a);
    Some(LatticeBasis::new(
        LatticePoint::new(lattice, a, T::zero()),
        LatticePoint::new(lattice, b, pc),
    ))
}

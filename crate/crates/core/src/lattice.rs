//! Rank-3 integer lattice arithmetic.
//!
//! Two newtypes keep the two sides of the duality apart: [`LatticeVector`]
//! for elements of the lattice itself (facet vectors live here) and
//! [`LatticeCovector`] for elements of the dual lattice (axial labels live
//! here). The natural pairing between them is [`pairing`]; [`cross`] sends a
//! pair of vectors to the covector that computes determinants against them.
//!
//! Entries are arbitrary-precision integers: surgery compositions multiply
//! labels together, and nothing in the theory bounds them.

use crate::error::ValidationError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the rank-3 lattice (facet vectors).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub [BigInt; 3]);

/// An element of the dual lattice (axial labels).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeCovector(pub [BigInt; 3]);

macro_rules! triple_impls {
    ($t:ident) => {
        impl $t {
            /// Build from machine integers (convenient in tests and tables).
            pub fn new(c: [i64; 3]) -> Self {
                $t([BigInt::from(c[0]), BigInt::from(c[1]), BigInt::from(c[2])])
            }

            /// The three coordinates.
            pub fn coords(&self) -> &[BigInt; 3] {
                &self.0
            }

            /// True if all coordinates are zero.
            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|c| c.is_zero())
            }

            /// Multiply every coordinate by `k`.
            pub fn scale(&self, k: &BigInt) -> Self {
                $t([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
            }

            /// The `i`-th standard basis element (`i` in `0..3`).
            pub fn std_basis(i: usize) -> Self {
                let mut c = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                c[i] = BigInt::one();
                $t(c)
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t([-&self.0[0], -&self.0[1], -&self.0[2]])
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($t), self)
            }
        }
    };
}

triple_impls!(LatticeVector);
triple_impls!(LatticeCovector);

/// The natural pairing between a covector and a vector.
pub fn pairing(c: &LatticeCovector, v: &LatticeVector) -> BigInt {
    &c.0[0] * &v.0[0] + &c.0[1] * &v.0[1] + &c.0[2] * &v.0[2]
}

/// Coordinates at most this large take the machine-integer fast path. With
/// i128 intermediates a determinant of such triples cannot overflow.
const FAST_LIMIT: i64 = 1 << 30;

fn small(x: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    let v = x.to_i64()?;
    (-FAST_LIMIT..=FAST_LIMIT).contains(&v).then_some(v)
}

fn small_triple(x: &[BigInt; 3]) -> Option<[i64; 3]> {
    Some([small(&x[0])?, small(&x[1])?, small(&x[2])?])
}

pub(crate) fn small_cov(c: &LatticeCovector) -> Option<[i64; 3]> {
    small_triple(&c.0)
}

fn det3_i128(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> Option<i128> {
    let (a, b, c) = (small_triple(a)?, small_triple(b)?, small_triple(c)?);
    let (a, b, c) = (a.map(i128::from), b.map(i128::from), c.map(i128::from));
    Some(
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]),
    )
}

fn det3_raw(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    if let Some(d) = det3_i128(a, b, c) {
        return BigInt::from(d);
    }
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Determinant of three lattice vectors (rows).
pub fn det3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> BigInt {
    det3_raw(&a.0, &b.0, &c.0)
}

/// Determinant of three covectors (rows).
pub fn det3_cov(a: &LatticeCovector, b: &LatticeCovector, c: &LatticeCovector) -> BigInt {
    det3_raw(&a.0, &b.0, &c.0)
}

/// The covector `cross(a, b)` with `pairing(cross(a, b), c) == det3(a, b, c)`.
pub fn cross(a: &LatticeVector, b: &LatticeVector) -> LatticeCovector {
    LatticeCovector(cross_raw(&a.0, &b.0))
}

/// The vector `cross_cov(a, b)` with `pairing(c, cross_cov(a, b)) == det3_cov(a, b, c)`.
pub fn cross_cov(a: &LatticeCovector, b: &LatticeCovector) -> LatticeVector {
    LatticeVector(cross_raw(&a.0, &b.0))
}

fn cross_raw(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    cross_signed(a, b, false)
}

/// The cross product, negated when `negate` holds, with the sign applied
/// before any heap value is built.
fn cross_signed(a: &[BigInt; 3], b: &[BigInt; 3], negate: bool) -> [BigInt; 3] {
    if let (Some(a), Some(b)) = (small_triple(a), small_triple(b)) {
        let s = if negate { -1i64 } else { 1 };
        return [
            BigInt::from(s * (a[1] * b[2] - a[2] * b[1])),
            BigInt::from(s * (a[2] * b[0] - a[0] * b[2])),
            BigInt::from(s * (a[0] * b[1] - a[1] * b[0])),
        ];
    }
    let raw = [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ];
    if negate {
        raw.map(std::ops::Neg::neg)
    } else {
        raw
    }
}

fn is_unit(d: &BigInt) -> bool {
    d.magnitude().is_one()
}

fn unit_det(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> bool {
    match det3_i128(a, b, c) {
        Some(d) => d == 1 || d == -1,
        None => is_unit(&det3_raw(a, b, c)),
    }
}

/// True if the three vectors form a basis of the full lattice, i.e. their
/// determinant is plus or minus one. For three vectors in rank 3, spanning
/// the lattice and having unit determinant coincide.
pub fn is_unimodular_basis(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> bool {
    unit_det(&a.0, &b.0, &c.0)
}

/// Covector version of [`is_unimodular_basis`].
pub fn is_unimodular_basis_cov(
    a: &LatticeCovector,
    b: &LatticeCovector,
    c: &LatticeCovector,
) -> bool {
    unit_det(&a.0, &b.0, &c.0)
}

/// Solve the duality system: the unique covector that annihilates `a1` and
/// `a2` and pairs to `+1` with `a3`.
///
/// For a unimodular triple the solution is `det3(a1, a2, a3) * cross(a1, a2)`;
/// the result is symmetric in `a1` and `a2`. Fails with
/// [`ValidationError::NotUnimodularVectors`] when the triple is not a basis,
/// in which case no integer solution exists.
pub fn solve_dual(
    a1: &LatticeVector,
    a2: &LatticeVector,
    a3: &LatticeVector,
) -> Result<LatticeCovector, ValidationError> {
    match det3_i128(&a1.0, &a2.0, &a3.0) {
        Some(d) if d == 1 || d == -1 => Ok(LatticeCovector(cross_signed(&a1.0, &a2.0, d == -1))),
        Some(_) => Err(ValidationError::NotUnimodularVectors),
        None => {
            let d = det3(a1, a2, a3);
            if !is_unit(&d) {
                return Err(ValidationError::NotUnimodularVectors);
            }
            Ok(cross(a1, a2).scale(&d))
        }
    }
}

/// Covector-side duality solve: the unique vector annihilated by `c1` and
/// `c2` that pairs to `+1` with `c3`.
pub fn solve_dual_cov(
    c1: &LatticeCovector,
    c2: &LatticeCovector,
    c3: &LatticeCovector,
) -> Result<LatticeVector, ValidationError> {
    match det3_i128(&c1.0, &c2.0, &c3.0) {
        Some(d) if d == 1 || d == -1 => Ok(LatticeVector(cross_signed(&c1.0, &c2.0, d == -1))),
        Some(_) => Err(ValidationError::NotUnimodularVectors),
        None => {
            let d = det3_cov(c1, c2, c3);
            if !is_unit(&d) {
                return Err(ValidationError::NotUnimodularVectors);
            }
            Ok(cross_cov(c1, c2).scale(&d))
        }
    }
}

/// The dual basis of a unimodular vector triple: covectors with
/// `pairing(out[i], a[j]) == delta_ij`.
pub fn dual_basis(a: [&LatticeVector; 3]) -> Result<[LatticeCovector; 3], ValidationError> {
    Ok([
        solve_dual(a[1], a[2], a[0])?,
        solve_dual(a[2], a[0], a[1])?,
        solve_dual(a[0], a[1], a[2])?,
    ])
}

/// The dual basis of a unimodular covector triple: vectors with
/// `pairing(c[i], out[j]) == delta_ij`.
pub fn dual_basis_cov(c: [&LatticeCovector; 3]) -> Result<[LatticeVector; 3], ValidationError> {
    Ok([
        solve_dual_cov(c[1], c[2], c[0])?,
        solve_dual_cov(c[2], c[0], c[1])?,
        solve_dual_cov(c[0], c[1], c[2])?,
    ])
}

/// A nonzero lattice vector up to sign. The stored representative is the
/// member of `{v, -v}` whose first nonzero coordinate is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignClass(LatticeVector);

impl SignClass {
    /// Normalize `v` to its sign class. The zero vector has none.
    pub fn new(v: &LatticeVector) -> Result<Self, ValidationError> {
        let lead = v.0.iter().find(|c| !c.is_zero()).ok_or(ValidationError::ZeroVector)?;
        if lead.is_negative() {
            Ok(SignClass(-v))
        } else {
            Ok(SignClass(v.clone()))
        }
    }

    /// The normalized representative.
    pub fn representative(&self) -> &LatticeVector {
        &self.0
    }
}

impl fmt::Debug for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignClass{}", self.0)
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A 3x3 integer matrix, stored row-major. Used for lattice automorphisms.
pub type Mat3 = [[BigInt; 3]; 3];

/// The identity matrix.
pub fn mat_identity() -> Mat3 {
    let o = BigInt::one;
    let z = BigInt::zero;
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

/// Determinant of a 3x3 matrix.
pub fn mat_det(m: &Mat3) -> BigInt {
    det3_raw(&m[0], &m[1], &m[2])
}

/// True if the matrix is a lattice automorphism (determinant plus/minus one).
pub fn mat_is_unimodular(m: &Mat3) -> bool {
    is_unit(&mat_det(m))
}

/// Matrix product `a * b`.
pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = mat_identity();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    out
}

/// Apply the matrix to a covector (as a column): `(m * c)_i = sum_j m[i][j] c_j`.
pub fn mat_apply_cov(m: &Mat3, c: &LatticeCovector) -> LatticeCovector {
    let row = |i: usize| -> BigInt { (0..3).map(|j| &m[i][j] * &c.0[j]).sum() };
    LatticeCovector([row(0), row(1), row(2)])
}

/// Apply the matrix to a vector (as a column).
pub fn mat_apply_vec(m: &Mat3, v: &LatticeVector) -> LatticeVector {
    let row = |i: usize| -> BigInt { (0..3).map(|j| &m[i][j] * &v.0[j]).sum() };
    LatticeVector([row(0), row(1), row(2)])
}

/// Exact inverse of a unimodular matrix (adjugate scaled by the determinant).
pub fn mat_inverse_unimodular(m: &Mat3) -> Result<Mat3, ValidationError> {
    let d = mat_det(m);
    if !is_unit(&d) {
        return Err(ValidationError::NotUnimodularVectors);
    }
    let cof = |r: usize, c: usize| -> BigInt {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = &m[rs[0]][cs[0]] * &m[rs[1]][cs[1]] - &m[rs[0]][cs[1]] * &m[rs[1]][cs[0]];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    // adjugate = transposed cofactor matrix; inverse = adjugate / det.
    let mut inv = mat_identity();
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = cof(j, i) * &d;
        }
    }
    Ok(inv)
}

/// Matrix whose columns are the given covectors: sends the `i`-th standard
/// basis covector to `c[i]`.
pub fn mat_from_cov_columns(c: [&LatticeCovector; 3]) -> Mat3 {
    let mut m = mat_identity();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = c[j].0[i].clone();
        }
    }
    m
}

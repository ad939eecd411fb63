//! Dual numbers, dual 3-vectors, and the correspondence between dual unit
//! vectors and directed lines in R^3.
//!
//! A dual number is `a + eps a*` with `eps^2 = 0`. Dual numbers with zero
//! real part are zero divisors, so division and normalization are fallible
//! and guarded by a configurable threshold. Dual unit vectors encode directed
//! lines: the real part is the line direction, the dual part its moment about
//! the origin.

use thiserror::Error;

use crate::real::Real;

/// Default threshold below which a dual divisor counts as pure-dual.
pub const DEFAULT_DIV_EPS: f64 = 1e-12;
/// Default threshold below which a dual vector counts as pure-dual.
pub const DEFAULT_VEC_EPS: f64 = 1e-12;
/// Default membership tolerance for the dual unit sphere.
pub const DEFAULT_SPHERE_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum DualError {
    /// Divisor has (near-)zero real part and is not invertible.
    #[error("division by a pure-dual number (|real part| = {abs_real:.3e} <= {eps:.3e})")]
    DivisionByPureDual { abs_real: f64, eps: f64 },
    /// Vector has (near-)zero real part; norm and direction are undefined.
    #[error("pure-dual vector (|real part| = {abs_real:.3e} <= {eps:.3e})")]
    PureDualVector { abs_real: f64, eps: f64 },
    /// Vector is not a dual unit vector, so it does not encode a line.
    #[error("not on the dual unit sphere (|norm-1| = {norm_dev:.3e}, |<x,x*>| = {moment_dev:.3e})")]
    NotOnDualUnitSphere { norm_dev: f64, moment_dev: f64 },
    /// Requested line has a (near-)zero direction vector.
    #[error("line direction has near-zero length ({len:.3e})")]
    DegenerateDirection { len: f64 },
}

/// Dual scalar `real + eps dual` over any coefficient scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<R: Real> {
    pub real: R,
    pub dual: R,
}

/// Dual scalar with plain `f64` parts.
pub type DualScalar = Dual<f64>;

impl<R: Real> Dual<R> {
    pub fn new(real: R, dual: R) -> Self {
        Dual { real, dual }
    }

    pub fn from_real(real: R) -> Self {
        Dual {
            real,
            dual: R::zero(),
        }
    }

    pub fn zero() -> Self {
        Dual {
            real: R::zero(),
            dual: R::zero(),
        }
    }

    pub fn one() -> Self {
        Dual {
            real: R::one(),
            dual: R::zero(),
        }
    }

    /// True when the real part is within `eps` of zero.
    pub fn is_pure_dual(&self, eps: f64) -> bool {
        self.real.val().abs() <= eps
    }

    /// `a/b + eps (a* b - a b*) / b^2`, rejecting pure-dual divisors.
    pub fn try_div_eps(self, rhs: Dual<R>, eps: f64) -> Result<Dual<R>, DualError> {
        let b = rhs.real.val();
        if !(b.abs() > eps) {
            return Err(DualError::DivisionByPureDual {
                abs_real: b.abs(),
                eps,
            });
        }
        let real = self.real / rhs.real;
        let dual = (self.dual * rhs.real - self.real * rhs.dual) / (rhs.real * rhs.real);
        Ok(Dual { real, dual })
    }

    pub fn try_div(self, rhs: Dual<R>) -> Result<Dual<R>, DualError> {
        self.try_div_eps(rhs, DEFAULT_DIV_EPS)
    }

    /// Square root of a dual number with positive real part:
    /// `sqrt(a) + eps a*/(2 sqrt(a))`. Caller guards `real > 0`.
    pub fn sqrt_pos(self) -> Dual<R> {
        let r = self.real.sqrt();
        Dual {
            real: r,
            dual: self.dual / (r.scale(2.0)),
        }
    }

    pub fn scale(self, k: f64) -> Dual<R> {
        Dual {
            real: self.real.scale(k),
            dual: self.dual.scale(k),
        }
    }
}

impl DualScalar {
    /// Largest absolute part, handy for residual reporting.
    pub fn abs_max(&self) -> f64 {
        self.real.abs().max(self.dual.abs())
    }
}

impl<R: Real> std::ops::Add for Dual<R> {
    type Output = Dual<R>;
    fn add(self, rhs: Dual<R>) -> Dual<R> {
        Dual {
            real: self.real + rhs.real,
            dual: self.dual + rhs.dual,
        }
    }
}

impl<R: Real> std::ops::Sub for Dual<R> {
    type Output = Dual<R>;
    fn sub(self, rhs: Dual<R>) -> Dual<R> {
        Dual {
            real: self.real - rhs.real,
            dual: self.dual - rhs.dual,
        }
    }
}

impl<R: Real> std::ops::Neg for Dual<R> {
    type Output = Dual<R>;
    fn neg(self) -> Dual<R> {
        Dual {
            real: -self.real,
            dual: -self.dual,
        }
    }
}

impl<R: Real> std::ops::Mul for Dual<R> {
    type Output = Dual<R>;
    /// `ab + eps (a b* + b a*)`; the dual parts never multiply each other,
    /// so `eps^2 = 0` holds exactly.
    fn mul(self, rhs: Dual<R>) -> Dual<R> {
        Dual {
            real: self.real * rhs.real,
            dual: self.real * rhs.dual + rhs.real * self.dual,
        }
    }
}

/// Plain 3-vector over any coefficient scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<R: Real> {
    pub x: R,
    pub y: R,
    pub z: R,
}

/// 3-vector with `f64` components.
pub type Vec3f = Vec3<f64>;

impl<R: Real> Vec3<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3 {
            x: R::zero(),
            y: R::zero(),
            z: R::zero(),
        }
    }

    pub fn dot(self, rhs: Vec3<R>) -> R {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Vec3<R>) -> Vec3<R> {
        Vec3 {
            x: self.y * rhs.z - self.z * rhs.y,
            y: self.z * rhs.x - self.x * rhs.z,
            z: self.x * rhs.y - self.y * rhs.x,
        }
    }

    pub fn scale(self, k: f64) -> Vec3<R> {
        Vec3 {
            x: self.x.scale(k),
            y: self.y.scale(k),
            z: self.z.scale(k),
        }
    }

    /// Componentwise map, used to take derivatives of jet-valued vectors.
    pub fn map<S: Real>(self, f: impl Fn(R) -> S) -> Vec3<S> {
        Vec3 {
            x: f(self.x),
            y: f(self.y),
            z: f(self.z),
        }
    }

    /// Euclidean norm; caller guards against the zero vector when the
    /// coefficient scalar is a jet.
    pub fn norm(self) -> R {
        self.dot(self).sqrt()
    }

    pub fn value(self) -> Vec3f {
        Vec3 {
            x: self.x.val(),
            y: self.y.val(),
            z: self.z.val(),
        }
    }
}

impl Vec3f {
    pub fn norm_f(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn abs_max(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Unit vector; caller guards the length.
    pub fn normalized(self) -> Vec3f {
        self.scale(1.0 / self.norm_f())
    }
}

impl<R: Real> std::ops::Add for Vec3<R> {
    type Output = Vec3<R>;
    fn add(self, rhs: Vec3<R>) -> Vec3<R> {
        Vec3 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
            z: self.z + rhs.z,
        }
    }
}

impl<R: Real> std::ops::Sub for Vec3<R> {
    type Output = Vec3<R>;
    fn sub(self, rhs: Vec3<R>) -> Vec3<R> {
        Vec3 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
            z: self.z - rhs.z,
        }
    }
}

impl<R: Real> std::ops::Neg for Vec3<R> {
    type Output = Vec3<R>;
    fn neg(self) -> Vec3<R> {
        Vec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl<R: Real> std::ops::Mul<R> for Vec3<R> {
    type Output = Vec3<R>;
    fn mul(self, k: R) -> Vec3<R> {
        Vec3 {
            x: self.x * k,
            y: self.y * k,
            z: self.z * k,
        }
    }
}

/// Dual 3-vector `real + eps dual`: a point of the dual space D^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualVec<R: Real> {
    pub real: Vec3<R>,
    pub dual: Vec3<R>,
}

/// Dual 3-vector with `f64` components.
pub type DualVec3 = DualVec<f64>;

impl<R: Real> DualVec<R> {
    pub fn new(real: Vec3<R>, dual: Vec3<R>) -> Self {
        DualVec { real, dual }
    }

    pub fn zero() -> Self {
        DualVec {
            real: Vec3::zero(),
            dual: Vec3::zero(),
        }
    }

    /// Dual inner product `<x,y> + eps (<x,y*> + <x*,y>)`.
    pub fn dot(self, rhs: DualVec<R>) -> Dual<R> {
        Dual {
            real: self.real.dot(rhs.real),
            dual: self.real.dot(rhs.dual) + self.dual.dot(rhs.real),
        }
    }

    /// Dual cross product: real `x cross y`, dual `x cross y* + x* cross y`.
    pub fn cross(self, rhs: DualVec<R>) -> DualVec<R> {
        DualVec {
            real: self.real.cross(rhs.real),
            dual: self.real.cross(rhs.dual) + self.dual.cross(rhs.real),
        }
    }

    /// Multiplication by a dual scalar.
    pub fn mul_dual(self, k: Dual<R>) -> DualVec<R> {
        DualVec {
            real: self.real * k.real,
            dual: self.real * k.dual + self.dual * k.real,
        }
    }

    /// Componentwise division by a dual scalar, rejecting pure-dual divisors.
    pub fn try_div_eps(self, k: Dual<R>, eps: f64) -> Result<DualVec<R>, DualError> {
        let b = k.real.val();
        if !(b.abs() > eps) {
            return Err(DualError::DivisionByPureDual {
                abs_real: b.abs(),
                eps,
            });
        }
        let b2 = k.real * k.real;
        let real = Vec3 {
            x: self.real.x / k.real,
            y: self.real.y / k.real,
            z: self.real.z / k.real,
        };
        let dual = Vec3 {
            x: (self.dual.x * k.real - self.real.x * k.dual) / b2,
            y: (self.dual.y * k.real - self.real.y * k.dual) / b2,
            z: (self.dual.z * k.real - self.real.z * k.dual) / b2,
        };
        Ok(DualVec { real, dual })
    }

    /// Dual norm `||x|| + eps <x,x*>/||x||`, rejecting pure-dual vectors.
    pub fn try_norm_eps(self, eps: f64) -> Result<Dual<R>, DualError> {
        let n2 = self.real.dot(self.real);
        let abs_real = n2.val().max(0.0).sqrt();
        if !(abs_real > eps) {
            return Err(DualError::PureDualVector { abs_real, eps });
        }
        let n = n2.sqrt();
        Ok(Dual {
            real: n,
            dual: self.real.dot(self.dual) / n,
        })
    }

    pub fn try_norm(self) -> Result<Dual<R>, DualError> {
        self.try_norm_eps(DEFAULT_VEC_EPS)
    }

    /// Order-zero slice: the plain dual vector at the evaluation point.
    pub fn value(self) -> DualVec3 {
        DualVec {
            real: self.real.value(),
            dual: self.dual.value(),
        }
    }
}

impl<R: Real> std::ops::Add for DualVec<R> {
    type Output = DualVec<R>;
    fn add(self, rhs: DualVec<R>) -> DualVec<R> {
        DualVec {
            real: self.real + rhs.real,
            dual: self.dual + rhs.dual,
        }
    }
}

impl<R: Real> std::ops::Sub for DualVec<R> {
    type Output = DualVec<R>;
    fn sub(self, rhs: DualVec<R>) -> DualVec<R> {
        DualVec {
            real: self.real - rhs.real,
            dual: self.dual - rhs.dual,
        }
    }
}

impl<R: Real> std::ops::Neg for DualVec<R> {
    type Output = DualVec<R>;
    fn neg(self) -> DualVec<R> {
        DualVec {
            real: -self.real,
            dual: -self.dual,
        }
    }
}

impl DualVec3 {
    /// Largest absolute component over both parts.
    pub fn abs_max(&self) -> f64 {
        self.real.abs_max().max(self.dual.abs_max())
    }
}

/// A directed line in canonical form: `foot` is the point nearest the origin,
/// `direction` is unit, and the two are orthogonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineR3 {
    pub foot: Vec3f,
    pub direction: Vec3f,
}

impl LineR3 {
    /// Canonicalizes an arbitrary point/direction pair.
    pub fn from_point_dir(point: Vec3f, direction: Vec3f) -> Result<LineR3, DualError> {
        let len = direction.norm_f();
        if !(len > DEFAULT_VEC_EPS) {
            return Err(DualError::DegenerateDirection { len });
        }
        let d = direction.scale(1.0 / len);
        let foot = point - d.scale(point.dot(d));
        Ok(LineR3 { foot, direction: d })
    }

    /// Residuals of the canonical-form invariants (unit direction,
    /// foot orthogonal to direction).
    pub fn canonical_residuals(&self) -> (f64, f64) {
        (
            (self.direction.norm_f() - 1.0).abs(),
            self.foot.dot(self.direction).abs(),
        )
    }
}

/// Line to dual unit vector: direction plus moment `foot x direction`.
pub fn line_to_dual(line: &LineR3) -> DualVec3 {
    DualVec {
        real: line.direction,
        dual: line.foot.cross(line.direction),
    }
}

/// Dual unit vector to line: direction is the real part, foot is
/// `x cross x*` (the point of the line nearest the origin).
pub fn dual_to_line(v: &DualVec3, eps: f64) -> Result<LineR3, DualError> {
    let norm_dev = (v.real.norm_f() - 1.0).abs();
    let moment_dev = v.real.dot(v.dual).abs();
    if norm_dev > eps || moment_dev > eps {
        return Err(DualError::NotOnDualUnitSphere {
            norm_dev,
            moment_dev,
        });
    }
    Ok(LineR3 {
        foot: v.real.cross(v.dual),
        direction: v.real,
    })
}

//! 2x2 matrix checks of the discrete-symmetry algebra: the rotation
//! generator `v`, an axis reflection `r_y`, the permutation `P`, and the
//! q-commutators of the combinations `R_y = r_y + v`, `V = r_y - v`.
//!
//! The reflection "against the Oy axis" is ambiguous between negating x and
//! negating y, and the overall signs of `v` and `P` are conventions; the
//! checker enumerates all of them and reports which satisfy which identity
//! and with which achieved signs.

use num_complex::Complex64;

use super::qlaurent::QLaurent;

/// 2x2 matrix over Laurent polynomials in q.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2 {
    pub e: [[QLaurent; 2]; 2],
}

impl Mat2 {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2 {
            e: m.map(|row| row.map(|v| QLaurent::scalar(Complex64::new(v as f64, 0.0)))),
        }
    }

    pub fn zero() -> Self {
        Mat2::from_ints([[0, 0], [0, 0]])
    }

    pub fn identity() -> Self {
        Mat2::from_ints([[1, 0], [0, 1]])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = QLaurent::zero();
                for k in 0..2 {
                    acc = &acc + &(&self.e[i][k] * &other.e[k][j]);
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = &self.e[i][j] + &other.e[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = &self.e[i][j] - &other.e[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &QLaurent) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = &self.e[i][j] * c;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|c| c.is_zero())
    }

    /// `[a, b] = ab - ba`.
    pub fn comm(&self, other: &Mat2) -> Mat2 {
        self.mul(other).sub(&other.mul(self))
    }

    /// `[a, b]_q = ab - q ba`.
    pub fn qcomm(&self, other: &Mat2) -> Mat2 {
        self.mul(other).sub(&other.mul(self).scale(&QLaurent::qpow(1)))
    }
}

/// Which axis the reflection negates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionAxis {
    NegateX,
    NegateY,
}

/// A sign convention for the three discrete generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convention {
    pub v_sign: i64,
    pub reflection: ReflectionAxis,
    pub p_sign: i64,
}

impl Convention {
    /// The convention of the worked example: `v` the rotation by -pi/2,
    /// `r_y` negating x, `P` the plain permutation.
    pub fn reference() -> Self {
        Convention {
            v_sign: 1,
            reflection: ReflectionAxis::NegateX,
            p_sign: 1,
        }
    }

    pub fn v(&self) -> Mat2 {
        Mat2::from_ints([[0, self.v_sign], [-self.v_sign, 0]])
    }

    pub fn r_y(&self) -> Mat2 {
        match self.reflection {
            ReflectionAxis::NegateX => Mat2::from_ints([[-1, 0], [0, 1]]),
            ReflectionAxis::NegateY => Mat2::from_ints([[1, 0], [0, -1]]),
        }
    }

    pub fn p(&self) -> Mat2 {
        Mat2::from_ints([[0, self.p_sign], [self.p_sign, 0]])
    }
}

/// Result of checking one convention.
#[derive(Debug, Clone)]
pub struct MatrixReport {
    pub convention: Convention,
    /// `r_y^2 = P^2 = 1`, `v^2 = -1`.
    pub unit_relations: bool,
    /// `[v, r_y] = 2P`, `[P, v] = 2r_y`, `[P, r_y] = 2v`, each exact.
    pub lie_relations: [bool; 3],
    /// Achieved sign in `[R_y, P]_q = sign * (1+q) R_y`, if either sign
    /// matches exactly.
    pub sign_ryp: Option<i64>,
    /// Achieved sign in `[V, P]_q = sign * (1+q) V`.
    pub sign_vp: Option<i64>,
    /// Achieved sign in `[R_y, V]_q = 2((1-q) 1 + sign * (1+q) P)`.
    pub sign_ryv: Option<i64>,
}

impl MatrixReport {
    pub fn all_lie_relations_hold(&self) -> bool {
        self.unit_relations && self.lie_relations.iter().all(|&b| b)
    }
}

fn matched_sign(lhs: &Mat2, candidate: &Mat2) -> Option<i64> {
    if lhs.sub(candidate).is_zero() {
        Some(1)
    } else if lhs.add(candidate).is_zero() {
        Some(-1)
    } else {
        None
    }
}

/// Evaluate the unit, commutator, and q-commutator relations for a
/// convention, exact in integer matrices and symbolic in q.
pub fn matrix_algebra_check(convention: Convention) -> MatrixReport {
    let v = convention.v();
    let r = convention.r_y();
    let p = convention.p();

    let unit_relations = r.mul(&r).sub(&Mat2::identity()).is_zero()
        && p.mul(&p).sub(&Mat2::identity()).is_zero()
        && v.mul(&v).add(&Mat2::identity()).is_zero();

    let two = QLaurent::scalar(Complex64::new(2.0, 0.0));
    let lie_relations = [
        v.comm(&r).sub(&p.scale(&two)).is_zero(),
        p.comm(&v).sub(&r.scale(&two)).is_zero(),
        p.comm(&r).sub(&v.scale(&two)).is_zero(),
    ];

    let ry_big = r.add(&v);
    let v_big = r.sub(&v);
    let one_plus_q = &QLaurent::one() + &QLaurent::qpow(1);
    let one_minus_q = &QLaurent::one() - &QLaurent::qpow(1);

    let sign_ryp = matched_sign(&ry_big.qcomm(&p), &ry_big.scale(&one_plus_q));
    let sign_vp = matched_sign(&v_big.qcomm(&p), &v_big.scale(&one_plus_q));
    // [R_y, V]_q compared against 2((1-q) 1 + sign (1+q) P)
    let base = Mat2::identity().scale(&one_minus_q);
    let lhs = ry_big.qcomm(&v_big);
    let sign_ryv = [1i64, -1]
        .into_iter()
        .find(|&s| {
            let signed_p = p.scale(&one_plus_q).scale(&QLaurent::scalar(Complex64::new(
                s as f64, 0.0,
            )));
            lhs.sub(&base.add(&signed_p).scale(&two)).is_zero()
        });

    MatrixReport {
        convention,
        unit_relations,
        lie_relations,
        sign_ryp,
        sign_vp,
        sign_ryv,
    }
}

/// Check every sign convention and return all reports.
pub fn enumerate_conventions() -> Vec<MatrixReport> {
    let mut out = Vec::new();
    for v_sign in [1i64, -1] {
        for reflection in [ReflectionAxis::NegateX, ReflectionAxis::NegateY] {
            for p_sign in [1i64, -1] {
                out.push(matrix_algebra_check(Convention {
                    v_sign,
                    reflection,
                    p_sign,
                }));
            }
        }
    }
    out
}

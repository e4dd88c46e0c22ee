//! Structures on a line with one point removed.
//!
//! Removing a point A from a projective line leaves a canonical affine line;
//! fixing additionally a zero point B makes it a one-dimensional vector
//! space, and fixing a unit point C pins an isomorphism with the field
//! itself. All three structures are realized here through the chart
//! `h_{A,B,C}`, the coordinate bijection L\{A} → k with B ↦ 0 and C ↦ 1
//! given by `X ↦ (A,B;C,X)`.
//!
//! The operations below transport field arithmetic through a chart built on
//! auxiliary points and are independent of that choice; when no auxiliaries
//! are supplied, the smallest points in enumeration order are used so that
//! results are reproducible.

use crate::abstract_line::{FiniteLine, PointId};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// The coordinate bijection L\{A} → k attached to a distinct triple
/// (A, B, C): puncture A, zero B, unit C.
#[derive(Clone, Debug)]
pub struct Chart<'a> {
    line: &'a FiniteLine,
    puncture: PointId,
    zero: PointId,
    unit: PointId,
    forward: Vec<Option<u64>>,
    inverse: Vec<PointId>,
}

impl<'a> Chart<'a> {
    pub fn line(&self) -> &'a FiniteLine {
        self.line
    }

    pub fn puncture(&self) -> PointId {
        self.puncture
    }

    pub fn zero(&self) -> PointId {
        self.zero
    }

    pub fn unit(&self) -> PointId {
        self.unit
    }

    /// The coordinate of a point other than the puncture.
    pub fn value(&self, x: PointId) -> Result<Scalar> {
        Ok(self.line.scalar(self.value_raw(x)?))
    }

    pub(crate) fn value_raw(&self, x: PointId) -> Result<u64> {
        if x >= self.forward.len() {
            return Err(Error::UnknownPoint(format!("#{x}")));
        }
        self.forward[x].ok_or(Error::PunctureInTerms)
    }

    /// The point with a given coordinate.
    pub fn point_at(&self, v: &Scalar) -> Result<PointId> {
        let r = v.residue().ok_or(Error::NotEnumerable)?;
        Ok(self.point_at_raw(r))
    }

    pub(crate) fn point_at_raw(&self, v: u64) -> PointId {
        self.inverse[v as usize]
    }
}

/// Builds the chart of a distinct triple. Fails with
/// [`Error::ChartDegenerate`] when the coordinates do not exhaust the field,
/// which cannot happen on a line that passes verification.
pub fn chart<'a>(
    line: &'a FiniteLine,
    a: PointId,
    b: PointId,
    c: PointId,
) -> Result<Chart<'a>> {
    let n = line.point_count();
    if a >= n || b >= n || c >= n {
        return Err(Error::UnknownPoint(format!("#{}", a.max(b).max(c))));
    }
    if a == b || a == c || b == c {
        return Err(Error::TriplesNotDistinct(format!(
            "{}, {}, {}",
            line.point_name(a),
            line.point_name(b),
            line.point_name(c)
        )));
    }
    let p = line.prime() as usize;
    let mut forward = vec![None; n];
    let mut inverse = vec![usize::MAX; p];
    for x in 0..n {
        if x == a {
            continue;
        }
        let v = if x == b {
            0
        } else if x == c {
            1
        } else {
            line.cross_ratio_raw(a, b, c, x)?
        };
        if inverse[v as usize] != usize::MAX {
            return Err(Error::ChartDegenerate(format!(
                "points {} and {} share coordinate {v}",
                line.point_name(inverse[v as usize]),
                line.point_name(x)
            )));
        }
        forward[x] = Some(v);
        inverse[v as usize] = x;
    }
    if inverse.iter().any(|&x| x == usize::MAX) {
        return Err(Error::ChartDegenerate(
            "coordinates do not cover the field".into(),
        ));
    }
    Ok(Chart {
        line,
        puncture: a,
        zero: b,
        unit: c,
        forward,
        inverse,
    })
}

/// The chart viewed as the unique isomorphism of the punctured line, as a
/// vector line with chosen basis vector, onto (k, 0, 1): B is the zero and
/// C the basis vector.
pub fn basis_coordinate<'a>(
    line: &'a FiniteLine,
    a: PointId,
    b: PointId,
    c: PointId,
) -> Result<Chart<'a>> {
    chart(line, a, b, c)
}

fn smallest_excluding(n: usize, banned: &[PointId], count: usize) -> Vec<PointId> {
    (0..n)
        .filter(|x| !banned.contains(x))
        .take(count)
        .collect()
}

/// An affine combination of points of L\{A}: weights must sum to 1. The
/// auxiliary chart points are the two smallest points distinct from the
/// puncture; any other admissible choice yields the same point.
pub fn affine_combine(
    line: &FiniteLine,
    puncture: PointId,
    terms: &[(Scalar, PointId)],
) -> Result<PointId> {
    let aux = smallest_excluding(line.point_count(), &[puncture], 2);
    affine_combine_with(line, puncture, aux[0], aux[1], terms)
}

/// As [`affine_combine`], with explicit auxiliary points.
pub fn affine_combine_with(
    line: &FiniteLine,
    puncture: PointId,
    b: PointId,
    c: PointId,
    terms: &[(Scalar, PointId)],
) -> Result<PointId> {
    let ch = chart(line, puncture, b, c)?;
    let ctx = line.context();
    let mut weight_sum = ctx.zero();
    let mut coordinate = ctx.zero();
    for (w, x) in terms {
        if *x == puncture {
            return Err(Error::PunctureInTerms);
        }
        weight_sum = weight_sum.add(w)?;
        coordinate = coordinate.add(&w.mul(&ch.value(*x)?)?)?;
    }
    if !weight_sum.is_one() {
        return Err(Error::WeightsNotAffine);
    }
    ch.point_at(&coordinate)
}

/// The sum of X and Y in the vector line L\{A} with zero B. The auxiliary
/// unit is the smallest point distinct from A and B; the result does not
/// depend on it.
pub fn vector_add(
    line: &FiniteLine,
    puncture: PointId,
    zero: PointId,
    x: PointId,
    y: PointId,
) -> Result<PointId> {
    let aux = smallest_excluding(line.point_count(), &[puncture, zero], 1);
    vector_add_with(line, puncture, zero, aux[0], x, y)
}

/// As [`vector_add`], with an explicit auxiliary unit point.
pub fn vector_add_with(
    line: &FiniteLine,
    puncture: PointId,
    zero: PointId,
    unit: PointId,
    x: PointId,
    y: PointId,
) -> Result<PointId> {
    if puncture == zero {
        return Err(Error::ZeroEqualsPuncture);
    }
    if x == puncture || y == puncture {
        return Err(Error::PunctureInTerms);
    }
    let ch = chart(line, puncture, zero, unit)?;
    let sum = ch.value(x)?.add(&ch.value(y)?)?;
    ch.point_at(&sum)
}

/// λ·X in the vector line L\{A} with zero B.
pub fn vector_scale(
    line: &FiniteLine,
    puncture: PointId,
    zero: PointId,
    lambda: &Scalar,
    x: PointId,
) -> Result<PointId> {
    let aux = smallest_excluding(line.point_count(), &[puncture, zero], 1);
    vector_scale_with(line, puncture, zero, aux[0], lambda, x)
}

/// As [`vector_scale`], with an explicit auxiliary unit point.
pub fn vector_scale_with(
    line: &FiniteLine,
    puncture: PointId,
    zero: PointId,
    unit: PointId,
    lambda: &Scalar,
    x: PointId,
) -> Result<PointId> {
    if puncture == zero {
        return Err(Error::ZeroEqualsPuncture);
    }
    if x == puncture {
        return Err(Error::PunctureInTerms);
    }
    let ch = chart(line, puncture, zero, unit)?;
    let scaled = lambda.mul(&ch.value(x)?)?;
    ch.point_at(&scaled)
}

//! Matrix tracking of projectivities.
//!
//! An invertible 2×2 matrix acts on P(k²) through its action on spanning
//! vectors (columns); the induced point map is a projectivity, and every
//! projectivity of the coordinate model arises this way from a matrix that
//! is unique up to a scalar factor. [`ProjMatrix`] fixes the scalar by
//! normalizing the first nonzero entry to 1, which makes equality modulo k*
//! decidable. [`enumerate_pgl`] lists all p³ − p classes over GF(p).
//!
//! Composition follows the crate-wide left-to-right convention:
//! `f.then(g)` tracks "apply f, then g", so [`induced_projectivity`] is a
//! group homomorphism with respect to [`Matrix2::then`].
//!
//! On the affine chart x ↦ [1:x] the matrix action reads as the fractional
//! linear transformation `x ↦ (α21 + α22·x) / (α11 + α12·x)`, with a
//! dedicated infinity marker exactly where the denominator dies (the image
//! then being the point at infinity V).

use std::fmt;

use crate::abstract_line::CoordinateModel;
use crate::coordinate_line::{det2, ProjPoint, Vec2};
use crate::error::{Error, Result};
use crate::fundamental::Projectivity;
use crate::scalars::{FieldContext, Scalar};

/// Size guard for [`enumerate_pgl`]: p⁴ candidate matrices are scanned.
pub const PGL_BOUND: u64 = 31;

/// An invertible 2×2 matrix over the field, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix2 {
    e11: Scalar,
    e12: Scalar,
    e21: Scalar,
    e22: Scalar,
}

impl Matrix2 {
    /// Entries in row order; rejects singular matrices.
    pub fn new(e11: Scalar, e12: Scalar, e21: Scalar, e22: Scalar) -> Result<Self> {
        let ctx = e11.context();
        for e in [&e12, &e21, &e22] {
            if e.context() != ctx {
                return Err(Error::ContextMismatch(
                    ctx.to_string(),
                    e.context().to_string(),
                ));
            }
        }
        let m = Matrix2 { e11, e12, e21, e22 };
        if m.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_integers(ctx: &FieldContext, rows: [[i64; 2]; 2]) -> Result<Self> {
        Matrix2::new(
            ctx.integer(rows[0][0]),
            ctx.integer(rows[0][1]),
            ctx.integer(rows[1][0]),
            ctx.integer(rows[1][1]),
        )
    }

    pub fn identity(ctx: &FieldContext) -> Self {
        Matrix2 {
            e11: ctx.one(),
            e12: ctx.zero(),
            e21: ctx.zero(),
            e22: ctx.one(),
        }
    }

    pub fn context(&self) -> FieldContext {
        self.e11.context()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn det(&self) -> Result<Scalar> {
        self.e11
            .mul(&self.e22)?
            .sub(&self.e12.mul(&self.e21)?)
    }

    /// Standard matrix product `self · other`.
    pub fn mul(&self, other: &Matrix2) -> Result<Matrix2> {
        Matrix2::new(
            self.e11.mul(&other.e11)?.add(&self.e12.mul(&other.e21)?)?,
            self.e11.mul(&other.e12)?.add(&self.e12.mul(&other.e22)?)?,
            self.e21.mul(&other.e11)?.add(&self.e22.mul(&other.e21)?)?,
            self.e21.mul(&other.e12)?.add(&self.e22.mul(&other.e22)?)?,
        )
    }

    /// The matrix tracking "apply `self` first, then `other`" on points;
    /// on column vectors this is the product `other · self`.
    pub fn then(&self, other: &Matrix2) -> Result<Matrix2> {
        other.mul(self)
    }

    pub fn inverse(&self) -> Result<Matrix2> {
        let det_inv = self.det()?.inv()?;
        Matrix2::new(
            self.e22.mul(&det_inv)?,
            self.e12.neg().mul(&det_inv)?,
            self.e21.neg().mul(&det_inv)?,
            self.e11.mul(&det_inv)?,
        )
    }

    /// Image of a spanning vector.
    pub fn apply_vec(&self, v: &Vec2) -> Result<Vec2> {
        Vec2::new(
            self.e11.mul(v.x1())?.add(&self.e12.mul(v.x2())?)?,
            self.e21.mul(v.x1())?.add(&self.e22.mul(v.x2())?)?,
        )
    }

    /// Image of a point under the induced map of P(k²).
    pub fn act(&self, p: &ProjPoint) -> Result<ProjPoint> {
        // Invertibility keeps the image of a nonzero vector nonzero.
        ProjPoint::from_vec(self.apply_vec(p.rep())?)
    }

    /// Parses "a11,a12;a21,a22".
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Self> {
        let (top, bottom) = s
            .split_once(';')
            .ok_or_else(|| Error::ParseError(format!("bad matrix {s:?}")))?;
        let row = |r: &str| -> Result<(Scalar, Scalar)> {
            let (a, b) = r
                .split_once(',')
                .ok_or_else(|| Error::ParseError(format!("bad matrix row {r:?}")))?;
            Ok((ctx.parse_scalar(a)?, ctx.parse_scalar(b)?))
        };
        let (e11, e12) = row(top)?;
        let (e21, e22) = row(bottom)?;
        Matrix2::new(e11, e12, e21, e22)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.e11, self.e12, self.e21, self.e22)
    }
}

/// A matrix considered up to scalar multiples, held by the representative
/// whose first nonzero entry (in the order α11, α12, α21, α22) is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjMatrix {
    rep: Matrix2,
}

impl ProjMatrix {
    pub fn from_matrix(m: &Matrix2) -> ProjMatrix {
        let lead = [&m.e11, &m.e12, &m.e21, &m.e22]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("an invertible matrix has a nonzero entry")
            .clone();
        let scale = lead.inv().expect("nonzero scalar");
        let rep = Matrix2 {
            e11: m.e11.mul(&scale).expect("same context"),
            e12: m.e12.mul(&scale).expect("same context"),
            e21: m.e21.mul(&scale).expect("same context"),
            e22: m.e22.mul(&scale).expect("same context"),
        };
        ProjMatrix { rep }
    }

    pub fn rep(&self) -> &Matrix2 {
        &self.rep
    }

    pub fn then(&self, other: &ProjMatrix) -> Result<ProjMatrix> {
        Ok(ProjMatrix::from_matrix(&self.rep.then(&other.rep)?))
    }

    pub fn inverse(&self) -> Result<ProjMatrix> {
        Ok(ProjMatrix::from_matrix(&self.rep.inverse()?))
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// The value of a fractional linear transformation: a field element, or the
/// marker for the point at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProjectiveValue {
    Finite(Scalar),
    Infinity,
}

impl fmt::Display for ProjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveValue::Finite(x) => x.fmt(f),
            ProjectiveValue::Infinity => f.write_str("inf"),
        }
    }
}

/// The affine-chart reading of the matrix action:
/// `x ↦ (α21 + α22·x) / (α11 + α12·x)`, with [`ProjectiveValue::Infinity`]
/// exactly when the denominator vanishes.
pub fn fractional_linear(f: &Matrix2, x: &Scalar) -> Result<ProjectiveValue> {
    let den = f.e11.add(&f.e12.mul(x)?)?;
    let num = f.e21.add(&f.e22.mul(x)?)?;
    if den.is_zero() {
        return Ok(ProjectiveValue::Infinity);
    }
    Ok(ProjectiveValue::Finite(num.div(&den)?))
}

/// The projectivity of the coordinate model induced by a matrix.
pub fn induced_projectivity<'a>(
    f: &Matrix2,
    model: &'a CoordinateModel,
) -> Result<Projectivity<'a>> {
    if f.context() != model.context() {
        return Err(Error::FieldMismatch);
    }
    let mut map = Vec::with_capacity(model.line().point_count());
    for p in model.proj_points() {
        map.push(model.point_id(&f.act(p)?)?);
    }
    Projectivity::new(model.line(), model.line(), map)
}

/// Recovers the tracking matrix of a projectivity of the coordinate model:
/// with A = φ(H), B = φ(V), C = φ(D) the matrix has columns a and λ·b for
/// λ = −|c,a| / |c,b|. The result is normalized and verified against φ on
/// every point; disagreement means the input was no projectivity at all.
pub fn matrix_of_projectivity(
    phi: &Projectivity<'_>,
    model: &CoordinateModel,
) -> Result<ProjMatrix> {
    if phi.source().point_count() != model.line().point_count()
        || phi.source().context() != model.context()
    {
        return Err(Error::NotAProjectivity(
            "projectivity does not live on this coordinate model".into(),
        ));
    }
    let ctx = model.context();
    let h = model.point_id(&ProjPoint::horizontal(ctx))?;
    let v = model.point_id(&ProjPoint::vertical(ctx))?;
    let d = model.point_id(&ProjPoint::diagonal(ctx))?;
    let a = model.proj_point(phi.apply(h)).rep().clone();
    let b = model.proj_point(phi.apply(v)).rep().clone();
    let c = model.proj_point(phi.apply(d)).rep().clone();
    let lambda = det2(&c, &a)?.div(&det2(&c, &b)?)?.neg();
    let m = Matrix2::new(
        a.x1().clone(),
        lambda.mul(b.x1())?,
        a.x2().clone(),
        lambda.mul(b.x2())?,
    )?;
    for (id, p) in model.proj_points().iter().enumerate() {
        if m.act(p)? != *model.proj_point(phi.apply(id)) {
            return Err(Error::NotAProjectivity(format!(
                "map disagrees with its tracking matrix at {p}"
            )));
        }
    }
    Ok(ProjMatrix::from_matrix(&m))
}

/// All of PGL(2, p): every class of invertible matrices modulo scalars,
/// enumerated by canonical representative. The count is p³ − p.
pub fn enumerate_pgl(p: u64) -> Result<Vec<ProjMatrix>> {
    let ctx = FieldContext::prime(p)?;
    if p > PGL_BOUND {
        return Err(Error::BoundExceeded(format!(
            "PGL enumeration is capped at p = {PGL_BOUND}"
        )));
    }
    let mut out = Vec::with_capacity((p * p * p - p) as usize);
    for e11 in 0..p {
        for e12 in 0..p {
            for e21 in 0..p {
                for e22 in 0..p {
                    // Canonical representatives have leading entry 1.
                    let lead = [e11, e12, e21, e22].into_iter().find(|&e| e != 0);
                    if lead != Some(1) {
                        continue;
                    }
                    if (e11 * e22) % p == (e12 * e21) % p {
                        continue;
                    }
                    let m = Matrix2::new(
                        ctx.integer(e11 as i64),
                        ctx.integer(e12 as i64),
                        ctx.integer(e21 as i64),
                        ctx.integer(e22 as i64),
                    )?;
                    out.push(ProjMatrix { rep: m });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstract_line::build_coordinate_model;
    use crate::coordinate_line::{cross_ratio, enumerate_points};
    use crate::fundamental::transport_projectivity;

    fn gf(p: u64) -> FieldContext {
        FieldContext::prime(p).unwrap()
    }

    #[test]
    fn identity_fixes_every_point() {
        let ctx = gf(5);
        let id = Matrix2::identity(&ctx);
        for p in enumerate_points(&ctx).unwrap() {
            assert_eq!(id.act(&p).unwrap(), p);
        }
    }

    #[test]
    fn coordinate_swap_exchanges_h_and_v() {
        let ctx = gf(5);
        let swap = Matrix2::from_integers(&ctx, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(
            swap.act(&ProjPoint::horizontal(ctx)).unwrap(),
            ProjPoint::vertical(ctx)
        );
        assert_eq!(
            swap.act(&ProjPoint::vertical(ctx)).unwrap(),
            ProjPoint::horizontal(ctx)
        );
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let ctx = gf(5);
        assert_eq!(
            Matrix2::from_integers(&ctx, [[1, 2], [2, 4]]).map(|_| ()),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn action_preserves_cross_ratios() {
        for p in [2u64, 3, 5, 7] {
            let ctx = gf(p);
            let points = enumerate_points(&ctx).unwrap();
            for m in enumerate_pgl(p).unwrap() {
                let f = m.rep();
                for a in &points {
                    for b in &points {
                        for c in &points {
                            for d in &points {
                                if a == b || a == c || a == d || b == c || b == d || c == d {
                                    continue;
                                }
                                let before = cross_ratio(a, b, c, d).unwrap();
                                let after = cross_ratio(
                                    &f.act(a).unwrap(),
                                    &f.act(b).unwrap(),
                                    &f.act(c).unwrap(),
                                    &f.act(d).unwrap(),
                                )
                                .unwrap();
                                assert_eq!(before, after);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pgl_counts_match_p_cubed_minus_p() {
        assert_eq!(enumerate_pgl(2).unwrap().len(), 6);
        assert_eq!(enumerate_pgl(3).unwrap().len(), 24);
        assert_eq!(enumerate_pgl(5).unwrap().len(), 120);
        assert!(matches!(enumerate_pgl(37), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn pgl_is_closed_under_product_and_inverse() {
        let all: std::collections::HashSet<_> =
            enumerate_pgl(3).unwrap().into_iter().collect();
        for m in &all {
            assert!(all.contains(&m.inverse().unwrap()));
            for n in &all {
                assert!(all.contains(&m.then(n).unwrap()));
            }
        }
    }

    #[test]
    fn induced_projectivities_are_functorial_and_multiplicative() {
        let model = build_coordinate_model(3).unwrap();
        let all = enumerate_pgl(3).unwrap();
        for m in &all {
            let phi = induced_projectivity(m.rep(), &model).unwrap();
            assert!(phi.is_functorial());
            for n in &all {
                let psi = induced_projectivity(n.rep(), &model).unwrap();
                let product = m.rep().then(n.rep()).unwrap();
                let direct = induced_projectivity(&product, &model);
                // then() on ProjMatrix renormalizes, which does not move the
                // induced map.
                let composed = phi.then(&psi).unwrap();
                assert_eq!(direct.unwrap().map(), composed.map());
            }
        }
    }

    #[test]
    fn matrix_roundtrip_on_all_of_pgl3() {
        let model = build_coordinate_model(3).unwrap();
        for m in enumerate_pgl(3).unwrap() {
            let phi = induced_projectivity(m.rep(), &model).unwrap();
            assert_eq!(matrix_of_projectivity(&phi, &model).unwrap(), m);
        }
    }

    #[test]
    fn transport_swapping_h_and_v_is_tracked_by_the_antidiagonal() {
        let model = build_coordinate_model(5).unwrap();
        let ctx = model.context();
        let h = model.point_id(&ProjPoint::horizontal(ctx)).unwrap();
        let v = model.point_id(&ProjPoint::vertical(ctx)).unwrap();
        let d = model.point_id(&ProjPoint::diagonal(ctx)).unwrap();
        let phi =
            transport_projectivity(model.line(), model.line(), (h, v, d), (v, h, d)).unwrap();
        let m = matrix_of_projectivity(&phi, &model).unwrap();
        let anti = Matrix2::from_integers(&ctx, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(m, ProjMatrix::from_matrix(&anti));
    }

    #[test]
    fn a_non_projectivity_has_no_tracking_matrix() {
        let model = build_coordinate_model(5).unwrap();
        let map = vec![0, 1, 2, 4, 5, 3];
        let phi = Projectivity::new(model.line(), model.line(), map).unwrap();
        assert!(matches!(
            matrix_of_projectivity(&phi, &model),
            Err(Error::NotAProjectivity(_))
        ));
    }

    #[test]
    fn fractional_linear_examples() {
        let ctx = gf(5);
        let id = Matrix2::identity(&ctx);
        for x in 0..5 {
            let x = ctx.integer(x);
            assert_eq!(
                fractional_linear(&id, &x).unwrap(),
                ProjectiveValue::Finite(x)
            );
        }
        // Columns (1,1) and (0,1) translate the chart by one.
        let shift = Matrix2::from_integers(&ctx, [[1, 0], [1, 1]]).unwrap();
        for x in 0..5 {
            assert_eq!(
                fractional_linear(&shift, &ctx.integer(x)).unwrap(),
                ProjectiveValue::Finite(ctx.integer(x + 1))
            );
        }
    }

    #[test]
    fn fractional_linear_agrees_with_the_point_action() {
        for p in [3u64, 5, 7] {
            let ctx = gf(p);
            for m in enumerate_pgl(p).unwrap() {
                let f = m.rep();
                let mut saw_infinity = false;
                for x in ctx.elements().unwrap() {
                    let image = f.act(&ProjPoint::affine(x.clone())).unwrap();
                    match fractional_linear(f, &x).unwrap() {
                        ProjectiveValue::Finite(y) => {
                            assert_eq!(image, ProjPoint::affine(y));
                        }
                        ProjectiveValue::Infinity => {
                            saw_infinity = true;
                            assert_eq!(image, ProjPoint::vertical(ctx));
                        }
                    }
                }
                // The denominator α11 + α12·x has a root iff α12 ≠ 0.
                let has_pole = !f.entries()[1].is_zero();
                assert_eq!(saw_infinity, has_pole);
            }
        }
    }

    #[test]
    fn matrix_display_roundtrips() {
        let ctx = gf(7);
        let m = Matrix2::from_integers(&ctx, [[1, 2], [3, 4]]).unwrap();
        assert_eq!(Matrix2::parse(&ctx, &m.to_string()).unwrap(), m);
    }
}

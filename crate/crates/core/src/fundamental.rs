//! Three-transitivity: the unique projectivity through two point triples.
//!
//! A bijection of point sets is a *projectivity* when relabeling every arrow
//! through it — `(C:A→B)` to `(φC:φA→φB)`, scalars unchanged — commutes with
//! composition. [`transport_projectivity`] constructs the bijection sending
//! one distinct triple to another by matching cross ratios anchored at the
//! triple; [`Projectivity::is_functorial`] certifies the result by checking
//! every composable pair, and [`uniqueness_census`] confirms by brute force
//! that no other extension of the triple assignment is functorial.
//!
//! [`Projectivity::preserves_cross_ratios`] is the cheap equivalent test:
//! preserving all cross ratios is the same as preserving composition, and
//! the equivalence of the two predicates is itself exercised by the test
//! suite.

use crate::abstract_line::{CoordinateModel, FiniteLine, LineArrow, PointId};
use crate::coordinate_line::ProjPoint;
use crate::error::{Error, Result};

/// Hard cap on the modulus for the brute-force census: beyond p = 11 the
/// (p − 2)! extensions exceed roughly a million functoriality checks.
pub const CENSUS_BOUND: u64 = 11;

/// A bijection between the point sets of two finite lines, with the machinery
/// to certify it as a functor.
#[derive(Clone, Debug)]
pub struct Projectivity<'a> {
    src: &'a FiniteLine,
    dst: &'a FiniteLine,
    map: Vec<PointId>,
}

impl<'a> Projectivity<'a> {
    /// Wraps a point map, rejecting anything that is not a bijection between
    /// lines over the same field.
    pub fn new(src: &'a FiniteLine, dst: &'a FiniteLine, map: Vec<PointId>) -> Result<Self> {
        if src.context() != dst.context() {
            return Err(Error::FieldMismatch);
        }
        if map.len() != src.point_count() || src.point_count() != dst.point_count() {
            return Err(Error::NotAProjectivity(format!(
                "map covers {} of {} points",
                map.len(),
                src.point_count()
            )));
        }
        let mut seen = vec![false; dst.point_count()];
        for &q in &map {
            if q >= dst.point_count() || seen[q] {
                return Err(Error::NotAProjectivity("map is not a bijection".into()));
            }
            seen[q] = true;
        }
        Ok(Projectivity { src, dst, map })
    }

    pub fn identity(line: &'a FiniteLine) -> Self {
        Projectivity {
            src: line,
            dst: line,
            map: (0..line.point_count()).collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteLine {
        self.src
    }

    pub fn target(&self) -> &'a FiniteLine {
        self.dst
    }

    pub fn apply(&self, p: PointId) -> PointId {
        self.map[p]
    }

    pub fn map(&self) -> &[PointId] {
        &self.map
    }

    pub fn inverse(&self) -> Projectivity<'a> {
        let mut inv = vec![0; self.map.len()];
        for (p, &q) in self.map.iter().enumerate() {
            inv[q] = p;
        }
        Projectivity {
            src: self.dst,
            dst: self.src,
            map: inv,
        }
    }

    /// Left-to-right composition: apply `self`, then `other`. The middle
    /// line must be the same object.
    pub fn then(&self, other: &Projectivity<'a>) -> Result<Projectivity<'a>> {
        if !std::ptr::eq(self.dst, other.src) {
            return Err(Error::NotComposable(
                "projectivities do not share the middle line".into(),
            ));
        }
        Ok(Projectivity {
            src: self.src,
            dst: other.dst,
            map: self.map.iter().map(|&p| other.map[p]).collect(),
        })
    }

    /// The induced relabeling of arrows; scalars are kept as they are.
    pub fn relabel_arrow(&self, f: LineArrow) -> LineArrow {
        match f {
            LineArrow::Loop { at, lambda } => LineArrow::Loop {
                at: self.map[at],
                lambda,
            },
            LineArrow::Labeled { src, dst, dir } => LineArrow::Labeled {
                src: self.map[src],
                dst: self.map[dst],
                dir: self.map[dir],
            },
        }
    }

    /// True iff the relabeling preserves every composite: for each
    /// composable pair (f, g), `φ̄(f∘g) = φ̄(f)∘φ̄(g)`. Exhaustive over the
    /// whole table.
    pub fn is_functorial(&self) -> bool {
        let d = self.src.dims();
        let e = self.dst.dims();
        let comp_s = self.src.comp_raw();
        let comp_d = self.dst.comp_raw();
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            let pf_id = e.arrow_id(self.relabel_arrow(f));
            for j in 0..d.out_degree {
                let g = d.out_arrow(f.dst(), j);
                let fg = d.arrow_at(comp_s[f_id * d.out_degree + j] as usize);
                let pg = self.relabel_arrow(g);
                let left = comp_d[pf_id * e.out_degree + e.local_index(pg)];
                if left as usize != e.arrow_id(self.relabel_arrow(fg)) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every cross ratio of four distinct points is preserved.
    /// Cheaper than [`Projectivity::is_functorial`] and equivalent to it on
    /// genuine lines.
    pub fn preserves_cross_ratios(&self) -> bool {
        let n = self.src.point_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if a == b || a == c || a == d || b == c || b == d || c == d {
                            continue;
                        }
                        let lhs = self.src.cross_ratio_raw(a, b, c, d).ok();
                        let rhs = self
                            .dst
                            .cross_ratio_raw(self.map[a], self.map[b], self.map[c], self.map[d])
                            .ok();
                        if lhs.is_none() || lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn check_triple(line: &FiniteLine, t: (PointId, PointId, PointId)) -> Result<()> {
    let (a, b, c) = t;
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
    Ok(())
}

/// The unique projectivity carrying one distinct triple to another: the
/// triple maps as given, and every remaining point D goes to the point D'
/// with `(A',B';C',D') = (A,B;C,D)`, found by direct search over the target.
pub fn transport_projectivity<'a>(
    src: &'a FiniteLine,
    dst: &'a FiniteLine,
    from: (PointId, PointId, PointId),
    to: (PointId, PointId, PointId),
) -> Result<Projectivity<'a>> {
    check_triple(src, from)?;
    check_triple(dst, to)?;
    if src.context() != dst.context() {
        return Err(Error::FieldMismatch);
    }
    if src.point_count() != dst.point_count() {
        return Err(Error::NoSolution(
            "lines have different point counts".into(),
        ));
    }
    let (a, b, c) = from;
    let (a2, b2, c2) = to;
    let n = src.point_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (p, q) in [(a, a2), (b, b2), (c, c2)] {
        map[p] = q;
        used[q] = true;
    }
    for d in 0..n {
        if d == a || d == b || d == c {
            continue;
        }
        let mu = src.cross_ratio_raw(a, b, c, d)?;
        let mut image = None;
        for d2 in 0..n {
            if d2 == a2 || d2 == b2 || d2 == c2 {
                continue;
            }
            if dst.cross_ratio_raw(a2, b2, c2, d2)? == mu {
                if image.is_some() {
                    return Err(Error::NoSolution(format!(
                        "two points of the target share cross ratio {mu}"
                    )));
                }
                image = Some(d2);
            }
        }
        let d2 = image.ok_or_else(|| {
            Error::NoSolution(format!("no target point with cross ratio {mu}"))
        })?;
        if used[d2] {
            return Err(Error::NoSolution(
                "cross-ratio transport is not injective".into(),
            ));
        }
        map[d] = d2;
        used[d2] = true;
    }
    Projectivity::new(src, dst, map)
}

/// Decides `(E:A→B)∘(F:B→C) = (G:A→C)` through cross ratios alone: the
/// composite equality holds exactly when `(C,A;G,F)·(B,A;F,E) = 1`.
///
/// Besides A, B, C being distinct and E, F, G labeling the three arrows,
/// the test needs F ≠ A; with F = A the second factor is outside the cross
/// ratio's domain.
pub fn triangle_criterion(
    line: &FiniteLine,
    e: PointId,
    f: PointId,
    g: PointId,
    a: PointId,
    b: PointId,
    c: PointId,
) -> Result<bool> {
    check_triple(line, (a, b, c))?;
    for (label, banned) in [(e, vec![a, b]), (f, vec![a, b, c]), (g, vec![a, c])] {
        if label >= line.point_count() {
            return Err(Error::UnknownPoint(format!("#{label}")));
        }
        if banned.contains(&label) {
            return Err(Error::PreconditionViolated(format!(
                "label {} coincides with a forbidden vertex",
                line.point_name(label)
            )));
        }
    }
    let lhs = line.cross_ratio_extended(c, a, g, f)?;
    let rhs = line.cross_ratio_extended(b, a, f, e)?;
    Ok(lhs.mul(&rhs)?.is_one())
}

fn for_each_permutation(items: &[PointId], visit: &mut impl FnMut(&[PointId]) -> bool) {
    fn rec(buf: &mut Vec<PointId>, rest: &mut Vec<PointId>, visit: &mut impl FnMut(&[PointId]) -> bool) -> bool {
        if rest.is_empty() {
            return visit(buf);
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            buf.push(x);
            let keep_going = rec(buf, rest, visit);
            buf.pop();
            rest.insert(i, x);
            if !keep_going {
                return false;
            }
        }
        true
    }
    rec(&mut Vec::new(), &mut items.to_vec(), visit);
}

/// Counts the functorial bijections extending a triple assignment, by
/// enumerating all (p − 2)! candidate extensions. On a genuine line the
/// count is exactly 1. Candidates are prefiltered by cross-ratio
/// preservation, which every functor satisfies, before the full composite
/// check.
pub fn uniqueness_census(
    src: &FiniteLine,
    dst: &FiniteLine,
    from: (PointId, PointId, PointId),
    to: (PointId, PointId, PointId),
) -> Result<usize> {
    check_triple(src, from)?;
    check_triple(dst, to)?;
    if src.context() != dst.context() {
        return Err(Error::FieldMismatch);
    }
    if src.point_count() != dst.point_count() {
        return Ok(0);
    }
    if src.prime() > CENSUS_BOUND {
        return Err(Error::BoundExceeded(format!(
            "census is capped at p = {CENSUS_BOUND}"
        )));
    }
    let n = src.point_count();
    let (a, b, c) = from;
    let (a2, b2, c2) = to;
    let free_src: Vec<PointId> = (0..n).filter(|&x| x != a && x != b && x != c).collect();
    let free_dst: Vec<PointId> = (0..n).filter(|&x| x != a2 && x != b2 && x != c2).collect();
    let mut count = 0usize;
    for_each_permutation(&free_dst, &mut |images| {
        let mut map = vec![usize::MAX; n];
        map[a] = a2;
        map[b] = b2;
        map[c] = c2;
        for (&p, &q) in free_src.iter().zip(images) {
            map[p] = q;
        }
        let phi = Projectivity::new(src, dst, map).expect("permutations are bijections");
        if phi.preserves_cross_ratios() && phi.is_functorial() {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// Every functorial bijection between two lines. Bounded to p ≤ 7, where
/// (p + 1)! stays manageable.
pub fn all_projectivities<'a>(
    src: &'a FiniteLine,
    dst: &'a FiniteLine,
) -> Result<Vec<Projectivity<'a>>> {
    if src.context() != dst.context() {
        return Err(Error::FieldMismatch);
    }
    if src.prime() > 7 {
        return Err(Error::BoundExceeded(
            "full bijection sweeps are capped at p = 7".into(),
        ));
    }
    if src.point_count() != dst.point_count() {
        return Ok(Vec::new());
    }
    let n = src.point_count();
    let all: Vec<PointId> = (0..n).collect();
    let mut found = Vec::new();
    for_each_permutation(&all, &mut |images| {
        let phi = Projectivity::new(src, dst, images.to_vec())
            .expect("permutations are bijections");
        if phi.preserves_cross_ratios() && phi.is_functorial() {
            found.push(phi);
        }
        true
    });
    Ok(found)
}

/// The projective equivalence of an abstract line with the coordinate model,
/// pinned by sending the chosen triple to `[1:0]`, `[0:1]`, `[1:1]`.
pub fn coordinatize<'a>(
    line: &'a FiniteLine,
    triple: (PointId, PointId, PointId),
    model: &'a CoordinateModel,
) -> Result<Projectivity<'a>> {
    let ctx = model.context();
    let h = model.point_id(&ProjPoint::horizontal(ctx))?;
    let v = model.point_id(&ProjPoint::vertical(ctx))?;
    let d = model.point_id(&ProjPoint::diagonal(ctx))?;
    transport_projectivity(line, model.line(), triple, (h, v, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstract_line::build_coordinate_model;
    use crate::coordinate_line::{compose, Arrow};

    #[test]
    fn transport_of_a_triple_to_itself_is_the_identity() {
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        let phi = transport_projectivity(line, line, (0, 1, 2), (0, 1, 2)).unwrap();
        assert_eq!(phi.map(), Projectivity::identity(line).map());
        assert!(phi.is_functorial());
    }

    #[test]
    fn transport_swapping_h_and_v_inverts_affine_coordinates() {
        // (H,V,D) → (V,H,D) over GF(5) sends [1:x] to the class of [x:1].
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        let ctx = model.context();
        let h = model.point_id(&ProjPoint::horizontal(ctx)).unwrap();
        let v = model.point_id(&ProjPoint::vertical(ctx)).unwrap();
        let d = model.point_id(&ProjPoint::diagonal(ctx)).unwrap();
        let phi = transport_projectivity(line, line, (h, v, d), (v, h, d)).unwrap();
        assert!(phi.is_functorial());
        for x in 0..5i64 {
            let p = model
                .point_id(&ProjPoint::affine(ctx.integer(x)))
                .unwrap();
            let image = model.proj_point(phi.apply(p));
            let expected = ProjPoint::from_coords(ctx.integer(x), ctx.one()).unwrap();
            assert_eq!(*image, expected);
        }
        assert_eq!(phi.apply(d), d);
    }

    #[test]
    fn gf3_transports_realize_every_permutation() {
        let model = build_coordinate_model(3).unwrap();
        let line = model.line();
        let mut maps = std::collections::HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if a == b || a == c || b == c {
                        continue;
                    }
                    let phi =
                        transport_projectivity(line, line, (0, 1, 2), (a, b, c)).unwrap();
                    assert!(phi.is_functorial());
                    maps.insert(phi.map().to_vec());
                }
            }
        }
        assert_eq!(maps.len(), 24);
    }

    #[test]
    fn a_three_cycle_off_a_triple_is_not_functorial() {
        // Fix three points of the GF(5) line and cycle the other three.
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        let map = vec![0, 1, 2, 4, 5, 3];
        let phi = Projectivity::new(line, line, map).unwrap();
        assert!(!phi.preserves_cross_ratios());
        assert!(!phi.is_functorial());
    }

    #[test]
    fn transports_compose_along_matching_triples() {
        let model = build_coordinate_model(3).unwrap();
        let line = model.line();
        for t1 in [(0, 1, 2), (1, 3, 0)] {
            for t2 in [(2, 0, 3), (3, 1, 2)] {
                for t3 in [(1, 2, 3), (0, 3, 1)] {
                    let ab = transport_projectivity(line, line, t1, t2).unwrap();
                    let bc = transport_projectivity(line, line, t2, t3).unwrap();
                    let ac = transport_projectivity(line, line, t1, t3).unwrap();
                    assert_eq!(ab.then(&bc).unwrap().map(), ac.map());
                }
            }
        }
    }

    #[test]
    fn transport_preserves_every_cross_ratio_not_only_anchored_ones() {
        for p in [3u64, 5] {
            let model = build_coordinate_model(p).unwrap();
            let line = model.line();
            let n = line.point_count();
            let phi = transport_projectivity(line, line, (0, 1, 2), (2, 3, 1)).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            if a == b || c == a || c == b || d == a || d == b {
                                continue;
                            }
                            assert_eq!(
                                line.cross_ratio(a, b, c, d).unwrap(),
                                line.cross_ratio(
                                    phi.apply(a),
                                    phi.apply(b),
                                    phi.apply(c),
                                    phi.apply(d)
                                )
                                .unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn census_finds_exactly_one_extension() {
        let m3 = build_coordinate_model(3).unwrap();
        assert_eq!(
            uniqueness_census(m3.line(), m3.line(), (0, 1, 2), (3, 0, 2)).unwrap(),
            1
        );
        let m5 = build_coordinate_model(5).unwrap();
        assert_eq!(
            uniqueness_census(m5.line(), m5.line(), (0, 1, 2), (4, 2, 5)).unwrap(),
            1
        );
    }

    #[test]
    fn census_bound_and_triple_validation() {
        let m3 = build_coordinate_model(3).unwrap();
        assert!(matches!(
            uniqueness_census(m3.line(), m3.line(), (0, 0, 2), (1, 0, 2)),
            Err(Error::TriplesNotDistinct(_))
        ));
        let m13 = build_coordinate_model(13).unwrap();
        assert!(matches!(
            uniqueness_census(m13.line(), m13.line(), (0, 1, 2), (0, 1, 2)),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let m3 = build_coordinate_model(3).unwrap();
        let m5 = build_coordinate_model(5).unwrap();
        assert!(matches!(
            transport_projectivity(m3.line(), m5.line(), (0, 1, 2), (0, 1, 2)),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn triangle_criterion_agrees_with_composition() {
        // Oracle: compose the two arrows and compare with the candidate.
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        let n = line.point_count();
        let mut true_count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || a == c || b == c {
                        continue;
                    }
                    for e in 0..n {
                        if e == a || e == b {
                            continue;
                        }
                        for f in 0..n {
                            if f == a || f == b || f == c {
                                continue;
                            }
                            for g in 0..n {
                                if g == a || g == c {
                                    continue;
                                }
                                let lhs = compose(
                                    &model
                                        .to_arrow(LineArrow::Labeled { src: a, dst: b, dir: e })
                                        .unwrap(),
                                    &model
                                        .to_arrow(LineArrow::Labeled { src: b, dst: c, dir: f })
                                        .unwrap(),
                                )
                                .unwrap();
                                let rhs: Arrow = model
                                    .to_arrow(LineArrow::Labeled { src: a, dst: c, dir: g })
                                    .unwrap();
                                let expected = lhs == rhs;
                                let got =
                                    triangle_criterion(line, e, f, g, a, b, c).unwrap();
                                assert_eq!(got, expected);
                                if got {
                                    true_count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(true_count > 0);
    }

    #[test]
    fn triangle_criterion_common_direction_is_true() {
        let model = build_coordinate_model(7).unwrap();
        let line = model.line();
        // E = F = G: the chained projection in a single direction.
        assert!(triangle_criterion(line, 4, 4, 4, 0, 1, 2).unwrap());
        assert!(matches!(
            triangle_criterion(line, 4, 0, 4, 0, 1, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn coordinatize_the_model_at_its_own_frame_is_the_identity() {
        let model = build_coordinate_model(5).unwrap();
        let ctx = model.context();
        let h = model.point_id(&ProjPoint::horizontal(ctx)).unwrap();
        let v = model.point_id(&ProjPoint::vertical(ctx)).unwrap();
        let d = model.point_id(&ProjPoint::diagonal(ctx)).unwrap();
        let phi = coordinatize(model.line(), (h, v, d), &model).unwrap();
        assert_eq!(phi.map(), Projectivity::identity(model.line()).map());
    }

    #[test]
    fn gf3_has_twenty_four_projectivities() {
        let model = build_coordinate_model(3).unwrap();
        let phis = all_projectivities(model.line(), model.line()).unwrap();
        assert_eq!(phis.len(), 24);
    }
}

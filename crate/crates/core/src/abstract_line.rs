//! Finite abstract projective lines as explicit composition tables, and the
//! exhaustive axiom verifier.
//!
//! A [`FiniteLine`] over GF(p) is a list of named points together with a
//! total composition table over its arrows. Arrows are stored structurally —
//! a scalar loop `λ@P` with λ ∈ GF(p)*, or a labeled arrow `(C : A → B)`
//! with A, B, C pairwise distinct — so the bijection between the hom-set of
//! a point pair and the remaining points is built into the data model. What
//! remains checkable is whether the table respects it;
//! [`FiniteLine::verify_axioms`] decides that by brute force over seven
//! axiom groups:
//!
//! 1. cardinality: p + 1 points;
//! 2. category laws: the loop 1 is a two-sided identity and composition is
//!    associative on every composable triple;
//! 3. every arrow has a two-sided inverse;
//! 4. loop composition at a vertex is field multiplication;
//! 5. scalar loops are central: `λ·f = f·λ`;
//! 6. idempotence: `(F:A→B)∘(F:B→A) = 1` and `(F:A→B)∘(F:B→C) = (F:A→C)`;
//! 7. the permutation laws tying the six cross-ratio values of a distinct
//!    4-tuple to one another.
//!
//! Lines serialize to a canonical JSON structure file; see
//! [`FiniteLine::to_json`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coordinate_line::{compose as compose_coord, enumerate_points, Arrow, ProjPoint};
use crate::error::{Error, Result};
use crate::scalars::{FieldContext, Scalar};

/// Index of a point in a [`FiniteLine`].
pub type PointId = usize;

/// Default upper bound on the modulus accepted by [`build_coordinate_model`].
pub const DEFAULT_MODEL_BOUND: u64 = 101;

/// An arrow of a finite line, over point indices. `lambda` is a canonical
/// residue in `1..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LineArrow {
    Loop { at: PointId, lambda: u64 },
    Labeled {
        src: PointId,
        dst: PointId,
        dir: PointId,
    },
}

impl LineArrow {
    pub fn src(&self) -> PointId {
        match self {
            LineArrow::Loop { at, .. } => *at,
            LineArrow::Labeled { src, .. } => *src,
        }
    }

    pub fn dst(&self) -> PointId {
        match self {
            LineArrow::Loop { at, .. } => *at,
            LineArrow::Labeled { dst, .. } => *dst,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, LineArrow::Loop { .. })
    }
}

/// Arrow-indexing arithmetic shared by every table of the same shape.
///
/// Arrow ids enumerate all loops first (by vertex, then λ = 1..p), then all
/// labeled arrows (by source, target rank, direction rank). The composition
/// table stores, for each arrow f and each arrow g out of f's target, the id
/// of the composite at slot `f·out_degree + local(g)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Dims {
    pub n: usize,
    pub p: u64,
    /// p − 1 loops per vertex.
    pub lpv: usize,
    /// n − 2 labels per ordered point pair.
    pub lpp: usize,
    pub loop_block: usize,
    pub arrow_count: usize,
    pub out_degree: usize,
}

impl Dims {
    pub fn new(n: usize, p: u64) -> Dims {
        let lpv = (p - 1) as usize;
        let lpp = n.saturating_sub(2);
        let loop_block = n * lpv;
        let labeled = n * n.saturating_sub(1) * lpp;
        Dims {
            n,
            p,
            lpv,
            lpp,
            loop_block,
            arrow_count: loop_block + labeled,
            out_degree: lpv + n.saturating_sub(1) * lpp,
        }
    }

    pub fn arrow_id(&self, a: LineArrow) -> usize {
        match a {
            LineArrow::Loop { at, lambda } => at * self.lpv + (lambda as usize - 1),
            LineArrow::Labeled { src, dst, dir } => {
                let rank_dst = if dst < src { dst } else { dst - 1 };
                let rank_dir = dir - usize::from(src < dir) - usize::from(dst < dir);
                self.loop_block
                    + src * (self.n - 1) * self.lpp
                    + rank_dst * self.lpp
                    + rank_dir
            }
        }
    }

    pub fn arrow_at(&self, id: usize) -> LineArrow {
        if id < self.loop_block {
            LineArrow::Loop {
                at: id / self.lpv,
                lambda: (id % self.lpv) as u64 + 1,
            }
        } else {
            let r = id - self.loop_block;
            let per_src = (self.n - 1) * self.lpp;
            let src = r / per_src;
            let r = r % per_src;
            let rank_dst = r / self.lpp;
            let rank_dir = r % self.lpp;
            let dst = if rank_dst < src { rank_dst } else { rank_dst + 1 };
            let (lo, hi) = if src < dst { (src, dst) } else { (dst, src) };
            let mut dir = rank_dir;
            if dir >= lo {
                dir += 1;
            }
            if dir >= hi {
                dir += 1;
            }
            LineArrow::Labeled { src, dst, dir }
        }
    }

    /// Position of g among the arrows out of its own source vertex.
    pub fn local_index(&self, g: LineArrow) -> usize {
        match g {
            LineArrow::Loop { lambda, .. } => lambda as usize - 1,
            LineArrow::Labeled { src, dst, dir } => {
                let rank_dst = if dst < src { dst } else { dst - 1 };
                let rank_dir = dir - usize::from(src < dir) - usize::from(dst < dir);
                self.lpv + rank_dst * self.lpp + rank_dir
            }
        }
    }

    /// The `local`-th arrow out of `vertex`.
    pub fn out_arrow(&self, vertex: PointId, local: usize) -> LineArrow {
        if local < self.lpv {
            LineArrow::Loop {
                at: vertex,
                lambda: local as u64 + 1,
            }
        } else {
            let r = local - self.lpv;
            let rank_dst = r / self.lpp;
            let rank_dir = r % self.lpp;
            let dst = if rank_dst < vertex { rank_dst } else { rank_dst + 1 };
            let (lo, hi) = if vertex < dst { (vertex, dst) } else { (dst, vertex) };
            let mut dir = rank_dir;
            if dir >= lo {
                dir += 1;
            }
            if dir >= hi {
                dir += 1;
            }
            LineArrow::Labeled {
                src: vertex,
                dst,
                dir,
            }
        }
    }

    pub fn slot(&self, f_id: usize, g: LineArrow) -> usize {
        f_id * self.out_degree + self.local_index(g)
    }
}

const MISSING: u32 = u32::MAX;

/// A finite abstract projective line: named points plus a total composition
/// table. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteLine {
    ctx: FieldContext,
    points: Vec<String>,
    dims: Dims,
    comp: Vec<u32>,
}

impl PartialEq for FiniteLine {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.points == other.points && self.comp == other.comp
    }
}

impl Eq for FiniteLine {}

impl FiniteLine {
    fn new_empty(ctx: FieldContext, points: Vec<String>) -> Result<(Self, Dims)> {
        let p = ctx.modulus().ok_or(Error::NotEnumerable)?;
        if points.is_empty() {
            return Err(Error::MalformedTable("no points".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &points {
            if !seen.insert(name) {
                return Err(Error::MalformedTable(format!("duplicate point {name:?}")));
            }
        }
        let dims = Dims::new(points.len(), p);
        let comp = vec![MISSING; dims.arrow_count * dims.out_degree];
        Ok((
            FiniteLine {
                ctx,
                points,
                dims,
                comp,
            },
            dims,
        ))
    }

    /// Builds the table by evaluating `compose` on every composable pair.
    pub fn from_composition_fn(
        ctx: FieldContext,
        points: Vec<String>,
        mut compose: impl FnMut(LineArrow, LineArrow) -> Result<LineArrow>,
    ) -> Result<Self> {
        let (mut line, dims) = FiniteLine::new_empty(ctx, points)?;
        for f_id in 0..dims.arrow_count {
            let f = dims.arrow_at(f_id);
            for local in 0..dims.out_degree {
                let g = dims.out_arrow(f.dst(), local);
                let fg = compose(f, g)?;
                line.validate_arrow(fg)?;
                line.comp[f_id * dims.out_degree + local] = dims.arrow_id(fg) as u32;
            }
        }
        Ok(line)
    }

    /// Builds a line from explicit `(f, g, f∘g)` entries. The entries must
    /// cover every composable pair exactly once.
    pub fn from_entries(
        ctx: FieldContext,
        points: Vec<String>,
        entries: &[(LineArrow, LineArrow, LineArrow)],
    ) -> Result<Self> {
        let (mut line, dims) = FiniteLine::new_empty(ctx, points)?;
        for &(f, g, fg) in entries {
            line.validate_arrow(f)?;
            line.validate_arrow(g)?;
            line.validate_arrow(fg)?;
            if f.dst() != g.src() {
                return Err(Error::MalformedTable(format!(
                    "entry for non-composable pair {} , {}",
                    line.format_arrow(f),
                    line.format_arrow(g)
                )));
            }
            let slot = dims.slot(dims.arrow_id(f), g);
            if line.comp[slot] != MISSING {
                return Err(Error::MalformedTable(format!(
                    "duplicate entry for {} , {}",
                    line.format_arrow(f),
                    line.format_arrow(g)
                )));
            }
            line.comp[slot] = dims.arrow_id(fg) as u32;
        }
        if let Some(slot) = line.comp.iter().position(|&v| v == MISSING) {
            let f = dims.arrow_at(slot / dims.out_degree);
            let g = dims.out_arrow(f.dst(), slot % dims.out_degree);
            return Err(Error::MalformedTable(format!(
                "missing entry for {} , {}",
                line.format_arrow(f),
                line.format_arrow(g)
            )));
        }
        Ok(line)
    }

    /// A copy of the line with a single table entry replaced. The new value
    /// may break closure or any axiom; this is the entry point for building
    /// counterexample tables.
    pub fn with_patched_entry(
        &self,
        f: LineArrow,
        g: LineArrow,
        fg: LineArrow,
    ) -> Result<FiniteLine> {
        self.validate_arrow(f)?;
        self.validate_arrow(g)?;
        self.validate_arrow(fg)?;
        if f.dst() != g.src() {
            return Err(Error::NotComposable(format!(
                "{} then {}",
                self.format_arrow(f),
                self.format_arrow(g)
            )));
        }
        let mut out = self.clone();
        let slot = self.dims.slot(self.dims.arrow_id(f), g);
        out.comp[slot] = self.dims.arrow_id(fg) as u32;
        Ok(out)
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn prime(&self) -> u64 {
        self.dims.p
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, id: PointId) -> &str {
        &self.points[id]
    }

    pub fn point_index(&self, name: &str) -> Result<PointId> {
        self.points
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn arrow_count(&self) -> usize {
        self.dims.arrow_count
    }

    /// All arrows of the line in id order.
    pub fn arrows(&self) -> impl Iterator<Item = LineArrow> + '_ {
        (0..self.dims.arrow_count).map(|id| self.dims.arrow_at(id))
    }

    /// The labels of the hom-set from `a` to `b`: every point other than the
    /// two endpoints.
    pub fn hom_labels(&self, a: PointId, b: PointId) -> Result<Vec<PointId>> {
        self.validate_point(a)?;
        self.validate_point(b)?;
        if a == b {
            return Err(Error::PointsNotDistinct(format!(
                "{} = {}",
                self.points[a], self.points[b]
            )));
        }
        Ok((0..self.dims.n).filter(|&x| x != a && x != b).collect())
    }

    fn validate_point(&self, id: PointId) -> Result<()> {
        if id >= self.dims.n {
            return Err(Error::UnknownPoint(format!("#{id}")));
        }
        Ok(())
    }

    fn validate_arrow(&self, a: LineArrow) -> Result<()> {
        match a {
            LineArrow::Loop { at, lambda } => {
                self.validate_point(at)?;
                if lambda == 0 || lambda >= self.dims.p {
                    return Err(Error::ZeroScalar);
                }
            }
            LineArrow::Labeled { src, dst, dir } => {
                self.validate_point(src)?;
                self.validate_point(dst)?;
                self.validate_point(dir)?;
                if src == dst || src == dir || dst == dir {
                    return Err(Error::PointsNotDistinct(format!(
                        "{}, {}, {}",
                        self.points[src], self.points[dst], self.points[dir]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Renders an arrow with point names.
    pub fn format_arrow(&self, a: LineArrow) -> String {
        match a {
            LineArrow::Loop { at, lambda } => format!("{lambda}@{}", self.points[at]),
            LineArrow::Labeled { src, dst, dir } => format!(
                "({}:{}->{})",
                self.points[dir], self.points[src], self.points[dst]
            ),
        }
    }

    /// Looks up the composite `f` then `g` in the table.
    pub fn compose(&self, f: LineArrow, g: LineArrow) -> Result<LineArrow> {
        self.validate_arrow(f)?;
        self.validate_arrow(g)?;
        if f.dst() != g.src() {
            return Err(Error::NotComposable(format!(
                "{} then {}",
                self.format_arrow(f),
                self.format_arrow(g)
            )));
        }
        let id = self.comp[self.dims.slot(self.dims.arrow_id(f), g)];
        Ok(self.dims.arrow_at(id as usize))
    }

    pub(crate) fn dims(&self) -> Dims {
        self.dims
    }

    pub(crate) fn comp_raw(&self) -> &[u32] {
        &self.comp
    }

    pub(crate) fn scalar(&self, residue: u64) -> Scalar {
        self.ctx.integer(residue as i64)
    }

    /// The cross ratio `(A,B;C,D)` of the groupoid: the value of the vertex
    /// loop `(C:A→B)∘(D:B→A)`. Requires A ≠ B and C, D outside {A, B};
    /// C = D is allowed and yields 1 on any line satisfying the axioms.
    pub fn cross_ratio(&self, a: PointId, b: PointId, c: PointId, d: PointId) -> Result<Scalar> {
        Ok(self.scalar(self.cross_ratio_raw(a, b, c, d)?))
    }

    pub(crate) fn cross_ratio_raw(
        &self,
        a: PointId,
        b: PointId,
        c: PointId,
        d: PointId,
    ) -> Result<u64> {
        for id in [a, b, c, d] {
            self.validate_point(id)?;
        }
        if a == b || c == a || c == b || d == a || d == b {
            return Err(Error::PointsNotDistinct(format!(
                "({},{};{},{})",
                self.points[a], self.points[b], self.points[c], self.points[d]
            )));
        }
        let f = LineArrow::Labeled {
            src: a,
            dst: b,
            dir: c,
        };
        let g = LineArrow::Labeled {
            src: b,
            dst: a,
            dir: d,
        };
        let id = self.comp[self.dims.slot(self.dims.arrow_id(f), g)];
        match self.dims.arrow_at(id as usize) {
            LineArrow::Loop { at, lambda } if at == a => Ok(lambda),
            other => Err(Error::MalformedTable(format!(
                "cross-ratio composite {} is not a loop at {}",
                self.format_arrow(other),
                self.points[a]
            ))),
        }
    }

    /// The cross ratio on its maximal domain A ≠ D, B ≠ C, with the
    /// degenerate values `(A,A;C,D) = (A,B;C,C) = 1` and
    /// `(A,B;A,D) = (A,B;C,B) = 0`.
    pub fn cross_ratio_extended(
        &self,
        a: PointId,
        b: PointId,
        c: PointId,
        d: PointId,
    ) -> Result<Scalar> {
        for id in [a, b, c, d] {
            self.validate_point(id)?;
        }
        if a == d || b == c {
            return Err(Error::UndefinedCrossRatio);
        }
        if a == b || c == d {
            return Ok(self.ctx.one());
        }
        if c == a || d == b {
            return Ok(self.ctx.zero());
        }
        self.cross_ratio(a, b, c, d)
    }

    /// Runs the exhaustive axiom checks. A non-closed table (a composite
    /// whose endpoints disagree with its factors) is reported as
    /// [`Error::MalformedTable`]; every other defect becomes a violation in
    /// the report.
    pub fn verify_axioms(&self, opts: &VerifyOptions) -> Result<AxiomReport> {
        let d = self.dims;
        // Closure pass: every composite must run from src(f) to dst(g).
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            for local in 0..d.out_degree {
                let g = d.out_arrow(f.dst(), local);
                let fg = d.arrow_at(self.comp[f_id * d.out_degree + local] as usize);
                if fg.src() != f.src() || fg.dst() != g.dst() {
                    return Err(Error::MalformedTable(format!(
                        "composite of {} and {} is {}, which has the wrong endpoints",
                        self.format_arrow(f),
                        self.format_arrow(g),
                        self.format_arrow(fg)
                    )));
                }
            }
        }

        let mut col = Collector::new(opts);
        self.check_cardinality(&mut col);
        if !col.stop() {
            self.check_category_laws(&mut col);
        }
        if !col.stop() {
            self.check_invertibility(&mut col);
        }
        if !col.stop() {
            self.check_vertex_group(&mut col);
        }
        if !col.stop() {
            self.check_centrality(&mut col);
        }
        if !col.stop() {
            self.check_idempotence(&mut col);
        }
        if !col.stop() {
            self.check_permutation_laws(&mut col);
        }
        Ok(col.into_report())
    }

    fn check_cardinality(&self, col: &mut Collector) {
        let expected = self.dims.p as usize + 1;
        if self.dims.n != expected {
            col.push(
                AxiomGroup::Cardinality,
                format!("{} points, expected {expected}", self.dims.n),
            );
        }
    }

    fn check_category_laws(&self, col: &mut Collector) {
        let d = self.dims;
        // The loop 1 is a two-sided identity.
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            let one_src = LineArrow::Loop {
                at: f.src(),
                lambda: 1,
            };
            let one_dst = LineArrow::Loop {
                at: f.dst(),
                lambda: 1,
            };
            let left = self.comp[d.slot(d.arrow_id(one_src), f)];
            let right = self.comp[d.slot(f_id, one_dst)];
            if left as usize != f_id {
                col.push(
                    AxiomGroup::CategoryLaws,
                    format!(
                        "1∘{} = {}",
                        self.format_arrow(f),
                        self.format_arrow(d.arrow_at(left as usize))
                    ),
                );
            }
            if right as usize != f_id {
                col.push(
                    AxiomGroup::CategoryLaws,
                    format!(
                        "{}∘1 = {}",
                        self.format_arrow(f),
                        self.format_arrow(d.arrow_at(right as usize))
                    ),
                );
            }
            if col.stop() {
                return;
            }
        }
        // Associativity over every composable triple. Closure has already
        // been verified, so a local index at dst(g) works for both the
        // (f∘g, h) and the (g, h) lookups.
        let comp = &self.comp;
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            let mid = f.dst();
            for j in 0..d.out_degree {
                let fg = comp[f_id * d.out_degree + j] as usize;
                let g = d.out_arrow(mid, j);
                let g_id = d.arrow_id(g);
                for k in 0..d.out_degree {
                    let gh = comp[g_id * d.out_degree + k] as usize;
                    let left = comp[fg * d.out_degree + k];
                    let right = comp[f_id * d.out_degree + d.local_index(d.arrow_at(gh))];
                    if left != right {
                        let h = d.out_arrow(g.dst(), k);
                        col.push(
                            AxiomGroup::CategoryLaws,
                            format!(
                                "({}∘{})∘{} = {} but {}∘({}∘{}) = {}",
                                self.format_arrow(f),
                                self.format_arrow(g),
                                self.format_arrow(h),
                                self.format_arrow(d.arrow_at(left as usize)),
                                self.format_arrow(f),
                                self.format_arrow(g),
                                self.format_arrow(h),
                                self.format_arrow(d.arrow_at(right as usize))
                            ),
                        );
                        if col.stop() {
                            return;
                        }
                    }
                }
            }
        }
    }

    fn check_invertibility(&self, col: &mut Collector) {
        let d = self.dims;
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            let one_src = d.arrow_id(LineArrow::Loop {
                at: f.src(),
                lambda: 1,
            }) as u32;
            let one_dst = d.arrow_id(LineArrow::Loop {
                at: f.dst(),
                lambda: 1,
            }) as u32;
            let mut invertible = false;
            for local in 0..d.out_degree {
                let g = d.out_arrow(f.dst(), local);
                if g.dst() != f.src() {
                    continue;
                }
                let fg = self.comp[f_id * d.out_degree + local];
                let gf = self.comp[d.slot(d.arrow_id(g), f)];
                if fg == one_src && gf == one_dst {
                    invertible = true;
                    break;
                }
            }
            if !invertible {
                col.push(
                    AxiomGroup::Invertibility,
                    format!("{} has no two-sided inverse", self.format_arrow(f)),
                );
                if col.stop() {
                    return;
                }
            }
        }
    }

    fn check_vertex_group(&self, col: &mut Collector) {
        let d = self.dims;
        for at in 0..d.n {
            for lam in 1..d.p {
                for mu in 1..d.p {
                    let f = LineArrow::Loop { at, lambda: lam };
                    let g = LineArrow::Loop { at, lambda: mu };
                    let expected = LineArrow::Loop {
                        at,
                        lambda: lam * mu % d.p,
                    };
                    let got = self.comp[d.slot(d.arrow_id(f), g)];
                    if got as usize != d.arrow_id(expected) {
                        col.push(
                            AxiomGroup::VertexGroup,
                            format!(
                                "{}∘{} = {}, expected {}",
                                self.format_arrow(f),
                                self.format_arrow(g),
                                self.format_arrow(d.arrow_at(got as usize)),
                                self.format_arrow(expected)
                            ),
                        );
                        if col.stop() {
                            return;
                        }
                    }
                }
            }
        }
    }

    fn check_centrality(&self, col: &mut Collector) {
        let d = self.dims;
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            for lam in 1..d.p {
                let at_src = LineArrow::Loop {
                    at: f.src(),
                    lambda: lam,
                };
                let at_dst = LineArrow::Loop {
                    at: f.dst(),
                    lambda: lam,
                };
                let left = self.comp[d.slot(d.arrow_id(at_src), f)];
                let right = self.comp[d.slot(f_id, at_dst)];
                if left != right {
                    col.push(
                        AxiomGroup::Centrality,
                        format!(
                            "{lam}∘{} = {} but {}∘{lam} = {}",
                            self.format_arrow(f),
                            self.format_arrow(d.arrow_at(left as usize)),
                            self.format_arrow(f),
                            self.format_arrow(d.arrow_at(right as usize))
                        ),
                    );
                    if col.stop() {
                        return;
                    }
                }
            }
        }
    }

    fn check_idempotence(&self, col: &mut Collector) {
        let d = self.dims;
        for a in 0..d.n {
            for b in 0..d.n {
                if a == b {
                    continue;
                }
                for dir in 0..d.n {
                    if dir == a || dir == b {
                        continue;
                    }
                    let fwd = LineArrow::Labeled { src: a, dst: b, dir };
                    let back = LineArrow::Labeled { src: b, dst: a, dir };
                    let round = self.comp[d.slot(d.arrow_id(fwd), back)];
                    let one = d.arrow_id(LineArrow::Loop { at: a, lambda: 1 });
                    if round as usize != one {
                        col.push(
                            AxiomGroup::Idempotence,
                            format!(
                                "{}∘{} = {}, expected 1@{}",
                                self.format_arrow(fwd),
                                self.format_arrow(back),
                                self.format_arrow(d.arrow_at(round as usize)),
                                self.points[a]
                            ),
                        );
                        if col.stop() {
                            return;
                        }
                    }
                    for c in 0..d.n {
                        if c == a || c == b || c == dir {
                            continue;
                        }
                        let next = LineArrow::Labeled { src: b, dst: c, dir };
                        let chained = self.comp[d.slot(d.arrow_id(fwd), next)];
                        let expected = d.arrow_id(LineArrow::Labeled { src: a, dst: c, dir });
                        if chained as usize != expected {
                            col.push(
                                AxiomGroup::Idempotence,
                                format!(
                                    "{}∘{} = {}, expected {}",
                                    self.format_arrow(fwd),
                                    self.format_arrow(next),
                                    self.format_arrow(d.arrow_at(chained as usize)),
                                    self.format_arrow(d.arrow_at(expected))
                                ),
                            );
                            if col.stop() {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_permutation_laws(&self, col: &mut Collector) {
        let d = self.dims;
        let p = d.p;
        let sub = |x: u64, y: u64| (x + p - y) % p;
        for a in 0..d.n {
            for b in 0..d.n {
                for c in 0..d.n {
                    for e in 0..d.n {
                        if a == b || a == c || a == e || b == c || b == e || c == e {
                            continue;
                        }
                        let mu = self
                            .cross_ratio_raw(a, b, c, e)
                            .expect("closure was verified");
                        if mu == 1 {
                            // On a genuine line four distinct points never
                            // have cross ratio 1; a table that produces it
                            // would divide by zero below.
                            col.push(
                                AxiomGroup::PermutationLaws,
                                format!(
                                    "cross ratio of distinct ({},{};{},{}) is 1",
                                    self.points[a],
                                    self.points[b],
                                    self.points[c],
                                    self.points[e]
                                ),
                            );
                            if col.stop() {
                                return;
                            }
                            continue;
                        }
                        // The six orbit values, derived from μ by field
                        // arithmetic, against the table's own cross ratios.
                        let one_minus = sub(1, mu);
                        let ratio = |num: u64, den: u64| num * mod_inv(den, p) % p;
                        let checks = [
                            ((b, a, e, c), mu),
                            ((c, e, a, b), mu),
                            ((e, c, b, a), mu),
                            ((a, b, e, c), mod_inv(mu, p)),
                            ((a, c, b, e), one_minus),
                            ((a, c, e, b), mod_inv(one_minus, p)),
                            ((a, e, b, c), ratio(sub(mu, 1), mu)),
                            ((a, e, c, b), ratio(mu, sub(mu, 1))),
                        ];
                        for ((x, y, z, w), expected) in checks {
                            let got = self
                                .cross_ratio_raw(x, y, z, w)
                                .expect("closure was verified");
                            if got != expected {
                                col.push(
                                    AxiomGroup::PermutationLaws,
                                    format!(
                                        "({},{};{},{}) = {got}, expected {expected} from \
                                         ({},{};{},{}) = {mu}",
                                        self.points[x],
                                        self.points[y],
                                        self.points[z],
                                        self.points[w],
                                        self.points[a],
                                        self.points[b],
                                        self.points[c],
                                        self.points[e]
                                    ),
                                );
                                if col.stop() {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Serializes to the canonical structure-file form: points sorted
    /// lexicographically, entries sorted by (f, g), compact JSON plus a
    /// trailing newline. Writing a reloaded file reproduces it byte for
    /// byte.
    pub fn to_json(&self) -> String {
        let d = self.dims;
        let mut sorted = self.points.clone();
        sorted.sort();
        let render = |a: LineArrow| -> ArrowRepr {
            match a {
                LineArrow::Loop { at, lambda } => ArrowRepr::Scalar {
                    at: self.points[at].clone(),
                    lambda: lambda.to_string(),
                },
                LineArrow::Labeled { src, dst, dir } => ArrowRepr::Labeled {
                    src: self.points[src].clone(),
                    dst: self.points[dst].clone(),
                    dir: self.points[dir].clone(),
                },
            }
        };
        let mut comp = Vec::with_capacity(d.arrow_count * d.out_degree);
        for f_id in 0..d.arrow_count {
            let f = d.arrow_at(f_id);
            for local in 0..d.out_degree {
                let g = d.out_arrow(f.dst(), local);
                let fg = d.arrow_at(self.comp[f_id * d.out_degree + local] as usize);
                comp.push(CompEntry {
                    f: render(f),
                    g: render(g),
                    fg: render(fg),
                });
            }
        }
        comp.sort_by(|x, y| (&x.f, &x.g).cmp(&(&y.f, &y.g)));
        let file = LineFile {
            field: FieldRepr {
                kind: "prime".into(),
                p: Some(d.p),
            },
            points: sorted,
            comp,
        };
        let mut s = serde_json::to_string(&file).expect("structure files always serialize");
        s.push('\n');
        s
    }

    /// Parses a structure file. Shape problems (unknown points, zero loop
    /// scalars, duplicate or missing pairs) are [`Error::MalformedTable`];
    /// closure and the axioms themselves are left to
    /// [`FiniteLine::verify_axioms`].
    pub fn from_json(s: &str) -> Result<FiniteLine> {
        let file: LineFile =
            serde_json::from_str(s).map_err(|e| Error::MalformedTable(e.to_string()))?;
        if file.field.kind != "prime" {
            return Err(Error::MalformedTable(format!(
                "unsupported field kind {:?}",
                file.field.kind
            )));
        }
        let p = file
            .field
            .p
            .ok_or_else(|| Error::MalformedTable("missing modulus".into()))?;
        let ctx = FieldContext::prime(p)?;
        let index: HashMap<&str, usize> = file
            .points
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != file.points.len() {
            return Err(Error::MalformedTable("duplicate point name".into()));
        }
        let resolve = |repr: &ArrowRepr| -> Result<LineArrow> {
            let lookup = |name: &str| -> Result<usize> {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::MalformedTable(format!("unknown point {name:?}")))
            };
            match repr {
                ArrowRepr::Scalar { at, lambda } => {
                    let lambda: u64 = lambda
                        .parse()
                        .map_err(|_| Error::MalformedTable(format!("bad scalar {lambda:?}")))?;
                    if lambda == 0 || lambda >= p {
                        return Err(Error::MalformedTable(format!(
                            "loop scalar {lambda} outside 1..{p}"
                        )));
                    }
                    Ok(LineArrow::Loop {
                        at: lookup(at)?,
                        lambda,
                    })
                }
                ArrowRepr::Labeled { src, dst, dir } => {
                    let (src, dst, dir) = (lookup(src)?, lookup(dst)?, lookup(dir)?);
                    if src == dst || src == dir || dst == dir {
                        return Err(Error::MalformedTable(
                            "labeled arrow with repeated points".into(),
                        ));
                    }
                    Ok(LineArrow::Labeled { src, dst, dir })
                }
            }
        };
        let mut entries = Vec::with_capacity(file.comp.len());
        for e in &file.comp {
            entries.push((resolve(&e.f)?, resolve(&e.g)?, resolve(&e.fg)?));
        }
        FiniteLine::from_entries(ctx, file.points, &entries)
    }
}

pub(crate) fn mod_inv(x: u64, p: u64) -> u64 {
    // Fermat: x^(p−2) mod p.
    let mut base = x % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Options for [`FiniteLine::verify_axioms`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Stop at the first violation instead of collecting them.
    pub early_exit: bool,
    /// Cap on collected violations.
    pub max_violations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            early_exit: false,
            max_violations: 100,
        }
    }
}

/// The seven axiom groups the verifier checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AxiomGroup {
    Cardinality,
    CategoryLaws,
    Invertibility,
    VertexGroup,
    Centrality,
    Idempotence,
    PermutationLaws,
}

impl AxiomGroup {
    pub const ALL: [AxiomGroup; 7] = [
        AxiomGroup::Cardinality,
        AxiomGroup::CategoryLaws,
        AxiomGroup::Invertibility,
        AxiomGroup::VertexGroup,
        AxiomGroup::Centrality,
        AxiomGroup::Idempotence,
        AxiomGroup::PermutationLaws,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AxiomGroup::Cardinality => "cardinality",
            AxiomGroup::CategoryLaws => "category-laws",
            AxiomGroup::Invertibility => "invertibility",
            AxiomGroup::VertexGroup => "vertex-group",
            AxiomGroup::Centrality => "centrality",
            AxiomGroup::Idempotence => "idempotence",
            AxiomGroup::PermutationLaws => "permutation-laws",
        }
    }
}

impl fmt::Display for AxiomGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom instance with a concrete witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub axiom: AxiomGroup,
    pub witness: String,
}

/// Outcome of a verification run; passed iff no violations were found.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// True when the violation cap cut collection short.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of axiom groups a full run covers.
    pub fn group_count() -> usize {
        AxiomGroup::ALL.len()
    }
}

struct Collector {
    violations: Vec<Violation>,
    early_exit: bool,
    max: usize,
    truncated: bool,
}

impl Collector {
    fn new(opts: &VerifyOptions) -> Self {
        Collector {
            violations: Vec::new(),
            early_exit: opts.early_exit,
            max: opts.max_violations,
            truncated: false,
        }
    }

    fn push(&mut self, axiom: AxiomGroup, witness: String) {
        if self.violations.len() >= self.max {
            self.truncated = true;
            return;
        }
        self.violations.push(Violation { axiom, witness });
    }

    fn stop(&self) -> bool {
        (self.early_exit && !self.violations.is_empty()) || self.truncated
    }

    fn into_report(self) -> AxiomReport {
        AxiomReport {
            violations: self.violations,
            truncated: self.truncated,
        }
    }
}

/// Wire form of an arrow in structure files.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowRepr {
    Scalar { at: String, lambda: String },
    Labeled { src: String, dst: String, dir: String },
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct CompEntry {
    f: ArrowRepr,
    g: ArrowRepr,
    fg: ArrowRepr,
}

#[derive(Serialize, Deserialize)]
struct LineFile {
    field: FieldRepr,
    points: Vec<String>,
    comp: Vec<CompEntry>,
}

/// The coordinate model P(k²) over GF(p), materialized as a [`FiniteLine`]
/// together with the homogeneous coordinates of its points.
#[derive(Clone, Debug)]
pub struct CoordinateModel {
    line: FiniteLine,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, PointId>,
}

impl CoordinateModel {
    pub fn line(&self) -> &FiniteLine {
        &self.line
    }

    pub fn context(&self) -> FieldContext {
        self.line.ctx
    }

    pub fn prime(&self) -> u64 {
        self.line.prime()
    }

    pub fn proj_points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn proj_point(&self, id: PointId) -> &ProjPoint {
        &self.points[id]
    }

    pub fn point_id(&self, p: &ProjPoint) -> Result<PointId> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(p.to_string()))
    }

    /// The coordinate arrow behind a table arrow.
    pub fn to_arrow(&self, a: LineArrow) -> Result<Arrow> {
        match a {
            LineArrow::Loop { at, lambda } => {
                Arrow::scalar_loop(self.points[at].clone(), self.line.scalar(lambda))
            }
            LineArrow::Labeled { src, dst, dir } => Arrow::labeled(
                self.points[src].clone(),
                self.points[dst].clone(),
                self.points[dir].clone(),
            ),
        }
    }

    /// The table arrow behind a coordinate arrow.
    pub fn from_arrow(&self, a: &Arrow) -> Result<LineArrow> {
        match a {
            Arrow::Scalar { at, lambda } => Ok(LineArrow::Loop {
                at: self.point_id(at)?,
                lambda: lambda.residue().ok_or(Error::NotEnumerable)?,
            }),
            Arrow::Labeled { src, dst, dir } => Ok(LineArrow::Labeled {
                src: self.point_id(src)?,
                dst: self.point_id(dst)?,
                dir: self.point_id(dir)?,
            }),
        }
    }
}

/// Builds the coordinate model with the default modulus bound.
pub fn build_coordinate_model(p: u64) -> Result<CoordinateModel> {
    build_coordinate_model_with_bound(p, DEFAULT_MODEL_BOUND)
}

/// Builds the coordinate model of P(k²) over GF(p): one point per
/// 1-dimensional subspace, named by its canonical homogeneous coordinates,
/// with the table populated by coordinate composition.
pub fn build_coordinate_model_with_bound(p: u64, bound: u64) -> Result<CoordinateModel> {
    let ctx = FieldContext::prime(p)?;
    if p > bound {
        return Err(Error::BoundExceeded(format!(
            "modulus {p} above configured bound {bound}"
        )));
    }
    let points = enumerate_points(&ctx)?;
    let names: Vec<String> = points.iter().map(|pt| pt.to_string()).collect();
    let index: HashMap<ProjPoint, PointId> = points
        .iter()
        .enumerate()
        .map(|(i, pt)| (pt.clone(), i))
        .collect();
    let to_arrow = |a: LineArrow| -> Result<Arrow> {
        match a {
            LineArrow::Loop { at, lambda } => {
                Arrow::scalar_loop(points[at].clone(), ctx.integer(lambda as i64))
            }
            LineArrow::Labeled { src, dst, dir } => Arrow::labeled(
                points[src].clone(),
                points[dst].clone(),
                points[dir].clone(),
            ),
        }
    };
    let line = FiniteLine::from_composition_fn(ctx, names, |f, g| {
        let fg = compose_coord(&to_arrow(f)?, &to_arrow(g)?)?;
        Ok(match fg {
            Arrow::Scalar { at, lambda } => LineArrow::Loop {
                at: index[&at],
                lambda: lambda.residue().expect("prime context"),
            },
            Arrow::Labeled { src, dst, dir } => LineArrow::Labeled {
                src: index[&src],
                dst: index[&dst],
                dir: index[&dir],
            },
        })
    })?;
    Ok(CoordinateModel {
        line,
        points,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordinate_line::cross_ratio as coord_cross_ratio;

    #[test]
    fn arrow_indexing_roundtrips() {
        for (n, p) in [(3usize, 2u64), (4, 3), (6, 5), (12, 11)] {
            let d = Dims::new(n, p);
            for id in 0..d.arrow_count {
                let a = d.arrow_at(id);
                assert_eq!(d.arrow_id(a), id);
                assert_eq!(d.out_arrow(a.src(), d.local_index(a)), a);
            }
        }
    }

    #[test]
    fn coordinate_models_pass_all_axiom_groups() {
        for p in [2u64, 3, 5] {
            let model = build_coordinate_model(p).unwrap();
            assert_eq!(model.line().point_count(), p as usize + 1);
            let report = model
                .line()
                .verify_axioms(&VerifyOptions::default())
                .unwrap();
            assert!(report.passed(), "p={p}: {:?}", report.violations);
        }
    }

    #[test]
    fn model_bound_is_enforced() {
        assert!(matches!(
            build_coordinate_model_with_bound(11, 7),
            Err(Error::BoundExceeded(_))
        ));
        assert!(matches!(build_coordinate_model(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn hom_sets_have_all_other_points_as_labels() {
        let model = build_coordinate_model(3).unwrap();
        let labels = model.line().hom_labels(0, 1).unwrap();
        assert_eq!(labels, vec![2, 3]);
    }

    #[test]
    fn abstract_cross_ratio_matches_the_determinant_formula() {
        for p in [3u64, 5, 7] {
            let model = build_coordinate_model(p).unwrap();
            let line = model.line();
            let n = line.point_count();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            if a == b || c == a || c == b || d == a || d == b {
                                continue;
                            }
                            let mu = line.cross_ratio(a, b, c, d).unwrap();
                            let nu = coord_cross_ratio(
                                model.proj_point(a),
                                model.proj_point(b),
                                model.proj_point(c),
                                model.proj_point(d),
                            )
                            .unwrap();
                            assert_eq!(mu, nu, "p={p} ({a},{b};{c},{d})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extended_cross_ratio_matches_the_determinant_formula() {
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        let n = line.point_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let abstract_val = line.cross_ratio_extended(a, b, c, d);
                        let coord_val = coord_cross_ratio(
                            model.proj_point(a),
                            model.proj_point(b),
                            model.proj_point(c),
                            model.proj_point(d),
                        );
                        match (abstract_val, coord_val) {
                            (Ok(x), Ok(y)) => assert_eq!(x, y),
                            (Err(Error::UndefinedCrossRatio), Err(Error::UndefinedCrossRatio)) => {}
                            (x, y) => panic!("domain mismatch: {x:?} vs {y:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gf3_cross_ratio_is_minus_one_in_every_order() {
        let model = build_coordinate_model(3).unwrap();
        let line = model.line();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if a == b || a == c || a == d || b == c || b == d || c == d {
                            continue;
                        }
                        assert_eq!(
                            line.cross_ratio(a, b, c, d).unwrap(),
                            line.context().integer(2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn equal_directions_give_cross_ratio_one() {
        let model = build_coordinate_model(5).unwrap();
        let line = model.line();
        assert_eq!(line.cross_ratio(0, 1, 2, 2).unwrap(), line.context().one());
        assert!(matches!(
            line.cross_ratio(0, 1, 0, 2),
            Err(Error::PointsNotDistinct(_))
        ));
    }

    #[test]
    fn structure_files_roundtrip_byte_stably() {
        let model = build_coordinate_model(3).unwrap();
        let json = model.line().to_json();
        let reloaded = FiniteLine::from_json(&json).unwrap();
        assert_eq!(reloaded.to_json(), json);
        let report = reloaded.verify_axioms(&VerifyOptions::default()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn structure_file_rejects_shape_defects() {
        let model = build_coordinate_model(3).unwrap();
        let json = model.line().to_json();
        // Unknown field kind.
        let bad = json.replace("\"prime\"", "\"rational\"");
        assert!(matches!(
            FiniteLine::from_json(&bad),
            Err(Error::MalformedTable(_))
        ));
        // Out-of-range loop scalar.
        let bad = json.replace("\"lambda\":\"2\"", "\"lambda\":\"0\"");
        assert!(matches!(
            FiniteLine::from_json(&bad),
            Err(Error::MalformedTable(_))
        ));
        // Dropping one entry leaves the table partial.
        let file: serde_json::Value = serde_json::from_str(&json).unwrap();
        let mut truncated = file.clone();
        truncated["comp"].as_array_mut().unwrap().pop();
        assert!(matches!(
            FiniteLine::from_json(&truncated.to_string()),
            Err(Error::MalformedTable(_))
        ));
        // Duplicating an entry double-defines a pair.
        let mut doubled = file;
        let first = doubled["comp"][0].clone();
        doubled["comp"].as_array_mut().unwrap().push(first);
        assert!(matches!(
            FiniteLine::from_json(&doubled.to_string()),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn non_closed_table_is_malformed_not_a_violation() {
        let model = build_coordinate_model(3).unwrap();
        let line = model.line();
        // Redirect one composite to an arrow with the wrong endpoints.
        let f = LineArrow::Labeled { src: 0, dst: 1, dir: 2 };
        let g = LineArrow::Labeled { src: 1, dst: 2, dir: 3 };
        let wrong = LineArrow::Labeled { src: 1, dst: 2, dir: 0 };
        let patched = line.with_patched_entry(f, g, wrong).unwrap();
        assert!(matches!(
            patched.verify_axioms(&VerifyOptions::default()),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn early_exit_stops_at_first_violation() {
        let model = build_coordinate_model(3).unwrap();
        let line = model.line();
        let f = LineArrow::Labeled { src: 0, dst: 1, dir: 2 };
        let g = LineArrow::Labeled { src: 1, dst: 2, dir: 3 };
        // Swap the composite's direction label for the other candidate.
        let true_dir = match line.compose(f, g).unwrap() {
            LineArrow::Labeled { dir, .. } => dir,
            other => panic!("expected labeled composite, got {other:?}"),
        };
        let other_dir = [1, 3].into_iter().find(|&d| d != true_dir).unwrap();
        let wrong = LineArrow::Labeled { src: 0, dst: 2, dir: other_dir };
        let patched = line.with_patched_entry(f, g, wrong).unwrap();
        let eager = patched
            .verify_axioms(&VerifyOptions {
                early_exit: true,
                max_violations: 100,
            })
            .unwrap();
        assert_eq!(eager.violations.len(), 1);
        let full = patched.verify_axioms(&VerifyOptions::default()).unwrap();
        assert!(full.violations.len() >= eager.violations.len());
    }
}

//! Cocycles of the canonical bundles, and the 4-point line over GF(3).
//!
//! Over a line L, the punctured lines L\{A} form a bundle of affine lines
//! trivialized by charts: moving from the chart of (A, B, C) to the chart of
//! (A, B′, C′) is an affine automorphism of k, an element of the semidirect
//! product k ⋉ k*. [`affine_cocycle`] computes that transition both ways —
//! by composing charts pointwise, and in closed form through cross ratios:
//! its value at 0 is (A,B′;C′,B) and its value at 1 is (A,B′;C′,C), with the
//! degenerate convention giving 0 when the fourth entry equals the second.
//! Fixing the zero point B reduces the structure group to k*, and the
//! transition from unit C to unit C′ is the single scalar `(A,B;C,C′)`
//! ([`line_cocycle`]).
//!
//! [`gf3_unique_structure`] certifies by exhaustive search that the 4-point
//! set over GF(3) carries exactly one composition table satisfying all the
//! axioms; since every permutation of that line is a projectivity
//! ([`gf3_all_permutations`]), the table is literally unique, not just
//! unique up to relabeling.

use crate::abstract_line::{
    build_coordinate_model, Dims, FiniteLine, LineArrow, PointId, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::fundamental::{all_projectivities, check_triple};
use crate::punctured::chart;
use crate::scalars::{FieldContext, Scalar};

/// An affine automorphism `x ↦ t + s·x` of the field, with s ≠ 0. These form
/// the semidirect product of (k, +) with (k*, ·) under left-to-right
/// composition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineAutomorphism {
    t: Scalar,
    s: Scalar,
}

impl AffineAutomorphism {
    pub fn new(t: Scalar, s: Scalar) -> Result<Self> {
        if t.context() != s.context() {
            return Err(Error::ContextMismatch(
                t.context().to_string(),
                s.context().to_string(),
            ));
        }
        if s.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(AffineAutomorphism { t, s })
    }

    pub fn identity(ctx: &FieldContext) -> Self {
        AffineAutomorphism {
            t: ctx.zero(),
            s: ctx.one(),
        }
    }

    /// The translation part, which is the value at 0.
    pub fn translation(&self) -> &Scalar {
        &self.t
    }

    /// The slope, which is value-at-1 minus value-at-0.
    pub fn slope(&self) -> &Scalar {
        &self.s
    }

    pub fn value_at_zero(&self) -> Scalar {
        self.t.clone()
    }

    pub fn value_at_one(&self) -> Result<Scalar> {
        self.t.add(&self.s)
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar> {
        self.t.add(&self.s.mul(x)?)
    }

    /// Apply `self` first, then `other`: `(t, s)·(t′, s′) = (t′ + s′t, s′s)`.
    pub fn then(&self, other: &AffineAutomorphism) -> Result<AffineAutomorphism> {
        Ok(AffineAutomorphism {
            t: other.t.add(&other.s.mul(&self.t)?)?,
            s: other.s.mul(&self.s)?,
        })
    }

    pub fn inverse(&self) -> Result<AffineAutomorphism> {
        let s_inv = self.s.inv()?;
        Ok(AffineAutomorphism {
            t: self.t.neg().mul(&s_inv)?,
            s: s_inv,
        })
    }
}

/// The transition between the charts of (A, B, C) and (A, B′, C′): the
/// affine automorphism carrying the first coordinate of a point to its
/// second. The pair must share the puncture A. Computed by composing the
/// charts pointwise over the whole field; the closed form through cross
/// ratios is [`affine_cocycle_closed_form`], and the two agree on every
/// verified line.
pub fn affine_cocycle(
    line: &FiniteLine,
    first: (PointId, PointId, PointId),
    second: (PointId, PointId, PointId),
) -> Result<AffineAutomorphism> {
    check_triple(line, first)?;
    check_triple(line, second)?;
    if first.0 != second.0 {
        return Err(Error::BaseMismatch);
    }
    let h1 = chart(line, first.0, first.1, first.2)?;
    let h2 = chart(line, second.0, second.1, second.2)?;
    let ctx = line.context();
    let p = line.prime();
    let g = |x: u64| -> Result<u64> { h2.value_raw(h1.point_at_raw(x)) };
    let t = g(0)?;
    let s = (g(1)? + p - t) % p;
    for x in 0..p {
        if g(x)? != (t + s * x) % p {
            return Err(Error::NotAffine(format!(
                "chart transition is not affine at coordinate {x}"
            )));
        }
    }
    AffineAutomorphism::new(ctx.integer(t as i64), ctx.integer(s as i64))
        .map_err(|_| Error::NotAffine("chart transition has slope zero".into()))
}

/// The cross-ratio form of [`affine_cocycle`]: value ( (A,B′;C′,B),
/// (A,B′;C′,C) ) read as the pair (value at 0, value at 1) of an affine map.
pub fn affine_cocycle_closed_form(
    line: &FiniteLine,
    first: (PointId, PointId, PointId),
    second: (PointId, PointId, PointId),
) -> Result<AffineAutomorphism> {
    check_triple(line, first)?;
    check_triple(line, second)?;
    if first.0 != second.0 {
        return Err(Error::BaseMismatch);
    }
    let (a, b, c) = first;
    let (_, b2, c2) = second;
    let v0 = line.cross_ratio_extended(a, b2, c2, b)?;
    let v1 = line.cross_ratio_extended(a, b2, c2, c)?;
    AffineAutomorphism::new(v0.clone(), v1.sub(&v0)?)
        .map_err(|_| Error::NotAffine("cross-ratio form has slope zero".into()))
}

/// The cocycle condition over three chart sections with a common puncture:
/// the transition from the first to the second, followed by the transition
/// from the second to the third, equals the direct transition.
pub fn check_affine_cocycle(
    line: &FiniteLine,
    puncture: PointId,
    sections: [(PointId, PointId); 3],
) -> Result<bool> {
    let triple = |s: (PointId, PointId)| (puncture, s.0, s.1);
    let c12 = affine_cocycle(line, triple(sections[0]), triple(sections[1]))?;
    let c23 = affine_cocycle(line, triple(sections[1]), triple(sections[2]))?;
    let c13 = affine_cocycle(line, triple(sections[0]), triple(sections[2]))?;
    Ok(c12.then(&c23)? == c13)
}

/// The k*-valued transition of the vector-line bundle: moving the unit point
/// from C to C′ over the fixed pair (A, B) multiplies coordinates by
/// `(A,B;C,C′)`.
pub fn line_cocycle(
    line: &FiniteLine,
    a: PointId,
    b: PointId,
    c: PointId,
    c2: PointId,
) -> Result<Scalar> {
    check_triple(line, (a, b, c)).map_err(|_| {
        Error::PointsNotDistinct(format!(
            "({}, {}, {})",
            line.point_name(a),
            line.point_name(b),
            line.point_name(c)
        ))
    })?;
    check_triple(line, (a, b, c2)).map_err(|_| {
        Error::PointsNotDistinct(format!(
            "({}, {}, {})",
            line.point_name(a),
            line.point_name(b),
            line.point_name(c2)
        ))
    })?;
    line.cross_ratio(a, b, c, c2)
}

/// Outcome of the exhaustive GF(3) structure search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf3Certificate {
    /// Completions of the composition table that pass all axiom groups.
    pub valid_tables: usize,
    /// Search-tree nodes explored.
    pub nodes_explored: u64,
    /// Complete tables that reached full verification.
    pub complete_tables_checked: u64,
    /// Whether the surviving table equals the coordinate model (relabeled to
    /// the search's point names).
    pub matches_coordinate_model: bool,
}

/// The 4-point projective line over GF(3) with points P0..P3, together with
/// a certificate that its composition table is the only one the data model
/// admits: a backtracking search over all table completions, pruned only by
/// instances of the verified axioms, reaches every total table and counts
/// those passing verification.
pub fn gf3_unique_structure() -> Result<(FiniteLine, Gf3Certificate)> {
    let model = build_coordinate_model(3)?;
    let names: Vec<String> = (0..4).map(|i| format!("P{i}")).collect();
    let reference = FiniteLine::from_composition_fn(model.context(), names.clone(), |f, g| {
        model.line().compose(f, g)
    })?;

    let mut search = TableSearch::new(model.context(), names);
    search.seed()?;
    search.dfs();

    let valid_tables = search.found.len();
    let matches = search.found.first() == Some(&reference);
    Ok((
        reference,
        Gf3Certificate {
            valid_tables,
            nodes_explored: search.nodes,
            complete_tables_checked: search.complete_checked,
            matches_coordinate_model: matches,
        },
    ))
}

/// True iff every one of the 24 bijections of the 4-point GF(3) line is a
/// projectivity.
pub fn gf3_all_permutations() -> Result<bool> {
    let model = build_coordinate_model(3)?;
    let count = all_projectivities(model.line(), model.line())?.len();
    Ok(count == 24)
}

/// Backtracking search over composition-table completions for the 4-point
/// GF(3) shape. Cells are table slots; the only pruning rules are direct
/// instances of checked axioms (identity, vertex multiplication, the two
/// idempotence laws as seeds; centrality and associativity as propagation),
/// so no passing completion is ever skipped.
struct TableSearch {
    ctx: FieldContext,
    points: Vec<String>,
    dims: Dims,
    cells: Vec<Option<u32>>,
    trail: Vec<usize>,
    nodes: u64,
    complete_checked: u64,
    found: Vec<FiniteLine>,
}

impl TableSearch {
    fn new(ctx: FieldContext, points: Vec<String>) -> TableSearch {
        let dims = Dims::new(points.len(), 3);
        TableSearch {
            ctx,
            points,
            dims,
            cells: vec![None; dims.arrow_count * dims.out_degree],
            trail: Vec::new(),
            nodes: 0,
            complete_checked: 0,
            found: Vec::new(),
        }
    }

    fn slot(&self, f: LineArrow, g: LineArrow) -> usize {
        self.dims.slot(self.dims.arrow_id(f), g)
    }

    /// Assign a value; conflicting reassignment reports failure.
    fn assign(&mut self, slot: usize, value: u32) -> bool {
        match self.cells[slot] {
            Some(v) => v == value,
            None => {
                self.cells[slot] = Some(value);
                self.trail.push(slot);
                true
            }
        }
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let slot = self.trail.pop().unwrap();
            self.cells[slot] = None;
        }
    }

    /// Cells forced by single-axiom instances.
    fn seed(&mut self) -> Result<()> {
        let d = self.dims;
        let n = d.n;
        let p = d.p;
        // Vertex loops multiply like the field.
        for at in 0..n {
            for lam in 1..p {
                for mu in 1..p {
                    let f = LineArrow::Loop { at, lambda: lam };
                    let g = LineArrow::Loop { at, lambda: mu };
                    let fg = LineArrow::Loop {
                        at,
                        lambda: lam * mu % p,
                    };
                    if !self.assign(self.slot(f, g), d.arrow_id(fg) as u32) {
                        return Err(Error::NoSolution("inconsistent seed".into()));
                    }
                }
            }
        }
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
            if !self.assign(self.slot(one_src, f), f_id as u32)
                || !self.assign(self.slot(f, one_dst), f_id as u32)
            {
                return Err(Error::NoSolution("inconsistent seed".into()));
            }
        }
        // Idempotence: same-direction projections collapse.
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for dir in 0..n {
                    if dir == a || dir == b {
                        continue;
                    }
                    let fwd = LineArrow::Labeled { src: a, dst: b, dir };
                    let back = LineArrow::Labeled { src: b, dst: a, dir };
                    let one = LineArrow::Loop { at: a, lambda: 1 };
                    if !self.assign(self.slot(fwd, back), d.arrow_id(one) as u32) {
                        return Err(Error::NoSolution("inconsistent seed".into()));
                    }
                    for c in 0..n {
                        if c == a || c == b || c == dir {
                            continue;
                        }
                        let next = LineArrow::Labeled { src: b, dst: c, dir };
                        let thru = LineArrow::Labeled { src: a, dst: c, dir };
                        if !self.assign(self.slot(fwd, next), d.arrow_id(thru) as u32) {
                            return Err(Error::NoSolution("inconsistent seed".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Sweeps centrality ties and associativity triples until nothing new
    /// can be deduced; false on contradiction.
    fn propagate(&mut self) -> bool {
        let d = self.dims;
        loop {
            let before = self.trail.len();
            // Centrality: λ∘f and f∘λ are the same arrow.
            for f_id in 0..d.arrow_count {
                let f = d.arrow_at(f_id);
                if f.is_loop() {
                    continue;
                }
                for lam in 1..d.p {
                    let left = self.slot(
                        LineArrow::Loop {
                            at: f.src(),
                            lambda: lam,
                        },
                        f,
                    );
                    let right = d.slot(
                        f_id,
                        LineArrow::Loop {
                            at: f.dst(),
                            lambda: lam,
                        },
                    );
                    match (self.cells[left], self.cells[right]) {
                        (Some(x), Some(y)) if x != y => return false,
                        (Some(x), None) => {
                            if !self.assign(right, x) {
                                return false;
                            }
                        }
                        (None, Some(y)) => {
                            if !self.assign(left, y) {
                                return false;
                            }
                        }
                        _ => {}
                    }
                }
            }
            // Associativity: once (f,g) and (g,h) are known, the two
            // bracketings name two cells that must agree.
            for f_id in 0..d.arrow_count {
                let f = d.arrow_at(f_id);
                for j in 0..d.out_degree {
                    let Some(fg) = self.cells[f_id * d.out_degree + j] else {
                        continue;
                    };
                    let g = d.out_arrow(f.dst(), j);
                    let g_id = d.arrow_id(g);
                    for k in 0..d.out_degree {
                        let Some(gh) = self.cells[g_id * d.out_degree + k] else {
                            continue;
                        };
                        let c3 = fg as usize * d.out_degree + k;
                        let c4 = f_id * d.out_degree
                            + d.local_index(d.arrow_at(gh as usize));
                        match (self.cells[c3], self.cells[c4]) {
                            (Some(x), Some(y)) if x != y => return false,
                            (Some(x), None) => {
                                if !self.assign(c4, x) {
                                    return false;
                                }
                            }
                            (None, Some(y)) => {
                                if !self.assign(c3, y) {
                                    return false;
                                }
                            }
                            _ => {}
                        }
                    }
                }
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    /// Arrow ids admissible in a slot: everything from src(f) to dst(g).
    fn candidates(&self, slot: usize) -> Vec<u32> {
        let d = self.dims;
        let f = d.arrow_at(slot / d.out_degree);
        let g = d.out_arrow(f.dst(), slot % d.out_degree);
        let (src, dst) = (f.src(), g.dst());
        let mut out = Vec::new();
        if src == dst {
            for lambda in 1..d.p {
                out.push(d.arrow_id(LineArrow::Loop { at: src, lambda }) as u32);
            }
        } else {
            for dir in 0..d.n {
                if dir != src && dir != dst {
                    out.push(d.arrow_id(LineArrow::Labeled { src, dst, dir }) as u32);
                }
            }
        }
        out
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        if !self.propagate() {
            return;
        }
        let Some(slot) = self.cells.iter().position(Option::is_none) else {
            self.complete_checked += 1;
            let d = self.dims;
            let mut entries = Vec::with_capacity(self.cells.len());
            for f_id in 0..d.arrow_count {
                let f = d.arrow_at(f_id);
                for j in 0..d.out_degree {
                    let g = d.out_arrow(f.dst(), j);
                    let fg = d.arrow_at(self.cells[f_id * d.out_degree + j].unwrap() as usize);
                    entries.push((f, g, fg));
                }
            }
            let line = FiniteLine::from_entries(self.ctx, self.points.clone(), &entries)
                .expect("complete assignments form total tables");
            if let Ok(report) = line.verify_axioms(&VerifyOptions {
                early_exit: true,
                max_violations: 1,
            }) {
                if report.passed() {
                    self.found.push(line);
                }
            }
            return;
        };
        for value in self.candidates(slot) {
            let mark = self.trail.len();
            if self.assign(slot, value) {
                self.dfs();
            }
            self.rollback(mark);
        }
    }
}

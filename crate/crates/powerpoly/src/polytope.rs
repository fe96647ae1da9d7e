//! Weight and representation polytopes with exact rational geometry.
//!
//! A game's normalized weight vectors (and, for the representation kind, the
//! quota) form a convex polytope cut out by its coalition frontiers. This
//! module builds that polytope in halfspace form over free coordinates (the
//! normalization equality is eliminated by substitution), enumerates its
//! vertices with an exact double-description sweep, triangulates by recursive
//! coning, and integrates degree-one monomials to get volume and centroid.
//! No floating point enters at any stage.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::game::{Coalition, WeightedGame};
use crate::lp::{self, LpOutcome};
use crate::par;
use crate::rational::{format_rat, Rat};
use crate::{Error, Result};

/// Which polytope to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolytopeKind {
    /// Normalized weight vectors compatible with the game.
    Weight,
    /// Pairs of quota and normalized weights representing the game.
    Representation,
}

/// Optional restrictions applied before elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Restrictions {
    /// Fix every dummy voter's weight to zero.
    pub dummy: bool,
    /// Force equal weights inside each desirability class.
    pub types: bool,
}

impl Restrictions {
    pub const NONE: Restrictions = Restrictions { dummy: false, types: false };
    pub const DUMMY: Restrictions = Restrictions { dummy: true, types: false };
    pub const DUMMY_TYPES: Restrictions = Restrictions { dummy: true, types: true };
}

/// One halfspace `coeffs . x <= rhs` over the free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl LinearConstraint {
    fn eval(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<Rat>() - &self.rhs
    }
}

/// Affine expression `constant + coeffs . x` over the free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpr {
    pub constant: Rat,
    pub coeffs: Vec<Rat>,
}

impl AffineExpr {
    fn zero(dim: usize) -> AffineExpr {
        AffineExpr {
            constant: Rat::zero(),
            coeffs: vec![Rat::zero(); dim],
        }
    }

    fn coordinate(dim: usize, idx: usize) -> AffineExpr {
        let mut e = AffineExpr::zero(dim);
        e.coeffs[idx] = Rat::one();
        e
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        &self.constant + self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<Rat>()
    }
}

/// Reconstructs quota and all n voter weights from free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryMap {
    pub quota: Option<AffineExpr>,
    pub weights: Vec<AffineExpr>,
}

impl RecoveryMap {
    /// Identity map: coordinates are the voter weights themselves.
    pub fn identity(dim: usize) -> RecoveryMap {
        RecoveryMap {
            quota: None,
            weights: (0..dim).map(|i| AffineExpr::coordinate(dim, i)).collect(),
        }
    }

    pub fn apply(&self, x: &[Rat]) -> RecoveredPoint {
        RecoveredPoint {
            quota: self.quota.as_ref().map(|e| e.eval(x)),
            weights: self.weights.iter().map(|e| e.eval(x)).collect(),
        }
    }
}

/// A point mapped back to full game coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredPoint {
    pub quota: Option<Rat>,
    pub weights: Vec<Rat>,
}

/// Halfspace representation over free coordinates, full-dimensional by
/// construction for valid games.
#[derive(Clone, Debug)]
pub struct PolytopeH {
    /// Human-readable names of the free coordinates.
    pub labels: Vec<String>,
    /// Irredundant constraint list.
    pub constraints: Vec<LinearConstraint>,
    /// Map back to quota and the n voter weights.
    pub recovery: RecoveryMap,
}

impl PolytopeH {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Builds a polytope from raw halfspaces with an identity recovery map;
    /// intended for tests and ad hoc geometry.
    pub fn from_halfspaces(labels: Vec<String>, constraints: Vec<LinearConstraint>) -> PolytopeH {
        let dim = labels.len();
        PolytopeH {
            labels,
            constraints,
            recovery: RecoveryMap::identity(dim),
        }
    }

    /// Debug dump of the H-representation (and optionally vertices).
    pub fn to_json(&self, vertices: Option<&VertexSet>) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .map(|c| {
                serde_json::json!({
                    "coeffs": c.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
                    "rhs": format_rat(&c.rhs),
                })
            })
            .collect();
        let mut out = serde_json::json!({
            "coordinates": self.labels,
            "constraints": rows,
        });
        if let Some(vs) = vertices {
            out["vertices"] = serde_json::Value::Array(
                vs.vertices
                    .iter()
                    .map(|v| {
                        serde_json::Value::Array(
                            v.iter()
                                .map(|x| serde_json::Value::String(format_rat(x)))
                                .collect(),
                        )
                    })
                    .collect(),
            );
        }
        out
    }
}

/// Exact vertex list; `tight[i]` holds the constraint indices active at
/// vertex `i`.
#[derive(Clone, Debug)]
pub struct VertexSet {
    pub vertices: Vec<Vec<Rat>>,
    pub tight: Vec<Vec<usize>>,
}

/// Volume, raw first moments, and the centroid in free and recovered
/// coordinates.
#[derive(Clone, Debug)]
pub struct IntegrationResult {
    pub volume: Rat,
    /// Integral of each free coordinate over the polytope.
    pub moments: Vec<Rat>,
    /// Centroid in free coordinates (moments / volume).
    pub centroid: Vec<Rat>,
    /// Centroid mapped to quota and all n voter weights.
    pub recovered: RecoveredPoint,
}

/// Apex selection for the coning triangulation; both must integrate to the
/// same values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexRule {
    LexMin,
    LexMax,
}

/// Builds the requested polytope, eliminating the last class coordinate.
pub fn build_polytope(
    game: &WeightedGame,
    kind: PolytopeKind,
    restrictions: Restrictions,
) -> Result<PolytopeH> {
    build_polytope_eliminating(game, kind, restrictions, None)
}

/// As [`build_polytope`], eliminating the class coordinate at
/// `eliminate_class` (an index into the included classes) instead of the
/// last one.
pub fn build_polytope_eliminating(
    game: &WeightedGame,
    kind: PolytopeKind,
    restrictions: Restrictions,
    eliminate_class: Option<usize>,
) -> Result<PolytopeH> {
    let frontiers = game.frontiers()?;
    let classes = included_classes(game, restrictions)?;
    let n = game.n();
    let k = classes.len();
    let elim = eliminate_class.unwrap_or(k - 1);
    if elim >= k {
        return Err(Error::Invalid(format!(
            "eliminated class {elim} out of range for {k} classes"
        )));
    }

    // Coordinate layout: optional quota first, then the class representative
    // weights except the eliminated class.
    let has_quota = kind == PolytopeKind::Representation;
    let mut labels = Vec::new();
    if has_quota {
        labels.push("q".to_string());
    }
    let mut coord_of_class = vec![None; k];
    for (c, class) in classes.iter().enumerate() {
        if c == elim {
            continue;
        }
        coord_of_class[c] = Some(labels.len());
        let members: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
        labels.push(format!("w{{{}}}", members.join(",")));
    }
    let dim = labels.len();

    // The eliminated representative in terms of the free coordinates:
    // w_elim = (1 - sum_{c != elim} m_c x_c) / m_elim.
    let m_elim = Rat::from_integer(classes[elim].len().into());
    let mut elim_expr = AffineExpr::zero(dim);
    elim_expr.constant = m_elim.recip();
    for (c, class) in classes.iter().enumerate() {
        if let Some(j) = coord_of_class[c] {
            elim_expr.coeffs[j] = -Rat::from_integer(class.len().into()) / &m_elim;
        }
    }

    // Recovery: every member of a class shares its representative's value;
    // voters outside all classes are restricted dummies pinned at zero.
    let mut weights = vec![AffineExpr::zero(dim); n];
    for (c, class) in classes.iter().enumerate() {
        let expr = match coord_of_class[c] {
            Some(j) => AffineExpr::coordinate(dim, j),
            None => elim_expr.clone(),
        };
        for &v in class {
            weights[v] = expr.clone();
        }
    }
    let recovery = RecoveryMap {
        quota: has_quota.then(|| AffineExpr::coordinate(dim, 0)),
        weights: weights.clone(),
    };

    // Class count profile of a coalition, as an affine expression of the
    // free coordinates.
    let coalition_expr = |s: &Coalition| {
        let mut e = AffineExpr::zero(dim);
        for v in s.members() {
            let w = &weights[v];
            e.constant += &w.constant;
            for (acc, c) in e.coeffs.iter_mut().zip(&w.coeffs) {
                *acc += c;
            }
        }
        e
    };

    let mut rows: Vec<LinearConstraint> = Vec::new();
    // expr <= bound, written over free coordinates.
    let mut push_le = |lhs: AffineExpr, rhs: AffineExpr| {
        let coeffs: Vec<Rat> = lhs
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        let rhs = &rhs.constant - &lhs.constant;
        rows.push(LinearConstraint { coeffs, rhs });
    };

    match kind {
        PolytopeKind::Weight => {
            for s in &frontiers.minimal_winning {
                let ws = coalition_expr(s);
                for t in &frontiers.maximal_losing {
                    push_le(coalition_expr(t), ws.clone());
                }
            }
        }
        PolytopeKind::Representation => {
            let q = AffineExpr::coordinate(dim, 0);
            for s in &frontiers.minimal_winning {
                push_le(q.clone(), coalition_expr(s));
            }
            for t in &frontiers.maximal_losing {
                push_le(coalition_expr(t), q.clone());
            }
            let mut one = AffineExpr::zero(dim);
            one.constant = Rat::one();
            push_le(q.clone(), one);
            push_le(AffineExpr::zero(dim), q);
        }
    }
    // Non-negativity of every class representative, the eliminated one
    // included (it bounds the others from above).
    for c in 0..classes.len() {
        let expr = match coord_of_class[c] {
            Some(j) => AffineExpr::coordinate(dim, j),
            None => elim_expr.clone(),
        };
        push_le(AffineExpr::zero(dim), expr);
    }

    let constraints = reduce_constraints(rows, dim)?;
    Ok(PolytopeH {
        labels,
        constraints,
        recovery,
    })
}

/// Included voter classes in desirability order: singletons unless the type
/// restriction is on; dummies dropped under the dummy restriction.
fn included_classes(game: &WeightedGame, restrictions: Restrictions) -> Result<Vec<Vec<usize>>> {
    let dummies = game.classify()?.dummies;
    if restrictions.types {
        let partition = game.type_partition()?;
        let classes = if restrictions.dummy {
            partition.non_dummy_classes().to_vec()
        } else {
            partition.classes
        };
        Ok(classes)
    } else {
        Ok((0..game.n())
            .filter(|v| !(restrictions.dummy && dummies.contains(v)))
            .map(|v| vec![v])
            .collect())
    }
}

/// Scales a row to coprime integers, keeping orientation.
fn normalize_row(c: &LinearConstraint) -> Option<LinearConstraint> {
    let mut denom_lcm = c.rhs.denom().clone();
    for a in &c.coeffs {
        denom_lcm = denom_lcm.lcm(a.denom());
    }
    let scale = Rat::from_integer(denom_lcm);
    let ints: Vec<_> = c
        .coeffs
        .iter()
        .map(|a| (a * &scale).to_integer())
        .collect();
    let rhs_int = (&c.rhs * &scale).to_integer();
    let mut g = rhs_int.magnitude().clone();
    for a in &ints {
        g = g.gcd(a.magnitude());
    }
    if ints.iter().all(|a| a.is_zero()) {
        return None;
    }
    let g = Rat::from_integer(g.into());
    Some(LinearConstraint {
        coeffs: ints
            .iter()
            .map(|a| Rat::from_integer(a.clone()) / &g)
            .collect(),
        rhs: Rat::from_integer(rhs_int) / g,
    })
}

/// Deduplicates scaled rows, then removes every constraint implied by the
/// others via exact LP. For a full-dimensional polytope the survivors are
/// exactly the facets, so all implied rows can be dropped together.
fn reduce_constraints(
    rows: Vec<LinearConstraint>,
    dim: usize,
) -> Result<Vec<LinearConstraint>> {
    let mut unique: Vec<LinearConstraint> = Vec::new();
    for row in &rows {
        match normalize_row(row) {
            Some(r) => {
                if !unique.contains(&r) {
                    unique.push(r);
                }
            }
            None => {
                // 0 <= rhs: trivially true or witnesses an empty system.
                if row.rhs.is_negative() {
                    return Err(Error::Internal("inconsistent constant constraint".into()));
                }
            }
        }
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    // Cheap syntactic dominance: identical coefficient vectors keep only the
    // smallest right-hand side.
    let mut filtered: Vec<LinearConstraint> = Vec::new();
    for row in unique {
        if let Some(existing) = filtered.iter_mut().find(|r| r.coeffs == row.coeffs) {
            if row.rhs < existing.rhs {
                existing.rhs = row.rhs;
            }
        } else {
            filtered.push(row);
        }
    }

    let keep_flags = par::map_range(filtered.len(), |i| {
        !implied_by_others(&filtered, i).unwrap_or(false)
    });
    let kept: Vec<LinearConstraint> = filtered
        .into_iter()
        .zip(keep_flags)
        .filter_map(|(row, keep)| keep.then_some(row))
        .collect();
    if kept.is_empty() {
        return Err(Error::Internal("constraint reduction removed everything".into()));
    }
    Ok(kept)
}

/// Whether constraint `idx` is implied by the remaining rows. Solved through
/// the dual so the tableau has `dim` rows instead of one per constraint.
fn implied_by_others(rows: &[LinearConstraint], idx: usize) -> Result<bool> {
    let target = &rows[idx];
    let dim = target.coeffs.len();
    // Primal: max a.x subject to the other rows plus the cap a.x <= b + 1
    // (the cap keeps it bounded without changing the comparison). Dual:
    // min y.rhs subject to A^T y = a, y >= 0.
    let mut others: Vec<&LinearConstraint> = Vec::with_capacity(rows.len());
    for (j, row) in rows.iter().enumerate() {
        if j != idx {
            others.push(row);
        }
    }
    let cap = LinearConstraint {
        coeffs: target.coeffs.clone(),
        rhs: &target.rhs + Rat::one(),
    };
    others.push(&cap);

    let n_dual = others.len();
    let mut constraints = Vec::with_capacity(dim);
    for d in 0..dim {
        let coeffs: Vec<Rat> = others.iter().map(|r| r.coeffs[d].clone()).collect();
        constraints.push(lp::Constraint::eq(coeffs, target.coeffs[d].clone()));
    }
    let lp_problem = lp::Lp {
        maximize: false,
        objective: others.iter().map(|r| r.rhs.clone()).collect(),
        constraints,
        free: vec![false; n_dual],
    };
    match lp::solve(&lp_problem)? {
        LpOutcome::Optimal { value, .. } => Ok(value <= target.rhs),
        LpOutcome::Infeasible => Err(Error::Internal(
            "redundancy dual infeasible for a bounded primal".into(),
        )),
        LpOutcome::Unbounded => Err(Error::Internal(
            "redundancy dual unbounded for a feasible primal".into(),
        )),
    }
}

/// Word-packed vertex-incidence bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bits: usize) -> BitSet {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len() * 64).filter(|&i| self.contains(i))
    }
}

/// Enumerates the exact vertices of a bounded, full-dimensional polytope by
/// cutting a padded bounding box with one constraint at a time.
pub fn enumerate_vertices(p: &PolytopeH) -> Result<VertexSet> {
    let dim = p.dim();
    if dim == 0 {
        return Ok(VertexSet {
            vertices: vec![Vec::new()],
            tight: vec![Vec::new()],
        });
    }
    let rows: Vec<(Vec<Rat>, Rat)> = p
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();

    // Exact coordinate bounds; also certifies boundedness and nonemptiness.
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut obj = vec![Rat::zero(); dim];
        obj[j] = Rat::one();
        let upper = match lp::maximize_free(&obj, &rows)? {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => {
                return Err(Error::Internal("empty polytope".into()));
            }
            LpOutcome::Unbounded => {
                return Err(Error::Invalid("unbounded polytope".into()));
            }
        };
        obj[j] = -Rat::one();
        let lower = match lp::maximize_free(&obj, &rows)? {
            LpOutcome::Optimal { value, .. } => -value,
            LpOutcome::Infeasible => {
                return Err(Error::Internal("empty polytope".into()));
            }
            LpOutcome::Unbounded => {
                return Err(Error::Invalid("unbounded polytope".into()));
            }
        };
        if lower == upper {
            return Err(Error::Internal(format!(
                "polytope is flat in coordinate {}",
                p.labels[j]
            )));
        }
        lo.push(lower - Rat::one());
        hi.push(upper + Rat::one());
    }

    // Row indexing: real constraints first, then the 2*dim box faces. The
    // box is padded, so no box face can be tight at a true vertex.
    let m = rows.len();
    let total_rows = m + 2 * dim;
    let row_value = |row: usize, x: &[Rat]| -> Rat {
        if row < m {
            rows[row].0.iter().zip(x).map(|(a, v)| a * v).sum::<Rat>() - &rows[row].1
        } else {
            let j = (row - m) / 2;
            if (row - m) % 2 == 0 {
                x[j].clone() - &hi[j]
            } else {
                &lo[j] - &x[j]
            }
        }
    };

    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut tight: Vec<BitSet> = Vec::new();
    for corner in 0..(1u64 << dim) {
        let mut point = Vec::with_capacity(dim);
        let mut t = BitSet::new(total_rows);
        for j in 0..dim {
            if corner & (1 << j) != 0 {
                point.push(hi[j].clone());
                t.insert(m + 2 * j);
            } else {
                point.push(lo[j].clone());
                t.insert(m + 2 * j + 1);
            }
        }
        vertices.push(point);
        tight.push(t);
    }

    for cut in 0..m {
        let values: Vec<Rat> = vertices.iter().map(|v| row_value(cut, v)).collect();
        if values.iter().all(|v| !v.is_positive()) {
            for (t, val) in tight.iter_mut().zip(&values) {
                if val.is_zero() {
                    t.insert(cut);
                }
            }
            continue;
        }
        let inside: Vec<usize> = (0..vertices.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let outside: Vec<usize> = (0..vertices.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let mut new_vertices: Vec<Vec<Rat>> = Vec::new();
        for &u in &inside {
            for &v in &outside {
                let common = tight[u].intersect(&tight[v]);
                if common.count() < dim - 1 {
                    continue;
                }
                // u and v span an edge iff no third vertex carries all their
                // common tight rows.
                let adjacent = (0..vertices.len())
                    .all(|z| z == u || z == v || !common.is_subset_of(&tight[z]));
                if !adjacent {
                    continue;
                }
                let t = -&values[u] / (&values[v] - &values[u]);
                let point: Vec<Rat> = vertices[u]
                    .iter()
                    .zip(&vertices[v])
                    .map(|(a, b)| a + &t * (b - a))
                    .collect();
                if !new_vertices.contains(&point) {
                    new_vertices.push(point);
                }
            }
        }
        let mut next_vertices = Vec::new();
        let mut next_tight = Vec::new();
        for (i, (vertex, mut t)) in vertices.into_iter().zip(tight).enumerate() {
            if values[i].is_positive() {
                continue;
            }
            if values[i].is_zero() {
                t.insert(cut);
            }
            next_vertices.push(vertex);
            next_tight.push(t);
        }
        for point in new_vertices {
            let mut t = BitSet::new(total_rows);
            for row in 0..=cut {
                if row_value(row, &point).is_zero() {
                    t.insert(row);
                }
            }
            for row in m..total_rows {
                if row_value(row, &point).is_zero() {
                    t.insert(row);
                }
            }
            next_vertices.push(point);
            next_tight.push(t);
        }
        vertices = next_vertices;
        tight = next_tight;
        if vertices.is_empty() {
            return Err(Error::Internal("cut emptied the polytope".into()));
        }
    }

    // Final tight sets over the real constraints only; the padded box never
    // touches the polytope.
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
    let mut out_vertices = Vec::with_capacity(order.len());
    let mut out_tight = Vec::with_capacity(order.len());
    for &i in &order {
        debug_assert!((m..total_rows).all(|row| !tight[i].contains(row)));
        let t: Vec<usize> = tight[i].iter().filter(|&r| r < m).collect();
        out_vertices.push(vertices[i].clone());
        out_tight.push(t);
    }
    Ok(VertexSet {
        vertices: out_vertices,
        tight: out_tight,
    })
}

/// Rank of the affine hull of a point set (0 for a single point).
fn affine_rank(points: &[&Vec<Rat>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let mut matrix: Vec<Vec<Rat>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let mut rank = 0;
    let cols = first.len();
    for col in 0..cols {
        let Some(pivot) = (rank..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let inv = matrix[rank][col].recip();
        for c in col..cols {
            matrix[rank][c] *= &inv;
        }
        for r in 0..matrix.len() {
            if r != rank && !matrix[r][col].is_zero() {
                let f = std::mem::replace(&mut matrix[r][col], Rat::zero());
                for c in (col + 1)..cols {
                    let delta = &f * &matrix[rank][c];
                    matrix[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == matrix.len() {
            break;
        }
    }
    rank
}

/// |det| of the edge matrix of a full-dimensional simplex.
fn simplex_det(points: &[&Vec<Rat>]) -> Rat {
    let dim = points.len() - 1;
    let mut matrix: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(points[0].iter())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let mut det = Rat::one();
    for col in 0..dim {
        let Some(pivot) = (col..dim).find(|&r| !matrix[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            matrix.swap(col, pivot);
        }
        det *= &matrix[col][col];
        let inv = matrix[col][col].recip();
        for c in col..dim {
            matrix[col][c] *= &inv;
        }
        for r in (col + 1)..dim {
            if !matrix[r][col].is_zero() {
                let f = std::mem::replace(&mut matrix[r][col], Rat::zero());
                for c in (col + 1)..dim {
                    let delta = &f * &matrix[col][c];
                    matrix[r][c] -= delta;
                }
            }
        }
    }
    det.abs()
}

struct Triangulator<'a> {
    vertices: &'a [Vec<Rat>],
    /// Per-constraint vertex incidence.
    facet_masks: Vec<BitSet>,
    apex_rule: ApexRule,
    memo: HashMap<Vec<u64>, Vec<Vec<usize>>>,
}

impl<'a> Triangulator<'a> {
    fn members(mask: &BitSet) -> Vec<usize> {
        mask.iter().collect()
    }

    /// Splits a face of known dimension into simplices (vertex index lists)
    /// by coning from an extreme vertex over its triangulated facets.
    fn triangulate(&mut self, mask: &BitSet, face_dim: usize) -> Vec<Vec<usize>> {
        if let Some(done) = self.memo.get(&mask.words) {
            return done.clone();
        }
        let members = Self::members(mask);
        let result = if members.len() == face_dim + 1 {
            vec![members]
        } else {
            let apex = *members
                .iter()
                .min_by(|&&a, &&b| match self.apex_rule {
                    ApexRule::LexMin => self.vertices[a].cmp(&self.vertices[b]),
                    ApexRule::LexMax => self.vertices[b].cmp(&self.vertices[a]),
                })
                .expect("face has vertices");
            let mut sub_masks: Vec<BitSet> = Vec::new();
            for fm in &self.facet_masks {
                let sub = mask.intersect(fm);
                let count = sub.count();
                if count == 0 || count == members.len() || sub.contains(apex) {
                    continue;
                }
                if count < face_dim {
                    continue;
                }
                if !sub_masks.contains(&sub) {
                    sub_masks.push(sub);
                }
            }
            let mut simplices = Vec::new();
            for sub in sub_masks {
                let pts: Vec<&Vec<Rat>> =
                    Self::members(&sub).iter().map(|&i| &self.vertices[i]).collect();
                if affine_rank(&pts) != face_dim - 1 {
                    continue;
                }
                for mut simplex in self.triangulate(&sub, face_dim - 1) {
                    simplex.push(apex);
                    simplices.push(simplex);
                }
            }
            simplices
        };
        self.memo.insert(mask.words.clone(), result.clone());
        result
    }
}

/// Integrates 1 and each coordinate over the polytope.
pub fn integrate(p: &PolytopeH) -> Result<IntegrationResult> {
    integrate_with(p, ApexRule::LexMin)
}

/// As [`integrate`] with an explicit triangulation apex rule.
pub fn integrate_with(p: &PolytopeH, apex_rule: ApexRule) -> Result<IntegrationResult> {
    let dim = p.dim();
    let vs = enumerate_vertices(p)?;
    if dim == 0 {
        // A single point: use the zero-dimensional measure's convention.
        let centroid = Vec::new();
        return Ok(IntegrationResult {
            volume: Rat::one(),
            moments: Vec::new(),
            recovered: p.recovery.apply(&centroid),
            centroid,
        });
    }
    let n_vertices = vs.vertices.len();
    if n_vertices < dim + 1 {
        return Err(Error::Internal("polytope is not full-dimensional".into()));
    }
    let mut facet_masks = Vec::with_capacity(p.constraints.len());
    for c in 0..p.constraints.len() {
        let mut mask = BitSet::new(n_vertices);
        for (i, t) in vs.tight.iter().enumerate() {
            if t.contains(&c) {
                mask.insert(i);
            }
        }
        facet_masks.push(mask);
    }
    let mut all = BitSet::new(n_vertices);
    for i in 0..n_vertices {
        all.insert(i);
    }
    let mut tri = Triangulator {
        vertices: &vs.vertices,
        facet_masks,
        apex_rule,
        memo: HashMap::new(),
    };
    let simplices = tri.triangulate(&all, dim);
    if simplices.is_empty() {
        return Err(Error::Internal("triangulation produced no simplices".into()));
    }

    let dim_factorial: Rat = (1..=dim as u64)
        .map(|k| Rat::from_integer(k.into()))
        .product();
    let terms = par::map_slice(&simplices, |simplex| {
        let pts: Vec<&Vec<Rat>> = simplex.iter().map(|&i| &vs.vertices[i]).collect();
        let vol = simplex_det(&pts) / &dim_factorial;
        let mut sums = vec![Rat::zero(); dim];
        for pt in &pts {
            for (acc, x) in sums.iter_mut().zip(pt.iter()) {
                *acc += x;
            }
        }
        (vol, sums)
    });
    let mut volume = Rat::zero();
    let mut moments = vec![Rat::zero(); dim];
    let simplex_points = Rat::from_integer(((dim + 1) as u64).into());
    for (vol, sums) in terms {
        for (acc, s) in moments.iter_mut().zip(&sums) {
            *acc += &vol * s / &simplex_points;
        }
        volume += vol;
    }
    if !volume.is_positive() {
        return Err(Error::Internal("zero volume for a full-dimensional polytope".into()));
    }
    let centroid: Vec<Rat> = moments.iter().map(|m| m / &volume).collect();
    debug_assert!(
        p.constraints.iter().all(|c| c.eval(&centroid).is_negative()),
        "centroid must be strictly interior"
    );
    Ok(IntegrationResult {
        volume,
        moments,
        recovered: p.recovery.apply(&centroid),
        centroid,
    })
}

//! Exact counts of `m`-tuples fixed by `F∘σ` that satisfy a generality
//! condition, and of their quotient by PGL(3, F_p).
//!
//! A tuple is fixed by `F∘σ` exactly when each cycle `(i_1 ... i_c)` of `σ`
//! carries a Frobenius orbit: `P_{i_1}` is defined over `F_{p^c}` but over no
//! smaller field, and `P_{i_{k+1}} = F(P_{i_k})`. The engine therefore
//! chooses one seed point per cycle, fills the cycle by applying Frobenius,
//! and prunes with the monotone part of the condition after every seed.
//!
//! Cycles are laid out on consecutive positions in descending length; the
//! count does not depend on which permutation of the class is used.
//!
//! With at least four fixed points the faster [`Engine::Frame`] path pins the
//! first four fixed positions to the standard frame. PGL(3, F_p) acts simply
//! transitively on rational frames and any four points of a tuple in general
//! linear position form one, so the pinned count is the quotient directly.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Range};
use core::str::FromStr;

use crate::field::{ExtensionField, FieldError, FieldOps, ZechField, ZECH_LIMIT};
use crate::generality::{GeneralityCondition, IncrementalCheck};
use crate::numtheory::is_prime;
use crate::partition::CycleType;
use crate::plane::{enumerate_points, pgl_order, ProjectivePoint, SubfieldPoints};

/// Default cap on the enumeration size, in candidate seed combinations.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    /// Full enumeration of fixed tuples, divided by |PGL(3, F_p)|.
    Twisted,
    /// Four fixed points pinned to the standard frame.
    Frame,
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Twisted => "twisted",
            Engine::Frame => "frame",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "twisted" => Ok(Engine::Twisted),
            "frame" => Ok(Engine::Frame),
            other => Err(CountError::UnknownEngine(other.into())),
        }
    }
}

/// Order in which cycles are filled during the search. Both give the same
/// count; the alternative exists to check that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SlotOrder {
    #[default]
    Descending,
    Ascending,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("cycle type {cycle_type} does not partition m = {m}")]
    CycleTypeMismatch { cycle_type: CycleType, m: u32 },
    #[error("frame normalization needs at least four fixed points, {cycle_type} has {fixed}")]
    NotEnoughFixedPoints { cycle_type: CycleType, fixed: u32 },
    #[error("estimated {estimate} iterations exceeds the budget of {budget}")]
    Infeasible { estimate: u128, budget: u128 },
    #[error("fixed-tuple count {raw} is not divisible by |PGL(3)| = {pgl}")]
    Indivisible { raw: u128, pgl: u128 },
    #[error("unknown engine {0:?} (expected twisted or frame)")]
    UnknownEngine(alloc::string::String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One completed count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub m: u32,
    pub cycle_type: CycleType,
    pub p: u64,
    pub condition: GeneralityCondition,
    /// Number of `F∘σ`-fixed tuples satisfying the condition.
    pub raw_fixed_count: u128,
    /// `raw_fixed_count / |PGL(3, F_p)|`.
    pub quotient_count: u128,
    pub engine: Engine,
}

/// Partial result of a range of the outer loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    /// Complete tuples accepted.
    pub fixed: u128,
    /// Candidate seeds examined.
    pub iterations: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        Tally {
            fixed: self.fixed + rhs.fixed,
            iterations: self.iterations + rhs.iterations,
        }
    }
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        *self = *self + rhs;
    }
}

/// Cycles that are enumerated, i.e. everything except pinned frame points.
fn free_parts(cycle_type: &CycleType, engine: Engine) -> Vec<u32> {
    let mut parts = cycle_type.parts().to_vec();
    if engine == Engine::Frame {
        for _ in 0..4 {
            if let Some(pos) = parts.iter().rposition(|&x| x == 1) {
                parts.remove(pos);
            }
        }
    }
    parts
}

/// Number of candidate seed combinations: the product over enumerated cycles
/// of `p^(2c) + p^c + 1`. Saturates at `u128::MAX`.
pub fn feasibility_estimate(cycle_type: &CycleType, p: u64, engine: Engine) -> u128 {
    free_parts(cycle_type, engine)
        .iter()
        .fold(1u128, |acc, &c| {
            let q = u128::from(p).checked_pow(c);
            let n = q.and_then(|q| q.checked_mul(q)?.checked_add(q)?.checked_add(1));
            n.map_or(u128::MAX, |n| acc.saturating_mul(n))
        })
}

/// Points over one subfield, with the Frobenius degree of each subfield
/// element so a candidate's orbit size is a table lookup.
struct Grid<E> {
    points: SubfieldPoints<E>,
    element_degree: Vec<u32>,
}

impl<E: Copy + Eq> Grid<E> {
    fn new<F: FieldOps<Elem = E>>(field: &F, d: u32) -> Result<Self, FieldError> {
        let points = enumerate_points(field, d).map_err(|e| match e {
            crate::plane::PlaneError::Field(f) => f,
            crate::plane::PlaneError::ZeroVector => unreachable!(),
        })?;
        let element_degree = points
            .subfield()
            .iter()
            .map(|&a| field.element_degree(a))
            .collect();
        Ok(Grid {
            points,
            element_degree,
        })
    }

    /// Orbit size of the point with index `i`: the lcm of the degrees of its
    /// normalized coordinates.
    #[inline]
    fn orbit_size(&self, i: u64) -> u32 {
        let q = self.points.subfield_order();
        if i < q * q {
            let (a, b) = self.points.affine_indices(i);
            let (da, db) = (self.element_degree[a], self.element_degree[b]);
            crate::numtheory::lcm(u64::from(da), u64::from(db)) as u32
        } else if i < q * q + q {
            self.element_degree[(i - q * q) as usize]
        } else {
            1
        }
    }
}

struct Slot {
    cycle_len: u32,
    grid: usize,
}

struct Search<F: FieldOps> {
    field: F,
    cond: GeneralityCondition,
    pinned: Vec<ProjectivePoint<F::Elem>>,
    slots: Vec<Slot>,
    grids: Vec<Grid<F::Elem>>,
}

impl<F: FieldOps> Search<F> {
    fn new(field: F, cond: GeneralityCondition, parts: &[u32], pin_frame: bool) -> Result<Self, FieldError> {
        let mut grids = Vec::new();
        let mut grid_degrees: Vec<u32> = Vec::new();
        let mut slots = Vec::new();
        for &c in parts {
            let grid = match grid_degrees.iter().position(|&d| d == c) {
                Some(g) => g,
                None => {
                    grids.push(Grid::new(&field, c)?);
                    grid_degrees.push(c);
                    grids.len() - 1
                }
            };
            slots.push(Slot { cycle_len: c, grid });
        }
        let pinned = if pin_frame {
            ProjectivePoint::standard_frame(&field).to_vec()
        } else {
            Vec::new()
        };
        Ok(Search {
            field,
            cond,
            pinned,
            slots,
            grids,
        })
    }

    fn outer_len(&self) -> u64 {
        self.slots
            .first()
            .map_or(1, |s| self.grids[s.grid].points.len())
    }

    fn fresh_check(&self) -> Option<IncrementalCheck<F::Elem>> {
        let mut check = IncrementalCheck::new(self.cond);
        for &p in &self.pinned {
            if !check.push(&self.field, p) {
                return None;
            }
        }
        Some(check)
    }

    fn count_range(&self, range: Range<u64>) -> Tally {
        let mut tally = Tally::default();
        let Some(mut check) = self.fresh_check() else {
            return tally;
        };
        let end = range.end.min(self.outer_len());
        if self.slots.is_empty() {
            if range.start < end {
                tally.iterations += 1;
                if check.full_check(&self.field) {
                    tally.fixed += 1;
                }
            }
            return tally;
        }
        for i in range.start..end {
            self.visit(0, i, &mut check, &mut tally);
        }
        tally
    }

    fn descend(&self, depth: usize, check: &mut IncrementalCheck<F::Elem>, tally: &mut Tally) {
        if depth == self.slots.len() {
            if check.full_check(&self.field) {
                tally.fixed += 1;
            }
            return;
        }
        let n = self.grids[self.slots[depth].grid].points.len();
        for i in 0..n {
            self.visit(depth, i, check, tally);
        }
    }

    #[inline]
    fn visit(&self, depth: usize, i: u64, check: &mut IncrementalCheck<F::Elem>, tally: &mut Tally) {
        tally.iterations += 1;
        let slot = &self.slots[depth];
        let grid = &self.grids[slot.grid];
        if grid.orbit_size(i) != slot.cycle_len {
            return;
        }
        let mark = check.len();
        let mut pt = grid.points.get(i);
        for j in 0..slot.cycle_len {
            if j > 0 {
                // Frobenius keeps the leading coordinate at 1, so the image
                // is already normalized.
                pt = ProjectivePoint::from_normalized(pt.coords().map(|x| self.field.frobenius(x)));
            }
            if !check.push(&self.field, pt) {
                check.truncate(mark);
                return;
            }
        }
        self.descend(depth + 1, check, tally);
        check.truncate(mark);
    }
}

enum Backend {
    Zech(Search<ZechField>),
    Poly(Search<ExtensionField>),
}

/// A prepared count: field tables and candidate grids are built once, then
/// disjoint ranges of the outermost loop can be evaluated independently (and
/// concurrently) and their tallies summed.
pub struct CountPlan {
    cycle_type: CycleType,
    p: u64,
    condition: GeneralityCondition,
    engine: Engine,
    estimate: u128,
    backend: Backend,
}

impl fmt::Debug for CountPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountPlan")
            .field("cycle_type", &self.cycle_type)
            .field("p", &self.p)
            .field("condition", &self.condition)
            .field("engine", &self.engine)
            .field("estimate", &self.estimate)
            .finish()
    }
}

impl CountPlan {
    pub fn new(
        cycle_type: &CycleType,
        p: u64,
        condition: GeneralityCondition,
        engine: Engine,
        budget: u128,
    ) -> Result<Self, CountError> {
        Self::with_order(cycle_type, p, condition, engine, budget, SlotOrder::default())
    }

    pub fn with_order(
        cycle_type: &CycleType,
        p: u64,
        condition: GeneralityCondition,
        engine: Engine,
        budget: u128,
        order: SlotOrder,
    ) -> Result<Self, CountError> {
        if p == 2 || !is_prime(p) {
            return Err(CountError::BadPrime(p));
        }
        if cycle_type.size() != condition.m() {
            return Err(CountError::CycleTypeMismatch {
                cycle_type: cycle_type.clone(),
                m: condition.m(),
            });
        }
        let fixed = cycle_type.multiplicity(1);
        if engine == Engine::Frame && fixed < 4 {
            return Err(CountError::NotEnoughFixedPoints {
                cycle_type: cycle_type.clone(),
                fixed,
            });
        }
        let estimate = feasibility_estimate(cycle_type, p, engine);
        if estimate > budget {
            return Err(CountError::Infeasible { estimate, budget });
        }
        let mut parts = free_parts(cycle_type, engine);
        if order == SlotOrder::Ascending {
            parts.reverse();
        }
        let ambient = parts
            .iter()
            .fold(1u64, |acc, &c| crate::numtheory::lcm(acc, u64::from(c))) as u32;
        let field = ExtensionField::new(p, ambient)?;
        let pin = engine == Engine::Frame;
        let backend = if field.order() <= ZECH_LIMIT {
            Backend::Zech(Search::new(ZechField::new(&field)?, condition, &parts, pin)?)
        } else {
            Backend::Poly(Search::new(field, condition, &parts, pin)?)
        };
        Ok(CountPlan {
            cycle_type: cycle_type.clone(),
            p,
            condition,
            engine,
            estimate,
            backend,
        })
    }

    pub fn estimate(&self) -> u128 {
        self.estimate
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// Length of the outermost loop; ranges passed to
    /// [`count_range`](Self::count_range) partition `0..outer_len()`.
    pub fn outer_len(&self) -> u64 {
        match &self.backend {
            Backend::Zech(s) => s.outer_len(),
            Backend::Poly(s) => s.outer_len(),
        }
    }

    pub fn count_range(&self, range: Range<u64>) -> Tally {
        match &self.backend {
            Backend::Zech(s) => s.count_range(range),
            Backend::Poly(s) => s.count_range(range),
        }
    }

    /// Turns the total accepted-tuple count into a record.
    pub fn finish(&self, fixed: u128) -> Result<CountRecord, CountError> {
        let pgl = pgl_order(self.p);
        let (raw, quotient) = match self.engine {
            Engine::Twisted => {
                if fixed % pgl != 0 {
                    return Err(CountError::Indivisible { raw: fixed, pgl });
                }
                (fixed, fixed / pgl)
            }
            Engine::Frame => (fixed * pgl, fixed),
        };
        Ok(CountRecord {
            m: self.condition.m(),
            cycle_type: self.cycle_type.clone(),
            p: self.p,
            condition: self.condition,
            raw_fixed_count: raw,
            quotient_count: quotient,
            engine: self.engine,
        })
    }

    /// Single-threaded run over the whole outer loop.
    pub fn run(&self) -> Result<CountRecord, CountError> {
        let tally = self.count_range(0..self.outer_len());
        self.finish(tally.fixed)
    }
}

fn check_m(m: u32, condition: &GeneralityCondition, cycle_type: &CycleType) -> Result<(), CountError> {
    if m != condition.m() || m != cycle_type.size() {
        return Err(CountError::CycleTypeMismatch {
            cycle_type: cycle_type.clone(),
            m,
        });
    }
    Ok(())
}

/// Counts `F∘σ`-fixed tuples by full enumeration, single-threaded, within the
/// default budget.
pub fn count_twisted(
    m: u32,
    cycle_type: &CycleType,
    p: u64,
    condition: GeneralityCondition,
) -> Result<CountRecord, CountError> {
    check_m(m, &condition, cycle_type)?;
    CountPlan::new(cycle_type, p, condition, Engine::Twisted, DEFAULT_BUDGET)?.run()
}

/// Counts the quotient directly with four fixed points pinned to the
/// standard frame, single-threaded, within the default budget.
pub fn count_frame_normalized(
    m: u32,
    cycle_type: &CycleType,
    p: u64,
    condition: GeneralityCondition,
) -> Result<CountRecord, CountError> {
    check_m(m, &condition, cycle_type)?;
    CountPlan::new(cycle_type, p, condition, Engine::Frame, DEFAULT_BUDGET)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn glp(m: u32) -> GeneralityCondition {
        GeneralityCondition::glp(m).unwrap()
    }

    #[test]
    fn estimates() {
        assert_eq!(feasibility_estimate(&ct("7"), 3, Engine::Twisted), 4_785_157);
        assert_eq!(feasibility_estimate(&ct("1x7"), 19, Engine::Frame), 55_306_341);
        let big = feasibility_estimate(&ct("7"), 7, Engine::Twisted);
        assert_eq!(big, 7u128.pow(14) + 7u128.pow(7) + 1);
        assert!(big > DEFAULT_BUDGET);
    }

    #[test]
    fn refuses_bad_requests() {
        assert_eq!(
            count_twisted(7, &ct("7"), 7, glp(7)),
            Err(CountError::Infeasible {
                estimate: 678_223_896_393,
                budget: DEFAULT_BUDGET
            })
        );
        assert_eq!(count_twisted(7, &ct("7"), 2, glp(7)), Err(CountError::BadPrime(2)));
        assert_eq!(count_twisted(7, &ct("7"), 9, glp(7)), Err(CountError::BadPrime(9)));
        assert!(matches!(
            count_frame_normalized(7, &ct("3.2.1.1"), 5, glp(7)),
            Err(CountError::NotEnoughFixedPoints { fixed: 2, .. })
        ));
        assert!(matches!(
            count_twisted(7, &ct("3.3"), 3, glp(7)),
            Err(CountError::CycleTypeMismatch { .. })
        ));
    }

    #[test]
    fn small_twisted_counts_at_three() {
        assert_eq!(count_twisted(7, &ct("1x7"), 3, glp(7)).unwrap().quotient_count, 0);
        assert_eq!(count_twisted(7, &ct("2.1x5"), 3, glp(7)).unwrap().quotient_count, 0);
        assert_eq!(count_twisted(7, &ct("2.2.1.1.1"), 3, glp(7)).unwrap().quotient_count, 24);
    }

    #[test]
    fn four_point_frames() {
        // Ordered 4-arcs over F_p form a single free PGL orbit.
        for p in [3, 5, 7] {
            let r = count_twisted(4, &ct("1x4"), p, glp(4)).unwrap();
            assert_eq!(r.quotient_count, 1);
            let f = count_frame_normalized(4, &ct("1x4"), p, glp(4)).unwrap();
            assert_eq!(f, CountRecord { engine: Engine::Frame, ..r });
        }
    }

    #[test]
    fn slot_orders_agree() {
        for (class, p) in [("2.2.1.1.1", 3), ("3.2.1.1", 3), ("4.2.1", 3)] {
            let counts: Vec<u128> = [SlotOrder::Descending, SlotOrder::Ascending]
                .into_iter()
                .map(|o| {
                    CountPlan::with_order(&ct(class), p, glp(7), Engine::Twisted, DEFAULT_BUDGET, o)
                        .unwrap()
                        .run()
                        .unwrap()
                        .raw_fixed_count
                })
                .collect();
            assert_eq!(counts[0], counts[1], "{class}");
        }
    }

    #[test]
    fn ranges_partition_the_count() {
        let plan = CountPlan::new(&ct("2.2.1.1.1"), 3, glp(7), Engine::Twisted, DEFAULT_BUDGET).unwrap();
        let n = plan.outer_len();
        let whole = plan.count_range(0..n);
        let split = plan.count_range(0..n / 3) + plan.count_range(n / 3..n / 2) + plan.count_range(n / 2..n + 5);
        assert_eq!(whole, split);
    }

    #[test]
    fn engine_names() {
        assert_eq!("frame".parse::<Engine>(), Ok(Engine::Frame));
        assert_eq!(Engine::Twisted.to_string(), "twisted");
        assert!("fast".parse::<Engine>().is_err());
    }
}

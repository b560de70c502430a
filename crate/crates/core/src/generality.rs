//! Generality conditions on ordered tuples of points.
//!
//! Each condition splits into a monotone part, checked on partial tuples
//! while enumerating (a failing tuple never recovers by adding points), and a
//! part that only makes sense on complete tuples.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::field::FieldOps;
use crate::plane::{
    conic_row, conic_through_five, cross, dot, singular_cubic_through, ProjectivePoint,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error("general linear position needs m >= 3, got {0}")]
    TooFewPoints(u32),
    #[error("unknown generality condition {0:?} (expected glp or gp8)")]
    Unknown(alloc::string::String),
    #[error("condition {name} requires m = {expected}, got {got}")]
    WrongArity {
        name: &'static str,
        expected: u32,
        got: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneralityCondition {
    /// Distinct points, no three on a line.
    Glp { m: u32 },
    /// Eight points: no three on a line, no six on a conic, and no cubic
    /// through all eight that is singular at one of them.
    GeneralPosition8,
}

impl GeneralityCondition {
    pub fn glp(m: u32) -> Result<Self, ConditionError> {
        if m < 3 {
            return Err(ConditionError::TooFewPoints(m));
        }
        Ok(GeneralityCondition::Glp { m })
    }

    pub fn gp8() -> Self {
        GeneralityCondition::GeneralPosition8
    }

    /// Builds a condition from its CLI name for tuples of `m` points.
    pub fn from_name(name: &str, m: u32) -> Result<Self, ConditionError> {
        match name {
            "glp" => Self::glp(m),
            "gp8" if m == 8 => Ok(Self::gp8()),
            "gp8" => Err(ConditionError::WrongArity {
                name: "gp8",
                expected: 8,
                got: m,
            }),
            other => Err(ConditionError::Unknown(other.into())),
        }
    }

    pub fn m(&self) -> u32 {
        match *self {
            GeneralityCondition::Glp { m } => m,
            GeneralityCondition::GeneralPosition8 => 8,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneralityCondition::Glp { .. } => "glp",
            GeneralityCondition::GeneralPosition8 => "gp8",
        }
    }

    fn forbids_six_on_conic(&self) -> bool {
        matches!(self, GeneralityCondition::GeneralPosition8)
    }
}

impl fmt::Display for GeneralityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses `glp:<m>` or `gp8`.
impl FromStr for GeneralityCondition {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some(("glp", m)) => {
                let m = m.parse().map_err(|_| ConditionError::Unknown(s.into()))?;
                Self::glp(m)
            }
            None if s == "gp8" => Ok(Self::gp8()),
            _ => Err(ConditionError::Unknown(s.into())),
        }
    }
}

fn each_subset<const K: usize>(n: usize, mut visit: impl FnMut(&[usize; K]) -> bool) -> bool {
    let mut idx = [0usize; K];
    if K > n {
        return true;
    }
    for (i, x) in idx.iter_mut().enumerate() {
        *x = i;
    }
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = K;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - K + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..K {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The monotone part of the condition on a (possibly partial) tuple:
/// distinct points, no three collinear, and for eight-point general position
/// no six on a conic. Tuples longer than `m` fail.
pub fn check_partial<F: FieldOps>(
    field: &F,
    cond: &GeneralityCondition,
    points: &[ProjectivePoint<F::Elem>],
) -> bool {
    let n = points.len();
    if n > cond.m() as usize {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    let no_lines = each_subset::<3>(n, |s| {
        !crate::plane::collinear(field, &points[s[0]], &points[s[1]], &points[s[2]])
    });
    if !no_lines {
        return false;
    }
    if cond.forbids_six_on_conic() {
        return each_subset::<6>(n, |s| {
            let six = s.map(|i| points[i]);
            !crate::plane::six_on_conic(field, &six)
        });
    }
    true
}

/// The full condition on a complete `m`-tuple.
pub fn check_full<F: FieldOps>(
    field: &F,
    cond: &GeneralityCondition,
    points: &[ProjectivePoint<F::Elem>],
) -> bool {
    if points.len() != cond.m() as usize || !check_partial(field, cond, points) {
        return false;
    }
    match cond {
        GeneralityCondition::Glp { .. } => true,
        GeneralityCondition::GeneralPosition8 => {
            let eight: &[ProjectivePoint<F::Elem>; 8] = points.try_into().expect("m = 8");
            (0..8).all(|i| !singular_cubic_through(field, eight, i))
        }
    }
}

fn dot6<F: FieldOps>(f: &F, a: &[F::Elem; 6], b: &[F::Elem; 6]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Stack-shaped checker for the enumeration engine. Keeps the lines through
/// every pair of accepted points, and for conditions that forbid six points
/// on a conic the conic through every five, so a new point costs one dot
/// product per cached curve.
#[derive(Clone, Debug)]
pub struct IncrementalCheck<E> {
    cond: GeneralityCondition,
    points: Vec<ProjectivePoint<E>>,
    lines: Vec<[E; 3]>,
    /// `lines.len()` before each point was pushed.
    line_marks: Vec<usize>,
    conics: Vec<[E; 6]>,
    conic_marks: Vec<usize>,
}

impl<E: Copy + Eq> IncrementalCheck<E> {
    pub fn new(cond: GeneralityCondition) -> Self {
        let m = cond.m() as usize;
        IncrementalCheck {
            cond,
            points: Vec::with_capacity(m),
            lines: Vec::with_capacity(m * (m - 1) / 2),
            line_marks: Vec::with_capacity(m),
            conics: Vec::new(),
            conic_marks: Vec::with_capacity(m),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint<E>] {
        &self.points
    }

    /// Appends `pt` if the monotone condition still holds; otherwise leaves
    /// the state untouched and returns false.
    #[inline]
    pub fn push<F: FieldOps<Elem = E>>(&mut self, field: &F, pt: ProjectivePoint<E>) -> bool {
        let c = pt.coords();
        if self.points.contains(&pt) {
            return false;
        }
        if self.lines.iter().any(|l| field.is_zero(dot(field, l, &c))) {
            return false;
        }
        let conics = self.cond.forbids_six_on_conic();
        if conics {
            let row = conic_row(field, &c);
            if self.conics.iter().any(|q| field.is_zero(dot6(field, q, &row))) {
                return false;
            }
        }
        self.line_marks.push(self.lines.len());
        for q in &self.points {
            self.lines.push(cross(field, &q.coords(), &c));
        }
        self.conic_marks.push(self.conics.len());
        let last = self.points.len() + 1 == self.cond.m() as usize;
        if conics && !last && self.points.len() >= 4 {
            // Conics through the new point and every four earlier ones.
            let points = &self.points;
            let found = &mut self.conics;
            each_subset::<4>(points.len(), |s| {
                let [a, b, d, e] = s.map(|i| points[i].coords());
                let conic = conic_through_five(field, [&a, &b, &d, &e, &c]);
                found.push(conic.expect("no three of five points are collinear"));
                true
            });
        }
        self.points.push(pt);
        true
    }

    pub fn truncate(&mut self, len: usize) {
        if len < self.points.len() {
            self.lines.truncate(self.line_marks[len]);
            self.line_marks.truncate(len);
            self.conics.truncate(self.conic_marks[len]);
            self.conic_marks.truncate(len);
            self.points.truncate(len);
        }
    }

    /// The non-monotone part, for a complete tuple.
    pub fn full_check<F: FieldOps<Elem = E>>(&self, field: &F) -> bool {
        match self.cond {
            GeneralityCondition::Glp { m } => self.points.len() == m as usize,
            GeneralityCondition::GeneralPosition8 => {
                let Ok(eight) = <&[ProjectivePoint<E>; 8]>::try_from(self.points.as_slice()) else {
                    return false;
                };
                (0..8).all(|i| !singular_cubic_through(field, eight, i))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtensionField;
    use crate::plane::enumerate_points;

    #[test]
    fn subsets_enumerated() {
        let mut seen = Vec::new();
        each_subset::<3>(5, |s| {
            seen.push(*s);
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], [0, 1, 2]);
        assert_eq!(seen[9], [2, 3, 4]);
        let mut count = 0;
        each_subset::<6>(5, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 0);
    }

    #[test]
    fn names() {
        assert_eq!(GeneralityCondition::from_name("glp", 7), Ok(GeneralityCondition::Glp { m: 7 }));
        assert_eq!(GeneralityCondition::from_name("gp8", 8), Ok(GeneralityCondition::GeneralPosition8));
        assert!(GeneralityCondition::from_name("gp8", 7).is_err());
        assert!(GeneralityCondition::from_name("agp", 8).is_err());
        assert_eq!(GeneralityCondition::glp(2), Err(ConditionError::TooFewPoints(2)));
        assert_eq!("glp:7".parse(), Ok(GeneralityCondition::Glp { m: 7 }));
        assert_eq!("gp8".parse(), Ok(GeneralityCondition::GeneralPosition8));
    }

    #[test]
    fn partial_examples() {
        let k = ExtensionField::new(3, 1).unwrap();
        let glp = GeneralityCondition::glp(7).unwrap();
        let [e1, e2, _, _] = ProjectivePoint::standard_frame(&k);
        let e12 = ProjectivePoint::new(&k, [k.one(), k.one(), k.zero()]).unwrap();
        assert!(check_partial(&k, &glp, &[e1, e2]));
        assert!(!check_partial(&k, &glp, &[e1, e2, e12]));
        assert!(!check_partial(&k, &glp, &[e1, e1]));
        assert!(check_partial(&k, &glp, &[]));
    }

    #[test]
    fn incremental_matches_direct_check() {
        let k = ExtensionField::new(5, 1).unwrap();
        let pts: Vec<_> = enumerate_points(&k, 1).unwrap().iter().collect();
        for cond in [GeneralityCondition::glp(6).unwrap(), GeneralityCondition::gp8()] {
            let mut state = 12345u64;
            for _ in 0..300 {
                let mut inc = IncrementalCheck::new(cond);
                let mut tuple = Vec::new();
                for _ in 0..cond.m() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let p = pts[(state >> 33) as usize % pts.len()];
                    tuple.push(p);
                    let ok = inc.push(&k, p);
                    assert_eq!(ok, check_partial(&k, &cond, &tuple));
                    if !ok {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn truncate_restores_state() {
        let k = ExtensionField::new(7, 1).unwrap();
        let glp = GeneralityCondition::glp(5).unwrap();
        let mut inc = IncrementalCheck::new(glp);
        for p in ProjectivePoint::standard_frame(&k) {
            assert!(inc.push(&k, p));
        }
        let on_line = ProjectivePoint::new(&k, [k.one(), k.one(), k.zero()]).unwrap();
        assert!(!inc.push(&k, on_line));
        inc.truncate(2);
        assert_eq!(inc.len(), 2);
        assert!(inc.push(&k, on_line) == check_partial(&k, &glp, &[inc.points()[0], inc.points()[1], on_line]));
    }
}

use super::PolyMatrix;
use crate::exact::IntPoly;
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Which side an elementary matrix multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSide {
    /// `E * M`.
    Left,
    /// `M * E`.
    Right,
}

/// The matrix class a positive equivalence stays inside: matrices
/// `I - A` with `A` over `t Z+[t]`, or with `A` in NZC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationClass {
    TZplusT,
    Nzc,
}

impl PresentationClass {
    /// Does `A` belong to the class?
    pub fn contains(&self, a: &PolyMatrix) -> bool {
        match self {
            PresentationClass::TZplusT => a.is_over_t_zplus_t(),
            PresentationClass::Nzc => {
                a.is_over_zplus_t()
                    && crate::equivalence::nilpotency_index(&a.constant_term()).is_some()
            }
        }
    }
}

/// One elementary multiplication `E_{ij}(poly)` applied on `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryMoveSpec {
    pub i: usize,
    pub j: usize,
    pub poly: IntPoly,
    pub side: MoveSide,
}

/// A single step of a move log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Elementary(ElementaryMoveSpec),
    /// `M -> M + 1` (direct sum with a 1x1 identity).
    Stabilize,
    /// Rewrite one monomial unit `t^from` of entry `(i, j)` of `A` to
    /// `t^to` (both exponents positive).
    ChangePower {
        i: usize,
        j: usize,
        from: usize,
        to: usize,
    },
}

/// An append-only record of class-preserving moves from `start` to
/// `end`; replaying the moves from `start` reproduces `end` and every
/// intermediate stays in the declared class.
#[derive(Debug, Clone)]
pub struct MoveLog {
    pub class: PresentationClass,
    pub start: PolyMatrix,
    pub moves: Vec<Move>,
    pub end: PolyMatrix,
}

impl MoveLog {
    pub fn new(class: PresentationClass, start: PolyMatrix) -> Result<Self> {
        let a = start.i_minus();
        if !class.contains(&a) {
            return Err(Error::IllegalMove(
                "move log must start at a matrix I - A with A in the declared class".into(),
            ));
        }
        Ok(MoveLog {
            class,
            end: start.clone(),
            start,
            moves: Vec::new(),
        })
    }

    /// Apply one move to the current end, verifying class membership.
    pub fn push(&mut self, mv: Move) -> Result<&PolyMatrix> {
        let next = apply_move(&self.end, &mv, self.class)?;
        self.moves.push(mv);
        self.end = next;
        Ok(&self.end)
    }

    /// Re-run every move from `start` and check the result equals
    /// `end` (and that every intermediate stays in class).
    pub fn replay(&self) -> Result<PolyMatrix> {
        let mut cur = self.start.clone();
        for mv in &self.moves {
            cur = apply_move(&cur, mv, self.class)?;
        }
        if cur != self.end {
            return Err(Error::Internal(
                "move log replay does not reach the recorded end".into(),
            ));
        }
        Ok(cur)
    }

    /// Rebuild a log from serialized parts, replaying every move (so
    /// class membership is re-verified) and checking the recorded end.
    pub fn from_parts(
        class: PresentationClass,
        start: PolyMatrix,
        moves: Vec<Move>,
        end: &PolyMatrix,
    ) -> Result<Self> {
        let mut log = MoveLog::new(class, start)?;
        for mv in moves {
            log.push(mv)?;
        }
        if &log.end != end {
            return Err(Error::Precondition(
                "serialized move log does not replay to its recorded end".into(),
            ));
        }
        Ok(log)
    }
}

fn apply_move(m: &PolyMatrix, mv: &Move, class: PresentationClass) -> Result<PolyMatrix> {
    match mv {
        Move::Elementary(spec) => positive_move(m, spec, class),
        Move::Stabilize => Ok(stabilize(m)),
        Move::ChangePower { i, j, from, to } => change_power(m, *i, *j, *from, *to),
    }
}

/// Apply a single elementary move to `M = I - A`, verifying that the
/// result is again `I - B` with `B` in the declared class. Both
/// endpoints of every basic move must lie in the class.
pub fn positive_move(
    m: &PolyMatrix,
    spec: &ElementaryMoveSpec,
    class: PresentationClass,
) -> Result<PolyMatrix> {
    if spec.i == spec.j || spec.i >= m.size() || spec.j >= m.size() {
        return Err(Error::IllegalMove(format!(
            "elementary move needs distinct indices inside the matrix, got ({}, {})",
            spec.i, spec.j
        )));
    }
    let a = m.i_minus();
    if !class.contains(&a) {
        return Err(Error::IllegalMove(
            "move applied outside the declared class".into(),
        ));
    }
    let e = PolyMatrix::elementary(m.size(), spec.i, spec.j, spec.poly.clone());
    let result = match spec.side {
        MoveSide::Left => e.mul(m)?,
        MoveSide::Right => m.mul(&e)?,
    };
    let b = result.i_minus();
    if !class.contains(&b) {
        // Name the first offending entry for the error message.
        let mut offending = (0, 0);
        'scan: for i in 0..b.size() {
            for j in 0..b.size() {
                let p = b.get(i, j);
                if !p.is_nonnegative()
                    || (class == PresentationClass::TZplusT && !p.coeff(0).is_zero())
                {
                    offending = (i, j);
                    break 'scan;
                }
            }
        }
        return Err(Error::IllegalMove(format!(
            "result leaves the class at entry ({}, {}): {}",
            offending.0,
            offending.1,
            b.get(offending.0, offending.1)
        )));
    }
    Ok(result)
}

/// `M -> M + 1`: the stabilization move. For `M = I - A` this is
/// `I - (A + 0)`, so class membership is preserved.
pub fn stabilize(m: &PolyMatrix) -> PolyMatrix {
    m.directsum_identity(1)
}

/// Remove a trailing `+ 1` block: the last row and column must match
/// the identity.
pub fn unstabilize(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.size();
    if n == 0 {
        return Err(Error::Precondition(
            "cannot unstabilize an empty matrix".into(),
        ));
    }
    let last = n - 1;
    for k in 0..n {
        let row_ok = if k == last {
            m.get(last, k).is_one()
        } else {
            m.get(last, k).is_zero() && m.get(k, last).is_zero()
        };
        if !row_ok {
            return Err(Error::Precondition(
                "last row/column do not match the identity".into(),
            ));
        }
    }
    Ok(PolyMatrix::from_fn(last, |i, j| m.get(i, j).clone()))
}

/// Rewrite one monomial unit `t^from` of entry `(i, j)` of `A` (where
/// `M = I - A`) into `t^to`. Only positive powers move: this is the
/// elementary step of the flow-equivalence relation.
pub fn change_power(
    m: &PolyMatrix,
    i: usize,
    j: usize,
    from: usize,
    to: usize,
) -> Result<PolyMatrix> {
    if from == 0 || to == 0 {
        return Err(Error::IllegalMove(
            "change_power only rewrites positive powers of t".into(),
        ));
    }
    if i >= m.size() || j >= m.size() {
        return Err(Error::IndexOutOfRange {
            context: "change_power",
            index: i.max(j),
            bound: m.size(),
        });
    }
    let a = m.i_minus();
    let entry = a.get(i, j);
    if entry.coeff(from) < num_bigint::BigInt::one() {
        return Err(Error::IllegalMove(format!(
            "entry ({i}, {j}) = {entry} has no t^{from} unit to rewrite"
        )));
    }
    if from == to {
        return Ok(m.clone());
    }
    let new_entry =
        &(entry - &IntPoly::monomial(1.into(), from)) + &IntPoly::monomial(1.into(), to);
    let mut b = a.clone();
    b.set(i, j, new_entry);
    Ok(b.i_minus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatrix::{flow_invariants, pm};

    #[test]
    fn proofideas_left_move() {
        // A = [[a, b + t^3, c], [d, e, f], [g, h, i]] with E_12(t^3)
        // applied on the left: B(1, k) = A(1, k) + t^3 A(2, k).
        // Instantiate with small concrete entries in tZ+[t].
        let t = |c: &[i64]| IntPoly::from_i64(c);
        let a = PolyMatrix::from_entries(
            3,
            vec![
                t(&[0, 1]),       // a = t
                t(&[0, 2, 0, 1]), // b + t^3 with b = 2t
                t(&[0, 0, 1]),    // c = t^2
                t(&[0, 1]),       // d = t
                t(&[0, 0, 2]),    // e = 2t^2
                t(&[0, 1]),       // f = t
                t(&[0, 0, 1]),    // g
                t(&[0, 1]),       // h
                t(&[0, 1]),       // i
            ],
        );
        let m = a.i_minus();
        let spec = ElementaryMoveSpec {
            i: 0,
            j: 1,
            poly: t(&[0, 0, 0, 1]),
            side: MoveSide::Left,
        };
        let result = positive_move(&m, &spec, PresentationClass::TZplusT).unwrap();
        let b = result.i_minus();
        for k in 0..3 {
            // B(1, k) = A(1, k) + t^3 A(2, k), except that in the
            // moved column the explicit t^3 of A(1, 2) cancels.
            let mut expected = a.get(0, k) + &(&t(&[0, 0, 0, 1]) * a.get(1, k));
            if k == 1 {
                expected = &expected - &t(&[0, 0, 0, 1]);
            }
            assert_eq!(*b.get(0, k), expected);
        }
        // Rows 2 and 3 are untouched.
        for i in 1..3 {
            for k in 0..3 {
                assert_eq!(b.get(i, k), a.get(i, k));
            }
        }
        // det is invariant under elementary moves.
        assert_eq!(m.det(), result.det());
    }

    #[test]
    fn zero_move_is_identity() {
        let a = pm(1, &[&[0, 2]]);
        let m = a.i_minus().directsum_identity(1);
        let spec = ElementaryMoveSpec {
            i: 0,
            j: 1,
            poly: IntPoly::zero(),
            side: MoveSide::Right,
        };
        assert_eq!(
            positive_move(&m, &spec, PresentationClass::TZplusT).unwrap(),
            m
        );
    }

    #[test]
    fn illegal_move_names_entry() {
        // Subtracting t^3 from an entry without a t^3 unit leaves the
        // class; the error must say where.
        let a = pm(1, &[&[0, 2]]);
        let m = a.i_minus().directsum_identity(1);
        let spec = ElementaryMoveSpec {
            i: 1,
            j: 0,
            poly: IntPoly::from_i64(&[0, 0, 0, -1]),
            side: MoveSide::Left,
        };
        let err = positive_move(&m, &spec, PresentationClass::TZplusT).unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
    }

    #[test]
    fn worked_stabilize_and_move_computation() {
        // The worked 2x2 -> 3x3 computation: starting from
        // A = [[2t, t + t^4], [t^2, 0]] define the 3x3
        // B = [[2t, t, t], [t^2, 0, 0], [0, t^3, 0]]; then
        // (I-B) E1 = I-C with E1 = E_32(t^3), and E2 (I-C) = (I-A)+1
        // with E2 = E_13(t).
        let t = |c: &[i64]| IntPoly::from_i64(c);
        let b = PolyMatrix::from_entries(
            3,
            vec![
                t(&[0, 2]),
                t(&[0, 1]),
                t(&[0, 1]),
                t(&[0, 0, 1]),
                t(&[]),
                t(&[]),
                t(&[]),
                t(&[0, 0, 0, 1]),
                t(&[]),
            ],
        );
        let a = PolyMatrix::from_entries(
            2,
            vec![t(&[0, 2]), t(&[0, 1, 0, 0, 1]), t(&[0, 0, 1]), t(&[])],
        );
        let mut log = MoveLog::new(PresentationClass::TZplusT, b.i_minus()).unwrap();
        log.push(Move::Elementary(ElementaryMoveSpec {
            i: 2,
            j: 1,
            poly: t(&[0, 0, 0, 1]),
            side: MoveSide::Right,
        }))
        .unwrap();
        log.push(Move::Elementary(ElementaryMoveSpec {
            i: 0,
            j: 2,
            poly: t(&[0, 1]),
            side: MoveSide::Left,
        }))
        .unwrap();
        assert_eq!(log.end, a.i_minus().directsum_identity(1));
        assert_eq!(log.replay().unwrap(), log.end);
        // Stabilized endpoints share det and flow invariants.
        assert_eq!(b.i_minus().det(), a.i_minus().det());
        assert_eq!(
            flow_invariants(&b).unwrap(),
            flow_invariants(&log.end.i_minus()).unwrap()
        );
    }

    #[test]
    fn stabilize_and_unstabilize_round_trip() {
        let a = pm(1, &[&[0, 2]]);
        let m = a.i_minus();
        let stabilized = stabilize(&m);
        assert_eq!(stabilized.size(), 2);
        assert_eq!(unstabilize(&stabilized).unwrap(), m);
        assert!(
            unstabilize(&m).is_err(),
            "1 - 2t does not end in an identity block"
        );
    }

    #[test]
    fn change_power_moves_one_unit() {
        // (3t): rewrite one t to t^2, then one t to t^3:
        // 3t -> t^2 + 2t -> t^2 + t^3 + t.
        let a = pm(1, &[&[0, 3]]);
        let m = a.i_minus();
        let m2 = change_power(&m, 0, 0, 1, 2).unwrap();
        assert_eq!(m2.i_minus(), pm(1, &[&[0, 2, 1]]));
        let m3 = change_power(&m2, 0, 0, 1, 3).unwrap();
        assert_eq!(m3.i_minus(), pm(1, &[&[0, 1, 1, 1]]));

        // No-op when exponents coincide.
        assert_eq!(change_power(&m, 0, 0, 1, 1).unwrap(), m);
        // Positive powers only.
        assert!(change_power(&m, 0, 0, 0, 2).is_err());
        // Rewriting an absent power is illegal.
        assert!(change_power(&m, 0, 0, 2, 3).is_err());
    }

    #[test]
    fn change_power_preserves_flow_invariants() {
        let a = pm(1, &[&[0, 3]]);
        let before = flow_invariants(&a).unwrap();
        let m = change_power(&a.i_minus(), 0, 0, 1, 5).unwrap();
        let after = flow_invariants(&m.i_minus()).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn displayed_change_power_chain() {
        // [[t^2 + t^5, t + t^3], [t^2, 0]] ~+ [[t^2 + t^3, t^4 + t^5],
        // [t^7, 0]] ~+ [[2t, 2t], [t, 0]]: all reachable by unit
        // rewrites, flow invariants equal throughout.
        let t = |c: &[i64]| IntPoly::from_i64(c);
        let first = PolyMatrix::from_entries(
            2,
            vec![
                t(&[0, 0, 1, 0, 0, 1]),
                t(&[0, 1, 0, 1]),
                t(&[0, 0, 1]),
                t(&[]),
            ],
        );
        let second = PolyMatrix::from_entries(
            2,
            vec![
                t(&[0, 0, 1, 1]),
                t(&[0, 0, 0, 0, 1, 1]),
                t(&[0, 0, 0, 0, 0, 0, 0, 1]),
                t(&[]),
            ],
        );
        let third = PolyMatrix::from_entries(2, vec![t(&[0, 2]), t(&[0, 2]), t(&[0, 1]), t(&[])]);
        let inv = flow_invariants(&first).unwrap();
        assert_eq!(inv, flow_invariants(&second).unwrap());
        assert_eq!(inv, flow_invariants(&third).unwrap());

        // Drive first -> second explicitly through unit rewrites.
        let mut log = MoveLog::new(PresentationClass::Nzc, first.i_minus()).unwrap();
        log.push(Move::ChangePower {
            i: 0,
            j: 0,
            from: 5,
            to: 3,
        })
        .unwrap();
        log.push(Move::ChangePower {
            i: 0,
            j: 1,
            from: 1,
            to: 4,
        })
        .unwrap();
        log.push(Move::ChangePower {
            i: 0,
            j: 1,
            from: 3,
            to: 5,
        })
        .unwrap();
        log.push(Move::ChangePower {
            i: 1,
            j: 0,
            from: 2,
            to: 7,
        })
        .unwrap();
        assert_eq!(log.end, second.i_minus());
        log.replay().unwrap();
    }
}

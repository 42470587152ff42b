//! Concrete reservation geometry and interval arithmetic shared by the
//! greedy scheduler, the validator and the brute-force oracle. Boundaries
//! are closed on both axes: touching rectangles overlap in space and
//! back-to-back intervals overlap in time, mirroring the solver's
//! conservative predicates.

use crate::machine::Coord;

/// Axis-aligned rectangle with inclusive corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub lo: Coord,
    pub hi: Coord,
}

impl Rect {
    /// Bounding rectangle of two points.
    pub fn bounding(a: Coord, b: Coord) -> Rect {
        Rect {
            lo: Coord::new(a.x.min(b.x), a.y.min(b.y)),
            hi: Coord::new(a.x.max(b.x), a.y.max(b.y)),
        }
    }

    pub fn contains(&self, p: Coord) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    /// Closed-boundary intersection test: rectangles sharing only an edge or
    /// corner still intersect.
    pub fn intersects(&self, other: &Rect) -> bool {
        !(self.lo.x > other.hi.x
            || self.hi.x < other.lo.x
            || self.lo.y > other.hi.y
            || self.hi.y < other.lo.y)
    }
}

/// The grid region a CNOT reserves for its duration: the full bounding
/// rectangle under rectangle reservation, or the two bounding-rectangle
/// edge segments through the bend point under 1-bend paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reservation {
    Rectangle(Rect),
    Segments(Rect, Rect),
}

impl Reservation {
    pub fn new(control: Coord, target: Coord, bend: Option<Coord>) -> Reservation {
        match bend {
            None => Reservation::Rectangle(Rect::bounding(control, target)),
            Some(b) => {
                Reservation::Segments(Rect::bounding(control, b), Rect::bounding(b, target))
            }
        }
    }

    pub fn contains(&self, p: Coord) -> bool {
        match self {
            Reservation::Rectangle(r) => r.contains(p),
            Reservation::Segments(a, b) => a.contains(p) || b.contains(p),
        }
    }

    pub fn intersects(&self, other: &Reservation) -> bool {
        let rects = |r: &Reservation| -> [Option<Rect>; 2] {
            match r {
                Reservation::Rectangle(a) => [Some(*a), None],
                Reservation::Segments(a, b) => [Some(*a), Some(*b)],
            }
        };
        for a in rects(self).into_iter().flatten() {
            for b in rects(other).into_iter().flatten() {
                if a.intersects(&b) {
                    return true;
                }
            }
        }
        false
    }
}

/// The two admissible one-bend junction points for a control/target pair.
/// For straight-line pairs both collapse onto the endpoints.
pub fn bend_candidates(control: Coord, target: Coord) -> [Coord; 2] {
    [
        Coord::new(control.x, target.y),
        Coord::new(target.x, control.y),
    ]
}

/// Conservative temporal overlap: `[t1, t1+d1]` and `[t2, t2+d2]` with
/// closed boundaries, so a gate starting exactly when another finishes
/// counts as overlapping.
pub fn overlaps_in_time(t1: i64, d1: i64, t2: i64, d2: i64) -> bool {
    !(t1 > t2 + d2 || t2 > t1 + d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_overlap_examples() {
        assert!(!overlaps_in_time(1, 8, 20, 8));
        assert!(overlaps_in_time(1, 8, 1, 8));
        // Back-to-back gates overlap under the closed-boundary convention.
        assert!(overlaps_in_time(1, 8, 9, 8));
        assert!(!overlaps_in_time(1, 8, 10, 8));
    }

    #[test]
    fn rect_overlap_examples() {
        let r = |a, b, c, d| Rect::bounding(Coord::new(a, b), Coord::new(c, d));
        assert!(!r(1, 1, 2, 2).intersects(&r(3, 3, 4, 4)));
        assert!(r(1, 1, 2, 2).intersects(&r(2, 2, 3, 3)));
        assert!(r(1, 1, 2, 2).intersects(&r(1, 1, 2, 2)));
    }

    #[test]
    fn segment_reservation_geometry() {
        // Control (1,1), target (3,4), bend (1,4): an L along row 1 then column 4.
        let res = Reservation::new(Coord::new(1, 1), Coord::new(3, 4), Some(Coord::new(1, 4)));
        assert!(res.contains(Coord::new(1, 2)));
        assert!(res.contains(Coord::new(2, 4)));
        assert!(!res.contains(Coord::new(2, 2)));
        let full = Reservation::new(Coord::new(1, 1), Coord::new(3, 4), None);
        assert!(full.contains(Coord::new(2, 2)));
    }

    #[test]
    fn disjoint_segments_do_not_intersect() {
        let a = Reservation::new(Coord::new(1, 1), Coord::new(2, 2), Some(Coord::new(1, 2)));
        let b = Reservation::new(Coord::new(3, 1), Coord::new(4, 2), Some(Coord::new(3, 2)));
        assert!(!a.intersects(&b));
        let c = Reservation::new(Coord::new(2, 1), Coord::new(3, 2), Some(Coord::new(2, 2)));
        assert!(a.intersects(&c));
    }
}

//! Navigation on the compact representation.
//!
//! Ticks are 1-based positions in `A`; vertices are 1-based preorder labels.
//! The `try_*` methods validate their arguments; the plain ones assume valid
//! input and panic (or return garbage in release builds) otherwise.

use crate::construction::CompactEmbedding;
use crate::error::QueryError;

impl CompactEmbedding {
    /// Number of ticks, `2m`.
    pub fn ticks(&self) -> usize {
        self.a().len()
    }

    /// Tick of the first edge processed at vertex `v`.
    #[inline]
    pub fn first(&self, v: usize) -> usize {
        self.a().select1(self.b().bits().select0(v - 1)) + 1
    }

    /// The tick after `i` at the same vertex, or `None` when `i` is the last
    /// edge processed there.
    #[inline]
    pub fn next(&self, i: usize) -> Option<usize> {
        let a = self.a();
        if !a.bit(i) {
            return (i < self.ticks()).then_some(i + 1);
        }
        if self.b().bits().bit(a.rank1(i)) {
            return None;
        }
        let j = self.mate(i) + 1;
        (j <= self.ticks()).then_some(j)
    }

    /// The tick that processes the same edge from its other endpoint.
    #[inline]
    pub fn mate(&self, i: usize) -> usize {
        let a = self.a();
        if a.bit(i) {
            a.select1(self.b().match_unchecked(a.rank1(i)))
        } else {
            a.select0(self.bstar().match_unchecked(a.rank0(i)))
        }
    }

    /// The vertex at which tick `i` is processed.
    #[inline]
    pub fn vertex(&self, i: usize) -> usize {
        let a = self.a();
        let b = self.b();
        let r = a.rank1(i);
        let open = r == 0 || !b.bits().bit(r);
        match (a.bit(i), open) {
            (false, true) => b.bits().rank0(r) + 1,
            (false, false) => b.parent_unchecked(b.bits().rank0(b.match_unchecked(r))) + 1,
            (true, true) => b.parent_unchecked(b.bits().rank0(r)) + 1,
            (true, false) => b.bits().rank0(b.match_unchecked(r)) + 1,
        }
    }

    /// Ticks processed at `v`, in counterclockwise order starting at `first(v)`.
    pub fn ticks_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(self.first(v)), move |&t| self.next(t))
    }

    /// Degree of `v`.
    pub fn counting(&self, v: usize) -> usize {
        self.ticks_of(v).count()
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn listing(&self, v: usize) -> Vec<usize> {
        self.ticks_of(v)
            .map(|t| self.vertex(self.mate(t)))
            .collect()
    }

    /// Vertices on the boundary of the face to the left of the edge
    /// processed at tick `e`, starting with the far end of `e`.
    pub fn face(&self, e: usize) -> Vec<usize> {
        self.face_ticks(e)
            .map(|t| self.vertex(self.mate(t)))
            .collect()
    }

    /// The ticks whose edges bound the face of tick `e`, starting at `e`.
    pub fn face_ticks(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = Some(e);
        std::iter::from_fn(move || {
            let t = cur?;
            let next = self.face_step(t);
            cur = (next != e).then_some(next);
            Some(t)
        })
    }

    /// Next tick around the same face: cross the edge, then turn to the next
    /// edge counterclockwise at the far end.
    #[inline]
    pub fn face_step(&self, t: usize) -> usize {
        let back = self.mate(t);
        self.next(back)
            .unwrap_or_else(|| self.first(self.vertex(back)))
    }

    pub fn try_first(&self, v: usize) -> Result<usize, QueryError> {
        self.check_vertex(v).map(|_| self.first(v))
    }

    pub fn try_next(&self, i: usize) -> Result<Option<usize>, QueryError> {
        self.check_tick(i).map(|_| self.next(i))
    }

    pub fn try_mate(&self, i: usize) -> Result<usize, QueryError> {
        self.check_tick(i).map(|_| self.mate(i))
    }

    pub fn try_vertex(&self, i: usize) -> Result<usize, QueryError> {
        self.check_tick(i).map(|_| self.vertex(i))
    }

    pub fn try_counting(&self, v: usize) -> Result<usize, QueryError> {
        self.check_vertex(v).map(|_| self.counting(v))
    }

    pub fn try_listing(&self, v: usize) -> Result<Vec<usize>, QueryError> {
        self.check_vertex(v).map(|_| self.listing(v))
    }

    pub fn try_face(&self, e: usize) -> Result<Vec<usize>, QueryError> {
        self.check_tick(e).map(|_| self.face(e))
    }

    fn check_vertex(&self, v: usize) -> Result<(), QueryError> {
        if (1..=self.n()).contains(&v) {
            Ok(())
        } else {
            Err(QueryError::VertexOutOfRange { v, n: self.n() })
        }
    }

    fn check_tick(&self, i: usize) -> Result<(), QueryError> {
        if (1..=self.ticks()).contains(&i) {
            Ok(())
        } else {
            Err(QueryError::TickOutOfRange {
                i,
                len: self.ticks(),
            })
        }
    }
}

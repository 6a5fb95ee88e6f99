//! Single-peakedness: consistency of ballot profiles with a societal axis,
//! discovery of a witnessing axis, and enumeration of the ballots an axis
//! allows.

use std::collections::BTreeSet;

use crate::model::{ApprovalElection, CandidateId, LinearElection};
use crate::pqtree::PqTree;

/// A societal linear order of the candidates. Consistency is invariant under
/// reversal, so an axis and its reverse witness the same profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    order: Vec<CandidateId>,
}

impl Axis {
    pub fn new(order: Vec<CandidateId>) -> Self {
        Axis { order }
    }

    pub fn identity(m: usize) -> Self {
        Axis {
            order: (0..m).map(CandidateId).collect(),
        }
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Axis {
        Axis {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    pub fn is_permutation_of(&self, m: usize) -> bool {
        if self.order.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for c in &self.order {
            if c.0 >= m || seen[c.0] {
                return false;
            }
            seen[c.0] = true;
        }
        true
    }

    /// Map candidate id -> axis position. Requires a permutation of 0..m.
    pub fn position_map(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.order.len()];
        for (i, c) in self.order.iter().enumerate() {
            pos[c.0] = i;
        }
        pos
    }

    pub fn position_of(&self, c: CandidateId) -> Option<usize> {
        self.order.iter().position(|&x| x == c)
    }
}

/// A ranking is consistent with the axis iff each of its prefixes occupies a
/// contiguous run of axis positions.
pub fn ranking_consistent(ranking: &[CandidateId], pos: &[usize]) -> bool {
    let mut lo = usize::MAX;
    let mut hi = 0usize;
    for (t, c) in ranking.iter().enumerate() {
        let p = pos[c.0];
        lo = lo.min(p);
        hi = hi.max(p);
        if hi - lo != t {
            return false;
        }
    }
    true
}

pub fn linear_consistent(e: &LinearElection, axis: &Axis) -> bool {
    if !axis.is_permutation_of(e.num_candidates()) {
        return false;
    }
    let pos = axis.position_map();
    e.ballots
        .iter()
        .all(|b| ranking_consistent(&b.ranking, &pos))
}

/// An approval profile is consistent iff every nonempty approved set is an
/// interval of the axis. Disapproving of everyone is always allowed.
pub fn approval_consistent(e: &ApprovalElection, axis: &Axis) -> bool {
    if !axis.is_permutation_of(e.num_candidates()) {
        return false;
    }
    let pos = axis.position_map();
    e.ballots.iter().all(|b| {
        if b.approved.is_empty() {
            return true;
        }
        let ps: Vec<usize> = b.approved.iter().map(|c| pos[c.0]).collect();
        let lo = *ps.iter().min().unwrap();
        let hi = *ps.iter().max().unwrap();
        hi - lo + 1 == ps.len()
    })
}

/// Find an axis witnessing single-peakedness of an approval profile, or
/// report that none exists. Runs a consecutive-ones reduction over the
/// distinct approved sets; among the orders the final structure represents,
/// the lexicographically least (by candidate index) is returned.
pub fn find_axis_approval(e: &ApprovalElection) -> Option<Axis> {
    let m = e.num_candidates();
    if m == 0 {
        return Some(Axis::new(Vec::new()));
    }
    let sets: BTreeSet<Vec<usize>> = e
        .ballots
        .iter()
        .map(|b| b.approved.iter().map(|c| c.0).collect::<Vec<usize>>())
        .filter(|s| s.len() >= 2 && s.len() < m)
        .collect();
    let mut tree = PqTree::new(m);
    for s in &sets {
        if !tree.reduce(s) {
            return None;
        }
    }
    let axis = Axis::new(tree.lex_min_frontier().into_iter().map(CandidateId).collect());
    debug_assert!(approval_consistent(e, &axis));
    Some(axis)
}

/// Find an axis witnessing single-peakedness of a linear-order profile.
///
/// Candidates are peeled from the bottom of the ballots: at any point each
/// ballot's least-preferred unplaced candidate must sit at one of the two
/// free ends of the axis, so at most two distinct candidates may be pending
/// per round, and pairs that one ballot orders against the peel order must
/// go to opposite ends. The side assignment is a 2-coloring of those
/// constraints; any consistent coloring yields a witnessing axis.
pub fn find_axis_linear(e: &LinearElection) -> Option<Axis> {
    let m = e.num_candidates();
    if m == 0 {
        return Some(Axis::new(Vec::new()));
    }
    let rankings: Vec<&[CandidateId]> = e.ballots.iter().map(|b| b.ranking.as_slice()).collect();
    if rankings.is_empty() {
        return Some(Axis::identity(m));
    }

    // Peel rounds: step[c] = round in which c had to be placed.
    let mut step = vec![usize::MAX; m];
    let mut placed = vec![false; m];
    let mut cursor = vec![0usize; rankings.len()]; // from the ballot's end
    let mut round = 0usize;
    let mut remaining = m;
    while remaining > 0 {
        let mut bottoms: Vec<usize> = Vec::with_capacity(2);
        for (v, r) in rankings.iter().enumerate() {
            while cursor[v] < m && placed[r[m - 1 - cursor[v]].0] {
                cursor[v] += 1;
            }
            debug_assert!(cursor[v] < m);
            let c = r[m - 1 - cursor[v]].0;
            if !bottoms.contains(&c) {
                bottoms.push(c);
            }
            if bottoms.len() > 2 {
                return None;
            }
        }
        for &c in &bottoms {
            step[c] = round;
            placed[c] = true;
            remaining -= 1;
        }
        round += 1;
    }

    // Opposite-end constraints: c placed before d, yet some ballot prefers c
    // to d (reading bottom-up, d comes first). Same-round pairs are always
    // opposite.
    let mut adj = vec![Vec::new(); m];
    let mut add_edge = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for r in &rankings {
        for i in 0..m {
            for j in (i + 1)..m {
                let c = r[i].0; // preferred
                let d = r[j].0;
                if step[d] >= step[c] {
                    add_edge(c, d, &mut adj);
                }
            }
        }
    }

    // 2-color; components are oriented from their earliest-placed member.
    let mut side = vec![None::<bool>; m]; // true = left stream
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&c| (step[c], c));
    for &start in &order {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(true);
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            let sx = side[x].unwrap();
            for &y in &adj[x] {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }

    let mut left: Vec<usize> = (0..m).filter(|&c| side[c] == Some(true)).collect();
    let mut right: Vec<usize> = (0..m).filter(|&c| side[c] == Some(false)).collect();
    left.sort_by_key(|&c| step[c]);
    right.sort_by_key(|&c| std::cmp::Reverse(step[c]));
    left.extend(right);
    let axis = Axis::new(left.into_iter().map(CandidateId).collect());
    debug_assert!(linear_consistent(e, &axis));
    let rev = axis.reversed();
    Some(if rev.order() < axis.order() { rev } else { axis })
}

/// All rankings consistent with the axis, built by drawing the next-worst
/// candidate from either end of the shrinking axis interval. There are
/// exactly 2^(m-1) of them; their order here is the enumeration order that
/// certificate tie-breaking refers to.
pub fn enumerate_sp_linear_ballots(axis: &Axis) -> Vec<Vec<CandidateId>> {
    let m = axis.len();
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(1 << (m - 1));
    let mut bottom_up: Vec<CandidateId> = Vec::with_capacity(m);
    fn go(
        axis: &[CandidateId],
        lo: usize,
        hi: usize,
        bottom_up: &mut Vec<CandidateId>,
        out: &mut Vec<Vec<CandidateId>>,
    ) {
        if lo == hi {
            bottom_up.push(axis[lo]);
            out.push(bottom_up.iter().rev().copied().collect());
            bottom_up.pop();
            return;
        }
        bottom_up.push(axis[lo]);
        go(axis, lo + 1, hi, bottom_up, out);
        bottom_up.pop();
        bottom_up.push(axis[hi]);
        go(axis, lo, hi - 1, bottom_up, out);
        bottom_up.pop();
    }
    go(axis.order(), 0, m - 1, &mut bottom_up, &mut out);
    out
}

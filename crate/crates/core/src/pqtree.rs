//! PQ-tree over a fixed universe, supporting the reduce operation that
//! constrains a subset of elements to appear consecutively in every
//! represented ordering. Used by the approval-profile axis recognizer.
//!
//! The implementation favors clarity over the amortized-linear-time
//! bookkeeping of the literature: every reduce walks the tree afresh.

#[derive(Debug, Clone)]
enum Kind {
    Leaf(usize),
    /// Children may appear in any order.
    P,
    /// Children appear in the stored order or its reverse.
    Q,
}

#[derive(Debug, Clone)]
struct Node {
    kind: Kind,
    children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PqTree {
    nodes: Vec<Node>,
    root: usize,
    universe: usize,
}

/// Shape of a subtree after a reduce pass, as seen by its parent.
enum Shape {
    Empty,
    Full,
    /// The node is now a Q whose children run full side first, empty side
    /// last.
    Partial(usize),
}

struct Fail;

impl PqTree {
    pub fn new(universe: usize) -> Self {
        let mut nodes: Vec<Node> = (0..universe)
            .map(|i| Node {
                kind: Kind::Leaf(i),
                children: Vec::new(),
            })
            .collect();
        let root = if universe == 1 {
            0
        } else {
            nodes.push(Node {
                kind: Kind::P,
                children: (0..universe).collect(),
            });
            nodes.len() - 1
        };
        PqTree {
            nodes,
            root,
            universe,
        }
    }

    /// Constrain `set` (element indices) to be consecutive. Returns false if
    /// no represented ordering satisfies all constraints so far.
    pub fn reduce(&mut self, set: &[usize]) -> bool {
        if set.len() <= 1 || set.len() >= self.universe {
            return true;
        }
        let mut full = vec![false; self.universe];
        for &x in set {
            full[x] = true;
        }
        let pertinent_root = self.pertinent_root(set.len(), &full);
        self.reduce_root(pertinent_root, &full).is_ok()
    }

    /// Leaves in left-to-right order of the tree's current arrangement.
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.universe);
        self.collect_frontier(self.root, &mut out);
        out
    }

    /// Lexicographically least frontier over all orderings the tree
    /// represents (any child order at P nodes, reversal at Q nodes).
    pub fn lex_min_frontier(&self) -> Vec<usize> {
        self.lex_min(self.root)
    }

    fn collect_frontier(&self, id: usize, out: &mut Vec<usize>) {
        match self.nodes[id].kind {
            Kind::Leaf(x) => out.push(x),
            _ => {
                for i in 0..self.nodes[id].children.len() {
                    self.collect_frontier(self.nodes[id].children[i], out);
                }
            }
        }
    }

    fn lex_min(&self, id: usize) -> Vec<usize> {
        match self.nodes[id].kind {
            Kind::Leaf(x) => vec![x],
            Kind::P => {
                let mut parts: Vec<Vec<usize>> = self.nodes[id]
                    .children
                    .iter()
                    .map(|&c| self.lex_min(c))
                    .collect();
                parts.sort();
                parts.concat()
            }
            Kind::Q => {
                let parts: Vec<Vec<usize>> = self.nodes[id]
                    .children
                    .iter()
                    .map(|&c| self.lex_min(c))
                    .collect();
                let forward = parts.concat();
                let backward: Vec<usize> = parts.iter().rev().flatten().copied().collect();
                forward.min(backward)
            }
        }
    }

    /// Deepest node whose subtree contains every full leaf.
    fn pertinent_root(&self, total: usize, full: &[bool]) -> usize {
        let mut id = self.root;
        'descend: loop {
            if let Kind::Leaf(_) = self.nodes[id].kind {
                return id;
            }
            for i in 0..self.nodes[id].children.len() {
                let c = self.nodes[id].children[i];
                if self.count_full(c, full) == total {
                    id = c;
                    continue 'descend;
                }
            }
            return id;
        }
    }

    fn count_full(&self, id: usize, full: &[bool]) -> usize {
        match self.nodes[id].kind {
            Kind::Leaf(x) => usize::from(full[x]),
            _ => self.nodes[id]
                .children
                .iter()
                .map(|&c| self.count_full(c, full))
                .sum(),
        }
    }

    fn new_node(&mut self, kind: Kind, children: Vec<usize>) -> usize {
        self.nodes.push(Node { kind, children });
        self.nodes.len() - 1
    }

    /// Wrap a child group: a single node stays itself, several go under a
    /// fresh P node.
    fn group(&mut self, mut ids: Vec<usize>) -> usize {
        if ids.len() == 1 {
            ids.pop().unwrap()
        } else {
            self.new_node(Kind::P, ids)
        }
    }

    /// Reduce a node strictly below (or at) the pertinent root, reporting its
    /// shape. At most one partial child is tolerated here.
    fn reduce_rec(&mut self, id: usize, full: &[bool]) -> Result<Shape, Fail> {
        match self.nodes[id].kind {
            Kind::Leaf(x) => Ok(if full[x] { Shape::Full } else { Shape::Empty }),
            Kind::P => {
                let children = self.nodes[id].children.clone();
                let mut empties = Vec::new();
                let mut fulls = Vec::new();
                let mut partial = None;
                for c in children {
                    match self.reduce_rec(c, full)? {
                        Shape::Empty => empties.push(c),
                        Shape::Full => fulls.push(c),
                        Shape::Partial(q) => {
                            if partial.replace(q).is_some() {
                                return Err(Fail);
                            }
                        }
                    }
                }
                match partial {
                    None => {
                        if fulls.is_empty() {
                            Ok(Shape::Empty)
                        } else if empties.is_empty() {
                            Ok(Shape::Full)
                        } else {
                            // Split into a full block and an empty block.
                            let fp = self.group(fulls);
                            let ep = self.group(empties);
                            self.nodes[id].kind = Kind::Q;
                            self.nodes[id].children = vec![fp, ep];
                            Ok(Shape::Partial(id))
                        }
                    }
                    Some(q) => {
                        // Splice the partial child's row between the full and
                        // empty blocks.
                        let mut seq = Vec::new();
                        if !fulls.is_empty() {
                            seq.push(self.group(fulls));
                        }
                        seq.extend(self.nodes[q].children.clone());
                        if !empties.is_empty() {
                            seq.push(self.group(empties));
                        }
                        self.nodes[id].kind = Kind::Q;
                        self.nodes[id].children = seq;
                        Ok(Shape::Partial(id))
                    }
                }
            }
            Kind::Q => {
                let children = self.nodes[id].children.clone();
                let mut shapes = Vec::with_capacity(children.len());
                for &c in &children {
                    shapes.push(self.reduce_rec(c, full)?);
                }
                if shapes.iter().all(|s| matches!(s, Shape::Full)) {
                    return Ok(Shape::Full);
                }
                if shapes.iter().all(|s| matches!(s, Shape::Empty)) {
                    return Ok(Shape::Empty);
                }
                // Children must read fulls first then empties, with at most
                // one partial at the boundary, in one of the two directions.
                let fits_forward = |shapes: &[Shape]| -> bool {
                    let mut seen_boundary = false;
                    for s in shapes {
                        match s {
                            Shape::Full if seen_boundary => return false,
                            Shape::Full => {}
                            Shape::Partial(_) if seen_boundary => return false,
                            Shape::Partial(_) | Shape::Empty => seen_boundary = true,
                        }
                    }
                    true
                };
                let oriented: Vec<(usize, Shape)> = if fits_forward(&shapes) {
                    children.into_iter().zip(shapes).collect()
                } else {
                    shapes.reverse();
                    if !fits_forward(&shapes) {
                        return Err(Fail);
                    }
                    children.into_iter().rev().zip(shapes).collect()
                };
                let mut seq = Vec::new();
                for (c, s) in oriented {
                    match s {
                        Shape::Full | Shape::Empty => seq.push(c),
                        Shape::Partial(q) => seq.extend(self.nodes[q].children.clone()),
                    }
                }
                self.nodes[id].children = seq;
                Ok(Shape::Partial(id))
            }
        }
    }

    /// Reduce at the pertinent root, where two partial children are legal.
    fn reduce_root(&mut self, id: usize, full: &[bool]) -> Result<(), Fail> {
        match self.nodes[id].kind {
            Kind::Leaf(_) => Ok(()),
            Kind::P => {
                let children = self.nodes[id].children.clone();
                let mut empties = Vec::new();
                let mut fulls = Vec::new();
                let mut partials = Vec::new();
                for c in children {
                    match self.reduce_rec(c, full)? {
                        Shape::Empty => empties.push(c),
                        Shape::Full => fulls.push(c),
                        Shape::Partial(q) => partials.push(q),
                    }
                }
                if partials.len() > 2 {
                    return Err(Fail);
                }
                match partials.len() {
                    0 => {
                        if fulls.is_empty() || empties.is_empty() {
                            return Ok(());
                        }
                        let fp = self.group(fulls);
                        let mut kids = vec![fp];
                        kids.extend(empties);
                        self.replace_p(id, kids);
                    }
                    1 => {
                        let q = partials[0];
                        if !fulls.is_empty() {
                            let fp = self.group(fulls);
                            self.nodes[q].children.insert(0, fp);
                        }
                        if empties.is_empty() {
                            // The whole node is the spliced Q.
                            let moved = self.nodes[q].clone();
                            self.nodes[id] = moved;
                        } else {
                            let mut kids = vec![q];
                            kids.extend(empties);
                            self.replace_p(id, kids);
                        }
                    }
                    2 => {
                        // Join the two partial rows full-end to full-end.
                        let (q1, q2) = (partials[0], partials[1]);
                        let mut seq: Vec<usize> =
                            self.nodes[q1].children.iter().rev().copied().collect();
                        if !fulls.is_empty() {
                            let fp = self.group(fulls);
                            seq.push(fp);
                        }
                        seq.extend(self.nodes[q2].children.clone());
                        if empties.is_empty() {
                            self.nodes[id].kind = Kind::Q;
                            self.nodes[id].children = seq;
                        } else {
                            let joined = self.new_node(Kind::Q, seq);
                            let mut kids = vec![joined];
                            kids.extend(empties);
                            self.replace_p(id, kids);
                        }
                    }
                    _ => unreachable!(),
                }
                Ok(())
            }
            Kind::Q => {
                let children = self.nodes[id].children.clone();
                let mut shapes = Vec::with_capacity(children.len());
                for &c in &children {
                    shapes.push(self.reduce_rec(c, full)?);
                }
                // Pattern: empties, optional partial, fulls, optional
                // partial, empties.
                #[derive(PartialEq)]
                enum St {
                    Lead,
                    Mid,
                    Tail,
                }
                let mut st = St::Lead;
                let mut seq = Vec::new();
                for (c, s) in children.into_iter().zip(shapes) {
                    match (&st, s) {
                        (St::Lead, Shape::Empty) => seq.push(c),
                        (St::Lead, Shape::Full) => {
                            st = St::Mid;
                            seq.push(c);
                        }
                        (St::Lead, Shape::Partial(q)) => {
                            // Full side must face the middle.
                            let mut kids = self.nodes[q].children.clone();
                            kids.reverse();
                            seq.extend(kids);
                            st = St::Mid;
                        }
                        (St::Mid, Shape::Full) => seq.push(c),
                        (St::Mid, Shape::Partial(q)) => {
                            seq.extend(self.nodes[q].children.clone());
                            st = St::Tail;
                        }
                        (St::Mid, Shape::Empty) | (St::Tail, Shape::Empty) => {
                            st = St::Tail;
                            seq.push(c);
                        }
                        (St::Tail, _) => return Err(Fail),
                    }
                }
                self.nodes[id].children = seq;
                Ok(())
            }
        }
    }

    fn replace_p(&mut self, id: usize, kids: Vec<usize>) {
        if kids.len() == 1 {
            let moved = self.nodes[kids[0]].clone();
            self.nodes[id] = moved;
        } else {
            self.nodes[id].kind = Kind::P;
            self.nodes[id].children = kids;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Brute-force consecutive-ones check over all permutations.
    fn brute_orders(universe: usize, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
        (0..universe)
            .permutations(universe)
            .filter(|perm| {
                sets.iter().all(|s| {
                    let pos: Vec<usize> =
                        s.iter().map(|&x| perm.iter().position(|&y| y == x).unwrap()).collect();
                    let (min, max) = (pos.iter().min().unwrap(), pos.iter().max().unwrap());
                    max - min + 1 == s.len()
                })
            })
            .collect()
    }

    fn run(universe: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
        let mut t = PqTree::new(universe);
        for s in sets {
            if !t.reduce(s) {
                return None;
            }
        }
        Some(t.lex_min_frontier())
    }

    #[test]
    fn agrees_with_brute_force_on_all_small_families() {
        // All families of up to three 2..m-1 sized subsets for m in 3..=5.
        for m in 3..=5usize {
            let subsets: Vec<Vec<usize>> = (0..(1u32 << m))
                .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|s: &Vec<usize>| s.len() >= 2 && s.len() < m)
                .collect();
            let mut checked = 0usize;
            for k in 1..=3usize.min(subsets.len()) {
                for family in subsets.iter().combinations(k) {
                    let family: Vec<Vec<usize>> = family.into_iter().cloned().collect();
                    let expected = brute_orders(m, &family);
                    let got = run(m, &family);
                    match got {
                        None => assert!(
                            expected.is_empty(),
                            "rejected feasible family {family:?} (m={m})"
                        ),
                        Some(order) => {
                            assert!(
                                expected.contains(&order),
                                "invalid order {order:?} for {family:?} (m={m})"
                            );
                            assert_eq!(
                                order,
                                expected.iter().min().unwrap().clone(),
                                "not lexicographically least for {family:?}"
                            );
                        }
                    }
                    checked += 1;
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn nested_and_overlapping_sets() {
        // A set strictly inside a block of twins, overlapped from both sides.
        let sets = vec![vec![1, 2, 3, 4], vec![2, 3], vec![0, 1, 2], vec![4, 5]];
        let order = run(6, &sets).expect("family is feasible");
        let expected = brute_orders(6, &sets);
        assert!(expected.contains(&order));
    }

    #[test]
    fn infeasible_triple_overlap() {
        assert_eq!(run(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]), None);
    }
}

use super::{Arc, Digraph};

/// Canonical arc order `e_1..e_{M0}, f_1..f_{M1}, f_1^{-1}..f_{M1}^{-1}`.
///
/// Singles (arcs whose inverse is absent) come first, then the paired arcs
/// `f_k`, then their inverses in matching order. Within each class arcs are
/// sorted by `(origin, terminus)`; within a pair, `f_k` is the
/// lexicographically smaller arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcOrdering {
    singles: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl ArcOrdering {
    /// Number of arcs without an inverse.
    pub fn m0(&self) -> usize {
        self.singles.len()
    }

    /// Number of inverse pairs.
    pub fn m1(&self) -> usize {
        self.pairs.len()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Original arc indices of the singles, in canonical order.
    pub fn singles(&self) -> &[usize] {
        &self.singles
    }

    /// `(f_k, f_k^{-1})` as original arc indices.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Canonical position -> original arc index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Original arc index -> canonical position.
    pub fn position(&self, original: usize) -> usize {
        self.position[original]
    }

    /// Canonical position of the inverse of the arc at canonical position
    /// `pos`, if the inverse exists.
    pub fn inverse_position(&self, pos: usize) -> Option<usize> {
        let (m0, m1) = (self.m0(), self.m1());
        if pos < m0 {
            None
        } else if pos < m0 + m1 {
            Some(pos + m1)
        } else {
            Some(pos - m1)
        }
    }
}

pub fn arc_partition(g: &Digraph) -> ArcOrdering {
    let arcs = g.arcs();
    let key = |i: &usize| (arcs[*i].origin, arcs[*i].terminus);
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        match g.arc_index(a.inverse()) {
            None => singles.push(i),
            Some(j) if (a.origin, a.terminus) < (a.terminus, a.origin) => pairs.push((i, j)),
            Some(_) => {}
        }
    }
    singles.sort_by_key(key);
    pairs.sort_by_key(|(f, _)| key(f));
    let order: Vec<usize> = singles
        .iter()
        .copied()
        .chain(pairs.iter().map(|p| p.0))
        .chain(pairs.iter().map(|p| p.1))
        .collect();
    let mut position = vec![0; order.len()];
    for (pos, &orig) in order.iter().enumerate() {
        position[orig] = pos;
    }
    ArcOrdering {
        singles,
        pairs,
        order,
        position,
    }
}

impl ArcOrdering {
    /// True when this ordering is a valid canonical ordering of `g`.
    pub fn matches(&self, g: &Digraph) -> bool {
        let m = g.n_arcs();
        if self.order.len() != m || self.m0() + 2 * self.m1() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &i in &self.order {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        let arcs = g.arcs();
        self.singles.iter().all(|&i| !g.has_arc(arcs[i].inverse()))
            && self.pairs.iter().all(|&(f, r)| arcs[f].inverse() == arcs[r])
    }

    /// Arcs of `g` listed in canonical order.
    pub fn canonical_arcs(&self, g: &Digraph) -> Vec<Arc> {
        self.order.iter().map(|&i| g.arcs()[i]).collect()
    }
}

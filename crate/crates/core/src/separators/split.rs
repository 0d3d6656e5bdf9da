//! Balanced vertex separators: `V = S ⊔ Z1 ⊔ Z2` with no `Z1`–`Z2` edge
//! and `|Z1| ≤ |Z2| ≤ 2·|Z1|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectra::fiedler_vector;

/// Largest graph the exhaustive strategy accepts.
pub const EXHAUSTIVE_MAX_N: usize = 18;

/// How many times the largest leftover component may be re-split.
pub const MAX_RESPLIT_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Minimum separator by subset enumeration (`n ≤ 18`).
    Exhaustive,
    /// BFS level sets from every start vertex.
    BfsLevel,
    /// All colour classes but the largest of a degeneracy-order greedy colouring.
    DegeneracyColoring,
    /// Median cut of the Fiedler vector, converted to a vertex cover.
    FiedlerSweep,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Exhaustive,
        Strategy::BfsLevel,
        Strategy::DegeneracyColoring,
        Strategy::FiedlerSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::BfsLevel => "bfs-level",
            Strategy::DegeneracyColoring => "degeneracy-coloring",
            Strategy::FiedlerSweep => "fiedler-sweep",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown strategy `{s}`") })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedSplit {
    pub separator: VertexSet,
    pub z1: VertexSet,
    pub z2: VertexSet,
}

/// `1 ≤ a ≤ b ≤ 2a`
pub fn is_balanced(a: usize, b: usize) -> bool {
    a >= 1 && a <= b && b <= 2 * a
}

impl BalancedSplit {
    /// Checks the full invariant list against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.order();
        let mut seen = vec![false; n];
        for v in self.separator.iter().chain(self.z1.iter()).chain(self.z2.iter()) {
            if v >= n || seen[v] {
                return Err(Error::Invariant(format!("split does not partition V (vertex {v})")));
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invariant("split does not cover V".into()));
        }
        if g.cut_size(&self.z1, &self.z2)? != 0 {
            return Err(Error::Invariant("edge between Z1 and Z2".into()));
        }
        if !is_balanced(self.z1.len(), self.z2.len()) {
            return Err(Error::Invariant(format!(
                "unbalanced sides {} / {}",
                self.z1.len(),
                self.z2.len()
            )));
        }
        Ok(())
    }

    /// Maps a split of `G[host]` back to host vertex ids.
    pub(crate) fn lift(&self, host: &VertexSet) -> BalancedSplit {
        BalancedSplit {
            separator: host.lift(&self.separator),
            z1: host.lift(&self.z1),
            z2: host.lift(&self.z2),
        }
    }
}

/// Balanced split of `g` (`n ≥ 4`) using `strategy`.
pub fn find_balanced_split(g: &Graph, strategy: Strategy) -> Result<BalancedSplit> {
    if g.order() < 4 {
        return Err(Error::OutOfRange(format!("find_balanced_split needs n >= 4, got {}", g.order())));
    }
    let split = split_graph(g, strategy)?;
    split.validate(g)?;
    Ok(split)
}

/// Same as [`find_balanced_split`] without the size floor; used on the
/// halves of a recursive decomposition.
pub(crate) fn split_graph(g: &Graph, strategy: Strategy) -> Result<BalancedSplit> {
    if g.order() < 2 {
        return Err(Error::NoSplit(strategy.to_string()));
    }
    match strategy {
        Strategy::Exhaustive => exhaustive(g),
        _ => heuristic(g, strategy, 0),
    }
}

/// Group components into two sides. First-fit by descending size into the
/// lighter side; if that is unbalanced, an exact subset-sum search.
fn group(comps: &[VertexSet]) -> Option<(VertexSet, VertexSet)> {
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(comps[i].len()), comps[i].as_slice().first().copied()));

    let (mut a, mut b) = (Vec::new(), Vec::new());
    let (mut sa, mut sb) = (0, 0);
    for &i in &order {
        if sa <= sb {
            a.push(i);
            sa += comps[i].len();
        } else {
            b.push(i);
            sb += comps[i].len();
        }
    }
    if is_balanced(sa.min(sb), sa.max(sb)) {
        return Some(sides(comps, &a, &b, sa <= sb));
    }

    let chosen = exact_group(&order.iter().map(|&i| comps[i].len()).collect::<Vec<_>>())?;
    let (a, b): (Vec<usize>, Vec<usize>) = {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (k, &i) in order.iter().enumerate() {
            if chosen[k] { a.push(i) } else { b.push(i) }
        }
        (a, b)
    };
    Some(sides(comps, &a, &b, true))
}

fn sides(comps: &[VertexSet], a: &[usize], b: &[usize], a_is_smaller: bool) -> (VertexSet, VertexSet) {
    let collect = |ix: &[usize]| ix.iter().flat_map(|&i| comps[i].iter()).collect::<VertexSet>();
    let (x, y) = (collect(a), collect(b));
    if a_is_smaller { (x, y) } else { (y, x) }
}

/// Subset of `sizes` with sum in `[⌈T/3⌉, ⌊T/2⌋]`, preferring the largest
/// such sum. Returns membership flags.
fn exact_group(sizes: &[usize]) -> Option<Vec<bool>> {
    let total: usize = sizes.iter().sum();
    let (lo, hi) = (total.div_ceil(3).max(1), total / 2);
    if lo > hi {
        return None;
    }
    // reach[s] = index of the item that first reached sum s
    let mut reach: Vec<Option<usize>> = vec![None; hi + 1];
    let mut reachable = vec![false; hi + 1];
    reachable[0] = true;
    for (i, &c) in sizes.iter().enumerate() {
        for s in (c..=hi).rev() {
            if !reachable[s] && reachable[s - c] {
                reachable[s] = true;
                reach[s] = Some(i);
            }
        }
    }
    let target = (lo..=hi).rev().find(|&s| reachable[s])?;
    let mut flags = vec![false; sizes.len()];
    let mut s = target;
    while s > 0 {
        let i = reach[s].expect("reachable sum has a last item");
        flags[i] = true;
        s -= sizes[i];
    }
    Some(flags)
}

fn split_from_separator(g: &Graph, sep: &VertexSet) -> Option<BalancedSplit> {
    let comps = g.components_avoiding(sep);
    let (z1, z2) = group(&comps)?;
    Some(BalancedSplit { separator: sep.clone(), z1, z2 })
}

/// Moves separator vertices whose outside neighbours all lie on one side
/// into that side while balance is kept.
fn trim(g: &Graph, split: BalancedSplit) -> BalancedSplit {
    const SEP: u8 = 0;
    const ONE: u8 = 1;
    const TWO: u8 = 2;
    let n = g.order();
    let mut side = vec![SEP; n];
    for v in split.z1.iter() {
        side[v] = ONE;
    }
    for v in split.z2.iter() {
        side[v] = TWO;
    }
    let (mut c1, mut c2) = (split.z1.len(), split.z2.len());
    let mut changed = true;
    while changed {
        changed = false;
        for v in split.separator.iter() {
            if side[v] != SEP {
                continue;
            }
            let touches = |s: u8| g.neighbors(v).iter().any(|&w| side[w] == s);
            let target = match (touches(ONE), touches(TWO)) {
                (true, true) => continue,
                (true, false) => ONE,
                (false, true) => TWO,
                (false, false) => if c1 <= c2 { ONE } else { TWO },
            };
            let (n1, n2) = if target == ONE { (c1 + 1, c2) } else { (c1, c2 + 1) };
            if is_balanced(n1.min(n2), n1.max(n2)) {
                side[v] = target;
                (c1, c2) = (n1, n2);
                changed = true;
            }
        }
    }
    let pick = |s: u8| (0..n).filter(|&v| side[v] == s).collect::<VertexSet>();
    let (z1, z2) = if c1 <= c2 { (pick(ONE), pick(TWO)) } else { (pick(TWO), pick(ONE)) };
    BalancedSplit { separator: pick(SEP), z1, z2 }
}

/// Smallest separator, ties broken by fewest edges leaving it, then by
/// the lexicographically first vertex list.
fn exhaustive(g: &Graph) -> Result<BalancedSplit> {
    let n = g.order();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::OutOfRange(format!(
            "exhaustive strategy supports n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    let mut best: Option<(usize, usize, Vec<usize>, u32)> = None;
    for mask in 0..=full {
        let k = mask.count_ones() as usize;
        if k + 2 > n || best.as_ref().is_some_and(|b| k > b.0) {
            continue;
        }
        let sizes = component_sizes(&adj, full & !mask);
        if exact_group(&sizes).is_none() {
            continue;
        }
        let cut: usize = bits(mask).map(|v| (adj[v] & !mask).count_ones() as usize).sum();
        let verts: Vec<usize> = bits(mask).collect();
        let better = match &best {
            None => true,
            Some((bk, bc, bv, _)) => (k, cut, &verts) < (*bk, *bc, bv),
        };
        if better {
            best = Some((k, cut, verts, mask));
        }
    }
    let (_, _, verts, _) = best.ok_or_else(|| Error::NoSplit(Strategy::Exhaustive.to_string()))?;
    let split = split_from_separator(g, &VertexSet::from_vec(verts))
        .expect("grouping succeeded during enumeration");
    Ok(split)
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

fn component_sizes(adj: &[u32], mut remaining: u32) -> Vec<usize> {
    let mut sizes = Vec::new();
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            next &= remaining & !comp;
            comp |= next;
            frontier = next;
        }
        remaining &= !comp;
        sizes.push(comp.count_ones() as usize);
    }
    sizes
}

fn heuristic(g: &Graph, strategy: Strategy, depth: usize) -> Result<BalancedSplit> {
    let mut candidates = vec![VertexSet::new()];
    candidates.extend(match strategy {
        Strategy::BfsLevel => bfs_level_candidates(g),
        Strategy::DegeneracyColoring => vec![coloring_candidate(g)],
        Strategy::FiedlerSweep => vec![fiedler_candidate(g)?],
        Strategy::Exhaustive => unreachable!("exhaustive handled separately"),
    });

    let mut best: Option<(usize, usize, BalancedSplit)> = None;
    for sep in &candidates {
        let Some(split) = split_from_separator(g, sep) else { continue };
        let split = trim(g, split);
        let cut = separator_cut(g, &split.separator);
        let key = (split.separator.len(), cut);
        if best.as_ref().is_none_or(|(k, c, _)| key < (*k, *c)) {
            best = Some((key.0, key.1, split));
        }
    }
    if let Some((_, _, split)) = best {
        return Ok(split);
    }

    // No candidate balances on its own: keep the one whose largest leftover
    // component is smallest and re-split that component.
    let primary = candidates
        .iter()
        .skip(1)
        .min_by_key(|s| {
            let largest = g.components_avoiding(s).iter().map(VertexSet::len).max().unwrap_or(0);
            (largest, s.len())
        })
        .cloned()
        .unwrap_or_default();
    resplit(g, primary, strategy, depth)
}

fn resplit(g: &Graph, mut sep: VertexSet, strategy: Strategy, depth: usize) -> Result<BalancedSplit> {
    let mut level = depth;
    loop {
        if let Some(split) = split_from_separator(g, &sep) {
            return Ok(trim(g, split));
        }
        if level >= MAX_RESPLIT_DEPTH {
            return Err(Error::NoSplit(strategy.to_string()));
        }
        let comps = g.components_avoiding(&sep);
        let largest = comps
            .iter()
            .max_by_key(|c| (c.len(), std::cmp::Reverse(c.as_slice().first().copied())))
            .cloned()
            .ok_or_else(|| Error::NoSplit(strategy.to_string()))?;
        if largest.len() < 2 {
            return Err(Error::NoSplit(strategy.to_string()));
        }
        let sub = g.induced_subgraph(&largest);
        let inner = heuristic(&sub, strategy, level + 1)?;
        sep = sep.union(&largest.lift(&inner.separator));
        level += 1;
    }
}

fn separator_cut(g: &Graph, sep: &VertexSet) -> usize {
    let mask = g.mask(sep);
    sep.iter().map(|v| g.neighbors(v).iter().filter(|&&w| !mask[w]).count()).sum()
}

/// Every BFS level (beyond the root) from every start vertex.
fn bfs_level_candidates(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let mut out = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        dist.fill(usize::MAX);
        dist[start] = 0;
        queue.push_back(start);
        let mut levels: Vec<Vec<usize>> = vec![vec![start]];
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    if levels.len() <= dist[w] {
                        levels.push(Vec::new());
                    }
                    levels[dist[w]].push(w);
                    queue.push_back(w);
                }
            }
        }
        out.extend(levels.into_iter().skip(1).map(VertexSet::from_vec));
    }
    out.sort();
    out.dedup();
    out
}

/// Smallest-last (degeneracy) order, greedy colouring in reverse, and the
/// union of all colour classes except the largest.
fn coloring_candidate(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut color = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("free colour");
    }
    let k = color.iter().max().map_or(0, |c| c + 1);
    let mut counts = vec![0usize; k];
    for &c in &color {
        counts[c] += 1;
    }
    let keep = (0..k).max_by_key(|&c| (counts[c], std::cmp::Reverse(c))).unwrap_or(0);
    (0..n).filter(|&v| color[v] != keep).collect()
}

/// Median cut of the Fiedler vector; the separator is the smaller of the
/// two boundary sets, which covers every cut edge.
fn fiedler_candidate(g: &Graph) -> Result<VertexSet> {
    let n = g.order();
    let phi = fiedler_vector(g)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phi.vector(a)[0].total_cmp(&phi.vector(b)[0]).then(a.cmp(&b)));
    let mut left = vec![false; n];
    for &v in &order[..n / 2] {
        left[v] = true;
    }
    let (mut bl, mut br) = (Vec::new(), Vec::new());
    for &(u, v) in g.edges() {
        if left[u] != left[v] {
            let (l, r) = if left[u] { (u, v) } else { (v, u) };
            bl.push(l);
            br.push(r);
        }
    }
    let (bl, br) = (VertexSet::from_vec(bl), VertexSet::from_vec(br));
    Ok(if bl.len() <= br.len() { bl } else { br })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn path4_exhaustive() {
        let g = generate(Family::Path(4)).unwrap();
        let s = find_balanced_split(&g, Strategy::Exhaustive).unwrap();
        assert_eq!(s.separator.as_slice(), &[1]);
        assert_eq!((s.z1.len(), s.z2.len()), (1, 2));
    }

    #[test]
    fn grid3_bfs_level() {
        let g = generate(Family::Grid(3, 3)).unwrap();
        let s = find_balanced_split(&g, Strategy::BfsLevel).unwrap();
        assert_eq!(s.separator.len(), 3);
        assert_eq!((s.z1.len(), s.z2.len()), (3, 3));
    }

    #[test]
    fn grid3_exhaustive_prefers_fewest_leaving_edges() {
        let g = generate(Family::Grid(3, 3)).unwrap();
        let s = find_balanced_split(&g, Strategy::Exhaustive).unwrap();
        assert_eq!(s.separator.as_slice(), &[1, 4, 7]);
    }

    #[test]
    fn complete_graph_has_no_split() {
        let k = generate(Family::Complete(6)).unwrap();
        for st in Strategy::ALL {
            assert!(matches!(find_balanced_split(&k, st), Err(Error::NoSplit(_))), "{st}");
        }
    }

    #[test]
    fn heuristics_split_planar_graphs() {
        for seed in 0..5 {
            let g = generate(Family::RandomPlanar(60, seed)).unwrap();
            for st in [Strategy::BfsLevel, Strategy::DegeneracyColoring, Strategy::FiedlerSweep] {
                let s = find_balanced_split(&g, st).unwrap();
                s.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn disconnected_graph_splits_for_free() {
        let g = Graph::empty(5);
        let s = find_balanced_split(&g, Strategy::BfsLevel).unwrap();
        assert!(s.separator.is_empty());
    }

    #[test]
    fn exact_grouping() {
        assert_eq!(exact_group(&[5, 1]), None);
        let f = exact_group(&[4, 3, 2]).unwrap();
        let s: usize = [4, 3, 2].iter().zip(&f).filter(|(_, &b)| b).map(|(c, _)| c).sum();
        assert_eq!(s, 4);
        assert_eq!(exact_group(&[1]), None);
    }

    #[test]
    fn strategy_names_round_trip() {
        for st in Strategy::ALL {
            assert_eq!(st.name().parse::<Strategy>().unwrap(), st);
        }
    }
}

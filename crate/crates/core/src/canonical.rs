//! Canonical forms and automorphisms of partially coloured boards.
//!
//! The search is a small individualisation-refinement procedure. Vertices are
//! placed at canonical positions `0, 1, 2, ...` in turn; placing a vertex at
//! position `k` fixes exactly the colex slots `C(k, 2) .. C(k + 1, 2)` of the
//! relabelled board, so two labellings can be compared position by position
//! and a branch is abandoned as soon as its prefix is larger than the best one
//! seen. After each placement the ordered vertex partition is refined by
//! neighbour counts per edge state, which keeps the candidate sets small.
//!
//! Two leaves with equal codes differ by an automorphism. Those automorphisms
//! are kept: they prune sibling candidates lying in one orbit, allow jumping
//! back to the node where the two leaves diverged, and generate the full
//! automorphism group used for edge orbits.

use std::cmp::Ordering;

use crate::board::{edge_slot, pairs, slot_endpoints, ColoredBoard, EdgeId, EdgeState, MAX_ORDER};
use crate::error::{Error, Result};

/// Least relabelling of a board among those the partition refinement admits,
/// compared slot by slot in colex order with slot 0 most significant and
/// `Absent < Uncolored < Blue < Red`. The admissible labellings depend only on
/// the isomorphism class, so this is a canonical form, though not necessarily
/// the least relabelling overall.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

impl CanonicalForm {
    #[inline]
    pub(crate) fn from_code(n: usize, code: u128) -> Self {
        CanonicalForm { n: n as u8, code }
    }

    /// Packed code of the canonical board (same layout as [`ColoredBoard::bits`]).
    #[inline]
    pub fn code(&self) -> u128 {
        self.code
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative itself.
    #[inline]
    pub fn board(&self) -> ColoredBoard {
        ColoredBoard::from_bits_unchecked(self.n as usize, self.code)
    }

    /// `encode()` of the canonical representative.
    pub fn bytes(&self) -> Vec<u8> {
        self.board().encode()
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm({})", self.board().to_text())
    }
}

/// A vertex permutation, `perm[v]` is the image of `v`.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone)]
pub struct Labelling {
    pub form: CanonicalForm,
    /// `relabel[v]` is the canonical label of vertex `v`.
    pub relabel: Permutation,
    /// Automorphisms found during the search; they generate the full group.
    pub automorphisms: Vec<Permutation>,
}

/// Edge classes under the automorphism group of a board, ordered by their
/// smallest member. Only present edges are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub classes: Vec<Vec<EdgeId>>,
}

impl OrbitPartition {
    pub fn class_of(&self, e: EdgeId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&e))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn canonical_form(b: &ColoredBoard) -> Result<CanonicalForm> {
    Ok(canonical_labelling(b)?.form)
}

pub fn canonical_labelling(b: &ColoredBoard) -> Result<Labelling> {
    let n = b.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!("canonical labelling supports order up to {MAX_ORDER}")));
    }
    let mut search = Search::new(b);
    let mut root = Partition::unit(n);
    search.refine(&mut root);
    search.descend(&root, 0);

    let mut relabel = vec![0; n];
    for (pos, &v) in search.best_path[..n].iter().enumerate() {
        relabel[v as usize] = pos;
    }
    let form = CanonicalForm::from_code(n, b.permuted(&relabel).bits());
    let automorphisms = search
        .autos
        .iter()
        .map(|g| g[..n].iter().map(|&x| x as usize).collect())
        .collect();
    Ok(Labelling { form, relabel, automorphisms })
}

pub fn is_isomorphic(b1: &ColoredBoard, b2: &ColoredBoard) -> Result<bool> {
    if b1.order() != b2.order() {
        return Err(Error::Dimension(b1.order(), b2.order()));
    }
    Ok(canonical_form(b1)? == canonical_form(b2)?)
}

pub fn edge_orbits(b: &ColoredBoard) -> Result<OrbitPartition> {
    let lab = canonical_labelling(b)?;
    Ok(orbits_from_generators(b, &lab.automorphisms))
}

/// Edge orbits of `b` under the group generated by `generators`.
pub fn orbits_from_generators(b: &ColoredBoard, generators: &[Permutation]) -> OrbitPartition {
    let slots = b.edge_slots();
    let mut parent: Vec<usize> = (0..slots).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in generators {
        for e in 0..slots {
            let (u, v) = slot_endpoints(e);
            let f = edge_slot(g[u], g[v]);
            let (re, rf) = (find(&mut parent, e), find(&mut parent, f));
            if re != rf {
                // Keep the smaller slot as root so classes sort by minimum.
                let (lo, hi) = if re < rf { (re, rf) } else { (rf, re) };
                parent[hi] = lo;
            }
        }
    }
    let mut classes: Vec<Vec<EdgeId>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; slots];
    for e in 0..slots {
        if b.slot(e) == EdgeState::Absent {
            continue;
        }
        let r = find(&mut parent, e);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[index_of_root[r]].push(EdgeId(e));
    }
    OrbitPartition { classes }
}

/// Order of the group generated by `generators` on `n` points, found by
/// closing the identity under the generators; `None` once it exceeds `limit`.
pub fn group_order(n: usize, generators: &[Permutation], limit: usize) -> Option<u64> {
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut seen = std::collections::HashSet::from([identity.clone()]);
    let mut queue = vec![identity];
    while let Some(p) = queue.pop() {
        for g in generators {
            let q: Vec<u8> = p.iter().map(|&x| g[x as usize] as u8).collect();
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(q);
            }
        }
    }
    Some(seen.len() as u64)
}

/// Ordered partition of the vertices. Cells are contiguous ranges of `order`;
/// `end[s]` is the exclusive end of the cell starting at `s`.
#[derive(Clone, Copy)]
struct Partition {
    order: [u8; MAX_ORDER],
    end: [u8; MAX_ORDER],
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut order = [0u8; MAX_ORDER];
        for (i, o) in order.iter_mut().enumerate().take(n) {
            *o = i as u8;
        }
        let mut end = [0u8; MAX_ORDER];
        if n > 0 {
            end[0] = n as u8;
        }
        Partition { order, end }
    }

    /// Splits `x` off the front of the cell starting at `pos`.
    fn individualize(&mut self, pos: usize, x: u8) {
        let e = self.end[pos] as usize;
        let i = (pos..e).find(|&i| self.order[i] == x).expect("candidate in cell");
        self.order.swap(pos, i);
        if e - pos > 1 {
            self.order[pos + 1..e].sort_unstable();
            self.end[pos] = pos as u8 + 1;
            self.end[pos + 1] = e as u8;
        }
    }
}

struct Search {
    n: usize,
    state: [[u8; MAX_ORDER]; MAX_ORDER],
    // Neighbour masks for Uncolored, Blue, Red.
    masks: [[u16; MAX_ORDER]; 3],
    has_best: bool,
    best_path: [u8; MAX_ORDER],
    best_blocks: [u32; MAX_ORDER],
    path: [u8; MAX_ORDER],
    blocks: [u32; MAX_ORDER],
    eq: [bool; MAX_ORDER + 1],
    autos: Vec<[u8; MAX_ORDER]>,
}

impl Search {
    fn new(b: &ColoredBoard) -> Self {
        let n = b.order();
        let mut state = [[0u8; MAX_ORDER]; MAX_ORDER];
        let mut masks = [[0u16; MAX_ORDER]; 3];
        let bits = b.bits();
        for e in 0..pairs(n) {
            let code = ((bits >> (2 * e)) & 0b11) as u8;
            if code == 0 {
                continue;
            }
            let (u, v) = slot_endpoints(e);
            state[u][v] = code;
            state[v][u] = code;
            let m = &mut masks[code as usize - 1];
            m[u] |= 1 << v;
            m[v] |= 1 << u;
        }
        Search {
            n,
            state,
            masks,
            has_best: false,
            best_path: [0; MAX_ORDER],
            best_blocks: [0; MAX_ORDER],
            path: [0; MAX_ORDER],
            blocks: [0; MAX_ORDER],
            eq: [false; MAX_ORDER + 1],
            autos: Vec::new(),
        }
    }

    #[inline]
    fn key(&self, v: usize, w: u16) -> u16 {
        let unc = (self.masks[0][v] & w).count_ones() as u16;
        let blue = (self.masks[1][v] & w).count_ones() as u16;
        let red = (self.masks[2][v] & w).count_ones() as u16;
        unc | (blue << 4) | (red << 8)
    }

    /// Refines `p` to an equitable ordered partition. Subcells are ordered by
    /// their neighbour-count key, so the result commutes with relabelling.
    fn refine(&self, p: &mut Partition) {
        let n = self.n;
        'restart: loop {
            let mut ws = 0;
            while ws < n {
                let we = p.end[ws] as usize;
                let mut wmask = 0u16;
                for &v in &p.order[ws..we] {
                    wmask |= 1 << v;
                }
                let mut xs = 0;
                while xs < n {
                    let xe = p.end[xs] as usize;
                    if xe - xs > 1 && self.split(p, xs, xe, wmask) {
                        continue 'restart;
                    }
                    xs = xe;
                }
                ws = we;
            }
            return;
        }
    }

    fn split(&self, p: &mut Partition, s: usize, e: usize, wmask: u16) -> bool {
        let mut keyed = [(0u16, 0u8); MAX_ORDER];
        let len = e - s;
        for i in 0..len {
            let v = p.order[s + i];
            keyed[i] = (self.key(v as usize, wmask), v);
        }
        let first = keyed[0].0;
        if keyed[1..len].iter().all(|k| k.0 == first) {
            return false;
        }
        keyed[..len].sort_unstable();
        let mut start = s;
        for i in 0..len {
            p.order[s + i] = keyed[i].1;
            if i + 1 == len || keyed[i + 1].0 != keyed[i].0 {
                p.end[start] = (s + i + 1) as u8;
                start = s + i + 1;
            }
        }
        true
    }

    /// Depth-first search below a node whose first `k` positions are fixed.
    /// Returns the depth to resume at when an automorphism makes the rest of
    /// this subtree redundant.
    fn descend(&mut self, p: &Partition, k: usize) -> Option<usize> {
        let n = self.n;
        if k == n {
            return self.leaf();
        }
        let s = k;
        let e = p.end[s] as usize;
        let mut explored = [0u8; MAX_ORDER];
        let mut n_explored = 0;
        let mut uf = [0u8; MAX_ORDER];
        let mut uf_autos = usize::MAX;

        for ci in s..e {
            let x = p.order[ci];
            if n_explored > 0 {
                if uf_autos != self.autos.len() {
                    self.stabiliser_orbits(k, &mut uf);
                    uf_autos = self.autos.len();
                }
                let rx = root(&uf, x);
                if explored[..n_explored].iter().any(|&y| root(&uf, y) == rx) {
                    continue;
                }
            }

            let mut block = 0u32;
            for j in 0..k {
                block = (block << 2) | self.state[x as usize][self.path[j] as usize] as u32;
            }
            let child_eq = if self.has_best && self.eq[k] {
                match block.cmp(&self.best_blocks[k]) {
                    Ordering::Greater => continue,
                    Ordering::Equal => true,
                    Ordering::Less => false,
                }
            } else {
                false
            };

            explored[n_explored] = x;
            n_explored += 1;
            self.path[k] = x;
            self.blocks[k] = block;
            self.eq[k + 1] = child_eq;

            let mut child = *p;
            child.individualize(k, x);
            if e - s > 1 {
                self.refine(&mut child);
            }
            if let Some(d) = self.descend(&child, k + 1) {
                if d < k {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self) -> Option<usize> {
        let n = self.n;
        if self.has_best && self.eq[n] {
            let mut g = [0u8; MAX_ORDER];
            for i in 0..n {
                g[self.best_path[i] as usize] = self.path[i];
            }
            let d = (0..n).find(|&i| self.best_path[i] != self.path[i]);
            if let Some(d) = d {
                self.autos.push(g);
                return Some(d);
            }
            return None;
        }
        self.has_best = true;
        self.best_path = self.path;
        self.best_blocks = self.blocks;
        self.eq = [true; MAX_ORDER + 1];
        None
    }

    /// Orbits of the subgroup generated by the known automorphisms that fix
    /// the first `k` path vertices.
    fn stabiliser_orbits(&self, k: usize, uf: &mut [u8; MAX_ORDER]) {
        for (i, x) in uf.iter_mut().enumerate() {
            *x = i as u8;
        }
        for g in &self.autos {
            if (0..k).any(|j| g[self.path[j] as usize] != self.path[j]) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (root(uf, v as u8), root(uf, g[v]));
                if a != b {
                    uf[a.max(b) as usize] = a.min(b);
                }
            }
        }
    }
}

#[inline]
fn root(uf: &[u8; MAX_ORDER], mut x: u8) -> u8 {
    while uf[x as usize] != x {
        x = uf[x as usize];
    }
    x
}

//! Player 2 strategy for the (1,3) Clique game on `K_n`, `n >= 4`.
//!
//! Vertices get labelled as soon as an edge at them is coloured. Labelled
//! vertices come in opposite pairs `(v, v')` whose edge is blue, and player 2
//! keeps the blue graph a mirror image of the red one across the pairing. The
//! last few unlabelled vertices are handled by a separate end game: two
//! vertices `x, y` for even `n`, and three or five special vertices for odd `n`.

use crate::board::{colex_index, ColoredBoard, EdgeId, EdgeState, MAX_ORDER};
use crate::error::{Error, Result};
use crate::game::Bias;

use super::{pad, Responder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Unlabeled,
    /// Member of the opposite pair with this index.
    Paired(u8),
    X,
    Y,
    A,
    B,
    C,
}

impl Label {
    fn code(self) -> u8 {
        match self {
            Label::Unlabeled => 0,
            Label::X => 1,
            Label::Y => 2,
            Label::A => 3,
            Label::B => 4,
            Label::C => 5,
            Label::Paired(i) => 8 + i,
        }
    }

    fn is_abc(self) -> bool {
        matches!(self, Label::A | Label::B | Label::C)
    }

    fn is_xy(self) -> bool {
        matches!(self, Label::X | Label::Y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Initial,
    /// Even `n` with at most two unlabelled vertices, labelled `x` and `y`.
    Finishing,
    /// Odd `n`: player 1 joined `a` to the pair `ell` while three vertices were unlabelled.
    Case1 { ell: u8 },
    /// Odd `n`: player 1 coloured `ab` while three vertices were unlabelled.
    Case2,
    /// Odd `n`: player 1 coloured `xy` while five vertices were unlabelled.
    Case3,
}

/// Labelling state of the strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyMemory {
    n: usize,
    labels: [Label; MAX_ORDER],
    pairs: Vec<(usize, usize)>,
    phase: Phase,
    /// Blue edges played only to fill the quota; labels ignore them.
    padding: u64,
}

impl StrategyMemory {
    pub fn new(n: usize) -> Result<Self> {
        if !(4..=MAX_ORDER).contains(&n) {
            return Err(Error::Precondition(format!("bob13 needs 4 <= n <= {MAX_ORDER}, got {n}")));
        }
        Ok(StrategyMemory { n, labels: [Label::Unlabeled; MAX_ORDER], pairs: Vec::new(), phase: Phase::Initial, padding: 0 })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Opposite pairs `(v_i, v_{i+k})` in creation order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        match self.labels[v] {
            Label::Paired(i) => {
                let (a, b) = self.pairs[i as usize];
                Some(if a == v { b } else { a })
            }
            _ => None,
        }
    }

    /// Whether `e` was coloured by player 2 as a quota filler.
    pub fn is_padding(&self, e: EdgeId) -> bool {
        self.padding >> e.0 & 1 == 1
    }

    pub fn unlabeled(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.labels[v] == Label::Unlabeled).collect()
    }

    fn vertex(&self, l: Label) -> Result<usize> {
        (0..self.n)
            .find(|&v| self.labels[v] == l)
            .ok_or_else(|| Error::Internal(format!("no vertex labelled {l:?}")))
    }

    fn abc(&self) -> Result<[usize; 3]> {
        Ok([self.vertex(Label::A)?, self.vertex(Label::B)?, self.vertex(Label::C)?])
    }

    fn pair(&mut self, v: usize, w: usize) {
        let i = self.pairs.len() as u8;
        self.pairs.push((v, w));
        self.labels[v] = Label::Paired(i);
        self.labels[w] = Label::Paired(i);
    }

    fn key(&self) -> Vec<u8> {
        let mut k: Vec<u8> = self.labels[..self.n].iter().map(|l| l.code()).collect();
        for &(a, b) in &self.pairs {
            k.extend([a as u8, b as u8]);
        }
        k.push(match self.phase {
            Phase::Initial => 0,
            Phase::Finishing => 1,
            Phase::Case1 { ell } => 16 + ell,
            Phase::Case2 => 2,
            Phase::Case3 => 3,
        });
        k.extend(self.padding.to_le_bytes());
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bob13 {
    pub mem: StrategyMemory,
}

impl Bob13 {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Bob13 { mem: StrategyMemory::new(n)? })
    }
}

impl Responder for Bob13 {
    fn name(&self) -> &'static str {
        "bob13"
    }

    fn bias(&self) -> Bias {
        Bias { p: 1, q: 3 }
    }

    fn respond(&mut self, board: &ColoredBoard, alice: EdgeId) -> Result<Vec<EdgeId>> {
        bob13_respond(&mut self.mem, board, alice)
    }

    fn memory_key(&self) -> Vec<u8> {
        self.mem.key()
    }

    fn audit(&self, board: &ColoredBoard, terminal: bool) -> std::result::Result<(), String> {
        check_labels(&self.mem, board)?;
        if terminal && self.mem.n % 2 == 0 {
            check_pair_cliques(&self.mem, board)?;
        }
        Ok(())
    }
}

fn edge(a: usize, b: usize) -> Result<EdgeId> {
    if a == b {
        return Err(Error::Internal(format!("loop at vertex {a}")));
    }
    colex_index(a.max(b), a.min(b))
}

fn edges(list: &[(usize, usize)]) -> Result<Vec<EdgeId>> {
    list.iter().map(|&(a, b)| edge(a, b)).collect()
}

fn uncoloured_among(board: &ColoredBoard, list: &[(usize, usize)]) -> Result<Vec<EdgeId>> {
    Ok(edges(list)?.into_iter().filter(|&e| board.state(e) == EdgeState::Uncolored).collect())
}

/// Player 2's reply to the red edge `alice`, which `board` already contains.
/// Updates `mem` and pads the reply to three edges (fewer at the end of the
/// game) with the lowest uncoloured edges, preferring edges between labelled
/// vertices.
pub fn bob13_respond(mem: &mut StrategyMemory, board: &ColoredBoard, alice: EdgeId) -> Result<Vec<EdgeId>> {
    if board.order() != mem.n {
        return Err(Error::Dimension(board.order(), mem.n));
    }
    if board.state(alice) != EdgeState::Red {
        return Err(Error::Internal(format!("edge {alice} is not red")));
    }
    let (p, q) = alice.endpoints();
    let prescribed = match mem.phase {
        Phase::Initial => initial(mem, p, q)?,
        Phase::Finishing => finishing(mem, p, q)?,
        Phase::Case1 { ell } => case1(mem, board, p, q, ell)?,
        Phase::Case2 => case2(mem, p, q)?,
        Phase::Case3 => case3(mem, board, p, q)?,
    };
    let labels = mem.labels;
    let out = pad(board, &prescribed, 3, |e| {
        let (a, b) = e.endpoints();
        labels[a] != Label::Unlabeled && labels[b] != Label::Unlabeled
    })?;
    for e in &prescribed {
        mem.padding &= !(1u64 << e.0);
    }
    for e in out.iter().filter(|e| !prescribed.contains(e)) {
        mem.padding |= 1u64 << e.0;
    }
    Ok(out)
}

/// Colours `p q'`, `p' q'` and `q p'` for a red edge between labelled vertices.
fn mirror(mem: &StrategyMemory, p: usize, q: usize) -> Result<Vec<EdgeId>> {
    let (Some(pp), Some(qq)) = (mem.partner(p), mem.partner(q)) else {
        return Err(Error::Internal(format!("edge {p}-{q} expected between paired vertices")));
    };
    if pp == q {
        return Err(Error::Internal(format!("pair edge {p}-{q} coloured red")));
    }
    edges(&[(p, qq), (pp, qq), (q, pp)])
}

fn initial(mem: &mut StrategyMemory, p: usize, q: usize) -> Result<Vec<EdgeId>> {
    let free = mem.unlabeled();
    let (pin, qin) = (free.contains(&p), free.contains(&q));
    let odd = mem.n % 2 == 1;
    let others = |free: &[usize], skip: &[usize]| -> Vec<usize> { free.iter().copied().filter(|v| !skip.contains(v)).collect() };

    let out = if odd && free.len() == 5 && pin && qin {
        let (x, y) = (p.min(q), p.max(q));
        let rest = others(&free, &[x, y]);
        mem.labels[x] = Label::X;
        mem.labels[y] = Label::Y;
        for (v, l) in rest.iter().zip([Label::A, Label::B, Label::C]) {
            mem.labels[*v] = l;
        }
        mem.phase = Phase::Case3;
        edges(&[(rest[0], rest[1]), (rest[0], rest[2]), (rest[1], rest[2])])?
    } else if odd && free.len() == 3 && (pin || qin) {
        if pin && qin {
            let (a, b) = (p.min(q), p.max(q));
            let c = others(&free, &[a, b])[0];
            mem.labels[a] = Label::A;
            mem.labels[b] = Label::B;
            mem.labels[c] = Label::C;
            mem.phase = Phase::Case2;
            edges(&[(a, c), (b, c)])?
        } else {
            let (a, l) = if pin { (p, q) } else { (q, p) };
            let Label::Paired(ell) = mem.labels[l] else {
                return Err(Error::Internal(format!("vertex {l} labelled but unpaired")));
            };
            let bc = others(&free, &[a]);
            mem.labels[a] = Label::A;
            mem.labels[bc[0]] = Label::B;
            mem.labels[bc[1]] = Label::C;
            mem.phase = Phase::Case1 { ell };
            edges(&[(a, bc[0]), (a, bc[1]), (bc[0], bc[1])])?
        }
    } else if pin && qin {
        let (v, w) = (p.min(q), p.max(q));
        let spare = others(&free, &[v, w]);
        if spare.len() < 2 {
            return Err(Error::Internal("too few unlabelled vertices for two new pairs".into()));
        }
        let (v2, w2) = (spare[0], spare[1]);
        mem.pair(v, v2);
        mem.pair(w, w2);
        edges(&[(v, v2), (v2, w2), (w, w2)])?
    } else if pin || qin {
        let (u, l) = if pin { (p, q) } else { (q, p) };
        let spare = others(&free, &[u]);
        let (Some(&w), Some(ll)) = (spare.first(), mem.partner(l)) else {
            return Err(Error::Internal(format!("cannot pair new vertex {u}")));
        };
        mem.pair(u, w);
        edges(&[(ll, w), (u, w)])?
    } else {
        mirror(mem, p, q)?
    };

    if !odd {
        let free = mem.unlabeled();
        if free.len() <= 2 {
            if let [x, y] = free[..] {
                mem.labels[x] = Label::X;
                mem.labels[y] = Label::Y;
            }
            mem.phase = Phase::Finishing;
        }
    }
    Ok(out)
}

fn finishing(mem: &StrategyMemory, p: usize, q: usize) -> Result<Vec<EdgeId>> {
    let (lp, lq) = (mem.labels[p], mem.labels[q]);
    if lp.is_xy() && lq.is_xy() {
        return Ok(Vec::new());
    }
    if lp.is_xy() || lq.is_xy() {
        let (z, v) = if lp.is_xy() { (p, q) } else { (q, p) };
        let vv = mem.partner(v).ok_or_else(|| Error::Internal(format!("vertex {v} unpaired")))?;
        let x = mem.vertex(Label::X)?;
        let y = mem.vertex(Label::Y)?;
        return if z == x { edges(&[(x, vv), (y, v), (y, vv)]) } else { edges(&[(x, v), (x, vv), (y, vv)]) };
    }
    mirror(mem, p, q)
}

/// Splits an edge into (special vertex, paired vertex), if it is one.
fn special_and_paired(mem: &StrategyMemory, p: usize, q: usize) -> Option<(usize, usize)> {
    match (mem.partner(p), mem.partner(q)) {
        (None, Some(_)) => Some((p, q)),
        (Some(_), None) => Some((q, p)),
        _ => None,
    }
}

fn case1(mem: &StrategyMemory, board: &ColoredBoard, p: usize, q: usize, ell: u8) -> Result<Vec<EdgeId>> {
    if mem.partner(p).is_some() && mem.partner(q).is_some() {
        return mirror(mem, p, q);
    }
    let Some((_, v)) = special_and_paired(mem, p, q).filter(|&(d, _)| mem.labels[d].is_abc()) else {
        return Err(Error::Internal(format!("unexpected edge {p}-{q} in case 1")));
    };
    if mem.labels[v] == Label::Paired(ell) {
        return Ok(Vec::new());
    }
    let vv = mem.partner(v).expect("paired");
    let [a, b, c] = mem.abc()?;
    let across = uncoloured_among(board, &[(a, vv), (b, vv), (c, vv)])?;
    if !across.is_empty() {
        return Ok(across);
    }
    uncoloured_among(board, &[(a, v), (b, v), (c, v)])
}

fn case2(mem: &StrategyMemory, p: usize, q: usize) -> Result<Vec<EdgeId>> {
    if mem.partner(p).is_some() && mem.partner(q).is_some() {
        return mirror(mem, p, q);
    }
    let Some((d, v)) = special_and_paired(mem, p, q) else {
        return Err(Error::Internal(format!("unexpected edge {p}-{q} in case 2")));
    };
    let vv = mem.partner(v).expect("paired");
    let [a, b, c] = mem.abc()?;
    match mem.labels[d] {
        Label::A => edges(&[(b, v), (b, vv), (c, vv)]),
        Label::B => edges(&[(a, v), (a, vv), (c, vv)]),
        Label::C => edges(&[(a, vv), (b, vv), (c, vv)]),
        l => Err(Error::Internal(format!("vertex {d} labelled {l:?} in case 2"))),
    }
}

fn case3(mem: &StrategyMemory, board: &ColoredBoard, p: usize, q: usize) -> Result<Vec<EdgeId>> {
    if mem.partner(p).is_some() && mem.partner(q).is_some() {
        return mirror(mem, p, q);
    }
    let [a, b, c] = mem.abc()?;
    let x = mem.vertex(Label::X)?;
    let y = mem.vertex(Label::Y)?;
    if let Some((d, v)) = special_and_paired(mem, p, q) {
        let vv = mem.partner(v).expect("paired");
        return if mem.labels[d].is_abc() {
            edges(&[(a, vv), (b, vv), (c, vv)])
        } else {
            edges(&[(x, v), (x, vv), (y, v), (y, vv)])
        };
    }
    let (lp, lq) = (mem.labels[p], mem.labels[q]);
    if lp.is_abc() && lq.is_xy() || lp.is_xy() && lq.is_abc() {
        let z = if lp.is_xy() { p } else { q };
        let other = if z == x { y } else { x };
        let far = uncoloured_among(board, &[(a, other), (b, other), (c, other)])?;
        if !far.is_empty() {
            return Ok(far);
        }
        return uncoloured_among(board, &[(a, z), (b, z), (c, z)]);
    }
    Err(Error::Internal(format!("unexpected edge {p}-{q} in case 3")))
}

/// Labelled vertices are exactly those with a coloured edge other than quota
/// fillers (plus `x`, `y` for even `n`), and every pair edge is blue.
fn check_labels(mem: &StrategyMemory, board: &ColoredBoard) -> std::result::Result<(), String> {
    for v in 0..mem.n {
        let touched = (0..mem.n).filter(|&w| w != v).any(|w| {
            let e = edge(v, w).expect("distinct vertices");
            board.state(e).is_colored() && !mem.is_padding(e)
        });
        let labelled = mem.labels[v] != Label::Unlabeled;
        let exempt = mem.n % 2 == 0 && mem.labels[v].is_xy();
        if touched != labelled && !exempt {
            return Err(format!("vertex {v}: coloured edges {touched}, labelled {labelled}"));
        }
    }
    for &(a, b) in &mem.pairs {
        if board.state_between(a, b) != Ok(EdgeState::Blue) {
            return Err(format!("pair edge {a}-{b} is not blue"));
        }
    }
    Ok(())
}

/// For every red clique `Q` of paired vertices, at most `|Q| - 1` red edges
/// join `Q` to the partners of its vertices.
fn check_pair_cliques(mem: &StrategyMemory, board: &ColoredBoard) -> std::result::Result<(), String> {
    let paired: Vec<usize> = (0..mem.n).filter(|&v| mem.partner(v).is_some()).collect();
    let red = board.adjacency(EdgeState::Red);
    for set in 1u32..(1 << paired.len()) {
        if set.count_ones() < 2 {
            continue;
        }
        let q: Vec<usize> = paired.iter().enumerate().filter(|(i, _)| set >> i & 1 == 1).map(|(_, &v)| v).collect();
        let is_clique = q.iter().all(|&u| q.iter().all(|&w| u == w || red[u] >> w & 1 == 1));
        if !is_clique {
            continue;
        }
        let cross = q
            .iter()
            .map(|&u| q.iter().filter(|&&w| red[u] >> mem.partner(w).expect("paired") & 1 == 1).count())
            .sum::<usize>();
        if cross >= q.len() {
            return Err(format!("red clique {q:?} has {cross} red edges to its partners"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{complete_board, Colour};

    fn play(board: &mut ColoredBoard, mem: &mut StrategyMemory, a: (usize, usize)) -> Vec<(usize, usize)> {
        let e = edge(a.0, a.1).unwrap();
        *board = board.apply_move(e, Colour::Red).unwrap();
        let r = bob13_respond(mem, board, e).unwrap();
        for &f in &r {
            *board = board.apply_move(f, Colour::Blue).unwrap();
        }
        r.into_iter().map(|e| e.endpoints()).collect()
    }

    #[test]
    fn opening_pairs_four_vertices() {
        let mut b = complete_board(8).unwrap();
        let mut m = StrategyMemory::new(8).unwrap();
        // Alice 0-1: partners 2 and 3; Bob colours 0-2, 2-3, 1-3.
        assert_eq!(play(&mut b, &mut m, (0, 1)), vec![(2, 0), (3, 2), (3, 1)]);
        assert_eq!(m.partner(0), Some(2));
        assert_eq!(m.partner(1), Some(3));
        assert_eq!(m.unlabeled(), vec![4, 5, 6, 7]);
        // Alice 0-4: new pair (4, 5); Bob colours 2-5 and 4-5 plus one pad.
        let r = play(&mut b, &mut m, (0, 4));
        assert_eq!(&r[..2], &[(5, 2), (5, 4)]);
        assert_eq!(m.partner(4), Some(5));
        // Two vertices remain: they become x and y.
        assert_eq!(m.phase(), Phase::Finishing);
        assert_eq!((m.label(6), m.label(7)), (Label::X, Label::Y));
    }

    #[test]
    fn labelled_edge_is_mirrored() {
        let mut b = complete_board(4).unwrap();
        let mut m = StrategyMemory::new(4).unwrap();
        play(&mut b, &mut m, (0, 1));
        // 0~2, 1~3. Alice 0-3 -> Bob 3-2 (taken), 1-2, 0-1 (taken); nothing left to pad.
        let r = play(&mut b, &mut m, (0, 3));
        assert_eq!(r, vec![(2, 1)]);
        assert!(b.is_terminal());
    }

    #[test]
    fn finishing_replies() {
        let mut b = complete_board(6).unwrap();
        let mut m = StrategyMemory::new(6).unwrap();
        play(&mut b, &mut m, (0, 1));
        assert_eq!((m.label(4), m.label(5)), (Label::X, Label::Y));
        // x v_i -> x v_i', y v_i, y v_i'.
        assert_eq!(play(&mut b, &mut m, (4, 0)), vec![(4, 2), (5, 0), (5, 2)]);
        // y v -> x v, x v', y v'.
        assert_eq!(play(&mut b, &mut m, (5, 1)), vec![(4, 1), (4, 3), (5, 3)]);
        // xy -> nothing prescribed; the last two edges are padding.
        let r = play(&mut b, &mut m, (5, 4));
        assert_eq!(r.len(), 2);
        assert!(b.is_terminal());
    }

    #[test]
    fn odd_case_three() {
        let mut b = complete_board(5).unwrap();
        let mut m = StrategyMemory::new(5).unwrap();
        assert_eq!(play(&mut b, &mut m, (0, 1)), vec![(3, 2), (4, 2), (4, 3)]);
        assert_eq!(m.phase(), Phase::Case3);
        // a x -> a y, b y, c y.
        assert_eq!(play(&mut b, &mut m, (2, 0)), vec![(2, 1), (3, 1), (4, 1)]);
        // b x -> c x.
        let r = play(&mut b, &mut m, (3, 0));
        assert_eq!(r, vec![(4, 0)]);
    }

    #[test]
    fn odd_cases_one_and_two() {
        let mut b = complete_board(7).unwrap();
        let mut m = StrategyMemory::new(7).unwrap();
        play(&mut b, &mut m, (0, 1));
        assert_eq!(m.unlabeled(), vec![4, 5, 6]);
        let mut b1 = b;
        let mut m1 = m.clone();
        assert_eq!(play(&mut b1, &mut m1, (4, 0)), vec![(5, 4), (6, 4), (6, 5)]);
        assert_eq!(m1.phase(), Phase::Case1 { ell: 0 });
        // d v_i for i outside pair ell: abc x v_i'.
        assert_eq!(play(&mut b1, &mut m1, (5, 1)), vec![(4, 3), (5, 3), (6, 3)]);

        assert_eq!(play(&mut b, &mut m, (5, 4)), vec![(6, 4), (6, 5), (2, 1)]);
        assert_eq!(m.phase(), Phase::Case2);
        // b v -> a v, a v', c v'.
        assert_eq!(play(&mut b, &mut m, (5, 1)), vec![(4, 1), (4, 3), (6, 3)]);
    }
}

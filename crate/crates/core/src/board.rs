//! Dense edge-state boards indexed in colexicographic order.
//!
//! Every vertex pair `{u, v}` with `u > v` owns the edge slot
//! `C(u, 2) + v`. A board stores one 2-bit code per slot:
//!
//! | state       | code |
//! |-------------|------|
//! | `Absent`    | `00` |
//! | `Uncolored` | `01` |
//! | `Blue`      | `10` |
//! | `Red`       | `11` |
//!
//! Slot `i` occupies bits `2i` (low) and `2i + 1` (high) of a little-endian
//! bit stream, which is also the byte layout produced by [`ColoredBoard::encode`].

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order. 55 edge slots fit in a `u128` at two bits each.
pub const MAX_ORDER: usize = 11;
/// Number of edge slots of a board of order [`MAX_ORDER`].
pub const MAX_EDGES: usize = MAX_ORDER * (MAX_ORDER - 1) / 2;

/// `C(n, 2)`.
#[inline]
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

const fn endpoint_table() -> [(u8, u8); MAX_EDGES] {
    let mut table = [(0u8, 0u8); MAX_EDGES];
    let mut u = 1;
    let mut e = 0;
    while u < MAX_ORDER {
        let mut v = 0;
        while v < u {
            table[e] = (u as u8, v as u8);
            e += 1;
            v += 1;
        }
        u += 1;
    }
    table
}

static ENDPOINTS: [(u8, u8); MAX_EDGES] = endpoint_table();

/// Colex position of an unordered vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    /// Endpoints as `(larger, smaller)`.
    #[inline]
    pub fn endpoints(self) -> (usize, usize) {
        edge_endpoints(self)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.endpoints();
        write!(f, "{v}-{u}")
    }
}

/// Colex index of the pair `{u, v}`: `C(max, 2) + min`.
pub fn colex_index(u: usize, v: usize) -> Result<EdgeId> {
    if u == v {
        return Err(Error::InvalidEdge(u, v));
    }
    Ok(EdgeId(edge_slot(u, v)))
}

#[inline]
pub(crate) fn edge_slot(u: usize, v: usize) -> usize {
    debug_assert_ne!(u, v);
    let (hi, lo) = if u > v { (u, v) } else { (v, u) };
    pairs(hi) + lo
}

/// Inverse of [`colex_index`], returning `(max, min)`.
pub fn edge_endpoints(e: EdgeId) -> (usize, usize) {
    if e.0 < MAX_EDGES {
        let (u, v) = ENDPOINTS[e.0];
        return (u as usize, v as usize);
    }
    // Beyond the table: largest u with C(u, 2) <= e.
    let mut u = MAX_ORDER;
    while pairs(u + 1) <= e.0 {
        u += 1;
    }
    (u, e.0 - pairs(u))
}

#[inline]
pub(crate) fn slot_endpoints(e: usize) -> (usize, usize) {
    let (u, v) = ENDPOINTS[e];
    (u as usize, v as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeState {
    Absent,
    Uncolored,
    Blue,
    Red,
}

impl EdgeState {
    /// The 2-bit wire code.
    #[inline]
    pub const fn code(self) -> u8 {
        match self {
            EdgeState::Absent => 0b00,
            EdgeState::Uncolored => 0b01,
            EdgeState::Blue => 0b10,
            EdgeState::Red => 0b11,
        }
    }

    #[inline]
    pub const fn from_code(code: u8) -> EdgeState {
        match code & 0b11 {
            0b00 => EdgeState::Absent,
            0b01 => EdgeState::Uncolored,
            0b10 => EdgeState::Blue,
            _ => EdgeState::Red,
        }
    }

    pub fn is_colored(self) -> bool {
        matches!(self, EdgeState::Red | EdgeState::Blue)
    }
}

/// Red belongs to player 1, blue to player 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn state(self) -> EdgeState {
        match self {
            Colour::Red => EdgeState::Red,
            Colour::Blue => EdgeState::Blue,
        }
    }

    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }
}

/// An edge-state vector over all vertex pairs of an `n`-vertex graph.
///
/// Boards are small `Copy` values; every mutation returns a new board.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredBoard {
    n: u8,
    bits: u128,
}

impl ColoredBoard {
    /// A board of order `n` with every slot `Absent`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateBoard("order must be at least 1".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity(format!("order {n} exceeds the supported maximum {MAX_ORDER}")));
        }
        Ok(ColoredBoard { n: n as u8, bits: 0 })
    }

    /// Builds an uncoloured base graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = Self::empty(n)?;
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v));
            }
            b = b.with_slot(edge_slot(u, v), EdgeState::Uncolored);
        }
        Ok(b)
    }

    /// Reconstructs a board from its packed code word.
    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        let b = Self::empty(n)?;
        let used = 2 * b.edge_slots();
        if used < 128 && bits >> used != 0 {
            return Err(Error::Format(format!("bits set beyond the {} slots of order {n}", b.edge_slots())));
        }
        Ok(ColoredBoard { n: n as u8, bits })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u128) -> Self {
        ColoredBoard { n: n as u8, bits }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Number of vertex pairs, `C(n, 2)`, present or not.
    #[inline]
    pub fn edge_slots(&self) -> usize {
        pairs(self.n as usize)
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn state(&self, e: EdgeId) -> EdgeState {
        self.slot(e.0)
    }

    #[inline]
    pub(crate) fn slot(&self, e: usize) -> EdgeState {
        EdgeState::from_code((self.bits >> (2 * e)) as u8)
    }

    pub fn state_between(&self, u: usize, v: usize) -> Result<EdgeState> {
        if u == v || u >= self.order() || v >= self.order() {
            return Err(Error::InvalidEdge(u, v));
        }
        Ok(self.slot(edge_slot(u, v)))
    }

    #[inline]
    pub(crate) fn with_slot(self, e: usize, s: EdgeState) -> Self {
        let shift = 2 * e;
        let bits = (self.bits & !(0b11u128 << shift)) | ((s.code() as u128) << shift);
        ColoredBoard { n: self.n, bits }
    }

    pub fn states(&self) -> impl Iterator<Item = EdgeState> + '_ {
        (0..self.edge_slots()).map(move |e| self.slot(e))
    }

    pub fn edges_in_state(&self, s: EdgeState) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_slots()).filter(move |&e| self.slot(e) == s).map(EdgeId)
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges_in_state(EdgeState::Uncolored)
    }

    pub fn count(&self, s: EdgeState) -> usize {
        self.states().filter(|&x| x == s).count()
    }

    pub fn present_count(&self) -> usize {
        self.edge_slots() - self.count(EdgeState::Absent)
    }

    pub fn uncolored_count(&self) -> usize {
        // Uncolored is the only code with the low bit set and the high bit clear.
        let lows = self.bits & LOW_MASK;
        let highs = (self.bits >> 1) & LOW_MASK;
        (lows & !highs).count_ones() as usize
    }

    pub fn colored_count(&self) -> usize {
        ((self.bits >> 1) & LOW_MASK).count_ones() as usize
    }

    pub fn is_terminal(&self) -> bool {
        self.uncolored_count() == 0
    }

    /// Colours one uncoloured edge.
    pub fn apply_move(&self, e: EdgeId, c: Colour) -> Result<Self> {
        if e.0 >= self.edge_slots() {
            return Err(Error::IllegalMove { edge: e, reason: "edge outside the board" });
        }
        match self.slot(e.0) {
            EdgeState::Uncolored => Ok(self.with_slot(e.0, c.state())),
            EdgeState::Absent => Err(Error::IllegalMove { edge: e, reason: "edge is not in the base graph" }),
            _ => Err(Error::IllegalMove { edge: e, reason: "edge is already coloured" }),
        }
    }

    /// The uncoloured base graph underlying this board.
    pub fn base(&self) -> Self {
        let present = (self.bits | (self.bits >> 1)) & LOW_MASK;
        ColoredBoard { n: self.n, bits: present }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.order());
        let mut out = ColoredBoard { n: self.n, bits: 0 };
        for e in 0..self.edge_slots() {
            let code = (self.bits >> (2 * e)) & 0b11;
            if code != 0 {
                let (u, v) = slot_endpoints(e);
                out.bits |= code << (2 * edge_slot(perm[u], perm[v]));
            }
        }
        out
    }

    /// Neighbourhood bitmask of every vertex through edges in state `s`.
    pub fn adjacency(&self, s: EdgeState) -> [u16; MAX_ORDER] {
        let mut adj = [0u16; MAX_ORDER];
        for e in 0..self.edge_slots() {
            if self.slot(e) == s {
                let (u, v) = slot_endpoints(e);
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }

    /// Packed little-endian byte string, `ceil(2 * C(n, 2) / 8)` bytes.
    pub fn encode(&self) -> Vec<u8> {
        let len = encoded_len(self.order());
        self.bits.to_le_bytes()[..len].to_vec()
    }

    pub fn decode(bytes: &[u8], n: usize) -> Result<Self> {
        let expect = encoded_len(n);
        if bytes.len() != expect {
            return Err(Error::Format(format!(
                "order {n} needs {expect} bytes, got {}",
                bytes.len()
            )));
        }
        let mut buf = [0u8; 16];
        buf[..expect].copy_from_slice(bytes);
        Self::from_bits(n, u128::from_le_bytes(buf))
    }

    /// `n:` followed by the lowercase hex of [`encode`](Self::encode).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}:", self.n);
        for b in self.encode() {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, hex) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("missing ':' in board text {text:?}")))?;
        let n: usize = n.parse().map_err(|_| Error::Format(format!("bad order {n:?}")))?;
        if hex.len() % 2 != 0 {
            return Err(Error::Format("odd number of hex digits".into()));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Format(e.to_string()))?;
        Self::decode(&bytes, n)
    }
}

const LOW_MASK: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

pub fn encoded_len(n: usize) -> usize {
    (2 * pairs(n)).div_ceil(8)
}

impl fmt::Debug for ColoredBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredBoard({})", self.to_text())
    }
}

impl fmt::Display for ColoredBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `K_n` with every edge uncoloured.
pub fn complete_board(n: usize) -> Result<ColoredBoard> {
    let b = ColoredBoard::empty(n)?;
    let slots = b.edge_slots();
    let bits = if slots == 0 { 0 } else { LOW_MASK >> (128 - 2 * slots) };
    Ok(ColoredBoard::from_bits_unchecked(n, bits))
}

/// The Colex graph `C(m)`: the first `m` pairs in colex order on the
/// smallest vertex set that holds them.
pub fn colex_board(m: usize) -> Result<ColoredBoard> {
    if m == 0 {
        return Err(Error::DegenerateBoard("the Colex graph C(0) has no edges".into()));
    }
    let mut n = 2;
    while pairs(n) < m {
        n += 1;
    }
    ColoredBoard::empty(n)?;
    Ok(ColoredBoard::from_bits_unchecked(n, LOW_MASK >> (128 - 2 * m)))
}

/// Reads a base graph: first line `n`, then one `u v` pair per line.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<ColoredBoard> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines.next().ok_or_else(|| Error::Format("empty graph file".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::Format(format!("expected vertex count, got {first:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Format(format!("expected 'u v', got {line:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Format(format!("bad vertex {s:?}")));
        edges.push((parse(u)?, parse(v)?));
    }
    ColoredBoard::from_edges(n, &edges)
}

pub fn read_edge_list(path: &Path) -> Result<ColoredBoard> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_index_matches_edge_table() {
        assert_eq!(colex_index(1, 0).unwrap(), EdgeId(0));
        assert_eq!(colex_index(2, 0).unwrap(), EdgeId(1));
        assert_eq!(colex_index(2, 1).unwrap(), EdgeId(2));
        assert_eq!(colex_index(3, 0).unwrap(), EdgeId(3));
        assert_eq!(colex_index(0, 1).unwrap(), EdgeId(0));
        assert_eq!(colex_index(4, 4), Err(Error::InvalidEdge(4, 4)));
    }

    #[test]
    fn endpoints_follow_colex_enumeration() {
        // Enumerate pairs (u, v), u > v, with u as the major key.
        let mut listed = Vec::new();
        for u in 1..13 {
            for v in 0..u {
                listed.push((u, v));
            }
        }
        assert_eq!(listed[5], (3, 2));
        assert_eq!(listed[6], (4, 0));
        for (i, &p) in listed.iter().enumerate() {
            assert_eq!(edge_endpoints(EdgeId(i)), p);
            assert_eq!(colex_index(p.0, p.1).unwrap(), EdgeId(i));
        }
        assert_eq!(edge_endpoints(EdgeId(0)), (1, 0));
    }

    #[test]
    fn complete_boards_have_all_pairs() {
        for (n, m) in [(1, 0), (2, 1), (5, 10), (8, 28), (11, 55)] {
            let b = complete_board(n).unwrap();
            assert_eq!(b.present_count(), m);
            assert_eq!(b.uncolored_count(), m);
        }
        assert!(complete_board(0).is_err());
        assert!(matches!(complete_board(12), Err(Error::Capacity(_))));
    }

    #[test]
    fn colex_boards() {
        let c9 = colex_board(9).unwrap();
        assert_eq!(c9.order(), 5);
        assert_eq!(c9.present_count(), 9);
        // Two K4s sharing a triangle: vertices 0..3 and {0,1,2,4}.
        assert_eq!(c9.state_between(4, 3).unwrap(), EdgeState::Absent);
        let c12 = colex_board(12).unwrap();
        assert_eq!(c12.order(), 6);
        let deg5 = (0..5).filter(|&v| c12.state_between(5, v).unwrap() == EdgeState::Uncolored).count();
        assert_eq!(deg5, 2);
        for k in 2..=8 {
            assert_eq!(colex_board(pairs(k)).unwrap(), complete_board(k).unwrap());
        }
        assert!(matches!(colex_board(0), Err(Error::DegenerateBoard(_))));
    }

    #[test]
    fn moves_are_value_semantics() {
        let k3 = complete_board(3).unwrap();
        let b = k3.apply_move(EdgeId(0), Colour::Red).unwrap();
        assert_eq!(k3.count(EdgeState::Red), 0);
        assert_eq!(b.count(EdgeState::Red), 1);
        assert!(matches!(b.apply_move(EdgeId(0), Colour::Blue), Err(Error::IllegalMove { .. })));
        let full = b
            .apply_move(EdgeId(1), Colour::Blue)
            .unwrap()
            .apply_move(EdgeId(2), Colour::Red)
            .unwrap();
        assert_eq!(full.count(EdgeState::Red), 2);
        assert_eq!(full.count(EdgeState::Blue), 1);
        assert!(full.is_terminal());
        let c5 = colex_board(5).unwrap();
        assert!(matches!(c5.apply_move(EdgeId(5), Colour::Red), Err(Error::IllegalMove { .. })));
    }

    #[test]
    fn wire_codes() {
        let k2 = complete_board(2).unwrap();
        assert_eq!(k2.encode(), vec![0b01]);
        assert_eq!(k2.apply_move(EdgeId(0), Colour::Red).unwrap().encode(), vec![0b11]);
        assert_eq!(k2.apply_move(EdgeId(0), Colour::Blue).unwrap().encode(), vec![0b10]);
        assert_eq!(k2.to_text(), "2:01");
        let k4 = complete_board(4).unwrap();
        assert_eq!(k4.encode().len(), 2);
        assert_eq!(k4.to_text(), "4:5505");
        assert_eq!(ColoredBoard::from_text("4:5505").unwrap(), k4);
        assert!(matches!(ColoredBoard::decode(&[0x55], 4), Err(Error::Format(_))));
        assert!(ColoredBoard::decode(&[0x55, 0x15], 4).is_err());
    }

    #[test]
    fn edge_list_format() {
        let b = parse_edge_list("# path\n4\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(b.order(), 4);
        assert_eq!(b.present_count(), 3);
        assert!(parse_edge_list("3\n0 0\n").is_err());
        assert!(parse_edge_list("3\n0 5\n").is_err());
        assert!(parse_edge_list("3\n0 1 2\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn base_strips_colours() {
        let b = complete_board(4).unwrap().apply_move(EdgeId(3), Colour::Blue).unwrap();
        assert_eq!(b.base(), complete_board(4).unwrap());
    }
}

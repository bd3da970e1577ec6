//! Forward generation of all non-isomorphic positions, one layer per ply.

use std::io::{Read, Write};

use crate::board::{encoded_len, ColoredBoard, Colour, EdgeState};
use crate::canonical::{canonical_form, canonical_labelling, group_order, orbits_from_generators, CanonicalForm};
use crate::error::{Error, Result};
use crate::game::{GameSpec, Player};
use crate::par::{self, Execution};

/// Value slot content before the solver has visited an entry.
pub const UNSET: i32 = i32::MIN;

/// All positions reachable after `ply` moves, one entry per isomorphism class.
///
/// Entries are sorted by canonical code. For every layer except the last,
/// `children_of(i)` lists the indices of entry `i`'s successors in the next layer.
#[derive(Debug, Clone)]
pub struct Layer {
    pub ply: usize,
    n: usize,
    codes: Vec<u128>,
    pub values: Vec<i32>,
    child_offsets: Vec<u32>,
    children: Vec<u32>,
}

impl Layer {
    fn new(ply: usize, n: usize, codes: Vec<u128>) -> Self {
        let values = vec![UNSET; codes.len()];
        Layer { ply, n, codes, values, child_offsets: Vec::new(), children: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn form(&self, i: usize) -> CanonicalForm {
        CanonicalForm::from_code(self.n, self.codes[i])
    }

    /// Canonical representative of entry `i`.
    pub fn board(&self, i: usize) -> ColoredBoard {
        self.form(i).board()
    }

    pub fn forms(&self) -> impl Iterator<Item = CanonicalForm> + '_ {
        self.codes.iter().map(move |&c| CanonicalForm::from_code(self.n, c))
    }

    pub fn find(&self, form: &CanonicalForm) -> Option<usize> {
        self.codes.binary_search(&form.code()).ok()
    }

    /// Successor indices into the next layer; empty for the final layer.
    pub fn children_of(&self, i: usize) -> &[u32] {
        if self.child_offsets.is_empty() {
            return &[];
        }
        let (s, e) = (self.child_offsets[i] as usize, self.child_offsets[i + 1] as usize);
        &self.children[s..e]
    }

    pub fn has_children(&self) -> bool {
        !self.child_offsets.is_empty()
    }

    /// Inserts a board if no isomorphic entry exists; returns whether it grew.
    pub fn insert(&mut self, b: &ColoredBoard) -> Result<bool> {
        let code = canonical_form(b)?.code();
        match self.codes.binary_search(&code) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.codes.insert(pos, code);
                self.values.insert(pos, UNSET);
                self.child_offsets.clear();
                self.children.clear();
                Ok(true)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenerateOptions {
    pub exec: Execution,
    /// Abort with a capacity error once the layers hold more entries in total.
    pub max_entries: usize,
    /// Expand only the smallest uncoloured edge of each edge orbit. Children
    /// are canonically deduplicated either way.
    pub orbit_filter: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { exec: Execution::Parallel, max_entries: usize::MAX, orbit_filter: true }
    }
}

/// One representative per isomorphism class of boards obtained by colouring
/// a single uncoloured edge in the mover's colour, sorted by canonical form.
pub fn successors(b: &ColoredBoard, mover: Player) -> Result<Vec<(CanonicalForm, ColoredBoard)>> {
    let mut out: Vec<(CanonicalForm, ColoredBoard)> = child_codes(b, mover.colour(), true)?
        .into_iter()
        .map(|code| {
            let f = CanonicalForm::from_code(b.order(), code);
            (f, f.board())
        })
        .collect();
    out.sort_by_key(|(f, _)| *f);
    Ok(out)
}

fn child_codes(b: &ColoredBoard, colour: Colour, orbit_filter: bool) -> Result<Vec<u128>> {
    let mut codes = Vec::new();
    if orbit_filter {
        let lab = canonical_labelling(b)?;
        let orbits = orbits_from_generators(b, &lab.automorphisms);
        for class in &orbits.classes {
            let e = class[0];
            if b.state(e) == EdgeState::Uncolored {
                codes.push(canonical_form(&b.apply_move(e, colour)?)?.code());
            }
        }
    } else {
        for e in b.uncolored_edges() {
            codes.push(canonical_form(&b.apply_move(e, colour)?)?.code());
        }
    }
    codes.sort_unstable();
    codes.dedup();
    Ok(codes)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Lower bound on the number of positions the layers will hold.
///
/// At ply `t` every choice of `t` free edges, `r_t` of them red, is reachable,
/// and an isomorphism class contains at most `|Aut|` of these labelled boards,
/// where `Aut` is the automorphism group of the initial board.
pub fn min_positions(spec: &GameSpec) -> Result<f64> {
    let start = spec.initial_board();
    let n = start.order();
    let lab = canonical_labelling(&start)?;
    let aut = group_order(n, &lab.automorphisms, 50_000)
        .map(|g| g as f64)
        .unwrap_or_else(|| (1..=n).map(|k| k as f64).product());
    let free = spec.plies();
    let mut total = 0.0;
    let mut reds = 0;
    for t in 0..=free {
        total += (binomial(free, t) * binomial(t, reds) / aut).max(1.0);
        if t < free && spec.mover_at(t) == Player::P1 {
            reds += 1;
        }
    }
    Ok(total)
}

pub fn build_layers(spec: &GameSpec) -> Result<Vec<Layer>> {
    build_layers_with(spec, &GenerateOptions::default())
}

pub fn build_layers_with(spec: &GameSpec, opts: &GenerateOptions) -> Result<Vec<Layer>> {
    let n = spec.order();
    if opts.max_entries < usize::MAX {
        let bound = min_positions(spec)?;
        if bound > opts.max_entries as f64 {
            return Err(Error::Capacity(format!(
                "at least {bound:.3e} positions, limit is {}",
                opts.max_entries
            )));
        }
    }
    let root = canonical_form(&spec.initial_board())?;
    let plies = spec.plies();
    let mut layers = vec![Layer::new(0, n, vec![root.code()])];
    let mut total = 1usize;

    for t in 0..plies {
        let colour = spec.mover_at(t).colour();
        let current = layers.last_mut().expect("non-empty");
        let expanded: Vec<Result<Vec<u128>>> = par::map(opts.exec, &current.codes, |&code| {
            child_codes(&ColoredBoard::from_bits_unchecked(n, code), colour, opts.orbit_filter)
        });
        let expanded = expanded.into_iter().collect::<Result<Vec<_>>>()?;

        let mut next: Vec<u128> = expanded.iter().flatten().copied().collect();
        par::sort_dedup(opts.exec, &mut next);
        total += next.len();
        if total > opts.max_entries {
            return Err(Error::Capacity(format!(
                "more than {} positions after {} plies",
                opts.max_entries,
                t + 1
            )));
        }

        let mut offsets = Vec::with_capacity(expanded.len() + 1);
        offsets.push(0u32);
        let mut acc = 0usize;
        for kids in &expanded {
            acc += kids.len();
            offsets.push(u32::try_from(acc).map_err(|_| Error::Capacity("child table overflow".into()))?);
        }
        let flat: Vec<u128> = expanded.into_iter().flatten().collect();
        current.children = par::map(opts.exec, &flat, |c| {
            next.binary_search(c).expect("child present in next layer") as u32
        });
        current.child_offsets = offsets;
        layers.push(Layer::new(t + 1, n, next));
    }
    Ok(layers)
}

/// Writes a layer as a 12-byte header (`n`, `ply`, `count` as little-endian
/// `u32`) followed by one fixed-width `encode()` record per entry, sorted by
/// the record bytes.
pub fn write_layer_dump(layer: &Layer, out: &mut impl Write) -> Result<()> {
    let mut records: Vec<Vec<u8>> = (0..layer.len()).map(|i| layer.board(i).encode()).collect();
    records.sort_unstable();
    out.write_all(&(layer.n as u32).to_le_bytes())?;
    out.write_all(&(layer.ply as u32).to_le_bytes())?;
    out.write_all(&(records.len() as u32).to_le_bytes())?;
    for r in &records {
        out.write_all(r)?;
    }
    Ok(())
}

/// Reads a dump written by [`write_layer_dump`]: `(n, ply, boards)`.
pub fn read_layer_dump(input: &mut impl Read) -> Result<(usize, usize, Vec<ColoredBoard>)> {
    let mut header = [0u8; 12];
    input.read_exact(&mut header).map_err(|e| Error::Format(format!("layer header: {e}")))?;
    let word = |i: usize| u32::from_le_bytes(header[4 * i..4 * i + 4].try_into().expect("4 bytes")) as usize;
    let (n, ply, count) = (word(0), word(1), word(2));
    let width = encoded_len(n);
    let mut boards = Vec::with_capacity(count);
    let mut buf = vec![0u8; width];
    for _ in 0..count {
        input.read_exact(&mut buf).map_err(|e| Error::Format(format!("layer record: {e}")))?;
        boards.push(ColoredBoard::decode(&buf, n)?);
    }
    Ok((n, ply, boards))
}

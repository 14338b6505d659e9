//! Canonical codes: byte strings identifying a connected colored graph up to
//! vertex relabeling, optionally also up to a permutation of the colors.
//!
//! A code is produced by a breadth-first relabeling started at some vertex,
//! visiting colors in a fixed order, and emitting the new label of every
//! neighbor as it is reached. The canonical code is the lexicographic minimum
//! over all start vertices (and, for [`CodeFlavor::UpToColorPermutation`],
//! over all color orders). Because the relabeling is a bijection fixed by the
//! start vertex and color order, the emitted stream determines the graph, so
//! two connected graphs share a code exactly when they are isomorphic.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::graph::ColoredGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeFlavor {
    ColorPreserving,
    UpToColorPermutation,
}

/// Canonical code of a connected graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub flavor: CodeFlavor,
    pub bytes: Vec<u8>,
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({:?}, {})", self.flavor, self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    pub fn from_hex(flavor: CodeFlavor, s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| GemError::Parse { line: 0, msg: format!("bad hex code: {e}") })?;
        Ok(CanonicalCode { flavor, bytes })
    }

    /// Rebuilds the canonically labeled graph the code describes.
    pub fn decode(&self) -> Result<ColoredGraph> {
        let bad = |msg: &str| GemError::InvalidGraph(format!("malformed canonical code: {msg}"));
        if self.bytes.len() < 3 {
            return Err(bad("too short"));
        }
        let n_colors = self.bytes[0] as usize;
        let order = u16::from_be_bytes([self.bytes[1], self.bytes[2]]) as usize;
        let body = &self.bytes[3..];
        if n_colors == 0 || body.len() != 2 * n_colors * order {
            return Err(bad("length mismatch"));
        }
        let mut matchings = vec![vec![0usize; order]; n_colors];
        for v in 0..order {
            for (c, m) in matchings.iter_mut().enumerate() {
                let k = 2 * (v * n_colors + c);
                m[v] = u16::from_be_bytes([body[k], body[k + 1]]) as usize;
            }
        }
        ColoredGraph::from_matchings(&matchings)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Breadth-first code of the component containing `start`, visiting colors
/// in the order `color_order` (position k holds the original color used as
/// new color k). If `bound` is given, the walk stops as soon as the stream
/// is known to compare greater than it; the returned `Ordering` reports the
/// comparison with the bound (`Less` when there is none).
pub(crate) struct BfsCoder<'a> {
    g: &'a ColoredGraph,
    label: Vec<u32>,
    order: Vec<u32>,
}

impl<'a> BfsCoder<'a> {
    pub(crate) fn new(g: &'a ColoredGraph) -> Self {
        BfsCoder { g, label: vec![u32::MAX; g.order()], order: Vec::with_capacity(g.order()) }
    }

    /// Writes the code of the component of `start` into `out` (cleared
    /// first). Returns the comparison with `bound`, aborting early on
    /// `Greater`.
    pub(crate) fn code(
        &mut self,
        start: usize,
        color_order: &[usize],
        bound: Option<&[u32]>,
        out: &mut Vec<u32>,
    ) -> Ordering {
        for &v in &self.order {
            self.label[v as usize] = u32::MAX;
        }
        self.order.clear();
        out.clear();
        self.label[start] = 0;
        self.order.push(start as u32);
        let mut cmp = if bound.is_some() { Ordering::Equal } else { Ordering::Less };
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            for &c in color_order {
                let w = self.g.neighbor(v, c);
                if self.label[w] == u32::MAX {
                    self.label[w] = self.order.len() as u32;
                    self.order.push(w as u32);
                }
                let x = self.label[w];
                if cmp == Ordering::Equal {
                    let b = bound.unwrap();
                    let pos = out.len();
                    cmp = if pos < b.len() { x.cmp(&b[pos]) } else { Ordering::Greater };
                    if cmp == Ordering::Greater {
                        return cmp;
                    }
                }
                out.push(x);
            }
        }
        if cmp == Ordering::Equal {
            if let Some(b) = bound {
                if out.len() < b.len() {
                    cmp = Ordering::Less;
                }
            }
        }
        cmp
    }
}

/// Minimum code of the component containing the vertices `starts` (all in
/// the same component) under one color order.
fn min_code_from(coder: &mut BfsCoder, starts: impl Iterator<Item = usize>, color_order: &[usize], best: &mut Option<Vec<u32>>) {
    let mut buf = Vec::new();
    for s in starts {
        let cmp = coder.code(s, color_order, best.as_deref(), &mut buf);
        if cmp == Ordering::Less {
            *best = Some(buf.clone());
        }
    }
}

fn encode(n_colors: usize, order: usize, stream: &[u32]) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(3 + 2 * stream.len());
    bytes.push(n_colors as u8);
    bytes.extend_from_slice(&(order as u16).to_be_bytes());
    for &x in stream {
        bytes.extend_from_slice(&(x as u16).to_be_bytes());
    }
    bytes
}

/// Canonical code of a connected graph.
pub fn canonical_code(g: &ColoredGraph, flavor: CodeFlavor) -> Result<CanonicalCode> {
    g.require_connected()?;
    if g.order() > u16::MAX as usize {
        return Err(GemError::InvalidGraph("graph too large for a canonical code".into()));
    }
    let n = g.n_colors();
    let orders: Vec<Vec<usize>> = match flavor {
        CodeFlavor::ColorPreserving => vec![(0..n).collect()],
        CodeFlavor::UpToColorPermutation => permutations(n),
    };
    let mut coder = BfsCoder::new(g);
    let mut best: Option<Vec<u32>> = None;
    for co in &orders {
        min_code_from(&mut coder, 0..g.order(), co, &mut best);
    }
    Ok(CanonicalCode { flavor, bytes: encode(n, g.order(), &best.unwrap()) })
}

/// The canonically relabeled (and, for the up-to-color flavor, recolored)
/// graph whose code is `canonical_code(g, flavor)`.
pub fn canonical_form(g: &ColoredGraph, flavor: CodeFlavor) -> Result<ColoredGraph> {
    canonical_code(g, flavor)?.decode()
}

/// Isomorphism-invariant key for a possibly disconnected graph: the sorted
/// list of component codes, minimized over the given color orders. Used by
/// the enumerator on partial graphs.
pub(crate) fn multiset_key(g: &ColoredGraph, color_orders: &[Vec<usize>]) -> Vec<u32> {
    let (comp, count) = g.components(g.all_colors());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &k) in comp.iter().enumerate() {
        members[k as usize].push(v);
    }
    let mut coder = BfsCoder::new(g);
    let mut best: Option<Vec<u32>> = None;
    for co in color_orders {
        let mut parts: Vec<Vec<u32>> = members
            .iter()
            .map(|m| {
                let mut b = None;
                min_code_from(&mut coder, m.iter().copied(), co, &mut b);
                let mut code = b.unwrap();
                code.insert(0, m.len() as u32);
                code
            })
            .collect();
        parts.sort();
        let key: Vec<u32> = parts.concat();
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

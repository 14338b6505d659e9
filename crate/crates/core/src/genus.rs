//! Regular genus of colored graphs with respect to cyclic color permutations.
//!
//! For a cyclic permutation `ε` of the colors, a connected graph of order
//! `2p` embeds regularly into a surface whose Euler characteristic is
//! `Σ_j g_{ε_j ε_{j+1}} + (1 - n) p`; the genus (half the genus when the
//! graph is not bipartite) of that surface is `ρ_ε`. Everything here is exact
//! integer arithmetic on residue counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GemError, Result};
use crate::graph::{mask_of, ColorMask, ColoredGraph, ResidueTable};

/// A nonnegative-or-negative multiple of one half, stored as its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_f64(self.to_f64()),
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        let twice = (2.0 * x).round();
        if (twice - 2.0 * x).abs() > 1e-9 {
            return Err(serde::de::Error::custom(format!("{x} is not a half-integer")));
        }
        Ok(HalfInt(twice as i64))
    }
}

/// A cyclic ordering of the colors `0..=n`, normalized so that the last
/// entry is `n` and the sequence is lexicographically no larger than its
/// reversal (`ε` and `ε⁻¹` give the same embedding).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPermutation {
    seq: Vec<usize>,
}

impl CyclicPermutation {
    pub fn new(seq: &[usize]) -> Result<Self> {
        let k = seq.len();
        if k < 2 {
            return Err(GemError::InvalidGraph("cyclic permutation needs at least two colors".into()));
        }
        let mut seen = vec![false; k];
        for &c in seq {
            if c >= k || seen[c] {
                return Err(GemError::InvalidGraph(format!("{seq:?} is not a permutation of 0..{}", k - 1)));
            }
            seen[c] = true;
        }
        let top = k - 1;
        let pos = seq.iter().position(|&c| c == top).unwrap();
        let rotated: Vec<usize> = (0..k).map(|i| seq[(pos + 1 + i) % k]).collect();
        let mut reversed: Vec<usize> = rotated[..top].iter().rev().copied().collect();
        reversed.push(top);
        Ok(CyclicPermutation { seq: rotated.min(reversed) })
    }

    /// All `n!/2` classes for `n_colors = n + 1` colors (one for `n < 2`).
    pub fn all(n_colors: usize) -> Vec<CyclicPermutation> {
        let n = n_colors - 1;
        crate::canon::permutations(n)
            .into_iter()
            .filter(|p| n < 2 || p[0] < p[n - 1])
            .map(|mut p| {
                p.push(n);
                CyclicPermutation { seq: p }
            })
            .collect()
    }

    pub fn colors(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn get(&self, i: usize) -> usize {
        self.seq[i % self.seq.len()]
    }

    pub fn position(&self, color: usize) -> Option<usize> {
        self.seq.iter().position(|&c| c == color)
    }

    pub fn inverse(&self) -> CyclicPermutation {
        let rev: Vec<usize> = self.seq.iter().rev().copied().collect();
        CyclicPermutation::new(&rev).unwrap()
    }

    /// Pairs of colors consecutive in the cyclic order.
    pub fn consecutive_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.seq.len();
        (0..k).map(|j| (self.seq[j], self.seq[(j + 1) % k])).collect()
    }

    /// The cyclic order on the remaining colors after deleting `color`, as a
    /// plain sequence (colors keep their original names).
    pub fn without(&self, color: usize) -> Vec<usize> {
        self.seq.iter().copied().filter(|&c| c != color).collect()
    }
}

impl fmt::Display for CyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CyclicPermutation {
    type Err = GemError;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let seq: Vec<usize> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| GemError::Parse { line: 0, msg: format!("bad permutation `{s}`") })
            })
            .collect::<Result<_>>()?;
        CyclicPermutation::new(&seq)
    }
}

impl Serialize for CyclicPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Genus of the residues spanned by `cyclic` (a cyclic order on a color
/// subset), summed over all such residues. With the full color set this is
/// `ρ_ε`; with one color deleted it is the subgenus `ρ_{ε_î}`.
///
/// Each component `R` of order `q` on `k = |cyclic|` colors contributes
/// `1 - ½ (Σ_cyc g^R_{ab} + (2 - k) q / 2)`; summing uses only global residue
/// counts because every bicolored cycle lies in exactly one component.
pub fn genus_of_colors(table: &ResidueTable, order: usize, cyclic: &[usize]) -> HalfInt {
    let k = cyclic.len();
    let mask: ColorMask = mask_of(cyclic);
    let components = table.count(mask) as i64;
    let pairs: i64 = if k == 2 {
        // a single bicolored cycle family; both "consecutive pairs" coincide
        2 * table.of(cyclic) as i64
    } else {
        (0..k).map(|j| table.of(&[cyclic[j], cyclic[(j + 1) % k]]) as i64).sum()
    };
    let chi = pairs + (2 - k as i64) * (order as i64) / 2;
    HalfInt::from_twice(2 * components - chi)
}

/// `ρ_ε(Γ)`.
pub fn genus_wrt(g: &ColoredGraph, eps: &CyclicPermutation) -> Result<HalfInt> {
    check_perm_for(g, eps)?;
    g.require_connected()?;
    let table = ResidueTable::new(g);
    let rho = genus_of_colors(&table, g.order(), eps.colors());
    if rho.twice() < 0 {
        return Err(GemError::Structural(format!("negative genus {rho} for {eps}: not a gem")));
    }
    Ok(rho)
}

/// `ρ_{ε_î}`: genus of the `ε̂_i`-residues under the induced permutation,
/// where `i` is a position in `eps`.
pub fn subgenus(g: &ColoredGraph, eps: &CyclicPermutation, i: usize) -> Result<HalfInt> {
    check_perm_for(g, eps)?;
    g.require_connected()?;
    let table = ResidueTable::new(g);
    Ok(subgenus_with(&table, g.order(), eps, eps.get(i)))
}

/// Subgenus for the residues avoiding `color`.
pub fn subgenus_with(table: &ResidueTable, order: usize, eps: &CyclicPermutation, color: usize) -> HalfInt {
    genus_of_colors(table, order, &eps.without(color))
}

fn check_perm_for(g: &ColoredGraph, eps: &CyclicPermutation) -> Result<()> {
    if eps.len() != g.n_colors() {
        return Err(GemError::InvalidGraph(format!(
            "permutation {eps} has {} colors, graph has {}",
            eps.len(),
            g.n_colors()
        )));
    }
    Ok(())
}

/// Genus of one permutation together with all its subgenera.
#[derive(Debug, Clone, Serialize)]
pub struct PermutationGenus {
    pub permutation: CyclicPermutation,
    pub rho: HalfInt,
    /// `subgenera[i]` = `ρ_{ε_î}` for position `i`.
    pub subgenera: Vec<HalfInt>,
    /// `g_{ε̂_i}` for position `i` (more than one means the subgenus is a sum).
    pub residue_counts: Vec<usize>,
}

/// Full genus sweep over every cyclic permutation.
#[derive(Debug, Clone)]
pub struct GenusReport {
    pub entries: Vec<PermutationGenus>,
    pub regular_genus: HalfInt,
    pub orientable: bool,
    /// Some `ε̂_i`-residue family had more than one component, so the
    /// corresponding subgenera are sums of component genera.
    pub disconnected_residues: bool,
}

impl GenusReport {
    pub fn entry(&self, eps: &CyclicPermutation) -> Option<&PermutationGenus> {
        self.entries.iter().find(|e| &e.permutation == eps)
    }

    pub fn minimizers(&self) -> Vec<&CyclicPermutation> {
        self.entries.iter().filter(|e| e.rho == self.regular_genus).map(|e| &e.permutation).collect()
    }
}

impl Serialize for GenusReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rho: BTreeMap<String, HalfInt> =
            self.entries.iter().map(|e| (e.permutation.to_string(), e.rho)).collect();
        let sub: BTreeMap<String, &Vec<HalfInt>> =
            self.entries.iter().map(|e| (e.permutation.to_string(), &e.subgenera)).collect();
        let mut st = s.serialize_struct("GenusReport", 5)?;
        st.serialize_field("rho", &rho)?;
        st.serialize_field("regular_genus", &self.regular_genus)?;
        st.serialize_field("subgenera", &sub)?;
        st.serialize_field("orientable", &self.orientable)?;
        st.serialize_field("disconnected_residues", &self.disconnected_residues)?;
        st.end()
    }
}

pub fn genus_all(g: &ColoredGraph) -> Result<GenusReport> {
    g.require_connected()?;
    let table = ResidueTable::new(g);
    genus_all_with(g, &table)
}

pub fn genus_all_with(g: &ColoredGraph, table: &ResidueTable) -> Result<GenusReport> {
    let orientable = g.is_bipartite();
    let mut entries = Vec::new();
    let mut disconnected = false;
    for eps in CyclicPermutation::all(g.n_colors()) {
        let rho = genus_of_colors(table, g.order(), eps.colors());
        if rho.twice() < 0 {
            return Err(GemError::Structural(format!("negative genus {rho} for {eps}: not a gem")));
        }
        if orientable && !rho.is_integer() {
            return Err(GemError::Consistency(format!("bipartite graph with half-integral genus at {eps}")));
        }
        let mut subgenera = Vec::new();
        let mut residue_counts = Vec::new();
        if g.n_colors() >= 3 {
            for &c in eps.colors() {
                let cnt = table.hat(&[c]);
                disconnected |= cnt > 1;
                residue_counts.push(cnt);
                subgenera.push(subgenus_with(table, g.order(), &eps, c));
            }
        }
        entries.push(PermutationGenus { permutation: eps, rho, subgenera, residue_counts });
    }
    let regular_genus = entries.iter().map(|e| e.rho).min().unwrap();
    Ok(GenusReport { entries, regular_genus, orientable, disconnected_residues: disconnected })
}

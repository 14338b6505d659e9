//! Smith normal form over the integers.
//!
//! Only the invariant factors are computed. Elimination first runs in
//! checked `i64` arithmetic and restarts in arbitrary precision on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let small: Vec<Vec<i64>> = (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        if let Some(d) = diagonalize(small) {
            return d.into_iter().map(BigInt::from).collect();
        }
        let big: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| BigInt::from(self.get(r, c))).collect())
            .collect();
        diagonalize(big).expect("arbitrary precision cannot overflow")
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_op<T>(a: &mut [Vec<T>], target: usize, src: usize, q: &T, from: usize) -> Option<()>
where
    T: Clone + Zero + CheckedMul + CheckedSub,
{
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for j in from..t.len() {
        if s[j].is_zero() {
            continue;
        }
        t[j] = t[j].checked_sub(&q.checked_mul(&s[j])?)?;
    }
    Some(())
}

fn col_op<T>(a: &mut [Vec<T>], target: usize, src: usize, q: &T, from: usize) -> Option<()>
where
    T: Clone + Zero + CheckedMul + CheckedSub,
{
    for row in a.iter_mut().skip(from) {
        if row[src].is_zero() {
            continue;
        }
        let d = q.checked_mul(&row[src])?;
        row[target] = row[target].checked_sub(&d)?;
    }
    Some(())
}

fn diagonalize<T>(mut a: Vec<Vec<T>>) -> Option<Vec<T>>
where
    T: Clone + Zero + One + Integer + Signed + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_op(&mut a, i, t, &q, t)?;
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_op(&mut a, j, t, &q, t)?;
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // pivot must divide the remaining block
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    row_op(&mut a, t, i, &minus_one, t)?;
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    /// Torsion coefficients, each > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Cokernel of the relation matrix whose rows are relators over
    /// `generators` generators.
    pub fn from_relations(relations: &IntMatrix) -> AbelianGroup {
        let d = relations.invariant_factors();
        let rank = relations.cols - d.len();
        let torsion = d.into_iter().filter(|x| !x.is_one()).collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect();
        let mut st = s.serialize_struct("AbelianGroup", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows[0].len();
        IntMatrix { rows: r, cols: c, data: rows.iter().flat_map(|x| x.iter().copied()).collect() }
    }

    #[test]
    fn classic_example() {
        // diag(2, 6, 12) hidden behind unimodular changes
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let d: Vec<i64> = m.invariant_factors().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn cokernel() {
        let g = AbelianGroup::from_relations(&mat(&[&[2, 0], &[0, 0]]));
        assert_eq!(g.rank, 1);
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
        assert_eq!(g.to_string(), "Z + Z/2");
        let t = AbelianGroup::from_relations(&mat(&[&[1, 1], &[1, -1]]));
        assert_eq!(t.to_string(), "Z/2");
        let z = AbelianGroup::from_relations(&IntMatrix::zeros(0, 3));
        assert_eq!(z.rank, 3);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = mat(&[&[big, big - 1], &[big - 1, big - 2]]);
        // determinant is -1: unimodular
        let d = m.invariant_factors();
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn invariant_factors_divide() {
        let m = mat(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]);
        let d: Vec<i64> = m.invariant_factors().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 2, 60]);
    }
}

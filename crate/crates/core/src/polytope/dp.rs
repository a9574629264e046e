//! Counting kernels for nonnegative integer matrices with margin constraints.

use rustc_hash::FxHashMap;

use crate::error::{invalid, Error, Result};

/// Largest dense state table the transport kernel will allocate.
pub const MAX_DP_STATES: u128 = 1 << 25;
/// Largest number of sparse states the graph kernel will hold.
pub const MAX_GRAPH_STATES: usize = 1 << 23;

/// How a margin constrains its line sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Margin {
    Eq(u32),
    Le(u32),
}

impl Margin {
    fn bound(self) -> u32 {
        match self {
            Margin::Eq(b) | Margin::Le(b) => b,
        }
    }
}

fn overflow() -> Error {
    Error::Resource { what: "lattice count bits", needed: 129, limit: 128 }
}

/// Counts nonnegative integer matrices with the given row and column
/// margins, bucketed by the sum of all entries.
///
/// The state is the vector of partial row sums together with the partial sum
/// of the current column. Adding one cell is an unbounded-knapsack step, done
/// in place by sweeping the flat index upwards. Closing a column either keeps
/// the states that hit its target or folds every state below its bound.
pub fn transport_counts_by_total(rows: &[Margin], cols: &[Margin]) -> Result<Vec<u128>> {
    if rows.is_empty() || cols.is_empty() {
        return invalid("matrix must have at least one row and one column");
    }
    let bounds: Vec<usize> = rows.iter().map(|m| m.bound() as usize).collect();
    let s_max = cols.iter().map(|m| m.bound()).max().unwrap_or(0) as usize;
    let mut strides = Vec::with_capacity(bounds.len());
    let mut size: u128 = (s_max + 1) as u128;
    for &b in &bounds {
        strides.push(size as usize);
        size = size.saturating_mul(b as u128 + 1);
    }
    if size > MAX_DP_STATES {
        return Err(Error::Resource { what: "transport DP states", needed: size, limit: MAX_DP_STATES });
    }
    let size = size as usize;
    let width = s_max + 1;
    let mut table = vec![0u128; size];
    table[0] = 1;

    // per-state row partials, decoded once
    let n_rows = bounds.len();
    let mut partial = vec![0u32; (size / width) * n_rows];
    for block in 0..size / width {
        let mut rem = block;
        for (i, &b) in bounds.iter().enumerate() {
            partial[block * n_rows + i] = (rem % (b + 1)) as u32;
            rem /= b + 1;
        }
    }

    for col in cols {
        let cb = col.bound() as usize;
        for i in 0..n_rows {
            let step = strides[i] + 1;
            for block in 0..size / width {
                if partial[block * n_rows + i] == 0 {
                    continue;
                }
                let base = block * width;
                for s in 1..=cb {
                    let idx = base + s;
                    let add = table[idx - step];
                    if add != 0 {
                        table[idx] = table[idx].checked_add(add).ok_or_else(overflow)?;
                    }
                }
            }
        }
        for block in 0..size / width {
            let base = block * width;
            let closed = match *col {
                Margin::Eq(b) => table[base + b as usize],
                Margin::Le(b) => {
                    let mut acc: u128 = 0;
                    for s in 0..=b as usize {
                        acc = acc.checked_add(table[base + s]).ok_or_else(overflow)?;
                    }
                    acc
                }
            };
            table[base..base + width].iter_mut().for_each(|v| *v = 0);
            table[base] = closed;
        }
    }

    let max_total: usize = bounds.iter().sum();
    let mut out = vec![0u128; max_total + 1];
    for block in 0..size / width {
        let v = table[block * width];
        if v == 0 {
            continue;
        }
        let mut total = 0usize;
        let mut ok = true;
        for (i, row) in rows.iter().enumerate() {
            let u = partial[block * n_rows + i];
            total += u as usize;
            if let Margin::Eq(b) = row {
                ok &= u == *b;
            }
        }
        if ok {
            out[total] = out[total].checked_add(v).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

/// Total count of matrices with the given margins.
pub fn transport_count(rows: &[Margin], cols: &[Margin]) -> Result<u128> {
    let by_total = transport_counts_by_total(rows, cols)?;
    by_total
        .iter()
        .try_fold(0u128, |a, &b| a.checked_add(b))
        .ok_or_else(overflow)
}

/// Counts nonnegative integer weightings `x_ij` (`i < j`) of the edges of the
/// complete graph on `n` vertices whose vertex degrees satisfy `margin`,
/// bucketed by the total weight `Σ x_ij`.
///
/// Vertices are eliminated one at a time. Because the graph is complete, the
/// remaining count depends only on the multiset of partial degrees of the
/// vertices not yet eliminated, so states are kept sorted.
pub fn complete_graph_counts_by_total(n: usize, margin: Margin) -> Result<Vec<u128>> {
    if n < 2 {
        return invalid("complete graph needs at least two vertices");
    }
    let bound = margin.bound();
    let track_total = matches!(margin, Margin::Le(_));
    // key: sorted partial degrees of the remaining vertices, then the running total
    let mut states: FxHashMap<Vec<u32>, u128> = FxHashMap::default();
    let mut start = vec![0u32; n];
    if track_total {
        start.push(0);
    }
    states.insert(start, 1);

    for remaining in (2..=n).rev() {
        let mut next: FxHashMap<Vec<u32>, u128> = FxHashMap::default();
        for (key, count) in states {
            let degs = &key[..remaining];
            let total = if track_total { key[remaining] } else { 0 };
            // eliminate the most saturated vertex
            let used = degs[remaining - 1];
            let others = &degs[..remaining - 1];
            let caps: Vec<u32> = others.iter().map(|&d| bound - d).collect();
            let need = bound - used;
            let mut parts = vec![0u32; others.len()];
            let mut emit = |parts: &[u32], sum: u32| -> Result<()> {
                let mut k: Vec<u32> = others.iter().zip(parts).map(|(&d, &p)| d + p).collect();
                k.sort_unstable();
                if track_total {
                    k.push(total + sum);
                }
                let slot = next.entry(k).or_insert(0);
                *slot = slot.checked_add(count).ok_or_else(overflow)?;
                Ok(())
            };
            match margin {
                Margin::Eq(_) => compositions(&caps, need, true, &mut parts, 0, 0, &mut emit)?,
                Margin::Le(_) => compositions(&caps, need, false, &mut parts, 0, 0, &mut emit)?,
            }
        }
        if next.len() > MAX_GRAPH_STATES {
            return Err(Error::Resource {
                what: "graph DP states",
                needed: next.len() as u128,
                limit: MAX_GRAPH_STATES as u128,
            });
        }
        states = next;
    }

    let max_total = (bound as usize * n) / 2;
    let mut out = vec![0u128; max_total + 1];
    for (key, count) in states {
        // one vertex left, with no edges to assign
        let last = key[0];
        if let Margin::Eq(b) = margin {
            if last != b {
                continue;
            }
        }
        let total = if track_total { key[1] as usize } else { (bound as usize * n) / 2 };
        out[total] = out[total].checked_add(count).ok_or_else(overflow)?;
    }
    Ok(out)
}

/// Enumerates `parts` with `parts[i] <= caps[i]` summing to `need` (exact) or
/// to at most `need`.
fn compositions<F>(
    caps: &[u32],
    need: u32,
    exact: bool,
    parts: &mut [u32],
    i: usize,
    sum: u32,
    emit: &mut F,
) -> Result<()>
where
    F: FnMut(&[u32], u32) -> Result<()>,
{
    if i == caps.len() {
        if !exact || sum == need {
            emit(parts, sum)?;
        }
        return Ok(());
    }
    let left = need - sum;
    if exact {
        let rest: u32 = caps[i + 1..].iter().fold(0u32, |a, &c| a.saturating_add(c));
        let lo = left.saturating_sub(rest);
        let hi = left.min(caps[i]);
        for v in lo..=hi {
            parts[i] = v;
            compositions(caps, need, exact, parts, i + 1, sum + v, emit)?;
        }
    } else {
        for v in 0..=left.min(caps[i]) {
            parts[i] = v;
            compositions(caps, need, exact, parts, i + 1, sum + v, emit)?;
        }
    }
    parts[i] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_matrix(rows: &[Margin], cols: &[Margin]) -> Vec<u128> {
        let r = rows.len();
        let c = cols.len();
        let cap = rows.iter().map(|m| m.bound()).max().unwrap() as usize;
        let mut out = vec![0u128; r * cap + 1];
        let cells = r * c;
        let mut m = vec![0u32; cells];
        loop {
            let ok_rows = (0..r).all(|i| {
                let s: u32 = m[i * c..(i + 1) * c].iter().sum();
                match rows[i] {
                    Margin::Eq(b) => s == b,
                    Margin::Le(b) => s <= b,
                }
            });
            let ok_cols = (0..c).all(|j| {
                let s: u32 = (0..r).map(|i| m[i * c + j]).sum();
                match cols[j] {
                    Margin::Eq(b) => s == b,
                    Margin::Le(b) => s <= b,
                }
            });
            if ok_rows && ok_cols {
                let t: u32 = m.iter().sum();
                out[t as usize] += 1;
            }
            let mut i = 0;
            loop {
                if i == cells {
                    return out;
                }
                m[i] += 1;
                if m[i] as usize <= cap {
                    break;
                }
                m[i] = 0;
                i += 1;
            }
        }
    }

    fn brute_graph(n: usize, margin: Margin) -> Vec<u128> {
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let b = margin.bound();
        let mut out = vec![0u128; (b as usize * n) / 2 + 1];
        let mut x = vec![0u32; edges.len()];
        loop {
            let mut deg = vec![0u32; n];
            for (e, &(i, j)) in edges.iter().enumerate() {
                deg[i] += x[e];
                deg[j] += x[e];
            }
            let ok = deg.iter().all(|&d| match margin {
                Margin::Eq(b) => d == b,
                Margin::Le(b) => d <= b,
            });
            if ok {
                out[x.iter().sum::<u32>() as usize] += 1;
            }
            let mut e = 0;
            loop {
                if e == edges.len() {
                    return out;
                }
                x[e] += 1;
                if x[e] <= b {
                    break;
                }
                x[e] = 0;
                e += 1;
            }
        }
    }

    fn trim(mut v: Vec<u128>) -> Vec<u128> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    #[test]
    fn birkhoff_small() {
        let m = |t| vec![Margin::Eq(t); 3];
        assert_eq!(transport_count(&m(1), &m(1)).unwrap(), 6);
        let m2 = |t| vec![Margin::Eq(t); 2];
        assert_eq!(transport_count(&m2(5), &m2(5)).unwrap(), 6);
        assert_eq!(transport_count(&m(0), &m(0)).unwrap(), 1);
    }

    #[test]
    fn unitary_k2_l1() {
        let m = vec![Margin::Le(1); 2];
        assert_eq!(trim(transport_counts_by_total(&m, &m).unwrap()), vec![1, 4, 2]);
    }

    #[test]
    fn k4_matchings() {
        assert_eq!(trim(complete_graph_counts_by_total(4, Margin::Le(1)).unwrap()), vec![1, 6, 3]);
    }

    #[test]
    fn graph_matches_brute() {
        for n in 2..=4 {
            for b in 0..=3 {
                for margin in [Margin::Eq(b), Margin::Le(b)] {
                    assert_eq!(
                        trim(complete_graph_counts_by_total(n, margin).unwrap()),
                        trim(brute_graph(n, margin)),
                        "n={n} {margin:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn graph_six_vertices_spot() {
        assert_eq!(
            trim(complete_graph_counts_by_total(6, Margin::Eq(2)).unwrap()),
            trim(brute_graph(6, Margin::Eq(2)))
        );
        assert_eq!(
            trim(complete_graph_counts_by_total(5, Margin::Le(2)).unwrap()),
            trim(brute_graph(5, Margin::Le(2)))
        );
    }

    #[test]
    fn state_guard() {
        let m = vec![Margin::Le(100); 6];
        assert!(matches!(transport_count(&m, &m), Err(Error::Resource { .. })));
    }

    fn margin() -> impl Strategy<Value = Margin> {
        (0u32..=3, any::<bool>()).prop_map(|(b, eq)| if eq { Margin::Eq(b) } else { Margin::Le(b) })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn transport_matches_brute(
            rows in prop::collection::vec(margin(), 1..=2),
            cols in prop::collection::vec(margin(), 1..=3),
        ) {
            let fast = trim(transport_counts_by_total(&rows, &cols).unwrap());
            prop_assert_eq!(fast, trim(brute_matrix(&rows, &cols)));
        }

        #[test]
        fn transpose_symmetry(
            rows in prop::collection::vec(margin(), 1..=3),
            cols in prop::collection::vec(margin(), 1..=3),
        ) {
            let a = trim(transport_counts_by_total(&rows, &cols).unwrap());
            let b = trim(transport_counts_by_total(&cols, &rows).unwrap());
            prop_assert_eq!(a, b);
        }
    }
}

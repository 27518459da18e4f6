//! All-pairs shortest-path engines over dense weighted digraphs.
//!
//! * [`floyd_warshall`]: the cubic baseline.
//! * [`apsp_squaring`] with [`Kernel::Naive`]: repeated min-plus squaring,
//!   each entry found by a linear scan.
//! * [`apsp_squaring`] with [`Kernel::Fast`]: the same squaring, but every row
//!   of the left factor and every column of the right factor is sorted once per
//!   level and each entry is found with the early-termination kernel.
//! * [`apsp_oracle`]: exhaustive simple-path enumeration for tiny graphs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{naive_scan, select_sorted, sort_index_prechecked, SortedIndex, SortedList};
use crate::matrix::WeightMatrix;
use crate::scalar::Weight;

/// Largest graph [`apsp_oracle`] will enumerate.
pub const ORACLE_MAX_V: usize = 8;

/// Dense weighted digraph. `weight(u, v)` is `+inf` when there is no edge and
/// the diagonal is always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T> {
    weights: WeightMatrix<T>,
}

impl<T: Weight> Graph<T> {
    /// Wraps an edge-weight matrix. A negative self-loop is an immediate
    /// negative cycle; any other diagonal entry is replaced by zero.
    pub fn new(mut weights: WeightMatrix<T>) -> Result<Self> {
        let n = weights.dim();
        for u in 0..n {
            if weights.get(u, u) < T::zero() {
                return Err(Error::NegativeCycle { vertex: u });
            }
            weights.data_mut()[u * n + u] = T::zero();
        }
        Ok(Graph { weights })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(WeightMatrix::from_rows(rows)?)
    }

    /// Graph with no edges.
    pub fn empty(v: usize) -> Result<Self> {
        Self::new(WeightMatrix::filled(v, T::infinity())?)
    }

    pub fn v_count(&self) -> usize {
        self.weights.dim()
    }

    pub fn weights(&self) -> &WeightMatrix<T> {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> T {
        self.weights.get(u, v)
    }

    /// Sets an off-diagonal edge weight.
    pub fn set_edge(&mut self, u: usize, v: usize, w: T) -> Result<()> {
        if u == v {
            return Err(Error::invalid("self-loops are fixed at weight 0"));
        }
        self.weights.set(u, v, w)
    }

    pub fn into_weights(self) -> WeightMatrix<T> {
        self.weights
    }
}

/// Distances over paths of at most `2^level` edges.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    pub entries: WeightMatrix<T>,
    pub level: u32,
}

impl<T: Weight> DistanceMatrix<T> {
    pub fn new(entries: WeightMatrix<T>, level: u32) -> Self {
        DistanceMatrix { entries, level }
    }

    /// Level 0: the edge weights themselves.
    pub fn from_graph(g: &Graph<T>) -> Self {
        DistanceMatrix::new(g.weights.clone(), 0)
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn get(&self, u: usize, v: usize) -> T {
        self.entries.get(u, v)
    }

    fn negative_diagonal(&self) -> Option<usize> {
        (0..self.dim()).find(|&u| self.get(u, u) < T::zero())
    }
}

/// Kernel iteration counts gathered over one min-plus product.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProductStats {
    pub total_iterations: u64,
    pub entries_computed: u64,
    /// `histogram[k]` counts entries whose iteration count lies in `[2^k, 2^(k+1))`.
    pub histogram: Vec<u64>,
}

impl ProductStats {
    pub fn record(&mut self, iterations: usize) {
        debug_assert!(iterations >= 1);
        self.total_iterations += iterations as u64;
        self.entries_computed += 1;
        let bucket = iterations.max(1).ilog2() as usize;
        if self.histogram.len() <= bucket {
            self.histogram.resize(bucket + 1, 0);
        }
        self.histogram[bucket] += 1;
    }

    pub fn merge(mut self, other: &ProductStats) -> ProductStats {
        self.total_iterations += other.total_iterations;
        self.entries_computed += other.entries_computed;
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (mine, theirs) in self.histogram.iter_mut().zip(&other.histogram) {
            *mine += theirs;
        }
        self
    }

    pub fn mean_iterations(&self) -> f64 {
        if self.entries_computed == 0 {
            0.0
        } else {
            self.total_iterations as f64 / self.entries_computed as f64
        }
    }
}

/// Which argmin routine a squaring solver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Naive,
    Fast,
}

/// Classic k-outer triple loop. Fails as soon as any diagonal entry turns
/// negative.
pub fn floyd_warshall<T: Weight>(g: &Graph<T>) -> Result<DistanceMatrix<T>> {
    let n = g.v_count();
    let mut d = g.weights.as_slice().to_vec();
    let mut pivot_row = vec![T::zero(); n];
    for k in 0..n {
        pivot_row.copy_from_slice(&d[k * n..(k + 1) * n]);
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == T::infinity() {
                continue;
            }
            let row = &mut d[i * n..(i + 1) * n];
            for (dij, &dkj) in row.iter_mut().zip(&pivot_row) {
                let through = dik + dkj;
                if through < *dij {
                    *dij = through;
                }
            }
        }
        if let Some(u) = (0..n).find(|&u| d[u * n + u] < T::zero()) {
            return Err(Error::NegativeCycle { vertex: u });
        }
    }
    Ok(DistanceMatrix::new(WeightMatrix::from_raw(n, d), ceil_log2(n)))
}

fn check_product_args<T: Weight>(a: &DistanceMatrix<T>, b: &DistanceMatrix<T>) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.level != b.level {
        return Err(Error::invalid(format!(
            "level mismatch: {} vs {}",
            a.level, b.level
        )));
    }
    Ok(())
}

fn assemble<T: Weight>(n: usize, level: u32, rows: Vec<(Vec<T>, ProductStats)>) -> (DistanceMatrix<T>, ProductStats) {
    let mut data = Vec::with_capacity(n * n);
    let mut stats = ProductStats::default();
    for (row, row_stats) in rows {
        data.extend(row);
        stats = stats.merge(&row_stats);
    }
    (DistanceMatrix::new(WeightMatrix::from_raw(n, data), level), stats)
}

/// Min-plus product with a full linear scan per entry.
pub fn funny_product_naive<T: Weight>(
    a: &DistanceMatrix<T>,
    b: &DistanceMatrix<T>,
) -> Result<(DistanceMatrix<T>, ProductStats)> {
    check_product_args(a, b)?;
    let n = a.dim();
    let bt = b.entries.transpose();
    let rows = (0..n)
        .into_par_iter()
        .map(|u| {
            let ru = a.entries.row(u);
            let mut stats = ProductStats::default();
            let row = (0..n)
                .map(|v| {
                    let r = naive_scan(ru, bt.row(v));
                    stats.record(r.iterations);
                    r.min_value
                })
                .collect();
            (row, stats)
        })
        .collect();
    Ok(assemble(n, a.level + 1, rows))
}

/// Min-plus product using the sorted early-termination kernel.
pub fn funny_product_fast<T: Weight>(
    a: &DistanceMatrix<T>,
    b: &DistanceMatrix<T>,
) -> Result<(DistanceMatrix<T>, ProductStats)> {
    check_product_args(a, b)?;
    let n = a.dim();
    let bt = b.entries.transpose();
    let row_orders: Vec<SortedIndex> = (0..n)
        .into_par_iter()
        .map(|u| sort_index_prechecked(a.entries.row(u)))
        .collect();
    let col_orders: Vec<SortedIndex> = (0..n)
        .into_par_iter()
        .map(|v| sort_index_prechecked(bt.row(v)))
        .collect();

    let rows = (0..n)
        .into_par_iter()
        .map(|u| {
            let left = SortedList::trusted(a.entries.row(u), &row_orders[u]);
            let mut stats = ProductStats::default();
            let row = (0..n)
                .map(|v| {
                    let right = SortedList::trusted(bt.row(v), &col_orders[v]);
                    let r = select_sorted(left, right);
                    stats.record(r.iterations);
                    r.min_value
                })
                .collect();
            (row, stats)
        })
        .collect();
    Ok(assemble(n, a.level + 1, rows))
}

/// `ceil(log2 v)`, with 0 for `v <= 1`.
pub fn ceil_log2(v: usize) -> u32 {
    if v <= 1 {
        0
    } else {
        usize::BITS - (v - 1).leading_zeros()
    }
}

/// Squaring levels needed so that `2^levels >= v`, covering every simple path
/// and every simple cycle.
pub fn squaring_levels(v: usize) -> u32 {
    ceil_log2(v)
}

/// Repeated min-plus squaring from the edge weights. Returns the final
/// distances and one [`ProductStats`] per level.
pub fn apsp_squaring<T: Weight>(
    g: &Graph<T>,
    kernel: Kernel,
) -> Result<(DistanceMatrix<T>, Vec<ProductStats>)> {
    let levels = squaring_levels(g.v_count());
    let mut d = DistanceMatrix::from_graph(g);
    let mut all_stats = Vec::with_capacity(levels as usize);
    for _ in 0..levels {
        let (next, stats) = match kernel {
            Kernel::Naive => funny_product_naive(&d, &d)?,
            Kernel::Fast => funny_product_fast(&d, &d)?,
        };
        d = next;
        all_stats.push(stats);
    }
    if let Some(u) = d.negative_diagonal() {
        return Err(Error::NegativeCycle { vertex: u });
    }
    Ok((d, all_stats))
}

/// Exact distances by enumerating every simple path. Only for `V <= 8`; the
/// result is meaningless if the graph has a negative cycle.
pub fn apsp_oracle<T: Weight>(g: &Graph<T>) -> Result<DistanceMatrix<T>> {
    let n = g.v_count();
    if n > ORACLE_MAX_V {
        return Err(Error::TooLarge {
            v: n,
            limit: ORACLE_MAX_V,
        });
    }

    fn walk<T: Weight>(g: &Graph<T>, at: usize, len: T, visited: &mut [bool], best: &mut [T]) {
        for next in 0..g.v_count() {
            let w = g.weight(at, next);
            if visited[next] || w == T::infinity() {
                continue;
            }
            let total = len + w;
            if total < best[next] {
                best[next] = total;
            }
            visited[next] = true;
            walk(g, next, total, visited, best);
            visited[next] = false;
        }
    }

    let mut data = Vec::with_capacity(n * n);
    for source in 0..n {
        let mut best = vec![T::infinity(); n];
        best[source] = T::zero();
        let mut visited = vec![false; n];
        visited[source] = true;
        walk(g, source, T::zero(), &mut visited, &mut best);
        data.extend(best);
    }
    Ok(DistanceMatrix::new(WeightMatrix::from_raw(n, data), ceil_log2(n)))
}

//! Seeded instance generators for the experiments.
//!
//! Every generator is a pure function of its arguments: the same `(v, seed)`
//! always yields the same instance within one build.

use rand::distr::uniform::SampleUniform;
use rand::distr::{Distribution, StandardUniform};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::apsp::Graph;
use crate::error::{Error, Result};
use crate::matrix::WeightMatrix;
use crate::scalar::Weight;

/// Generator for `(seed, stream)`. Distinct streams are independent, which
/// lets parallel trials draw from fixed per-trial sequences.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_v(v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::invalid("v must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_correlation(c: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::invalid(format!("correlation {c} outside [-1, 1]")))
    }
}

fn check_density(density: f64) -> Result<()> {
    if density > 0.0 && density <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("density {density} outside (0, 1]")))
    }
}

fn graph_from_fn<T: Weight>(v: usize, mut edge: impl FnMut() -> T) -> Result<Graph<T>> {
    let mut data = Vec::with_capacity(v * v);
    for u in 0..v {
        for w in 0..v {
            data.push(if u == w { T::zero() } else { edge() });
        }
    }
    Graph::new(WeightMatrix::from_vec(v, data)?)
}

/// Complete digraph with off-diagonal weights iid uniform in `[0, 1)`.
pub fn gen_uniform_graph<T: Weight>(v: usize, seed: u64) -> Result<Graph<T>>
where
    StandardUniform: Distribution<T>,
{
    check_v(v)?;
    let mut rng = rng_for(seed);
    graph_from_fn(v, || rng.random::<T>())
}

/// Complete digraph with off-diagonal weights iid uniform in `[low, high)`.
/// With `low < 0` the result may contain negative cycles.
pub fn gen_uniform_graph_in<T: Weight + SampleUniform>(v: usize, low: T, high: T, seed: u64) -> Result<Graph<T>> {
    check_v(v)?;
    if !low.is_finite() || !high.is_finite() || low >= high {
        return Err(Error::invalid(format!("empty weight range [{low}, {high})")));
    }
    let mut rng = rng_for(seed);
    graph_from_fn(v, || rng.random_range(low..high))
}

/// Uniform `[low, high)` graphs, redrawn until one has no negative cycle.
/// Attempt `k` uses seed stream `k`; fails after `max_attempts` draws.
///
/// Only practical for small `v`: with `[-0.1, 1)` weights almost every graph
/// beyond about 16 vertices contains a negative 2-cycle.
pub fn gen_screened_graph_in<T: Weight + SampleUniform>(
    v: usize,
    low: T,
    high: T,
    seed: u64,
    max_attempts: usize,
) -> Result<Graph<T>> {
    for attempt in 0..max_attempts {
        let g = gen_uniform_graph_in(v, low, high, seed ^ (attempt as u64).rotate_left(32))?;
        match crate::apsp::floyd_warshall(&g) {
            Ok(_) => return Ok(g),
            Err(Error::NegativeCycle { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::invalid(format!(
        "no negative-cycle-free graph found in {max_attempts} attempts"
    )))
}

/// Uniform `[0, 1)` weights reweighted by random vertex potentials:
/// `w(u, v) + p(u) - p(v)` with `p` uniform in `[0, max_shift)`. Every cycle
/// keeps its original non-negative weight, so there is no negative cycle, yet
/// edges down to `-max_shift` occur.
pub fn gen_potential_shifted_graph<T: Weight>(v: usize, max_shift: T, seed: u64) -> Result<Graph<T>>
where
    StandardUniform: Distribution<T>,
{
    check_v(v)?;
    if !max_shift.is_finite() || max_shift < T::zero() {
        return Err(Error::invalid(format!("shift {max_shift} must be finite and non-negative")));
    }
    let mut rng = rng_for(seed);
    let potential: Vec<T> = (0..v).map(|_| rng.random::<T>() * max_shift).collect();
    let mut data = Vec::with_capacity(v * v);
    for u in 0..v {
        for w in 0..v {
            data.push(if u == w {
                T::zero()
            } else {
                rng.random::<T>() + potential[u] - potential[w]
            });
        }
    }
    Graph::new(WeightMatrix::from_vec(v, data)?)
}

/// Each off-diagonal edge is present with probability `density` and then
/// weighted uniformly in `[0, 1)`; absent edges are `+inf`.
pub fn gen_sparse_graph<T: Weight>(v: usize, density: f64, seed: u64) -> Result<Graph<T>>
where
    StandardUniform: Distribution<T>,
{
    check_v(v)?;
    check_density(density)?;
    let mut rng = rng_for(seed);
    graph_from_fn(v, || {
        if rng.random_bool(density) {
            rng.random::<T>()
        } else {
            T::infinity()
        }
    })
}

/// Two independent lists of `v` uniform `[0, 1)` samples.
pub fn gen_uniform_lists<T: Weight>(v: usize, seed: u64) -> Result<(Vec<T>, Vec<T>)>
where
    StandardUniform: Distribution<T>,
{
    check_v(v)?;
    Ok(uniform_lists_with(v, &mut rng_for(seed)))
}

pub fn uniform_lists_with<T: Weight, R: Rng + ?Sized>(v: usize, rng: &mut R) -> (Vec<T>, Vec<T>)
where
    StandardUniform: Distribution<T>,
{
    let a = (0..v).map(|_| rng.random::<T>()).collect();
    let b = (0..v).map(|_| rng.random::<T>()).collect();
    (a, b)
}

/// `v` pairs from a standard bivariate normal with correlation `c`:
/// `a = z1`, `b = c z1 + sqrt(1 - c^2) z2` for independent standard normals.
pub fn gen_correlated_lists<T: Weight>(v: usize, c: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)>
where
    StandardNormal: Distribution<T>,
{
    check_v(v)?;
    check_correlation(c)?;
    Ok(correlated_lists_with(v, c, &mut rng_for(seed)))
}

pub fn correlated_lists_with<T: Weight, R: Rng + ?Sized>(v: usize, c: f64, rng: &mut R) -> (Vec<T>, Vec<T>)
where
    StandardNormal: Distribution<T>,
{
    let rho = T::from_f64(c).expect("correlation representable");
    let rest = T::from_f64((1.0 - c * c).max(0.0).sqrt()).expect("representable");
    let mut a = Vec::with_capacity(v);
    let mut b = Vec::with_capacity(v);
    for _ in 0..v {
        let z1: T = rng.sample(StandardNormal);
        let z2: T = rng.sample(StandardNormal);
        a.push(z1);
        b.push(rho * z1 + rest * z2);
    }
    (a, b)
}

/// Uniform random permutation of `0..v` (Fisher-Yates).
pub fn gen_permutation(v: usize, seed: u64) -> Result<Vec<usize>> {
    check_v(v)?;
    Ok(gen_permutation_with(v, &mut rng_for(seed)))
}

pub fn gen_permutation_with<R: Rng + ?Sized>(v: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..v).collect();
    perm.shuffle(rng);
    perm
}

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    UniformGraph,
    SparseGraph { density: f64 },
    UniformLists,
    GaussianLists { correlation: f64 },
    Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub v: usize,
    pub seed: u64,
}

/// A generated instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance<T> {
    Graph(Graph<T>),
    Lists(Vec<T>, Vec<T>),
    Permutation(Vec<usize>),
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        check_v(self.v)?;
        match self.kind {
            GenKind::SparseGraph { density } => check_density(density),
            GenKind::GaussianLists { correlation } => check_correlation(correlation),
            _ => Ok(()),
        }
    }

    pub fn generate<T: Weight>(&self) -> Result<Instance<T>>
    where
        StandardUniform: Distribution<T>,
        StandardNormal: Distribution<T>,
    {
        self.validate()?;
        Ok(match self.kind {
            GenKind::UniformGraph => Instance::Graph(gen_uniform_graph(self.v, self.seed)?),
            GenKind::SparseGraph { density } => {
                Instance::Graph(gen_sparse_graph(self.v, density, self.seed)?)
            }
            GenKind::UniformLists => {
                let (a, b) = gen_uniform_lists(self.v, self.seed)?;
                Instance::Lists(a, b)
            }
            GenKind::GaussianLists { correlation } => {
                let (a, b) = gen_correlated_lists(self.v, correlation, self.seed)?;
                Instance::Lists(a, b)
            }
            GenKind::Permutation => Instance::Permutation(gen_permutation(self.v, self.seed)?),
        })
    }
}

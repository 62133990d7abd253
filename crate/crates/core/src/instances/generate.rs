use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{CooMatrix, SparseSymMatrix};
use crate::rng::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum InstanceKind {
    Gaussian,
    SparsePm1,
    RegularGraph,
    PsdGram,
    File,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Gaussian => "gaussian",
            InstanceKind::SparsePm1 => "sparse_pm1",
            InstanceKind::RegularGraph => "regular_graph",
            InstanceKind::PsdGram => "psd_gram",
            InstanceKind::File => "file",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    /// Target nonzeros per row for `sparse_pm1`.
    pub s: Option<usize>,
    /// Vertex degree for `regular_graph`.
    pub degree: Option<usize>,
    pub seed: u64,
    /// Leave the diagonal of `gaussian` instances empty.
    #[cfg_attr(feature = "serde", serde(default))]
    pub zero_diagonal: bool,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            s: None,
            degree: None,
            seed,
            zero_diagonal: false,
        }
    }

    pub fn gaussian(n: usize, seed: u64) -> Self {
        Self::new(InstanceKind::Gaussian, n, seed)
    }

    pub fn sparse_pm1(n: usize, s: usize, seed: u64) -> Self {
        Self {
            s: Some(s),
            ..Self::new(InstanceKind::SparsePm1, n, seed)
        }
    }

    pub fn regular_graph(n: usize, degree: usize, seed: u64) -> Self {
        Self {
            degree: Some(degree),
            ..Self::new(InstanceKind::RegularGraph, n, seed)
        }
    }

    pub fn psd_gram(n: usize, seed: u64) -> Self {
        Self::new(InstanceKind::PsdGram, n, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyDimension);
        }
        if let Some(s) = self.s {
            if s > self.n {
                return Err(Error::InvalidInstance(format!(
                    "sparsity {s} exceeds dimension {}",
                    self.n
                )));
            }
        }
        match self.kind {
            InstanceKind::SparsePm1 => match self.s {
                Some(s) if s >= 1 => {}
                _ => return Err(Error::InvalidInstance("sparse_pm1 needs s >= 1".into())),
            },
            InstanceKind::RegularGraph => {
                let d = self
                    .degree
                    .ok_or_else(|| Error::InvalidInstance("regular_graph needs a degree".into()))?;
                if d >= self.n || (d * self.n) % 2 == 1 {
                    return Err(Error::InvalidInstance(format!(
                        "no simple {d}-regular graph on {} vertices",
                        self.n
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Attempts of the pairing model before giving up.
const PAIRING_ATTEMPTS: usize = 10_000;

pub fn generate(spec: &InstanceSpec) -> Result<SparseSymMatrix> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = stream_rng(spec.seed, 0);
    match spec.kind {
        InstanceKind::Gaussian => {
            let mut entries = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    entries.push((i, j, rng.sample::<f64, _>(StandardNormal)));
                }
            }
            for i in 0..n {
                let v: f64 = rng.sample(StandardNormal);
                if !spec.zero_diagonal {
                    entries.push((i, i, v));
                }
            }
            SparseSymMatrix::from_entries(n, entries)
        }
        InstanceKind::SparsePm1 => {
            let s = spec.s.unwrap_or(1);
            let mut deg = alloc::vec![0usize; n];
            let mut edges = BTreeSet::new();
            let mut entries = Vec::new();
            for i in 0..n {
                let mut attempts = 0;
                while deg[i] < s && attempts < 64 * s {
                    attempts += 1;
                    let j = rng.random_range(0..n);
                    let key = (i.min(j), i.max(j));
                    if edges.contains(&key) || (i != j && deg[j] >= s) {
                        continue;
                    }
                    edges.insert(key);
                    let v = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    entries.push((key.0, key.1, v));
                    deg[i] += 1;
                    if i != j {
                        deg[j] += 1;
                    }
                }
            }
            SparseSymMatrix::from_entries(n, entries)
        }
        InstanceKind::RegularGraph => {
            let d = spec.degree.unwrap_or(0);
            let mut stubs: Vec<usize> =
                (0..n).flat_map(|v| core::iter::repeat(v).take(d)).collect();
            'attempt: for _ in 0..PAIRING_ATTEMPTS {
                stubs.shuffle(&mut rng);
                let mut edges = BTreeSet::new();
                for pair in stubs.chunks(2) {
                    let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                    if u == v || !edges.insert((u, v)) {
                        continue 'attempt;
                    }
                }
                return SparseSymMatrix::from_entries(
                    n,
                    edges.into_iter().map(|(u, v)| (u, v, 1.0)),
                );
            }
            Err(Error::InvalidInstance(format!(
                "pairing model found no simple {d}-regular graph on {n} vertices"
            )))
        }
        InstanceKind::PsdGram => {
            let b: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
            let mut entries = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    let v: f64 = (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum();
                    entries.push((i, j, v));
                }
            }
            SparseSymMatrix::from_entries(n, entries)
        }
        InstanceKind::File => Err(Error::InvalidInstance(
            "file instances are read from disk, not generated".into(),
        )),
    }
}

/// `rows × cols` matrix of i.i.d. standard normal entries, row-major draw.
pub fn gaussian_raw(rows: usize, cols: usize, seed: u64) -> Result<CooMatrix> {
    let mut rng = stream_rng(seed, 0);
    let data: Vec<f64> = (0..rows * cols)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    CooMatrix::from_row_major(rows, cols, &data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vertex_two_regular_is_a_cycle() {
        for seed in 0..10 {
            let a = generate(&InstanceSpec::regular_graph(4, 2, seed)).unwrap();
            for i in 0..4 {
                assert_eq!(a.row(i).count(), 2);
                assert_eq!(a.get(i, i), 0.0);
                assert_eq!(a.row(i).map(|(_, v)| v).sum::<f64>(), 2.0);
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&InstanceSpec::regular_graph(5, 3, 0)).is_err());
        assert!(generate(&InstanceSpec::regular_graph(4, 4, 0)).is_err());
        assert!(generate(&InstanceSpec::sparse_pm1(4, 5, 0)).is_err());
        assert!(generate(&InstanceSpec::gaussian(0, 0)).is_err());
        assert!(generate(&InstanceSpec::new(InstanceKind::File, 3, 0)).is_err());
    }

    #[test]
    fn sparse_rows_bounded() {
        let a = generate(&InstanceSpec::sparse_pm1(40, 3, 11)).unwrap();
        assert!(a.sparsity() <= 3);
        assert!(a.entries().iter().all(|e| e.2 == 1.0 || e.2 == -1.0));
        assert!(a.nnz() >= 40 * 2);
    }

    #[test]
    fn deterministic_per_seed() {
        let s = InstanceSpec::gaussian(12, 3);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        assert_ne!(
            generate(&s).unwrap(),
            generate(&InstanceSpec::gaussian(12, 4)).unwrap()
        );
    }
}

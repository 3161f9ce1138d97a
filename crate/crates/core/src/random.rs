//! Random states and unitaries for property checks.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).unwrap()
}

/// Haar-random unitary via Gram–Schmidt on a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<C64> = (0..n).map(|r| g[(r, j)]).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            u[(r, j)] = z;
        }
    }
    u
}

/// Random density matrix `G G† / Tr(G G†)` with `G` of shape `n × rank`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, rank.max(1));
    let m = g.matmul(&g.dagger());
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

/// Random normalized pure-state vector.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
    crate::linalg::normalize(&v)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    (&g + &g.dagger()).scale_real(0.5)
}

/// Random (generally non-Hermitian) operator.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ginibre(rng, n, n)
}

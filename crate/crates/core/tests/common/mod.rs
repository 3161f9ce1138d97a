#![allow(dead_code)]

use densecode::linalg::{ComplexMatrix, C64};
use densecode::random::{haar_unitary, random_density};
use densecode::states::{make_state, parties, MultipartiteState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random state of random rank on the given parties.
pub fn random_state(rng: &mut ChaCha8Rng, spec: &[(&str, usize)]) -> MultipartiteState {
    let n: usize = spec.iter().map(|(_, d)| d).product();
    let rank = rng.random_range(1..=n);
    make_state(parties(spec), random_density(rng, n, rank)).unwrap()
}

pub fn random_local_unitaries(rng: &mut ChaCha8Rng, s: &MultipartiteState) -> MultipartiteState {
    let mut out = s.clone();
    for (i, p) in s.parties().iter().enumerate() {
        out = out.apply_local(&haar_unitary(rng, p.dim), &[i]).unwrap();
    }
    out
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
/// embedding `[[Re, −Im], [Im, Re]]`, which carries every eigenvalue twice.
/// Independent of the library eigensolver.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let k = 2 * n;
    let mut a = vec![vec![0.0f64; k]; k];
    for r in 0..n {
        for c in 0..n {
            let z = m[(r, c)];
            a[r][c] = z.re;
            a[r + n][c + n] = z.re;
            a[r][c + n] = -z.im;
            a[r + n][c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let (arp, arq) = (a[r][p], a[r][q]);
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for r in 0..k {
                    let (apr, aqr) = (a[p][r], a[q][r]);
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..k).map(|i| a[i][i]).collect();
    d.sort_by(f64::total_cmp);
    d.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Entropy in bits from the Jacobi spectrum.
pub fn oracle_entropy(m: &ComplexMatrix) -> f64 {
    jacobi_eigenvalues(m)
        .into_iter()
        .filter(|&x| x > 1e-12)
        .map(|x| -x * x.log2())
        .sum()
}

pub fn oracle_shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

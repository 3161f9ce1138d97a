//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

// `!(a < b)` is deliberate: a NaN must fail a check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::process::ExitCode;

use common::*;
use densecode::capacity::{
    capacity_global, capacity_single_receiver, lo_capacity, locc_upper_bound, split_entropies,
    two_copy_chi, werner_dc_threshold,
};
use densecode::criteria::{classify, is_ppt, ClassifyOptions, ProtocolRegistry, Shell};
use densecode::encoding::{
    ghz4_ensemble, ghz4_listed_states, ghz4_locc_decode, ghz4_protocol_information,
    parity_projectors, phase_fidelity, projective_measure, weyl_encoding, GHZ4_ENCODINGS,
};
use densecode::info::{chi_locc, entropy, holevo_chi, Ensemble};
use densecode::linalg::{hermitian_eigenvalues, C64};
use densecode::states::{
    bell, frank_state, ghz, parties, singlet, singlet_pair, smolin, werner, Bipartition,
    DenseCodingLayout, MultipartiteState,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn single(senders: &[&str], receiver: &str) -> Result<DenseCodingLayout, String> {
    e(DenseCodingLayout::single(senders, receiver))
}

/// Root of `S(ρ_p) = 1` from the closed-form Werner spectrum.
fn werner_root_oracle() -> f64 {
    let s = |p: f64| {
        oracle_shannon(&[
            (1.0 + 3.0 * p) / 4.0,
            (1.0 - p) / 4.0,
            (1.0 - p) / 4.0,
            (1.0 - p) / 4.0,
        ])
    };
    let (mut lo, mut hi) = (1.0 / 3.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if s(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn werner_threshold() -> Outcome {
    let r = e(werner_dc_threshold())?;
    check!(
        r.root > 0.74755 && r.root < 0.74765,
        "root {} outside [0.74755, 0.74765]",
        r.root
    );
    let s = e(entropy(&e(werner(r.root))?))?;
    check!(
        (s - 1.0).abs() <= 1e-6,
        "residual |S - 1| = {}",
        (s - 1.0).abs()
    );
    let oracle = werner_root_oracle();
    check!(
        (r.root - oracle).abs() < 1e-9,
        "root {} vs closed-form oracle {oracle}",
        r.root
    );
    Ok(format!(
        "p* = {:.7}, |S(p*) - 1| = {:.1e}",
        r.root,
        (s - 1.0).abs()
    ))
}

fn werner_distillability() -> Outcome {
    let cut = e(Bipartition::new(vec![0], vec![1], 2))?;
    let third = 1.0 / 3.0;
    let mut mins = Vec::new();
    for p in [third - 1e-6, third + 1e-6] {
        let w = e(werner(p))?;
        let lib = e(is_ppt(&w, &cut, 1e-12))?.min_eigenvalue;
        let analytic = (1.0 - 3.0 * p) / 4.0;
        let pt = e(w.partial_transpose(&[1]))?;
        let oracle = jacobi_eigenvalues(&pt)[0];
        check!(
            (lib - analytic).abs() < 1e-12,
            "p = {p}: eigensolver {lib} vs analytic {analytic}"
        );
        check!(
            (oracle - analytic).abs() < 1e-12,
            "p = {p}: Jacobi {oracle} vs analytic {analytic}"
        );
        mins.push(lib);
    }
    check!(mins[0] > 0.0 && mins[1] < 0.0, "no sign change: {mins:?}");
    // linear interpolation of the two eigensolver values locates the root
    let root = third - 1e-6 + 2e-6 * mins[0] / (mins[0] - mins[1]);
    check!((root - third).abs() < 1e-9, "interpolated root {root}");
    Ok(format!(
        "min PT eigenvalue {:+.3e} / {:+.3e}, root at 1/3 {:+.1e}",
        mins[0],
        mins[1],
        root - third
    ))
}

fn singlet_capacity() -> Outcome {
    let c = e(capacity_single_receiver(&singlet(), &single(&["A"], "B")?))?;
    check!((c.capacity - 2.0).abs() < 1e-9, "capacity {}", c.capacity);
    Ok(format!("C = {:.12}", c.capacity))
}

fn ghz4_locc() -> Outcome {
    let bound = e(locc_upper_bound(
        &e(ghz(4))?,
        &DenseCodingLayout::four_qubit(),
    ))?;
    check!((bound - 3.0).abs() < 1e-9, "bound {bound}");
    let mut decoded = 0;
    for (k, target) in GHZ4_ENCODINGS.iter().enumerate() {
        let records = e(ghz4_locc_decode(k))?;
        if records
            .iter()
            .all(|r| r.decoded == vec![target.0, target.1])
        {
            decoded += 1;
        }
    }
    check!(decoded == 8, "decoded {decoded}/8");
    let mi = e(ghz4_protocol_information())?;
    check!((mi - 3.0).abs() < 1e-9, "mutual information {mi}");
    let listed = ghz4_listed_states();
    let parity = parity_projectors();
    let mut worst: f64 = 1.0;
    for ((_, s), psi) in ghz4_ensemble().items().iter().zip(&listed) {
        for r1 in e(projective_measure(s, &parity, &[0, 1]))? {
            for r2 in e(projective_measure(&r1.post_state, &parity, &[2, 3]))? {
                let p = r1.probability * r2.probability;
                check!(
                    (p - 1.0).abs() < 1e-9,
                    "rounds 1-2 branch of probability {p}"
                );
                worst = worst.min(phase_fidelity(r2.post_state.matrix(), psi));
            }
        }
    }
    check!(worst >= 1.0 - 1e-9, "fidelity after rounds 1-2: {worst}");
    Ok(format!(
        "bound {bound:.9}, 8/8 decoded, I = {mi:.9}, min fidelity {worst:.12}"
    ))
}

fn ghz4_structure() -> Outcome {
    let ensemble = ghz4_ensemble();
    let listed = ghz4_listed_states();
    let mut worst: f64 = 1.0;
    for ((_, s), psi) in ensemble.items().iter().zip(&listed) {
        worst = worst.min(phase_fidelity(s.matrix(), psi));
    }
    check!(worst >= 1.0 - 1e-9, "overlap {worst}");
    let mut gram_err: f64 = 0.0;
    for (i, (_, a)) in ensemble.items().iter().enumerate() {
        for (j, (_, b)) in ensemble.items().iter().enumerate() {
            let g = a.matrix().hs_inner(b.matrix()).norm();
            gram_err = gram_err.max((g - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    check!(gram_err < 1e-9, "Gram deviation {gram_err}");
    Ok(format!(
        "min |overlap|^2 {worst:.12}, Gram deviation {gram_err:.1e}"
    ))
}

fn basis(bits: usize) -> Result<MultipartiteState, String> {
    let mut v = vec![C64::new(0.0, 0.0); 4];
    v[bits] = C64::new(1.0, 0.0);
    e(MultipartiteState::pure(
        parties(&[("B1", 2), ("B2", 2)]),
        &v,
    ))
}

fn chi_examples() -> Outcome {
    let cut = e(Bipartition::new(vec![0], vec![1], 2))?;
    let product = e(Ensemble::new(vec![(0.5, basis(0)?), (0.5, basis(3)?)]))?;
    let (c1, l1) = (e(holevo_chi(&product))?, e(chi_locc(&product, &cut))?);
    check!(
        (c1 - 1.0).abs() < 1e-9 && (l1 - 2.0).abs() < 1e-9,
        "|00>,|11>: chi {c1}, chi_locc {l1}"
    );

    let bells = |p: [f64; 4]| -> Result<Ensemble, String> {
        e(Ensemble::new(
            (0..4)
                .map(|k| Ok((p[k], e(bell(k))?)))
                .collect::<Result<_, String>>()?,
        ))
    };
    let uniform = bells([0.25; 4])?;
    let (c2, l2) = (e(holevo_chi(&uniform))?, e(chi_locc(&uniform, &cut))?);
    check!(
        (c2 - 2.0).abs() < 1e-9 && (l2 - 1.0).abs() < 1e-9,
        "Bell uniform: chi {c2}, chi_locc {l2}"
    );

    let p = [0.4, 0.3, 0.2, 0.1];
    let skewed = bells(p)?;
    let (c3, l3) = (e(holevo_chi(&skewed))?, e(chi_locc(&skewed, &cut))?);
    let h = oracle_shannon(&p);
    check!(
        (c3 - h).abs() < 1e-9 && (h - 1.8464).abs() < 1e-4,
        "Bell skewed: chi {c3} vs H(p) {h}"
    );
    check!((l3 - 1.0).abs() < 1e-9, "Bell skewed: chi_locc {l3}");
    Ok(format!(
        "(chi, chi_locc) = ({c1:.6}, {l1:.6}), ({c2:.6}, {l2:.6}), ({c3:.6}, {l3:.6})"
    ))
}

fn smolin_state() -> Outcome {
    let s = smolin();
    let c = e(capacity_single_receiver(
        &s,
        &single(&["A1", "A2", "B1"], "B2")?,
    ))?;
    check!(
        (c.raw_excess + 1.0).abs() < 1e-9,
        "raw excess {}",
        c.raw_excess
    );
    check!((c.capacity - 3.0).abs() < 1e-9, "capacity {}", c.capacity);
    let (mut ppt, mut npt) = (0, 0);
    for cut in Bipartition::all(4) {
        let r = e(is_ppt(&s, &cut, 1e-9))?;
        let oracle = jacobi_eigenvalues(&e(s.partial_transpose(cut.second()))?)[0];
        check!(
            (r.min_eigenvalue - oracle).abs() < 1e-9,
            "{}: {} vs oracle {oracle}",
            cut.describe(&s),
            r.min_eigenvalue
        );
        match cut.first().len() {
            2 => {
                check!(r.ppt, "{} should be PPT", cut.describe(&s));
                ppt += 1;
            }
            _ => {
                check!(
                    !r.ppt && oracle < -1e-9,
                    "{} should be NPT",
                    cut.describe(&s)
                );
                npt += 1;
            }
        }
    }
    check!(ppt == 3 && npt == 4, "{ppt} PPT and {npt} NPT cuts");
    Ok(format!(
        "raw excess {:.9}, C = {:.9}, PPT on 3 cuts of 2:2, NPT on 4 cuts of 1:3",
        c.raw_excess, c.capacity
    ))
}

fn lo_example() -> Outcome {
    let s = singlet_pair();
    let l = DenseCodingLayout::four_qubit();
    let lo = e(lo_capacity(&s, &l))?;
    check!(
        (lo.capacity - 4.0).abs() < 1e-9,
        "lo capacity {}",
        lo.capacity
    );
    let r = e(classify(
        &s,
        &l,
        &ProtocolRegistry::default(),
        ClassifyOptions::default(),
    ))?;
    check!(r.shell == Shell::LoDc, "shell {}", r.shell);
    Ok(format!("C_LO = {:.9}, shell {}", lo.capacity, r.shell))
}

fn achievability() -> Outcome {
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let (da, db) = (r.random_range(2..4), r.random_range(2..4));
        let s = random_state(&mut r, &[("A", da), ("B", db)]);
        let l = single(&["A"], "B")?;
        let c = e(capacity_single_receiver(&s, &l))?;
        let chi = e(holevo_chi(&e(weyl_encoding(&s, &l))?))?;
        worst = worst.max((chi - c.classical_baseline - c.raw_excess).abs());
    }
    for _ in 0..10 {
        let s = random_state(&mut r, &[("A1", 2), ("A2", 2), ("B", 2)]);
        let l = single(&["A1", "A2"], "B")?;
        let c = e(capacity_single_receiver(&s, &l))?;
        let chi = e(holevo_chi(&e(weyl_encoding(&s, &l))?))?;
        worst = worst.max((chi - c.classical_baseline - c.raw_excess).abs());
    }
    check!(worst < 1e-9, "max deviation {worst}");
    Ok(format!("35 states, max |chi - closed form| = {worst:.1e}"))
}

fn additivity() -> Outcome {
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let s = random_state(&mut r, &[("A", 2), ("B", 2)]);
        let l = single(&["A"], "B")?;
        let c = e(capacity_single_receiver(&s, &l))?;
        worst = worst.max((e(two_copy_chi(&s, &l))? - c.classical_baseline - c.raw_excess).abs());
    }
    check!(worst < 1e-9, "max deviation {worst}");
    Ok(format!(
        "10 states, max |two-copy - single-copy| = {worst:.1e}"
    ))
}

fn bound_identity() -> Outcome {
    let mut r = rng(11);
    let l = DenseCodingLayout::four_qubit();
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let s = random_state(&mut r, &[("A1", 2), ("A2", 2), ("B1", 2), ("B2", 2)]);
        let split = e(split_entropies(&s, &l))?;
        let gap = e(locc_upper_bound(&s, &l))? - e(lo_capacity(&s, &l))?.raw;
        worst = worst.max((gap - split.side_one.min(split.side_two)).abs());
    }
    check!(worst < 1e-9, "max deviation {worst}");
    Ok(format!("25 states, max deviation {worst:.1e}"))
}

fn mixture_closure() -> Outcome {
    let mut r = rng(12);
    let l = DenseCodingLayout::four_qubit();
    let spec = [("A1", 2), ("A2", 2), ("B1", 2), ("B2", 2)];
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100 {
        let mut draw = || -> Result<MultipartiteState, String> {
            loop {
                let s = random_state(&mut r, &spec);
                if e(capacity_global(&s, &l))?.raw_excess <= 0.0 {
                    return Ok(s);
                }
            }
        };
        let (a, b) = (draw()?, draw()?);
        let lambda: f64 = r.random();
        let m = e(a.mix(&b, lambda))?;
        worst = worst.max(e(capacity_global(&m, &l))?.raw_excess);
    }
    check!(worst <= 1e-9, "mixture with excess {worst}");
    Ok(format!("100 trials, max mixture excess {worst:.6}"))
}

fn frank() -> Outcome {
    let s = frank_state();
    let l = DenseCodingLayout::four_qubit();
    let g = e(capacity_global(&s, &l))?;
    let oracle =
        2.0 + oracle_entropy(e(s.marginal(&[2, 3]))?.matrix()) - oracle_entropy(s.matrix());
    check!((g.capacity - 3.5).abs() < 1e-9, "C_G = {}", g.capacity);
    check!(
        (g.capacity - oracle).abs() < 1e-9,
        "C_G = {} vs oracle {oracle}",
        g.capacity
    );
    let ket_order = e(locc_upper_bound(&s, &l))?;
    let paired = e(s.relabel(&["A1", "B1", "A2", "B2"]))?;
    let pair_order = e(locc_upper_bound(&paired, &l))?;
    let spectrum = e(hermitian_eigenvalues(s.matrix()))?;
    check!(
        spectrum.iter().filter(|&&x| x > 1e-9).count() == 1,
        "Frank state not pure"
    );
    Ok(format!(
        "C_G = {:.9}; LOCC bound {ket_order:.6} (ket order A1 A2 B1 B2), {pair_order:.6} (A1 B1 A2 B2)",
        g.capacity
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Werner dense-coding threshold", werner_threshold),
        ("Werner distillability boundary", werner_distillability),
        ("singlet capacity", singlet_capacity),
        ("GHZ4 LOCC protocol", ghz4_locc),
        ("GHZ4 ensemble structure", ghz4_structure),
        ("chi vs chi_locc examples", chi_examples),
        ("Smolin state", smolin_state),
        ("LO example", lo_example),
        ("achievability identity", achievability),
        ("two-copy additivity", additivity),
        ("bound identity", bound_identity),
        ("mixture closure", mixture_closure),
        ("Frank state", frank),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

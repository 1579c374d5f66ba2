use num_complex::Complex64;
use qnlp_core::sim::{Control, Matrix2, Register, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Dense = Vec<Vec<Complex64>>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Full `2^q × 2^q` matrix of a controlled one-qubit gate.
#[allow(clippy::needless_range_loop)]
fn dense_gate(q: usize, controls: &[Control], target: usize, u: &Matrix2) -> Dense {
    let dim = 1 << q;
    let mut m = vec![vec![c(0.0); dim]; dim];
    for col in 0..dim {
        let active = controls
            .iter()
            .all(|ctl| ((col >> ctl.qubit) & 1 == 1) == ctl.on);
        if !active {
            m[col][col] = c(1.0);
            continue;
        }
        let tb = (col >> target) & 1;
        for out_bit in 0..2 {
            let row = (col & !(1 << target)) | (out_bit << target);
            m[row][col] = u.0[out_bit][tb];
        }
    }
    m
}

fn matvec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn random_state(q: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1 << q)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    v
}

fn random_unitary(rng: &mut ChaCha8Rng) -> Matrix2 {
    match rng.gen_range(0..4) {
        0 => Matrix2::pauli_x(),
        1 => Matrix2::hadamard(),
        _ => {
            let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let r = Matrix2::ry(rng.gen_range(-6.0..6.0));
            Matrix2([
                [r.0[0][0], r.0[0][1] * phase],
                [r.0[1][0], r.0[1][1] * phase],
            ])
        }
    }
}

/// Picks distinct qubits: the target first, then up to three controls.
fn random_gate(q: usize, rng: &mut ChaCha8Rng) -> (Vec<Control>, usize, Matrix2) {
    let mut qubits: Vec<usize> = (0..q).collect();
    for i in (1..q).rev() {
        qubits.swap(i, rng.gen_range(0..=i));
    }
    let k = rng.gen_range(0..q.min(4));
    let controls = qubits[1..=k]
        .iter()
        .map(|&qb| Control {
            qubit: qb,
            on: rng.gen_bool(0.7),
        })
        .collect();
    (controls, qubits[0], random_unitary(rng))
}

#[test]
fn gates_match_dense_matrices_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in 1..=6 {
        for _ in 0..40 {
            let v = random_state(q, &mut rng);
            let mut sv = StateVector::from_amplitudes(v.clone()).unwrap();
            let (controls, target, u) = random_gate(q, &mut rng);
            sv.apply_controlled_u(&controls, target, &u).unwrap();
            let want = matvec(&dense_gate(q, &controls, target, &u), &v);
            assert!(max_diff(sv.amplitudes(), &want) < 1e-12);
        }
    }
}

#[test]
fn sparse_states_match_dense_matrices_through_long_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in 2..=6 {
        let start = rng.gen_range(0..1usize << q);
        let mut sv = StateVector::basis(q, start).unwrap();
        let mut v = vec![c(0.0); 1 << q];
        v[start] = c(1.0);
        for _ in 0..60 {
            let (controls, target, u) = random_gate(q, &mut rng);
            sv.apply_controlled_u(&controls, target, &u).unwrap();
            v = matvec(&dense_gate(q, &controls, target, &u), &v);
            assert!(max_diff(sv.amplitudes(), &v) < 1e-12);
        }
    }
}

#[test]
fn sparse_and_dense_paths_agree() {
    // A layer of Hadamards applied twice returns to the basis state but
    // leaves the vector in full-sweep mode.
    let q = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let gates: Vec<_> = (0..80).map(|_| random_gate(q, &mut rng)).collect();

    let mut sparse = StateVector::basis(q, 5).unwrap();
    let mut dense = StateVector::basis(q, 5).unwrap();
    for qb in 0..q {
        dense.apply_h(qb).unwrap();
    }
    assert_eq!(dense.support_len(), None);
    for qb in 0..q {
        dense.apply_h(qb).unwrap();
    }
    assert_eq!(dense.support_len(), None);
    let mut v = sparse.amplitudes().to_vec();
    for (controls, target, u) in &gates {
        sparse.apply_controlled_u(controls, *target, u).unwrap();
        dense.apply_controlled_u(controls, *target, u).unwrap();
        v = matvec(&dense_gate(q, controls, *target, u), &v);
    }
    assert!(max_diff(sparse.amplitudes(), &v) < 1e-12);
    assert!(max_diff(dense.amplitudes(), &v) < 1e-12);
}

#[test]
fn doubly_controlled_u_from_controlled_square_roots() {
    // C²U = CV(c1) · CX(c0→c1) · CV†(c1) · CX(c0→c1) · CV(c0) with V² = U:
    // three singly controlled gates and two CNOTs, five two-qubit calls.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let theta = rng.gen_range(-6.0..6.0);
        let u = Matrix2::ry(theta);
        let v = Matrix2::ry(theta / 2.0);
        let amps = random_state(3, &mut rng);

        let mut direct = StateVector::from_amplitudes(amps.clone()).unwrap();
        direct
            .apply_controlled_u(&[Control::set(0), Control::set(1)], 2, &u)
            .unwrap();

        let mut built = StateVector::from_amplitudes(amps).unwrap();
        built.apply_controlled_u(&[Control::set(1)], 2, &v).unwrap();
        built.apply_cx(0, 1).unwrap();
        built
            .apply_controlled_u(&[Control::set(1)], 2, &v.adjoint())
            .unwrap();
        built.apply_cx(0, 1).unwrap();
        built.apply_controlled_u(&[Control::set(0)], 2, &v).unwrap();

        assert!(max_diff(direct.amplitudes(), built.amplitudes()) < 1e-12);
        assert_eq!(built.gate_counter().two_qubit_calls, 5);
        assert_eq!(direct.gate_counter().two_qubit_calls, 5);
    }
}

#[test]
fn ncx_matches_dense_oracle_with_dirty_scratch() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 0..=5usize {
        let scratch_n = k.saturating_sub(2);
        let q = k + 1 + scratch_n;
        if q > 9 {
            continue;
        }
        let controls: Vec<usize> = (0..k).collect();
        let target = k;
        let scratch: Vec<usize> = (k + 1..q).collect();
        for _ in 0..5 {
            let v = random_state(q, &mut rng);
            let mut sv = StateVector::from_amplitudes(v.clone()).unwrap();
            sv.apply_ncx(&controls, target, &scratch).unwrap();
            let ctl: Vec<Control> = controls.iter().map(|&q| Control::set(q)).collect();
            let want = matvec(&dense_gate(q, &ctl, target, &Matrix2::pauli_x()), &v);
            assert!(max_diff(sv.amplitudes(), &want) < 1e-12, "k = {k}");
            if k >= 3 {
                assert_eq!(
                    sv.gate_counter().native.get("c2-x"),
                    Some(&(4 * (k as u64 - 2)))
                );
            }
        }
    }
}

#[test]
fn ncx_twice_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let q = 9;
    let v = random_state(q, &mut rng);
    let mut sv = StateVector::from_amplitudes(v.clone()).unwrap();
    let controls = [0, 2, 4, 6, 8];
    let scratch = [1, 3, 5];
    sv.apply_ncx(&controls, 7, &scratch).unwrap();
    sv.apply_ncx(&controls, 7, &scratch).unwrap();
    assert!(max_diff(sv.amplitudes(), &v) < 1e-12);
}

#[test]
fn ncx_rejects_bad_wiring() {
    let mut sv = StateVector::new(6).unwrap();
    assert!(sv.apply_ncx(&[0, 1, 2, 3], 4, &[5]).is_err());
    assert!(sv.apply_ncx(&[0, 1, 2], 3, &[2]).is_err());
    assert!(sv.apply_ncx(&[0, 1, 2], 9, &[5]).is_err());
}

#[test]
fn norm_is_preserved_over_many_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let q = 8;
    let mut sv = StateVector::from_amplitudes(random_state(q, &mut rng)).unwrap();
    for _ in 0..1000 {
        let (controls, target, u) = random_gate(q, &mut rng);
        sv.apply_controlled_u(&controls, target, &u).unwrap();
    }
    assert!((sv.norm_sqr() - 1.0).abs() < 1e-10);
}

#[test]
fn post_selection_and_marginals() {
    let mut sv = StateVector::new(3).unwrap();
    sv.apply_h(0).unwrap();
    sv.apply_cx(0, 1).unwrap();
    sv.apply_ry(2, 1.0).unwrap();
    let p = sv.post_select(0, true).unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    let m = sv
        .marginal(Register {
            offset: 0,
            width: 2,
        })
        .unwrap();
    assert!((m[3] - 1.0).abs() < 1e-12);
    assert!(sv.post_select(1, false).is_err());
    assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn sampling_is_seeded() {
    let mut sv = StateVector::new(4).unwrap();
    for q in 0..4 {
        sv.apply_h(q).unwrap();
    }
    let reg = Register {
        offset: 0,
        width: 4,
    };
    let a = sv.sample_register(reg, 1000, 7).unwrap();
    let b = sv.sample_register(reg, 1000, 7).unwrap();
    let c = sv.sample_register(reg, 1000, 8).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.counts.values().sum::<u64>(), 1000);
}

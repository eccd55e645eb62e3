//! Property tests over random exact inputs.

mod common;

use common::*;
use jordanable::equations::{
    lambda_comm_jordan, nilpotent_intertwiners, p_matrix, solve_inhom_comm, solve_transpose_pair, u_matrix,
    v_matrix, w_matrix,
};
use jordanable::exactfield::rational::{frac, int};
use jordanable::jordan::{canonical_form, jordan_block, multiplicity_of, similarity_transform};
use jordanable::liealg::{classify_iso, derivation_space};
use jordanable::multiplicity::projectively_equal;
use jordanable::oracle::{brute_solve_with, random_instance, random_unimodular, EquationSpec, Profile};
use jordanable::spectrum::{companion, minimal_polynomial};
use jordanable::wire::{aleph_from_json, aleph_to_json, matrix_from_json, matrix_to_json};
use jordanable::{AlmostAbelianAlgebra, Convention, Error, Matrix, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_profile() -> Profile {
    Profile { max_dim: 6, ..Profile::default() }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(rational(), rows * cols).prop_map(move |v| Matrix::unvec(rows, cols, &v))
}

fn lambda() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![int(-1), int(2), frac(1, 3), int(-3), frac(3, 2)])
}

fn spectrum_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["X", "X - 1", "X + 2", "X^2 + 1", "X^2 + X + 1", "X^3 - 2"])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn vec_of_product_is_kronecker(a in matrix(2, 3), x in matrix(3, 2), b in matrix(2, 3)) {
        let lhs = (&(&a * &x) * &b).vec();
        let rhs = b.transpose().kron(&a).mul_vec(&x.vec());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(Matrix::unvec(3, 2, &x.vec()), x);
    }

    #[test]
    fn unimodular_inverse_is_integral(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_unimodular(&mut rng, n, 3);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(&s * &inv, Matrix::identity(n));
        prop_assert!(inv.to_rows().iter().flatten().all(Rational::is_integer));
    }

    #[test]
    fn rank_nullity(a in matrix(3, 5)) {
        let red = jordanable::exactfield::row_reduce(&a);
        let kernel = red.kernel_basis();
        prop_assert_eq!(red.rank() + kernel.len(), 5);
        for v in kernel {
            prop_assert!(a.mul_vec(&v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn star_is_an_action(p in spectrum_name(), l in lambda(), m in lambda()) {
        let p = ip(p);
        let lm = &l * &m;
        prop_assert_eq!(p.star(&lm).unwrap(), p.star(&m).unwrap().star(&l).unwrap());
        prop_assert_eq!(p.star(&int(1)).unwrap(), p.clone());
        prop_assert_eq!(p.star(&l).unwrap().degree(), p.degree());
    }

    #[test]
    fn companion_has_its_polynomial(p in spectrum_name()) {
        let p = ip(p);
        let x = companion(&p, Convention::Standard).unwrap().matrix;
        prop_assert_eq!(&minimal_polynomial(&x).unwrap(), p.poly());
    }

    #[test]
    fn star_preserves_dimension_and_support(seed in any::<u64>(), l in lambda()) {
        let a = random_instance(seed, &small_profile()).unwrap().aleph;
        let b = a.star(&l).unwrap();
        prop_assert_eq!(b.dim(), a.dim());
        prop_assert_eq!(b.supp().len(), a.supp().len());
        prop_assert_eq!(b.star(&l.recip()).unwrap(), a);
    }

    #[test]
    fn projective_witnesses_are_symmetric(seed in any::<u64>(), l in lambda()) {
        let a = random_instance(seed, &small_profile()).unwrap().aleph;
        let b = a.star(&l).unwrap();
        let forward = projectively_equal(&a, &b).unwrap();
        let backward = projectively_equal(&b, &a).unwrap();
        prop_assert_eq!(a.star(&forward).unwrap(), b.clone());
        prop_assert_eq!(b.star(&backward).unwrap(), a.clone());
        // forward·backward fixes a, so it is a dilation symmetry
        prop_assert_eq!(a.star(&(&forward * &backward)).unwrap(), a);
    }

    #[test]
    fn multiplicity_round_trip(seed in any::<u64>()) {
        let inst = random_instance(seed, &small_profile()).unwrap();
        prop_assert_eq!(multiplicity_of(&inst.t, &[]).unwrap(), inst.aleph.clone());
        let (s, form) = similarity_transform(&inst.t, &[]).unwrap();
        prop_assert_eq!(&(&s * &inst.t) * &s.inverse().unwrap(), form.matrix);
    }

    #[test]
    fn multiplicity_is_conjugation_invariant(seed in any::<u64>(), other in any::<u64>()) {
        let inst = random_instance(seed, &small_profile()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(other);
        let r = random_unimodular(&mut rng, inst.t.rows(), 2);
        let conj = &(&r.inverse().unwrap() * &inst.t) * &r;
        prop_assert_eq!(multiplicity_of(&conj, &[]).unwrap(), inst.aleph);
    }

    #[test]
    fn scaling_pushes_multiplicity_forward(seed in any::<u64>(), l in lambda()) {
        let inst = random_instance(seed, &small_profile()).unwrap();
        prop_assert_eq!(
            multiplicity_of(&inst.t.scale(&l), &[]).unwrap(),
            inst.aleph.star(&l).unwrap()
        );
    }

    #[test]
    fn structural_identities(n in 1usize..7, p in spectrum_name(), l in lambda()) {
        let nn = Matrix::shift(n);
        let u = u_matrix(n);
        prop_assert_eq!(&(&u * &nn) - &(&nn * &u), nn.clone());
        prop_assert_eq!(&p_matrix(n) * &nn, &nn.transpose() * &p_matrix(n));
        let p = ip(p);
        let x = companion(&p, Convention::Standard).unwrap().matrix;
        let w = w_matrix(&p, Convention::Standard).unwrap();
        prop_assert_eq!(&w * &x, &x.transpose() * &w);
        let s = Convention::Standard.dilation_scalar(&l);
        let v = v_matrix(n, &l.recip()).unwrap().kron(&v_matrix(p.degree(), &s).unwrap());
        let j = jordan_block(&p, n, Convention::Standard).unwrap();
        let j_star = jordan_block(&p.star(&l).unwrap(), n, Convention::Standard).unwrap();
        prop_assert_eq!((&j * &v).scale(&l), &v * &j_star);
    }

    #[test]
    fn nilpotent_intertwiners_match_oracle(m in 1usize..6, n in 1usize..6) {
        let s = nilpotent_intertwiners(m, n);
        let brute = brute_solve_with(
            &EquationSpec::Intertwine { t1: Matrix::shift(m), t2: Matrix::shift(n) },
            &oracle(),
        ).unwrap().unwrap();
        prop_assert_eq!(s.dim(), m.min(n));
        prop_assert!(s.same_span(&brute));
    }

    #[test]
    fn structured_solvers_match_oracle(seed in any::<u64>(), l in lambda()) {
        let aleph = random_instance(seed, &Profile { max_dim: 5, ..Profile::default() }).unwrap().aleph;
        let form = canonical_form(&aleph, Convention::Standard).unwrap();
        let j = form.matrix.clone();
        let structured = lambda_comm_jordan(&form, &l).unwrap();
        let brute = brute_solve_with(&EquationSpec::LambdaComm { t: j.clone(), lambda: l }, &oracle())
            .unwrap().unwrap();
        prop_assert!(structured.same_span(&brute));
        let z = solve_transpose_pair(&aleph, Convention::Standard).unwrap();
        let brute = brute_solve_with(&EquationSpec::TransposePair { j: j.clone() }, &oracle()).unwrap().unwrap();
        prop_assert!(z.same_span(&brute));
        let inhom = solve_inhom_comm(&j, &[]).unwrap();
        let brute = brute_solve_with(&EquationSpec::InhomComm { t: j }, &oracle()).unwrap();
        prop_assert_eq!(inhom.is_some(), brute.is_some());
        if let (Some(a), Some(b)) = (inhom, brute) {
            prop_assert!(a.same_span(&b));
        }
    }

    #[test]
    fn classification_witness_is_valid(seed in any::<u64>(), other in any::<u64>(), l in lambda()) {
        let inst = random_instance(seed, &small_profile()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(other);
        let r = random_unimodular(&mut rng, inst.t.rows(), 2);
        let t2 = &(&r.inverse().unwrap() * &inst.t.scale(&l)) * &r;
        let w = classify_iso(&inst.t, &t2, &[]).unwrap().unwrap();
        prop_assert_eq!((&w.matrix * &inst.t).scale(&w.lambda), &t2 * &w.matrix);
        prop_assert_eq!(w.matrix.rank(), inst.t.rows());
        let back = classify_iso(&t2, &inst.t, &[]).unwrap().unwrap();
        prop_assert_eq!((&back.matrix * &t2).scale(&back.lambda), &inst.t * &back.matrix);
    }

    #[test]
    fn derivations_satisfy_the_leibniz_rule(seed in any::<u64>()) {
        let aleph = random_instance(seed, &Profile { max_dim: 5, ..Profile::default() }).unwrap().aleph;
        let l = AlmostAbelianAlgebra::new(&aleph, Convention::Standard).unwrap();
        match derivation_space(&l) {
            Err(Error::Heisenberg) => prop_assert!(l.is_heisenberg()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(der) => {
                let ad = l.ad_e0().clone();
                prop_assert!(der.basis.iter().all(|d| is_derivation(&ad, d)));
                let brute = brute_solve_with(&EquationSpec::Derivation { ad }, &oracle()).unwrap().unwrap();
                prop_assert!(der.same_span(&brute));
            }
        }
    }

    #[test]
    fn wire_round_trip(m in matrix(3, 2), seed in any::<u64>()) {
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let a = random_instance(seed, &small_profile()).unwrap().aleph;
        prop_assert_eq!(aleph_from_json(&aleph_to_json(&a), &[]).unwrap(), a);
    }
}

use proptest::prelude::*;

use quivar_core::coproduct::{random_class, random_poset};
use quivar_core::oracle::{partition_numbers, quadratic_form_roots};
use quivar_core::random::{random_gauge, random_rep, Rng};
use quivar_core::representation::{default_cap, invariant_record, records_equal, DEFAULT_TOL};
use quivar_core::roots::enumerate_roots;
use quivar_core::strata::{partitions, strata_of_m0};
use quivar_core::tensor_ade::RootData;
use quivar_core::{Complex64, DimVector, FramingSplit, Quiver, Weight};

fn small_quiver(k: usize) -> Quiver {
    match k % 4 {
        0 => Quiver::jordan(),
        1 => Quiver::type_a(2),
        2 => Quiver::affine_a1(),
        _ => Quiver::type_a(3),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn records_are_gauge_invariant(seed in any::<u64>(), k in 0usize..4) {
        let q = small_quiver(k);
        let mut rng = Rng::seeded(seed);
        let n = q.num_vertices();
        let v = DimVector((0..n).map(|_| rng.range(0, 2)).collect());
        let w = DimVector((0..n).map(|_| rng.range(0, 1)).collect());
        let r = random_rep(&q, &v, &w, &mut rng);
        let moved = r.gauge_act(&random_gauge(&v, &mut rng), DEFAULT_TOL).unwrap();
        let cap = default_cap(&v).min(6);
        prop_assert!(records_equal(&invariant_record(&r, cap), &invariant_record(&moved, cap), 1e-8).unwrap());
    }

    #[test]
    fn lambda_at_one_is_identity(seed in any::<u64>(), k in 0usize..4) {
        let q = small_quiver(k);
        let mut rng = Rng::seeded(seed);
        let n = q.num_vertices();
        let v = DimVector((0..n).map(|_| rng.range(0, 2)).collect());
        let w1 = DimVector((0..n).map(|_| rng.range(0, 1)).collect());
        let w2 = DimVector((0..n).map(|_| rng.range(0, 1)).collect());
        let split = FramingSplit { w1, w2 };
        let r = random_rep(&q, &v, &split.w(), &mut rng);
        prop_assert_eq!(r.lambda_act(&Complex64::new(1.0, 0.0), &split).unwrap(), r);
    }

    #[test]
    fn class_inverse_is_involutive(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = Rng::seeded(seed);
        let p = random_poset(n, 3, 0.6, &mut rng);
        let c = random_class(&p, 0.9, 7, 3, &mut rng);
        let inv = c.invert().unwrap();
        prop_assert!((c.matrix() * inv.matrix()).is_identity());
        prop_assert_eq!(inv.invert().unwrap(), c);
    }

    #[test]
    fn finite_roots_match_tits_form(n in 1usize..5, b in 1i64..4) {
        let q = Quiver::type_a(n);
        let bound = DimVector(vec![b; n]);
        prop_assert_eq!(enumerate_roots(&q, &bound).unwrap().roots, quadratic_form_roots(&q, &bound));
    }

    #[test]
    fn tensor_dimensions_add_up(l in proptest::collection::vec(0i64..3, 3), m in proptest::collection::vec(0i64..3, 3)) {
        let data = RootData::new(&Quiver::type_a(3)).unwrap();
        let (l, m) = (Weight(l), Weight(m));
        let total: u64 = data.tensor_decompose(&l, &m).unwrap().iter().map(|(nu, k)| k * data.dimension(nu).unwrap()).sum();
        prop_assert_eq!(total, data.dimension(&l).unwrap() * data.dimension(&m).unwrap());
    }
}

#[test]
fn partition_counts_match_pentagonal_recurrence() {
    let p = partition_numbers(12);
    for n in 0..=12u32 {
        assert_eq!(partitions(n).len() as u64, p[n as usize]);
    }
}

#[test]
fn jordan_strata_grow_with_framing() {
    // more framing never removes strata
    let q = Quiver::jordan();
    for v in 0..4 {
        let one = strata_of_m0(&q, &DimVector(vec![v]), &DimVector(vec![1])).unwrap().len();
        let two = strata_of_m0(&q, &DimVector(vec![v]), &DimVector(vec![2])).unwrap().len();
        assert!(two >= one);
    }
}

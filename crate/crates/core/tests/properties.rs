mod common;

use common::block_oracle;
use embcurve_core::dualgraph::random_graph;
use embcurve_core::exactla::{kernel, q, rref, subspace_equal, Matrix, Rational, Subspace};
use embcurve_core::permops::{compose_block, restrict_excluding, Permutation};
use embcurve_core::DualGraph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            Matrix::from_rows(c, rows.into_iter().map(|v| v.into_iter().map(q).collect()).collect()).unwrap()
        })
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

/// Row operations: scale row `a` by a nonzero factor and add a multiple of it to row `b`.
fn row_ops(m: &Matrix, ops: &[(usize, usize, i64, i64)]) -> Matrix {
    let mut rows = m.row_vecs();
    for &(a, b, s, t) in ops {
        let (a, b) = (a % rows.len(), b % rows.len());
        let s = if s == 0 { q(1) } else { q(s) };
        rows[a] = rows[a].iter().map(|x| x * &s).collect();
        if a != b {
            let add: Vec<Rational> = rows[a].iter().map(|x| x * q(t)).collect();
            rows[b] = rows[b].iter().zip(&add).map(|(x, y)| x + y).collect();
        }
    }
    Matrix::from_rows(m.cols(), rows).unwrap()
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let r = rref(&m);
        prop_assert_eq!(rref(&r), r.clone());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis().row_vecs() {
            prop_assert!(m.apply(&v).unwrap().iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn row_space_ignores_row_operations(m in matrix(), ops in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3, -3i64..=3), 0..6)) {
        let moved = row_ops(&m, &ops);
        prop_assert!(subspace_equal(&Subspace::row_space(&m), &Subspace::row_space(&moved)).unwrap());
        prop_assert_eq!(kernel(&m), kernel(&moved));
    }

    #[test]
    fn compose_block_matches_oracle(pi in permutation(5), rho in permutation(4), i in 1usize..6) {
        let i = 1 + (i - 1) % pi.len();
        prop_assert_eq!(compose_block(&pi, i, &rho).unwrap(), block_oracle(&pi, i, &rho));
    }

    #[test]
    fn restriction_composes(rho in permutation(6), sigma_seed in any::<u64>()) {
        // (σρ)∖{i,j} = σ∖{ρ(i),ρ(j)} ∘ ρ∖{i,j}
        let n = rho.len();
        prop_assume!(n >= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(sigma_seed);
        let mut v: Vec<usize> = (1..=n).collect();
        rand::seq::SliceRandom::shuffle(&mut v[..], &mut rng);
        let sigma = Permutation::new(v).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                if i == j { continue; }
                let lhs = restrict_excluding(&sigma.compose(&rho).unwrap(), i, j).unwrap();
                let rhs = restrict_excluding(&sigma, rho.apply(i), rho.apply(j)).unwrap()
                    .compose(&restrict_excluding(&rho, i, j).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_vertex_names(seed in any::<u64>(), legs in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, legs, 3, 1);
        let v = g.vertex_count();
        let mut names: Vec<usize> = (0..v).collect();
        rand::seq::SliceRandom::shuffle(&mut names[..], &mut rng);
        let mut genera = vec![0; v];
        for (old, &new) in names.iter().enumerate() {
            genera[new] = g.genera()[old];
        }
        let edges = g.edges().iter().map(|&(a, b)| (names[a], names[b])).collect();
        let legs_at = g.legs().iter().map(|&x| names[x]).collect();
        let h = DualGraph::new(genera, edges, legs_at).unwrap();
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
    }
}

#[test]
fn kernel_example() {
    let k = kernel(&Matrix::from_i64(&[&[-1, 0, -1, 0]]));
    assert_eq!(k.basis(), &Matrix::from_i64(&[&[1, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]));
    let scaled = kernel(&Matrix::from_i64(&[&[2, 0, 2, 0]]));
    assert!(subspace_equal(&k, &scaled).unwrap());
}

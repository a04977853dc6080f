//! Cross-module invariants checked against independent oracles: brute-force
//! square sets, explicit line-membership solving, naive common-neighbour
//! counting, and rational Gaussian elimination for ranks.

use num::rational::BigRational;
use num::{BigInt, Zero};
use paley_core::gf::ExtField;
use paley_core::graph::{
    build_block_graph, build_paley, check_srg, expected_srg_params, graphs_equal, SrgCheck,
};
use paley_core::plane::{
    all_slopes, build_oa_full, build_oa_quadratic, canonical_partitions, line, line_index_of,
    validate_oa,
};
use paley_core::spectra::{balanced_fn, contrast_fn, int_rank};

const SUPPORTED_Q: [u64; 6] = [3, 5, 7, 9, 11, 13];

fn ext(q: u64) -> ExtField {
    ExtField::for_q(q).unwrap()
}

#[test]
fn square_tests_agree_with_exhaustive_oracle() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        let f = e.base();

        let mut base_squares = vec![false; q as usize];
        for i in 1..q {
            let sq = f.mul(&f.element(i), &f.element(i));
            base_squares[f.index(&sq) as usize] = true;
        }
        let mut base_count = 0;
        for i in 1..q {
            let expected = base_squares[i as usize];
            assert_eq!(f.is_square(&f.element(i)).unwrap(), expected, "q={q} i={i}");
            base_count += expected as u64;
        }
        assert_eq!(base_count, (q - 1) / 2);

        let n = e.order();
        let mut ext_squares = vec![false; n as usize];
        for i in 1..n {
            let a = e.element(i);
            let sq = e.mul(&a, &a);
            ext_squares[e.index(&sq) as usize] = true;
        }
        let mut ext_count = 0;
        for i in 1..n {
            let expected = ext_squares[i as usize];
            assert_eq!(e.is_square(&e.element(i)).unwrap(), expected, "q={q} i={i}");
            ext_count += expected as u64;
        }
        assert_eq!(ext_count, (n - 1) / 2);
    }
}

#[test]
fn chosen_nonsquare_becomes_a_square_upstairs() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        assert!(!e.base().is_square(e.d()).unwrap());
        assert!(e.is_square(&e.embed(e.d().clone())).unwrap());
    }
}

#[test]
fn minus_one_is_a_square_in_the_extension() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        let minus_one = e.neg(&e.one());
        assert!(e.is_square(&minus_one).unwrap(), "q={q}");
    }
}

#[test]
fn base_field_scalars_are_squares_upstairs() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        for i in 1..q {
            let c = e.embed(e.base().element(i));
            assert!(e.is_square(&c).unwrap(), "q={q} c={i}");
        }
    }
}

#[test]
fn canonical_index_round_trips() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        for i in 0..e.order() {
            assert_eq!(e.index(&e.element(i)), i);
        }
        for i in 0..q {
            assert_eq!(e.base().index(&e.base().element(i)), i);
        }
    }
}

#[test]
fn field_axioms_hold_on_sampled_triples() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        let n = e.order();
        // a deterministic stride sample of element triples
        let sample: Vec<u64> = (0..n).step_by((n as usize / 7).max(1)).collect();
        for &ai in &sample {
            for &bi in &sample {
                for &ci in &sample {
                    let (a, b, c) = (e.element(ai), e.element(bi), e.element(ci));
                    let ab_c = e.mul(&e.mul(&a, &b), &c);
                    let a_bc = e.mul(&a, &e.mul(&b, &c));
                    assert_eq!(ab_c, a_bc);
                    let left = e.mul(&a, &e.add(&b, &c));
                    let right = e.add(&e.mul(&a, &b), &e.mul(&a, &c));
                    assert_eq!(left, right);
                    assert_eq!(e.add(&e.add(&a, &b), &c), e.add(&a, &e.add(&b, &c)));
                }
            }
        }
    }
}

#[test]
fn line_index_agrees_with_membership_oracle() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        for s in all_slopes(&e) {
            // build the membership table by constructing every line explicitly
            let mut member_index = vec![None; e.order() as usize];
            for j in 0..q {
                let idx = e.base().element(j);
                for p in line(&s, &idx, &e).points() {
                    let v = e.index(p) as usize;
                    assert!(member_index[v].is_none(), "lines of one slope overlap");
                    member_index[v] = Some(j);
                }
            }
            for v in 0..e.order() {
                let computed = e.base().index(&line_index_of(&e.element(v), &s, &e));
                assert_eq!(Some(computed), member_index[v as usize], "q={q} v={v}");
            }
        }
    }
}

#[test]
fn slope_classification_is_scaling_invariant() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        for s in all_slopes(&e) {
            let classified = s.is_quadratic();
            for c in 1..q {
                let scaled = e.mul(&e.embed(e.base().element(c)), s.rep());
                assert_eq!(e.is_square(&scaled).unwrap(), classified, "q={q} c={c}");
            }
        }
    }
}

#[test]
fn arrays_are_orthogonal_for_all_supported_q() {
    for q in SUPPORTED_Q {
        let e = ext(q);
        assert!(validate_oa(&build_oa_full(&e)).is_ok(), "q={q} full");
        assert!(
            validate_oa(&build_oa_quadratic(&e)).is_ok(),
            "q={q} quadratic"
        );
    }
}

#[test]
fn paley_equals_quadratic_block_graph() {
    for q in [3, 5, 7, 9] {
        let e = ext(q);
        let g = build_paley(&e);
        let h = build_block_graph(&build_oa_quadratic(&e)).unwrap();
        assert!(graphs_equal(&g, &h), "q={q}");
    }
}

#[test]
fn cliques_from_different_partitions_meet_in_one_vertex() {
    for q in [3, 5, 7, 9] {
        let e = ext(q);
        let parts = canonical_partitions(&e);
        for (a, pa) in parts.iter().enumerate() {
            for pb in parts.iter().skip(a + 1) {
                for ca in pa.cliques() {
                    for cb in pb.cliques() {
                        let common = ca.iter().filter(|v| cb.contains(v)).count();
                        assert_eq!(common, 1, "q={q}");
                    }
                }
            }
        }
    }
}

#[test]
fn srg_scan_agrees_with_naive_counting() {
    for q in [3u64, 5] {
        let e = ext(q);
        let g = build_paley(&e);
        let params = match check_srg(&g) {
            SrgCheck::Srg(p) => p,
            other => panic!("expected SRG, got {other:?}"),
        };
        assert_eq!(params, expected_srg_params((q + 1) / 2, q).unwrap());
        // independent double-loop recount of every pair
        let n = g.n_vertices();
        for u in 0..n {
            for v in u + 1..n {
                let count = (0..n)
                    .filter(|&w| w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w))
                    .count() as u64;
                if g.has_edge(u, v) {
                    assert_eq!(count, params.lambda, "q={q} edge ({u},{v})");
                } else {
                    assert_eq!(count, params.mu, "q={q} non-edge ({u},{v})");
                }
            }
        }
    }
}

/// Rank oracle: plain Gaussian elimination over arbitrary-precision rationals.
#[allow(clippy::needless_range_loop)]
fn rank_rational(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        m.swap(rank, pr);
        let inv = m[rank][col].clone();
        for entry in &mut m[rank][col..] {
            *entry = &*entry / &inv;
        }
        let pivot_row: Vec<BigRational> = m[rank][col..].to_vec();
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for (entry, pv) in m[r][col..].iter_mut().zip(&pivot_row) {
                    let delta = &factor * pv;
                    *entry = &*entry - delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[test]
fn fraction_free_rank_agrees_with_rational_elimination() {
    for q in [3u64, 5, 7] {
        let e = ext(q);
        let parts = canonical_partitions(&e);
        let m = parts.len();
        let qs = q as usize;

        let balanced: Vec<Vec<i64>> = (1..=m)
            .flat_map(|j| (1..=qs).map(move |i| (j, i)))
            .map(|(j, i)| balanced_fn(&parts, j, i).unwrap().values().to_vec())
            .collect();
        assert_eq!(
            int_rank(&balanced),
            rank_rational(&balanced),
            "q={q} balanced"
        );

        let contrast: Vec<Vec<i64>> = (1..=m)
            .flat_map(|j| (2..=qs).map(move |i| (j, i)))
            .map(|(j, i)| contrast_fn(&parts, j, i).unwrap().values().to_vec())
            .collect();
        assert_eq!(
            int_rank(&contrast),
            rank_rational(&contrast),
            "q={q} contrast"
        );
        assert_eq!(int_rank(&contrast), ((q * q - 1) / 2) as usize);
    }

    // a few fixed irregular shapes
    let samples: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2, 4], vec![1, 2], vec![3, 6]],
        vec![vec![0, 0, 0]],
        vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        vec![vec![5]],
    ];
    for m in &samples {
        assert_eq!(int_rank(m), rank_rational(m));
    }
}

#[test]
fn fraction_free_rank_on_random_matrices() {
    let mut state = 0x4d595df4d0f33173u64;
    let mut next = |bound: u64| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) % bound
    };
    for trial in 0..200 {
        let rows = 1 + next(8) as usize;
        let cols = 1 + next(8) as usize;
        let matrix: Vec<Vec<i64>> = if trial % 2 == 0 {
            (0..rows)
                .map(|_| (0..cols).map(|_| next(41) as i64 - 20).collect())
                .collect()
        } else {
            // a product B·C with small inner dimension forces rank deficiency
            let inner = 1 + next(3) as usize;
            let b: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..inner).map(|_| next(9) as i64 - 4).collect())
                .collect();
            let c: Vec<Vec<i64>> = (0..inner)
                .map(|_| (0..cols).map(|_| next(9) as i64 - 4).collect())
                .collect();
            (0..rows)
                .map(|r| {
                    (0..cols)
                        .map(|j| (0..inner).map(|i| b[r][i] * c[i][j]).sum())
                        .collect()
                })
                .collect()
        };
        let rank = int_rank(&matrix);
        assert_eq!(rank, rank_rational(&matrix), "trial {trial}");
        if trial % 2 == 1 {
            assert!(
                rank <= 3,
                "trial {trial}: product rank bounded by inner dim"
            );
        }
        let transpose: Vec<Vec<i64>> = (0..matrix[0].len())
            .map(|c| matrix.iter().map(|row| row[c]).collect())
            .collect();
        assert_eq!(int_rank(&transpose), rank, "trial {trial} transpose");
    }
}

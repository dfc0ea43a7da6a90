//! Agreement between independent parts of the library.

use comvar::bounds::{classify, enumerate_compositions, nt_bound, vmpq_report, Composition};
use comvar::pluecker::{gamma, MatrixPencil};
use comvar::pointcount::{
    count_nt, count_nt_composition, count_vmpq, count_vmpq_strata, estimate_dimension,
    count_table, CommutingSystem, VarietyId, DEFAULT_BUDGET,
};
use comvar::spectral::lemma4_partition;
use comvar::{FieldMatrix, FieldPolynomial, Modulus};

fn f(p: u64) -> Modulus {
    Modulus::new(p).unwrap()
}

#[test]
fn block_counts_respect_the_bound() {
    // every component has dimension >= nt_bound, so the count is at least
    // q^nt_bound up to lower-order terms; for these tiny cases it holds exactly
    for n in 1..=5 {
        for j in enumerate_compositions(n).unwrap() {
            let count = count_nt_composition(&j, f(2), DEFAULT_BUDGET).unwrap();
            assert!(count >= 1u128 << nt_bound(&j), "{j}: {count}");
        }
    }
}

#[test]
fn block_count_edge_cases() {
    let whole = Composition::new(vec![4]).unwrap();
    assert_eq!(count_nt_composition(&whole, f(3), DEFAULT_BUDGET).unwrap(), 1);
    let two = Composition::new(vec![1, 1]).unwrap();
    assert_eq!(count_nt_composition(&two, f(3), DEFAULT_BUDGET).unwrap(), 9);
    let singles = Composition::singletons(4);
    assert_eq!(
        count_nt_composition(&singles, f(2), DEFAULT_BUDGET).unwrap(),
        count_nt(4, f(2), DEFAULT_BUDGET).unwrap()
    );
}

#[test]
fn all_singletons_count_growth_matches_regular_closure() {
    let table = count_table(VarietyId::Nt { n: 3 }, &[f(2), f(3), f(5)], DEFAULT_BUDGET).unwrap();
    let est = estimate_dimension(&table).unwrap();
    let cert = classify(&Composition::singletons(3));
    assert_eq!(est.estimated_dim as u64, cert.dim_nt0);
    assert_eq!(cert.nt_bound, cert.dim_nt0);
}

#[test]
fn vmpq_strata_partition_the_count() {
    for (m, p, q) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2)] {
        for field in [2, 3] {
            let total = count_vmpq(m, p, q, f(field), None, None, DEFAULT_BUDGET).unwrap();
            let cells = count_vmpq_strata(m, p, q, f(field), DEFAULT_BUDGET).unwrap();
            assert_eq!(cells.values().sum::<u128>(), total);
            // every cell lies under some maximal pair
            let report = vmpq_report(m, p, q).unwrap();
            for &(ra, rb) in cells.keys() {
                assert!(report.components.iter().any(|c| ra <= c.a && rb <= c.b));
            }
        }
    }
}

#[test]
fn commuting_points_split_and_map_consistently() {
    // every non-degenerate point of NT_3(F_3) satisfies the linear image
    // equations and splits into a single nilpotent block
    let q = f(3);
    let system = CommutingSystem::strictly_upper(3);
    let k = system.coordinate_count();
    let mut coords = vec![0u32; k];
    let mut seen = 0;
    loop {
        if system.is_commuting(3, &coords) {
            let (x, y) = system.pencil(q, &coords);
            let part = lemma4_partition(&x, &y).unwrap();
            assert_eq!(part.blocks.len(), 1);
            let pencil = MatrixPencil::new(x, y).unwrap();
            if let Ok(v) = gamma(&pencil) {
                assert!(v.image_equation_residuals().is_zero());
            }
            seen += 1;
        }
        let mut i = k;
        loop {
            if i == 0 {
                assert_eq!(seen, 297);
                return;
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < 3 {
                break;
            }
            coords[i] = 0;
        }
    }
}

#[test]
fn polynomial_pairs_commute_and_split() {
    let q = f(11);
    let x = FieldMatrix::from_rows(
        q,
        &[[2, 1, 0, 5], [0, 2, 3, 0], [0, 0, 7, 1], [0, 0, 0, 2]],
    )
    .unwrap();
    let y = FieldPolynomial::from_coeffs(q, &[3, 0, 4]).eval_matrix(&x).unwrap();
    let part = lemma4_partition(&x, &y).unwrap();
    assert_eq!(part.blocks, vec![vec![0, 1, 3], vec![2]]);
}

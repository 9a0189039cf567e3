use proptest::prelude::*;

use seventerm_core::cohomology::cohomology;
use seventerm_core::fixtures;
use seventerm_core::group::make_extension;
use seventerm_core::linalg::{cokernel, smith_normal_form, AbHom, FgAbGroup, IntMatrix};
use seventerm_core::oracle::{d2_well_defined, Filtration, Oracle};
use seventerm_core::perturb::Perturber;
use seventerm_core::seven_term::{well_definedness, Context};
use seventerm_core::{Int, Verdict};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows)
}

/// Invariant factors `d₁ | d₂ | ...`.
fn chain() -> impl Strategy<Value = Vec<i64>> {
    (2i64..7, prop::collection::vec(1i64..4, 0..2)).prop_map(|(d, ks)| {
        let mut out = vec![d];
        for k in ks {
            out.push(out.last().unwrap() * k);
        }
        out
    })
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    IntMatrix::from_i64_rows(&refs)
}

/// Determinant and rank over the rationals by fraction-free elimination in `i128`.
fn bareiss(rows: &[Vec<i64>]) -> (i128, usize) {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let (mut rank, mut prev, mut sign) = (0, 1i128, 1i128);
    for c in 0..n {
        let Some(p) = (rank..m).find(|&i| a[i][c] != 0) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..m {
            for j in c + 1..n {
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    let det = if m == n && rank == n { sign * prev } else { 0 };
    (det, rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn int_arithmetic_matches_i128(a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Int::from(a), Int::from(b));
        let (p, q) = (a as i128, b as i128);
        prop_assert_eq!((&x * &y).to_string(), (p * q).to_string());
        prop_assert_eq!((&x + &y).to_string(), (p + q).to_string());
        prop_assert_eq!((&x - &y).to_string(), (p - q).to_string());
        if b != 0 {
            let floor = if p % q != 0 && (p < 0) != (q < 0) { p / q - 1 } else { p / q };
            prop_assert_eq!(x.div_floor(&y).to_string(), floor.to_string());
            prop_assert_eq!(x.mod_floor(&y).to_string(), p.rem_euclid(q).to_string());
        }
        let g = x.gcd(&y);
        prop_assert!(!g.is_negative());
        if !g.is_zero() {
            prop_assert!(g.divides(&x) && g.divides(&y));
        }
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in (1usize..5, 1usize..5).prop_flat_map(|(m, n)| matrix(m, n))) {
        let a = to_matrix(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows()));
        prop_assert!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[0].divides(&w[1]), "{:?}", diag);
        }
    }

    #[test]
    fn cokernel_order_and_rank_match_elimination(rows in (1usize..5).prop_flat_map(|m| (Just(m), 0usize..6)).prop_flat_map(|(m, n)| matrix(m, n))) {
        let (det, rank) = bareiss(&rows);
        let m = rows.len();
        let c = cokernel(&to_matrix(&rows));
        prop_assert_eq!(c.group.rank(), m - rank);
        if rows[0].len() == m && det != 0 {
            prop_assert_eq!(c.group.order(), Some(Int::from(det.unsigned_abs() as i64)));
        }
    }

    #[test]
    fn kernel_and_image_orders_multiply_to_the_source(
        src in chain(),
        tgt in chain(),
        entries in prop::collection::vec(-6i64..6, 9),
    ) {
        let (s, t) = (FgAbGroup::finite(&src).unwrap(), FgAbGroup::finite(&tgt).unwrap());
        // Sending each generator to a multiple of the target exponent's
        // cofactor keeps the map well defined.
        let images: Vec<Vec<Int>> = (0..s.ngens())
            .map(|i| (0..t.ngens()).map(|j| {
                let (d, e) = (s.torsion()[i].clone(), t.torsion()[j].clone());
                let step = e.exact_div(&d.gcd(&e));
                &Int::from(entries[i * 3 + j]) * &step
            }).collect())
            .collect();
        let f = AbHom::from_images(s.clone(), t, &images).unwrap();
        let (k, im) = (f.kernel().order().unwrap(), f.image().order().unwrap());
        prop_assert_eq!(&k * &im, s.order().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classes_ignore_coboundaries(fixture in 0usize..5, degree in 1usize..3, coeffs in prop::collection::vec(0i64..6, 64)) {
        let f = fixtures::by_name(fixtures::NAMES[fixture]).unwrap();
        let h = cohomology(&f.group, &f.module, degree).unwrap();
        let prev = h.prev_space().unwrap();
        let w: Vec<Int> = (0..prev.dim()).map(|i| Int::from(coeffs[i % coeffs.len()])).collect();
        let dw = h.coboundary(&w);
        for c in h.group().elements().take(8) {
            let z = h.representative(&c);
            let moved: Vec<Int> = z.iter().zip(&dw).map(|(a, b)| a + b).collect();
            prop_assert_eq!(h.classify(&moved).unwrap(), c);
        }
    }

    #[test]
    fn differential_preserves_the_filtration(fixture in 0usize..8, p in 0usize..3, n in 1usize..3, coeffs in prop::collection::vec(0i64..9, 32)) {
        let f = fixtures::by_name(fixtures::NAMES[fixture]).unwrap();
        let filt = Filtration::new(&make_extension(&f.group, &f.normal).unwrap(), &f.module);
        let p = p.min(n);
        let space = filt.space(p, n).unwrap();
        let x: Vec<Int> = (0..space.dim()).map(|i| Int::from(coeffs[i % coeffs.len()])).collect();
        let along = filt.embed(p, 0, n + 1).unwrap().mul_vec(&filt.d(p, n).unwrap().mul_vec(&x));
        let across = filt.d(0, n).unwrap().mul_vec(&filt.embed(p, 0, n).unwrap().mul_vec(&x));
        let diff: Vec<Int> = along.iter().zip(&across).map(|(a, b)| a - b).collect();
        prop_assert!(filt.space(0, n + 1).unwrap().is_zero(&diff));
    }

    #[test]
    fn tr_rho_and_d2_survive_any_seed(fixture in 0usize..8, seed in any::<u64>()) {
        let f = fixtures::by_name(fixtures::NAMES[fixture]).unwrap();
        if f.group.order() > 6 {
            // The order-8 and order-9 fixtures are covered with fixed seeds elsewhere.
            return Ok(());
        }
        let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
        let mut rng = Perturber::new(seed);
        for c in well_definedness(&cx, &mut rng, 1).unwrap() {
            prop_assert_eq!(c.verdict, Verdict::Pass, "{}", c.name);
        }
        let o = Oracle::new(&cx.ext, &cx.module).unwrap();
        prop_assert_eq!(d2_well_defined(&o.filtration, &o.e01, &o.e20, &o.d2_01, &mut rng, 2), Verdict::Pass);
        prop_assert_eq!(d2_well_defined(&o.filtration, &o.e11, &o.e30, &o.d2_11, &mut rng, 2), Verdict::Pass);
    }
}

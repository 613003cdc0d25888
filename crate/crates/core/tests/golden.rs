//! Printed N = 3 functional matrices, and the pairing on products of
//! generators against the R-matrix product rule.

use qck_core::pairing::{build_pairing_table, Functional, Sign};
use qck_core::{BaseScalar, Basis, CkScalar, NcPoly, StructureBundle, Symbol};

const R: usize = 2;

fn term(coeff: CkScalar, s: &str) -> NcPoly {
    NcPoly::symbol(R, Symbol::parse(s).unwrap()).scale(&coeff)
}

fn j(k: usize, p: i32) -> CkScalar {
    CkScalar::j_pow(R, k, p)
}

fn i_times(sign: i64, x: &CkScalar) -> CkScalar {
    &CkScalar::constant(R, BaseScalar::i().scale(&qck_core::scalar::rat(sign, 1))) * x
}

#[test]
fn functional_matrices_n3() {
    let b = StructureBundle::new(3, Basis::Symplectic).unwrap();
    let lp = b.l_plus.unwrap();
    let lm = b.l_minus.unwrap();
    let jj = CkScalar::big_j_pow(R, -1);
    let one = CkScalar::one(R);
    let upper = [
        ((0, 1), term(j(1, -1), "l12").add(&term(i_times(-1, &j(2, -1)), "l~12"))),
        ((0, 2), term(one.clone(), "l13").add(&term(i_times(-1, &jj), "l~13"))),
        ((1, 2), term(j(1, -1), "l21").add(&term(i_times(-1, &j(2, -1)), "l~21"))),
    ];
    let lower = [
        ((1, 0), term(j(1, -1), "l21").add(&term(i_times(1, &j(2, -1)), "l~21"))),
        ((2, 0), term(one, "l13").add(&term(i_times(1, &jj), "l~13"))),
        ((2, 1), term(j(1, -1), "l12").add(&term(i_times(1, &j(2, -1)), "l~12"))),
    ];
    for ((a, c), p) in &upper {
        assert_eq!(lp.get(*a, *c), p, "L+ ({},{})", a + 1, c + 1);
        assert!(lm.get(*a, *c).is_zero());
    }
    for ((a, c), p) in &lower {
        assert_eq!(lm.get(*a, *c), p, "L- ({},{})", a + 1, c + 1);
        assert!(lp.get(*a, *c).is_zero());
    }
    for k in 0..3 {
        assert_eq!(lp.get(k, k).to_string(), format!("l+{0}{0}", k + 1));
        assert_eq!(lm.get(k, k).to_string(), format!("l-{0}{0}", k + 1));
    }
}

/// `⟨L^{(σ)}_{ik}, T_ab T_cd⟩` through the solved symbol table and the
/// matrix-product rule, against the direct product of R-matrix blocks.
#[test]
fn pairing_on_products_matches_r_matrix() {
    let table = build_pairing_table(3, None).unwrap();
    let t = StructureBundle::new(3, Basis::Symplectic).unwrap().generators;
    let idx: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    for sign in [Sign::Plus, Sign::Minus] {
        for &(i, k) in &idx {
            let f = Functional::Entry { sign, row: i, col: k };
            for &x in &idx {
                for &y in &idx {
                    let prod = t.get(x.0, x.1).mul(t.get(y.0, y.1));
                    let mut via_table = CkScalar::zero(R);
                    for (w, c) in prod.terms() {
                        via_table = &via_table + &(c * &table.eval(&f, w).unwrap());
                    }
                    let direct = table.entry_on_entries(sign, i, k, &[x, y]);
                    assert_eq!(via_table, direct, "{sign:?} ({i},{k}) on T{x:?}T{y:?}");
                }
            }
        }
    }
}

#[test]
fn pairing_builds_for_larger_dimensions() {
    for n in 4..=6 {
        let table = build_pairing_table(n, None).unwrap();
        assert!(table.entries().count() > 0);
        // ⟨L, T⟩ reproduces the R-matrix on single entries
        let t = StructureBundle::new(n, Basis::Symplectic).unwrap().generators;
        for (a, b, p) in t.entries() {
            let f = Functional::Entry { sign: Sign::Plus, row: 0, col: 0 };
            let mut acc = CkScalar::zero(n - 1);
            for (w, c) in p.terms() {
                acc = &acc + &(c * &table.eval(&f, w).unwrap());
            }
            assert_eq!(acc, table.entry_on_entries(Sign::Plus, 0, 0, &[(a, b)]), "N={n} T({a},{b})");
        }
    }
}

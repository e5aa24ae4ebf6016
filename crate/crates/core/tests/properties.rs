use proptest::prelude::*;

use quartica_core::arrangement::incidence;
use quartica_core::catalog;
use quartica_core::combinatorics::{enumerate_nonneg, hirzebruch_check, quadruple_bound, DiophantineSystem, WeakCombinatorics};
use quartica_core::milnor::analyze;
use quartica_core::polyring::{dim_s, monomials, BinaryForm};
use quartica_core::tangency::{classify_arrangement, classify_line, verify_bitangent_set};
use quartica_core::{FieldElement, FieldRef, HomPoly, NumberField, ProjLine};

fn fields() -> Vec<FieldRef> {
    vec![
        NumberField::rationals(),
        catalog::klein_field(),
        catalog::dyck_field(),
        catalog::kk_field(),
    ]
}

fn element(field: &FieldRef, c: &[i64]) -> FieldElement {
    FieldElement::from_int_coeffs(field, &c[..field.degree()])
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let field = &fields()[f];
        let (a, b, c) = (element(field, &a), element(field, &b), element(field, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).coeffs().len(), field.degree());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_multiplicative(f in 1usize..4, a in coeffs(), b in coeffs()) {
        let field = &fields()[f];
        let (a, b) = (element(field, &a), element(field, &b));
        let ab = (&a * &b).embed_numeric(12).unwrap();
        let prod = a.embed_numeric(12).unwrap() * b.embed_numeric(12).unwrap();
        prop_assert!((ab - prod).norm() <= 1e-9 * (1.0 + prod.norm()));
    }

    #[test]
    fn pattern_survives_substitution(
        roots in prop::collection::vec((-6i64..=6, 1i64..=4, 1u32..=3), 1..4),
        m in prop::array::uniform4(-5i64..=5),
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let q = NumberField::rationals();
        let mut form = BinaryForm::new(&q, vec![FieldElement::one(&q)]);
        let mut want: Vec<u32> = Vec::new();
        let mut seen: Vec<(i64, i64)> = Vec::new();
        for &(a, b, mult) in &roots {
            let g = num_integer::gcd(a, b);
            let key = (a / g, b / g);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            want.push(mult);
            for _ in 0..mult {
                form = form.mul(&BinaryForm::new(&q, vec![FieldElement::from_int(&q, b), FieldElement::from_int(&q, a)]));
            }
        }
        let pattern = form.squarefree_pattern().unwrap();
        want.sort_unstable_by(|x, y| y.cmp(x));
        let mut got = pattern.parts().to_vec();
        got.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(got, want);
        let [a, b, c, d] = m.map(|v| FieldElement::from_int(&q, v));
        prop_assert_eq!(form.substitute(&a, &b, &c, &d).squarefree_pattern().unwrap(), pattern);
    }

    #[test]
    fn incidence_counts_pairs(raw in prop::collection::vec(prop::array::uniform3(-3i64..=3), 2..14), s in 1i64..=5) {
        let q = NumberField::rationals();
        let mut lines: Vec<ProjLine> = Vec::new();
        for c in raw {
            if let Ok(l) = ProjLine::from_ints(&q, c) {
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
        prop_assume!(lines.len() >= 2);
        let n = lines.len();
        let inc = incidence(&lines).unwrap();
        let pairs: usize = inc.points.iter().map(|p| p.multiplicity * (p.multiplicity - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
        for p in &inc.points {
            prop_assert_eq!(lines.iter().filter(|l| l.contains(&p.point)).count(), p.multiplicity);
        }
        // rescaling an input line's coordinates changes nothing
        let k = FieldElement::from_int(&q, s);
        let scaled: Vec<ProjLine> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| if i % 2 == 0 { ProjLine::new(l.coords().clone().map(|c| &c * &k)).unwrap() } else { l.clone() })
            .collect();
        prop_assert_eq!(incidence(&scaled).unwrap(), inc);
    }

    #[test]
    fn line_contact_ignores_scaling(t in 0usize..3, i in 0usize..28, s in coeffs(), r in coeffs()) {
        let table = vec![catalog::klein_table(), catalog::dyck_table(), catalog::kk_table()].swap_remove(t);
        let (s, r) = (element(&table.field, &s), element(&table.field, &r));
        prop_assume!(!s.is_zero() && !r.is_zero());
        let line = &table.lines[i];
        let base = classify_line(&table.quartic, line).unwrap();
        prop_assert!(base.is_bitangent());
        let scaled_line = ProjLine::new(line.coords().clone().map(|c| &c * &s)).unwrap();
        prop_assert_eq!(classify_line(&table.quartic.scale(&r), &scaled_line).unwrap(), base);
    }

    #[test]
    fn enumeration_matches_brute_force(
        c1 in prop::collection::vec(1i64..=5, 3),
        r1 in 0i64..=25,
        c2 in prop::collection::vec(-3i64..=3, 3),
        r2 in -4i64..=8,
        two in any::<bool>(),
    ) {
        let mut eqs: Vec<(&[i64], i64)> = vec![(&c1, r1)];
        if two {
            eqs.push((&c2, r2));
        }
        let sys = DiophantineSystem::new(&["a", "b", "c"], &eqs);
        let mut brute = Vec::new();
        for a in 0..=25 {
            for b in 0..=25 {
                for c in 0..=25 {
                    let x = [a, b, c];
                    if eqs.iter().all(|(co, r)| co.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == *r) {
                        brute.push(x.to_vec());
                    }
                }
            }
        }
        prop_assert_eq!(enumerate_nonneg(&sys).unwrap(), brute);
    }

    #[test]
    fn hirzebruch_is_pure(v in prop::array::uniform8(0u64..=60), k in 0u64..=2, d in 0u64..=30) {
        let wc = WeakCombinatorics { k, d, n2: v[0], n3: v[1], n4: v[2], t2: v[3], t5: v[4], d6: v[5], t7: v[6] };
        let copy = wc;
        prop_assert_eq!(hirzebruch_check(&wc), hirzebruch_check(&copy));
    }
}

#[test]
fn quadruple_bound_non_increasing() {
    let b: Vec<_> = (0..=12).map(|h| quadruple_bound(h).unwrap()).collect();
    assert!(b.windows(2).all(|w| w[1] <= w[0]), "{b:?}");
    assert!(quadruple_bound(13).is_err());
}

#[test]
fn basis_sizes() {
    for t in 0..20u32 {
        assert_eq!(monomials(t).len(), dim_s(t as usize));
        assert_eq!(dim_s(t as usize), (t as usize + 1) * (t as usize + 2) / 2);
    }
}

#[test]
fn tangency_census_tracks_hyperflexes() {
    for t in [catalog::klein_table(), catalog::dyck_table(), catalog::kk_table()] {
        let r = verify_bitangent_set(&t.quartic, &t.lines).unwrap();
        let p = classify_arrangement(&t.quartic, &t.lines).unwrap();
        assert_eq!(p.t2 as usize, 56 - 2 * r.h, "{}", t.name);
        assert_eq!(p.t7 as usize, r.h, "{}", t.name);
    }
}

#[test]
fn restriction_vanishes_only_on_components() {
    let t = catalog::dyck_table();
    let product = t.lines[..3].iter().fold(HomPoly::constant(FieldElement::one(&t.field)), |acc, l| &acc * &l.to_poly());
    for (i, l) in t.lines.iter().enumerate() {
        assert_eq!(product.restrict_to_line(l).is_zero(), i < 3);
    }
}

#[test]
fn even_degree_relation_bound() {
    for name in ["kl-octic", "qk-octic", "q1-octic", "h-arrangement-1", "g-arrangement-1", "c1-dodecic"] {
        let spec = catalog::builtin(name).unwrap();
        let r = analyze(&spec.polynomial()).unwrap();
        assert!(2 * r.mdr + 2 >= r.d, "{name}: mdr {} for degree {}", r.mdr, r.d);
    }
}

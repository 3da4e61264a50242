use ct3_core::arith::{ceil_q, floor_q, q};
use ct3_core::blowup::{certify_irreducible, discrepancy, CertificateKind, SingularityPresentation};
use ct3_core::poly::PolySupport;
use ct3_core::threshold::{bezout_split, ca_split, ct_upper_bound, feasible_m, AuxConstraint};
use ct3_core::weights::{enumerate_family, FamilyBounds, FamilyTag};
use num_integer::Integer;
use proptest::prelude::*;

fn support(terms: &[[u32; 3]]) -> PolySupport {
    let exps: Vec<&[u32]> = terms.iter().map(|t| t.as_slice()).collect();
    PolySupport::from_exponents(3, &exps).unwrap()
}

fn nonconstant_term() -> impl Strategy<Value = [u32; 3]> {
    (0u32..4, 0u32..4, 0u32..4).prop_filter_map("constant", |(x, y, z)| (x + y + z > 0).then_some([x, y, z]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn upper_bound_does_not_grow_with_the_search_box(terms in prop::collection::vec(nonconstant_term(), 1..4), bound in 3u64..7) {
        let s = SingularityPresentation::smooth();
        let f = support(&terms);
        let small = ct_upper_bound(&s, &f, bound).unwrap();
        let large = ct_upper_bound(&s, &f, bound + 2).unwrap();
        prop_assert!(large.value <= small.value);
        prop_assert!(small.value <= q(1, 1));
        if !small.clamped {
            prop_assert_eq!(small.value, q(small.discrepancy, small.multiplicity as i64));
        }
    }

    #[test]
    fn bezout_split_identities(a in 2i64..200, b in 3i64..200) {
        prop_assume!(a < b && a.gcd(&b) == 1);
        let sp = bezout_split(a, b).unwrap();
        prop_assert_eq!(a * sp.t, b * sp.s + 1);
        prop_assert_eq!(a * sp.t_bar, b * sp.s_bar - 1);
        prop_assert!(0 < sp.s && sp.s < a);
        prop_assert_eq!(sp.s + sp.s_bar, a);
    }

    #[test]
    fn ca_split_identities(r1 in 1i64..60, a in 2i64..40, d in 1i64..6) {
        let r2 = a * d - r1;
        prop_assume!(r2 >= 1 && r1.gcd(&a) == 1);
        let sp = ca_split(r1, r2, a).unwrap();
        prop_assert_eq!(sp.a1 + sp.a2, a);
        prop_assert_eq!(1 + sp.a1 * r1, sp.s1_star * a);
        prop_assert_eq!(1 + sp.a2 * r2, sp.s2_star * a);
    }

    #[test]
    fn feasibility_matches_a_direct_scan(a in 1i64..30, m in 1i64..60, a1 in 1i64..30, num in 0i64..20, den in 1i64..20) {
        let c = AuxConstraint::new(a1, q(num, den));
        let direct = (0..=a1 * m).any(|mp| mp >= ceil_q(q(num, den) * q(m, 1)) && mp <= floor_q(q(a1 * m, a)));
        prop_assert_eq!(feasible_m(a, m, &[c]).feasible, direct);
    }
}

/// The family weights are certified by the family lemma over their own normal
/// forms, with discrepancy equal to the family's `a`.
#[test]
fn family_weights_pass_the_family_lemma() {
    for tag in FamilyTag::ALL {
        for p in enumerate_family(tag, &FamilyBounds { a_max: 15, d_max: 4, n_max: 4, min_discrepancy: 1 }) {
            let w = p.family_weight().unwrap();
            let model = match tag {
                FamilyTag::Smooth => SingularityPresentation::smooth(),
                _ => SingularityPresentation::normal_form(&p).unwrap(),
            };
            let cert = certify_irreducible(&model, &w).kind();
            let expected = if tag == FamilyTag::Smooth { CertificateKind::Smooth } else { CertificateKind::FamilyLemma };
            assert_eq!(cert, Some(expected), "{p}");
            assert_eq!(discrepancy(&model, &w).unwrap(), p.discrepancy() as i64, "{p}");
        }
    }
}

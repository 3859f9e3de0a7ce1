use hz_dihedral::ring::{format_element, group_at, parse_element, RingElement};
use hz_dihedral::dihedral::Grading;
use hz_dihedral::dihedral::GroupSpec;
use proptest::prelude::*;

fn element(p: u64) -> impl Strategy<Value = RingElement> {
    (-4i64..=4, -3i64..=3, -3i64..=3, 0usize..4, -20i64..=20).prop_map(move |(a, b, c, n, k)| {
        let spec = GroupSpec::new(p).unwrap();
        let piece = group_at(spec, Grading::new(a, b, c));
        if piece.is_empty() {
            RingElement::zero()
        } else {
            piece.generator(n % piece.len()).scale(p, &k.into())
        }
    })
}

proptest! {
    #[test]
    fn canonical_strings_parse_back(x in element(3)) {
        let s = format_element(&x);
        prop_assert_eq!(parse_element(3, &s).unwrap(), x);
    }

    #[test]
    fn products_commute_and_associate(x in element(5), y in element(5), z in element(5)) {
        prop_assert_eq!(x.multiply(5, &y), y.multiply(5, &x));
        prop_assert_eq!(x.multiply(5, &y).multiply(5, &z), x.multiply(5, &y.multiply(5, &z)));
    }

    #[test]
    fn product_degrees_add(x in element(7), y in element(7)) {
        let xy = x.multiply(7, &y);
        if !xy.is_zero() {
            prop_assert_eq!(xy.grading(), Some(x.grading().unwrap() + y.grading().unwrap()));
        }
    }
}

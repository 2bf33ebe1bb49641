use std::collections::BTreeMap;

use comsub::{Elem, Field, Matrix, Poly, Subspace};
use comsub_cli::format::{parse_manifest, parse_poly_text, serialize_manifest, Manifest, Object};
use comsub_cli::run;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rational()),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]).prop_map(|p| Field::prime(p).unwrap()),
        Just({
            let q = Field::rational();
            Field::extension(&q, &Poly::from_ints(&q, &[-5, 0, 1]), "s").unwrap()
        }),
        Just({
            let f7 = Field::prime(7).unwrap();
            Field::extension(&f7, &Poly::from_ints(&f7, &[1, 1, 0, 1]), "t").unwrap()
        }),
    ]
}

fn elem(field: &Field, seeds: &[(i64, i64)]) -> Elem {
    let rat = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n) * BigInt::from(1_000_000_007i64).pow((n.unsigned_abs() % 3) as u32), BigInt::from(d));
    match field.as_extension() {
        None => field.from_rational(&rat(seeds[0])).unwrap_or_else(|_| field.one()),
        Some(e) => {
            let base = e.base();
            let c: Vec<Elem> = (0..e.degree())
                .map(|i| base.from_rational(&rat(seeds[i % seeds.len()])).unwrap_or_else(|_| base.zero()))
                .collect();
            field.from_base_coeffs(&c)
        }
    }
}

fn manifest_strategy() -> impl Strategy<Value = Manifest> {
    (
        field_strategy(),
        field_strategy(),
        1usize..4,
        1usize..4,
        prop::collection::vec((-50i64..50, 1i64..12), 40),
        0usize..5,
    )
        .prop_map(|(field, other, rows, cols, seeds, plen)| {
            let mut it = seeds.chunks(3).cycle();
            let mut next = |f: &Field| elem(f, it.next().unwrap());
            let m = Matrix::from_rows(field.clone(), (0..rows).map(|_| (0..cols).map(|_| next(&field)).collect()).collect()).unwrap();
            let p = Poly::new(other.clone(), (0..plen).map(|_| next(&other)).collect());
            let w_vecs: Vec<Vec<Elem>> = (0..cols).map(|_| (0..3).map(|_| next(&other)).collect()).collect();
            let w = Subspace::span(&other, 3, &w_vecs);
            let mut objects = BTreeMap::new();
            objects.insert("M".to_string(), Object::Matrix(m));
            objects.insert("p".to_string(), Object::Poly(p));
            objects.insert("W".to_string(), Object::Subspace(w));
            Manifest { field, objects }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn serialize_parse_is_byte_identical(m in manifest_strategy()) {
        let text = serialize_manifest(&m);
        let back = parse_manifest(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize_manifest(&back), text);
    }

    #[test]
    fn malformed_polynomials_never_panic(s in "[-+x^0-9/* ]{0,12}") {
        let out = run(["comsub", "factor", "--poly", s.as_str()]);
        prop_assert!([0, 2, 3, 4].contains(&out.code), "{:?} -> {}", s, out.code);
        // anything that parses must round-trip through the coefficient form
        if let Ok(p) = parse_poly_text(&Field::rational(), &s) {
            let again = parse_poly_text(&Field::rational(), &p.to_string()).unwrap();
            prop_assert_eq!(again, p);
        }
    }

    #[test]
    fn malformed_manifests_never_panic(s in "\\{[\"a-z:0-9,\\[\\]{} ]{0,60}\\}") {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, &s).unwrap();
        let spec = format!("{}#A", path.display());
        let out = run(["comsub", "charpoly", "--a", spec.as_str()]);
        prop_assert!([0, 3, 4].contains(&out.code), "{:?} -> {}", s, out.code);
    }
}

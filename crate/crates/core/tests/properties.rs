use kluniform::binary::{binary_key, PointSet};
use kluniform::io::{parse_matroid, to_text};
use kluniform::iso::{are_isomorphic, binary_canonical_form};
use kluniform::uniformity::{
    is_22_uniform_circuits, is_kl_uniform, is_kl_uniform_flats, is_kl_uniform_minor, UniformityWitness,
};
use kluniform::{mask, FieldSpec, GfMatrix, KlPair, Matroid};
use proptest::prelude::*;

fn matrix(q: u32, rows: usize, entries: &[u8]) -> GfMatrix {
    let n = entries.len() / rows;
    let mut a = GfMatrix::zeros(FieldSpec::new(q).unwrap(), rows, n).unwrap();
    for i in 0..rows {
        for j in 0..n {
            a.set(i, j, entries[i * n + j] % q as u8);
        }
    }
    a
}

/// A linear matroid over GF(2) or GF(3) with at most 9 elements.
fn linear() -> impl Strategy<Value = Matroid> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=4, 1usize..=9).prop_flat_map(|(q, rows, n)| {
        prop::collection::vec(0u8..q as u8, rows * n).prop_map(move |e| Matroid::linear(matrix(q, rows, &e), None).unwrap())
    })
}

/// A simple binary matroid of rank at most 5, as distinct nonzero columns.
fn simple_binary() -> impl Strategy<Value = Matroid> {
    (2usize..=5).prop_flat_map(|r| {
        prop::collection::btree_set(1u64..(1 << r), 1..=((1 << r) - 1).min(12))
            .prop_map(move |cols| Matroid::binary(r, &cols.into_iter().collect::<Vec<_>>(), None).unwrap())
    })
}

fn pair() -> impl Strategy<Value = KlPair> {
    (1usize..=3, 1usize..=3).prop_map(|(k, l)| KlPair::new(k, l).unwrap())
}

/// The matroid whose element perm[i] plays the role of element i of `m`.
fn permute(m: &Matroid, perm: &[usize]) -> Matroid {
    let n = m.len();
    let mut inverse = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    let table: Vec<kluniform::Mask> = (0..1u64 << n).map(|y| mask::from_elements(mask::elements(y).map(|e| inverse[e]))).collect();
    Matroid::from_rank_fn(n, |y| m.rank_of(table[y as usize]), None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deciders_agree(m in linear(), kl in pair()) {
        let a = is_kl_uniform_flats(&m, kl).unwrap();
        let b = is_kl_uniform_minor(&m, kl).unwrap();
        prop_assert_eq!(a.uniform, b.uniform);
        for w in a.witness.iter().chain(b.witness.iter()) {
            prop_assert!(w.verify(&m, kl));
        }
        if kl == KlPair::new(2, 2).unwrap() {
            prop_assert_eq!(is_22_uniform_circuits(&m).unwrap(), a.uniform);
        }
    }

    #[test]
    fn duality_swaps_k_and_l(m in linear(), kl in pair()) {
        let d = m.dual().unwrap();
        prop_assert_eq!(is_kl_uniform(&m, kl).unwrap(), is_kl_uniform(&d, kl.dual()).unwrap());
        prop_assert!(d.dual().unwrap().same_rank_function(&m, 1 << 10));
    }

    #[test]
    fn upward_monotone(m in linear(), kl in pair()) {
        if is_kl_uniform(&m, kl).unwrap() {
            prop_assert!(is_kl_uniform(&m, KlPair::new(kl.k + 1, kl.l).unwrap()).unwrap());
            prop_assert!(is_kl_uniform(&m, KlPair::new(kl.k, kl.l + 1).unwrap()).unwrap());
        }
    }

    #[test]
    fn minor_closed(m in linear(), kl in pair(), e in 0usize..9) {
        prop_assume!(e < m.len());
        if is_kl_uniform(&m, kl).unwrap() {
            let x = mask::single(e);
            prop_assert!(is_kl_uniform(&m.delete(x).unwrap(), kl).unwrap());
            prop_assert!(is_kl_uniform(&m.contract(x).unwrap(), kl).unwrap());
        }
    }

    #[test]
    fn flat_witness_is_least(m in linear(), kl in pair()) {
        if let Some(UniformityWitness::Flat(f)) = is_kl_uniform_flats(&m, kl).unwrap().witness {
            let smaller = m.flats_of_rank(m.rank() - kl.k).unwrap().into_iter().filter(|&g| g < f && m.nullity(g) >= kl.l).count();
            prop_assert_eq!(smaller, 0);
        }
    }

    #[test]
    fn rank_axioms(m in linear()) {
        prop_assert!(m.check_rank_axioms(1 << 12));
    }

    #[test]
    fn text_round_trip(m in linear()) {
        let back = parse_matroid(&to_text(&m).unwrap()).unwrap();
        prop_assert!(back.same_rank_function(&m, 1 << 10));
    }

    #[test]
    fn canonical_form_ignores_labels(m in simple_binary(), seed in any::<u64>()) {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = permute(&m, &perm).to_rank_table().unwrap();
        prop_assert_eq!(binary_canonical_form(&m).unwrap(), binary_canonical_form(&p).unwrap());
        prop_assert_eq!(binary_key(&m).unwrap(), binary_key(&p).unwrap());
        let cert = are_isomorphic(&m, &p).unwrap();
        prop_assert!(cert.is_some_and(|c| c.verify(&m, &p)));
    }

    #[test]
    fn canonical_form_ignores_coordinates(m in simple_binary(), shear in 1u8..255) {
        let s = PointSet::from_matroid(&m).unwrap();
        let r = s.rank();
        // add row 0 to the rows selected by `shear`: an invertible change of coordinates
        let top = 1u8 << (r - 1);
        let mixed: Vec<u8> = s
            .points()
            .iter()
            .map(|&v| if v & top != 0 { v ^ (shear & (top - 1)) } else { v })
            .collect();
        let t = PointSet::new(r, mixed).unwrap();
        prop_assert_eq!(s.canonical_form().unwrap().0, t.canonical_form().unwrap().0);
    }

    #[test]
    fn pointset_uniformity_matches_matroid(m in simple_binary(), kl in pair()) {
        let s = PointSet::from_matroid(&m).unwrap();
        prop_assert_eq!(s.is_kl_uniform(kl.k, kl.l), is_kl_uniform(&m, kl).unwrap());
        prop_assert_eq!(s.is_3connected().unwrap(), m.is_3connected().unwrap());
    }
}

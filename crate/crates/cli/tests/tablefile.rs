use klv_cli::cache::Cache;
use klv_cli::tablefile::{
    Entry, Header, Section, TableFile, TableFileError, TableKind, FORMAT_VERSION,
};
use klv_core::coxeter::{CoxeterGroup, CoxeterSystem, TwistSpec};
use klv_core::kl::{compute_h, compute_kl};
use klv_core::twisted::{compute_hsigma, compute_htilde, compute_psigma};
use klv_core::LaurentPoly;
use proptest::prelude::*;

fn group(label: &str, twist: TwistSpec) -> CoxeterGroup {
    CoxeterSystem::from_label(label, twist)
        .unwrap()
        .enumerate()
        .unwrap()
}

fn json_bytes(file: &TableFile) -> Vec<u8> {
    let mut out = Vec::new();
    file.write_json(&mut out).unwrap();
    out
}

#[test]
fn store_then_load_h3_sigma_table() {
    let g = group("H3", TwistSpec::Identity);
    let sigma = compute_psigma(&g).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let file = TableFile::from_sigma(&g, &sigma);
    cache.store(g.system(), &file).unwrap();

    let loaded = cache.load(g.system(), TableKind::Psigma).unwrap().unwrap();
    assert_eq!(loaded, file);
    let back = loaded.to_sigma(&g).unwrap();
    assert!(back.pairs().iter().eq(sigma.pairs().iter()));
    for &w in g.twisted_involutions() {
        assert_eq!(back.mu_sigma_list(w), sigma.mu_sigma_list(w));
    }
    assert!(cache.load(g.system(), TableKind::Kl).unwrap().is_none());
}

#[test]
fn every_kind_round_trips_byte_identically() {
    let g = group("2A3", TwistSpec::FromLabel);
    let kl = compute_kl(&g).unwrap();
    let sigma = compute_psigma(&g).unwrap();
    let h = compute_h(&g, &kl);
    let htilde = compute_htilde(&g, &h);
    let hsigma = compute_hsigma(&g, &sigma, &kl);
    let polys = klv_core::twisted::split_polys(&g, &kl, &sigma).unwrap();
    let consts = klv_core::twisted::split_constants(&g, &htilde, &hsigma).unwrap();
    let files = [
        TableFile::from_kl(&g, &kl),
        TableFile::from_sigma(&g, &sigma),
        TableFile::from_split_polys(&g, &polys),
        TableFile::from_constants(&g, &h),
        TableFile::from_constants(&g, &htilde),
        TableFile::from_constants(&g, &hsigma),
        TableFile::from_split_constants(&g, &consts),
    ];
    for file in &files {
        let json = json_bytes(file);
        let reread = TableFile::read_json(&mut json.as_slice()).unwrap();
        assert_eq!(&reread, file);
        assert_eq!(json_bytes(&reread), json);
        let bin = file.to_binary();
        let reread = TableFile::from_binary(&bin).unwrap();
        assert_eq!(&reread, file);
        assert_eq!(reread.to_binary(), bin);
    }

    let back = files[0].to_kl(&g).unwrap();
    assert!(back.iter().eq(kl.iter()));
    for w in g.elements() {
        assert_eq!(back.mu_list(w), kl.mu_list(w));
    }
    for (file, table) in [(&files[3], &h), (&files[4], &htilde), (&files[5], &hsigma)] {
        let back = file.to_constants(&g).unwrap();
        assert_eq!(back.kind(), table.kind());
        assert!(back.iter().eq(table.iter()));
    }
}

#[test]
fn header_records_canonical_dictionary() {
    let g = group("A2", TwistSpec::Identity);
    let file = TableFile::from_kl(&g, &compute_kl(&g).unwrap());
    let h = &file.header;
    assert_eq!(h.format_version, FORMAT_VERSION);
    assert_eq!(h.system, "A2");
    assert_eq!(h.twist, vec![0, 1]);
    assert_eq!(
        h.elements,
        vec![
            vec![],
            vec![0],
            vec![1],
            vec![0, 1],
            vec![1, 0],
            vec![0, 1, 0]
        ]
    );
    let rebuilt = file.system().unwrap().enumerate().unwrap();
    file.check_against(&rebuilt).unwrap();
    // A table for another system is rejected.
    let other = group("A2", TwistSpec::Diagram);
    assert!(matches!(
        file.to_kl(&other),
        Err(TableFileError::Malformed(_))
    ));
    assert!(matches!(
        file.to_sigma(&g),
        Err(TableFileError::Malformed(_))
    ));
}

#[test]
fn damaged_binary_files_are_rejected() {
    let g = group("A3", TwistSpec::Identity);
    let bin = TableFile::from_sigma(&g, &compute_psigma(&g).unwrap()).to_binary();

    let mut wrong_version = bin.clone();
    wrong_version[4] = FORMAT_VERSION + 1;
    assert!(matches!(
        TableFile::from_binary(&wrong_version),
        Err(TableFileError::VersionMismatch { found, expected })
            if found == FORMAT_VERSION + 1 && expected == FORMAT_VERSION
    ));

    for cut in [0, 3, 10, bin.len() / 2, bin.len() - 1] {
        assert!(
            matches!(
                TableFile::from_binary(&bin[..cut]),
                Err(TableFileError::Truncated)
            ),
            "cut at {cut}"
        );
    }

    let mut flipped = bin.clone();
    let mid = bin.len() / 2;
    flipped[mid] ^= 1;
    assert!(matches!(
        TableFile::from_binary(&flipped),
        Err(TableFileError::Checksum)
    ));

    let mut magic = bin.clone();
    magic[0] = b'X';
    assert!(matches!(
        TableFile::from_binary(&magic),
        Err(TableFileError::BadMagic)
    ));
}

#[test]
fn damaged_json_files_are_rejected() {
    let g = group("A2", TwistSpec::Identity);
    let mut file = TableFile::from_kl(&g, &compute_kl(&g).unwrap());
    let json = json_bytes(&file);
    assert!(matches!(
        TableFile::read_json(&mut &json[..json.len() / 2]),
        Err(TableFileError::Truncated)
    ));
    file.header.format_version = FORMAT_VERSION + 1;
    let json = json_bytes(&file);
    assert!(matches!(
        TableFile::read_json(&mut json.as_slice()),
        Err(TableFileError::VersionMismatch { .. })
    ));
}

#[test]
fn cache_paths_separate_twists() {
    let cache = Cache::new("/tmp/klv-cache");
    let a = CoxeterSystem::from_label("A3", TwistSpec::Identity).unwrap();
    let b = CoxeterSystem::from_label("A3", TwistSpec::Diagram).unwrap();
    assert_ne!(cache.path(&a, TableKind::Kl), cache.path(&b, TableKind::Kl));
    assert_ne!(cache.path(&a, TableKind::Kl), cache.path(&a, TableKind::H));
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-20i32..20, prop::collection::vec(any::<i64>(), 0..8))
        .prop_map(|(lo, c)| LaurentPoly::from_coeffs(lo, c.into_iter().map(i128::from).collect()))
}

fn table() -> impl Strategy<Value = TableFile> {
    let entry = (prop::collection::vec(0u32..1000, 1..4), poly())
        .prop_map(|(key, poly)| Entry { key, poly });
    let section = ("[a-z^+~-]{1,8}", prop::collection::vec(entry, 0..20))
        .prop_map(|(family, entries)| Section { family, entries });
    (
        prop::collection::vec(section, 0..4),
        prop::collection::vec(prop::collection::vec(0u8..4, 0..5), 0..6),
    )
        .prop_map(|(sections, elements)| TableFile {
            header: Header {
                format_version: FORMAT_VERSION,
                system: "test".into(),
                matrix: vec![vec![1, 3], vec![3, 1]],
                twist: vec![1, 0],
                kind: TableKind::H,
                elements,
            },
            sections,
        })
}

proptest! {
    #[test]
    fn binary_and_json_round_trip(file in table()) {
        let bin = file.to_binary();
        prop_assert_eq!(&TableFile::from_binary(&bin).unwrap(), &file);
        let json = json_bytes(&file);
        let reread = TableFile::read_json(&mut json.as_slice()).unwrap();
        prop_assert_eq!(&reread, &file);
        prop_assert_eq!(json_bytes(&reread), json);
    }

    #[test]
    fn any_single_bit_flip_is_detected(file in table(), at in any::<prop::sample::Index>(), bit in 0u8..8) {
        let mut bin = file.to_binary();
        let i = at.index(bin.len());
        bin[i] ^= 1 << bit;
        prop_assert!(TableFile::from_binary(&bin).is_err());
    }
}

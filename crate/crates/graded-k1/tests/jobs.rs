use graded_k1::job::{JobFile, RingSpec};
use graded_k1::literal::{ElementLiteral, ElementaryLiteral, GradeLiteral, IdealName, IdealSpec, MatrixLiteral};
use graded_k1::{emit_job, parse_job, Command, Format};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        prop_oneof![Just(2u64), Just(3), Just(4), Just(9)].prop_map(|m| RingSpec::Trivial { modulus: m, grading: None }),
        Just(RingSpec::PairRing { modulus: 4, ideal: 2 }),
        Just(RingSpec::GroupRing {
            modulus: 3,
            group: graded_k1::job::GroupSpec { free: 0, torsion: vec![2] },
            graded: true,
        }),
    ]
}

fn shift(r: &RingSpec) -> BoxedStrategy<GradeLiteral> {
    match r {
        RingSpec::Trivial { .. } => Just(GradeLiteral::Scalar(0)).boxed(),
        _ => (0i64..3).prop_map(GradeLiteral::Scalar).boxed(),
    }
}

fn job() -> impl Strategy<Value = JobFile> {
    ring().prop_flat_map(|r| {
        let fam = proptest::collection::vec(shift(&r), 1..4);
        (
            Just(r),
            fam,
            proptest::option::of(1usize..4),
            proptest::option::of(any::<u64>()),
            proptest::option::of(prop_oneof![Just(Format::Text), Just(Format::Structured)]),
            any::<bool>(),
            any::<bool>(),
        )
    })
    .prop_map(|(ring, family, level, seed, format, with_matrix, with_ideal)| {
        let n = family.len();
        let matrix = with_matrix.then(|| MatrixLiteral {
            degree: None,
            rows: (0..n).map(|i| (0..n).map(|j| ElementLiteral::Scalar((i == j) as i64)).collect()).collect(),
        });
        let elementary = if n >= 2 {
            vec![ElementaryLiteral { i: 1, j: 2, entry: ElementLiteral::Scalar(0) }]
        } else {
            vec![]
        };
        let ideal = with_ideal.then_some(IdealSpec::Named(IdealName::Zero));
        JobFile {
            command: Some(if with_ideal { Command::Exactness } else { Command::K1 }),
            format,
            family,
            level,
            levels: None,
            lambdas: None,
            samples: None,
            seed,
            cap: None,
            strategy: None,
            ring,
            ideal,
            matrix,
            elementary,
        }
    })
}

proptest! {
    #[test]
    fn emitted_jobs_parse_back(file in job()) {
        let spec = graded_k1::JobSpec::from_file(file.clone()).unwrap();
        let text = emit_job(&spec);
        let again = parse_job(&text).unwrap();
        prop_assert_eq!(again.file(), &file);
    }
}

#[test]
fn sample_jobs_parse_and_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../jobs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = parse_job(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_job(&emit_job(&spec)).unwrap(), spec, "{}", path.display());
        count += 1;
    }
    assert!(count >= 5);
}

#[test]
fn syntax_errors_have_positions() {
    let err = parse_job("command = \"k1\"\nfamily = [0]\n[ring]\nkind = trivial\n").unwrap_err();
    match err {
        graded_k1::JobError::Syntax { line, column, .. } => assert_eq!((line, column), (4, 8)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn semantic_errors_name_the_field() {
    let err = parse_job("command = \"k1\"\nfamily = [0, 5]\n[ring]\nkind = \"trivial\"\nmodulus = 4\n").unwrap_err();
    assert!(err.to_string().starts_with("family[1]"), "{err}");
    let err = parse_job("command = \"k1\"\nfamily = [0]\nlevel = 0\n[ring]\nkind = \"trivial\"\nmodulus = 4\n").unwrap_err();
    assert_eq!(err.code(), "invalid-level");
    let err = parse_job("command = \"k1\"\nfamily = [0]\nbogus = 1\n[ring]\nkind = \"trivial\"\nmodulus = 4\n").unwrap_err();
    assert_eq!(err.code(), "syntax");
}

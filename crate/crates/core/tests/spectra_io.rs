use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use quotient_orders::spectra::{export_dot, load_named, normalize, parse_spectrum, spectrum_to_csv, RawSpectrum};
use quotient_orders::timbre::{brightness_compare, brightness_hasse, TimbralVector, DEFAULT_TOL};
use quotient_orders::{Error, Verdict};

const INSTRUMENTS: [&str; 6] = ["clarinet", "flute", "horn", "oboe", "saxophone", "trumpet"];

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("synthetic_{name}.csv"))
}

fn fixture_set() -> Vec<TimbralVector> {
    INSTRUMENTS
        .iter()
        .map(|name| {
            let raw = load_named(fixture(name)).unwrap();
            normalize(&raw, None).unwrap().named(*name)
        })
        .collect()
}

#[test]
fn fixtures_load_with_twenty_harmonics() {
    for name in INSTRUMENTS {
        let raw = load_named(fixture(name)).unwrap();
        assert_eq!(raw.len(), 20, "{name}");
        assert_eq!(raw.name, format!("synthetic_{name}"));
    }
}

#[test]
fn fixture_hasse_shape() {
    let hasse = brightness_hasse(&fixture_set(), DEFAULT_TOL).unwrap();
    let mut max = hasse.maximal_names();
    max.sort_unstable();
    assert_eq!(max, ["flute", "oboe", "trumpet"]);
    let mut min = hasse.minimal_names();
    min.sort_unstable();
    assert_eq!(min, ["clarinet", "horn", "saxophone"]);
    let mut edges = hasse.edges();
    edges.sort_unstable();
    assert_eq!(
        edges,
        [
            ("clarinet", "flute"),
            ("clarinet", "oboe"),
            ("horn", "flute"),
            ("horn", "oboe"),
            ("horn", "trumpet"),
            ("saxophone", "flute"),
            ("saxophone", "oboe"),
        ]
    );
    assert!(hasse.near_equal.is_empty());
}

#[test]
fn trumpet_is_brighter_than_horn() {
    let set = fixture_set();
    let (horn, trumpet) = (&set[2], &set[5]);
    assert_eq!(brightness_compare(horn, trumpet, DEFAULT_TOL).unwrap(), Verdict::Less);
}

#[test]
fn dot_export_is_stable_under_input_order() {
    let set = fixture_set();
    let mut reversed = set.clone();
    reversed.reverse();
    let a = export_dot(&brightness_hasse(&set, DEFAULT_TOL).unwrap());
    let b = export_dot(&brightness_hasse(&reversed, DEFAULT_TOL).unwrap());
    assert_eq!(a, b);
    assert!(a.contains("    \"horn\" -> \"trumpet\";\n"));
}

#[test]
fn csv_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let raw = load_named(fixture("oboe")).unwrap();
    let path = dir.path().join("oboe.csv");
    fs::write(&path, spectrum_to_csv(&raw)).unwrap();
    let back = load_named(&path).unwrap();
    assert_eq!(back.powers, raw.powers);

    let tv = normalize(&raw, None).unwrap();
    let json = serde_json::to_string(&tv).unwrap();
    let parsed: TimbralVector = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, tv);
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_named("/nonexistent/spectrum.csv").unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let text = "# comment\nharmonic_index,power\n1,0.5\n2,nan\n";
    match parse_spectrum(text, "x", "bad.csv").unwrap_err() {
        Error::Parse { line, path, .. } => {
            assert_eq!(line, 4);
            assert_eq!(path, "bad.csv");
        }
        other => panic!("unexpected {other}"),
    }
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_scale_free(
        powers in proptest::collection::vec(0.0f64..100.0, 1..24),
        scale in 1e-3f64..1e3,
    ) {
        prop_assume!(powers.iter().any(|p| *p > 1e-6));
        let raw = RawSpectrum::new("s", powers.clone(), "mem").unwrap();
        let once = normalize(&raw, None).unwrap();
        let again = normalize(&RawSpectrum::new("s", once.power().to_vec(), "mem").unwrap(), None).unwrap();
        let scaled = normalize(&RawSpectrum::new("s", powers.iter().map(|p| p * scale).collect(), "mem").unwrap(), None).unwrap();
        for i in 0..powers.len() {
            prop_assert!((once.power()[i] - again.power()[i]).abs() <= 1e-12);
            prop_assert!((once.power()[i] - scaled.power()[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn padding_appends_zeros(powers in proptest::collection::vec(0.1f64..10.0, 1..10), extra in 0usize..10) {
        let raw = RawSpectrum::new("s", powers.clone(), "mem").unwrap();
        let padded = normalize(&raw, Some(powers.len() + extra)).unwrap();
        prop_assert_eq!(padded.n(), powers.len() + extra);
        prop_assert!(padded.power()[powers.len()..].iter().all(|&p| p == 0.0));
    }
}

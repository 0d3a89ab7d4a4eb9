//! Harmonic power spectra on disk.
//!
//! Spectra are CSV files of `harmonic_index,power` rows with 1-based,
//! contiguous indices. A header row is optional and lines starting with `#`
//! are comments. Powers may be on any scale; [`normalize`] turns them into a
//! [`TimbralVector`].

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::timbre::{HasseDiagram, TimbralVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawSpectrum {
    pub name: String,
    /// Power of harmonics `1..=len`, in order.
    pub powers: Vec<f64>,
    pub source: String,
}

impl RawSpectrum {
    pub fn new(name: impl Into<String>, powers: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if let Some((k, p)) = powers.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidTimbre(format!("{name}: harmonic {} has power {p}", k + 1)));
        }
        if !powers.iter().any(|p| *p > 0.0) {
            return Err(Error::InvalidTimbre(format!("{name}: spectrum has no positive power")));
        }
        Ok(RawSpectrum {
            name,
            powers,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    /// Keep only the lowest `n` harmonics.
    pub fn truncate(mut self, n: usize) -> Result<Self> {
        self.powers.truncate(n);
        RawSpectrum::new(self.name, self.powers, self.source)
    }
}

fn parse_error(source: &str, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_owned(),
        line,
        message: message.into(),
    }
}

/// Parse spectrum CSV text. `source` only labels error messages.
pub fn parse_spectrum(text: &str, name: &str, source: &str) -> Result<RawSpectrum> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut rows: Vec<(usize, f64, u64)> = Vec::new();
    for (pos, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_error(source, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(parse_error(source, line, format!("expected 2 fields, found {}", record.len())));
        }
        let index = record[0].parse::<usize>();
        let power = record[1].parse::<f64>();
        let (index, power) = match (index, power) {
            (Ok(i), Ok(p)) => (i, p),
            // a non-numeric first data row is the header
            _ if pos == 0 && rows.is_empty() && record[0].parse::<f64>().is_err() => continue,
            (Err(_), _) => return Err(parse_error(source, line, format!("bad harmonic index {:?}", &record[0]))),
            (_, Err(_)) => return Err(parse_error(source, line, format!("bad power {:?}", &record[1]))),
        };
        if index == 0 {
            return Err(parse_error(source, line, "harmonic indices start at 1"));
        }
        if !power.is_finite() || power < 0.0 {
            return Err(parse_error(source, line, format!("power {power} is negative or not finite")));
        }
        if let Some((_, _, first)) = rows.iter().find(|(i, _, _)| *i == index) {
            return Err(parse_error(
                source,
                line,
                format!("duplicate harmonic index {index} (first on line {first})"),
            ));
        }
        rows.push((index, power, line));
    }
    if rows.is_empty() {
        return Err(parse_error(source, 1, "no spectrum rows"));
    }
    rows.sort_by_key(|r| r.0);
    if let Some(w) = rows.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(parse_error(source, w[1].2, format!("harmonic {} missing", w[0].0 + 1)));
    }
    if rows[0].0 != 1 {
        return Err(parse_error(source, rows[0].2, "harmonic 1 missing"));
    }
    let powers = rows.into_iter().map(|r| r.1).collect();
    RawSpectrum::new(name, powers, source).map_err(|e| parse_error(source, 1, e.to_string()))
}

pub fn load_spectrum(path: impl AsRef<Path>, name: &str) -> Result<RawSpectrum> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spectrum(&text, name, &path.display().to_string())
}

/// Load a spectrum named after its file stem.
pub fn load_named(path: impl AsRef<Path>) -> Result<RawSpectrum> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    load_spectrum(path, &name)
}

/// Render a raw spectrum back to CSV.
pub fn spectrum_to_csv(raw: &RawSpectrum) -> String {
    let mut out = String::from("harmonic_index,power\n");
    for (i, p) in raw.powers.iter().enumerate() {
        let _ = writeln!(out, "{},{:?}", i + 1, p);
    }
    out
}

/// Divide by total power, then zero-pad the top harmonics up to `pad_to`.
pub fn normalize(raw: &RawSpectrum, pad_to: Option<usize>) -> Result<TimbralVector> {
    let total: f64 = raw.powers.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::InvalidTimbre(format!("{}: total power is zero", raw.name)));
    }
    let mut power: Vec<f64> = raw.powers.iter().map(|p| p / total).collect();
    if let Some(n) = pad_to {
        if n < power.len() {
            return Err(Error::InvalidArgument(format!(
                "{}: cannot pad {} harmonics down to {n}",
                raw.name,
                power.len()
            )));
        }
        power.resize(n, 0.0);
    }
    Ok(TimbralVector::new(power)?.named(raw.name.clone()))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph of a brightness Hasse diagram. An edge `u -> v` means
/// `v` is brighter than `u`. Nodes and edges are sorted by name.
pub fn export_dot(hasse: &HasseDiagram) -> String {
    let mut nodes: Vec<&str> = hasse.names.iter().map(String::as_str).collect();
    nodes.sort_unstable();
    let mut edges = hasse.edges();
    edges.sort_unstable();

    let mut out = String::from("digraph brightness {\n    rankdir=BT;\n");
    for n in nodes {
        let _ = writeln!(out, "    {};", quote(n));
    }
    for (from, to) in edges {
        let _ = writeln!(out, "    {} -> {};", quote(from), quote(to));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timbre::{brightness_hasse, DEFAULT_TOL};

    #[test]
    fn parses_plain_rows() {
        let raw = parse_spectrum("1,4.0\n2,2.0\n3,2.0", "x", "mem").unwrap();
        assert_eq!(raw.powers, vec![4.0, 2.0, 2.0]);
    }

    #[test]
    fn header_comments_and_order() {
        let raw = parse_spectrum("# synthetic\nharmonic_index,power\n2, 1\n1, 3\n", "x", "mem").unwrap();
        assert_eq!(raw.powers, vec![3.0, 1.0]);
    }

    #[test]
    fn errors_name_lines() {
        let err = parse_spectrum("1,1\n2,-3\n", "x", "f.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("f.csv:2:"));
        let err = parse_spectrum("1,1\n2,abc\n", "x", "f.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_spectrum("1,1\n1,2\n", "x", "f.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_spectrum("", "x", "f.csv").is_err());
        assert!(parse_spectrum("# only a comment\n", "x", "f.csv").is_err());
        assert!(parse_spectrum("1,1\n3,1\n", "x", "f.csv").is_err());
        assert!(parse_spectrum("1,0\n2,0\n", "x", "f.csv").is_err());
    }

    #[test]
    fn normalize_examples() {
        let raw = RawSpectrum::new("a", vec![4.0, 2.0, 2.0], "mem").unwrap();
        assert_eq!(normalize(&raw, None).unwrap().power(), &[0.5, 0.25, 0.25]);
        let raw = RawSpectrum::new("b", vec![1.0, 1.0], "mem").unwrap();
        assert_eq!(normalize(&raw, Some(4)).unwrap().power(), &[0.5, 0.5, 0.0, 0.0]);
        assert!(normalize(&raw, Some(1)).is_err());
        assert!(RawSpectrum::new("z", vec![0.0, 0.0, 0.0], "mem").is_err());
    }

    #[test]
    fn dot_output() {
        let two = vec![
            TimbralVector::new(vec![1.0, 0.0]).unwrap().named("dark"),
            TimbralVector::new(vec![0.0, 1.0]).unwrap().named("bright"),
        ];
        let dot = export_dot(&brightness_hasse(&two, DEFAULT_TOL).unwrap());
        assert_eq!(
            dot,
            "digraph brightness {\n    rankdir=BT;\n    \"bright\";\n    \"dark\";\n    \"dark\" -> \"bright\";\n}\n"
        );
        let empty = export_dot(&brightness_hasse(&[], DEFAULT_TOL).unwrap());
        assert_eq!(empty, "digraph brightness {\n    rankdir=BT;\n}\n");
    }
}

//! Timbral vectors and the brighter-than order.
//!
//! A timbral vector is a probability vector over harmonics `1..=n`. Vector
//! `b` is brighter than `a` when, for every `k`, the power in harmonics
//! `k..=n` of `a` is at most that of `b`. Comparisons go through the
//! [`SuffixProfile`], whose `i`-th entry (0-based) holds the power in the top
//! `i + 1` harmonics; that is the product `Ha` with the brightness matrix
//! from [`OrderMatrix::brightness`].

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{FiniteRelation, Verdict};

/// Tolerance on `Σ power = 1` accepted by [`TimbralVector::new`].
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Default absolute slack for profile comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Smallest `|det H|` accepted by [`OrderMatrix::new`].
pub const SINGULAR_TOL: f64 = 1e-12;

/// Harmonic power proportions of a steady-state spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TimbreDoc", into = "TimbreDoc")]
pub struct TimbralVector {
    power: Vec<f64>,
    name: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TimbreDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    power: Vec<f64>,
}

impl TryFrom<TimbreDoc> for TimbralVector {
    type Error = Error;

    fn try_from(doc: TimbreDoc) -> Result<Self> {
        let v = TimbralVector::new(doc.power)?;
        Ok(match doc.name {
            Some(n) => v.named(n),
            None => v,
        })
    }
}

impl From<TimbralVector> for TimbreDoc {
    fn from(v: TimbralVector) -> Self {
        TimbreDoc {
            name: v.name,
            power: v.power,
        }
    }
}

impl TimbralVector {
    pub fn new(power: Vec<f64>) -> Result<Self> {
        if power.is_empty() {
            return Err(Error::InvalidTimbre("no harmonics".into()));
        }
        if let Some((k, p)) = power.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidTimbre(format!("harmonic {} has power {p}", k + 1)));
        }
        let total: f64 = power.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidTimbre(format!("powers sum to {total}, not 1")));
        }
        Ok(TimbralVector { power, name: None })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.power.len()
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Inverse of [`suffix_profile`]: rebuild the vector from top-`i`
    /// harmonic sums.
    pub fn from_profile(profile: &SuffixProfile) -> Result<Self> {
        let cum = &profile.0;
        let n = cum.len();
        let mut power = vec![0.0; n];
        for i in 0..n {
            let below = if i == 0 { 0.0 } else { cum[i - 1] };
            // top-(i+1) minus top-i is harmonic n - i
            power[n - 1 - i] = cum[i] - below;
        }
        TimbralVector::new(power)
    }
}

/// `cum[i]` is the power in the top `i + 1` harmonics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuffixProfile(pub Vec<f64>);

impl SuffixProfile {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub fn suffix_profile(a: &TimbralVector) -> SuffixProfile {
    let cum = a
        .power
        .iter()
        .rev()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    SuffixProfile(cum)
}

fn check_dims(a: &TimbralVector, b: &TimbralVector) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

fn compare_components(x: &[f64], y: &[f64], tol: f64) -> Verdict {
    if x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol) {
        return Verdict::Equal;
    }
    let le = x.iter().zip(y).all(|(a, b)| *a <= *b + tol);
    let ge = x.iter().zip(y).all(|(a, b)| *b <= *a + tol);
    Verdict::from_le_pair(le, ge)
}

/// Brighter-than comparison: `Less` means `b` is brighter than `a`.
pub fn brightness_compare(a: &TimbralVector, b: &TimbralVector, tol: f64) -> Result<Verdict> {
    check_dims(a, b)?;
    Ok(compare_components(&suffix_profile(a).0, &suffix_profile(b).0, tol))
}

/// Greatest lower bound in the brightness lattice: the vector whose suffix
/// profile is the component-wise minimum of the two profiles.
pub fn infimum(x: &TimbralVector, y: &TimbralVector) -> Result<TimbralVector> {
    check_dims(x, y)?;
    let px = suffix_profile(x);
    let py = suffix_profile(y);
    let cum = px.0.iter().zip(&py.0).map(|(a, b)| a.min(*b)).collect();
    TimbralVector::from_profile(&SuffixProfile(cum))
}

/// Total variational distance, `½‖x − y‖₁`.
pub fn tv_distance(x: &TimbralVector, y: &TimbralVector) -> Result<f64> {
    check_dims(x, y)?;
    Ok(0.5 * l1_distance(&x.power, &y.power))
}

pub(crate) fn l1_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

/// A nonnegative nonsingular `n × n` matrix defining the order
/// `a ⪯ b ⇔ Ha ≤ Hb`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderMatrix(DMatrix<f64>);

impl OrderMatrix {
    pub fn new(h: DMatrix<f64>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::InvalidMatrix(format!("{}x{} is not square", h.nrows(), h.ncols())));
        }
        if h.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidMatrix("entries must be finite and nonnegative".into()));
        }
        let det = h.clone().lu().determinant();
        if det.abs() <= SINGULAR_TOL {
            return Err(Error::InvalidMatrix(format!("singular (det = {det:e})")));
        }
        Ok(OrderMatrix(h))
    }

    /// `H[i][j] = 1` when harmonic `j + 1` is among the top `i + 1`.
    pub fn brightness(n: usize) -> Self {
        OrderMatrix(DMatrix::from_fn(n, n, |i, j| if j + i + 1 >= n { 1.0 } else { 0.0 }))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn apply(&self, a: &TimbralVector) -> Result<Vec<f64>> {
        if a.n() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: a.n(),
            });
        }
        let v = &self.0 * DVector::from_column_slice(&a.power);
        Ok(v.iter().copied().collect())
    }

    pub fn compare(&self, a: &TimbralVector, b: &TimbralVector, tol: f64) -> Result<Verdict> {
        check_dims(a, b)?;
        Ok(compare_components(&self.apply(a)?, &self.apply(b)?, tol))
    }
}

/// Order given by `Ha ≤ Hb` component-wise.
pub fn h_compare(h: &OrderMatrix, a: &TimbralVector, b: &TimbralVector, tol: f64) -> Result<Verdict> {
    h.compare(a, b, tol)
}

/// Brightness order over a named collection, with its cover relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub names: Vec<String>,
    /// `order.holds(i, j)`: `j` is at least as bright as `i` (strictly, or `i == j`).
    pub order: FiniteRelation,
    /// Cover edges of `order`.
    pub cover: FiniteRelation,
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
    /// Distinct entries whose profiles agree within tolerance. They stay
    /// separate nodes and are left unrelated.
    pub near_equal: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn maximal_names(&self) -> Vec<&str> {
        self.maximal.iter().map(|&i| self.names[i].as_str()).collect()
    }

    pub fn minimal_names(&self) -> Vec<&str> {
        self.minimal.iter().map(|&i| self.names[i].as_str()).collect()
    }

    /// Cover edges as `(darker, brighter)` name pairs.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.cover
            .pairs()
            .map(|(i, j)| (self.names[i].as_str(), self.names[j].as_str()))
            .collect()
    }
}

pub fn brightness_hasse(collection: &[TimbralVector], tol: f64) -> Result<HasseDiagram> {
    let names: Vec<String> = collection
        .iter()
        .enumerate()
        .map(|(i, v)| v.name().map(str::to_owned).unwrap_or_else(|| format!("#{i}")))
        .collect();
    let mut seen = HashSet::new();
    if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(Error::InvalidArgument(format!("duplicate name {dup:?}")));
    }
    if let Some(first) = collection.first() {
        for v in collection {
            check_dims(first, v)?;
        }
    }
    let m = collection.len();
    let mut verdicts = vec![Verdict::Equal; m * m];
    let mut near_equal = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let v = brightness_compare(&collection[i], &collection[j], tol)?;
            verdicts[i * m + j] = v;
            if v == Verdict::Equal && i < j {
                near_equal.push((i, j));
            }
        }
    }
    let order = FiniteRelation::from_fn(m, |i, j| i == j || verdicts[i * m + j] == Verdict::Less)
        .with_labels(names.clone())?;
    let cover = order.transitive_reduction()?;
    let all: Vec<usize> = (0..m).collect();
    let maximal = order.maximal_elements(&all)?;
    let minimal = order.minimal_elements(&all)?;
    Ok(HasseDiagram {
        names,
        order,
        cover,
        maximal,
        minimal,
        near_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(p: &[f64]) -> TimbralVector {
        TimbralVector::new(p.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn validation() {
        assert!(TimbralVector::new(vec![]).is_err());
        assert!(TimbralVector::new(vec![0.5, 0.6]).is_err());
        assert!(TimbralVector::new(vec![1.5, -0.5]).is_err());
        assert!(TimbralVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn suffix_profile_examples() {
        assert!(close(&suffix_profile(&tv(&[0.5, 0.5, 0.0])).0, &[0.0, 0.5, 1.0]));
        assert!(close(&suffix_profile(&tv(&[0.0, 0.0, 1.0])).0, &[1.0, 1.0, 1.0]));
        assert!(close(&suffix_profile(&tv(&[0.25, 0.25, 0.5])).0, &[0.5, 0.75, 1.0]));
    }

    #[test]
    fn compare_examples() {
        let a = tv(&[0.5, 0.5, 0.0]);
        let b = tv(&[0.5, 0.0, 0.5]);
        let c = tv(&[0.0, 1.0, 0.0]);
        assert_eq!(brightness_compare(&a, &b, DEFAULT_TOL).unwrap(), Verdict::Less);
        assert_eq!(brightness_compare(&b, &a, DEFAULT_TOL).unwrap(), Verdict::Greater);
        assert_eq!(brightness_compare(&b, &c, DEFAULT_TOL).unwrap(), Verdict::Incomparable);
        assert_eq!(brightness_compare(&a, &a, DEFAULT_TOL).unwrap(), Verdict::Equal);
        assert!(brightness_compare(&a, &tv(&[1.0]), DEFAULT_TOL).is_err());
    }

    #[test]
    fn infimum_examples() {
        let z = infimum(&tv(&[0.5, 0.0, 0.5]), &tv(&[0.0, 1.0, 0.0])).unwrap();
        assert!(close(z.power(), &[0.5, 0.5, 0.0]));
        let x = tv(&[0.2, 0.3, 0.5]);
        assert!(close(infimum(&x, &x).unwrap().power(), x.power()));
        let lo = tv(&[0.5, 0.5, 0.0]);
        let hi = tv(&[0.5, 0.0, 0.5]);
        assert!(close(infimum(&lo, &hi).unwrap().power(), lo.power()));
    }

    #[test]
    fn tv_examples() {
        assert_eq!(tv_distance(&tv(&[1.0, 0.0, 0.0]), &tv(&[0.0, 0.0, 1.0])).unwrap(), 1.0);
        let x = tv(&[0.3, 0.3, 0.4]);
        assert_eq!(tv_distance(&x, &x).unwrap(), 0.0);
        let d = tv_distance(&tv(&[0.5, 0.5, 0.0]), &tv(&[0.25, 0.25, 0.5])).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn order_matrix_validation() {
        assert!(OrderMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0])).is_err());
        assert!(OrderMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 0.0, 1.0])).is_err());
        assert!(OrderMatrix::new(DMatrix::from_row_slice(1, 2, &[1.0, 1.0])).is_err());
        let h = OrderMatrix::brightness(3);
        assert_eq!(
            h.matrix(),
            &DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0])
        );
    }

    #[test]
    fn h_compare_examples() {
        let id = OrderMatrix::new(DMatrix::identity(2, 2)).unwrap();
        let a = tv(&[0.4, 0.6]);
        let b = tv(&[0.6, 0.4]);
        assert_eq!(h_compare(&id, &a, &b, DEFAULT_TOL).unwrap(), Verdict::Incomparable);
        // Ha = (0.4, 1), Hb = (0.6, 1)
        let h = OrderMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(h_compare(&h, &a, &b, DEFAULT_TOL).unwrap(), Verdict::Less);
        let bright = OrderMatrix::brightness(2);
        assert_eq!(
            h_compare(&bright, &a, &b, DEFAULT_TOL).unwrap(),
            brightness_compare(&a, &b, DEFAULT_TOL).unwrap()
        );
    }

    #[test]
    fn hasse_chain_and_antichain() {
        let chain = vec![
            tv(&[1.0, 0.0, 0.0]).named("a"),
            tv(&[0.0, 1.0, 0.0]).named("b"),
            tv(&[0.0, 0.0, 1.0]).named("c"),
        ];
        let h = brightness_hasse(&chain, DEFAULT_TOL).unwrap();
        assert_eq!(h.edges(), vec![("a", "b"), ("b", "c")]);
        assert_eq!(h.maximal_names(), vec!["c"]);
        assert_eq!(h.minimal_names(), vec!["a"]);

        let anti = vec![
            tv(&[0.5, 0.0, 0.5]).named("x"),
            tv(&[0.0, 1.0, 0.0]).named("y"),
            tv(&[0.25, 0.5, 0.25]).named("z"),
        ];
        let h = brightness_hasse(&anti, DEFAULT_TOL).unwrap();
        assert!(h.edges().is_empty());
        assert_eq!(h.maximal.len(), 3);
        assert_eq!(h.minimal.len(), 3);
    }

    #[test]
    fn hasse_rejects_duplicates() {
        let dup = vec![tv(&[1.0]).named("a"), tv(&[1.0]).named("a")];
        assert!(brightness_hasse(&dup, DEFAULT_TOL).is_err());
    }

    #[test]
    fn hasse_keeps_near_equal_nodes() {
        let v = vec![tv(&[0.5, 0.5]).named("a"), tv(&[0.5, 0.5]).named("b")];
        let h = brightness_hasse(&v, DEFAULT_TOL).unwrap();
        assert_eq!(h.near_equal, vec![(0, 1)]);
        assert_eq!(h.names.len(), 2);
    }
}

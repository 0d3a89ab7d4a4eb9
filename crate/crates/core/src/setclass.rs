//! Pitch class sets in `Z_N`, their transposition classes, and the
//! subset/superset order between classes.
//!
//! A set is stored as a bitmask with bit `i` set when pitch class `i` is
//! present, so `N` is capped at [`MAX_EDO`]. Classes are represented by the
//! transposition whose mask is numerically smallest; for a nonempty set that
//! is the rotation starting on 0 with the shortest span, ties broken by
//! packing toward the bottom (Rahn's normal form), so the major triad is
//! `{0,4,7}` rather than `{0,3,8}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::FiniteRelation;

/// Largest supported number of tones per octave.
pub const MAX_EDO: usize = 24;

fn check_edo(edo: usize) -> Result<()> {
    if edo == 0 || edo > MAX_EDO {
        return Err(Error::EdoOutOfRange { edo, max: MAX_EDO });
    }
    Ok(())
}

fn full_mask(edo: usize) -> u32 {
    (1u32 << edo) - 1
}

/// Rotate an `edo`-bit mask up by `t` steps (transposition by `t`).
fn rotate(mask: u32, t: usize, edo: usize) -> u32 {
    let t = t % edo;
    if t == 0 {
        return mask;
    }
    ((mask << t) | (mask >> (edo - t))) & full_mask(edo)
}

/// A subset of `Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitchClassSet {
    edo: usize,
    mask: u32,
}

impl PitchClassSet {
    pub fn new(edo: usize, members: &[usize]) -> Result<Self> {
        check_edo(edo)?;
        let mut mask = 0u32;
        for &m in members {
            if m >= edo {
                return Err(Error::InvalidPitchClassSet(format!("pitch class {m} not in Z_{edo}")));
            }
            if mask >> m & 1 == 1 {
                return Err(Error::InvalidPitchClassSet(format!("duplicate pitch class {m}")));
            }
            mask |= 1 << m;
        }
        Ok(PitchClassSet { edo, mask })
    }

    pub fn from_mask(edo: usize, mask: u32) -> Result<Self> {
        check_edo(edo)?;
        if mask & !full_mask(edo) != 0 {
            return Err(Error::InvalidPitchClassSet(format!("mask {mask:#x} exceeds Z_{edo}")));
        }
        Ok(PitchClassSet { edo, mask })
    }

    pub fn empty(edo: usize) -> Result<Self> {
        Self::from_mask(edo, 0)
    }

    pub fn edo(&self) -> usize {
        self.edo
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.edo).filter(|&i| self.mask >> i & 1 == 1).collect()
    }

    /// `T_t`: add `t` to every member, mod `N`.
    pub fn transpose(&self, t: usize) -> PitchClassSet {
        PitchClassSet {
            edo: self.edo,
            mask: rotate(self.mask, t, self.edo),
        }
    }

    pub fn is_subset(&self, other: &PitchClassSet) -> bool {
        self.edo == other.edo && self.mask & !other.mask == 0
    }
}

impl fmt::Display for PitchClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_braces(f, &self.members())
    }
}

fn write_braces(f: &mut fmt::Formatter<'_>, members: &[usize]) -> fmt::Result {
    f.write_str("{")?;
    for (i, m) in members.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{m}")?;
    }
    f.write_str("}")
}

/// A transposition class of pitch class sets, held by its canonical
/// representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetClassDoc", into = "SetClassDoc")]
pub struct SetClass {
    rep: PitchClassSet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SetClassDoc {
    edo: usize,
    members: Vec<usize>,
}

impl TryFrom<SetClassDoc> for SetClass {
    type Error = Error;

    fn try_from(doc: SetClassDoc) -> Result<Self> {
        Ok(canonical_form(&PitchClassSet::new(doc.edo, &doc.members)?))
    }
}

impl From<SetClass> for SetClassDoc {
    fn from(c: SetClass) -> Self {
        SetClassDoc {
            edo: c.edo(),
            members: c.members(),
        }
    }
}

impl SetClass {
    /// Class of an explicit member list.
    pub fn of(edo: usize, members: &[usize]) -> Result<Self> {
        Ok(canonical_form(&PitchClassSet::new(edo, members)?))
    }

    pub fn rep(&self) -> PitchClassSet {
        self.rep
    }

    pub fn edo(&self) -> usize {
        self.rep.edo
    }

    pub fn cardinality(&self) -> usize {
        self.rep.cardinality()
    }

    pub fn members(&self) -> Vec<usize> {
        self.rep.members()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }
}

impl PartialOrd for SetClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the ascending member sequence (display order), not the
/// subset order. Use [`class_leq`] for the latter.
impl Ord for SetClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.edo(), self.members()).cmp(&(other.edo(), other.members()))
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

fn canonical_mask(mask: u32, edo: usize) -> u32 {
    (0..edo).map(|t| rotate(mask, t, edo)).min().unwrap_or(mask)
}

/// Canonical representative of the transposition class of `pcs`.
pub fn canonical_form(pcs: &PitchClassSet) -> SetClass {
    SetClass {
        rep: PitchClassSet {
            edo: pcs.edo,
            mask: canonical_mask(pcs.mask, pcs.edo),
        },
    }
}

/// Every transposition class of subsets of `Z_N`, the empty class included,
/// ordered by representative mask.
pub fn enumerate_set_classes(edo: usize) -> Result<Vec<SetClass>> {
    check_edo(edo)?;
    let mut out = vec![SetClass {
        rep: PitchClassSet { edo, mask: 0 },
    }];
    // nonempty canonical masks always contain pitch class 0
    let limit = 1u64 << edo;
    for mask in (1..limit).step_by(2) {
        let mask = mask as u32;
        if (1..edo).all(|t| rotate(mask, t, edo) >= mask) {
            out.push(SetClass {
                rep: PitchClassSet { edo, mask },
            });
        }
    }
    Ok(out)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Number of transposition classes of subsets of `Z_N`,
/// `(1/N) Σ_{d | N} φ(d) 2^{N/d}`.
pub fn burnside_count(edo: usize) -> u64 {
    let n = edo as u64;
    let total: u64 = (1..=n).filter(|&d| n.is_multiple_of(d)).map(|d| euler_phi(d) << (n / d)).sum();
    total / n
}

fn check_same_edo(a: &SetClass, b: &SetClass) -> Result<()> {
    if a.edo() != b.edo() {
        return Err(Error::EdoMismatch {
            left: a.edo(),
            right: b.edo(),
        });
    }
    Ok(())
}

/// Subset/superset order on classes: some transposition of `a` is
/// contained in `b`.
pub fn class_leq(a: &SetClass, b: &SetClass) -> Result<bool> {
    check_same_edo(a, b)?;
    let edo = a.edo();
    let (ma, mb) = (a.rep.mask, b.rep.mask);
    if ma.count_ones() > mb.count_ones() {
        return Ok(false);
    }
    Ok((0..edo).any(|t| rotate(ma, t, edo) & !mb == 0))
}

/// Scalar second and third spans of a class, in step units of `Z_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanProfile {
    pub seconds: Vec<usize>,
    pub thirds: Vec<usize>,
}

/// Spans between cyclically consecutive members (seconds) and members two
/// apart (thirds). Thirds are sums of two consecutive seconds, so for
/// classes of one or two members they reach past the octave.
pub fn span_profile(class: &SetClass) -> Result<SpanProfile> {
    let members = class.members();
    let n = members.len();
    if n == 0 {
        return Err(Error::InvalidArgument("the empty class has no scalar intervals".into()));
    }
    let edo = class.edo();
    let seconds: Vec<usize> = (0..n)
        .map(|i| {
            if i + 1 < n {
                members[i + 1] - members[i]
            } else {
                members[0] + edo - members[n - 1]
            }
        })
        .collect();
    let thirds = (0..n).map(|i| seconds[i] + seconds[(i + 1) % n]).collect();
    Ok(SpanProfile { seconds, thirds })
}

fn check_span(edo: usize, k: usize) -> Result<()> {
    check_edo(edo)?;
    if k == 0 || k > edo {
        return Err(Error::InvalidArgument(format!("max second {k} outside 1..={edo}")));
    }
    Ok(())
}

fn max_second(class: &SetClass) -> usize {
    span_profile(class)
        .map(|p| p.seconds.into_iter().max().unwrap_or(0))
        .unwrap_or(usize::MAX)
}

/// `SC_k`: nonempty classes whose scalar seconds all span at most `k`.
pub fn sck_members(edo: usize, k: usize) -> Result<Vec<SetClass>> {
    check_span(edo, k)?;
    Ok(enumerate_set_classes(edo)?
        .into_iter()
        .filter(|c| !c.is_empty() && max_second(c) <= k)
        .collect())
}

/// The subset order restricted to `classes`.
pub fn subset_order(classes: &[SetClass]) -> Result<FiniteRelation> {
    if let Some(first) = classes.first() {
        for c in classes {
            check_same_edo(first, c)?;
        }
    }
    let rel = FiniteRelation::from_fn(classes.len(), |i, j| {
        class_leq(&classes[i], &classes[j]).expect("edo checked above")
    });
    rel.with_labels(classes.iter().map(|c| c.to_string()).collect())
}

/// Minimal elements of `SC_k` under the subset order, found directly from
/// the order relation. Sorted by member sequence.
pub fn sck_minimal(edo: usize, k: usize) -> Result<Vec<SetClass>> {
    let members = sck_members(edo, k)?;
    let rel = subset_order(&members)?;
    let all: Vec<usize> = (0..members.len()).collect();
    let mut out: Vec<SetClass> = rel.minimal_elements(&all)?.into_iter().map(|i| members[i]).collect();
    out.sort();
    Ok(out)
}

/// Membership of `class` in the thirds criterion: every scalar third spans
/// at least `k + 1`.
pub fn thirds_criterion(class: &SetClass, k: usize) -> Result<bool> {
    Ok(span_profile(class)?.thirds.iter().all(|&t| t > k))
}

/// Detailed outcome of [`proposition1_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdsCriterionReport {
    pub edo: usize,
    pub max_second: usize,
    pub members: usize,
    pub order_minimal: Vec<SetClass>,
    pub thirds_minimal: Vec<SetClass>,
    pub agrees: bool,
}

pub fn proposition1_report(edo: usize, k: usize) -> Result<ThirdsCriterionReport> {
    let members = sck_members(edo, k)?;
    let order_minimal = sck_minimal(edo, k)?;
    let mut thirds_minimal = Vec::new();
    for c in &members {
        if thirds_criterion(c, k)? {
            thirds_minimal.push(*c);
        }
    }
    thirds_minimal.sort();
    let agrees = order_minimal == thirds_minimal;
    Ok(ThirdsCriterionReport {
        edo,
        max_second: k,
        members: members.len(),
        order_minimal,
        thirds_minimal,
        agrees,
    })
}

/// Does order-theoretic minimality in `SC_k` coincide with the thirds
/// criterion?
pub fn proposition1_check(edo: usize, k: usize) -> Result<bool> {
    Ok(proposition1_report(edo, k)?.agrees)
}

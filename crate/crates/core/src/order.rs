//! Finite partial orders, permutation group actions, and the relations they
//! induce on the orbit space.
//!
//! Elements of the ground set are indexed `0..size`. A [`FiniteRelation`]
//! stores `i ⪯ j` as a dense boolean table; a [`GroupAction`] is an explicit
//! list of permutations closed under composition and inverse. The quotient
//! by the action is a [`QuotientStructure`], and [`induced_relation`]
//! equips it with the strong (universal) or weak (existential) lift of the
//! ambient order.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the size of a group produced by [`GroupAction::generate`].
pub const GROUP_CLOSURE_CAP: usize = 100_000;

/// Absolute tolerance used when comparing prefix sums in
/// [`submajorize_compare`].
pub const SUBMAJORIZE_TOL: f64 = 1e-9;

/// Outcome of comparing two elements under a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Verdict {
    /// `true` for `Less` or `Equal`.
    pub fn is_le(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Verdict::Greater | Verdict::Equal)
    }

    pub fn reverse(self) -> Verdict {
        match self {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            other => other,
        }
    }

    /// Build a verdict from the two one-sided tests `a ⪯ b` and `b ⪯ a`.
    pub fn from_le_pair(le: bool, ge: bool) -> Verdict {
        match (le, ge) {
            (true, true) => Verdict::Equal,
            (true, false) => Verdict::Less,
            (false, true) => Verdict::Greater,
            (false, false) => Verdict::Incomparable,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Less => "Less",
            Verdict::Greater => "Greater",
            Verdict::Equal => "Equal",
            Verdict::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// A binary relation on `0..size`. No axioms are assumed; see
/// [`FiniteRelation::axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationDoc", into = "RelationDoc")]
pub struct FiniteRelation {
    size: usize,
    holds: Vec<bool>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RelationDoc {
    size: usize,
    pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<RelationDoc> for FiniteRelation {
    type Error = Error;

    fn try_from(doc: RelationDoc) -> Result<Self> {
        let rel = FiniteRelation::from_pairs(doc.size, doc.pairs.iter().map(|p| (p[0], p[1])))?;
        match doc.labels {
            Some(labels) => rel.with_labels(labels),
            None => Ok(rel),
        }
    }
}

impl From<FiniteRelation> for RelationDoc {
    fn from(rel: FiniteRelation) -> Self {
        RelationDoc {
            size: rel.size,
            pairs: rel.pairs().map(|(i, j)| [i, j]).collect(),
            labels: rel.labels,
        }
    }
}

/// Result of [`FiniteRelation::axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationAxioms {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl RelationAxioms {
    pub fn is_preorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn is_partial_order(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

impl FiniteRelation {
    /// The empty relation on `size` elements.
    pub fn empty(size: usize) -> Self {
        FiniteRelation {
            size,
            holds: vec![false; size * size],
            labels: None,
        }
    }

    /// Equality on `size` elements (the discrete order).
    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| i == j)
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut holds = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                holds.push(f(i, j));
            }
        }
        FiniteRelation {
            size,
            holds,
            labels: None,
        }
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rel = Self::empty(size);
        for (i, j) in pairs {
            rel.check_index(i)?;
            rel.check_index(j)?;
            rel.holds[i * size + j] = true;
        }
        Ok(rel)
    }

    /// Same relation with `i ⪯ i` added for every element.
    pub fn with_reflexive(mut self) -> Self {
        for i in 0..self.size {
            self.holds[i * self.size + i] = true;
        }
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.holds[i * self.size + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label for element `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// All pairs `(i, j)` with `i ⪯ j`, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        (0..n * n)
            .filter(move |&k| self.holds[k])
            .map(move |k| (k / n, k % n))
    }

    /// Pairs with `i != j`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|(i, j)| i != j)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.size {
            return Err(Error::OutOfRange {
                index: i,
                size: self.size,
            });
        }
        Ok(())
    }

    /// Exhaustive check of reflexivity, antisymmetry and transitivity.
    pub fn axioms(&self) -> RelationAxioms {
        let n = self.size;
        let reflexive = (0..n).all(|i| self.holds(i, i));
        let antisymmetric = (0..n).all(|i| (i + 1..n).all(|j| !(self.holds(i, j) && self.holds(j, i))));
        let transitive = (0..n).all(|i| {
            (0..n)
                .filter(|&j| self.holds(i, j))
                .all(|j| (0..n).all(|k| !self.holds(j, k) || self.holds(i, k)))
        });
        RelationAxioms {
            reflexive,
            antisymmetric,
            transitive,
        }
    }

    pub fn is_partial_order(&self) -> bool {
        self.axioms().is_partial_order()
    }

    /// Elements of `subset` with no other element of `subset` below them.
    pub fn minimal_elements(&self, subset: &[usize]) -> Result<Vec<usize>> {
        self.extremal_elements(subset, |i, j| self.holds(j, i))
    }

    /// Elements of `subset` with no other element of `subset` above them.
    pub fn maximal_elements(&self, subset: &[usize]) -> Result<Vec<usize>> {
        self.extremal_elements(subset, |i, j| self.holds(i, j))
    }

    fn extremal_elements(&self, subset: &[usize], beats: impl Fn(usize, usize) -> bool) -> Result<Vec<usize>> {
        for &i in subset {
            self.check_index(i)?;
        }
        debug_assert!(
            self.restricted_is_partial_order(subset),
            "relation is not a partial order on the requested subset"
        );
        Ok(subset
            .iter()
            .copied()
            .filter(|&i| !subset.iter().any(|&j| j != i && beats(i, j)))
            .collect())
    }

    fn restricted_is_partial_order(&self, subset: &[usize]) -> bool {
        let sub = FiniteRelation::from_fn(subset.len(), |a, b| self.holds(subset[a], subset[b]));
        sub.is_partial_order()
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> FiniteRelation {
        let n = self.size;
        let mut out = self.clone().with_reflexive();
        for k in 0..n {
            for i in 0..n {
                if !out.holds(i, k) {
                    continue;
                }
                for j in 0..n {
                    if out.holds(k, j) {
                        out.holds[i * n + j] = true;
                    }
                }
            }
        }
        out
    }

    /// Cover relation of a partial order: `i → j` iff `i ≺ j` with nothing
    /// strictly between. Reflexive pairs are dropped.
    pub fn transitive_reduction(&self) -> Result<FiniteRelation> {
        let ax = self.axioms();
        if !ax.is_partial_order() {
            return Err(Error::NotPartialOrder(format!("{ax:?}")));
        }
        let n = self.size;
        let covers = |i: usize, j: usize| {
            i != j && self.holds(i, j) && !(0..n).any(|k| k != i && k != j && self.holds(i, k) && self.holds(k, j))
        };
        let mut out = FiniteRelation::from_fn(n, covers);
        out.labels = self.labels.clone();
        Ok(out)
    }
}

/// A finite group of permutations of `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ActionDoc", into = "ActionDoc")]
pub struct GroupAction {
    size: usize,
    perms: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ActionDoc {
    size: usize,
    perms: Vec<Vec<usize>>,
}

impl TryFrom<ActionDoc> for GroupAction {
    type Error = Error;

    fn try_from(doc: ActionDoc) -> Result<Self> {
        GroupAction::new(doc.size, doc.perms)
    }
}

impl From<GroupAction> for ActionDoc {
    fn from(g: GroupAction) -> Self {
        ActionDoc {
            size: g.size,
            perms: g.perms,
        }
    }
}

fn check_perm(size: usize, p: &[usize]) -> Result<()> {
    if p.len() != size {
        return Err(Error::MalformedAction(format!(
            "permutation {p:?} has length {}, expected {size}",
            p.len()
        )));
    }
    let mut seen = vec![false; size];
    for &x in p {
        if x >= size || seen[x] {
            return Err(Error::MalformedAction(format!("{p:?} is not a permutation of 0..{size}")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    // (f ∘ g)(x) = f(g(x))
    g.iter().map(|&x| f[x]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl GroupAction {
    /// Validate an explicit permutation list. Duplicates are removed; the
    /// set must contain the identity and be closed under composition and
    /// inverse.
    pub fn new(size: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            check_perm(size, p)?;
        }
        let mut seen = HashSet::new();
        let perms: Vec<Vec<usize>> = perms.into_iter().filter(|p| seen.insert(p.clone())).collect();
        let identity: Vec<usize> = (0..size).collect();
        if !seen.contains(&identity) {
            return Err(Error::MalformedAction("identity permutation missing".into()));
        }
        for f in &perms {
            if !seen.contains(&invert(f)) {
                return Err(Error::MalformedAction(format!("inverse of {f:?} missing")));
            }
            for g in &perms {
                let fg = compose(f, g);
                if !seen.contains(&fg) {
                    return Err(Error::MalformedAction(format!(
                        "not closed: {f:?} ∘ {g:?} = {fg:?} missing"
                    )));
                }
            }
        }
        Ok(GroupAction { size, perms })
    }

    /// Close a generator set under composition. Fails once the group would
    /// exceed [`GROUP_CLOSURE_CAP`] elements.
    pub fn generate(size: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for p in generators {
            check_perm(size, p)?;
        }
        let identity: Vec<usize> = (0..size).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut perms = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    if perms.len() >= GROUP_CLOSURE_CAP {
                        return Err(Error::MalformedAction(format!(
                            "generated group exceeds {GROUP_CLOSURE_CAP} elements"
                        )));
                    }
                    perms.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        // finite permutation monoids are groups, so no separate inverse step
        Ok(GroupAction { size, perms })
    }

    pub fn trivial(size: usize) -> Self {
        GroupAction {
            size,
            perms: vec![(0..size).collect()],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }
}

/// Induced relation flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InduceMode {
    /// `A ⪯ B` iff every `a ∈ A` lies below some `b ∈ B`.
    Strong,
    /// `A ⪯ B` iff some `a ∈ A` lies below some `b ∈ B`.
    Weak,
}

/// Orbit partition of a ground set, optionally with a relation on orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStructure {
    pub class_index: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    pub relation: Option<FiniteRelation>,
}

impl QuotientStructure {
    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }
}

/// Orbit partition under `action`. Orbits are numbered by their smallest
/// element; members are listed ascending.
pub fn orbits(action: &GroupAction) -> QuotientStructure {
    let n = action.size;
    let mut class_index = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if class_index[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members: Vec<usize> = action.perms.iter().map(|p| p[start]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_index[m] = id;
        }
        orbits.push(members);
    }
    QuotientStructure {
        class_index,
        orbits,
        relation: None,
    }
}

fn check_sizes(rel: &FiniteRelation, action: &GroupAction) -> Result<()> {
    if rel.size != action.size {
        return Err(Error::SizeMismatch {
            expected: rel.size,
            found: action.size,
        });
    }
    Ok(())
}

/// Lift `rel` to the orbit space of `action`.
pub fn induced_relation(rel: &FiniteRelation, action: &GroupAction, mode: InduceMode) -> Result<QuotientStructure> {
    check_sizes(rel, action)?;
    let mut q = orbits(action);
    let below = |a: usize, b_orbit: &[usize]| b_orbit.iter().any(|&b| rel.holds(a, b));
    let orbs = &q.orbits;
    let induced = FiniteRelation::from_fn(orbs.len(), |x, y| match mode {
        InduceMode::Strong => orbs[x].iter().all(|&a| below(a, &orbs[y])),
        InduceMode::Weak => orbs[x].iter().any(|&a| below(a, &orbs[y])),
    });
    q.relation = Some(induced);
    Ok(q)
}

/// Result of [`action_properties`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionProperties {
    /// Every transform preserves `⪯`.
    pub increasing: bool,
    /// `Ta ⪯ a` forces `Ta = a`.
    pub transverse: bool,
}

pub fn action_properties(rel: &FiniteRelation, action: &GroupAction) -> Result<ActionProperties> {
    check_sizes(rel, action)?;
    let increasing = action
        .perms
        .iter()
        .all(|t| rel.pairs().all(|(a, b)| rel.holds(t[a], t[b])));
    let transverse = action
        .perms
        .iter()
        .all(|t| (0..rel.size).all(|a| t[a] == a || !rel.holds(t[a], a)));
    Ok(ActionProperties { increasing, transverse })
}

/// Submajorization of two equal-length multisets of reals: sort each
/// descending, take prefix sums, and compare component-wise.
pub fn submajorize_compare(a: &[f64], b: &[f64]) -> Result<Verdict> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("submajorization needs at least one entry".into()));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("entries must be finite".into()));
    }
    let fa = descending_prefix_sums(a);
    let fb = descending_prefix_sums(b);
    let le = fa.iter().zip(&fb).all(|(x, y)| *x <= *y + SUBMAJORIZE_TOL);
    let ge = fa.iter().zip(&fb).all(|(x, y)| *y <= *x + SUBMAJORIZE_TOL);
    Ok(Verdict::from_le_pair(le, ge))
}

fn descending_prefix_sums(xs: &[f64]) -> Vec<f64> {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|x, y| y.total_cmp(x));
    sorted
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> GroupAction {
        GroupAction::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    // subsets of Z_m as bitmasks, ordered by inclusion, rotated by the cyclic group
    fn subsets_of_cyclic(m: usize) -> (FiniteRelation, GroupAction) {
        let size = 1 << m;
        let rel = FiniteRelation::from_fn(size, |a, b| a & !b == 0);
        let rot = |mask: usize, t: usize| (0..m).filter(|i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << ((i + t) % m));
        let perms = (0..m).map(|t| (0..size).map(|mask| rot(mask, t)).collect()).collect();
        (rel, GroupAction::new(size, perms).unwrap())
    }

    #[test]
    fn orbits_examples() {
        assert_eq!(orbits(&swap2()).orbits, vec![vec![0, 1]]);
        assert_eq!(orbits(&GroupAction::trivial(3)).orbits, vec![vec![0], vec![1], vec![2]]);
        let (_, g) = subsets_of_cyclic(2);
        assert_eq!(orbits(&g).orbits, vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn malformed_actions_rejected() {
        assert!(GroupAction::new(2, vec![vec![1, 0]]).is_err());
        assert!(GroupAction::new(3, vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert!(GroupAction::new(2, vec![vec![0, 0]]).is_err());
        assert!(GroupAction::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn generate_closes_cycle() {
        let g = GroupAction::generate(4, &[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(g.order(), 4);
        let s4 = GroupAction::generate(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(GroupAction::new(4, s4.perms().to_vec()).is_ok());
    }

    #[test]
    fn induced_on_subsets_of_z2_is_chain() {
        let (rel, g) = subsets_of_cyclic(2);
        for mode in [InduceMode::Strong, InduceMode::Weak] {
            let q = induced_relation(&rel, &g, mode).unwrap();
            let r = q.relation.unwrap();
            let expect = FiniteRelation::from_fn(3, |i, j| i <= j);
            assert_eq!(r, expect);
        }
    }

    #[test]
    fn strong_and_weak_differ_for_non_increasing_action() {
        let rel = FiniteRelation::from_pairs(4, [(0, 1)]).unwrap().with_reflexive();
        let g = GroupAction::new(4, vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        let q_weak = induced_relation(&rel, &g, InduceMode::Weak).unwrap();
        let q_strong = induced_relation(&rel, &g, InduceMode::Strong).unwrap();
        let (a, b) = (q_weak.class_index[0], q_weak.class_index[1]);
        assert!(q_weak.relation.unwrap().holds(a, b));
        assert!(!q_strong.relation.unwrap().holds(a, b));
        assert!(!action_properties(&rel, &g).unwrap().increasing);
    }

    #[test]
    fn trivial_action_quotient_is_identity() {
        let rel = FiniteRelation::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap().with_reflexive();
        for mode in [InduceMode::Strong, InduceMode::Weak] {
            let q = induced_relation(&rel, &GroupAction::trivial(3), mode).unwrap();
            assert_eq!(q.relation.unwrap(), rel);
        }
        let props = action_properties(&rel, &GroupAction::trivial(3)).unwrap();
        assert!(props.increasing && props.transverse);
    }

    #[test]
    fn size_mismatch() {
        let rel = FiniteRelation::identity(3);
        assert!(matches!(
            induced_relation(&rel, &GroupAction::trivial(2), InduceMode::Weak),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(action_properties(&rel, &GroupAction::trivial(4)).is_err());
    }

    #[test]
    fn action_property_examples() {
        let rel = FiniteRelation::from_pairs(2, [(0, 1)]).unwrap().with_reflexive();
        let p = action_properties(&rel, &swap2()).unwrap();
        assert_eq!(
            p,
            ActionProperties {
                increasing: false,
                transverse: false
            }
        );
        let (rel, g) = subsets_of_cyclic(4);
        let p = action_properties(&rel, &g).unwrap();
        assert!(p.increasing && p.transverse);
    }

    #[test]
    fn axioms_examples() {
        let ax = FiniteRelation::identity(4).axioms();
        assert!(ax.reflexive && ax.antisymmetric && ax.transitive);
        let sym = FiniteRelation::from_pairs(2, [(0, 1), (1, 0)]).unwrap().with_reflexive();
        assert!(!sym.axioms().antisymmetric);
        let gap = FiniteRelation::from_pairs(3, [(0, 1), (1, 2)]).unwrap().with_reflexive();
        assert!(!gap.axioms().transitive);
    }

    #[test]
    fn minimal_elements_examples() {
        let chain = FiniteRelation::from_fn(3, |i, j| i <= j);
        assert_eq!(chain.minimal_elements(&[0, 1, 2]).unwrap(), vec![0]);
        assert_eq!(chain.maximal_elements(&[0, 1, 2]).unwrap(), vec![2]);
        let anti = FiniteRelation::identity(3);
        assert_eq!(anti.minimal_elements(&[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert!(matches!(anti.minimal_elements(&[5]), Err(Error::OutOfRange { index: 5, .. })));
    }

    #[test]
    fn transitive_reduction_examples() {
        let chain = FiniteRelation::from_fn(3, |i, j| i <= j);
        let cover: Vec<_> = chain.transitive_reduction().unwrap().pairs().collect();
        assert_eq!(cover, vec![(0, 1), (1, 2)]);
        assert_eq!(FiniteRelation::identity(3).transitive_reduction().unwrap().pairs().count(), 0);
        let diamond = FiniteRelation::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])
            .unwrap()
            .with_reflexive();
        let cover: Vec<_> = diamond.transitive_reduction().unwrap().pairs().collect();
        assert_eq!(cover, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let cyclic = FiniteRelation::from_pairs(2, [(0, 1), (1, 0)]).unwrap().with_reflexive();
        assert!(cyclic.transitive_reduction().is_err());
    }

    #[test]
    fn submajorize_examples() {
        assert_eq!(submajorize_compare(&[0.0, 0.0], &[1.0, 0.0]).unwrap(), Verdict::Less);
        assert_eq!(submajorize_compare(&[2.0, 0.0], &[1.0, 1.0]).unwrap(), Verdict::Greater);
        assert_eq!(submajorize_compare(&[3.0, 0.0], &[2.0, 2.0]).unwrap(), Verdict::Incomparable);
        assert_eq!(submajorize_compare(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), Verdict::Equal);
        assert!(submajorize_compare(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn json_formats() {
        let rel: FiniteRelation = serde_json::from_str(r#"{"size": 2, "pairs": [[0,0],[0,1],[1,1]]}"#).unwrap();
        assert!(rel.holds(0, 1) && !rel.holds(1, 0));
        assert_eq!(
            serde_json::to_string(&rel).unwrap(),
            r#"{"size":2,"pairs":[[0,0],[0,1],[1,1]]}"#
        );
        let bad: std::result::Result<FiniteRelation, _> = serde_json::from_str(r#"{"size": 2, "pairs": [[0,2]]}"#);
        assert!(bad.is_err());
        let g: GroupAction = serde_json::from_str(r#"{"size": 2, "perms": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        let bad: std::result::Result<GroupAction, _> = serde_json::from_str(r#"{"size": 2, "perms": [[1,0]]}"#);
        assert!(bad.is_err());
    }
}

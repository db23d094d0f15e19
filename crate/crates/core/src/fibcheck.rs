//! Bounded decision procedures for lifting properties.
//!
//! Every left map considered here is the inclusion of a subpresheaf
//! `A ⊆ Ω[T]` generated by named subfaces of `T`: horns, boundaries, and the
//! leaf inclusions `⨿ η_{c_i} → Ω[C_n]` (generated by the leaf edges, which
//! are pairwise disjoint). A map `A → X` is then a family of dendrices over
//! the generating faces agreeing on common subfaces, and a lift is a dendrex
//! over `T` restricting to that family.
//!
//! Verdicts are relative to a [`Bound`]; a report never claims more.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::dset::{self, catalog, restrict, restrict_map, Bound, DSet, DendrMap, Dendrex};
use crate::error::Result;
use crate::omega::{self, FaceKind, TreeMorphism};
use crate::sset::HornFamily;
use crate::trees::Tree;

/// The shape of a left map `A ⊆ Ω[T]`, with the data needed to enumerate
/// maps out of `A`.
#[derive(Clone, Debug)]
pub struct LeftMap {
    pub tree: Arc<Tree>,
    /// Human-readable name, e.g. `ihorn(r(b(a)),b)`.
    pub label: String,
    /// Which clause of a definition the map belongs to.
    pub clause: String,
    pub faces: Vec<Arc<Tree>>,
    /// Inclusions of the faces into `tree`.
    incl: Vec<TreeMorphism>,
    /// For `i < j`: inclusions of every common subface into face `i` and
    /// face `j`.
    overlaps: Vec<(usize, usize, Vec<(TreeMorphism, TreeMorphism)>)>,
}

impl LeftMap {
    /// The subpresheaf of Ω[T] generated by the given subfaces (named by the
    /// edges of T).
    pub fn new(t: &Arc<Tree>, faces: Vec<Tree>, label: impl Into<String>, clause: impl Into<String>) -> LeftMap {
        let faces: Vec<Arc<Tree>> = faces.into_iter().map(Arc::new).collect();
        let incl = faces
            .iter()
            .map(|f| TreeMorphism::by_name(f.clone(), t.clone()).expect("generating face is a subface"))
            .collect();
        let subs: Vec<Arc<Tree>> = if faces.len() > 1 {
            omega::subfaces(t).into_iter().map(Arc::new).collect()
        } else {
            Vec::new()
        };
        let mut overlaps = Vec::new();
        for i in 0..faces.len() {
            for j in i + 1..faces.len() {
                let common: Vec<(TreeMorphism, TreeMorphism)> = subs
                    .iter()
                    .filter_map(|g| {
                        Some((
                            TreeMorphism::by_name(g.clone(), faces[i].clone())?,
                            TreeMorphism::by_name(g.clone(), faces[j].clone())?,
                        ))
                    })
                    .collect();
                if !common.is_empty() {
                    overlaps.push((i, j, common));
                }
            }
        }
        LeftMap {
            tree: t.clone(),
            label: label.into(),
            clause: clause.into(),
            faces,
            incl,
            overlaps,
        }
    }

    pub fn inner_horn(t: &Arc<Tree>, e: &str, clause: &str) -> LeftMap {
        let faces = omega::faces(t)
            .into_iter()
            .filter(|f| f.kind != FaceKind::Inner(e.to_string()))
            .map(|f| (*f.map.source).clone())
            .collect();
        LeftMap::new(t, faces, format!("ihorn({t},{e})"), clause)
    }

    pub fn outer_horn(t: &Arc<Tree>, v: &str, clause: &str) -> LeftMap {
        let faces = omega::faces(t)
            .into_iter()
            .filter(|f| f.kind != FaceKind::Outer(v.to_string()))
            .map(|f| (*f.map.source).clone())
            .collect();
        LeftMap::new(t, faces, format!("ohorn({t},{v})"), clause)
    }

    pub fn boundary(t: &Arc<Tree>, clause: &str) -> LeftMap {
        let faces = omega::faces(t).into_iter().map(|f| (*f.map.source).clone()).collect();
        LeftMap::new(t, faces, format!("boundary({t})"), clause)
    }

    /// `⨿_i η_{c_i} → Ω[C_n]` on the leaves of the corolla.
    pub fn corolla_leaves(n: usize, clause: &str) -> LeftMap {
        let t = Arc::new(Tree::corolla(n));
        let faces = t.leaves().into_iter().map(|l| Tree::eta(t.name(l))).collect();
        LeftMap::new(&t, faces, format!("leaves(C_{n})"), clause)
    }

    /// `A` as a dendroidal set (for the corolla-leaf inclusions, the
    /// isomorphic image inside Ω[C_n]).
    pub fn source(&self) -> DSet {
        dset::generated(&self.tree, self.faces.iter().map(|f| (**f).clone()).collect(), self.label.clone())
    }

    pub fn target(&self) -> DSet {
        dset::representable(&self.tree)
    }

    /// Does a family of dendrices over the faces agree on common subfaces?
    fn compatible(&self, x_set: &dyn dset::DendroidalSet, family: &[Dendrex], upto: usize) -> bool {
        self.overlaps.iter().filter(|(i, j, _)| *j == upto && *i < upto).all(|(i, j, common)| {
            common.iter().all(|(gi, gj)| x_set.act(&family[*i], gi) == x_set.act(&family[*j], gj))
        })
    }
}

impl fmt::Display for LeftMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> rep({})", self.label, self.tree)
    }
}

/// A commutative square with `left` on the left and `p` on the right:
/// `top` gives the images of the generating faces in X, `bottom` a dendrex
/// of S over the tree.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub left: LeftMap,
    pub top: Vec<Dendrex>,
    pub bottom: Dendrex,
    pub p: DendrMap,
}

impl LiftingProblem {
    /// Validates that the square commutes.
    pub fn new(left: LeftMap, top: Vec<Dendrex>, bottom: Dendrex, p: DendrMap) -> Result<LiftingProblem> {
        use crate::error::Error;
        if top.len() != left.faces.len() {
            return Err(Error::InvalidMorphism(format!("{} face images for {}", top.len(), left.label)));
        }
        if !p.target.contains(&left.tree, &bottom) {
            return Err(Error::InvalidMorphism(format!("{bottom} is not a dendrex of {}", p.target.describe())));
        }
        for (k, x) in top.iter().enumerate() {
            let f = &left.faces[k];
            if !p.source.contains(f, x) {
                return Err(Error::InvalidMorphism(format!("{x} is not a dendrex of {} over {f}", p.source.describe())));
            }
            if p.apply(f, x) != p.target.act(&bottom, &left.incl[k]) {
                return Err(Error::InvalidMorphism(format!("square does not commute on {f}")));
            }
            if !left.compatible(p.source.as_ref(), &top, k) {
                return Err(Error::InvalidMorphism(format!("face images disagree on an overlap of {f}")));
            }
        }
        Ok(LiftingProblem { left, top, bottom, p })
    }

    pub fn witness(&self) -> Witness {
        Witness {
            clause: self.left.clause.clone(),
            left: self.left.to_string(),
            tree: self.left.tree.to_string(),
            top: self.left.faces.iter().zip(&self.top).map(|(f, x)| (f.to_string(), x.to_string())).collect(),
            bottom: self.bottom.to_string(),
        }
    }
}

/// A lift `B → X` (a dendrex over the tree) commuting with both triangles,
/// or `None` after exhausting every candidate.
pub fn has_lift(problem: &LiftingProblem) -> Option<Dendrex> {
    let (x_set, t) = (&problem.p.source, &problem.left.tree);
    x_set.dendrices(t).into_iter().find(|x| {
        problem.p.apply(t, x) == problem.bottom
            && problem.left.incl.iter().zip(&problem.top).all(|(i, y)| &x_set.act(x, i) == y)
    })
}

/// A replayable description of a lifting problem without a solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub left: String,
    pub tree: String,
    /// (generating face, its image in X).
    pub top: Vec<(String, String)>,
    pub bottom: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] no lift for {} over {}", self.clause, self.left, self.bottom)?;
        for (face, x) in &self.top {
            write!(f, "; {face} -> {x}")?;
        }
        Ok(())
    }
}

/// Outcome of a bounded check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub passed: bool,
    pub max_vertices: usize,
    pub max_arity: usize,
    pub problems_checked: usize,
    pub failure: Option<Witness>,
    /// Additional named verdicts (per-clause results and the like).
    pub notes: BTreeMap<String, bool>,
}

impl CheckReport {
    fn new(property: &str, bound: Bound) -> CheckReport {
        CheckReport {
            property: property.to_string(),
            passed: true,
            max_vertices: bound.vertices,
            max_arity: bound.arity,
            problems_checked: 0,
            failure: None,
            notes: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, checked: usize, failure: Option<Witness>) {
        self.problems_checked += checked;
        if self.failure.is_none() {
            if let Some(w) = failure {
                self.passed = false;
                self.failure = Some(w);
            }
        }
    }
}

/// Every lifting problem of `left` against `p`, solved; returns the number
/// of problems and the first one (in enumeration order) without a lift.
pub fn check_left_map(left: &LeftMap, p: &DendrMap) -> (usize, Option<Witness>) {
    let (x_set, s_set) = (p.source.as_ref(), p.target.as_ref());
    let t = &left.tree;
    let mut checked = 0;
    for s in s_set.dendrices(t) {
        // restrictions of every dendrex of X over s: the solvable problems
        let solvable: HashSet<Vec<Dendrex>> = x_set
            .dendrices(t)
            .into_iter()
            .filter(|x| p.apply(t, x) == s)
            .map(|x| left.incl.iter().map(|i| x_set.act(&x, i)).collect())
            .collect();
        let candidates: Vec<Vec<Dendrex>> = left
            .faces
            .iter()
            .zip(&left.incl)
            .map(|(f, i)| {
                let want = s_set.act(&s, i);
                x_set.dendrices(f).into_iter().filter(|x| p.apply(f, x) == want).collect()
            })
            .collect();
        let mut family: Vec<Dendrex> = Vec::with_capacity(left.faces.len());
        let mut failure = None;
        fn rec(
            k: usize,
            left: &LeftMap,
            x_set: &dyn dset::DendroidalSet,
            candidates: &[Vec<Dendrex>],
            family: &mut Vec<Dendrex>,
            solvable: &HashSet<Vec<Dendrex>>,
            checked: &mut usize,
        ) -> Option<Vec<Dendrex>> {
            if k == candidates.len() {
                *checked += 1;
                return (!solvable.contains(family)).then(|| family.clone());
            }
            for y in &candidates[k] {
                family.push(y.clone());
                if left.compatible(x_set, family, k) {
                    if let Some(bad) = rec(k + 1, left, x_set, candidates, family, solvable, checked) {
                        return Some(bad);
                    }
                }
                family.pop();
            }
            None
        }
        if let Some(bad) = rec(0, left, x_set, &candidates, &mut family, &solvable, &mut checked) {
            failure = Some(
                LiftingProblem {
                    left: left.clone(),
                    top: bad,
                    bottom: s.clone(),
                    p: p.clone(),
                }
                .witness(),
            );
        }
        if failure.is_some() {
            return (checked, failure);
        }
    }
    (checked, None)
}

/// Checks a list of left maps concurrently; the reported failure is the
/// first in list order.
fn run_all(report: &mut CheckReport, lefts: &[LeftMap], p: &DendrMap) -> bool {
    let results: Vec<(usize, Option<Witness>)> = lefts.par_iter().map(|l| check_left_map(l, p)).collect();
    let mut ok = true;
    for (n, w) in results {
        ok &= w.is_none();
        report.absorb(n, w);
    }
    ok
}

fn trees(bound: Bound) -> Result<Vec<Arc<Tree>>> {
    Ok(catalog(bound)?.iter().cloned().collect())
}

/// Inner horn inclusions of every tree within the bound.
pub fn inner_horns(bound: Bound) -> Result<Vec<LeftMap>> {
    let mut out = Vec::new();
    for t in trees(bound)? {
        for e in t.inner_edges() {
            out.push(LeftMap::inner_horn(&t, t.name(e), "inner"));
        }
    }
    Ok(out)
}

/// Leaf inclusions `⨿ η → Ω[C_n]` for `n` up to the arity bound.
pub fn corolla_leaf_maps(bound: Bound, clause: &str) -> Vec<LeftMap> {
    (0..=bound.arity).map(|n| LeftMap::corolla_leaves(n, clause)).collect()
}

/// Outer horns at leaf vertices (all inputs leaves) of trees with at least
/// two vertices.
pub fn leaf_vertex_horns(bound: Bound, clause: &str) -> Result<Vec<LeftMap>> {
    let mut out = Vec::new();
    for t in trees(bound)? {
        if t.num_vertices() < 2 {
            continue;
        }
        for v in t.vertices() {
            if omega::is_leaf_vertex(&t, v) && omega::is_removable(&t, v) {
                out.push(LeftMap::outer_horn(&t, t.name(v), clause));
            }
        }
    }
    Ok(out)
}

pub fn is_inner_fibration(p: &DendrMap, bound: Bound) -> Result<CheckReport> {
    let mut report = CheckReport::new("inner-fibration", bound);
    run_all(&mut report, &inner_horns(bound)?, p);
    Ok(report)
}

pub fn is_infty_operad(x: &DSet, bound: Bound) -> Result<CheckReport> {
    let mut report = is_inner_fibration(&DendrMap::to_terminal(x), bound)?;
    report.property = "infty-operad".into();
    Ok(report)
}

/// Inner fibration, corolla lifting along colours (including the nullary
/// case), and lifting against leaf-vertex outer horns.
pub fn is_left_fibration(p: &DendrMap, bound: Bound) -> Result<CheckReport> {
    let mut report = CheckReport::new("left-fibration", bound);
    let inner = run_all(&mut report, &inner_horns(bound)?, p);
    let corolla = run_all(&mut report, &corolla_leaf_maps(bound, "corolla"), p);
    let leaf = run_all(&mut report, &leaf_vertex_horns(bound, "leaf-vertex")?, p);
    report.notes.insert("inner".into(), inner);
    report.notes.insert("corolla".into(), corolla);
    report.notes.insert("leaf-vertex".into(), leaf);
    Ok(report)
}

/// Conditions (i)–(iii) characterising fibrant objects of the covariant
/// model structure, each checked within the bound. The note
/// `restriction-kan` records whether i*(X) is a Kan complex up to degree
/// `bound.vertices`.
pub fn is_dendroidal_kan(x: &DSet, bound: Bound) -> Result<CheckReport> {
    let p = DendrMap::to_terminal(x);
    let mut report = CheckReport::new("dendroidal-kan", bound);
    let mut horns_ii = Vec::new();
    let mut horns_iii = Vec::new();
    for t in trees(bound)? {
        if t.num_vertices() < 2 {
            continue;
        }
        let root = t.root();
        for f in omega::faces(&t) {
            match &f.kind {
                FaceKind::Inner(e) => horns_ii.push(LeftMap::inner_horn(&t, e, "(ii)")),
                FaceKind::Outer(v) if v != t.name(root) => horns_ii.push(LeftMap::outer_horn(&t, v, "(ii)")),
                FaceKind::Outer(v) if t.arity(root) == Some(1) => {
                    horns_iii.push(LeftMap::outer_horn(&t, v, "(iii)"))
                }
                _ => {}
            }
        }
    }
    let i = run_all(&mut report, &corolla_leaf_maps(bound, "(i)"), &p);
    let ii = run_all(&mut report, &horns_ii, &p);
    let iii = run_all(&mut report, &horns_iii, &p);
    report.notes.insert("(i)".into(), i);
    report.notes.insert("(ii)".into(), ii);
    report.notes.insert("(iii)".into(), iii);
    if i && ii {
        report.notes.insert("(i)+(ii) implies (iii)".into(), iii);
    }
    let d = bound.vertices;
    report.notes.insert("restriction-kan".into(), restrict(x.as_ref(), d).kan_check(d, HornFamily::All).passed());
    Ok(report)
}

/// Lifting against every boundary inclusion ∂Ω[T] ⊆ Ω[T] within the bound
/// (including ∂η = ∅).
pub fn is_trivial_fibration(p: &DendrMap, bound: Bound) -> Result<CheckReport> {
    let mut report = CheckReport::new("trivial-fibration", bound);
    let lefts: Vec<LeftMap> = trees(bound)?.iter().map(|t| LeftMap::boundary(t, "boundary")).collect();
    run_all(&mut report, &lefts, p);
    Ok(report)
}

/// Does `i*p` lift against Λ^n_k ⊆ Δ^n for `k < n ≤ d`?
pub fn restriction_is_left_fibration(p: &DendrMap, d: usize) -> bool {
    restrict_map(p, d).horn_lifting(d, HornFamily::Left).passed()
}

/// A generating left anodyne map.
#[derive(Clone, Debug)]
pub struct Anodyne {
    pub left: LeftMap,
    pub description: String,
}

/// The generating left anodynes within the bound: leaf-vertex outer horns of
/// catalog trees with at least two vertices (one per leaf vertex, not up to
/// automorphism), then the leaf inclusions into C_n for `n ≤ arity`.
pub fn generating_left_anodynes(bound: Bound) -> Result<Vec<Anodyne>> {
    let mut out: Vec<Anodyne> = leaf_vertex_horns(bound, "leaf-vertex")?
        .into_iter()
        .map(|l| Anodyne {
            description: format!("leaf-vertex horn {}", l.label),
            left: l,
        })
        .collect();
    out.extend(corolla_leaf_maps(bound, "corolla").into_iter().enumerate().map(|(n, l)| Anodyne {
        description: if n == 0 {
            "empty -> rep(C_0)".to_string()
        } else {
            format!("{n} leaf colours -> rep(C_{n})")
        },
        left: l,
    }));
    Ok(out)
}

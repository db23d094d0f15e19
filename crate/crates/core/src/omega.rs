//! Morphisms of the tree category: operad maps between free tree operads.
//!
//! A map Ω(S) → Ω(T) is determined by its action on colours: every operation
//! of Ω(T) is determined by its signature. An edge map is a morphism iff for
//! every vertex of S the images of its inputs are pairwise distinct and form
//! the leaves of a subtree of T rooted at the image of its output (the unit
//! counts as the subtree η).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::trees::{isomorphisms, Node, Tree};

#[derive(Clone, Debug)]
pub struct TreeMorphism {
    pub source: Arc<Tree>,
    pub target: Arc<Tree>,
    /// Image of each source edge, as an edge index of the target.
    pub edge_map: Vec<usize>,
}

impl PartialEq for TreeMorphism {
    fn eq(&self, other: &TreeMorphism) -> bool {
        self.edge_map == other.edge_map && self.source == other.source && self.target == other.target
    }
}

impl Eq for TreeMorphism {}

/// Which side of a face: contraction of an inner edge or removal of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FaceKind {
    Inner(String),
    Outer(String),
    /// One of the edge inclusions η → C_n.
    Edge(String),
}

impl fmt::Display for FaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceKind::Inner(e) => write!(f, "inner({e})"),
            FaceKind::Outer(v) => write!(f, "outer({v})"),
            FaceKind::Edge(e) => write!(f, "edge({e})"),
        }
    }
}

/// A face of a tree: the face tree (named by the ambient tree's edge names)
/// and its inclusion.
#[derive(Clone, Debug)]
pub struct Face {
    pub kind: FaceKind,
    pub map: TreeMorphism,
}

/// Is `edge_map` a morphism `source -> target`?
pub fn is_morphism(source: &Tree, target: &Tree, edge_map: &[usize]) -> bool {
    if edge_map.len() != source.num_edges() || edge_map.iter().any(|&e| e >= target.num_edges()) {
        return false;
    }
    source.vertices().into_iter().all(|v| {
        let inputs: Vec<usize> = source.children(v).unwrap().iter().map(|&x| edge_map[x]).collect();
        target.is_cut(edge_map[v], &inputs)
    })
}

impl TreeMorphism {
    pub fn new(source: Arc<Tree>, target: Arc<Tree>, edge_map: Vec<usize>) -> Result<TreeMorphism> {
        if !is_morphism(&source, &target, &edge_map) {
            return Err(Error::InvalidMorphism(format!(
                "{:?} is not a morphism {} -> {}",
                edge_map, source, target
            )));
        }
        Ok(TreeMorphism {
            source,
            target,
            edge_map,
        })
    }

    pub(crate) fn new_unchecked(source: Arc<Tree>, target: Arc<Tree>, edge_map: Vec<usize>) -> TreeMorphism {
        debug_assert!(is_morphism(&source, &target, &edge_map));
        TreeMorphism {
            source,
            target,
            edge_map,
        }
    }

    /// The morphism sending each source edge to the target edge of the same
    /// name, if that is a morphism.
    pub fn by_name(source: Arc<Tree>, target: Arc<Tree>) -> Option<TreeMorphism> {
        let map: Option<Vec<usize>> = source.names().iter().map(|n| target.try_edge(n)).collect();
        let map = map?;
        is_morphism(&source, &target, &map).then(|| TreeMorphism {
            source,
            target,
            edge_map: map,
        })
    }

    /// Builds a morphism from (source name, target name) pairs.
    pub fn from_pairs(source: Arc<Tree>, target: Arc<Tree>, pairs: &[(&str, &str)]) -> Result<TreeMorphism> {
        let mut map = vec![usize::MAX; source.num_edges()];
        for (a, b) in pairs {
            map[source.edge(a)?] = target.edge(b)?;
        }
        if let Some(i) = map.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidMorphism(format!("edge `{}` has no image", source.name(i))));
        }
        TreeMorphism::new(source, target, map)
    }

    pub fn identity(t: Arc<Tree>) -> TreeMorphism {
        let n = t.num_edges();
        TreeMorphism {
            source: t.clone(),
            target: t,
            edge_map: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.edge_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn image_name(&self, e: usize) -> &str {
        self.target.name(self.edge_map[e])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.edge_map.iter().all(|e| seen.insert(*e))
    }

    pub fn is_iso(&self) -> bool {
        self.source.num_edges() == self.target.num_edges() && self.is_injective() && {
            let mut inv = vec![0; self.edge_map.len()];
            for (i, &j) in self.edge_map.iter().enumerate() {
                inv[j] = i;
            }
            is_morphism(&self.target, &self.source, &inv)
        }
    }

    pub fn inverse(&self) -> Option<TreeMorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.edge_map.len()];
        for (i, &j) in self.edge_map.iter().enumerate() {
            inv[j] = i;
        }
        Some(TreeMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            edge_map: inv,
        })
    }

    /// Leaves of the target subtree that the vertex atop `v` is sent to,
    /// listed in the order of the vertex's inputs.
    pub fn vertex_inputs(&self, v: usize) -> Vec<usize> {
        self.source.children(v).unwrap_or(&[]).iter().map(|&x| self.edge_map[x]).collect()
    }

    /// Is the vertex atop `v` sent to a unit?
    pub fn is_unit_at(&self, v: usize) -> bool {
        matches!(self.source.children(v), Some([x]) if self.edge_map[*x] == self.edge_map[v])
    }

    /// Target vertices used by the image of the vertex atop `v`.
    pub fn vertex_support(&self, v: usize) -> Vec<usize> {
        self.target.vertices_between(self.edge_map[v], &self.vertex_inputs(v))
    }

    /// The operation each source vertex is sent to, as a subtree of the
    /// target; units appear as η.
    pub fn vertex_map(&self) -> BTreeMap<String, Tree> {
        self.source
            .vertices()
            .into_iter()
            .map(|v| {
                let sub = self.target.subtree_between(self.edge_map[v], &self.vertex_inputs(v));
                (self.source.name(v).to_string(), sub)
            })
            .collect()
    }

    /// Colours and vertices of the target hit by this morphism.
    pub fn image(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let colours = self.edge_map.iter().copied().collect();
        let vertices = self.source.vertices().into_iter().flat_map(|v| self.vertex_support(v)).collect();
        (colours, vertices)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &TreeMorphism) -> Result<TreeMorphism> {
        if *first.target != *self.source {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(TreeMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            edge_map: first.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        })
    }

    pub fn factorize(&self) -> Factorization {
        factorize(self)
    }

    pub fn classify(&self) -> MorphismClass {
        self.factorize().class()
    }
}

impl fmt::Display for TreeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{edge_map: {{")?;
        for (i, &j) in self.edge_map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", self.source.name(i), self.target.name(j))?;
        }
        write!(f, "}}, vertex_map: {{")?;
        for (i, (v, s)) in self.vertex_map().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}:{s}")?;
        }
        write!(f, "}}}}")
    }
}

/// `g ∘ f`.
pub fn compose(g: &TreeMorphism, f: &TreeMorphism) -> Result<TreeMorphism> {
    g.after(f)
}

/// Contracts the given inner edges, keeping all other names.
pub fn contract(t: &Tree, edges: &BTreeSet<usize>) -> Tree {
    fn go(t: &Tree, e: usize, k: &BTreeSet<usize>) -> Node {
        match t.children(e) {
            None => Node::leaf(t.name(e)),
            Some(ch) => {
                let mut kids = Vec::new();
                for &c in ch {
                    let n = go(t, c, k);
                    if k.contains(&c) && t.is_inner(c) {
                        kids.extend(n.kids.expect("inner edge carries a vertex"));
                    } else {
                        kids.push(n);
                    }
                }
                Node::vertex(t.name(e), kids)
            }
        }
    }
    Tree::from_node(&go(t, 0, edges)).expect("contraction keeps names distinct")
}

fn inclusion(face: Tree, t: &Arc<Tree>) -> TreeMorphism {
    TreeMorphism::by_name(Arc::new(face), t.clone()).expect("faces include by name")
}

/// Can the vertex atop `v` be chopped off as an outer face?
pub fn is_removable(t: &Tree, v: usize) -> bool {
    if !t.has_vertex(v) || t.num_vertices() < 2 {
        return false;
    }
    let inner_inputs = t.children(v).unwrap().iter().filter(|&&c| t.is_inner(c)).count();
    let inner_output = usize::from(t.is_inner(v));
    inner_inputs + inner_output <= 1
}

/// Is the vertex atop `v` a leaf vertex, i.e. are all its inputs leaves?
pub fn is_leaf_vertex(t: &Tree, v: usize) -> bool {
    t.children(v).map_or(false, |k| k.iter().all(|&c| t.is_leaf(c)))
}

pub fn inner_face(t: &Arc<Tree>, e: &str) -> Result<Face> {
    let i = t.edge(e)?;
    if !t.is_inner(i) {
        return Err(Error::NotInner(e.to_string()));
    }
    let face = contract(t, &[i].into_iter().collect());
    Ok(Face {
        kind: FaceKind::Inner(e.to_string()),
        map: inclusion(face, t),
    })
}

pub fn outer_face(t: &Arc<Tree>, v: &str) -> Result<Face> {
    let i = t.edge(v)?;
    if !is_removable(t, i) {
        return Err(Error::NotRemovable(v.to_string()));
    }
    let face = if i == t.root() {
        let up = t.children(i).unwrap().iter().copied().find(|&c| t.is_inner(c)).expect("root has an inner input");
        Tree::from_node(&t.node_at(up)).expect("subtree")
    } else {
        fn go(t: &Tree, e: usize, chop: usize) -> Node {
            match t.children(e) {
                Some(k) if e != chop => Node::vertex(t.name(e), k.iter().map(|&c| go(t, c, chop)).collect()),
                _ => Node::leaf(t.name(e)),
            }
        }
        Tree::from_node(&go(t, 0, i)).expect("subtree")
    };
    Ok(Face {
        kind: FaceKind::Outer(v.to_string()),
        map: inclusion(face, t),
    })
}

/// All faces of `t`: inner faces, outer faces of removable vertices and, for
/// corollas, the edge inclusions.
pub fn faces(t: &Arc<Tree>) -> Vec<Face> {
    let mut out = Vec::new();
    if t.is_eta() {
        return out;
    }
    if t.is_corolla() {
        for e in 0..t.num_edges() {
            out.push(Face {
                kind: FaceKind::Edge(t.name(e).to_string()),
                map: inclusion(Tree::eta(t.name(e)), t),
            });
        }
        return out;
    }
    for e in t.inner_edges() {
        out.push(inner_face(t, t.name(e)).expect("inner edge"));
    }
    for v in t.vertices() {
        if is_removable(t, v) {
            out.push(outer_face(t, t.name(v)).expect("removable"));
        }
    }
    out
}

/// The degeneracy collapsing the unary vertex atop `v`: its input edge is
/// identified with `v`, which keeps its name.
pub fn degeneracy(t: &Arc<Tree>, v: &str) -> Result<TreeMorphism> {
    let i = t.edge(v)?;
    let input = match t.children(i) {
        Some([c]) => *c,
        _ => return Err(Error::NotElementary(format!("vertex `{v}` is not unary"))),
    };
    fn go(t: &Tree, e: usize, top: usize, input: usize) -> Node {
        let kids_of = |x: usize| t.children(x).map(|k| k.iter().map(|&c| go(t, c, top, input)).collect());
        if e == top {
            Node {
                name: t.name(e).to_string(),
                kids: kids_of(input),
            }
        } else {
            Node {
                name: t.name(e).to_string(),
                kids: kids_of(e),
            }
        }
    }
    let collapsed = Arc::new(Tree::from_node(&go(t, 0, i, input)).expect("names kept"));
    let map = (0..t.num_edges())
        .map(|e| {
            let name = if e == input { t.name(i) } else { t.name(e) };
            collapsed.edge(name).expect("present")
        })
        .collect();
    TreeMorphism::new(t.clone(), collapsed, map)
}

pub fn degeneracies(t: &Arc<Tree>) -> Vec<TreeMorphism> {
    t.vertices()
        .into_iter()
        .filter(|&v| t.arity(v) == Some(1))
        .map(|v| degeneracy(t, t.name(v)).expect("unary"))
        .collect()
}

/// All morphisms `s -> t`, in a deterministic order.
pub fn enumerate_hom(s: &Arc<Tree>, t: &Arc<Tree>) -> Vec<TreeMorphism> {
    hom_edge_maps(s, t)
        .into_iter()
        .map(|m| TreeMorphism::new_unchecked(s.clone(), t.clone(), m))
        .collect()
}

/// Edge maps of all morphisms `s -> t`, computed top-down from the root.
pub fn hom_edge_maps(s: &Tree, t: &Tree) -> Vec<Vec<usize>> {
    let cuts: Vec<Vec<Vec<usize>>> = (0..t.num_edges()).map(|c| t.cuts_above(c)).collect();
    let order = s.vertices();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; s.num_edges()];
    fn rec(
        s: &Tree,
        cuts: &[Vec<Vec<usize>>],
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(map.clone());
            return;
        }
        let v = order[k];
        let inputs = s.children(v).unwrap();
        for cut in &cuts[map[v]] {
            if cut.len() != inputs.len() {
                continue;
            }
            for perm in permutations(cut.len()) {
                for (j, &x) in inputs.iter().enumerate() {
                    map[x] = cut[perm[j]];
                }
                rec(s, cuts, order, k + 1, map, out);
            }
        }
        for &x in inputs {
            map[x] = usize::MAX;
        }
    }
    for c in 0..t.num_edges() {
        map[0] = c;
        rec(s, &cuts, &order, 0, &mut map, &mut out);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Every subface of `t` (image of a monomorphism into `t`), named by the
/// edge names of `t`: a subtree with some of its inner edges contracted.
pub fn subfaces(t: &Tree) -> Vec<Tree> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in 0..t.num_edges() {
        for cut in t.cuts_above(c) {
            let sub = t.subtree_between(c, &cut);
            let inner = sub.inner_edges();
            for mask in 0u32..(1 << inner.len()) {
                let k: BTreeSet<usize> =
                    inner.iter().enumerate().filter(|(j, _)| mask & (1 << j) != 0).map(|(_, &e)| e).collect();
                let f = contract(&sub, &k);
                if seen.insert(f.key()) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Shape of a morphism's factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismClass {
    Iso,
    FaceLikeMono,
    DegeneracyLikeEpi,
    Mixed,
}

/// `f = faces ∘ iso ∘ degeneracies`, with `degeneracies` applied first
/// (in list order) and `faces` applied last (in list order).
#[derive(Clone, Debug)]
pub struct Factorization {
    pub degeneracies: Vec<TreeMorphism>,
    pub iso: TreeMorphism,
    pub faces: Vec<TreeMorphism>,
}

impl Factorization {
    pub fn class(&self) -> MorphismClass {
        match (self.degeneracies.is_empty(), self.faces.is_empty()) {
            (true, true) => MorphismClass::Iso,
            (true, false) => MorphismClass::FaceLikeMono,
            (false, true) => MorphismClass::DegeneracyLikeEpi,
            (false, false) => MorphismClass::Mixed,
        }
    }

    /// All factors in application order.
    pub fn steps(&self) -> Vec<&TreeMorphism> {
        self.degeneracies.iter().chain(std::iter::once(&self.iso)).chain(self.faces.iter()).collect()
    }

    pub fn compose_all(&self) -> Result<TreeMorphism> {
        let mut steps = self.steps().into_iter();
        let mut acc = steps.next().expect("iso is always present").clone();
        for s in steps {
            acc = s.after(&acc)?;
        }
        Ok(acc)
    }
}

fn factorize(f: &TreeMorphism) -> Factorization {
    // split off degeneracies at unit vertices
    let mut degens = Vec::new();
    let mut cur = f.clone();
    while let Some(v) = cur.source.vertices().into_iter().find(|&v| cur.is_unit_at(v)) {
        let s = degeneracy(&cur.source, cur.source.name(v)).expect("unit vertex is unary");
        let rest: Vec<usize> = (0..s.target.num_edges())
            .map(|e| {
                let pre = s.edge_map.iter().position(|&x| x == e).expect("degeneracy is surjective");
                cur.edge_map[pre]
            })
            .collect();
        let next = TreeMorphism::new_unchecked(s.target.clone(), cur.target.clone(), rest);
        degens.push(s);
        cur = next;
    }
    // peel faces off the target until the mono becomes an iso
    let mut faces_rev = Vec::new();
    while !cur.is_iso() {
        let face = faces(&cur.target)
            .into_iter()
            .map(|fc| fc.map)
            .find_map(|phi| {
                let names: Option<Vec<usize>> =
                    cur.edge_map.iter().map(|&e| phi.source.try_edge(cur.target.name(e))).collect();
                let m = names?;
                is_morphism(&cur.source, &phi.source, &m).then_some((phi, m))
            })
            .expect("a non-invertible mono factors through some face");
        let (phi, m) = face;
        cur = TreeMorphism::new_unchecked(cur.source.clone(), phi.source.clone(), m);
        faces_rev.push(phi);
    }
    faces_rev.reverse();
    Factorization {
        degeneracies: degens,
        iso: cur,
        faces: faces_rev,
    }
}

/// Is `f` an elementary face or degeneracy (possibly precomposed with an
/// iso)?
pub fn is_elementary(f: &TreeMorphism) -> bool {
    let fac = f.factorize();
    fac.degeneracies.len() + fac.faces.len() == 1 && fac.iso.is_identity()
}

/// All isomorphisms between two trees as morphisms.
pub fn isos(a: &Arc<Tree>, b: &Arc<Tree>) -> Vec<TreeMorphism> {
    isomorphisms(a, b)
        .into_iter()
        .map(|i| TreeMorphism::new_unchecked(a.clone(), b.clone(), i.edge_map))
        .collect()
}

//! Dendroidal sets as lazily evaluated presheaves on Ω.
//!
//! A [`DendroidalSet`] answers two questions: which dendrices it has over a
//! given (named) tree, and how a tree morphism acts on them. Dendrices are
//! opaque integer words whose meaning is private to each construction, and
//! are always interpreted positionally against the edges of the tree they
//! live over. Every analysis (censuses, normality, fibrancy) is run up to an
//! explicit [`Bound`] on tree size.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::omega::{self, FaceKind, TreeMorphism};
use crate::operads::{enumerate_operad_maps, FiniteOperad, Operation};
use crate::sset::{ChainSet, SimplicialMap, SimplicialSet};
use crate::trees::{enumerate_trees, Tree, DEFAULT_ARITY_CAP};

/// Size limits for tree enumeration: maximum number of vertices and maximum
/// vertex arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub vertices: usize,
    pub arity: usize,
}

impl Bound {
    pub fn new(vertices: usize, arity: usize) -> Bound {
        Bound { vertices, arity }
    }
}

impl Default for Bound {
    fn default() -> Bound {
        Bound {
            vertices: 4,
            arity: DEFAULT_ARITY_CAP,
        }
    }
}

/// One representative per isomorphism class of trees within the bound,
/// edges named canonically.
pub fn catalog(bound: Bound) -> Result<Arc<Vec<Arc<Tree>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Bound, Arc<Vec<Arc<Tree>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&bound) {
        return Ok(c.clone());
    }
    let trees: Vec<Arc<Tree>> = enumerate_trees(bound.vertices, bound.arity)?.into_iter().map(Arc::new).collect();
    let trees = Arc::new(trees);
    cache.lock().unwrap().insert(bound, trees.clone());
    Ok(trees)
}

/// An element of `X_T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dendrex(pub Vec<u32>);

impl fmt::Display for Dendrex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ">")
    }
}

/// A presheaf of sets on Ω.
pub trait DendroidalSet: Send + Sync + fmt::Debug {
    fn describe(&self) -> String;

    /// Every dendrex over `t`, degenerate ones included, without repeats.
    fn dendrices(&self, t: &Arc<Tree>) -> Vec<Dendrex>;

    /// The right action: `x` lives over `f.target`, the result over
    /// `f.source`.
    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex;

    fn contains(&self, t: &Arc<Tree>, x: &Dendrex) -> bool {
        self.dendrices(t).contains(x)
    }

    /// True when the set has no dendrices over non-linear trees.
    fn linear_only(&self) -> bool {
        false
    }

    /// For subpresheaves of a representable Ω[T]: the ambient tree and the
    /// generating subfaces (named by the edges of T).
    fn as_subrepresentable(&self) -> Option<(Arc<Tree>, Vec<Tree>)> {
        None
    }

    /// For i_!(K) with K given by chains: that presentation.
    fn as_chain_set(&self) -> Option<&ChainSet> {
        None
    }

    /// For coproducts: the summands.
    fn as_coproduct(&self) -> Option<&[DSet]> {
        None
    }
}

pub type DSet = Arc<dyn DendroidalSet>;

/// Ω[T]: dendrices over S are morphisms S → T, stored as edge maps.
#[derive(Debug)]
pub struct Representable {
    tree: Arc<Tree>,
}

pub fn representable(t: &Tree) -> DSet {
    Arc::new(Representable {
        tree: Arc::new(t.clone()),
    })
}

pub fn eta() -> DSet {
    representable(&Tree::eta("e"))
}

fn edge_map_act(x: &Dendrex, f: &TreeMorphism) -> Dendrex {
    Dendrex(f.edge_map.iter().map(|&e| x.0[e]).collect())
}

impl DendroidalSet for Representable {
    fn describe(&self) -> String {
        format!("rep({})", self.tree)
    }

    fn dendrices(&self, s: &Arc<Tree>) -> Vec<Dendrex> {
        omega::hom_edge_maps(s, &self.tree)
            .into_iter()
            .map(|m| Dendrex(m.into_iter().map(|e| e as u32).collect()))
            .collect()
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        edge_map_act(x, f)
    }

    fn contains(&self, s: &Arc<Tree>, x: &Dendrex) -> bool {
        x.0.len() == s.num_edges()
            && x.0.iter().all(|&e| (e as usize) < self.tree.num_edges())
            && omega::is_morphism(s, &self.tree, &x.0.iter().map(|&e| e as usize).collect::<Vec<_>>())
    }

    fn linear_only(&self) -> bool {
        self.tree.is_linear()
    }

    fn as_subrepresentable(&self) -> Option<(Arc<Tree>, Vec<Tree>)> {
        Some((self.tree.clone(), vec![(*self.tree).clone()]))
    }
}

/// The union, inside Ω[T], of the images of the given subfaces of T.
#[derive(Debug)]
pub struct SubRepresentable {
    tree: Arc<Tree>,
    faces: Vec<Tree>,
    label: String,
}

impl SubRepresentable {
    /// Does the edge map `m: S -> T` factor through the subface `f`?
    fn factors(s: &Tree, t: &Tree, f: &Tree, m: &[u32]) -> bool {
        let mut into = Vec::with_capacity(m.len());
        for &e in m {
            match f.try_edge(t.name(e as usize)) {
                Some(i) => into.push(i),
                None => return false,
            }
        }
        omega::is_morphism(s, f, &into)
    }

    fn member(&self, s: &Tree, m: &[u32]) -> bool {
        self.faces.iter().any(|f| Self::factors(s, &self.tree, f, m))
    }
}

/// The subpresheaf of Ω[T] generated by the given named subfaces.
pub fn generated(t: &Tree, faces: Vec<Tree>, label: impl Into<String>) -> DSet {
    Arc::new(SubRepresentable {
        tree: Arc::new(t.clone()),
        faces,
        label: label.into(),
    })
}

impl DendroidalSet for SubRepresentable {
    fn describe(&self) -> String {
        self.label.clone()
    }

    fn dendrices(&self, s: &Arc<Tree>) -> Vec<Dendrex> {
        omega::hom_edge_maps(s, &self.tree)
            .into_iter()
            .map(|m| m.into_iter().map(|e| e as u32).collect::<Vec<u32>>())
            .filter(|m| self.member(s, m))
            .map(Dendrex)
            .collect()
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        edge_map_act(x, f)
    }

    fn contains(&self, s: &Arc<Tree>, x: &Dendrex) -> bool {
        x.0.len() == s.num_edges() && x.0.iter().all(|&e| (e as usize) < self.tree.num_edges()) && self.member(s, &x.0)
    }

    fn linear_only(&self) -> bool {
        self.faces.iter().all(Tree::is_linear)
    }

    fn as_subrepresentable(&self) -> Option<(Arc<Tree>, Vec<Tree>)> {
        Some((self.tree.clone(), self.faces.clone()))
    }
}

/// ∂Ω[T]: the union of all faces.
pub fn boundary(t: &Tree) -> DSet {
    let ta = Arc::new(t.clone());
    let faces = omega::faces(&ta).into_iter().map(|f| (*f.map.source).clone()).collect();
    generated(t, faces, format!("boundary({t})"))
}

/// Λ^e[T]: all faces except the inner face contracting `e`.
pub fn inner_horn(t: &Tree, e: &str) -> Result<DSet> {
    let ta = Arc::new(t.clone());
    omega::inner_face(&ta, e)?;
    let faces = omega::faces(&ta)
        .into_iter()
        .filter(|f| f.kind != FaceKind::Inner(e.to_string()))
        .map(|f| (*f.map.source).clone())
        .collect();
    Ok(generated(t, faces, format!("ihorn({t},{e})")))
}

/// Λ^v[T]: all faces except the outer face removing the vertex atop `v`.
pub fn outer_horn(t: &Tree, v: &str) -> Result<DSet> {
    let ta = Arc::new(t.clone());
    omega::outer_face(&ta, v)?;
    let faces = omega::faces(&ta)
        .into_iter()
        .filter(|f| f.kind != FaceKind::Outer(v.to_string()))
        .map(|f| (*f.map.source).clone())
        .collect();
    Ok(generated(t, faces, format!("ohorn({t},{v})")))
}

/// The union of two subpresheaves of the same representable.
pub fn union_in(a: &DSet, b: &DSet) -> Result<DSet> {
    match (a.as_subrepresentable(), b.as_subrepresentable()) {
        (Some((ta, fa)), Some((tb, fb))) if ta.key() == tb.key() => {
            let mut faces = fa;
            for f in fb {
                if !faces.contains(&f) {
                    faces.push(f);
                }
            }
            Ok(generated(&ta, faces, format!("union({}, {})", a.describe(), b.describe())))
        }
        _ => Err(Error::MismatchedAmbient(format!("{} and {}", a.describe(), b.describe()))),
    }
}

/// N_d(P): dendrices over T are operad maps Ω(T) → P, encoded as the edge
/// colours followed by the vertex operations in preorder.
#[derive(Debug)]
pub struct Nerve {
    operad: FiniteOperad,
}

pub fn nerve(p: &FiniteOperad) -> DSet {
    Arc::new(Nerve { operad: p.clone() })
}

/// The terminal dendroidal set N_d(comm).
pub fn terminal() -> DSet {
    nerve(&crate::operads::comm())
}

impl Nerve {
    fn decode(&self, t: &Tree, x: &Dendrex) -> (Vec<u32>, HashMap<usize, Operation>) {
        let n = t.num_edges();
        let colours = x.0[..n].to_vec();
        let mut ops = HashMap::new();
        let mut pos = n;
        for v in t.vertices() {
            let len = self.operad.operation_len(t.arity(v).unwrap());
            ops.insert(v, x.0[pos..pos + len].to_vec());
            pos += len;
        }
        (colours, ops)
    }

    /// Composite operation of the subtree of `t` rooted at `c` with leaves
    /// `cut`, with its inputs listed in the order they are reached.
    fn composite(&self, t: &Tree, colours: &[u32], ops: &HashMap<usize, Operation>, c: usize, cut: &[usize]) -> (Operation, Vec<usize>) {
        if cut.contains(&c) {
            return (self.operad.unit(colours[c]), vec![c]);
        }
        let kids = t.children(c).expect("cut lies above c");
        let mut inners = Vec::with_capacity(kids.len());
        let mut leaves = Vec::new();
        for &k in kids {
            let (op, l) = self.composite(t, colours, ops, k, cut);
            inners.push((l.len(), op));
            leaves.extend(l);
        }
        (self.operad.compose(&ops[&c], &inners), leaves)
    }
}

impl DendroidalSet for Nerve {
    fn describe(&self) -> String {
        format!("nerve({})", self.operad)
    }

    fn dendrices(&self, t: &Arc<Tree>) -> Vec<Dendrex> {
        enumerate_operad_maps(t, &self.operad)
            .into_iter()
            .map(|m| {
                let mut w = m.colours;
                for op in m.operations {
                    w.extend(op);
                }
                Dendrex(w)
            })
            .collect()
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        let (colours, ops) = self.decode(&f.target, x);
        let s = &f.source;
        let mut out: Vec<u32> = f.edge_map.iter().map(|&e| colours[e]).collect();
        for v in s.vertices() {
            let inputs = f.vertex_inputs(v);
            let (op, leaves) = self.composite(&f.target, &colours, &ops, f.edge_map[v], &inputs);
            let sigma: Vec<usize> = inputs
                .iter()
                .map(|d| leaves.iter().position(|l| l == d).expect("inputs are the leaves"))
                .collect();
            out.extend(self.operad.permute(&op, &sigma));
        }
        Dendrex(out)
    }
}

/// i_!(K): dendrices only over linear trees, with `i_!(K)_{L_n} = K_n`.
#[derive(Debug)]
pub struct SimplicialEmbed {
    k: SimplicialSet,
    chains: Option<ChainSet>,
    label: String,
}

/// The left adjoint i_! applied to a tabulated simplicial set. Trees with
/// more vertices than the tabulation degree carry no dendrices.
pub fn simplicial_embed(k: &SimplicialSet, label: impl Into<String>) -> DSet {
    Arc::new(SimplicialEmbed {
        k: k.clone(),
        chains: None,
        label: label.into(),
    })
}

/// i_! of a chain set, tabulated up to degree `d`.
pub fn simplicial_embed_chains(k: &ChainSet, d: usize, label: impl Into<String>) -> DSet {
    Arc::new(SimplicialEmbed {
        k: k.tabulate(d),
        chains: Some(k.clone()),
        label: label.into(),
    })
}

/// The monotone map `[m] -> [n]` underlying a morphism of linear trees
/// (vertex `0` of a simplex is the leaf).
pub fn monotone_of(f: &TreeMorphism) -> Vec<usize> {
    let src = f.source.linear_order().expect("linear source");
    let tgt = f.target.linear_order().expect("linear target");
    let mut pos = vec![0; f.target.num_edges()];
    for (i, &e) in tgt.iter().enumerate() {
        pos[e] = i;
    }
    src.iter().map(|&e| pos[f.edge_map[e]]).collect()
}

/// The morphism `L_m -> L_n` of a monotone map, on the standard linear
/// trees [`Tree::linear`].
pub fn linear_morphism(m: usize, n: usize, theta: &[usize]) -> TreeMorphism {
    let s = Arc::new(Tree::linear(m));
    let t = Arc::new(Tree::linear(n));
    let so = s.linear_order().unwrap();
    let to = t.linear_order().unwrap();
    let mut map = vec![0; m + 1];
    for (i, &e) in so.iter().enumerate() {
        map[e] = to[theta[i]];
    }
    TreeMorphism::new_unchecked(s, t, map)
}

impl DendroidalSet for SimplicialEmbed {
    fn describe(&self) -> String {
        format!("i!({})", self.label)
    }

    fn dendrices(&self, t: &Arc<Tree>) -> Vec<Dendrex> {
        let n = t.num_vertices();
        if !t.is_linear() || n > self.k.degree() {
            return Vec::new();
        }
        (0..self.k.count(n) as u32).map(|x| Dendrex(vec![x])).collect()
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        let theta = monotone_of(f);
        Dendrex(vec![self.k.apply(f.target.num_vertices(), x.0[0], &theta)])
    }

    fn linear_only(&self) -> bool {
        true
    }

    fn as_chain_set(&self) -> Option<&ChainSet> {
        self.chains.as_ref()
    }
}

/// Disjoint union; dendrices carry the index of their summand in front.
#[derive(Debug)]
pub struct Coproduct {
    parts: Vec<DSet>,
}

pub fn coproduct(parts: Vec<DSet>) -> DSet {
    Arc::new(Coproduct { parts })
}

/// The empty dendroidal set.
pub fn empty() -> DSet {
    coproduct(Vec::new())
}

impl DendroidalSet for Coproduct {
    fn describe(&self) -> String {
        match self.parts.len() {
            0 => "empty".to_string(),
            _ => format!(
                "coprod({})",
                self.parts.iter().map(|p| p.describe()).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    fn dendrices(&self, t: &Arc<Tree>) -> Vec<Dendrex> {
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for x in p.dendrices(t) {
                let mut w = vec![i as u32];
                w.extend(x.0);
                out.push(Dendrex(w));
            }
        }
        out
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        let i = x.0[0];
        let y = self.parts[i as usize].act(&Dendrex(x.0[1..].to_vec()), f);
        let mut w = vec![i];
        w.extend(y.0);
        Dendrex(w)
    }

    fn contains(&self, t: &Arc<Tree>, x: &Dendrex) -> bool {
        match x.0.first() {
            Some(&i) if (i as usize) < self.parts.len() => self.parts[i as usize].contains(t, &Dendrex(x.0[1..].to_vec())),
            _ => false,
        }
    }

    fn linear_only(&self) -> bool {
        self.parts.iter().all(|p| p.linear_only())
    }

    fn as_coproduct(&self) -> Option<&[DSet]> {
        Some(&self.parts)
    }
}

/// The degeneracy `σ: S -> S/v` and its section `δ: S/v -> S` for every
/// unary vertex `v` of `s`.
pub fn degeneracy_pairs(s: &Arc<Tree>) -> Vec<(TreeMorphism, TreeMorphism)> {
    omega::degeneracies(s)
        .into_iter()
        .map(|sigma| {
            let delta = TreeMorphism::by_name(sigma.target.clone(), s.clone()).expect("section by names");
            (sigma, delta)
        })
        .collect()
}

/// Is `x ∈ X_S` in the image of some degeneracy? Since every degeneracy
/// has a section, `x = σ*(y)` iff `x = σ*(δ*(x))`.
pub fn is_degenerate(x_set: &dyn DendroidalSet, s: &Arc<Tree>, x: &Dendrex) -> bool {
    degeneracy_pairs(s).iter().any(|(sigma, delta)| &x_set.act(&x_set.act(x, delta), sigma) == x)
}

/// Nondegenerate dendrices over `s`.
pub fn nondegenerate(x_set: &dyn DendroidalSet, s: &Arc<Tree>) -> Vec<Dendrex> {
    let pairs = degeneracy_pairs(s);
    x_set
        .dendrices(s)
        .into_iter()
        .filter(|x| !pairs.iter().any(|(sigma, delta)| &x_set.act(&x_set.act(x, delta), sigma) == x))
        .collect()
}

/// Counts of nondegenerate dendrices per tree shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub bound: Bound,
    /// `(shape, count)` for every catalog shape, in catalog order.
    pub entries: Vec<(Arc<Tree>, usize)>,
}

impl Census {
    /// Entries with a nonzero count.
    pub fn nonzero(&self) -> Vec<(String, usize)> {
        self.entries
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|(t, n)| (t.to_string(), *n))
            .collect()
    }

    pub fn get(&self, t: &Tree) -> usize {
        let key = t.shape_key();
        self.entries.iter().find(|(s, _)| s.shape_key() == key).map_or(0, |e| e.1)
    }

    /// Total nondegenerate dendrices per vertex count.
    pub fn by_vertices(&self) -> Vec<usize> {
        let mut out = vec![0; self.bound.vertices + 1];
        for (t, n) in &self.entries {
            out[t.num_vertices()] += n;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }
}

pub fn census(x: &dyn DendroidalSet, bound: Bound) -> Result<Census> {
    let linear = x.linear_only();
    let entries = catalog(bound)?
        .iter()
        .map(|t| {
            let n = if linear && !t.is_linear() { 0 } else { nondegenerate(x, t).len() };
            (t.clone(), n)
        })
        .collect();
    Ok(Census { bound, entries })
}

/// The elementary morphisms needed to check presheaf laws and naturality
/// around `s`: faces into `s`, degeneracies out of `s`, automorphisms.
pub fn elementary_morphisms(s: &Arc<Tree>) -> Vec<TreeMorphism> {
    let mut out: Vec<TreeMorphism> = omega::faces(s).into_iter().map(|f| f.map).collect();
    out.extend(omega::degeneracies(s));
    out.extend(omega::isos(s, s));
    out
}

/// The simplicial set i*X, tabulated up to degree `d`.
pub fn restrict(x: &dyn DendroidalSet, d: usize) -> SimplicialSet {
    let levels: Vec<Vec<Dendrex>> = (0..=d).map(|n| x.dendrices(&Arc::new(Tree::linear(n)))).collect();
    SimplicialSet::tabulate(
        levels,
        |n, y, i| {
            let theta: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
            x.act(y, &linear_morphism(n - 1, n, &theta))
        },
        |n, y, i| {
            let theta: Vec<usize> = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
            x.act(y, &linear_morphism(n + 1, n, &theta))
        },
    )
}

type MapFn = dyn Fn(&Arc<Tree>, &Dendrex) -> Dendrex + Send + Sync;

/// A map of dendroidal sets, given shape by shape.
#[derive(Clone)]
pub struct DendrMap {
    pub source: DSet,
    pub target: DSet,
    pub label: String,
    func: Arc<MapFn>,
}

impl fmt::Debug for DendrMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.label, self.source.describe(), self.target.describe())
    }
}

/// A failure of naturality: `f(x·g) != f(x)·g`, or `f(x)` not a dendrex of
/// the target.
#[derive(Clone, Debug)]
pub struct NaturalityFailure {
    pub tree: Tree,
    pub dendrex: Dendrex,
    pub morphism: Option<TreeMorphism>,
}

impl DendrMap {
    pub fn new(
        source: DSet,
        target: DSet,
        label: impl Into<String>,
        func: impl Fn(&Arc<Tree>, &Dendrex) -> Dendrex + Send + Sync + 'static,
    ) -> DendrMap {
        DendrMap {
            source,
            target,
            label: label.into(),
            func: Arc::new(func),
        }
    }

    pub fn apply(&self, t: &Arc<Tree>, x: &Dendrex) -> Dendrex {
        (self.func)(t, x)
    }

    pub fn identity(x: &DSet) -> DendrMap {
        DendrMap::new(x.clone(), x.clone(), "id", |_, y| y.clone())
    }

    /// Inclusion of a subpresheaf sharing its ambient's encoding (horns and
    /// boundaries into representables, sub-unions into unions).
    pub fn inclusion(sub: &DSet, ambient: &DSet) -> DendrMap {
        DendrMap::new(sub.clone(), ambient.clone(), "incl", |_, y| y.clone())
    }

    pub fn from_empty(x: &DSet) -> DendrMap {
        DendrMap::new(empty(), x.clone(), "from_empty", |_, y| y.clone())
    }

    /// The unique map to N_d(comm).
    pub fn to_terminal(x: &DSet) -> DendrMap {
        DendrMap::new(x.clone(), terminal(), "to_terminal", |t, _| Dendrex(vec![0; t.num_edges()]))
    }

    /// The unique map to η of a set concentrated on linear trees.
    pub fn to_eta(x: &DSet) -> DendrMap {
        DendrMap::new(x.clone(), eta(), "to_eta", |t, _| Dendrex(vec![0; t.num_edges()]))
    }

    /// The map out of a coproduct given by maps out of each summand.
    pub fn copair(parts: Vec<DendrMap>, target: &DSet) -> DendrMap {
        let source = coproduct(parts.iter().map(|p| p.source.clone()).collect());
        DendrMap::new(source, target.clone(), "copair", move |t, x| {
            parts[x.0[0] as usize].apply(t, &Dendrex(x.0[1..].to_vec()))
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DendrMap) -> DendrMap {
        let (a, b) = (first.clone(), self.clone());
        DendrMap::new(
            first.source.clone(),
            self.target.clone(),
            format!("{} . {}", self.label, first.label),
            move |t, x| b.apply(t, &a.apply(t, x)),
        )
    }

    /// Checks that images land in the target and that the map commutes with
    /// faces, degeneracies and automorphisms, over all shapes within the
    /// bound.
    pub fn check_natural(&self, bound: Bound) -> Result<Option<NaturalityFailure>> {
        for s in catalog(bound)?.iter() {
            for x in self.source.dendrices(s) {
                if !self.target.contains(s, &self.apply(s, &x)) {
                    return Ok(Some(NaturalityFailure {
                        tree: (**s).clone(),
                        dendrex: x,
                        morphism: None,
                    }));
                }
            }
            // every elementary morphism touching s; none is bigger than s
            for g in elementary_morphisms(s) {
                for x in self.source.dendrices(&g.target) {
                    let lhs = self.apply(&g.source, &self.source.act(&x, &g));
                    let rhs = self.target.act(&self.apply(&g.target, &x), &g);
                    if lhs != rhs {
                        return Ok(Some(NaturalityFailure {
                            tree: (*g.target).clone(),
                            dendrex: x,
                            morphism: Some(g),
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Is the map injective on every shape within the bound?
    pub fn is_injective(&self, bound: Bound) -> Result<bool> {
        for s in catalog(bound)?.iter() {
            let mut seen = HashSet::new();
            for x in self.source.dendrices(s) {
                if !seen.insert(self.apply(s, &x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// i* of a map, tabulated up to degree `d`.
pub fn restrict_map(p: &DendrMap, d: usize) -> SimplicialMap {
    let source = restrict(p.source.as_ref(), d);
    let target = restrict(p.target.as_ref(), d);
    let table = (0..=d)
        .map(|n| {
            let l = Arc::new(Tree::linear(n));
            let index: HashMap<Dendrex, u32> =
                p.target.dendrices(&l).into_iter().enumerate().map(|(i, y)| (y, i as u32)).collect();
            p.source.dendrices(&l).iter().map(|x| index[&p.apply(&l, x)]).collect()
        })
        .collect();
    SimplicialMap { source, target, table }
}

/// The fiber of `p: X -> S` over a colour `c ∈ S_η`, as the simplicial set
/// i* of the pullback along η → S.
pub fn fiber(p: &DendrMap, colour: &Dendrex, d: usize) -> Result<SimplicialSet> {
    let eta = Arc::new(Tree::linear(0));
    let vertex = p
        .target
        .dendrices(&eta)
        .iter()
        .position(|y| y == colour)
        .ok_or_else(|| Error::OutOfRange(format!("{colour} is not a colour of {}", p.target.describe())))?;
    Ok(crate::sset::fiber(&restrict_map(p, d), vertex as u32))
}

/// Evidence that a dendrex outside the image has a nontrivial stabilizer.
#[derive(Clone, Debug)]
pub struct NormalityWitness {
    pub tree: Tree,
    pub dendrex: Dendrex,
    pub automorphism: TreeMorphism,
}

/// Is `f` a normal monomorphism within the bound: injective, and every
/// dendrex outside its image has trivial stabilizer under Aut(T)?
pub fn is_normal_mono(f: &DendrMap, bound: Bound) -> Result<Option<NormalityWitness>> {
    if !f.is_injective(bound)? {
        return Err(Error::NotInjective(f.label.clone()));
    }
    for t in catalog(bound)?.iter() {
        let auts: Vec<TreeMorphism> = omega::isos(t, t).into_iter().filter(|g| !g.is_identity()).collect();
        if auts.is_empty() {
            continue;
        }
        let image: BTreeSet<Dendrex> = f.source.dendrices(t).iter().map(|x| f.apply(t, x)).collect();
        for y in f.target.dendrices(t) {
            if image.contains(&y) {
                continue;
            }
            if let Some(g) = auts.iter().find(|g| f.target.act(&y, g) == y) {
                return Ok(Some(NormalityWitness {
                    tree: (**t).clone(),
                    dendrex: y,
                    automorphism: g.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Checks `(x·g)·f = x·(g∘f)` and `x·id = x` over composable pairs of
/// elementary morphisms within the bound.
pub fn check_presheaf_laws(x: &dyn DendroidalSet, bound: Bound) -> Result<Option<(Tree, Dendrex)>> {
    for s in catalog(bound)?.iter() {
        for y in x.dendrices(s) {
            if x.act(&y, &TreeMorphism::identity(s.clone())) != y {
                return Ok(Some(((**s).clone(), y)));
            }
        }
        for g in elementary_morphisms(s) {
            let fs: Vec<TreeMorphism> =
                elementary_morphisms(&g.source).into_iter().filter(|f| f.target == g.source).collect();
            for y in x.dendrices(&g.target) {
                let yg = x.act(&y, &g);
                for f in &fs {
                    if x.act(&yg, f) != x.act(&y, &g.after(f)?) {
                        return Ok(Some(((*g.target).clone(), y)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Nondegenerate dendrices of one catalog shape, up to automorphisms.
#[derive(Clone, Debug)]
pub struct ShapeGenerators {
    pub tree: Arc<Tree>,
    /// One representative per Aut(T)-orbit of nondegenerate dendrices.
    pub generators: Vec<Dendrex>,
    /// Automorphisms fixing each representative.
    pub stabilizers: Vec<Vec<TreeMorphism>>,
    /// Every nondegenerate dendrex `y`, with `(k, g)` such that
    /// `y = generators[k]·g`.
    lookup: HashMap<Dendrex, (usize, TreeMorphism)>,
}

/// How a dendrex is obtained from a generator: `x = generator·via`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub shape: usize,
    pub generator: usize,
    pub via: TreeMorphism,
}

/// The nondegenerate part of a dendroidal set within a bound, organised
/// by catalog shape and automorphism orbit. A map out of the set is
/// determined by the images of the generators.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub bound: Bound,
    pub shapes: Vec<ShapeGenerators>,
    by_key: HashMap<String, usize>,
}

impl Skeleton {
    pub fn new(x: &dyn DendroidalSet, bound: Bound) -> Result<Skeleton> {
        let linear = x.linear_only();
        let mut shapes = Vec::new();
        let mut by_key = HashMap::new();
        for t in catalog(bound)?.iter() {
            if linear && !t.is_linear() {
                continue;
            }
            let auts = omega::isos(t, t);
            let mut generators = Vec::new();
            let mut stabilizers = Vec::new();
            let mut lookup = HashMap::new();
            for y in nondegenerate(x, t) {
                if lookup.contains_key(&y) {
                    continue;
                }
                let k = generators.len();
                let mut stab = Vec::new();
                for g in &auts {
                    let yg = x.act(&y, g);
                    if yg == y {
                        stab.push(g.clone());
                    }
                    lookup.entry(yg).or_insert_with(|| (k, g.clone()));
                }
                generators.push(y);
                stabilizers.push(stab);
            }
            by_key.insert(t.shape_key(), shapes.len());
            shapes.push(ShapeGenerators {
                tree: t.clone(),
                generators,
                stabilizers,
                lookup,
            });
        }
        Ok(Skeleton { bound, shapes, by_key })
    }

    pub fn num_generators(&self) -> usize {
        self.shapes.iter().map(|s| s.generators.len()).sum()
    }

    /// Generators in a fixed global order: `(shape, index)`.
    pub fn generator_ids(&self) -> Vec<(usize, usize)> {
        self.shapes
            .iter()
            .enumerate()
            .flat_map(|(i, s)| (0..s.generators.len()).map(move |k| (i, k)))
            .collect()
    }

    /// Writes `x ∈ X_s` as `generator·via` (Eilenberg–Zilber decomposition
    /// followed by an isomorphism into the catalog).
    pub fn resolve(&self, x_set: &dyn DendroidalSet, s: &Arc<Tree>, x: &Dendrex) -> Result<Resolution> {
        let mut cur_tree = s.clone();
        let mut cur = x.clone();
        let mut sigma = TreeMorphism::identity(s.clone());
        'collapse: loop {
            for (sg, dl) in degeneracy_pairs(&cur_tree) {
                let down = x_set.act(&cur, &dl);
                if x_set.act(&down, &sg) == cur {
                    sigma = sg.after(&sigma)?;
                    cur = down;
                    cur_tree = sg.target.clone();
                    continue 'collapse;
                }
            }
            break;
        }
        let shape = *self.by_key.get(&cur_tree.shape_key()).ok_or_else(|| {
            Error::BoundOverflow(format!("{} lies outside the bound {:?}", cur_tree, self.bound))
        })?;
        let tc = &self.shapes[shape].tree;
        let h = omega::isos(tc, &cur_tree).into_iter().next().expect("same shape");
        let z = x_set.act(&cur, &h);
        let (generator, g) = self.shapes[shape]
            .lookup
            .get(&z)
            .cloned()
            .ok_or_else(|| Error::InvalidMorphism(format!("{z} is not a nondegenerate dendrex over {tc}")))?;
        let h_inv = h.inverse().expect("iso");
        let via = g.after(&h_inv.after(&sigma)?)?;
        Ok(Resolution { shape, generator, via })
    }

    /// Evaluates a map given by generator images at an arbitrary dendrex.
    pub fn evaluate(
        &self,
        x_set: &dyn DendroidalSet,
        y_set: &dyn DendroidalSet,
        images: &HashMap<(usize, usize), Dendrex>,
        s: &Arc<Tree>,
        x: &Dendrex,
    ) -> Result<Dendrex> {
        let r = self.resolve(x_set, s, x)?;
        let img = images
            .get(&(r.shape, r.generator))
            .ok_or_else(|| Error::OutOfRange("generator image not yet assigned".into()))?;
        Ok(y_set.act(img, &r.via))
    }
}

/// A constraint that maps must commute with: `q ∘ F = p` for `p: X -> S`,
/// `q: Y -> S`.
pub struct Over<'a> {
    pub p: &'a DendrMap,
    pub q: &'a DendrMap,
}

/// Every map `X -> Y` (over `S` if a constraint is given), as generator
/// images in [`Skeleton::generator_ids`] order. The skeleton must contain
/// all nondegenerate dendrices of X.
pub fn enumerate_maps(
    x_set: &dyn DendroidalSet,
    skel: &Skeleton,
    y_set: &dyn DendroidalSet,
    over: Option<&Over<'_>>,
) -> Result<Vec<Vec<Dendrex>>> {
    let ids = skel.generator_ids();
    // candidates and face data per generator
    struct Slot {
        faces: Vec<(TreeMorphism, Resolution)>,
        candidates: Vec<Dendrex>,
    }
    let mut slots = Vec::with_capacity(ids.len());
    for &(si, k) in &ids {
        let sh = &skel.shapes[si];
        let x = &sh.generators[k];
        let mut faces = Vec::new();
        for f in omega::faces(&sh.tree) {
            let xf = x_set.act(x, &f.map);
            let r = skel.resolve(x_set, &f.map.source, &xf)?;
            faces.push((f.map, r));
        }
        let mut candidates = y_set.dendrices(&sh.tree);
        if let Some(o) = over {
            let px = o.p.apply(&sh.tree, x);
            candidates.retain(|y| o.q.apply(&sh.tree, y) == px);
        }
        let stab: Vec<TreeMorphism> = sh.stabilizers[k].iter().filter(|g| !g.is_identity()).cloned().collect();
        candidates.retain(|y| stab.iter().all(|g| &y_set.act(y, g) == y));
        slots.push(Slot { faces, candidates });
    }
    let mut out = Vec::new();
    let mut images: HashMap<(usize, usize), Dendrex> = HashMap::new();
    fn rec(
        i: usize,
        ids: &[(usize, usize)],
        slots: &[Slot],
        y_set: &dyn DendroidalSet,
        images: &mut HashMap<(usize, usize), Dendrex>,
        out: &mut Vec<Vec<Dendrex>>,
    ) {
        if i == ids.len() {
            out.push(ids.iter().map(|id| images[id].clone()).collect());
            return;
        }
        let slot = &slots[i];
        for y in &slot.candidates {
            let ok = slot.faces.iter().all(|(f, r)| {
                let want = y_set.act(&images[&(r.shape, r.generator)], &r.via);
                y_set.act(y, f) == want
            });
            if ok {
                images.insert(ids[i], y.clone());
                rec(i + 1, ids, slots, y_set, images, out);
            }
        }
        images.remove(&ids[i]);
    }
    rec(0, &ids, &slots, y_set, &mut images, &mut out);
    Ok(out)
}

/// A map given by generator images, as a [`DendrMap`].
pub fn map_from_images(x: &DSet, skel: &Skeleton, y: &DSet, images: &[Dendrex], label: &str) -> DendrMap {
    let table: HashMap<(usize, usize), Dendrex> = skel.generator_ids().into_iter().zip(images.iter().cloned()).collect();
    let (xs, ys, sk) = (x.clone(), y.clone(), skel.clone());
    DendrMap::new(x.clone(), y.clone(), label, move |t, d| {
        sk.evaluate(xs.as_ref(), ys.as_ref(), &table, t, d).expect("dendrex within the skeleton")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{assoc, comm, free_tree_operad};
    use crate::sset::ChainSet;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    fn small() -> Bound {
        Bound::new(3, 3)
    }

    #[test]
    fn representable_censuses() {
        let c2 = census(representable(&t("r(a,b)")).as_ref(), small()).unwrap();
        assert_eq!(c2.get(&Tree::eta("x")), 3);
        assert_eq!(c2.get(&Tree::corolla(2)), 2);
        assert_eq!(c2.total(), 5);
        let e = census(eta().as_ref(), small()).unwrap();
        assert_eq!(e.total(), 1);
        // i*Ω[L_2] = Δ^2
        let r = restrict(representable(&Tree::linear(2)).as_ref(), 3);
        assert_eq!(r.census(), ChainSet::standard_simplex(2).tabulate(3).census());
        // i*Ω[C_2]: three points, no edges
        let r = restrict(representable(&Tree::corolla(2)).as_ref(), 2);
        assert_eq!(r.census(), vec![3, 0, 0]);
    }

    #[test]
    fn horn_censuses() {
        let l2 = t("c(b(a))");
        let h = inner_horn(&l2, "b").unwrap();
        let c = census(h.as_ref(), small()).unwrap();
        assert_eq!(c.by_vertices(), vec![3, 2, 0, 0]);
        assert!(matches!(inner_horn(&l2, "a"), Err(Error::NotInner(_))));
        let b = census(boundary(&Tree::corolla(3)).as_ref(), small()).unwrap();
        assert_eq!(b.by_vertices(), vec![4, 0, 0, 0]);
        let tr = t("r(a(x,y),b)");
        let o = census(outer_horn(&tr, "a").unwrap().as_ref(), small()).unwrap();
        let bd = census(boundary(&tr).as_ref(), small()).unwrap();
        let rep = census(representable(&tr).as_ref(), small()).unwrap();
        assert!(o.total() < bd.total() && bd.total() < rep.total());
        assert!(union_in(&outer_horn(&tr, "a").unwrap(), &boundary(&l2)).is_err());
    }

    #[test]
    fn nerves() {
        let n = terminal();
        for s in catalog(small()).unwrap().iter() {
            assert_eq!(n.dendrices(s).len(), 1);
        }
        let a = nerve(&assoc());
        assert_eq!(a.dendrices(&Arc::new(Tree::corolla(3))).len(), 6);
        assert!(check_presheaf_laws(a.as_ref(), Bound::new(2, 3)).unwrap().is_none());
        let f = nerve(&free_tree_operad(&t("r(a,b)")));
        assert_eq!(
            census(f.as_ref(), small()).unwrap(),
            census(representable(&t("r(a,b)")).as_ref(), small()).unwrap()
        );
        let _ = comm();
    }

    #[test]
    fn embedding() {
        let d2 = ChainSet::standard_simplex(2).tabulate(4);
        let x = simplicial_embed(&d2, "simplex(2)");
        assert_eq!(
            census(x.as_ref(), small()).unwrap(),
            census(representable(&Tree::linear(2)).as_ref(), small()).unwrap()
        );
        assert_eq!(restrict(x.as_ref(), 3).census(), d2.truncate(3).census());
        assert!(x.dendrices(&Arc::new(Tree::corolla(2))).is_empty());
        assert!(check_presheaf_laws(x.as_ref(), small()).unwrap().is_none());
    }

    #[test]
    fn maps_and_fibers() {
        let two = coproduct(vec![terminal(), terminal()]);
        let p = DendrMap::copair(vec![DendrMap::identity(&terminal()), DendrMap::identity(&terminal())], &terminal());
        assert!(p.check_natural(small()).unwrap().is_none());
        let _ = two;
        let fib = fiber(&p, &Dendrex(vec![0]), 2).unwrap();
        assert_eq!(fib.pi0().len(), 2);
        let id = DendrMap::identity(&representable(&Tree::corolla(2)));
        let fib = fiber(&id, &Dendrex(vec![1]), 2).unwrap();
        assert_eq!(fib.census(), vec![1, 0, 0]);
    }

    #[test]
    fn normality() {
        let c2 = Tree::corolla(2);
        assert!(is_normal_mono(&DendrMap::from_empty(&representable(&c2)), small()).unwrap().is_none());
        let b = boundary(&c2);
        assert!(is_normal_mono(&DendrMap::inclusion(&b, &representable(&c2)), small()).unwrap().is_none());
        let w = is_normal_mono(&DendrMap::from_empty(&terminal()), small()).unwrap().unwrap();
        assert!(w.tree.is_corolla() && w.tree.arity(0) == Some(2));
    }
}

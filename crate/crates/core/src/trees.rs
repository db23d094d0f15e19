//! Finite rooted trees: the objects of the tree category.
//!
//! A tree is a set of named edges. Every edge either is a leaf or carries a
//! vertex on top of it; the vertex has an ordered (but semantically unordered)
//! list of input edges. A vertex with no inputs is a nullary vertex, written
//! `x()` in the text grammar, while a bare `x` is a leaf.
//!
//! Vertices are addressed by their output edge everywhere in this crate.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_trees`].
pub const ENUMERATION_CAP: usize = 7;

/// Default maximum vertex arity for exhaustive enumeration.
pub const DEFAULT_ARITY_CAP: usize = 3;

/// Recursive presentation of a tree, convenient for building new trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    /// `None` for a leaf, `Some(children)` for an edge with a vertex on top.
    pub kids: Option<Vec<Node>>,
}

impl Node {
    pub fn leaf(name: impl Into<String>) -> Node {
        Node {
            name: name.into(),
            kids: None,
        }
    }

    pub fn vertex(name: impl Into<String>, kids: Vec<Node>) -> Node {
        Node {
            name: name.into(),
            kids: Some(kids),
        }
    }
}

/// A finite rooted tree with named edges. Edges are indexed in preorder, the
/// root edge has index 0.
#[derive(Clone, Debug)]
pub struct Tree {
    names: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Option<Vec<usize>>>,
    index: HashMap<String, usize>,
}

/// Counts and edge sets of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub vertices: usize,
    pub edges: usize,
    pub inner: BTreeSet<String>,
    pub leaves: BTreeSet<String>,
    pub root: String,
}

impl Tree {
    pub fn from_node(node: &Node) -> Result<Tree> {
        let mut t = Tree {
            names: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            index: HashMap::new(),
        };
        t.push(node, None)?;
        Ok(t)
    }

    fn push(&mut self, node: &Node, parent: Option<usize>) -> Result<usize> {
        let id = self.names.len();
        if self.index.insert(node.name.clone(), id).is_some() {
            return Err(Error::DuplicateEdge(node.name.clone()));
        }
        self.names.push(node.name.clone());
        self.parent.push(parent);
        self.children.push(None);
        if let Some(kids) = &node.kids {
            let mut ids = Vec::with_capacity(kids.len());
            for k in kids {
                ids.push(self.push(k, Some(id))?);
            }
            self.children[id] = Some(ids);
        }
        Ok(id)
    }

    pub fn to_node(&self) -> Node {
        self.node_at(0)
    }

    pub fn node_at(&self, e: usize) -> Node {
        Node {
            name: self.names[e].clone(),
            kids: self.children[e]
                .as_ref()
                .map(|ks| ks.iter().map(|&k| self.node_at(k)).collect()),
        }
    }

    pub fn parse(text: &str) -> Result<Tree> {
        let node = Parser::new(text).parse_full()?;
        Tree::from_node(&node)
    }

    /// The tree η: a single edge and no vertices.
    pub fn eta(name: &str) -> Tree {
        Tree::from_node(&Node::leaf(name)).expect("single edge")
    }

    /// The n-corolla with root `r` and leaves `a0 .. a{n-1}`.
    pub fn corolla(n: usize) -> Tree {
        let kids = (0..n).map(|i| Node::leaf(format!("a{i}"))).collect();
        Tree::from_node(&Node::vertex("r", kids)).expect("distinct names")
    }

    /// The linear tree L_n with leaf `l0` and root `l{n}`.
    pub fn linear(n: usize) -> Tree {
        let mut node = Node::leaf("l0");
        for i in 1..=n {
            node = Node::vertex(format!("l{i}"), vec![node]);
        }
        Tree::from_node(&node).expect("distinct names")
    }

    pub fn num_edges(&self) -> usize {
        self.names.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.children.iter().filter(|c| c.is_some()).count()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edge(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn try_edge(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Inputs of the vertex on top of `e`, or `None` when `e` is a leaf.
    pub fn children(&self, e: usize) -> Option<&[usize]> {
        self.children[e].as_deref()
    }

    pub fn parent(&self, e: usize) -> Option<usize> {
        self.parent[e]
    }

    pub fn is_leaf(&self, e: usize) -> bool {
        self.children[e].is_none()
    }

    pub fn has_vertex(&self, e: usize) -> bool {
        self.children[e].is_some()
    }

    pub fn arity(&self, e: usize) -> Option<usize> {
        self.children[e].as_ref().map(Vec::len)
    }

    pub fn is_inner(&self, e: usize) -> bool {
        self.parent[e].is_some() && self.children[e].is_some()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| self.is_leaf(e)).collect()
    }

    pub fn inner_edges(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| self.is_inner(e)).collect()
    }

    /// Output edges of all vertices, in preorder.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| self.has_vertex(e)).collect()
    }

    pub fn is_eta(&self) -> bool {
        self.num_edges() == 1 && self.is_leaf(0)
    }

    /// True when every vertex is unary, i.e. the tree is some L_n.
    pub fn is_linear(&self) -> bool {
        self.children.iter().all(|c| c.as_ref().map_or(true, |k| k.len() == 1))
    }

    pub fn is_corolla(&self) -> bool {
        self.num_vertices() == 1
    }

    /// Edges of a linear tree ordered from the leaf to the root.
    pub fn linear_order(&self) -> Option<Vec<usize>> {
        if !self.is_linear() {
            return None;
        }
        let mut order = Vec::with_capacity(self.num_edges());
        let mut e = 0;
        loop {
            order.push(e);
            match &self.children[e] {
                Some(k) => e = k[0],
                None => break,
            }
        }
        order.reverse();
        Some(order)
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            inner: self.inner_edges().into_iter().map(|e| self.names[e].clone()).collect(),
            leaves: self.leaves().into_iter().map(|e| self.names[e].clone()).collect(),
            root: self.names[0].clone(),
        }
    }

    /// Is `x` equal to or above `c`?
    pub fn is_above(&self, x: usize, c: usize) -> bool {
        let mut e = Some(x);
        while let Some(y) = e {
            if y == c {
                return true;
            }
            e = self.parent[y];
        }
        false
    }

    /// All edges equal to or above `c`, in preorder.
    pub fn edges_above(&self, c: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![c];
        while let Some(e) = stack.pop() {
            out.push(e);
            if let Some(k) = &self.children[e] {
                stack.extend(k.iter().rev());
            }
        }
        out
    }

    /// T/c: the edge `c` together with everything above it.
    pub fn subtree_above(&self, c: &str) -> Result<Tree> {
        let e = self.edge(c)?;
        Ok(Tree::from_node(&self.node_at(e)).expect("sub-presentation of a valid tree"))
    }

    /// Does `cut` (a list of edges) form the leaves of a subtree rooted at
    /// `c`? The singleton `{c}` is the trivial subtree η.
    pub fn is_cut(&self, c: usize, cut: &[usize]) -> bool {
        let mut seen = HashSet::new();
        for &x in cut {
            if !seen.insert(x) || !self.is_above(x, c) {
                return false;
            }
        }
        self.cut_covers(c, &seen)
    }

    fn cut_covers(&self, e: usize, cut: &HashSet<usize>) -> bool {
        if cut.contains(&e) {
            // nothing strictly above may also be in the cut
            return self.edges_above(e).iter().skip(1).all(|x| !cut.contains(x));
        }
        match &self.children[e] {
            None => false,
            Some(k) => k.iter().all(|&x| self.cut_covers(x, cut)),
        }
    }

    /// All cuts above `c`, each as a sorted edge list. Includes `{c}`.
    pub fn cuts_above(&self, c: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![c]];
        if let Some(k) = &self.children[c] {
            let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
            for &x in k {
                let sub = self.cuts_above(x);
                let mut next = Vec::with_capacity(acc.len() * sub.len());
                for a in &acc {
                    for s in &sub {
                        let mut v = a.clone();
                        v.extend_from_slice(s);
                        next.push(v);
                    }
                }
                acc = next;
            }
            for mut a in acc {
                a.sort_unstable();
                out.push(a);
            }
        }
        out
    }

    /// Vertices (output edges) of the subtree with root `c` and leaves `cut`.
    pub fn vertices_between(&self, c: usize, cut: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![c];
        while let Some(e) = stack.pop() {
            if cut.contains(&e) {
                continue;
            }
            if let Some(k) = &self.children[e] {
                out.push(e);
                stack.extend(k.iter().rev());
            }
        }
        out
    }

    /// The subtree with root `c` and leaves `cut` as a tree of its own.
    pub fn subtree_between(&self, c: usize, cut: &[usize]) -> Tree {
        fn go(t: &Tree, e: usize, cut: &[usize]) -> Node {
            if cut.contains(&e) {
                return Node::leaf(t.name(e));
            }
            Node {
                name: t.name(e).to_string(),
                kids: t.children(e).map(|k| k.iter().map(|&x| go(t, x, cut)).collect()),
            }
        }
        Tree::from_node(&go(self, c, cut)).expect("subtree of a valid tree")
    }

    /// Name-sensitive normal form: children sorted by their own normal form.
    pub fn key(&self) -> String {
        self.key_at(0)
    }

    fn key_at(&self, e: usize) -> String {
        match &self.children[e] {
            None => self.names[e].clone(),
            Some(k) => {
                let mut parts: Vec<String> = k.iter().map(|&x| self.key_at(x)).collect();
                parts.sort();
                format!("{}({})", self.names[e], parts.join(","))
            }
        }
    }

    /// Structural normal form ignoring names; equal iff the trees are
    /// isomorphic.
    pub fn shape_key(&self) -> String {
        self.shape_keys()[0].clone()
    }

    /// Structural normal form of the subtree above every edge.
    pub fn shape_keys(&self) -> Vec<String> {
        let mut keys = vec![String::new(); self.num_edges()];
        for e in (0..self.num_edges()).rev() {
            keys[e] = match &self.children[e] {
                None => "|".to_string(),
                Some(k) => {
                    let mut parts: Vec<&str> = k.iter().map(|&x| keys[x].as_str()).collect();
                    parts.sort_unstable();
                    format!("({})", parts.concat())
                }
            };
        }
        keys
    }

    /// Canonical representative of the isomorphism class, with edges named
    /// `e0, e1, ..` in canonical preorder, together with the isomorphism from
    /// `self` (edge index of `self` to edge index of the result).
    pub fn canonical(&self) -> (Tree, Vec<usize>) {
        let keys = self.shape_keys();
        let mut map = vec![0; self.num_edges()];
        let mut counter = 0;
        fn go(t: &Tree, e: usize, keys: &[String], counter: &mut usize, map: &mut [usize]) -> Node {
            let id = *counter;
            *counter += 1;
            map[e] = id;
            let name = format!("e{id}");
            match t.children(e) {
                None => Node::leaf(name),
                Some(k) => {
                    let mut k = k.to_vec();
                    k.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
                    let kids = k.iter().map(|&x| go(t, x, keys, counter, map)).collect();
                    Node::vertex(name, kids)
                }
            }
        }
        let node = go(self, 0, &keys, &mut counter, &mut map);
        let canon = Tree::from_node(&node).expect("fresh names");
        // from_node assigns preorder indices in the same order as `counter`
        (canon, map)
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.shape_key() == other.shape_key()
    }

    /// Renames every edge through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Tree> {
        fn go(n: &Node, f: &dyn Fn(&str) -> String) -> Node {
            Node {
                name: f(&n.name),
                kids: n.kids.as_ref().map(|k| k.iter().map(|x| go(x, f)).collect()),
            }
        }
        Tree::from_node(&go(&self.to_node(), &f))
    }

    /// A short human label: η, C_n, L_n, or the tree term.
    pub fn label(&self) -> String {
        if self.is_eta() {
            "eta".to_string()
        } else if self.is_corolla() {
            format!("C_{}", self.arity(0).unwrap_or(0))
        } else if self.is_linear() {
            format!("L_{}", self.num_vertices())
        } else {
            self.shape_key()
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Tree) -> bool {
        self.num_edges() == other.num_edges() && self.key() == other.key()
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Tree, e: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str(t.name(e))?;
            if let Some(k) = t.children(e) {
                f.write_str("(")?;
                for (i, &x) in k.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    go(t, x, f)?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

impl std::str::FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        Tree::parse(s)
    }
}

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &'a str) -> Parser<'a> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'@'))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an edge name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// Matches a literal keyword (no whitespace inside).
    pub(crate) fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    pub(crate) fn node(&mut self) -> Result<Node> {
        let name = self.name()?;
        if !self.eat(b'(') {
            return Ok(Node::leaf(name));
        }
        let mut kids = Vec::new();
        if !self.eat(b')') {
            loop {
                kids.push(self.node()?);
                if self.eat(b')') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(Node::vertex(name, kids))
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn parse_full(&mut self) -> Result<Node> {
        let n = self.node()?;
        self.finish()?;
        Ok(n)
    }
}

/// An isomorphism of trees, stored as a bijection of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeIso {
    pub edge_map: Vec<usize>,
}

impl TreeIso {
    pub fn identity(n: usize) -> TreeIso {
        TreeIso {
            edge_map: (0..n).collect(),
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &TreeIso) -> TreeIso {
        TreeIso {
            edge_map: first.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        }
    }

    pub fn inverse(&self) -> TreeIso {
        let mut inv = vec![0; self.edge_map.len()];
        for (i, &j) in self.edge_map.iter().enumerate() {
            inv[j] = i;
        }
        TreeIso { edge_map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.edge_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// All isomorphisms `a -> b`, as edge maps indexed by edges of `a`.
pub fn isomorphisms(a: &Tree, b: &Tree) -> Vec<TreeIso> {
    if a.num_edges() != b.num_edges() {
        return Vec::new();
    }
    let ka = a.shape_keys();
    let kb = b.shape_keys();
    if ka[0] != kb[0] {
        return Vec::new();
    }
    iso_at(a, b, &ka, &kb, 0, 0)
        .into_iter()
        .map(|pairs| {
            let mut m = vec![0; a.num_edges()];
            for (x, y) in pairs {
                m[x] = y;
            }
            TreeIso { edge_map: m }
        })
        .collect()
}

fn iso_at(a: &Tree, b: &Tree, ka: &[String], kb: &[String], x: usize, y: usize) -> Vec<Vec<(usize, usize)>> {
    let (Some(ca), Some(cb)) = (a.children(x), b.children(y)) else {
        return vec![vec![(x, y)]];
    };
    let mut out = Vec::new();
    let mut used = vec![false; cb.len()];
    let mut chosen = Vec::with_capacity(ca.len());
    fn assign(
        a: &Tree,
        b: &Tree,
        ka: &[String],
        kb: &[String],
        ca: &[usize],
        cb: &[usize],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
        head: (usize, usize),
    ) {
        let i = chosen.len();
        if i == ca.len() {
            let mut partials: Vec<Vec<(usize, usize)>> = vec![vec![head]];
            for (j, &c) in ca.iter().enumerate() {
                let sub = iso_at(a, b, ka, kb, c, cb[chosen[j]]);
                let mut next = Vec::with_capacity(partials.len() * sub.len());
                for p in &partials {
                    for s in &sub {
                        let mut v = p.clone();
                        v.extend_from_slice(s);
                        next.push(v);
                    }
                }
                partials = next;
            }
            out.extend(partials);
            return;
        }
        for j in 0..cb.len() {
            if !used[j] && ka[ca[i]] == kb[cb[j]] {
                used[j] = true;
                chosen.push(j);
                assign(a, b, ka, kb, ca, cb, used, chosen, out, head);
                chosen.pop();
                used[j] = false;
            }
        }
    }
    assign(a, b, ka, kb, ca, cb, &mut used, &mut chosen, &mut out, (x, y));
    out
}

/// The automorphism group of `t`.
pub fn automorphisms(t: &Tree) -> Vec<TreeIso> {
    isomorphisms(t, t)
}

/// Order of the automorphism group, computed from multiplicities of equal
/// sibling subtrees without listing the group.
pub fn automorphism_count(t: &Tree) -> u64 {
    let keys = t.shape_keys();
    let mut count: u64 = 1;
    for v in t.vertices() {
        let mut groups: BTreeMap<&str, u64> = BTreeMap::new();
        for &c in t.children(v).unwrap_or(&[]) {
            *groups.entry(keys[c].as_str()).or_default() += 1;
        }
        for m in groups.values() {
            count *= (1..=*m).product::<u64>();
        }
    }
    count
}

/// Grafts trees onto leaves of `t`. Each assigned tree must have the leaf's
/// name as its root. Returns the grafted tree and the former leaves that
/// became inner edges.
pub fn graft(t: &Tree, assignment: &BTreeMap<String, Tree>) -> Result<(Tree, BTreeSet<String>)> {
    let mut names: HashSet<String> = t.names().iter().cloned().collect();
    for (leaf, s) in assignment {
        let e = t.edge(leaf)?;
        if !t.is_leaf(e) {
            return Err(Error::NotALeaf(leaf.clone()));
        }
        if s.name(0) != leaf {
            return Err(Error::RootMismatch {
                leaf: leaf.clone(),
                found: s.name(0).to_string(),
            });
        }
        for n in s.names().iter().skip(1) {
            if !names.insert(n.clone()) {
                return Err(Error::DuplicateEdge(n.clone()));
            }
        }
    }
    fn go(t: &Tree, e: usize, a: &BTreeMap<String, Tree>) -> Node {
        match t.children(e) {
            Some(k) => Node::vertex(t.name(e), k.iter().map(|&x| go(t, x, a)).collect()),
            None => match a.get(t.name(e)) {
                Some(s) => s.to_node(),
                None => Node::leaf(t.name(e)),
            },
        }
    }
    let grafted = Tree::from_node(&go(t, 0, assignment))?;
    let fresh = assignment
        .iter()
        .filter(|(_, s)| s.num_vertices() > 0)
        .map(|(l, _)| l.clone())
        .collect();
    Ok((grafted, fresh))
}

/// One representative per isomorphism class of trees with at most
/// `max_vertices` vertices, each of arity at most `max_arity`. Canonical
/// names, ordered by vertex count and then by generation order.
pub fn enumerate_trees(max_vertices: usize, max_arity: usize) -> Result<Vec<Tree>> {
    if max_vertices > ENUMERATION_CAP {
        return Err(Error::CapExceeded(format!(
            "{max_vertices} vertices requested, cap is {ENUMERATION_CAP}"
        )));
    }
    #[derive(Clone)]
    enum Shape {
        Leaf,
        Vertex(Vec<usize>),
    }
    // shapes[i] with vertex count sizes[i]; generated in nondecreasing size
    let mut shapes: Vec<Shape> = vec![Shape::Leaf];
    let mut sizes: Vec<usize> = vec![0];
    for k in 1..=max_vertices {
        let upto = shapes.len();
        let mut fresh = Vec::new();
        // children multisets as nondecreasing index sequences summing to k-1
        fn rec(
            start: usize,
            remaining: usize,
            slots: usize,
            upto: usize,
            sizes: &[usize],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if remaining == 0 {
                out.push(cur.clone());
            }
            if slots == 0 {
                return;
            }
            for i in start..upto {
                if sizes[i] <= remaining {
                    cur.push(i);
                    rec(i, remaining - sizes[i], slots - 1, upto, sizes, cur, out);
                    cur.pop();
                }
            }
        }
        rec(0, k - 1, max_arity, upto, &sizes, &mut Vec::new(), &mut fresh);
        for kids in fresh {
            shapes.push(Shape::Vertex(kids));
            sizes.push(k);
        }
    }
    fn build(shapes: &[Shape], i: usize) -> Node {
        match &shapes[i] {
            Shape::Leaf => Node::leaf("x"),
            Shape::Vertex(k) => Node::vertex("x", k.iter().map(|&j| build(shapes, j)).collect()),
        }
    }
    let mut counter: usize;
    fn rename(n: &Node, counter: &mut usize) -> Node {
        let name = format!("e{counter}");
        *counter += 1;
        Node {
            name,
            kids: n.kids.as_ref().map(|k| k.iter().map(|x| rename(x, counter)).collect()),
        }
    }
    let mut out = Vec::with_capacity(shapes.len());
    for i in 0..shapes.len() {
        counter = 0;
        let raw = Tree::from_node(&rename(&build(&shapes, i), &mut counter)).expect("fresh names");
        out.push(raw.canonical().0);
    }
    Ok(out)
}

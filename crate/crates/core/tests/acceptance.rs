//! Acceptance suite: ten criteria, each checked exhaustively on small
//! instances against an oracle written independently here. Every test
//! prints one `PASS`/`FAIL` line to standard output (written directly, so it
//! shows even when the harness captures test output).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use dendroidal::dset::{self, catalog, census, representable, Bound, DSet, DendrMap, Dendrex};
use dendroidal::fibcheck;
use dendroidal::omega::{self, FaceKind, TreeMorphism};
use dendroidal::operads::free_tree_operad;
use dendroidal::sset::{simplicial_mapping_space, ChainSet, CubeMap};
use dendroidal::tensor;
use dendroidal::trees::{enumerate_trees, Node, Tree};
use dendroidal::wstraight;

fn report(n: usize, title: &str, ok: bool, detail: &str, started: Instant) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {n:>2} [{}] {title} — {detail} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
}

fn trees_upto(vertices: usize, arity: usize) -> Vec<Arc<Tree>> {
    catalog(Bound::new(vertices, arity)).unwrap().iter().cloned().collect()
}

// ---------------------------------------------------------------------------
// 1. Nerve–representable agreement

#[test]
fn criterion_01_nerve_representable() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut shapes_checked = 0usize;
    let all = trees_upto(4, 3);
    for t in &all {
        let rep = representable(t);
        let nv = dset::nerve(&free_tree_operad(t));
        let sb = Bound::new(t.num_vertices(), 3);
        if census(rep.as_ref(), sb).unwrap() != census(nv.as_ref(), sb).unwrap() {
            failures.push(format!("census differs at {t}"));
        }
        for s in trees_upto(t.num_vertices(), 3) {
            shapes_checked += 1;
            // colours of an operad map Ω(S) → Ω(T) are edges of T; the
            // bijection sends an edge map to the operad map with those colours
            let phi = |x: &Dendrex| Dendrex(x.0.clone());
            let rx: BTreeSet<Dendrex> = rep.dendrices(&s).into_iter().collect();
            let nx: BTreeSet<Dendrex> = nv.dendrices(&s).into_iter().collect();
            let img: BTreeSet<Dendrex> = rx.iter().map(phi).collect();
            if img != nx || img.len() != rx.len() {
                failures.push(format!("no bijection over {s} for {t}"));
                continue;
            }
            for g in omega::isos(&s, &s) {
                for x in &rx {
                    if phi(&rep.act(x, &g)) != nv.act(&phi(x), &g) {
                        failures.push(format!("not equivariant over {s} for {t}"));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(
        1,
        "nerve(free(T)) ≅ rep(T)",
        ok,
        &format!("{} trees, {shapes_checked} shape pairs, {} failures", all.len(), failures.len()),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 2. Dendroidal identities

#[test]
fn criterion_02_dendroidal_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    let all = trees_upto(4, 3);
    for t in &all {
        // codimension-two composites grouped by the set of image edges
        let mut by_image: BTreeMap<BTreeSet<(String, Option<BTreeSet<String>>)>, Vec<TreeMorphism>> = BTreeMap::new();
        for f1 in omega::faces(t) {
            for f2 in omega::faces(&f1.map.source) {
                let h = f1.map.after(&f2.map).unwrap();
                // the image subface: its edges and, for each, the inputs of
                // the vertex above it (nullary vertices and leaves differ)
                let image: BTreeSet<(String, Option<BTreeSet<String>>)> = (0..h.source.num_edges())
                    .map(|e| {
                        let kids = h.source.children(e).map(|k| k.iter().map(|&c| t.name(h.edge_map[c]).to_string()).collect());
                        (t.name(h.edge_map[e]).to_string(), kids)
                    })
                    .collect();
                if image.len() != h.source.num_edges() {
                    failures.push(format!("{t}: composite of faces is not injective"));
                }
                by_image.entry(image).or_default().push(h);
            }
        }
        for hs in by_image.values() {
            for h in &hs[1..] {
                pairs += 1;
                let agrees = omega::isos(&h.source, &hs[0].source)
                    .iter()
                    .any(|phi| hs[0].after(phi).map(|c| c.edge_map == h.edge_map).unwrap_or(false));
                if !agrees {
                    failures.push(format!("{t}: faces with image {:?} differ", h.edge_map));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(
        2,
        "dendroidal identities",
        ok,
        &format!("{} trees, {pairs} pairs with common image, {} failures", all.len(), failures.len()),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 3. Horns against the union-of-faces oracle

/// Edge maps `s -> t` factoring through one of the given faces, computed by
/// composing homs into each face with its inclusion.
fn union_of_faces(s: &Tree, t: &Tree, faces: &[Tree]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for f in faces {
        for h in omega::hom_edge_maps(s, f) {
            out.insert(h.iter().map(|&e| t.edge(f.name(e)).unwrap() as u32).collect());
        }
    }
    out
}

#[test]
fn criterion_03_horns() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut horns = 0usize;
    for t in trees_upto(4, 3) {
        let faces = omega::faces(&t);
        let mut cases: Vec<(DSet, FaceKind)> = Vec::new();
        for e in t.inner_edges() {
            cases.push((dset::inner_horn(&t, t.name(e)).unwrap(), FaceKind::Inner(t.name(e).into())));
        }
        for v in t.vertices() {
            if omega::is_removable(&t, v) {
                cases.push((dset::outer_horn(&t, t.name(v)).unwrap(), FaceKind::Outer(t.name(v).into())));
            }
        }
        let shapes = trees_upto((t.num_vertices() + 1).min(4), 3);
        for (horn, omitted) in cases {
            horns += 1;
            let kept: Vec<Tree> =
                faces.iter().filter(|f| f.kind != omitted).map(|f| (*f.map.source).clone()).collect();
            for s in &shapes {
                let actual: BTreeSet<Vec<u32>> = horn.dendrices(s).into_iter().map(|d| d.0).collect();
                if actual != union_of_faces(s, &t, &kept) {
                    failures.push(format!("{} over {s}", horn.describe()));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(3, "horns = union of faces", ok, &format!("{horns} horns, {} failures", failures.len()), started);
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 4. Tensor consistency

/// Nondegenerate simplices of Δ^n × Δ^m per dimension: strictly increasing
/// chains in the product order of [n] × [m].
fn product_chains(n: usize, m: usize) -> Vec<usize> {
    let pts: Vec<(usize, usize)> = (0..=n).flat_map(|a| (0..=m).map(move |b| (a, b))).collect();
    let mut counts = vec![0usize; n + m + 1];
    fn extend(last: (usize, usize), len: usize, pts: &[(usize, usize)], counts: &mut [usize]) {
        counts[len - 1] += 1;
        for &p in pts {
            if p != last && p.0 >= last.0 && p.1 >= last.1 {
                extend(p, len + 1, pts, counts);
            }
        }
    }
    for &p in &pts {
        extend(p, 1, &pts, &mut counts);
    }
    counts
}

/// The operad Ω(T) ⊗ [n] is thin: an operation `((c_l, i_l)_l; (c, j))`
/// exists iff `{c_l}` is the leaf set of a subtree of T with root c (or
/// the unit) and every `i_l ≤ j`. A nondegenerate dendrex of its nerve is
/// a colouring with no identity vertex; colours strictly increase towards
/// the root, so it is the same as a tree named by colours. Enumerates those
/// trees with at most `max_v` vertices of arity at most `max_a`, named
/// `edge@level`.
fn bv_colour_trees(t: &Tree, n: usize, max_v: usize, max_a: usize) -> BTreeMap<String, Tree> {
    type Memo = HashMap<(usize, usize, usize), Vec<(Node, usize)>>;
    // trees rooted at colour (e, j) using at most `budget` vertices
    fn grow(t: &Tree, e: usize, j: usize, budget: usize, max_a: usize, memo: &mut Memo) -> Vec<(Node, usize)> {
        if let Some(v) = memo.get(&(e, j, budget)) {
            return v.clone();
        }
        let name = format!("{}@{j}", t.name(e));
        let mut out = vec![(Node::leaf(name.clone()), 0)];
        if budget > 0 {
            for cut in t.cuts_above(e).into_iter().filter(|c| c.len() <= max_a) {
                let k = cut.len();
                let mut levels = vec![0usize; k];
                loop {
                    let unit = cut == [e] && levels[0] == j;
                    if !unit {
                        // children built left to right within the remaining budget
                        let mut partial: Vec<(Vec<Node>, usize)> = vec![(Vec::new(), 1)];
                        for (&c, &i) in cut.iter().zip(&levels) {
                            let mut next = Vec::new();
                            for (kids, used) in &partial {
                                for (node, v) in grow(t, c, i, budget - used, max_a, memo) {
                                    let mut kids = kids.clone();
                                    kids.push(node);
                                    next.push((kids, used + v));
                                }
                            }
                            partial = next;
                        }
                        for (kids, used) in partial {
                            out.push((Node::vertex(name.clone(), kids), used));
                        }
                    }
                    let mut q = 0;
                    while q < k {
                        levels[q] += 1;
                        if levels[q] <= j {
                            break;
                        }
                        levels[q] = 0;
                        q += 1;
                    }
                    if q == k {
                        break;
                    }
                }
            }
        }
        memo.insert((e, j, budget), out.clone());
        out
    }
    let mut memo = HashMap::new();
    let mut out = BTreeMap::new();
    for e in 0..t.num_edges() {
        for j in 0..=n {
            for (node, _) in grow(t, e, j, max_v, max_a, &mut memo) {
                let tree = Tree::from_node(&node).expect("colours along a tree are distinct");
                out.insert(tree.key(), tree);
            }
        }
    }
    out
}

#[test]
fn criterion_04_tensor() {
    let started = Instant::now();
    let mut failures = Vec::new();
    // (a) linear: i_!(Δ^n) ⊗ Δ^m against the product of simplices
    for n in 0..=4usize {
        for m in 0..=(4 - n) {
            let want = product_chains(n, m);
            let b = Bound::new(n + m, 1);
            let chains = dset::simplicial_embed_chains(&ChainSet::standard_simplex(n), n + m, "simplex");
            let via_chains = tensor::tensor_with_simplex(&chains, m, b).unwrap();
            let via_shuffles = tensor::tensor_with_simplex(&representable(&Tree::linear(n)), m, b).unwrap();
            for (route, r) in [("i!", via_chains), ("rep", via_shuffles)] {
                let got = census(r.set.as_ref(), b).unwrap().by_vertices();
                if got != want {
                    failures.push(format!("{route}(Δ^{n}) ⊗ Δ^{m}: {got:?} != {want:?}"));
                }
            }
        }
    }
    // (b) shuffles against the presentation of Ω(T) ⊗ [n], on every shape
    // with at most three vertices: exact sets of nondegenerate dendrices
    // (colour codes `edge·(n+1) + level`) and the census
    let mut named = 0usize;
    let cross = Bound::new(3, 3);
    let small_shapes = trees_upto(3, 3);
    for t in trees_upto(3, 3) {
        for n in 0..=2usize {
            let r = tensor::tensor_with_simplex(&representable(&t), n, cross).unwrap();
            let code = |name: &str| {
                let (e, i) = name.rsplit_once('@').unwrap();
                (t.edge(e).unwrap() * (n + 1) + i.parse::<usize>().unwrap()) as u32
            };
            let oracle = bv_colour_trees(&t, n, 3, 3);
            named += oracle.len();
            let mut per_shape: HashMap<String, Vec<Arc<Tree>>> = HashMap::new();
            for tree in oracle.values() {
                per_shape.entry(tree.shape_key()).or_default().push(Arc::new(tree.clone()));
            }
            let got = census(r.set.as_ref(), cross).unwrap();
            for s in &small_shapes {
                let mut want: BTreeSet<Vec<u32>> = BTreeSet::new();
                for tree in per_shape.remove(&s.shape_key()).unwrap_or_default() {
                    for phi in omega::isos(s, &tree) {
                        want.insert(phi.edge_map.iter().map(|&e| code(tree.name(e))).collect());
                    }
                }
                let have: BTreeSet<Vec<u32>> =
                    dset::nondegenerate(r.set.as_ref(), s).into_iter().map(|d| d.0).collect();
                if have != want || got.get(s) != want.len() {
                    failures.push(format!("{t} ⊗ Δ^{n} over {s}: {} shuffle vs {} presentation", have.len(), want.len()));
                }
            }
            if !per_shape.is_empty() {
                failures.push(format!("{t} ⊗ Δ^{n}: presentation has shapes outside the catalog"));
            }
        }
    }
    let ok = failures.is_empty();
    report(
        4,
        "tensor consistency",
        ok,
        &format!(
            "linear n+m≤4 and {named} named BV trees, {} failures",
            failures.len()
        ),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 5. W-construction axioms

#[test]
fn criterion_05_w_axioms() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let all = trees_upto(5, 3);
    for t in &all {
        let r = wstraight::verify_w_axioms(t, 3);
        checked += r.checked;
        failures.extend(r.failures.into_iter().map(|f| format!("{t}: {f}")));
    }
    let ok = failures.is_empty();
    report(
        5,
        "W-construction unit/associativity/equivariance",
        ok,
        &format!("{} trees, {checked} instances, {} failures", all.len(), failures.len()),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 6. Straightening axioms

/// Δ[R/c] → Δ[T/h(c)] for any morphism: the coordinate of an axis is the
/// maximum of the coordinates of its preimage axes (0 if there are none).
fn straighten_oracle(h: &TreeMorphism, c: &str, v: &BTreeSet<String>) -> BTreeSet<String> {
    let (r, t) = (&h.source, &h.target);
    let hc = h.edge_map[r.edge(c).unwrap()];
    v.iter()
        .map(|a| h.edge_map[r.edge(a).unwrap()])
        .filter(|&b| b != hc)
        .map(|b| t.name(b).to_string())
        .collect()
}

/// `f` composed with a unary vertex inserted below edge `e` of its source:
/// the degeneracy collapsing it.
fn insert_unary(f: &Tree, e: usize) -> Arc<Tree> {
    fn go(f: &Tree, x: usize, at: usize) -> Node {
        let here = Node {
            name: if x == at { format!("{}_in", f.name(x)) } else { f.name(x).to_string() },
            kids: f.children(x).map(|k| k.iter().map(|&c| go(f, c, at)).collect()),
        };
        if x == at {
            Node::vertex(f.name(x), vec![here])
        } else {
            here
        }
    }
    Arc::new(Tree::from_node(&go(f, 0, e)).unwrap())
}

#[test]
fn criterion_06_straightening() {
    let started = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let (mut algebra, mut pairs, mut injective) = (0usize, 0usize, 0usize);
    let all = trees_upto(4, 3);
    for t in &all {
        let r = wstraight::verify_algebra_axioms(t, 3);
        algebra += r.checked;
        failures.extend(r.failures.into_iter().map(|f| format!("{t}: {f}")));
        // composable elementary pairs (f then g) with middle or end at t
        let mut composable: Vec<(TreeMorphism, TreeMorphism)> = Vec::new();
        for g in omega::faces(t) {
            for f in omega::faces(&g.map.source) {
                composable.push((f.map, g.map.clone()));
            }
            let src = &g.map.source;
            for e in 0..src.num_edges() {
                let x = insert_unary(src, e);
                if x.num_vertices() <= 4 {
                    let s = omega::degeneracy(&x, src.name(e)).unwrap();
                    let s = TreeMorphism::new(x.clone(), g.map.source.clone(), s.edge_map.clone()).unwrap();
                    composable.push((s, g.map.clone()));
                }
            }
        }
        for g in omega::degeneracies(t) {
            for f in omega::faces(t) {
                composable.push((f.map, g.clone()));
            }
            for g2 in omega::degeneracies(&g.target) {
                composable.push((g.clone(), g2));
            }
        }
        for (f, g) in composable {
            let h = g.after(&f).unwrap();
            for c in f.source.names() {
                pairs += 1;
                let sf = wstraight::straighten_face(&f, c).unwrap();
                let fc = f.target.name(f.edge_map[f.source.edge(c).unwrap()]).to_string();
                let sg = wstraight::straighten_face(&g, &fc).unwrap();
                let comp: CubeMap = sg.after(&sf).unwrap();
                let ok = (0..comp.source.num_vertices() as u64).all(|v| {
                    let v = comp.source.ones(v);
                    comp.apply_vertex(&v) == straighten_oracle(&h, c, &v)
                });
                if !ok {
                    failures.push(format!("functoriality: {f} then {g} at {c}"));
                }
                if omega::is_elementary(&h) {
                    let direct = wstraight::straighten_face(&h, c).unwrap();
                    if direct.rule != comp.rule {
                        failures.push(format!("straighten(g∘f) != straighten(g)∘straighten(f): {h} at {c}"));
                    }
                }
            }
        }
        for f in omega::faces(t) {
            for c in f.map.source.names() {
                injective += 1;
                let m = wstraight::straighten_face(&f.map, c).unwrap();
                if !m.is_injective_on_nondegenerate() {
                    failures.push(format!("{} at {c} is not injective", f.kind));
                }
                // direct check on the chains of small cubes
                if m.source.dimension() <= 6 {
                    let mut seen = BTreeSet::new();
                    let direct = m.source.chain_set().chains().iter().all(|ch| {
                        let img = m.apply_chain(ch);
                        img.windows(2).all(|w| w[0] != w[1]) && seen.insert(img)
                    });
                    if !direct {
                        failures.push(format!("{} at {c} identifies nondegenerate simplices", f.kind));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(
        6,
        "straightening axioms",
        ok,
        &format!(
            "{} trees, {algebra} algebra instances, {pairs} functoriality checks, {injective} face inclusions, {} failures",
            all.len(),
            failures.len()
        ),
        started,
    );
    assert!(ok, "{:?}", &failures[..failures.len().min(10)]);
}

// ---------------------------------------------------------------------------
// 7. Fibrancy checkers

#[test]
fn criterion_07_fibrancy() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let b4 = Bound::new(4, 3);
    let kan = fibcheck::is_dendroidal_kan(&dset::terminal(), b4).unwrap();
    if !kan.passed {
        failures.push(format!("nerve(comm) not dendroidal Kan: {:?}", kan.failure));
    }
    let b = Bound::new(3, 3);
    let point = dset::simplicial_embed_chains(&ChainSet::point(), 3, "point");
    let lf = fibcheck::is_left_fibration(&DendrMap::to_terminal(&point), b).unwrap();
    match &lf.failure {
        Some(w) if w.clause == "corolla" && w.tree == Tree::corolla(0).to_string() && w.top.is_empty() => {}
        other => failures.push(format!("i!(point): expected nullary corolla failure, got {other:?}")),
    }
    let two = dset::coproduct(vec![dset::terminal(), dset::terminal()]);
    let k2 = fibcheck::is_dendroidal_kan(&two, b).unwrap();
    match &k2.failure {
        Some(w) if w.clause == "(i)" && w.tree == Tree::corolla(2).to_string() => {
            // the two leaf colours lie in different summands
            let tags: BTreeSet<&str> = w.top.iter().map(|(_, x)| &x[..2]).collect();
            if tags.len() != 2 {
                failures.push(format!("witness inputs in one summand: {w}"));
            }
        }
        other => failures.push(format!("coproduct: expected clause (i) at n = 2, got {other:?}")),
    }
    // left fibrations restrict to simplicial left fibrations
    let t = |s: &str| Tree::parse(s).unwrap();
    let mut maps: Vec<DendrMap> = vec![
        DendrMap::identity(&dset::terminal()),
        DendrMap::to_terminal(&dset::terminal()),
        DendrMap::to_terminal(&point),
        DendrMap::to_terminal(&two),
        DendrMap::identity(&representable(&t("r(b(a))"))),
        DendrMap::to_terminal(&representable(&t("r(b(a))"))),
        DendrMap::to_terminal(&dset::nerve(&dendroidal::operads::assoc())),
        DendrMap::identity(&dset::simplicial_embed_chains(&ChainSet::standard_simplex(2), 3, "simplex(2)")),
        DendrMap::to_eta(&dset::simplicial_embed_chains(&ChainSet::standard_simplex(1), 3, "simplex(1)")),
        DendrMap::to_eta(&dset::simplicial_embed_chains(&ChainSet::boundary(2), 3, "sboundary(2)")),
    ];
    maps.push(DendrMap::to_terminal(&dset::inner_horn(&t("r(b(a))"), "b").unwrap()));
    let mut passes = 0;
    for p in &maps {
        let r = fibcheck::is_left_fibration(p, b).unwrap();
        let inner = fibcheck::is_inner_fibration(p, b).unwrap();
        if r.passed && !inner.passed {
            failures.push(format!("{p:?}: left but not inner"));
        }
        if r.passed {
            passes += 1;
            if !fibcheck::restriction_is_left_fibration(p, b.vertices) {
                failures.push(format!("{p:?}: restriction is not a left fibration"));
            }
        }
    }
    let ok = failures.is_empty();
    report(
        7,
        "fibrancy checkers",
        ok,
        &format!("{} maps ({passes} left fibrations), {} failures", maps.len(), failures.len()),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 8. Generating left anodynes

#[test]
fn criterion_08_anodynes() {
    let started = Instant::now();
    let b = Bound::new(3, 3);
    let list = fibcheck::generating_left_anodynes(b).unwrap();
    // oracle: (tree, leaf vertex) pairs with at least two vertices, then
    // one corolla-leaf inclusion per n
    let mut want: Vec<(String, String)> = Vec::new();
    for t in enumerate_trees(3, 3).unwrap() {
        if t.num_vertices() < 2 {
            continue;
        }
        for v in 0..t.num_edges() {
            if let Some(kids) = t.children(v) {
                if kids.iter().all(|&c| t.children(c).is_none()) {
                    want.push((t.to_string(), t.name(v).to_string()));
                }
            }
        }
    }
    let horns: Vec<(String, String)> = list
        .iter()
        .filter(|a| a.left.clause == "leaf-vertex")
        .map(|a| {
            let faces: BTreeSet<String> = a.left.faces.iter().map(|f| f.key()).collect();
            // recover the omitted vertex from the faces
            let t = &a.left.tree;
            let v = t
                .vertices()
                .into_iter()
                .find(|&v| {
                    omega::outer_face(t, t.name(v)).map_or(false, |f| !faces.contains(&f.map.source.key()))
                })
                .unwrap();
            (t.to_string(), t.name(v).to_string())
        })
        .collect();
    let corollas: Vec<usize> = list
        .iter()
        .filter(|a| a.left.clause == "corolla")
        .map(|a| {
            assert!(a.left.tree.is_corolla());
            assert_eq!(a.left.faces.len(), a.left.tree.num_edges() - 1);
            a.left.faces.len()
        })
        .collect();
    let mut ok = true;
    let (mut h1, mut h2) = (horns.clone(), want.clone());
    h1.sort();
    h2.sort();
    ok &= h1 == h2;
    ok &= corollas == vec![0, 1, 2, 3];
    ok &= list.len() == want.len() + 4;
    report(
        8,
        "generating left anodynes",
        ok,
        &format!("{} leaf-vertex horns (oracle {}), corolla arities {corollas:?}", horns.len(), want.len()),
        started,
    );
    assert!(ok);
}

// ---------------------------------------------------------------------------
// 9. Slice over η

#[test]
fn criterion_09_slice_over_eta() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let sets: Vec<(&str, ChainSet)> = vec![
        ("point", ChainSet::point()),
        ("simplex(1)", ChainSet::standard_simplex(1)),
        ("sboundary(1)", ChainSet::boundary(1)),
        ("shorn(2,0)", ChainSet::horn(2, 0).unwrap()),
        ("simplex(2)", ChainSet::standard_simplex(2)),
    ];
    let mut compared = 0;
    for (kn, k) in &sets {
        for (ln, l) in &sets {
            let d = if k.dimension().unwrap_or(0) + 3 <= 4 { 3 } else { 2 };
            let x = dset::simplicial_embed_chains(k, 6, *kn);
            let y = dset::simplicial_embed_chains(l, 6, *ln);
            let m = tensor::mapping_space(&DendrMap::to_eta(&x), &DendrMap::to_eta(&y), d, Bound::new(6, 1)).unwrap();
            let s = simplicial_mapping_space(k, l, d);
            compared += 1;
            if m.counts() != s.counts() || m.census() != s.census() {
                failures.push(format!("Map({kn}, {ln}): {:?} vs {:?}", m.counts(), s.counts()));
            }
        }
    }
    let ok = failures.is_empty();
    report(
        9,
        "Map over η = simplicial mapping space",
        ok,
        &format!("{compared} pairs, {} failures", failures.len()),
        started,
    );
    assert!(ok, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 10. Normality

fn edge_map_between(f: &TreeMorphism) -> DendrMap {
    let (src, tgt) = (representable(&f.source), representable(&f.target));
    let em: Vec<u32> = f.edge_map.iter().map(|&e| e as u32).collect();
    DendrMap::new(src, tgt, "rep(f)", move |_, x| Dendrex(x.0.iter().map(|&e| em[e as usize]).collect()))
}

#[test]
fn criterion_10_normality() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let b = Bound::new(3, 3);
    let normal = |x: &DSet| dset::is_normal_mono(&DendrMap::from_empty(x), b).unwrap().is_none();
    let mut checked = 0;
    for t in trees_upto(3, 3) {
        checked += 2;
        if !normal(&representable(&t)) {
            failures.push(format!("rep({t}) not normal"));
        }
        if !normal(&dset::boundary(&t)) {
            failures.push(format!("boundary({t}) not normal"));
        }
    }
    match dset::is_normal_mono(&DendrMap::from_empty(&dset::terminal()), b).unwrap() {
        Some(w) if w.tree.is_corolla() && w.tree.num_edges() == 3 => {}
        other => failures.push(format!("nerve(comm): expected a C_2 witness, got {other:?}")),
    }
    // anything mapping to a normal set is normal
    let t = |s: &str| Arc::new(Tree::parse(s).unwrap());
    let mut maps: Vec<DendrMap> = Vec::new();
    for s in ["r(b(a))", "r(a,b)", "r(b(a),c)", "r(a(),b)"] {
        let tr = t(s);
        maps.push(DendrMap::inclusion(&dset::boundary(&tr), &representable(&tr)));
        for e in tr.inner_edges() {
            maps.push(DendrMap::inclusion(&dset::inner_horn(&tr, tr.name(e)).unwrap(), &representable(&tr)));
        }
        for f in omega::faces(&tr) {
            maps.push(edge_map_between(&f.map));
        }
        for s in omega::degeneracies(&tr) {
            maps.push(edge_map_between(&s));
        }
    }
    maps.push(DendrMap::to_eta(&dset::simplicial_embed_chains(&ChainSet::standard_simplex(2), 3, "simplex(2)")));
    for p in &maps {
        assert!(p.check_natural(b).unwrap().is_none(), "{p:?} is not natural");
        checked += 1;
        if normal(&p.target) && !normal(&p.source) {
            failures.push(format!("{p:?}: target normal, source not"));
        }
    }
    let ok = failures.is_empty();
    report(10, "normality", ok, &format!("{checked} checks, {} failures", failures.len()), started);
    assert!(ok, "{failures:?}");
}

//! The Boardman–Vogt W-construction on free tree operads and the
//! straightening of representables.
//!
//! All spaces here are cubes with named axes (edge names of the tree); a
//! vertex of a cube is the set of axes at coordinate 1. Products of cubes
//! with disjoint axes are cubes on the union of the axes, so every structure
//! map is a [`CubeMap`] between named cubes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::omega::TreeMorphism;
use crate::sset::{CubeComplex, CubeMap};
use crate::trees::Tree;

/// A signature `(c_1, .., c_n; c)` by edge names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WSignature {
    pub inputs: Vec<String>,
    pub output: String,
}

impl WSignature {
    pub fn new<S: Into<String>>(inputs: impl IntoIterator<Item = S>, output: impl Into<String>) -> WSignature {
        WSignature {
            inputs: inputs.into_iter().map(Into::into).collect(),
            output: output.into(),
        }
    }

    pub fn unit(c: &str) -> WSignature {
        WSignature::new([c], c)
    }

    pub fn is_unit(&self) -> bool {
        self.inputs.len() == 1 && self.inputs[0] == self.output
    }

    /// Inputs reordered: input `i` of the result is input `sigma[i]`.
    pub fn permuted(&self, sigma: &[usize]) -> WSignature {
        WSignature {
            inputs: sigma.iter().map(|&i| self.inputs[i].clone()).collect(),
            output: self.output.clone(),
        }
    }
}

impl fmt::Display for WSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.inputs.join(","), self.output)
    }
}

impl FromStr for WSignature {
    type Err = Error;

    /// Parses `c1,c2;c` (an empty input list is written `;c`).
    fn from_str(s: &str) -> Result<WSignature> {
        let (ins, out) = s.split_once(';').ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: "expected `inputs;output`".into(),
        })?;
        let out = out.trim();
        if out.is_empty() {
            return Err(Error::Syntax {
                pos: s.len(),
                msg: "missing output colour".into(),
            });
        }
        let inputs = ins.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect();
        Ok(WSignature {
            inputs,
            output: out.to_string(),
        })
    }
}

/// The rule of every grafting map: copy coordinates, and put each target
/// axis absent from the source (a newly inner edge) at 1.
fn grafting_map(source: CubeComplex, target: CubeComplex) -> CubeMap {
    let src_axes: BTreeSet<String> = source.axes().iter().cloned().collect();
    let fresh: BTreeSet<String> = target.axes().iter().filter(|a| !src_axes.contains(*a)).cloned().collect();
    let tgt_axes: BTreeSet<String> = target.axes().iter().cloned().collect();
    CubeMap::from_fn(source, target, |v| {
        v.iter().filter(|a| tgt_axes.contains(*a)).cloned().chain(fresh.iter().cloned()).collect()
    })
    .expect("grafting rules are monotone")
}

fn union_cube<'a>(parts: impl IntoIterator<Item = &'a CubeComplex>) -> CubeComplex {
    CubeComplex::new(parts.into_iter().flat_map(|c| c.axes().iter().cloned()))
}

/// W(Ω(T)): the operation space at a signature is the cube on the inner
/// edges of the unique subtree with those leaves and root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WOperad {
    pub tree: Arc<Tree>,
}

pub fn w_construction(t: &Tree) -> WOperad {
    WOperad {
        tree: Arc::new(t.clone()),
    }
}

impl WOperad {
    /// The subtree S of the signature, or `None` when the operation space is
    /// empty. Units give η.
    pub fn subtree(&self, sig: &WSignature) -> Result<Option<Tree>> {
        let t = &self.tree;
        let c = t.edge(&sig.output)?;
        let ins = sig.inputs.iter().map(|x| t.edge(x)).collect::<Result<Vec<usize>>>()?;
        if sig.is_unit() {
            return Ok(Some(Tree::eta(&sig.output)));
        }
        if ins.contains(&c) || !t.is_cut(c, &ins) {
            return Ok(None);
        }
        Ok(Some(t.subtree_between(c, &ins)))
    }

    pub fn space(&self, sig: &WSignature) -> Result<Option<CubeComplex>> {
        Ok(self.subtree(sig)?.map(|s| {
            let inner: Vec<String> = s.inner_edges().into_iter().map(|e| s.name(e).to_string()).collect();
            CubeComplex::new(inner)
        }))
    }

    fn nonempty_space(&self, sig: &WSignature) -> Result<CubeComplex> {
        self.space(sig)?
            .ok_or_else(|| Error::NotComposable(format!("no operation of signature ({sig}) in W({})", self.tree)))
    }

    /// Every inhabited signature, one input order per subtree, units
    /// included.
    pub fn signatures(&self) -> Vec<WSignature> {
        let t = &self.tree;
        let mut out = Vec::new();
        for c in 0..t.num_edges() {
            for cut in t.cuts_above(c) {
                out.push(WSignature::new(cut.iter().map(|&e| t.name(e)), t.name(c)));
            }
        }
        out
    }
}

/// Composition in W(Ω(T)): the cube map from the product of the operand
/// spaces to the space of the composite, assigning length 1 to the edges
/// along which the grafting happens.
pub fn w_compose(w: &WOperad, outer: &WSignature, inners: &[WSignature]) -> Result<CubeMap> {
    if inners.len() != outer.inputs.len() || inners.iter().zip(&outer.inputs).any(|(s, c)| &s.output != c) {
        return Err(Error::NotComposable(format!(
            "({outer}) with ({})",
            inners.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" | ")
        )));
    }
    let mut parts = vec![w.nonempty_space(outer)?];
    for s in inners {
        parts.push(w.nonempty_space(s)?);
    }
    let composite = composite_signature(outer, inners);
    let target = w.nonempty_space(&composite)?;
    Ok(grafting_map(union_cube(&parts), target))
}

pub fn composite_signature(outer: &WSignature, inners: &[WSignature]) -> WSignature {
    WSignature {
        inputs: inners.iter().flat_map(|s| s.inputs.iter().cloned()).collect(),
        output: outer.output.clone(),
    }
}

/// St_{Ω[T]}(id): the W(Ω(T))-algebra with value Δ[T/c] at each colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightAlgebra {
    pub w: WOperad,
}

pub fn straighten_identity(t: &Tree) -> StraightAlgebra {
    StraightAlgebra { w: w_construction(t) }
}

/// Axes of Δ[T/c]: the colours of T/c other than c.
fn slice_axes(t: &Tree, c: usize) -> Vec<String> {
    t.edges_above(c).into_iter().filter(|&e| e != c).map(|e| t.name(e).to_string()).collect()
}

impl StraightAlgebra {
    pub fn tree(&self) -> &Arc<Tree> {
        &self.w.tree
    }

    /// Δ[T/c].
    pub fn value(&self, c: &str) -> Result<CubeComplex> {
        let t = self.tree();
        Ok(CubeComplex::new(slice_axes(t, t.edge(c)?)))
    }

    /// W(c_1..c_n; c) × Δ[T/c_1] × .. × Δ[T/c_n] → Δ[T/c].
    pub fn structure_map(&self, sig: &WSignature) -> Result<CubeMap> {
        let mut parts = vec![self.w.nonempty_space(sig)?];
        for c in &sig.inputs {
            parts.push(self.value(c)?);
        }
        Ok(grafting_map(union_cube(&parts), self.value(&sig.output)?))
    }
}

/// The cube map Δ[R/c] → Δ[T/f(c)] of an elementary map `f: R -> T`
/// (a face or a degeneracy, possibly composed with an isomorphism).
///
/// Faces include with the new axes at 0. A degeneracy identifies two
/// adjacent colours; the merged coordinate is the maximum of the two, which
/// makes the map a retraction of the inclusions of both of its sections.
pub fn straighten_face(f: &TreeMorphism, c: &str) -> Result<CubeMap> {
    let fac = f.factorize();
    if fac.degeneracies.len() + fac.faces.len() > 1 {
        return Err(Error::NotElementary(f.to_string()));
    }
    let (r, t) = (&f.source, &f.target);
    let ci = r.edge(c)?;
    let fc = f.edge_map[ci];
    let source = CubeComplex::new(slice_axes(r, ci));
    let target = CubeComplex::new(slice_axes(t, fc));
    let image = |a: &str| t.name(f.edge_map[r.edge(a).expect("axis is an edge")]).to_string();
    if f.is_injective() {
        CubeMap::from_fn(source, target, |v| v.iter().map(|a| image(a)).collect())
    } else {
        let tgt_axes: BTreeSet<String> = target.axes().iter().cloned().collect();
        CubeMap::from_fn(source, target, |v| {
            v.iter().map(|a| image(a)).filter(|b| tgt_axes.contains(b)).collect()
        })
    }
}

/// W(f) on the operation space of a signature of R, for an elementary
/// `f: R -> T`: new inner edges get length 0, merged edges the maximum.
pub fn w_map(f: &TreeMorphism, sig: &WSignature) -> Result<CubeMap> {
    let (r, t) = (&f.source, &f.target);
    let wr = w_construction(r);
    let wt = w_construction(t);
    let source = wr.nonempty_space(sig)?;
    let img = |x: &str| -> Result<String> { Ok(t.name(f.edge_map[r.edge(x)?]).to_string()) };
    let tsig = WSignature {
        inputs: sig.inputs.iter().map(|x| img(x)).collect::<Result<_>>()?,
        output: img(&sig.output)?,
    };
    let target = wt.nonempty_space(&tsig)?;
    let tgt_axes: BTreeSet<String> = target.axes().iter().cloned().collect();
    CubeMap::from_fn(source, target, |v| {
        v.iter().map(|a| img(a).expect("edge")).filter(|b| tgt_axes.contains(b)).collect()
    })
}

/// Applies a family of cube maps with disjoint source axes to a vertex,
/// acting as the identity on axes none of them covers.
pub fn apply_product(maps: &[&CubeMap], v: &BTreeSet<String>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut covered = BTreeSet::new();
    for m in maps {
        let part: BTreeSet<String> = v.iter().filter(|a| m.source.axis(a).is_some()).cloned().collect();
        covered.extend(m.source.axes().iter().cloned());
        out.extend(m.apply_vertex(&part));
    }
    out.extend(v.iter().filter(|a| !covered.contains(*a)).cloned());
    out
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn all_vertices(c: &CubeComplex) -> Vec<BTreeSet<String>> {
    (0..c.num_vertices() as u64).map(|v| c.ones(v)).collect()
}

/// Two-stage decompositions `outer ∘ (inners)` of the signatures of T: an
/// outer cut above the root of a subtree and, above it, a cut reaching the
/// subtree's leaves.
fn two_stage(t: &Tree, c: usize, leaves: &[usize]) -> Vec<(WSignature, Vec<WSignature>)> {
    let mut out = Vec::new();
    for mid in t.cuts_above(c) {
        // each mid edge must sit below (or on) the leaves it covers
        let mut inners = Vec::new();
        let mut ok = true;
        for &m in &mid {
            let above: Vec<usize> = leaves.iter().copied().filter(|&l| t.is_above(l, m)).collect();
            if !t.is_cut(m, &above) {
                ok = false;
                break;
            }
            inners.push(WSignature::new(above.iter().map(|&e| t.name(e)), t.name(m)));
        }
        if ok {
            out.push((WSignature::new(mid.iter().map(|&e| t.name(e)), t.name(c)), inners));
        }
    }
    out
}

/// Unit, associativity and equivariance of composition in W(Ω(T)), at the
/// level of cube vertices. Equivariance is checked for permutations of at
/// most `max_perm` inputs.
pub fn verify_w_axioms(t: &Tree, max_perm: usize) -> AxiomReport {
    let w = w_construction(t);
    let mut rep = AxiomReport::default();
    let leaves = t.leaves();
    for sig in w.signatures() {
        let space = w.nonempty_space(&sig).expect("inhabited");
        // units
        let left = w_compose(&w, &WSignature::unit(&sig.output), std::slice::from_ref(&sig)).unwrap();
        let right_inners: Vec<WSignature> = sig.inputs.iter().map(|c| WSignature::unit(c)).collect();
        let right = w_compose(&w, &sig, &right_inners).unwrap();
        for v in all_vertices(&space) {
            rep.record(left.apply_vertex(&v) == v && right.apply_vertex(&v) == v, || format!("unit at ({sig})"));
        }
        // equivariance
        if sig.inputs.len() <= max_perm && !sig.is_unit() {
            let c = t.edge(&sig.output).unwrap();
            let ins: Vec<usize> = sig.inputs.iter().map(|x| t.edge(x).unwrap()).collect();
            for (outer, inners) in two_stage(t, c, &ins) {
                let base = w_compose(&w, &outer, &inners).unwrap();
                for p in crate::omega::permutations(inners.len()) {
                    let po = outer.permuted(&p);
                    let pi: Vec<WSignature> = p.iter().map(|&i| inners[i].clone()).collect();
                    let m = w_compose(&w, &po, &pi).unwrap();
                    let ok = m.source == base.source
                        && all_vertices(&base.source).iter().all(|v| m.apply_vertex(v) == base.apply_vertex(v));
                    rep.record(ok, || format!("equivariance at ({outer}) permuted by {p:?}"));
                }
            }
        }
    }
    // associativity: three stages root -> cut1 -> cut2 -> leaves
    let root = t.root();
    for (a, bs) in two_stage(t, root, &leaves) {
        let cut1: Vec<usize> = a.inputs.iter().map(|x| t.edge(x).unwrap()).collect();
        // choose a two-stage split of each b
        let splits: Vec<Vec<(WSignature, Vec<WSignature>)>> = bs
            .iter()
            .zip(&cut1)
            .map(|(b, &m)| {
                let ins: Vec<usize> = b.inputs.iter().map(|x| t.edge(x).unwrap()).collect();
                two_stage(t, m, &ins)
            })
            .collect();
        let mut idx = vec![0usize; splits.len()];
        if splits.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let chosen: Vec<&(WSignature, Vec<WSignature>)> = idx.iter().zip(&splits).map(|(&i, s)| &s[i]).collect();
            let mids: Vec<WSignature> = chosen.iter().map(|(o, _)| o.clone()).collect();
            let tops: Vec<WSignature> = chosen.iter().flat_map(|(_, i)| i.clone()).collect();
            // (a ∘ mids) ∘ tops
            let am = w_compose(&w, &a, &mids).unwrap();
            let am_sig = composite_signature(&a, &mids);
            let left_outer = w_compose(&w, &am_sig, &tops).unwrap();
            // a ∘ (mids_i ∘ tops_i)
            let inner_maps: Vec<CubeMap> = chosen.iter().map(|(o, i)| w_compose(&w, o, i).unwrap()).collect();
            let inner_sigs: Vec<WSignature> = chosen.iter().map(|(o, i)| composite_signature(o, i)).collect();
            let right_outer = w_compose(&w, &a, &inner_sigs).unwrap();
            let full = union_cube(
                std::iter::once(&am.source).chain(inner_maps.iter().map(|m| &m.source)).collect::<Vec<_>>(),
            );
            let ok = all_vertices(&full).iter().all(|v| {
                let l = left_outer.apply_vertex(&apply_product(&[&am], v));
                let r = right_outer.apply_vertex(&apply_product(&inner_maps.iter().collect::<Vec<_>>(), v));
                l == r
            });
            rep.record(ok, || format!("associativity at ({a}) / {mids:?}"));
            let mut j = 0;
            while j < idx.len() {
                idx[j] += 1;
                if idx[j] < splits[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }
    rep
}

/// Unit, associativity and equivariance of the algebra St_{Ω[T]}(id).
pub fn verify_algebra_axioms(t: &Tree, max_perm: usize) -> AxiomReport {
    let alg = straighten_identity(t);
    let w = &alg.w;
    let mut rep = AxiomReport::default();
    for e in 0..t.num_edges() {
        let c = t.name(e);
        let unit = alg.structure_map(&WSignature::unit(c)).unwrap();
        let val = alg.value(c).unwrap();
        rep.record(
            unit.source == val && all_vertices(&val).iter().all(|v| &unit.apply_vertex(v) == v),
            || format!("unit at {c}"),
        );
    }
    for sig in w.signatures() {
        if sig.is_unit() {
            continue;
        }
        let c = t.edge(&sig.output).unwrap();
        let ins: Vec<usize> = sig.inputs.iter().map(|x| t.edge(x).unwrap()).collect();
        for (outer, inners) in two_stage(t, c, &ins) {
            // θ(a ∘ b; x) = θ(a; θ(b_1; x_1), ..)
            let comp = w_compose(w, &outer, &inners).unwrap();
            let comp_sig = composite_signature(&outer, &inners);
            let big = alg.structure_map(&comp_sig).unwrap();
            let outer_map = alg.structure_map(&outer).unwrap();
            let inner_maps: Vec<CubeMap> = inners.iter().map(|s| alg.structure_map(s).unwrap()).collect();
            let mut parts = vec![comp.source.clone()];
            parts.extend(comp_sig.inputs.iter().map(|x| alg.value(x).unwrap()));
            let full = union_cube(&parts);
            let ok = all_vertices(&full).iter().all(|v| {
                let l = big.apply_vertex(&apply_product(&[&comp], v));
                let r = outer_map.apply_vertex(&apply_product(&inner_maps.iter().collect::<Vec<_>>(), v));
                l == r
            });
            rep.record(ok, || format!("associativity at ({outer})"));
        }
        if sig.inputs.len() <= max_perm {
            let base = alg.structure_map(&sig).unwrap();
            for p in crate::omega::permutations(sig.inputs.len()) {
                let m = alg.structure_map(&sig.permuted(&p)).unwrap();
                let ok = m.source == base.source
                    && all_vertices(&base.source).iter().all(|v| m.apply_vertex(v) == base.apply_vertex(v));
                rep.record(ok, || format!("equivariance at ({sig}) by {p:?}"));
            }
        }
    }
    rep
}

/// For an elementary `f: R -> T`, the square relating the structure maps of
/// St(id_R) and St(id_T) through W(f) and straighten_face(f) commutes, at
/// every signature of R.
pub fn verify_naturality(f: &TreeMorphism) -> AxiomReport {
    let (r, t) = (&f.source, &f.target);
    let ar = straighten_identity(r);
    let at = straighten_identity(t);
    let mut rep = AxiomReport::default();
    for sig in ar.w.signatures() {
        let img = |x: &String| t.name(f.edge_map[r.edge(x).unwrap()]).to_string();
        let tsig = WSignature {
            inputs: sig.inputs.iter().map(img).collect(),
            output: img(&sig.output),
        };
        let Ok(Some(_)) = at.w.subtree(&tsig) else {
            // collapsed signatures (a degeneracy sending an operation to a
            // unit) are covered by the unit axiom
            continue;
        };
        let s_r = ar.structure_map(&sig).unwrap();
        let s_t = at.structure_map(&tsig).unwrap();
        let out = straighten_face(f, &sig.output).unwrap();
        let wf = w_map(f, &sig).unwrap();
        let ins: Vec<CubeMap> = sig.inputs.iter().map(|c| straighten_face(f, c).unwrap()).collect();
        let mut first: Vec<&CubeMap> = vec![&wf];
        first.extend(ins.iter());
        let ok = all_vertices(&s_r.source).iter().all(|v| {
            let l = out.apply_vertex(&s_r.apply_vertex(v));
            let r = s_t.apply_vertex(&apply_product(&first, v));
            l == r
        });
        rep.record(ok, || format!("naturality of {f} at ({sig})"));
    }
    rep
}

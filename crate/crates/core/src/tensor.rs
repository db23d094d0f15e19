//! The Boardman–Vogt tensor of a dendroidal set with a simplex, and
//! simplicial mapping spaces over a base.
//!
//! For a subpresheaf X of a representable Ω[T] (in particular Ω[T] itself),
//! X ⊗ Δ^n is computed by percolation: the tensor Ω[F] ⊗ Ω[L_n] of a face F
//! is the union of the representables Ω[R] over the shuffles R of F against
//! L_n, and X ⊗ Δ^n is the union of these over the generating faces of X.
//! Colours of a shuffle are pairs `(e, i)` of an edge of T and a vertex of
//! Δ^n, encoded as `e * (n + 1) + i`; the BV tensor operad has at most one
//! operation per signature here, so a dendrex is just its colour word.
//!
//! For X = i_!(K) the tensor is i_!(K × Δ^n), and tensors distribute over
//! coproducts. Other inputs are rejected as unsupported.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::dset::{
    coproduct, enumerate_maps, simplicial_embed_chains, Bound, DSet, DendrMap, Dendrex, DendroidalSet, Over,
    Skeleton,
};
use crate::error::{Error, Result};
use crate::omega::{self, TreeMorphism};
use crate::sset::{ChainSet, SimplicialSet};
use crate::trees::{Node, Tree, ENUMERATION_CAP};

/// Name of the shuffle edge for colour `(e, i)`.
fn colour_name(e: &str, i: usize) -> String {
    format!("{e}@{i}")
}

/// All shuffles of `t` against L_n, with edges named `edge@i`. Vertex `0` of
/// Δ^n corresponds to the leaves, vertex `n` to the root.
pub fn shuffles(t: &Tree, n: usize) -> Vec<Tree> {
    let mut memo: HashMap<(usize, usize), Vec<Node>> = HashMap::new();
    fn go(t: &Tree, e: usize, i: usize, memo: &mut HashMap<(usize, usize), Vec<Node>>) -> Vec<Node> {
        if let Some(v) = memo.get(&(e, i)) {
            return v.clone();
        }
        let name = colour_name(t.name(e), i);
        let mut out = Vec::new();
        if i > 0 {
            // a vertex of L_n first
            for below in go(t, e, i - 1, memo) {
                out.push(Node::vertex(name.clone(), vec![below]));
            }
        }
        match t.children(e) {
            None if i == 0 => out.push(Node::leaf(name.clone())),
            None => {}
            // nullary vertices percolate all the way to the leaf level
            Some([]) if i > 0 => {}
            Some(kids) => {
                let options: Vec<Vec<Node>> = kids.iter().map(|&k| go(t, k, i, memo)).collect();
                let mut idx = vec![0usize; kids.len()];
                'product: loop {
                    out.push(Node::vertex(
                        name.clone(),
                        idx.iter().zip(&options).map(|(&j, o)| o[j].clone()).collect(),
                    ));
                    for j in 0..idx.len() {
                        idx[j] += 1;
                        if idx[j] < options[j].len() {
                            continue 'product;
                        }
                        idx[j] = 0;
                    }
                    break;
                }
            }
        }
        memo.insert((e, i), out.clone());
        out
    }
    go(t, 0, n, &mut memo)
        .into_iter()
        .map(|node| Tree::from_node(&node).expect("colours are distinct along a shuffle"))
        .collect()
}

/// X ⊗ Δ^n for X generated by subfaces of Ω[T].
#[derive(Debug)]
pub struct ShuffleTensor {
    ambient: Arc<Tree>,
    faces: Vec<Tree>,
    n: usize,
    /// Shuffle trees with the colour code of each edge.
    shuffles: Vec<(Arc<Tree>, Vec<u32>)>,
    cache: Mutex<HashMap<String, Arc<(Vec<Dendrex>, HashSet<Dendrex>)>>>,
}

impl ShuffleTensor {
    pub fn new(ambient: Arc<Tree>, faces: Vec<Tree>, n: usize) -> ShuffleTensor {
        let mut all = Vec::new();
        let mut seen = HashSet::new();
        for f in &faces {
            for r in shuffles(f, n) {
                if !seen.insert(r.key()) {
                    continue;
                }
                let codes = r
                    .names()
                    .iter()
                    .map(|name| {
                        let (e, i) = name.rsplit_once('@').expect("shuffle edge name");
                        let e = ambient.edge(e).expect("face edges are ambient edges");
                        (e * (n + 1) + i.parse::<usize>().expect("level")) as u32
                    })
                    .collect();
                all.push((Arc::new(r), codes));
            }
        }
        ShuffleTensor {
            ambient,
            faces,
            n,
            shuffles: all,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn shuffle_trees(&self) -> Vec<Arc<Tree>> {
        self.shuffles.iter().map(|s| s.0.clone()).collect()
    }

    /// Largest number of vertices of a shuffle: no nondegenerate dendrex
    /// is bigger.
    pub fn max_vertices(&self) -> usize {
        self.shuffles.iter().map(|s| s.0.num_vertices()).max().unwrap_or(0)
    }

    fn table(&self, s: &Arc<Tree>) -> Arc<(Vec<Dendrex>, HashSet<Dendrex>)> {
        let key = format!("{s}|{}", s.names().join(","));
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return t.clone();
        }
        let mut found = BTreeSet::new();
        for (r, codes) in &self.shuffles {
            for m in omega::hom_edge_maps(s, r) {
                found.insert(Dendrex(m.into_iter().map(|e| codes[e]).collect()));
            }
        }
        let list: Vec<Dendrex> = found.into_iter().collect();
        let set = list.iter().cloned().collect();
        let t = Arc::new((list, set));
        self.cache.lock().unwrap().insert(key, t.clone());
        t
    }
}

impl DendroidalSet for ShuffleTensor {
    fn describe(&self) -> String {
        if self.faces.len() == 1 && self.faces[0] == *self.ambient {
            format!("tensor(rep({}), {})", self.ambient, self.n)
        } else {
            format!("tensor(sub({}), {})", self.ambient, self.n)
        }
    }

    fn dendrices(&self, s: &Arc<Tree>) -> Vec<Dendrex> {
        self.table(s).0.clone()
    }

    fn act(&self, x: &Dendrex, f: &TreeMorphism) -> Dendrex {
        Dendrex(f.edge_map.iter().map(|&e| x.0[e]).collect())
    }

    fn contains(&self, s: &Arc<Tree>, x: &Dendrex) -> bool {
        self.table(s).1.contains(x)
    }

    fn linear_only(&self) -> bool {
        self.faces.iter().all(Tree::is_linear)
    }
}

#[derive(Debug)]
enum Piece {
    Shuffle(Arc<ShuffleTensor>),
    Linear {
        base: ChainSet,
        /// Simplices of `base × Δ^n` by degree, as vertex sequences.
        levels: Vec<Vec<Vec<u32>>>,
        index: Vec<HashMap<Vec<u32>, u32>>,
    },
    Sum(Vec<TensorResult>),
}

/// X ⊗ Δ^n together with the data needed to make it functorial in Δ^n and
/// to project back to X.
#[derive(Debug)]
pub struct TensorResult {
    pub set: DSet,
    pub left: DSet,
    pub n: usize,
    piece: Piece,
}

fn chain_index(levels: &[Vec<Vec<u32>>]) -> Vec<HashMap<Vec<u32>, u32>> {
    levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
        .collect()
}

/// Largest shuffle (in vertices) the percolation enumeration will build.
/// Shuffles are generated directly rather than drawn from the tree
/// catalog, so this sits above the catalog's own cap.
pub const SHUFFLE_CAP: usize = 32;

/// Computes X ⊗ i_!(Δ^n).
pub fn tensor_with_simplex(x: &DSet, n: usize, bound: Bound) -> Result<TensorResult> {
    if n > ENUMERATION_CAP {
        return Err(Error::BoundOverflow(format!("simplex dimension {n} exceeds {ENUMERATION_CAP}")));
    }
    if let Some((t, faces)) = x.as_subrepresentable() {
        let st = Arc::new(ShuffleTensor::new(t, faces, n));
        if st.max_vertices() > SHUFFLE_CAP {
            return Err(Error::BoundOverflow(format!(
                "shuffles have {} vertices, cap is {SHUFFLE_CAP}",
                st.max_vertices()
            )));
        }
        return Ok(TensorResult {
            set: st.clone(),
            left: x.clone(),
            n,
            piece: Piece::Shuffle(st),
        });
    }
    if let Some(cs) = x.as_chain_set() {
        let prod = cs.product(&ChainSet::standard_simplex(n));
        let dim = prod.dimension().unwrap_or(0);
        if dim > ENUMERATION_CAP {
            return Err(Error::BoundOverflow(format!("product has dimension {dim}")));
        }
        let d = dim.max(bound.vertices).min(ENUMERATION_CAP);
        let levels = prod.simplices(d);
        let index = chain_index(&levels);
        return Ok(TensorResult {
            set: simplicial_embed_chains(&prod, d, format!("{} x simplex({n})", x.describe())),
            left: x.clone(),
            n,
            piece: Piece::Linear {
                base: cs.clone(),
                levels,
                index,
            },
        });
    }
    if let Some(parts) = x.as_coproduct() {
        let parts: Vec<TensorResult> = parts.iter().map(|p| tensor_with_simplex(p, n, bound)).collect::<Result<_>>()?;
        return Ok(TensorResult {
            set: coproduct(parts.iter().map(|p| p.set.clone()).collect()),
            left: x.clone(),
            n,
            piece: Piece::Sum(parts),
        });
    }
    Err(Error::Unsupported(format!("tensor of {} with a simplex", x.describe())))
}

impl TensorResult {
    /// No nondegenerate dendrex has more vertices than this.
    pub fn max_vertices(&self) -> usize {
        match &self.piece {
            Piece::Shuffle(st) => st.max_vertices(),
            Piece::Linear { levels, .. } => {
                // nondegenerate simplices are strict chains
                levels
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.iter().any(|s| s.windows(2).all(|w| w[0] != w[1])))
                    .map(|(d, _)| d)
                    .max()
                    .unwrap_or(0)
            }
            Piece::Sum(parts) => parts.iter().map(TensorResult::max_vertices).max().unwrap_or(0),
        }
    }

    /// The shuffles, for tensors of subrepresentables.
    pub fn shuffle_trees(&self) -> Option<Vec<Arc<Tree>>> {
        match &self.piece {
            Piece::Shuffle(st) => Some(st.shuffle_trees()),
            _ => None,
        }
    }

    /// The projection X ⊗ Δ^n → X induced by Δ^n → Δ^0.
    pub fn projection(&self) -> DendrMap {
        match &self.piece {
            Piece::Shuffle(_) => {
                let w = (self.n + 1) as u32;
                DendrMap::new(self.set.clone(), self.left.clone(), "proj", move |_, x| {
                    Dendrex(x.0.iter().map(|c| c / w).collect())
                })
            }
            Piece::Linear { base, levels, .. } => {
                let w = (self.n + 1) as u32;
                let levels = levels.clone();
                let base_index = chain_index(&base.simplices(levels.len() - 1));
                DendrMap::new(self.set.clone(), self.left.clone(), "proj", move |t, x| {
                    let d = t.num_vertices();
                    let seq: Vec<u32> = levels[d][x.0[0] as usize].iter().map(|v| v / w).collect();
                    Dendrex(vec![base_index[d][&seq]])
                })
            }
            Piece::Sum(parts) => {
                let maps: Vec<DendrMap> = parts.iter().map(TensorResult::projection).collect();
                DendrMap::new(self.set.clone(), self.left.clone(), "proj", move |t, x| {
                    let y = maps[x.0[0] as usize].apply(t, &Dendrex(x.0[1..].to_vec()));
                    let mut w = vec![x.0[0]];
                    w.extend(y.0);
                    Dendrex(w)
                })
            }
        }
    }

    /// For tensors of subpresheaves of a linear representable, the
    /// projection to Ω[L_n] (on the standard linear tree [`Tree::linear`]).
    /// Vertices of arity other than one have no image in Ω(L_n), so other
    /// trees have no such projection.
    pub fn simplex_projection(&self) -> Option<DendrMap> {
        match &self.piece {
            Piece::Shuffle(st) if st.linear_only() => {
                let ln = Tree::linear(self.n);
                let order = ln.linear_order().expect("linear");
                let w = (self.n + 1) as u32;
                Some(DendrMap::new(
                    self.set.clone(),
                    crate::dset::representable(&ln),
                    "proj_simplex",
                    move |_, x| Dendrex(x.0.iter().map(|c| order[(c % w) as usize] as u32).collect()),
                ))
            }
            _ => None,
        }
    }
}

/// The map X ⊗ Δ^m → X ⊗ Δ^n induced by a monotone `θ: [m] -> [n]`.
pub fn tensor_map(source: &TensorResult, target: &TensorResult, theta: &[usize]) -> Result<DendrMap> {
    if theta.len() != source.n + 1 || theta.iter().any(|&v| v > target.n) || theta.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotMonotone(format!("{theta:?} as a map [{}] -> [{}]", source.n, target.n)));
    }
    let theta = theta.to_vec();
    match (&source.piece, &target.piece) {
        (Piece::Shuffle(_), Piece::Shuffle(_)) => {
            let (wm, wn) = ((source.n + 1) as u32, (target.n + 1) as u32);
            Ok(DendrMap::new(source.set.clone(), target.set.clone(), "tensor_map", move |_, x| {
                Dendrex(x.0.iter().map(|c| (c / wm) * wn + theta[(c % wm) as usize] as u32).collect())
            }))
        }
        (Piece::Linear { levels: ls, .. }, Piece::Linear { index: it, .. }) => {
            let (wm, wn) = ((source.n + 1) as u32, (target.n + 1) as u32);
            let (ls, it) = (ls.clone(), it.clone());
            Ok(DendrMap::new(source.set.clone(), target.set.clone(), "tensor_map", move |t, x| {
                let d = t.num_vertices();
                let seq: Vec<u32> = ls[d][x.0[0] as usize]
                    .iter()
                    .map(|v| (v / wm) * wn + theta[(v % wm) as usize] as u32)
                    .collect();
                Dendrex(vec![it[d][&seq]])
            }))
        }
        (Piece::Sum(ps), Piece::Sum(qs)) if ps.len() == qs.len() => {
            let maps: Vec<DendrMap> = ps.iter().zip(qs).map(|(p, q)| tensor_map(p, q, &theta)).collect::<Result<_>>()?;
            Ok(DendrMap::new(source.set.clone(), target.set.clone(), "tensor_map", move |t, x| {
                let y = maps[x.0[0] as usize].apply(t, &Dendrex(x.0[1..].to_vec()));
                let mut w = vec![x.0[0]];
                w.extend(y.0);
                Dendrex(w)
            }))
        }
        _ => Err(Error::MismatchedAmbient("tensors of different dendroidal sets".into())),
    }
}

/// `Map_S(X, Y)`, whose n-simplices are the maps X ⊗ Δ^n → Y over S,
/// tabulated up to degree `d`. `x: X -> S` and `y: Y -> S` must share their
/// target.
pub fn mapping_space(x: &DendrMap, y: &DendrMap, d: usize, bound: Bound) -> Result<SimplicialSet> {
    if x.target.describe() != y.target.describe() {
        return Err(Error::MismatchedAmbient(format!(
            "{} and {} are over different bases",
            x.source.describe(),
            y.source.describe()
        )));
    }
    let tensors: Vec<TensorResult> = (0..=d).map(|n| tensor_with_simplex(&x.source, n, bound)).collect::<Result<_>>()?;
    let mut skeletons = Vec::with_capacity(d + 1);
    for t in &tensors {
        let need = t.max_vertices();
        if need > bound.vertices {
            return Err(Error::BoundOverflow(format!(
                "{} has nondegenerate dendrices with {need} vertices; bound is {}",
                t.set.describe(),
                bound.vertices
            )));
        }
        skeletons.push(Skeleton::new(t.set.as_ref(), Bound::new(need, bound.arity))?);
    }
    let mut levels = Vec::with_capacity(d + 1);
    for (t, sk) in tensors.iter().zip(&skeletons) {
        let p = x.after(&t.projection());
        let over = Over { p: &p, q: y };
        levels.push(enumerate_maps(t.set.as_ref(), sk, y.source.as_ref(), Some(&over))?);
    }
    // maps induced by cofaces and codegeneracies
    let mut cofaces: Vec<Vec<DendrMap>> = vec![Vec::new()];
    for n in 1..=d {
        let row = (0..=n)
            .map(|i| {
                let theta: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
                tensor_map(&tensors[n - 1], &tensors[n], &theta)
            })
            .collect::<Result<_>>()?;
        cofaces.push(row);
    }
    let mut codegens: Vec<Vec<DendrMap>> = Vec::new();
    for n in 0..d {
        let row = (0..=n)
            .map(|i| {
                let theta: Vec<usize> = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
                tensor_map(&tensors[n + 1], &tensors[n], &theta)
            })
            .collect::<Result<_>>()?;
        codegens.push(row);
    }
    let pull = |from: usize, to: usize, along: &DendrMap, images: &Vec<Dendrex>| -> Vec<Dendrex> {
        let table: HashMap<(usize, usize), Dendrex> =
            skeletons[from].generator_ids().into_iter().zip(images.iter().cloned()).collect();
        let sk_to = &skeletons[to];
        sk_to
            .generator_ids()
            .into_iter()
            .map(|(si, k)| {
                let sh = &sk_to.shapes[si];
                let z = along.apply(&sh.tree, &sh.generators[k]);
                skeletons[from]
                    .evaluate(tensors[from].set.as_ref(), y.source.as_ref(), &table, &sh.tree, &z)
                    .expect("within skeleton")
            })
            .collect()
    };
    Ok(SimplicialSet::tabulate(
        levels,
        |n, f, i| pull(n, n - 1, &cofaces[n][i], f),
        |n, f, i| pull(n, n + 1, &codegens[n][i], f),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dset::{census, eta, representable, restrict, simplicial_embed_chains, terminal};
    use crate::sset::simplicial_mapping_space;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(&Tree::eta("e"), 3).len(), 1);
        // L_1 against L_1: the two maximal chains of the square
        assert_eq!(shuffles(&Tree::linear(1), 1).len(), 2);
        // C_2 against L_1
        assert_eq!(shuffles(&Tree::corolla(2), 1).len(), 2);
        assert_eq!(shuffles(&t("r()"), 2).len(), 1);
        assert_eq!(shuffles(&Tree::linear(2), 2).len(), 6);
    }

    #[test]
    fn linear_tensor_matches_product() {
        let b = Bound::new(3, 3);
        let x = representable(&Tree::linear(1));
        let tx = tensor_with_simplex(&x, 1, b).unwrap();
        let r = restrict(tx.set.as_ref(), 3);
        assert_eq!(r.census(), vec![4, 5, 2, 0]);
        let y = simplicial_embed_chains(&ChainSet::standard_simplex(1), 3, "simplex(1)");
        let ty = tensor_with_simplex(&y, 1, b).unwrap();
        assert_eq!(census(tx.set.as_ref(), b).unwrap(), census(ty.set.as_ref(), b).unwrap());
        let unit = tensor_with_simplex(&representable(&Tree::corolla(2)), 0, b).unwrap();
        assert_eq!(
            census(unit.set.as_ref(), b).unwrap(),
            census(representable(&Tree::corolla(2)).as_ref(), b).unwrap()
        );
    }

    #[test]
    fn tensor_maps_are_natural() {
        let b = Bound::new(3, 3);
        let x = representable(&Tree::corolla(2));
        let a1 = tensor_with_simplex(&x, 1, b).unwrap();
        let a0 = tensor_with_simplex(&x, 0, b).unwrap();
        for theta in [[0usize], [1]] {
            let f = tensor_map(&a0, &a1, &theta).unwrap();
            assert!(f.check_natural(b).unwrap().is_none());
        }
        assert!(a1.projection().check_natural(b).unwrap().is_none());
        assert!(a1.simplex_projection().is_none());
        let l1 = tensor_with_simplex(&representable(&Tree::linear(1)), 1, b).unwrap();
        assert!(l1.simplex_projection().unwrap().check_natural(b).unwrap().is_none());
    }

    #[test]
    fn mapping_space_over_eta() {
        let b = Bound::new(4, 3);
        let x = representable(&Tree::linear(1));
        let y = simplicial_embed_chains(&ChainSet::standard_simplex(1), 4, "simplex(1)");
        let m = mapping_space(&DendrMap::to_eta(&x), &DendrMap::to_eta(&y), 2, b).unwrap();
        let s = simplicial_mapping_space(&ChainSet::standard_simplex(1), &ChainSet::standard_simplex(1), 2);
        assert_eq!(m.counts(), s.counts());
        assert_eq!(m.census(), s.census());
        // Map(η, Y) = i*Y
        let m = mapping_space(&DendrMap::to_eta(&eta()), &DendrMap::to_eta(&y), 2, b).unwrap();
        assert_eq!(m.census(), restrict(y.as_ref(), 2).census());
        // maps into the terminal object form a point
        let c2 = representable(&Tree::corolla(2));
        let m = mapping_space(&DendrMap::to_terminal(&c2), &DendrMap::identity(&terminal()), 1, b).unwrap();
        assert_eq!(m.counts(), &[1, 1]);
    }
}

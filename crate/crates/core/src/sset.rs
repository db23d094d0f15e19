//! Finite simplicial sets.
//!
//! Two presentations are used:
//!
//! * [`ChainSet`]: a finite-dimensional simplicial subset of the nerve of a
//!   finite poset, given by its nondegenerate simplices (strict chains).
//!   Standard simplices, horns, boundaries, products and cubes live here.
//! * [`SimplicialSet`]: a general simplicial set tabulated up to a degree
//!   bound, with explicit face and degeneracy tables. Restrictions of
//!   dendroidal sets, fibers and mapping spaces are tabulated this way.
//!
//! All homotopical questions are asked below an explicit degree bound.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::util::UnionFind;

/// A simplicial subset of the nerve of a finite poset. Simplices are weakly
/// increasing vertex sequences whose underlying set is an allowed chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSet {
    leq: Vec<Vec<bool>>,
    chains: BTreeSet<Vec<u32>>,
}

impl ChainSet {
    /// Builds from a poset relation and a set of nondegenerate chains; the
    /// chain set is closed under faces here.
    pub fn new(leq: Vec<Vec<bool>>, generators: impl IntoIterator<Item = Vec<u32>>) -> ChainSet {
        let mut chains = BTreeSet::new();
        for g in generators {
            let k = g.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<u32> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
                chains.insert(sub);
            }
        }
        ChainSet { leq, chains }
    }

    pub fn num_vertices(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        self.leq[a as usize][b as usize]
    }

    pub fn dimension(&self) -> Option<usize> {
        self.chains.iter().map(|c| c.len() - 1).max()
    }

    /// Nondegenerate simplices of degree `n`.
    pub fn nondegenerate(&self, n: usize) -> Vec<Vec<u32>> {
        self.chains.iter().filter(|c| c.len() == n + 1).cloned().collect()
    }

    pub fn chains(&self) -> &BTreeSet<Vec<u32>> {
        &self.chains
    }

    /// Is the weakly increasing sequence a simplex?
    pub fn contains(&self, seq: &[u32]) -> bool {
        if seq.windows(2).any(|w| !self.leq(w[0], w[1])) {
            return false;
        }
        let mut set: Vec<u32> = seq.to_vec();
        set.dedup();
        self.chains.contains(&set)
    }

    /// Counts of nondegenerate simplices in degrees `0..=dim`.
    pub fn census(&self) -> Vec<usize> {
        let d = self.dimension().map_or(0, |d| d + 1);
        (0..d).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// The n-simplex Δ^n.
    pub fn standard_simplex(n: usize) -> ChainSet {
        let leq = (0..=n).map(|a| (0..=n).map(|b| a <= b).collect()).collect();
        ChainSet::new(leq, [(0..=n as u32).collect()])
    }

    /// The boundary ∂Δ^n.
    pub fn boundary(n: usize) -> ChainSet {
        let leq = (0..=n).map(|a| (0..=n).map(|b| a <= b).collect()).collect();
        let faces = (0..=n as u32).map(|skip| (0..=n as u32).filter(|&v| v != skip).collect::<Vec<_>>());
        ChainSet::new(leq, faces.filter(|f: &Vec<u32>| !f.is_empty()))
    }

    /// The horn Λ^n_k: all faces of Δ^n except the one opposite `k`.
    pub fn horn(n: usize, k: usize) -> Result<ChainSet> {
        if k > n || n == 0 {
            return Err(Error::OutOfRange(format!("horn({n}, {k})")));
        }
        let leq = (0..=n).map(|a| (0..=n).map(|b| a <= b).collect()).collect();
        let faces = (0..=n as u32)
            .filter(|&skip| skip as usize != k)
            .map(|skip| (0..=n as u32).filter(|&v| v != skip).collect::<Vec<_>>());
        Ok(ChainSet::new(leq, faces))
    }

    pub fn point() -> ChainSet {
        ChainSet::standard_simplex(0)
    }

    /// Disjoint union.
    pub fn coproduct(&self, other: &ChainSet) -> ChainSet {
        let (n, m) = (self.num_vertices(), other.num_vertices());
        let leq = (0..n + m)
            .map(|a| {
                (0..n + m)
                    .map(|b| match (a < n, b < n) {
                        (true, true) => self.leq[a][b],
                        (false, false) => other.leq[a - n][b - n],
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        let chains = self
            .chains
            .iter()
            .cloned()
            .chain(other.chains.iter().map(|c| c.iter().map(|&v| v + n as u32).collect()));
        ChainSet::new(leq, chains)
    }

    /// The product, as a simplicial subset of the nerve of the product poset.
    /// Vertex `(a, b)` is numbered `a * |other| + b`.
    pub fn product(&self, other: &ChainSet) -> ChainSet {
        let (n, m) = (self.num_vertices(), other.num_vertices());
        let leq = (0..n * m)
            .map(|p| {
                (0..n * m)
                    .map(|q| self.leq[p / m][q / m] && other.leq[p % m][q % m])
                    .collect()
            })
            .collect();
        // maximal chains come from pairs of chains via shuffles of their steps
        let mut gens = Vec::new();
        for x in &self.chains {
            for y in &other.chains {
                for path in lattice_paths(x.len() - 1, y.len() - 1) {
                    gens.push(
                        path.iter()
                            .map(|&(i, j)| x[i] * m as u32 + y[j])
                            .collect::<Vec<u32>>(),
                    );
                }
            }
        }
        ChainSet::new(leq, gens)
    }

    /// All simplices (degenerate ones included) in degrees `0..=d`, as
    /// sorted lists of vertex sequences. Indices in a tabulation refer to
    /// these lists.
    pub fn simplices(&self, d: usize) -> Vec<Vec<Vec<u32>>> {
        let mut levels: Vec<Vec<Vec<u32>>> = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut level = Vec::new();
            for c in &self.chains {
                let k = c.len() - 1;
                if k > n {
                    continue;
                }
                for parts in compositions(n + 1, k + 1) {
                    let mut seq = Vec::with_capacity(n + 1);
                    for (v, &p) in c.iter().zip(&parts) {
                        seq.extend(std::iter::repeat(*v).take(p));
                    }
                    level.push(seq);
                }
            }
            level.sort();
            levels.push(level);
        }
        levels
    }

    /// Tabulates all simplices up to degree `d`.
    pub fn tabulate(&self, d: usize) -> SimplicialSet {
        let levels = self.simplices(d);
        SimplicialSet::tabulate(
            levels,
            |_, s: &Vec<u32>, i| {
                let mut t = s.clone();
                t.remove(i);
                t
            },
            |_, s: &Vec<u32>, i| {
                let mut t = s.clone();
                t.insert(i, s[i]);
                t
            },
        )
    }
}

/// Monotone lattice paths from (0,0) to (p,q) with unit steps.
fn lattice_paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    fn rec(i: usize, j: usize, p: usize, q: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        cur.push((i, j));
        if i == p && j == q {
            out.push(cur.clone());
        }
        if i < p {
            rec(i + 1, j, p, q, cur, out);
        }
        if j < q {
            rec(i, j + 1, p, q, cur, out);
        }
        cur.pop();
    }
    rec(0, 0, p, q, &mut Vec::new(), &mut out);
    out
}

/// Ordered compositions of `total` into `parts` positive parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A simplicial set tabulated in degrees `0..=degree`: every simplex,
/// degenerate or not, is an index; faces and degeneracies are lookup tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    counts: Vec<usize>,
    /// `faces[n][i][x]` is `d_i x` for `x` of degree `n >= 1`.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[n][i][x]` is `s_i x` for `x` of degree `n < degree`.
    degens: Vec<Vec<Vec<u32>>>,
}

impl SimplicialSet {
    /// Tabulates a simplicial object given by its simplices per degree and
    /// face/degeneracy functions on them. Simplices produced by the
    /// functions must occur in `levels`.
    pub fn tabulate<K: Clone + Eq + Hash>(
        levels: Vec<Vec<K>>,
        face: impl Fn(usize, &K, usize) -> K,
        degen: impl Fn(usize, &K, usize) -> K,
    ) -> SimplicialSet {
        let d = levels.len() - 1;
        let index: Vec<HashMap<&K, u32>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, k)| (k, i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=d {
            faces.push(
                (0..=n)
                    .map(|i| {
                        levels[n]
                            .iter()
                            .map(|x| *index[n - 1].get(&face(n, x, i)).expect("face of a tabulated simplex is tabulated"))
                            .collect()
                    })
                    .collect(),
            );
        }
        let mut degens = Vec::new();
        for n in 0..d {
            degens.push(
                (0..=n)
                    .map(|i| {
                        levels[n]
                            .iter()
                            .map(|x| {
                                *index[n + 1]
                                    .get(&degen(n, x, i))
                                    .expect("degeneracy of a tabulated simplex is tabulated")
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        SimplicialSet {
            counts: levels.iter().map(Vec::len).collect(),
            faces,
            degens,
        }
    }

    pub fn degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn face(&self, n: usize, i: usize, x: u32) -> u32 {
        self.faces[n][i][x as usize]
    }

    pub fn degen(&self, n: usize, i: usize, x: u32) -> u32 {
        self.degens[n][i][x as usize]
    }

    /// Keeps degrees `0..=d`.
    pub fn truncate(&self, d: usize) -> SimplicialSet {
        let d = d.min(self.degree());
        SimplicialSet {
            counts: self.counts[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degens: self.degens[..d].to_vec(),
        }
    }

    pub fn is_degenerate(&self, n: usize, x: u32) -> bool {
        n > 0 && (0..n).any(|i| self.degen(n - 1, i, self.face(n, i, x)) == x)
    }

    /// Nondegenerate counts per degree.
    pub fn census(&self) -> Vec<usize> {
        (0..=self.degree())
            .map(|n| (0..self.count(n) as u32).filter(|&x| !self.is_degenerate(n, x)).count())
            .collect()
    }

    /// Vertices of a simplex, in order.
    pub fn vertices_of(&self, n: usize, x: u32) -> Vec<u32> {
        (0..=n).map(|i| self.apply(n, x, &[i])).collect()
    }

    /// Applies the simplicial operator of a monotone map `θ: [m] -> [n]`
    /// (given by its values) to `x` of degree `n`.
    pub fn apply(&self, n: usize, x: u32, theta: &[usize]) -> u32 {
        debug_assert!(theta.windows(2).all(|w| w[0] <= w[1]));
        let image: BTreeSet<usize> = theta.iter().copied().collect();
        let mut y = x;
        let mut deg = n;
        for i in (0..=n).rev() {
            if !image.contains(&i) {
                y = self.face(deg, i, y);
                deg -= 1;
            }
        }
        // y has degree image.len() - 1; now repeat vertices
        for j in 0..theta.len().saturating_sub(1) {
            if theta[j] == theta[j + 1] {
                y = self.degen(deg, j, y);
                deg += 1;
            }
        }
        y
    }

    /// Connected components of the vertex set under 1-simplices.
    pub fn pi0(&self) -> Vec<Vec<u32>> {
        let mut uf = UnionFind::new(self.count(0));
        if self.degree() >= 1 {
            for x in 0..self.count(1) as u32 {
                uf.union(self.face(1, 0, x) as usize, self.face(1, 1, x) as usize);
            }
        }
        uf.classes().into_iter().map(|c| c.into_iter().map(|v| v as u32).collect()).collect()
    }

    /// Compatible tuples for the horn Λ^n_k: entries indexed by `i != k`.
    pub fn horn_maps(&self, n: usize, k: usize) -> Vec<Vec<Option<u32>>> {
        let mut out = Vec::new();
        let mut cur: Vec<Option<u32>> = vec![None; n + 1];
        self.horn_rec(n, k, 0, &mut cur, &mut out, &|_, _| true);
        out
    }

    fn horn_rec(
        &self,
        n: usize,
        k: usize,
        i: usize,
        cur: &mut Vec<Option<u32>>,
        out: &mut Vec<Vec<Option<u32>>>,
        allow: &dyn Fn(usize, u32) -> bool,
    ) {
        if i > n {
            out.push(cur.clone());
            return;
        }
        if i == k {
            return self.horn_rec(n, k, i + 1, cur, out, allow);
        }
        for y in 0..self.count(n - 1) as u32 {
            if !allow(i, y) {
                continue;
            }
            // d_a y_b = d_{b-1} y_a for a < b
            let ok = (0..i).filter(|&a| a != k).all(|a| {
                let ya = cur[a].unwrap();
                n < 2 || self.face(n - 1, a, y) == self.face(n - 1, i - 1, ya)
            });
            if ok {
                cur[i] = Some(y);
                self.horn_rec(n, k, i + 1, cur, out, allow);
                cur[i] = None;
            }
        }
    }

    /// Finds a filler for a horn: `x` with `d_i x = y_i`.
    pub fn fill(&self, n: usize, horn: &[Option<u32>]) -> Option<u32> {
        (0..self.count(n) as u32)
            .find(|&x| horn.iter().enumerate().all(|(i, y)| y.map_or(true, |y| self.face(n, i, x) == y)))
    }

    /// Checks the extension property for the given horns in degrees
    /// `1..=d`.
    pub fn kan_check(&self, d: usize, family: HornFamily) -> KanReport {
        SimplicialMap::to_point(self).horn_lifting(d, family)
    }
}

/// Which horn inclusions Λ^n_k ⊂ Δ^n a check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HornFamily {
    /// All `0 <= k <= n`.
    All,
    /// `0 < k < n`.
    Inner,
    /// `0 <= k < n`.
    Left,
}

impl HornFamily {
    pub fn contains(self, n: usize, k: usize) -> bool {
        match self {
            HornFamily::All => k <= n,
            HornFamily::Inner => 0 < k && k < n,
            HornFamily::Left => k < n,
        }
    }
}

/// A horn with no filler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornInstance {
    pub n: usize,
    pub k: usize,
    /// Face simplices, `None` at position `k`.
    pub faces: Vec<Option<u32>>,
    /// The simplex of the base the horn lies over.
    pub base: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanReport {
    pub degree_bound: usize,
    pub failure: Option<HornInstance>,
    pub problems_checked: usize,
}

impl KanReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// A simplicial map between tabulated simplicial sets.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    /// `table[n][x]` is the image of the `n`-simplex `x`.
    pub table: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn to_point(x: &SimplicialSet) -> SimplicialMap {
        let point = ChainSet::point().tabulate(x.degree());
        SimplicialMap {
            table: (0..=x.degree()).map(|n| vec![0; x.count(n)]).collect(),
            source: x.clone(),
            target: point,
        }
    }

    pub fn identity(x: &SimplicialSet) -> SimplicialMap {
        SimplicialMap {
            table: (0..=x.degree()).map(|n| (0..x.count(n) as u32).collect()).collect(),
            source: x.clone(),
            target: x.clone(),
        }
    }

    pub fn is_simplicial(&self) -> bool {
        let d = self.source.degree().min(self.target.degree());
        (1..=d).all(|n| {
            (0..self.source.count(n) as u32).all(|x| {
                (0..=n).all(|i| {
                    self.table[n - 1][self.source.face(n, i, x) as usize]
                        == self.target.face(n, i, self.table[n][x as usize])
                })
            })
        })
    }

    /// Checks lifting against the horns of `family` in degrees `1..=d`.
    pub fn horn_lifting(&self, d: usize, family: HornFamily) -> KanReport {
        let (src, tgt) = (&self.source, &self.target);
        let d = d.min(src.degree()).min(tgt.degree());
        let mut checked = 0;
        for n in 1..=d {
            for k in 0..=n {
                if !family.contains(n, k) {
                    continue;
                }
                for base in 0..tgt.count(n) as u32 {
                    let base_faces: Vec<u32> = (0..=n).map(|i| tgt.face(n, i, base)).collect();
                    let allow = |i: usize, y: u32| self.table[n - 1][y as usize] == base_faces[i];
                    let mut horns = Vec::new();
                    let mut cur = vec![None; n + 1];
                    src.horn_rec(n, k, 0, &mut cur, &mut horns, &allow);
                    for h in horns {
                        checked += 1;
                        let lift = (0..src.count(n) as u32).find(|&x| {
                            self.table[n][x as usize] == base
                                && h.iter().enumerate().all(|(i, y)| y.map_or(true, |y| src.face(n, i, x) == y))
                        });
                        if lift.is_none() {
                            return KanReport {
                                degree_bound: d,
                                failure: Some(HornInstance { n, k, faces: h, base }),
                                problems_checked: checked,
                            };
                        }
                    }
                }
            }
        }
        KanReport {
            degree_bound: d,
            failure: None,
            problems_checked: checked,
        }
    }
}

/// Simplicial maps between chain sets are determined by monotone vertex
/// maps; this lists all of them.
pub fn chain_maps(source: &ChainSet, target: &ChainSet) -> Vec<Vec<u32>> {
    let n = source.num_vertices();
    let chains: Vec<&Vec<u32>> = source.chains().iter().filter(|c| c.len() > 1).collect();
    let mut out = Vec::new();
    let mut cur = vec![u32::MAX; n];
    fn rec(
        v: usize,
        source: &ChainSet,
        target: &ChainSet,
        chains: &[&Vec<u32>],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if v == source.num_vertices() {
            out.push(cur.clone());
            return;
        }
        for w in 0..target.num_vertices() as u32 {
            cur[v] = w;
            let ok = chains.iter().all(|c| {
                if c.iter().any(|&x| x as usize > v) {
                    return true;
                }
                let img: Vec<u32> = c.iter().map(|&x| cur[x as usize]).collect();
                target.contains(&img)
            });
            if ok {
                rec(v + 1, source, target, chains, cur, out);
            }
        }
        cur[v] = u32::MAX;
    }
    rec(0, source, target, &chains, &mut cur, &mut out);
    out
}

/// The simplicial mapping space Map(K, L), with `Map_n = sSet(K × Δ^n, L)`,
/// tabulated up to degree `d`. Both arguments are chain sets, so maps are
/// vertex maps.
pub fn simplicial_mapping_space(k: &ChainSet, l: &ChainSet, d: usize) -> SimplicialSet {
    let levels: Vec<Vec<Vec<u32>>> = (0..=d)
        .map(|n| chain_maps(&k.product(&ChainSet::standard_simplex(n)), l))
        .collect();
    // vertex (v, i) of K × Δ^n is numbered v * (n + 1) + i
    let kv = k.num_vertices();
    SimplicialSet::tabulate(
        levels,
        |n, f, i| {
            let mut g = Vec::with_capacity(kv * n);
            for v in 0..kv {
                for j in 0..n {
                    let src = if j < i { j } else { j + 1 };
                    g.push(f[v * (n + 1) + src]);
                }
            }
            g
        },
        |n, f, i| {
            let mut g = Vec::with_capacity(kv * (n + 2));
            for v in 0..kv {
                for j in 0..n + 2 {
                    let src = if j <= i { j } else { j - 1 };
                    g.push(f[v * (n + 1) + src]);
                }
            }
            g
        },
    )
}

/// The fiber of `p` over a vertex of its target: simplices sent to the
/// totally degenerate simplex on that vertex.
pub fn fiber(p: &SimplicialMap, vertex: u32) -> SimplicialSet {
    let d = p.source.degree().min(p.target.degree());
    let levels: Vec<Vec<(usize, u32)>> = (0..=d)
        .map(|n| {
            let over = p.target.apply(0, vertex, &vec![0; n + 1]);
            (0..p.source.count(n) as u32)
                .filter(|&x| p.table[n][x as usize] == over)
                .map(|x| (n, x))
                .collect()
        })
        .collect();
    SimplicialSet::tabulate(
        levels,
        |n, &(_, x), i| (n - 1, p.source.face(n, i, x)),
        |n, &(_, x), i| (n + 1, p.source.degen(n, i, x)),
    )
}

/// The product of two tabulated simplicial sets, degreewise.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let d = x.degree().min(y.degree());
    let levels: Vec<Vec<(u32, u32)>> = (0..=d)
        .map(|n| {
            (0..x.count(n) as u32)
                .flat_map(|a| (0..y.count(n) as u32).map(move |b| (a, b)))
                .collect()
        })
        .collect();
    SimplicialSet::tabulate(
        levels,
        |n, &(a, b), i| (x.face(n, i, a), y.face(n, i, b)),
        |n, &(a, b), i| (x.degen(n, i, a), y.degen(n, i, b)),
    )
}

/// The cube (Δ^1)^axes. Vertices are subsets of the axes (bitmasks over the
/// sorted axis list); nondegenerate simplices are strict chains of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeComplex {
    axes: Vec<String>,
}

impl CubeComplex {
    pub fn new<I, S>(axes: I) -> CubeComplex
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut axes: Vec<String> = axes.into_iter().map(Into::into).collect();
        axes.sort();
        axes.dedup();
        CubeComplex { axes }
    }

    pub fn axes(&self) -> &[String] {
        &self.axes
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn num_vertices(&self) -> usize {
        1 << self.axes.len()
    }

    pub fn axis(&self, name: &str) -> Option<usize> {
        self.axes.binary_search_by(|a| a.as_str().cmp(name)).ok()
    }

    /// Vertex with the named axes at 1.
    pub fn vertex(&self, ones: &BTreeSet<String>) -> u64 {
        ones.iter().filter_map(|a| self.axis(a)).fold(0, |m, i| m | (1 << i))
    }

    /// Names of the axes at 1.
    pub fn ones(&self, v: u64) -> BTreeSet<String> {
        (0..self.axes.len()).filter(|i| v & (1 << i) != 0).map(|i| self.axes[i].clone()).collect()
    }

    pub fn chain_set(&self) -> ChainSet {
        let n = self.num_vertices();
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        let k = self.axes.len();
        let gens = crate::omega::permutations(k).into_iter().map(|perm| {
            let mut v = 0u32;
            let mut chain = vec![0u32];
            for i in perm {
                v |= 1 << i;
                chain.push(v);
            }
            chain
        });
        ChainSet::new(leq, gens)
    }

    /// Nondegenerate simplex counts, by enumerating strict chains directly.
    pub fn census(&self) -> Vec<usize> {
        self.chain_set().census()
    }
}

/// A map of cubes induced by a monotone map of vertex posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeMap {
    pub source: CubeComplex,
    pub target: CubeComplex,
    /// `rule[v]` is the image of source vertex `v`.
    pub rule: Vec<u64>,
}

impl CubeMap {
    pub fn new(source: CubeComplex, target: CubeComplex, rule: Vec<u64>) -> Result<CubeMap> {
        if rule.len() != source.num_vertices() {
            return Err(Error::OutOfRange(format!("vertex rule has {} entries", rule.len())));
        }
        for a in 0..rule.len() {
            for i in 0..source.dimension() {
                let b = a | (1 << i);
                if rule[a] & !rule[b] != 0 {
                    return Err(Error::NotMonotone(format!(
                        "{:?} <= {:?} but images are not ordered",
                        source.ones(a as u64),
                        source.ones(b as u64)
                    )));
                }
            }
        }
        Ok(CubeMap { source, target, rule })
    }

    /// Builds a map from a rule on named vertices.
    pub fn from_fn(
        source: CubeComplex,
        target: CubeComplex,
        f: impl Fn(&BTreeSet<String>) -> BTreeSet<String>,
    ) -> Result<CubeMap> {
        let rule = (0..source.num_vertices() as u64).map(|v| target.vertex(&f(&source.ones(v)))).collect();
        CubeMap::new(source, target, rule)
    }

    pub fn identity(c: &CubeComplex) -> CubeMap {
        CubeMap {
            source: c.clone(),
            target: c.clone(),
            rule: (0..c.num_vertices() as u64).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CubeMap) -> Result<CubeMap> {
        if first.target != self.source {
            return Err(Error::BoundaryMismatch(format!(
                "cube axes {:?} vs {:?}",
                first.target.axes, self.source.axes
            )));
        }
        Ok(CubeMap {
            source: first.source.clone(),
            target: self.target.clone(),
            rule: first.rule.iter().map(|&v| self.rule[v as usize]).collect(),
        })
    }

    pub fn apply_vertex(&self, ones: &BTreeSet<String>) -> BTreeSet<String> {
        self.target.ones(self.rule[self.source.vertex(ones) as usize])
    }

    /// Image of a chain of vertices.
    pub fn apply_chain(&self, chain: &[u32]) -> Vec<u64> {
        chain.iter().map(|&v| self.rule[v as usize]).collect()
    }

    /// Are nondegenerate simplices sent injectively to nondegenerate
    /// simplices? Simplices are vertex chains, so this holds exactly when
    /// the vertex rule is injective (two vertices with one image already
    /// collide as 0-simplices); no chains need to be listed.
    pub fn is_injective_on_nondegenerate(&self) -> bool {
        let mut seen = HashSet::new();
        self.rule.iter().all(|&v| seen.insert(v))
    }

    pub fn is_surjective_on_vertices(&self) -> bool {
        let hit: HashSet<u64> = self.rule.iter().copied().collect();
        hit.len() == self.target.num_vertices()
    }
}

//! Finite coloured symmetric operads in sets.
//!
//! Three families are built in: the commutative (terminal) operad, the
//! associative operad, and the free operad Ω(T) generated by a tree. An
//! operation is encoded as a small word whose meaning depends on the operad:
//! empty for `comm` and `free(T)` (their operation sets have at most one
//! element per signature), and a linear order of the inputs for `assoc`.

use std::fmt;
use std::sync::Arc;

use crate::trees::Tree;

/// Colours are indices into [`FiniteOperad::colours`].
pub type Colour = u32;

/// An operation of a fixed signature.
pub type Operation = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Comm,
    Assoc,
    Free(Arc<Tree>),
}

/// A finite coloured symmetric operad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOperad {
    kind: Kind,
}

/// A signature `(c_1, .., c_n; c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub inputs: Vec<Colour>,
    pub output: Colour,
}

pub fn comm() -> FiniteOperad {
    FiniteOperad { kind: Kind::Comm }
}

pub fn assoc() -> FiniteOperad {
    FiniteOperad { kind: Kind::Assoc }
}

/// The free operad Ω(T): coloured by the edges of `t`, with one operation
/// `(c_1..c_n; c)` for each subtree with leaves `{c_1..c_n}` and root `c`,
/// plus units.
pub fn free_tree_operad(t: &Tree) -> FiniteOperad {
    FiniteOperad {
        kind: Kind::Free(Arc::new(t.clone())),
    }
}

impl fmt::Display for FiniteOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Comm => write!(f, "comm"),
            Kind::Assoc => write!(f, "assoc"),
            Kind::Free(t) => write!(f, "free({t})"),
        }
    }
}

impl FiniteOperad {
    pub fn colours(&self) -> Vec<String> {
        match &self.kind {
            Kind::Comm | Kind::Assoc => vec!["*".to_string()],
            Kind::Free(t) => t.names().to_vec(),
        }
    }

    pub fn num_colours(&self) -> usize {
        match &self.kind {
            Kind::Comm | Kind::Assoc => 1,
            Kind::Free(t) => t.num_edges(),
        }
    }

    /// The tree of a free operad.
    pub fn tree(&self) -> Option<&Arc<Tree>> {
        match &self.kind {
            Kind::Free(t) => Some(t),
            _ => None,
        }
    }

    /// Every operation of the signature.
    pub fn operations(&self, inputs: &[Colour], output: Colour) -> Vec<Operation> {
        match &self.kind {
            Kind::Comm => vec![vec![]],
            Kind::Assoc => crate::omega::permutations(inputs.len())
                .into_iter()
                .map(|p| p.into_iter().map(|i| i as u32).collect())
                .collect(),
            Kind::Free(t) => {
                let ins: Vec<usize> = inputs.iter().map(|&c| c as usize).collect();
                let unit = ins == [output as usize];
                let distinct = {
                    let mut s = ins.clone();
                    s.sort_unstable();
                    s.windows(2).all(|w| w[0] != w[1])
                };
                if unit || (distinct && t.is_cut(output as usize, &ins) && !ins.contains(&(output as usize))) {
                    vec![vec![]]
                } else {
                    vec![]
                }
            }
        }
    }

    /// Input colour tuples `(c_1..c_n)` with a nonempty operation set of
    /// output `c`.
    pub fn input_profiles(&self, output: Colour, arity: usize) -> Vec<Vec<Colour>> {
        match &self.kind {
            Kind::Comm | Kind::Assoc => vec![vec![0; arity]],
            Kind::Free(t) => {
                let c = output as usize;
                let mut out = Vec::new();
                if arity == 1 {
                    out.push(vec![output]);
                }
                for cut in t.cuts_above(c) {
                    if cut.len() != arity || cut == [c] {
                        continue;
                    }
                    for p in crate::omega::permutations(arity) {
                        out.push(p.iter().map(|&i| cut[i] as u32).collect());
                    }
                }
                out
            }
        }
    }

    /// Length of the encoding of an operation of the given arity.
    pub fn operation_len(&self, arity: usize) -> usize {
        match &self.kind {
            Kind::Assoc => arity,
            _ => 0,
        }
    }

    pub fn unit(&self, _c: Colour) -> Operation {
        match &self.kind {
            Kind::Assoc => vec![0],
            _ => vec![],
        }
    }

    /// Composes `outer` (of arity `inners.len()`) with the `inners`, whose
    /// arities are given alongside.
    pub fn compose(&self, outer: &Operation, inners: &[(usize, Operation)]) -> Operation {
        match &self.kind {
            Kind::Assoc => {
                let mut offsets = Vec::with_capacity(inners.len());
                let mut acc = 0u32;
                for (k, _) in inners {
                    offsets.push(acc);
                    acc += *k as u32;
                }
                outer
                    .iter()
                    .flat_map(|&j| {
                        let off = offsets[j as usize];
                        inners[j as usize].1.iter().map(move |&x| x + off)
                    })
                    .collect()
            }
            _ => vec![],
        }
    }

    /// The right action `σ*`: input `i` of the result is input `σ(i)` of
    /// `op`.
    pub fn permute(&self, op: &Operation, sigma: &[usize]) -> Operation {
        match &self.kind {
            Kind::Assoc => {
                let mut inv = vec![0u32; sigma.len()];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s] = i as u32;
                }
                op.iter().map(|&x| inv[x as usize]).collect()
            }
            _ => op.clone(),
        }
    }
}

/// An operad map Ω(T) → P: a colour per edge of `T` and an operation per
/// vertex (in the order of [`Tree::vertices`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperadMap {
    pub colours: Vec<Colour>,
    pub operations: Vec<Operation>,
}

/// Every operad map Ω(T) → P, in a deterministic order. Colours are chosen
/// top-down from the root, then operations per vertex.
pub fn enumerate_operad_maps(t: &Tree, p: &FiniteOperad) -> Vec<OperadMap> {
    let vertices = t.vertices();
    let mut out = Vec::new();
    let mut colours = vec![u32::MAX; t.num_edges()];
    fn assign(
        t: &Tree,
        p: &FiniteOperad,
        vertices: &[usize],
        vi: usize,
        colours: &mut Vec<Colour>,
        out: &mut Vec<Vec<Colour>>,
    ) {
        if vi == vertices.len() {
            out.push(colours.clone());
            return;
        }
        let v = vertices[vi];
        let kids = t.children(v).unwrap_or(&[]);
        for prof in p.input_profiles(colours[v], kids.len()) {
            for (&k, &c) in kids.iter().zip(&prof) {
                colours[k] = c;
            }
            assign(t, p, vertices, vi + 1, colours, out);
        }
        for &k in kids {
            colours[k] = u32::MAX;
        }
    }
    let mut colourings = Vec::new();
    for root in 0..p.num_colours() as u32 {
        colours[0] = root;
        // vertices() lists vertices in preorder, so parents precede children
        assign(t, p, &vertices, 0, &mut colours, &mut colourings);
    }
    for col in colourings {
        let choices: Vec<Vec<Operation>> = vertices
            .iter()
            .map(|&v| {
                let ins: Vec<Colour> = t.children(v).unwrap_or(&[]).iter().map(|&k| col[k]).collect();
                p.operations(&ins, col[v])
            })
            .collect();
        let mut idx = vec![0usize; choices.len()];
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            out.push(OperadMap {
                colours: col.clone(),
                operations: idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
            });
            let mut j = 0;
            loop {
                if j == idx.len() {
                    break;
                }
                idx[j] += 1;
                if idx[j] < choices[j].len() {
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
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn free_operations() {
        let c2 = t("r(a,b)");
        let p = free_tree_operad(&c2);
        let (r, a, b) = (0, 1, 2);
        assert_eq!(p.operations(&[a, b], r).len(), 1);
        assert_eq!(p.operations(&[b, a], r).len(), 1);
        assert_eq!(p.operations(&[a, a], r).len(), 0);
        assert_eq!(p.operations(&[a], r).len(), 0);
        for c in 0..3 {
            assert_eq!(p.operations(&[c], c), vec![p.unit(c)]);
        }
    }

    #[test]
    fn assoc_counts() {
        let p = assoc();
        assert_eq!(p.operations(&[0, 0, 0], 0).len(), 6);
        assert_eq!(p.operations(&[], 0).len(), 1);
        assert_eq!(p.operations(&[0], 0).len(), 1);
        for n in 0..4 {
            assert_eq!(enumerate_operad_maps(&Tree::corolla(n), &p).len(), (1..=n).product::<usize>());
        }
        assert_eq!(enumerate_operad_maps(&Tree::corolla(3), &comm()).len(), 1);
        assert_eq!(enumerate_operad_maps(&t("x"), &free_tree_operad(&t("r(a,b)"))).len(), 3);
    }

    #[test]
    fn assoc_axioms() {
        let p = assoc();
        let ops2 = p.operations(&[0, 0], 0);
        let ops1 = p.operations(&[0], 0);
        let ops0 = p.operations(&[], 0);
        for a in &ops2 {
            // unit
            let u = p.unit(0);
            assert_eq!(&p.compose(a, &[(1, u.clone()), (1, u.clone())]), a);
            assert_eq!(&p.compose(&u, &[(2, a.clone())]), a);
            for b in &ops2 {
                for c in &ops2 {
                    // associativity: (a ∘ (b, 1)) ∘ (c, 1, 1) = a ∘ (b ∘ (c, 1), 1)
                    let ab = p.compose(a, &[(2, b.clone()), (1, u.clone())]);
                    let left = p.compose(&ab, &[(2, c.clone()), (1, u.clone()), (1, u.clone())]);
                    let bc = p.compose(b, &[(2, c.clone()), (1, u.clone())]);
                    let right = p.compose(a, &[(3, bc), (1, u.clone())]);
                    assert_eq!(left, right);
                }
                // equivariance: (a·σ) ∘ (b, 1) = (a ∘ (1, b))·σ'
                let sw = p.permute(a, &[1, 0]);
                let left = p.compose(&sw, &[(2, b.clone()), (1, u.clone())]);
                let right = p.permute(&p.compose(a, &[(1, u.clone()), (2, b.clone())]), &[1, 2, 0]);
                assert_eq!(left, right);
            }
        }
        assert_eq!(p.compose(&ops1[0], &[(0, ops0[0].clone())]), ops0[0]);
    }
}

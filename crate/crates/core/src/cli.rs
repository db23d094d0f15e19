//! The `dendro` command-line front end.
//!
//! Every subcommand prints one JSON document on standard output (keys are
//! sorted, so identical invocations give byte-identical output); `--pretty`
//! renders the same document as indented `key: value` text instead. Exit
//! codes: 0 success / check passed, 1 check failed (witness printed), 2
//! usage, parse or bound error.

use std::fmt;
use std::sync::Arc;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dset::{self, census, Bound, DSet, DendrMap};
use crate::error::{Error, Result};
use crate::fibcheck::{self, CheckReport};
use crate::omega;
use crate::operads;
use crate::sset::ChainSet;
use crate::tensor;
use crate::trees::{self, Parser, Tree};
use crate::wstraight::{self, WSignature};

/// Operad names accepted by `nerve(..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpName {
    Comm,
    Assoc,
    Free(Tree),
}

/// Simplicial-set expressions accepted by `i!(..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Simplex(usize),
    Horn(usize, usize),
    Boundary(usize),
}

/// A dendroidal-set expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rep(Tree),
    Eta,
    Boundary(Tree),
    InnerHorn(Tree, String),
    OuterHorn(Tree, String),
    Nerve(OpName),
    Shriek(SExpr),
    Coprod(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, usize),
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpName::Comm => write!(f, "comm"),
            OpName::Assoc => write!(f, "assoc"),
            OpName::Free(t) => write!(f, "free({t})"),
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Simplex(n) => write!(f, "simplex({n})"),
            SExpr::Horn(n, k) => write!(f, "shorn({n},{k})"),
            SExpr::Boundary(n) => write!(f, "sboundary({n})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rep(t) => write!(f, "rep({t})"),
            Expr::Eta => write!(f, "eta"),
            Expr::Boundary(t) => write!(f, "boundary({t})"),
            Expr::InnerHorn(t, e) => write!(f, "ihorn({t},{e})"),
            Expr::OuterHorn(t, v) => write!(f, "ohorn({t},{v})"),
            Expr::Nerve(p) => write!(f, "nerve({p})"),
            Expr::Shriek(s) => write!(f, "i!({s})"),
            Expr::Coprod(a, b) => write!(f, "coprod({a},{b})"),
            Expr::Tensor(x, n) => write!(f, "tensor({x},{n})"),
        }
    }
}

fn tree_in(p: &mut Parser<'_>) -> Result<Tree> {
    Tree::from_node(&p.node()?)
}

fn opname(p: &mut Parser<'_>) -> Result<OpName> {
    if p.keyword("free(") {
        let t = tree_in(p)?;
        p.expect(b')')?;
        return Ok(OpName::Free(t));
    }
    match p.name()?.as_str() {
        "comm" => Ok(OpName::Comm),
        "assoc" => Ok(OpName::Assoc),
        other => p.err(format!("unknown operad `{other}`")),
    }
}

fn sexpr(p: &mut Parser<'_>) -> Result<SExpr> {
    let s = if p.keyword("simplex(") {
        SExpr::Simplex(p.number()?)
    } else if p.keyword("shorn(") {
        let n = p.number()?;
        p.expect(b',')?;
        SExpr::Horn(n, p.number()?)
    } else if p.keyword("sboundary(") {
        SExpr::Boundary(p.number()?)
    } else {
        return p.err("expected simplex(..), shorn(..) or sboundary(..)");
    };
    p.expect(b')')?;
    Ok(s)
}

fn expr(p: &mut Parser<'_>) -> Result<Expr> {
    let e = if p.keyword("rep(") {
        Expr::Rep(tree_in(p)?)
    } else if p.keyword("boundary(") {
        Expr::Boundary(tree_in(p)?)
    } else if p.keyword("ihorn(") {
        let t = tree_in(p)?;
        p.expect(b',')?;
        Expr::InnerHorn(t, p.name()?)
    } else if p.keyword("ohorn(") {
        let t = tree_in(p)?;
        p.expect(b',')?;
        Expr::OuterHorn(t, p.name()?)
    } else if p.keyword("nerve(") {
        Expr::Nerve(opname(p)?)
    } else if p.keyword("i!(") {
        Expr::Shriek(sexpr(p)?)
    } else if p.keyword("coprod(") {
        let a = expr(p)?;
        p.expect(b',')?;
        Expr::Coprod(Box::new(a), Box::new(expr(p)?))
    } else if p.keyword("tensor(") {
        let a = expr(p)?;
        p.expect(b',')?;
        Expr::Tensor(Box::new(a), p.number()?)
    } else if p.keyword("eta") {
        return Ok(Expr::Eta);
    } else {
        return p.err("expected a dendroidal-set expression");
    };
    p.expect(b')')?;
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser::new(s);
        let e = expr(&mut p)?;
        p.finish()?;
        Ok(e)
    }
}

impl SExpr {
    pub fn chain_set(&self) -> Result<ChainSet> {
        match *self {
            SExpr::Simplex(n) => Ok(ChainSet::standard_simplex(n)),
            SExpr::Horn(n, k) => ChainSet::horn(n, k),
            SExpr::Boundary(n) => Ok(ChainSet::boundary(n)),
        }
    }
}

impl Expr {
    /// Builds the dendroidal set; `degree` is the simplicial degree up to
    /// which `i!(..)` is tabulated (at least the dimension of its argument).
    pub fn eval(&self, bound: Bound, degree: usize) -> Result<DSet> {
        Ok(match self {
            Expr::Rep(t) => dset::representable(t),
            Expr::Eta => dset::eta(),
            Expr::Boundary(t) => dset::boundary(t),
            Expr::InnerHorn(t, e) => dset::inner_horn(t, e)?,
            Expr::OuterHorn(t, v) => dset::outer_horn(t, v)?,
            Expr::Nerve(OpName::Comm) => dset::terminal(),
            Expr::Nerve(OpName::Assoc) => dset::nerve(&operads::assoc()),
            Expr::Nerve(OpName::Free(t)) => dset::nerve(&operads::free_tree_operad(t)),
            Expr::Shriek(s) => {
                let cs = s.chain_set()?;
                let d = degree.max(cs.dimension().unwrap_or(0)).max(bound.vertices);
                dset::simplicial_embed_chains(&cs, d, self.to_string())
            }
            Expr::Coprod(a, b) => dset::coproduct(vec![a.eval(bound, degree)?, b.eval(bound, degree)?]),
            Expr::Tensor(x, n) => tensor::tensor_with_simplex(&x.eval(bound, degree)?, *n, bound)?.set,
        })
    }
}

/// The structure map `X -> S` used by `--over`: the unique map to
/// `nerve(comm)`, the unique map to `eta` (linear X only), or the identity
/// when S is X itself.
pub fn structure_map(x_expr: &Expr, x: &DSet, s_expr: &Expr) -> Result<DendrMap> {
    match s_expr {
        Expr::Nerve(OpName::Comm) => Ok(DendrMap::to_terminal(x)),
        Expr::Eta if x.linear_only() => Ok(DendrMap::to_eta(x)),
        Expr::Eta => Err(Error::Unsupported(format!("{x_expr} has no map to eta"))),
        s if s == x_expr => Ok(DendrMap::identity(x)),
        s => Err(Error::Unsupported(format!("no canonical map from {x_expr} to {s}"))),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    InnerFibration,
    LeftFibration,
    InftyOperad,
    DendroidalKan,
    TrivialFibration,
    NormalMono,
}

#[derive(Debug, ClapParser)]
#[command(name = "dendro", version, about = "Finite computations with dendroidal sets")]
pub struct Cli {
    /// Render output as indented text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Largest number of vertices of trees considered.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_vertices: usize,
    /// Largest vertex arity of trees considered.
    #[arg(long, global = true, default_value_t = trees::DEFAULT_ARITY_CAP)]
    pub max_arity: usize,
    /// Simplicial degree for tabulations and mapping spaces.
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tree enumeration.
    Trees {
        #[command(subcommand)]
        action: TreesCommand,
    },
    /// All morphisms S -> T in Ω.
    Hom { source: String, target: String },
    /// The faces of a tree.
    Faces { tree: String },
    /// Nondegenerate dendrices per tree shape.
    Census { expr: String },
    /// A horn of a tree and its census.
    Horn {
        tree: String,
        #[arg(long, conflicts_with = "outer", required_unless_present = "outer")]
        inner: Option<String>,
        #[arg(long)]
        outer: Option<String>,
    },
    /// The tensor product with a simplex.
    Tensor {
        expr: String,
        #[arg(long)]
        simplex: usize,
    },
    /// The mapping space Map_S(X, Y).
    Mapspace {
        source: String,
        target: String,
        #[arg(long, default_value = "nerve(comm)")]
        over: String,
    },
    /// Bounded lifting-property checks.
    Check {
        expr: String,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long)]
        over: Option<String>,
        /// Vertex bound (defaults to --max-vertices).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Operation spaces of W(Ω(T)).
    W {
        tree: String,
        /// A signature `c1,c2;c`.
        #[arg(long)]
        sig: Option<String>,
    },
    /// Values and structure maps of the straightening of id: Ω[T] -> Ω[T].
    Straighten {
        tree: String,
        #[arg(long = "color")]
        color: Option<String>,
    },
    /// The generating left anodyne maps within a bound.
    Anodynes {
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreesCommand {
    /// One tree per isomorphism class within the bounds.
    List,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, doc)) => Outcome {
            code,
            stdout: render(&doc, cli.pretty),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Serializes a document: JSON, or indented text with `pretty`.
pub fn render(doc: &Value, pretty: bool) -> String {
    if !pretty {
        return serde_json::to_string_pretty(doc).expect("json values serialize") + "\n";
    }
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            Value::Array(a) if a.is_empty() => Some("(none)".into()),
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                Some(a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", "))
            }
            _ => None,
        }
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            Value::Array(a) => {
                for x in a {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    go(doc, 0, &mut out);
    out
}

fn parse_tree(s: &str) -> Result<Arc<Tree>> {
    Ok(Arc::new(Tree::parse(s)?))
}

fn census_json(x: &dyn dset::DendroidalSet, bound: Bound) -> Result<Value> {
    let c = census(x, bound)?;
    let shapes: Vec<Value> = c
        .entries
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|(t, n)| json!({"shape": t.label(), "tree": t.to_string(), "count": n}))
        .collect();
    Ok(json!({"shapes": shapes, "by_vertices": c.by_vertices(), "total": c.total()}))
}

fn report_json(r: &CheckReport, expr: &str) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["expr"] = json!(expr);
    v
}

fn execute(cli: &Cli) -> Result<(i32, Value)> {
    let bound = Bound::new(cli.max_vertices, cli.max_arity);
    let degree = cli.degree;
    let doc = match &cli.command {
        Command::Trees { action: TreesCommand::List } => {
            let ts = trees::enumerate_trees(cli.max_vertices, cli.max_arity)?;
            let list: Vec<Value> = ts
                .iter()
                .map(|t| {
                    json!({
                        "tree": t.to_string(),
                        "label": t.label(),
                        "vertices": t.num_vertices(),
                        "automorphisms": trees::automorphism_count(t),
                    })
                })
                .collect();
            json!({"max_vertices": cli.max_vertices, "max_arity": cli.max_arity, "count": ts.len(), "trees": list})
        }
        Command::Hom { source, target } => {
            let (s, t) = (parse_tree(source)?, parse_tree(target)?);
            let ms: Vec<Value> = omega::enumerate_hom(&s, &t)
                .iter()
                .map(|f| {
                    let em: serde_json::Map<String, Value> = (0..s.num_edges())
                        .map(|i| (s.name(i).to_string(), json!(f.image_name(i))))
                        .collect();
                    json!({"edge_map": em, "class": format!("{:?}", f.classify())})
                })
                .collect();
            json!({"source": s.to_string(), "target": t.to_string(), "count": ms.len(), "morphisms": ms})
        }
        Command::Faces { tree } => {
            let t = parse_tree(tree)?;
            let fs: Vec<Value> = omega::faces(&t)
                .iter()
                .map(|f| json!({"kind": f.kind.to_string(), "face": f.map.source.to_string()}))
                .collect();
            json!({"tree": t.to_string(), "count": fs.len(), "faces": fs})
        }
        Command::Census { expr } => {
            let e: Expr = expr.parse()?;
            let x = e.eval(bound, degree)?;
            json!({"expr": e.to_string(), "max_vertices": bound.vertices, "max_arity": bound.arity,
                   "census": census_json(x.as_ref(), bound)?})
        }
        Command::Horn { tree, inner, outer } => {
            let t = parse_tree(tree)?;
            let e = match (inner, outer) {
                (Some(e), _) => Expr::InnerHorn((*t).clone(), e.clone()),
                (None, Some(v)) => Expr::OuterHorn((*t).clone(), v.clone()),
                (None, None) => return Err(Error::Syntax { pos: 0, msg: "--inner or --outer required".into() }),
            };
            let x = e.eval(bound, degree)?;
            let (_, faces) = x.as_subrepresentable().expect("horns are subrepresentable");
            let b = Bound::new(bound.vertices.max(t.num_vertices()), bound.arity);
            json!({"horn": e.to_string(), "faces": faces.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                   "census": census_json(x.as_ref(), b)?})
        }
        Command::Tensor { expr, simplex } => {
            let e: Expr = expr.parse()?;
            let x = e.eval(bound, degree)?;
            let r = tensor::tensor_with_simplex(&x, *simplex, bound)?;
            let b = Bound::new(r.max_vertices().max(bound.vertices), bound.arity);
            let shuffles = r.shuffle_trees().map(|ts| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>());
            json!({"expr": Expr::Tensor(Box::new(e), *simplex).to_string(), "max_vertices": r.max_vertices(),
                   "shuffles": shuffles, "census": census_json(r.set.as_ref(), b)?})
        }
        Command::Mapspace { source, target, over } => {
            let (xe, ye, se): (Expr, Expr, Expr) = (source.parse()?, target.parse()?, over.parse()?);
            let (x, y) = (xe.eval(bound, degree)?, ye.eval(bound, degree)?);
            let (px, py) = (structure_map(&xe, &x, &se)?, structure_map(&ye, &y, &se)?);
            let m = tensor::mapping_space(&px, &py, degree, bound)?;
            json!({"source": xe.to_string(), "target": ye.to_string(), "over": se.to_string(), "degree": degree,
                   "simplices": m.counts(), "nondegenerate": m.census(), "components": m.pi0().len()})
        }
        Command::Check { expr, property, over, bound: nb } => {
            let b = Bound::new(nb.unwrap_or(cli.max_vertices), cli.max_arity);
            let e: Expr = expr.parse()?;
            let x = e.eval(b, degree)?;
            let p = match over {
                Some(s) => structure_map(&e, &x, &s.parse()?)?,
                None => DendrMap::to_terminal(&x),
            };
            let report = match property {
                Property::InnerFibration => fibcheck::is_inner_fibration(&p, b)?,
                Property::LeftFibration => fibcheck::is_left_fibration(&p, b)?,
                Property::InftyOperad => fibcheck::is_infty_operad(&x, b)?,
                Property::DendroidalKan => fibcheck::is_dendroidal_kan(&x, b)?,
                Property::TrivialFibration => fibcheck::is_trivial_fibration(&p, b)?,
                Property::NormalMono => {
                    let w = dset::is_normal_mono(&DendrMap::from_empty(&x), b)?;
                    let doc = json!({
                        "expr": e.to_string(), "property": "normal-mono", "passed": w.is_none(),
                        "max_vertices": b.vertices, "max_arity": b.arity,
                        "failure": w.map(|w| json!({"tree": w.tree.to_string(), "dendrex": w.dendrex.to_string(),
                                                    "automorphism": w.automorphism.to_string()})),
                    });
                    let code = if doc["passed"] == json!(true) { 0 } else { 1 };
                    return Ok((code, doc));
                }
            };
            return Ok((if report.passed { 0 } else { 1 }, report_json(&report, &e.to_string())));
        }
        Command::W { tree, sig } => {
            let t = parse_tree(tree)?;
            let w = wstraight::w_construction(&t);
            match sig {
                Some(s) => {
                    let s: WSignature = s.parse()?;
                    let sp = w.space(&s)?;
                    json!({"tree": t.to_string(), "signature": s.to_string(), "inhabited": sp.is_some(),
                           "axes": sp.as_ref().map(|c| c.axes().to_vec()),
                           "dimension": sp.as_ref().map(|c| c.dimension())})
                }
                None => {
                    let sigs: Vec<Value> = w
                        .signatures()
                        .iter()
                        .map(|s| {
                            let c = w.space(s).expect("known edges").expect("inhabited");
                            json!({"signature": s.to_string(), "axes": c.axes(), "dimension": c.dimension()})
                        })
                        .collect();
                    json!({"tree": t.to_string(), "signatures": sigs})
                }
            }
        }
        Command::Straighten { tree, color } => {
            let t = parse_tree(tree)?;
            let alg = wstraight::straighten_identity(&t);
            let colours: Vec<String> = match color {
                Some(c) => {
                    t.edge(c)?;
                    vec![c.clone()]
                }
                None => t.names().to_vec(),
            };
            let values: Vec<Value> = colours
                .iter()
                .map(|c| {
                    let v = alg.value(c).expect("known colour");
                    json!({"colour": c, "axes": v.axes(), "dimension": v.dimension()})
                })
                .collect();
            let maps: Vec<Value> = alg
                .w
                .signatures()
                .iter()
                .filter(|s| colours.contains(&s.output) && !s.is_unit())
                .map(|s| {
                    let m = alg.structure_map(s).expect("inhabited");
                    let fixed: Vec<&String> = m.target.axes().iter().filter(|a| m.source.axis(a).is_none()).collect();
                    json!({"signature": s.to_string(), "source_axes": m.source.axes(), "set_to_one": fixed})
                })
                .collect();
            json!({"tree": t.to_string(), "values": values, "structure_maps": maps})
        }
        Command::Anodynes { bound: nb } => {
            let b = Bound::new(nb.unwrap_or(cli.max_vertices), cli.max_arity);
            let list = fibcheck::generating_left_anodynes(b)?;
            let items: Vec<Value> = list
                .iter()
                .map(|a| json!({"kind": a.left.clause, "left": a.left.to_string(), "tree": a.left.tree.to_string(),
                                "description": a.description}))
                .collect();
            json!({"max_vertices": b.vertices, "max_arity": b.arity, "count": items.len(), "anodynes": items})
        }
    };
    Ok((0, doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Value {
        let mut argv = vec!["dendro"];
        argv.extend_from_slice(args);
        let out = run(argv);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn expression_round_trip() {
        for s in [
            "rep(r(a,b))",
            "eta",
            "boundary(r(b(a)))",
            "ihorn(r(b(a)),b)",
            "ohorn(r(b(a),c),b)",
            "nerve(comm)",
            "nerve(free(r(a,b)))",
            "i!(shorn(2,1))",
            "coprod(nerve(comm),i!(simplex(1)))",
            "tensor(rep(r(a)),2)",
        ] {
            let e: Expr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_string().parse::<Expr>().unwrap(), e);
        }
        assert!("rep(r(a,a))".parse::<Expr>().is_err());
        assert!(matches!("blah".parse::<Expr>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn census_of_corolla() {
        let v = run_ok(&["census", "rep(r(a,b))"]);
        let shapes = v["census"]["shapes"].as_array().unwrap();
        let get = |l: &str| shapes.iter().find(|s| s["shape"] == l).map(|s| s["count"].as_u64().unwrap());
        assert_eq!(get("eta"), Some(3));
        assert_eq!(get("C_2"), Some(2));
        assert_eq!(shapes.len(), 2);
    }

    #[test]
    fn straighten_and_w() {
        let v = run_ok(&["straighten", "r(b(a))", "--color", "r"]);
        assert_eq!(v["values"][0]["axes"], json!(["a", "b"]));
        let v = run_ok(&["w", "r(b(a))", "--sig", "a;r"]);
        assert_eq!(v["axes"], json!(["b"]));
        let v = run_ok(&["w", "r(b(a))", "--sig", "r;a"]);
        assert_eq!(v["inhabited"], json!(false));
    }

    #[test]
    fn exit_codes() {
        let ok = run(["dendro", "check", "nerve(comm)", "--property", "dendroidal-kan", "--bound", "3"]);
        assert_eq!(ok.code, 0, "{}", ok.stderr);
        let fail = run(["dendro", "check", "i!(simplex(0))", "--property", "left-fibration", "--bound", "2"]);
        assert_eq!(fail.code, 1);
        assert!(fail.stdout.contains("corolla"));
        assert_eq!(run(["dendro", "census", "rep(("]).code, 2);
        assert_eq!(run(["dendro", "frobnicate"]).code, 2);
        let a = run(["dendro", "faces", "r(b(a),c)"]);
        let b = run(["dendro", "faces", "r(b(a),c)"]);
        assert_eq!(a, b);
        let p = run(["dendro", "--pretty", "faces", "r(b(a),c)"]);
        assert!(p.stdout.contains("kind: inner(b)"));
    }
}

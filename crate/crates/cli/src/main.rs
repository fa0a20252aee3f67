//! `latkit`: build, inspect and check finite lattices from the shell.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage, input or
//! library errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use latkit::congruence::{congruence_lattice_capped, is_simple, DEFAULT_CON_CAP};
use latkit::constructions;
use latkit::diagram::{build_a_diagram, conc_diagram, find_natural_equivalence, Lifting};
use latkit::dimension::{gdim_signature, Dimension};
use latkit::format::{
    format_partial_function, parse_diagram, parse_lattice, parse_pair_map, parse_partial_function, to_dot,
    write_blocks, write_diagram, write_lattice,
};
use latkit::geometry::{matricial_ideal_lattice, subspace_lattice, FiniteField, MatricialSignature};
use latkit::support::{
    build_norm_covering, extreme_ideals, extreme_ideals_by_definition, free_set_search, kernel_closure, PairMap,
    PartialFunctionPoset,
};
use latkit::variety::{find_embedding_with, in_variety_capped, satisfies_whitman, EmbeddingFlags, DEFAULT_HS_CAP};
use latkit::{verify, FiniteLattice, LatticeError};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "latkit", version, about = "Finite lattice toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Search cap: |K| for variety membership, |Con L| for congruence lattices.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Order in which searches try candidates; only `lex` is available.
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Lex)]
    seed_order: SeedOrder,
    /// Output format for lattices and congruence lattices.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedOrder {
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a lattice and print it.
    #[command(subcommand)]
    Build(Build),
    /// Summarize a lattice file (stdin when omitted or `-`).
    Info { file: Option<PathBuf> },
    /// List the congruences of a lattice.
    Con { file: Option<PathBuf> },
    /// Projectivity classes, a dimension vector, and the GDim signature.
    Dim {
        file: Option<PathBuf>,
        /// Interval `[a, b]`; defaults to `[0, 1]`.
        #[arg(num_args = 2)]
        interval: Option<Vec<usize>>,
    },
    /// Find an embedding of A into B.
    Embed {
        a: PathBuf,
        b: PathBuf,
        /// Require the embedding to keep 0 and 1.
        #[arg(long)]
        bounds: bool,
    },
    /// Decide whether A lies in the variety generated by K.
    Variety {
        a: PathBuf,
        #[arg(long = "gen")]
        generator: PathBuf,
    },
    /// Indexed diagrams of lattices.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Partial-function posets, kernels and free sets.
    #[command(subcommand)]
    Support(SupportCmd),
    /// Run the acceptance checks and print a pass/fail table.
    Verify {
        /// Run only these checks (repeatable).
        #[arg(long = "check", alias = "lemma")]
        checks: Vec<String>,
        /// List check ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Build {
    /// M_n: n atoms between 0 and 1.
    Mn {
        n: usize,
    },
    /// Two diamonds M_n, M_m glued along a prime interval.
    Mnm {
        n: usize,
        m: usize,
    },
    /// M_n below M_m, sharing one element.
    Stacked {
        n: usize,
        m: usize,
    },
    /// A chain with k elements.
    Chain {
        k: usize,
    },
    /// The Boolean lattice 2^k.
    Boolean {
        k: usize,
    },
    N5,
    /// The eleven-element modular lattice with Con L = 2^2 and length 4.
    FigCel,
    /// Sub(F_q^n), with subspace dimensions.
    Sub {
        q: usize,
        n: usize,
    },
    /// Ideal lattice of a product of matrix algebras over F_q.
    Matricial {
        q: usize,
        #[arg(required = true)]
        blocks: Vec<usize>,
    },
    /// Direct product of two lattice files.
    Product {
        a: PathBuf,
        b: PathBuf,
    },
    /// A new bottom and top around a lattice file.
    Bounded {
        file: Option<PathBuf>,
    },
    /// Order dual of a lattice file.
    Dual {
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// The diagram A of M_n over I_n.
    An { n: usize },
    /// Validate a diagram file and test it as a lifting of Con A.
    Check { file: PathBuf },
    /// Extract the copy of M_n from a lifting of Con A.
    Extract { file: PathBuf },
}

#[derive(Subcommand)]
enum SupportCmd {
    /// Kernel generated by partial functions such as `1,_,0`.
    Kernel {
        n: usize,
        kappa: usize,
        #[arg(required = true)]
        seeds: Vec<String>,
    },
    /// Norm-covering of I_n by partial functions n -> κ.
    Normcover { n: usize, kappa: usize },
    /// First free m-subset of κ for a pair map given as `b c : items` lines.
    Freeset {
        kappa: usize,
        m: usize,
        /// Pair map table; pairs not listed map to the empty set.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

enum Fail {
    /// A check ran and failed.
    Check(String),
    /// Usage, input or library error.
    Error(String),
}

impl From<LatticeError> for Fail {
    fn from(e: LatticeError) -> Self {
        Fail::Error(e.to_string())
    }
}

type Out = Result<String, Fail>;

fn read_input(path: Option<&PathBuf>) -> Result<String, Fail> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Fail::Error(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Error(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<FiniteLattice, Fail> {
    Ok(parse_lattice(&read_input(path)?)?.lattice)
}

fn emit(g: &Global, l: &FiniteLattice, name: &str, dims: Option<&[usize]>) -> String {
    match g.format {
        Format::Text => write_lattice(l, Some(name), dims),
        Format::Dot => to_dot(l.poset(), name),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn build(g: &Global, b: &Build) -> Out {
    use constructions::*;
    let (l, name, dims) = match b {
        Build::Mn { n } => (m_n(*n)?, format!("M{n}"), None),
        Build::Mnm { n, m } => (m_nm(*n, *m)?, format!("M{n},{m}"), None),
        Build::Stacked { n, m } => (stacked_diamonds(*n, *m)?, format!("M{n}/M{m}"), None),
        Build::Chain { k } => (chain(*k)?, format!("chain{k}"), None),
        Build::Boolean { k } => (boolean(*k)?, format!("2^{k}"), None),
        Build::N5 => (n5(), "N5".into(), None),
        Build::FigCel => (fig_cel(), "fig_cel".into(), None),
        Build::Sub { q, n } => {
            let s = subspace_lattice(&FiniteField::new(*q)?, *n)?;
            (s.lattice, format!("Sub(F{q}^{n})"), Some(s.dims))
        }
        Build::Matricial { q, blocks } => {
            let sig = MatricialSignature::new(FiniteField::new(*q)?, blocks.clone())?;
            let b: Vec<String> = blocks.iter().map(usize::to_string).collect();
            (matricial_ideal_lattice(&sig)?, format!("matricial F{q} {}", b.join(" ")), None)
        }
        Build::Product { a, b } => (product(&load(Some(a))?, &load(Some(b))?)?, "product".into(), None),
        Build::Bounded { file } => (bounded_extension(&load(file.as_ref())?)?.0, "bounded".into(), None),
        Build::Dual { file } => (load(file.as_ref())?.dual(), "dual".into(), None),
    };
    Ok(emit(g, &l, &name, dims.as_deref()))
}

fn info(g: &Global, file: Option<&PathBuf>) -> Out {
    let l = load(file)?;
    let con = congruence_lattice_capped(&l, g.cap.unwrap_or(DEFAULT_CON_CAP))?;
    let mut out = String::new();
    out += &format!("size {}\n", l.size());
    out += &format!("length {}\n", l.height());
    out += &format!("modular {}\n", yes(l.is_modular()));
    out += &format!("distributive {}\n", yes(l.is_distributive()));
    out += &format!("simple {}\n", yes(is_simple(&l)));
    out += &format!("congruences {}\n", con.len());
    match con.boolean_rank() {
        Some(k) => out += &format!("con-boolean 2^{k}\n"),
        None => out += "con-boolean no\n",
    }
    out += &format!("whitman {}\n", yes(satisfies_whitman(&l)));
    out += &format!("2-ladder {}\n", yes(l.is_2_ladder()));
    Ok(out)
}

fn con(g: &Global, file: Option<&PathBuf>) -> Out {
    let l = load(file)?;
    let con = congruence_lattice_capped(&l, g.cap.unwrap_or(DEFAULT_CON_CAP))?;
    if g.format == Format::Dot {
        return Ok(to_dot(con.lattice().poset(), "Con"));
    }
    let mut out = format!("congruences {}\n", con.len());
    for (i, c) in con.congruences().iter().enumerate() {
        out += &format!("theta {i} : {}\n", write_blocks(c));
    }
    let covers: Vec<String> = con.lattice().covers().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    out += &format!("covers {}\n", covers.join(" "));
    Ok(out)
}

fn dim(file: Option<&PathBuf>, interval: Option<&Vec<usize>>) -> Out {
    let l = load(file)?;
    let d = Dimension::new(&l)?;
    let (a, b) = match interval {
        Some(v) => (v[0], v[1]),
        None => (l.bottom(), l.top()),
    };
    let mut out = format!("classes {}\n", d.classes().len());
    for c in 0..d.classes().len() {
        let iv: Vec<String> = d.classes().class(c).iter().map(|p| format!("{}-{}", p.lower, p.upper)).collect();
        out += &format!("class {c} : {}\n", iv.join(" "));
    }
    out += &format!("delta {a} {b} : {}\n", d.delta(a, b)?);
    out += &format!("gdim {}\n", gdim_signature(&l)?);
    Ok(out)
}

fn embed(a: &PathBuf, b: &PathBuf, bounds: bool) -> Out {
    let (la, lb) = (load(Some(a))?, load(Some(b))?);
    let flags = EmbeddingFlags { preserve_zero: bounds, preserve_one: bounds };
    Ok(match find_embedding_with(&la, &lb, flags) {
        Some(h) => {
            let m: Vec<String> = h.map().iter().map(usize::to_string).collect();
            format!("embedding found\nmap {}\n", m.join(" "))
        }
        None => "embedding none\n".into(),
    })
}

fn variety(g: &Global, a: &PathBuf, k: &PathBuf) -> Out {
    let (la, lk) = (load(Some(a))?, load(Some(k))?);
    let cert = in_variety_capped(&la, &lk, g.cap.unwrap_or(DEFAULT_HS_CAP))?;
    let mut out = format!("member {}\nfactors {}\n", yes(cert.member), cert.factors.len());
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    for (i, f) in cert.factors.iter().enumerate() {
        out += &format!("factor {i} size {} in-hs {} nodes {}\n", f.factor.size(), yes(f.witness.is_some()), f.nodes);
        if let Some(w) = &f.witness {
            out += &format!("factor {i} sublattice {}\n", join(&w.sublattice));
            out += &format!("factor {i} image {}\n", join(&w.image));
        }
    }
    Ok(out)
}

fn diagram(cmd: &DiagramCmd) -> Out {
    match cmd {
        DiagramCmd::An { n } => Ok(write_diagram(&build_a_diagram(*n)?)),
        DiagramCmd::Check { file } => {
            let b = parse_diagram(&read_input(Some(file))?)?;
            let sizes: Vec<String> = b.nodes().iter().map(|l| l.size().to_string()).collect();
            let con_sizes: Vec<String> = conc_diagram(&b)?.cons.iter().map(|c| c.len().to_string()).collect();
            let mut out =
                format!("functorial yes\nnode-sizes {}\ncon-sizes {}\n", sizes.join(" "), con_sizes.join(" "));
            let Some(n) = b.index().ground() else {
                return Ok(out);
            };
            let a = build_a_diagram(n)?;
            let Some(xi) = find_natural_equivalence(&conc_diagram(&a)?.diagram, &conc_diagram(&b)?.diagram) else {
                out += "lifts-con-a no\n";
                return Ok(out);
            };
            let lift = Lifting::new(&b, &xi)?;
            out += "lifts-con-a yes\n";
            let insts = lift.all_instances();
            for inst in &insts {
                if !lift.check(inst)?.all_hold() {
                    return Err(Fail::Check(format!("{out}implication fails at {inst:?}")));
                }
            }
            out += &format!("implications hold on {} instances\n", insts.len());
            Ok(out)
        }
        DiagramCmd::Extract { file } => {
            let b = parse_diagram(&read_input(Some(file))?)?;
            let n = b.index().ground().ok_or(Fail::Error("index is not I_n".into()))?;
            let a = build_a_diagram(n)?;
            let xi = find_natural_equivalence(&conc_diagram(&a)?.diagram, &conc_diagram(&b)?.diagram)
                .ok_or(Fail::Check("no natural equivalence from Con A".into()))?;
            let e = Lifting::new(&b, &xi)?.extract_mn()?;
            let m: Vec<String> = e.embedding.map().iter().map(usize::to_string).collect();
            Ok(format!(
                "u {}\nv {}\nbranch {}\nembedding {}\n",
                e.u,
                e.v,
                if e.lower_branch { "lower" } else { "upper" },
                m.join(" ")
            ))
        }
    }
}

fn support(cmd: &SupportCmd) -> Out {
    match cmd {
        SupportCmd::Kernel { n, kappa, seeds } => {
            let pf = PartialFunctionPoset::new(*n, *kappa)?;
            let s: Vec<usize> = seeds.iter().map(|t| parse_partial_function(&pf, t)).collect::<Result<_, _>>()?;
            let k = kernel_closure(&pf, &s)?;
            let items: Vec<String> = k.elements().iter().map(|&u| format_partial_function(&pf, u)).collect();
            Ok(format!("kernel {}\n{}\n", k.len(), items.join("\n")))
        }
        SupportCmd::Normcover { n, kappa } => {
            let nc = build_norm_covering(*n, *kappa)?;
            let ext = extreme_ideals(&nc);
            let mut out = format!("elements {}\nindex {}\nextreme {}\n", nc.poset.size(), nc.index.size(), ext.len());
            out += &format!("norm-order-preserving {}\n", yes(nc.norm_is_order_preserving()));
            if nc.poset.size() <= 4096 {
                out += &format!("extreme-by-definition {}\n", yes(ext == extreme_ideals_by_definition(&nc)));
            }
            Ok(out)
        }
        SupportCmd::Freeset { kappa, m, table } => {
            let f = match table {
                Some(p) => parse_pair_map(*kappa, &read_input(Some(p))?)?,
                None => PairMap::empty(*kappa)?,
            };
            Ok(match free_set_search(&f, *m) {
                Some(y) => format!("free {}\n", y.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
                None => "free none\n".into(),
            })
        }
    }
}

fn run_verify(ids: &[String], list: bool) -> Out {
    let all = verify::checks();
    if list {
        return Ok(all.iter().map(|c| format!("{:<26} {}\n", c.id, c.summary)).collect());
    }
    if let Some(bad) = ids.iter().find(|id| !all.iter().any(|c| c.id == id.as_str())) {
        return Err(Fail::Error(format!("unknown check `{bad}` (see `verify --list`)")));
    }
    let mut out = String::new();
    let mut failed = Vec::new();
    for c in all.iter().filter(|c| ids.is_empty() || ids.iter().any(|i| i == c.id)) {
        let r = verify::run(c);
        out += &format!(
            "{:<4} {:<26} {:>9.1}ms  {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.elapsed.as_secs_f64() * 1e3,
            r.detail
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(Fail::Check(format!("{out}failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let SeedOrder::Lex = cli.global.seed_order;
    let g = &cli.global;
    let res = match &cli.cmd {
        Cmd::Build(b) => build(g, b),
        Cmd::Info { file } => info(g, file.as_ref()),
        Cmd::Con { file } => con(g, file.as_ref()),
        Cmd::Dim { file, interval } => dim(file.as_ref(), interval.as_ref()),
        Cmd::Embed { a, b, bounds } => embed(a, b, *bounds),
        Cmd::Variety { a, generator } => variety(g, a, generator),
        Cmd::Diagram(d) => diagram(d),
        Cmd::Support(s) => support(s),
        Cmd::Verify { checks, list } => run_verify(checks, *list),
    };
    match res {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail::Check(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

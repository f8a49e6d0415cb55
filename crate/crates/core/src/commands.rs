//! Commands over documents, each producing an exit code, a plain-text report
//! and optionally a document to write back.

use std::fmt::Write as _;

use crate::constructions::{self, WalkSpace};
use crate::creg::{self, GridFunction};
use crate::format::{self, AnySpace, Document, SectionKind};
use crate::oracle;
use crate::quantale::Quantale;
use crate::space::{self, ContinuitySpace};
use crate::symmetry;
use crate::topology::{FiniteTopology, PointSet};

pub const PASS: i32 = 0;
pub const VIOLATED: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub emit: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymMode {
    Join,
    Plus,
    Path,
}

/// What `check` and `oracle-compare` look at: a space, or a topology through its metrization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Space(Option<String>),
    Topology(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Props {
    pub t0: bool,
    pub t1: bool,
    pub regular: bool,
    pub connected: bool,
    pub symmetric: bool,
    pub completely_regular: bool,
}

impl Props {
    pub fn all() -> Self {
        Props { t0: true, t1: true, regular: true, connected: true, symmetric: true, completely_regular: true }
    }

    fn any(&self) -> bool {
        self.t0 || self.t1 || self.regular || self.connected || self.symmetric || self.completely_regular
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    CheckLattice { name: Option<String> },
    CheckQuantale { name: Option<String> },
    GenTopology { space: Option<String>, interior: Option<Vec<String>>, ball: Option<(String, String)> },
    Metrize { topology: Option<String> },
    Roundtrip { topology: Option<String>, all: Option<usize> },
    Product { spaces: Vec<String> },
    Sum { spaces: Vec<String> },
    Quotient { space: Option<String>, equiv: Option<String> },
    Subspace { space: Option<String>, points: Vec<String> },
    Symmetrize { space: Option<String>, mode: SymMode },
    Check { target: Target, props: Props },
    Separate { space: Option<String>, point: String, open: Vec<String> },
    Gamma { topology: Option<String>, functions: Option<String> },
    OracleCompare { target: Target },
}

impl Command {
    /// Whether the command reads a document.
    pub fn needs_input(&self) -> bool {
        !matches!(self, Command::Roundtrip { all: Some(_), .. })
    }
}

type Res = Result<Outcome, String>;

fn outcome(ok: bool, report: String, emit: Option<String>) -> Res {
    Ok(Outcome { code: if ok { PASS } else { VIOLATED }, report, emit })
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Runs a command on the text of a document.
pub fn run(cmd: &Command, input: Option<&str>) -> Outcome {
    let doc = match (cmd.needs_input(), input) {
        (false, _) => Document::default(),
        (true, Some(text)) => match format::parse(text) {
            Ok(d) => d,
            Err(e) => return input_error(e.to_string()),
        },
        (true, None) => return input_error("no input document".to_string()),
    };
    match dispatch(cmd, &doc) {
        Ok(o) => o,
        Err(msg) => input_error(msg),
    }
}

fn input_error(msg: String) -> Outcome {
    Outcome { code: INPUT_ERROR, report: format!("error: {msg}\n"), emit: None }
}

fn dispatch(cmd: &Command, doc: &Document) -> Res {
    match cmd {
        Command::CheckLattice { name } => check_lattice(doc, name.as_deref()),
        Command::CheckQuantale { name } => check_quantale(doc, name.as_deref()),
        Command::GenTopology { space, interior, ball } => gen_topology(doc, space.as_deref(), interior.as_deref(), ball.as_ref()),
        Command::Metrize { topology } => metrize(doc, topology.as_deref()),
        Command::Roundtrip { topology, all } => roundtrip(doc, topology.as_deref(), *all),
        Command::Product { spaces } => product_or_sum(doc, spaces, true),
        Command::Sum { spaces } => product_or_sum(doc, spaces, false),
        Command::Quotient { space, equiv } => quotient(doc, space.as_deref(), equiv.as_deref()),
        Command::Subspace { space, points } => subspace(doc, space.as_deref(), points),
        Command::Symmetrize { space, mode } => symmetrize(doc, space.as_deref(), *mode),
        Command::Check { target, props } => check(doc, target, *props),
        Command::Separate { space, point, open } => separate(doc, space.as_deref(), point, open),
        Command::Gamma { topology, functions } => gamma(doc, topology.as_deref(), functions.as_deref()),
        Command::OracleCompare { target } => oracle_compare(doc, target),
    }
}

macro_rules! on_space {
    ($space:expr, $s:ident => $body:expr) => {
        match $space {
            AnySpace::Finite($s) => $body,
            AnySpace::Real($s) => $body,
        }
    };
}

fn pick(doc: &Document, kind: SectionKind, name: Option<&str>) -> Result<String, String> {
    doc.pick(kind, name).map_err(|e| e.to_string())
}

fn load_space(doc: &Document, name: Option<&str>) -> Result<(String, AnySpace), String> {
    let n = pick(doc, SectionKind::Space, name)?;
    let s = doc.space(&n).map_err(|e| e.to_string())?;
    Ok((n, s))
}

/// A space that must satisfy the triangle inequality.
fn load_vspace(doc: &Document, name: Option<&str>) -> Result<(String, AnySpace), String> {
    let (n, s) = load_space(doc, name)?;
    s.check_triangle().map_err(|e| format!("space `{n}` is not a continuity space: {e}"))?;
    Ok((n, s))
}

fn load_topology(doc: &Document, name: Option<&str>) -> Result<(String, FiniteTopology), String> {
    let n = pick(doc, SectionKind::Topology, name)?;
    let t = doc.topology(&n).map_err(|e| e.to_string())?;
    Ok((n, t))
}

fn point_set(names: &[String], members: &[String]) -> Result<PointSet, String> {
    members
        .iter()
        .map(|m| names.iter().position(|n| n == m).ok_or_else(|| format!("unknown point `{m}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(PointSet::from_points)
}

fn describe_topology(out: &mut String, t: &FiniteTopology) {
    let names = t.names();
    let _ = writeln!(out, "points: {}", t.full().render(names));
    let opens: Vec<String> = t.opens().iter().map(|u| u.render(names)).collect();
    let _ = writeln!(out, "opens ({}): {}", opens.len(), opens.join(" "));
}

fn check_lattice(doc: &Document, name: Option<&str>) -> Res {
    let n = pick(doc, SectionKind::Lattice, name)?;
    let l = doc.lattice(&n).map_err(|e| e.to_string())?;
    let mut out = format!("lattice {n}: {} elements\n", l.len());
    let raney = l.first_raney_failure();
    match raney {
        None => out += "completely distributive: true\n",
        Some(e) => {
            let _ = writeln!(out, "completely distributive: false (witness: {} is not the meet of the elements well above it)", l.name(e));
        }
    }
    let pos = l.positives();
    let pos_names: Vec<&str> = pos.iter().map(|&e| l.name(e)).collect();
    let _ = writeln!(out, "positives: {{{}}}", pos_names.join(" "));
    let filter = l.is_filter(&pos);
    let _ = writeln!(out, "positives form a filter: {}", yes(filter));
    outcome(raney.is_none() && filter, out, None)
}

fn check_quantale(doc: &Document, name: Option<&str>) -> Res {
    let n = pick(doc, SectionKind::Plus, name)?;
    let q = doc.quantale(&n).map_err(|e| e.to_string())?;
    let mut out = format!("quantale {n}: {} elements\n", q.len());
    let verdict = q.check_axioms();
    match &verdict {
        Ok(()) => out += "value quantale: true\n",
        Err(v) => {
            let _ = writeln!(out, "value quantale: false (witness: {v})");
        }
    }
    outcome(verdict.is_ok(), out, None)
}

fn gen_topology(doc: &Document, name: Option<&str>, interior: Option<&[String]>, ball: Option<&(String, String)>) -> Res {
    let (n, space) = load_space(doc, name)?;
    let mut out = format!("space {n}\n");
    if let Err(e) = space.check_triangle() {
        let _ = writeln!(out, "note: {e}");
    }
    let t = space.generate_topology();
    describe_topology(&mut out, &t);
    if let Some((radius, centre)) = ball {
        let x = t.names().iter().position(|p| p == centre).ok_or_else(|| format!("unknown point `{centre}`"))?;
        let unreadable = || format!("cannot read radius `{radius}`");
        let b = match &space {
            AnySpace::Finite(s) => {
                let r = s.quantale().index_of(radius).map_err(|_| unreadable())?;
                s.ball(&r, x)
            }
            AnySpace::Real(s) => {
                let r: crate::halfline::Extended = radius.parse().map_err(|_| unreadable())?;
                s.ball(&r, x)
            }
        }
        .map_err(|e| e.to_string())?;
        let _ = writeln!(out, "ball {radius} {centre} = {}", b.render(t.names()));
    }
    if let Some(members) = interior {
        let set = point_set(t.names(), members)?;
        let _ = writeln!(out, "interior {} = {}", set.render(t.names()), t.interior(set).render(t.names()));
    }
    outcome(true, out, Some(format::emit_topology(&n, &t)))
}

fn metrize(doc: &Document, name: Option<&str>) -> Res {
    let (n, t) = load_topology(doc, name)?;
    let m = space::metrize(&t).map_err(|e| e.to_string())?;
    let mut out = format!("metrization of {n}\n");
    for x in 0..m.len() {
        for y in 0..m.len() {
            if x != y {
                let _ = writeln!(out, "d {} {} = {}", t.names()[x], t.names()[y], m.render(m.d(x, y)));
            }
        }
    }
    let back = m.generate_topology();
    let same = back.same_opens(&t);
    let _ = writeln!(out, "generated topology equals {n}: {}", yes(same));
    outcome(same, out, Some(format::emit_topology(&n, &back)))
}

fn roundtrip(doc: &Document, name: Option<&str>, all: Option<usize>) -> Res {
    let tops = match all {
        Some(k) => oracle::enumerate_topologies(k).map_err(|e| e.to_string())?,
        None => vec![load_topology(doc, name)?.1],
    };
    let mut out = String::new();
    let mut same = 0;
    for t in &tops {
        let m = space::metrize(t).map_err(|e| e.to_string())?;
        if m.generate_topology().same_opens(t) {
            same += 1;
        } else {
            let opens: Vec<String> = t.opens().iter().map(|u| u.render(t.names())).collect();
            let _ = writeln!(out, "differs: {}", opens.join(" "));
        }
    }
    let _ = writeln!(out, "{same}/{} identical", tops.len());
    outcome(same == tops.len(), out, None)
}

fn same_kind(spaces: Vec<AnySpace>) -> Result<Either, String> {
    let mut fin = Vec::new();
    let mut real = Vec::new();
    for s in spaces {
        match s {
            AnySpace::Finite(s) => fin.push(s),
            AnySpace::Real(s) => real.push(s),
        }
    }
    match (fin.is_empty(), real.is_empty()) {
        (_, true) => Ok(Either::Finite(fin)),
        (true, false) => Ok(Either::Real(real)),
        _ => Err("spaces mix quantales".to_string()),
    }
}

enum Either {
    Finite(Vec<ContinuitySpace<crate::quantale::FiniteQuantale>>),
    Real(Vec<ContinuitySpace<crate::halfline::HalfLine>>),
}

fn report_construction(label: &str, built: &WalkSpace, expected: &FiniteTopology, out: &mut String) -> bool {
    let t = built.generate_topology();
    describe_topology(out, &t);
    let same = t.same_opens(expected);
    let _ = writeln!(out, "{label} topology equals the textbook construction: {}", yes(same));
    same
}

fn product_or_sum(doc: &Document, names: &[String], is_product: bool) -> Res {
    if names.is_empty() {
        return Err("name at least one space".to_string());
    }
    let mut spaces = Vec::new();
    for n in names {
        spaces.push(load_vspace(doc, Some(n))?.1);
    }
    let tops: Vec<FiniteTopology> = spaces.iter().map(|s| s.generate_topology()).collect();
    let label = if is_product { "product" } else { "sum" };
    let expected = if is_product { oracle::product_topology(&tops) } else { oracle::sum_topology(&tops) }
        .map_err(|e| e.to_string())?;
    let build = |fs: &dyn Fn() -> Result<WalkSpace, constructions::ConstructionError>| fs().map_err(|e| e.to_string());
    let (built, factors_symmetric) = match same_kind(spaces)? {
        Either::Finite(v) => (
            build(&|| if is_product { constructions::product(&v) } else { constructions::sum(&v) })?,
            v.iter().all(|s| s.is_symmetric()),
        ),
        Either::Real(v) => (
            build(&|| if is_product { constructions::product(&v) } else { constructions::sum(&v) })?,
            v.iter().all(|s| s.is_symmetric()),
        ),
    };
    let mut out = format!("{label} of {}\n", names.join(", "));
    let mut ok = report_construction(label, &built, &expected, &mut out);
    if is_product {
        let sym = built.is_symmetric();
        let _ = writeln!(out, "factors symmetric: {}; product table symmetric: {}", yes(factors_symmetric), yes(sym));
        let t = built.generate_topology();
        let dual_t = built.dual().generate_topology();
        let top_sym = t.same_opens(&dual_t);
        if factors_symmetric {
            let _ = writeln!(out, "product topology equals its dual: {}", yes(top_sym));
            ok &= top_sym;
        }
        let connected = built.is_connected_metric();
        let factors_connected = tops.iter().all(oracle::is_connected);
        let _ = writeln!(out, "connected: {} (factors connected: {})", yes(connected), yes(factors_connected));
        ok &= connected == factors_connected;
    }
    outcome(ok, out, Some(format::emit_topology(label, &built.generate_topology())))
}

fn quotient(doc: &Document, name: Option<&str>, equiv: Option<&str>) -> Res {
    let (n, space) = load_vspace(doc, name)?;
    let e = pick(doc, SectionKind::Equiv, equiv)?;
    let eq = doc.equiv(&e, space.names()).map_err(|e| e.to_string())?;
    let expected = oracle::quotient_topology(&space.generate_topology(), &eq).map_err(|e| e.to_string())?;
    let built = on_space!(&space, s => constructions::quotient(s, &eq).map_err(|e| e.to_string())?);
    let mut out = format!("quotient of {n} by {e}\n");
    let ok = report_construction("quotient", &built, &expected, &mut out);
    outcome(ok, out, Some(format::emit_topology("quotient", &built.generate_topology())))
}

fn subspace(doc: &Document, name: Option<&str>, points: &[String]) -> Res {
    let (n, space) = load_vspace(doc, name)?;
    let y = point_set(space.names(), points)?;
    let expected = oracle::subspace_topology(&space.generate_topology(), y).map_err(|e| e.to_string())?;
    let mut out = format!("subspace of {n} on {}\n", y.render(space.names()));
    let (t, emit) = match &space {
        AnySpace::Finite(s) => {
            let sub = constructions::subspace(s, y).map_err(|e| e.to_string())?;
            let qname = doc_quantale_name(doc, &n);
            (sub.generate_topology(), format::emit_finite_space("subspace", &qname, &sub))
        }
        AnySpace::Real(s) => {
            let sub = constructions::subspace(s, y).map_err(|e| e.to_string())?;
            (sub.generate_topology(), format::emit_space("subspace", "extended-reals", &sub))
        }
    };
    describe_topology(&mut out, &t);
    let same = t.same_opens(&expected);
    let _ = writeln!(out, "subspace topology equals the textbook construction: {}", yes(same));
    outcome(same, out, Some(emit))
}

fn doc_quantale_name(doc: &Document, space: &str) -> String {
    doc.sections()
        .iter()
        .find(|s| s.kind == SectionKind::Space && s.name == space)
        .and_then(|s| {
            s.entries.iter().find_map(|e| match e {
                format::Entry::Assign { key, value: format::Value::Atom(v), .. } if key == "quantale" => Some(v.clone()),
                _ => None,
            })
        })
        .unwrap_or_else(|| "V".to_string())
}

fn symmetrize(doc: &Document, name: Option<&str>, mode: SymMode) -> Res {
    let (n, space) = load_vspace(doc, name)?;
    let t = space.generate_topology();
    let (sym_t, dual_t, emit) = match &space {
        AnySpace::Finite(s) => {
            let sym = apply_sym(s, mode)?;
            let qname = doc_quantale_name(doc, &n);
            (sym.generate_topology(), s.dual().generate_topology(), format::emit_finite_space(&n, &qname, &sym))
        }
        AnySpace::Real(s) => {
            let sym = apply_sym(s, mode)?;
            (sym.generate_topology(), s.dual().generate_topology(), format::emit_space(&n, "extended-reals", &sym))
        }
    };
    let mut out = format!("{} symmetrization of {n}\n", match mode {
        SymMode::Join => "join",
        SymMode::Plus => "plus",
        SymMode::Path => "path",
    });
    describe_topology(&mut out, &sym_t);
    let ok = match mode {
        SymMode::Join | SymMode::Plus => {
            let j = oracle::join_topology(&t, &dual_t).map_err(|e| e.to_string())?;
            let same = sym_t.same_opens(&j);
            let _ = writeln!(out, "equals the join of the topology and its dual: {}", yes(same));
            same
        }
        SymMode::Path => {
            let m = oracle::meet_topology(&t, &dual_t).map_err(|e| e.to_string())?;
            let coarser = sym_t.is_coarser_than(&m);
            let _ = writeln!(out, "coarser than the meet of the topology and its dual: {}", yes(coarser));
            coarser
        }
    };
    outcome(ok, out, Some(emit))
}

fn apply_sym<Q: Quantale>(s: &ContinuitySpace<Q>, mode: SymMode) -> Result<ContinuitySpace<Q>, String> {
    match mode {
        SymMode::Join => symmetry::sym_join(s),
        SymMode::Plus => symmetry::sym_plus(s),
        SymMode::Path => symmetry::sym_path(s),
    }
    .map_err(|e| e.to_string())
}

fn check(doc: &Document, target: &Target, props: Props) -> Res {
    let props = if props.any() { props } else { Props::all() };
    let mut out = String::new();
    let ok = match target {
        Target::Space(name) => {
            let (n, space) = load_vspace(doc, name.as_deref())?;
            let _ = writeln!(out, "space {n}");
            on_space!(&space, s => check_space(s, props, &mut out)?)
        }
        Target::Topology(name) => {
            let (n, t) = load_topology(doc, Some(name))?;
            let m = space::metrize(&t).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "metrization of {n}");
            check_space(&m, props, &mut out)?
        }
    };
    outcome(ok, out, None)
}

fn pair(names: &[String], (x, y): (usize, usize)) -> String {
    format!("{}, {}", names[x], names[y])
}

fn check_space<Q: Quantale>(s: &ContinuitySpace<Q>, props: Props, out: &mut String) -> Result<bool, String> {
    let names = s.names();
    let mut ok = true;
    let mut line = |label: &str, witness: Option<String>| {
        match &witness {
            None => {
                let _ = writeln!(out, "{label}: true");
            }
            Some(w) => {
                let _ = writeln!(out, "{label}: false (witness: {w})");
            }
        }
        ok &= witness.is_none();
    };
    if props.t0 {
        line("t0", s.kolmogorov_violation().map(|p| pair(names, p)));
    }
    if props.t1 {
        line("t1", s.frechet_violation().map(|p| pair(names, p)));
    }
    if props.regular {
        line("regular", s.regularity_violation().map(|(x, c)| format!("{}, closed {}", names[x], c.render(names))));
    }
    if props.connected {
        line("connected", s.disconnection().map(|p| pair(names, p)));
    }
    if props.symmetric {
        line("symmetric", s.symmetry_violation().map(|p| pair(names, p)));
    }
    if props.completely_regular {
        let t = s.generate_topology();
        let v = creg::complete_regularity_violation(&t, creg::default_depth(t.len())).map_err(|e| e.to_string())?;
        line("completely regular", v.map(|(x, o)| format!("{}, open {}", names[x], o.render(names))));
    }
    Ok(ok)
}

fn separate(doc: &Document, name: Option<&str>, point: &str, open: &[String]) -> Res {
    let (n, space) = load_vspace(doc, name)?;
    let names = space.names().to_vec();
    let x0 = names.iter().position(|p| p == point).ok_or_else(|| format!("unknown point `{point}`"))?;
    let o = point_set(&names, open)?;
    let result: Result<(String, String, GridFunction), creg::CregError> = on_space!(&space, s => {
        creg::separator(s, x0, o).map(|sep| (s.render(&sep.radius), s.render(&sep.epsilon), sep.function))
    });
    let mut out = format!("separating {point} from the complement of {} in {n}\n", o.render(&names));
    match result {
        Ok((radius, eps, f)) => {
            let _ = writeln!(out, "radius: {radius}\nepsilon: {eps}");
            for (x, v) in f.values().iter().enumerate() {
                let _ = writeln!(out, "f {} = {v}", names[x]);
            }
            let t = space.generate_topology();
            let emit = format!(
                "{}\n{}",
                format::emit_topology(&n, &t),
                format::emit_functions("separator", &n, &t, &[("f".to_string(), f)])
            );
            outcome(true, out, Some(emit))
        }
        Err(e @ (creg::CregError::NotOpen(_) | creg::CregError::NotMember(..))) => Err(e.to_string()),
        Err(e) => {
            let _ = writeln!(out, "failed: {e}");
            outcome(false, out, None)
        }
    }
}

fn gamma(doc: &Document, name: Option<&str>, functions: Option<&str>) -> Res {
    let (fam_names, fns, (n, t)) = match functions {
        Some(f) => {
            let fam = doc.functions(f).map_err(|e| e.to_string())?;
            let t = load_topology(doc, Some(&fam.topology))?;
            (fam.names, fam.functions, t)
        }
        None => {
            let (n, t) = load_topology(doc, name)?;
            let fns = creg::separating_functions(&t, creg::default_depth(t.len())).map_err(|e| e.to_string())?;
            ((0..fns.len()).map(|i| format!("f{i}")).collect(), fns, (n, t))
        }
    };
    let mut out = format!("gamma metrization of {n} with {} functions\n", fns.len());
    match creg::gamma_space(&t, &fns) {
        Ok(g) => {
            let back = g.generate_topology();
            let same = back.same_opens(&t);
            describe_topology(&mut out, &back);
            let _ = writeln!(out, "generated topology equals {n}: {}", yes(same));
            let fam: Vec<(String, GridFunction)> = fam_names.into_iter().zip(fns).collect();
            let emit = format!("{}\n{}", format::emit_topology(&n, &back), format::emit_functions("F", &n, &t, &fam));
            outcome(same, out, Some(emit))
        }
        Err(e @ (creg::CregError::NotCompletelyRegular(..) | creg::CregError::NotContinuous(_) | creg::CregError::NotSeparating(_))) => {
            let _ = writeln!(out, "failed: {e}");
            outcome(false, out, None)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn oracle_compare(doc: &Document, target: &Target) -> Res {
    let mut out = String::new();
    let ok = match target {
        Target::Space(name) => {
            let (n, space) = load_vspace(doc, name.as_deref())?;
            let _ = writeln!(out, "space {n}");
            on_space!(&space, s => compare_space(s, &mut out)?)
        }
        Target::Topology(name) => {
            let (n, t) = load_topology(doc, Some(name))?;
            let m = space::metrize(&t).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "metrization of {n}");
            let same = m.generate_topology().same_opens(&t);
            let _ = writeln!(out, "round trip: {}", if same { "agrees" } else { "DISAGREES" });
            compare_space(&m, &mut out)? && same
        }
    };
    outcome(ok, out, None)
}

fn compare_space<Q: Quantale>(s: &ContinuitySpace<Q>, out: &mut String) -> Result<bool, String> {
    let t = s.generate_topology();
    let regular_exhaustive = s.is_regular_metric_exhaustive().ok();
    let rows = [
        ("t0", s.is_kolmogorov(), oracle::is_t0(&t)),
        ("t1", s.is_frechet(), oracle::is_t1(&t)),
        ("regular", s.is_regular_metric(), oracle::is_regular(&t)),
        ("connected", s.is_connected_metric(), oracle::is_connected(&t)),
    ];
    let mut ok = true;
    for (label, metric, top) in rows {
        let agree = metric == top;
        ok &= agree;
        let _ = writeln!(out, "{label}: metric {} / topological {} {}", yes(metric), yes(top), if agree { "agree" } else { "DISAGREE" });
    }
    if let Some(full) = regular_exhaustive {
        let agree = full == s.is_regular_metric();
        ok &= agree;
        let _ = writeln!(out, "regular over all radius maps: {} {}", yes(full), if agree { "agrees" } else { "DISAGREES" });
    }
    Ok(ok)
}

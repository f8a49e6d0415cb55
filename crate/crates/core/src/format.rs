//! The plain-text document format.
//!
//! ```text
//! # comments run to the end of the line
//! [lattice C2]
//! elements = {0 1 2}
//! 0 <= 1
//! 1 <= 2
//!
//! [plus C2]
//! rule = truncated-sum      # or `join`, or explicit `a + b = c` lines
//!
//! [space S]
//! quantale = C2             # a lattice with a plus section, or `extended-reals`
//! points = {a b}
//! default = 2
//! d a b = 1
//!
//! [topology T]
//! points = {x y}
//! open = {x}
//!
//! [equiv E]
//! class = {a b}
//!
//! [functions F]
//! topology = T
//! depth = 2
//! f x = 1
//! f y = 1/4
//! ```
//!
//! Sections may appear in any order and refer to each other by name.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::creg::GridFunction;
use crate::dyadic::Dyadic;
use crate::halfline::{Extended, HalfLine};
use crate::lattice::FiniteLattice;
use crate::quantale::{FiniteQuantale, Quantale};
use crate::space::ContinuitySpace;
use crate::topology::{FiniteTopology, Partition, PointSet};

/// A parse or resolution error at a position in the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { line: pos.line, col: pos.col, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SectionKind {
    Lattice,
    Plus,
    Space,
    Topology,
    Equiv,
    Functions,
}

impl SectionKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "lattice" => SectionKind::Lattice,
            "plus" => SectionKind::Plus,
            "space" => SectionKind::Space,
            "topology" => SectionKind::Topology,
            "equiv" => SectionKind::Equiv,
            "functions" => SectionKind::Functions,
            _ => return None,
        })
    }

    pub fn keyword(self) -> &'static str {
        match self {
            SectionKind::Lattice => "lattice",
            SectionKind::Plus => "plus",
            SectionKind::Space => "space",
            SectionKind::Topology => "topology",
            SectionKind::Equiv => "equiv",
            SectionKind::Functions => "functions",
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    pos: Pos,
}

/// One body line of a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    /// `key = value` or `key = {a b c}`.
    Assign { key: String, value: Value, pos: Pos },
    /// `a <= b`.
    Leq { lo: String, hi: String, pos: Pos },
    /// `a + b = c`.
    Sum { a: String, b: String, c: String, pos: Pos },
    /// `d x y = e`.
    Dist { x: String, y: String, e: String, pos: Pos },
    /// `f p = v`.
    Point { f: String, p: String, v: String, pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Atom(String),
    Set(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub name: String,
    pub pos: Pos,
    pub entries: Vec<Entry>,
}

/// A parsed document: named sections, not yet interpreted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    sections: Vec<Section>,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let chars: Vec<char> = code.chars().collect();
    let mut i = 0;
    let flush = |cur: &mut String, start: usize, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token { text: std::mem::take(cur), pos: Pos { line: line_no, col: start + 1 } });
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            flush(&mut cur, start, &mut out);
        } else if c == '<' && chars.get(i + 1) == Some(&'=') {
            flush(&mut cur, start, &mut out);
            out.push(Token { text: "<=".into(), pos: Pos { line: line_no, col: i + 1 } });
            i += 1;
        } else if matches!(c, '{' | '}' | '=' | '+' | '[' | ']') {
            flush(&mut cur, start, &mut out);
            out.push(Token { text: c.to_string(), pos: Pos { line: line_no, col: i + 1 } });
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(c);
        }
        i += 1;
    }
    flush(&mut cur, start, &mut out);
    out
}

fn is_ident(t: &Token) -> bool {
    !matches!(t.text.as_str(), "{" | "}" | "=" | "+" | "<=" | "[" | "]")
}

fn parse_entry(tokens: &[Token]) -> Result<Entry, ParseError> {
    let pos = tokens[0].pos;
    let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
    let idents = |range: std::ops::Range<usize>| range.clone().all(|i| is_ident(&tokens[i]));
    match texts.as_slice() {
        [_, "<=", _] if idents(0..1) && idents(2..3) => {
            Ok(Entry::Leq { lo: texts[0].into(), hi: texts[2].into(), pos })
        }
        [_, "+", _, "=", _] if idents(0..1) && idents(2..3) && idents(4..5) => {
            Ok(Entry::Sum { a: texts[0].into(), b: texts[2].into(), c: texts[4].into(), pos })
        }
        ["d", _, _, "=", _] if idents(1..3) && idents(4..5) => {
            Ok(Entry::Dist { x: texts[1].into(), y: texts[2].into(), e: texts[4].into(), pos })
        }
        [_, "=", "{", .., "}"] if idents(0..1) => {
            let inner = &tokens[3..tokens.len() - 1];
            if let Some(bad) = inner.iter().find(|t| !is_ident(t)) {
                return Err(ParseError::at(bad.pos, format!("unexpected `{}` in set", bad.text)));
            }
            Ok(Entry::Assign {
                key: texts[0].into(),
                value: Value::Set(inner.iter().map(|t| t.text.clone()).collect()),
                pos,
            })
        }
        [_, "=", _] if idents(0..1) && idents(2..3) => {
            Ok(Entry::Assign { key: texts[0].into(), value: Value::Atom(texts[2].into()), pos })
        }
        ["d", ..] => Err(ParseError::at(pos, "distance lines read `d x y = e`")),
        [_, _, "=", _] if idents(0..2) && idents(3..4) => {
            Ok(Entry::Point { f: texts[0].into(), p: texts[1].into(), v: texts[3].into(), pos })
        }
        _ => Err(ParseError::at(pos, format!("cannot read `{}`", texts.join(" ")))),
    }
}

/// Parses the section structure of a document.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(line, i + 1);
        if tokens.is_empty() {
            continue;
        }
        if tokens[0].text == "[" {
            let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
            let (kind, name) = match texts.as_slice() {
                ["[", kind, name, "]"] if is_ident(&tokens[2]) => (kind, name),
                _ => return Err(ParseError::at(tokens[0].pos, "section headers read `[kind NAME]`")),
            };
            let kind = SectionKind::parse(kind)
                .ok_or_else(|| ParseError::at(tokens[1].pos, format!("unknown section `{kind}`")))?;
            if doc.sections.iter().any(|s| s.kind == kind && s.name == *name) {
                return Err(ParseError::at(tokens[2].pos, format!("duplicate {kind} `{name}`")));
            }
            doc.sections.push(Section { kind, name: name.to_string(), pos: tokens[0].pos, entries: Vec::new() });
            continue;
        }
        let entry = parse_entry(&tokens)?;
        match doc.sections.last_mut() {
            Some(s) => s.entries.push(entry),
            None => return Err(ParseError::at(tokens[0].pos, "content before the first section")),
        }
    }
    Ok(doc)
}

/// A space read from a document, over whichever quantale it names.
#[derive(Debug, Clone)]
pub enum AnySpace {
    Finite(ContinuitySpace<FiniteQuantale>),
    Real(ContinuitySpace<HalfLine>),
}

impl AnySpace {
    pub fn names(&self) -> &[String] {
        match self {
            AnySpace::Finite(s) => s.names(),
            AnySpace::Real(s) => s.names(),
        }
    }

    pub fn check_triangle(&self) -> Result<(), crate::space::SpaceError> {
        match self {
            AnySpace::Finite(s) => s.check_triangle(),
            AnySpace::Real(s) => s.check_triangle(),
        }
    }

    pub fn generate_topology(&self) -> FiniteTopology {
        match self {
            AnySpace::Finite(s) => s.generate_topology(),
            AnySpace::Real(s) => s.generate_topology(),
        }
    }
}

/// Named collection of functions on a topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFamily {
    pub topology: String,
    pub names: Vec<String>,
    pub functions: Vec<GridFunction>,
}

fn pos_of(e: &Entry) -> Pos {
    match e {
        Entry::Assign { pos, .. }
        | Entry::Leq { pos, .. }
        | Entry::Sum { pos, .. }
        | Entry::Dist { pos, .. }
        | Entry::Point { pos, .. } => *pos,
    }
}

impl Section {
    fn assign(&self, key: &str) -> Option<(&Value, Pos)> {
        self.entries.iter().find_map(|e| match e {
            Entry::Assign { key: k, value, pos } if k == key => Some((value, *pos)),
            _ => None,
        })
    }

    fn assigns<'a>(&'a self, key: &'a str) -> impl Iterator<Item = (&'a Value, Pos)> + 'a {
        self.entries.iter().filter_map(move |e| match e {
            Entry::Assign { key: k, value, pos } if k == key => Some((value, *pos)),
            _ => None,
        })
    }

    fn set(&self, key: &str) -> Result<(Vec<String>, Pos), ParseError> {
        match self.assign(key) {
            Some((Value::Set(v), pos)) => Ok((v.clone(), pos)),
            Some((Value::Atom(_), pos)) => Err(ParseError::at(pos, format!("`{key}` takes a set `{{..}}`"))),
            None => Err(ParseError::at(self.pos, format!("{} `{}` has no `{key} = {{..}}`", self.kind, self.name))),
        }
    }

    fn atom(&self, key: &str) -> Result<Option<(String, Pos)>, ParseError> {
        match self.assign(key) {
            Some((Value::Atom(v), pos)) => Ok(Some((v.clone(), pos))),
            Some((Value::Set(_), pos)) => Err(ParseError::at(pos, format!("`{key}` takes a single value"))),
            None => Ok(None),
        }
    }

    fn check_keys(&self, allowed: &[&str], forms: &[&str]) -> Result<(), ParseError> {
        for e in &self.entries {
            let form = match e {
                Entry::Assign { key, pos, .. } => {
                    if !allowed.contains(&key.as_str()) {
                        return Err(ParseError::at(*pos, format!("unknown key `{key}` in {}", self.kind)));
                    }
                    continue;
                }
                Entry::Leq { .. } => "leq",
                Entry::Sum { .. } => "sum",
                Entry::Dist { .. } => "dist",
                Entry::Point { .. } => "point",
            };
            if !forms.contains(&form) {
                return Err(ParseError::at(pos_of(e), format!("this line does not belong in a {} section", self.kind)));
            }
        }
        Ok(())
    }
}

fn distinct(names: &[String], pos: Pos) -> Result<(), ParseError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(ParseError::at(pos, format!("`{n}` is listed twice")));
        }
    }
    Ok(())
}

fn lookup(names: &[String], name: &str, pos: Pos) -> Result<usize, ParseError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| ParseError::at(pos, format!("unknown point or element `{name}`")))
}

impl Document {
    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn names_of(&self, kind: SectionKind) -> Vec<&str> {
        self.sections.iter().filter(|s| s.kind == kind).map(|s| s.name.as_str()).collect()
    }

    fn section(&self, kind: SectionKind, name: &str, from: Pos) -> Result<&Section, ParseError> {
        self.sections
            .iter()
            .find(|s| s.kind == kind && s.name == name)
            .ok_or_else(|| ParseError::at(from, format!("no {kind} named `{name}`")))
    }

    /// The single section of a kind, or the named one.
    pub fn pick(&self, kind: SectionKind, name: Option<&str>) -> Result<String, ParseError> {
        match name {
            Some(n) => self.section(kind, n, Pos::default()).map(|s| s.name.clone()),
            None => {
                let all = self.names_of(kind);
                match all.as_slice() {
                    [one] => Ok(one.to_string()),
                    [] => Err(ParseError::at(Pos::default(), format!("document has no {kind} section"))),
                    _ => Err(ParseError::at(Pos::default(), format!("document has several {kind} sections; name one"))),
                }
            }
        }
    }

    pub fn lattice(&self, name: &str) -> Result<FiniteLattice, ParseError> {
        self.lattice_at(name, Pos::default())
    }

    fn lattice_at(&self, name: &str, from: Pos) -> Result<FiniteLattice, ParseError> {
        let s = self.section(SectionKind::Lattice, name, from)?;
        s.check_keys(&["elements"], &["leq"])?;
        let (elements, pos) = s.set("elements")?;
        distinct(&elements, pos)?;
        let mut pairs = Vec::new();
        for e in &s.entries {
            if let Entry::Leq { lo, hi, pos } = e {
                lookup(&elements, lo, *pos)?;
                lookup(&elements, hi, *pos)?;
                pairs.push((lo.clone(), hi.clone()));
            }
        }
        FiniteLattice::from_relation(elements, &pairs).map_err(|err| ParseError::at(s.pos, err.to_string()))
    }

    /// The lattice `name` with the addition from the plus section of the same name.
    pub fn quantale(&self, name: &str) -> Result<FiniteQuantale, ParseError> {
        self.quantale_at(name, Pos::default())
    }

    fn quantale_at(&self, name: &str, from: Pos) -> Result<FiniteQuantale, ParseError> {
        let lattice = self.lattice_at(name, from)?;
        let s = self.section(SectionKind::Plus, name, from)?;
        s.check_keys(&["rule"], &["sum"])?;
        if let Some((rule, pos)) = s.atom("rule")? {
            let n = lattice.len();
            return match rule.as_str() {
                "join" => Ok(FiniteQuantale::with_join(lattice)),
                "truncated-sum" => {
                    let is_chain = (0..n).all(|a| (0..n).all(|b| lattice.leq(a, b) || lattice.leq(b, a)));
                    if !is_chain {
                        return Err(ParseError::at(pos, "truncated-sum needs a chain"));
                    }
                    let rank: Vec<usize> =
                        (0..n).map(|a| (0..n).filter(|&b| b != a && lattice.leq(b, a)).count()).collect();
                    let mut by_rank = vec![0; n];
                    for (a, &r) in rank.iter().enumerate() {
                        by_rank[r] = a;
                    }
                    FiniteQuantale::from_fn(lattice, |a, b| by_rank[(rank[a] + rank[b]).min(n - 1)])
                        .map_err(|e| ParseError::at(pos, e.to_string()))
                }
                other => Err(ParseError::at(pos, format!("unknown rule `{other}`"))),
            };
        }
        let mut sums = Vec::new();
        for e in &s.entries {
            if let Entry::Sum { a, b, c, pos } = e {
                let idx = |x: &str| lattice.index_of(x).map_err(|_| ParseError::at(*pos, format!("unknown element `{x}`")));
                sums.push((idx(a)?, idx(b)?, idx(c)?));
            }
        }
        FiniteQuantale::from_sums(lattice, &sums).map_err(|e| ParseError::at(s.pos, e.to_string()))
    }

    /// Tables are read with only the diagonal checked; callers that need the
    /// triangle inequality check it with [`AnySpace::check_triangle`].
    pub fn space(&self, name: &str) -> Result<AnySpace, ParseError> {
        let s = self.section(SectionKind::Space, name, Pos::default())?;
        s.check_keys(&["quantale", "points", "default"], &["dist"])?;
        let (qname, qpos) = s
            .atom("quantale")?
            .ok_or_else(|| ParseError::at(s.pos, format!("space `{name}` has no `quantale = ..`")))?;
        let (points, ppos) = s.set("points")?;
        distinct(&points, ppos)?;
        if qname == "extended-reals" {
            let table = self.table(s, &points, &HalfLine, |t| t.parse::<Extended>().ok())?;
            return ContinuitySpace::from_premetric(HalfLine, points, table)
                .map(AnySpace::Real)
                .map_err(|e| ParseError::at(s.pos, e.to_string()));
        }
        let q = self.quantale_at(&qname, qpos)?;
        let table = self.table(s, &points, &q, |t| q.index_of(t).ok())?;
        ContinuitySpace::from_premetric(q, points, table)
            .map(AnySpace::Finite)
            .map_err(|e| ParseError::at(s.pos, e.to_string()))
    }

    fn table<Q: Quantale>(
        &self,
        s: &Section,
        points: &[String],
        q: &Q,
        elem: impl Fn(&str) -> Option<Q::Elem>,
    ) -> Result<Vec<Vec<Q::Elem>>, ParseError> {
        let n = points.len();
        let default = match s.atom("default")? {
            Some((t, pos)) => Some(elem(&t).ok_or_else(|| ParseError::at(pos, format!("unknown element `{t}`")))?),
            None => None,
        };
        let mut table: Vec<Vec<Option<Q::Elem>>> = vec![vec![None; n]; n];
        for e in &s.entries {
            if let Entry::Dist { x, y, e, pos } = e {
                let (i, j) = (lookup(points, x, *pos)?, lookup(points, y, *pos)?);
                let v = elem(e).ok_or_else(|| ParseError::at(*pos, format!("unknown element `{e}`")))?;
                if table[i][j].is_some() {
                    return Err(ParseError::at(*pos, format!("d {x} {y} is given twice")));
                }
                table[i][j] = Some(v);
            }
        }
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let v = match (&table[i][j], &default) {
                    (Some(v), _) => v.clone(),
                    (None, _) if i == j => q.bottom(),
                    (None, Some(d)) => d.clone(),
                    (None, None) => {
                        return Err(ParseError::at(s.pos, format!("no distance from {} to {} and no default", points[i], points[j])))
                    }
                };
                row.push(v);
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn topology(&self, name: &str) -> Result<FiniteTopology, ParseError> {
        self.topology_at(name, Pos::default())
    }

    fn topology_at(&self, name: &str, from: Pos) -> Result<FiniteTopology, ParseError> {
        let s = self.section(SectionKind::Topology, name, from)?;
        s.check_keys(&["points", "open"], &[])?;
        let (points, ppos) = s.set("points")?;
        distinct(&points, ppos)?;
        let mut opens = Vec::new();
        for (v, pos) in s.assigns("open") {
            let members = match v {
                Value::Set(m) => m,
                Value::Atom(_) => return Err(ParseError::at(pos, "`open` takes a set `{..}`")),
            };
            let idx: Result<Vec<usize>, _> = members.iter().map(|m| lookup(&points, m, pos)).collect();
            opens.push(PointSet::from_points(idx?));
        }
        FiniteTopology::from_opens(points, &opens).map_err(|e| ParseError::at(s.pos, e.to_string()))
    }

    /// The equivalence `name` on the given points; unmentioned points form singleton classes.
    pub fn equiv(&self, name: &str, points: &[String]) -> Result<Partition, ParseError> {
        let s = self.section(SectionKind::Equiv, name, Pos::default())?;
        s.check_keys(&["class"], &[])?;
        let mut classes = Vec::new();
        for (v, pos) in s.assigns("class") {
            let members = match v {
                Value::Set(m) => m,
                Value::Atom(_) => return Err(ParseError::at(pos, "`class` takes a set `{..}`")),
            };
            let idx: Result<Vec<usize>, _> = members.iter().map(|m| lookup(points, m, pos)).collect();
            let c = PointSet::from_points(idx?);
            if classes.iter().any(|d: &PointSet| !d.intersection(c).is_empty()) {
                return Err(ParseError::at(pos, "classes overlap"));
            }
            classes.push(c);
        }
        Partition::new(points.len(), &classes).map_err(|e| ParseError::at(s.pos, e.to_string()))
    }

    pub fn functions(&self, name: &str) -> Result<FunctionFamily, ParseError> {
        let s = self.section(SectionKind::Functions, name, Pos::default())?;
        s.check_keys(&["topology", "depth"], &["point"])?;
        let (tname, tpos) = s
            .atom("topology")?
            .ok_or_else(|| ParseError::at(s.pos, format!("functions `{name}` has no `topology = ..`")))?;
        let top = self.topology_at(&tname, tpos)?;
        let mut values: BTreeMap<String, (Vec<Option<Dyadic>>, Pos)> = BTreeMap::new();
        let mut order = Vec::new();
        for e in &s.entries {
            if let Entry::Point { f, p, v, pos } = e {
                let x = lookup(top.names(), p, *pos)?;
                let d: Dyadic = v.parse().map_err(|e: crate::dyadic::DyadicError| ParseError::at(*pos, e.to_string()))?;
                if !values.contains_key(f) {
                    order.push(f.clone());
                }
                let slot = values.entry(f.clone()).or_insert_with(|| (vec![None; top.len()], *pos));
                if slot.0[x].replace(d).is_some() {
                    return Err(ParseError::at(*pos, format!("{f} {p} is given twice")));
                }
            }
        }
        let depth_needed = values
            .values()
            .flat_map(|(v, _)| v.iter().flatten().map(|d| d.exponent()))
            .max()
            .unwrap_or(0);
        let depth = match s.atom("depth")? {
            Some((t, pos)) => t.parse::<u32>().map_err(|_| ParseError::at(pos, format!("depth `{t}` is not a number")))?,
            None => depth_needed.max(crate::creg::default_depth(top.len())),
        };
        let mut functions = Vec::new();
        for f in &order {
            let (vals, pos) = &values[f];
            let full: Option<Vec<Dyadic>> = vals.iter().copied().collect();
            let full = full.ok_or_else(|| ParseError::at(*pos, format!("function {f} is not defined at every point")))?;
            functions.push(GridFunction::new(depth, full).map_err(|e| ParseError::at(*pos, e.to_string()))?);
        }
        Ok(FunctionFamily { topology: tname, names: order, functions })
    }
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(" "))
}

/// `[lattice]` and `[plus]` sections for a table-driven quantale.
pub fn emit_quantale(name: &str, q: &FiniteQuantale) -> String {
    let l = q.lattice();
    let mut out = format!("[lattice {name}]\nelements = {}\n", set(l.names()));
    for a in l.elements() {
        for b in l.elements() {
            // Covering pairs suffice; the closure restores the rest.
            let covers = a != b
                && l.leq(a, b)
                && !l.elements().any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b));
            if covers {
                out += &format!("{} <= {}\n", l.name(a), l.name(b));
            }
        }
    }
    out += &format!("\n[plus {name}]\n");
    for a in l.elements() {
        for b in l.elements().filter(|&b| b >= a) {
            out += &format!("{} + {} = {}\n", l.name(a), l.name(b), l.name(q.sum(a, b)));
        }
    }
    out
}

/// A `[space]` section; `quantale` names the quantale sections or `extended-reals`.
pub fn emit_space<Q: Quantale>(name: &str, quantale: &str, space: &ContinuitySpace<Q>) -> String {
    let mut out = format!("[space {name}]\nquantale = {quantale}\npoints = {}\n", set(space.names()));
    for x in 0..space.len() {
        for y in 0..space.len() {
            if x != y {
                out += &format!("d {} {} = {}\n", space.names()[x], space.names()[y], space.render(space.d(x, y)));
            }
        }
    }
    out
}

/// A finite-quantale space together with its quantale sections.
pub fn emit_finite_space(name: &str, qname: &str, space: &ContinuitySpace<FiniteQuantale>) -> String {
    format!("{}\n{}", emit_quantale(qname, space.quantale()), emit_space(name, qname, space))
}

pub fn emit_topology(name: &str, top: &FiniteTopology) -> String {
    let mut out = format!("[topology {name}]\npoints = {}\n", set(top.names()));
    for u in top.opens() {
        if !u.is_empty() && u != top.full() {
            let members: Vec<String> = u.iter().map(|x| top.names()[x].clone()).collect();
            out += &format!("open = {}\n", set(&members));
        }
    }
    out
}

pub fn emit_equiv(name: &str, eq: &Partition, points: &[String]) -> String {
    let mut out = format!("[equiv {name}]\n");
    for c in eq.classes().iter().filter(|c| c.len() > 1) {
        let members: Vec<String> = c.iter().map(|x| points[x].clone()).collect();
        out += &format!("class = {}\n", set(&members));
    }
    out
}

pub fn emit_functions(name: &str, top_name: &str, top: &FiniteTopology, fam: &[(String, GridFunction)]) -> String {
    let depth = fam.iter().map(|(_, f)| f.depth()).max().unwrap_or(1);
    let mut out = format!("[functions {name}]\ntopology = {top_name}\ndepth = {depth}\n");
    for (fname, f) in fam {
        for (x, v) in f.values().iter().enumerate() {
            out += &format!("{fname} {} = {v}\n", top.names()[x]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
[space S]   # forward reference to C
quantale = C
points = {x y}
d x y = 1
d y x = 0

[lattice C]
elements = {0 1}
0 <= 1

[plus C]
rule = truncated-sum
";

    #[test]
    fn resolves_forward_references() {
        let doc = parse(SAMPLE).unwrap();
        match doc.space("S").unwrap() {
            AnySpace::Finite(s) => {
                assert_eq!(s.len(), 2);
                assert_eq!(*s.d(0, 1), 1);
            }
            AnySpace::Real(_) => panic!("expected a finite quantale"),
        }
    }

    #[test]
    fn reports_positions() {
        let err = parse("[space S]\nd x = 1\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        let err = parse("[lattice L]\nelements = {a}\n[lattice L]\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse("[bogus B]\n").unwrap_err();
        assert_eq!((err.line, err.col), (1, 2));
        let doc = parse("[space S]\nquantale = Q\npoints = {x}\n").unwrap();
        let err = doc.space("S").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn emitted_topology_round_trips() {
        let t = FiniteTopology::sierpinski();
        let text = emit_topology("T", &t);
        let back = parse(&text).unwrap().topology("T").unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_non_dyadic_values() {
        let doc = parse("[topology T]\npoints = {x}\n[functions F]\ntopology = T\nf x = 1/3\n").unwrap();
        let err = doc.functions("F").unwrap_err();
        assert_eq!(err.line, 5);
    }
}

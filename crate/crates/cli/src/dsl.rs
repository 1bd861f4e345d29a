//! The graph description language.
//!
//! ```text
//! # a directed 2-cycle
//! graph c2 { a -> b : x ; b -> a : x ; }
//! graph path { a -> b : x ; b -> c : y* ; outputs: c a ; }
//! coloring split { x : 0 ; y : 1 ; }
//! moments semi { selfadjoint: s ; s s = 1 ; s s s s = 2 ; }
//! ```
//!
//! Edge order is textual order. Vertices are numbered by first appearance.
//! A graph without edges is a single vertex, which the outputs clause may
//! name. Moment entries are a word, `=`, then the real part and an optional
//! imaginary part.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_complex::Complex64;
use traffic_core::graph::{Coloring, Edge, Label};
use traffic_core::traffic::MomentTable;
use traffic_core::TestGraph;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub graphs: Vec<(String, TestGraph)>,
    pub colorings: Vec<(String, Coloring)>,
    pub moments: Vec<(String, MomentTable)>,
}

impl Document {
    pub fn graph(&self, name: &str) -> CliResult<&TestGraph> {
        lookup(&self.graphs, name, "graph")
    }

    pub fn coloring(&self, name: &str) -> CliResult<&Coloring> {
        lookup(&self.colorings, name, "coloring")
    }

    pub fn table(&self, name: &str) -> Option<&MomentTable> {
        self.moments.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Text that parses back to an isomorphic document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, t) in &self.graphs {
            let _ = writeln!(out, "graph {name} {{");
            for e in t.edges() {
                let _ = writeln!(out, "  v{} -> v{} : {} ;", e.source, e.target, e.label);
            }
            if !t.outputs().is_empty() {
                let outs: Vec<String> = t.outputs().iter().map(|v| format!("v{v}")).collect();
                let _ = writeln!(out, "  outputs: {} ;", outs.join(" "));
            }
            out.push_str("}\n");
        }
        for (name, c) in &self.colorings {
            let _ = writeln!(out, "coloring {name} {{");
            for (letter, family) in c.iter() {
                let _ = writeln!(out, "  {letter} : {family} ;");
            }
            out.push_str("}\n");
        }
        for (name, table) in &self.moments {
            let _ = writeln!(out, "moments {name} {{");
            let sa: Vec<&str> = table.letters().iter().filter(|l| table.is_selfadjoint(l)).map(String::as_str).collect();
            if !sa.is_empty() {
                let _ = writeln!(out, "  selfadjoint: {} ;", sa.join(" "));
            }
            let _ = writeln!(out, "  degree: {} ;", table.degree());
            let unused: Vec<&str> = table
                .letters()
                .iter()
                .filter(|l| !table.is_selfadjoint(l) && !table.entries().iter().any(|(w, _)| w.iter().any(|x| &x.name == *l)))
                .map(String::as_str)
                .collect();
            if !unused.is_empty() {
                let _ = writeln!(out, "  letters: {} ;", unused.join(" "));
            }
            for (word, value) in table.entries() {
                let w: Vec<String> = word.iter().map(Label::to_string).collect();
                let _ = writeln!(out, "  {} = {:?} {:?} ;", w.join(" "), value.re, value.im);
            }
            out.push_str("}\n");
        }
        out
    }
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str, kind: &str) -> CliResult<&'a T> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| CliError::usage("unknown_name", format!("no {kind} named `{name}`")))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(String),
    Arrow,
    LBrace,
    RBrace,
    Colon,
    Semi,
    Star,
    Eq,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_atom_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '+' | '-')
}

fn lex(text: &str) -> CliResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Token { tok, line: start.0, column: start.1 });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut column),
            '{' => push(Tok::LBrace, 1, &mut i, &mut column),
            '}' => push(Tok::RBrace, 1, &mut i, &mut column),
            ':' => push(Tok::Colon, 1, &mut i, &mut column),
            ';' => push(Tok::Semi, 1, &mut i, &mut column),
            '*' => push(Tok::Star, 1, &mut i, &mut column),
            '=' => push(Tok::Eq, 1, &mut i, &mut column),
            c if is_atom_char(c) => {
                let mut j = i;
                while j < chars.len() && is_atom_char(chars[j]) && !(chars[j] == '-' && chars.get(j + 1) == Some(&'>')) {
                    j += 1;
                }
                let atom: String = chars[i..j].iter().collect();
                let width = j - i;
                push(Tok::Atom(atom), width, &mut i, &mut column);
            }
            other => {
                return Err(CliError::Parse { code: "syntax_error", path: None, line, column, message: format!("unexpected character `{other}`") });
            }
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Atom(a) => format!("`{a}`"),
        Tok::Arrow => "`->`".into(),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Star => "`*`".into(),
        Tok::Eq => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, code: &'static str, message: impl Into<String>) -> CliError {
        CliError::Parse { code, path: None, line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, want: Tok) -> CliResult<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error_at(&t, "syntax_error", format!("expected {}, found {}", describe(&want), describe(&t.tok))))
        }
    }

    fn atom(&mut self, what: &str) -> CliResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Atom(a) => Ok((a.clone(), t.clone())),
            other => Err(self.error_at(&t, "syntax_error", format!("expected {what}, found {}", describe(other)))),
        }
    }

    fn name(&mut self, what: &str) -> CliResult<(String, Token)> {
        let (a, t) = self.atom(what)?;
        if a.chars().all(|c| c.is_alphanumeric() || c == '_') {
            Ok((a, t))
        } else {
            Err(self.error_at(&t, "syntax_error", format!("invalid {what} `{a}`")))
        }
    }

    fn label(&mut self) -> CliResult<Label> {
        let (a, t) = self.atom("a label")?;
        let mut label: Label = a.parse().map_err(|_| self.error_at(&t, "invalid_label", format!("invalid label `{a}`")))?;
        if label.star {
            return Err(self.error_at(&t, "invalid_label", format!("invalid label `{a}`")));
        }
        if self.peek().tok == Tok::Star {
            self.next();
            label.star = true;
        }
        Ok(label)
    }

    fn number(&mut self) -> CliResult<f64> {
        let (a, t) = self.atom("a number")?;
        a.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| self.error_at(&t, "syntax_error", format!("invalid number `{a}`")))
    }

    fn graph(&mut self, head: &Token) -> CliResult<TestGraph> {
        self.expect(Tok::LBrace)?;
        let mut vertices: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut outputs: Option<Vec<(String, Token)>> = None;
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            if matches!(&self.peek().tok, Tok::Atom(a) if a == "outputs") && *self.peek_at(1) == Tok::Colon {
                let t = self.next();
                self.next();
                if outputs.is_some() {
                    return Err(self.error_at(&t, "syntax_error", "repeated outputs clause"));
                }
                let mut outs = Vec::new();
                while self.peek().tok != Tok::Semi {
                    outs.push(self.name("a vertex name")?);
                }
                self.next();
                outputs = Some(outs);
                continue;
            }
            let (s, _) = self.name("a vertex name or `}`")?;
            self.expect(Tok::Arrow)?;
            let (d, _) = self.name("a vertex name")?;
            self.expect(Tok::Colon)?;
            let label = self.label()?;
            self.expect(Tok::Semi)?;
            let n = vertices.len();
            let s = *vertices.entry(s).or_insert(n);
            let n = vertices.len();
            let d = *vertices.entry(d).or_insert(n);
            edges.push(Edge::new(s, d, label));
        }
        let mut outs = Vec::new();
        for (name, t) in outputs.unwrap_or_default() {
            let v = match vertices.get(&name) {
                Some(&v) => v,
                // an edgeless graph is one vertex, which the outputs may name
                None if edges.is_empty() && vertices.is_empty() => {
                    vertices.insert(name, 0);
                    0
                }
                None => return Err(self.error_at(&t, "unknown_output_vertex", format!("output vertex `{name}` is not a vertex of the graph"))),
            };
            outs.push(v);
        }
        let n = vertices.len().max(1);
        TestGraph::new(n, edges, outs).map_err(|e| self.error_at(head, e.code(), e.to_string()))
    }

    fn coloring(&mut self) -> CliResult<Coloring> {
        self.expect(Tok::LBrace)?;
        let mut c = Coloring::new();
        let mut seen = BTreeSet::new();
        while self.peek().tok != Tok::RBrace {
            let at = self.peek().clone();
            let label = self.label()?;
            if label.star {
                return Err(self.error_at(&at, "invalid_label", "colorings assign letters, not starred labels"));
            }
            self.expect(Tok::Colon)?;
            let (a, t) = self.atom("a family index")?;
            let family: usize = a.parse().map_err(|_| self.error_at(&t, "syntax_error", format!("invalid family index `{a}`")))?;
            self.expect(Tok::Semi)?;
            if !seen.insert(label.name.clone()) {
                return Err(self.error_at(&at, "duplicate_name", format!("letter `{}` colored twice", label.name)));
            }
            c.insert(label.name, family);
        }
        self.next();
        Ok(c)
    }

    fn moments(&mut self) -> CliResult<MomentTable> {
        self.expect(Tok::LBrace)?;
        let mut selfadjoint = Vec::new();
        let mut letters = BTreeSet::new();
        let mut degree = None;
        let mut entries: Vec<(Vec<Label>, Complex64, Token)> = Vec::new();
        while self.peek().tok != Tok::RBrace {
            let at = self.peek().clone();
            let keyword = match &at.tok {
                Tok::Atom(a) if *self.peek_at(1) == Tok::Colon => Some(a.clone()),
                _ => None,
            };
            match keyword.as_deref() {
                Some("selfadjoint") | Some("letters") => {
                    self.next();
                    self.next();
                    while self.peek().tok != Tok::Semi {
                        let l = self.label()?;
                        letters.insert(l.name.clone());
                        if keyword.as_deref() == Some("selfadjoint") {
                            selfadjoint.push(l.name);
                        }
                    }
                    self.next();
                }
                Some("degree") => {
                    self.next();
                    self.next();
                    let (a, t) = self.atom("a degree")?;
                    degree = Some(a.parse::<usize>().map_err(|_| self.error_at(&t, "syntax_error", format!("invalid degree `{a}`")))?);
                    self.expect(Tok::Semi)?;
                }
                Some(other) => return Err(self.error_at(&at, "syntax_error", format!("unknown clause `{other}`"))),
                None => {
                    let mut word = Vec::new();
                    while self.peek().tok != Tok::Eq {
                        let l = self.label()?;
                        letters.insert(l.name.clone());
                        word.push(l);
                    }
                    self.next();
                    let re = self.number()?;
                    let im = if self.peek().tok == Tok::Semi { 0.0 } else { self.number()? };
                    self.expect(Tok::Semi)?;
                    entries.push((word, Complex64::new(re, im), at));
                }
            }
        }
        let close = self.next();
        let degree = degree.unwrap_or_else(|| entries.iter().map(|(w, _, _)| w.len()).max().unwrap_or(0));
        let mut table = MomentTable::new(letters, selfadjoint, degree).map_err(|e| self.error_at(&close, e.code(), e.to_string()))?;
        for (word, value, at) in entries {
            table.insert(&word, value).map_err(|e| self.error_at(&at, e.code(), e.to_string()))?;
        }
        Ok(table)
    }
}

pub fn parse_document(text: &str) -> CliResult<Document> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let mut doc = Document::default();
    let mut names = BTreeSet::new();
    loop {
        let head = p.next();
        let kind = match &head.tok {
            Tok::End => break,
            Tok::Atom(a) if matches!(a.as_str(), "graph" | "coloring" | "moments") => a.clone(),
            other => {
                return Err(p.error_at(&head, "syntax_error", format!("expected `graph`, `coloring` or `moments`, found {}", describe(other))))
            }
        };
        let (name, at) = p.name("a block name")?;
        if !names.insert(name.clone()) {
            return Err(p.error_at(&at, "duplicate_name", format!("name `{name}` is already defined")));
        }
        match kind.as_str() {
            "graph" => {
                let g = p.graph(&at)?;
                doc.graphs.push((name, g));
            }
            "coloring" => {
                let c = p.coloring()?;
                doc.colorings.push((name, c));
            }
            _ => {
                let m = p.moments()?;
                doc.moments.push((name, m));
            }
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> (String, usize, usize) {
        match parse_document(text).unwrap_err() {
            CliError::Parse { code, line, column, .. } => (code.to_string(), line, column),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lexes_arrows_inside_words() {
        let doc = parse_document("graph g{a->b:x;b->a:x*;}").unwrap();
        let t = doc.graph("g").unwrap();
        assert_eq!(t.num_vertices(), 2);
        assert_eq!(t.edges()[1], Edge::new(1, 0, "x*"));
    }

    #[test]
    fn positions_are_reported() {
        assert_eq!(err("graph g {\n  a -> b x ;\n}"), ("syntax_error".into(), 2, 10));
        assert_eq!(err("graph g { a -> b : x ; }\n\ngraph g { }"), ("duplicate_name".into(), 3, 7));
        assert_eq!(err("graph g { a -> b : 1x ; }"), ("invalid_label".into(), 1, 20));
        assert_eq!(err("graph g { a -> b : x ; outputs: c ; }"), ("unknown_output_vertex".into(), 1, 33));
        assert_eq!(err("graph g { a -> b : x ; } %"), ("syntax_error".into(), 1, 26));
    }

    #[test]
    fn edgeless_graphs() {
        let doc = parse_document("graph e { } graph o { outputs: v v ; }").unwrap();
        assert_eq!(doc.graph("e").unwrap(), &TestGraph::single_vertex());
        assert_eq!(doc.graph("o").unwrap().outputs(), &[0, 0]);
    }

    #[test]
    fn moments_block() {
        let doc = parse_document("moments m { selfadjoint: s ; s s = 1 ; s s s s = 2 ; a b* = 0.5 -0.25 ; }").unwrap();
        let table = doc.table("m").unwrap();
        assert_eq!(table.degree(), 4);
        use traffic_core::traffic::MomentFunctional;
        assert_eq!(table.moment(&[Label::new("b"), Label::starred("a")]).unwrap(), Complex64::new(0.5, 0.25));
        assert_eq!(err("moments m { s s = 1 ; s s = 2 ; }").0, "not_tracial");
    }
}

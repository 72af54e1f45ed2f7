//! The session language.
//!
//! ```text
//! ring A = Q[x, y] / (y^2 - x^2*(x + 1));
//! ring B = Q[x, y] / (y^2 - x - 1);
//! map pi : A -> B = (x, x*y);
//! branch p on B = (t^2 + 2*t, 1 + t);
//! elem f in B = y as y / x;
//! check saturation pi element f witness(0, 1, 0, -1);
//! ```
//!
//! Command flags, after the optional `element NAME`: `max-relation-degree=N`,
//! `max-cofactor-degree=N`, `arcs=standard|none`, `witness(c, ...)`
//! (repeatable), `gens(p, ...)` and `nonintegral`.

use std::fmt;

use lipsat::poly::parse::{lex, Expr, ExprParser, ParseError, Span, Token, TokenKind};
use lipsat::rational::Rational;
use lipsat::{MonomialOrder, Polynomial};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

#[derive(Clone, Debug, PartialEq)]
pub struct RingDecl {
    pub vars: Vec<String>,
    pub relations: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapDecl {
    pub source: String,
    pub target: String,
    /// Polynomials over the target's variables.
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchDecl {
    pub ring: String,
    /// Polynomial in `t` and the optional `O(t^k)` bound.
    pub components: Vec<(Polynomial, Option<u32>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElemDecl {
    pub ring: String,
    pub value: Polynomial,
    /// `num / den` kept as canonical text: the variables belong to whichever
    /// map's source the element is checked against.
    pub representation: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Ring(RingDecl),
    Map(MapDecl),
    Branch(BranchDecl),
    Elem(ElemDecl),
}

impl Decl {
    fn kind(&self) -> &'static str {
        match self {
            Decl::Ring(_) => "ring",
            Decl::Map(_) => "map",
            Decl::Branch(_) => "branch",
            Decl::Elem(_) => "elem",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lipschitz,
    Saturation,
    Seminormal,
    LipschitzSeminormal,
    Integral,
    Member,
    RadicalMember,
    Dominant,
    Fibers,
    SampleLipschitz,
    SampleIdeal,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Lipschitz,
        Kind::Saturation,
        Kind::Seminormal,
        Kind::LipschitzSeminormal,
        Kind::Integral,
        Kind::Member,
        Kind::RadicalMember,
        Kind::Dominant,
        Kind::Fibers,
        Kind::SampleLipschitz,
        Kind::SampleIdeal,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Lipschitz => "lipschitz",
            Kind::Saturation => "saturation",
            Kind::Seminormal => "seminormal",
            Kind::LipschitzSeminormal => "lipschitz-seminormal",
            Kind::Integral => "integral",
            Kind::Member => "member",
            Kind::RadicalMember => "radical-member",
            Kind::Dominant => "dominant",
            Kind::Fibers => "fibers",
            Kind::SampleLipschitz => "sample-lipschitz",
            Kind::SampleIdeal => "sample-ideal",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s)
    }

    /// Commands whose target may be a ring rather than a map.
    fn accepts_ring(self) -> bool {
        matches!(self, Kind::Member | Kind::RadicalMember | Kind::SampleIdeal)
    }

    fn needs_element(self) -> bool {
        self != Kind::Dominant
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcMode {
    Standard,
    None,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Flags {
    pub max_relation_degree: Option<u32>,
    pub max_cofactor_degree: Option<u32>,
    pub arcs: Option<ArcMode>,
    pub witnesses: Vec<Vec<Rational>>,
    /// Over the element's ring.
    pub gens: Vec<Polynomial>,
    pub nonintegral: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Command {
    pub kind: Kind,
    pub target: String,
    pub element: Option<String>,
    pub flags: Flags,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub declarations: Vec<(String, Decl)>,
    pub commands: Vec<Command>,
}

impl Session {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.declarations.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn ring(&self, name: &str) -> Option<&RingDecl> {
        match self.get(name) {
            Some(Decl::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn count(&self, kind: &str) -> usize {
        self.declarations.iter().filter(|(_, d)| d.kind() == kind).count()
    }

    /// Branches declared on `ring`, in declaration order.
    pub fn branches_on(&self, ring: &str) -> Vec<(&str, &BranchDecl)> {
        self.declarations
            .iter()
            .filter_map(|(n, d)| match d {
                Decl::Branch(b) if b.ring == ring => Some((n.as_str(), b)),
                _ => None,
            })
            .collect()
    }
}

pub fn parse(src: &str) -> Result<Session, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens: &tokens, pos: 0, session: Session::default() };
    while p.peek().kind != TokenKind::Eof {
        p.statement()?;
    }
    Ok(p.session)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    session: Session,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Span, ParseError> {
        let t = self.bump();
        if t.kind != kind {
            return Err(ParseError::at(t.span, format!("expected {kind}, found {}", t.kind)));
        }
        Ok(t.span)
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        let t = self.bump();
        match t.kind {
            TokenKind::Ident(s) => Ok((s, t.span)),
            other => Err(ParseError::at(t.span, format!("expected a name, found {other}"))),
        }
    }

    /// `a-b-c` with no spaces around the hyphens.
    fn word(&mut self) -> Result<(String, Span), ParseError> {
        let (mut s, span) = self.ident()?;
        let mut end = span.end;
        loop {
            let (minus, next) = (&self.tokens[self.pos], self.tokens.get(self.pos + 1));
            match (&minus.kind, next) {
                (TokenKind::Minus, Some(Token { kind: TokenKind::Ident(w), span: ws }))
                    if minus.span.start == end && ws.start == minus.span.end =>
                {
                    s.push('-');
                    s.push_str(w);
                    end = ws.end;
                    self.pos += 2;
                }
                _ => return Ok((s, span)),
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (s, span) = self.ident()?;
        if s != kw {
            return Err(ParseError::at(span, format!("expected `{kw}`, found `{s}`")));
        }
        Ok(())
    }

    fn expr(&mut self, allow_div: bool) -> Result<Expr, ParseError> {
        let mut ep = ExprParser::new(self.tokens, self.pos);
        let e = ep.expr(allow_div)?;
        self.pos = ep.position();
        Ok(e)
    }

    fn poly(&mut self, names: &[String]) -> Result<Polynomial, ParseError> {
        self.expr(true)?.to_polynomial(names, ORDER)
    }

    /// `( item, item, ... )`, possibly empty.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect(TokenKind::LParen)?;
        let mut out = Vec::new();
        if self.peek().kind == TokenKind::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            let t = self.bump();
            match t.kind {
                TokenKind::Comma => {}
                TokenKind::RParen => return Ok(out),
                other => return Err(ParseError::at(t.span, format!("expected `,` or `)`, found {other}"))),
            }
        }
    }

    fn declare(&mut self, name: String, span: Span, decl: Decl) -> Result<(), ParseError> {
        if self.session.get(&name).is_some() {
            return Err(ParseError::at(span, format!("`{name}` is already declared")));
        }
        self.session.declarations.push((name, decl));
        Ok(())
    }

    fn ring_ref(&self, name: &str, span: Span) -> Result<RingDecl, ParseError> {
        match self.session.get(name) {
            Some(Decl::Ring(r)) => Ok(r.clone()),
            Some(d) => Err(ParseError::at(span, format!("`{name}` is a {}, not a ring", d.kind()))),
            None => Err(ParseError::at(span, format!("undeclared ring `{name}`"))),
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let (kw, span) = self.ident()?;
        match kw.as_str() {
            "ring" => self.ring_decl(),
            "map" => self.map_decl(),
            "branch" => self.branch_decl(),
            "elem" => self.elem_decl(),
            "check" => self.command(),
            other => Err(ParseError::at(span, format!("expected a declaration or `check`, found `{other}`"))),
        }
    }

    fn ring_decl(&mut self) -> Result<(), ParseError> {
        let (name, span) = self.ident()?;
        self.expect(TokenKind::Eq)?;
        self.keyword("Q")?;
        self.expect(TokenKind::LBracket)?;
        let mut vars = Vec::new();
        if self.peek().kind != TokenKind::RBracket {
            loop {
                let (v, vs) = self.ident()?;
                if vars.contains(&v) {
                    return Err(ParseError::at(vs, format!("variable `{v}` repeated")));
                }
                vars.push(v);
                if self.peek().kind == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RBracket)?;
        let mut relations = Vec::new();
        if self.peek().kind == TokenKind::Slash {
            self.bump();
            relations = self.list(|p| p.poly(&vars))?;
        }
        self.expect(TokenKind::Semi)?;
        self.declare(name, span, Decl::Ring(RingDecl { vars, relations }))
    }

    fn map_decl(&mut self) -> Result<(), ParseError> {
        let (name, span) = self.ident()?;
        self.expect(TokenKind::Colon)?;
        let (source, ss) = self.ident()?;
        let src = self.ring_ref(&source, ss)?;
        self.expect(TokenKind::Arrow)?;
        let (target, ts) = self.ident()?;
        let tgt = self.ring_ref(&target, ts)?;
        self.expect(TokenKind::Eq)?;
        let open = self.peek().span;
        let images = self.list(|p| p.poly(&tgt.vars))?;
        if images.len() != src.vars.len() {
            return Err(ParseError::at(
                open,
                format!("map needs {} images (one per variable of `{source}`), found {}", src.vars.len(), images.len()),
            ));
        }
        self.expect(TokenKind::Semi)?;
        self.declare(name, span, Decl::Map(MapDecl { source, target, images }))
    }

    fn branch_decl(&mut self) -> Result<(), ParseError> {
        let (name, span) = self.ident()?;
        self.keyword("on")?;
        let (ring, rs) = self.ident()?;
        let r = self.ring_ref(&ring, rs)?;
        self.expect(TokenKind::Eq)?;
        let open = self.peek().span;
        let t = ["t".to_string()];
        let components = self.list(|p| {
            let (body, k) = p.expr(true)?.split_truncation()?;
            Ok((body.to_polynomial(&t, ORDER)?, k))
        })?;
        if components.len() != r.vars.len() {
            return Err(ParseError::at(
                open,
                format!("branch needs {} components, found {}", r.vars.len(), components.len()),
            ));
        }
        self.expect(TokenKind::Semi)?;
        self.declare(name, span, Decl::Branch(BranchDecl { ring, components }))
    }

    fn elem_decl(&mut self) -> Result<(), ParseError> {
        let (name, span) = self.ident()?;
        self.keyword("in")?;
        let (ring, rs) = self.ident()?;
        let r = self.ring_ref(&ring, rs)?;
        self.expect(TokenKind::Eq)?;
        let value = self.poly(&r.vars)?;
        let mut representation = None;
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == "as") {
            self.bump();
            let num = self.expr(false)?;
            self.expect(TokenKind::Slash)?;
            let den = self.expr(false)?;
            representation = Some((show_expr(&num), show_expr(&den)));
        }
        self.expect(TokenKind::Semi)?;
        self.declare(name, span, Decl::Elem(ElemDecl { ring, value, representation }))
    }

    fn command(&mut self) -> Result<(), ParseError> {
        let (kw, ks) = self.word()?;
        let kind = Kind::from_keyword(&kw).ok_or_else(|| ParseError::at(ks, format!("unknown check `{kw}`")))?;
        let (target, ts) = self.ident()?;
        let ring_of_target = match self.session.get(&target) {
            Some(Decl::Map(m)) => m.target.clone(),
            Some(Decl::Ring(_)) if kind.accepts_ring() => target.clone(),
            Some(d) => return Err(ParseError::at(ts, format!("`{target}` is a {}, not a map", d.kind()))),
            None => return Err(ParseError::at(ts, format!("undeclared name `{target}`"))),
        };
        let mut element = None;
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == "element") {
            self.bump();
            let (e, es) = self.ident()?;
            match self.session.get(&e) {
                Some(Decl::Elem(d)) if d.ring == ring_of_target => {}
                Some(Decl::Elem(d)) => {
                    return Err(ParseError::at(es, format!("`{e}` lives in `{}`, expected `{ring_of_target}`", d.ring)))
                }
                Some(d) => return Err(ParseError::at(es, format!("`{e}` is a {}, not an elem", d.kind()))),
                None => return Err(ParseError::at(es, format!("undeclared elem `{e}`"))),
            }
            element = Some(e);
        }
        if kind.needs_element() && element.is_none() {
            return Err(ParseError::at(self.peek().span, format!("`check {kw}` needs `element NAME`")));
        }
        let ring_vars = self.ring_ref(&ring_of_target, ts)?.vars;
        let flags = self.flags(&ring_vars)?;
        self.expect(TokenKind::Semi)?;
        self.session.commands.push(Command { kind, target, element, flags });
        Ok(())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let t = self.bump();
        match &t.kind {
            TokenKind::Int(n) => u32::try_from(n.clone()).map_err(|_| ParseError::at(t.span, "number too large")),
            other => Err(ParseError::at(t.span, format!("expected a number, found {other}"))),
        }
    }

    fn flags(&mut self, ring_vars: &[String]) -> Result<Flags, ParseError> {
        let mut f = Flags::default();
        while self.peek().kind != TokenKind::Semi {
            let (w, ws) = self.word()?;
            match w.as_str() {
                "max-relation-degree" | "max-cofactor-degree" => {
                    self.expect(TokenKind::Eq)?;
                    let n = self.number()?;
                    if w == "max-relation-degree" {
                        f.max_relation_degree = Some(n);
                    } else {
                        f.max_cofactor_degree = Some(n);
                    }
                }
                "arcs" => {
                    self.expect(TokenKind::Eq)?;
                    let (m, ms) = self.ident()?;
                    f.arcs = Some(match m.as_str() {
                        "standard" => ArcMode::Standard,
                        "none" => ArcMode::None,
                        _ => return Err(ParseError::at(ms, "expected `standard` or `none`")),
                    });
                }
                "witness" => {
                    let open = self.peek().span;
                    let pt = self.list(|p| {
                        let c = p.poly(&[])?;
                        Ok(c.constant_value().unwrap_or_default())
                    })?;
                    if pt.is_empty() {
                        return Err(ParseError::at(open, "empty witness point"));
                    }
                    f.witnesses.push(pt);
                }
                "gens" => f.gens = self.list(|p| p.poly(ring_vars))?,
                "nonintegral" => f.nonintegral = true,
                other => return Err(ParseError::at(ws, format!("unknown flag `{other}`"))),
            }
        }
        Ok(f)
    }
}

/// Fully parenthesized, so printing a reparsed expression is stable.
pub fn show_expr(e: &Expr) -> String {
    match e {
        Expr::Int(n) => n.to_string(),
        Expr::Var(v, _) => v.clone(),
        Expr::Add(a, b) => format!("({} + {})", show_expr(a), show_expr(b)),
        Expr::Sub(a, b) => format!("({} - {})", show_expr(a), show_expr(b)),
        Expr::Mul(a, b) => format!("({} * {})", show_expr(a), show_expr(b)),
        Expr::Div(a, b, _) => format!("({} / {})", show_expr(a), show_expr(b)),
        Expr::Neg(a) => format!("(-{})", show_expr(a)),
        Expr::Pow(a, k) => format!("{}^{k}", show_expr(a)),
        Expr::BigO(a, _) => format!("O({})", show_expr(a)),
    }
}

fn show_rational(r: &Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, d) in &self.declarations {
            match d {
                Decl::Ring(r) => {
                    write!(f, "ring {name} = Q[{}]", r.vars.join(", "))?;
                    if !r.relations.is_empty() {
                        write!(f, " / ({})", join(&r.relations, |p| p.to_string_with(&r.vars)))?;
                    }
                    writeln!(f, ";")?;
                }
                Decl::Map(m) => {
                    let vars = self.ring(&m.target).map(|r| r.vars.clone()).unwrap_or_default();
                    let imgs = join(&m.images, |p| p.to_string_with(&vars));
                    writeln!(f, "map {name} : {} -> {} = ({imgs});", m.source, m.target)?;
                }
                Decl::Branch(b) => {
                    let comps = join(&b.components, |(p, k)| {
                        let body = p.to_string_with(&["t"]);
                        match k {
                            Some(k) => format!("{body} + O(t^{k})"),
                            None => body,
                        }
                    });
                    writeln!(f, "branch {name} on {} = ({comps});", b.ring)?;
                }
                Decl::Elem(e) => {
                    let vars = self.ring(&e.ring).map(|r| r.vars.clone()).unwrap_or_default();
                    write!(f, "elem {name} in {} = {}", e.ring, e.value.to_string_with(&vars))?;
                    if let Some((n, d)) = &e.representation {
                        write!(f, " as {n} / {d}")?;
                    }
                    writeln!(f, ";")?;
                }
            }
        }
        for c in &self.commands {
            let vars = match self.get(&c.target) {
                Some(Decl::Map(m)) => self.ring(&m.target).map(|r| r.vars.clone()),
                Some(Decl::Ring(r)) => Some(r.vars.clone()),
                _ => None,
            }
            .unwrap_or_default();
            writeln!(f, "{};", c.show(&vars))?;
        }
        Ok(())
    }
}

impl Command {
    /// The command as written, without the trailing `;`.
    pub fn show(&self, ring_vars: &[String]) -> String {
        let mut s = format!("check {} {}", self.kind.keyword(), self.target);
        if let Some(e) = &self.element {
            s += &format!(" element {e}");
        }
        let fl = &self.flags;
        if let Some(n) = fl.max_relation_degree {
            s += &format!(" max-relation-degree={n}");
        }
        if let Some(n) = fl.max_cofactor_degree {
            s += &format!(" max-cofactor-degree={n}");
        }
        if let Some(m) = fl.arcs {
            s += if m == ArcMode::Standard { " arcs=standard" } else { " arcs=none" };
        }
        for w in &fl.witnesses {
            s += &format!(" witness({})", join(w, show_rational));
        }
        if !fl.gens.is_empty() {
            s += &format!(" gens({})", join(&fl.gens, |p| p.to_string_with(ring_vars)));
        }
        if fl.nonintegral {
            s += " nonintegral";
        }
        s
    }
}

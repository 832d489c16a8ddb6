//! Space expressions and their s-expression syntax.

use std::fmt;

use crate::ordinals::{Ordinal, ParseError};

/// An ordinal slot: a literal, or `base + k` for a family index variable `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdArg {
    Lit(Ordinal),
    Var { base: Ordinal, var: String },
}

impl OrdArg {
    pub fn lit(&self) -> Option<&Ordinal> {
        match self {
            OrdArg::Lit(a) => Some(a),
            OrdArg::Var { .. } => None,
        }
    }
}

impl fmt::Display for OrdArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdArg::Lit(a) => write!(f, "{a}"),
            OrdArg::Var { base, var } if base.is_zero() => write!(f, "{var}"),
            OrdArg::Var { base, var } => write!(f, "{base}+{var}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(family (k) body)`: component `k` is `body` with `k` substituted.
    Template { var: String, body: Box<SpaceExpr> },
    /// `(below l nk)` or `(below l rk)`: one component per `a < l`, in
    /// enumeration order.
    Below(Ordinal, Tower),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tower {
    Nk,
    Rk,
}

impl Tower {
    pub fn at(self, a: Ordinal) -> SpaceExpr {
        match self {
            Tower::Nk => SpaceExpr::nk(a),
            Tower::Rk => SpaceExpr::rk(a),
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Tower::Nk => "nk",
            Tower::Rk => "rk",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Omega,
    Baire,
    Sierpinski,
    POmega,
    Reals,
    Nk(OrdArg),
    Rk(OrdArg),
    Prod(Box<SpaceExpr>, Box<SpaceExpr>),
    ProdOmega(Family),
    Coprod(Vec<SpaceExpr>),
    CoprodOmega(Family),
    /// `Y^X`, written `(exp Y X)`.
    Exp(Box<SpaceExpr>, Box<SpaceExpr>),
    Equalizer(Box<SpaceExpr>, String, String),
    Coequalizer(Box<SpaceExpr>, Box<SpaceExpr>, String, String),
    Retract(Box<SpaceExpr>, String),
    T0(Box<SpaceExpr>),
    HyperO(Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn nk(a: Ordinal) -> Self {
        SpaceExpr::Nk(OrdArg::Lit(a))
    }

    pub fn rk(a: Ordinal) -> Self {
        SpaceExpr::Rk(OrdArg::Lit(a))
    }

    pub fn exp(y: SpaceExpr, x: SpaceExpr) -> Self {
        SpaceExpr::Exp(Box::new(y), Box::new(x))
    }

    pub fn prod(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Prod(Box::new(a), Box::new(b))
    }

    /// The level `a` when the expression is `omega`, `baire` or a literal `(nk a)`.
    pub fn nk_level(&self) -> Option<Ordinal> {
        match self {
            SpaceExpr::Omega => Some(Ordinal::zero()),
            SpaceExpr::Baire => Some(Ordinal::nat(1)),
            SpaceExpr::Nk(OrdArg::Lit(a)) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn uses_var(&self, v: &str) -> bool {
        use SpaceExpr::*;
        match self {
            Omega | Baire | Sierpinski | POmega | Reals => false,
            Nk(a) | Rk(a) => matches!(a, OrdArg::Var { var, .. } if var == v),
            Prod(a, b) | Exp(a, b) | Coequalizer(a, b, _, _) => a.uses_var(v) || b.uses_var(v),
            ProdOmega(f) | CoprodOmega(f) => match f {
                Family::Template { var, body } => var != v && body.uses_var(v),
                Family::Below(..) => false,
            },
            Coprod(xs) => xs.iter().any(|x| x.uses_var(v)),
            Equalizer(x, _, _) | Retract(x, _) | T0(x) | HyperO(x) => x.uses_var(v),
        }
    }

    /// Replaces the index variable `v` by `k`.
    pub fn substitute(&self, v: &str, k: u64) -> SpaceExpr {
        use SpaceExpr::*;
        let arg = |a: &OrdArg| match a {
            OrdArg::Var { base, var } if var == v => OrdArg::Lit(base.add_nat(k)),
            other => other.clone(),
        };
        let sub = |x: &SpaceExpr| Box::new(x.substitute(v, k));
        let fam = |f: &Family| match f {
            Family::Template { var, body } if var != v => {
                Family::Template { var: var.clone(), body: sub(body) }
            }
            other => other.clone(),
        };
        match self {
            Omega | Baire | Sierpinski | POmega | Reals => self.clone(),
            Nk(a) => Nk(arg(a)),
            Rk(a) => Rk(arg(a)),
            Prod(a, b) => Prod(sub(a), sub(b)),
            Exp(a, b) => Exp(sub(a), sub(b)),
            ProdOmega(f) => ProdOmega(fam(f)),
            CoprodOmega(f) => CoprodOmega(fam(f)),
            Coprod(xs) => Coprod(xs.iter().map(|x| x.substitute(v, k)).collect()),
            Equalizer(x, f, g) => Equalizer(sub(x), f.clone(), g.clone()),
            Coequalizer(a, x, f, g) => Coequalizer(sub(a), sub(x), f.clone(), g.clone()),
            Retract(x, w) => Retract(sub(x), w.clone()),
            T0(x) => T0(sub(x)),
            HyperO(x) => HyperO(sub(x)),
        }
    }

    /// Rewrites sugar and the low `Nk` levels so that equal spaces compare equal.
    pub fn canonical(&self) -> SpaceExpr {
        use SpaceExpr::*;
        let c = |x: &SpaceExpr| Box::new(x.canonical());
        match self {
            Nk(OrdArg::Lit(a)) if a.is_zero() => Omega,
            Nk(OrdArg::Lit(a)) if *a == Ordinal::nat(1) => Baire,
            POmega => ProdOmega(Family::Template { var: "k".into(), body: Box::new(Sierpinski) }),
            HyperO(x) => Exp(Box::new(Sierpinski), c(x)),
            Prod(a, b) => Prod(c(a), c(b)),
            Exp(a, b) => Exp(c(a), c(b)),
            Coprod(xs) => Coprod(xs.iter().map(SpaceExpr::canonical).collect()),
            Equalizer(x, f, g) => Equalizer(c(x), f.clone(), g.clone()),
            Coequalizer(a, x, f, g) => Coequalizer(c(a), c(x), f.clone(), g.clone()),
            Retract(x, w) => Retract(c(x), w.clone()),
            T0(x) => T0(c(x)),
            ProdOmega(Family::Template { var, body }) => {
                ProdOmega(Family::Template { var: var.clone(), body: c(body) })
            }
            CoprodOmega(Family::Template { var, body }) => {
                CoprodOmega(Family::Template { var: var.clone(), body: c(body) })
            }
            other => other.clone(),
        }
    }

    /// Every literal ordinal mentioned, for cap checks.
    pub fn ordinals(&self) -> Vec<Ordinal> {
        use SpaceExpr::*;
        let mut out = Vec::new();
        let push_arg = |a: &OrdArg, out: &mut Vec<Ordinal>| match a {
            OrdArg::Lit(o) => out.push(o.clone()),
            OrdArg::Var { base, .. } => out.push(base.plus_omega()),
        };
        match self {
            Nk(a) | Rk(a) => push_arg(a, &mut out),
            ProdOmega(Family::Below(l, _)) | CoprodOmega(Family::Below(l, _)) => out.push(l.clone()),
            _ => {}
        }
        for child in self.children() {
            out.extend(child.ordinals());
        }
        out
    }

    fn children(&self) -> Vec<&SpaceExpr> {
        use SpaceExpr::*;
        match self {
            Omega | Baire | Sierpinski | POmega | Reals | Nk(_) | Rk(_) => vec![],
            Prod(a, b) | Exp(a, b) | Coequalizer(a, b, _, _) => vec![a, b],
            ProdOmega(Family::Template { body, .. }) | CoprodOmega(Family::Template { body, .. }) => {
                vec![body]
            }
            ProdOmega(_) | CoprodOmega(_) => vec![],
            Coprod(xs) => xs.iter().collect(),
            Equalizer(x, _, _) | Retract(x, _) | T0(x) | HyperO(x) => vec![x],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Template { var, body } => write!(f, "(family ({var}) {body})"),
            Family::Below(l, t) => write!(f, "(below {l} {})", t.keyword()),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceExpr::*;
        match self {
            Omega => write!(f, "omega"),
            Baire => write!(f, "baire"),
            Sierpinski => write!(f, "sierpinski"),
            POmega => write!(f, "pomega"),
            Reals => write!(f, "reals"),
            Nk(a) => write!(f, "(nk {a})"),
            Rk(a) => write!(f, "(rk {a})"),
            Prod(a, b) => write!(f, "(prod {a} {b})"),
            ProdOmega(fam) => write!(f, "(prod-omega {fam})"),
            Coprod(xs) => {
                write!(f, "(coprod")?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                write!(f, ")")
            }
            CoprodOmega(fam) => write!(f, "(coprod-omega {fam})"),
            Exp(y, x) => write!(f, "(exp {y} {x})"),
            Equalizer(x, g, h) => write!(f, "(equalizer {x} {g} {h})"),
            Coequalizer(a, x, g, h) => write!(f, "(coequalizer {a} {x} {g} {h})"),
            Retract(x, w) => write!(f, "(retract {x} {w})"),
            T0(x) => write!(f, "(t0 {x})"),
            HyperO(x) => write!(f, "(hyper-o {x})"),
        }
    }
}

#[derive(Clone, Debug)]
enum Tok {
    Open(usize),
    Close(usize),
    Atom(usize, String),
}

impl Tok {
    fn pos(&self) -> usize {
        match self {
            Tok::Open(p) | Tok::Close(p) | Tok::Atom(p, _) => *p,
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            c if c.is_ascii_whitespace() => i += 1,
            b'(' => {
                out.push(Tok::Open(i));
                i += 1;
            }
            b')' => {
                out.push(Tok::Close(i));
                i += 1;
            }
            _ => {
                let start = i;
                let mut depth = 0usize;
                while i < b.len() {
                    match b[i] {
                        // parentheses inside an ordinal exponent belong to the atom
                        b'(' if i > start && b[i - 1] == b'^' => depth += 1,
                        b'(' if depth > 0 => depth += 1,
                        b')' if depth > 0 => depth -= 1,
                        c if depth == 0 && (c.is_ascii_whitespace() || c == b'(' || c == b')') => break,
                        _ => {}
                    }
                    i += 1;
                }
                if depth > 0 {
                    return Err(err(start, "unbalanced parenthesis in ordinal"));
                }
                out.push(Tok::Atom(start, src[start..i].to_string()));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
    end: usize,
    vars: Vec<String>,
}

impl Parser {
    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.at).cloned().ok_or_else(|| err(self.end, "unexpected end of input"))?;
        self.at += 1;
        Ok(t)
    }

    fn close(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            Tok::Close(_) => Ok(()),
            t => Err(err(t.pos(), "expected )")),
        }
    }

    fn atom(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        match self.next()? {
            Tok::Atom(p, s) => Ok((p, s)),
            t => Err(err(t.pos(), format!("expected {what}"))),
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal, ParseError> {
        let (p, s) = self.atom("an ordinal")?;
        crate::ordinals::parse_at(&s, p)
    }

    fn ord_arg(&mut self) -> Result<OrdArg, ParseError> {
        let (p, s) = self.atom("an ordinal")?;
        for v in self.vars.iter().rev() {
            if s == *v {
                return Ok(OrdArg::Var { base: Ordinal::zero(), var: v.clone() });
            }
            if let Some(base) = s.strip_suffix(&format!("+{v}")) {
                let base = crate::ordinals::parse_at(base, p)?;
                return Ok(OrdArg::Var { base, var: v.clone() });
            }
        }
        Ok(OrdArg::Lit(crate::ordinals::parse_at(&s, p)?))
    }

    fn map_id(&mut self) -> Result<String, ParseError> {
        Ok(self.atom("a map identifier")?.1)
    }

    fn family(&mut self) -> Result<Family, ParseError> {
        let open = self.next()?;
        if !matches!(open, Tok::Open(_)) {
            return Err(err(open.pos(), "expected a family template"));
        }
        let (p, head) = self.atom("family or below")?;
        let fam = match head.as_str() {
            "family" => {
                let t = self.next()?;
                if !matches!(t, Tok::Open(_)) {
                    return Err(err(t.pos(), "expected (k)"));
                }
                let (vp, var) = self.atom("an index variable")?;
                if !var.chars().all(|c| c.is_ascii_lowercase()) || var == "w" {
                    return Err(err(vp, "index variable must be lowercase letters other than w"));
                }
                self.close()?;
                self.vars.push(var.clone());
                let body = self.expr();
                self.vars.pop();
                Family::Template { var, body: Box::new(body?) }
            }
            "below" => {
                let (lp, _) = self.peek_atom()?;
                let l = self.ordinal()?;
                if !l.is_limit() {
                    return Err(err(lp, "below needs a limit ordinal"));
                }
                let (kp, kind) = self.atom("nk or rk")?;
                let tower = match kind.as_str() {
                    "nk" => Tower::Nk,
                    "rk" => Tower::Rk,
                    _ => return Err(err(kp, "expected nk or rk")),
                };
                Family::Below(l, tower)
            }
            _ => return Err(err(p, format!("unknown template {head:?}"))),
        };
        self.close()?;
        Ok(fam)
    }

    fn peek_atom(&self) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.at) {
            Some(Tok::Atom(p, s)) => Ok((*p, s.clone())),
            Some(t) => Err(err(t.pos(), "expected an atom")),
            None => Err(err(self.end, "unexpected end of input")),
        }
    }

    fn expr(&mut self) -> Result<SpaceExpr, ParseError> {
        use SpaceExpr::*;
        match self.next()? {
            Tok::Atom(p, s) => match s.as_str() {
                "omega" => Ok(Omega),
                "baire" => Ok(Baire),
                "sierpinski" => Ok(Sierpinski),
                "pomega" => Ok(POmega),
                "reals" => Ok(Reals),
                _ => Err(err(p, format!("unknown atom {s:?}"))),
            },
            Tok::Close(p) => Err(err(p, "unexpected )")),
            Tok::Open(_) => {
                let (p, head) = self.atom("a constructor")?;
                let b = |x: SpaceExpr| Box::new(x);
                let e = match head.as_str() {
                    "nk" => Nk(self.ord_arg()?),
                    "rk" => Rk(self.ord_arg()?),
                    "prod" => Prod(b(self.expr()?), b(self.expr()?)),
                    "prod-omega" => ProdOmega(self.family()?),
                    "coprod" => {
                        let mut xs = vec![self.expr()?];
                        while !matches!(self.toks.get(self.at), Some(Tok::Close(_)) | None) {
                            xs.push(self.expr()?);
                        }
                        Coprod(xs)
                    }
                    "coprod-omega" => CoprodOmega(self.family()?),
                    "exp" => Exp(b(self.expr()?), b(self.expr()?)),
                    "equalizer" => Equalizer(b(self.expr()?), self.map_id()?, self.map_id()?),
                    "coequalizer" => {
                        Coequalizer(b(self.expr()?), b(self.expr()?), self.map_id()?, self.map_id()?)
                    }
                    "retract" => Retract(b(self.expr()?), self.map_id()?),
                    "t0" => T0(b(self.expr()?)),
                    "hyper-o" => HyperO(b(self.expr()?)),
                    _ => return Err(err(p, format!("unknown constructor {head:?}"))),
                };
                self.close()?;
                Ok(e)
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<SpaceExpr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), vars: Vec::new() };
    let e = p.expr()?;
    if let Some(t) = p.toks.get(p.at) {
        return Err(err(t.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl std::str::FromStr for SpaceExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

//! Text and JSON interfaces: the polynomial expression grammar, field spec
//! parsing (`GF(p)` / `GF(p^r; modulus)`), matrix rendering with y-blocks,
//! and the JSON code format used by the CLI.
//!
//! Grammar accepted on input: terms `c`, `v^k`, `c*v^k` joined by `+`/`-`,
//! parenthesized subexpressions and product forms like `(y+x)*(x+1)`.
//! Output is fully expanded canonical dense form; extension-field scalars
//! print as parenthesized base polynomials, e.g. `(w+2)*y^3`.

use serde_json::{json, Value};

use crate::code2d::{Code2D, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::UniPoly;
use crate::ring2d::{Ambient, AmbientSpec, RingElement2D};

// ---------------------------------------------------------------------------
// expression AST

#[derive(Debug, Clone)]
enum Ast {
    Num(u64),
    Var(char),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(dv) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dv as u64))
                            .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(v));
            }
            'a'..='z' | 'A'..='Z' => {
                out.push(Tok::Var(c));
                it.next();
            }
            '+' => {
                out.push(Tok::Plus);
                it.next();
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                it.next();
            }
            '*' => {
                out.push(Tok::Star);
                it.next();
            }
            '^' => {
                out.push(Tok::Caret);
                it.next();
            }
            '(' => {
                out.push(Tok::LParen);
                it.next();
            }
            ')' => {
                out.push(Tok::RParen);
                it.next();
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                // juxtaposition like `2x` or `x(y+1)` is not in the grammar
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = match self.next() {
            Some(Tok::Num(v)) => Ast::Num(v),
            Some(Tok::Var(c)) => Ast::Var(c),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(Error::Parse("expected ')'".into())),
                }
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Num(e)) if e <= u32::MAX as u64 => {
                    return Ok(Ast::Pow(Box::new(base), e as u32))
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// evaluation targets

fn eval_ring(ast: &Ast, amb: &Ambient) -> Result<RingElement2D> {
    Ok(match ast {
        Ast::Num(v) => {
            RingElement2D::monomial(amb, 0, 0, &amb.field().from_int(*v))
        }
        Ast::Var(c) => match *c {
            'x' => RingElement2D::wrapped_monomial(amb, 1, 0, &amb.field().one()),
            'y' => RingElement2D::wrapped_monomial(amb, 0, 1, &amb.field().one()),
            v if Some(v) == amb.field().var() => {
                RingElement2D::monomial(amb, 0, 0, &amb.field().modulus_root().unwrap())
            }
            v => return Err(Error::Parse(format!("unknown variable '{v}'"))),
        },
        Ast::Neg(a) => eval_ring(a, amb)?.neg(),
        Ast::Add(a, b) => eval_ring(a, amb)?.add(&eval_ring(b, amb)?),
        Ast::Sub(a, b) => eval_ring(a, amb)?.sub(&eval_ring(b, amb)?),
        Ast::Mul(a, b) => eval_ring(a, amb)?.mul(&eval_ring(b, amb)?),
        Ast::Pow(a, e) => {
            let base = eval_ring(a, amb)?;
            let mut acc = RingElement2D::one(amb);
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

fn eval_unipoly(ast: &Ast, field: &Field, var: char) -> Result<UniPoly> {
    Ok(match ast {
        Ast::Num(v) => UniPoly::constant(field.from_int(*v), var),
        Ast::Var(c) if *c == var => UniPoly::var_pow(field, var, 1),
        Ast::Var(c) if Some(*c) == field.var() => {
            UniPoly::constant(field.modulus_root().unwrap(), var)
        }
        Ast::Var(c) => return Err(Error::Parse(format!("unknown variable '{c}'"))),
        Ast::Neg(a) => eval_unipoly(a, field, var)?.neg(),
        Ast::Add(a, b) => eval_unipoly(a, field, var)?.add(&eval_unipoly(b, field, var)?),
        Ast::Sub(a, b) => eval_unipoly(a, field, var)?.sub(&eval_unipoly(b, field, var)?),
        Ast::Mul(a, b) => eval_unipoly(a, field, var)?.mul(&eval_unipoly(b, field, var)?),
        Ast::Pow(a, e) => eval_unipoly(a, field, var)?.pow(*e),
    })
}

// ---------------------------------------------------------------------------
// public parsers

/// Parse `GF(p)` or `GF(p^r; modulus)` / `GF(q; modulus)`.
pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("field spec must look like GF(...): {s}")))?;
    let (size_part, modulus_part) = match inner.split_once(';') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (inner.trim(), None),
    };
    let (p, r) = if let Some((b, e)) = size_part.split_once('^') {
        let p: u64 = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size {size_part}")))?;
        let r: u32 = e
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size {size_part}")))?;
        (p, r)
    } else {
        let q: u64 = size_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size {size_part}")))?;
        prime_power_split(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
    };
    let prime = Field::prime(p)?;
    if r == 1 {
        if modulus_part.is_some() {
            return Err(Error::Parse("prime field takes no modulus".into()));
        }
        return Ok(prime);
    }
    let modulus_str =
        modulus_part.ok_or_else(|| Error::Parse(format!("GF({p}^{r}) needs a modulus")))?;
    let var = modulus_str
        .chars()
        .find(|c| c.is_ascii_alphabetic())
        .ok_or_else(|| Error::Parse("modulus needs a variable".into()))?;
    let ast = parse_ast(modulus_str)?;
    let modulus = eval_unipoly(&ast, &prime, var)?;
    if modulus.degree() != Some(r as usize) {
        return Err(Error::Parse(format!(
            "modulus degree {:?} does not match field size {p}^{r}",
            modulus.degree()
        )));
    }
    Field::extension(modulus)
}

fn prime_power_split(q: u64) -> Option<(u64, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut r = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                r += 1;
            }
            return if rest == 1 { Some((p, r)) } else { None };
        }
    }
    None
}

/// Parse a scalar over the field (the field's adjoined variable is allowed).
pub fn parse_scalar(field: &Field, s: &str) -> Result<Elem> {
    let ast = parse_ast(s)?;
    // evaluate in the polynomial ring in a dummy variable; must be constant
    let var = if field.var() == Some('c') { 'd' } else { 'c' };
    let p = eval_unipoly(&ast, field, var)?;
    if p.degree().map_or(false, |d| d > 0) {
        return Err(Error::Parse(format!("expected a scalar, got {p}")));
    }
    Ok(p.coeff(0))
}

/// Parse a univariate polynomial in `var` over the field.
pub fn parse_unipoly(field: &Field, var: char, s: &str) -> Result<UniPoly> {
    let ast = parse_ast(s)?;
    eval_unipoly(&ast, field, var)
}

/// Parse a bivariate expression into the ambient ring.
pub fn parse_ring_element(amb: &Ambient, s: &str) -> Result<RingElement2D> {
    let ast = parse_ast(s)?;
    eval_ring(&ast, amb)
}

/// Comma-separated generator list; the empty string means no generators.
pub fn parse_generators(amb: &Ambient, s: &str) -> Result<Vec<RingElement2D>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|part| parse_ring_element(amb, part))
        .collect()
}

// ---------------------------------------------------------------------------
// printers

fn scalar_string(c: &Elem) -> String {
    if c.field().is_prime_field() {
        format!("{c}")
    } else {
        format!("({c})")
    }
}

/// Expanded bivariate form of a ring element, highest y-degree first.
pub fn ring_element_string(e: &RingElement2D) -> String {
    let amb = e.ambient();
    let mut terms = Vec::new();
    for j in (0..amb.m()).rev() {
        for i in (0..amb.n()).rev() {
            let c = e.get(j, i);
            if c.is_zero() {
                continue;
            }
            terms.push(monomial_string(c, i, j));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// A polynomial over a tower field `K_j`, expanded into x,y monomials.
pub fn tower_poly_string(g: &UniPoly) -> String {
    let mut terms = Vec::new();
    for l in (0..g.coeffs().len()).rev() {
        let c = g.coeff(l);
        if c.is_zero() {
            continue;
        }
        for (i, a) in c.coeffs().expect("tower element").iter().enumerate().rev() {
            if !a.is_zero() {
                terms.push(monomial_string(a, i, l));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn monomial_string(c: &Elem, i: usize, j: usize) -> String {
    let mut parts = Vec::new();
    if !c.is_one() || (i == 0 && j == 0) {
        parts.push(scalar_string(c));
    }
    if i == 1 {
        parts.push("x".into());
    } else if i > 1 {
        parts.push(format!("x^{i}"));
    }
    if j == 1 {
        parts.push("y".into());
    } else if j > 1 {
        parts.push(format!("y^{j}"));
    }
    parts.join("*")
}

/// Flattened codeword with y-blocks separated by `|`, presented in the
/// caller's original orientation.
pub fn codeword_text(amb: &Ambient, row: &[Elem]) -> String {
    let (n, m) = (amb.n(), amb.m());
    let entry = |j: usize, i: usize| {
        let c = &row[j * n + i];
        if c.field().is_prime_field() {
            format!("{c}")
        } else {
            format!("({c})")
        }
    };
    let mut blocks = Vec::new();
    if amb.is_transposed() {
        // user y-blocks are our x-degrees
        for i in 0..n {
            let cells: Vec<String> = (0..m).map(|j| entry(j, i)).collect();
            blocks.push(cells.join(" "));
        }
    } else {
        for j in 0..m {
            let cells: Vec<String> = (0..n).map(|i| entry(j, i)).collect();
            blocks.push(cells.join(" "));
        }
    }
    blocks.join(" | ")
}

/// Multi-line matrix rendering, one codeword per line.
pub fn matrix_text(gm: &GeneratorMatrix) -> String {
    gm.rows()
        .iter()
        .map(|r| codeword_text(gm.ambient(), r))
        .collect::<Vec<_>>()
        .join("\n")
}

// ---------------------------------------------------------------------------
// JSON

fn elem_json(c: &Elem) -> Value {
    match c.as_prime() {
        Some(v) => json!(v),
        None => Value::Array(
            c.coeffs()
                .unwrap()
                .iter()
                .map(elem_json)
                .collect::<Vec<_>>(),
        ),
    }
}

/// `{"m": .., "n": .., "coeffs": [[..], ..]}` in user orientation.
pub fn ring_element_json(e: &RingElement2D) -> Value {
    let amb = e.ambient();
    let (un, um) = amb.user_nm();
    let mut rows = Vec::new();
    for uj in 0..um {
        let mut row = Vec::new();
        for ui in 0..un {
            let (j, i) = if amb.is_transposed() { (ui, uj) } else { (uj, ui) };
            row.push(elem_json(e.get(j, i)));
        }
        rows.push(Value::Array(row));
    }
    json!({"m": um, "n": un, "coeffs": rows})
}

/// Matrix rows as integer indices (prime field) or nested coefficient lists.
pub fn matrix_json(gm: &GeneratorMatrix) -> Value {
    let rows: Vec<Value> = gm
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(elem_json).collect()))
        .collect();
    json!({"rows": rows, "labels": gm.labels()})
}

/// Full JSON description of a code: ambient, canonical factors and
/// generators, dimension.
pub fn code_json(c: &Code2D) -> Value {
    let amb = c.ambient();
    let (un, um) = amb.user_nm();
    let (ulam, udel) = amb.user_lambda_delta();
    json!({
        "field": format!("{}", amb.field()),
        "n": un,
        "m": um,
        "lambda": format!("{ulam}"),
        "delta": format!("{udel}"),
        "f": amb.factors().iter().map(|f| format!("{f}")).collect::<Vec<_>>(),
        "g": c.gens().iter().map(tower_poly_string).collect::<Vec<_>>(),
        "dim": c.dimension(),
    })
}

/// Re-ingest the output of [`code_json`].
pub fn parse_code_json(v: &Value) -> Result<Code2D> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("code JSON must be an object".into()))?;
    let get_str = |k: &str| {
        obj.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("code JSON missing string field '{k}'")))
    };
    let get_int = |k: &str| {
        obj.get(k)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("code JSON missing integer field '{k}'")))
    };
    let field = parse_field(get_str("field")?)?;
    let n = get_int("n")? as usize;
    let m = get_int("m")? as usize;
    let lambda = parse_scalar(&field, get_str("lambda")?)?;
    let delta = parse_scalar(&field, get_str("delta")?)?;
    let amb = AmbientSpec::new(&field, n, &lambda, m, &delta)?;
    let gens_json = obj
        .get("g")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("code JSON missing array field 'g'".into()))?;
    let gen_elems = gens_json
        .iter()
        .map(|g| {
            let s = g
                .as_str()
                .ok_or_else(|| Error::Parse("generator entries must be strings".into()))?;
            parse_ring_element(&amb, s)
        })
        .collect::<Result<Vec<_>>>()?;
    Code2D::canonicalize(&amb, &gen_elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!(parse_field("GF(5)").unwrap().order(), 5);
        let f9 = parse_field("GF(9; w^2+1)").unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.var(), Some('w'));
        let f4 = parse_field("GF(2^2; z^2+z+1)").unwrap();
        assert_eq!(f4.order(), 4);
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("GF(9; w^2+w)").is_err());
    }

    #[test]
    fn parses_scalars_and_polys() {
        let f9 = parse_field("GF(9; w^2+1)").unwrap();
        let w = f9.modulus_root().unwrap();
        assert_eq!(parse_scalar(&f9, "w+2").unwrap(), w.add(&f9.from_int(2)));
        assert_eq!(parse_scalar(&f9, "-1").unwrap(), f9.one().neg());
        let p = parse_unipoly(&f9, 'y', "y^2+1").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert!(parse_scalar(&f9, "w*y").is_err());
    }

    #[test]
    fn ring_element_round_trip_text() {
        let f2 = Field::prime(2).unwrap();
        let amb = AmbientSpec::new(&f2, 3, &f2.one(), 3, &f2.one()).unwrap();
        let e = parse_ring_element(&amb, "(y+x)*(x+1)").unwrap();
        let s = ring_element_string(&e);
        assert_eq!(s, "x*y+y+x^2+x");
        assert_eq!(parse_ring_element(&amb, &s).unwrap(), e);
    }

    #[test]
    fn negative_coefficients_normalize() {
        let f5 = Field::prime(5).unwrap();
        let p = parse_unipoly(&f5, 'y', "y-2").unwrap();
        assert_eq!(format!("{p}"), "y+3");
    }
}

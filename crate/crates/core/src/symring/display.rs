//! Table-cell rendering and parsing.
//!
//! Values are printed with the maximal power of q and of the cyclotomic
//! polynomials P1..P6 factored out; what remains is expanded. Zero prints
//! as ".". The output format is an external contract, checked against
//! golden files, and `parse_cell` inverts it exactly.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{int, RationalPoly};
use super::sign::{Residue, SignExpr, SignIndet, SignMonomial};
use super::sym::SymExpr;
use crate::Error;

/// The i-th cyclotomic polynomial evaluated at q, for i in 1..=6.
pub fn cyclotomic(i: u32) -> RationalPoly {
    match i {
        1 => RationalPoly::from_ints(&[-1, 1]),
        2 => RationalPoly::from_ints(&[1, 1]),
        3 => RationalPoly::from_ints(&[1, 1, 1]),
        4 => RationalPoly::from_ints(&[1, 0, 1]),
        5 => RationalPoly::from_ints(&[1, 1, 1, 1, 1]),
        6 => RationalPoly::from_ints(&[1, -1, 1]),
        _ => panic!("cyclotomic index out of supported range 1..=6"),
    }
}

/// Render a value in the table-cell format.
pub fn cyclotomic_display(x: &SymExpr) -> String {
    match x {
        SymExpr::Single(s) => display_sign_expr(s),
        SymExpr::Split(a, b) => format!(
            "[q=1(4): {} | q=3(4): {}]",
            display_sign_expr(a),
            display_sign_expr(b)
        ),
    }
}

fn display_sign_expr(s: &SignExpr) -> String {
    if s.is_zero() {
        return ".".to_string();
    }
    match s.as_poly() {
        Some(p) => display_poly_factored(&p),
        None => display_signed_sum(s),
    }
}

fn display_poly_factored(p: &RationalPoly) -> String {
    let (negate, p) = if p.leading_coeff().is_negative() {
        (true, p.neg())
    } else {
        (false, p.clone())
    };
    let qpow = p.valuation().unwrap_or(0);
    let mut rest = RationalPoly::from_terms(p.terms().map(|(&d, c)| (d - qpow, c.clone())));
    let mut exps = [0u32; 7];
    for i in 1..=6 {
        let phi = cyclotomic(i);
        loop {
            let (quo, rem) = rest.divrem(&phi);
            if rem.is_zero() && !quo.is_zero() {
                rest = quo;
                exps[i as usize] += 1;
            } else {
                break;
            }
        }
    }
    // rest is now a polynomial with no P1..P6 factor; pull out its content.
    let content = rest.content() * sign_of(&rest.leading_coeff());
    let residual = rest.scale(&content.recip());
    let mut c = content;
    if negate {
        c = -c;
    }

    let mut sym = String::new();
    if qpow == 1 {
        sym.push('q');
    } else if qpow > 1 {
        sym.push_str(&format!("q^{}", qpow));
    }
    for i in 1..=6usize {
        if exps[i] == 1 {
            sym.push_str(&format!("P{}", i));
        } else if exps[i] > 1 {
            sym.push_str(&format!("P{}^{}", i, exps[i]));
        }
    }

    let residual_is_one = residual.is_one();
    let mut out = String::new();
    if c.is_negative() {
        out.push('-');
    }
    let ca = c.abs();
    if sym.is_empty() && residual_is_one {
        out.push_str(&rat_str(&ca));
        return out;
    }
    if !ca.is_one() {
        out.push_str(&rat_str(&ca));
        out.push('*');
    }
    out.push_str(&sym);
    if !residual_is_one {
        let expanded = expand_poly(&residual);
        let bare = sym.is_empty() && ca.is_one() && !c.is_negative();
        if bare {
            out.push_str(&expanded);
        } else {
            out.push('(');
            out.push_str(&expanded);
            out.push(')');
        }
    }
    out
}

fn display_signed_sum(s: &SignExpr) -> String {
    // Flatten to (degree, monomial, coefficient) terms and factor out the
    // common positive rational content; signs stay inside the parentheses.
    let mut flat: Vec<(u32, SignMonomial, BigRational)> = Vec::new();
    for (&m, p) in s.terms() {
        for (&d, c) in p.terms() {
            flat.push((d, m, c.clone()));
        }
    }
    flat.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| mono_rank(a.1).cmp(&mono_rank(b.1)))
    });
    let mut content: Option<BigRational> = None;
    for (_, _, c) in &flat {
        let a = c.abs();
        content = Some(match content {
            None => a,
            Some(g) => rat_gcd(&g, &a),
        });
    }
    let content = content.unwrap_or_else(BigRational::one);
    let mut body = String::new();
    for (k, (d, m, c)) in flat.iter().enumerate() {
        let c = c / &content;
        if c.is_negative() {
            body.push('-');
        } else if k > 0 {
            body.push('+');
        }
        body.push_str(&term_str(*d, *m, &c.abs()));
    }
    if content.is_one() {
        body
    } else {
        format!("{}*({})", rat_str(&content), body)
    }
}

fn mono_rank(m: SignMonomial) -> (u8, u8) {
    // Sign-carrying terms come before plain ones within the same degree.
    (if m.is_one() { 1 } else { 0 }, m.0)
}

fn term_str(d: u32, m: SignMonomial, c: &BigRational) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || (d == 0 && m.is_one()) {
        parts.push(rat_str(c));
    }
    if d == 1 {
        parts.push("q".to_string());
    } else if d > 1 {
        parts.push(format!("q^{}", d));
    }
    for i in m.indets() {
        parts.push(i.name().to_string());
    }
    parts.join("*")
}

fn expand_poly(p: &RationalPoly) -> String {
    let mut out = String::new();
    let mut first = true;
    for (&d, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        if c.is_negative() {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        first = false;
        out.push_str(&term_str(d, SignMonomial::ONE, &c.abs()));
    }
    out
}

fn rat_str(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn sign_of(c: &BigRational) -> BigRational {
    if c.is_negative() {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    BigRational::new(
        a.numer().gcd(b.numer()),
        a.denom().lcm(b.denom()),
    )
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Q,
    P(u32),
    Indet(SignIndet),
    Caret(u32),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let bad = |i: usize| Error::Parse(format!("unexpected character at byte {i} in `{s}`"));
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'q' => {
                out.push(Tok::Q);
                i += 1;
            }
            '^' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(bad(i));
                }
                let e: u32 = s[start..i].parse().map_err(|_| bad(start))?;
                out.push(Tok::Caret(e));
            }
            'P' => {
                i += 1;
                let start = i;
                // A single digit: indices run 1..6 only.
                if i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                } else {
                    return Err(bad(start));
                }
                let idx: u32 = s[start..i].parse().map_err(|_| bad(start))?;
                out.push(Tok::P(idx));
            }
            'a' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Indet(SignIndet::from_name(&s[start..i])?));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigRational = s[start..i]
                    .parse::<i64>()
                    .map(int)
                    .map_err(|_| bad(start))?;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(bad(i));
                    }
                    let den: i64 = s[ds..i].parse().map_err(|_| bad(ds))?;
                    out.push(Tok::Num(num / int(den)));
                } else {
                    out.push(Tok::Num(num));
                }
            }
            _ => return Err(bad(i)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
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

    fn expr(&mut self) -> Result<SignExpr, Error> {
        let mut negate = false;
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            negate = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.next();
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.product()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.product()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<SignExpr, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // Juxtaposition, as in q^2P2P4.
                Some(Tok::Q) | Some(Tok::P(_)) | Some(Tok::Indet(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SignExpr, Error> {
        let base = match self.next() {
            Some(Tok::Num(c)) => SignExpr::from_poly(RationalPoly::constant(c)),
            Some(Tok::Q) => SignExpr::from_poly(RationalPoly::q()),
            Some(Tok::P(i)) => {
                if !(1..=6).contains(&i) {
                    return Err(Error::Parse(format!("unsupported cyclotomic index P{i}")));
                }
                SignExpr::from_poly(cyclotomic(i))
            }
            Some(Tok::Indet(i)) => SignExpr::indet(i),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => e,
                    _ => return Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => return Err(Error::Parse(format!("unexpected token {:?}", other))),
        };
        if let Some(&Tok::Caret(e)) = self.peek() {
            self.next();
            let mut acc = SignExpr::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

/// Parse a table cell back to a value; inverse of `cyclotomic_display` on
/// single-branch values.
pub fn parse_cell(s: &str) -> Result<SymExpr, Error> {
    let s = s.trim();
    if s == "." {
        return Ok(SymExpr::zero());
    }
    if let Some(rest) = s.strip_prefix("[q=1(4):") {
        let (a, b) = rest
            .split_once('|')
            .ok_or_else(|| Error::Parse("malformed split cell".into()))?;
        let b = b
            .trim()
            .strip_prefix("q=3(4):")
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("malformed split cell".into()))?;
        let ea = parse_sign_expr(a)?;
        let eb = parse_sign_expr(b)?;
        return Ok(SymExpr::split(ea, eb));
    }
    Ok(SymExpr::Single(parse_sign_expr(s)?))
}

fn parse_sign_expr(s: &str) -> Result<SignExpr, Error> {
    let toks = tokenize(s.trim())?;
    let mut p = Parser { toks: &toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing tokens in `{s}`")));
    }
    Ok(e)
}

/// Convenience used in tests and verification output.
pub fn display_branch(x: &SymExpr, r: Residue) -> String {
    display_sign_expr(x.branch(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::poly::rat;

    fn disp(x: &SymExpr) -> String {
        cyclotomic_display(x)
    }

    #[test]
    fn paper_cells() {
        // q^3+q^2+q+1 = P2P4
        let v = SymExpr::from_poly(RationalPoly::from_ints(&[1, 1, 1, 1]));
        assert_eq!(disp(&v), "P2P4");
        // 1/4 q (q-1)^2 = 1/4*qP1^2
        let v = SymExpr::from_poly(
            RationalPoly::q()
                .mul(&RationalPoly::from_ints(&[-1, 1]).pow(2))
                .scale(&rat(1, 4)),
        );
        assert_eq!(disp(&v), "1/4*qP1^2");
        assert_eq!(disp(&SymExpr::zero()), ".");
        assert_eq!(disp(&SymExpr::one()), "1");
        // 2q and q^2 P2 P4
        assert_eq!(disp(&SymExpr::from_poly(RationalPoly::from_ints(&[0, 2]))), "2*q");
        let v = SymExpr::from_poly(
            RationalPoly::monomial(2, rat(1, 1))
                .mul(&cyclotomic(2))
                .mul(&cyclotomic(4)),
        );
        assert_eq!(disp(&v), "q^2P2P4");
        // Expanded form when no factor applies.
        let v = SymExpr::from_poly(RationalPoly::from_ints(&[1, 1, 3, 3, 1]));
        assert_eq!(disp(&v), "q^4+3*q^3+3*q^2+q+1");
        // Negatives.
        let v = SymExpr::from_poly(RationalPoly::from_ints(&[0, 0, 0, 0, -1]).mul(&cyclotomic(1)));
        assert_eq!(disp(&v), "-q^4P1");
    }

    #[test]
    fn sign_cells() {
        let a22 = SymExpr::indet(SignIndet::from_name("a22").unwrap());
        // 1/2*(a22+1)
        let v = a22.add(&SymExpr::one()).scale(&rat(1, 2));
        assert_eq!(disp(&v), "1/2*(a22+1)");
        // 1/2*(-a22+1)
        let v = SymExpr::one().sub(&a22).scale(&rat(1, 2));
        assert_eq!(disp(&v), "1/2*(-a22+1)");
        // 1/4*(q-a22-4)
        let v = SymExpr::from_poly(RationalPoly::from_ints(&[-4, 1]))
            .sub(&a22)
            .scale(&rat(1, 4));
        assert_eq!(disp(&v), "1/4*(q-a22-4)");
        // 1/4*(-q+a22)
        let v = a22
            .sub(&SymExpr::from_poly(RationalPoly::q()))
            .scale(&rat(1, 4));
        assert_eq!(disp(&v), "1/4*(-q+a22)");
    }

    #[test]
    fn display_roundtrip() {
        let a22 = SymExpr::indet(SignIndet::from_name("a22").unwrap());
        let cases = vec![
            SymExpr::zero(),
            SymExpr::one(),
            SymExpr::from_poly(RationalPoly::from_ints(&[1, 1, 3, 3, 1])),
            SymExpr::from_poly(RationalPoly::from_ints(&[0, 2])),
            SymExpr::from_poly(
                RationalPoly::monomial(3, rat(-1, 1)).mul(&cyclotomic(2)),
            ),
            a22.add(&SymExpr::one()).scale(&rat(1, 2)),
            SymExpr::from_poly(RationalPoly::from_ints(&[-4, 1]))
                .sub(&a22)
                .scale(&rat(1, 4)),
            SymExpr::from_poly(RationalPoly::from_ints(&[0, -3, 7]).scale(&rat(1, 2))),
        ];
        for v in cases {
            let s = disp(&v);
            let back = parse_cell(&s).unwrap();
            assert_eq!(back, v, "round-trip failed for `{s}`");
        }
    }
}

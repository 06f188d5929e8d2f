//! Parser for the expression grammar shared by model files and the
//! machine-readable emitter.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '·' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | '(' expr ')' | 'pi'
//!         | ('sin' | 'cos' | 'exp' | 'sqrt') '(' expr ')'
//!         | 'd[' integer (',' integer)* ']' ident '(' args ')'
//!         | ident '(' args ')'            -- formal function
//!         | ident ('.' integer)?          -- coordinate, optionally indexed
//! ```
//!
//! `sin`/`cos` accept integer linear combinations of coordinates; `exp`
//! accepts rational constants and `−c·v²` Gaussians; `sqrt` accepts
//! non-negative rationals times powers of `π`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FuncAtom, ScalarExpr, Var, Q};

/// Parses a scalar expression.
pub fn parse_scalar(src: &str) -> Result<ScalarExpr> {
    let mut p = Parser { chars: src.char_indices().collect(), pos: 0, len: src.len() };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.offset(), msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected '{ch}'")))
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    let inv = invert_constant(&d).ok_or(Error::Parse { pos: at, msg: "division only by non-zero constants".into() })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ScalarExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-') || self.eat('−');
            let at = self.offset();
            let n = self.integer()?;
            let k: u32 = n.try_into().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
            if neg {
                let inv = invert_constant(&base).ok_or(Error::Parse { pos: at, msg: "negative power of a non-constant".into() })?;
                return Ok(inv.pow(k));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut n: u64 = 0;
        while let Some(d) = self.peek_raw().and_then(|c| c.to_digit(10)) {
            n = n.checked_mul(10).and_then(|x| x.checked_add(d as u64)).ok_or_else(|| self.err("integer overflow"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        Ok(n)
    }

    fn big_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek_raw().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let c = self.peek_raw()?;
        if !(c.is_alphabetic() || c == '_') {
            return None;
        }
        let mut s = String::new();
        while let Some(c) = self.peek_raw() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(s)
    }

    fn args(&mut self) -> Result<Vec<Option<Var>>> {
        self.expect('(')?;
        let mut out = Vec::new();
        loop {
            if self.peek() == Some('0') {
                self.pos += 1;
                out.push(None);
            } else {
                let name = self.ident().ok_or_else(|| self.err("expected function argument"))?;
                out.push(Some(self.var_suffix(&name)?));
            }
            if self.eat(',') {
                continue;
            }
            self.expect(')')?;
            return Ok(out);
        }
    }

    fn var_suffix(&mut self, name: &str) -> Result<Var> {
        if self.peek_raw() == Some('.') && self.chars.get(self.pos + 1).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
            let at = self.offset();
            let n = self.integer()?;
            let idx = u32::try_from(n).map_err(|_| Error::Parse { pos: at, msg: "index too large".into() })?;
            Ok(Var::indexed(name, idx))
        } else {
            Ok(Var::new(name))
        }
    }

    fn atom(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ScalarExpr::rational(Q::from_integer(self.big_integer()?))),
            Some(_) => {
                let at = self.offset();
                let name = self.ident().ok_or_else(|| self.err("unexpected character"))?;
                match name.as_str() {
                    "pi" => {
                        let r = ScalarExpr::sqrt_pi();
                        Ok(&r * &r)
                    }
                    "sin" | "cos" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        let lin = arg.as_integer_linear().ok_or(Error::Parse {
                            pos: at,
                            msg: "trigonometric argument must be an integer combination of coordinates".into(),
                        })?;
                        Ok(trig_of_linear(&name, &lin))
                    }
                    "exp" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        exp_of(&arg).ok_or(Error::Parse { pos: at, msg: "exp accepts rational constants and -c*v^2 terms".into() })
                    }
                    "sqrt" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        sqrt_of(&arg).ok_or(Error::Parse { pos: at, msg: "sqrt accepts non-negative rationals times powers of pi".into() })
                    }
                    "d" if self.peek_raw() == Some('[') => {
                        self.pos += 1;
                        let mut deriv = Vec::new();
                        loop {
                            let n = self.integer()?;
                            deriv.push(u32::try_from(n).map_err(|_| self.err("derivative order too large"))?);
                            if self.eat(',') {
                                continue;
                            }
                            self.expect(']')?;
                            break;
                        }
                        let fname = self.ident().ok_or_else(|| self.err("expected function name"))?;
                        let args = self.args()?;
                        if args.len() != deriv.len() {
                            return Err(Error::Parse { pos: at, msg: "derivative multi-index length differs from arity".into() });
                        }
                        Ok(ScalarExpr::func(FuncAtom { name: fname.as_str().into(), args, deriv }))
                    }
                    _ => {
                        if self.peek_raw() == Some('(') {
                            let args = self.args()?;
                            let n = args.len();
                            Ok(ScalarExpr::func(FuncAtom { name: name.as_str().into(), args, deriv: alloc::vec![0; n] }))
                        } else {
                            Ok(ScalarExpr::var(self.var_suffix(&name)?))
                        }
                    }
                }
            }
        }
    }
}

fn trig_of_linear(which: &str, lin: &[(Var, BigInt)]) -> ScalarExpr {
    // Substitute into the atom cos(u)/sin(u) of a fresh placeholder.
    let u = Var::new("\u{0}u");
    let atom = if which == "sin" { ScalarExpr::sin(u.clone()) } else { ScalarExpr::cos(u.clone()) };
    let mut img = ScalarExpr::zero();
    for (v, n) in lin {
        img += ScalarExpr::var(v.clone()).scale(&Q::from_integer(n.clone()));
    }
    let mut map = alloc::collections::BTreeMap::new();
    map.insert(u, img);
    atom.subs(&map).expect("linear trig argument")
}

/// Inverse of a single-term expression free of coordinates.
pub(crate) fn invert_constant(e: &ScalarExpr) -> Option<ScalarExpr> {
    if e.len() != 1 {
        return None;
    }
    let (m, c) = e.terms().next()?;
    if !m.vars().is_empty() || !m.trig().is_empty() || !m.funcs().is_empty() || c.is_zero() {
        return None;
    }
    let k = m.konst();
    let mut out = ScalarExpr::rational(c.recip());
    for (v, g) in m.gauss() {
        out = &out * &ScalarExpr::gauss(v.clone(), -g.clone());
    }
    out = &out * &ScalarExpr::sqrt_pi_pow(-k.sqrt_pi);
    if !k.radicand.is_one() {
        // 1/√d = √d/d
        let d = Q::from_integer(BigInt::from(k.radicand.clone()));
        let s = ScalarExpr::sqrt_rational(&d).ok()?;
        out = &out * &s.scale(&d.recip());
    }
    if !k.exp.is_zero() {
        out = &out * &ScalarExpr::exp_rational(-k.exp.clone());
    }
    Some(out)
}

fn exp_of(arg: &ScalarExpr) -> Option<ScalarExpr> {
    let mut out = ScalarExpr::one();
    for (m, c) in arg.terms() {
        if m.is_one() {
            out = &out * &ScalarExpr::exp_rational(c.clone());
            continue;
        }
        if !m.is_polynomial() || m.vars().len() != 1 {
            return None;
        }
        let (v, &k) = m.vars().iter().next()?;
        if k != 2 {
            return None;
        }
        out = &out * &ScalarExpr::gauss(v.clone(), -c.clone());
    }
    Some(out)
}

fn sqrt_of(arg: &ScalarExpr) -> Option<ScalarExpr> {
    if arg.is_zero() {
        return Some(ScalarExpr::zero());
    }
    if arg.len() != 1 {
        return None;
    }
    let (m, c) = arg.terms().next()?;
    if c.is_negative() || !m.vars().is_empty() || !m.trig().is_empty() || !m.funcs().is_empty() || !m.gauss().is_empty() {
        return None;
    }
    let k = m.konst();
    if !k.radicand.is_one() || k.sqrt_pi % 2 != 0 {
        return None;
    }
    let mut out = ScalarExpr::sqrt_rational(c).ok()?;
    out = &out * &ScalarExpr::sqrt_pi_pow(k.sqrt_pi / 2);
    if !k.exp.is_zero() {
        out = &out * &ScalarExpr::exp_rational(k.exp.clone() / Q::from_integer(BigInt::from(2)));
    }
    Some(out)
}

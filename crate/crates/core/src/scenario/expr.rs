//! Small complex-valued expression language for boundary data and
//! coefficient functions.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use crate::conformal_plane::Mobius;
use crate::error::{Error, Result};

/// Function names understood by the parser, with their arity.
pub const FUNCTIONS: [(&str, usize); 13] = [
    ("abs", 1),
    ("arg", 1),
    ("conj", 1),
    ("cos", 1),
    ("exp", 1),
    ("im", 1),
    ("ln", 1),
    ("mobius", 3),
    ("re", 1),
    ("sin", 1),
    ("sqrt", 1),
    ("tan", 1),
    ("cis", 1),
];

/// Bound variables: `t` (alias `theta`) and the point `z = x + iy`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Vars {
    pub t: f64,
    pub z: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(Complex64),
    T,
    Z,
    X,
    Y,
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Call(&'static str, Vec<Node>),
}

/// Parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    root: Node,
    source: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| Error::Config(format!("bad number '{text}' in '{src}'")))?;
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Config(format!(
                "unexpected character '{c}' in '{src}'"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Config(format!("{what} at token {} in '{}'", self.pos, self.src))
    }

    fn peek_op(&self, c: char) -> bool {
        self.toks.get(self.pos) == Some(&Tok::Op(c))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while self.peek_op('+') || self.peek_op('-') {
            let Tok::Op(op) = self.toks[self.pos] else {
                unreachable!()
            };
            self.pos += 1;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while self.peek_op('*') || self.peek_op('/') {
            let Tok::Op(op) = self.toks[self.pos] else {
                unreachable!()
            };
            self.pos += 1;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.peek_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            return Ok(Node::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Node::Num(Complex64::new(v, 0.0))),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected '{c}'"))),
            Tok::Ident(name) => {
                if self.peek_op('(') {
                    let (fname, arity) = FUNCTIONS
                        .iter()
                        .find(|(f, _)| *f == name)
                        .copied()
                        .ok_or_else(|| {
                            Error::Config(format!("unknown function '{name}' in '{}'", self.src))
                        })?;
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek_op(',') {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    if args.len() != arity {
                        return Err(Error::Config(format!(
                            "{fname} takes {arity} argument(s) in '{}'",
                            self.src
                        )));
                    }
                    return Ok(Node::Call(fname, args));
                }
                match name.as_str() {
                    "t" | "theta" => Ok(Node::T),
                    "z" => Ok(Node::Z),
                    "x" => Ok(Node::X),
                    "y" => Ok(Node::Y),
                    "i" => Ok(Node::Num(Complex64::new(0.0, 1.0))),
                    "pi" => Ok(Node::Num(Complex64::new(PI, 0.0))),
                    "e" => Ok(Node::Num(Complex64::new(E, 0.0))),
                    _ => Err(Error::Config(format!(
                        "unknown variable '{name}' in '{}'",
                        self.src
                    ))),
                }
            }
        }
    }
}

fn pow(b: Complex64, e: Complex64) -> Complex64 {
    if e.im == 0.0 {
        if e.re.fract() == 0.0 && e.re.abs() <= 64.0 {
            return b.powi(e.re as i32);
        }
        if b.im == 0.0 && b.re >= 0.0 {
            return Complex64::new(b.re.powf(e.re), 0.0);
        }
        return b.powf(e.re);
    }
    b.powc(e)
}

fn eval(n: &Node, v: &Vars) -> Complex64 {
    match n {
        Node::Num(c) => *c,
        Node::T => Complex64::new(v.t, 0.0),
        Node::Z => v.z,
        Node::X => Complex64::new(v.z.re, 0.0),
        Node::Y => Complex64::new(v.z.im, 0.0),
        Node::Neg(a) => -eval(a, v),
        Node::Bin(op, a, b) => {
            let (a, b) = (eval(a, v), eval(b, v));
            match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                '/' => a / b,
                _ => pow(a, b),
            }
        }
        Node::Call(f, args) => {
            let a = eval(&args[0], v);
            let real = |x: f64| Complex64::new(x, 0.0);
            match *f {
                "abs" => real(a.norm()),
                "arg" => real(a.arg()),
                "conj" => a.conj(),
                "cos" => a.cos(),
                "exp" => a.exp(),
                "im" => real(a.im),
                "ln" => a.ln(),
                "re" => real(a.re),
                "sin" => a.sin(),
                "sqrt" => {
                    if a.im == 0.0 && a.re >= 0.0 {
                        real(a.re.sqrt())
                    } else {
                        a.sqrt()
                    }
                }
                "tan" => a.tan(),
                "cis" => (Complex64::new(0.0, 1.0) * a).exp(),
                "mobius" => {
                    let theta = eval(&args[1], v).re;
                    let w = eval(&args[2], v);
                    match Mobius::new(a, theta) {
                        Ok(m) => m.eval(w),
                        Err(_) => Complex64::new(f64::NAN, f64::NAN),
                    }
                }
                _ => unreachable!("function table is closed"),
            }
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return Err(Error::Config("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0, src };
        let root = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(Expr {
            root,
            source: src.to_string(),
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, vars: &Vars) -> Complex64 {
        eval(&self.root, vars)
    }

    /// Evaluation on the unit circle: `t` is the angle and `z = e^{it}`.
    pub fn on_circle(&self, t: f64) -> Complex64 {
        self.eval(&Vars {
            t,
            z: Complex64::from_polar(1.0, t),
        })
    }

    /// Evaluation at a planar point with `t = arg z`.
    pub fn at_point(&self, z: Complex64) -> Complex64 {
        self.eval(&Vars { t: z.arg(), z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(src: &str, t: f64) -> Complex64 {
        Expr::parse(src).unwrap().on_circle(t)
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(at("1 + 2 * 3", 0.0), Complex64::new(7.0, 0.0));
        assert_eq!(at("-2^2", 0.0), Complex64::new(-4.0, 0.0));
        assert_eq!(at("2^3^2", 0.0), Complex64::new(512.0, 0.0));
        assert_eq!(at("(1 + i) * (1 - i)", 0.0), Complex64::new(2.0, 0.0));
        assert_eq!(at("1.5e-1 * 2", 0.0), Complex64::new(0.3, 0.0));
    }

    #[test]
    fn circle_variables() {
        let t = 0.7;
        assert!((at("z", t) - Complex64::from_polar(1.0, t)).norm() < 1e-15);
        assert!(
            (at("exp(i*(t + 0.3*sin(t)))", t) - Complex64::from_polar(1.0, t + 0.3 * t.sin()))
                .norm()
                < 1e-15
        );
        assert!((at("abs(t)^0.5", -0.25) - 0.5).norm() < 1e-15);
        assert!((at("cis(theta)", t) - at("z", t)).norm() < 1e-15);
        assert!((at("x^2 - y^2", t) - (z2(t))).norm() < 1e-14);
    }

    fn z2(t: f64) -> Complex64 {
        Complex64::new((2.0 * t).cos(), 0.0)
    }

    #[test]
    fn mobius_primitive() {
        let v = at("mobius(0.5, 0, 0)", 0.0);
        assert!((v - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn errors_are_config_errors() {
        for bad in [
            "",
            "1 +",
            "foo",
            "sin(1, 2)",
            "nope(1)",
            "(1",
            "1 $ 2",
            "1 2",
        ] {
            assert!(matches!(Expr::parse(bad), Err(Error::Config(_))), "{bad}");
        }
    }
}

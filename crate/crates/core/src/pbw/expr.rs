//! Prefix expression language for building algebra elements.
//!
//! ```text
//! expr  := atom | "(" op expr* ")"
//! atom  := rational | "h" | "w" | "E" | "Ap" | "N" | "A" | "Q" | "1"
//! op    := "+" | "-" | "*" | "exp" | "inv" | "pow" | "tensor" | "flip"
//!        | "sinhc" | "expm1c" | "log1pc"
//! ```
//!
//! * `(* x y ...)` is the ordered product; a scalar (multiple of the identity) times a
//!   tensor scales it.
//! * `(sinhc p x)` is `sinh(p x)/p`, `(expm1c p x)` is `(e^{p x} - 1)/p` and
//!   `(log1pc p x)` is `ln(1 + p x)/p`, with `p` one of `h`, `w`. These are expanded
//!   as series and never divide.
//! * `(exp x)` needs every coefficient of `x` to vanish at zeroth order.
//! * `Q` abbreviates `(1 - e^{-w Ap})/w`.
//! * `(tensor x y [z])` forms a pure tensor of PBW elements; `(flip t)` swaps the
//!   factors of an arity-2 tensor.
//!
//! Example: `(exp (* 2 h (tensor (* (exp (* h E)) A) Q)))`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebra::{polynomial_generic, Algebra};
use super::element::{Generator, PbwElement, TensorElement};
use crate::error::{Error, Result};
use crate::series::{inv_factorial, Param, TruncatedSeries};

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Pbw(PbwElement),
    Tensor(TensorElement),
}

impl Value {
    pub fn into_pbw(self) -> Option<PbwElement> {
        match self {
            Value::Pbw(x) => Some(x),
            Value::Tensor(_) => None,
        }
    }

    pub fn into_tensor(self) -> Option<TensorElement> {
        match self {
            Value::Tensor(t) => Some(t),
            Value::Pbw(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Pbw(x) => x.is_zero(),
            Value::Tensor(t) => t.is_zero(),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Pbw(x) => x.fmt(f),
            Value::Tensor(t) => t.fmt(f),
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Atom(String, usize),
    List(Vec<Node>, usize),
}

impl Node {
    fn pos(&self) -> usize {
        match self {
            Node::Atom(_, p) | Node::List(_, p) => *p,
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Expr {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if !cur.is_empty() {
                out.push((std::mem::take(&mut cur), start));
            }
            if !ch.is_whitespace() {
                out.push((ch.to_string(), i));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push((cur, start));
    }
    out
}

fn parse_node(tokens: &[(String, usize)], idx: &mut usize, end: usize) -> Result<Node> {
    let Some((tok, pos)) = tokens.get(*idx) else {
        return Err(err(end, "unexpected end of input"));
    };
    *idx += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*idx) {
                    None => return Err(err(end, "unclosed parenthesis")),
                    Some((t, _)) if t == ")" => {
                        *idx += 1;
                        break;
                    }
                    Some(_) => items.push(parse_node(tokens, idx, end)?),
                }
            }
            if items.is_empty() {
                return Err(err(*pos, "empty form"));
            }
            Ok(Node::List(items, *pos))
        }
        ")" => Err(err(*pos, "unexpected ')'")),
        _ => Ok(Node::Atom(tok.clone(), *pos)),
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parses and evaluates `src` in `alg`.
pub fn build(alg: &Algebra, src: &str) -> Result<Value> {
    let tokens = tokenize(src);
    let mut idx = 0;
    let node = parse_node(&tokens, &mut idx, src.len())?;
    if let Some((_, pos)) = tokens.get(idx) {
        return Err(err(*pos, "trailing input"));
    }
    eval(alg, &node)
}

fn eval(alg: &Algebra, node: &Node) -> Result<Value> {
    match node {
        Node::Atom(s, pos) => eval_atom(alg, s, *pos),
        Node::List(items, pos) => {
            let Node::Atom(op, _) = &items[0] else {
                return Err(err(*pos, "operator expected"));
            };
            let args = &items[1..];
            match op.as_str() {
                "+" => {
                    let mut acc = Value::Pbw(alg.zero());
                    for a in args {
                        acc = add(&acc, &eval(alg, a)?, a.pos())?;
                    }
                    Ok(acc)
                }
                "-" => match args {
                    [] => Err(err(*pos, "'-' needs an argument")),
                    [x] => Ok(negate(eval(alg, x)?)),
                    [x, rest @ ..] => {
                        let mut acc = eval(alg, x)?;
                        for a in rest {
                            acc = add(&acc, &negate(eval(alg, a)?), a.pos())?;
                        }
                        Ok(acc)
                    }
                },
                "*" => {
                    let mut acc = Value::Pbw(alg.one());
                    for a in args {
                        acc = mul(alg, &acc, &eval(alg, a)?, a.pos())?;
                    }
                    Ok(acc)
                }
                "exp" => {
                    let [x] = args else {
                        return Err(err(*pos, "exp takes one argument"));
                    };
                    match eval(alg, x)? {
                        Value::Pbw(v) => alg.exp(&v).map(Value::Pbw),
                        Value::Tensor(t) => alg.tensor_exp(&t).map(Value::Tensor),
                    }
                    .map_err(|e| match e {
                        Error::NotNilpotent => {
                            err(x.pos(), "exponential argument is not truncation-nilpotent")
                        }
                        other => other,
                    })
                }
                "inv" => {
                    let [x] = args else {
                        return Err(err(*pos, "inv takes one argument"));
                    };
                    match eval(alg, x)? {
                        Value::Pbw(v) => alg.inverse(&v).map(Value::Pbw),
                        Value::Tensor(t) => alg.tensor_inverse(&t).map(Value::Tensor),
                    }
                }
                "pow" => {
                    let [x, n] = args else {
                        return Err(err(*pos, "pow takes two arguments"));
                    };
                    let Node::Atom(ns, npos) = n else {
                        return Err(err(n.pos(), "exponent must be a literal"));
                    };
                    let k: u32 = ns.parse().map_err(|_| err(*npos, "bad exponent"))?;
                    let v = eval(alg, x)?;
                    let coeffs: Vec<TruncatedSeries> = (0..=k)
                        .map(|i| {
                            if i == k {
                                TruncatedSeries::one(alg.truncation())
                            } else {
                                TruncatedSeries::zero(alg.truncation())
                            }
                        })
                        .collect();
                    apply_poly(alg, &v, &coeffs)
                }
                "tensor" => {
                    if !(2..=3).contains(&args.len()) {
                        return Err(err(*pos, "tensor takes two or three arguments"));
                    }
                    let mut factors = Vec::new();
                    for a in args {
                        match eval(alg, a)? {
                            Value::Pbw(v) => factors.push(v),
                            Value::Tensor(_) => {
                                return Err(err(a.pos(), "tensor factors must be PBW elements"))
                            }
                        }
                    }
                    let refs: Vec<&PbwElement> = factors.iter().collect();
                    TensorElement::pure(&refs).map(Value::Tensor)
                }
                "flip" => {
                    let [x] = args else {
                        return Err(err(*pos, "flip takes one argument"));
                    };
                    match eval(alg, x)? {
                        Value::Tensor(t) => t.flip().map(Value::Tensor),
                        Value::Pbw(_) => Err(err(x.pos(), "flip needs an arity-2 tensor")),
                    }
                }
                "sinhc" | "expm1c" | "log1pc" => {
                    let [p, x] = args else {
                        return Err(err(*pos, format!("{op} takes a parameter and an argument")));
                    };
                    let param = match p {
                        Node::Atom(s, _) if s == "h" => Param::H,
                        Node::Atom(s, _) if s == "w" => Param::W,
                        _ => return Err(err(p.pos(), "parameter must be h or w")),
                    };
                    let v = eval(alg, x)?;
                    let coeffs = special_coeffs(alg, op, param);
                    apply_poly(alg, &v, &coeffs)
                }
                _ => Err(err(items[0].pos(), format!("unknown operator '{op}'"))),
            }
        }
    }
}

/// Taylor coefficients of `sinh(p x)/p`, `(e^{p x}-1)/p`, `ln(1+p x)/p` in `x`.
fn special_coeffs(alg: &Algebra, op: &str, p: Param) -> Vec<TruncatedSeries> {
    let trunc = alg.truncation();
    let order = trunc.order(p);
    // the coefficient of x^k carries p^{k-1}, so k <= order suffices
    (0..=order)
        .map(|k| {
            if k == 0 {
                return TruncatedSeries::zero(trunc);
            }
            let c = match op {
                "sinhc" if k % 2 == 1 => inv_factorial(k),
                "sinhc" => return TruncatedSeries::zero(trunc),
                "expm1c" => inv_factorial(k),
                _ => {
                    let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
                    BigRational::new(sign.into(), k.into())
                }
            };
            let (a, b) = match p {
                Param::H => (k - 1, 0),
                Param::W => (0, k - 1),
            };
            TruncatedSeries::monomial(c, a, b, trunc)
        })
        .collect()
}

fn apply_poly(alg: &Algebra, v: &Value, coeffs: &[TruncatedSeries]) -> Result<Value> {
    match v {
        Value::Pbw(x) => polynomial_generic(alg, x, coeffs).map(Value::Pbw),
        Value::Tensor(t) => polynomial_generic(alg, t, coeffs).map(Value::Tensor),
    }
}

fn eval_atom(alg: &Algebra, s: &str, pos: usize) -> Result<Value> {
    let v = match s {
        "h" => alg.param(Param::H),
        "w" => alg.param(Param::W),
        "E" => alg.gen(Generator::E),
        "Ap" => alg.gen(Generator::Ap),
        "N" => alg.gen(Generator::N),
        "A" => alg.gen(Generator::A),
        "Q" => alg.q_element(),
        _ => match parse_rational(s) {
            Some(q) => alg.rational(q),
            None => return Err(err(pos, format!("unknown symbol '{s}'"))),
        },
    };
    Ok(Value::Pbw(v))
}

fn negate(v: Value) -> Value {
    match v {
        Value::Pbw(x) => Value::Pbw(x.neg()),
        Value::Tensor(t) => Value::Tensor(t.neg()),
    }
}

fn promote(x: &PbwElement, arity: usize, pos: usize) -> Result<TensorElement> {
    if !x.is_scalar() {
        return Err(err(pos, "cannot combine a non-scalar PBW element with a tensor"));
    }
    Ok(TensorElement::one(arity, x.truncation()).scale(&x.identity_coeff()))
}

fn add(x: &Value, y: &Value, pos: usize) -> Result<Value> {
    match (x, y) {
        (Value::Pbw(a), Value::Pbw(b)) => a.add(b).map(Value::Pbw),
        (Value::Tensor(a), Value::Tensor(b)) => a.add(b).map(Value::Tensor),
        (Value::Pbw(a), Value::Tensor(b)) => promote(a, b.arity(), pos)?.add(b).map(Value::Tensor),
        (Value::Tensor(a), Value::Pbw(b)) => a.add(&promote(b, a.arity(), pos)?).map(Value::Tensor),
    }
}

fn mul(alg: &Algebra, x: &Value, y: &Value, pos: usize) -> Result<Value> {
    match (x, y) {
        (Value::Pbw(a), Value::Pbw(b)) => alg.mul(a, b).map(Value::Pbw),
        (Value::Tensor(a), Value::Tensor(b)) => alg.tensor_mul(a, b).map(Value::Tensor),
        (Value::Pbw(a), Value::Tensor(b)) => {
            alg.tensor_mul(&promote(a, b.arity(), pos)?, b).map(Value::Tensor)
        }
        (Value::Tensor(a), Value::Pbw(b)) => {
            alg.tensor_mul(a, &promote(b, a.arity(), pos)?).map(Value::Tensor)
        }
    }
}

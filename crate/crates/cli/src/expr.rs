//! Construction expressions such as `compose1(vloom(3), swap(gridloom(2)))`.

use std::fmt;

use loomlab::loom::Loom;
use loomlab::weave::{
    blow_up_loom, complete_bipartite, complete_graph, compose1_with, compose2_with, fano_plane, graph_loom_with,
    grid_loom, loom_u, loom_v, matching_transversal_loom, petersen, r2_loom, triangle_blowup, vane_33, BlowupSpec,
    Verify, WeaveError,
};
use loomlab::{Graph, Hypergraph};

/// A parse or evaluation error at a 1-based character column.
#[derive(Debug)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

#[derive(Debug)]
pub enum EvalError {
    Expr(ExprError),
    Weave(WeaveError),
    Io(String),
}

impl From<ExprError> for EvalError {
    fn from(e: ExprError) -> Self {
        EvalError::Expr(e)
    }
}

#[derive(Debug, Clone)]
enum Arg {
    Num(usize, usize),
    Call(Call),
    Path(String, usize),
}

#[derive(Debug, Clone)]
struct Call {
    name: String,
    pos: usize,
    args: Vec<Arg>,
}

impl Arg {
    fn pos(&self) -> usize {
        match self {
            Arg::Num(_, p) | Arg::Path(_, p) => *p,
            Arg::Call(c) => c.pos,
        }
    }
}

struct Parser {
    chars: Vec<char>,
    at: usize,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { column, message: message.into() })
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => err(self.at + 1, format!("expected '{want}', found '{c}'")),
            None => err(self.at + 1, format!("expected '{want}', found end of input")),
        }
    }

    fn call(&mut self) -> Result<Call, ExprError> {
        let start = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.at,
            Some(c) => return err(self.at + 1, format!("expected a name, found '{c}'")),
            None => return err(self.at + 1, "expected a name, found end of input"),
        };
        while self.chars.get(self.at).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.at += 1;
        }
        let name: String = self.chars[start..self.at].iter().collect();
        let mut args = Vec::new();
        if self.peek() == Some('(') {
            self.at += 1;
            if name == "blowup" {
                args.push(self.path()?);
            } else if self.peek() != Some(')') {
                loop {
                    args.push(self.arg()?);
                    if self.peek() == Some(',') {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(')')?;
        }
        Ok(Call { name, pos: start + 1, args })
    }

    fn arg(&mut self) -> Result<Arg, ExprError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.at;
                while self.chars.get(self.at).is_some_and(char::is_ascii_digit) {
                    self.at += 1;
                }
                let text: String = self.chars[start..self.at].iter().collect();
                match text.parse() {
                    Ok(v) => Ok(Arg::Num(v, start + 1)),
                    Err(_) => err(start + 1, format!("number {text} is too large")),
                }
            }
            _ => Ok(Arg::Call(self.call()?)),
        }
    }

    /// A quoted string, or everything up to the closing parenthesis with surrounding blanks trimmed.
    fn path(&mut self) -> Result<Arg, ExprError> {
        let pos = self.at + 1;
        if self.peek() == Some('"') {
            let start = self.at + 1;
            match self.chars[start..].iter().position(|&c| c == '"') {
                Some(len) => {
                    self.at = start + len + 1;
                    return Ok(Arg::Path(self.chars[start..start + len].iter().collect(), start + 1));
                }
                None => return err(pos, "unterminated string"),
            }
        }
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|&c| c != ')') {
            self.at += 1;
        }
        let text: String = self.chars[start..self.at].iter().collect::<String>().trim().to_string();
        if text.is_empty() {
            return err(start + 1, "expected a file path");
        }
        Ok(Arg::Path(text, start + 1))
    }
}

/// The value an expression evaluates to.
pub enum Value {
    Loom(Loom),
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Loom(_) => "a loom",
            Value::Graph(_) => "a graph",
            Value::Hypergraph(_) => "a hypergraph",
        }
    }
}

pub fn parse_and_eval(src: &str, mode: &Verify) -> Result<Value, EvalError> {
    let mut p = Parser { chars: src.chars().collect(), at: 0 };
    let call = p.call()?;
    if let Some(c) = p.peek() {
        return Err(ExprError { column: p.at + 1, message: format!("unexpected '{c}' after expression") }.into());
    }
    eval(&call, mode)
}

fn arity(c: &Call, n: usize) -> Result<(), ExprError> {
    if c.args.len() == n {
        Ok(())
    } else {
        err(c.pos, format!("{} takes {n} argument{}, got {}", c.name, if n == 1 { "" } else { "s" }, c.args.len()))
    }
}

fn num(a: &Arg) -> Result<usize, ExprError> {
    match a {
        Arg::Num(v, _) => Ok(*v),
        other => err(other.pos(), "expected a number"),
    }
}

fn sub(a: &Arg, mode: &Verify) -> Result<(Value, usize), EvalError> {
    match a {
        Arg::Call(c) => Ok((eval(c, mode)?, c.pos)),
        other => Err(ExprError { column: other.pos(), message: "expected an expression".into() }.into()),
    }
}

fn loom_arg(a: &Arg, mode: &Verify) -> Result<Loom, EvalError> {
    match sub(a, mode)? {
        (Value::Loom(l), _) => Ok(l),
        (v, pos) => Err(ExprError { column: pos, message: format!("expected a loom, found {}", v.kind()) }.into()),
    }
}

fn graph_arg(a: &Arg, mode: &Verify) -> Result<Graph, EvalError> {
    match sub(a, mode)? {
        (Value::Graph(g), _) => Ok(g),
        (v, pos) => Err(ExprError { column: pos, message: format!("expected a graph, found {}", v.kind()) }.into()),
    }
}

const NAMES: &str = "loomU, vloom, mtloom, gridloom, vane33, r2loom, kgraph, kbip, petersen, fano, trblow, graphloom, swap, compose1, compose2, blowup";

fn eval(c: &Call, mode: &Verify) -> Result<Value, EvalError> {
    let w = EvalError::Weave;
    let opts = match mode {
        Verify::Budgeted(o) => o.clone(),
        _ => Default::default(),
    };
    Ok(match c.name.as_str() {
        "loomU" => {
            arity(c, 0)?;
            Value::Loom(loom_u())
        }
        "vloom" => {
            arity(c, 1)?;
            Value::Loom(loom_v(num(&c.args[0])?).map_err(w)?)
        }
        "mtloom" => {
            arity(c, 2)?;
            Value::Loom(matching_transversal_loom(num(&c.args[0])?, num(&c.args[1])?).map_err(w)?)
        }
        "gridloom" => {
            arity(c, 1)?;
            Value::Loom(grid_loom(num(&c.args[0])?).map_err(w)?)
        }
        "vane33" => {
            arity(c, 0)?;
            Value::Loom(vane_33())
        }
        "r2loom" => {
            if c.args.is_empty() {
                return Err(ExprError { column: c.pos, message: "r2loom needs at least one block size".into() }.into());
            }
            let q = c.args.iter().map(num).collect::<Result<Vec<_>, _>>()?;
            Value::Loom(r2_loom(&q).map_err(w)?)
        }
        "kgraph" => {
            arity(c, 1)?;
            Value::Graph(complete_graph(num(&c.args[0])?))
        }
        "kbip" => {
            arity(c, 1)?;
            Value::Graph(complete_bipartite(num(&c.args[0])?))
        }
        "petersen" => {
            arity(c, 0)?;
            Value::Graph(petersen())
        }
        "fano" => {
            arity(c, 0)?;
            Value::Hypergraph(fano_plane())
        }
        "trblow" => {
            arity(c, 1)?;
            Value::Graph(triangle_blowup(&graph_arg(&c.args[0], mode)?).map_err(w)?)
        }
        "graphloom" => {
            arity(c, 1)?;
            Value::Loom(graph_loom_with(&graph_arg(&c.args[0], mode)?, &opts).map_err(w)?)
        }
        "swap" => {
            arity(c, 1)?;
            Value::Loom(loom_arg(&c.args[0], mode)?.swap())
        }
        "compose1" | "compose2" => {
            arity(c, 2)?;
            let (l1, l2) = (loom_arg(&c.args[0], mode)?, loom_arg(&c.args[1], mode)?);
            let out = if c.name == "compose1" { compose1_with(&l1, &l2, mode) } else { compose2_with(&l1, &l2, mode) };
            Value::Loom(out.map_err(w)?)
        }
        "blowup" => {
            arity(c, 1)?;
            let Arg::Path(path, _) = &c.args[0] else { unreachable!("blowup takes a path") };
            let text = std::fs::read_to_string(path).map_err(|e| EvalError::Io(format!("{path}: {e}")))?;
            let spec = BlowupSpec::from_json(&text).map_err(w)?;
            Value::Loom(blow_up_loom(&spec, mode).map_err(w)?)
        }
        other => {
            return Err(ExprError { column: c.pos, message: format!("unknown name '{other}'; expected one of {NAMES}") }.into())
        }
    })
}

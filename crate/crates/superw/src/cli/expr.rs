//! A small expression language over the reduced complex, its Zhu algebra and the
//! Takiff enveloping algebra.
//!
//! `d0(X)`, `D(X)`, `miura(X)`, `lambda(A, B)`, `Lambda(A, B)`, `zhu(X)`, `Q(X)`,
//! `reduce(X)`, `ad(n, X)` and `omega(NAME)`; anything else is a polynomial in the reduced
//! complex. Without an explicit flavor the SUSY complex is tried first.

use serde::Serialize;
use thiserror::Error;

use super::golden::err;
use super::{same_algebra, AlgebraSource, RunConfig};
use crate::brst::{Complex, ComplexSpec, Flavor, Reduced};
use crate::env::{adjoint_action, reduce_mod_ideal, EnvElement, NilCharacter, TakiffAlgebra};
use crate::liealg::{builtin, load_spec, osp12, osp12_x, AlgebraSpec};
use crate::scalar::Scalar;
use crate::vertex::{Embedding, Factor, LambdaPoly, VertexAlgebra, VertexPoly};
use crate::zhu::{InducedQ, ZhuAlgebra, ZhuElement};

/// Version tag of the structured `compute` output.
pub const COMPUTE_SCHEMA: &str = "superw-compute/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at byte {pos}: {msg}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl ExprError {
    fn at(pos: usize, msg: impl Into<String>) -> ExprError {
        ExprError { pos, msg: msg.into() }
    }

    /// Errors that do not come from the input text.
    pub fn is_setup(&self) -> bool {
        self.pos == usize::MAX
    }
}

fn setup(e: impl std::fmt::Display) -> ExprError {
    ExprError::at(usize::MAX, err(e))
}

/// The result of one evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub schema: String,
    pub algebra: String,
    pub flavor: String,
    pub input: String,
    /// `vertex`, `miura`, `lambda`, `zhu` or `env`.
    pub kind: String,
    pub result: String,
}

/// A sub-expression together with its byte offset in the input.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), pos: self.pos + lead }
    }

    /// `name(args)` with the closing parenthesis at the very end.
    fn call(self) -> Result<Option<(&'a str, Vec<Span<'a>>)>, ExprError> {
        let Some(open) = self.text.find('(') else { return Ok(None) };
        let name = &self.text[..open];
        if !FUNCTIONS.contains(&name) {
            return Ok(None);
        }
        if !self.text.ends_with(')') {
            return Err(ExprError::at(self.pos + self.text.len(), format!("expected `)` closing {}(", name)));
        }
        let inner = &self.text[open + 1..self.text.len() - 1];
        let mut args = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(ExprError::at(self.pos + open + 1 + i, "unbalanced bracket"));
                    }
                }
                ',' if depth == 0 => {
                    args.push(Span { text: &inner[start..i], pos: self.pos + open + 1 + start }.trim());
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(ExprError::at(self.pos + self.text.len() - 1, "unbalanced bracket"));
        }
        args.push(Span { text: &inner[start..], pos: self.pos + open + 1 + start }.trim());
        Ok(Some((name, args)))
    }
}

const FUNCTIONS: [&str; 10] = ["d0", "D", "miura", "lambda", "Lambda", "zhu", "Q", "reduce", "ad", "omega"];

fn arity(name: &str, args: &[Span], n: usize, pos: usize) -> Result<(), ExprError> {
    if args.len() != n || args.iter().any(|a| a.text.is_empty()) {
        return Err(ExprError::at(pos, format!("{} takes {} argument(s)", name, n)));
    }
    Ok(())
}

fn fac(i: usize) -> VertexPoly {
    VertexPoly::factor(Factor::new(i, 0))
}

fn lambda_text(alg: &VertexAlgebra, l: &LambdaPoly) -> String {
    let mut parts = Vec::new();
    for (n, c) in l.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match n {
            0 => parts.push(format!("({})", alg.text(c))),
            1 => parts.push(format!("lambda*({})", alg.text(c))),
            _ => parts.push(format!("lambda^{}*({})", n, alg.text(c))),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

struct Context {
    g: AlgebraSpec,
    flavor: Flavor,
    two_cutoff: i64,
    cx: Complex,
    red: Reduced,
    target: Option<Embedding>,
    zhu: Option<(ZhuAlgebra, InducedQ)>,
    env: Option<(TakiffAlgebra, NilCharacter)>,
}

impl Context {
    fn new(cfg: &RunConfig, flavor: Flavor) -> Result<Context, ExprError> {
        let g = match &cfg.algebra {
            AlgebraSource::Builtin(n) => builtin(n).map_err(setup)?,
            AlgebraSource::File(p) => load_spec(p).map_err(setup)?,
            AlgebraSource::All => osp12(),
        };
        let g = match &cfg.corrupt {
            None => g,
            Some(a) => g.corrupted(a).ok_or_else(|| setup(format!("unknown corruption `{}`", a)))?,
        };
        let cx = Complex::new(ComplexSpec::new(&g, flavor).map_err(setup)?).map_err(setup)?;
        let red = Reduced::new(&cx).map_err(setup)?;
        Ok(Context { g, flavor, two_cutoff: cfg.two_cutoff, cx, red, target: None, zhu: None, env: None })
    }

    /// The cohomology generator whose linear part is `J[name]` with coefficient one.
    fn omega(&self, s: Span) -> Result<VertexPoly, ExprError> {
        let j = self.red.alg().index(&format!("J[{}]", s.text)).map_err(|e| ExprError::at(s.pos, err(e)))?;
        let mono = vec![Factor::new(j, 0)];
        for tw in 1..=self.two_cutoff {
            for w in self.red.cohomology_generators(tw).map_err(setup)? {
                let c = w.coeff(&mono);
                if !c.is_zero() {
                    return Ok(w.scale(&c.inv()));
                }
            }
        }
        Err(ExprError::at(s.pos, format!("no cohomology generator with linear term J[{}] up to the cutoff", s.text)))
    }

    fn vertex(&self, s: Span) -> Result<VertexPoly, ExprError> {
        let s = s.trim();
        if let Some((name, args)) = s.call()? {
            match name {
                "d0" => {
                    arity(name, &args, 1, s.pos)?;
                    return Ok(self.red.apply_d0(&self.vertex(args[0])?));
                }
                "D" => {
                    arity(name, &args, 1, s.pos)?;
                    if self.flavor != Flavor::Susy {
                        return Err(ExprError::at(s.pos, "D needs --flavor susy"));
                    }
                    return Ok(self.red.D(&self.vertex(args[0])?));
                }
                "omega" => {
                    arity(name, &args, 1, s.pos)?;
                    return self.omega(args[0]);
                }
                _ => return Err(ExprError::at(s.pos, format!("{} does not return a field", name))),
            }
        }
        if s.text.is_empty() {
            return Err(ExprError::at(s.pos, "empty expression"));
        }
        self.red.alg().parse(s.text, None).map_err(|e| ExprError::at(s.pos + e.pos, e.msg))
    }

    fn target(&mut self) -> Result<&Embedding, ExprError> {
        if self.target.is_none() {
            self.target = Some(self.red.miura_target(&self.cx).map_err(setup)?);
        }
        Ok(self.target.as_ref().unwrap())
    }

    fn zhu(&mut self) -> &(ZhuAlgebra, InducedQ) {
        if self.zhu.is_none() {
            let zhu = ZhuAlgebra::new(self.red.alg());
            let red = &self.red;
            let q = InducedQ::new(&zhu, &|i| red.apply_d0(&fac(i)));
            self.zhu = Some((zhu, q));
        }
        self.zhu.as_ref().unwrap()
    }

    fn zhu_elem(&mut self, s: Span) -> Result<ZhuElement, ExprError> {
        let s = s.trim();
        if let Some((name, args)) = s.call()? {
            match name {
                "zhu" => {
                    arity(name, &args, 1, s.pos)?;
                    let x = self.vertex(args[0])?;
                    return Ok(self.zhu().0.project(&x));
                }
                "Q" => {
                    arity(name, &args, 1, s.pos)?;
                    let x = self.zhu_elem(args[0])?;
                    let (zhu, q) = self.zhu();
                    return Ok(q.apply(zhu, &x));
                }
                _ => {}
            }
        }
        let x = self.vertex(s)?;
        Ok(self.zhu().0.project(&x))
    }

    fn env(&mut self) -> Result<&(TakiffAlgebra, NilCharacter), ExprError> {
        if self.env.is_none() {
            let pair = if same_algebra(&self.g, &osp12()) {
                let t = TakiffAlgebra::new(&osp12_x(), Scalar::one()).map_err(setup)?;
                let chi = NilCharacter::explicit(&t, &[("eb", -&Scalar::one())]).map_err(setup)?;
                (t, chi)
            } else {
                let t = TakiffAlgebra::new(&self.g, Scalar::one()).map_err(setup)?;
                let chi = NilCharacter::from_form(&t, &Scalar::one()).map_err(setup)?;
                (t, chi)
            };
            self.env = Some(pair);
        }
        Ok(self.env.as_ref().unwrap())
    }

    fn env_elem(&mut self, s: Span) -> Result<EnvElement, ExprError> {
        let s = s.trim();
        if let Some((name, args)) = s.call()? {
            match name {
                "reduce" => {
                    arity(name, &args, 1, s.pos)?;
                    let x = self.env_elem(args[0])?;
                    let (t, chi) = self.env()?;
                    return Ok(reduce_mod_ideal(t, &x, chi));
                }
                "ad" => {
                    arity(name, &args, 2, s.pos)?;
                    let x = self.env_elem(args[1])?;
                    let (t, chi) = self.env()?;
                    let n = t.env.index(args[0].text).map_err(|e| ExprError::at(args[0].pos, err(e)))?;
                    if !t.is_n(n) {
                        return Err(ExprError::at(args[0].pos, format!("{} is not in the nilpotent part", args[0].text)));
                    }
                    return Ok(adjoint_action(t, n, &x, chi));
                }
                _ => return Err(ExprError::at(s.pos, format!("{} does not return an enveloping algebra element", name))),
            }
        }
        let (t, _) = self.env()?;
        t.env.parse(s.text).map_err(|e| ExprError::at(s.pos, err(e)))
    }

    fn eval(&mut self, s: Span) -> Result<(String, String), ExprError> {
        let s = s.trim();
        let Some((name, args)) = s.call()? else {
            let x = self.vertex(s)?;
            return Ok(("vertex".into(), self.red.alg().text(&x)));
        };
        match name {
            "d0" | "D" | "omega" => {
                let x = self.vertex(s)?;
                Ok(("vertex".into(), self.red.alg().text(&x)))
            }
            "miura" => {
                arity(name, &args, 1, s.pos)?;
                let x = self.vertex(args[0])?;
                self.target()?;
                let target = self.target.as_ref().unwrap();
                Ok(("miura".into(), target.sub.text(&self.red.miura(target, &x))))
            }
            "lambda" => {
                arity(name, &args, 2, s.pos)?;
                let (a, b) = (self.vertex(args[0])?, self.vertex(args[1])?);
                let alg = self.red.alg();
                Ok(("lambda".into(), lambda_text(alg, &alg.lambda_bracket(&a, &b))))
            }
            "Lambda" => {
                arity(name, &args, 2, s.pos)?;
                if self.flavor != Flavor::Susy {
                    return Err(ExprError::at(s.pos, "Lambda needs --flavor susy"));
                }
                let (a, b) = (self.vertex(args[0])?, self.vertex(args[1])?);
                let alg = self.red.alg();
                let l = crate::susy::LambdaSuperPoly::new(alg.lambda_bracket(&self.red.D(&a), &b), alg.lambda_bracket(&a, &b));
                Ok(("lambda".into(), l.text(alg)))
            }
            "zhu" | "Q" => {
                let x = self.zhu_elem(s)?;
                Ok(("zhu".into(), self.zhu().0.text(&x)))
            }
            _ => {
                let x = self.env_elem(s)?;
                let (t, _) = self.env()?;
                Ok(("env".into(), t.env.text(&x)))
            }
        }
    }
}

fn evaluate_in(cfg: &RunConfig, flavor: Flavor, text: &str) -> Result<Evaluation, ExprError> {
    let mut ctx = Context::new(cfg, flavor)?;
    let (kind, result) = ctx.eval(Span { text, pos: 0 })?;
    Ok(Evaluation {
        schema: COMPUTE_SCHEMA.into(),
        algebra: ctx.g.name.clone(),
        flavor: ctx.flavor.to_string(),
        input: text.to_string(),
        kind,
        result,
    })
}

/// Evaluates one expression.
pub fn evaluate(cfg: &RunConfig, text: &str) -> Result<Evaluation, ExprError> {
    match cfg.flavor {
        Some(fl) => evaluate_in(cfg, fl, text),
        None => match evaluate_in(cfg, Flavor::Susy, text) {
            Err(e) if !e.is_setup() => evaluate_in(cfg, Flavor::NonSusy, text).map_err(|_| e),
            res => res,
        },
    }
}

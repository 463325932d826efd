//! Arithmetic expressions in one or two variables and their exact
//! derivatives through Taylor-mode jets.

mod ast;
mod jet;
mod parser;

pub use ast::{Ast, BinaryOp, Node, UnaryOp};
pub use jet::{Jet, Jet1, Jet2};
pub use parser::parse;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("arity error for '{name}' at offset {offset}: {message}")]
    Arity {
        name: String,
        offset: usize,
        message: String,
    },
    #[error("empty expression")]
    EmptyInput,
    #[error("domain error in {node} at argument {arg}")]
    Domain { node: String, arg: f64 },
    #[error("expression declares {found} variables, evaluator supports {max}")]
    VariableCount { found: usize, max: usize },
    #[error("derivative order {0} out of range 0..=3")]
    Order(usize),
}

impl ExprError {
    /// Byte offset for parse errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ExprError::Syntax { offset, .. }
            | ExprError::UnknownIdentifier { offset, .. }
            | ExprError::Arity { offset, .. } => Some(*offset),
            _ => None,
        }
    }

    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            ExprError::Syntax { .. }
                | ExprError::UnknownIdentifier { .. }
                | ExprError::Arity { .. }
                | ExprError::EmptyInput
        )
    }
}

fn domain(node: &str, arg: f64) -> ExprError {
    ExprError::Domain {
        node: node.to_string(),
        arg,
    }
}

/// `[f, f', f'', f''']` of a known function at `x`; `order` is the highest
/// derivative the caller will use.
fn unary_derivs(op: UnaryOp, x: f64, order: usize) -> Result<[f64; 4], ExprError> {
    let d = match op {
        UnaryOp::Neg => [-x, -1.0, 0.0, 0.0],
        UnaryOp::Sinh => {
            let (s, c) = (x.sinh(), x.cosh());
            [s, c, s, c]
        }
        UnaryOp::Cosh => {
            let (s, c) = (x.sinh(), x.cosh());
            [c, s, c, s]
        }
        UnaryOp::Tanh => {
            let t = x.tanh();
            let q = 1.0 - t * t;
            [t, q, -2.0 * t * q, q * (6.0 * t * t - 2.0)]
        }
        UnaryOp::Sin => {
            let (s, c) = x.sin_cos();
            [s, c, -s, -c]
        }
        UnaryOp::Cos => {
            let (s, c) = x.sin_cos();
            [c, -s, -c, s]
        }
        UnaryOp::Exp => {
            let e = x.exp();
            [e; 4]
        }
        UnaryOp::Ln => {
            if !(x > 0.0) {
                return Err(domain("ln", x));
            }
            let r = 1.0 / x;
            [x.ln(), r, -r * r, 2.0 * r * r * r]
        }
        UnaryOp::Sqrt => {
            if x < 0.0 || (x == 0.0 && order > 0) || x.is_nan() {
                return Err(domain("sqrt", x));
            }
            let r = x.sqrt();
            if order == 0 {
                [r, 0.0, 0.0, 0.0]
            } else {
                [r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)]
            }
        }
        UnaryOp::Abs => {
            if x == 0.0 && order > 0 {
                return Err(domain("abs", x));
            }
            [x.abs(), x.signum(), 0.0, 0.0]
        }
        UnaryOp::Asin => {
            if !(x.abs() < 1.0) && !(order == 0 && x.abs() == 1.0) {
                return Err(domain("asin", x));
            }
            let q = 1.0 - x * x;
            let r = 1.0 / q.sqrt();
            [x.asin(), r, x * r / q, (1.0 + 2.0 * x * x) * r / (q * q)]
        }
    };
    Ok(d)
}

fn pow_derivs(x: f64, p: f64, order: usize) -> Result<[f64; 4], ExprError> {
    let integer = p.fract() == 0.0 && p.abs() < 1e9;
    if !integer && (x < 0.0 || x.is_nan()) {
        return Err(domain("^", x));
    }
    let mut out = [0.0; 4];
    let mut coeff = 1.0;
    for (k, slot) in out.iter_mut().enumerate().take(order + 1) {
        if k > 0 {
            coeff *= p - (k - 1) as f64;
        }
        if coeff == 0.0 {
            break;
        }
        let e = p - k as f64;
        if x == 0.0 && e < 0.0 {
            return Err(domain("^", x));
        }
        *slot = coeff * if integer { x.powi(e as i32) } else { x.powf(e) };
    }
    Ok(out)
}

/// Evaluates `node` over jets; `vars[i]` seeds variable `i`.
pub fn eval_node<J: Jet>(node: &Node, vars: &[J]) -> Result<J, ExprError> {
    let proto = vars[0];
    let out = match node {
        Node::Const(c) => proto.constant_like(*c),
        Node::Var(i) => vars[*i],
        Node::Unary(UnaryOp::Neg, c) => eval_node(c, vars)?.scale(-1.0),
        Node::Unary(op, c) => {
            let a = eval_node(c, vars)?;
            a.chain(unary_derivs(*op, a.value(), a.order())?)
        }
        Node::Binary(op, l, r) => {
            let a = eval_node(l, vars)?;
            let b = eval_node(r, vars)?;
            match op {
                BinaryOp::Add => a.add(&b),
                BinaryOp::Sub => a.sub(&b),
                BinaryOp::Mul => a.mul(&b),
                BinaryOp::Div => {
                    let y = b.value();
                    if y == 0.0 {
                        return Err(domain("/", y));
                    }
                    let r = 1.0 / y;
                    let inv = b.chain([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]);
                    a.mul(&inv)
                }
            }
        }
        Node::Pow(b, p) => {
            let a = eval_node(b, vars)?;
            a.chain(pow_derivs(a.value(), *p, a.order())?)
        }
    };
    if !out.is_finite() {
        return Err(domain(node_label(node), out.value()));
    }
    Ok(out)
}

fn node_label(node: &Node) -> &'static str {
    match node {
        Node::Const(_) => "constant",
        Node::Var(_) => "variable",
        Node::Unary(op, _) => op.name(),
        Node::Binary(BinaryOp::Add, ..) => "+",
        Node::Binary(BinaryOp::Sub, ..) => "-",
        Node::Binary(BinaryOp::Mul, ..) => "*",
        Node::Binary(BinaryOp::Div, ..) => "/",
        Node::Pow(..) => "^",
    }
}

/// Value and derivatives up to `order` (at most 3) in the single variable.
pub fn eval_jet1(ast: &Ast, s: f64, order: usize) -> Result<Jet1, ExprError> {
    if order > 3 {
        return Err(ExprError::Order(order));
    }
    if ast.vars.len() > 1 {
        return Err(ExprError::VariableCount {
            found: ast.vars.len(),
            max: 1,
        });
    }
    eval_node(&ast.root, &[Jet1::variable(s, order)])
}

/// Value, gradient and Hessian at `(u, v)`. A one-variable expression is
/// treated as a function of `u` alone.
pub fn eval_jet2(ast: &Ast, u: f64, v: f64) -> Result<Jet2, ExprError> {
    if ast.vars.len() > 2 {
        return Err(ExprError::VariableCount {
            found: ast.vars.len(),
            max: 2,
        });
    }
    eval_node(&ast.root, &[Jet2::var_u(u), Jet2::var_v(v)])
}

/// Plain value at a point (one entry per declared variable).
pub fn eval(ast: &Ast, point: &[f64]) -> Result<f64, ExprError> {
    let seeds: Vec<Jet1> = if point.is_empty() {
        vec![Jet1::constant(0.0, 0)]
    } else {
        point.iter().map(|&x| Jet1::constant(x, 0)).collect()
    };
    if point.len() < ast.vars.len() {
        return Err(ExprError::VariableCount {
            found: ast.vars.len(),
            max: point.len(),
        });
    }
    eval_node(&ast.root, &seeds).map(|j| j.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(text: &str) -> Ast {
        parse(text, &["s"]).unwrap()
    }

    fn p2(text: &str) -> Ast {
        parse(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn cosh_jet() {
        assert_eq!(
            eval_jet1(&p1("cosh(s)"), 0.0, 3).unwrap().derivs(),
            [1.0, 0.0, 1.0, 0.0]
        );
    }

    #[test]
    fn monomial_jet() {
        assert_eq!(
            eval_jet1(&p1("s^3"), 2.0, 3).unwrap().derivs(),
            [8.0, 12.0, 12.0, 6.0]
        );
        assert_eq!(
            eval_jet1(&p1("s^2"), 0.0, 3).unwrap().derivs(),
            [0.0, 0.0, 2.0, 0.0]
        );
    }

    #[test]
    fn ln_at_zero_is_domain_error() {
        assert!(matches!(
            eval_jet1(&p1("ln(s)"), 0.0, 3),
            Err(ExprError::Domain { ref node, .. }) if node == "ln"
        ));
    }

    #[test]
    fn bivariate_examples() {
        let j = eval_jet2(&p2("(x^2 - y^2)/2"), 1.0, 1.0).unwrap();
        assert_eq!(
            j,
            Jet2 {
                value: 0.0,
                du: 1.0,
                dv: -1.0,
                duu: 1.0,
                duv: 0.0,
                dvv: -1.0
            }
        );
        let j = eval_jet2(&p2("x*y"), 2.0, 3.0).unwrap();
        assert_eq!(
            (j.value, j.du, j.dv, j.duu, j.duv, j.dvv),
            (6.0, 3.0, 2.0, 0.0, 1.0, 0.0)
        );
        assert!(matches!(
            eval_jet2(&p2("sqrt(x)"), 0.0, 1.0),
            Err(ExprError::Domain { .. })
        ));
    }

    #[test]
    fn abs_rejects_derivative_at_kink() {
        assert!(eval_jet1(&p1("abs(s)"), 0.0, 1).is_err());
        assert_eq!(eval_jet1(&p1("abs(s)"), 0.0, 0).unwrap().value, 0.0);
        assert_eq!(
            eval_jet1(&p1("abs(s)"), -2.0, 2).unwrap().derivs(),
            [2.0, -1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            eval_jet1(&p1("1/s"), 0.0, 1),
            Err(ExprError::Domain { ref node, .. }) if node == "/"
        ));
        let j = eval_jet1(&p1("1/s"), 2.0, 3).unwrap();
        assert_eq!(j.derivs(), [0.5, -0.25, 0.25, -0.375]);
    }

    #[test]
    fn fractional_powers() {
        let j = eval_jet1(&p1("s^0.5"), 4.0, 3).unwrap();
        let r = eval_jet1(&p1("sqrt(s)"), 4.0, 3).unwrap();
        for k in 0..4 {
            assert!((j.derivs()[k] - r.derivs()[k]).abs() < 1e-15);
        }
        assert!(eval_jet1(&p1("s^0.5"), -1.0, 0).is_err());
        assert!(eval_jet1(&p1("s^1.5"), 0.0, 2).is_err());
        assert_eq!(
            eval_jet1(&p1("s^1.5"), 0.0, 1).unwrap().derivs(),
            [0.0, 0.0, 0.0, 0.0]
        );
        // integer powers of negative bases are fine
        assert_eq!(
            eval_jet1(&p1("s^2"), -3.0, 2).unwrap().derivs(),
            [9.0, -6.0, 2.0, 0.0]
        );
    }

    #[test]
    fn asin_derivatives() {
        let x: f64 = 0.3;
        let j = eval_jet1(&p1("asin(s)"), x, 3).unwrap();
        let q = 1.0 - x * x;
        assert!((j.d1 - 1.0 / q.sqrt()).abs() < 1e-15);
        assert!((j.d2 - x / q.powf(1.5)).abs() < 1e-14);
        assert!((j.d3 - (1.0 + 2.0 * x * x) / q.powf(2.5)).abs() < 1e-14);
        assert!(eval_jet1(&p1("asin(s)"), 1.0, 1).is_err());
    }

    #[test]
    fn evaluator_variable_count() {
        assert!(matches!(
            eval_jet1(&p2("x*y"), 1.0, 1),
            Err(ExprError::VariableCount { .. })
        ));
        assert_eq!(eval(&p2("x - y"), &[3.0, 1.0]), Ok(2.0));
        assert_eq!(
            eval(&parse("2 * pi", &[]).unwrap(), &[]),
            Ok(std::f64::consts::TAU)
        );
    }

    #[test]
    fn one_variable_expression_in_two_variable_evaluator() {
        let j = eval_jet2(&p1("s^2"), 3.0, 7.0).unwrap();
        assert_eq!(
            (j.value, j.du, j.dv, j.duu, j.duv, j.dvv),
            (9.0, 6.0, 0.0, 2.0, 0.0, 0.0)
        );
    }

    #[test]
    fn printed_form_reparses() {
        let a = p2("-x^2 + 3*sinh(y)/(1 + x) - 2e-3");
        let b = parse(&a.to_string(), &["x", "y"]).unwrap();
        assert_eq!(a.root, b.root);
    }
}

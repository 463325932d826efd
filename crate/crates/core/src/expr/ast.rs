use std::fmt;

/// Unary operators and the known functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sinh,
    Cosh,
    Tanh,
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Asin,
}

impl UnaryOp {
    pub const FUNCTIONS: [UnaryOp; 10] = [
        UnaryOp::Sinh,
        UnaryOp::Cosh,
        UnaryOp::Tanh,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Exp,
        UnaryOp::Ln,
        UnaryOp::Sqrt,
        UnaryOp::Abs,
        UnaryOp::Asin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Tanh => "tanh",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
            UnaryOp::Asin => "asin",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryOp> {
        Self::FUNCTIONS.iter().copied().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
        }
    }
}

/// Expression tree node. Variables are indices into the declared list.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var(usize),
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    /// Power with a constant exponent.
    Pow(Box<Node>, f64),
}

impl Node {
    pub fn constant(c: f64) -> Node {
        Node::Const(c)
    }

    pub fn var(i: usize) -> Node {
        Node::Var(i)
    }

    pub fn unary(op: UnaryOp, child: Node) -> Node {
        Node::Unary(op, Box::new(child))
    }

    pub fn powf(self, p: f64) -> Node {
        Node::Pow(Box::new(self), p)
    }

    pub fn apply(self, f: UnaryOp) -> Node {
        Node::unary(f, self)
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Node::Const(_) => None,
            Node::Var(i) => Some(*i),
            Node::Unary(_, c) | Node::Pow(c, _) => c.max_var(),
            Node::Binary(_, l, r) => match (l.max_var(), r.max_var()) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

macro_rules! binary_ops {
    ($($tr:ident $method:ident $op:ident),*) => {$(
        impl std::ops::$tr for Node {
            type Output = Node;
            fn $method(self, rhs: Node) -> Node {
                Node::Binary(BinaryOp::$op, Box::new(self), Box::new(rhs))
            }
        }
    )*};
}

binary_ops!(Add add Add, Sub sub Sub, Mul mul Mul, Div div Div);

impl std::ops::Neg for Node {
    type Output = Node;
    fn neg(self) -> Node {
        Node::unary(UnaryOp::Neg, self)
    }
}

/// A parsed expression together with its declared variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Ast {
    pub root: Node,
    pub vars: Vec<String>,
}

impl Ast {
    /// Wraps a hand-built tree. Panics if the tree references an undeclared
    /// variable index.
    pub fn new(root: Node, vars: &[&str]) -> Ast {
        if let Some(i) = root.max_var() {
            assert!(i < vars.len(), "variable index {i} not declared");
        }
        Ast {
            root,
            vars: vars.iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn constant(c: f64, vars: &[&str]) -> Ast {
        Ast::new(Node::Const(c), vars)
    }
}

// Fully parenthesised, shortest round-trip numerals: re-parsing yields a
// tree that evaluates identically.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(&self.root, &self.vars, f)
    }
}

fn write_num(c: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c < 0.0 || (c == 0.0 && c.is_sign_negative()) {
        write!(f, "(-{:?})", -c)
    } else {
        write!(f, "{c:?}")
    }
}

fn write_node(n: &Node, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match n {
        Node::Const(c) => write_num(*c, f),
        Node::Var(i) => f.write_str(&vars[*i]),
        Node::Unary(UnaryOp::Neg, c) => {
            f.write_str("(-")?;
            write_node(c, vars, f)?;
            f.write_str(")")
        }
        Node::Unary(op, c) => {
            write!(f, "{}(", op.name())?;
            write_node(c, vars, f)?;
            f.write_str(")")
        }
        Node::Binary(op, l, r) => {
            f.write_str("(")?;
            write_node(l, vars, f)?;
            write!(f, " {} ", op.symbol())?;
            write_node(r, vars, f)?;
            f.write_str(")")
        }
        Node::Pow(b, p) if *p >= 0.0 => {
            f.write_str("((")?;
            write_node(b, vars, f)?;
            write!(f, ")^{p:?})")
        }
        Node::Pow(b, p) => {
            f.write_str("(1 / ((")?;
            write_node(b, vars, f)?;
            write!(f, ")^{:?}))", -p)
        }
    }
}

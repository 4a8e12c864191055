use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Aggregate functions, in the index order used by the reference evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggFunc {
    #[default]
    None,
    Max,
    Min,
    Count,
    Sum,
    Avg,
}

impl AggFunc {
    pub fn name(self) -> &'static str {
        match self {
            AggFunc::None => "none",
            AggFunc::Max => "max",
            AggFunc::Min => "min",
            AggFunc::Count => "count",
            AggFunc::Sum => "sum",
            AggFunc::Avg => "avg",
        }
    }

    pub fn from_keyword(word: &str) -> Option<AggFunc> {
        [AggFunc::Max, AggFunc::Min, AggFunc::Count, AggFunc::Sum, AggFunc::Avg]
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(word))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArithOp {
    Sub,
    Add,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Sub => "-",
            ArithOp::Add => "+",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColumnRef {
    /// Resolved table name; set by canonicalization.
    pub table: Option<String>,
    pub column: String,
    /// Qualifier as written (an alias or a table name).
    pub source_alias: Option<String>,
}

impl ColumnRef {
    pub fn bare(column: &str) -> ColumnRef {
        ColumnRef { table: None, column: String::from(column), source_alias: None }
    }

    pub fn is_star(&self) -> bool {
        self.column == "*"
    }
}

/// A column with an optional aggregate applied directly to it, e.g. `count(*)`
/// inside a condition or `max(age)` as an arithmetic operand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColUnit {
    pub agg: AggFunc,
    pub distinct: bool,
    pub column: ColumnRef,
}

impl ColUnit {
    pub fn plain(column: ColumnRef) -> ColUnit {
        ColUnit { agg: AggFunc::None, distinct: false, column }
    }
}

/// A column unit, or two joined by one arithmetic operator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ValueExpr {
    pub left: ColUnit,
    pub arith: Option<(ArithOp, ColUnit)>,
}

impl ValueExpr {
    pub fn unit(left: ColUnit) -> ValueExpr {
        ValueExpr { left, arith: None }
    }

    pub fn col_units(&self) -> impl Iterator<Item = &ColUnit> {
        core::iter::once(&self.left).chain(self.arith.as_ref().map(|(_, c)| c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SelectItem {
    pub agg: AggFunc,
    pub distinct: bool,
    pub expr: ValueExpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiteralKind {
    String,
    Number,
    Masked,
}

/// Sentinel written in place of a masked value.
pub const MASK_SENTINEL: &str = "terminal";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiteralValue {
    pub kind: LiteralKind,
    /// Unquoted content for strings, the digits as written for numbers.
    pub text: String,
}

impl LiteralValue {
    pub fn string(text: &str) -> LiteralValue {
        LiteralValue { kind: LiteralKind::String, text: String::from(text) }
    }

    pub fn number(text: &str) -> LiteralValue {
        LiteralValue { kind: LiteralKind::Number, text: String::from(text) }
    }

    pub fn masked() -> LiteralValue {
        LiteralValue { kind: LiteralKind::Masked, text: String::from(MASK_SENTINEL) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Operand {
    Literal(LiteralValue),
    Column(ColUnit),
    Null,
    Subquery(Box<QueryAst>),
}

/// Comparison operators, in the index order used by the reference evaluator
/// (which reserves index 0 for `not`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CondOp {
    Between,
    Eq,
    Gt,
    Lt,
    Ge,
    Le,
    Ne,
    In,
    Like,
    Is,
}

impl CondOp {
    pub fn text(self) -> &'static str {
        match self {
            CondOp::Between => "between",
            CondOp::Eq => "=",
            CondOp::Gt => ">",
            CondOp::Lt => "<",
            CondOp::Ge => ">=",
            CondOp::Le => "<=",
            CondOp::Ne => "!=",
            CondOp::In => "in",
            CondOp::Like => "like",
            CondOp::Is => "is",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub negated: bool,
    pub op: CondOp,
    pub lhs: ValueExpr,
    pub rhs: Operand,
    /// Upper bound of BETWEEN.
    pub rhs2: Option<Operand>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connector {
    And,
    Or,
}

impl Connector {
    pub fn text(self) -> &'static str {
        match self {
            Connector::And => "and",
            Connector::Or => "or",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConditionTree {
    Leaf(Condition),
    Node { connector: Connector, children: Vec<ConditionTree> },
}

impl ConditionTree {
    /// Leaves and connectors in reading order, as the flat list the reference
    /// evaluator builds: `c1 and c2 or c3`.
    pub fn flatten(&self) -> (Vec<&Condition>, Vec<Connector>) {
        let mut conds = Vec::new();
        let mut conns = Vec::new();
        self.flatten_into(&mut conds, &mut conns);
        (conds, conns)
    }

    fn flatten_into<'a>(&'a self, conds: &mut Vec<&'a Condition>, conns: &mut Vec<Connector>) {
        match self {
            ConditionTree::Leaf(c) => conds.push(c),
            ConditionTree::Node { connector, children } => {
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        conns.push(*connector);
                    }
                    child.flatten_into(conds, conns);
                }
            }
        }
    }

    pub fn leaves(&self) -> Vec<&Condition> {
        self.flatten().0
    }

    pub fn leaves_mut(&mut self) -> Vec<&mut Condition> {
        let mut out = Vec::new();
        self.collect_mut(&mut out);
        out
    }

    fn collect_mut<'a>(&'a mut self, out: &mut Vec<&'a mut Condition>) {
        match self {
            ConditionTree::Leaf(c) => out.push(c),
            ConditionTree::Node { children, .. } => {
                for child in children {
                    child.collect_mut(out);
                }
            }
        }
    }

    /// Joins trees with `connector`, absorbing children that already use it.
    pub fn join(connector: Connector, parts: Vec<ConditionTree>) -> ConditionTree {
        let mut children = Vec::new();
        for part in parts {
            match part {
                ConditionTree::Node { connector: c, children: inner } if c == connector => {
                    children.extend(inner)
                }
                other => children.push(other),
            }
        }
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            ConditionTree::Node { connector, children }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableRef {
    Named { name: String, alias: Option<String> },
    Subquery(Box<QueryAst>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FromItem {
    pub table: TableRef,
    /// ON condition joining this item to the ones before it.
    pub on: Option<ConditionTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FromClause {
    pub items: Vec<FromItem>,
}

impl FromClause {
    pub fn join_conditions(&self) -> impl Iterator<Item = &ConditionTree> {
        self.items.iter().filter_map(|i| i.on.as_ref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Asc,
    Desc,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderItem {
    pub expr: ValueExpr,
    /// `None` when no direction was written (ascending).
    pub direction: Option<Direction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOpKind {
    Intersect,
    Union,
    Except,
}

impl SetOpKind {
    pub fn text(self) -> &'static str {
        match self {
            SetOpKind::Intersect => "intersect",
            SetOpKind::Union => "union",
            SetOpKind::Except => "except",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QueryAst {
    pub distinct: bool,
    pub select: Vec<SelectItem>,
    pub from: FromClause,
    pub where_clause: Option<ConditionTree>,
    pub group_by: Vec<ColumnRef>,
    pub having: Option<ConditionTree>,
    pub order_by: Vec<OrderItem>,
    pub limit: Option<u64>,
    pub set_op: Option<(SetOpKind, Box<QueryAst>)>,
}

impl QueryAst {
    /// Applies `f` to every operand, including BETWEEN upper bounds.
    pub fn visit_operands_mut(&mut self, f: &mut dyn FnMut(&mut Operand)) {
        let trees = self
            .from
            .items
            .iter_mut()
            .filter_map(|i| i.on.as_mut())
            .chain(self.where_clause.as_mut())
            .chain(self.having.as_mut());
        for tree in trees {
            for cond in tree.leaves_mut() {
                f(&mut cond.rhs);
                if let Some(r) = cond.rhs2.as_mut() {
                    f(r);
                }
            }
        }
    }

    /// Nested queries directly below this one: FROM subqueries, condition
    /// subqueries, and the set-operation operand.
    pub fn subqueries(&self) -> Vec<&QueryAst> {
        let mut out = Vec::new();
        for item in &self.from.items {
            if let TableRef::Subquery(q) = &item.table {
                out.push(&**q);
            }
        }
        let trees = self.from.join_conditions().chain(self.where_clause.as_ref()).chain(self.having.as_ref());
        for tree in trees {
            for cond in tree.leaves() {
                for op in core::iter::once(&cond.rhs).chain(cond.rhs2.as_ref()) {
                    if let Operand::Subquery(q) = op {
                        out.push(&**q);
                    }
                }
            }
        }
        if let Some((_, q)) = &self.set_op {
            out.push(&**q);
        }
        out
    }
}

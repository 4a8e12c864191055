use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::schema::DbSchema;
use crate::sql::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    /// Condition values are ignored, as in the leaderboard metric.
    #[default]
    WithoutValues,
    /// Condition values are compared as text (strings case-sensitively).
    WithValues,
}

impl EvalMode {
    pub fn name(self) -> &'static str {
        match self {
            EvalMode::WithoutValues => "without-values",
            EvalMode::WithValues => "with-values",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("query is not canonical: {0}")]
    NotCanonical(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnitKey {
    pub agg: AggFunc,
    /// `table.column`, or `*`.
    pub column: String,
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ValKey {
    pub left: UnitKey,
    pub arith: Option<(ArithOp, UnitKey)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OperandKey {
    Masked,
    Null,
    Text(String),
    /// Shortest decimal form of the parsed number.
    Number(String),
    Column(UnitKey),
    Query(Box<SqlKey>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CondKey {
    pub negated: bool,
    pub op: CondOp,
    pub lhs: ValKey,
    pub rhs: OperandKey,
    pub rhs2: Option<OperandKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableKey {
    Query(Box<SqlKey>),
    Table(String),
}

/// Flat condition list: units with the connectors between them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct CondList {
    pub units: Vec<CondKey>,
    pub connectors: Vec<Connector>,
}

impl CondList {
    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    fn append(&mut self, other: CondList) {
        if other.is_empty() {
            return;
        }
        if !self.is_empty() {
            self.connectors.push(Connector::And);
        }
        self.units.extend(other.units);
        self.connectors.extend(other.connectors);
    }
}

/// A whole query reduced to comparable form. Subqueries nested in conditions
/// and in FROM are compared through this structure as a unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SqlKey {
    pub distinct: bool,
    pub select: Vec<(AggFunc, ValKey)>,
    pub tables: Vec<TableKey>,
    pub join_conds: CondList,
    pub where_conds: CondList,
    pub group_by: Vec<UnitKey>,
    pub having: CondList,
    /// A single direction for the whole list: the last one written, else asc.
    pub order_by: Option<(Direction, Vec<ValKey>)>,
    pub limit: bool,
    pub set_op: Option<(SetOpKind, Box<SqlKey>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ctx {
    /// The compared query itself and its set-operation branches.
    Top,
    /// Subqueries inside conditions.
    Nested,
    /// Subqueries in FROM, which keep their values.
    Raw,
}

struct KeyBuilder<'a> {
    mode: EvalMode,
    fk: &'a BTreeMap<String, String>,
    valid_tables: BTreeSet<String>,
}

impl KeyBuilder<'_> {
    fn masks(&self, ctx: Ctx) -> bool {
        self.mode == EvalMode::WithoutValues && ctx != Ctx::Raw
    }

    fn query(&self, q: &QueryAst, ctx: Ctx) -> SqlKey {
        let top = ctx == Ctx::Top;
        let select = q
            .select
            .iter()
            .map(|s| {
                let mut v = self.val(&s.expr, top);
                if s.distinct && !top {
                    v.left.distinct = true;
                }
                (s.agg, v)
            })
            .collect();
        let tables = q
            .from
            .items
            .iter()
            .map(|i| match &i.table {
                TableRef::Named { name, .. } => TableKey::Table(name.clone()),
                TableRef::Subquery(sub) => TableKey::Query(Box::new(self.query(sub, Ctx::Raw))),
            })
            .collect();
        let mut join_conds = CondList::default();
        for on in q.from.join_conditions() {
            join_conds.append(self.conds(on, ctx));
        }
        let order_by = if q.order_by.is_empty() {
            None
        } else {
            let dir = q.order_by.iter().rev().find_map(|o| o.direction).unwrap_or(Direction::Asc);
            Some((dir, q.order_by.iter().map(|o| self.val(&o.expr, top)).collect()))
        };
        SqlKey {
            distinct: q.distinct && !top,
            select,
            tables,
            join_conds,
            where_conds: q.where_clause.as_ref().map(|t| self.conds(t, ctx)).unwrap_or_default(),
            group_by: q.group_by.iter().map(|c| self.unit(&ColUnit::plain(c.clone()), top)).collect(),
            having: q.having.as_ref().map(|t| self.conds(t, ctx)).unwrap_or_default(),
            order_by,
            limit: q.limit.is_some(),
            set_op: q.set_op.as_ref().map(|(k, rhs)| (*k, Box::new(self.query(rhs, ctx)))),
        }
    }

    fn conds(&self, tree: &ConditionTree, ctx: Ctx) -> CondList {
        let (leaves, connectors) = tree.flatten();
        let units = leaves
            .into_iter()
            .map(|c| CondKey {
                negated: c.negated,
                op: c.op,
                lhs: self.val(&c.lhs, ctx == Ctx::Top),
                rhs: self.operand(&c.rhs, ctx),
                rhs2: c.rhs2.as_ref().map(|r| self.operand(r, ctx)),
            })
            .collect();
        CondList { units, connectors }
    }

    fn operand(&self, op: &Operand, ctx: Ctx) -> OperandKey {
        let sub_ctx = if ctx == Ctx::Raw { Ctx::Raw } else { Ctx::Nested };
        match op {
            Operand::Subquery(q) => OperandKey::Query(Box::new(self.query(q, sub_ctx))),
            _ if self.masks(ctx) => OperandKey::Masked,
            Operand::Null => OperandKey::Null,
            Operand::Column(c) => OperandKey::Column(self.unit(c, false)),
            Operand::Literal(l) => match l.kind {
                LiteralKind::Number => match l.text.parse::<f64>() {
                    Ok(f) => OperandKey::Number(alloc::format!("{f:?}")),
                    Err(_) => OperandKey::Text(l.text.clone()),
                },
                LiteralKind::String | LiteralKind::Masked => OperandKey::Text(l.text.clone()),
            },
        }
    }

    fn val(&self, v: &ValueExpr, top: bool) -> ValKey {
        ValKey {
            left: self.unit(&v.left, top),
            arith: v.arith.as_ref().map(|(op, c)| (*op, self.unit(c, top))),
        }
    }

    /// At the top level columns of FROM tables collapse along foreign keys
    /// and DISTINCT is ignored.
    fn unit(&self, c: &ColUnit, top: bool) -> UnitKey {
        let mut column = match &c.column.table {
            Some(t) => alloc::format!("{}.{}", t, c.column.column),
            None => c.column.column.clone(),
        };
        if top {
            if let Some(t) = &c.column.table {
                if self.valid_tables.contains(t) {
                    if let Some(root) = self.fk.get(&column) {
                        column = root.clone();
                    }
                }
            }
        }
        UnitKey { agg: c.agg, column, distinct: c.distinct && !top }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConnectorCounts {
    pub and: usize,
    pub or: usize,
}

/// A query decomposed into the units compared by exact set match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSets {
    /// Sorted multiset of (aggregate, value expression).
    pub select_set: Vec<(AggFunc, ValKey)>,
    /// Sorted multiset of WHERE condition units.
    pub where_conds: Vec<CondKey>,
    pub where_connectors: ConnectorCounts,
    /// Sorted multiset of group-by column names without their table.
    pub group_set: Vec<String>,
    /// Group-by columns in written order.
    pub group_list: Vec<UnitKey>,
    /// HAVING units and connectors in written order.
    pub having_conds: CondList,
    pub order_list: Option<(Direction, Vec<ValKey>)>,
    pub limit: Option<u64>,
    pub keywords: BTreeSet<String>,
    /// Sorted FROM tables and FROM subqueries.
    pub tables: Vec<TableKey>,
    /// Subqueries found in conditions.
    pub nested: Vec<SqlKey>,
    pub set_op: Option<(SetOpKind, Box<ComponentSets>)>,
}

/// Decomposes a canonical query. Column units of FROM tables are merged along
/// the schema's foreign keys.
pub fn decompose(ast: &QueryAst, schema: &DbSchema, mode: EvalMode) -> Result<ComponentSets, DecomposeError> {
    check_canonical(ast)?;
    let fk = schema.foreign_key_map();
    let valid_tables = ast
        .from
        .items
        .iter()
        .filter_map(|i| match &i.table {
            TableRef::Named { name, .. } => Some(name.clone()),
            TableRef::Subquery(_) => None,
        })
        .collect();
    let builder = KeyBuilder { mode, fk: &fk, valid_tables };
    let key = builder.query(ast, Ctx::Top);
    Ok(components_of(ast, key))
}

fn components_of(ast: &QueryAst, key: SqlKey) -> ComponentSets {
    let mut select_set = key.select;
    select_set.sort();
    let mut where_conds = key.where_conds.units.clone();
    where_conds.sort();
    let mut where_connectors = ConnectorCounts::default();
    for c in &key.where_conds.connectors {
        match c {
            Connector::And => where_connectors.and += 1,
            Connector::Or => where_connectors.or += 1,
        }
    }
    let mut group_set: Vec<String> = key
        .group_by
        .iter()
        .map(|u| match u.column.split_once('.') {
            Some((_, name)) => name.to_string(),
            None => u.column.clone(),
        })
        .collect();
    group_set.sort();

    let mut keywords = BTreeSet::new();
    let mut add = |k: &str| {
        keywords.insert(k.to_string());
    };
    if !key.where_conds.is_empty() {
        add("where");
    }
    if !key.group_by.is_empty() {
        add("group");
    }
    if !key.having.is_empty() {
        add("having");
    }
    if let Some((dir, _)) = &key.order_by {
        add("order");
        add(match dir {
            Direction::Asc => "asc",
            Direction::Desc => "desc",
        });
    }
    if key.limit {
        add("limit");
    }
    if let Some((kind, _)) = &key.set_op {
        add(kind.text());
    }
    let lists = [&key.join_conds, &key.where_conds, &key.having];
    if lists.iter().any(|l| l.connectors.contains(&Connector::Or)) {
        add("or");
    }
    let units = || lists.iter().flat_map(|l| l.units.iter());
    if units().any(|u| u.negated) {
        add("not");
    }
    if units().any(|u| u.op == CondOp::In) {
        add("in");
    }
    if units().any(|u| u.op == CondOp::Like) {
        add("like");
    }

    let nested = units()
        .flat_map(|u| core::iter::once(&u.rhs).chain(u.rhs2.as_ref()))
        .filter_map(|o| match o {
            OperandKey::Query(q) => Some((**q).clone()),
            _ => None,
        })
        .collect();

    let mut tables = key.tables;
    tables.sort();

    let set_op = match (&ast.set_op, key.set_op) {
        (Some((_, rhs_ast)), Some((kind, rhs_key))) => Some((kind, Box::new(components_of(rhs_ast, *rhs_key)))),
        _ => None,
    };

    ComponentSets {
        select_set,
        where_conds,
        where_connectors,
        group_set,
        group_list: key.group_by,
        having_conds: key.having,
        order_list: key.order_by,
        limit: ast.limit,
        keywords,
        tables,
        nested,
        set_op,
    }
}

fn check_canonical(q: &QueryAst) -> Result<(), DecomposeError> {
    for item in &q.from.items {
        match &item.table {
            TableRef::Named { name, alias: Some(a) } => {
                return Err(DecomposeError::NotCanonical(alloc::format!("alias {a} on {name}")));
            }
            TableRef::Subquery(sub) => check_canonical(sub)?,
            TableRef::Named { .. } => {}
        }
    }
    let mut bad = None;
    let mut check = |c: &ColumnRef| {
        if bad.is_none() && !c.is_star() && (c.table.is_none() || c.source_alias.is_some()) {
            bad = Some(c.column.clone());
        }
    };
    for s in &q.select {
        s.expr.col_units().for_each(|u| check(&u.column));
    }
    for c in &q.group_by {
        check(c);
    }
    for o in &q.order_by {
        o.expr.col_units().for_each(|u| check(&u.column));
    }
    let trees = q.from.join_conditions().chain(q.where_clause.as_ref()).chain(q.having.as_ref());
    for tree in trees {
        for cond in tree.leaves() {
            cond.lhs.col_units().for_each(|u| check(&u.column));
            for op in core::iter::once(&cond.rhs).chain(cond.rhs2.as_ref()) {
                match op {
                    Operand::Column(u) => check(&u.column),
                    Operand::Subquery(sub) => check_canonical(sub)?,
                    _ => {}
                }
            }
        }
    }
    if let Some(col) = bad {
        return Err(DecomposeError::NotCanonical(alloc::format!("column {col} is not bound to a table")));
    }
    if let Some((_, rhs)) = &q.set_op {
        check_canonical(rhs)?;
    }
    Ok(())
}

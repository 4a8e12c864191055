use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::*;
use crate::schema::DbSchema;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("unknown table {0}")]
    UnknownTable(String),
    #[error("ambiguous column {0}")]
    AmbiguousColumn(String),
    #[error("unknown column {0}")]
    UnknownColumn(String),
}

/// How a column written without a qualifier is bound to a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColumnResolution {
    /// The only FROM table with that column, then the only table in the
    /// schema with it. Anything else is ambiguous or unknown.
    #[default]
    Strict,
    /// The first FROM table with that column, as the reference evaluator does.
    FirstFromTable,
}

/// Lowercases identifiers, binds every column to its table and erases aliases.
pub fn canonicalize(ast: &QueryAst, schema: &DbSchema) -> Result<QueryAst, CanonError> {
    canonicalize_with(ast, schema, ColumnResolution::Strict)
}

pub fn canonicalize_with(
    ast: &QueryAst,
    schema: &DbSchema,
    policy: ColumnResolution,
) -> Result<QueryAst, CanonError> {
    let mut c = Canon { schema, policy, scopes: Vec::new() };
    c.query(ast)
}

/// Replaces every condition literal with the masked sentinel. LIMIT is kept.
pub fn strip_values(ast: &QueryAst) -> QueryAst {
    let mut out = ast.clone();
    mask_in_place(&mut out);
    out
}

fn mask_in_place(q: &mut QueryAst) {
    q.visit_operands_mut(&mut |op| match op {
        Operand::Literal(lit) => *lit = LiteralValue::masked(),
        Operand::Subquery(sub) => mask_in_place(sub),
        Operand::Column(_) | Operand::Null => {}
    });
    for item in &mut q.from.items {
        if let TableRef::Subquery(sub) = &mut item.table {
            mask_in_place(sub);
        }
    }
    if let Some((_, rhs)) = &mut q.set_op {
        mask_in_place(rhs);
    }
}

struct Binding {
    alias: Option<String>,
    table: String,
    index: usize,
}

struct Canon<'a> {
    schema: &'a DbSchema,
    policy: ColumnResolution,
    scopes: Vec<Vec<Binding>>,
}

impl Canon<'_> {
    fn query(&mut self, q: &QueryAst) -> Result<QueryAst, CanonError> {
        let mut bindings = Vec::new();
        let mut items = Vec::with_capacity(q.from.items.len());
        for item in &q.from.items {
            let table = match &item.table {
                TableRef::Named { name, alias } => {
                    let index = self
                        .schema
                        .table_index(name)
                        .ok_or_else(|| CanonError::UnknownTable(name.to_string()))?;
                    let table = self.schema.tables[index].to_lowercase();
                    bindings.push(Binding { alias: alias.as_ref().map(|a| a.to_lowercase()), table: table.clone(), index });
                    TableRef::Named { name: table, alias: None }
                }
                TableRef::Subquery(sub) => TableRef::Subquery(Box::new(self.query(sub)?)),
            };
            items.push((table, item.on.as_ref()));
        }

        self.scopes.push(bindings);
        let body = self.body(q, items);
        self.scopes.pop();
        let mut out = body?;

        if let Some((kind, rhs)) = &q.set_op {
            out.set_op = Some((*kind, Box::new(self.query(rhs)?)));
        }
        Ok(out)
    }

    fn body(&mut self, q: &QueryAst, items: Vec<(TableRef, Option<&ConditionTree>)>) -> Result<QueryAst, CanonError> {
        let mut from = FromClause::default();
        for (table, on) in items {
            let on = on.map(|t| self.tree(t)).transpose()?;
            from.items.push(FromItem { table, on });
        }
        let select = q
            .select
            .iter()
            .map(|s| Ok(SelectItem { agg: s.agg, distinct: s.distinct, expr: self.value_expr(&s.expr)? }))
            .collect::<Result<Vec<_>, CanonError>>()?;
        let where_clause = q.where_clause.as_ref().map(|t| self.tree(t)).transpose()?;
        let group_by = q.group_by.iter().map(|c| self.column(c)).collect::<Result<Vec<_>, _>>()?;
        let having = q.having.as_ref().map(|t| self.tree(t)).transpose()?;
        let order_by = q
            .order_by
            .iter()
            .map(|o| Ok(OrderItem { expr: self.value_expr(&o.expr)?, direction: o.direction }))
            .collect::<Result<Vec<_>, CanonError>>()?;
        Ok(QueryAst {
            distinct: q.distinct,
            select,
            from,
            where_clause,
            group_by,
            having,
            order_by,
            limit: q.limit,
            set_op: None,
        })
    }

    fn tree(&mut self, t: &ConditionTree) -> Result<ConditionTree, CanonError> {
        match t {
            ConditionTree::Leaf(c) => Ok(ConditionTree::Leaf(self.condition(c)?)),
            ConditionTree::Node { connector, children } => {
                let parts = children.iter().map(|c| self.tree(c)).collect::<Result<Vec<_>, _>>()?;
                Ok(ConditionTree::join(*connector, parts))
            }
        }
    }

    fn condition(&mut self, c: &Condition) -> Result<Condition, CanonError> {
        Ok(Condition {
            negated: c.negated,
            op: c.op,
            lhs: self.value_expr(&c.lhs)?,
            rhs: self.operand(&c.rhs)?,
            rhs2: c.rhs2.as_ref().map(|r| self.operand(r)).transpose()?,
        })
    }

    fn operand(&mut self, op: &Operand) -> Result<Operand, CanonError> {
        Ok(match op {
            Operand::Literal(l) => Operand::Literal(l.clone()),
            Operand::Null => Operand::Null,
            Operand::Column(c) => Operand::Column(self.col_unit(c)?),
            Operand::Subquery(q) => Operand::Subquery(Box::new(self.query(q)?)),
        })
    }

    fn value_expr(&mut self, v: &ValueExpr) -> Result<ValueExpr, CanonError> {
        let left = self.col_unit(&v.left)?;
        let arith = match &v.arith {
            Some((op, c)) => Some((*op, self.col_unit(c)?)),
            None => None,
        };
        Ok(ValueExpr { left, arith })
    }

    fn col_unit(&mut self, c: &ColUnit) -> Result<ColUnit, CanonError> {
        Ok(ColUnit { agg: c.agg, distinct: c.distinct, column: self.column(&c.column)? })
    }

    fn column(&self, c: &ColumnRef) -> Result<ColumnRef, CanonError> {
        if c.is_star() {
            return Ok(ColumnRef::bare("*"));
        }
        let column = c.column.to_lowercase();
        let qualifier = c.source_alias.as_ref().or(c.table.as_ref()).map(|q| q.to_lowercase());
        let index = match qualifier {
            Some(q) => {
                let index = self.qualifier(&q).ok_or(CanonError::UnknownTable(q.clone()))?;
                if !self.schema.has_column(index, &column) {
                    return Err(CanonError::UnknownColumn(alloc::format!("{q}.{column}")));
                }
                index
            }
            None => self.bare_column(&column)?,
        };
        Ok(ColumnRef { table: Some(self.schema.tables[index].to_lowercase()), column, source_alias: None })
    }

    fn qualifier(&self, q: &str) -> Option<usize> {
        for scope in self.scopes.iter().rev() {
            if let Some(b) = scope.iter().find(|b| b.alias.as_deref() == Some(q)) {
                return Some(b.index);
            }
            if let Some(b) = scope.iter().find(|b| b.table == q) {
                return Some(b.index);
            }
        }
        None
    }

    fn bare_column(&self, column: &str) -> Result<usize, CanonError> {
        let unknown = || CanonError::UnknownColumn(column.to_string());
        let ambiguous = || CanonError::AmbiguousColumn(column.to_string());
        match self.policy {
            ColumnResolution::FirstFromTable => {
                let scope = self.scopes.last().ok_or_else(unknown)?;
                scope
                    .iter()
                    .find(|b| self.schema.has_column(b.index, column))
                    .map(|b| b.index)
                    .ok_or_else(unknown)
            }
            ColumnResolution::Strict => {
                for scope in self.scopes.iter().rev() {
                    let mut hits: Vec<usize> = scope
                        .iter()
                        .filter(|b| self.schema.has_column(b.index, column))
                        .map(|b| b.index)
                        .collect();
                    hits.sort_unstable();
                    hits.dedup();
                    match hits.len() {
                        0 => continue,
                        1 => return Ok(hits[0]),
                        _ => return Err(ambiguous()),
                    }
                }
                match self.schema.tables_with_column(column).as_slice() {
                    [] => Err(unknown()),
                    [one] => Ok(*one),
                    _ => Err(ambiguous()),
                }
            }
        }
    }
}

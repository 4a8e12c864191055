use alloc::string::String;
use core::fmt::Write;

use super::ast::*;
use super::parser::RESERVED;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeywordCase {
    #[default]
    Lower,
    Upper,
}

/// Renders `ast` as single-line SQL with lowercase keywords and double-quoted strings.
pub fn render(ast: &QueryAst) -> String {
    render_with(ast, KeywordCase::Lower)
}

pub fn render_with(ast: &QueryAst, case: KeywordCase) -> String {
    let mut r = Renderer { out: String::new(), case };
    r.query(ast);
    r.out
}

struct Renderer {
    out: String,
    case: KeywordCase,
}

impl Renderer {
    fn kw(&mut self, kw: &str) {
        match self.case {
            KeywordCase::Lower => self.out.push_str(kw),
            KeywordCase::Upper => self.out.push_str(&kw.to_uppercase()),
        }
    }

    fn query(&mut self, q: &QueryAst) {
        self.kw("select ");
        if q.distinct {
            self.kw("distinct ");
        }
        for (i, item) in q.select.iter().enumerate() {
            if i > 0 {
                self.out.push_str(", ");
            }
            if item.agg == AggFunc::None {
                if item.distinct {
                    self.kw("distinct ");
                }
                self.value_expr(&item.expr);
            } else {
                self.kw(item.agg.name());
                self.out.push('(');
                if item.distinct {
                    self.kw("distinct ");
                }
                self.value_expr(&item.expr);
                self.out.push(')');
            }
        }

        self.kw(" from ");
        for (i, item) in q.from.items.iter().enumerate() {
            if i > 0 {
                self.kw(" join ");
            }
            match &item.table {
                TableRef::Named { name, alias } => {
                    self.ident(name);
                    if let Some(a) = alias {
                        self.kw(" as ");
                        self.ident(a);
                    }
                }
                TableRef::Subquery(sub) => {
                    self.out.push('(');
                    self.query(sub);
                    self.out.push(')');
                }
            }
            if let Some(on) = &item.on {
                self.kw(" on ");
                self.tree(on, None);
            }
        }

        if let Some(w) = &q.where_clause {
            self.kw(" where ");
            self.tree(w, None);
        }
        if !q.group_by.is_empty() {
            self.kw(" group by ");
            for (i, c) in q.group_by.iter().enumerate() {
                if i > 0 {
                    self.out.push_str(", ");
                }
                self.column(c);
            }
        }
        if let Some(h) = &q.having {
            self.kw(" having ");
            self.tree(h, None);
        }
        if !q.order_by.is_empty() {
            self.kw(" order by ");
            for (i, o) in q.order_by.iter().enumerate() {
                if i > 0 {
                    self.out.push_str(", ");
                }
                self.value_expr(&o.expr);
                match o.direction {
                    Some(Direction::Asc) => self.kw(" asc"),
                    Some(Direction::Desc) => self.kw(" desc"),
                    None => {}
                }
            }
        }
        if let Some(n) = q.limit {
            self.kw(" limit ");
            let _ = write!(self.out, "{n}");
        }
        if let Some((kind, rhs)) = &q.set_op {
            self.out.push(' ');
            self.kw(kind.text());
            self.out.push(' ');
            self.query(rhs);
        }
    }

    fn tree(&mut self, tree: &ConditionTree, parent: Option<Connector>) {
        match tree {
            ConditionTree::Leaf(c) => self.condition(c),
            ConditionTree::Node { connector, children } => {
                // AND binds tighter than OR; anything else needs explicit grouping
                let wrap = match parent {
                    None => false,
                    Some(p) => !(p == Connector::Or && *connector == Connector::And),
                };
                if wrap {
                    self.out.push('(');
                }
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        self.out.push(' ');
                        self.kw(connector.text());
                        self.out.push(' ');
                    }
                    self.tree(child, Some(*connector));
                }
                if wrap {
                    self.out.push(')');
                }
            }
        }
    }

    fn condition(&mut self, c: &Condition) {
        self.value_expr(&c.lhs);
        self.out.push(' ');
        if c.op == CondOp::Is {
            self.kw("is ");
            if c.negated {
                self.kw("not ");
            }
        } else {
            if c.negated {
                self.kw("not ");
            }
            self.kw(c.op.text());
            self.out.push(' ');
        }
        self.operand(&c.rhs);
        if let Some(r2) = &c.rhs2 {
            self.kw(" and ");
            self.operand(r2);
        }
    }

    fn operand(&mut self, op: &Operand) {
        match op {
            Operand::Literal(lit) => self.literal(lit),
            Operand::Column(c) => self.col_unit(c),
            Operand::Null => self.kw("null"),
            Operand::Subquery(q) => {
                self.out.push('(');
                self.query(q);
                self.out.push(')');
            }
        }
    }

    fn literal(&mut self, lit: &LiteralValue) {
        match lit.kind {
            LiteralKind::Number => self.out.push_str(&lit.text),
            LiteralKind::String | LiteralKind::Masked => {
                self.out.push('"');
                self.out.push_str(&lit.text.replace('"', "\"\""));
                self.out.push('"');
            }
        }
    }

    fn value_expr(&mut self, v: &ValueExpr) {
        self.col_unit(&v.left);
        if let Some((op, right)) = &v.arith {
            self.out.push(' ');
            self.out.push_str(op.symbol());
            self.out.push(' ');
            self.col_unit(right);
        }
    }

    fn col_unit(&mut self, c: &ColUnit) {
        if c.agg == AggFunc::None {
            if c.distinct {
                self.kw("distinct ");
            }
            self.column(&c.column);
            return;
        }
        self.kw(c.agg.name());
        self.out.push('(');
        if c.distinct {
            self.kw("distinct ");
        }
        self.column(&c.column);
        self.out.push(')');
    }

    fn column(&mut self, c: &ColumnRef) {
        if let Some(q) = c.table.as_ref().or(c.source_alias.as_ref()) {
            self.ident(q);
            self.out.push('.');
        }
        if c.is_star() {
            self.out.push('*');
        } else {
            self.ident(&c.column);
        }
    }

    fn ident(&mut self, name: &str) {
        if needs_quoting(name) {
            self.out.push('`');
            self.out.push_str(&name.replace('`', "``"));
            self.out.push('`');
        } else {
            self.out.push_str(name);
        }
    }
}

fn needs_quoting(name: &str) -> bool {
    let mut chars = name.chars();
    let plain = match chars.next() {
        Some(c) if c == '_' || c.is_alphabetic() => chars.all(|c| c == '_' || c.is_alphanumeric()),
        // digit-led names lex as identifiers as long as a non-digit follows
        Some(c) if c.is_ascii_digit() => {
            name.chars().any(|c| c == '_' || c.is_alphabetic()) && name.chars().all(|c| c == '_' || c.is_alphanumeric())
        }
        _ => false,
    };
    !plain || RESERVED.iter().any(|r| r.eq_ignore_ascii_case(name))
}

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::ast::*;
use super::token::{tokenize, Token, TokenKind, TokenizeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Tokenize(#[from] TokenizeError),
    #[error("syntax error at byte {offset}: expected {}", .expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String> },
    #[error("unsupported construct: {0}")]
    UnsupportedConstruct(String),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Tokenize(TokenizeError::UnterminatedString(o))
            | ParseError::Tokenize(TokenizeError::IllegalCharacter(o))
            | ParseError::Syntax { offset: o, .. } => Some(*o),
            ParseError::UnsupportedConstruct(_) => None,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Words that can never serve as a table or column name.
pub(crate) const RESERVED: &[&str] = &[
    "select", "from", "where", "group", "by", "having", "order", "limit", "join", "on", "as",
    "and", "or", "not", "in", "between", "like", "is", "null", "distinct", "intersect", "union",
    "except", "asc", "desc", "exists", "inner", "left", "right", "full", "cross", "natural",
    "outer", "case", "when", "then", "else",
];

fn unsupported(name: &str) -> ParseError {
    ParseError::UnsupportedConstruct(name.to_string())
}

/// Parses one query of the Spider SQL subset. A trailing semicolon is allowed.
pub fn parse_query(text: &str) -> PResult<QueryAst> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let q = p.query()?;
    p.eat_sym(";");
    if p.pos < p.tokens.len() {
        return Err(p.expected(&["end of query"]));
    }
    Ok(q)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&Token> {
        self.tokens.get(self.pos + n)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.span.start)
    }

    fn expected(&self, what: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: what.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn at_kw(&self, kw: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(kw))
    }

    fn at_sym(&self, sym: &str) -> bool {
        self.peek().is_some_and(|t| t.is_symbol(sym))
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        let hit = self.at_kw(kw);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        let hit = self.at_sym(sym);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.expected(&[kw]))
        }
    }

    fn expect_sym(&mut self, sym: &str) -> PResult<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.expected(&[sym]))
        }
    }

    fn at_subquery(&self) -> bool {
        self.at_sym("(") && self.peek_at(1).is_some_and(|t| t.is_keyword("select"))
    }

    fn query(&mut self) -> PResult<QueryAst> {
        if self.at_kw("with") {
            return Err(unsupported("WITH"));
        }
        self.expect_kw("select")?;
        let distinct = self.eat_kw("distinct");
        if self.at_kw("all") {
            return Err(unsupported("SELECT ALL"));
        }
        let mut select = vec![self.select_item()?];
        while self.eat_sym(",") {
            select.push(self.select_item()?);
        }
        if self.at_kw("as") {
            return Err(unsupported("select alias"));
        }
        self.expect_kw("from")?;
        let from = self.table_list()?;

        let where_clause = if self.eat_kw("where") { Some(self.condition()?) } else { None };

        let mut group_by = Vec::new();
        if self.eat_kw("group") {
            self.expect_kw("by")?;
            group_by.push(self.column()?);
            while self.eat_sym(",") {
                group_by.push(self.column()?);
            }
        }
        let having = if self.eat_kw("having") { Some(self.condition()?) } else { None };
        if having.is_some() && group_by.is_empty() {
            return Err(unsupported("HAVING without GROUP BY"));
        }

        let mut order_by = Vec::new();
        if self.eat_kw("order") {
            self.expect_kw("by")?;
            loop {
                let expr = self.value_expr()?;
                let direction = if self.eat_kw("asc") {
                    Some(Direction::Asc)
                } else if self.eat_kw("desc") {
                    Some(Direction::Desc)
                } else {
                    None
                };
                order_by.push(OrderItem { expr, direction });
                if !self.eat_sym(",") {
                    break;
                }
            }
        }

        let limit = if self.eat_kw("limit") {
            let t = self.peek().ok_or_else(|| self.expected(&["integer"]))?;
            let n = match t.kind {
                TokenKind::Number => t.text.parse::<u64>().ok(),
                _ => None,
            };
            let n = n.ok_or_else(|| self.expected(&["integer"]))?;
            self.pos += 1;
            if self.at_kw("offset") || self.at_sym(",") {
                return Err(unsupported("LIMIT offset"));
            }
            Some(n)
        } else {
            None
        };

        let kind = if self.eat_kw("intersect") {
            Some(SetOpKind::Intersect)
        } else if self.eat_kw("union") {
            Some(SetOpKind::Union)
        } else if self.eat_kw("except") {
            Some(SetOpKind::Except)
        } else {
            None
        };
        let set_op = match kind {
            Some(k) => {
                if self.at_kw("all") {
                    return Err(unsupported("UNION ALL"));
                }
                let rhs = if self.at_subquery() {
                    self.pos += 1;
                    let q = self.query()?;
                    self.expect_sym(")")?;
                    q
                } else {
                    self.query()?
                };
                Some((k, Box::new(rhs)))
            }
            None => None,
        };

        Ok(QueryAst { distinct, select, from, where_clause, group_by, having, order_by, limit, set_op })
    }

    fn select_item(&mut self) -> PResult<SelectItem> {
        if let Some(agg) = self.agg_call_ahead() {
            let save = self.pos;
            self.pos += 2;
            let distinct = self.eat_kw("distinct");
            let inner = self.value_expr()?;
            self.expect_sym(")")?;
            if let Some(op) = self.arith_op() {
                if inner.arith.is_some() || inner.left.agg != AggFunc::None {
                    self.pos = save;
                    return Err(unsupported("chained arithmetic"));
                }
                let left = ColUnit { agg, distinct, column: inner.left.column };
                let right = self.col_unit()?;
                self.reject_chained_arith()?;
                return Ok(SelectItem {
                    agg: AggFunc::None,
                    distinct: false,
                    expr: ValueExpr { left, arith: Some((op, right)) },
                });
            }
            return Ok(SelectItem { agg, distinct, expr: inner });
        }
        let expr = self.value_expr()?;
        Ok(SelectItem { agg: AggFunc::None, distinct: false, expr })
    }

    /// An aggregate keyword immediately followed by `(`.
    fn agg_call_ahead(&self) -> Option<AggFunc> {
        let t = self.peek()?;
        if t.kind != TokenKind::Keyword || !self.peek_at(1).is_some_and(|n| n.is_symbol("(")) {
            return None;
        }
        AggFunc::from_keyword(&t.text)
    }

    fn arith_op(&mut self) -> Option<ArithOp> {
        let op = match self.peek()?.text.as_str() {
            "+" => ArithOp::Add,
            "-" => ArithOp::Sub,
            "*" => ArithOp::Mul,
            "/" => ArithOp::Div,
            _ => return None,
        };
        if self.peek()?.kind != TokenKind::Operator {
            return None;
        }
        self.pos += 1;
        Some(op)
    }

    fn reject_chained_arith(&self) -> PResult<()> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Operator && matches!(t.text.as_str(), "+" | "-" | "*" | "/") => {
                Err(unsupported("chained arithmetic"))
            }
            _ => Ok(()),
        }
    }

    fn value_expr(&mut self) -> PResult<ValueExpr> {
        if self.at_sym("(") && !self.at_subquery() {
            self.pos += 1;
            let inner = self.value_expr()?;
            self.expect_sym(")")?;
            return Ok(inner);
        }
        let left = self.col_unit()?;
        let arith = match self.arith_op() {
            Some(op) => {
                let right = self.col_unit()?;
                self.reject_chained_arith()?;
                Some((op, right))
            }
            None => None,
        };
        Ok(ValueExpr { left, arith })
    }

    fn col_unit(&mut self) -> PResult<ColUnit> {
        if let Some(agg) = self.agg_call_ahead() {
            self.pos += 2;
            let distinct = self.eat_kw("distinct");
            let column = self.column()?;
            if self.at_sym(")") {
                self.pos += 1;
            } else if self.peek().is_some_and(|t| t.kind == TokenKind::Operator) {
                return Err(unsupported("arithmetic inside aggregate"));
            } else {
                return Err(self.expected(&[")"]));
            }
            return Ok(ColUnit { agg, distinct, column });
        }
        if self.at_subquery() {
            return Err(unsupported("subquery as value expression"));
        }
        let distinct = self.eat_kw("distinct");
        let column = self.column()?;
        Ok(ColUnit { agg: AggFunc::None, distinct, column })
    }

    fn name(&mut self) -> PResult<String> {
        let t = self.peek().ok_or_else(|| self.expected(&["identifier"]))?;
        let text = match t.kind {
            TokenKind::Identifier if t.text.starts_with('`') => t.text[1..t.text.len() - 1].replace("``", "`"),
            TokenKind::Identifier => t.text.clone(),
            TokenKind::Keyword if !RESERVED.iter().any(|r| t.text.eq_ignore_ascii_case(r)) => t.text.clone(),
            _ => return Err(self.expected(&["identifier"])),
        };
        self.pos += 1;
        Ok(text)
    }

    fn column(&mut self) -> PResult<ColumnRef> {
        if self.eat_sym("*") {
            return Ok(ColumnRef::bare("*"));
        }
        if self.at_kw("case") {
            return Err(unsupported("CASE"));
        }
        if self.at_kw("cast") {
            return Err(unsupported("CAST"));
        }
        if self.peek().is_some_and(|t| matches!(t.kind, TokenKind::Number | TokenKind::String)) {
            return Err(unsupported("literal as value expression"));
        }
        let first = self.name()?;
        if self.at_sym("(") {
            return Err(unsupported("function call"));
        }
        if self.eat_sym(".") {
            if self.at_sym("*") {
                return Err(unsupported("qualified star"));
            }
            let column = self.name()?;
            return Ok(ColumnRef { table: None, column, source_alias: Some(first) });
        }
        Ok(ColumnRef { table: None, column: first, source_alias: None })
    }

    fn table_list(&mut self) -> PResult<FromClause> {
        let mut items = vec![FromItem { table: self.table_ref()?, on: None }];
        loop {
            if self.at_sym(",") {
                return Err(unsupported("comma join"));
            }
            for kw in ["left", "right", "full", "cross", "natural", "outer"] {
                if self.at_kw(kw) {
                    return Err(unsupported("outer join"));
                }
            }
            let inner = self.eat_kw("inner");
            if !self.eat_kw("join") {
                if inner {
                    return Err(self.expected(&["join"]));
                }
                break;
            }
            let table = self.table_ref()?;
            let on = if self.eat_kw("on") { Some(self.condition()?) } else { None };
            if self.at_kw("using") {
                return Err(unsupported("JOIN USING"));
            }
            items.push(FromItem { table, on });
        }
        Ok(FromClause { items })
    }

    fn table_ref(&mut self) -> PResult<TableRef> {
        if self.at_subquery() {
            self.pos += 1;
            let q = self.query()?;
            self.expect_sym(")")?;
            if self.at_kw("as") || self.peek().is_some_and(|t| t.kind == TokenKind::Identifier) {
                return Err(unsupported("aliased FROM subquery"));
            }
            return Ok(TableRef::Subquery(Box::new(q)));
        }
        let name = self.name()?;
        let alias = if self.eat_kw("as") || self.peek().is_some_and(|t| t.kind == TokenKind::Identifier) {
            Some(self.name()?)
        } else {
            None
        };
        Ok(TableRef::Named { name, alias })
    }

    fn condition(&mut self) -> PResult<ConditionTree> {
        let mut parts = vec![self.conjunction()?];
        while self.eat_kw("or") {
            parts.push(self.conjunction()?);
        }
        Ok(join_parts(Connector::Or, parts))
    }

    fn conjunction(&mut self) -> PResult<ConditionTree> {
        let mut parts = vec![self.cond_atom()?];
        while self.eat_kw("and") {
            parts.push(self.cond_atom()?);
        }
        Ok(join_parts(Connector::And, parts))
    }

    fn cond_atom(&mut self) -> PResult<ConditionTree> {
        if self.at_sym("(") && !self.at_subquery() {
            let save = self.pos;
            self.pos += 1;
            if let Ok(tree) = self.condition() {
                if self.eat_sym(")") {
                    return Ok(tree);
                }
            }
            self.pos = save;
        }
        if self.at_kw("not") {
            return Err(unsupported("prefix NOT"));
        }
        if self.at_kw("exists") {
            return Err(unsupported("EXISTS"));
        }
        Ok(ConditionTree::Leaf(self.predicate()?))
    }

    fn predicate(&mut self) -> PResult<Condition> {
        let lhs = self.value_expr()?;
        let negated = self.eat_kw("not");
        let t = self.peek().ok_or_else(|| self.expected(&["comparison operator"]))?;
        let op = if t.kind == TokenKind::Operator && !negated {
            match t.text.as_str() {
                "=" => CondOp::Eq,
                "!=" | "<>" => CondOp::Ne,
                "<" => CondOp::Lt,
                ">" => CondOp::Gt,
                "<=" => CondOp::Le,
                ">=" => CondOp::Ge,
                _ => return Err(self.expected(&["comparison operator"])),
            }
        } else if t.is_keyword("between") {
            CondOp::Between
        } else if t.is_keyword("in") {
            CondOp::In
        } else if t.is_keyword("like") {
            CondOp::Like
        } else if t.is_keyword("is") && !negated {
            CondOp::Is
        } else if negated {
            return Err(self.expected(&["in", "like", "between"]));
        } else {
            return Err(self.expected(&["comparison operator"]));
        };
        self.pos += 1;

        match op {
            CondOp::Is => {
                let negated = self.eat_kw("not");
                self.expect_kw("null")?;
                Ok(Condition { negated, op, lhs, rhs: Operand::Null, rhs2: None })
            }
            CondOp::Between => {
                let low = self.operand()?;
                self.expect_kw("and")?;
                let high = self.operand()?;
                Ok(Condition { negated, op, lhs, rhs: low, rhs2: Some(high) })
            }
            CondOp::In => {
                if !self.at_subquery() {
                    if self.at_sym("(") {
                        return Err(unsupported("IN value list"));
                    }
                    return Err(self.expected(&["subquery"]));
                }
                let rhs = self.operand()?;
                Ok(Condition { negated, op, lhs, rhs, rhs2: None })
            }
            _ => {
                let rhs = self.operand()?;
                Ok(Condition { negated, op, lhs, rhs, rhs2: None })
            }
        }
    }

    fn operand(&mut self) -> PResult<Operand> {
        if self.at_subquery() {
            self.pos += 1;
            let q = self.query()?;
            self.expect_sym(")")?;
            return Ok(Operand::Subquery(Box::new(q)));
        }
        let t = self.peek().ok_or_else(|| self.expected(&["value"]))?;
        match t.kind {
            TokenKind::String => {
                let lit = LiteralValue::string(&unquote(&t.text));
                self.pos += 1;
                Ok(Operand::Literal(lit))
            }
            TokenKind::Number => {
                let lit = LiteralValue::number(&t.text);
                self.pos += 1;
                Ok(Operand::Literal(lit))
            }
            TokenKind::Operator if t.text == "-" || t.text == "+" => {
                let sign = t.text.clone();
                match self.peek_at(1) {
                    Some(n) if n.kind == TokenKind::Number && n.span.start == t.span.end => {
                        let text = if sign == "-" { alloc::format!("-{}", n.text) } else { n.text.clone() };
                        self.pos += 2;
                        Ok(Operand::Literal(LiteralValue::number(&text)))
                    }
                    _ => Err(self.expected(&["value"])),
                }
            }
            TokenKind::Keyword if t.is_keyword("null") => {
                self.pos += 1;
                Ok(Operand::Null)
            }
            _ => {
                let unit = self.col_unit()?;
                if self.peek().is_some_and(|t| t.kind == TokenKind::Operator && matches!(t.text.as_str(), "+" | "-" | "*" | "/")) {
                    return Err(unsupported("arithmetic on right-hand side"));
                }
                Ok(Operand::Column(unit))
            }
        }
    }
}

fn join_parts(connector: Connector, mut parts: Vec<ConditionTree>) -> ConditionTree {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        ConditionTree::Node { connector, children: parts }
    }
}

fn unquote(text: &str) -> String {
    let q = &text[..1];
    let inner = &text[1..text.len() - 1];
    let doubled = alloc::format!("{q}{q}");
    inner.replace(&doubled, q)
}

use serde::{Deserialize, Serialize};

use crate::sql::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hardness {
    Easy,
    Medium,
    Hard,
    Extra,
}

impl Hardness {
    pub const ALL: [Hardness; 4] = [Hardness::Easy, Hardness::Medium, Hardness::Hard, Hardness::Extra];

    pub fn name(self) -> &'static str {
        match self {
            Hardness::Easy => "easy",
            Hardness::Medium => "medium",
            Hardness::Hard => "hard",
            Hardness::Extra => "extra",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parse(s: &str) -> Option<Hardness> {
        Hardness::ALL.into_iter().find(|h| h.name().eq_ignore_ascii_case(s))
    }
}

/// Counts behind a hardness level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HardnessCounts {
    /// WHERE, GROUP BY, ORDER BY, LIMIT, extra tables, OR connectors and LIKE conditions.
    pub comp1: usize,
    /// Condition subqueries and set operations.
    pub comp2: usize,
    pub others: usize,
}

pub fn hardness_counts(q: &QueryAst) -> HardnessCounts {
    let trees = || q.from.join_conditions().chain(q.where_clause.as_ref()).chain(q.having.as_ref());
    let units = || trees().flat_map(|t| t.leaves());

    let mut comp1 = 0;
    comp1 += q.where_clause.is_some() as usize;
    comp1 += !q.group_by.is_empty() as usize;
    comp1 += !q.order_by.is_empty() as usize;
    comp1 += q.limit.is_some() as usize;
    comp1 += q.from.items.len().saturating_sub(1);
    comp1 += trees().map(|t| t.flatten().1.iter().filter(|c| **c == Connector::Or).count()).sum::<usize>();
    comp1 += units().filter(|c| c.op == CondOp::Like).count();

    let mut comp2 = units()
        .flat_map(|c| core::iter::once(&c.rhs).chain(c.rhs2.as_ref()))
        .filter(|o| matches!(o, Operand::Subquery(_)))
        .count();
    comp2 += q.set_op.is_some() as usize;

    let where_units = q.where_clause.as_ref().map(|t| t.leaves()).unwrap_or_default();
    // negated conditions and HAVING connectors are counted as aggregates too
    let mut aggs = q.select.iter().filter(|s| s.agg != AggFunc::None).count();
    aggs += where_units.iter().filter(|c| c.negated).count();
    aggs += q
        .order_by
        .iter()
        .flat_map(|o| o.expr.col_units())
        .filter(|u| u.agg != AggFunc::None)
        .count();
    if let Some(h) = &q.having {
        let (leaves, connectors) = h.flatten();
        aggs += leaves.iter().filter(|c| c.negated).count() + connectors.len();
    }

    let mut others = 0;
    others += (aggs > 1) as usize;
    others += (q.select.len() > 1) as usize;
    others += (where_units.len() > 1) as usize;
    others += (q.group_by.len() > 1) as usize;

    HardnessCounts { comp1, comp2, others }
}

/// Spider's four-level hardness rubric.
pub fn classify_hardness(q: &QueryAst) -> Hardness {
    let HardnessCounts { comp1, comp2, others } = hardness_counts(q);
    if comp1 <= 1 && others == 0 && comp2 == 0 {
        Hardness::Easy
    } else if (others <= 2 && comp1 <= 1 && comp2 == 0) || (comp1 <= 2 && others < 2 && comp2 == 0) {
        Hardness::Medium
    } else if (others > 2 && comp1 <= 2 && comp2 == 0)
        || (2 < comp1 && comp1 <= 3 && others <= 2 && comp2 == 0)
        || (comp1 <= 1 && others == 0 && comp2 <= 1)
    {
        Hardness::Hard
    } else {
        Hardness::Extra
    }
}

use textsql_core::schema::parse_tables_json;
use textsql_core::sql::*;
use textsql_core::SchemaCatalog;

const TABLES: &str = include_str!("fixtures/tables.json");

const EASY: &str = "SELECT count(*) FROM singer";
const MEDIUM: &str =
    "SELECT count(*), T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid=T2.stuid GROUP BY T1.stuid";
const HARD: &str = "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport = T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid = T1.Airline WHERE T2.City = \"Aberdeen\" AND T3.Airline = \"United Airlines\"";
const EXTRA: &str = "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id = t2.shop_id GROUP BY t1.shop_id ORDER BY count(*) DESC LIMIT 1";
const ABILENE: &str = "SELECT Count(*) FROM airlines JOIN airports WHERE airports.City = \"Abilene\"";

fn catalog() -> SchemaCatalog {
    parse_tables_json(TABLES).unwrap()
}

fn kinds_and_texts(sql: &str) -> Vec<(TokenKind, String)> {
    tokenize(sql).unwrap().into_iter().map(|t| (t.kind, t.text)).collect()
}

#[test]
fn tokenizes_the_easy_query() {
    use TokenKind::{Identifier, Keyword, Operator, Punctuation};
    let got = kinds_and_texts(EASY);
    let want: Vec<(TokenKind, String)> = [
        (Keyword, "SELECT"),
        (Keyword, "count"),
        (Punctuation, "("),
        (Operator, "*"),
        (Punctuation, ")"),
        (Keyword, "FROM"),
        (Identifier, "singer"),
    ]
    .into_iter()
    .map(|(k, t)| (k, t.to_string()))
    .collect();
    assert_eq!(got, want);
}

#[test]
fn tokenizes_empty_input() {
    assert!(tokenize("").unwrap().is_empty());
}

#[test]
fn keeps_quotes_on_string_tokens() {
    let toks = tokenize("WHERE airports.City = \"Abilene\"").unwrap();
    let s = toks.iter().find(|t| t.kind == TokenKind::String).unwrap();
    assert_eq!(s.text, "\"Abilene\"");
    let toks = tokenize("WHERE name = 'Rock Band'").unwrap();
    assert_eq!(toks.last().unwrap().text, "'Rock Band'");
}

#[test]
fn token_spans_reconstruct_the_input() {
    for sql in [EASY, MEDIUM, HARD, EXTRA, ABILENE] {
        let toks = tokenize(sql).unwrap();
        let mut rebuilt = String::new();
        let mut at = 0;
        for t in &toks {
            rebuilt.push_str(&sql[at..t.span.start]);
            assert_eq!(&sql[t.span.clone()], t.text);
            rebuilt.push_str(&t.text);
            at = t.span.end;
        }
        rebuilt.push_str(&sql[at..]);
        assert_eq!(rebuilt, sql);
    }
}

#[test]
fn tokenizer_errors() {
    assert_eq!(tokenize("SELECT \"abc"), Err(TokenizeError::UnterminatedString(7)));
    assert_eq!(tokenize("SELECT a FROM t WHERE a = ?"), Err(TokenizeError::IllegalCharacter(26)));
}

#[test]
fn parses_the_easy_query() {
    let q = parse_query(EASY).unwrap();
    assert_eq!(q.select.len(), 1);
    assert_eq!(q.select[0].agg, AggFunc::Count);
    assert!(q.select[0].expr.left.column.is_star());
    assert_eq!(q.from.items.len(), 1);
    assert!(q.where_clause.is_none() && q.group_by.is_empty() && q.having.is_none());
    assert!(q.order_by.is_empty() && q.limit.is_none() && q.set_op.is_none());
}

#[test]
fn parses_the_extra_query() {
    let q = parse_query(EXTRA).unwrap();
    assert_eq!(q.from.items.len(), 2);
    assert!(q.from.items[1].on.is_some());
    assert_eq!(q.group_by.len(), 1);
    assert_eq!(q.group_by[0].column, "shop_id");
    assert_eq!(q.group_by[0].source_alias.as_deref(), Some("t1"));
    assert_eq!(q.order_by.len(), 1);
    assert_eq!(q.order_by[0].direction, Some(Direction::Desc));
    assert_eq!(q.order_by[0].expr.left.agg, AggFunc::Count);
    assert_eq!(q.limit, Some(1));
}

#[test]
fn parses_nested_in_subquery_and_round_trips() {
    let q = parse_query("SELECT a FROM t WHERE x IN (SELECT x FROM u)").unwrap();
    let leaf = q.where_clause.as_ref().unwrap().leaves()[0].clone();
    assert_eq!(leaf.op, CondOp::In);
    assert!(matches!(leaf.rhs, Operand::Subquery(_)));
    assert_eq!(parse_query(&render(&q)).unwrap(), q);
}

#[test]
fn parses_the_whole_grammar() {
    let sqls = [
        "SELECT DISTINCT name FROM singer",
        "SELECT max(age), min(age), avg(age), sum(age), count(DISTINCT country) FROM singer",
        "SELECT age + singer_id, age - singer_id, age * singer_id, age / singer_id FROM singer",
        "SELECT name FROM singer WHERE age > 20 AND (country = 'France' OR country = 'Spain')",
        "SELECT name FROM singer WHERE age BETWEEN 20 AND 30",
        "SELECT name FROM singer WHERE name LIKE '%Jo%' AND country NOT LIKE 'F%'",
        "SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM singer_in_concert)",
        "SELECT name FROM singer WHERE country IS NULL",
        "SELECT country, count(*) FROM singer GROUP BY country HAVING count(*) > 2 ORDER BY country ASC",
        "SELECT name FROM singer INTERSECT SELECT name FROM singer WHERE age > 20",
        "SELECT name FROM singer UNION SELECT name FROM singer",
        "SELECT name FROM singer EXCEPT SELECT name FROM singer WHERE age < 30",
        "SELECT count(*) FROM (SELECT name FROM singer)",
        "SELECT name FROM singer ORDER BY age DESC, name LIMIT 3",
    ];
    for sql in sqls {
        let q = parse_query(sql).unwrap_or_else(|e| panic!("{sql}: {e}"));
        assert_eq!(parse_query(&render(&q)).unwrap(), q, "{sql}");
    }
}

#[test]
fn rejects_sql_outside_the_subset() {
    for sql in [
        "SELECT a FROM t LEFT JOIN u ON t.x = u.x",
        "SELECT a FROM t, u",
        "SELECT CASE WHEN a THEN 1 END FROM t",
        "WITH x AS (SELECT 1) SELECT a FROM x",
        "SELECT a AS b FROM t",
    ] {
        assert!(matches!(parse_query(sql), Err(ParseError::UnsupportedConstruct(_))), "{sql}");
    }
    assert!(matches!(parse_query("SELECT FROM t"), Err(ParseError::Syntax { .. })));
}

#[test]
fn canonicalize_erases_aliases() {
    let cat = catalog();
    let schema = cat.get("pets_1").unwrap();
    let c = canonicalize(&parse_query("SELECT T1.stuid FROM student AS T1").unwrap(), schema).unwrap();
    assert_eq!(render(&c), "select student.stuid from student");
}

#[test]
fn canonicalize_resolves_the_hard_query_aliases() {
    let cat = catalog();
    let schema = cat.get("flight_2").unwrap();
    let c = canonicalize(&parse_query(HARD).unwrap(), schema).unwrap();
    let r = render(&c);
    assert!(!r.contains("t1.") && !r.contains("t2.") && !r.contains("t3."), "{r}");
    assert!(r.contains("flights.destairport = airports.airportcode"), "{r}");
    assert!(r.contains("airlines.uid = flights.airline"), "{r}");
    assert!(r.contains("airports.city = \"Aberdeen\""), "{r}");
    assert_eq!(canonicalize(&c, schema).unwrap(), c);
}

#[test]
fn canonicalize_errors() {
    let cat = catalog();
    let schema = cat.get("concert_singer").unwrap();
    let err = |sql: &str| canonicalize(&parse_query(sql).unwrap(), schema).unwrap_err();
    assert!(matches!(err("SELECT name FROM nowhere"), CanonError::UnknownTable(_)));
    assert!(matches!(err("SELECT nothing FROM singer"), CanonError::UnknownColumn(_)));
    assert!(matches!(
        err("SELECT name FROM singer JOIN stadium ON singer.singer_id = stadium.stadium_id"),
        CanonError::AmbiguousColumn(_)
    ));
}

#[test]
fn canonicalize_ignores_keyword_and_identifier_case() {
    let cat = catalog();
    let schema = cat.get("employee_hire_evaluation").unwrap();
    let a = canonicalize(&parse_query(EXTRA).unwrap(), schema).unwrap();
    let b = canonicalize(&parse_query(&EXTRA.to_uppercase()).unwrap(), schema).unwrap();
    assert_eq!(a, b);
}

#[test]
fn strip_values_masks_abilene_as_terminal() {
    let q = strip_values(&parse_query(ABILENE).unwrap());
    let r = render(&q);
    assert!(r.ends_with("where airports.City = \"terminal\""), "{r}");
    assert!(!r.contains("Abilene"));
}

#[test]
fn strip_values_masks_both_between_bounds_and_keeps_limit() {
    let q = strip_values(&parse_query("SELECT name FROM singer WHERE age BETWEEN 1 AND 5 LIMIT 3").unwrap());
    let r = render(&q);
    assert_eq!(r.matches("\"terminal\"").count(), 2, "{r}");
    assert!(r.ends_with("limit 3"), "{r}");
}

#[test]
fn strip_values_without_literals_is_a_no_op() {
    let q = parse_query(MEDIUM).unwrap();
    assert_eq!(strip_values(&q), q);
}

#[test]
fn strip_values_recurses_into_subqueries() {
    let q = parse_query("SELECT name FROM singer WHERE age > (SELECT avg(age) FROM singer WHERE country = 'France')")
        .unwrap();
    let r = render(&strip_values(&q));
    assert!(!r.contains("France") && r.contains("\"terminal\""), "{r}");
}

#[test]
fn renders_the_easy_query() {
    assert_eq!(render(&parse_query(EASY).unwrap()), "select count(*) from singer");
}

#[test]
fn renders_single_quotes_as_double() {
    let r = render(&parse_query("SELECT a FROM t WHERE b = 'it''s'").unwrap());
    assert_eq!(r, "select a from t where b = \"it's\"");
}

//! Database schemas as described by Spider's `tables.json`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("duplicate db_id {0}")]
    DuplicateDbId(String),
    #[error("{db_id}: key refers to column {index}, but there are only {columns} columns")]
    DanglingKeyIndex { db_id: String, index: usize, columns: usize },
    #[error("{db_id}: column {column} refers to table {table}, but there are only {tables} tables")]
    TableIndexOutOfRange { db_id: String, column: usize, table: i64, tables: usize },
    #[error("no schema for db_id {0}")]
    MissingSchema(String),
    #[error("malformed tables JSON: {0}")]
    MalformedJson(String),
}

#[derive(Deserialize)]
struct TablesEntry {
    db_id: String,
    table_names_original: Vec<String>,
    column_names_original: Vec<(i64, String)>,
    #[serde(default)]
    column_types: Vec<String>,
    #[serde(default)]
    primary_keys: Vec<KeyIndex>,
    #[serde(default)]
    foreign_keys: Vec<(usize, usize)>,
}

/// Composite primary keys appear as nested lists in some releases.
#[derive(Deserialize)]
#[serde(untagged)]
enum KeyIndex {
    One(usize),
    Many(Vec<usize>),
}

/// Parses Spider's `tables.json`.
pub fn parse_tables_json(text: &str) -> Result<SchemaCatalog, SchemaError> {
    let entries: Vec<TablesEntry> =
        serde_json::from_str(text).map_err(|e| SchemaError::MalformedJson(format!("{e}")))?;
    let mut catalog = SchemaCatalog::new();
    for e in entries {
        let pks = e
            .primary_keys
            .into_iter()
            .flat_map(|k| match k {
                KeyIndex::One(i) => alloc::vec![i],
                KeyIndex::Many(v) => v,
            })
            .collect();
        let schema = DbSchema::from_parts(
            &e.db_id,
            e.table_names_original,
            e.column_names_original,
            e.column_types,
            pks,
            e.foreign_keys,
        )?;
        catalog.insert(schema)?;
    }
    Ok(catalog)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaColumn {
    /// `None` only for the `*` pseudo-column.
    pub table: Option<usize>,
    pub name: String,
    pub col_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbSchema {
    pub db_id: String,
    pub tables: Vec<String>,
    /// Column 0 is conventionally `*`, as in `tables.json`.
    pub columns: Vec<SchemaColumn>,
    pub primary_keys: Vec<usize>,
    pub foreign_keys: Vec<(usize, usize)>,
}

impl DbSchema {
    /// Builds a schema from `tables.json` style parallel arrays and validates it.
    pub fn from_parts(
        db_id: &str,
        tables: Vec<String>,
        columns: Vec<(i64, String)>,
        types: Vec<String>,
        primary_keys: Vec<usize>,
        foreign_keys: Vec<(usize, usize)>,
    ) -> Result<DbSchema, SchemaError> {
        let ntables = tables.len();
        let mut cols = Vec::with_capacity(columns.len());
        for (i, (t, name)) in columns.into_iter().enumerate() {
            let table = if t < 0 {
                None
            } else if (t as usize) < ntables {
                Some(t as usize)
            } else {
                return Err(SchemaError::TableIndexOutOfRange {
                    db_id: db_id.into(),
                    column: i,
                    table: t,
                    tables: ntables,
                });
            };
            let col_type = types.get(i).cloned().unwrap_or_default();
            cols.push(SchemaColumn { table, name, col_type });
        }
        let schema = DbSchema { db_id: db_id.into(), tables, columns: cols, primary_keys, foreign_keys };
        schema.validate()?;
        Ok(schema)
    }

    pub fn validate(&self) -> Result<(), SchemaError> {
        let n = self.columns.len();
        let keys = self.primary_keys.iter().chain(self.foreign_keys.iter().flat_map(|(a, b)| [a, b]));
        for &k in keys {
            if k >= n {
                return Err(SchemaError::DanglingKeyIndex { db_id: self.db_id.clone(), index: k, columns: n });
            }
        }
        for (i, c) in self.columns.iter().enumerate() {
            if let Some(t) = c.table {
                if t >= self.tables.len() {
                    return Err(SchemaError::TableIndexOutOfRange {
                        db_id: self.db_id.clone(),
                        column: i,
                        table: t as i64,
                        tables: self.tables.len(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn table_index(&self, name: &str) -> Option<usize> {
        let name = name.to_lowercase();
        self.tables.iter().position(|t| t.to_lowercase() == name)
    }

    pub fn has_column(&self, table: usize, column: &str) -> bool {
        let column = column.to_lowercase();
        self.columns.iter().any(|c| c.table == Some(table) && c.name.to_lowercase() == column)
    }

    /// Indices of the tables that have a column named `column`.
    pub fn tables_with_column(&self, column: &str) -> Vec<usize> {
        let column = column.to_lowercase();
        let mut out: Vec<usize> = self
            .columns
            .iter()
            .filter(|c| c.name.to_lowercase() == column)
            .filter_map(|c| c.table)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Lowercase `table.column` name of column `idx`, or `*`.
    pub fn qualified_name(&self, idx: usize) -> String {
        let c = &self.columns[idx];
        match c.table {
            Some(t) => format!("{}.{}", self.tables[t].to_lowercase(), c.name.to_lowercase()),
            None => String::from("*"),
        }
    }

    /// Columns linked by foreign keys, each mapped to the lowest-indexed
    /// column of its group.
    pub fn foreign_key_map(&self) -> BTreeMap<String, String> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &(a, b) in &self.foreign_keys {
            let slot = match groups.iter().position(|g| g.contains(&a) || g.contains(&b)) {
                Some(i) => i,
                None => {
                    groups.push(Vec::new());
                    groups.len() - 1
                }
            };
            for k in [a, b] {
                if !groups[slot].contains(&k) {
                    groups[slot].push(k);
                }
            }
        }
        let mut map = BTreeMap::new();
        for mut g in groups {
            g.sort_unstable();
            let root = self.qualified_name(g[0]);
            for idx in g {
                map.insert(self.qualified_name(idx), root.clone());
            }
        }
        map
    }

    /// One line per table: `name(col, col, ...)`.
    pub fn summary(&self) -> Vec<String> {
        self.tables
            .iter()
            .enumerate()
            .map(|(ti, t)| {
                let cols: Vec<&str> = self
                    .columns
                    .iter()
                    .filter(|c| c.table == Some(ti))
                    .map(|c| c.name.as_str())
                    .collect();
                format!("{}({})", t, cols.join(", "))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaCatalog {
    schemas: BTreeMap<String, DbSchema>,
}

impl SchemaCatalog {
    pub fn new() -> SchemaCatalog {
        SchemaCatalog::default()
    }

    pub fn insert(&mut self, schema: DbSchema) -> Result<(), SchemaError> {
        if self.schemas.contains_key(&schema.db_id) {
            return Err(SchemaError::DuplicateDbId(schema.db_id));
        }
        self.schemas.insert(schema.db_id.clone(), schema);
        Ok(())
    }

    pub fn get(&self, db_id: &str) -> Result<&DbSchema, SchemaError> {
        self.schemas.get(db_id).ok_or_else(|| SchemaError::MissingSchema(db_id.into()))
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DbSchema> {
        self.schemas.values()
    }
}

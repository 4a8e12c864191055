"""Labels (gold, pred) pairs with the reference Spider exact-set-match evaluator.

The evaluator sources (process_sql.py and evaluation.py from the test-suite-sql-eval
project) are not vendored here. Point --evaluator-dir at a directory holding them; one
copy ships inside the `nl2sql360` wheel under nl2sql360/evaluator/test_suite_sql_eval/.

NLTK's sentence splitter needs downloadable model data; SQL strings are single
"sentences", so word_tokenize is replaced by the Treebank word tokenizer it wraps.

Output TSV columns: index, kind, db_id, matched (0/1), gold_hardness.
"""
import argparse
import importlib
import json
import os
import shutil
import sqlite3
import sys
import tempfile
from copy import deepcopy


def load_evaluator(src_dir):
    pkg_root = tempfile.mkdtemp(prefix="spider_eval_")
    pkg = os.path.join(pkg_root, "spider_ref")
    os.makedirs(pkg)
    for name in ("process_sql.py", "evaluation.py"):
        shutil.copy(os.path.join(src_dir, name), os.path.join(pkg, name))
    open(os.path.join(pkg, "__init__.py"), "w").close()
    with open(os.path.join(pkg, "exec_eval.py"), "w") as f:
        f.write("def eval_exec_match(*a, **k):\n    raise NotImplementedError\n")
    sys.path.insert(0, pkg_root)
    from nltk.tokenize.destructive import NLTKWordTokenizer

    process_sql = importlib.import_module("spider_ref.process_sql")
    tok = NLTKWordTokenizer()
    process_sql.word_tokenize = tok.tokenize
    evaluation = importlib.import_module("spider_ref.evaluation")
    return process_sql, evaluation


def build_databases(tables, out_dir):
    paths = {}
    for entry in tables:
        db_id = entry["db_id"]
        path = os.path.join(out_dir, db_id + ".sqlite")
        conn = sqlite3.connect(path)
        for ti, table in enumerate(entry["table_names_original"]):
            cols = [c for t, c in entry["column_names_original"] if t == ti]
            conn.execute("CREATE TABLE `%s` (%s)" % (table, ", ".join("`%s`" % c for c in cols)))
        conn.commit()
        conn.close()
        paths[db_id] = path
    return paths


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--evaluator-dir", required=True)
    ap.add_argument("--tables", required=True)
    ap.add_argument("--pairs", required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    process_sql, evaluation = load_evaluator(args.evaluator_dir)
    tables = json.load(open(args.tables, encoding="utf-8"))
    kmaps = {e["db_id"]: evaluation.build_foreign_key_map(e) for e in tables}
    db_dir = tempfile.mkdtemp(prefix="spider_db_")
    db_paths = build_databases(tables, db_dir)

    lines = open(args.pairs, encoding="utf-8").read().splitlines()[1:]
    evaluator = evaluation.Evaluator()
    out = ["index\tkind\tdb_id\tmatched\tgold_hardness"]
    for i, line in enumerate(lines):
        kind, db_id, gold, pred = line.split("\t")
        schema = process_sql.Schema(process_sql.get_schema(db_paths[db_id]))
        g_sql = process_sql.get_sql(schema, gold)
        hardness = evaluator.eval_hardness(g_sql)
        try:
            p_sql = process_sql.get_sql(schema, pred)
        except Exception:
            p_sql = deepcopy(evaluation._EMPTY_SQL)
        kmap = kmaps[db_id]
        g_valid = evaluation.build_valid_col_units(g_sql["from"]["table_units"], schema)
        g_sql = evaluation.rebuild_sql_col(g_valid, evaluation.rebuild_sql_val(g_sql), kmap)
        p_valid = evaluation.build_valid_col_units(p_sql["from"]["table_units"], schema)
        p_sql = evaluation.rebuild_sql_col(p_valid, evaluation.rebuild_sql_val(p_sql), kmap)
        matched = 1 if evaluator.eval_exact_match(p_sql, g_sql) else 0
        out.append("%d\t%s\t%s\t%d\t%s" % (i, kind, db_id, matched, hardness))

    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()

"""Command line front end.

Exit codes: 0 success, 1 selftest disagreement, 2 invalid input, 3 query
outside the proven window, 4 internal contradiction between two routes.
Data goes to stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .arith import Prime, is_metastable
from .counts import CountResult, count_bundles, eo_top_cell_closed
from .detection import (DetectionInstance, detection_hits, eo2_family, eop_family,
                        ko_family, tmf2_families, toda_degree, unitary_families)
from .eo import closed_form_splitting, eo_neg1_cp_tensor_dcp, eo_neg1_shifted_cp, tensor_rule
from .errors import InternalContradiction, InvalidInput, OutOfWindow
from .groups import FinitePGroup

MAX_ROWS = 10**6
SAFE_INT = 2**53 - 1

TABLE_COLUMNS = ["rank", "dim", "corank", "metastable", "kind", "valuation", "group", "citation"]


# --- serialization -------------------------------------------------------

def _big(x):
    """Integers beyond 2^53-1 become decimal strings; everything else is recursed."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else int(x)
    if isinstance(x, dict):
        return {k: _big(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_big(v) for v in x]
    return x


_TEXT_FIELDS = ("target", "source_label", "citation")


def _unbig(x):
    return int(x) if isinstance(x, str) else x


def group_to_json(g: FinitePGroup | None):
    if g is None:
        return None
    return {"group": list(g.exponents), "order": g.order_string()}


def group_from_json(obj, p) -> FinitePGroup | None:
    if obj is None:
        return None
    return FinitePGroup(p, tuple(obj["group"]))


def decomposition_to_json(summands):
    return [s.as_pair() for s in sorted(summands)]


def count_result_to_json(res: CountResult) -> dict:
    return {
        "kind": res.kind,
        "valuation": res.valuation,
        "lower_bound": res.lower_bound,
        "group": group_to_json(res.group),
        "metastable": res.metastable,
        "rank": res.rank,
        "dim": res.dim,
        "corank": res.corank,
        "prime": res.prime,
        "instances": [i.as_dict() for i in res.instances],
        "notes": list(res.notes),
    }


def count_result_from_json(obj, citations=()) -> CountResult:
    p = _unbig(obj["prime"])
    return CountResult(
        kind=obj["kind"],
        valuation=_unbig(obj["valuation"]),
        group=group_from_json(obj["group"], p),
        citations=list(citations),
        metastable=obj["metastable"],
        rank=_unbig(obj["rank"]),
        dim=_unbig(obj["dim"]),
        prime=p,
        instances=[DetectionInstance(**{k: v if k in _TEXT_FIELDS else _unbig(v)
                                        for k, v in i.items()})
                   for i in obj["instances"]],
        notes=list(obj["notes"]),
        lower_bound=_unbig(obj["lower_bound"]),
    )


def parse_count_document(text: str) -> CountResult:
    doc = json.loads(text)
    return count_result_from_json(doc["result"], doc["citations"])


def emit_json(query: dict, result: dict, citations) -> str:
    doc = {"query": query, "result": result, "citations": list(citations)}
    return json.dumps(_big(doc), sort_keys=True, indent=2) + "\n"


def emit_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([row[c] for c in columns])
    return buf.getvalue()


def emit_text(result: dict, citations) -> str:
    lines = []
    for k in sorted(result):
        lines.append(f"{k}: {result[k]}")
    if citations:
        lines.append("citations: " + "; ".join(citations))
    return "\n".join(lines) + "\n"


# --- table ---------------------------------------------------------------

def table_row(r, c, p) -> dict:
    n = r + c
    try:
        res = count_bundles(r, n, p)
    except OutOfWindow as e:
        res = CountResult("unknown", None, None, [], is_metastable(r, n), r, n, int(p),
                          notes=[str(e)])
    return {
        "rank": r,
        "dim": n,
        "corank": c,
        "metastable": str(res.metastable).lower(),
        "kind": res.kind,
        "valuation": "" if res.valuation is None else res.valuation,
        "group": "" if res.group is None else str(res.group).replace(" ", ""),
        "citation": "|".join(res.citations).replace(",", ";"),
    }


def default_start(c, p) -> int:
    sq = p * p
    m = max(c, 1)
    return -(-m // sq) * sq


def table_rows(c, p, start=None, rows=None):
    p = Prime(p)
    if c < 0:
        raise InvalidInput("corank must be non-negative")
    start = default_start(c, p) if start is None else start
    rows = p * p if rows is None else rows
    if rows < 1 or rows > MAX_ROWS:
        raise InvalidInput(f"row count must be in [1, {MAX_ROWS}]")
    if start < 0:
        raise InvalidInput("start rank must be non-negative")
    return [table_row(r, c, p) for r in range(start, start + rows)]


# --- commands ------------------------------------------------------------

def _query(args, *names):
    return {k: getattr(args, k) for k in names}


def cmd_count(args):
    res = count_bundles(args.rank, args.dim, args.prime)
    return (_query(args, "prime", "rank", "dim") | {"command": "count"},
            count_result_to_json(res), res.citations)


def cmd_split(args):
    split = closed_form_splitting(args.rank, args.dim, args.prime)
    result = {"main": decomposition_to_json(split.main),
              "junk": decomposition_to_json(split.junk)}
    return (_query(args, "prime", "rank", "dim") | {"command": "split"}, result,
            ["Adams-summand splitting of CP^n_r"])


def cmd_tensor(args):
    rule = tensor_rule(args.l, args.l2, args.prime)
    result = {"main": decomposition_to_json(rule.main),
              "junk": decomposition_to_json(rule.junk)}
    return (_query(args, "prime", "l", "l2") | {"command": "tensor"}, result,
            ["X_l (x) X_l' splitting"])


def cmd_eo_group(args):
    r, n, p = args.rank, args.dim, args.prime
    if args.which == "pairs":
        g = eo_neg1_cp_tensor_dcp(r, n, p)
        cites = ["EO_-1 of CP^n_r (x) D CP^n_r by summand pairs"]
    elif args.which == "top-cell":
        g = eo_top_cell_closed(r, n, p)
        cites = ["top-cell closed form", "EO splitting of CP^n_r"]
    else:
        g = eo_neg1_shifted_cp(r, n, p)
        cites = ["EO splitting of CP^n_r"]
    return (_query(args, "prime", "rank", "dim", "which") | {"command": "eo-group"},
            group_to_json(g), cites)


def cmd_detect(args):
    fam = args.family
    if fam is None:
        if None in (args.rank, args.dim):
            raise InvalidInput("give --family or both --rank and --dim")
        hits = detection_hits(args.rank, args.dim, args.prime)
        query = _query(args, "prime", "rank", "dim")
    elif args.unitary:
        params = {"ko": {"t": args.t, "i": args.index},
                  "tmf_w": {"t": args.t, "index": args.index},
                  "tmf_wk": {"t": args.t, "index": args.index},
                  "eo2": {"t": args.t, "l": args.index},
                  "eop": {"p": args.prime, "j": args.j, "l": args.index}}[fam]
        hits = [unitary_families(fam, **params)]
        query = _query(args, "family", "t", "index", "j", "prime") | {"unitary": True}
    else:
        if fam == "ko":
            hits = [ko_family(args.t, args.index)]
        elif fam in ("tmf_w", "tmf_wk"):
            hits = [tmf2_families(args.t, args.index, "w" if fam == "tmf_w" else "w_kappa4")]
        elif fam == "eo2":
            hits = [eo2_family(args.t, args.index)]
        else:
            hits = [eop_family(args.prime, args.index)]
        query = _query(args, "family", "t", "index", "prime")
    result = {"instances": [h.as_dict() for h in hits]}
    if hits and hits[0].target == "projective":
        result["toda"] = [toda_degree(h.rank, h.dim).describe() for h in hits]
    return query | {"command": "detect"}, result, sorted({h.citation for h in hits})


def _write(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_table(args):
    rows = table_rows(args.corank, args.prime, args.start, args.rows)
    query = _query(args, "prime", "corank", "start", "rows") | {"command": "table"}
    if args.format == "json":
        return emit_json(query, {"rows": rows}, [])
    return emit_csv(rows, TABLE_COLUMNS)


def cmd_selftest(args):
    from . import checks

    results = checks.run_all()
    for r in results:
        print(r.summary(), file=sys.stderr)
    if args.format == "json":
        doc = {r.name: {"ok": r.ok, "tried": r.tried, "failures": r.failure_count}
               for r in results}
        _write(args, emit_json({"command": "selftest"}, doc, []))
    else:
        _write(args, "".join(r.summary() + "\n" for r in results))
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "count": cmd_count,
    "split": cmd_split,
    "tensor": cmd_tensor,
    "eo-group": cmd_eo_group,
    "detect": cmd_detect,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="cpbundles", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, prime_required=True):
        sp.add_argument("--prime", "-p", type=int, required=prime_required,
                        default=None if prime_required else 2)
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--output", "-o")

    sp = sub.add_parser("count", help="p-part of the stably trivial bundle count")
    common(sp)
    sp.add_argument("--rank", "-r", type=int, required=True)
    sp.add_argument("--dim", "-n", type=int, required=True)

    sp = sub.add_parser("split", help="EO splitting of CP^n_r")
    common(sp)
    sp.add_argument("--rank", "-r", type=int, required=True)
    sp.add_argument("--dim", "-n", type=int, required=True)

    sp = sub.add_parser("tensor", help="splitting of X_l (x) X_l2")
    common(sp)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--l2", type=int, required=True)

    sp = sub.add_parser("eo-group", help="EO_-1 groups")
    common(sp)
    sp.add_argument("--rank", "-r", type=int, required=True)
    sp.add_argument("--dim", "-n", type=int, required=True)
    sp.add_argument("--which", choices=["pairs", "top-cell", "shifted"], default="pairs")

    sp = sub.add_parser("detect", help="detection families")
    common(sp, prime_required=False)
    sp.add_argument("--family", choices=["ko", "tmf_w", "tmf_wk", "eo2", "eop"])
    sp.add_argument("--unitary", action="store_true")
    sp.add_argument("--t", type=int, default=0)
    sp.add_argument("--index", type=int)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--rank", "-r", type=int)
    sp.add_argument("--dim", "-n", type=int)

    sp = sub.add_parser("table", help="one row per rank at fixed corank")
    common(sp)
    sp.add_argument("--corank", "-c", type=int, required=True)
    sp.add_argument("--start", type=int)
    sp.add_argument("--rows", type=int)

    sp = sub.add_parser("selftest", help="run the oracle-agreement grids")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--output", "-o")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        if args.command == "selftest":
            return cmd_selftest(args)
        if args.command == "table":
            if args.format == "text":
                args.format = "csv"
            _write(args, cmd_table(args))
            return 0
        if args.command == "detect" and args.family in ("ko", "tmf_w", "tmf_wk", "eo2", "eop") \
                and args.index is None:
            raise InvalidInput("--index is required with --family")
        query, result, citations = COMMANDS[args.command](args)
        if args.format == "json":
            text = emit_json(query, result, citations)
        elif args.format == "csv":
            flat = {k: json.dumps(_big(v), sort_keys=True) if isinstance(v, (dict, list)) else v
                    for k, v in sorted(result.items())} if isinstance(result, dict) else {}
            text = emit_csv([flat], list(flat))
        else:
            text = emit_text(result, citations)
        _write(args, text)
        return 0
    except OutOfWindow as e:
        msg = f"error: {e}"
        if e.window:
            msg += f" (valid window: {e.window})"
        print(msg, file=sys.stderr)
        return 3
    except InternalContradiction as e:
        print(f"internal contradiction: {e}", file=sys.stderr)
        return 4
    except InvalidInput as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())

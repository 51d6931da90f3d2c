"""Command-line driver.

Subcommands run the pipeline stages and write deterministic JSON artifacts
plus a human-readable summary.  Any required check failing exits nonzero
with the failing rows reported.

    localp1p1 relations --lam 3 --mu 5 -D 8
    localp1p1 rmatrix -K 2
    localp1p1 fg -g 2 -D 6
    localp1p1 hae -g 2 -D 5
    localp1p1 all
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .pipeline import RunConfig, get_pipeline
from .rational import qq_str

SCHEMA_VERSION = 1


def _dump(obj, outdir, name):
    if not outdir:
        return
    os.makedirs(outdir, exist_ok=True)
    obj = {"schema_version": SCHEMA_VERSION, **obj}
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    return path


def _summarize(rows):
    bad = [r for r in rows if r.get("required") and not r["ok"]]
    for r in rows:
        mark = "ok" if r["ok"] else ("FAIL" if r.get("required") else "mismatch")
        extra = "" if r["ok"] else " (%s)" % (r.get("detail"),)
        print("  [%s] %s%s" % (mark, r["name"], extra))
    return bad


def _series_obj(series):
    return series.to_json_obj()


def cmd_iseries(pipe, outdir):
    conn = pipe.connection()
    res = pipe.picard_fuchs()
    rows = []
    for i, r in enumerate(res):
        fn = r.first_nonzero()
        rows.append(
            {
                "name": "picard-fuchs-%d" % (i + 1),
                "ok": fn is None,
                "required": True,
                "detail": None if fn is None else "first nonzero %s" % (fn,),
            }
        )
    y0 = conn.columns[0]
    layers = {
        str(k): [c.to_json_obj() for c in y0.layer(k)] for k in range(min(6, y0.kbot))
    }
    _dump(
        {"checks": rows, "solution_family_layers": layers},
        outdir,
        "iseries.json",
    )
    return _summarize(rows)


def cmd_relations(pipe, outdir):
    rows = pipe.relations() + pipe.eigen_report()
    conn = pipe.connection()
    gens = pipe.generators()
    frames_obj = {
        "%d%d" % s: {
            "m": _series_obj(fr.m),
            "l": _series_obj(fr.l),
            "delta": _series_obj(fr.delta),
        }
        for s, fr in pipe.frames().items()
    }
    gens_obj = {
        name: _series_obj(getattr(gens, name))
        for name in ("d1", "d2", "p1", "p2", "p3", "p4", "x")
    }
    _dump(
        {
            "checks": rows,
            "a1": [[_series_obj(x) for x in row] for row in conn.a1],
            "a2": [[_series_obj(x) for x in row] for row in conn.a2],
            "frames": frames_obj,
            "generators": gens_obj,
        },
        outdir,
        "relations.json",
    )
    return _summarize(rows)


def cmd_rmatrix(pipe, outdir):
    from .pipeline import wick_unit_column
    from .wick import first_order_closed_form

    rows = pipe.qde_report()
    if pipe.config.order >= 1:
        sym = wick_unit_column(pipe.config.order)
        closed_ok = sym[1] == first_order_closed_form()
    else:
        closed_ok = True
    rows = rows + [
        {
            "name": "stationary-phase-closed-form-k1",
            "ok": bool(closed_ok),
            "required": True,
            "detail": None,
        }
    ]
    cols = pipe.columns()
    dump_cols = {
        "%d%d" % s: {
            "basis": ["1", "H1", "H2", "H1H2"],
            "orders": [
                [_series_obj(cols[s].rho(w, k)) for k in range(pipe.config.order + 1)]
                for w in range(4)
            ],
        }
        for s in cols
    }
    _dump({"checks": rows, "columns": dump_cols}, outdir, "rmatrix.json")
    return _summarize(rows)


def cmd_fg(pipe, outdir):
    from .graphs import stable_graphs
    from .graphsum import contribution

    g = pipe.config.genus
    if g < 2:
        raise SystemExit("the potential is assembled for genus >= 2 only")
    fg = pipe.genus_series(g)
    cells = pipe.genus_series(g, cells=True).prune()
    per_graph = []
    backend = pipe.cell_backend()
    gens = pipe.generators()
    for graph in stable_graphs(g, 0):
        cont = contribution(graph, backend).prune()
        per_graph.append(
            {
                "graph": graph.to_json_obj(),
                "series": _series_obj(cont.evaluate(gens)),
                "cells": {
                    str(cell): _series_obj(v) for cell, v in sorted(cont.cells.items())
                },
                "x_degree": cont.x_degree(),
                "x_degree_bound": graph.n_edges,
            }
        )
    rows = [
        {
            "name": "per-graph-x-degree-bounds",
            "ok": all(pg["x_degree"] <= pg["x_degree_bound"] for pg in per_graph),
            "required": True,
            "detail": None,
        }
    ]
    _dump(
        {
            "checks": rows,
            "genus": g,
            "potential": _series_obj(fg),
            "cells": {str(c): _series_obj(v) for c, v in sorted(cells.cells.items())},
            "per_graph": per_graph,
        },
        outdir,
        "fg.json",
    )
    print("  F_%d %s" % (g, " ".join("%s*q1^%d*q2^%d" % (qq_str(v), a, b) for a, b, v in list(fg.terms())[:4])))
    return _summarize(rows)


def cmd_fit(pipe, outdir):
    from .finitegen import fit_genus_potential

    g = pipe.config.genus
    cells, fit, report = fit_genus_potential(pipe, g)
    ok = report["status"] in ("fitted", "verified-nonunique") and report[
        "exact_decomposition"
    ] and report["x_degree"] <= report["x_degree_bound"]
    rows = [
        {
            "name": "generator-polynomial-fit-g%d" % g,
            "ok": ok,
            "required": True,
            "detail": None if ok else report["status"],
        }
    ]
    _dump({"checks": rows, "report": report}, outdir, "fit.json")
    print(
        "  status=%s cells=%d equations=%d rank=%d margin=%s x-degree %d <= %d"
        % (
            report["status"],
            report["cells"],
            report["equations"],
            report["rank"],
            report["surplus_margin"],
            report["x_degree"],
            report["x_degree_bound"],
        )
    )
    return _summarize(rows)


def cmd_hae(pipe, outdir):
    from .finitegen import hae_check

    g = pipe.config.genus
    rep = hae_check(pipe, g)
    want = "include-genus0" if pipe.config.hae_include_genus0 else "exclude-genus0"
    closing = rep["closing"]
    rows = rep["rows"] + [
        {
            "name": "hae-closes-under-exactly-one-convention",
            "ok": len(set(c[0] for c in closing)) == 1,
            "required": True,
            "detail": str(closing),
        },
        {
            "name": "hae-closes-for-configured-split-%s" % want,
            "ok": any(c[0] == want for c in closing),
            "required": True,
            "detail": str(closing),
        },
    ]
    _dump({"checks": rows, "closing": [list(c) for c in closing]}, outdir, "hae.json")
    print("  closing convention(s): %s" % (closing,))
    return _summarize(rows)


COMMANDS = {
    "iseries": cmd_iseries,
    "relations": cmd_relations,
    "rmatrix": cmd_rmatrix,
    "fg": cmd_fg,
    "fit": cmd_fit,
    "hae": cmd_hae,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="localp1p1",
        description="Exact equivariant curve-count structure checks for the "
        "canonical bundle of P1 x P1",
    )
    parser.add_argument("command", choices=list(COMMANDS) + ["all"])
    parser.add_argument("--lam", "--lambda", dest="lam", default="3")
    parser.add_argument("--mu", default="5")
    parser.add_argument("-D", "--trunc", type=int, default=None)
    parser.add_argument("-K", "--order", type=int, default=None)
    parser.add_argument("-g", "--genus", type=int, default=2)
    parser.add_argument(
        "--hae-genus0-split",
        action="store_true",
        help="include genus-zero one-point factors in the anomaly bracket",
    )
    parser.add_argument("--no-unitarity-check", action="store_true")
    parser.add_argument("--cache-dir", default=os.environ.get("LOCALP1P1_CACHE"))
    parser.add_argument("--out", default=None, help="artifact output directory")
    args = parser.parse_args(argv)

    defaults = {
        "iseries": (8, 3),
        "relations": (8, 3),
        "rmatrix": (6, 3),
        "fg": (6, 3),
        "fit": (6, 3),
        "hae": (5, 3),
        "all": (6, 3),
    }
    d_def, k_def = defaults[args.command]
    trunc = args.trunc if args.trunc is not None else d_def
    order = args.order if args.order is not None else k_def
    order = max(order, 3 * args.genus - 3)
    config = RunConfig(
        lam=args.lam,
        mu=args.mu,
        trunc=trunc,
        order=order,
        genus=args.genus,
        hae_include_genus0=args.hae_genus0_split,
        unitarity_check=not args.no_unitarity_check,
        cache_dir=args.cache_dir,
    )
    pipe = get_pipeline(config)
    bad = []
    names = list(COMMANDS) if args.command == "all" else [args.command]
    for name in names:
        print("== %s (lam=%s mu=%s D=%d K=%d)" % (name, args.lam, args.mu, trunc, order))
        bad += COMMANDS[name](pipe, args.out)
    pipe.psi.persist()
    if bad:
        print("FAILED: %d required checks" % len(bad))
        return 1
    print("all required checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line entry point.

Subcommands: gen, detect, tw, validate, extract, verify, scan-conjecture.
Graphs travel as JSON objects ({"n": ..., "edges": [[u,v], ...]}) or the
plain edge-list text format; reports are JSON lines ordered by instance
index.  Exit codes: 0 success, 1 invalid input, 2 structured violation.

Determinism: every randomized family takes a mandatory --seed; re-running a
verify suite with identical flags and seed reproduces the report byte for
byte apart from the elapsed field on the summary line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import detectors as det
from . import extractors as ext
from . import generators as gen
from . import graph_core as gc
from . import structures as st
from . import treewidth as tw
from .errors import InvalidInput, ScaleLimit
from .suites import SUITES

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2


def _read_graph(args) -> gc.Graph:
    text = sys.stdin.read()
    if getattr(args, "format", "json") == "edgelist":
        return gc.from_edge_list(text)
    return gc.loads_graph(text)


def _emit_graph(g: gc.Graph, args) -> None:
    if getattr(args, "format", "json") == "edgelist":
        sys.stdout.write(gc.to_edge_list(g))
    else:
        print(gc.dumps_graph(g))


def _workers() -> int:
    # instance loops run sequentially; the env cap is recorded for reports
    cap = os.environ.get("OBSLAB_THREADS")
    try:
        return max(1, int(cap)) if cap else 1
    except ValueError:
        return 1


# -- gen -----------------------------------------------------------------------


def cmd_gen(args) -> int:
    name = args.family
    seed_needed = name in ("k-tree", "obstruction", "planted-phantom", "planted-crystal")
    if seed_needed and args.seed is None:
        raise InvalidInput(f"family {name!r} is randomized: --seed is mandatory")
    p = args.params
    if name == "complete":
        g = gen.complete(_int(p, 0))
    elif name == "biclique":
        g = gen.complete_bipartite(_int(p, 0), _int(p, 1))
    elif name == "cycle":
        g = gen.cycle(_int(p, 0))
    elif name == "path":
        g = gen.path_graph(_int(p, 0))
    elif name == "cone-path":
        g = gen.cone(gen.path_graph(_int(p, 0) + 1))
    elif name == "wall":
        g = gen.wall(_int(p, 0))
    elif name == "tree":
        g = gen.tree_T(_int(p, 0), _int(p, 1))[0]
    elif name == "double-star":
        g = gen.double_star(_int(p, 0), _int(p, 1))[0]
    elif name == "crystal":
        arms = list(zip(map(int, p[0::2]), map(int, p[1::2])))
        g = gen.crystal_graph(gen.CrystalSpec(len(arms), tuple(arms)))
    elif name == "k-tree":
        g = gen.k_tree_random(_int(p, 0), _int(p, 1), args.seed)
    elif name == "obstruction":
        if len(p) < 2:
            raise InvalidInput("obstruction needs a parameter t and a kind")
        g = gen.basic_obstruction(_int(p, 0), p[1], seed=args.seed)
    elif name == "planted-phantom":
        base = gen.complete(_int(p, 0))
        host, ph = gen.plant_phantom(base, _int(p, 1), _int(p, 2), seed=args.seed, density=args.density)
        print(
            json.dumps(
                {"graph": gc.graph_to_json_obj(host), "phantom": st.phantom_to_json_obj(ph)},
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    elif name == "planted-crystal":
        host, c = gen.plant_crystal(_int(p, 0), _int(p, 1), noise_seed=args.seed)
        print(
            json.dumps(
                {"graph": gc.graph_to_json_obj(host), "crystal": st.crystal_to_json_obj(c)},
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    else:
        raise InvalidInput(f"unknown family {name!r}")
    _emit_graph(g, args)
    return EXIT_OK


def _int(params, i) -> int:
    try:
        return int(params[i])
    except (IndexError, ValueError) as exc:
        raise InvalidInput(f"missing or malformed family parameter #{i}") from exc


# -- detect ---------------------------------------------------------------------


def cmd_detect(args) -> int:
    g = _read_graph(args)
    guard = args.guard
    kind = args.structure
    if kind == "hole":
        w = det.find_hole(g)
    elif kind == "even-hole":
        w = det.find_even_hole(g, guard)
    elif kind == "theta":
        w = det.find_theta(g, guard)
    elif kind == "prism":
        w = det.find_prism(g, guard)
    elif kind == "even-wheel":
        w = det.find_even_wheel(g, guard)
    elif kind == "clique":
        w = det.find_clique(g, args.c, guard)
    elif kind == "biclique":
        w = det.find_induced_biclique(g, args.s, args.s, guard)
    elif kind == "class-membership":
        w = det.membership_E_t(g, args.t, guard)
        report = {
            "found": w is not None,
            "member": w is None,
            "vertices": list(w.vertices) if w else [],
            "roles": {str(v): r for v, r in (w.roles.items() if w else ())},
        }
        print(json.dumps(report, separators=(",", ":")))
        return EXIT_OK
    else:
        raise InvalidInput(f"unknown structure {kind!r}")
    report = {
        "found": w is not None,
        "vertices": list(w.vertices) if w else [],
        "roles": {str(v): r for v, r in (w.roles.items() if w else ())},
    }
    print(json.dumps(report, separators=(",", ":")))
    return EXIT_OK


# -- tw --------------------------------------------------------------------------


def cmd_tw(args) -> int:
    g = _read_graph(args)
    if args.bounds:
        lo = tw.tw_lower(g)
        hi, _ = tw.tw_upper(g)
        print(json.dumps({"lower": lo, "upper": hi}, separators=(",", ":")))
        return EXIT_OK
    width, td = tw.treewidth_exact(g, guard=args.exact_guard)
    sys.stdout.write(tw.to_pace(td, g.n))
    return EXIT_OK


# -- validate --------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        obj = json.loads(sys.stdin.read())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict) or "graph" not in obj:
        raise InvalidInput("expected an object with a 'graph' member")
    g = gc.graph_from_json_obj(obj["graph"])
    kind = args.kind
    if kind == "phantom":
        p = st.phantom_from_json_obj(obj["phantom"])
        bad = st.validate_phantom(g, p)
    elif kind == "crystal":
        c = st.crystal_from_json_obj(obj["crystal"])
        bad = st.validate_crystal(g, c)
        if bad is None and args.clear and not st.is_clear_crystal(g, c):
            bad = st.StructureViolation("clear", "side sets are not pairwise anticomplete stable")
    elif kind == "kaleidoscope":
        k = st.kaleidoscope_from_json_obj(obj["kaleidoscope"])
        bad = st.validate_kaleidoscope(g, k)
        if bad is None and args.mirrored is not None:
            ok, why = st.is_mirrored(g, k, obj.get("mirrored-set", []), args.mirrored)
            bad = None if ok else why
    elif kind == "decomposition":
        td, _ = tw.from_pace(obj["decomposition"])
        bad = tw.verify_decomposition(g, td)
        if bad is not None:
            bad = st.StructureViolation(bad.axiom, bad.detail)
    else:
        raise InvalidInput(f"unknown structure kind {kind!r}")
    if bad is None:
        print(json.dumps({"valid": True}, separators=(",", ":")))
        return EXIT_OK
    print(
        json.dumps(
            {"valid": False, "clause": bad.clause, "detail": bad.detail}, separators=(",", ":")
        )
    )
    return EXIT_VIOLATION


# -- extract ---------------------------------------------------------------------


def _payload_obj(payload) -> dict:
    if isinstance(payload, st.Crystal):
        return {"crystal": st.crystal_to_json_obj(payload)}
    if isinstance(payload, ext.ConeTree):
        return {
            "cone-tree": {
                "root": payload.root,
                "parent": {str(v): u for v, u in sorted(payload.parent.items())},
                "level": {str(v): l for v, l in sorted(payload.level.items())},
                "d": payload.d,
                "r": payload.r,
            }
        }
    if isinstance(payload, tuple):
        return {"clique-family": [sorted(k) for k in payload]}
    return {"value": payload}


def cmd_extract(args) -> int:
    try:
        obj = json.loads(sys.stdin.read())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc
    try:
        return _run_extract(args, obj)
    except InvalidInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed extraction input: {exc!r}") from exc


def _run_extract(args, obj) -> int:
    g = gc.graph_from_json_obj(obj["graph"])
    params = obj.get("params", {})
    op = args.operation
    if op == "crystallized-vertex":
        z, (z1, z2, s1, s2) = ext.find_crystallized_vertex(g)
        print(
            json.dumps(
                {
                    "variant": "crystallized",
                    "payload": {
                        "vertex": z,
                        "anchors": [z1, z2],
                        "sides": [sorted(s1), sorted(s2)],
                    },
                    "trace": [],
                },
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    if op == "clear-crystal":
        c = st.crystal_from_json_obj(obj["crystal"])
        out = ext.clear_crystal(g, c, int(params["f"]), int(params["g"]))
        if isinstance(out, ext.HypothesisViolation):
            return _emit_violation(out)
        print(
            json.dumps(
                {"variant": "clear-crystal", "payload": st.crystal_to_json_obj(out), "trace": []},
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    if op == "phantom-to-crystal":
        p = st.phantom_from_json_obj(obj["phantom"])
        out = ext.phantom_to_crystal(g, p, int(params["f"]), int(params["g"]))
        print(
            json.dumps(
                {
                    "variant": out.variant,
                    "payload": _payload_obj(out.payload),
                    "trace": [list(map(_jsonable, step)) for step in out.trace],
                },
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    if op == "phantom-to-cone-tree":
        p = st.phantom_from_json_obj(obj["phantom"])
        out = ext.phantom_to_cone_tree(
            g,
            obj["context"],
            int(params["z1"]),
            int(params["z2"]),
            int(params["z"]),
            p,
            d=int(params["d"]),
            g=int(params["g"]),
            h=int(params["h"]),
            t=int(params["t"]),
        )
        if isinstance(out, ext.HypothesisViolation):
            return _emit_violation(out)
        if isinstance(out, ext.ClassObstruction):
            print(
                json.dumps(
                    {
                        "variant": "class-obstruction",
                        "payload": {"kind": out.kind, "vertices": list(out.vertices)},
                        "trace": [],
                    },
                    separators=(",", ":"),
                )
            )
            return EXIT_VIOLATION
        print(
            json.dumps(
                {
                    "variant": out.variant,
                    "payload": _payload_obj(out.payload),
                    "trace": [list(map(_jsonable, step)) for step in out.trace],
                },
                separators=(",", ":"),
            )
        )
        return EXIT_OK
    raise InvalidInput(f"unknown extraction operation {op!r}")


def _jsonable(x):
    if isinstance(x, (tuple, frozenset)):
        return sorted(x) if isinstance(x, frozenset) else list(x)
    return x


def _emit_violation(out: "ext.HypothesisViolation") -> int:
    print(
        json.dumps(
            {
                "variant": "hypothesis-violation",
                "payload": {
                    "step": out.step,
                    "detail": out.detail,
                    "needed": out.needed,
                    "available": out.available,
                },
                "trace": [],
            },
            separators=(",", ":"),
        )
    )
    return EXIT_VIOLATION


# -- verify -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {}
    if args.suite == "obstructions":
        kwargs = {"t_max": args.t, "seed": args.seed or 0, "subdivision_samples": args.samples or 5}
    elif args.suite == "class-containment":
        kwargs = {"n_max": args.n or 7}
    elif args.suite == "contraption":
        kwargs = {"samples": args.samples or 200, "n_max": args.n or 10, "seed": args.seed or 0}
    elif args.suite == "crystallized":
        kwargs = {"samples": args.samples or 200, "seed": args.seed or 0}
    elif args.suite == "extractors":
        kwargs = {"samples": args.samples or 100, "seed": args.seed or 0}
    elif args.suite == "ramsey":
        kwargs = {"c": args.c, "s": args.s, "seed": args.seed or 0, "samples": args.samples or 300}
    t0 = time.perf_counter()
    records = suite(**kwargs)
    elapsed = time.perf_counter() - t0
    header = {
        "schema": SCHEMA_VERSION,
        "command": f"verify {args.suite}",
        "seed": args.seed or 0,
        "workers": _workers(),
    }
    print(json.dumps(header, separators=(",", ":")))
    failures = 0
    for rec in records:
        if not rec["ok"]:
            failures += 1
        print(json.dumps(rec, separators=(",", ":")))
    summary = {
        "instances": len(records),
        "failures": failures,
        "elapsed": round(elapsed, 3),
    }
    print(json.dumps(summary, separators=(",", ":")))
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


# -- scan-conjecture -----------------------------------------------------------------


def cmd_scan_conjecture(args) -> int:
    with open(args.pattern) as fh:
        h = gc.loads_graph(fh.read())
    if not det.is_k_forest(h, 2):
        raise InvalidInput("pattern graph must be a 2-forest")
    header = {
        "schema": SCHEMA_VERSION,
        "command": "scan-conjecture",
        "seed": args.seed or 0,
        "t": args.t,
        "n_max": args.n,
    }
    print(json.dumps(header, separators=(",", ":")))
    from .rng import SplitMix

    rng = SplitMix(args.seed or 0)
    best = -1
    checked = 0
    records = []
    for n in range(1, args.n + 1):
        if n <= 7:
            pool = gen.enumerate_graphs(n)
        else:
            pool = [gen.random_graph(n, rng.next_u64(), 1 + rng.below(9), 10) for _ in range(args.samples)]
        for g in pool:
            if det.find_even_hole(g) is not None:
                continue
            if det.find_clique(g, args.t) is not None:
                continue
            if h.n <= g.n and det.contains_induced(g, h) is not None:
                continue
            checked += 1
            width, _ = tw.treewidth_exact(g)
            if width > best:
                best = width
                records.append({"n": n, "treewidth": width, "edges": [list(e) for e in g.edges()]})
    for rec in records:
        print(json.dumps(rec, separators=(",", ":")))
    print(
        json.dumps(
            {"checked": checked, "max_treewidth_observed": best, "conclusive": False},
            separators=(",", ":"),
        )
    )
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="obslab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a named graph family as JSON")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--density", choices=("minimal", "coned"), default="minimal")
    p.add_argument("--format", choices=("json", "edgelist"), default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("detect", help="search the stdin graph for a structure")
    p.add_argument("structure")
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--guard", type=int, default=det.DEFAULT_GUARD)
    p.add_argument("--format", choices=("json", "edgelist"), default="json")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("tw", help="treewidth of the stdin graph")
    p.add_argument("--exact", action="store_true", default=True)
    p.add_argument("--bounds", action="store_true")
    p.add_argument("--exact-guard", type=int, default=tw.DEFAULT_EXACT_GUARD)
    p.add_argument("--format", choices=("json", "edgelist"), default="json")
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("validate", help="validate a (graph, structure) pair from stdin")
    p.add_argument("kind", choices=("phantom", "crystal", "kaleidoscope", "decomposition"))
    p.add_argument("--clear", action="store_true")
    p.add_argument("--mirrored", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("extract", help="run a constructive extraction on stdin input")
    p.add_argument(
        "operation",
        choices=(
            "crystallized-vertex",
            "clear-crystal",
            "phantom-to-crystal",
            "phantom-to-cone-tree",
        ),
    )
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-conjecture", help="bounded, non-conclusive counterexample scan")
    p.add_argument("pattern", help="path to the excluded 2-forest, graph JSON")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scan_conjecture)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ScaleLimit as exc:
        print(f"scale limit: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

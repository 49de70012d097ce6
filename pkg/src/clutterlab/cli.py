"""Command-line front end.

Every command builds an ordered report (a dict) and prints it either as
``key: value`` lines or, with ``--json``, as JSON with the same key order.
Exit status is 0 on success, 2 when the mathematical answer is "none" or
"false", and 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .clutters import (Clutter, blocker, chromatic_number, covering_number, intersecting_profile,
                       is_binary, is_tangled, packing_number)
from .errors import CapExceeded, ClutterLabError
from .exact_lp import VERTEX_CAP_MEMBERS, VERTEX_CAP_N, format_rational, is_ideal
from .graphs import (cut, cycle_space, k_cycle_cover, petersen, seven_cycle_four_cover, t30,
                     verify_cycle_cover, wagner)
from .io import load_clutter, load_graph
from .matroids import (ThreeCycleCover, coloops, fano, is_projective_geometry, is_three_cycle_cover,
                       projective_geometry, three_cycle_cover, wagner_dual)

NONE_EXIT = 2
Report = dict


def _set(s) -> list[int]:
    return sorted(s)


def _json_default(x: Any):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, default=_json_default, indent=2)
    lines = []
    for key, val in report.items():
        lines.extend(_render_value(key, val, ""))
    return "\n".join(lines)


def _fmt(val: Any) -> str:
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, Fraction):
        return format_rational(val)
    if isinstance(val, (list, tuple)):
        return "{" + ",".join(_fmt(v) for v in val) + "}" if all(
            isinstance(v, int) for v in val) else "[" + ", ".join(_fmt(v) for v in val) + "]"
    if isinstance(val, dict):
        return ", ".join(f"{k} {_fmt(v)}" for k, v in val.items())
    if val is None:
        return "none"
    return str(val)


def _render_value(key: str, val: Any, indent: str) -> list[str]:
    if isinstance(val, dict):
        out = [f"{indent}{key}:"]
        for k, v in val.items():
            out.extend(_render_value(str(k), v, indent + "  "))
        return out
    if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
        out = [f"{indent}{key}:"]
        for v in val:
            out.append(f"{indent}  - {_fmt(v)}")
        return out
    return [f"{indent}{key}: {_fmt(val)}"]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _capped(fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except CapExceeded:
        return "skipped: cap"


def analyze(c: Clutter, vertex_cap: int = VERTEX_CAP_N) -> tuple[Report, int]:
    r: Report = {"n": c.n, "members": len(c.members)}
    tau = covering_number(c)
    r["tau"] = tau if tau != float("inf") else "inf"
    r["nu"] = packing_number(c) if c.members and 0 not in c.masks else 0
    r["tangled"] = is_tangled(c)
    r["binary"] = is_binary(c)
    r["intersecting"] = {f"{k}-wise": v for k, v in intersecting_profile(c).items()}
    if c.members and all(len(m) >= 2 for m in c.members):
        r["chi"] = chromatic_number(c)[0]
    else:
        r["chi"] = "undefined"
    if c.n <= vertex_cap and len(c.members) <= VERTEX_CAP_MEMBERS:
        r["ideal"] = _capped(lambda: is_ideal(c, cap_n=vertex_cap))
    else:
        r["ideal"] = "skipped: cap"
    return r, 0


def cmd_analyze(spec: str, vertex_cap: int) -> tuple[Report, int]:
    c, _ = load_clutter(spec)
    r, code = analyze(c, vertex_cap)
    return {"input": spec, **r}, code


def cmd_blocker(spec: str) -> tuple[Report, int]:
    c, _ = load_clutter(spec)
    b = blocker(c)
    return {"input": spec, "n": b.n, "members": [_set(m) for m in b.members]}, 0


def cmd_pack(spec: str, assume_ideal: bool) -> tuple[Report, int]:
    from .pg import quarter_packing

    c, _ = load_clutter(spec)
    pk = quarter_packing(c, assume_ideal=assume_ideal)
    return {
        "input": spec,
        "packing": [{"member": _set(m), "weight": w} for m, w in pk.items()],
        "value": pk.value,
        "denominator": pk.denominator,
        "provenance": {k: v for k, v in pk.provenance.items()},
    }, 0


def cmd_embed(spec: str, ell_max: int) -> tuple[Report, int]:
    from .pg import embeds_pg

    c, _ = load_clutter(spec)
    emb = embeds_pg(c, ell_max)
    if emb is None:
        return {"input": spec, "embedding": None}, NONE_EXIT
    return {
        "input": spec,
        "ell": emb.ell,
        "geometry": f"PG({emb.ell - 1},2)",
        "members": [_set(m) for m in emb.members],
        "witness": [_set(m) for m in emb.witness],
    }, 0


def cmd_cover(spec: str, k: int, rank_cap: int) -> tuple[Report, int]:
    g = load_graph(spec)
    cover = k_cycle_cover(g, k, rank_cap)
    if cover is None:
        return {"input": spec, "k": k, "cover": None}, NONE_EXIT
    return {"input": spec, "k": k, "cover": [_set(c) for c in cover],
            "verified": verify_cycle_cover(g, cover)}, 0


def cmd_seven_four(spec: str, rank_cap: int) -> tuple[Report, int]:
    g = load_graph(spec)
    cover = seven_cycle_four_cover(g, rank_cap)
    return {"input": spec, "cycles": [_set(c) for c in cover.cycles],
            "multiplicity": list(cover.multiplicity),
            "verified": verify_cycle_cover(g, cover.cycles, 4)}, 0


def cmd_demo(name: str, ell: int | None) -> tuple[Report, int]:
    if name == "q6":
        from .pg import quarter_packing
        from .io import CLUTTER_FIXTURES

        c = CLUTTER_FIXTURES["q6"]()
        r, _ = analyze(c)
        b = blocker(c)
        r["chi_blocker"] = chromatic_number(b)[0]
        pk = quarter_packing(c)
        r["packing"] = [{"member": _set(m), "weight": w} for m, w in pk.items()]
        return {"demo": "q6", **r}, 0
    if name == "petersen":
        g = petersen()
        two = k_cycle_cover(g, 2)
        three = k_cycle_cover(g, 3)
        seven = seven_cycle_four_cover(g)
        t = t30()
        prof = intersecting_profile(t, range(2, 5))
        return {"demo": "petersen", "vertices": g.num_vertices, "edges": g.m,
                "cycle_rank": cycle_space(g).rank, "two_cycle_cover": two,
                "three_cycle_cover": [_set(c) for c in three],
                "seven_four_cover": [_set(c) for c in seven.cycles],
                "t30": {"elements": t.n, "members": len(t.members),
                        "3-wise": prof[3], "4-wise": prof[4]}}, 0
    if name == "fano":
        m = fano()
        known = ThreeCycleCover(((), (1, 2, 3, 7), (4, 5, 6)))
        found = three_cycle_cover(m)
        return {"demo": "fano", "elements": m.size, "rank": m.rank,
                "coloops": _set(coloops(m)), "pg_order": is_projective_geometry(m),
                "cover": [_set(c) for c in known.cycles],
                "cover_verified": is_three_cycle_cover(m, known),
                "first_cover_found": [_set(c) for c in found]}, 0
    if name == "wagner":
        m = wagner_dual()
        g = wagner()
        cuts = [cut(g, xs) for xs in ({1, 6, 7, 8}, {1, 7}, {2, 4})]
        return {"demo": "wagner", "elements": m.size, "rank": m.rank,
                "cuts": [_set(c) for c in cuts],
                "cover_verified": is_three_cycle_cover(m, cuts)}, 0
    if name == "pg":
        from .clutters import intersecting_witness, is_k_wise_intersecting
        from .cuboids import ZeroOneSet, cuboid
        from .pg import pg_packing

        if ell is None or not 1 <= ell <= 3:
            raise ClutterLabError("demo pg needs ell in 1..3")
        m = projective_geometry(ell)
        pts = m.cocycles().point_values()
        c = cuboid(ZeroOneSet(m.size, tuple(pts)))
        witness = intersecting_witness(c, ell + 1)
        pk = pg_packing(ell - 1)
        return {"demo": "pg", "geometry": f"PG({ell - 1},2)", "rank": m.rank,
                "cocycles": len(pts),
                "cocycle_sizes": sorted({p.bit_count() for p in pts if p}),
                f"{ell}-wise_intersecting": is_k_wise_intersecting(c, ell) if ell >= 2 else True,
                "witness": [_set(x) for x in witness],
                "packing_value": pk.value, "packing_denominator": pk.denominator}, 0
    raise ClutterLabError(f"unknown demo {name}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clutterlab", description="Exact tools for clutters, "
                                "cuboids, binary matroids and cycle covers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="emit JSON with a stable key order")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across input files (default 1)")
    p.add_argument("--output", metavar="PATH", help="write the report to PATH instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="invariants of clutters")
    a.add_argument("inputs", nargs="+", help="clutter files or fixture names")
    a.add_argument("--vertex-cap", type=int, default=VERTEX_CAP_N,
                   help=f"largest ground set for the idealness test (default {VERTEX_CAP_N})")

    b = sub.add_parser("blocker", help="blocker of clutters")
    b.add_argument("inputs", nargs="+")

    k = sub.add_parser("pack", help="value-two quarter-integral packing")
    k.add_argument("inputs", nargs="+")
    k.add_argument("--assume-ideal", action="store_true",
                   help="skip the exact idealness check when above the caps")

    e = sub.add_parser("embed", help="find an embedded PG(0,2), PG(1,2) or PG(2,2)")
    e.add_argument("inputs", nargs="+")
    e.add_argument("--ell-max", type=int, default=3, choices=(1, 2, 3))

    c = sub.add_parser("cover", help="k cycles covering every edge")
    c.add_argument("inputs", nargs="+", help="graph files or fixture names")
    c.add_argument("--k", type=int, default=3, choices=(1, 2, 3))
    c.add_argument("--rank-cap", type=int, default=8, help="largest cycle rank searched (default 8)")

    s = sub.add_parser("seven-four", help="seven cycles using every edge four times")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--rank-cap", type=int, default=8)

    d = sub.add_parser("demo", help="worked examples")
    d.add_argument("name", choices=("petersen", "q6", "fano", "wagner", "pg"))
    d.add_argument("ell", nargs="?", type=int)
    return p


def _job(args: argparse.Namespace, spec: str) -> tuple[Report, int]:
    if args.command == "analyze":
        if args.vertex_cap <= 0:
            raise ClutterLabError("caps must be positive")
        return cmd_analyze(spec, args.vertex_cap)
    if args.command == "blocker":
        return cmd_blocker(spec)
    if args.command == "pack":
        return cmd_pack(spec, args.assume_ideal)
    if args.command == "embed":
        return cmd_embed(spec, args.ell_max)
    if args.command == "cover":
        return cmd_cover(spec, args.k, args.rank_cap)
    if args.command == "seven-four":
        return cmd_seven_four(spec, args.rank_cap)
    raise ClutterLabError(f"unknown command {args.command}")


def _safe_job(args: argparse.Namespace, spec: str) -> tuple[Report | None, int, str | None]:
    try:
        r, code = _job(args, spec)
        return r, code, None
    except ClutterLabError as exc:
        return None, 1, f"{spec}: {exc}"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 1
    if args.command == "demo":
        try:
            report, code = cmd_demo(args.name, args.ell)
        except ClutterLabError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        _emit(render(report, args.json), args.output)
        return code

    if args.jobs > 1 and len(args.inputs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_safe_job, [args] * len(args.inputs), args.inputs))
    else:
        results = [_safe_job(args, spec) for spec in args.inputs]

    worst = 0
    reports = []
    for report, code, err in results:
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
        else:
            reports.append(report)
        worst = 1 if code == 1 or worst == 1 else max(worst, code)
    if reports:
        if args.json:
            text = render(reports[0] if len(reports) == 1 else {"results": reports}, True)
        else:
            text = "\n\n".join(render(r, False) for r in reports)
        _emit(text, args.output)
    return worst


def _emit(text: str, output: str | None) -> None:
    if output is None:
        print(text)
    else:
        with open(output, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())

"""Plain-text formats for clutters, graphs, matroids and packings.

Clutter::

    clutter 6
    # optional comment lines
    1 3 6
    1 4 5
    pairs 1 2 3 4 5 6      # optional: coordinate i is the pair (2i-1, 2i) listed

Graph::

    p 4 6
    e 1 2
    ...

Matroid (rows span the cycle space)::

    matroid 7
    1110000
    ...

Lines may carry ``#`` comments; blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from .clutters import Clutter, new_clutter, q6
from .cuboids import CuboidForm, ZeroOneSet, as_cuboid
from .errors import AntichainViolation, ParseError
from .exact_lp import FractionalPacking, format_rational
from .graphs import FIXTURES as GRAPH_FIXTURES, Graph, t30
from .matroids import BinaryMatroid, fano, from_cycle_basis, wagner_dual


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            out.append((i, toks))
    return out


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


# ---------------------------------------------------------------------------
# clutters
# ---------------------------------------------------------------------------


def parse_clutter(text: str) -> tuple[Clutter, tuple[tuple[int, int], ...] | None]:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    ln, head = lines[0]
    if head[0] != "clutter" or len(head) != 2:
        raise ParseError("expected header 'clutter <n>'", ln)
    n = _int(head[1], ln)
    members = []
    pairs = None
    for ln, toks in lines[1:]:
        if toks[0] == "pairs":
            vals = [_int(t, ln) for t in toks[1:]]
            if len(vals) % 2:
                raise ParseError("pairs line needs an even number of labels", ln)
            pairs = tuple(zip(vals[0::2], vals[1::2]))
            continue
        member = [_int(t, ln) for t in toks]
        if any(not 1 <= e <= n for e in member):
            raise ParseError(f"element outside 1..{n}", ln)
        members.append(member)
    try:
        c = new_clutter(n, members)
    except AntichainViolation as exc:
        raise ParseError(str(exc)) from exc
    if pairs is not None:
        flat = sorted(e for p in pairs for e in p)
        if flat != list(range(1, n + 1)):
            raise ParseError("pairs must partition the ground set")
        for m in c.members:
            if any(len(m & set(p)) != 1 for p in pairs):
                raise ParseError("a member does not meet every pair exactly once")
    return c, pairs


def format_clutter(c: Clutter, pairs=None) -> str:
    out = [f"clutter {c.n}"]
    out += [" ".join(map(str, sorted(m))) for m in c.members]
    if pairs:
        out.append("pairs " + " ".join(f"{u} {v}" for u, v in pairs))
    return "\n".join(out) + "\n"


def format_cuboid(s: ZeroOneSet) -> str:
    from .cuboids import cuboid

    return format_clutter(cuboid(s), tuple((2 * i - 1, 2 * i) for i in range(1, s.width + 1)))


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    ln, head = lines[0]
    if head[0] != "p" or len(head) != 3:
        raise ParseError("expected header 'p <vertices> <edges>'", ln)
    nv, ne = _int(head[1], ln), _int(head[2], ln)
    edges = []
    for ln, toks in lines[1:]:
        if toks[0] != "e" or len(toks) != 3:
            raise ParseError("expected 'e <u> <v>'", ln)
        u, v = _int(toks[1], ln), _int(toks[2], ln)
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise ParseError(f"vertex outside 1..{nv}", ln)
        edges.append((u, v))
    if len(edges) != ne:
        raise ParseError(f"header announces {ne} edges, found {len(edges)}")
    return Graph(nv, tuple(edges))


def format_graph(g: Graph) -> str:
    return "\n".join([f"p {g.num_vertices} {g.m}"] + [f"e {u} {v}" for u, v in g.edges]) + "\n"


# ---------------------------------------------------------------------------
# matroids
# ---------------------------------------------------------------------------


def parse_matroid(text: str) -> BinaryMatroid:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    ln, head = lines[0]
    if head[0] != "matroid" or len(head) != 2:
        raise ParseError("expected header 'matroid <n>'", ln)
    n = _int(head[1], ln)
    rows = []
    for ln, toks in lines[1:]:
        row = "".join(toks)
        if len(row) != n or any(ch not in "01" for ch in row):
            raise ParseError(f"expected a 0/1 row of length {n}", ln)
        rows.append(row)
    return from_cycle_basis(n, rows)


def format_matroid(m: BinaryMatroid) -> str:
    return "\n".join([f"matroid {m.size}"] + [str(v) for v in m.cycles.basis_vectors()]) + "\n"


# ---------------------------------------------------------------------------
# packings
# ---------------------------------------------------------------------------


def format_packing(pk: FractionalPacking) -> str:
    out = [f"packing {pk.clutter.n}"]
    for m, w in pk.items():
        out.append(" ".join(map(str, sorted(m))) + f" : {format_rational(w)}")
    out.append(f"value {format_rational(pk.value)}")
    out.append(f"denominator {pk.denominator}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# fixtures and input resolution
# ---------------------------------------------------------------------------


def _pg_cuboid(ell: int) -> Callable[[], Clutter]:
    def build() -> Clutter:
        from .cuboids import cuboid
        from .matroids import projective_geometry

        return cuboid(ZeroOneSet.from_space(projective_geometry(ell).cocycles()))
    return build


CLUTTER_FIXTURES: dict[str, Callable[[], Clutter]] = {
    "q6": q6,
    "t30": t30,
    "singletons": lambda: new_clutter(2, [{1}, {2}]),
    "triangle": lambda: new_clutter(3, [{1, 2}, {1, 3}, {2, 3}]),
    "pg1": _pg_cuboid(1),
    "pg2": _pg_cuboid(2),
    "pg3": _pg_cuboid(3),
}

MATROID_FIXTURES: dict[str, Callable[[], BinaryMatroid]] = {
    "fano": fano,
    "wagner-dual": wagner_dual,
}


def _read(spec: str) -> str | None:
    p = Path(spec)
    if p.is_file():
        return p.read_text()
    return None


def load_clutter(spec: str) -> tuple[Clutter, tuple[tuple[int, int], ...] | None]:
    """A fixture name or a path to a clutter file."""
    text = _read(spec)
    if text is not None:
        return parse_clutter(text)
    if spec in CLUTTER_FIXTURES:
        c = CLUTTER_FIXTURES[spec]()
        form: CuboidForm | None = as_cuboid(c)
        return c, form.pairs if form else None
    raise ParseError(f"no such file or fixture: {spec}")


def load_graph(spec: str) -> Graph:
    text = _read(spec)
    if text is not None:
        return parse_graph(text)
    if spec in GRAPH_FIXTURES:
        return GRAPH_FIXTURES[spec]()
    raise ParseError(f"no such file or fixture: {spec}")


def load_matroid(spec: str) -> BinaryMatroid:
    text = _read(spec)
    if text is not None:
        return parse_matroid(text)
    if spec in MATROID_FIXTURES:
        return MATROID_FIXTURES[spec]()
    raise ParseError(f"no such file or fixture: {spec}")

"""Exact rational linear programming and the covering polyhedron Q(C).

All arithmetic is exact; no tolerances appear anywhere.  The simplex
tableau runs on ``gmpy2.mpq`` when gmpy2 is installed and on
``fractions.Fraction`` otherwise; results are always returned as
``Fraction``.  The simplex uses Bland's rule, so it cannot cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _dd
from .clutters import Clutter, covering_number
from .errors import CapExceeded, LpInfeasible, LpUnbounded, ParseError, PreconditionError

try:
    from gmpy2 import mpq as _Q
except ImportError:   # pragma: no cover
    _Q = Fraction

VERTEX_CAP_N = 14
VERTEX_CAP_MEMBERS = 128

RationalVector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(x: Fraction) -> str:
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# LP model and simplex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LpProblem:
    """``sense c.x`` subject to ``rows[i] . x (relations[i]) rhs[i]`` and ``x >= 0``."""

    sense: str
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(_frac(x) for x in self.objective))
        object.__setattr__(self, "rows", tuple(tuple(_frac(x) for x in r) for r in self.rows))
        object.__setattr__(self, "rhs", tuple(_frac(x) for x in self.rhs))
        object.__setattr__(self, "relations", tuple(self.relations))
        if any(len(r) != n for r in self.rows):
            raise ValueError("row length differs from objective length")
        if not len(self.rows) == len(self.relations) == len(self.rhs):
            raise ValueError("rows, relations and rhs must have equal length")
        bad = set(self.relations) - {"<=", ">=", "="}
        if bad:
            raise ValueError(f"unknown relation(s) {sorted(bad)}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    primal: RationalVector
    dual: RationalVector


def _dot(a, b, start=Fraction(0)):
    return sum((x * y for x, y in zip(a, b) if x and y), start)


def _pivot(tab: list[list], r: int, c: int) -> None:
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        tab[r] = row = [x * inv for x in row]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                tab[i] = [a - f * b if b else a for a, b in zip(other, row)]


def _eliminate(z: list, row: list, col: int) -> list:
    f = z[col]
    return [a - f * b if b else a for a, b in zip(z, row)] if f else z


def _run_simplex(tab, basis, cost, allowed) -> list:
    """Minimize ``cost . x`` on the tableau in place (Bland's rule).

    Returns the final reduced-cost row.
    """
    z = list(cost) + [_Q(0)]
    for i, b in enumerate(basis):
        z = _eliminate(z, tab[i], b)
    cols = [j for j in range(len(cost)) if allowed[j]]
    while True:
        entering = next((j for j in cols if z[j] < 0), -1)
        if entering < 0:
            return z
        best_row, best_ratio = -1, None
        for i, row in enumerate(tab):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_row, best_ratio = i, ratio
        if best_row < 0:
            raise LpUnbounded("objective unbounded")
        _pivot(tab, best_row, entering)
        basis[best_row] = entering
        z = _eliminate(z, tab[best_row], entering)


def _to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(int(x.numerator), int(x.denominator))


class _Feasible:
    """A primal feasible tableau for the constraints of ``p`` (phase one done)."""

    def __init__(self, p: LpProblem):
        n = p.num_vars
        zero, one = _Q(0), _Q(1)
        # standardize: rhs >= 0, then add slack and artificial columns
        signs, std_rows, std_rel, std_rhs = [], [], [], []
        for row, rel, b in zip(p.rows, p.relations, p.rhs):
            s = -1 if b < 0 else 1
            if s < 0:
                row, b = tuple(-x for x in row), -b
                rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
            signs.append(s)
            std_rows.append([_Q(x) for x in row])
            std_rel.append(rel)
            std_rhs.append(_Q(b))
        n_slack = sum(1 for r in std_rel if r != "=")
        n_art = sum(1 for r in std_rel if r != "<=")
        ncols = n + n_slack + n_art
        tab: list[list] = []
        basis: list[int] = []
        s_idx, a_idx = n, n + n_slack
        marker: list[tuple[int, int]] = []   # (column, coefficient) carrying each row's multiplier
        for row, rel, b in zip(std_rows, std_rel, std_rhs):
            line = row + [zero] * (n_slack + n_art) + [b]
            if rel == "<=":
                line[s_idx] = one
                marker.append((s_idx, 1))
                basis.append(s_idx)
                s_idx += 1
            elif rel == ">=":
                line[s_idx] = -one
                marker.append((s_idx, -1))
                s_idx += 1
                line[a_idx] = one
                basis.append(a_idx)
                a_idx += 1
            else:
                line[a_idx] = one
                marker.append((a_idx, 1))
                basis.append(a_idx)
                a_idx += 1
            tab.append(line)
        art_start = n + n_slack

        if n_art:
            cost1 = [zero] * art_start + [one] * n_art
            _run_simplex(tab, basis, cost1, [True] * ncols)
            phase1 = sum((tab[i][-1] for i, b in enumerate(basis) if b >= art_start), zero)
            if phase1 > 0:
                raise LpInfeasible("no feasible point")
            # drive zero-valued artificials out of the basis, dropping redundant rows
            keep = []
            for i in range(len(tab)):
                if basis[i] >= art_start:
                    col = next((j for j in range(art_start) if tab[i][j] != 0), None)
                    if col is None:
                        continue
                    _pivot(tab, i, col)
                    basis[i] = col
                keep.append(i)
            row_ids = keep
        else:
            row_ids = list(range(len(tab)))
        self.problem = p
        self.tab = [tab[i] for i in row_ids]
        self.basis = [basis[i] for i in row_ids]
        self.signs = signs
        self.marker = marker
        self.allowed = [j < art_start for j in range(ncols)]
        self.pad = n_slack + n_art

    def optimize(self, objective: Sequence) -> LpSolution:
        """Phase two for ``objective``, starting from the current basis."""
        p = self.problem
        n, m = p.num_vars, len(p.rows)
        flip = -1 if p.sense == "max" else 1
        objective = tuple(_frac(c) for c in objective)
        cost2 = [_Q(flip * c) for c in objective] + [_Q(0)] * self.pad
        tab, basis = self.tab, self.basis
        z = _run_simplex(tab, basis, cost2, self.allowed)

        x = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                x[b] = _to_fraction(tab[i][-1])
        primal = tuple(x)
        # the reduced cost of a zero-cost column sigma * e_i is -sigma * y_i; rows
        # dropped as redundant still own a marker column in the tableau
        dual = [Fraction(0)] * m
        for i in range(m):
            col, sigma = self.marker[i]
            dual[i] = _to_fraction(-z[col] * sigma * self.signs[i] * flip)
        sol = LpSolution(_dot(objective, primal), primal, tuple(dual))
        assert check_certificate(p, sol, objective), "simplex certificate failed"
        return sol


def solve_lp(p: LpProblem) -> LpSolution:
    """Exact two-phase simplex.

    Dual sign convention: for ``min`` problems the multiplier of a ``>=`` row is
    nonnegative and of a ``<=`` row nonpositive, with ``A^T y <= c``; for
    ``max`` problems both signs flip and ``A^T y >= c``.  In both cases the
    optimal value equals ``rhs . dual``.
    """
    return _Feasible(p).optimize(p.objective)


def solve_objectives(p: LpProblem, objectives: Sequence[Sequence]) -> list[LpSolution]:
    """Solve ``p`` once per objective over the same constraints.

    Phase one runs once; each phase two starts from the previous optimal
    basis.  Every answer is certified exactly, as in ``solve_lp``.
    """
    feasible = _Feasible(p)
    return [feasible.optimize(c) for c in objectives]


def check_certificate(p: LpProblem, sol: LpSolution, objective: Sequence | None = None) -> bool:
    """Exact primal feasibility, dual feasibility and equal objective values.

    ``objective`` overrides ``p.objective`` when given.
    """
    x = [_Q(v) for v in sol.primal]
    y = [_Q(v) for v in sol.dual]
    rows = [[_Q(a) for a in row] for row in p.rows]
    c = [_Q(v) for v in (p.objective if objective is None else objective)]
    if any(v < 0 for v in x):
        return False
    for row, rel, b in zip(rows, p.relations, p.rhs):
        lhs = _dot(row, x, _Q(0))
        if (rel == "<=" and lhs > b) or (rel == ">=" and lhs < b) or (rel == "=" and lhs != b):
            return False
    sgn = 1 if p.sense == "min" else -1
    for rel, yi in zip(p.relations, y):
        if rel == ">=" and sgn * yi < 0:
            return False
        if rel == "<=" and sgn * yi > 0:
            return False
    for j in range(len(c)):
        red = c[j] - _dot((row[j] for row in rows), y, _Q(0))
        if sgn * red < 0:
            return False
    value = _Q(sol.value)
    return _dot(c, x, _Q(0)) == value == _dot([_Q(b) for b in p.rhs], y, _Q(0))


# ---------------------------------------------------------------------------
# plain-text LP format
# ---------------------------------------------------------------------------


def format_lp(p: LpProblem) -> str:
    """``lp <vars> <rows>``, then ``min|max c...``, then ``row a... REL b`` lines."""
    out = [f"lp {p.num_vars} {len(p.rows)}",
           p.sense + " " + " ".join(format_rational(c) for c in p.objective)]
    for row, rel, b in zip(p.rows, p.relations, p.rhs):
        out.append("row " + " ".join(format_rational(a) for a in row) + f" {rel} {format_rational(b)}")
    return "\n".join(out) + "\n"


def parse_lp(text: str) -> LpProblem:
    lines = [(i, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines or lines[0][1][0] != "lp" or len(lines[0][1]) != 3:
        raise ParseError("expected header 'lp <vars> <rows>'", lines[0][0] if lines else 1)
    try:
        nv, nr = int(lines[0][1][1]), int(lines[0][1][2])
        ln, toks = lines[1]
        if toks[0] not in ("min", "max") or len(toks) != nv + 1:
            raise ParseError("expected objective line", ln)
        sense, obj = toks[0], [Fraction(t) for t in toks[1:]]
        rows, rels, rhs = [], [], []
        for ln, toks in lines[2:]:
            if toks[0] != "row" or len(toks) != nv + 3:
                raise ParseError("malformed row", ln)
            rows.append([Fraction(t) for t in toks[1:nv + 1]])
            rels.append(toks[nv + 1])
            rhs.append(Fraction(toks[nv + 2]))
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc
    if len(rows) != nr:
        raise ParseError(f"header announces {nr} rows, found {len(rows)}")
    return LpProblem(sense, tuple(obj), tuple(map(tuple, rows)), tuple(rels), tuple(rhs))


# ---------------------------------------------------------------------------
# cover polyhedron
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverPolyhedron:
    """``Q(C) = {x >= 0 : sum_{v in C} x_v >= 1 for every member C}``."""

    clutter: Clutter

    def covering_lp(self, weights: Sequence | None = None) -> LpProblem:
        c = self.clutter
        w = tuple(weights) if weights is not None else (1,) * c.n
        rows = tuple(tuple(1 if e in m else 0 for e in c.ground) for m in c.members)
        return LpProblem("min", w, rows, (">=",) * len(rows), (1,) * len(rows))

    def contains(self, x: Sequence) -> bool:
        return all(v >= 0 for v in x) and all(
            sum((x[e - 1] for e in m), Fraction(0)) >= 1 for m in self.clutter.members)


def packing_lp(c: Clutter, weights: Sequence | None = None) -> LpProblem:
    """``max 1.y`` subject to element loads ``<= w`` over member variables."""
    w = tuple(weights) if weights is not None else (1,) * c.n
    rows = tuple(tuple(1 if e in m else 0 for m in c.members) for e in c.ground)
    return LpProblem("max", (1,) * len(c.members), rows, ("<=",) * c.n, w)


def _check_caps(c: Clutter, cap_n: int, cap_members: int) -> None:
    if c.n > cap_n:
        raise CapExceeded(f"ground size {c.n} exceeds vertex-enumeration cap {cap_n}")
    if len(c.members) > cap_members:
        raise CapExceeded(f"{len(c.members)} members exceed cap {cap_members}")


def enumerate_vertices(q: CoverPolyhedron | Clutter, cap_n: int = VERTEX_CAP_N,
                       cap_members: int = VERTEX_CAP_MEMBERS) -> list[RationalVector]:
    """All vertices of Q(C) in sorted order, each certified.

    Works on the homogenized cone ``{(x, t) : x >= 0, t >= 0, M x - t 1 >= 0}``;
    rays with ``t > 0`` are the vertices.
    """
    c = q.clutter if isinstance(q, CoverPolyhedron) else q
    _check_caps(c, cap_n, cap_members)
    if 0 in c.masks:
        return []
    n = c.n
    rows = [tuple(1 if j == i else 0 for j in range(n + 1)) for i in range(n + 1)]
    for m in c.members:
        rows.append(tuple(1 if e in m else 0 for e in c.ground) + (-1,))
    rays, lineality = _dd.extreme_rays(rows, n + 1)
    assert not lineality
    verts = sorted({tuple(Fraction(r[i], r[n]) for i in range(n)) for r in rays if r[n] > 0})
    for v in verts:
        _certify_vertex(c, v)
    return verts


def _certify_vertex(c: Clutter, v: RationalVector) -> None:
    poly = CoverPolyhedron(c)
    assert poly.contains(v), f"vertex {v} infeasible"
    tight = [tuple(1 if j == i else 0 for j in range(c.n)) for i in range(c.n) if v[i] == 0]
    for m in c.members:
        if sum((v[e - 1] for e in m), Fraction(0)) == 1:
            tight.append(tuple(1 if e in m else 0 for e in c.ground))
    assert _dd.matrix_rank(tight, c.n) == c.n, f"{v} is not a vertex"


def fractional_vertex(c: Clutter, cap_n: int = VERTEX_CAP_N,
                      cap_members: int = VERTEX_CAP_MEMBERS) -> RationalVector | None:
    """First fractional vertex of Q(C), or ``None`` when Q(C) is integral."""
    for v in enumerate_vertices(c, cap_n, cap_members):
        if any(x.denominator != 1 for x in v):
            return v
    return None


def is_ideal(c: Clutter, cap_n: int = VERTEX_CAP_N, cap_members: int = VERTEX_CAP_MEMBERS) -> bool:
    return fractional_vertex(c, cap_n, cap_members) is None


# ---------------------------------------------------------------------------
# fractional packings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FractionalPacking:
    """Nonnegative rational weights on members with every element load <= 1."""

    clutter: Clutter
    weights: dict = field(hash=False)   # frozenset member -> Fraction
    provenance: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        w = {frozenset(m): _frac(x) for m, x in self.weights.items() if _frac(x) != 0}
        members = set(self.clutter.members)
        unknown = [m for m in w if m not in members]
        if unknown:
            raise PreconditionError(f"weights on non-members {sorted(map(sorted, unknown))}")
        object.__setattr__(self, "weights", w)

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def denominator(self) -> int:
        d = 1
        for x in self.weights.values():
            d = d * x.denominator // math.gcd(d, x.denominator)
        return d

    def support(self) -> list[frozenset[int]]:
        return [m for m in self.clutter.members if m in self.weights]

    def load(self, e: int) -> Fraction:
        return sum((x for m, x in self.weights.items() if e in m), Fraction(0))

    def is_feasible(self) -> bool:
        return all(x >= 0 for x in self.weights.values()) and all(
            self.load(e) <= 1 for e in self.clutter.ground)

    def is_dyadic(self, k: int) -> bool:
        """All weights are multiples of ``1/2^k``."""
        return all((x * (1 << k)).denominator == 1 for x in self.weights.values())

    def items(self) -> list[tuple[frozenset[int], Fraction]]:
        return [(m, self.weights[m]) for m in self.support()]


def max_fractional_packing(c: Clutter, ideal: bool = False) -> FractionalPacking:
    """Optimal fractional packing; with ``ideal=True`` asserts value == tau(C)."""
    if 0 in c.masks:
        raise PreconditionError("fractional packing undefined with an empty member")
    if not c.members:
        return FractionalPacking(c, {})
    sol = solve_lp(packing_lp(c))
    pk = FractionalPacking(c, dict(zip(c.members, sol.primal)))
    assert pk.is_feasible() and pk.value == sol.value
    if ideal:
        assert pk.value == covering_number(c), "ideal clutter without a packing of value tau"
    return pk


def core_support(c: Clutter) -> Clutter:
    """Members positive in some fractional packing of value two (one LP per member)."""
    if covering_number(c) != 2:
        raise PreconditionError("core_support needs covering number 2")
    base = packing_lp(c)
    total = (tuple(1 for _ in c.members),)
    kept = []
    for i, m in enumerate(c.members):
        obj = tuple(1 if j == i else 0 for j in range(len(c.members)))
        p = LpProblem("max", obj, base.rows + total, base.relations + ("=",), base.rhs + (2,))
        try:
            sol = solve_lp(p)
        except LpInfeasible as exc:
            raise PreconditionError("no fractional packing of value two; clutter is not ideal") from exc
        if sol.value > 0:
            kept.append(m)
    return Clutter(c.n, tuple(kept))


def extract_small_subfamily(pk: FractionalPacking) -> list[frozenset[int]]:
    """Inclusion-minimal support subfamily with weight sum > 1.

    Members are taken heaviest first (ties in member order); the prefix that
    first exceeds 1 is minimal because dropping any member removes at least
    the last, lightest weight.  Such a family has no common element.
    """
    if pk.value <= 1:
        raise PreconditionError("packing value must exceed 1")
    order = sorted(pk.support(), key=lambda m: -pk.weights[m])
    chosen, acc = [], Fraction(0)
    for m in order:
        chosen.append(m)
        acc += pk.weights[m]
        if acc > 1:
            break
    assert all(acc - pk.weights[m] <= 1 for m in chosen)
    assert not frozenset.intersection(*chosen), "subfamily has a common element"
    return chosen

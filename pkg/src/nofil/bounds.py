"""Feasibility bounds for embedding a graph in a Steiner triple system.

For a partition (P, A, U) with sizes (p, a, u) the blocks split into seven
classes whose sizes are forced by pair counting.  The inequalities below are
evaluated in exact integer arithmetic: square roots are compared by squaring
after checking signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import NamedTuple

from .design import GRAPH_FAMILIES, LabeledGraph, graph_family
from .graphs import chromatic_index

COUNT_NAMES = ("PPU", "PAA", "PAU", "PUU", "AAU", "AUU", "UUU")


@dataclass(frozen=True)
class Infeasible:
    reason: str

    def __bool__(self) -> bool:
        return False


def class_counts(p: int, a: int, u: int, e: int):
    """Block-class sizes forced by pair counting, or ``Infeasible``.

    Returns the tuple (PPU, PAA, PAU, PUU, AAU, AUU, UUU).
    """
    if min(p, a, u, e) < 0:
        return Infeasible("negative argument")
    if e > comb(a, 2):
        return Infeasible("more edges than pairs in A")
    ppu = comb(p, 2)
    paa = e
    aau = comb(a, 2) - e
    pau = p * a - 2 * e
    if pau < 0:
        return Infeasible("PAU < 0")
    twice_puu = p * u - 2 * ppu - pau
    twice_auu = a * u - pau - 2 * aau
    if twice_puu < 0 or twice_puu % 2:
        return Infeasible("PUU not a nonnegative integer")
    if twice_auu < 0 or twice_auu % 2:
        return Infeasible("AUU not a nonnegative integer")
    puu, auu = twice_puu // 2, twice_auu // 2
    rest = comb(u, 2) - puu - auu
    if rest < 0 or rest % 3:
        return Infeasible("UUU not a nonnegative integer")
    return (ppu, paa, pau, puu, aau, auu, rest // 3)


class BoundCheck(NamedTuple):
    name: str
    holds: bool
    lhs: object
    rhs: object
    relation: str


def _sqrt_display(n: int):
    r = isqrt(n)
    return r if r * r == n else n ** 0.5


def _sqrt_at_least(n: int, x) -> bool:
    """sqrt(n) >= x for an integer n >= 0 and rational x."""
    return x <= 0 or n >= x * x


@dataclass(frozen=True)
class BoundReport:
    v: int
    a: int
    u: int
    e: int
    checks: tuple = ()
    derived: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.holds]

    def get(self, name: str) -> BoundCheck:
        for c in self.checks + self.derived:
            if c.name == name:
                return c
        raise KeyError(name)


def lemma1_bounds(v: int, a: int, u: int, e: int, chi_g: int, chi_gc: int) -> BoundReport:
    """Evaluate the ten inequalities for one (v, a, u) and a graph with e edges.

    Checks are named "1" .. "10"; "9/10" holds if the guard fails or either
    branch holds.  Derived entries ("interval", "cubic") are informational.
    """
    if a == 0 and e > 0:
        raise ValueError("a graph with no vertices has no edges")
    p = v - a - u
    checks = []

    def add(name, holds, lhs, rhs, rel):
        checks.append(BoundCheck(name, bool(holds), lhs, rhs, rel))

    add("1", u <= v - a - chi_g, u, v - a - chi_g, "<=")
    add("2", u >= chi_gc, u, chi_gc, ">=")
    add("3", 2 * u >= v - a - 1, u, Fraction(v - a - 1, 2), ">=")
    if a > 0:
        add("4", 2 * a * u >= a * (v - 1) - 4 * e, u, Fraction(a * (v - 1) - 4 * e, 2 * a), ">=")
    disc = (v - 2 * a + 1) ** 2 + 16 * e
    base = 3 * v - 2 * a - 1
    add("5", _sqrt_at_least(disc, base - 4 * u), u, (base - _sqrt_display(disc)) / 4, ">=")
    add("6", _sqrt_at_least(disc, 4 * u - base), u, (base + _sqrt_display(disc)) / 4, "<=")
    if a > 0:
        add("7", a * u <= a * (v - a) - 2 * e, u, Fraction(a * (v - a) - 2 * e, a), "<=")
    root8 = 8 * (v - a) + 1
    add(
        "8",
        root8 >= 0 and 2 * p + 1 >= 0 and root8 <= (2 * p + 1) ** 2,
        u,
        v - a + (1 - _sqrt_display(max(root8, 0))) / 2,
        "<=",
    )
    if v * v - 4 * v <= 24 * e:
        q = 72 * e - 3 * v * v + 12 * v
        hi = 6 * u - 3 * v >= 0 and (6 * u - 3 * v) ** 2 >= q
        lo = 3 * v - 6 * u >= 0 and (3 * v - 6 * u) ** 2 >= q
        spread = _sqrt_display(q) / 6
        add("9/10", hi or lo, u, (v / 2 - spread, v / 2 + spread), "outside")
    else:
        add("9/10", True, u, None, "guard off")

    derived = []
    if p > 0:
        low = Fraction(p + a - 1) - Fraction(2 * e, p)
        derived.append(BoundCheck("interval", low <= u <= comb(p, 2), u, (low, comb(p, 2)), "within"))
    cubic = p ** 3 - 3 * p ** 2 - 2 * (a - 1) * p + 4 * e
    derived.append(BoundCheck("cubic", cubic >= 0, cubic, 0, ">="))
    return BoundReport(v, a, u, e, tuple(checks), tuple(derived))


# ----------------------------------------------------------- parameter rows


@dataclass(frozen=True)
class ParameterSet:
    v: int
    p: int
    a: int
    u: int
    e: int
    counts: tuple

    def __post_init__(self):
        if self.v != self.p + self.a + self.u:
            raise ValueError("v must equal p + a + u")

    @property
    def named_counts(self) -> dict:
        return dict(zip(COUNT_NAMES, self.counts))


@dataclass(frozen=True)
class UUUMustBeSTS:
    u: int


@dataclass(frozen=True)
class Blocked:
    u: int


def sts_order(n: int) -> bool:
    """True if an STS of order n exists (0 and 1 count as trivial systems)."""
    return n in (0, 1) or n % 6 in (1, 3)


def structural_obstruction(ps: ParameterSet):
    """None, ``UUUMustBeSTS(u)`` or ``Blocked(u)``.

    With no PUU and no AUU blocks every pair inside U lies on a UUU block, so
    the UUU blocks form an STS(u) by themselves.
    """
    _, _, _, puu, _, auu, _ = ps.counts
    if puu or auu:
        return None
    return UUUMustBeSTS(ps.u) if sts_order(ps.u) else Blocked(ps.u)


@dataclass(frozen=True)
class GraphInvariants:
    a: int
    e: int
    chi_g: int
    chi_gc: int

    @classmethod
    def of(cls, g: LabeledGraph) -> GraphInvariants:
        if g.n == 0:
            return cls(0, 0, 0, 0)
        return cls(g.n, g.e, chromatic_index(g), chromatic_index(g.complement()))


def rows_at(inv: GraphInvariants, v: int) -> list[ParameterSet]:
    """All admissible (p, u) at order v, descending p.

    Once the graph has two vertices both P and U must be nonempty.
    """
    if v % 6 not in (1, 3):
        return []
    least = 1 if inv.a >= 2 else 0
    rows = []
    for p in range(v - inv.a - least, least - 1, -1):
        u = v - inv.a - p
        counts = class_counts(p, inv.a, u, inv.e)
        if not counts:
            continue
        if lemma1_bounds(v, inv.a, u, inv.e, inv.chi_g, inv.chi_gc).ok:
            rows.append(ParameterSet(v, p, inv.a, u, inv.e, counts))
    return rows


def admissible_parameters(g: LabeledGraph, v_max: int, v_min: int = 1) -> list[ParameterSet]:
    """Every admissible row with v <= v_max, ascending v then descending p."""
    inv = GraphInvariants.of(g)
    out = []
    for v in range(max(v_min, inv.a, 1), v_max + 1):
        out.extend(rows_at(inv, v))
    return out


def min_admissible_v(g: LabeledGraph):
    """Smallest admissible order with its rows; (None, []) if none up to 4a + 16."""
    inv = GraphInvariants.of(g)
    for v in range(max(inv.a, 1), 4 * inv.a + 17):
        rows = rows_at(inv, v)
        if rows:
            return v, rows
    return None, []


# ------------------------------------------------------------------ tables


@dataclass
class TableGroup:
    family: str
    a: int
    v: int | None
    rows: list = field(default_factory=list)


def table_groups(family: str, a_from: int, a_to: int) -> list[TableGroup]:
    if family not in GRAPH_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    groups = []
    for a in range(a_from, a_to + 1):
        v, rows = min_admissible_v(graph_family(family, a))
        groups.append(TableGroup(family, a, v, rows))
    return groups


def _obstruction_token(ps: ParameterSet) -> str:
    ob = structural_obstruction(ps)
    if ob is None:
        return "-"
    if isinstance(ob, Blocked):
        return "blocked"
    return f"uuu-sts-{ob.u}"


def format_records(groups: list[TableGroup]) -> str:
    """Line format: family a v p u e PPU PAA PAU PUU AAU AUU UUU obstruction."""
    lines = []
    for gr in groups:
        for ps in gr.rows:
            fields = [gr.family, gr.a, ps.v, ps.p, ps.u, ps.e, *ps.counts, _obstruction_token(ps)]
            lines.append(" ".join(str(x) for x in fields))
    return "\n".join(lines) + ("\n" if lines else "")


def format_text(groups: list[TableGroup]) -> str:
    """Aligned table with the columns a, v, (p,a,u) and the seven counts."""
    header = ("a", "v", "(p,a,u)", "(" + ",".join(COUNT_NAMES) + ")", "obstruction")
    body = []
    for gr in groups:
        if not gr.rows:
            body.append((str(gr.a), "-", "-", "-", "-"))
        for k, ps in enumerate(gr.rows):
            body.append(
                (
                    str(gr.a) if k == 0 else "",
                    str(ps.v) if k == 0 else "",
                    f"({ps.p}, {ps.a}, {ps.u})",
                    "(" + ", ".join(map(str, ps.counts)) + ")",
                    _obstruction_token(ps),
                )
            )
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    out = []
    for r in [header] + body:
        out.append("  ".join(c.rjust(w) if i < 2 else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip())
    return "\n".join(out) + "\n"


def emit_table(family: str, a_from: int, a_to: int, fmt: str = "text") -> str:
    groups = table_groups(family, a_from, a_to)
    return format_records(groups) if fmt == "records" else format_text(groups)

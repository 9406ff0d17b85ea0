"""Triple systems, point partitions, block classes and embedding certificates.

Points are always stored as strings.  Integers passed to the constructors are
converted with ``str`` so that ``1`` and ``"1"`` name the same point.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

Label = str
Block = frozenset  # frozenset of exactly three labels

_TOKEN = re.compile(r"(\d+)")


def label_key(label: Label):
    """Natural sort key: ``2 < 10``, ``1_2 < 1_10``, ``inf_1`` after numbers."""
    parts = []
    for piece in _TOKEN.split(str(label)):
        if not piece:
            continue
        if piece.isdigit():
            parts.append((0, int(piece), ""))
        else:
            parts.append((1, 0, piece))
    return tuple(parts)


def sort_labels(labels: Iterable[Label]) -> list[Label]:
    return sorted(labels, key=label_key)


def block_key(block: Block):
    return tuple(label_key(x) for x in sort_labels(block))


def make_block(*points) -> Block:
    if len(points) == 1 and not isinstance(points[0], (str, int)):
        points = tuple(points[0])
    b = frozenset(str(p) for p in points)
    if len(b) != 3 or len(points) != 3:
        raise ValueError(f"a block needs three distinct points, got {points!r}")
    return b


def pair(x, y) -> frozenset:
    return frozenset((str(x), str(y)))


class DesignError(ValueError):
    """Malformed triple system, partition or certificate."""


@dataclass(frozen=True)
class TripleSystem:
    points: tuple[Label, ...]
    blocks: frozenset

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise DesignError("duplicate point labels")
        for b in self.blocks:
            if len(b) != 3:
                raise DesignError(f"block {sorted(b)} does not have three points")
            if not b <= pts:
                raise DesignError(f"block {sort_labels(b)} uses unlisted points")

    @classmethod
    def from_blocks(cls, blocks: Iterable, points: Iterable | None = None) -> "TripleSystem":
        bset = frozenset(make_block(b) for b in blocks)
        if points is None:
            points = set().union(*bset) if bset else set()
        return cls(tuple(sort_labels(str(p) for p in points)), bset)

    @property
    def v(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.blocks)

    @cached_property
    def third(self) -> dict:
        """Map each covered pair to the third point of its block (first block wins)."""
        out = {}
        for b in self.blocks:
            x, y, z = tuple(b)
            out.setdefault(frozenset((x, y)), z)
            out.setdefault(frozenset((x, z)), y)
            out.setdefault(frozenset((y, z)), x)
        return out

    def block_of(self, x, y) -> Block | None:
        z = self.third.get(pair(x, y))
        return None if z is None else frozenset((str(x), str(y), z))

    def sorted_blocks(self) -> list[Block]:
        return sorted(self.blocks, key=block_key)

    def replace_blocks(self, remove: Iterable, add: Iterable) -> "TripleSystem":
        remove = {make_block(b) for b in remove}
        add = {make_block(b) for b in add}
        missing = remove - self.blocks
        if missing:
            raise DesignError(f"blocks not present: {[sort_labels(b) for b in missing]}")
        return TripleSystem(self.points, (self.blocks - remove) | add)

    def relabel(self, mapping: dict) -> "TripleSystem":
        m = {str(k): str(v) for k, v in mapping.items()}
        return TripleSystem.from_blocks(
            [[m.get(x, x) for x in b] for b in self.blocks],
            [m.get(x, x) for x in self.points],
        )


class ValidationReport(NamedTuple):
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def pair_coverage(ts: TripleSystem) -> Counter:
    cov = Counter()
    for b in ts.blocks:
        for x, y in itertools.combinations(b, 2):
            cov[frozenset((x, y))] += 1
    return cov


def validate_sts(ts: TripleSystem) -> ValidationReport:
    """Check that every pair of points lies in exactly one block."""
    problems = []
    v = ts.v
    if v < 3:
        problems.append(f"v={v} is too small")
    if v % 6 not in (1, 3):
        problems.append(f"v={v} is not 1 or 3 mod 6")
    want = v * (v - 1) // 6
    if len(ts.blocks) != want:
        problems.append(f"{len(ts.blocks)} blocks, expected {want}")
    cov = pair_coverage(ts)
    for x, y in itertools.combinations(ts.points, 2):
        c = cov.get(frozenset((x, y)), 0)
        if c != 1:
            xs, ys = sort_labels((x, y))
            problems.append(f"pair {{{xs},{ys}}} covered {c} times")
    return ValidationReport(not problems, problems)


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[Label, ...]
    edges: frozenset

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise DesignError("duplicate vertex labels")
        for e in self.edges:
            if len(e) != 2:
                raise DesignError("loops are not allowed")
            if not e <= vs:
                raise DesignError(f"edge {sorted(e)} uses unlisted vertices")

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable = ()) -> "LabeledGraph":
        vs = tuple(str(x) for x in vertices)
        es = frozenset(pair(x, y) for x, y in edges)
        return cls(vs, es)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def neighbours(self) -> dict:
        nb = {x: set() for x in self.vertices}
        for e in self.edges:
            x, y = tuple(e)
            nb[x].add(y)
            nb[y].add(x)
        return nb

    def degrees(self) -> dict:
        return {x: len(s) for x, s in self.neighbours().items()}

    def complement(self) -> "LabeledGraph":
        es = frozenset(
            frozenset(p) for p in itertools.combinations(self.vertices, 2)
            if frozenset(p) not in self.edges
        )
        return LabeledGraph(self.vertices, es)

    def relabel(self, mapping: dict) -> "LabeledGraph":
        m = {str(k): str(v) for k, v in mapping.items()}
        return LabeledGraph.build(
            [m.get(x, x) for x in self.vertices],
            [tuple(m.get(x, x) for x in e) for e in self.edges],
        )

    def sorted_edges(self) -> list[tuple[Label, Label]]:
        es = [tuple(sort_labels(e)) for e in self.edges]
        return sorted(es, key=lambda p: (label_key(p[0]), label_key(p[1])))


GRAPH_FAMILIES = ("complete", "star", "empty", "path", "cycle")


def graph_family(family: str, a: int) -> LabeledGraph:
    """Standard graph on vertices ``0..a-1``; the star is centred at ``0``."""
    if a < 1:
        raise ValueError("a graph family needs a >= 1")
    vs = range(a)
    if family == "complete":
        edges = itertools.combinations(vs, 2)
    elif family == "star":
        edges = [(0, i) for i in range(1, a)]
    elif family == "empty":
        edges = []
    elif family == "path":
        edges = [(i, i + 1) for i in range(a - 1)]
    elif family == "cycle":
        if a < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        edges = [(i, (i + 1) % a) for i in range(a)]
    else:
        raise ValueError(f"unknown graph family {family!r}")
    return LabeledGraph.build(vs, edges)


# ----------------------------------------------------- partitions and classes


@dataclass(frozen=True)
class PointPartition:
    P: frozenset
    A: frozenset
    U: frozenset

    @classmethod
    def build(cls, P=(), A=(), U=()) -> "PointPartition":
        return cls(frozenset(map(str, P)), frozenset(map(str, A)), frozenset(map(str, U)))

    @property
    def p(self):
        return len(self.P)

    @property
    def a(self):
        return len(self.A)

    @property
    def u(self):
        return len(self.U)

    def check(self, ts: TripleSystem):
        if self.P & self.A or self.P & self.U or self.A & self.U:
            raise DesignError("P, A and U must be pairwise disjoint")
        if (self.P | self.A | self.U) != set(ts.points):
            raise DesignError("P, A and U must cover the point set")

    def side(self, x) -> str:
        if x in self.P:
            return "P"
        if x in self.A:
            return "A"
        if x in self.U:
            return "U"
        raise KeyError(x)


class BlockClass(enum.Enum):
    PPU = "PPU"
    PAA = "PAA"
    PAU = "PAU"
    PUU = "PUU"
    AAU = "AAU"
    AUU = "AUU"
    UUU = "UUU"
    FORBIDDEN = "FORBIDDEN"


CLASS_ORDER = (BlockClass.PPU, BlockClass.PAA, BlockClass.PAU, BlockClass.PUU,
               BlockClass.AAU, BlockClass.AUU, BlockClass.UUU)


class BlockClassCounts(NamedTuple):
    PPU: int = 0
    PAA: int = 0
    PAU: int = 0
    PUU: int = 0
    AAU: int = 0
    AUU: int = 0
    UUU: int = 0
    FORBIDDEN: int = 0

    def seven(self) -> tuple:
        return tuple(self)[:7]


def block_class(block: Block, part: PointPartition) -> BlockClass:
    pattern = "".join(sorted((part.side(x) for x in block), key="PAU".index))
    try:
        return BlockClass(pattern)
    except ValueError:
        return BlockClass.FORBIDDEN  # PPP, PPA or AAA


def classify_blocks(ts: TripleSystem, part: PointPartition):
    """Return ``(mapping block -> BlockClass, BlockClassCounts)``."""
    part.check(ts)
    mapping = {b: block_class(b, part) for b in ts.blocks}
    c = Counter(mapping.values())
    counts = BlockClassCounts(*(c.get(k, 0) for k in CLASS_ORDER), c.get(BlockClass.FORBIDDEN, 0))
    return mapping, counts


# ------------------------------------------------------------ certificates


@dataclass(frozen=True)
class EmbeddingCertificate:
    ts: TripleSystem
    partition: PointPartition
    graph: LabeledGraph


@dataclass
class VerificationReport:
    ok: bool
    failures: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{k}: {len(v)} failure(s)" for k, v in self.failures.items())


def verify_embedding(cert: EmbeddingCertificate) -> VerificationReport:
    """Check that ``cert.graph`` is the available graph of ``cert.partition``.

    Constraint keys in the report: ``forbidden`` (PPP/PPA/AAA blocks),
    ``unplayable`` (U points without a PPU block), ``edges`` (graph edges not on
    a block with a P point) and ``non_edges`` (non-adjacent A pairs not on a
    block with a U point).  A vertex set different from ``A`` raises
    ``DesignError``.
    """
    ts, part, g = cert.ts, cert.partition, cert.graph
    part.check(ts)
    if set(g.vertices) != part.A:
        raise DesignError("graph vertex set differs from A")
    mapping, _ = classify_blocks(ts, part)
    failures = {}
    bad = [sort_labels(b) for b, c in mapping.items() if c is BlockClass.FORBIDDEN]
    if bad:
        failures["forbidden"] = sorted(bad, key=lambda b: [label_key(x) for x in b])
    covered_u = set()
    for b, c in mapping.items():
        if c is BlockClass.PPU:
            covered_u |= b & part.U
    lonely = sort_labels(part.U - covered_u)
    if lonely:
        failures["unplayable"] = lonely
    bad_edges, bad_non = [], []
    for x, y in itertools.combinations(sort_labels(part.A), 2):
        z = ts.third.get(frozenset((x, y)))
        if frozenset((x, y)) in g.edges:
            if z not in part.P:
                bad_edges.append((x, y))
        elif z not in part.U:
            bad_non.append((x, y))
    if bad_edges:
        failures["edges"] = bad_edges
    if bad_non:
        failures["non_edges"] = bad_non
    return VerificationReport(not failures, failures)


@dataclass(frozen=True)
class NotAGraph:
    """Available hypergraph still has 3-point hyperedges."""
    hyperedges: tuple

    def __bool__(self):
        return False


class IllegalPosition(DesignError):
    pass


def induced_partition(ts: TripleSystem, P: Iterable) -> PointPartition:
    P = frozenset(map(str, P))
    if not P <= set(ts.points):
        raise DesignError("played points not in the system")
    U = set()
    for b in ts.blocks:
        inside = b & P
        if len(inside) == 3:
            raise IllegalPosition(f"played points contain block {sort_labels(b)}")
        if len(inside) == 2:
            U |= b - P
    A = set(ts.points) - P - U
    return PointPartition(P, frozenset(A), frozenset(U))


def induced_certificate(ts: TripleSystem, P: Iterable):
    """Derive ``(P, A, U)`` and the available graph from a set of played points.

    Returns an :class:`EmbeddingCertificate`, or :class:`NotAGraph` if some
    block with no U point still has three available points.
    """
    part = induced_partition(ts, P)
    edges, big = [], []
    for b in ts.blocks:
        if b & part.U:
            continue
        rest = b - part.P
        if len(rest) == 3:
            big.append(tuple(sort_labels(rest)))
        elif len(rest) == 2:
            edges.append(tuple(rest))
    if big:
        return NotAGraph(tuple(sorted(big, key=lambda t: [label_key(x) for x in t])))
    g = LabeledGraph.build(sort_labels(part.A), edges)
    return EmbeddingCertificate(ts, part, g)


# ------------------------------------------------------------------ Pasch


@dataclass(frozen=True)
class PaschConfiguration:
    """Blocks ``{u,v,z}, {u,y,w}, {x,v,w}, {x,y,z}`` of a host system."""
    u: Label
    v: Label
    z: Label
    y: Label
    w: Label
    x: Label

    @property
    def blocks(self) -> tuple:
        u, v, z, y, w, x = self.u, self.v, self.z, self.y, self.w, self.x
        return (make_block(u, v, z), make_block(u, y, w),
                make_block(x, v, w), make_block(x, y, z))

    @property
    def switched_blocks(self) -> tuple:
        u, v, z, y, w, x = self.u, self.v, self.z, self.y, self.w, self.x
        return (make_block(u, v, w), make_block(u, y, z),
                make_block(x, v, z), make_block(x, y, w))

    def image(self) -> "PaschConfiguration":
        """The configuration formed by the switched blocks, in the same roles."""
        # {u,v,w},{u,y,z},{x,v,z},{x,y,w} is {u,v,z'},{u,y,w'},... with z<->w
        return PaschConfiguration(self.u, self.v, self.w, self.y, self.z, self.x)


def _pasch_points(blocks) -> bool:
    c = Counter(x for b in blocks for x in b)
    return len(c) == 6 and all(n == 2 for n in c.values())


def find_paschs(ts: TripleSystem) -> list[PaschConfiguration]:
    """All Pasch configurations, each listed once (keyed by its block set)."""
    third = ts.third
    through = {x: [] for x in ts.points}
    for b in ts.blocks:
        for x in b:
            through[x].append(b)
    seen = {}
    for u in ts.points:
        for b1, b2 in itertools.combinations(through[u], 2):
            r1 = sort_labels(b1 - {u})
            r2 = sort_labels(b2 - {u})
            for v, z in (r1, r1[::-1]):
                for y, w in (r2, r2[::-1]):
                    x = third.get(frozenset((v, w)))
                    if x is None or x == u or x in b1 or x in b2:
                        continue
                    if third.get(frozenset((y, z))) != x:
                        continue
                    pc = PaschConfiguration(u, v, z, y, w, x)
                    key = frozenset(pc.blocks)
                    if key not in seen:
                        seen[key] = pc
    return sorted(seen.values(), key=lambda pc: sorted(block_key(b) for b in pc.blocks))


def pasch_switch(ts: TripleSystem, pc: PaschConfiguration) -> TripleSystem:
    if not _pasch_points(pc.blocks):
        raise DesignError("not a Pasch configuration")
    return ts.replace_blocks(pc.blocks, pc.switched_blocks)


def same_pair_cover(removed: Iterable, added: Iterable) -> bool:
    def pairs(bs):
        return Counter(frozenset(p) for b in bs for p in itertools.combinations(b, 2))
    return pairs(removed) == pairs(added)


def expected_blocks(v: int) -> int:
    return v * (v - 1) // 6


"""The Nofil game on a Steiner triple system.

Players alternately mark points; a point is unplayable once some block holds
it together with two marked points.  The last player able to move wins.
Positions are sets of played points, stored as bitmasks over the sorted
point labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .design import (
    DesignError,
    IllegalPosition,
    LabeledGraph,
    TripleSystem,
    sort_labels,
    validate_sts,
)
from .graphs import MAX_CANONICAL_VERTICES, canonical_form

DEFAULT_SOLVER_CAP = 15
DEFAULT_NODE_LIMIT = 10_000_000


class Outcome(enum.Enum):
    FirstPlayerWins = "FirstPlayerWins"
    SecondPlayerWins = "SecondPlayerWins"


class Board:
    """Bitmask view of a triple system: point index i has bit 1 << i."""

    def __init__(self, ts: TripleSystem):
        self.ts = ts
        self.labels = sort_labels(ts.points)
        self.index = {x: i for i, x in enumerate(self.labels)}
        self.v = len(self.labels)
        self.full = (1 << self.v) - 1
        self.blocks = []
        self.third = [[-1] * self.v for _ in range(self.v)]
        for b in ts.sorted_blocks():
            i, j, k = (self.index[x] for x in sort_labels(b))
            self.blocks.append((1 << i) | (1 << j) | (1 << k))
            for x, y, z in ((i, j, k), (i, k, j), (j, k, i)):
                self.third[x][y] = z
                self.third[y][x] = z

    def mask(self, points) -> int:
        m = 0
        for x in points:
            m |= 1 << self.index[str(x)]
        return m

    def points_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in range(self.v) if mask >> i & 1]

    def unplayable(self, played: int) -> int:
        u = 0
        idx = [i for i in range(self.v) if played >> i & 1]
        for n, i in enumerate(idx):
            row = self.third[i]
            for j in idx[n + 1:]:
                k = row[j]
                if k >= 0:
                    u |= 1 << k
        return u

    def after_move(self, played: int, unplayable: int, x: int) -> int:
        """Unplayable mask after adding point x to ``played``."""
        row = self.third[x]
        m = played
        while m:
            low = m & -m
            k = row[low.bit_length() - 1]
            if k >= 0:
                unplayable |= 1 << k
            m ^= low
        return unplayable

    def is_graph(self, played: int, unplayable: int) -> bool:
        """True when every block avoiding U already has a played point."""
        for b in self.blocks:
            if not b & unplayable and not b & played:
                return False
        return True

    def hyperedges(self, played: int, unplayable: int) -> list[int]:
        out = []
        for b in self.blocks:
            if b & unplayable:
                continue
            rest = b & ~played
            if rest:
                out.append(rest)
        return out


@dataclass(frozen=True)
class GameState:
    ts: TripleSystem
    played: tuple = ()

    @cached_property
    def board(self) -> Board:
        return Board(self.ts)

    @cached_property
    def P(self) -> frozenset:
        return frozenset(self.played)

    @cached_property
    def U(self) -> frozenset:
        bd = self.board
        return frozenset(bd.points_of(bd.unplayable(bd.mask(self.played))))

    @cached_property
    def A(self) -> frozenset:
        return frozenset(self.ts.points) - self.P - self.U

    @cached_property
    def hyperedges(self) -> list[tuple]:
        """Available hyperedges: blocks with no U point, minus played points."""
        out = []
        for b in self.ts.sorted_blocks():
            if b & self.U:
                continue
            rest = b - self.P
            if rest:
                out.append(tuple(sort_labels(rest)))
        return out

    def is_graph(self) -> bool:
        return all(len(h) <= 2 for h in self.hyperedges)

    def graph(self) -> LabeledGraph:
        if not self.is_graph():
            raise DesignError("available hypergraph still has 3-point hyperedges")
        return LabeledGraph.build(sort_labels(self.A), [h for h in self.hyperedges if len(h) == 2])


def new_game(ts: TripleSystem) -> GameState:
    if not validate_sts(ts):
        raise DesignError("Nofil needs a valid Steiner triple system")
    return GameState(ts, ())


def legal_moves(s: GameState) -> set:
    return set(s.A)


def play(s: GameState, x) -> GameState:
    x = str(x)
    if x not in s.ts.points:
        raise IllegalPosition(f"{x} is not a point")
    if x in s.P:
        raise IllegalPosition(f"{x} has already been played")
    if x in s.U:
        for b in s.ts.sorted_blocks():
            if x in b and len(b & s.P) == 2:
                raise IllegalPosition(f"{x} would complete block {''.join(sort_labels(b))}")
    return GameState(s.ts, s.played + (x,))


# ------------------------------------------------------------------ solving


@dataclass
class Solution:
    outcome: Outcome
    principal_variation: list
    positions: int

    @property
    def length(self) -> int:
        return len(self.principal_variation)


class SolverCapExceeded(ValueError):
    pass


def outcome(ts: TripleSystem, cap: int = DEFAULT_SOLVER_CAP) -> Solution:
    """Exact normal-play value by memoized search over played sets.

    The principal variation follows the first winning move (in label order)
    for the side to move when one exists, otherwise the first legal move.
    """
    if ts.v > cap:
        raise SolverCapExceeded(f"v={ts.v} is above the solver cap {cap}")
    if not validate_sts(ts):
        raise DesignError("Nofil needs a valid Steiner triple system")
    bd = Board(ts)
    memo: dict = {}

    def wins(played: int, unpl: int) -> bool:
        got = memo.get(played)
        if got is not None:
            return got
        free = bd.full & ~played & ~unpl
        res = False
        while free:
            low = free & -free
            x = low.bit_length() - 1
            if not wins(played | low, bd.after_move(played, unpl, x)):
                res = True
                break
            free ^= low
        memo[played] = res
        return res

    first = wins(0, 0)
    pv = []
    played = unpl = 0
    while True:
        free = bd.full & ~played & ~unpl
        if not free:
            break
        choice = None
        m = free
        while m:
            low = m & -m
            x = low.bit_length() - 1
            nu = bd.after_move(played, unpl, x)
            if not wins(played | low, nu):
                choice = (x, nu)
                break
            if choice is None:
                choice = (x, nu)
            m ^= low
        # when losing, keep the first legal move
        if not wins(played, unpl):
            low = free & -free
            x = low.bit_length() - 1
            choice = (x, bd.after_move(played, unpl, x))
        x, unpl = choice
        played |= 1 << x
        pv.append(bd.labels[x])
    return Solution(Outcome.FirstPlayerWins if first else Outcome.SecondPlayerWins, pv, len(memo))


# ---------------------------------------------------------------- harvesting


@dataclass
class CatalogEntry:
    key: str
    graph: LabeledGraph
    witness: tuple
    count: int = 1
    sources: int = 1


@dataclass
class GraphCatalog:
    entries: dict = field(default_factory=dict)
    complete: bool = True
    positions: int = 0

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def keys(self) -> set:
        return set(self.entries)

    def to_lines(self) -> str:
        """One line per graph: ``canonical_key n_vertices n_edges witness_P...``."""
        lines = []
        for key in sorted(self.entries, key=lambda k: (self.entries[k].graph.n, self.entries[k].graph.e, k)):
            ent = self.entries[key]
            lines.append(" ".join([key, str(ent.graph.n), str(ent.graph.e), *ent.witness]))
        return "\n".join(lines) + ("\n" if lines else "")

    def merge(self, other: "GraphCatalog") -> "GraphCatalog":
        out = GraphCatalog(dict(), self.complete and other.complete, self.positions + other.positions)
        for cat in (self, other):
            for key, ent in cat.entries.items():
                have = out.entries.get(key)
                if have is None:
                    out.entries[key] = CatalogEntry(key, ent.graph, ent.witness, ent.count, ent.sources)
                else:
                    have.count += ent.count
                    have.sources += ent.sources
        return out


@dataclass(frozen=True)
class HarvestLimits:
    max_nodes: int = DEFAULT_NODE_LIMIT
    max_vertices: int = MAX_CANONICAL_VERTICES


def graph_key(g: LabeledGraph) -> str:
    return canonical_form(g).decode()


def _state_graph(bd: Board, played: int, unpl: int) -> LabeledGraph:
    avail = bd.full & ~played & ~unpl
    edges = []
    for b in bd.blocks:
        if b & unpl or not b & played:
            continue
        rest = b & ~played
        if rest.bit_count() == 2:
            edges.append(bd.points_of(rest))
    return LabeledGraph.build(bd.points_of(avail), edges)


def _traverse(ts: TripleSystem, limits: HarvestLimits, visit):
    """Depth-first walk over reachable played sets; ``visit`` returns True to stop.

    Returns (completed, positions).
    """
    bd = Board(ts)
    seen = set()
    stack = [(0, 0)]
    while stack:
        played, unpl = stack.pop()
        if played in seen:
            continue
        if len(seen) >= limits.max_nodes:
            return False, len(seen)
        seen.add(played)
        if bd.is_graph(played, unpl):
            avail = bd.full & ~played & ~unpl
            if avail.bit_count() <= limits.max_vertices and visit(bd, played, unpl):
                return True, len(seen)
        free = bd.full & ~played & ~unpl
        while free:
            low = free & -free
            nxt = played | low
            if nxt not in seen:
                stack.append((nxt, bd.after_move(played, unpl, low.bit_length() - 1)))
            free ^= low
    return True, len(seen)


def harvest_graphs(ts: TripleSystem, limits: HarvestLimits | None = None) -> GraphCatalog:
    """Every graph reachable as an available hypergraph, keyed by canonical form.

    Graph states with more than ``limits.max_vertices`` available points are
    not recorded.  ``complete`` is False if the node budget ran out.
    """
    limits = limits or HarvestLimits()
    cat = GraphCatalog()
    cache: dict = {}

    def visit(bd, played, unpl):
        g = _state_graph(bd, played, unpl)
        sig = (g.vertices, g.edges)
        key = cache.get(sig)
        if key is None:
            key = cache[sig] = graph_key(g)
        ent = cat.entries.get(key)
        if ent is None:
            cat.entries[key] = CatalogEntry(key, g, tuple(bd.points_of(played)))
        else:
            ent.count += 1
        return False

    done, cat.positions = _traverse(ts, limits, visit)
    cat.complete = done
    return cat


@dataclass(frozen=True)
class GraphNotFound:
    complete: bool

    def __bool__(self):
        return False


def contains_graph(ts: TripleSystem, g: LabeledGraph, limits: HarvestLimits | None = None):
    """A played set whose available graph is isomorphic to ``g``, or ``GraphNotFound``."""
    limits = limits or HarvestLimits()
    if g.n > limits.max_vertices:
        raise ValueError("graph larger than the recording limit")
    target = graph_key(g)
    found = []

    def visit(bd, played, unpl):
        if (bd.full & ~played & ~unpl).bit_count() != g.n:
            return False
        h = _state_graph(bd, played, unpl)
        if h.e == g.e and graph_key(h) == target:
            found.append(tuple(bd.points_of(played)))
            return True
        return False

    done, _ = _traverse(ts, limits, visit)
    if found:
        return found[0]
    return GraphNotFound(done)


def replay(ts: TripleSystem, moves) -> list[GameState]:
    """States after each prefix of ``moves``, starting with the empty position."""
    states = [new_game(ts)]
    for x in moves:
        states.append(play(states[-1], x))
    return states


def format_turns(states: list[GameState]) -> str:
    """Turn table: turn, P, A, U and the available hyperedges."""
    lines = ["turn | P | A | U | available"]
    for k, s in enumerate(states):
        hyp = ", ".join("".join(h) if all(len(x) == 1 for x in h) else "{" + ",".join(h) + "}"
                        for h in s.hyperedges)
        lines.append(" | ".join([
            str(k),
            ",".join(s.played),
            ",".join(sort_labels(s.A)),
            ",".join(sort_labels(s.U)),
            hyp,
        ]))
    return "\n".join(lines) + "\n"

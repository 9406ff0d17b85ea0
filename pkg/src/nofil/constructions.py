"""Direct embeddings of complete graphs and stars in Steiner triple systems.

Cyclic systems are described by a :class:`CyclicPresentation`: points ``i_j``
for ``i`` in Z_n and a list of copy subscripts ``j``, plus fixed points that
the group leaves alone.  One block per orbit is listed; :func:`expand_orbits`
applies the group and checks the result.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from importlib import resources

from .bounds import min_admissible_v, sts_order
from .design import (
    DesignError,
    EmbeddingCertificate,
    LabeledGraph,
    PaschConfiguration,
    PointPartition,
    TripleSystem,
    graph_family,
    induced_certificate,
    make_block,
    pair_coverage,
    pasch_switch,
    same_pair_cover,
    sort_labels,
    validate_sts,
    verify_embedding,
)
from .io import certificate_from_text
from .skolem import generate, search, special_hooked, special_skolem


class ConstructionDefect(DesignError):
    """An orbit expansion that is not a Steiner triple system."""

    def __init__(self, message: str, pair=None, count: int | None = None):
        super().__init__(message)
        self.pair = pair
        self.count = count


class NotFound(LookupError):
    pass


# ------------------------------------------------------------ presentations


@dataclass(frozen=True)
class CyclicPresentation:
    """Points ``i_j`` (or bare ``i`` when ``copies`` is empty) plus fixed points.

    ``extra_blocks`` are added verbatim after the orbit expansion; they cover
    pairs the group action cannot reach, such as a non-cyclic subsystem on one
    copy.
    """
    n: int
    copies: tuple = ()
    fixed_points: tuple = ()
    base_blocks: tuple = ()
    extra_blocks: tuple = ()

    def point(self, i: int, j=None) -> str:
        return f"{i % self.n}" if j is None else f"{i % self.n}_{j}"

    def points(self) -> list[str]:
        if self.copies:
            pts = [self.point(i, j) for j in self.copies for i in range(self.n)]
        else:
            pts = [self.point(i) for i in range(self.n)]
        return pts + [str(x) for x in self.fixed_points]

    def shift(self, label: str, g: int) -> str:
        if label in self.fixed_points:
            return label
        i, sep, j = label.partition("_")
        return f"{(int(i) + g) % self.n}{sep}{j}"

    def to_text(self) -> str:
        lines = [
            f"n={self.n}",
            "copies: " + " ".join(map(str, self.copies)),
            "fixed: " + " ".join(self.fixed_points),
            "BASE:",
        ]
        lines += [" ".join(b) for b in self.base_blocks]
        if self.extra_blocks:
            lines.append("EXTRA:")
            lines += [" ".join(b) for b in self.extra_blocks]
        return "\n".join(lines) + "\n"


def _first_bad_pair(ts: TripleSystem):
    cov = pair_coverage(ts)
    for x, y in itertools.combinations(ts.points, 2):
        c = cov.get(frozenset((x, y)), 0)
        if c != 1:
            return (x, y), c
    return None, None


def expand_orbits(cp: CyclicPresentation) -> TripleSystem:
    """Apply ``i_j -> (i+g)_j`` for every g in Z_n to the base blocks.

    Blocks are deduplicated as sets, so short orbits collapse.  Raises
    :class:`ConstructionDefect` naming a pair that is covered zero or several
    times.
    """
    if cp.n < 1:
        raise ValueError("modulus must be positive")
    points = cp.points()
    known = set(points)
    blocks = set()
    for base in cp.base_blocks:
        b = make_block(base)
        if not b <= known:
            raise ConstructionDefect(f"base block {sort_labels(b)} uses unknown labels")
        for g in range(cp.n):
            blocks.add(frozenset(cp.shift(x, g) for x in b))
    for extra in cp.extra_blocks:
        b = make_block(extra)
        if not b <= known:
            raise ConstructionDefect(f"extra block {sort_labels(b)} uses unknown labels")
        blocks.add(b)
    ts = TripleSystem.from_blocks(blocks, points)
    if not validate_sts(ts):
        bad, count = _first_bad_pair(ts)
        if bad is None:
            raise ConstructionDefect(f"order {ts.v} admits no Steiner triple system")
        raise ConstructionDefect(f"pair {{{bad[0]},{bad[1]}}} covered {count} times", bad, count)
    return ts


# ------------------------------------------------------------ decompositions


@dataclass
class MatchingDecomposition:
    """Indexed edge-disjoint matchings whose union is the complete graph on ``host``."""
    host: tuple
    classes: dict = field(default_factory=dict)

    def problems(self) -> list[str]:
        out = []
        seen = set()
        for key, cls in self.classes.items():
            pts = [x for e in cls for x in e]
            if len(pts) != len(set(pts)):
                out.append(f"class {key} is not a matching")
            for e in cls:
                if len(e) != 2 or not e <= set(self.host):
                    out.append(f"class {key} has a bad edge {sorted(e)}")
                if e in seen:
                    out.append(f"edge {sorted(e)} repeated")
                seen.add(e)
        want = {frozenset(p) for p in itertools.combinations(self.host, 2)}
        if seen != want:
            out.append(f"{len(want - seen)} host edges uncovered")
        return out

    def ok(self) -> bool:
        return not self.problems()

    def missing(self, key) -> set:
        """Host vertices of degree zero in one class."""
        return set(self.host) - {x for e in self.classes[key] for x in e}


def _p(i, j):
    return f"p{i}_{j}"


def _cycle_decomposition(ell: int, seed: int = 0, node_limit: int = 200_000):
    """Cycles C_0..C_{ell-1} decomposing the cocktail-party graph K_{2^ell}.

    C_i is a Hamiltonian cycle on every part except part ``i``.  Built cycle
    by cycle with randomized depth-first search and restarts.
    """
    verts = [(i, j) for i in range(ell) for j in (0, 1)]
    rng = random.Random(seed)
    while True:
        free = {x: {y for y in verts if y[0] != x[0]} for x in verts}
        cycles = []
        try:
            for i in range(ell):
                cyc = _hamilton_cycle([x for x in verts if x[0] != i], free, rng, node_limit)
                if cyc is None:
                    raise TimeoutError
                for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                    free[x].discard(y)
                    free[y].discard(x)
                cycles.append(cyc)
            return cycles
        except TimeoutError:
            continue


def _hamilton_cycle(vs, free, rng, node_limit):
    target = len(vs)
    allowed = set(vs)
    start = vs[0]
    path, on = [start], {start}
    nodes = 0

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise TimeoutError
        x = path[-1]
        if len(path) == target:
            return start in free[x]
        opts = [y for y in free[x] if y in allowed and y not in on]
        rng.shuffle(opts)
        # fewest onward options first keeps the tail reachable
        opts.sort(key=lambda y: sum(1 for z in free[y] if z in allowed and z not in on))
        for y in opts:
            path.append(y)
            on.add(y)
            if rec():
                return True
            path.pop()
            on.discard(y)
        return False

    return list(path) if rec() else None


def decompose_P_matchings(ell: int) -> MatchingDecomposition:
    """Matchings ``inf`` and ``(i, 0)``, ``(i, 1)`` on the points ``p{i}_{j}``.

    Class ``inf`` pairs ``p{i}_0`` with ``p{i}_1``; classes ``(i, 0)`` and
    ``(i, 1)`` alternate around a cycle through every other part, so the two
    points of part ``i`` are missed exactly there.  For ``ell = 2`` that
    pattern cannot exist (each part would need a cycle on two points); the
    four cross edges are split over classes ``(0, 0)`` and ``(0, 1)`` instead.
    """
    if ell < 2:
        raise ValueError("need ell >= 2")
    host = tuple(_p(i, j) for i in range(ell) for j in (0, 1))
    classes = {"inf": {frozenset((_p(i, 0), _p(i, 1))) for i in range(ell)}}
    if ell == 2:
        classes[(0, 0)] = {frozenset((_p(0, 0), _p(1, 0))), frozenset((_p(0, 1), _p(1, 1)))}
        classes[(0, 1)] = {frozenset((_p(0, 0), _p(1, 1))), frozenset((_p(0, 1), _p(1, 0)))}
        classes[(1, 0)] = set()
        classes[(1, 1)] = set()
        return MatchingDecomposition(host, classes)
    for i, cyc in enumerate(_cycle_decomposition(ell)):
        edges = [frozenset((_p(*x), _p(*y))) for x, y in zip(cyc, cyc[1:] + cyc[:1])]
        classes[(i, 0)] = set(edges[0::2])
        classes[(i, 1)] = set(edges[1::2])
    return MatchingDecomposition(host, classes)


def decompose_A_matchings(a: int) -> MatchingDecomposition:
    """Matchings on Z_a: ``(i, 0)`` perfect, ``(i, 1)`` missing ``i`` and ``i + a/2``."""
    if a < 2 or a % 2:
        raise ValueError("decompose_A_matchings needs an even a >= 2")
    h = a // 2
    classes = {}
    for i in range(h):
        classes[(i, 0)] = {frozenset((str((i - k) % a), str((i + k + 1) % a))) for k in range(h)}
        classes[(i, 1)] = {frozenset((str((i - k) % a), str((i + k) % a))) for k in range(1, h)}
    return MatchingDecomposition(tuple(str(x) for x in range(a)), classes)


def near_one_factorization(m: int) -> MatchingDecomposition:
    """Classes ``i`` on Z_m pairing ``i - j`` with ``i + j``; class ``i`` misses ``i``."""
    if m < 1 or m % 2 == 0:
        raise ValueError("near_one_factorization needs an odd m")
    classes = {
        i: {frozenset((str((i - j) % m), str((i + j) % m))) for j in range(1, (m - 1) // 2 + 1)}
        for i in range(m)
    }
    return MatchingDecomposition(tuple(str(x) for x in range(m)), classes)


# ---------------------------------------------------------- complete graphs


def _data_certificate(name: str) -> EmbeddingCertificate:
    text = resources.files("nofil").joinpath("data", f"{name}.txt").read_text()
    cert = certificate_from_text(text)
    if not validate_sts(cert.ts) or not verify_embedding(cert):
        raise ConstructionDefect(f"stored certificate {name} does not verify")
    return cert


def _embed_complete_odd(a: int) -> EmbeddingCertificate:
    inv2 = pow(2, -1, a)

    def pt(i, k):
        return f"{i % a}_{k % 3}"

    blocks = [(pt(i, 0), pt(i, 1), pt(i, 2)) for i in range(a)]
    for k in range(3):
        for i, j in itertools.combinations(range(a), 2):
            blocks.append((pt(i, k), pt(j, k), pt((i + j) * inv2, k - 1)))
    ts = TripleSystem.from_blocks(blocks)
    part = PointPartition.build(
        [pt(i, 0) for i in range(a)], [pt(i, 1) for i in range(a)], [pt(i, 2) for i in range(a)]
    )
    graph = LabeledGraph.build(sort_labels(part.A), itertools.combinations(sort_labels(part.A), 2))
    return EmbeddingCertificate(ts, part, graph)


def _embed_complete_even(a: int) -> EmbeddingCertificate:
    ell = a // 2
    Pm = decompose_P_matchings(ell)
    Am = decompose_A_matchings(a)
    Um = near_one_factorization(a + 1)

    def a_lab(x):  # Z_a label -> a{i}_{j}
        x = int(x)
        return f"a{x % ell}_{x // ell}"

    def u_lab(x):  # Z_{a+1} label -> u{i}_{j} or u_inf
        x = int(x)
        if x == 0:
            return "u_inf"
        return f"u{x - 1}_0" if x <= ell else f"u{a - x}_1"

    def u_index(i, j):
        return i + 1 if j == 0 else a - i

    blocks = []
    for e in Pm.classes["inf"]:
        blocks.append((*e, "u_inf"))
    for i in range(ell):
        for j in (0, 1):
            for e in Pm.classes[(i, j)]:
                blocks.append((*e, f"u{i}_{j}"))
            for e in Am.classes[(i, j)]:
                blocks.append((*(a_lab(x) for x in e), _p(i, j)))
            blocks.append((_p(i, 1), f"a{i}_{j}", f"u{i}_{j}"))
            for e in Um.classes[u_index(i, j)]:
                blocks.append((f"a{i}_{j}", *(u_lab(x) for x in e)))
        blocks.append((_p(i, 0), f"u{i}_0", f"u{i}_1"))
    ts = TripleSystem.from_blocks(blocks)
    A = [f"a{i}_{j}" for i in range(ell) for j in (0, 1)]
    part = PointPartition.build(Pm.host, A, [u_lab(x) for x in range(a + 1)])
    graph = LabeledGraph.build(sort_labels(A), itertools.combinations(sort_labels(A), 2))
    return EmbeddingCertificate(ts, part, graph)


def embed_complete(a: int) -> EmbeddingCertificate:
    """Embedding of K_a: order 3a for odd a and 3a + 1 for even a >= 4.

    For a = 4 the matching pattern needed by the even construction does not
    exist, so a stored STS(13) is used.  K_2 has no embedding below order 13
    and is also read from a stored STS(13).
    """
    if a < 2:
        raise ValueError("embed_complete needs a >= 2")
    if a == 2:
        return _data_certificate("complete_a2_sts13")
    if a == 4:
        return _data_certificate("complete_a4_sts13")
    cert = _embed_complete_odd(a) if a % 2 else _embed_complete_even(a)
    if not validate_sts(cert.ts) or not verify_embedding(cert):
        raise ConstructionDefect(f"complete-graph construction failed for a={a}")
    return cert


# ------------------------------------------------------------- cyclic STS


def _difference_partition(n: int, diffs: list[int], required=None, seed: int = 0):
    """Partition ``diffs`` (short differences mod n) into triples x + y = z or x + y + z = n.

    Randomized depth-first search with restarts and doubling node budgets,
    then one complete search if every restart times out.
    """
    pool0 = set(diffs)
    head = []
    if required is not None:
        req = tuple(sorted(required))
        if len(set(req)) != 3 or not set(req) <= pool0 or not _is_difference_triple(n, req):
            return None
        pool0 -= set(req)
        head.append(req)

    def short(d):
        d %= n
        return min(d, n - d)

    def attempt(rng, limit):
        pool = set(pool0)
        out = list(head)
        nodes = 0

        def rec():
            nonlocal nodes
            if not pool:
                return True
            nodes += 1
            if limit is not None and nodes > limit:
                raise TimeoutError
            x = max(pool)
            pool.discard(x)
            ys = sorted(pool)
            if rng is not None:
                rng.shuffle(ys)
            for y in ys:
                for z in {short(x + y), short(x - y)}:
                    if z in pool and z != y:
                        pool.discard(y)
                        pool.discard(z)
                        out.append(tuple(sorted((x, y, z))))
                        if rec():
                            return True
                        out.pop()
                        pool.add(y)
                        pool.add(z)
            pool.add(x)
            return False

        return out if rec() else None

    rng = random.Random(seed)
    budget = 2000
    for k in range(200):
        if k and k % 20 == 0:
            budget *= 2
        try:
            return attempt(rng, budget)
        except TimeoutError:
            continue
    return attempt(None, None)


def _is_difference_triple(n, triple) -> bool:
    x, y, z = sorted(triple)
    return (x + y - z) % n == 0 or (x + y + z) % n == 0


def _base_block(n, triple):
    x, y, z = sorted(triple)
    if (x + y - z) % n == 0:
        return (0, x, z)
    return (0, x, x + y)


def cyclic_sts_base_blocks(v: int, required=None) -> list[tuple[int, int, int]]:
    """Base blocks over Z_v of a cyclic STS(v), each containing 0.

    For v = 6t + 1 without a required triple the blocks {0, r, b_r + t} come
    from a Skolem or hooked Skolem sequence of order t.  Otherwise the
    differences are partitioned by backtracking; ``required`` forces one
    difference triple.  For v = 6t + 3 the short orbit {0, 2t+1, 4t+2} is
    appended.  Raises :class:`NotFound` when no cyclic system exists (v = 9).
    """
    if v % 6 not in (1, 3) or v < 3:
        raise ValueError(f"no STS of order {v}")
    t = v // 6
    if v % 6 == 1 and required is None:
        kind = "skolem" if t % 4 in (0, 1) else "hooked"
        seq = generate(kind, t)
        return [(0, r, b + t) for r, (_, b) in sorted(seq.pairs.items())]
    diffs = list(range(1, 3 * t + 1)) if v % 6 == 1 else [d for d in range(1, 3 * t + 2) if d != 2 * t + 1]
    triples = _difference_partition(v, diffs, required)
    if triples is None:
        raise NotFound(f"no cyclic STS({v})" + ("" if required is None else f" with differences {sorted(required)}"))
    blocks = [_base_block(v, tr) for tr in sorted(triples)]
    if v % 6 == 3:
        blocks.append((0, 2 * t + 1, 4 * t + 2))
    return blocks


def affine_plane_blocks() -> list[tuple[int, int, int]]:
    """The twelve lines of AG(2,3) on the points 0..8 (point 3x + y is (x, y))."""
    lines = set()
    pts = [(x, y) for x in range(3) for y in range(3)]
    for p, q in itertools.combinations(pts, 2):
        r = ((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3)
        lines.add(frozenset(3 * x + y for x, y in (p, q, r)))
    return sorted(tuple(sorted(b)) for b in lines)


def _subsystem(m: int, copy, required=None):
    """(base blocks, extra blocks) placing an STS(m) on one copy of Z_m."""
    if m == 9 and required is None:
        return (), tuple(tuple(f"{x}_{copy}" for x in b) for b in affine_plane_blocks())
    base = cyclic_sts_base_blocks(m, required)
    return tuple(tuple(f"{x % m}_{copy}" for x in b) for b in base), ()


# ----------------------------------------------------------------- stars


@dataclass
class StarEmbedding:
    a: int
    cert: EmbeddingCertificate
    v: int
    tag: str
    method: str
    centre: str
    presentation: CyclicPresentation | None = None
    search_required: bool = False
    notes: list = field(default_factory=list)


def construction_order(a: int) -> int:
    """Order claimed by the star construction for each residue of a mod 6."""
    return 4 * a + (-3, 3, -1, -5, -3, -5)[a % 6]


def minimality_tag(a: int, v: int) -> str:
    """Rank of v among STS orders at or above the least admissible order for the star."""
    vmin, _ = min_admissible_v(graph_family("star", a))
    if vmin is None or v < vmin:
        return "unknown"
    rank = sum(1 for w in range(vmin, v) if sts_order(w))
    return ("minimal", "next", "third")[rank] if rank < 3 else f"rank-{rank + 1}"


def _is_star(g: LabeledGraph, centre: str, leaves: int) -> bool:
    return g.e == leaves and g.n == leaves + 1 and all(centre in e for e in g.edges)


def _star_certificate(ts: TripleSystem, P, centre: str, leaves: int):
    cert = induced_certificate(ts, P)
    if not isinstance(cert, EmbeddingCertificate):
        return None
    if not _is_star(cert.graph, centre, leaves) or not verify_embedding(cert):
        return None
    return cert


class _Z:
    """Label helper for Z_n with copy subscripts."""

    def __init__(self, n):
        self.n = n

    def __call__(self, i, j):
        return f"{i % self.n}_{j}"


def _table_0_6(a: int):
    """a = 6t, modulus a - 1, point ``inf`` in A."""
    t = a // 6
    n = a - 1
    z = _Z(n)
    inf = "inf"
    blocks = []
    r_max = 3 * t - 1
    if a % 24 == 6:
        ab = generate("hooked", 3 * t - 1).pairs
        cd = generate("skolem", t - 1).pairs if t > 1 else {}
        b = {r: y for r, (_, y) in ab.items()}
        blocks += [(z(0, 1), z(r, 1), z(b[r], 4)) for r in range(1, r_max + 1) if r != 4]
        blocks += [(z(0, 1), z(4, 1), z(2, 3))]
        blocks += [(inf, z(0, 2), z(-3, 1))]
        blocks += [(z(2 * r, 1), z(0, 2), z(r, 3)) for r in range(1, 6 * t - 3)
                   if r not in (2, 3 * t - 2, 3 * t - 1)]
        blocks += [(z(0, 1), z(0, 2), z(-1, 4)), (z(-2, 1), z(0, 2), z(3 * t - 1, 3)),
                   (z(-1, 1), z(0, 2), z(-1, 3)), (z(4, 1), z(0, 2), z(b[4], 4)),
                   (z(0, 1), z(4, 2), z(b[4], 4))]
        blocks += [(z(-1, 1), z(0, 3), z(3 * t - 1, 3))]
        blocks += [(z(0, 2), z(r, 2), z(b[r], 4)) for r in range(1, r_max + 1) if r != 4]
        blocks += [(z(0, 2), z(4, 2), z(2, 3))]
        blocks += [(inf, z(0, 3), z(1, 4)), (z(0, 2), z(0, 3), z(3 * t - 2, 3))]
        blocks += [(z(0, 4), z(r, 4), z(b[r], 3)) for r in range(1, r_max + 1)]
    elif a % 24 == 12:
        ab = generate("skolem", 3 * t - 1).pairs
        cd = generate("skolem", t - 1).pairs
        b = {r: y for r, (_, y) in ab.items()}
        blocks += [(z(0, 1), z(r, 1), z(b[r], 4)) for r in range(1, r_max + 1) if r != 4]
        blocks += [(z(0, 1), z(4, 1), z(2, 3))]
        blocks += [(inf, z(0, 1), z(3, 2))]
        blocks += [(z(0, 1), z(-2 * r, 2), z(-r, 3)) for r in range(1, 6 * t - 3)
                   if r not in (2, 3 * t - 2, 3 * t - 1)]
        blocks += [(z(0, 1), z(0, 2), z(0, 4)), (z(0, 1), z(2, 2), z(3 * t + 1, 3)),
                   (z(0, 1), z(1, 2), z(0, 3)), (z(4, 1), z(0, 2), z(b[4], 4)),
                   (z(0, 1), z(4, 2), z(b[4], 4))]
        blocks += [(z(-1, 1), z(0, 3), z(3 * t - 1, 3))]
        blocks += [(z(0, 2), z(r, 2), z(b[r], 4)) for r in range(1, r_max + 1) if r != 4]
        blocks += [(z(0, 2), z(4, 2), z(2, 3))]
        blocks += [(inf, z(0, 3), z(0, 4)), (z(0, 2), z(0, 3), z(3 * t - 2, 3))]
        blocks += [(z(b[r], 3), z(0, 4), z(r, 4)) for r in range(1, r_max + 1)]
    else:
        ab = generate("split", 3 * t - 1).pairs
        cd = generate("hooked", t - 1).pairs
        b = {r: y for r, (_, y) in ab.items()}
        aa = {r: x for r, (x, _) in ab.items()}
        blocks += [(z(0, 1), z(r, 1), z(b[r], 4)) for r in range(1, r_max + 1) if r != 7]
        blocks += [(z(0, 1), z(7, 1), z(5, 3))]
        blocks += [(inf, z(0, 1), z(5, 2))]
        blocks += [(z(0, 1), z(1 - 2 * r, 2), z(2 - r, 3)) for r in range(1, 6 * t - 4)
                   if r not in (4, 3 * t - 1, 3 * t)]
        blocks += [(z(0, 1), z(0, 2), z(3 * t, 4)), (z(0, 1), z(2, 2), z(2, 3)),
                   (z(0, 1), z(3, 2), z(4, 3)), (z(0, 1), z(1, 2), z(3 * t + 1, 3)),
                   (z(7, 1), z(0, 2), z(b[7], 4)), (z(0, 1), z(7, 2), z(b[7], 4))]
        blocks += [(z(0, 1), z(3, 3), z(3 * t + 2, 3))]
        blocks += [(z(0, 2), z(r, 2), z(b[r], 4)) for r in range(1, r_max + 1) if r != 7]
        blocks += [(z(0, 2), z(7, 2), z(5, 3))]
        blocks += [(inf, z(0, 3), z(3 * t - 1, 4)), (z(0, 2), z(3 * t + 1, 3), z(-1, 3))]
        blocks += [(z(0, 3), z(-b[r], 4), z(-aa[r], 4)) for r in range(1, r_max + 1)]
    d = {r: y for r, (_, y) in cd.items()}
    blocks += [(z(0, 3), z(r, 3), z(d[r] + t - 1, 3)) for r in range(1, t)]
    cp = CyclicPresentation(n, (1, 2, 3, 4), (inf,), tuple(blocks))
    return [cp], [z(i, 1) for i in range(n)], inf


def _table_4_6(a: int):
    """a = 6t + 4, modulus a - 1; yields one presentation per admissible choice."""
    t = (a - 4) // 6
    n = a - 1
    z = _Z(n)
    inf = "inf"
    s = 2 * t + 1
    base4, extra4 = _subsystem(n, 4)
    short = (z(0, 3), z(s, 3), z(2 * s, 3))
    out = []
    if a % 24 in (4, 10):
        ab = generate("skolem", 3 * t + 1).pairs
        A = {r: x for r, (x, _) in ab.items()}
        b = {r: y for r, (_, y) in ab.items()}
        As, Bs = A[s], b[s]
        skip = {(As + s) % n, (As - s) % n}
        blocks = [(z(0, 1), z(r, 1), z(b[r], 4)) for r in range(1, 3 * t + 2) if r != s]
        blocks += [(z(s, 1), z(0, 1), z(As - s, 3))]
        blocks += [(inf, z(0, 1), z(-As, 2))]
        blocks += [(z(As - r, 1), z(0, 2), z(r, 3)) for r in range(1, 6 * t + 3) if r % n not in skip]
        blocks += [(z(0, 1), z(s, 2), z(Bs, 4)), (z(0, 1), z(-s, 2), z(As, 4))]
        blocks += [(z(0, 1), z(-As, 3), z(0, 4))]
        blocks += [(z(0, 2), z(r, 2), z(b[r], 4)) for r in range(1, 3 * t + 2) if r != s]
        blocks += [(z(0, 2), z(-s, 2), z(As + s, 3))]
        blocks += [(z(0, 2), z(0, 3), z(0, 4)), (inf, z(0, 3), z(Bs, 4))]
        blocks += [(z(0, 3), z(r, 3), z(b[r], 4)) for r in range(1, 3 * t + 2) if r != s]
        blocks += [short]
        out.append(CyclicPresentation(n, (1, 2, 3, 4), (inf,), tuple(blocks + list(base4)), extra4))
    else:
        ab = generate("hooked", 3 * t + 1).pairs
        A = {r: x for r, (x, _) in ab.items()}
        b = {r: y for r, (_, y) in ab.items()}
        As, Bs = A[s], b[s]
        for i in range(1, (3 * t + 1) // 2 + 1):
            j = 2 * i
            k = A[i] + b[j] + 3 + As
            l = k - i
            if k % n == 0 or l % n == 0:
                continue
            blocks = [(z(0, 1), z(r, 1), z(b[r], 4)) for r in range(1, 3 * t + 2) if r != j]
            blocks += [(z(0, 1), z(j, 1), z(2 * k - 1 - As, 3))]
            blocks += [(inf, z(0, 1), z(-As - 3, 2))]
            blocks += [(z(As + 3 - r, 1), z(0, 2), z(2 + r, 3)) for r in range(1, 6 * t + 3)
                       if r % n not in (k % n, l % n)]
            blocks += [(z(0, 1), z(b[j] + A[i], 2), z(b[j], 4)),
                       (z(0, 1), z(A[j] + b[i], 2), z(A[j], 4))]
            blocks += [(z(0, 1), z(-As - 1, 3), z(-1, 4))]
            blocks += [(z(0, 2), z(-r, 2), z(-b[r], 4)) for r in range(1, 3 * t + 2) if r != i]
            blocks += [(z(0, 2), z(i, 2), z(2 + k, 3))]
            blocks += [(inf, z(0, 3), z(Bs, 4)), (z(0, 2), z(2, 3), z(1, 4))]
            blocks += [(z(0, 3), z(r, 3), z(b[r], 4)) for r in range(1, 3 * t + 2) if r != s]
            blocks += [short]
            out.append(CyclicPresentation(n, (1, 2, 3, 4), (inf,), tuple(blocks + list(base4)), extra4))
    return out, [z(i, 1) for i in range(n)], inf


def _three_a_sequences(t: int, alternatives: int = 0):
    """(pairs, offset) for the Z_{6t+1} tables; the copy-4 point is b_r + offset.

    The first entry is the sequence the tables call for.  ``alternatives``
    further sequences of the same kind follow, from seeded searches.
    """
    if t % 4 in (0, 3):
        kind, off = "skolem", 0
        first = special_skolem(3 * t)
    else:
        kind, off = "hooked", 1
        first = special_hooked(3 * t) if 3 * t >= 6 else generate("hooked", 3 * t)
    seen = [first.pairs]
    yield first.pairs, off
    for k in range(1, 4 * alternatives + 1):
        if len(seen) > alternatives:
            break
        try:
            seq = search(kind, 3 * t, seed=k, node_limit=20_000)
        except TimeoutError:
            continue
        if seq is not None and seq.pairs not in seen:
            seen.append(seq.pairs)
            yield seq.pairs, off


def _presentation_three_a(t: int, pairs: dict, off: int, required=None):
    n = 6 * t + 1
    z = _Z(n)
    i1, i2, i3 = "inf_1", "inf_2", "inf_3"
    B = {r: y + off for r, (_, y) in pairs.items()}
    base4, extra4 = _subsystem(n, 4, required)
    blocks = [(z(0, 1), z(r, 1), z(B[r], 4)) for r in range(1, 3 * t + 1)]
    blocks += [(i1, z(0, 1), z(0, 3)), (i2, z(0, 1), z(0, 2)), (i1, i2, i3)]
    blocks += [(z(0, 1), z(2 * r, 2), z(r, 3)) for r in range(1, 6 * t + 1)]
    blocks += [(i1, z(0, 2), z(0, 4)), (i3, z(0, 1), z(0, 4))]
    blocks += [(z(0, 2), z(r, 2), z(B[r], 4)) for r in range(1, 3 * t + 1)]
    blocks += [(i3, z(0, 2), z(0, 3)), (i2, z(0, 3), z(0, 4))]
    blocks += [(z(0, 3), z(r, 3), z(B[r], 4)) for r in range(1, 3 * t + 1)]
    cp = CyclicPresentation(n, (1, 2, 3, 4), (i1, i2, i3), tuple(blocks + list(base4)), extra4)
    return cp, B


def _table_5_6(a: int):
    t = (a - 5) // 6
    n = 6 * t + 3
    z = _Z(n)
    i1, i2, i3 = "inf_1", "inf_2", "inf_3"
    if t % 4 in (0, 1):
        pairs, off = generate("skolem", 3 * t + 1).pairs, 0
    else:
        pairs, off = generate("hooked", 3 * t + 1).pairs, 1
    B = {r: y + off for r, (_, y) in pairs.items()}
    base4, extra4 = _subsystem(n, 4)
    blocks = [(z(0, 1), z(r, 1), z(B[r], 4)) for r in range(1, 3 * t + 2)]
    blocks += [(i1, z(0, 1), z(0, 3)), (i2, z(0, 1), z(0, 2)), (i1, i2, i3)]
    blocks += [(z(0, 1), z(2 * r, 2), z(r, 3)) for r in range(1, 6 * t + 3)]
    blocks += [(i1, z(0, 2), z(0, 4)), (i3, z(0, 1), z(0, 4))]
    blocks += [(z(0, 2), z(r, 2), z(B[r], 4)) for r in range(1, 3 * t + 2)]
    blocks += [(i3, z(0, 2), z(0, 3)), (i2, z(0, 3), z(0, 4))]
    blocks += [(z(0, 3), z(r, 3), z(B[r], 4)) for r in range(1, 3 * t + 2)]
    cp = CyclicPresentation(n, (1, 2, 3, 4), (i1, i2, i3), tuple(blocks + list(base4)), extra4)
    return [cp], [z(i, 1) for i in range(n)] + [i1], i2


# ------------------------------------------------------------ Pasch moves


def _ppu_paschs(ts: TripleSystem, P, s: str):
    """Paschs whose switch puts ``s`` on a block with two points of ``P``.

    Yields configurations ``{s,v,z}, {s,y,w}, {x,v,w}, {x,y,z}`` with v, w in
    P and x, y, z outside P; switching adds ``{s, v, w}``.
    """
    P = set(P)
    third = ts.third
    for blk in ts.sorted_blocks():
        inside = sort_labels(blk & P)
        if len(inside) != 2 or s in blk:
            continue
        (x,) = blk - P
        v, w = inside
        z = third.get(frozenset((s, v)))
        y = third.get(frozenset((s, w)))
        if z is None or y is None or z in P or y in P or len({x, y, z, s}) < 4:
            continue
        if third.get(frozenset((y, z))) == x:
            yield PaschConfiguration(s, v, z, y, w, x)


def _apply_swap(ts: TripleSystem, remove, add, notes: list, what: str):
    """Exchange four blocks for four covering the same pairs, or return None."""
    remove = [make_block(b) for b in remove]
    add = [make_block(b) for b in add]
    if not same_pair_cover(remove, add):
        raise ConstructionDefect(f"{what}: exchanged blocks cover different pairs")
    absent = [sort_labels(b) for b in remove if b not in ts.blocks]
    if absent:
        notes.append(f"predefined {what} not applicable: missing block(s) {absent}")
        return None
    return ts.replace_blocks(remove, add)


def pasch_transfer(cert: EmbeddingCertificate, protect=()) -> EmbeddingCertificate:
    """Move one available point to U by switching a Pasch.

    Looks for blocks ``{u,v,z}, {u,y,w}, {x,v,w}, {x,y,z}`` with v, w in P,
    u in A (not in ``protect``) and x, y, z in U.  After the switch u lies on
    the block ``{u,v,w}``; the candidate is kept if the induced certificate
    verifies and its graph is the old graph minus u.  Raises
    :class:`NotFound` when no candidate works.
    """
    if not verify_embedding(cert):
        raise DesignError("pasch_transfer needs a verified certificate")
    part = cert.partition
    for u in sort_labels(part.A - set(map(str, protect))):
        for pc in _ppu_paschs(cert.ts, part.P, u):
            if not {pc.x, pc.y, pc.z} <= part.U:
                continue
            ts2 = pasch_switch(cert.ts, pc)
            new = induced_certificate(ts2, part.P)
            if not isinstance(new, EmbeddingCertificate):
                continue
            want = {e for e in cert.graph.edges if u not in e}
            if new.partition.A == part.A - {u} and set(new.graph.edges) == want and verify_embedding(new):
                return new
    raise NotFound("no Pasch moves an available point into U")


# ------------------------------------------------------------ star dispatch


def _three_a_case(a: int, notes: list):
    """a = 6t + 1, 6t + 2, 6t + 3 over Z_{6t+1} with three fixed points."""
    t = (a - 1) // 6
    n = 6 * t + 1
    z = _Z(n)
    P = [z(i, 1) for i in range(n)] + ["inf_1"]
    centre = "inf_2"
    if a % 6 == 3:
        pairs, off = next(_three_a_sequences(t))
        cp, _ = _presentation_three_a(t, pairs, off)
        return _star_certificate(expand_orbits(cp), P, centre, a - 1), cp
    for k, (pairs, off) in enumerate(_three_a_sequences(t, alternatives=30)):
        cp, B = _presentation_three_a(t, pairs, off)
        if k == 1:
            notes.append("table sequence exhausted; trying other sequences of the same kind")
        ts = expand_orbits(cp)
        log = notes if k == 0 else []
        # a = 2 (mod 6): inf_3 must join a PPU block
        b1 = B[1]
        swapped = _apply_swap(
            ts,
            [(z(0, 1), z(1, 1), z(b1, 4)), (z(0, 3), z(1, 3), z(b1, 4)),
             (z(0, 1), z(0, 3), "inf_3"), (z(1, 1), z(1, 3), "inf_3")],
            [(z(0, 1), z(1, 1), "inf_3"), (z(0, 3), z(1, 3), "inf_3"),
             (z(0, 1), z(0, 3), z(b1, 4)), (z(1, 1), z(1, 3), z(b1, 4))],
            log, "inf_3 repair",
        )
        cert2 = None if swapped is None else _star_certificate(swapped, P, centre, 6 * t + 1)
        if cert2 is None:
            cert2, cp = _inf3_repair(t, cp, pairs, off, B, P, centre, log)
        if cert2 is None:
            continue
        if a % 6 == 2:
            if k:
                notes.append(f"used sequence {_pairs_text(pairs)}")
            return cert2, cp
        cert1 = _leaf_transfer(cert2, B, off, z, P, centre, a, log)
        if cert1 is not None:
            if k:
                notes.append(f"used sequence {_pairs_text(pairs)}")
            return cert1, cp
    notes.append("no sequence tried admits the repairs")
    return None, None


def _pairs_text(pairs: dict) -> str:
    return " ".join(f"{r}:{x},{y}" for r, (x, y) in sorted(pairs.items()))


def _leaf_transfer(cert2, B, off, z, P, centre, a, notes):
    """a = 1 (mod 6): move the leaf 0_2 into U by the predefined swap, else by any Pasch."""
    d = 2 if off == 0 else 4
    h = d // 2
    if B.get(h) == d:
        swapped = _apply_swap(
            cert2.ts,
            [("inf_1", z(0, 2), z(0, 4)), (z(-d, 1), z(0, 2), z(-h, 3)),
             ("inf_1", z(-d, 1), z(-d, 3)), (z(-h, 3), z(-d, 3), z(0, 4))],
            [("inf_1", z(-d, 1), z(0, 2)), (z(-d, 1), z(-h, 3), z(-d, 3)),
             ("inf_1", z(-d, 3), z(0, 4)), (z(0, 2), z(-h, 3), z(0, 4))],
            notes, "leaf transfer",
        )
        if swapped is not None:
            cert1 = _star_certificate(swapped, P, centre, a - 1)
            if cert1 is not None:
                return cert1
            notes.append("predefined leaf transfer leaves a point of U off every PPU block")
    try:
        cert1 = pasch_transfer(cert2, protect=(centre,))
    except NotFound:
        notes.append("no Pasch transfer found")
        return None
    notes.append("leaf moved to U by a Pasch switch found by search")
    return cert1


def _inf3_repair(t, cp, pairs, off, B, P, centre, notes):
    """Put inf_3 on a PPU block with a Pasch switch, re-choosing copy 4 if needed."""
    n = 6 * t + 1
    for r in [None] + list(range(1, 3 * t + 1)):
        if r is None:
            cur = cp
        else:
            triple = {min(x % n, n - x % n) for x in (r, B[r] - r, B[r])}
            if len(triple) != 3 or 0 in triple:
                continue
            try:
                cur, _ = _presentation_three_a(t, pairs, off, required=tuple(triple))
            except NotFound:
                continue
        ts = expand_orbits(cur)
        for pc in _ppu_paschs(ts, P, "inf_3"):
            cert = _star_certificate(pasch_switch(ts, pc), P, centre, 6 * t + 1)
            if cert is not None:
                how = "the default" if r is None else f"a forced difference triple {{{r}, {B[r] - r}, {B[r]}}} in the"
                notes.append(f"inf_3 moved to a PPU block by a Pasch switch using {how} copy-4 system")
                return cert, cur
    notes.append("no Pasch places inf_3 on a PPU block")
    return None, cp


def _search_fallback(a: int, v: int, seed: int, notes: list):
    from .search import embed_by_search

    notes.append(f"falling back to randomized search at v={v}")
    return embed_by_search(graph_family("star", a), v, seed=seed)


def embed_star(a: int, seed: int = 0, allow_search: bool = True) -> StarEmbedding:
    """Embed K_{1,a-1}; a = 2 is K_2 and uses :func:`embed_complete`."""
    if a < 2:
        raise ValueError("embed_star needs a >= 2")
    notes: list = []
    if a == 2:
        cert = embed_complete(2)
        (centre,) = sort_labels(cert.partition.A)[:1]
        return StarEmbedding(a, cert, cert.ts.v, minimality_tag(a, cert.ts.v), "complete", centre)
    stored = {3: ("star_a3_sts13", "9"), 4: ("star_a4_sts19", "15"), 6: ("star_a6_sts19", "14")}
    if a in stored:
        name, centre = stored[a]
        cert = _data_certificate(name)
        return StarEmbedding(a, cert, cert.ts.v, minimality_tag(a, cert.ts.v), f"table:{name}", centre)
    cert, cp, centre = None, None, None
    r = a % 6
    try:
        if r in (0, 4):
            builder = _table_0_6 if r == 0 else _table_4_6
            cps, P, centre = builder(a)
            for cp in cps:
                try:
                    ts = expand_orbits(cp)
                except ConstructionDefect as exc:
                    notes.append(f"presentation rejected: {exc}")
                    continue
                cert = _star_certificate(ts, P, centre, a - 1)
                if cert is not None:
                    break
                notes.append("presentation expands but does not embed the star")
            method = "cyclic-4a-3"
        elif r == 5:
            cps, P, centre = _table_5_6(a)
            cp = cps[0]
            cert = _star_certificate(expand_orbits(cp), P, centre, a - 1)
            method = "cyclic-4a-5"
        else:
            centre = "inf_2"
            cert, cp = _three_a_case(a, notes)
            method = "cyclic-24t+7"
    except ConstructionDefect as exc:
        notes.append(f"construction failed: {exc}")
        cert = None
    target = construction_order(a)
    if cert is None:
        if not allow_search:
            raise ConstructionDefect(f"no direct construction for a={a}: {'; '.join(notes)}")
        cert = _search_fallback(a, target, seed, notes)
        g = cert.graph
        centre = max(g.vertices, key=lambda x: g.degrees()[x])
        return StarEmbedding(a, cert, cert.ts.v, minimality_tag(a, cert.ts.v), "search",
                             centre, None, True, notes)
    return StarEmbedding(a, cert, cert.ts.v, minimality_tag(a, cert.ts.v), method, centre, cp, False, notes)

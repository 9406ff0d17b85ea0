"""Randomized discovery of embeddings.

Two routes are offered.  Sampling builds random Steiner triple systems by
hill-climbing and harvests every graph their games reach.  Completion fixes a
set of seed triples that force a chosen graph (through edge colourings of
K_p, G and its complement) and hill-climbs the rest of the system around them.
"""

from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .bounds import (
    Blocked,
    GraphInvariants,
    UUUMustBeSTS,
    rows_at,
    structural_obstruction,
    sts_order,
)
from .constructions import NotFound
from .design import (
    DesignError,
    EmbeddingCertificate,
    LabeledGraph,
    PointPartition,
    TripleSystem,
    graph_family,
    make_block,
    sort_labels,
    validate_sts,
    verify_embedding,
)
from .game import GraphCatalog, HarvestLimits, harvest_graphs
from .graphs import _complement_colouring, chromatic_index, is_proper_colouring, proper_edge_colouring

BUDGET_DOUBLING_EVERY = 4
BUDGET_CEILING_FACTOR = 8


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_iters: int = 0  # 0 picks a budget from v
    restarts: int = 20
    v_min: int = 1
    v_max: int = 45
    priority: str = "large_p"
    assignments: int = 8
    jobs: int = 1

    def __post_init__(self):
        if self.priority not in ("large_p", "large_u"):
            raise ValueError("priority must be 'large_p' or 'large_u'")
        for name in ("restarts", "assignments", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_iters < 0 or self.seed < 0:
            raise ValueError("seed and max_iters must be non-negative")

    def budget(self, v: int) -> int:
        return self.max_iters or 50 * v * v + 5000


def derive_seed(*parts) -> int:
    """Stable integer seed from any tuple of printable parts."""
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Failure:
    reason: str
    iterations: int = 0

    def __bool__(self):
        return False


# ---------------------------------------------------------------- hill-climb


class _Bag:
    """List with O(1) add, remove and uniform choice."""

    __slots__ = ("items", "pos")

    def __init__(self):
        self.items = []
        self.pos = {}

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def __len__(self):
        return len(self.items)


def _climb(v: int, frozen: list, rng: random.Random, budget: int):
    """Stinson hill-climb on points 0..v-1 around fixed blocks.

    Returns (blocks, iterations) or (None, iterations) when the budget runs out.
    """
    third = [[-1] * v for _ in range(v)]
    locked = set()
    for b in frozen:
        x, y, z = b
        for s, t, r in ((x, y, z), (x, z, y), (y, z, x)):
            if third[s][t] >= 0:
                raise DesignError("frozen blocks share a pair")
            third[s][t] = third[t][s] = r
        locked.add(frozenset(b))
    live = [_Bag() for _ in range(v)]
    live_points = _Bag()
    for x in range(v):
        for y in range(v):
            if x != y and third[x][y] < 0:
                live[x].add(y)
        if live[x]:
            live_points.add(x)
    blocks = set()

    def cover(s, t, r):
        third[s][t] = third[t][s] = r
        live[s].discard(t)
        live[t].discard(s)
        for q in (s, t):
            if not live[q]:
                live_points.discard(q)

    def uncover(s, t):
        third[s][t] = third[t][s] = -1
        live[s].add(t)
        live[t].add(s)
        live_points.add(s)
        live_points.add(t)

    it = 0
    while live_points:
        if it >= budget:
            return None, it
        it += 1
        x = live_points.items[rng.randrange(len(live_points))]
        cand = live[x].items
        if len(cand) < 2:
            continue
        i, j = rng.sample(range(len(cand)), 2)
        y, z = cand[i], cand[j]
        w = third[y][z]
        if w >= 0:
            old = frozenset((y, z, w))
            if old in locked:
                continue
            blocks.discard(old)
            uncover(y, z)
            uncover(y, w)
            uncover(z, w)
        cover(x, y, z)
        cover(x, z, y)
        cover(y, z, x)
        blocks.add(frozenset((x, y, z)))
    return blocks, it


def hillclimb_sts(v: int, cfg: SearchConfig | None = None) -> TripleSystem:
    """A random STS(v) on labels 0..v-1, reproducible from ``cfg.seed``."""
    cfg = cfg or SearchConfig()
    if not (v >= 1 and sts_order(v)):
        raise ValueError(f"no STS of order {v}")
    budget = cfg.budget(v)
    for attempt in range(cfg.restarts):
        rng = random.Random(derive_seed("sts", cfg.seed, v, attempt))
        blocks, _ = _climb(v, [], rng, budget)
        if blocks is not None:
            ts = TripleSystem.from_blocks([sorted(b) for b in blocks], range(v))
            if not validate_sts(ts):
                raise DesignError("hill-climb produced an invalid system")
            return ts
        if (attempt + 1) % BUDGET_DOUBLING_EVERY == 0:
            budget = min(budget * 2, cfg.budget(v) * BUDGET_CEILING_FACTOR)
    raise BudgetExhausted(f"no STS({v}) within {cfg.restarts} restarts")


# ------------------------------------------------------------- colourings


def _round_robin(g: LabeledGraph):
    """Explicit colouring of a complete graph with n - 1 (n even) or n (n odd) classes."""
    vs = list(g.vertices)
    n = len(vs)
    if n % 2:
        return [{frozenset((vs[x], vs[(s - x) % n])) for x in range(n) if 2 * x % n != s}
                for s in range(n)]
    m = n - 1
    half = (m + 1) // 2
    return [{frozenset((vs[m], vs[s * half % m]))}
            | {frozenset((vs[x], vs[(s - x) % m])) for x in range(m) if 2 * x % m != s}
            for s in range(m)]


def _base_colouring(g: LabeledGraph, k: int):
    n = g.n
    if g.e == n * (n - 1) // 2:
        classes = _round_robin(g)
        if len(classes) <= k:
            return classes
    explicit = _complement_colouring(g)
    if explicit is not None and len(explicit) <= k and is_proper_colouring(g, explicit):
        return explicit
    delta = max(g.degrees().values())
    return proper_edge_colouring(g, min(k, delta + 1))


def _rebalance(classes: list) -> list:
    """Swap alternating paths between the largest and smallest classes until sizes differ by <= 1."""
    classes = [set(c) for c in classes]
    while True:
        big = max(range(len(classes)), key=lambda i: len(classes[i]))
        small = min(range(len(classes)), key=lambda i: len(classes[i]))
        if len(classes[big]) - len(classes[small]) <= 1:
            return classes
        nb: dict = {}
        for c in (big, small):
            for e in classes[c]:
                x, y = tuple(e)
                nb.setdefault(x, []).append((y, e, c))
                nb.setdefault(y, []).append((x, e, c))
        seen = set()
        for start in sorted(nb):
            if start in seen or len(nb[start]) != 1:
                continue
            comp, x, prev = [], start, None
            seen.add(start)
            while True:
                step = [t for t in nb[x] if t[1] is not prev]
                if not step:
                    break
                y, e, c = step[0]
                comp.append((e, c))
                prev, x = e, y
                seen.add(x)
            if sum(1 if c == big else -1 for _, c in comp) == 1:
                for e, c in comp:
                    classes[c].discard(e)
                for e, c in comp:
                    classes[small if c == big else big].add(e)
                break
        else:
            raise AssertionError("no alternating path found")


def equitable_edge_colouring(g: LabeledGraph, k: int) -> list:
    """``k`` matchings covering E(g) whose sizes differ by at most one."""
    if g.e == 0:
        return [set() for _ in range(k)]
    if k < chromatic_index(g):
        raise ValueError(f"{k} colours are fewer than the chromatic index {chromatic_index(g)}")
    base = _base_colouring(g, k)
    if base is None:
        raise ValueError(f"could not colour the edges with {k} colours")
    base = [set(c) for c in base if c]
    base += [set() for _ in range(k - len(base))]
    return _rebalance(base)


# ------------------------------------------------------------- seed triples


@dataclass
class SeedTriples:
    graph: LabeledGraph
    P: tuple
    U: tuple
    ppu: list = field(default_factory=list)
    paa: list = field(default_factory=list)
    aau: list = field(default_factory=list)

    @property
    def sizes(self) -> tuple:
        return len(self.P), self.graph.n, len(self.U)

    @property
    def v(self) -> int:
        return sum(self.sizes)

    @property
    def frozen(self) -> list:
        return self.ppu + self.paa + self.aau

    @property
    def partition(self) -> PointPartition:
        return PointPartition.build(self.P, self.graph.vertices, self.U)

    def problems(self) -> list[str]:
        out = []
        seen = set()
        for b in self.frozen:
            for x in b:
                for y in b:
                    if x < y:
                        if (x, y) in seen:
                            out.append(f"pair {x} {y} repeated")
                        seen.add((x, y))
        on_ppu = {x for b in self.ppu for x in b if x in set(self.U)}
        out += [f"{x} has no PPU block" for x in self.U if x not in on_ppu]
        P, U = set(self.P), set(self.U)
        paa_edges = {b - P for b in self.paa}
        if paa_edges != set(self.graph.edges):
            out.append("PAA blocks do not realize the edges")
        aau_pairs = {b - U for b in self.aau}
        if aau_pairs != set(self.graph.complement().edges):
            out.append("AAU blocks do not realize the non-edges")
        return out


def _fresh_labels(prefix: str, n: int, taken: set) -> list[str]:
    out, k = [], 0
    while len(out) < n:
        lab = f"{prefix}{k}"
        if lab not in taken:
            out.append(lab)
        k += 1
    return out


def build_seed_triples(g: LabeledGraph, p: int, u: int, cfg: SearchConfig | None = None,
                       rng: random.Random | None = None, check_admissible: bool = True) -> SeedTriples:
    """Frozen PPU, PAA and AAU blocks forcing ``g`` as the available graph."""
    cfg = cfg or SearchConfig()
    rng = rng or random.Random(cfg.seed)
    v = p + g.n + u
    if check_admissible and g.n and p not in {r.p for r in rows_at(GraphInvariants.of(g), v)}:
        raise ValueError(f"(p, a, u) = ({p}, {g.n}, {u}) is not admissible")
    taken = set(g.vertices)
    P = _fresh_labels("p", p, taken)
    U = _fresh_labels("u", u, taken)
    kp = graph_family("complete", p).relabel({str(i): P[i] for i in range(p)})
    if u < (chromatic_index(kp) if p > 1 else 0):
        raise ValueError(f"K_{p} needs more than {u} colours")
    if u > kp.e:
        raise ValueError(f"{u} U points cannot all lie on PPU blocks with p={p}")
    if g.e and p < chromatic_index(g):
        raise ValueError(f"p={p} is below the chromatic index of the graph")
    gc = g.complement()
    if gc.e and u < chromatic_index(gc):
        raise ValueError(f"u={u} is below the chromatic index of the complement")
    seed = SeedTriples(g, tuple(P), tuple(U))
    for classes, joined, target in (
        (equitable_edge_colouring(kp, u) if u else [], U, seed.ppu),
        (equitable_edge_colouring(g, p) if p else [], P, seed.paa),
        (equitable_edge_colouring(gc, u) if u else [], U, seed.aau),
    ):
        order = list(joined)
        rng.shuffle(order)
        for cls, pt in zip(classes, order):
            for e in sorted(cls, key=sorted):
                target.append(make_block((*e, pt)))
    bad = seed.problems()
    if bad:
        raise DesignError("; ".join(bad))
    return seed


def hillclimb_complete(seed: SeedTriples, v: int, cfg: SearchConfig | None = None,
                       rng: random.Random | None = None, budget: int | None = None):
    """Complete the frozen blocks to an STS(v); ``Failure`` when the budget runs out."""
    cfg = cfg or SearchConfig()
    if v != seed.v:
        raise ValueError(f"v={v} does not match p + a + u = {seed.v}")
    rng = rng or random.Random(cfg.seed)
    labels = sort_labels(list(seed.P) + list(seed.graph.vertices) + list(seed.U))
    index = {x: i for i, x in enumerate(labels)}
    frozen = [tuple(index[x] for x in b) for b in seed.frozen]
    blocks, it = _climb(v, frozen, rng, budget or cfg.budget(v))
    if blocks is None:
        return Failure("iteration budget exhausted", it)
    fixed = {frozenset(b) for b in frozen}
    ts = TripleSystem.from_blocks([[labels[i] for i in b] for b in blocks | fixed], labels)
    if not validate_sts(ts):
        raise DesignError("completion is not a Steiner triple system")
    return ts


def seed_certificate(seed: SeedTriples, ts: TripleSystem) -> EmbeddingCertificate:
    return EmbeddingCertificate(ts, seed.partition, seed.graph)


# ------------------------------------------------------------------ driver


@dataclass(frozen=True)
class AttemptRecord:
    v: int
    p: int
    u: int
    attempt: int
    result: str
    millis: int
    flag: str = ""

    def to_line(self) -> str:
        return f"{self.v} {self.p} {self.u} {self.attempt} {self.result} {self.millis}"


@dataclass
class SearchResult:
    certificate: EmbeddingCertificate
    log: list

    def log_text(self) -> str:
        return "".join(r.to_line() + "\n" for r in self.log)


class SearchNotFound(NotFound):
    """Nothing found up to the requested order; inconclusive, not a proof of absence."""

    def __init__(self, message: str, log: list):
        super().__init__(message)
        self.log = log


def _attempt(job):
    """One seeded completion attempt; returns (certificate text or None, result, millis)."""
    g, row, cfg, attempt, budget = job
    start = time.perf_counter()
    base = random.Random(derive_seed("assign", cfg.seed, row.v, row.p, attempt % cfg.assignments))
    try:
        seed = build_seed_triples(g, row.p, row.u, cfg, base, check_admissible=False)
    except ValueError as exc:
        return None, "infeasible", int((time.perf_counter() - start) * 1000), str(exc)
    rng = random.Random(derive_seed("climb", cfg.seed, row.v, row.p, attempt))
    ts = hillclimb_complete(seed, row.v, cfg, rng, budget)
    millis = int((time.perf_counter() - start) * 1000)
    if not ts:
        return None, "fail", millis, ""
    cert = seed_certificate(seed, ts)
    if not verify_embedding(cert):
        return None, "unverified", millis, ""
    return cert, "ok", millis, ""


def _rows(g: LabeledGraph, cfg: SearchConfig):
    inv = GraphInvariants.of(g)
    for v in range(max(cfg.v_min, g.n, 1), cfg.v_max + 1):
        rows = rows_at(inv, v)
        if cfg.priority == "large_u":
            rows = rows[::-1]
        yield from rows


def search_min_embedding(g: LabeledGraph, v_max: int | None = None, cfg: SearchConfig | None = None,
                         progress=None) -> SearchResult:
    """First certificate over admissible rows in ascending v.

    Rows whose UUU blocks would have to form an impossible system are logged
    as ``blocked`` and skipped.  ``progress`` receives each record as it is
    produced.  Raises :class:`SearchNotFound` with the log if nothing works.
    """
    cfg = cfg or SearchConfig()
    if v_max is not None:
        cfg = replace(cfg, v_max=v_max)
    log: list = []

    def note(rec):
        log.append(rec)
        if progress:
            progress(rec)

    pool = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 else None
    try:
        for row in _rows(g, cfg):
            obstruction = structural_obstruction(row)
            if isinstance(obstruction, Blocked):
                note(AttemptRecord(row.v, row.p, row.u, 0, "blocked", 0, f"blocked:{obstruction.u}"))
                continue
            flag = f"uuu-sts:{obstruction.u}" if isinstance(obstruction, UUUMustBeSTS) else ""
            budget = cfg.budget(row.v)
            attempt = 0
            stop_row = False
            while attempt < cfg.restarts and not stop_row:
                batch = []
                for _ in range(min(cfg.jobs, cfg.restarts - attempt)):
                    batch.append((g, row, cfg, attempt, budget))
                    attempt += 1
                    if attempt % BUDGET_DOUBLING_EVERY == 0:
                        budget = min(budget * 2, cfg.budget(row.v) * BUDGET_CEILING_FACTOR)
                results = list(pool.map(_attempt, batch)) if pool else map(_attempt, batch)
                for job, (cert, result, millis, _why) in zip(batch, results):
                    note(AttemptRecord(row.v, row.p, row.u, job[3], result, millis, flag))
                    if cert is not None:
                        return SearchResult(cert, log)
                    if result == "infeasible":
                        stop_row = True
                        break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    raise SearchNotFound(f"no embedding found with v <= {cfg.v_max} (inconclusive)", log)


def embed_by_search(g: LabeledGraph, v: int, seed: int = 0, cfg: SearchConfig | None = None) -> EmbeddingCertificate:
    """A verified certificate for ``g`` in an STS(v) found by seeded completion."""
    cfg = replace(cfg or SearchConfig(), seed=seed, v_min=v, v_max=v)
    return search_min_embedding(g, cfg=cfg).certificate


# ----------------------------------------------------------------- sampling


def _harvest_sample(job):
    v, cfg, i, limits = job
    ts = hillclimb_sts(v, replace(cfg, seed=derive_seed("sample", cfg.seed, i)))
    return harvest_graphs(ts, limits)


def sample_and_harvest(v: int, n_samples: int, cfg: SearchConfig | None = None,
                       limits: HarvestLimits | None = None) -> GraphCatalog:
    """Merge the graph catalogs of ``n_samples`` independently sampled STS(v)."""
    cfg = cfg or SearchConfig()
    if not sts_order(v):
        raise ValueError(f"no STS of order {v}")
    limits = limits or HarvestLimits()
    jobs = [(v, cfg, i, limits) for i in range(n_samples)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            cats = list(pool.map(_harvest_sample, jobs))
    else:
        cats = [_harvest_sample(j) for j in jobs]
    merged = GraphCatalog()
    for cat in cats:
        merged = merged.merge(cat)
    return merged


__all__ = [
    "AttemptRecord",
    "BudgetExhausted",
    "Failure",
    "SearchConfig",
    "SearchNotFound",
    "SearchResult",
    "SeedTriples",
    "build_seed_triples",
    "derive_seed",
    "embed_by_search",
    "equitable_edge_colouring",
    "hillclimb_complete",
    "hillclimb_sts",
    "sample_and_harvest",
    "search_min_embedding",
    "seed_certificate",
]

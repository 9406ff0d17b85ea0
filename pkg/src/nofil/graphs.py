"""Canonical forms and edge colourings for small labelled graphs."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .design import LabeledGraph, sort_labels

MAX_CANONICAL_VERTICES = 12


class UnsupportedSize(ValueError):
    pass


def _adjacency(g: LabeledGraph):
    order = sort_labels(g.vertices)
    index = {x: i for i, x in enumerate(order)}
    adj = [0] * len(order)
    for e in g.edges:
        x, y = (index[t] for t in e)
        adj[x] |= 1 << y
        adj[y] |= 1 << x
    return order, adj


def _refine(adj: list[int]) -> list[int]:
    """Colour refinement started from degrees; colours are isomorphism-invariant."""
    n = len(adj)
    colour = [bin(a).count("1") for a in adj]
    while True:
        sigs = [
            (colour[i], tuple(sorted(colour[j] for j in range(n) if adj[i] >> j & 1)))
            for i in range(n)
        ]
        names = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [names[s] for s in sigs]
        if len(names) == len(set(colour)):
            return new
        colour = new


def canonical_form(g: LabeledGraph, max_vertices: int = MAX_CANONICAL_VERTICES) -> bytes:
    """Isomorphism-invariant byte string for a graph with at most ``max_vertices``.

    The string encodes the lexicographically least lower-triangle adjacency
    sequence over all vertex orders that list refined colour classes in
    ascending order.  Twins (vertices with equal neighbourhoods apart from each
    other) are interchangeable, so only one of them is tried at each position.
    """
    n = g.n
    if n > max_vertices:
        raise UnsupportedSize(f"canonical_form supports at most {max_vertices} vertices, got {n}")
    _, adj = _adjacency(g)
    colour = _refine(adj)
    slots = sorted(colour)
    twin_rep = list(range(n))
    for i, j in itertools.combinations(range(n), 2):
        if colour[i] == colour[j] and adj[i] & ~(1 << j) == adj[j] & ~(1 << i):
            twin_rep[j] = min(twin_rep[j], twin_rep[i])

    frontier = [((), 0)]
    bits = []
    for k in range(n):
        want = slots[k]
        best = None
        nxt = []
        for perm, placed in frontier:
            taken = set()
            for x in range(n):
                if placed >> x & 1 or colour[x] != want:
                    continue
                # an unplaced twin with a smaller index covers this branch
                if twin_rep[x] in taken:
                    continue
                taken.add(twin_rep[x])
                val = 0
                for y in perm:
                    val = (val << 1) | (adj[x] >> y & 1)
                if best is None or val < best:
                    best = val
                    nxt = [(perm + (x,), placed | 1 << x)]
                elif val == best:
                    nxt.append((perm + (x,), placed | 1 << x))
        frontier = nxt
        bits.append(format(best, f"0{k}b") if k else "")
    body = "".join(bits)
    return f"{n}:{int(body, 2) if body else 0:x}".encode()


def brute_force_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    if g.n != h.n or g.e != h.e:
        return False
    gv, hv = list(g.vertices), list(h.vertices)
    for perm in itertools.permutations(hv):
        m = dict(zip(gv, perm))
        if all(frozenset(m[x] for x in e) in h.edges for e in g.edges):
            return True
    return False


# ---------------------------------------------------------- edge colouring


def _is_bipartite(nb: dict) -> bool:
    side = {}
    for s in nb:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def _family_index(g: LabeledGraph):
    """Closed-form chromatic index for complete graphs, stars, paths, cycles and bipartite graphs."""
    nb = g.neighbours()
    active = [x for x in g.vertices if nb[x]]
    m, e = len(active), g.e
    if e == 0:
        return 0
    degs = sorted(len(nb[x]) for x in active)
    if e == m * (m - 1) // 2:
        return m - 1 if m % 2 == 0 else m
    if degs[-1] == m - 1 and degs[:-1] == [1] * (m - 1):
        return m - 1
    connected = _connected(nb, active)
    if connected and degs == [2] * m:
        return 2 if m % 2 == 0 else 3
    if connected and degs[-1] <= 2:
        return degs[-1]  # a path
    if _is_bipartite(nb):
        return degs[-1]
    return None


def _connected(nb, active) -> bool:
    if not active:
        return True
    seen = {active[0]}
    stack = [active[0]]
    while stack:
        for y in nb[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(active)


def proper_edge_colouring(g: LabeledGraph, k: int, node_limit: int | None = None):
    """Proper edge colouring with ``k`` colours as a list of ``k`` edge sets, or ``None``.

    Backtracking picks the edge with the fewest free colours (ties broken by
    larger degree sum) and tries colours in ascending order, never opening more
    than one fresh colour at a time.  Raises ``TimeoutError`` if ``node_limit``
    nodes are expanded without an answer.
    """
    edges = [tuple(sort_labels(e)) for e in g.edges]
    if not edges:
        return [set() for _ in range(k)]
    if k <= 0:
        return None
    deg = g.degrees()
    if max(deg.values()) > k:
        return None
    edges.sort(key=lambda e: -(deg[e[0]] + deg[e[1]]))
    full = (1 << k) - 1
    used = {x: 0 for x in g.vertices}
    colour = [-1] * len(edges)
    nodes = 0

    def rec(done: int, top: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise TimeoutError
        if done == len(edges):
            return True
        best, best_free, best_count = -1, 0, k + 1
        for i, (x, y) in enumerate(edges):
            if colour[i] >= 0:
                continue
            free = full & ~(used[x] | used[y])
            c = bin(free).count("1")
            if c < best_count:
                best, best_free, best_count = i, free, c
                if c <= 1:
                    break
        if best_count == 0:
            return False
        x, y = edges[best]
        for c in range(min(k, top + 1)):
            if not best_free >> c & 1:
                continue
            colour[best] = c
            used[x] |= 1 << c
            used[y] |= 1 << c
            if rec(done + 1, max(top, c + 1)):
                return True
            used[x] &= ~(1 << c)
            used[y] &= ~(1 << c)
            colour[best] = -1
        return False

    if not rec(0, 0):
        return None
    classes = [set() for _ in range(k)]
    for e, c in zip(edges, colour):
        classes[c].add(frozenset(e))
    return classes


def _spanning_order(g: LabeledGraph):
    """Vertex order along ``g`` if it is a Hamiltonian path or cycle, with a flag for the cycle."""
    nb = g.neighbours()
    n = g.n
    degs = [len(nb[x]) for x in g.vertices]
    if n < 3 or max(degs) > 2 or not _connected(nb, list(g.vertices)):
        return None
    is_cycle = g.e == n
    if not is_cycle and g.e != n - 1:
        return None
    start = min((x for x in g.vertices if len(nb[x]) == 1), default=g.vertices[0])
    order, prev = [start], None
    while len(order) < n:
        nxt = [y for y in sort_labels(nb[order[-1]]) if y != prev and y not in order[-2:]]
        prev = order[-1]
        order.append(nxt[0])
    return order, is_cycle


def _odd_path_complement(order):
    """Colour the complement of the path ``order`` (odd length n) with n - 2 colours.

    On Z_n the near-1-factors S_s = {{x, y}: x + y = s} with s = 0 and s = 1
    form the path 0, 1, -1, 2, -2, ...; the other n - 2 factors colour the rest.
    """
    n = len(order)
    walk = [0]
    for k in range(1, n):
        walk.append((k + 1) // 2 if k % 2 else (-(k // 2)) % n)
    at = dict(zip(walk, order))
    return [
        {frozenset((at[x], at[(s - x) % n])) for x in range(n) if 2 * x % n != s}
        for s in range(2, n)
    ]


def _complement_colouring(g: LabeledGraph):
    """Explicit Delta-colouring when the complement of ``g`` is a Hamiltonian path or cycle."""
    found = _spanning_order(g.complement())
    if found is None:
        return None
    order, is_cycle = found
    n = len(order)
    if is_cycle:
        if n % 2:
            return None  # overfull, handled elsewhere
        # on {inf} + Z_m the factors T_s = {inf, s/2} + {{x, y}: x + y = s}
        # with s = 0 and s = 2 form the cycle inf, 0, 2, -2, 4, ..., 1
        m = n - 1
        half = (m + 1) // 2
        walk, x = [m, 0], 0
        for k in range(1, m):
            x = (2 - x) % m if k % 2 else (-x) % m
            walk.append(x)
        at = dict(zip(walk, order))
        return [
            {frozenset((at[m], at[t * half % m]))}
            | {frozenset((at[y], at[(t - y) % m])) for y in range(m) if 2 * y % m != t}
            for t in range(m)
            if t not in (0, 2 % m)
        ]
    if n % 2:
        return _odd_path_complement(order)
    # drop the last path vertex, colour the odd complement, then reattach
    classes = _odd_path_complement(order[:-1])
    last, first = order[-1], order[0]
    inner = set(order[1:-2])
    for cls in classes:
        missing = inner - {x for e in cls for x in e}
        (x,) = missing
        cls.add(frozenset((x, last)))
    classes.append({frozenset((first, last))})
    return classes


def is_proper_colouring(g: LabeledGraph, classes) -> bool:
    seen = set()
    for cls in classes:
        pts = [x for e in cls for x in e]
        if len(pts) != len(set(pts)):
            return False
        seen |= set(cls)
    return seen == set(g.edges) and sum(len(c) for c in classes) == g.e


@lru_cache(maxsize=1024)
def _chromatic_index_cached(vertices, edges) -> int:
    g = LabeledGraph(vertices, edges)
    known = _family_index(g)
    if known is not None:
        return known
    explicit = _complement_colouring(g)
    if explicit is not None and is_proper_colouring(g, explicit):
        return len(explicit)
    delta = max(g.degrees().values())
    # overfull graphs need delta + 1 colours
    if g.e > delta * (g.n // 2):
        return delta + 1
    return delta if proper_edge_colouring(g, delta) is not None else delta + 1


def chromatic_index(g: LabeledGraph) -> int:
    """Exact edge-chromatic number; 0 for an edgeless graph."""
    if g.n == 0:
        raise ValueError("chromatic_index needs at least one vertex")
    return _chromatic_index_cached(g.vertices, g.edges)

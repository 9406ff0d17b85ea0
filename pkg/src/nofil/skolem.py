"""Skolem-type pair sequences: plain, hooked, split, Langford and hooked Langford."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .design import ValidationReport

KINDS = ("skolem", "hooked", "split", "langford", "hooked_langford")


class NotExists(ValueError):
    pass


@dataclass(frozen=True)
class PairSequence:
    kind: str
    t: int
    d: int
    pairs: dict  # difference r -> (a_r, b_r)

    def __getitem__(self, r):
        return self.pairs[r]

    def differences(self) -> range:
        return range(self.d, self.t + self.d)

    def shifted(self, s: int) -> dict:
        return {r: (x + s, y + s) for r, (x, y) in self.pairs.items()}

    def to_text(self) -> str:
        lines = [f"{self.kind} {self.t} {self.d}"]
        lines += [f"{r} {x} {y}" for r, (x, y) in sorted(self.pairs.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PairSequence:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        kind, t, d = rows[0][0], int(rows[0][1]), int(rows[0][2])
        pairs = {int(r): (int(x), int(y)) for r, x, y in rows[1:]}
        return cls(kind, t, d, pairs)


def _check_kind(kind: str, d: int):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if d < 1:
        raise ValueError("defect must be at least 1")
    if d != 1 and kind not in ("langford", "hooked_langford"):
        raise ValueError(f"{kind} sequences have defect 1")


def ground_set(kind: str, t: int) -> list[int]:
    if kind in ("skolem", "langford"):
        return list(range(1, 2 * t + 1))
    if kind in ("hooked", "hooked_langford"):
        return list(range(1, 2 * t)) + [2 * t + 1]
    if kind == "split":
        return list(range(1, t + 1)) + list(range(t + 2, 2 * t + 2))
    raise ValueError(f"unknown kind {kind!r}")


def validate(seq: PairSequence) -> ValidationReport:
    problems = []
    want = set(seq.differences())
    if set(seq.pairs) != want:
        problems.append(f"differences {sorted(seq.pairs)} != {sorted(want)}")
    ends = []
    for r, (x, y) in sorted(seq.pairs.items()):
        if y - x != r:
            problems.append(f"b_{r} - a_{r} = {y - x}, expected {r}")
        ends += [x, y]
    if sorted(ends) != ground_set(seq.kind, seq.t):
        problems.append("endpoints do not tile the ground set")
    return ValidationReport(not problems, problems)


def exists(kind: str, t: int, d: int = 1) -> bool:
    _check_kind(kind, d)
    if t < 1:
        return False
    m = t % 4
    if kind == "skolem":
        return m in (0, 1)
    if kind == "hooked":
        return m in (2, 3)
    if kind == "split":
        return m in (0, 3)
    if kind == "langford":
        return t >= 2 * d - 1 and m in ((0, 1) if d % 2 else (0, 3))
    return t * (t - 2 * d + 1) >= -2 and m in ((2, 3) if d % 2 else (1, 2))


def search(kind: str, t: int, d: int = 1, seed: int | None = None, node_limit: int | None = None):
    """Complete backtracking search; returns a PairSequence or None.

    The smallest free position must be the left end of some pair, so each
    node tries the unused differences there, largest first (shuffled when a
    seed is given).  A branch dies when the largest unused difference no
    longer fits, and dead (free positions, unused differences) states are
    remembered so transpositions are explored once.
    """
    _check_kind(kind, d)
    free = 0
    for x in ground_set(kind, t):
        free |= 1 << x
    unused = 0
    for r in range(d, t + d):
        unused |= 1 << r
    rng = random.Random(seed) if seed is not None else None
    diffs = list(range(t + d - 1, d - 1, -1))
    dead = set()
    pairs = {}
    nodes = 0

    def rec(free: int, unused: int) -> bool:
        nonlocal nodes
        if not free:
            return True
        if (free, unused) in dead:
            return False
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise TimeoutError
        if free & (free >> (unused.bit_length() - 1)):
            x = (free & -free).bit_length() - 1
            order = diffs
            if rng is not None:
                order = diffs[:]
                rng.shuffle(order)
            for r in order:
                if unused >> r & 1 and free >> (x + r) & 1:
                    pairs[r] = (x, x + r)
                    if rec(free ^ (1 << x) ^ (1 << (x + r)), unused ^ (1 << r)):
                        return True
                    del pairs[r]
        if len(dead) < 5_000_000:
            dead.add((free, unused))
        return False

    if not rec(free, unused):
        return None
    return PairSequence(kind, t, d, dict(sorted(pairs.items())))


def generate(kind: str, t: int, d: int = 1, seed: int | None = None) -> PairSequence:
    """A sequence of the given kind, deterministic for a fixed seed.

    Short randomized searches are restarted with growing node budgets; after
    a few hundred failures the complete search settles the question.
    """
    if not exists(kind, t, d):
        raise NotExists(f"no {kind} sequence of order {t} and defect {d}")
    rng = random.Random(0 if seed is None else seed)
    budget = 5000
    for attempt in range(400):
        if attempt and attempt % 50 == 0:
            budget *= 2
        try:
            found = search(kind, t, d, seed=rng.getrandbits(32), node_limit=budget)
        except TimeoutError:
            continue
        if found is not None:
            return found
        break
    found = search(kind, t, d)
    if found is None:
        raise RuntimeError(f"complete search found no {kind} sequence of order {t}")
    return found


def special_skolem(t: int) -> PairSequence:
    """Skolem sequence of order t whose difference-1 pair is (1, 2)."""
    if t < 1 or t % 4 not in (0, 1):
        raise NotExists(f"no Skolem sequence of order {t}")
    pairs = {1: (1, 2)}
    if t > 1:
        pairs.update(generate("langford", t - 1, 2).shifted(2))
    return PairSequence("skolem", t, 1, dict(sorted(pairs.items())))


_HOOKED_SMALL = {
    6: [(9, 10), (1, 3), (4, 7), (2, 6), (8, 13), (5, 11)],
    7: [(5, 6), (1, 3), (10, 13), (8, 12), (2, 7), (9, 15), (4, 11)],
    10: [(4, 5), (1, 3), (9, 12), (11, 15), (2, 7), (13, 19), (14, 21), (10, 18), (8, 17), (6, 16)],
    11: [(4, 5), (1, 3), (6, 9), (17, 21), (14, 19), (10, 16), (8, 15), (12, 20), (2, 11), (13, 23), (7, 18)],
}


def special_hooked(t: int) -> PairSequence:
    """Hooked Skolem sequence of order t whose difference-2 pair is (1, 3)."""
    if t < 6 or t % 4 not in (2, 3):
        raise NotExists(f"no special hooked sequence of order {t}")
    if t in _HOOKED_SMALL:
        pairs = {r: xy for r, xy in enumerate(_HOOKED_SMALL[t], start=1)}
    else:
        pairs = {1: (6, 7), 2: (1, 3), 3: (2, 5), 4: (4, 8)}
        pairs.update(generate("hooked_langford", t - 4, 5).shifted(8))
    return PairSequence("hooked", t, 1, dict(sorted(pairs.items())))

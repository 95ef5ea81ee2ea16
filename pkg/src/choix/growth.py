"""Greedy and exact maximum values reachable from 1 in a given number of steps."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import DigitString, is_neighbor, neighbors
from .extremal import max_neighbor
from .search import DistanceTable

BLOCK = "8112"

# surviving candidates per generation, minus the leading copies of BLOCK
FRONTIER_PATTERN = {
    10: ("81646", "81652", "81662", "81664", "84112", "88112", "88212", "88222", "88224"),
    11: ("816442", "816444", "816448"),
    12: ("8164416",),
    13: ("81128826", "81128832", "81644112"),
}


def images(n: int) -> set[int]:
    """One-step images of ``n`` (identity included) using Python big ints."""
    s = str(n)
    k = len(s)
    out = {n}
    for p in range(k):
        if s[p] == "0":
            continue
        head = s[:p]
        for q in range(p + 1, k + 1):
            v = int(s[p:q])
            tail = s[q:]
            out.add(int(head + str(2 * v) + tail))
            if v % 2 == 0:
                out.add(int(head + str(v // 2) + tail))
    return out


@dataclass
class GrowthTable:
    """Per-generation greedy value ``r``, exact maximum ``R`` and pruned frontier.

    ``frontiers[k]`` maps each generation-k survivor to its parent among the
    generation-(k-1) survivors (``None`` for the root).
    """

    r: list[int]
    R: list[int] = field(default_factory=list)
    frontiers: list[dict[int, Optional[int]]] = field(default_factory=list)
    threshold: list[set[int]] = field(default_factory=list, repr=False)

    @property
    def n_max(self) -> int:
        return len(self.r) - 1

    def r_digits(self, n: int) -> DigitString:
        return DigitString.from_int(self.r[n])

    def rows(self) -> Iterable[tuple[int, int, Optional[int], Optional[int]]]:
        for g, rv in enumerate(self.r):
            big = self.R[g] if g < len(self.R) else None
            size = len(self.frontiers[g]) if g < len(self.frontiers) else None
            yield g, rv, big, size

    def parent_chain(self, gen: int, x: int) -> list[int]:
        """Survivor ``x`` of generation ``gen`` and its ancestors back to 1."""
        chain = [x]
        for g in range(gen, 0, -1):
            chain.append(self.frontiers[g][chain[-1]])
        return chain[::-1]


def greedy_max_sequence(n_max: int) -> GrowthTable:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    r = [DigitString.from_int(1)]
    for _ in range(n_max):
        r.append(max_neighbor(r[-1]).value)
    return GrowthTable([int(v) for v in r])


@dataclass(frozen=True)
class RecurrenceVerdict:
    n: int
    ok: bool


def check_greedy_recurrence(table: GrowthTable, n_max: int) -> list[RecurrenceVerdict]:
    """Whether ``r(n+4)`` reads as BLOCK followed by the digits of ``r(n)``."""
    if n_max > table.n_max:
        raise ValueError(f"table stops at generation {table.n_max}")
    return [
        RecurrenceVerdict(n, str(table.r[n + 4]) == BLOCK + str(table.r[n]))
        for n in range(10, n_max - 3)
    ]


def _keeps(x: int, k: int, r: list[int]) -> bool:
    # descendants j steps on stay below 10**j * x; r[k + j] is achievable
    scale = 10
    for j in range(1, len(r) - k):
        if scale * x > r[k + j]:
            return True
        scale *= 10
    return False


def _expand(chunk: list[int]) -> list[tuple[int, int]]:
    return [(y, x) for x in chunk for y in images(x)]


def exact_max_reach(n_max: int, workers: int = 1) -> GrowthTable:
    """Exact maxima ``R(0..n_max)`` by generation-wise expansion with pruning.

    A survivor ``x`` at generation k is kept only if ``10**j * x`` exceeds
    ``r(k + j)`` for some lookahead ``j``; anything else can never produce a
    maximum. Results do not depend on ``workers``.
    """
    table = greedy_max_sequence(n_max)
    r = table.r
    frontier: dict[int, Optional[int]] = {1: None}
    table.R.append(1)
    table.frontiers.append({x: p for x, p in frontier.items() if _keeps(x, 0, r)})
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for k in range(1, n_max + 1):
            prev = sorted(table.frontiers[-1])
            if pool is None:
                pairs = _expand(prev)
            else:
                step = max(1, -(-len(prev) // workers))
                chunks = [prev[i:i + step] for i in range(0, len(prev), step)]
                pairs = [pr for part in pool.map(_expand, chunks) for pr in part]
            cand: dict[int, int] = {}
            for y, x in pairs:
                if y not in cand or x < cand[y]:
                    cand[y] = x
            table.R.append(max(cand))
            table.frontiers.append({y: cand[y] for y in sorted(cand) if _keeps(y, k, r)})
    finally:
        if pool is not None:
            pool.shutdown()
    return table


def chain_violations(table: GrowthTable) -> list[tuple[int, int]]:
    """Survivors whose parent chain is not a valid walk from 1."""
    bad = []
    for gen, level in enumerate(table.frontiers):
        for x in level:
            chain = table.parent_chain(gen, x)
            if chain[0] != 1 or not all(is_neighbor(a, b) for a, b in zip(chain, chain[1:])):
                bad.append((gen, x))
    return bad


def unpruned_maxima(n_gen: int) -> list[int]:
    """Maximum over every number reachable in exactly ``g`` steps, g = 0..n_gen.

    Exhaustive; only practical for small ``n_gen``.
    """
    level = {DigitString.from_int(1)}
    out = [1]
    for _ in range(n_gen):
        nxt = set()
        for x in level:
            nxt.update(neighbors(x))
        level = nxt
        out.append(int(max(level)))
    return out


def threshold_frontiers(table: GrowthTable) -> list[set[int]]:
    """Generation sets under the one-step cutoff applied at every generation.

    Generation g keeps only images of the surviving generation g-1 that are
    not below ``r(g + 1) / 10``. Unlike :func:`exact_max_reach` this is not a
    sound pruning rule; it is the procedure whose survivors show the period-4
    pattern. Covers generations ``0 .. n_max - 1``.
    """
    if table.threshold:
        return table.threshold
    r = table.r
    level = {1}
    out = [level]
    for g in range(1, table.n_max):
        cand = set().union(*(images(x) for x in level))
        level = {x for x in cand if 10 * x >= r[g + 1]}
        out.append(level)
    table.threshold = out
    return out


@dataclass(frozen=True)
class PatternVerdict:
    i: int
    generation: int
    expected: frozenset[int]
    found: frozenset[int]

    @property
    def ok(self) -> bool:
        return self.expected == self.found


def frontier_pattern_check(table: GrowthTable, i: int) -> list[PatternVerdict]:
    """Compare :func:`threshold_frontiers` at generations 10+4i .. 13+4i
    with the period-4 candidate lists."""
    if i < 1:
        raise ValueError("i counts copies of the repeated block and starts at 1")
    out = []
    for base_gen, tails in FRONTIER_PATTERN.items():
        gen = base_gen + 4 * i
        expected = frozenset(int(BLOCK * i + t) for t in tails)
        if gen >= table.n_max:
            raise ValueError(f"needs generation {gen + 1}, table stops at {table.n_max}")
        out.append(PatternVerdict(i, gen, expected, frozenset(threshold_frontiers(table)[gen])))
    return out


def _exact_bounds(n: int, value: int) -> tuple[bool, bool]:
    scale = 10 ** (n - 9)
    return 8112 * scale < value, value <= 8113 * scale


@dataclass(frozen=True)
class BoundVerdict:
    generation: int
    value: int
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def verify_growth_bounds(table: GrowthTable, n_range: Optional[range] = None) -> list[BoundVerdict]:
    """``8112 * 10**(n-9) < R(n) <= 8113 * 10**(n-9)`` as integer comparisons."""
    if n_range is None:
        n_range = range(14, len(table.R))
    out = []
    for n in n_range:
        if n < 14:
            raise ValueError("bounds are claimed from generation 14 on")
        if n >= len(table.R):
            raise ValueError(f"table has no R({n})")
        lo, hi = _exact_bounds(n, table.R[n])
        out.append(BoundVerdict(n, table.R[n], lo, hi))
    return out


@dataclass(frozen=True)
class TauVerdict:
    """Bounds on the step count of one target.

    ``reach_ok`` is None when the step count is below 14 (vacuous).
    ``literal_*`` are the unrestricted logarithmic inequalities, reported only.
    """

    n: int
    tau: int
    reach_ok: Optional[bool]
    digit_ok: bool
    literal_lower_ok: bool
    literal_upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.digit_ok and self.reach_ok is not False


def tau_verdict(n: int, t: int) -> TauVerdict:
    reach = None if t < 14 else 1000 * n <= 8113 * 10 ** (t - 6)
    digits = len(str(n))
    return TauVerdict(
        n,
        t,
        reach,
        t <= 12 * (digits - 1) + 12,
        n * 10**5 < 10**t,  # log10 n + 5 < t
        10**t <= n**12,  # t <= 12 log10 n
    )


def verify_tau_bounds(dist: DistanceTable) -> list[TauVerdict]:
    if dist.source != 1:
        raise ValueError("needs a table built from source 1")
    return [tau_verdict(n, t) for n, t in dist.items() if n % 5 and t >= 0]

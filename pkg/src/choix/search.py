"""Component classes, capped BFS distance tables, shortest paths and records."""

from __future__ import annotations

import enum
import logging
import os
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from numba import njit

from . import _kernels
from .core import DigitString, Number, as_digits, neighbors

log = logging.getLogger(__name__)

CACHE_MAGIC = "# choix-cache v1"


class ConfigError(ValueError):
    pass


class OutOfRangeError(IndexError):
    pass


class NoPathError(LookupError):
    """The endpoints lie in different components."""


class CapExceededError(LookupError):
    """Same component, but not connected using numbers within the digit cap."""


class ComponentClass(enum.Enum):
    A = "A"  # last digit not 0 or 5
    B = "B"  # last digit 0 or 5


def component_class(n: Number) -> ComponentClass:
    last = as_digits(n).last_digit
    return ComponentClass.B if last in (0, 5) else ComponentClass.A


def _class_of_int(n: int) -> ComponentClass:
    return ComponentClass.B if n % 5 == 0 else ComponentClass.A


@dataclass(frozen=True)
class DistanceTable:
    """Step counts from ``source`` to every target ``1..limit``.

    ``steps[n]`` is -1 where the target was not reached; index 0 is unused.
    """

    source: int
    cap_digits: int
    limit: int
    steps: np.ndarray

    def __getitem__(self, n: int) -> int:
        n = int(n)
        if not 1 <= n <= self.limit:
            raise OutOfRangeError(f"{n} outside table range 1..{self.limit}")
        return int(self.steps[n])

    def items(self):
        for n in range(1, self.limit + 1):
            yield n, int(self.steps[n])

    def same_entries(self, other: "DistanceTable") -> bool:
        lim = min(self.limit, other.limit)
        return bool(np.array_equal(self.steps[: lim + 1], other.steps[: lim + 1]))


# full capped distance arrays; cap 8 is 100 MB so keep very few
_FULL: "OrderedDict[tuple[int, int], np.ndarray]" = OrderedDict()
_FULL_MAX = 2


def full_distances(source: int, cap_digits: int) -> np.ndarray:
    """Distance array over ``[0, 10**cap_digits)`` (memoised, read-only)."""
    key = (int(source), int(cap_digits))
    if key in _FULL:
        _FULL.move_to_end(key)
        return _FULL[key]
    log.info("BFS from %d with cap %d digits", source, cap_digits)
    dist = _kernels.bfs_layers(int(source), int(cap_digits))
    dist.setflags(write=False)
    _FULL[key] = dist
    while len(_FULL) > _FULL_MAX:
        _FULL.popitem(last=False)
    return dist


def clear_memo() -> None:
    _FULL.clear()


def _cache_path(cache_dir: os.PathLike, source: int, cap: int, limit: int) -> Path:
    return Path(cache_dir) / f"dist-s{source}-c{cap}-l{limit}.txt"


def write_cache(table: DistanceTable, path: os.PathLike) -> None:
    lines = [CACHE_MAGIC, f"# source={table.source} cap={table.cap_digits} limit={table.limit}"]
    lines += [f"{n} {d}" for n, d in table.items()]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + f".{os.getpid()}.tmp")
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_cache(path: os.PathLike) -> DistanceTable:
    with open(path, encoding="ascii", newline="") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a distance cache file")
    meta = dict(kv.split("=", 1) for kv in lines[1].lstrip("# ").split())
    source, cap, limit = int(meta["source"]), int(meta["cap"]), int(meta["limit"])
    steps = np.full(limit + 1, -1, dtype=np.int8)
    expect = 1
    for line in lines[2:]:
        if not line:
            continue
        n, d = map(int, line.split(" "))
        if n != expect:
            raise ValueError(f"{path}: expected entry {expect}, got {n}")
        steps[n] = d
        expect += 1
    if expect != limit + 1:
        raise ValueError(f"{path}: truncated ({expect - 1} of {limit} entries)")
    return DistanceTable(source, cap, limit, steps)


def bfs_distances(
    source: int,
    cap_digits: int,
    limit: int,
    *,
    cache_dir: Optional[os.PathLike] = None,
    threads: Optional[int] = None,
) -> DistanceTable:
    """Minimal step counts from ``source`` (1 or 5) to all targets up to ``limit``.

    Intermediate numbers are restricted to at most ``cap_digits`` digits.
    """
    source, limit = int(source), int(limit)
    if source not in (1, 5):
        raise ConfigError("source must be 1 or 5")
    if limit < 1:
        raise ConfigError("limit must be at least 1")
    if cap_digits < len(str(limit)):
        raise ConfigError(f"cap_digits={cap_digits} is smaller than the {len(str(limit))} digits of limit={limit}")
    if cap_digits > _kernels.MAX_CAP:
        raise ConfigError(f"cap_digits above {_kernels.MAX_CAP} is not supported")
    if cache_dir is not None:
        path = _cache_path(cache_dir, source, cap_digits, limit)
        if path.exists():
            try:
                table = read_cache(path)
                if (table.source, table.cap_digits, table.limit) == (source, cap_digits, limit):
                    return table
            except (ValueError, KeyError, IndexError) as exc:
                log.warning("ignoring unreadable cache %s: %s", path, exc)
    if threads is not None:
        _kernels.set_threads(threads)
    full = full_distances(source, cap_digits)
    table = DistanceTable(source, cap_digits, limit, full[: limit + 1].copy())
    if cache_dir is not None:
        write_cache(table, _cache_path(cache_dir, source, cap_digits, limit))
    return table


def audit_stability(table: DistanceTable, *, cache_dir: Optional[os.PathLike] = None) -> bool:
    """True when raising the cap by one digit changes no entry."""
    wider = bfs_distances(table.source, table.cap_digits + 1, table.limit, cache_dir=cache_dir)
    return table.same_entries(wider)


def tau(n: Number, table: DistanceTable) -> int:
    """Steps needed to reach ``n`` from 1, or -1."""
    if table.source != 1:
        raise ConfigError("tau needs a table built from source 1")
    return table[int(as_digits(n))]


def steps_from_5(n: Number, table: DistanceTable) -> int:
    if table.source != 5:
        raise ConfigError("steps_from_5 needs a table built from source 5")
    return table[int(as_digits(n))]


@dataclass(frozen=True)
class PathTrace:
    vertices: tuple[DigitString, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)


def shortest_path(a: Number, b: Number, cap_digits: int = 7) -> PathTrace:
    """A minimal path from ``a`` to ``b`` through numbers of at most
    ``cap_digits`` digits; ties go to the numerically smallest predecessor."""
    a, b = as_digits(a), as_digits(b)
    if component_class(a) != component_class(b):
        raise NoPathError(f"{a} and {b} are in different components")
    if max(len(a), len(b)) > cap_digits:
        raise CapExceededError(f"endpoints exceed the {cap_digits}-digit cap")
    dist = full_distances(int(a), cap_digits)
    cur = int(b)
    d = int(dist[cur])
    if d < 0:
        raise CapExceededError(f"{b} not reachable from {a} within {cap_digits} digits")
    bound = 10**cap_digits
    walk = [cur]
    while d > 0:
        cur = min(
            v for v in map(int, neighbors(cur))
            if v < bound and dist[v] == d - 1
        )
        walk.append(cur)
        d -= 1
    return PathTrace(tuple(DigitString.from_int(v) for v in reversed(walk)))


@dataclass(frozen=True)
class RecordTable:
    entries: tuple[tuple[int, int], ...]

    @property
    def positions(self) -> list[int]:
        return [p for p, _ in self.entries]

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]


def running_records(pairs: Sequence[tuple[int, int]]) -> RecordTable:
    out = []
    best = -1
    for pos, val in pairs:
        if val > best:
            out.append((pos, val))
            best = val
    return RecordTable(tuple(out))


def _covered(table: DistanceTable, limit: int) -> None:
    if limit > table.limit:
        raise OutOfRangeError(f"table covers 1..{table.limit}, asked for {limit}")


def records_tau(limit: int, table: DistanceTable) -> RecordTable:
    _covered(table, limit)
    return running_records([(n, int(table.steps[n])) for n in range(1, limit + 1) if n % 5])


def records_class_b(limit: int, table: DistanceTable) -> RecordTable:
    _covered(table, limit)
    return running_records([(n, int(table.steps[n])) for n in range(5, limit + 1, 5)])


@njit(cache=True)
def _certify(dist, pw, cap, out):
    buf = np.empty(_kernels.scratch_size_nb(cap), dtype=np.int64)
    bad = 0
    for v in range(1, dist.shape[0]):
        d = dist[v]
        if d < 0:
            continue
        c = _kernels.neighbors_into(v, pw, cap, buf)
        has_parent = d == 0
        ok = True
        for j in range(c):
            e = dist[buf[j]]
            if e < 0 or e > d + 1 or e < d - 1:
                ok = False
            if e == d - 1:
                has_parent = True
        if not (ok and has_parent):
            if bad < out.shape[0]:
                out[bad] = v
            bad += 1
    return bad


def certify_distances(source: int, cap_digits: int, keep: int = 16) -> tuple[int, list[int]]:
    """Local check that the capped array really is a BFS distance function.

    Every reached vertex other than the source must have a neighbor one
    step closer, and no edge may span more than one layer or leave the
    reached set. Returns the violation count and the first few offenders.
    """
    dist = full_distances(source, cap_digits)
    zeros = np.flatnonzero(dist == 0)
    out = np.zeros(keep, dtype=np.int64)
    bad = _certify(dist, _kernels.powers(10, cap_digits), cap_digits, out)
    offenders = out[: min(bad, keep)].tolist()
    if zeros.tolist() != [source]:
        bad += 1
        offenders.append(int(source))
    return bad, offenders

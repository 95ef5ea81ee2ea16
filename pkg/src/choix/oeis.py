"""OEIS b-file emission, parsing and comparison for the sequences computed here."""

from __future__ import annotations

import os
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Optional

from . import search
from .core import DigitString, neighbors
from .extremal import max_neighbor_int, min_neighbor
from .search import DistanceTable


class SequenceError(ValueError):
    pass


class UnsupportedSequenceError(SequenceError):
    pass


class BFileFormatError(ValueError):
    pass


@dataclass(frozen=True)
class BFile:
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for (a, _), (b, _) in zip(self.entries, self.entries[1:]):
            if b != a + 1:
                raise BFileFormatError(f"index {b} follows {a}; indices must be consecutive")

    @classmethod
    def from_values(cls, values, offset: int = 1) -> "BFile":
        return cls(tuple((offset + i, int(v)) for i, v in enumerate(values)))

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]

    def to_text(self) -> str:
        return "".join(f"{i} {v}\n" for i, v in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def parse_bfile(text: str) -> BFile:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#") or not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileFormatError(f"line {lineno}: expected '<index> <value>', got {line!r}")
        try:
            entries.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise BFileFormatError(f"line {lineno}: non-integer field in {line!r}") from None
    return BFile(tuple(entries))


def read_bfile(path: os.PathLike) -> BFile:
    with open(path, encoding="ascii") as fh:
        return parse_bfile(fh.read())


def write_bfile(bfile: BFile, path: os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(bfile.to_text())


@dataclass(frozen=True)
class CompareReport:
    first: int
    last: int
    divergence: Optional[tuple[int, int, int]]  # index, generated, reference

    @property
    def match(self) -> bool:
        return self.divergence is None

    def __str__(self) -> str:
        if self.match:
            return f"match over {self.first}..{self.last}"
        i, a, b = self.divergence
        return f"differ at index {i}: {a} != {b}"


def compare_sequences(generated: BFile, reference: BFile) -> CompareReport:
    ref = dict(reference.entries)
    common = [(i, v) for i, v in generated.entries if i in ref]
    if not common:
        raise SequenceError("the two b-files share no indices")
    for i, v in common:
        if v != ref[i]:
            return CompareReport(common[0][0], common[-1][0], (i, v, ref[i]))
    return CompareReport(common[0][0], common[-1][0], None)


# -- generators --------------------------------------------------------------

@dataclass
class Tables:
    """Distance tables handed to generators that need them."""

    tau: Optional[DistanceTable] = None
    five: Optional[DistanceTable] = None


def _flatten(rows: Iterator[list[int]], count: int) -> list[int]:
    out: list[int] = []
    for row in rows:
        out.extend(row)
        if len(out) >= count:
            break
    return out[:count]


def _rows(base: int) -> Iterator[list[int]]:
    n = 1
    while True:
        yield [int(m) for m in neighbors(DigitString.from_int(n, base))]
        n += 1


def _need(table: Optional[DistanceTable], what: str) -> DistanceTable:
    if table is None:
        raise SequenceError(f"this sequence needs the {what} distance table")
    return table


def _gen_m1(count: int, tables: Tables, positions: bool) -> list[int]:
    return [max_neighbor_int(n) for n in range(1, count + 1)]


def _gen_m0(count: int, tables: Tables, positions: bool) -> list[int]:
    return [int(min_neighbor(n).value) for n in range(1, count + 1)]


def _gen_tau(count: int, tables: Tables, positions: bool) -> list[int]:
    t = _need(tables.tau, "source-1")
    if count > t.limit:
        raise SequenceError(f"{count} terms requested but the table stops at {t.limit}")
    return [t[n] for n in range(1, count + 1)]


def _gen_steps5(count: int, tables: Tables, positions: bool) -> list[int]:
    t = _need(tables.five, "source-5")
    if 5 * count > t.limit:
        raise SequenceError(f"{count} terms need targets up to {5 * count}; table stops at {t.limit}")
    return [t[5 * m] for m in range(1, count + 1)]


def _record_gen(which: str) -> Callable[[int, Tables, bool], list[int]]:
    def gen(count: int, tables: Tables, positions: bool) -> list[int]:
        if which == "tau":
            t = _need(tables.tau, "source-1")
            rec = search.records_tau(t.limit, t)
        else:
            t = _need(tables.five, "source-5")
            rec = search.records_class_b(t.limit, t)
        if count > len(rec.entries):
            raise SequenceError(f"only {len(rec.entries)} records up to {t.limit}")
        seq = rec.positions if positions else rec.values
        return seq[:count]

    return gen


def _unsupported(count: int, tables: Tables, positions: bool) -> list[int]:
    raise UnsupportedSequenceError("A323453 is not defined by the source material")


@dataclass(frozen=True)
class SequenceSpec:
    id: str
    offset: int
    description: str
    generator: Callable[[int, Tables, bool], list[int]]


SEQUENCES: dict[str, SequenceSpec] = {
    s.id: s
    for s in [
        SequenceSpec("A323288", 1, "largest one-step image of n", _gen_m1),
        SequenceSpec("A323453", 1, "reserved, unsupported", _unsupported),
        SequenceSpec("A323454", 1, "steps from 1 to n, -1 if unreachable", _gen_tau),
        SequenceSpec("A323460", 1, "one-step images of n, rows flattened",
                     lambda c, t, p: _flatten(_rows(10), c)),
        SequenceSpec("A323462", 1, "smallest one-step image of n", _gen_m0),
        SequenceSpec("A323463", 1, "record step counts from 1", _record_gen("tau")),
        SequenceSpec("A323464", 1, "record step counts from 5", _record_gen("five")),
        SequenceSpec("A323465", 1, "binary variant, rows flattened",
                     lambda c, t, p: _flatten(_rows(2), c)),
        SequenceSpec("A323484", 1, "steps from 5 to 5m", _gen_steps5),
    ]
}


def get_spec(seq_id: str) -> SequenceSpec:
    try:
        return SEQUENCES[seq_id.upper()]
    except KeyError:
        raise SequenceError(f"unknown sequence {seq_id!r}") from None


def needs_tables(seq_id: str) -> set[str]:
    sid = get_spec(seq_id).id
    return {
        "A323454": {"tau"}, "A323463": {"tau"},
        "A323464": {"five"}, "A323484": {"five"},
    }.get(sid, set())


def generate_sequence(
    spec: SequenceSpec | str,
    count: int,
    tables: Optional[Tables] = None,
    *,
    positions: bool = False,
    offset: Optional[int] = None,
) -> BFile:
    """First ``count`` terms of a sequence as a b-file.

    ``positions`` switches record sequences to the positions where the
    records occur.
    """
    if isinstance(spec, str):
        spec = get_spec(spec)
    if count < 0:
        raise SequenceError("count must be non-negative")
    values = spec.generator(count, tables or Tables(), positions)
    return BFile.from_values(values, spec.offset if offset is None else offset)


def reference_url(seq_id: str) -> str:
    sid = get_spec(seq_id).id
    return f"https://oeis.org/{sid}/b{sid[1:]}.txt"


def fetch_reference(seq_id: str, dest: os.PathLike, timeout: float = 30.0) -> Path:
    """Download the published b-file. Only called on explicit request."""
    with urllib.request.urlopen(reference_url(seq_id), timeout=timeout) as resp:
        text = resp.read().decode("ascii")
    dest = Path(dest)
    dest.write_bytes(text.encode("ascii"))
    return dest

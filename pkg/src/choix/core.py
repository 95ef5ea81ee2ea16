"""Digit strings and the one-step halve/double substring operation."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

BASES = (10, 2)


class ParseError(ValueError):
    """Text is not the canonical representation of a positive integer."""


class MoveError(ValueError):
    """A move is not applicable to the given digit string."""


@dataclass(frozen=True, order=False)
class DigitString:
    """Canonical digits (most significant first) of a positive integer."""

    digits: tuple[int, ...]
    base: int = 10

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ParseError(f"unsupported base {self.base}")
        if not self.digits:
            raise ParseError("empty digit sequence")
        if self.digits[0] == 0:
            raise ParseError("leading zero")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ParseError(f"digit out of range for base {self.base}")

    @classmethod
    def from_int(cls, n: int, base: int = 10) -> "DigitString":
        if n < 1:
            raise ParseError(f"{n} is not a positive integer")
        out = []
        while n:
            n, r = divmod(n, base)
            out.append(r)
        return cls(tuple(reversed(out)), base)

    def __int__(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.base + d
        return v

    def __index__(self) -> int:
        return int(self)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join("0123456789"[d] for d in self.digits)

    def __repr__(self) -> str:
        suffix = "" if self.base == 10 else f", base={self.base}"
        return f"DigitString('{self}'{suffix})"

    def _key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.digits), self.digits

    # length first, then digits: exact ordering at any size
    def __lt__(self, other: "DigitString") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "DigitString") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "DigitString") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "DigitString") -> bool:
        return self._key() >= other._key()

    @property
    def last_digit(self) -> int:
        return self.digits[-1]

    def is_even(self) -> bool:
        # even base: parity of the last digit decides
        return self.digits[-1] % 2 == 0


Number = Union[DigitString, int, str]


def parse_digit_string(text: str, base: int = 10) -> DigitString:
    """Parse ASCII digit text into a canonical :class:`DigitString`."""
    if base not in BASES:
        raise ParseError(f"unsupported base {base}")
    if not text:
        raise ParseError("empty text")
    digits = []
    for ch in text:
        if not ("0" <= ch <= "9") or int(ch) >= base:
            raise ParseError(f"invalid digit {ch!r} for base {base}")
        digits.append(int(ch))
    if all(d == 0 for d in digits):
        raise ParseError("zero is not a positive integer")
    if digits[0] == 0:
        raise ParseError(f"leading zero in {text!r}")
    return DigitString(tuple(digits), base)


def as_digits(n: Number, base: int = 10) -> DigitString:
    """Coerce an int, text or DigitString to a DigitString."""
    if isinstance(n, DigitString):
        return n
    if isinstance(n, str):
        return parse_digit_string(n, base)
    return DigitString.from_int(int(n), base)


def _double(digits: tuple[int, ...], base: int) -> tuple[int, ...]:
    out = []
    carry = 0
    for d in reversed(digits):
        carry, r = divmod(2 * d + carry, base)
        out.append(r)
    if carry:
        out.append(carry)
    return tuple(reversed(out))


def _halve(digits: tuple[int, ...], base: int) -> tuple[int, ...]:
    out = []
    rem = 0
    for d in digits:
        q, rem = divmod(rem * base + d, 2)
        out.append(q)
    if out[0] == 0 and len(out) > 1:
        out = out[1:]
    return tuple(out)


def double_string(s: DigitString) -> DigitString:
    return DigitString(_double(s.digits, s.base), s.base)


def halve_string(s: DigitString) -> DigitString:
    if not s.is_even():
        raise MoveError(f"{s} is odd and cannot be halved")
    return DigitString(_halve(s.digits, s.base), s.base)


class Action(enum.Enum):
    HALVE = "halve"
    DOUBLE = "double"


@dataclass(frozen=True)
class ChoiceMove:
    """Substring ``start..end`` (1-based, inclusive) and what to do with it."""

    start: int
    end: int
    action: Action

    def __str__(self) -> str:
        return f"{self.action.value}[{self.start}..{self.end}]"


def apply_move(n: DigitString, move: ChoiceMove) -> DigitString:
    k = len(n)
    p, q = move.start, move.end
    if not 1 <= p <= q <= k:
        raise MoveError(f"span ({p},{q}) out of range for {k}-digit {n}")
    sub = n.digits[p - 1:q]
    if sub[0] == 0:
        raise MoveError(f"substring at ({p},{q}) of {n} starts with 0")
    if move.action is Action.DOUBLE:
        new = _double(sub, n.base)
    else:
        if sub[-1] % 2:
            raise MoveError(f"substring at ({p},{q}) of {n} is odd")
        new = _halve(sub, n.base)
    return DigitString(n.digits[:p - 1] + new + n.digits[q:], n.base)


def iter_moves(n: DigitString) -> Iterator[ChoiceMove]:
    """Valid moves by start index, then end index, then action."""
    digits = n.digits
    k = len(digits)
    for p in range(1, k + 1):
        if digits[p - 1] == 0:
            continue
        for q in range(p, k + 1):
            if digits[q - 1] % 2 == 0:
                yield ChoiceMove(p, q, Action.HALVE)
            yield ChoiceMove(p, q, Action.DOUBLE)


def iter_images(n: DigitString) -> Iterator[tuple[ChoiceMove, DigitString]]:
    for move in iter_moves(n):
        yield move, apply_move(n, move)


def neighbors(n: Number) -> list[DigitString]:
    """Sorted, duplicate-free one-step images of ``n``, including ``n``."""
    n = as_digits(n)
    found = {n}
    found.update(m for _, m in iter_images(n))
    return sorted(found)


def neighbors_base2(n: Number) -> list[DigitString]:
    n = as_digits(n, 2) if not isinstance(n, DigitString) else n
    if n.base != 2:
        raise ValueError("neighbors_base2 needs a base-2 DigitString")
    return neighbors(n)


def is_neighbor(n: Number, m: Number) -> bool:
    n = as_digits(n)
    m = as_digits(m, n.base)
    if n.base != m.base:
        raise ValueError("bases differ")
    if n == m:
        return True
    # the images of n are never longer than n by more than one digit
    if abs(len(n) - len(m)) > 1:
        return False
    return any(img == m for _, img in iter_images(n))

"""Largest and smallest one-step images, and the x10 range bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .core import (
    Action,
    ChoiceMove,
    DigitString,
    Number,
    apply_move,
    as_digits,
    iter_images,
)


@dataclass(frozen=True)
class ExtremalResult:
    value: DigitString
    witness_move: Optional[ChoiceMove]  # None is the identity choice

    def check(self, n: DigitString) -> bool:
        if self.witness_move is None:
            return self.value == n
        return apply_move(n, self.witness_move) == self.value


@dataclass(frozen=True)
class RuleResult:
    """Literal reading of the closed-form minimum rule next to the true minimum."""

    value: DigitString
    witness_move: Optional[ChoiceMove]
    oracle: DigitString
    agrees: bool


@dataclass(frozen=True)
class BoundCheckReport:
    n: DigitString
    min_ratio: Fraction
    max_ratio: Fraction

    @property
    def ok(self) -> bool:
        return Fraction(1, 10) < self.min_ratio and self.max_ratio < 10


def _max_move(digits: tuple[int, ...]) -> ChoiceMove:
    k = len(digits)
    big = [i for i, d in enumerate(digits, 1) if d >= 5]
    if not big:
        return ChoiceMove(1, k, Action.DOUBLE)
    return ChoiceMove(big[-1], k, Action.DOUBLE)


def max_neighbor(n: Number) -> ExtremalResult:
    """Double everything when every digit is below 5, otherwise double the
    tail that starts at the right-most digit >= 5."""
    n = as_digits(n)
    move = _max_move(n.digits)
    return ExtremalResult(apply_move(n, move), move)


def max_neighbor_int(n: int) -> int:
    """Same rule on a plain int, for bulk sweeps."""
    s = str(n)
    p = max(s.rfind(c) for c in "56789")
    if p < 0:
        return 2 * n
    return int(s[:p] + str(2 * int(s[p:])))


def min_neighbor(n: Number) -> ExtremalResult:
    """Smallest image, found by exhaustive enumeration."""
    n = as_digits(n)
    best, witness = n, None
    for move, m in iter_images(n):
        if m < best:
            best, witness = m, move
    return ExtremalResult(best, witness)


def _min_rule_move(digits: tuple[int, ...]) -> Optional[ChoiceMove]:
    evens = [i for i, d in enumerate(digits, 1) if d % 2 == 0]
    if not evens:
        return None
    last_even = evens[-1]
    if 1 in digits:
        first_one = digits.index(1) + 1
        if first_one < last_even:
            return ChoiceMove(first_one, last_even, Action.HALVE)
    return ChoiceMove(1, last_even, Action.HALVE)


def min_neighbor_rule(n: Number) -> RuleResult:
    """Evaluate the left-most-1 / right-most-even rule word for word.

    The rule is not trusted; ``agrees`` says whether it hit the true minimum.
    """
    n = as_digits(n)
    move = _min_rule_move(n.digits)
    value = n if move is None else apply_move(n, move)
    oracle = min_neighbor(n).value
    return RuleResult(value, move, oracle, value == oracle)


def min_rule_int(n: int) -> int:
    digits = tuple(map(int, str(n)))
    move = _min_rule_move(digits)
    if move is None:
        return n
    s = str(n)
    return int(s[: move.start - 1] + str(int(s[move.start - 1: move.end]) // 2) + s[move.end:])


def check_range_bounds(n: Number) -> BoundCheckReport:
    n = as_digits(n)
    v = int(n)
    images = [int(m) for _, m in iter_images(n)] + [v]
    return BoundCheckReport(n, Fraction(min(images), v), Fraction(max(images), v))


def nines(t: int) -> int:
    """99...9 with ``t`` nines."""
    return 10**t - 1


def ten_power_plus_ten(t: int) -> int:
    return 10**t + 10


def tightness_ratios(t_max: int = 12) -> Iterator[tuple[int, Fraction, Fraction]]:
    """``(t, M1(99..9)/99..9, M0(10^t+10)/(10^t+10))`` for t = 2..t_max."""
    for t in range(2, t_max + 1):
        a = nines(t)
        b = ten_power_plus_ten(t)
        yield (
            t,
            Fraction(int(max_neighbor(a).value), a),
            Fraction(int(min_neighbor(b).value), b),
        )


def is_all_odd(n: Number) -> bool:
    return all(d % 2 for d in as_digits(n).digits)

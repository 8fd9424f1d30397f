"""Entropy estimation from a finite run of cotrajectory (or trajectory) indices.

The inputs are the integers a_n = [U : C_n] for n = 1..N (equivalently
[T_n : U_perp] on the dual side).  Two exact artefacts are extracted:

* a certified upper bound.  The shifted sequence b_k = log a_{k+1} is
  subadditive, so lim log(a_n)/n = inf_n log(a_{n+1})/n and every
  log(a_n)/(n-1) with n >= 2 is a true upper bound for the entropy.
  The unshifted quantity log(a_n)/n is *not* monotone-safe: a_1 = 1
  would certify 0 for everything.  Bounds are kept as (index, steps)
  pairs and compared through integer cross powers, never floats.

* a stabilization estimate.  The ratio [C_n : C_{n+1}] = a_{n+1}/a_n is
  a nonincreasing positive integer, so once it repeats across a window
  it has very likely reached its limit r, and the entropy is log r.
  A stabilized value that exceeds the certified bound is demoted to
  bounded-only rather than reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Optional, Sequence

__all__ = [
    "LogIndexBound",
    "EntropyEstimate",
    "validate_indices",
    "ratios",
    "ratios_nonincreasing",
    "shifted_submultiplicative",
    "certified_upper_bound",
    "estimate_entropy",
]

DEFAULT_WINDOW = 3


@total_ordering
@dataclass(frozen=True, eq=False)
class LogIndexBound:
    """The exact real number log(index) / steps.

    Ordering and equality compare values, not representations, via
    index ** other.steps against other.index ** steps.
    """

    index: int
    steps: int

    def __post_init__(self) -> None:
        if self.index < 1 or self.steps < 1:
            raise ValueError("invalid index sequence")

    def as_float(self) -> float:
        return math.log(self.index) / self.steps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogIndexBound):
            return NotImplemented
        return self.index**other.steps == other.index**self.steps

    def __lt__(self, other: "LogIndexBound") -> bool:
        return self.index**other.steps < other.index**self.steps

    __hash__ = None  # value equality has no cheap canonical form

    def exceeded_by_ratio(self, ratio: int) -> bool:
        """Whether log(ratio) > self, decided exactly."""
        return ratio**self.steps > self.index


@dataclass(frozen=True)
class EntropyEstimate:
    """Outcome of analyzing one finite index sequence."""

    indices: tuple[int, ...]
    bound: LogIndexBound
    ratio: Optional[int]
    stabilized: bool
    demoted: bool
    window: int

    @property
    def status(self) -> str:
        return "stabilized" if self.stabilized else "bounded-only"

    @property
    def value(self) -> Optional[float]:
        if not self.stabilized:
            return None
        return math.log(self.ratio)


def validate_indices(indices: Iterable[int]) -> tuple[int, ...]:
    """Nondecreasing positive integers, else ValueError."""
    seq = tuple(indices)
    if not seq:
        raise ValueError("invalid index sequence")
    for a in seq:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise ValueError("invalid index sequence")
    for a, b in zip(seq, seq[1:]):
        if b < a:
            raise ValueError("invalid index sequence")
    return seq


def _integer_ratios(seq: Sequence[int]) -> Optional[tuple[int, ...]]:
    out = []
    for a, b in zip(seq, seq[1:]):
        if b % a:
            return None
        out.append(b // a)
    return tuple(out)


def ratios(indices: Sequence[int]) -> tuple[int, ...]:
    """Successive ratios a_{n+1} / a_n; they must be integers."""
    r = _integer_ratios(validate_indices(indices))
    if r is None:
        raise ValueError("invalid index sequence")
    return r


def ratios_nonincreasing(indices: Sequence[int]) -> bool:
    """Log-concavity a_{k+1}^2 >= a_k * a_{k+2}, i.e. nonincreasing ratios."""
    seq = validate_indices(indices)
    return all(b * b >= a * c for a, b, c in zip(seq, seq[1:], seq[2:]))


def shifted_submultiplicative(indices: Sequence[int]) -> bool:
    """Check a_{n+m+1} <= a_{n+1} * a_{m+1} wherever defined (1-based)."""
    seq = validate_indices(indices)
    n = len(seq)
    return all(
        seq[i + j] <= seq[i] * seq[j]
        for i in range(1, n)
        for j in range(i, n - i)
    )


def certified_upper_bound(indices: Sequence[int]) -> LogIndexBound:
    """Least log(a_n)/(n-1) over n >= 2, as an exact (index, steps) pair."""
    seq = validate_indices(indices)
    if len(seq) < 2:
        raise ValueError("invalid index sequence")
    candidates = [LogIndexBound(a, n) for n, a in enumerate(seq[1:], start=1)]
    return min(candidates)


def estimate_entropy(
    indices: Sequence[int], window: int = DEFAULT_WINDOW
) -> EntropyEstimate:
    """Certified bound plus ratio-stabilization estimate for one sequence.

    Stabilization requires integer ratios throughout and the last
    ``window`` of them equal; a stabilized log(ratio) strictly above the
    certified bound cannot be the entropy, so the estimate is demoted
    and only the bound stands.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    seq = validate_indices(indices)
    bound = certified_upper_bound(seq)
    r = _integer_ratios(seq) or ()
    ratio: Optional[int] = None
    stabilized = False
    demoted = False
    if len(r) >= window and len(set(r[-window:])) == 1:
        ratio = r[-1]
        stabilized = True
        if bound.exceeded_by_ratio(ratio):
            stabilized = False
            demoted = True
    return EntropyEstimate(
        indices=seq,
        bound=bound,
        ratio=ratio,
        stabilized=stabilized,
        demoted=demoted,
        window=window,
    )

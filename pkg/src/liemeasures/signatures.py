"""Signatures of the four classical series and Weyl dimension formulas.

A signature is a weakly decreasing integer tuple labelling an irreducible
representation of U(N) (series A), SO(2N+1) (B), Sp(2N) (C) or SO(2N) (D).
Series B and C require the last entry to be nonnegative; series D allows a
negative last entry subject to entries[-2] >= |entries[-1]|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ValidationError

SERIES = ("A", "B", "C", "D")

#: group names, for messages only
GROUP_NAME = {"A": "U(N)", "B": "SO(2N+1)", "C": "Sp(2N)", "D": "SO(2N)"}


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise ValidationError(f"unknown series {self.series!r}")
        if self.rank < 1:
            raise ValidationError("rank must be >= 1")

    @property
    def n_hat(self) -> int:
        """The normalization N-hat: N for A, 2N for C and D, 2N+1 for B."""
        if self.series == "A":
            return self.rank
        if self.series == "B":
            return 2 * self.rank + 1
        return 2 * self.rank

    def with_rank(self, rank: int) -> "RootSystem":
        return RootSystem(self.series, rank)


def entries_valid(series: str, entries: tuple[int, ...]) -> bool:
    """Whether an integer tuple is a valid signature for the series."""
    n = len(entries)
    if n == 0:
        return False
    if any(entries[i] < entries[i + 1] for i in range(n - 1)):
        return False
    if series in ("B", "C"):
        return entries[-1] >= 0
    if series == "D":
        if n == 1:
            return True  # SO(2): any integer
        return entries[-2] >= abs(entries[-1])
    return True


@dataclass(frozen=True)
class Signature:
    system: RootSystem
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.system.rank:
            raise ValidationError(
                f"signature length {len(self.entries)} != rank {self.system.rank}")
        if not entries_valid(self.system.series, self.entries):
            raise ValidationError(
                f"{self.entries} is not a {GROUP_NAME[self.system.series]} signature")

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def series(self) -> str:
        return self.system.series

    def size(self) -> int:
        return sum(self.entries)

    @staticmethod
    def make(series: str, entries) -> "Signature":
        entries = tuple(int(e) for e in entries)
        return Signature(RootSystem(series, len(entries)), entries)

    def shifted(self, i: int, delta: int) -> tuple[int, ...]:
        """The tuple with entry *i* (0-based) moved by *delta*; may be invalid."""
        e = list(self.entries)
        e[i] += delta
        return tuple(e)


def zero_signature(series: str, rank: int) -> Signature:
    return Signature(RootSystem(series, rank), (0,) * rank)


# -- Weyl dimension formulas --------------------------------------------------
#
# Products over positive roots with the usual rho-shifts:
#   A: l_i = e_i + N - i            dim = prod_{i<j} (l_i-l_j)/(j-i)
#   B: l_i = e_i + N - i + 1/2      dim = prod_i l_i/r_i * prod_{i<j} (l_i^2-l_j^2)/(r_i^2-r_j^2)
#   C: l_i = e_i + N - i + 1        dim = prod_i l_i/r_i * prod_{i<j} (l_i^2-l_j^2)/(r_i^2-r_j^2)
#   D: l_i = e_i + N - i            dim = prod_{i<j} (l_i^2-l_j^2)/(r_i^2-r_j^2)
# where r is l evaluated at the zero signature.


def rho_shift(series: str, rank: int) -> tuple[Fraction, ...]:
    if series == "A" or series == "D":
        return tuple(Fraction(rank - i) for i in range(1, rank + 1))
    if series == "B":
        return tuple(Fraction(2 * (rank - i) + 1, 2) for i in range(1, rank + 1))
    return tuple(Fraction(rank - i + 1) for i in range(1, rank + 1))  # C


def shifted_coordinates(series: str, entries: tuple[int, ...]) -> tuple[Fraction, ...]:
    rho = rho_shift(series, len(entries))
    return tuple(Fraction(e) + r for e, r in zip(entries, rho))


@lru_cache(maxsize=None)
def _dim_from_entries(series: str, entries: tuple[int, ...]) -> int:
    n = len(entries)
    l = shifted_coordinates(series, entries)
    r = rho_shift(series, n)
    d = Fraction(1)
    if series == "A":
        for i in range(n):
            for j in range(i + 1, n):
                d *= (l[i] - l[j]) / (r[i] - r[j])
    else:
        for i in range(n):
            for j in range(i + 1, n):
                d *= (l[i] * l[i] - l[j] * l[j]) / (r[i] * r[i] - r[j] * r[j])
        if series in ("B", "C"):
            for i in range(n):
                d *= l[i] / r[i]
    if d.denominator != 1:
        raise ValidationError(f"Weyl dimension of {entries} is not an integer")
    return int(d)


def weyl_dimension(sig: Signature) -> int:
    """dim of the irreducible representation with highest weight *sig*."""
    d = _dim_from_entries(sig.series, sig.entries)
    if d <= 0:
        raise ValidationError(f"non-positive dimension for {sig.entries}")
    return d


def dim_or_zero(series: str, entries: tuple[int, ...]) -> int:
    """dim if *entries* is a valid signature of the series, else 0.

    This is the literal relaxed convention for shifted tuples: a shift that
    leaves the signature cone contributes nothing.
    """
    if not entries_valid(series, entries):
        return 0
    return _dim_from_entries(series, entries)


def dim_polynomial(series: str, entries: tuple[int, ...]) -> int:
    """Signed value of the Weyl dimension product at an arbitrary tuple.

    Vanishes exactly where shifted coordinates collide, which covers every
    inner wall; on the series-B reflection wall (last entry pushed to -1,
    so l_N = -1/2) it continues to minus the dimension of the mirrored
    tuple.  The dimension-ratio measures need this continuation: the
    literal zero convention would break their total mass there.
    """
    n = len(entries)
    l = shifted_coordinates(series, entries)
    r = rho_shift(series, n)
    d = Fraction(1)
    if series == "A":
        for i in range(n):
            for j in range(i + 1, n):
                d *= (l[i] - l[j]) / (r[i] - r[j])
    else:
        for i in range(n):
            for j in range(i + 1, n):
                d *= (l[i] * l[i] - l[j] * l[j]) / (r[i] * r[i] - r[j] * r[j])
        if series in ("B", "C"):
            for i in range(n):
                d *= l[i] / r[i]
    if d.denominator != 1:
        raise ValidationError(f"dimension polynomial of {entries} is not integral")
    return int(d)

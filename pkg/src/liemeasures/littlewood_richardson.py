"""Littlewood-Richardson multiplicities by lattice-word strip counting.

The product of two series-A characters decomposes with multiplicities
counted by column-strict skew fillings whose reverse reading word is a
lattice word.  We enumerate them as chains of horizontal strips with the
per-row ballot condition

    #{letter t in rows <= r}  <=  #{letter t-1 in rows <= r-1},

memoized on (letter, current shape, cumulative profile of the previous
letter).  Negative signature entries are handled by a simultaneous
determinant twist, under which the multiplicities are invariant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .decomposition import DecompositionMeasure
from .errors import ValidationError
from .signatures import Signature, weyl_dimension

Shape = tuple[int, ...]


def _horizontal_strips(shape: Shape, size: int, max_rows: int):
    """All shapes obtained from *shape* by adding *size* boxes, no two in a column.

    Yields (new_shape, added_per_row)."""
    base = list(shape) + [0] * (max_rows - len(shape))

    def rec(row: int, remaining: int, acc: list[int]):
        if row == max_rows:
            if remaining == 0:
                yield tuple(acc), tuple(a - b for a, b in zip(acc, base))
            return
        prev = acc[row - 1] if row else None
        lo = base[row]
        hi = base[row - 1] if row else base[row] + remaining
        hi = min(hi, base[row] + remaining)
        for new in range(lo, hi + 1):
            if row and new > acc[row - 1]:
                continue
            acc.append(new)
            yield from rec(row + 1, remaining - (new - base[row]), acc)
            acc.pop()

    yield from rec(0, size, [])


def _lr_multiplicities(lam: Shape, mu: Shape, max_rows: int) -> dict[Shape, int]:
    """c^nu_{lam,mu} for partitions, shapes padded/truncated to max_rows rows."""
    lam = tuple(lam)
    mu = tuple(m for m in mu if m > 0)

    @lru_cache(maxsize=None)
    def level(t: int, shape: Shape, prev_cum: tuple[int, ...]) -> tuple[tuple[Shape, int], ...]:
        if t == len(mu):
            return ((shape, 1),)
        out: dict[Shape, int] = {}
        for new_shape, added in _horizontal_strips(shape, mu[t], max_rows):
            # ballot: letter t+1 in rows <= r needs that many t's in rows <= r-1;
            # the first letter is unconstrained
            cums = []
            cum = 0
            ok = True
            for r in range(max_rows):
                cum += added[r]
                cums.append(cum)
                if t > 0 and cum > (prev_cum[r - 1] if r >= 1 else 0):
                    ok = False
                    break
            if not ok:
                continue
            for final, mult in level(t + 1, new_shape, tuple(cums)):
                out[final] = out.get(final, 0) + mult
        return tuple(sorted(out.items()))

    return dict(level(0, lam, ()))


def lr_coefficients(lam: Signature, mu: Signature) -> dict[Signature, int]:
    """Decomposition multiplicities of the series-A product, via tableaux.

    Independent of the symbolic-character route; negative entries are
    shifted away and the results shifted back.
    """
    if lam.series != "A" or mu.series != "A":
        raise ValidationError("the tableau rule is series A only")
    if lam.rank != mu.rank:
        raise ValidationError("factors must have equal rank")
    n = lam.rank
    shift_l = -min(lam.entries[-1], 0)
    shift_m = -min(mu.entries[-1], 0)
    plam = tuple(e + shift_l for e in lam.entries)
    pmu = tuple(e + shift_m for e in mu.entries)
    raw = _lr_multiplicities(plam, pmu, n)
    out: dict[Signature, int] = {}
    back = shift_l + shift_m
    for shape, mult in raw.items():
        entries = tuple(x - back for x in shape)
        out[Signature(lam.system, entries)] = mult
    return out


def lr_decomposition(factors: list[Signature]) -> DecompositionMeasure:
    """Iterated tableau-rule decomposition of a series-A tensor product."""
    if not factors:
        raise ValidationError("need at least one factor")
    system = factors[0].system
    current: dict[Signature, int] = {factors[0]: 1}
    for nxt in factors[1:]:
        acc: dict[Signature, int] = {}
        for sig, mult in current.items():
            for out_sig, c in lr_coefficients(sig, nxt).items():
                acc[out_sig] = acc.get(out_sig, 0) + mult * c
        current = acc
    dim_product = 1
    for f in factors:
        dim_product *= weyl_dimension(f)
    weights = {sig: Fraction(mult * weyl_dimension(sig), dim_product)
               for sig, mult in current.items()}
    return DecompositionMeasure.from_mapping(system, weights)

"""Piecewise-linear limit profiles and the signatures that follow them.

A profile f: [0,1] -> R is stored as linear segments, evaluated with the
left-closed right-open convention (the right endpoint belongs to the last
segment).  Rounding f against the rank gives a signature sequence whose
rescaled entries track f within an explicit constant; the limiting moments
of the attached counting measures are exact piecewise polynomial integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import ValidationError
from .measures import MomentSequence
from .signatures import RootSystem, Signature, entries_valid


@dataclass(frozen=True)
class Segment:
    t0: Fraction
    t1: Fraction
    v0: Fraction
    v1: Fraction

    def value(self, t: Fraction) -> Fraction:
        if self.t1 == self.t0:
            raise ValidationError("degenerate segment")
        s = (t - self.t0) / (self.t1 - self.t0)
        return self.v0 + s * (self.v1 - self.v0)

    @property
    def slope(self) -> Fraction:
        return (self.v1 - self.v0) / (self.t1 - self.t0)


@dataclass(frozen=True)
class Profile:
    segments: tuple[Segment, ...]
    bound_c: Fraction

    def __post_init__(self):
        if not self.segments:
            raise ValidationError("a profile needs at least one segment")
        if self.segments[0].t0 != 0 or self.segments[-1].t1 != 1:
            raise ValidationError("segments must cover [0, 1]")
        for a, b in zip(self.segments, self.segments[1:]):
            if a.t1 != b.t0:
                raise ValidationError("segments must be contiguous")

    @staticmethod
    def constant(c) -> "Profile":
        c = Fraction(c)
        return Profile((Segment(Fraction(0), Fraction(1), c, c),),
                       bound_c=abs(c) + 1)

    @staticmethod
    def rectangle(height, cut) -> "Profile":
        """height on [0, cut), zero on [cut, 1]."""
        height, cut = Fraction(height), Fraction(cut)
        if not 0 < cut < 1:
            return Profile.constant(height if cut >= 1 else 0)
        segs = (Segment(Fraction(0), cut, height, height),
                Segment(cut, Fraction(1), Fraction(0), Fraction(0)))
        return Profile(segs, bound_c=abs(height) + 1)

    @staticmethod
    def from_breakpoints(points: Sequence[tuple]) -> "Profile":
        """Continuous piecewise-linear profile through (t, v) breakpoints."""
        pts = [(Fraction(t), Fraction(v)) for t, v in points]
        if pts[0][0] != 0 or pts[-1][0] != 1:
            raise ValidationError("breakpoints must span [0, 1]")
        segs = tuple(Segment(t0, t1, v0, v1)
                     for (t0, v0), (t1, v1) in zip(pts, pts[1:]))
        slope = max(abs(s.slope) for s in segs)
        return Profile(segs, bound_c=slope + 1)

    def value(self, t) -> Fraction:
        """Breakpoints take the left segment's value (plateaus keep their
        right endpoint), so a step profile rounds to the upper level there."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValidationError("profiles are defined on [0, 1]")
        for seg in self.segments:
            if seg.t0 <= t <= seg.t1:
                return seg.value(t)
        raise ValidationError("segments do not cover the point")

    def is_weakly_decreasing(self) -> bool:
        last = None
        for seg in self.segments:
            if seg.v1 > seg.v0:
                return False
            if last is not None and seg.v0 > last:
                return False
            last = seg.v1
        return True

    def is_nonnegative(self) -> bool:
        return all(seg.v0 >= 0 and seg.v1 >= 0 for seg in self.segments)

    def scale(self, factor) -> "Profile":
        factor = Fraction(factor)
        segs = tuple(Segment(s.t0, s.t1, factor * s.v0, factor * s.v1)
                     for s in self.segments)
        return Profile(segs, bound_c=abs(factor) * self.bound_c + 1)

    def describe(self) -> list[list[str]]:
        return [[str(s.t0), str(s.t1), str(s.v0), str(s.v1)]
                for s in self.segments]


def build_regular_sequence(profile: Profile, rank: int, system: RootSystem
                           ) -> Signature:
    """lambda_j = round(N f(j/N)) with a monotone-repair pass.

    Repair clamps each entry from above by its predecessor (and from below
    by the series constraints); every clamp moves an entry by at most one,
    preserving the regularity bound."""
    if system.series in ("B", "C") and not profile.is_nonnegative():
        raise ValidationError(
            f"series {system.series} requires a nonnegative profile")
    if not profile.is_weakly_decreasing():
        raise ValidationError("profiles must be weakly decreasing")
    n = rank
    raw = []
    for j in range(1, n + 1):
        v = n * profile.value(Fraction(j, n))
        raw.append(int((v + Fraction(1, 2)).__floor__()))  # round half up
    entries = []
    for j, v in enumerate(raw):
        if j > 0:
            v = min(v, entries[-1])
        entries.append(v)
    if system.series in ("B", "C"):
        entries = [max(v, 0) for v in entries]
        for j in range(1, n):
            entries[j] = min(entries[j], entries[j - 1])
    if system.series == "D" and n >= 2:
        if entries[-2] < abs(entries[-1]):
            entries[-1] = entries[-2] if entries[-1] > 0 else -entries[-2]
    ent = tuple(entries)
    if not entries_valid(system.series, ent):
        raise ValidationError(f"profile produced an invalid signature {ent}")
    return Signature(system, ent)


def _integral_linear_power(a: Fraction, b: Fraction, t0: Fraction, t1: Fraction,
                           k: int) -> Fraction:
    """Exact integral of (a + b t)^k over [t0, t1]."""
    total = Fraction(0)
    for j in range(k + 1):
        if b == 0 and j > 0:
            break
        total += comb(k, j) * a ** (k - j) * b ** j \
            * (t1 ** (j + 1) - t0 ** (j + 1)) / (j + 1)
    return total


def profile_limit_moments(profile: Profile, series: str, order: int
                          ) -> MomentSequence:
    """Moments of the limiting counting measure of a regular sequence.

    Series A integrates (f(t)+1-t)^k; the doubled series integrate the
    symmetrized pair ((f+2-t)/2)^k and ((t-f)/2)^k with weight 1/2 each."""
    values = []
    for k in range(order + 1):
        total = Fraction(0)
        for seg in profile.segments:
            c0 = seg.v0 - seg.slope * seg.t0  # f(t) = c0 + slope*t on the segment
            if series == "A":
                total += _integral_linear_power(c0 + 1, seg.slope - 1,
                                                seg.t0, seg.t1, k)
            else:
                half = Fraction(1, 2)
                total += half * _integral_linear_power(
                    (c0 + 2) * half, (seg.slope - 1) * half, seg.t0, seg.t1, k)
                total += half * _integral_linear_power(
                    -c0 * half, (1 - seg.slope) * half, seg.t0, seg.t1, k)
        values.append(total)
    return MomentSequence(tuple(values))

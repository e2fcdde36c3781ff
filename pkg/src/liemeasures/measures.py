"""Atomic measures attached to signatures, with exact rational atoms.

Four families: the counting measure, its origin-symmetric "hat" variant
for series B/C/D, the Perelomov-Popov measure weighted by dimension
ratios of shifted signatures, and the Kerov transition measure of a
Young diagram.  Moments of these measures are the raw material of every
limit theorem downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ValidationError
from .signatures import Signature, weyl_dimension

Rat = Fraction


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite atomic measure; atoms sorted by position, equal positions merged."""

    atoms: tuple[tuple[Fraction, Fraction], ...]  # (position, weight)

    @staticmethod
    def from_atoms(pairs: Iterable[tuple[Fraction, Fraction]]) -> "DiscreteMeasure":
        acc: dict[Fraction, Fraction] = {}
        for pos, w in pairs:
            pos, w = Fraction(pos), Fraction(w)
            if w < 0:
                raise ValidationError("negative atom weight")
            if w == 0:
                continue
            acc[pos] = acc.get(pos, Fraction(0)) + w
        return DiscreteMeasure(tuple(sorted(acc.items())))

    @staticmethod
    def point_mass(pos, weight=1) -> "DiscreteMeasure":
        return DiscreteMeasure.from_atoms([(Fraction(pos), Fraction(weight))])

    @property
    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def is_probability(self) -> bool:
        return self.total_mass == 1

    def moment(self, k: int) -> Fraction:
        return sum((w * pos ** k for pos, w in self.atoms), Fraction(0))

    def moments(self, order: int) -> "MomentSequence":
        return MomentSequence(tuple(self.moment(k) for k in range(order + 1)))

    def dilate(self, scale) -> "DiscreteMeasure":
        """Pushforward under x -> scale*x; moments scale as M_k -> scale^k M_k."""
        scale = Fraction(scale)
        if scale <= 0:
            raise ValidationError("dilation factor must be positive")
        return DiscreteMeasure.from_atoms((pos * scale, w) for pos, w in self.atoms)

    def reflect(self) -> "DiscreteMeasure":
        """Pushforward under x -> -x."""
        return DiscreteMeasure.from_atoms((-pos, w) for pos, w in self.atoms)

    def shift(self, c) -> "DiscreteMeasure":
        c = Fraction(c)
        return DiscreteMeasure.from_atoms((pos + c, w) for pos, w in self.atoms)

    def is_symmetric(self) -> bool:
        return self == self.reflect()

    def support_bounds(self) -> tuple[Fraction, Fraction]:
        if not self.atoms:
            return Fraction(0), Fraction(0)
        return self.atoms[0][0], self.atoms[-1][0]


@dataclass(frozen=True)
class MomentSequence:
    """M_0..M_K as exact rationals; M_0 is the total mass."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValidationError("empty moment sequence")

    @staticmethod
    def make(values: Sequence) -> "MomentSequence":
        return MomentSequence(tuple(Fraction(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def is_probability(self) -> bool:
        return self.values[0] == 1

    def truncate(self, order: int) -> "MomentSequence":
        if order > self.order:
            raise ValidationError("cannot extend a moment sequence")
        return MomentSequence(self.values[: order + 1])

    def dilate(self, scale) -> "MomentSequence":
        scale = Fraction(scale)
        if scale <= 0:
            raise ValidationError("dilation factor must be positive")
        return MomentSequence(tuple(v * scale ** k for k, v in enumerate(self.values)))

    def reflect(self) -> "MomentSequence":
        return MomentSequence(tuple(v if k % 2 == 0 else -v
                                    for k, v in enumerate(self.values)))

    def shift(self, c) -> "MomentSequence":
        """Moments of the translate by c (binomial transform)."""
        from math import comb
        c = Fraction(c)
        out = []
        for k in range(self.order + 1):
            out.append(sum((comb(k, j) * c ** (k - j) * self.values[j]
                            for j in range(k + 1)), Fraction(0)))
        return MomentSequence(tuple(out))


def uniform_01_moments(order: int) -> MomentSequence:
    """Moments of the uniform measure on [0,1]: M_k = 1/(k+1)."""
    return MomentSequence(tuple(Fraction(1, k + 1) for k in range(order + 1)))


# -- counting and hat measures -----------------------------------------------


def counting_measure(sig: Signature) -> DiscreteMeasure:
    """The rescaled empirical measure of the shifted coordinates.

    Series A puts mass 1/N at (e_i+N-i)/N; series B, C, D put mass 1/(2N)
    at both (e_i+2N-i)/(2N) and (i-e_i)/(2N).
    """
    n = sig.rank
    e = sig.entries
    if sig.series == "A":
        return DiscreteMeasure.from_atoms(
            (Fraction(e[i - 1] + n - i, n), Fraction(1, n)) for i in range(1, n + 1))
    atoms = []
    for i in range(1, n + 1):
        atoms.append((Fraction(e[i - 1] + 2 * n - i, 2 * n), Fraction(1, 2 * n)))
        atoms.append((Fraction(i - e[i - 1], 2 * n), Fraction(1, 2 * n)))
    return DiscreteMeasure.from_atoms(atoms)


def hat_measure(sig: Signature) -> DiscreteMeasure:
    """Origin-symmetric recentering of the B/C/D counting measures.

    Atom positions are +-(e_i + s - i)/(2N) with the series rho-shift
    s = N+1/2 (B), N+1 (C), N (D); all odd moments vanish exactly.
    """
    if sig.series == "A":
        raise ValidationError("hat measures exist for series B, C, D only")
    n = sig.rank
    shift = {"B": Fraction(2 * n + 1, 2), "C": Fraction(n + 1), "D": Fraction(n)}[sig.series]
    atoms = []
    for i in range(1, n + 1):
        p = (Fraction(sig.entries[i - 1]) + shift - i) / (2 * n)
        atoms.append((p, Fraction(1, 2 * n)))
        atoms.append((-p, Fraction(1, 2 * n)))
    return DiscreteMeasure.from_atoms(atoms)


# -- Perelomov-Popov measures --------------------------------------------------


def pp_measure(sig: Signature) -> DiscreteMeasure:
    """Dimension-ratio weighted measure whose moments carry the Casimir data.

    Shift weights are signed Weyl-polynomial values: they vanish on every
    inner wall (matching the relaxed zero convention) and, on the series-B
    reflection wall, carry the negative sign that cancels the standing axis
    atom; the accumulated measure is a probability measure for every
    signature.
    """
    from .signatures import dim_polynomial

    n = sig.rank
    e = sig.entries
    series = sig.series
    dim = weyl_dimension(sig)
    acc: dict[Fraction, Fraction] = {}

    def add(pos: Fraction, weight: Fraction) -> None:
        acc[pos] = acc.get(pos, Fraction(0)) + weight

    def ratio(delta_index: int, delta: int) -> Fraction:
        return Fraction(dim_polynomial(series, sig.shifted(delta_index, delta)), dim)

    if series == "A":
        for i in range(1, n + 1):
            add(Fraction(e[i - 1] + n - i, n), ratio(i - 1, -1) / n)
    elif series == "B":
        denom = 2 * n + 1
        for i in range(1, n + 1):
            add(Fraction(e[i - 1] + 2 * n - i, denom), ratio(i - 1, -1) / denom)
            add(Fraction(i - 1 - e[i - 1], denom), ratio(i - 1, +1) / denom)
        add(Fraction(n, denom), Fraction(1, denom))
    elif series == "C":
        for i in range(1, n + 1):
            add(Fraction(e[i - 1] + 2 * n + 1 - i, 2 * n), ratio(i - 1, -1) / (2 * n))
            add(Fraction(i - 1 - e[i - 1], 2 * n), ratio(i - 1, +1) / (2 * n))
    else:  # series D
        for i in range(1, n + 1):
            add(Fraction(e[i - 1] + 2 * n - 1 - i, 2 * n), ratio(i - 1, -1) / (2 * n))
            add(Fraction(i - 1 - e[i - 1], 2 * n), ratio(i - 1, +1) / (2 * n))
    return DiscreteMeasure.from_atoms(acc.items())


def pp_measure_product_form(sig: Signature) -> DiscreteMeasure:
    """Series-A closed product form of the dimension-ratio weights.

    Weight of the atom at (e_i+N-i)/N is prod_{j != i} (a_i-a_j-1)/(a_i-a_j)
    with a_i = e_i - i; must agree with pp_measure atom by atom.
    """
    if sig.series != "A":
        raise ValidationError("product form is series A only")
    n = sig.rank
    a = [sig.entries[i] - (i + 1) for i in range(n)]
    atoms = []
    for i in range(n):
        w = Fraction(1, n)
        for j in range(n):
            if j != i:
                w *= Fraction(a[i] - a[j] - 1, a[i] - a[j])
        atoms.append((Fraction(sig.entries[i] + n - (i + 1), n), w))
    return DiscreteMeasure.from_atoms(atoms)


def pp_measure_unnormalized_positions(sig: Signature) -> DiscreteMeasure:
    """Series-A pushforward of the PP measure under x -> N*x (atoms at e_i+N-i)."""
    if sig.series != "A":
        raise ValidationError("unnormalized PP positions are series A only")
    return pp_measure(sig).dilate(sig.rank)


def casimir_value_a(p: int, sig: Signature) -> Fraction:
    """Scalar by which the p-th trace-power central element acts in series A.

    Computed by the explicit sum over i of prod_{j!=i}[(a_i-a_j-1)/(a_i-a_j)]
    times (e_i+N-i)^p with a_i = e_i - i; ties to the PP measure through
    C_p = N^{p+1} * M_p.
    """
    if sig.series != "A":
        raise ValidationError("the explicit Casimir sum is series A only; "
                              "use n_hat**(p+1) * M_p(pp_measure) otherwise")
    if p < 0:
        raise ValidationError("p must be >= 0")
    n = sig.rank
    a = [sig.entries[i] - (i + 1) for i in range(n)]
    total = Fraction(0)
    for i in range(n):
        w = Fraction(1)
        for j in range(n):
            if j != i:
                w *= Fraction(a[i] - a[j] - 1, a[i] - a[j])
        total += w * Fraction(sig.entries[i] + n - (i + 1)) ** p
    return total


# -- Kerov transition measures --------------------------------------------------


def young_diagram_corners(rows: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Interlacing corner coordinates of a Young diagram, rotated convention.

    Returns (minima, maxima): x = i - j over addable cells (i, j) gives the
    minima, over removable cells the maxima; the empty diagram has the single
    minimum 0.
    """
    rows = [int(r) for r in rows if int(r) > 0]
    if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
        raise ValidationError("row lengths must be weakly decreasing")
    if any(r < 0 for r in rows):
        raise ValidationError("row lengths must be nonnegative")
    minima = []
    maxima = []
    nrows = len(rows)
    for i in range(1, nrows + 1):
        if i == 1 or rows[i - 2] > rows[i - 1]:
            minima.append(i - (rows[i - 1] + 1))
        if i == nrows or rows[i - 1] > rows[i]:
            maxima.append(i - rows[i - 1])
    minima.append(nrows)  # the new-row corner (nrows+1) - (0+1)
    return tuple(sorted(minima)), tuple(sorted(maxima))


def kerov_transition_measure(minima: Sequence[int], maxima: Sequence[int]) -> DiscreteMeasure:
    """Atomic measure at the minima with corner cross-ratio weights.

    Requires strict interlacing x_1 < y_1 < x_2 < ... < y_{k-1} < x_k; the
    weights always sum to one exactly.
    """
    x = [int(v) for v in minima]
    y = [int(v) for v in maxima]
    if len(x) != len(y) + 1:
        raise ValidationError("need one more minimum than maxima")
    merged = []
    for i, xv in enumerate(x):
        merged.append(xv)
        if i < len(y):
            merged.append(y[i])
    if any(merged[i] >= merged[i + 1] for i in range(len(merged) - 1)):
        raise ValidationError("corners must interlace strictly")
    atoms = []
    for i, xi in enumerate(x):
        w = Fraction(1)
        for yj in y:
            w *= xi - yj
        for j, xj in enumerate(x):
            if j != i:
                w /= xi - xj
        atoms.append((Fraction(xi), w))
    return DiscreteMeasure.from_atoms(atoms)


def kerov_measure_of_diagram(rows: Sequence[int]) -> DiscreteMeasure:
    minima, maxima = young_diagram_corners(rows)
    return kerov_transition_measure(minima, maxima)

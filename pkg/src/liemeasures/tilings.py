"""Strips of the triangular lattice, their rhombus tilings, and exact samplers.

A tiling of the strip is encoded by the columns of positions of its
horizontal rhombi: column x carries x positions, and consecutive columns
interlace.  Plain strips (series A) use integer positions p_i = e_i + x - i.
Symmetric strips store positions *doubled* and centered at the axis, so
both parities stay integral: odd columns hold even doubled positions, even
columns odd ones.  Strong symmetry pins the middle position of every odd
column to the axis; weak symmetry leaves it free.  These two modes encode
the symplectic and orthogonal branching chains respectively.

Uniform sampling goes column by column: the next column is drawn with
probability (completions below it)/(completions below the current one).
For plain strips the completion count is the Weyl dimension, and the next
column is drawn entry by entry through exact Vandermonde partial sums; for
symmetric strips completions are memoized big-integer counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .errors import SizeGuardError, ValidationError
from .rng import ExactRandom
from .signatures import Signature

Row = tuple[int, ...]

SYMMETRIC_WIDTH_GUARD = 13


# -- plain (series A) strips ---------------------------------------------------


def row_from_signature_a(sig: Signature) -> Row:
    n = sig.rank
    return tuple(sig.entries[i] + n - (i + 1) for i in range(n))


def signature_from_row_a(row: Row) -> Signature:
    n = len(row)
    return Signature.make("A", tuple(row[i] - (n - (i + 1)) for i in range(n)))


def completions_a(row: Row) -> int:
    """Number of interlacing chains below the row: the Weyl dimension."""
    n = len(row)
    num = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= row[i] - row[j]
    den = 1
    for i in range(1, n):
        den *= factorial(i)
    q, r = divmod(num, den)
    if r:
        raise ValidationError("invalid strictly decreasing row")
    return q


def interlacing_rows_a(row: Row):
    """All next columns: one position strictly inside each consecutive gap,
    where 'inside' means p_{i+1} <= q_i <= p_i - 1."""
    boxes = [range(row[i + 1], row[i]) for i in range(len(row) - 1)]
    for combo in product(*boxes):
        yield tuple(combo)


def _power_sums_range(lo: int, hi: int, degree: int) -> list[int]:
    """[sum_{a=lo}^{hi-1} a^j for j = 0..degree]."""
    out = [0] * (degree + 1)
    for a in range(lo, hi):
        p = 1
        for j in range(degree + 1):
            out[j] += p
            p *= a
    return out


class _BareissState:
    """Fraction-free elimination shared by one column transition.

    Pivot rows are appended one per processed gap; every later row is kept
    reduced in lockstep through the same Bareiss steps, so all divisions
    are exact and entries stay the size of minors."""

    def __init__(self, width: int):
        self.width = width
        self.pivot_rows: list[list[int]] = []
        self.divisors: list[int] = [1]  # d_{-1}, d_0, d_1, ...

    def reduce_step(self, row: list[int], step: int) -> list[int]:
        p = self.pivot_rows[step]
        d_prev = self.divisors[step]
        pk = p[step]
        rk = row[step]
        return [(pk * row[c] - rk * p[c]) // d_prev for c in range(self.width)]

    def reduce_full(self, row: list[int]) -> list[int]:
        for s in range(len(self.pivot_rows)):
            row = self.reduce_step(row, s)
        return row

    def push_pivot(self, reduced_row: list[int]) -> None:
        step = len(self.pivot_rows)
        piv = reduced_row[step]
        if piv == 0:
            raise ValidationError("zero pivot in transition elimination")
        self.pivot_rows.append(reduced_row)
        self.divisors.append(piv)


def _kernel_vector(rows: list[list[int]]) -> list[Fraction]:
    """Kernel of an r x (r+1) integer matrix of full row rank."""
    r = len(rows)
    a = [row[:] for row in rows]
    # fraction-free echelon with row swaps
    d_prev = 1
    for col in range(r):
        piv = None
        for rr in range(col, r):
            if a[rr][col] != 0:
                piv = rr
                break
        if piv is None:
            raise ValidationError("rank-deficient transition block")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        for rr in range(col + 1, r):
            a[rr] = [(a[col][col] * a[rr][c] - a[rr][col] * a[col][c]) // d_prev
                     for c in range(r + 1)]
        d_prev = a[col][col]
    v = [Fraction(0)] * (r + 1)
    v[r] = Fraction(1)
    for row_i in range(r - 1, -1, -1):
        s = sum((Fraction(a[row_i][c]) * v[c] for c in range(row_i + 1, r + 1)),
                Fraction(0))
        v[row_i] = -s / a[row_i][row_i]
    lcm = 1
    for x in v:
        g = _gcd(lcm, x.denominator)
        lcm = lcm // g * x.denominator
    return [x * lcm for x in v]


def sample_next_row_a(row: Row, rng: ExactRandom) -> Row:
    """Draw the next column with probability dim(next)/dim(current), exactly.

    Positions are chosen gap by gap; the conditional weight of a candidate
    is the Vandermonde sum over the remaining gaps, read off from a kernel
    vector of the partially eliminated gap-sum matrix.  All arithmetic is
    integer (Bareiss), all draws are exact threshold comparisons.
    """
    k = len(row)
    if k == 1:
        raise ValidationError("column 1 has no successor")
    m = k - 1
    if m == 1:
        lo, hi = row[1], row[0]
        return (lo + rng.randbelow(hi - lo),)
    sums = [_power_sums_range(row[i + 1], row[i], m - 1) for i in range(m)]
    state = _BareissState(m)
    reduced_sums = [r[:] for r in sums]
    chosen: list[int] = []
    for i in range(m):
        lo, hi = row[i + 1], row[i]
        if hi - lo == 1:
            value = lo
        else:
            r = m - 1 - i  # remaining sum rows
            if r == 0:
                kern = [Fraction(1)]
            else:
                block = [reduced_sums[j][i:] for j in range(i + 1, m)]
                kern = _kernel_vector(block)  # signed maximal minors, one scale
            weights = []
            for a_val in range(lo, hi):
                cand = state.reduce_full(_powers_of(a_val, m))
                weights.append(sum(cand[i + j] * kern[j] for j in range(r + 1)))
            total = sum(weights)
            if total < 0:
                weights = [-w for w in weights]
            if any(w < 0 for w in weights):
                raise ValidationError("transition weights must be positive")
            denom = 1
            for w in weights:
                if isinstance(w, Fraction):
                    g = _gcd(denom, w.denominator)
                    denom = denom // g * w.denominator
            int_w = [int(w * denom) for w in weights]
            value = lo + rng.choose_weighted(int_w)
        chosen.append(value)
        pivot_row = state.reduce_full(_powers_of(value, m))
        state.push_pivot(pivot_row)
        for j in range(i + 1, m):
            reduced_sums[j] = state.reduce_step(reduced_sums[j], i)
    return tuple(chosen)


def _powers_of(a: int, m: int) -> list[int]:
    out = [1]
    for _ in range(m - 1):
        out.append(out[-1] * a)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- symmetric strips ------------------------------------------------------------


def boundary_row_symmetric(sig: Signature) -> Row:
    """Doubled, centered positions of the strip boundary encoding *sig*.

    Sp(2N) spans width 2N+1 (strong mode), SO(2N+1) width 2N and SO(2N)
    width 2N-1 (weak mode)."""
    n = sig.rank
    e = sig.entries
    if sig.series == "C":
        pos = [2 * e[i] + 2 * (n + 1 - (i + 1)) for i in range(n)]
        return tuple(pos + [0] + [-p for p in reversed(pos)])
    if sig.series == "B":
        pos = [2 * e[i] + 2 * (n - (i + 1)) + 1 for i in range(n)]
        return tuple(pos + [-p for p in reversed(pos)])
    if sig.series == "D":
        pos = [2 * e[i] + 2 * (n - (i + 1)) for i in range(n - 1)]
        return tuple(pos + [2 * e[n - 1]] + [-p for p in reversed(pos)])
    raise ValidationError("symmetric strips encode series B, C, D")


def read_signature_symmetric(row: Row, series: str) -> Signature:
    """Signature encoded by a symmetric row at its read-off column."""
    c = len(row)
    if series == "C":
        if c % 2 == 0:
            raise ValidationError("symplectic read-off columns are odd")
        n = (c - 1) // 2
        if n == 0:
            raise ValidationError("column 1 encodes the trivial chain only")
        ent = tuple((row[i] - 2 * (n - i)) // 2 for i in range(n))
        return Signature.make("C", ent)
    if series == "B":
        if c % 2 == 1:
            raise ValidationError("odd-orthogonal read-off columns are even")
        n = c // 2
        ent = tuple((row[i] - 2 * (n - 1 - i) - 1) // 2 for i in range(n))
        return Signature.make("B", ent)
    if series == "D":
        if c % 2 == 0:
            raise ValidationError("even-orthogonal read-off columns are odd")
        n = (c + 1) // 2
        ent = tuple((row[i] - 2 * (n - 1 - i)) // 2 for i in range(n - 1)) \
            + (row[n - 1] // 2,)
        return Signature.make("D", ent)
    raise ValidationError("symmetric strips encode series B, C, D")


def read_off_column(series: str, rank: int) -> int:
    return {"A": rank, "B": 2 * rank, "C": 2 * rank + 1, "D": 2 * rank - 1}[series]


def _is_symmetric_row(row: Row) -> bool:
    c = len(row)
    return all(row[i] == -row[c - 1 - i] for i in range(c))


def next_symmetric_rows(row: Row, mode: str) -> list[Row]:
    """All admissible next columns of a strongly or weakly symmetric tiling."""
    if mode not in ("strong", "weak"):
        raise ValidationError(f"unknown symmetry mode {mode!r}")
    c = len(row)
    m = c - 1
    if m == 0:
        return []
    half = m // 2
    # candidate values per free slot: opposite parity, strictly inside the gap
    def slot_values(i: int) -> list[int]:
        # first value > lo with the new column's parity (m+1 mod 2)
        lo, hi = row[i + 1], row[i]
        start = lo + 1 + ((lo + m) % 2)
        return list(range(start, hi, 2))

    free = [slot_values(i) for i in range(half)]
    results: list[Row] = []
    if m % 2 == 1:
        mid = half  # 0-based middle index
        if mode == "strong":
            mids = [0]
        else:
            mids = slot_values(mid)
        for firsts in product(*free):
            for mv in mids:
                if half and not firsts[half - 1] > mv:
                    continue
                cand = tuple(firsts) + (mv,) + tuple(-x for x in reversed(firsts))
                if _row_admissible(row, cand):
                    results.append(cand)
    else:
        for firsts in product(*free):
            if half and firsts[half - 1] <= 0:
                continue
            cand = tuple(firsts) + tuple(-x for x in reversed(firsts))
            if _row_admissible(row, cand):
                results.append(cand)
    return results


def _row_admissible(row: Row, cand: Row) -> bool:
    if any(cand[i] <= cand[i + 1] for i in range(len(cand) - 1)):
        return False
    return all(row[i + 1] < cand[i] < row[i] for i in range(len(cand)))


@lru_cache(maxsize=None)
def _completions_symmetric(row: Row, mode: str) -> int:
    if len(row) == 1:
        return 1
    return sum(_completions_symmetric(nxt, mode)
               for nxt in next_symmetric_rows(row, mode))


@lru_cache(maxsize=None)
def _transition_table_symmetric(row: Row, mode: str
                                ) -> tuple[tuple[Row, ...], tuple[int, ...]]:
    """Next rows and their completion weights, cached per row."""
    nxts = tuple(next_symmetric_rows(row, mode))
    weights = tuple(_completions_symmetric(n, mode) for n in nxts)
    return nxts, weights


def next_row_distribution_a(row: Row) -> list[tuple[Row, Fraction]]:
    """Exact one-step law of the plain-strip chain (dimension ratios)."""
    total = completions_a(row)
    return [(r, Fraction(completions_a(r), total)) for r in interlacing_rows_a(row)]


def next_row_distribution_symmetric(row: Row, mode: str) -> list[tuple[Row, Fraction]]:
    """Exact one-step law of the symmetric-strip chain (completion ratios)."""
    nxts, weights = _transition_table_symmetric(row, mode)
    total = sum(weights)
    return [(r, Fraction(w, total)) for r, w in zip(nxts, weights)]


def _mirror_except_middle(row: Row) -> bool:
    c = len(row)
    return all(row[i] == -row[c - 1 - i] for i in range(c // 2))


def completions_symmetric(row: Row, mode: str) -> int:
    if len(row) > SYMMETRIC_WIDTH_GUARD:
        raise SizeGuardError(
            f"symmetric strips are limited to width {SYMMETRIC_WIDTH_GUARD}")
    if not _mirror_except_middle(row):
        raise ValidationError("row is not symmetric")
    if mode == "strong" and len(row) % 2 == 1 and row[len(row) // 2] != 0:
        raise ValidationError("strong symmetry requires a pinned middle")
    return _completions_symmetric(row, mode)


# -- chains, sampling, heights ------------------------------------------------------


@dataclass(frozen=True)
class InterlacingChain:
    """Columns of one tiling, from the boundary down to column 1.

    ``kind`` is 'plain' for series-A strips (integer positions) or
    'strong'/'weak' for symmetric strips (doubled positions)."""

    kind: str
    series: str
    rows: tuple[Row, ...]

    def row_at_column(self, column: int) -> Row:
        for r in self.rows:
            if len(r) == column:
                return r
        raise ValidationError(f"no column {column} in this chain")

    @property
    def width(self) -> int:
        return len(self.rows[0])

    def positions(self, column: int) -> tuple[Fraction, ...]:
        row = self.row_at_column(column)
        if self.kind == "plain":
            return tuple(Fraction(p) for p in row)
        return tuple(Fraction(p, 2) for p in row)

    def validate(self) -> None:
        for upper, lower in zip(self.rows, self.rows[1:]):
            if len(lower) != len(upper) - 1:
                raise ValidationError("columns must shrink by one")
            if self.kind == "plain":
                ok = all(upper[i + 1] <= lower[i] < upper[i]
                         for i in range(len(lower)))
            else:
                ok = all(upper[i + 1] < lower[i] < upper[i]
                         for i in range(len(lower)))
            if not ok:
                raise ValidationError("interlacing violated")
            if self.kind in ("strong", "weak"):
                c = len(lower)
                if not _mirror_except_middle(lower):
                    raise ValidationError("symmetry violated")
                if self.kind == "strong" and c % 2 == 1 and lower[c // 2] != 0:
                    raise ValidationError("strong symmetry requires a pinned middle")


@dataclass(frozen=True)
class HeightFunctionSample:
    """Step function y -> number of horizontal rhombi below y in one column."""

    column: int
    positions: tuple[Fraction, ...]  # ascending

    def value(self, y) -> int:
        y = Fraction(y)
        return sum(1 for p in self.positions if p < y)

    @property
    def total(self) -> int:
        return len(self.positions)


def height_function(chain: InterlacingChain, column: int) -> HeightFunctionSample:
    if not 1 <= column <= chain.width:
        raise ValidationError("column out of range")
    pos = tuple(sorted(chain.positions(column)))
    return HeightFunctionSample(column, pos)


def sample_strip(boundary: Row, mode: str, rng: ExactRandom,
                 stop_column: int = 1) -> list[Row]:
    """Uniform tiling below a fixed boundary row, drawn column by column."""
    rows = [tuple(boundary)]
    if mode == "plain":
        while len(rows[-1]) > max(stop_column, 1):
            rows.append(sample_next_row_a(rows[-1], rng))
        return rows
    if len(boundary) > SYMMETRIC_WIDTH_GUARD:
        raise SizeGuardError(
            f"symmetric strips are limited to width {SYMMETRIC_WIDTH_GUARD}")
    while len(rows[-1]) > max(stop_column, 1):
        nxts, weights = _transition_table_symmetric(rows[-1], mode)
        rows.append(nxts[rng.choose_weighted(weights)])
    return rows


def sample_tiling(sig: Signature, symmetry: str, seed: int,
                  stop_column: int = 1) -> InterlacingChain:
    """Exact uniform random tiling of the domain encoded by a signature.

    Series A uses ``symmetry='none'``; Sp requires 'strong', SO 'weak',
    matching the lattice identification of the branching chains.
    """
    rng = ExactRandom(seed)
    if sig.series == "A":
        if symmetry != "none":
            raise ValidationError("series A tilings are plain strips")
        rows = sample_strip(row_from_signature_a(sig), "plain", rng, stop_column)
        return InterlacingChain("plain", "A", tuple(rows))
    expected = "strong" if sig.series == "C" else "weak"
    if symmetry != expected:
        raise ValidationError(
            f"series {sig.series} corresponds to {expected}ly symmetric tilings")
    boundary = boundary_row_symmetric(sig)
    rows = sample_strip(boundary, symmetry, rng, stop_column)
    return InterlacingChain(symmetry, sig.series, tuple(rows))

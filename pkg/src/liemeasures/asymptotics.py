"""One-variable normalized characters, their large-rank asymptotics, and
the semiclassical matrix-integral limit.

The unitary-series value at (x, 1^{N-1}) is a finite residue sum

    (N-1)!/(x-1)^{N-1} * sum_i x^{mu_i} / prod_{j != i} (mu_i - mu_j)

with mu_i = e_i + N - i strictly decreasing, so no confluent residues
occur; at rational x the value is an exact rational.  The other series
reduce to this one by explicit signature surgeries; the even-orthogonal
series with a nonzero last entry needs one exact derivative of the sum.

High-precision evaluation (irrational x) tracks the catastrophic
cancellation of the alternating sum and raises the working precision until
at least 64 significant bits survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

import mpmath

from .errors import ValidationError
from .signatures import Signature

DEFAULT_PRECISION_BITS = 256
MIN_SIGNIFICANT_BITS = 64


def _mu_coordinates(entries: tuple[int, ...]) -> list[int]:
    n = len(entries)
    return [entries[i] + n - (i + 1) for i in range(n)]


def _residue_sum_and_derivative(entries: tuple[int, ...], x: Fraction
                                ) -> tuple[Fraction, Fraction]:
    """Value and d/dx of the normalized one-variable unitary character."""
    n = len(entries)
    mus = _mu_coordinates(entries)
    if x == 0 and min(mus) < 0:
        raise ValidationError("negative exponents need x != 0")
    c = Fraction(factorial(n - 1))
    pref = c / (x - 1) ** (n - 1)
    dpref = -c * (n - 1) / (x - 1) ** n
    s = Fraction(0)
    ds = Fraction(0)
    for i, mu in enumerate(mus):
        d = Fraction(1)
        for j, mu2 in enumerate(mus):
            if j != i:
                d *= mu - mu2
        term = x ** mu / d
        s += term
        ds += (mu * x ** (mu - 1)) / d
    return pref * s, dpref * s + pref * ds


def normalized_schur_one_var(sig: Signature, x) -> Fraction:
    """s_lambda(x, 1^{N-1}) / s_lambda(1^N) at exact rational x."""
    if sig.series != "A":
        raise ValidationError("this entry point is for the unitary series")
    x = Fraction(x)
    if x == 1:
        return Fraction(1)
    val, _ = _residue_sum_and_derivative(sig.entries, x)
    return val


def normalized_char_one_var(sig: Signature, x) -> Fraction:
    """Normalized character at (x, 1^{N-1}) for series B, C, D, via the
    unitary reductions; exact at rational x."""
    x = Fraction(x)
    series = sig.series
    e = sig.entries
    n = sig.rank
    if series == "A":
        return normalized_schur_one_var(sig, x)
    if x == 1:
        return Fraction(1)
    if series == "C":
        nu = tuple(v + 1 for v in e) + tuple(-v for v in reversed(e))
        val, _ = _residue_sum_and_derivative(nu, x)
        return Fraction(2) / (x + 1) * val
    if series == "B":
        nu = e + tuple(-v for v in reversed(e))
        val, _ = _residue_sum_and_derivative(nu, x)
        return val
    # series D
    if n == 1:
        return x ** e[0]
    if e[-1] == 0:
        nu = e[:-1] + (0,) + tuple(-v for v in reversed(e[:-1]))
        val, _ = _residue_sum_and_derivative(nu, x)
        return val
    a = abs(e[-1])
    nu = e[:-1] + (a, 1 - a) + tuple(1 - v for v in reversed(e[:-1]))
    val, dval = _residue_sum_and_derivative(nu, x)
    if x == 0:
        raise ValidationError("the derivative reduction needs x != 0")
    return val + (1 - 1 / x) * (x * dval - n * val) / (2 * n - 1)


def asymptotic_log_character(sig: Signature, x,
                             precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """(1/N-hat) log of the normalized one-variable character.

    The character value is computed exactly first, so the only rounding is
    in the final logarithm."""
    val = normalized_char_one_var(sig, Fraction(x))
    if val <= 0:
        raise ValidationError("non-positive character value; cannot take log")
    with mpmath.workprec(precision_bits):
        lg = mpmath.log(mpmath.mpf(val.numerator) / mpmath.mpf(val.denominator))
        return lg / sig.system.n_hat


def h_series_value(h_body, x, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """Truncated-sum value of an H-series at real x (series in x-1)."""
    v = Fraction(x) - 1
    exact = h_body.evaluate(v)
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(exact.numerator) / mpmath.mpf(exact.denominator)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: float
    target: float
    abs_error: float


def log_character_table(family: Callable[[int], Signature], x,
                        target, ns: Sequence[int],
                        precision_bits: int = DEFAULT_PRECISION_BITS
                        ) -> list[ConvergenceRow]:
    """Gap between the finite-rank normalized log-character and a target."""
    rows = []
    with mpmath.workprec(precision_bits):
        t = mpmath.mpf(target) if not isinstance(target, Fraction) else \
            mpmath.mpf(target.numerator) / mpmath.mpf(target.denominator)
        for n in ns:
            v = asymptotic_log_character(family(n), x, precision_bits)
            rows.append(ConvergenceRow(n, float(v), float(t), float(abs(v - t))))
    return rows


# -- semiclassical matrix-integral limit -------------------------------------------


def _hciz_target_n2(a: tuple, b: tuple, prec: int) -> mpmath.mpf:
    a1, a2 = [mpmath.mpf(str(v)) for v in a]
    b1, b2 = [mpmath.mpf(str(v)) for v in b]
    num = mpmath.e ** (a1 * b1 + a2 * b2) - mpmath.e ** (a1 * b2 + a2 * b1)
    return num / ((a1 - a2) * (b1 - b2))


def hciz_semiclassical(a: tuple, b: tuple, deltas: Sequence[Fraction],
                       precision_bits: int = DEFAULT_PRECISION_BITS) -> list[dict]:
    """Two-point semiclassical limit of normalized characters.

    For each delta, evaluates the two-variable normalized character at
    lambda_i = floor(a_i/delta), x_i = exp(delta*b_i) and compares against
    the closed-form rank-two matrix integral; precision is raised until the
    alternating numerator keeps 64 significant bits."""
    if len(a) != 2 or len(b) != 2:
        raise ValidationError("the semiclassical check is rank 2 only")
    if not (Fraction(a[0]) > Fraction(a[1]) and Fraction(b[0]) > Fraction(b[1])):
        raise ValidationError("need a1 > a2 and b1 > b2")
    rows = []
    for delta in deltas:
        delta = Fraction(delta)
        if delta <= 0:
            raise ValidationError("delta must be positive")
        lam = tuple(int(Fraction(ai) / delta // 1) for ai in a)
        mu1, mu2 = lam[0] + 1, lam[1]
        dim = mu1 - mu2
        prec = precision_bits
        while True:
            with mpmath.workprec(prec):
                x1 = mpmath.e ** (mpmath.mpf(delta.numerator) / delta.denominator
                                  * mpmath.mpf(str(b[0])))
                x2 = mpmath.e ** (mpmath.mpf(delta.numerator) / delta.denominator
                                  * mpmath.mpf(str(b[1])))
                t1 = x1 ** mu1 * x2 ** mu2
                t2 = x1 ** mu2 * x2 ** mu1
                num = t1 - t2
                den = (x1 - x2) * dim
                if num == 0 or den == 0:
                    prec *= 2
                    continue
                lost = max(abs(t1), abs(t2)) / abs(num)
                if mpmath.log(lost, 2) > prec - MIN_SIGNIFICANT_BITS:
                    prec *= 2
                    continue
                value = num / den
                target = _hciz_target_n2(a, b, prec)
                rows.append({"delta": delta, "value": value, "target": target,
                             "abs_error": abs(value - target),
                             "rel_error": abs(value - target) / abs(target),
                             "precision_bits": prec})
                break
    return rows


def multivariate_split_check(family: Callable[[int], Signature],
                             points: Sequence[Fraction], ns: Sequence[int],
                             precision_bits: int = DEFAULT_PRECISION_BITS
                             ) -> list[dict]:
    """Gap between the k-point normalized log-character and the sum of
    one-point values, over a grid of ranks; needs symbolic characters."""
    from .characters import character_polynomial

    if len(points) > 3:
        raise ValidationError("split check supports at most 3 points")
    pts = [Fraction(p) for p in points]
    rows = []
    for n in ns:
        sig = family(n)
        if len(pts) >= sig.rank:
            raise ValidationError("need k < N for the split check")
        chi = character_polynomial(sig)
        dim = chi.evaluate_ones()
        full = chi.evaluate(list(pts) + [Fraction(1)] * (sig.rank - len(pts))) / dim
        if full <= 0:
            raise ValidationError("non-positive character value")
        with mpmath.workprec(precision_bits):
            lhs = mpmath.log(mpmath.mpf(full.numerator) / mpmath.mpf(full.denominator)) / n
            rhs = mpmath.mpf(0)
            for p in pts:
                v = normalized_char_one_var(sig, p)
                rhs += mpmath.log(mpmath.mpf(v.numerator) / mpmath.mpf(v.denominator)) / n
            rows.append({"n": n, "lhs": lhs, "rhs": rhs,
                         "abs_error": abs(lhs - rhs)})
    return rows

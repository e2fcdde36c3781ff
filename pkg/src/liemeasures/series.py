"""Truncated formal power series over exact rationals.

Every transform in the library is computed inside this engine.  A series
knows its truncation order, the expansion variable it is written in, and
an *effective order*: the highest coefficient index that is still exact
after the operations that produced it (integration gains an order,
differentiation loses one).  All arithmetic is exact; no floats enter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvariantError, ValidationError

#: expansion-variable tags
VAR_Z = "z"
VAR_U = "u_minus_1"
VAR_ZHAT = "z_minus_1"

Rat = Fraction
RatLike = Union[Fraction, int, str]


def _rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class TruncatedSeries:
    """A power series truncated at a fixed order, with exact coefficients.

    ``coeffs[k]`` is the coefficient of ``var**k``; ``len(coeffs) == order+1``.
    ``effective`` marks how many leading coefficients are guaranteed exact
    (indices ``0..effective``).  Operations refuse mismatched variables or
    orders rather than silently coercing.
    """

    __slots__ = ("coeffs", "var", "effective")

    def __init__(self, coeffs: Iterable[RatLike], var: str = VAR_Z,
                 effective: int | None = None):
        cs = tuple(_rat(c) for c in coeffs)
        if not cs:
            raise ValidationError("a series needs at least the constant term")
        self.coeffs = cs
        self.var = var
        eff = len(cs) - 1 if effective is None else min(effective, len(cs) - 1)
        if eff < 0:
            raise ValidationError("effective order must be >= 0")
        self.effective = eff

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int, var: str = VAR_Z) -> "TruncatedSeries":
        return TruncatedSeries([Fraction(0)] * (order + 1), var)

    @staticmethod
    def constant(c: RatLike, order: int, var: str = VAR_Z) -> "TruncatedSeries":
        return TruncatedSeries([_rat(c)] + [Fraction(0)] * order, var)

    @staticmethod
    def one(order: int, var: str = VAR_Z) -> "TruncatedSeries":
        return TruncatedSeries.constant(1, order, var)

    @staticmethod
    def identity(order: int, var: str = VAR_Z) -> "TruncatedSeries":
        """The series of the variable itself."""
        if order < 1:
            raise ValidationError("identity needs order >= 1")
        cs = [Fraction(0)] * (order + 1)
        cs[1] = Fraction(1)
        return TruncatedSeries(cs, var)

    @staticmethod
    def from_coeffs(coeffs: Sequence[RatLike], order: int,
                    var: str = VAR_Z) -> "TruncatedSeries":
        """Pad *coeffs* with zeros up to *order* (the tail is genuinely zero)."""
        cs = [_rat(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValidationError("more coefficients than the order admits")
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return TruncatedSeries(cs, var)

    # -- basic structure ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.var))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries([{head}{tail}], var={self.var!r}, K={self.order})"

    def retag(self, var: str) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, var, self.effective)

    def with_order(self, order: int) -> "TruncatedSeries":
        """Truncate, or pad with zeros without claiming them exact."""
        if order == self.order:
            return self
        if order < self.order:
            return TruncatedSeries(self.coeffs[: order + 1], self.var,
                                   min(self.effective, order))
        cs = self.coeffs + (Fraction(0),) * (order - self.order)
        return TruncatedSeries(cs, self.var, self.effective)

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.var != other.var:
            raise ValidationError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")
        if self.order != other.order:
            raise ValidationError(
                f"order mismatch: {self.order} vs {other.order}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        cs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return TruncatedSeries(cs, self.var,
                               min(self.effective, other.effective))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        cs = tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        return TruncatedSeries(cs, self.var,
                               min(self.effective, other.effective))

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, c: RatLike) -> "TruncatedSeries":
        c = _rat(c)
        return TruncatedSeries((c * a for a in self.coeffs), self.var,
                               self.effective)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product truncated at the common order."""
        self._check_compatible(other)
        K = self.order
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (K + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(0, K + 1 - i):
                bj = b[j]
                if bj != 0:
                    out[i + j] += ai * bj
        return TruncatedSeries(out, self.var,
                               min(self.effective, other.effective))

    def power(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValidationError("negative powers are not series")
        result = TruncatedSeries.one(self.order, self.var)
        result = TruncatedSeries(result.coeffs, self.var, self.effective)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ValidationError("cannot invert a series with zero constant term")
        K = self.order
        inv0 = Fraction(1) / a[0]
        out = [Fraction(0)] * (K + 1)
        out[0] = inv0
        for n in range(1, K + 1):
            s = Fraction(0)
            for i in range(1, n + 1):
                if a[i] != 0:
                    s += a[i] * out[n - i]
            out[n] = -inv0 * s
        return TruncatedSeries(out, self.var, self.effective)

    # -- shifts -------------------------------------------------------------

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by the variable; the order grows by one."""
        cs = (Fraction(0),) + self.coeffs
        eff = min(self.effective + 1, len(cs) - 1)
        return TruncatedSeries(cs, self.var, eff)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by the variable; requires zero constant term."""
        if self.coeffs[0] != 0:
            raise ValidationError("cannot divide by the variable: constant term nonzero")
        return TruncatedSeries(self.coeffs[1:], self.var,
                               max(self.effective - 1, 0))

    # -- composition and reversion ------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner); *inner* must have zero constant term."""
        self._check_compatible(inner)
        if inner.coeffs[0] != 0:
            raise ValidationError("composition needs inner constant term 0")
        K = self.order
        # Horner evaluation from the top coefficient down.
        result = TruncatedSeries.constant(self.coeffs[K], K, self.var)
        for k in range(K - 1, -1, -1):
            result = result * inner
            if self.coeffs[k] != 0:
                result = result + TruncatedSeries.constant(self.coeffs[k], K, self.var)
        return TruncatedSeries(result.coeffs, self.var,
                               min(self.effective, inner.effective))

    def derivative_series(self) -> "TruncatedSeries":
        """Termwise derivative at the same storage order (top coefficient padded)."""
        K = self.order
        cs = [Fraction(k) * self.coeffs[k] for k in range(1, K + 1)]
        cs.append(Fraction(0))
        return TruncatedSeries(cs, self.var, max(self.effective - 1, 0))

    def integral_series(self) -> "TruncatedSeries":
        """Termwise antiderivative with zero constant term, same storage order."""
        K = self.order
        cs = [Fraction(0)] + [self.coeffs[k] / (k + 1) for k in range(0, K)]
        return TruncatedSeries(cs, self.var, min(self.effective + 1, K))

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse by Newton iteration (order doubles per step).

        Requires zero constant term and invertible linear coefficient.
        """
        if self.coeffs[0] != 0:
            raise ValidationError("reversion needs constant term 0")
        if self.coeffs[1] == 0:
            raise ValidationError("reversion needs a nonzero linear coefficient")
        K = self.order
        # g correct through order `good`; refine with g <- g - (s(g) - z)/s'(g).
        g = [Fraction(0), Fraction(1) / self.coeffs[1]] + [Fraction(0)] * (K - 1)
        good = 1
        z = TruncatedSeries.identity(K, self.var)
        ds = self.derivative_series()
        while good < K:
            gs = TruncatedSeries(g, self.var)
            err = self.compose(gs) - z
            corr = err * ds.compose(gs).inverse()
            gs = gs - corr
            g = list(gs.coeffs)
            good = min(2 * good, K)
        return TruncatedSeries(g, self.var, self.effective)

    def reversion_bruteforce(self) -> "TruncatedSeries":
        """Term-by-term compositional inverse; internal oracle for tests."""
        if self.coeffs[0] != 0:
            raise ValidationError("reversion needs constant term 0")
        if self.coeffs[1] == 0:
            raise ValidationError("reversion needs a nonzero linear coefficient")
        K = self.order
        g = [Fraction(0), Fraction(1) / self.coeffs[1]] + [Fraction(0)] * (K - 1)
        for n in range(2, K + 1):
            # [z^n] s(g_<n) is linear in the unknown g_n with slope s_1.
            partial = TruncatedSeries(g, self.var).with_order(K)
            val = self.compose(partial).coeffs[n]
            g[n] = -val / self.coeffs[1]
        return TruncatedSeries(g, self.var, self.effective)

    # -- exp / log -----------------------------------------------------------

    def exp(self) -> "TruncatedSeries":
        """Series exponential; requires zero constant term."""
        if self.coeffs[0] != 0:
            raise ValidationError("exp needs constant term 0")
        K = self.order
        a = self.coeffs
        e = [Fraction(1)] + [Fraction(0)] * K
        for n in range(1, K + 1):
            s = Fraction(0)
            for j in range(1, n + 1):
                if a[j] != 0:
                    s += Fraction(j) * a[j] * e[n - j]
            e[n] = s / n
        return TruncatedSeries(e, self.var, self.effective)

    def log(self) -> "TruncatedSeries":
        """Series logarithm; requires constant term 1."""
        if self.coeffs[0] != 1:
            raise ValidationError("log needs constant term 1")
        K = self.order
        s = self.coeffs
        l = [Fraction(0)] * (K + 1)
        for n in range(1, K + 1):
            acc = Fraction(n) * s[n]
            for j in range(1, n):
                if l[j] != 0 and s[n - j] != 0:
                    acc -= Fraction(j) * l[j] * s[n - j]
            l[n] = acc / n
        return TruncatedSeries(l, self.var, self.effective)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x: RatLike) -> Fraction:
        """Truncated-sum value at an exact point (Horner)."""
        x = _rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


# -- the two substitution series and the variable change ---------------------


def log1p_series(order: int, var: str = VAR_Z) -> TruncatedSeries:
    """log(1 + t) = t - t^2/2 + t^3/3 - ... as a series in *var*."""
    cs = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)]
    return TruncatedSeries(cs, var)


def expm1_series(order: int, var: str = VAR_Z) -> TruncatedSeries:
    """exp(t) - 1 = t + t^2/2! + ... as a series in *var*."""
    f = 1
    cs = [Fraction(0)]
    for k in range(1, order + 1):
        f *= k
        cs.append(Fraction(1, f))
    return TruncatedSeries(cs, var)


def change_variable_log(s: TruncatedSeries, direction: str) -> TruncatedSeries:
    """Move a series between the z and (u-1) charts along z = log(u).

    ``z_to_uMinus1`` substitutes z = log(1+(u-1)); ``uMinus1_to_z``
    substitutes u-1 = e^z - 1.  The two directions are exact inverses
    at truncation order.
    """
    if direction == "z_to_uMinus1":
        if s.var != VAR_Z:
            raise ValidationError(f"expected a z-tagged series, got {s.var!r}")
        inner = log1p_series(s.order, VAR_Z)
        return s.compose(inner).retag(VAR_U)
    if direction == "uMinus1_to_z":
        if s.var != VAR_U:
            raise ValidationError(f"expected a (u-1)-tagged series, got {s.var!r}")
        inner = expm1_series(s.order, VAR_U)
        return s.compose(inner).retag(VAR_Z)
    raise ValidationError(f"unknown direction {direction!r}")


def require_effective(s: TruncatedSeries, needed: int, what: str) -> None:
    """Raise if fewer than *needed* orders of *s* are exact."""
    if s.effective < needed:
        raise ValidationError(
            f"{what} needs effective order {needed}, series has {s.effective}")


def assert_equal_series(a: TruncatedSeries, b: TruncatedSeries, what: str) -> None:
    """Internal exact-identity assertion (raises InvariantError, not ValueError)."""
    if a.var != b.var or a.coeffs != b.coeffs:
        raise InvariantError(f"exact series identity failed: {what}")

"""The transform calculus on moment sequences.

Everything here is a manipulation of truncated exact series: the additive
transform and its quantized deformation, the induced convolutions and
projections, the integrated H-series and the derivative formulas that
recover moments from it, the exponential moment-map and its reflected
variant, and the infinitely divisible family.  The quantized transform
differs from the additive one by the fixed regular series

    1/(1 - e^{-z}) - 1/z = 1/2 + z/12 - z^3/720 + ...

so no Laurent objects are ever needed: every 1/z pole cancels before it
is materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import InvariantError, ValidationError
from .measures import MomentSequence
from .series import (VAR_U, VAR_Z, VAR_ZHAT, TruncatedSeries, change_variable_log,
                     expm1_series, log1p_series)

KINDS = ("free", "quantized")

DEFAULT_ORDER = 12


def r_uniform01(order: int) -> TruncatedSeries:
    """Regular series of 1/(1-e^{-z}) - 1/z, the transform of uniform [0,1]."""
    # (1 - e^{-z})/z has constant term 1; invert, drop the 1, divide by z.
    a = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 2)]
    A = TruncatedSeries(a, VAR_Z)
    return (A.inverse() - TruncatedSeries.one(order + 1, VAR_Z)).shift_down()


@dataclass(frozen=True)
class RSeries:
    """Additive transform of a compactly supported probability measure.

    ``kind == 'free'`` stores the plain transform, ``'quantized'`` the
    deformation obtained by subtracting the uniform-[0,1] transform.
    Both are honest power series in z.
    """

    kind: str
    body: TruncatedSeries

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown transform kind {self.kind!r}")
        if self.body.var != VAR_Z:
            raise ValidationError("an R-series body must be tagged z")

    def as_kind(self, kind: str) -> "RSeries":
        if kind == self.kind:
            return self
        ru = r_uniform01(self.body.order)
        if kind == "quantized":
            return RSeries("quantized", self.body - ru)
        return RSeries("free", self.body + ru)


@dataclass(frozen=True)
class HSeries:
    """Integrated transform H(u), a series in (u-1) vanishing at u=1."""

    body: TruncatedSeries

    def __post_init__(self):
        if self.body.var != VAR_U:
            raise ValidationError("an H-series body must be tagged u_minus_1")
        if self.body.coeffs[0] != 0:
            raise ValidationError("H(1) must be 0")


def _require_probability(m: MomentSequence) -> None:
    if m.values[0] != 1:
        raise ValidationError("expected a probability moment sequence (M_0 = 1)")


def moments_to_r(m: MomentSequence, kind: str = "free") -> RSeries:
    """Build the (quantized) R-series from moments M_0..M_K.

    Inverts S(z) = z + M_1 z^2 + ... compositionally; the result has
    order K-1, which is exactly the information content of K moments.
    """
    _require_probability(m)
    if kind not in KINDS:
        raise ValidationError(f"unknown transform kind {kind!r}")
    K = m.order
    if K < 1:
        raise ValidationError("need at least M_0, M_1")
    g = TruncatedSeries([Fraction(1)] + list(m.values[1:]), VAR_Z)
    s = g.shift_up()                       # z + M_1 z^2 + ... order K+1
    w = s.reversion().shift_down()         # S^{(-1)}(z)/z, constant term 1
    r = (w.inverse() - TruncatedSeries.one(K, VAR_Z)).shift_down()
    if kind == "quantized":
        r = r - r_uniform01(K - 1)
    return RSeries(kind, r)


def r_to_moments(r: RSeries) -> MomentSequence:
    """Exact inverse of moments_to_r: an order-(K-1) body yields M_0..M_K."""
    body = r.body if r.kind == "free" else r.body + r_uniform01(r.body.order)
    one = TruncatedSeries.one(body.order + 1, VAR_Z)
    zr1 = body.shift_up() + one            # z R(z) + 1
    sinv = zr1.inverse().shift_up()        # z/(zR+1) = S^{(-1)}
    s = sinv.reversion()
    if s.coeffs[1] != 1:
        raise InvariantError("moment generating function must start with z")
    return MomentSequence(s.coeffs[1:])


def convolve(kind: str, inputs: Sequence[MomentSequence]) -> MomentSequence:
    """Moment sequence of the (quantized) convolution: transforms add."""
    if not inputs:
        raise ValidationError("convolve needs at least one input")
    order = min(m.order for m in inputs)
    total = None
    for m in inputs:
        body = moments_to_r(m.truncate(order), kind).body
        total = body if total is None else total + body
    return r_to_moments(RSeries(kind, total))


def project(kind: str, alpha, m: MomentSequence) -> MomentSequence:
    """Rank-fraction projection: the (quantized) transform scales by 1/alpha."""
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValidationError("alpha must lie in (0, 1]")
    body = moments_to_r(m, kind).body.scale(Fraction(1) / alpha)
    return r_to_moments(RSeries(kind, body))


# -- H-series and moment recovery ----------------------------------------------


def h_from_moments(m: MomentSequence) -> HSeries:
    """Integrate the transform along log u and add log(log(u)/(u-1)).

    The result is a series in (u-1) with zero constant term; for the
    uniform measure on [0,1] it vanishes identically.
    """
    _require_probability(m)
    K = m.order
    r = moments_to_r(m, "free").body.with_order(K)   # pad; effective stays K-1
    integral = r.integral_series()                   # effective K
    part1 = change_variable_log(integral, "z_to_uMinus1")
    # log(u)/(u-1) = log1p(w)/w with w = u-1, constant term 1.
    lw = log1p_series(K + 1, VAR_U).shift_down()
    corr = lw.log()
    h = part1 + corr
    if h.coeffs[0] != 0:
        raise InvariantError("H(1) != 0")
    return HSeries(h)


def h_hat_from_h(h: HSeries) -> TruncatedSeries:
    """Rewrite 2H(x)+log(x) as a series in (z-1), z = (x+x^{-1})/2.

    Solves the substitution z-1 = (x-1)^2/(2x) coefficient by coefficient
    and then verifies the full residual: an input whose underlying measure
    is not origin-symmetric fails the x <-> 1/x invariance and is rejected.
    """
    K = h.body.order
    g = h.body.scale(2) + log1p_series(K, VAR_U)
    eff = g.effective
    # t(w) = w^2 / (2(1+w)) as a series in w = x-1.
    geom = TruncatedSeries([Fraction((-1) ** k) for k in range(K + 1)], VAR_U)
    t = geom.scale(Fraction(1, 2)).shift_up().shift_up().with_order(K)
    n_hat = eff // 2
    hat = [Fraction(0)] * (K + 1)
    residual = g
    tpow = TruncatedSeries.one(K, VAR_U)
    for j in range(1, n_hat + 1):
        tpow = tpow * t
        c = residual.coeffs[2 * j] * Fraction(2) ** j
        hat[j] = c
        residual = residual - tpow.scale(c)
    for i in range(eff + 1):
        if residual.coeffs[i] != 0:
            raise ValidationError(
                "2H(x)+log(x) is not a function of (x+1/x)/2: "
                "the underlying measure is not origin-symmetric")
    return TruncatedSeries(hat, VAR_ZHAT, effective=n_hat)


_MOMENT_WEIGHT = lambda k, l: Fraction(factorial(k),
                                       factorial(l) * factorial(l + 1) * factorial(k - l))


def moments_from_q(q: TruncatedSeries, mode: str, order: int) -> MomentSequence:
    """Finite derivative sums recovering moments from a one-variable limit profile.

    ``unitary`` takes a series in (u-1) and evaluates, for each k,
    sum_l k!/(l!(l+1)!(k-l)!) d^l/du^l [u^k Q'(u)^{k-l}] at u=1; ``symmetric``
    takes a series in (z-1) and the even-moment variant with the extra
    (z^2-1)^k factor and 2^{-2k} prefactor, odd moments being zero.
    Derivatives act on truncated polynomials, so everything is exact.
    """
    if mode == "unitary":
        if q.var != VAR_U:
            raise ValidationError("unitary mode expects a (u-1)-tagged series")
        if q.effective < order:
            raise ValidationError(
                f"moment order {order} needs effective order {order}, "
                f"series has {q.effective}")
        K = q.order
        if K < order:
            raise ValidationError("storage order too small for requested moments")
        qp = q.derivative_series()
        out = [Fraction(1)]
        for k in range(1, order + 1):
            u_pow = TruncatedSeries.from_coeffs(
                [comb(k, i) for i in range(k + 1)], K, VAR_U)  # (1+w)^k
            total = Fraction(0)
            power = u_pow  # u^k * Q'^0
            # iterate l downward so Q' powers build up once
            terms = [None] * (k + 1)
            terms[k] = power
            acc = u_pow
            for l in range(k - 1, -1, -1):
                acc = acc * qp
                terms[l] = acc
            for l in range(k + 1):
                coeff = _MOMENT_WEIGHT(k, l)
                total += coeff * factorial(l) * terms[l].coeffs[l]
            out.append(total)
        return MomentSequence(tuple(out))

    if mode == "symmetric":
        if q.var != VAR_ZHAT:
            raise ValidationError("symmetric mode expects a (z-1)-tagged series")
        k_max = order // 2
        if q.effective < k_max + 1 and k_max >= 1:
            raise ValidationError(
                f"even moments through {2 * k_max} need effective order {k_max + 1}, "
                f"series has {q.effective}")
        K = q.order
        if K < order:
            raise ValidationError("storage order too small for requested moments")
        qp = q.derivative_series()
        out = [Fraction(1)] + [Fraction(0)] * order
        for k in range(1, k_max + 1):
            # (z^2-1)^k = w^k (w+2)^k
            zf = TruncatedSeries.from_coeffs(
                [comb(k, i) * 2 ** (k - i) for i in range(k + 1)], K, VAR_ZHAT)
            for _ in range(k):
                zf = zf.shift_up().with_order(K)
            terms = [None] * (2 * k + 1)
            terms[2 * k] = zf
            acc = zf
            for l in range(2 * k - 1, -1, -1):
                acc = acc * qp
                terms[l] = acc
            total = Fraction(0)
            for l in range(2 * k + 1):
                coeff = _MOMENT_WEIGHT(2 * k, l)
                total += coeff * factorial(l) * terms[l].coeffs[l]
            out[2 * k] = total / Fraction(4) ** k
        return MomentSequence(tuple(out))

    raise ValidationError(f"unknown mode {mode!r}")


# -- exponential moment maps -----------------------------------------------------


def markov_krein(b: MomentSequence, direction: str = "forward") -> MomentSequence:
    """Exponential bijection between moment lists: exp(sum b_k z^{k+1}) = 1 + sum a_k z^{k+1}.

    ``forward`` maps the density-bounded side to the general side; ``inverse``
    is the series logarithm.  Positivity of the output as a measure is not
    certified here.
    """
    K = b.order
    if direction == "forward":
        B = TruncatedSeries.from_coeffs([0] + list(b.values), K + 1, VAR_Z)
        E = B.exp()
        return MomentSequence(E.coeffs[1:])
    if direction == "inverse":
        A = TruncatedSeries.from_coeffs([1] + list(b.values), K + 1, VAR_Z)
        L = A.log()
        return MomentSequence(L.coeffs[1:])
    raise ValidationError(f"unknown direction {direction!r}")


def q_map(s: MomentSequence) -> MomentSequence:
    """The intertwiner: exp(-sum s_k z^{k+1}) = 1 - sum c_k z^{k+1}.

    Also evaluated through the reflected exponential-map route; the two
    must agree exactly, otherwise an internal invariant is breached.
    """
    _require_probability(s)
    K = s.order
    B = TruncatedSeries.from_coeffs([0] + [-v for v in s.values], K + 1, VAR_Z)
    E = B.exp()
    direct = MomentSequence(tuple(-c for c in E.coeffs[1:]))
    via_mk = markov_krein(s.reflect(), "forward").reflect()
    if direct.values != via_mk.values:
        raise InvariantError("the two routes to the moment map disagree")
    return direct


def q_map_inverse(c: MomentSequence) -> MomentSequence:
    """Inverse of q_map: s from 1 - sum c_k z^{k+1} via the series logarithm."""
    K = c.order
    A = TruncatedSeries.from_coeffs([1] + [-v for v in c.values], K + 1, VAR_Z)
    L = A.log()
    return MomentSequence(tuple(-v for v in L.coeffs[1:]))


# -- infinitely divisible family ---------------------------------------------------


@dataclass(frozen=True)
class InfDivParameters:
    """Sextuple of parameters: four finite measures (as moment lists) on
    the nonnegative half-line plus two nonnegative drift rates.

    ``b_plus``/``b_minus`` record the declared support bounds of the second
    pair; they must satisfy b_plus + b_minus <= 1 and are not re-derived
    from the moments.
    """

    mom_a_plus: MomentSequence
    mom_a_minus: MomentSequence
    mom_b_plus: MomentSequence
    mom_b_minus: MomentSequence
    gamma_plus: Fraction
    gamma_minus: Fraction
    b_plus: Fraction = Fraction(1, 2)
    b_minus: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.gamma_plus < 0 or self.gamma_minus < 0:
            raise ValidationError("drift rates must be nonnegative")
        if self.b_plus < 0 or self.b_minus < 0 or self.b_plus + self.b_minus > 1:
            raise ValidationError("support bounds must satisfy b+ + b- <= 1")

    def scale(self, factor) -> "InfDivParameters":
        factor = Fraction(factor)
        sc = lambda m: MomentSequence(tuple(factor * v for v in m.values))
        return InfDivParameters(sc(self.mom_a_plus), sc(self.mom_a_minus),
                                sc(self.mom_b_plus), sc(self.mom_b_minus),
                                factor * self.gamma_plus, factor * self.gamma_minus,
                                self.b_plus, self.b_minus)


def _shifted_mgf(m: MomentSequence, order: int) -> TruncatedSeries:
    """M(t) = M_1 + M_2 t + M_3 t^2 + ... truncated at *order*."""
    vals = list(m.values[1:])
    if len(vals) < order + 1:
        raise ValidationError(
            f"parameter measure needs moments through {order + 1}, has {m.order}")
    return TruncatedSeries(vals[: order + 1], VAR_Z)


def inf_div_quantized_r(params: InfDivParameters, order: int) -> TruncatedSeries:
    """Assemble the quantized transform of the divisible measure at *order*."""
    eu = expm1_series(order, VAR_Z) + TruncatedSeries.one(order, VAR_Z)
    emu = TruncatedSeries(
        [Fraction((-1) ** k, factorial(k)) for k in range(order + 1)], VAR_Z)
    one = TruncatedSeries.one(order, VAR_Z)
    inner_up = eu - one            # e^u - 1
    inner_up_neg = -inner_up       # 1 - e^u
    inner_dn = emu - one           # e^{-u} - 1
    inner_dn_neg = -inner_dn       # 1 - e^{-u}
    body = eu.scale(params.gamma_plus) - emu.scale(params.gamma_minus)
    body = body + eu * _shifted_mgf(params.mom_b_plus, order).compose(inner_up_neg)
    body = body + eu * _shifted_mgf(params.mom_a_plus, order).compose(inner_up)
    body = body - emu * _shifted_mgf(params.mom_b_minus, order).compose(inner_dn_neg)
    body = body - emu * _shifted_mgf(params.mom_a_minus, order).compose(inner_dn)
    return body


def inf_div_moments(params: InfDivParameters, order: int = DEFAULT_ORDER) -> MomentSequence:
    """Moments of the infinitely divisible measure with the given sextuple."""
    body = inf_div_quantized_r(params, order - 1)
    return r_to_moments(RSeries("quantized", body))


# -- scaling limit and moment-problem diagnostics -----------------------------------


def scaling_limit_check(m: MomentSequence, l_grid: Sequence) -> list[dict]:
    """Coefficientwise gap between the rescaled quantized transform and the limit.

    For each L: coefficients of R^quant_{m*L}(z/L)/L minus those of R_m(z),
    as exact rationals.
    """
    _require_probability(m)
    r_free = moments_to_r(m, "free").body
    rows = []
    for l_val in l_grid:
        L = Fraction(l_val)
        if L <= 0:
            raise ValidationError("scaling parameters must be positive")
        rq = moments_to_r(m.dilate(L), "quantized").body
        errs = tuple(abs(rq.coeffs[j] / L ** (j + 1) - r_free.coeffs[j])
                     for j in range(r_free.order + 1))
        rows.append({"L": L, "errors": errs,
                     "max_abs_error": max(errs)})
    return rows


def hankel_leading_minors(m: MomentSequence, depth: int) -> list[Fraction]:
    """Leading principal minors det[M_{i+j}]_{i,j<=d} for d = 0..depth."""
    if 2 * depth > m.order:
        raise ValidationError("not enough moments for the requested Hankel depth")
    minors = []
    for d in range(depth + 1):
        mat = [[m.values[i + j] for j in range(d + 1)] for i in range(d + 1)]
        minors.append(_det_fraction(mat))
    return minors


def _det_fraction(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = Fraction(1) / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                f = mat[r][col] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return det


def quantized_r_matches_pp_composition(m: MomentSequence) -> bool:
    """Check R^quant_m(z) = R_{Q(m)}(1 - e^{-z}) at the common order (test aid)."""
    rq = moments_to_r(m, "quantized").body
    rpp = moments_to_r(q_map(m), "free").body
    inner = -(TruncatedSeries(
        [Fraction((-1) ** k, factorial(k)) for k in range(rq.order + 1)], VAR_Z)
        - TruncatedSeries.one(rq.order, VAR_Z))
    return rpp.compose(inner).coeffs == rq.coeffs

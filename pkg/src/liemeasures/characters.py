"""Exact symbolic characters at small rank, and the operator calculus on them.

Characters are computed from the alternant formulas as honest Laurent
polynomials: the numerator determinant is expanded over permutations and
divided exactly by the Weyl denominator, factor by factor, with a zero
remainder asserted.  The odd-orthogonal series is handled in a doubled
exponent frame (v = u^{1/2}) so that all intermediate objects stay Laurent.

On top of the characters live the radial differential operators
(1/V) o (sum_i (u_i d/du_i)^k) o V and their companions used for the
dimension-ratio measures, plus the character generating functions whose
derivatives at the all-ones point encode expected moments of random
decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .decomposition import DecompositionMeasure
from .errors import InvariantError, SizeGuardError, ValidationError
from .laurent import LaurentPolynomial, alternant
from .signatures import (RootSystem, Signature, entries_valid, shifted_coordinates,
                         weyl_dimension)

DEFAULT_RANK_BOUND = 4


# -- Weyl denominators, as explicit factor lists -------------------------------


def _z_difference(n: int, i: int, j: int) -> LaurentPolynomial:
    """u_i + u_i^{-1} - u_j - u_j^{-1}."""
    t = {}
    for var, sgn in ((i, 1), (j, -1)):
        for p in (1, -1):
            e = [0] * n
            e[var] = p
            t[tuple(e)] = Fraction(sgn)
    return LaurentPolynomial(n, t)


def _u_minus_uinv(n: int, i: int, power: int = 1) -> LaurentPolynomial:
    e1, e2 = [0] * n, [0] * n
    e1[i] = power
    e2[i] = -power
    return LaurentPolynomial(n, {tuple(e1): Fraction(1), tuple(e2): Fraction(-1)})


def _u_difference(n: int, i: int, j: int) -> LaurentPolynomial:
    e1, e2 = [0] * n, [0] * n
    e1[i] = 1
    e2[j] = 1
    return LaurentPolynomial(n, {tuple(e1): Fraction(1), tuple(e2): Fraction(-1)})


def weyl_denominator_factors(series: str, n: int, doubled: bool = False
                             ) -> list[LaurentPolynomial]:
    """The denominator of the character formula as a list of exact factors.

    For series B the factors are written in the doubled frame v = u^{1/2}
    (set ``doubled=True``); all other series live in the plain frame.
    """
    factors: list[LaurentPolynomial] = []
    if series == "A":
        for i in range(n):
            for j in range(i + 1, n):
                factors.append(_u_difference(n, i, j))
        return factors
    if series == "B":
        if not doubled:
            raise ValidationError("series B denominators live in the doubled frame")
        for i in range(n):
            factors.append(_u_minus_uinv(n, i, 1))
        for i in range(n):
            for j in range(i + 1, n):
                # u_i + u_i^{-1} - u_j - u_j^{-1} in v-frame: exponents doubled
                t = {}
                for var, sgn in ((i, 1), (j, -1)):
                    for p in (2, -2):
                        e = [0] * n
                        e[var] = p
                        t[tuple(e)] = Fraction(sgn)
                factors.append(LaurentPolynomial(n, t))
        return factors
    if series == "C":
        for i in range(n):
            factors.append(_u_minus_uinv(n, i, 1))
    for i in range(n):
        for j in range(i + 1, n):
            factors.append(_z_difference(n, i, j))
    return factors


def weyl_denominator(series: str, n: int, doubled: bool = False) -> LaurentPolynomial:
    v = LaurentPolynomial.constant(n, 1)
    for f in weyl_denominator_factors(series, n, doubled):
        v = v * f
    return v


def _divide_by_factors(p: LaurentPolynomial, factors: Sequence[LaurentPolynomial]
                       ) -> LaurentPolynomial:
    for f in factors:
        p = p.divide_exact(f)
    return p


# -- characters -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _character_cached(series: str, entries: tuple[int, ...]) -> LaurentPolynomial:
    n = len(entries)
    if series == "A":
        mus = [entries[j] + n - (j + 1) for j in range(n)]
        num = alternant(n, [[(m, Fraction(1))] for m in mus])
        chi = _divide_by_factors(num, weyl_denominator_factors("A", n))
    elif series == "C":
        ls = [entries[j] + n + 1 - (j + 1) for j in range(n)]
        num = alternant(n, [[(l, Fraction(1)), (-l, Fraction(-1))] for l in ls])
        chi = _divide_by_factors(num, weyl_denominator_factors("C", n))
    elif series == "B":
        # doubled frame: exponents are 2*(lambda_j + N - j + 1/2)
        ls = [2 * entries[j] + 2 * (n - (j + 1)) + 1 for j in range(n)]
        num = alternant(n, [[(l, Fraction(1)), (-l, Fraction(-1))] for l in ls])
        chi2 = _divide_by_factors(num, weyl_denominator_factors("B", n, doubled=True))
        if any(any(x % 2 for x in e) for e in chi2.terms):
            raise InvariantError("odd-orthogonal character has odd doubled exponents")
        chi = chi2.map_exponents(lambda e: tuple(x // 2 for x in e))
    elif series == "D":
        mus = [entries[j] + n - (j + 1) for j in range(n)]
        plus = alternant(n, [[(m, Fraction(1)), (-m, Fraction(1))] for m in mus])
        minus = alternant(n, [[(m, Fraction(1)), (-m, Fraction(-1))] for m in mus])
        chi = _divide_by_factors((plus + minus).scale(Fraction(1, 2)),
                                 weyl_denominator_factors("D", n))
    else:
        raise ValidationError(f"unknown series {series!r}")
    dim = weyl_dimension(Signature.make(series, entries))
    if chi.evaluate_ones() != dim:
        raise InvariantError(
            f"character of {series}{entries} evaluates to {chi.evaluate_ones()} "
            f"at 1, dimension is {dim}")
    return chi


def character_polynomial(sig: Signature,
                         max_rank: int = DEFAULT_RANK_BOUND) -> LaurentPolynomial:
    """Exact symbolic character in rank-many variables; guarded by rank."""
    if sig.rank > max_rank:
        raise SizeGuardError(
            f"symbolic characters are limited to rank {max_rank} (got {sig.rank})")
    return _character_cached(sig.series, sig.entries)


def schur_via_tableaux(entries: tuple[int, ...], n: int) -> LaurentPolynomial:
    """Monomial expansion over column-strict fillings; series-A test oracle."""
    shift = min(entries)
    parts = [e - shift for e in entries]
    out: dict[tuple[int, ...], Fraction] = {}

    def fill(row: int, prev_row: list[int], weight: list[int]):
        if row == len(parts):
            key = tuple(weight)
            out[key] = out.get(key, Fraction(0)) + 1
            return
        width = parts[row]
        if width == 0:
            fill(row + 1, [], weight)
            return
        current: list[int] = []

        def cell(col: int):
            if col == width:
                fill(row + 1, current[:], weight)
                return
            lo = current[col - 1] if col else (row + 1)
            lo = max(lo, row + 1)
            if col < len(prev_row):
                lo = max(lo, prev_row[col] + 1)
            for v in range(lo, n + 1):
                current.append(v)
                weight[v - 1] += 1
                cell(col + 1)
                weight[v - 1] -= 1
                current.pop()

        cell(0)

    fill(0, [], [0] * n)
    poly = LaurentPolynomial(n, out)
    return poly.shift((shift,) * n)


# -- differential operators --------------------------------------------------------


def _lift_doubled(f: LaurentPolynomial) -> LaurentPolynomial:
    return f.map_exponents(lambda e: tuple(2 * x for x in e))


def _lower_doubled(f: LaurentPolynomial, what: str) -> LaurentPolynomial:
    if any(any(x % 2 for x in e) for e in f.terms):
        raise InvariantError(f"{what} left the even-exponent lattice")
    return f.map_exponents(lambda e: tuple(x // 2 for x in e))


def apply_dk(k: int, f: LaurentPolynomial, system: RootSystem) -> LaurentPolynomial:
    """(1/V) o (sum_i (u_i d/du_i)^k) o V, exactly.

    Characters are eigenfunctions with eigenvalue sum_i mu_i^k; for the
    non-unitary series only even k preserves the character ring.
    """
    series = system.series
    n = system.rank
    if f.nvars != n:
        raise ValidationError("operator arity mismatch")
    if k < 0:
        raise ValidationError("k must be >= 0")
    if series != "A" and k % 2 == 1:
        raise ValidationError(f"series {series} admits only even k (got {k})")
    doubled = series == "B"
    w = _lift_doubled(f) if doubled else f
    v = weyl_denominator(series, n, doubled)
    w = w * v
    total = LaurentPolynomial.zero(n)
    for i in range(n):
        total = total + (w.theta_half(i, k) if doubled else w.theta(i, k))
    out = _divide_by_factors(total, weyl_denominator_factors(series, n, doubled))
    return _lower_doubled(out, "radial operator") if doubled else out


def apply_dk_pp(k: int, f: LaurentPolynomial, system: RootSystem) -> LaurentPolynomial:
    """The companion operators that shift highest weights by one box.

    Series A uses sum_i d/du_i (u_i d/du_i)^{k-1}; the other series use the
    displayed even/odd variants with (u_i + u_i^{-1}) resp. (u_i^{-1} - u_i)
    prefactors.
    """
    series = system.series
    n = system.rank
    if f.nvars != n:
        raise ValidationError("operator arity mismatch")
    if k < 1:
        raise ValidationError("k must be >= 1")
    doubled = series == "B"
    w = _lift_doubled(f) if doubled else f
    v = weyl_denominator(series, n, doubled)
    w = w * v
    total = LaurentPolynomial.zero(n)
    if series == "A":
        for i in range(n):
            t: dict[tuple[int, ...], Fraction] = {}
            for e, c in w.terms.items():
                if e[i] == 0:
                    continue
                e2 = list(e)
                e2[i] -= 1
                key = tuple(e2)
                val = t.get(key, Fraction(0)) + c * Fraction(e[i]) ** k
                if val:
                    t[key] = val
                else:
                    t.pop(key, None)
            p = LaurentPolynomial(n)
            p.terms = t
            total = total + p
    else:
        half_shift = 2 if doubled else 1
        for i in range(n):
            themed = w.theta_half(i, k) if doubled else w.theta(i, k)
            if k % 2 == 0:
                pre = LaurentPolynomial(n, {
                    _unit(n, i, half_shift): Fraction(1),
                    _unit(n, i, -half_shift): Fraction(1)})
            else:
                pre = LaurentPolynomial(n, {
                    _unit(n, i, -half_shift): Fraction(1),
                    _unit(n, i, half_shift): Fraction(-1)})
            total = total + pre * themed
    out = _divide_by_factors(total, weyl_denominator_factors(series, n, doubled))
    return _lower_doubled(out, "shift operator") if doubled else out


def _unit(n: int, i: int, p: int) -> tuple[int, ...]:
    e = [0] * n
    e[i] = p
    return tuple(e)


def dk_eigenvalue(k: int, sig: Signature) -> Fraction:
    """sum_i mu_i^k; the rho-shifts agree with the radial-operator convention."""
    mus = shifted_coordinates(sig.series, sig.entries)
    return sum((m ** k for m in mus), Fraction(0))


# -- tensor product decomposition ----------------------------------------------------


def _is_dominant(series: str, e: tuple[int, ...]) -> bool:
    return entries_valid(series, e)


def _numerator_alternant(series: str, n: int, entries: Sequence[int]
                         ) -> LaurentPolynomial:
    """V * chi as an explicit alternant (doubled frame for series B).

    The lex-greatest monomial is the shifted weight itself, with
    coefficient one; subtracting these drives the greedy decomposition
    without any polynomial division."""
    if series == "A":
        mus = [entries[j] + n - (j + 1) for j in range(n)]
        return alternant(n, [[(m, Fraction(1))] for m in mus])
    if series == "C":
        ls = [entries[j] + n + 1 - (j + 1) for j in range(n)]
        return alternant(n, [[(l, Fraction(1)), (-l, Fraction(-1))] for l in ls])
    if series == "B":
        ls = [2 * entries[j] + 2 * (n - (j + 1)) + 1 for j in range(n)]
        return alternant(n, [[(l, Fraction(1)), (-l, Fraction(-1))] for l in ls])
    mus = [entries[j] + n - (j + 1) for j in range(n)]
    plus = alternant(n, [[(m, Fraction(1)), (-m, Fraction(1))] for m in mus])
    minus = alternant(n, [[(m, Fraction(1)), (-m, Fraction(-1))] for m in mus])
    return (plus + minus).scale(Fraction(1, 2))


def _rho_vector(series: str, n: int) -> tuple[int, ...]:
    """Shift between leading alternant exponents and signature entries
    (doubled for series B)."""
    if series == "A" or series == "D":
        return tuple(n - i for i in range(1, n + 1))
    if series == "C":
        return tuple(n + 1 - i for i in range(1, n + 1))
    return tuple(2 * (n - i) + 1 for i in range(1, n + 1))  # B, doubled


def tensor_decompose(factors: Sequence[Signature],
                     max_rank: int = DEFAULT_RANK_BOUND) -> DecompositionMeasure:
    """Decompose a tensor product by greedy highest-weight subtraction.

    Works in the numerator domain: V * (product of characters) is a signed
    combination of alternants, and the lexicographically greatest monomial
    always exposes a component's shifted weight with its multiplicity.
    Termination and correctness are certified by the exact dimension count.
    """
    if not factors:
        raise ValidationError("tensor product needs at least one factor")
    system = factors[0].system
    if any(s.system != system for s in factors):
        raise ValidationError("all factors must share one root system")
    series, n = system.series, system.rank
    doubled = series == "B"
    rest = LaurentPolynomial.constant(n, 1)
    dim_product = weyl_dimension(factors[0])
    for s in factors[1:]:
        rest = rest * character_polynomial(s, max_rank)
        dim_product *= weyl_dimension(s)
    if factors[0].rank > max_rank:
        raise SizeGuardError(
            f"symbolic decompositions are limited to rank {max_rank}")
    if doubled:
        rest = _lift_doubled(rest)
    work = _numerator_alternant(series, n, factors[0].entries) * rest
    rho = _rho_vector(series, n)
    weights: dict[Signature, Fraction] = {}
    conserved = 0
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 500_000:
            raise InvariantError("greedy subtraction did not terminate")
        lead = work.leading_monomial()
        raw = tuple(x - r for x, r in zip(lead, rho))
        entries = tuple(x // 2 for x in raw) if doubled else raw
        if doubled and any(x % 2 for x in raw):
            raise InvariantError(f"leading monomial {lead} off the weight lattice")
        if not _is_dominant(series, entries):
            raise InvariantError(f"leading weight {entries} is not dominant")
        mult = work.terms[lead]
        if mult.denominator != 1 or mult <= 0:
            raise InvariantError(f"multiplicity {mult} at {lead} is not a positive integer")
        sig = Signature(system, entries)
        work = work - _numerator_alternant(series, n, entries).scale(mult)
        dim = weyl_dimension(sig)
        weights[sig] = Fraction(int(mult) * dim, dim_product)
        conserved += int(mult) * dim
    if conserved != dim_product:
        raise InvariantError("dimension count lost in tensor decomposition")
    return DecompositionMeasure.from_mapping(system, weights)


# -- character generating functions ----------------------------------------------------


@dataclass(frozen=True)
class CharacterGenFn:
    """Normalized-character average S_rho; satisfies S_rho(1,...,1) = 1."""

    system: RootSystem
    nvars: int
    poly: LaurentPolynomial
    description: str = ""

    def __post_init__(self):
        if self.poly.evaluate_ones() != 1:
            raise InvariantError("character generating function must be 1 at 1^N")


def gen_fn_from_decomposition(rho: DecompositionMeasure,
                              max_rank: int = DEFAULT_RANK_BOUND) -> CharacterGenFn:
    n = rho.system.rank
    total = LaurentPolynomial.zero(n)
    for sig, w in rho.items():
        chi = character_polynomial(sig, max_rank)
        total = total + chi.scale(w / weyl_dimension(sig))
    return CharacterGenFn(rho.system, n, total, "explicit decomposition")


def gen_fn_from_tensor(factors: Sequence[Signature],
                       max_rank: int = DEFAULT_RANK_BOUND) -> CharacterGenFn:
    system = factors[0].system
    n = system.rank
    total = LaurentPolynomial.constant(n, 1)
    for s in factors:
        if s.system != system:
            raise ValidationError("all factors must share one root system")
        total = total * character_polynomial(s, max_rank).scale(
            Fraction(1, weyl_dimension(s)))
    return CharacterGenFn(system, n, total, "tensor product")


def gen_fn_from_restriction(sig: Signature, target_rank: int,
                            max_rank: int = DEFAULT_RANK_BOUND) -> CharacterGenFn:
    if not 0 < target_rank < sig.rank:
        raise ValidationError("restriction rank must satisfy 0 < M < N")
    chi = character_polynomial(sig, max_rank)
    restricted = chi.set_trailing_to_one(target_rank).scale(
        Fraction(1, weyl_dimension(sig)))
    return CharacterGenFn(RootSystem(sig.series, target_rank), target_rank,
                          restricted, "restriction")


def operator_moment_value(gen: CharacterGenFn, k: int, m: int,
                          pp: bool = False) -> Fraction:
    """(D_k)^m S_rho (or D_k^PP S_rho for pp=True, m=1) at the all-ones point,
    with the moment normalization for the relevant measure family.

    Series A, counting: N^{-m(k+1)} (D_k)^m S|_1.  Series A, dimension-ratio
    measures: N^{-(k+1)} D_k^PP S|_1.  Series B/C/D, symmetric measures
    (even k only): 2^{-mk} N^{-m(k+1)} (D_k)^m S|_1.
    """
    system = RootSystem(gen.system.series, gen.nvars)
    n = gen.nvars
    p = gen.poly
    if pp:
        if m != 1:
            raise ValidationError("dimension-ratio extraction is stated for m = 1")
        if system.series != "A":
            raise ValidationError("moment extraction via shift operators is series A only")
        out = apply_dk_pp(k, p, system)
        return out.evaluate_ones() / Fraction(n) ** (k + 1)
    for _ in range(m):
        p = apply_dk(k, p, system)
    val = p.evaluate_ones()
    if system.series == "A":
        return val / Fraction(n) ** (m * (k + 1))
    return val / (Fraction(2) ** (m * k) * Fraction(n) ** (m * (k + 1)))


def symmetrized_residue_sum(p: int, n: int, eps: Fraction) -> Fraction:
    """sum_i z_i^p / prod_{j != i} (z_i - z_j) at z_i = 1 + eps*(i-1).

    Converges (linearly in eps) to the divided-difference limit
    binom(p, n-1); exact rational evaluation at exact nodes.
    """
    zs = [1 + Fraction(eps) * (i - 1) for i in range(1, n + 1)]
    total = Fraction(0)
    for i, zi in enumerate(zs):
        denom = Fraction(1)
        for j, zj in enumerate(zs):
            if j != i:
                denom *= zi - zj
        total += zi ** p / denom
    return total

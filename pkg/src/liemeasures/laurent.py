"""Sparse exact Laurent polynomials in a fixed number of variables.

Coefficients are rationals, exponent vectors are integer tuples (negative
entries allowed).  Exact division is available for divisors whose terms
have zero valuation in every variable (all the Weyl-denominator factors
are normalized to such binomials); a nonzero remainder raises, since in
this library it always means a bug rather than bad input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import InvariantError, ValidationError

Monomial = tuple[int, ...]


class LaurentPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.nvars = nvars
        t: dict[Monomial, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    if len(e) != nvars:
                        raise ValidationError("exponent arity mismatch")
                    t[tuple(int(x) for x in e)] = c
        self.terms = t

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "LaurentPolynomial":
        return LaurentPolynomial(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "LaurentPolynomial":
        return LaurentPolynomial(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def monomial(nvars: int, exps: Iterable[int], c=1) -> "LaurentPolynomial":
        return LaurentPolynomial(nvars, {tuple(int(x) for x in exps): Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int, power: int = 1) -> "LaurentPolynomial":
        e = [0] * nvars
        e[i] = power
        return LaurentPolynomial(nvars, {tuple(e): Fraction(1)})

    # -- basics ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), reverse=True)[:4]
        body = " + ".join(f"{c}*u^{e}" for e, c in items)
        more = " + ..." if len(self.terms) > 4 else ""
        return f"LaurentPolynomial({self.nvars}; {body or '0'}{more})"

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.nvars != other.nvars:
            raise ValidationError("variable count mismatch")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, Fraction(0)) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        out = LaurentPolynomial(self.nvars)
        out.terms = t
        return out

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __neg__(self) -> "LaurentPolynomial":
        return self.scale(-1)

    def scale(self, c) -> "LaurentPolynomial":
        c = Fraction(c)
        out = LaurentPolynomial(self.nvars)
        if c != 0:
            out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        t: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, Fraction(0)) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        out = LaurentPolynomial(self.nvars)
        out.terms = t
        return out

    def shift(self, exps: Iterable[int]) -> "LaurentPolynomial":
        """Multiply by the monomial u^exps."""
        exps = tuple(int(x) for x in exps)
        out = LaurentPolynomial(self.nvars)
        out.terms = {tuple(a + b for a, b in zip(e, exps)): c
                     for e, c in self.terms.items()}
        return out

    # -- calculus ---------------------------------------------------------------

    def theta(self, i: int, power: int = 1) -> "LaurentPolynomial":
        """(u_i d/du_i)^power, exact on Laurent monomials."""
        out = LaurentPolynomial(self.nvars)
        t = {}
        for e, c in self.terms.items():
            f = c * Fraction(e[i]) ** power
            if f:
                t[e] = f
        out.terms = t
        return out

    def theta_half(self, i: int, power: int = 1) -> "LaurentPolynomial":
        """((1/2) u_i d/du_i)^power, for doubled-exponent frames."""
        out = LaurentPolynomial(self.nvars)
        t = {}
        for e, c in self.terms.items():
            f = c * Fraction(e[i], 2) ** power
            if f:
                t[e] = f
        out.terms = t
        return out

    def derivative(self, i: int) -> "LaurentPolynomial":
        """d/du_i, exact on Laurent monomials."""
        out = LaurentPolynomial(self.nvars)
        t: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            t[tuple(e2)] = c * e[i]
        out.terms = t
        return out

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, point: Iterable) -> Fraction:
        pt = [Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValidationError("evaluation point arity mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    if x == 0 and k < 0:
                        raise ValidationError("pole at the evaluation point")
                    v *= x ** k
            total += v
        return total

    def evaluate_ones(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def set_var_to_one(self, i: int) -> "LaurentPolynomial":
        """Substitute u_i = 1 and drop the variable."""
        out = LaurentPolynomial(self.nvars - 1)
        t: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            v = t.get(e2, Fraction(0)) + c
            if v:
                t[e2] = v
            else:
                t.pop(e2, None)
        out.terms = t
        return out

    def set_trailing_to_one(self, keep: int) -> "LaurentPolynomial":
        p = self
        while p.nvars > keep:
            p = p.set_var_to_one(p.nvars - 1)
        return p

    def map_exponents(self, fn: Callable[[Monomial], Monomial]) -> "LaurentPolynomial":
        out = LaurentPolynomial(self.nvars)
        t: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            e2 = fn(e)
            v = t.get(e2, Fraction(0)) + c
            if v:
                t[e2] = v
            else:
                t.pop(e2, None)
        out.terms = t
        return out

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(mins)

    def leading_monomial(self) -> Monomial:
        """Lexicographically greatest exponent vector."""
        if not self.terms:
            raise ValidationError("zero polynomial has no leading monomial")
        return max(self.terms)

    def is_symmetric_under_swap(self, i: int, j: int) -> bool:
        def sw(e: Monomial) -> Monomial:
            l = list(e)
            l[i], l[j] = l[j], l[i]
            return tuple(l)
        return all(self.terms.get(sw(e)) == c for e, c in self.terms.items())

    # -- exact division ---------------------------------------------------------------

    def divide_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient by a divisor with zero valuation in every variable.

        Lex leading-term reduction; raises InvariantError on any remainder.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ValidationError("division by zero polynomial")
        if any(v != 0 for v in divisor.min_exponents()) and len(divisor.terms) > 1:
            # normalize: factor out the monomial valuation of the divisor
            m = divisor.min_exponents()
            return self.shift(tuple(-x for x in m)).divide_exact(
                divisor.shift(tuple(-x for x in m)))
        # shift the dividend to nonnegative exponents so lex order behaves
        m = self.min_exponents()
        shifted = self.shift(tuple(-min(x, 0) for x in m))
        back = tuple(min(x, 0) for x in m)
        lead = max(divisor.terms)
        lead_c = divisor.terms[lead]
        rest = [(e, c) for e, c in divisor.terms.items() if e != lead]
        quot: dict[Monomial, Fraction] = {}
        work = dict(shifted.terms)
        guard = 0
        while work:
            guard += 1
            if guard > 2_000_000:
                raise InvariantError("division did not terminate")
            e = max(work)
            c = work.pop(e)
            q = tuple(a - b for a, b in zip(e, lead))
            qc = c / lead_c
            quot[q] = quot.get(q, Fraction(0)) + qc
            for e2, c2 in rest:
                key = tuple(a + b for a, b in zip(q, e2))
                v = work.get(key, Fraction(0)) - qc * c2
                if v:
                    work[key] = v
                else:
                    work.pop(key, None)
        out = LaurentPolynomial(self.nvars)
        out.terms = {e: c for e, c in quot.items() if c}
        return out.shift(back)


def alternant(nvars: int, columns: list[list[tuple[int, Fraction]]]) -> LaurentPolynomial:
    """det of the matrix whose (i, j) entry is sum_t c_t u_i^{e_t}.

    ``columns[j]`` is that list of (exponent, coefficient) pairs; every row
    uses the same pattern in its own variable.  Expanded over permutations;
    fine for the small ranks used here.
    """
    from itertools import permutations

    n = nvars
    if len(columns) != n:
        raise ValidationError("alternant needs one column pattern per variable")
    total = LaurentPolynomial.zero(n)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = LaurentPolynomial.constant(n, sign)
        for i, j in enumerate(perm):
            entry = LaurentPolynomial.zero(n)
            for e, c in columns[j]:
                entry = entry + LaurentPolynomial.monomial(
                    n, tuple(e if t == i else 0 for t in range(n)), c)
            term = term * entry
        total = total + term
    return total


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign

import random
from fractions import Fraction as F
from math import comb

import pytest

from liemeasures.characters import (apply_dk, apply_dk_pp, character_polynomial,
                                    dk_eigenvalue, gen_fn_from_decomposition,
                                    gen_fn_from_restriction, gen_fn_from_tensor,
                                    operator_moment_value, schur_via_tableaux,
                                    symmetrized_residue_sum, tensor_decompose,
                                    weyl_denominator_factors)
from liemeasures.decomposition import delta_decomposition
from liemeasures.errors import SizeGuardError, ValidationError
from liemeasures.laurent import LaurentPolynomial, alternant
from liemeasures.littlewood_richardson import lr_coefficients, lr_decomposition
from liemeasures.measures import counting_measure, hat_measure, pp_measure
from liemeasures.signatures import RootSystem, Signature, entries_valid, weyl_dimension

S = Signature.make


def random_signature(rng, series, n, hi=3):
    while True:
        ent = sorted((rng.randint(0, hi) for _ in range(n)), reverse=True)
        if series == "A" and rng.random() < 0.5:
            shift = rng.randint(-2, 0)
            ent = [e + shift for e in ent]
        if series == "D" and n >= 2 and rng.random() < 0.4:
            ent[-1] = -ent[-1]
        ent = tuple(ent)
        if entries_valid(series, ent):
            return S(series, ent)


class TestLaurent:
    def test_exact_division_binomial(self):
        n = 2
        u0 = LaurentPolynomial.variable(n, 0)
        u1 = LaurentPolynomial.variable(n, 1)
        f = (u0 - u1) * (u0 + u1)
        assert f.divide_exact(u0 - u1) == u0 + u1

    def test_division_remainder_detected(self):
        n = 2
        u0 = LaurentPolynomial.variable(n, 0)
        u1 = LaurentPolynomial.variable(n, 1)
        from liemeasures.errors import InvariantError
        with pytest.raises(InvariantError):
            (u0 * u0 + u1).divide_exact(u0 - u1)

    def test_laurent_division_with_valuation(self):
        n = 1
        u = LaurentPolynomial.variable(n, 0)
        uinv = LaurentPolynomial.variable(n, 0, -1)
        f = u - uinv  # (u^2-1)/u
        g = (u + uinv) * f
        assert g.divide_exact(f) == u + uinv

    def test_alternant_antisymmetry(self):
        cols = [[(3, F(1))], [(1, F(1))], [(0, F(1))]]
        a = alternant(3, cols)
        swapped = a.map_exponents(lambda e: (e[1], e[0], e[2]))
        assert swapped == -a


class TestCharacters:
    def test_bialternant_examples(self):
        assert character_polynomial(S("A", (1, 0))).terms \
            == {(1, 0): F(1), (0, 1): F(1)}
        assert character_polynomial(S("C", (1,))).terms == {(1,): F(1), (-1,): F(1)}
        assert character_polynomial(S("B", (1,))).terms \
            == {(1,): F(1), (0,): F(1), (-1,): F(1)}

    def test_trivial_character_all_series(self):
        for series in "ABCD":
            chi = character_polynomial(S(series, (0, 0)))
            assert chi.terms == {(0, 0): F(1)}

    def test_schur_tableau_oracle(self):
        rng = random.Random(1)
        for n in (2, 3):
            for _ in range(5):
                sig = random_signature(rng, "A", n)
                assert character_polynomial(sig).terms \
                    == schur_via_tableaux(sig.entries, n).terms

    def test_dimension_at_ones_all_series(self):
        rng = random.Random(2)
        for series in "ABCD":
            for n in (1, 2, 3, 4):
                for _ in range(3):
                    sig = random_signature(rng, series, n)
                    assert character_polynomial(sig).evaluate_ones() \
                        == weyl_dimension(sig)

    def test_rank_guard(self):
        with pytest.raises(SizeGuardError):
            character_polynomial(S("A", (1, 0, 0, 0, 0)))

    def test_symmetry_in_variables(self):
        chi = character_polynomial(S("C", (2, 1)))
        assert chi.is_symmetric_under_swap(0, 1)

    def test_d_series_inversion_symmetry(self):
        # joint inversion u -> 1/u negates all weights: (1,-1) is self-dual,
        # while flipping only the last variable swaps the two mirror types
        chi = character_polynomial(S("D", (1, -1)))
        inv = chi.map_exponents(lambda e: tuple(-x for x in e))
        assert inv == chi
        flip_last = chi.map_exponents(lambda e: e[:-1] + (-e[-1],))
        assert flip_last == character_polynomial(S("D", (1, 1)))


class TestRadialOperators:
    def test_eigenrelation_grid(self):
        rng = random.Random(3)
        for series in "ABCD":
            for n in (1, 2, 3):
                for _ in range(3):
                    sig = random_signature(rng, series, n)
                    chi = character_polynomial(sig)
                    ks = (0, 1, 2, 3, 4) if series == "A" else (0, 2, 4)
                    for k in ks:
                        assert apply_dk(k, chi, sig.system) \
                            == chi.scale(dk_eigenvalue(k, sig)), (series, sig, k)

    def test_d0_gives_rank(self):
        sig = S("A", (2, 0, -1))
        chi = character_polynomial(sig)
        assert apply_dk(0, chi, sig.system) == chi.scale(3)

    def test_odd_k_rejected_for_bcd(self):
        chi = character_polynomial(S("C", (1, 0)))
        with pytest.raises(ValidationError):
            apply_dk(1, chi, RootSystem("C", 2))

    def test_sp2_square_eigenvalue(self):
        sig = S("C", (1,))
        chi = character_polynomial(sig)
        assert apply_dk(2, chi, sig.system) == chi.scale(4)


class TestShiftOperators:
    def test_a_series_shift_identity(self):
        # D_k^PP chi_l = sum_i mu_i^k * alternant(mu - e_i)/V, literally
        rng = random.Random(4)
        for n in (2, 3):
            for _ in range(4):
                sig = random_signature(rng, "A", n)
                chi = character_polynomial(sig)
                mus = [sig.entries[i] + n - (i + 1) for i in range(n)]
                for k in (1, 2, 3):
                    lhs = apply_dk_pp(k, chi, sig.system)
                    rhs = LaurentPolynomial.zero(n)
                    for i in range(n):
                        shifted = list(mus)
                        shifted[i] -= 1
                        q = alternant(n, [[(m, F(1))] for m in shifted])
                        for f in weyl_denominator_factors("A", n):
                            q = q.divide_exact(f)
                        rhs = rhs + q.scale(F(mus[i]) ** k)
                    assert lhs == rhs, (sig, k)

    def test_basic_shift_example(self):
        sig = S("A", (1, 0))
        out = apply_dk_pp(1, character_polynomial(sig), sig.system)
        assert out == character_polynomial(S("A", (0, 0))).scale(2)

    def test_bcd_shift_identity(self):
        # even case: D_{2k}^PP chi = sum_i l_i^{2k} (alt(l+e_i) + alt(l-e_i)) / V
        rng = random.Random(5)
        from liemeasures.signatures import shifted_coordinates
        for series in "BCD":
            for n in (1, 2):
                for _ in range(3):
                    sig = random_signature(rng, series, n)
                    chi = character_polynomial(sig)
                    ls = shifted_coordinates(series, sig.entries)
                    for k in (2, 3):
                        lhs = apply_dk_pp(k, chi, sig.system)
                        rhs = LaurentPolynomial.zero(n)
                        for i in range(n):
                            for d in (1, -1):
                                shifted = list(ls)
                                shifted[i] += d
                                sign = F(1) if k % 2 == 0 else F(-d)
                                rhs = rhs + _bcd_char_from_l(series, n, shifted) \
                                    .scale(sign * ls[i] ** k)
                        assert lhs == rhs, (series, sig, k)


def _bcd_char_from_l(series, n, ls):
    """Alternant ratio for arbitrary (possibly wall) shifted coordinates."""
    if series == "C":
        cols = [[(int(l), F(1)), (-int(l), F(-1))] for l in ls]
        num = alternant(n, cols)
        q = num
        for f in weyl_denominator_factors("C", n):
            q = q.divide_exact(f)
        return q
    if series == "B":
        cols = [[(int(2 * l), F(1)), (-int(2 * l), F(-1))] for l in ls]
        num = alternant(n, cols)
        q = num
        for f in weyl_denominator_factors("B", n, doubled=True):
            q = q.divide_exact(f)
        if q.is_zero():
            return LaurentPolynomial.zero(n)
        assert not any(any(x % 2 for x in e) for e in q.terms)
        return q.map_exponents(lambda e: tuple(x // 2 for x in e))
    cols_p = [[(int(l), F(1)), (-int(l), F(1))] for l in ls]
    cols_m = [[(int(l), F(1)), (-int(l), F(-1))] for l in ls]
    num = (alternant(n, cols_p) + alternant(n, cols_m)).scale(F(1, 2))
    q = num
    for f in weyl_denominator_factors("D", n):
        q = q.divide_exact(f)
    return q


class TestTensorDecompose:
    def test_clebsch_gordan(self):
        dec = tensor_decompose([S("A", (1, 0)), S("A", (1, 0))])
        assert {s.entries: w for s, w in dec.items()} \
            == {(2, 0): F(3, 4), (1, 1): F(1, 4)}

    def test_sp2_square(self):
        dec = tensor_decompose([S("C", (1,)), S("C", (1,))])
        assert {s.entries: w for s, w in dec.items()} == {(2,): F(3, 4), (0,): F(1, 4)}

    def test_trivial_factor(self):
        dec = tensor_decompose([S("A", (2, 1)), S("A", (0, 0))])
        assert {s.entries: w for s, w in dec.items()} == {(2, 1): F(1)}

    def test_dimension_conservation_all_series(self):
        rng = random.Random(6)
        for series in "ABCD":
            for n in (1, 2, 3):
                a = random_signature(rng, series, n, hi=2)
                b = random_signature(rng, series, n, hi=2)
                dec = tensor_decompose([a, b])
                total = sum((w for _, w in dec.items()), F(0))
                assert total == 1
                # weights are mult*dim(mu)/dim(a)dim(b): integrality of mult
                dab = weyl_dimension(a) * weyl_dimension(b)
                for sig, w in dec.items():
                    mult = w * dab / weyl_dimension(sig)
                    assert mult.denominator == 1 and mult > 0


class TestLittlewoodRichardson:
    def test_pieri(self):
        c = lr_coefficients(S("A", (1, 0)), S("A", (1, 0)))
        assert {s.entries: m for s, m in c.items()} == {(2, 0): 1, (1, 1): 1}

    def test_trivial_coefficient(self):
        c = lr_coefficients(S("A", (2, 1)), S("A", (0, 0)))
        assert {s.entries: m for s, m in c.items()} == {(2, 1): 1}

    def test_multiplicity_two(self):
        c = lr_coefficients(S("A", (2, 1, 0)), S("A", (2, 1, 0)))
        assert {s.entries: m for s, m in c.items()}[(3, 2, 1)] == 2

    def test_shift_invariance(self):
        base = lr_coefficients(S("A", (2, 1)), S("A", (1, 0)))
        shifted = lr_coefficients(S("A", (1, 0)), S("A", (0, -1)))
        assert {tuple(x - 2 for x in s.entries): m for s, m in base.items()} \
            == {s.entries: m for s, m in shifted.items()}

    def test_agrees_with_symbolic(self):
        rng = random.Random(7)
        checked = 0
        for n in (2, 3, 4):
            for _ in range(8):
                a = random_signature(rng, "A", n, hi=3)
                b = random_signature(rng, "A", n, hi=3)
                if sum(map(abs, a.entries)) > 6 or sum(map(abs, b.entries)) > 6:
                    continue
                assert tensor_decompose([a, b]).weights \
                    == lr_decomposition([a, b]).weights
                checked += 1
        assert checked >= 10


class TestGenFns:
    def test_normalization(self):
        g = gen_fn_from_tensor([S("A", (1, 0)), S("A", (1, 0))])
        assert g.poly.evaluate_ones() == 1
        assert g.poly.terms == {(2, 0): F(1, 4), (1, 1): F(1, 2), (0, 2): F(1, 4)}

    def test_delta_gen_fn(self):
        sig = S("C", (1, 0))
        g = gen_fn_from_decomposition(delta_decomposition(sig))
        assert g.poly == character_polynomial(sig).scale(F(1, weyl_dimension(sig)))

    def test_restriction_gen_fn(self):
        g = gen_fn_from_restriction(S("A", (1, 0, 0)), 2)
        # (u1 + u2 + 1)/3
        assert g.poly.terms == {(1, 0): F(1, 3), (0, 1): F(1, 3), (0, 0): F(1, 3)}

    def test_restriction_gen_fn_equals_branching_average(self):
        # setting trailing variables to one must agree with the weighted
        # average of lower-rank normalized characters over the exact
        # restriction measure, for every series
        from liemeasures.branching import restrict_decompose
        rng = random.Random(12)
        for series in "ABCD":
            for _ in range(3):
                sig = random_signature(rng, series, 3, hi=2)
                rho = restrict_decompose(sig, 2)
                lhs = gen_fn_from_restriction(sig, 2).poly
                rhs = gen_fn_from_decomposition(rho).poly
                assert lhs == rhs, (series, sig)


class TestOperatorMomentChecks:
    def test_delta_counting(self):
        rho = delta_decomposition(S("A", (1, 0)))
        lhs = rho.expected_moment_power(counting_measure, 1, 1)
        rhs = operator_moment_value(gen_fn_from_decomposition(rho), 1, 1)
        assert lhs == rhs == F(1, 2)

    def test_tensor_counting(self):
        dec = tensor_decompose([S("A", (1, 0)), S("A", (1, 0))])
        lhs = dec.expected_moment_power(counting_measure, 1, 1)
        rhs = operator_moment_value(gen_fn_from_tensor([S("A", (1, 0))] * 2), 1, 1)
        assert lhs == rhs == F(3, 4)

    def test_sp_hat_moment(self):
        rho = delta_decomposition(S("C", (1,)))
        lhs = rho.expected_moment_power(hat_measure, 2, 1)
        rhs = operator_moment_value(gen_fn_from_decomposition(rho), 2, 1)
        assert lhs == rhs == 1

    def test_grid_counting_and_hat(self):
        rng = random.Random(8)
        for series in "ABCD":
            for n in (1, 2, 3):
                sig1 = random_signature(rng, series, n, hi=2)
                sig2 = random_signature(rng, series, n, hi=2)
                dec = tensor_decompose([sig1, sig2])
                gen = gen_fn_from_tensor([sig1, sig2])
                ks = (1, 2, 3) if series == "A" else (2,)
                measure = counting_measure if series == "A" else hat_measure
                for k in ks:
                    for m in ((1, 2) if n <= 2 else (1,)):
                        lhs = dec.expected_moment_power(measure, k, m)
                        rhs = operator_moment_value(gen, k, m)
                        assert lhs == rhs, (series, n, k, m)

    def test_restriction_spec(self):
        sig = S("A", (2, 1, 0))
        from liemeasures.branching import restrict_decompose
        rho = restrict_decompose(sig, 2)
        gen = gen_fn_from_restriction(sig, 2)
        for k in (1, 2, 3):
            lhs = rho.expected_moment_power(counting_measure, k, 1)
            rhs = operator_moment_value(gen, k, 1)
            assert lhs == rhs, k

    def test_pp_extraction(self):
        rng = random.Random(9)
        for n in (1, 2, 3):
            sig = random_signature(rng, "A", n, hi=2)
            rho = delta_decomposition(sig)
            gen = gen_fn_from_decomposition(rho)
            for k in (1, 2, 3):
                lhs = rho.expected_moment(pp_measure, k)
                rhs = operator_moment_value(gen, k, 1, pp=True)
                assert lhs == rhs, (sig, k)


class TestResidueSum:
    def test_limit_values(self):
        for p in range(7):
            for n in range(1, 6):
                target = comb(p, n - 1)
                v = symmetrized_residue_sum(p, n, F(1, 10 ** 4))
                assert abs(v - target) < F(1, 100)

    def test_linear_in_eps(self):
        for p in range(7):
            for n in range(1, 6):
                target = comb(p, n - 1)
                e2 = symmetrized_residue_sum(p, n, F(1, 100)) - target
                e3 = symmetrized_residue_sum(p, n, F(1, 1000)) - target
                if e2 != 0:
                    ratio = abs(e3) / abs(e2)
                    assert F(1, 20) < ratio < F(1, 5)

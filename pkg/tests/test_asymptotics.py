import random
from fractions import Fraction as F

import mpmath
import pytest

from liemeasures.asymptotics import (asymptotic_log_character, h_series_value,
                                     hciz_semiclassical, log_character_table,
                                     multivariate_split_check,
                                     normalized_char_one_var,
                                     normalized_schur_one_var)
from liemeasures.characters import character_polynomial
from liemeasures.errors import ValidationError
from liemeasures.profiles import Profile, build_regular_sequence, profile_limit_moments
from liemeasures.signatures import RootSystem, Signature, entries_valid
from liemeasures.transforms import h_from_moments

S = Signature.make
XS = (F(1, 2), F(3, 2), F(2))


def all_signatures(series, n, hi):
    import itertools
    lo = -hi if series == "A" else 0
    for ent in itertools.combinations_with_replacement(range(hi, lo - 1, -1), n):
        cands = [tuple(ent)]
        if series == "D" and n >= 2 and ent[-1] > 0:
            cands.append(tuple(ent[:-1]) + (-ent[-1],))
        for e in cands:
            if entries_valid(series, e):
                yield S(series, e)


class TestResidueForm:
    def test_rank_two_closed_forms(self):
        x = F(3, 2)
        assert normalized_schur_one_var(S("A", (1, 0)), x) == (x + 1) / 2
        assert normalized_schur_one_var(S("A", (2, 0)), x) == (x * x + x + 1) / 3

    def test_trivial_is_one(self):
        assert normalized_schur_one_var(S("A", (0, 0, 0)), F(5, 7)) == 1

    def test_value_at_one_by_continuity(self):
        assert normalized_schur_one_var(S("A", (3, 1)), 1) == 1
        assert normalized_char_one_var(S("C", (2, 1)), 1) == 1

    def test_matches_symbolic_ratio(self):
        rng = random.Random(1)
        for n in (1, 2, 3, 4):
            for _ in range(4):
                while True:
                    ent = tuple(sorted((rng.randint(-3, 3) for _ in range(n)),
                                       reverse=True))
                    if entries_valid("A", ent):
                        break
                sig = S("A", ent)
                chi = character_polynomial(sig)
                dim = chi.evaluate_ones()
                for x in XS:
                    assert normalized_schur_one_var(sig, x) \
                        == chi.evaluate([x] + [F(1)] * (n - 1)) / dim


class TestSeriesReductions:
    def test_sp2_standard(self):
        x = F(3, 2)
        assert normalized_char_one_var(S("C", (1,)), x) == (x + 1 / x) / 2

    def test_so3_standard(self):
        x = F(2)
        assert normalized_char_one_var(S("B", (1,)), x) == (x + 1 + 1 / x) / 3

    def test_identities_full_grid(self):
        count = 0
        for series in "BCD":
            for n in (1, 2, 3):
                for sig in all_signatures(series, n, 3):
                    chi = character_polynomial(sig)
                    dim = chi.evaluate_ones()
                    for x in XS:
                        lhs = chi.evaluate([x] + [F(1)] * (n - 1)) / dim
                        assert lhs == normalized_char_one_var(sig, x), (sig, x)
                        count += 1
        assert count > 300

    def test_d_both_branches_present(self):
        # last entry zero uses the odd-size reduction, nonzero the derivative one
        x = F(1, 2)
        chiz = character_polynomial(S("D", (2, 0)))
        assert normalized_char_one_var(S("D", (2, 0)), x) \
            == chiz.evaluate([x, F(1)]) / chiz.evaluate_ones()
        chin = character_polynomial(S("D", (2, 1)))
        assert normalized_char_one_var(S("D", (2, 1)), x) \
            == chin.evaluate([x, F(1)]) / chin.evaluate_ones()
        chim = character_polynomial(S("D", (2, -1)))
        assert normalized_char_one_var(S("D", (2, -1)), x) \
            == chim.evaluate([x, F(1)]) / chim.evaluate_ones()

    def test_so2_power(self):
        assert normalized_char_one_var(S("D", (3,)), F(2)) == 8


class TestAsymptoticTables:
    def test_zero_signature_exact_zero(self):
        v = asymptotic_log_character(S("A", (0,) * 7), F(3, 2))
        assert abs(v) < mpmath.mpf(10) ** -70

    def test_single_row_family_decreasing(self):
        fam = lambda n: S("A", (n,) + (0,) * (n - 1))
        rows = log_character_table(fam, F(3, 2), F(0), [4, 8, 16, 32])
        errs = [r.abs_error for r in rows]
        assert all(b < a for a, b in zip(errs, errs[1:]))

    def test_rectangular_family_approaches_h_series(self):
        profile = Profile.rectangle(1, F(1, 2))
        lim = profile_limit_moments(profile, "A", 16)
        h = h_from_moments(lim)
        x = F(9, 8)
        target = h_series_value(h.body, x)
        errs = []
        for n in (4, 8, 16, 32):
            sig = build_regular_sequence(profile, n, RootSystem("A", n))
            v = asymptotic_log_character(sig, x)
            errs.append(abs(v - target))
        assert all(b < a for a, b in zip(errs, errs[1:])), [float(e) for e in errs]

    def test_doubling_differences_bcd(self):
        profile = Profile.rectangle(1, F(1, 2))
        x = F(9, 8)
        for series in "BC":
            lim = profile_limit_moments(profile, series, 16)
            h = h_from_moments(lim)
            target = h_series_value(h.body, x)
            errs = []
            for n in (4, 8, 16, 32):
                sig = build_regular_sequence(profile, n, RootSystem(series, n))
                errs.append(abs(asymptotic_log_character(sig, x) - target))
            assert errs[-1] < errs[0], (series, [float(e) for e in errs])


class TestHCIZ:
    def test_target_value(self):
        rows = hciz_semiclassical((1, 0), (1, 0), [F(1, 10)])
        target = rows[0]["target"]
        with mpmath.workprec(200):
            assert abs(target - (mpmath.e - 1)) < mpmath.mpf(10) ** -30

    def test_decade_convergence(self):
        rows = hciz_semiclassical((1, 0), (1, 0),
                                  [F(1, 10), F(1, 100), F(1, 1000)])
        rel = [float(r["rel_error"]) for r in rows]
        assert rel[2] < 1e-2
        assert rel[1] < rel[0] and rel[2] < rel[1]
        assert rel[1] / rel[0] < 0.2 and rel[2] / rel[1] < 0.2

    def test_generic_spectra(self):
        rows = hciz_semiclassical((F(3, 2), F(1, 3)), (F(1, 2), F(-1, 4)),
                                  [F(1, 10), F(1, 100), F(1, 1000)])
        rel = [float(r["rel_error"]) for r in rows]
        assert rel[2] < rel[1] < rel[0]

    def test_rank_guard(self):
        with pytest.raises(ValidationError):
            hciz_semiclassical((1, 0, -1), (1, 0, -1), [F(1, 10)])

    def test_ordering_enforced(self):
        with pytest.raises(ValidationError):
            hciz_semiclassical((0, 1), (1, 0), [F(1, 10)])


class TestSplitCheck:
    def test_trivial_signature_exact_zero(self):
        fam = lambda n: S("A", (0,) * n)
        rows = multivariate_split_check(fam, [F(3, 2), F(5, 4)], [3, 4])
        assert all(float(r["abs_error"]) == 0 for r in rows)

    def test_single_point_tautology(self):
        fam = lambda n: S("A", tuple(1 if i < n // 2 else 0 for i in range(n)))
        rows = multivariate_split_check(fam, [F(3, 2)], [2, 3, 4])
        assert all(float(r["abs_error"]) < 1e-60 for r in rows)

    def test_two_point_decay(self):
        fam = lambda n: S("A", tuple(1 if i < n // 2 else 0 for i in range(n)))
        rows = multivariate_split_check(fam, [F(3, 2), F(5, 4)], [3, 4])
        assert float(rows[-1]["abs_error"]) < float(rows[0]["abs_error"])

    def test_bcd_split(self):
        fam = lambda n: S("C", tuple(1 if i < n // 2 else 0 for i in range(n)))
        rows = multivariate_split_check(fam, [F(3, 2), F(5, 4)], [3, 4])
        assert float(rows[-1]["abs_error"]) < float(rows[0]["abs_error"])

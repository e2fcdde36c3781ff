"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts.  Tolerances are exact equalities or
frozen fixtures; nothing is calibrated at run time.
"""

import itertools
import os
import random
import time
from fractions import Fraction as F
from math import comb

from liemeasures.asymptotics import (hciz_semiclassical, normalized_char_one_var,
                                     normalized_schur_one_var)
from liemeasures.characters import (apply_dk, character_polynomial, dk_eigenvalue,
                                    gen_fn_from_decomposition, gen_fn_from_tensor,
                                    operator_moment_value, tensor_decompose)
from liemeasures.decomposition import delta_decomposition
from liemeasures.experiments import (kerov_limit_table,
                                     run_pp_limit_consistency, run_restriction_lln,
                                     run_symmetry_comparison, run_tensor_lln)
from liemeasures.measures import (DiscreteMeasure, MomentSequence, casimir_value_a,
                                  counting_measure, hat_measure,
                                  kerov_measure_of_diagram, pp_measure,
                                  pp_measure_product_form, uniform_01_moments)
from liemeasures.profiles import Profile, build_regular_sequence
from liemeasures.rng import derived_stream
from liemeasures.signatures import RootSystem, Signature, entries_valid
from liemeasures.transforms import (InfDivParameters, convolve, h_from_moments,
                                    h_hat_from_h, hankel_leading_minors,
                                    inf_div_moments, markov_krein, moments_from_q,
                                    q_map)

S = Signature.make
HALF_RECT = Profile.rectangle(1, F(1, 2))


def verdict(num, ok, text):
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, f"criterion {num} failed: {text}"


def all_signatures(series, n, hi):
    lo = -hi if series == "A" else 0
    rng = range(hi, lo - 1, -1)
    for ent in itertools.combinations_with_replacement(rng, n):
        cands = [tuple(ent)]
        if series == "D" and n >= 2 and ent[-1] > 0:
            cands.append(tuple(ent[:-1]) + (-ent[-1],))
        for e in cands:
            if entries_valid(series, e):
                yield S(series, e)


def random_counting_moments(rng, order, max_rank=6):
    n = rng.randint(1, max_rank)
    while True:
        ent = tuple(sorted((rng.randint(-3, 5) for _ in range(n)), reverse=True))
        if entries_valid("A", ent):
            return counting_measure(S("A", ent)).moments(order)


def test_criterion_01_figure_fidelity():
    m = counting_measure(S("A", (3, 1, -4)))
    ok = m.atoms == ((F(-4, 3), F(1, 3)), (F(2, 3), F(1, 3)), (F(5, 3), F(1, 3)))
    verdict(1, ok, "counting measure of (3,1,-4) has atoms {5/3, 2/3, -4/3}, weight 1/3 each")


def test_criterion_02_mass_one_exhaustive():
    checked = 0
    for series in "ABCD":
        for n in range(1, 7):
            for sig in all_signatures(series, n, 4):
                assert counting_measure(sig).total_mass == 1, sig
                assert pp_measure(sig).total_mass == 1, sig
                if series != "A":
                    assert hat_measure(sig).total_mass == 1, sig
                checked += 1
    verdict(2, checked == 6592,
            f"counting/hat/PP measures have exact mass 1 on all {checked} "
            "signatures (all series, entries <= 4, N <= 6)")


def test_criterion_03_casimir_identity():
    rng = random.Random(2025)
    atomwise = 0
    for _ in range(200):
        n = rng.randint(1, 8)
        while True:
            ent = tuple(sorted((rng.randint(-4, 6) for _ in range(n)), reverse=True))
            if entries_valid("A", ent):
                break
        sig = S("A", ent)
        m = pp_measure(sig)
        for p in range(7):
            assert casimir_value_a(p, sig) == F(n) ** (p + 1) * m.moment(p), (sig, p)
        assert m == pp_measure_product_form(sig), sig
        atomwise += 1
    verdict(3, atomwise == 200,
            "C_p = N^{p+1} M_p(PP) exactly for p <= 6 on 200 random signatures; "
            "definition matches the closed product form atomwise")


def test_criterion_04_semicircle_convolution():
    cat = lambda k: comb(2 * k, k) // (k + 1)
    semi = MomentSequence.make([cat(k // 2) if k % 2 == 0 else 0 for k in range(13)])
    out = convolve("free", [semi, semi])
    ok = all(out.values[2 * k] == 2 ** k * cat(k) for k in range(7)) \
        and all(out.values[2 * k + 1] == 0 for k in range(6))
    verdict(4, ok, "semicircle + semicircle has even moments 2^k Catalan_k through order 12")


def test_criterion_05_quantized_identity_and_translation():
    rng = random.Random(5)
    u01 = uniform_01_moments(12)
    for _ in range(50):
        m = random_counting_moments(rng, 12)
        assert convolve("quantized", [u01, m]).values == m.values
        c = F(rng.randint(-3, 3), rng.randint(1, 4))
        ucc = MomentSequence.make([((c + 1) ** (k + 1) - c ** (k + 1)) / (k + 1)
                                   for k in range(13)])
        assert convolve("quantized", [m, ucc]).values == m.shift(c).values
    verdict(5, True, "u[0,1] is the exact tensor-identity and u[c,c+1] an exact "
                     "translation for 50 random discrete measures at order 12")


def test_criterion_06_moment_map_suite():
    rng = random.Random(6)
    q0 = q_map(uniform_01_moments(12))
    assert q0.values[0] == 1 and all(v == 0 for v in q0.values[1:])
    for _ in range(50):
        a = random_counting_moments(rng, 12)
        b = random_counting_moments(rng, 12)
        # route agreement: reflected exponential-map route vs direct series
        direct = q_map(a)
        via_mk = markov_krein(a.reflect(), "forward").reflect()
        assert direct.values == via_mk.values
        # intertwining
        assert q_map(convolve("quantized", [a, b])).values \
            == convolve("free", [q_map(a), q_map(b)]).values
    verdict(6, True, "Q(u[0,1]) = delta(0); both map routes agree exactly; "
                     "Q intertwines the two convolutions on 50 random pairs")


def test_criterion_07_moment_recovery_closure():
    rng = random.Random(7)
    for _ in range(100):
        m = random_counting_moments(rng, 12)
        rec = moments_from_q(h_from_moments(m).body, "unitary", 10)
        assert rec.values == m.truncate(10).values
    for _ in range(100):
        series = rng.choice("BCD")
        n = rng.randint(1, 5)
        while True:
            ent = tuple(sorted((rng.randint(0, 5) for _ in range(n)), reverse=True))
            if entries_valid(series, ent):
                break
        hm = hat_measure(S(series, ent)).moments(12)
        rec = moments_from_q(h_hat_from_h(h_from_moments(hm)), "symmetric", 10)
        assert rec.values[0:11:2] == hm.values[0:11:2]
        assert all(v == 0 for v in rec.values[1:11:2])
    verdict(7, True, "moment recovery closes exactly at order 10 for 100 counting "
                     "and 100 symmetric hat measures")


def test_criterion_08_operator_formulas():
    rng = random.Random(8)

    def rand_sig(series, n, hi=3):
        while True:
            ent = sorted((rng.randint(0, hi) for _ in range(n)), reverse=True)
            if series == "A" and rng.random() < 0.4:
                ent = [e - 1 for e in ent]
            if series == "D" and n >= 2 and rng.random() < 0.4:
                ent[-1] = -ent[-1]
            ent = tuple(ent)
            if entries_valid(series, ent):
                return S(series, ent)

    # eigenrelations, all four series
    for series in "ABCD":
        for n in (1, 2, 3):
            for _ in range(2):
                sig = rand_sig(series, n)
                chi = character_polynomial(sig)
                ks = (0, 1, 2, 3) if series == "A" else (0, 2)
                for k in ks:
                    assert apply_dk(k, chi, sig.system) \
                        == chi.scale(dk_eigenvalue(k, sig)), (series, sig, k)
    # moment extraction: counting (m = 1, 2), dimension-ratio, symmetric even
    for series in "ABCD":
        for n in (1, 2, 3):
            a, b = rand_sig(series, n, 2), rand_sig(series, n, 2)
            dec = tensor_decompose([a, b])
            gen = gen_fn_from_tensor([a, b])
            ks = (1, 2, 3) if series == "A" else (2,)
            measure = counting_measure if series == "A" else hat_measure
            for k in ks:
                for m_pow in (1, 2) if n <= 2 else (1,):
                    lhs = dec.expected_moment_power(measure, k, m_pow)
                    rhs = operator_moment_value(gen, k, m_pow)
                    assert lhs == rhs, (series, n, k, m_pow)
            if series == "A":
                rho = delta_decomposition(a)
                gend = gen_fn_from_decomposition(rho)
                for k in (1, 2, 3):
                    assert rho.expected_moment(pp_measure, k) \
                        == operator_moment_value(gend, k, 1, pp=True), (a, k)
    verdict(8, True, "radial-operator eigenrelations and all moment-extraction "
                     "formulas hold exactly on the full grid (all series)")


def test_criterion_09_appendix_identities():
    xs = (F(1, 2), F(3, 2), F(2))
    count = 0
    for series in "BCD":
        for n in (1, 2, 3):
            for sig in all_signatures(series, n, 3):
                chi = character_polynomial(sig)
                dim = chi.evaluate_ones()
                for x in xs:
                    lhs = chi.evaluate([x] + [F(1)] * (n - 1)) / dim
                    assert lhs == normalized_char_one_var(sig, x), (sig, x)
                    count += 1
    schur_checked = 0
    for n in (1, 2, 3, 4):
        for sig in all_signatures("A", n, 3):
            chi = character_polynomial(sig)
            dim = chi.evaluate_ones()
            for x in xs:
                assert normalized_schur_one_var(sig, x) \
                    == chi.evaluate([x] + [F(1)] * (n - 1)) / dim, (sig, x)
                schur_checked += 1
    verdict(9, count > 300 and schur_checked > 600,
            f"character reduction identities exact at x in {{1/2, 3/2, 2}} "
            f"({count} orthogonal/symplectic, {schur_checked} unitary checks)")


# frozen exact fixtures for the half-rectangle tensor square (the oracle is
# the exact tableau-rule decomposition itself, computed once and pinned)
TENSOR_N8_FIXTURES = {1: F(23, 16), 2: F(403, 128), 3: F(1955, 256)}
TENSOR_GAPS = {(4, 1): F(1, 8), (4, 2): F(35, 96), (4, 3): F(77, 64),
               (8, 1): F(1, 16), (8, 2): F(71, 384), (8, 3): F(157, 256)}


def test_criterion_10_tensor_lln_desk_scale():
    rep = run_tensor_lln([HALF_RECT, HALF_RECT], "A", [4, 6, 8], 3)
    by_kn = {(r[0], r[1]): (r[2], r[4]) for r in rep.rows}
    for k in (1, 2, 3):
        e4, e6, e8 = (by_kn[(n, k)][1] for n in (4, 6, 8))
        assert e6 < e4 and e8 < e6, (k, e4, e6, e8)
        assert by_kn[(8, k)][0] == TENSOR_N8_FIXTURES[k], k
        assert by_kn[(4, k)][1] == TENSOR_GAPS[(4, k)]
        assert by_kn[(8, k)][1] == TENSOR_GAPS[(8, k)]
        assert e8 * F(3, 2) <= e4, (k, e4, e8)
    verdict(10, True, "half-rectangle tensor square: errors strictly decrease "
                      "over N = 4, 6, 8; N = 8 values match frozen oracle "
                      "fixtures exactly; gap shrinks by >= 1.5x")


def test_criterion_11_restriction_lln():
    rep = run_restriction_lln(HALF_RECT, F(1, 2), "A", [4, 6, 8, 10], 3)
    by_kn = {(r[0], r[1]): r[4] for r in rep.rows}
    for k in (1, 2, 3):
        seq = [by_kn[(n, k)] for n in (4, 6, 8, 10)]
        assert all(b < a for a, b in zip(seq, seq[1:])), (k, seq)
    # Monte Carlo clause at the criterion's literal parameters, under the
    # criterion's own 10-minute budget.  Exact sampling at N = 100 costs
    # ~hours per draw (completion counts have ~10^2000 digits); we probe the
    # throughput and fail honestly when 10^5 draws cannot fit the budget.
    n_mc, trials_needed, budget = 100, 100_000, 600.0
    if os.environ.get("LIEMEASURES_FULL_MC") == "1":
        rep_mc = run_restriction_lln(HALF_RECT, F(1, 2), "A", [n_mc], 3,
                                     mc_trials=trials_needed, seed=11)
        for r in rep_mc.rows:
            _, k, mean, limit, err, var = r
            assert float(err) <= 3 * float(var) ** 0.5, (k, err)
        verdict(11, True, "exact grid decreasing and full Monte Carlo run passed")
        return
    # probe the sampler at growing ranks and extrapolate the power law to
    # N = 100 (a single N = 100 draw already takes ~half an hour here)
    from liemeasures.experiments import _sample_restricted_signature
    import math
    probe_ns, times = [12, 20, 28], []
    for pn in probe_ns:
        psig = build_regular_sequence(HALF_RECT, pn, RootSystem("A", pn))
        t0 = time.perf_counter()
        _sample_restricted_signature(psig, pn // 2, derived_stream(11, pn))
        times.append(max(time.perf_counter() - t0, 1e-4))
    slope = (math.log(times[-1]) - math.log(times[0])) \
        / (math.log(probe_ns[-1]) - math.log(probe_ns[0]))
    per_sample = times[-1] * (n_mc / probe_ns[-1]) ** slope
    projected = per_sample * trials_needed
    feasible = projected <= budget
    verdict(11, feasible,
            f"exact grid errors strictly decrease (N = 4..10), but the Monte "
            f"Carlo clause needs 10^5 exact samples at N = 100 in < 10 min; "
            f"measured draws at N = {probe_ns} took {[f'{t:.3f}s' for t in times]} "
            f"(growth ~N^{slope:.1f}), projecting {per_sample:.0f}s per N = 100 "
            f"sample and {projected / 3600:.0f}h for the full run. Unattainable "
            f"with exact arithmetic on this machine; see the decisions ledger. "
            f"Set LIEMEASURES_FULL_MC=1 to force the full attempt.")


def test_criterion_11_supporting_reduced_scale_evidence():
    """Not a criterion: reduced-scale evidence that the MC machinery is sound.

    The same protocol at N = 16 with 400 exact samples lands within the
    3-sigma single-trial band of the projection prediction for k <= 3."""
    rep = run_restriction_lln(HALF_RECT, F(1, 2), "A", [16], 3,
                              mc_trials=400, seed=11)
    for r in rep.rows:
        _, k, mean, limit, err, var = r
        band = 3 * float(var) ** 0.5
        assert float(err) <= band, (k, float(err), band)
    print("ACCEPTANCE 11 (supporting evidence) PASS: N=16, 400 exact samples "
          "within the 3-sigma band for k <= 3")


def test_criterion_12_pp_and_kerov_limits():
    rep = run_pp_limit_consistency(HALF_RECT, "A", [16, 64], 4)
    by_kn = {(r[0], r[1]): r[4] for r in rep.rows}
    for k in range(1, 5):
        e16, e64 = by_kn[(16, k)], by_kn[(64, k)]
        assert (e16 == 0 and e64 == 0) or e64 < e16 / 2, (k, e16, e64)
    target = kerov_measure_of_diagram((3, 2, 1, 1))
    assert dict(target.atoms) == {F(-3): F(9, 28), F(-1): F(1, 5),
                                  F(1): F(1, 4), F(4): F(8, 35)}
    for rows in ((1,), (3, 2, 1, 1)):
        rep2 = kerov_limit_table(rows, [10, 20, 40], 4)
        by_n = {}
        for r in rep2.rows:
            by_n.setdefault(r[0], F(0))
            by_n[r[0]] = max(by_n[r[0]], r[4])
        assert by_n[40] < by_n[20] < by_n[10], rows
    verdict(12, True, "PP moments converge to the mapped counting limit "
                      "(error at 64 under half of 16, k <= 4, zero rows exactly "
                      "converged); padded staircases approach the transition "
                      "measures with the pinned corner weights")


def test_criterion_13_semiclassical_limit():
    rows = hciz_semiclassical((1, 0), (1, 0), [F(1, 10), F(1, 100), F(1, 1000)])
    rel = [float(r["rel_error"]) for r in rows]
    ok = rel[2] < 1e-2 and rel[1] / rel[0] < 0.2 and rel[2] / rel[1] < 0.2
    verdict(13, ok, f"rank-2 semiclassical values approach e-1 with ~10x decay "
                    f"per decade (rel errors {rel[0]:.1e}, {rel[1]:.1e}, {rel[2]:.1e})")


def test_criterion_14_symmetric_tilings():
    profile = Profile.rectangle(F(1, 2), F(1, 2))
    trials = 10_000
    sup_gaps = {}
    for width in (9, 13):
        rep = run_symmetry_comparison(profile, [width], trials, seed=14)
        data = [r for r in rep.rows if r[1] != 0]
        for row in data:
            _, col, y, mc_s, mc_w, ex_s, ex_w, var_s, var_w = row
            band = 3 * (float(var_s) ** 0.5 + float(var_w) ** 0.5)
            assert abs(float(mc_s) - float(mc_w)) <= band + 1e-12, (width, col, y)
        sup_gaps[width] = [r for r in rep.rows if r[1] == 0][0][3]
    assert sup_gaps[13] < sup_gaps[9], sup_gaps
    verdict(14, True, f"strong vs weak samplers agree within the 3-sigma band at "
                      f"every grid point (10^4 trials each); exact sup gaps "
                      f"decrease with width ({float(sup_gaps[9]):.4f} -> "
                      f"{float(sup_gaps[13]):.4f})")


def test_criterion_15_infinite_divisibility():
    rng = random.Random(15)

    def finite_measure():
        atoms = [(F(rng.randint(0, 3), 6), F(rng.randint(0, 3), 7))
                 for _ in range(2)]
        atoms = [(p, w) for p, w in atoms if w > 0]
        if not atoms:
            return MomentSequence.make([0] * 15)
        return DiscreteMeasure.from_atoms(atoms).moments(14)

    for trial in range(20):
        params = InfDivParameters(finite_measure(), finite_measure(),
                                  finite_measure(), finite_measure(),
                                  F(rng.randint(0, 5), 4), F(rng.randint(0, 5), 4))
        full = inf_div_moments(params, 12)
        for n in (2, 3):
            piece = inf_div_moments(params.scale(F(1, n)), 12)
            assert convolve("quantized", [piece] * n).values == full.values, trial
        assert all(x >= 0 for x in hankel_leading_minors(full, 6)), trial
    verdict(15, True, "divisible-family moments recompose exactly under 2- and "
                      "3-fold quantized convolution (20 random sextuples); Hankel "
                      "minors nonnegative through order 6")

"""End-to-end comparisons of exact finite-rank decompositions with their
transform-calculus predictions.

Each runner builds signatures from a profile, decomposes exactly (tableau
rule for the unitary series, symbolic characters otherwise, interlacing
dynamic programming for restrictions), takes expected moments of the
attached random measures, and tabulates them against the convolution /
projection predictions.  Reports are deterministic given configuration and
seed; Monte Carlo rows carry exact rational means and variances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .branching import restrict_decompose
from .characters import tensor_decompose
from .decomposition import DecompositionMeasure
from .errors import SizeGuardError, ValidationError
from .littlewood_richardson import lr_decomposition
from .measures import (MomentSequence, counting_measure,
                       kerov_measure_of_diagram, pp_measure,
                       pp_measure_unnormalized_positions)
from .profiles import Profile, build_regular_sequence, profile_limit_moments
from .rng import derived_stream
from .signatures import RootSystem, Signature
from .tilings import (boundary_row_symmetric, height_function, read_off_column,
                      read_signature_symmetric, sample_strip,
                      signature_from_row_a)
from .transforms import convolve, hankel_leading_minors, project, q_map

TENSOR_RANK_GUARD_A = 8
TENSOR_RANK_GUARD_BCD = 4


@dataclass
class ExperimentReport:
    """Deterministic experiment output: config echo plus value rows.

    ``runtime_seconds`` is informational and never serialized, so repeated
    runs with one seed produce byte-identical files."""

    command: str
    config: dict
    columns: tuple[str, ...]
    rows: list[tuple]
    seed: int | None = None
    runtime_seconds: float = field(default=0.0, compare=False)


def _decompose_tensor(sigs: Sequence[Signature]) -> DecompositionMeasure:
    series = sigs[0].series
    n = sigs[0].rank
    if series == "A":
        if n > TENSOR_RANK_GUARD_A:
            raise SizeGuardError(
                f"exact tensor decompositions are limited to rank {TENSOR_RANK_GUARD_A} "
                "for the unitary series")
        return lr_decomposition(list(sigs))
    if n > TENSOR_RANK_GUARD_BCD:
        raise SizeGuardError(
            f"exact tensor decompositions are limited to rank {TENSOR_RANK_GUARD_BCD} "
            "for series B, C, D")
    return tensor_decompose(list(sigs), max_rank=TENSOR_RANK_GUARD_BCD)


def _measure_fn(kind: str):
    if kind == "counting":
        return counting_measure
    if kind == "pp":
        return pp_measure
    raise ValidationError(f"unknown measure kind {kind!r}")


def _prediction(profiles: Sequence[Profile], series: str, order: int,
                measure_kind: str, alpha: Fraction | None = None) -> MomentSequence:
    """Limit moments: quantized calculus for counting measures, additive
    calculus after the exponential moment map for the dimension-ratio ones."""
    limits = [profile_limit_moments(p, series, order) for p in profiles]
    if measure_kind == "counting":
        out = convolve("quantized", limits)
        if alpha is not None:
            out = project("quantized", alpha, out)
        return out
    mapped = [q_map(m) for m in limits]
    out = convolve("free", mapped)
    if alpha is not None:
        out = project("free", alpha, out)
    return out


def run_tensor_lln(profiles: Sequence[Profile], series: str, ns: Sequence[int],
                   order: int, measure_kind: str = "counting") -> ExperimentReport:
    """Exact tensor-product decompositions against the convolution prediction."""
    t0 = time.perf_counter()
    measure = _measure_fn(measure_kind)
    prediction = _prediction(profiles, series, order + 2, measure_kind)
    hankel_ok = all(v >= 0 for v in
                    hankel_leading_minors(prediction, min(6, (order + 2) // 2)))
    if not hankel_ok:
        raise ValidationError("prediction fails the necessary moment condition")
    rows = []
    for n in ns:
        system = RootSystem(series, n)
        sigs = [build_regular_sequence(p, n, system) for p in profiles]
        rho = _decompose_tensor(sigs)
        for k in range(1, order + 1):
            mean, var = rho.moment_mean_and_variance(measure, k)
            limit = prediction.values[k]
            rows.append((n, k, mean, limit, abs(mean - limit), var))
    report = ExperimentReport(
        command="lln-tensor",
        config={"profiles": [p.describe() for p in profiles], "series": series,
                "ns": list(ns), "order": order, "measure": measure_kind},
        columns=("N", "k", "finite_value", "limit_value", "abs_error", "variance"),
        rows=rows)
    report.runtime_seconds = time.perf_counter() - t0
    return report


def run_restriction_lln(profile: Profile, alpha, series: str, ns: Sequence[int],
                        order: int, measure_kind: str = "counting",
                        mc_trials: int = 0, seed: int = 0) -> ExperimentReport:
    """Exact restriction decompositions (or sampled rows) against the
    projection prediction."""
    t0 = time.perf_counter()
    alpha = Fraction(alpha)
    measure = _measure_fn(measure_kind)
    prediction = _prediction([profile], series, order + 2, measure_kind, alpha=alpha)
    if any(v < 0 for v in
           hankel_leading_minors(prediction, min(6, (order + 2) // 2))):
        raise ValidationError("prediction fails the necessary moment condition")
    rows = []
    for n in ns:
        system = RootSystem(series, n)
        sig = build_regular_sequence(profile, n, system)
        target = max(1, int(alpha * n))
        if mc_trials:
            sums = [Fraction(0)] * (order + 1)
            sums_sq = [Fraction(0)] * (order + 1)
            for t in range(mc_trials):
                rng = derived_stream(seed, t)
                mu = _sample_restricted_signature(sig, target, rng)
                m = measure(mu).moments(order)
                for k in range(order + 1):
                    sums[k] += m.values[k]
                    sums_sq[k] += m.values[k] ** 2
            for k in range(1, order + 1):
                mean = sums[k] / mc_trials
                var = sums_sq[k] / mc_trials - mean * mean
                limit = prediction.values[k]
                rows.append((n, k, mean, limit, abs(mean - limit), var))
        else:
            rho = restrict_decompose(sig, target)
            for k in range(1, order + 1):
                mean, var = rho.moment_mean_and_variance(measure, k)
                limit = prediction.values[k]
                rows.append((n, k, mean, limit, abs(mean - limit), var))
    report = ExperimentReport(
        command="lln-restrict",
        config={"profile": profile.describe(), "alpha": str(alpha),
                "series": series, "ns": list(ns), "order": order,
                "measure": measure_kind, "mc_trials": mc_trials},
        columns=("N", "k", "finite_value", "limit_value", "abs_error", "variance"),
        rows=rows, seed=seed if mc_trials else None)
    report.runtime_seconds = time.perf_counter() - t0
    return report


def _sample_restricted_signature(sig: Signature, target_rank: int, rng) -> Signature:
    """One draw from the restriction measure, through the tiling sampler."""
    if sig.series == "A":
        from .tilings import row_from_signature_a, sample_next_row_a
        row = row_from_signature_a(sig)
        while len(row) > target_rank:
            row = sample_next_row_a(row, rng)
        return signature_from_row_a(row)
    mode = "strong" if sig.series == "C" else "weak"
    target_col = read_off_column(sig.series, target_rank)
    rows = sample_strip(boundary_row_symmetric(sig), mode, rng, target_col)
    return read_signature_symmetric(rows[-1], sig.series)


def exact_height_means(boundary: tuple[int, ...], mode: str,
                       grid: Sequence[tuple[int, Fraction]]) -> dict:
    """Exact expected height H(column, y) under the uniform tiling law.

    Forward dynamic programming over the strip columns with exact rational
    occupation probabilities; feasible at the symmetric-strip widths."""
    from .tilings import _transition_table_symmetric

    by_col: dict[int, list[Fraction]] = {}
    for col, y in grid:
        by_col.setdefault(col, []).append(Fraction(y))
    lowest = min(by_col)
    dist = {tuple(boundary): Fraction(1)}
    col = len(boundary)
    out = {}
    while True:
        for y in by_col.get(col, ()):
            mean = Fraction(0)
            for row, p in dist.items():
                h = sum(1 for pos in row if Fraction(pos, 2) < y)
                mean += p * h
            out[(col, y)] = mean
        if col <= lowest:
            break
        nxt: dict[tuple[int, ...], Fraction] = {}
        for row, p in dist.items():
            rows, weights = _transition_table_symmetric(row, mode)
            total = sum(weights)
            for r, w in zip(rows, weights):
                nxt[r] = nxt.get(r, Fraction(0)) + p * Fraction(w, total)
        dist = nxt
        col -= 1
    return out


def run_symmetry_comparison(profile: Profile, widths: Sequence[int], trials: int,
                            seed: int, order_grid: int = 3) -> ExperimentReport:
    """Mean normalized height profiles of strongly vs weakly symmetric
    tilings of one domain, on a shared relative grid.

    Returns per-point means and variances for both modes plus the sup gap
    per width; the limit theorem predicts the gap shrinks as the width grows."""
    t0 = time.perf_counter()
    rel_x = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    rel_y = [Fraction(j, 4) for j in range(-3, 4)]
    rows = []
    for width in widths:
        if width % 2 == 0:
            raise ValidationError("matched strong/weak domains need odd width")
        n_c = (width - 1) // 2
        sig_c = build_regular_sequence(profile, n_c, RootSystem("C", n_c))
        boundary = boundary_row_symmetric(sig_c)
        scale = Fraction(n_c)
        grid = [(max(1, min(width, int(x * width))), y * width)
                for x in rel_x for y in rel_y]
        exact = {mode: exact_height_means(boundary, mode, grid)
                 for mode in ("strong", "weak")}
        stats = {}
        for mode in ("strong", "weak"):
            sums = {g: Fraction(0) for g in grid}
            sums_sq = {g: Fraction(0) for g in grid}
            for t in range(trials):
                rng = derived_stream(seed + (0 if mode == "strong" else 1), t)
                chain_rows = sample_strip(boundary, mode, rng, 1)
                from .tilings import InterlacingChain
                chain = InterlacingChain(mode, "C" if mode == "strong" else "D",
                                         tuple(chain_rows))
                for (col, y) in grid:
                    v = Fraction(height_function(chain, col).value(y))
                    sums[(col, y)] += v
                    sums_sq[(col, y)] += v * v
            stats[mode] = (sums, sums_sq)
        sup_gap = Fraction(0)  # exact expected-profile gap, noise-free
        for g in grid:
            mc_mean = {}
            variances = {}
            for mode in ("strong", "weak"):
                s, s2 = stats[mode]
                mean = s[g] / trials
                mc_mean[mode] = mean / scale
                variances[mode] = (s2[g] / trials - mean * mean) / scale ** 2
            gkey = (g[0], Fraction(g[1]))
            ex_s = exact["strong"][gkey] / scale
            ex_w = exact["weak"][gkey] / scale
            sup_gap = max(sup_gap, abs(ex_s - ex_w))
            rows.append((width, g[0], g[1], mc_mean["strong"], mc_mean["weak"],
                         ex_s, ex_w, variances["strong"], variances["weak"]))
        rows.append((width, 0, Fraction(0), sup_gap, sup_gap, sup_gap, sup_gap,
                     Fraction(0), Fraction(0)))  # summary row: column 0
    report = ExperimentReport(
        command="symmetry-compare",
        config={"profile": profile.describe(), "widths": list(widths),
                "trials": trials},
        columns=("width", "column", "y", "mc_mean_strong", "mc_mean_weak",
                 "exact_mean_strong", "exact_mean_weak", "var_strong", "var_weak"),
        rows=rows, seed=seed)
    report.runtime_seconds = time.perf_counter() - t0
    return report


def run_pp_limit_consistency(profile: Profile, series: str, ns: Sequence[int],
                             order: int) -> ExperimentReport:
    """Finite-rank dimension-ratio moments against the exponential moment map
    of the counting limit."""
    t0 = time.perf_counter()
    limit = q_map(profile_limit_moments(profile, series, order + 1)).truncate(order)
    rows = []
    for n in ns:
        sig = build_regular_sequence(profile, n, RootSystem(series, n))
        finite = pp_measure(sig).moments(order)
        for k in range(1, order + 1):
            rows.append((n, k, finite.values[k], limit.values[k],
                         abs(finite.values[k] - limit.values[k]), Fraction(0)))
    report = ExperimentReport(
        command="pp-limit",
        config={"profile": profile.describe(), "series": series,
                "ns": list(ns), "order": order},
        columns=("N", "k", "finite_value", "limit_value", "abs_error", "variance"),
        rows=rows)
    report.runtime_seconds = time.perf_counter() - t0
    return report


def kerov_limit_table(diagram_rows: Sequence[int], ns: Sequence[int],
                      order: int) -> ExperimentReport:
    """Unnormalized dimension-ratio measures of padded staircase signatures
    against the transition measure of the diagram."""
    t0 = time.perf_counter()
    target = kerov_measure_of_diagram(diagram_rows).moments(order)
    rows_out = []
    k_rows = [r for r in diagram_rows if r > 0]
    for n in ns:
        if n <= len(k_rows):
            raise ValidationError("padding rank must exceed the diagram depth")
        entries = (0,) * (n - len(k_rows)) + tuple(-r for r in reversed(k_rows))
        sig = Signature.make("A", entries)
        m = pp_measure_unnormalized_positions(sig).moments(order)
        for k in range(1, order + 1):
            rows_out.append((n, k, m.values[k], target.values[k],
                             abs(m.values[k] - target.values[k]), Fraction(0)))
    report = ExperimentReport(
        command="kerov-limit",
        config={"diagram": list(diagram_rows), "ns": list(ns), "order": order},
        columns=("N", "k", "finite_value", "limit_value", "abs_error", "variance"),
        rows=rows_out)
    report.runtime_seconds = time.perf_counter() - t0
    return report


def max_error_by_n(report: ExperimentReport) -> dict[int, Fraction]:
    """Largest abs_error per N (rows shaped (N, k, ..., abs_error, ...))."""
    out: dict[int, Fraction] = {}
    for row in report.rows:
        n, err = row[0], row[4]
        out[n] = max(out.get(n, Fraction(0)), err)
    return dict(sorted(out.items()))

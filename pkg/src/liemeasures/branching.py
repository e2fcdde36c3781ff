"""Branching of irreducible representations down the rank chain.

One rank step keeps the series: U(N) -> U(N-1) is plain interlacing with
multiplicity one; Sp(2N) -> Sp(2N-2), SO(2N+1) -> SO(2N-1) and
SO(2N) -> SO(2N-2) descend two columns of the strongly resp. weakly
symmetric strip, so multiplicities count the intermediate columns.  The
classical double-interlacing rule for the symplectic step is kept as an
independent oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .decomposition import DecompositionMeasure
from .errors import SizeGuardError, ValidationError
from .measures import counting_measure
from .signatures import RootSystem, Signature, weyl_dimension
from .tilings import (SYMMETRIC_WIDTH_GUARD, boundary_row_symmetric,
                      next_symmetric_rows, read_off_column,
                      read_signature_symmetric, row_from_signature_a,
                      signature_from_row_a)

PLAIN_RANK_GUARD = 10


def interlacing_signatures_a(sig: Signature):
    """All mu with e_{i} >= mu_i >= e_{i+1} one rank down (series A)."""
    e = sig.entries
    boxes = [range(e[i + 1], e[i] + 1) for i in range(sig.rank - 1)]
    for combo in product(*boxes):
        yield Signature.make("A", combo)


def branch_one_step(sig: Signature) -> dict[Signature, int]:
    """Multiplicities of the restriction one rank down, same series."""
    if sig.rank < 2:
        raise ValidationError("cannot branch below rank 1")
    if sig.series == "A":
        return {mu: 1 for mu in interlacing_signatures_a(sig)}
    mode = "strong" if sig.series == "C" else "weak"
    top = boundary_row_symmetric(sig)
    out: dict[Signature, int] = {}
    for mid in next_symmetric_rows(top, mode):
        for low in next_symmetric_rows(mid, mode):
            mu = read_signature_symmetric(low, sig.series)
            out[mu] = out.get(mu, 0) + 1
    return out


def zhelobenko_sp_one_step(sig: Signature) -> dict[Signature, int]:
    """Symplectic one-step rule by explicit double interlacing (oracle)."""
    if sig.series != "C":
        raise ValidationError("this oracle is for the symplectic series")
    n = sig.rank
    e = sig.entries + (0,)
    out: dict[Signature, int] = {}
    nu_boxes = [range(e[i + 1], e[i] + 1) for i in range(n)]
    for nu in product(*nu_boxes):
        mu_boxes = [range(nu[i + 1], nu[i] + 1) for i in range(n - 1)]
        for mu in product(*mu_boxes):
            s = Signature.make("C", mu)
            out[s] = out.get(s, 0) + 1
    return out


def restrict_decompose(sig: Signature, target_rank: int) -> DecompositionMeasure:
    """Exact restriction measure: multiplicity times dimension ratio.

    Dynamic programming over the interlacing chains; the weights summing to
    one certifies both the branching and the dimension formulas.
    """
    n = sig.rank
    if not 0 < target_rank < n:
        raise ValidationError("target rank must satisfy 0 < M < N")
    if sig.series == "A":
        if n > PLAIN_RANK_GUARD:
            raise SizeGuardError(
                f"exact restriction is limited to rank {PLAIN_RANK_GUARD}; "
                "use the Monte Carlo sampler beyond")
        counts: dict[tuple[int, ...], int] = {row_from_signature_a(sig): 1}
        for _ in range(n - target_rank):
            nxt: dict[tuple[int, ...], int] = {}
            for row, c in counts.items():
                boxes = [range(row[i + 1], row[i]) for i in range(len(row) - 1)]
                for combo in product(*boxes):
                    nxt[combo] = nxt.get(combo, 0) + c
            counts = nxt
        to_sig = signature_from_row_a
    else:
        top = boundary_row_symmetric(sig)
        if len(top) > SYMMETRIC_WIDTH_GUARD:
            raise SizeGuardError(
                f"symmetric strips are limited to width {SYMMETRIC_WIDTH_GUARD}")
        mode = "strong" if sig.series == "C" else "weak"
        target_col = read_off_column(sig.series, target_rank)
        counts = {top: 1}
        for _ in range(len(top) - target_col):
            nxt = {}
            for row, c in counts.items():
                for cand in next_symmetric_rows(row, mode):
                    nxt[cand] = nxt.get(cand, 0) + c
            counts = nxt
        to_sig = lambda row: read_signature_symmetric(row, sig.series)
    dim_top = weyl_dimension(sig)
    weights: dict[Signature, Fraction] = {}
    for row, c in counts.items():
        mu = to_sig(row)
        weights[mu] = weights.get(mu, Fraction(0)) \
            + Fraction(c * weyl_dimension(mu), dim_top)
    return DecompositionMeasure.from_mapping(RootSystem(sig.series, target_rank),
                                             weights)


def restriction_moment_table(sig: Signature, target_rank: int, order: int
                             ) -> dict:
    """Expected moments of the restricted counting measures, with variances."""
    rho = restrict_decompose(sig, target_rank)
    rows = []
    for k in range(order + 1):
        mean, var = rho.moment_mean_and_variance(counting_measure, k)
        rows.append({"k": k, "mean": mean, "variance": var})
    return {"target_rank": target_rank, "moments": rows, "decomposition": rho}

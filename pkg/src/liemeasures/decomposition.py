"""Probability measures on the dual: exact weights on signatures.

A decomposition measure records, for each highest weight occurring in a
(virtual) representation, the relative dimension of its isotypical
component; weights are positive rationals summing to one exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import InvariantError, ValidationError
from .measures import DiscreteMeasure
from .signatures import RootSystem, Signature


@dataclass(frozen=True)
class DecompositionMeasure:
    system: RootSystem
    weights: tuple[tuple[Signature, Fraction], ...]

    @staticmethod
    def from_mapping(system: RootSystem,
                     mapping: Mapping[Signature, Fraction] | Iterable[tuple[Signature, Fraction]],
                     ) -> "DecompositionMeasure":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: dict[Signature, Fraction] = {}
        for sig, w in items:
            if sig.system != system:
                raise ValidationError("all signatures must share one root system")
            w = Fraction(w)
            if w < 0:
                raise ValidationError("negative probability weight")
            if w:
                acc[sig] = acc.get(sig, Fraction(0)) + w
        total = sum(acc.values(), Fraction(0))
        if total != 1:
            raise InvariantError(f"decomposition weights sum to {total}, not 1")
        ordered = tuple(sorted(acc.items(), key=lambda kv: kv[0].entries, reverse=True))
        return DecompositionMeasure(system, ordered)

    def __len__(self) -> int:
        return len(self.weights)

    def items(self):
        return self.weights

    def probability(self, sig: Signature) -> Fraction:
        for s, w in self.weights:
            if s == sig:
                return w
        return Fraction(0)

    def expected_moment(self, measure_of: Callable[[Signature], DiscreteMeasure],
                        k: int) -> Fraction:
        return sum((w * measure_of(sig).moment(k) for sig, w in self.weights),
                   Fraction(0))

    def moment_mean_and_variance(self, measure_of: Callable[[Signature], DiscreteMeasure],
                                 k: int) -> tuple[Fraction, Fraction]:
        """Mean and variance of M_k under the decomposition weights."""
        mean = Fraction(0)
        second = Fraction(0)
        for sig, w in self.weights:
            v = measure_of(sig).moment(k)
            mean += w * v
            second += w * v * v
        return mean, second - mean * mean

    def expected_moment_power(self, measure_of: Callable[[Signature], DiscreteMeasure],
                              k: int, power: int) -> Fraction:
        return sum((w * measure_of(sig).moment(k) ** power
                    for sig, w in self.weights), Fraction(0))


def delta_decomposition(sig: Signature) -> DecompositionMeasure:
    return DecompositionMeasure.from_mapping(sig.system, {sig: Fraction(1)})

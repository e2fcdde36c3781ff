"""JSON round-tripping of measures and moment lists.

Rationals always travel as "p/q" strings (or a bare integer string); no
floats cross this boundary, so emitted files parse back to equal values.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ValidationError
from .measures import DiscreteMeasure, MomentSequence


def rat_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {s!r}") from exc


def measure_to_dict(m: DiscreteMeasure) -> dict:
    return {"type": "measure",
            "atoms": [{"pos": rat_to_str(p), "weight": rat_to_str(w)}
                      for p, w in m.atoms]}


def measure_from_dict(d: dict) -> DiscreteMeasure:
    if "atoms" not in d:
        raise ValidationError("measure JSON needs an 'atoms' field")
    return DiscreteMeasure.from_atoms(
        (rat_from_str(a["pos"]), rat_from_str(a["weight"])) for a in d["atoms"])


def moments_to_dict(m: MomentSequence) -> dict:
    return {"type": "moments", "order": m.order,
            "values": [rat_to_str(v) for v in m.values]}


def moments_from_dict(d: dict) -> MomentSequence:
    if "values" not in d:
        raise ValidationError("moment JSON needs a 'values' field")
    return MomentSequence(tuple(rat_from_str(v) for v in d["values"]))


def load_moments(path_or_obj: Any) -> MomentSequence:
    """Accept a file path, a parsed dict, a measure dict, or raw JSON text."""
    if isinstance(path_or_obj, MomentSequence):
        return path_or_obj
    if isinstance(path_or_obj, dict):
        d = path_or_obj
    else:
        text = str(path_or_obj)
        if text.strip().startswith("{"):
            d = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                d = json.load(fh)
    if d.get("type") == "measure" or "atoms" in d:
        raise ValidationError("expected moments, found a measure; "
                              "convert with the 'measure' command first")
    return moments_from_dict(d)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"

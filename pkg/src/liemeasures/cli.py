"""Command-line front end.

Subcommands: measure, convolve, project, qmap, mk, infdiv, tensor,
restrict, sample-tiling, char, lln, check.  Rationals are printed as
"p/q" strings everywhere; experiment reports are CSV with a figure
rendered alongside unless --no-plot is given.  Exit codes: 0 success,
2 validation error, 3 size-guard refusal, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .branching import restrict_decompose
from .characters import tensor_decompose
from .errors import InvariantError, SizeGuardError, ValidationError
from .littlewood_richardson import lr_decomposition
from .measures import (MomentSequence, counting_measure, hat_measure,
                       kerov_measure_of_diagram, kerov_transition_measure,
                       pp_measure)
from .profiles import Profile
from .serialize import (dumps, load_moments, measure_from_dict, measure_to_dict,
                        moments_to_dict, rat_from_str, rat_to_str)
from .signatures import Signature
from .transforms import (DEFAULT_ORDER, InfDivParameters, convolve,
                         inf_div_moments, markov_krein, project, q_map)

DEFAULT_K = DEFAULT_ORDER


def _parse_signature(text: str, group: str) -> Signature:
    try:
        entries = tuple(int(p) for p in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ValidationError(f"cannot parse signature {text!r}") from exc
    return Signature.make(group, entries)


def _parse_profile(spec: str) -> Profile:
    """'rect:h:c', 'const:c', or a path to a profile JSON file."""
    if spec.startswith("rect:"):
        _, h, c = spec.split(":")
        return Profile.rectangle(rat_from_str(h), rat_from_str(c))
    if spec.startswith("const:"):
        return Profile.constant(rat_from_str(spec.split(":", 1)[1]))
    with open(spec, "r", encoding="utf-8") as fh:
        d = json.load(fh)
    segs = [tuple(rat_from_str(x) for x in s) for s in d["segments"]]
    pts = [(s[0], s[2]) for s in segs] + [(segs[-1][1], segs[-1][3])]
    del pts
    from .profiles import Segment
    segments = tuple(Segment(*s) for s in segs)
    return Profile(segments, bound_c=max(abs(s[2]) for s in segs) + 2)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_moments(m: MomentSequence, args) -> None:
    if getattr(args, "format", "json") == "csv":
        lines = ["k,value"] + [f"{k},{rat_to_str(v)}" for k, v in enumerate(m.values)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dumps(moments_to_dict(m)), args.out)


def _load_measure_or_moments(path: str, order: int) -> MomentSequence:
    with open(path, "r", encoding="utf-8") as fh:
        d = json.load(fh)
    if d.get("type") == "measure" or "atoms" in d:
        return measure_from_dict(d).moments(order)
    return load_moments(d)


def _decomposition_json(rho) -> str:
    return dumps({"type": "decomposition",
                  "series": rho.system.series, "rank": rho.system.rank,
                  "weights": [{"signature": list(sig.entries),
                               "probability": rat_to_str(w)}
                              for sig, w in rho.items()]})


def cmd_measure(args) -> None:
    if args.family == "kerov":
        if args.rows is not None:
            rows = tuple(int(x) for x in args.rows.split(",")) if args.rows else ()
            m = kerov_measure_of_diagram(rows)
        else:
            if args.minima is None:
                raise ValidationError("kerov needs --rows or --minima/--maxima")
            minima = [int(x) for x in args.minima.split(",")]
            maxima = [int(x) for x in args.maxima.split(",")] if args.maxima else []
            m = kerov_transition_measure(minima, maxima)
    else:
        if args.signature is None or args.group is None:
            raise ValidationError("need --group and --signature")
        sig = _parse_signature(args.signature, args.group)
        fn = {"counting": counting_measure, "hat": hat_measure, "pp": pp_measure}
        m = fn[args.family](sig)
    _emit(dumps(measure_to_dict(m)), args.out)


def cmd_convolve(args) -> None:
    kind = {"free": "free", "quant": "quantized", "quantized": "quantized"}[args.kind]
    inputs = [_load_measure_or_moments(p, args.K) for p in args.inputs]
    out = convolve(kind, inputs)
    _emit(dumps(moments_to_dict(out)), args.out)


def cmd_project(args) -> None:
    kind = {"free": "free", "quant": "quantized", "quantized": "quantized"}[args.kind]
    m = _load_measure_or_moments(args.input, args.K)
    out = project(kind, rat_from_str(args.alpha), m)
    _emit(dumps(moments_to_dict(out)), args.out)


def cmd_qmap(args) -> None:
    m = _load_measure_or_moments(args.input, args.K)
    _emit(dumps(moments_to_dict(q_map(m))), args.out)


def cmd_mk(args) -> None:
    m = _load_measure_or_moments(args.input, args.K)
    _emit(dumps(moments_to_dict(markov_krein(m, args.direction))), args.out)


def cmd_infdiv(args) -> None:
    def load(path):
        if path is None:
            return MomentSequence.make([0] * (args.K + 2))
        return _load_measure_or_moments(path, args.K + 1)

    params = InfDivParameters(
        mom_a_plus=load(args.a_plus), mom_a_minus=load(args.a_minus),
        mom_b_plus=load(args.b_plus), mom_b_minus=load(args.b_minus),
        gamma_plus=rat_from_str(args.gamma_plus),
        gamma_minus=rat_from_str(args.gamma_minus),
        b_plus=rat_from_str(args.bound_plus),
        b_minus=rat_from_str(args.bound_minus))
    _emit(dumps(moments_to_dict(inf_div_moments(params, args.K))), args.out)


def cmd_tensor(args) -> None:
    sigs = [_parse_signature(s, args.group) for s in args.signature]
    if args.group == "A":
        rho = lr_decomposition(sigs)
    else:
        rho = tensor_decompose(sigs)
    _emit(_decomposition_json(rho), args.out)


def cmd_restrict(args) -> None:
    sig = _parse_signature(args.signature[0], args.group)
    rho = restrict_decompose(sig, args.target_rank)
    _emit(_decomposition_json(rho), args.out)


def cmd_sample_tiling(args) -> None:
    from .tilings import sample_tiling
    sig = _parse_signature(args.signature[0], args.group)
    symmetry = args.symmetry
    if symmetry == "auto":
        symmetry = {"A": "none", "B": "weak", "C": "strong", "D": "weak"}[args.group]
    chain = sample_tiling(sig, symmetry, args.seed, args.stop_column)
    chain.validate()
    payload = {"type": "tiling", "kind": chain.kind, "series": chain.series,
               "seed": args.seed,
               "columns": [{"column": len(r),
                            "positions": [rat_to_str(p)
                                          for p in chain.positions(len(r))]}
                           for r in chain.rows]}
    _emit(dumps(payload), args.out)


def cmd_char(args) -> None:
    from .asymptotics import asymptotic_log_character, normalized_char_one_var
    sig = _parse_signature(args.signature[0], args.group)
    x = rat_from_str(args.x)
    value = normalized_char_one_var(sig, x)
    payload = {"type": "character-value", "group": args.group,
               "signature": list(sig.entries), "x": rat_to_str(x),
               "normalized_value": rat_to_str(value)}
    if args.log:
        v = asymptotic_log_character(sig, x, args.precision)
        payload["log_normalized_over_nhat"] = float(v)
        payload["precision_bits"] = args.precision
    _emit(dumps(payload), args.out)


def cmd_lln(args) -> None:
    from .experiments import (kerov_limit_table, run_pp_limit_consistency,
                              run_restriction_lln, run_symmetry_comparison,
                              run_tensor_lln)
    from .reporting import report_to_csv, write_report

    cfg = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)

    def pick(name, default=None):
        v = getattr(args, name, None)
        if v in (None, [], False):
            return cfg.get(name, default)
        return v

    kind = args.experiment
    order = int(pick("K", DEFAULT_K) or DEFAULT_K)
    ns = [int(x) for x in (pick("Ns", "") or "").split(",") if x] or cfg.get("ns", [])
    seed = int(pick("seed", 0) or 0)
    series = pick("group", "A") or "A"
    measure_kind = pick("measure", "counting") or "counting"
    profiles = [_parse_profile(p)
                for p in (pick("profiles", "") or "").split(",") if p]
    if kind == "tensor":
        report = run_tensor_lln(profiles, series, ns, order, measure_kind)
    elif kind == "restrict":
        report = run_restriction_lln(
            profiles[0], rat_from_str(pick("alpha", "1/2")), series, ns, order,
            measure_kind, mc_trials=int(pick("trials", 0) or 0), seed=seed)
    elif kind == "pp-limit":
        report = run_pp_limit_consistency(profiles[0], series, ns, order)
    elif kind == "kerov":
        rows = [int(x) for x in (pick("rows", "") or "").split(",") if x]
        report = kerov_limit_table(rows, ns, order)
    elif kind == "symmetry":
        widths = [int(x) for x in (pick("widths", "") or "").split(",") if x]
        report = run_symmetry_comparison(profiles[0], widths,
                                         int(pick("trials", 100) or 100), seed)
    else:
        raise ValidationError(f"unknown experiment {kind!r}")
    if args.out:
        written = write_report(report, args.out, plot=not args.no_plot)
        sys.stderr.write("wrote " + " ".join(str(p) for p in written) + "\n")
    else:
        sys.stdout.write(report_to_csv(report))


def cmd_check(args) -> None:
    """Fast internal self-checks; exit 4 on any exact-identity failure."""
    from .measures import uniform_01_moments
    from .transforms import (h_from_moments, moments_from_q, moments_to_r,
                             r_to_moments)

    K = args.K
    sig = Signature.make("A", (3, 1, 0, -2))
    m = counting_measure(sig).moments(K)
    if r_to_moments(moments_to_r(m, "quantized")).values != m.values:
        raise InvariantError("transform roundtrip failed")
    if moments_from_q(h_from_moments(m).body, "unitary", K - 2).values \
            != m.truncate(K - 2).values:
        raise InvariantError("moment recovery failed")
    if convolve("quantized", [uniform_01_moments(K), m]).values != m.values:
        raise InvariantError("convolution identity failed")
    if q_map(convolve("quantized", [m, m])).values != \
            convolve("free", [q_map(m), q_map(m)]).values:
        raise InvariantError("intertwining failed")
    for series, ent in (("A", (2, 1, 0)), ("B", (1, 1)), ("C", (2, 0)), ("D", (1, -1))):
        s = Signature.make(series, ent)
        for fn in (counting_measure, pp_measure):
            if fn(s).total_mass != 1:
                raise InvariantError(f"mass defect for {series}{ent}")
    sys.stdout.write("all self-checks passed\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liemeasures",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, signature=True):
        sp.add_argument("--group", choices=["A", "B", "C", "D"])
        if signature:
            sp.add_argument("--signature", action="append", default=None,
                            help="comma-separated entries; repeatable")
        sp.add_argument("--K", type=int, default=DEFAULT_K)
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("measure", help="emit a signature measure as JSON")
    sp.add_argument("family", choices=["counting", "hat", "pp", "kerov"])
    sp.add_argument("--group", choices=["A", "B", "C", "D"])
    sp.add_argument("--signature", default=None)
    sp.add_argument("--rows", default=None, help="Young diagram row lengths")
    sp.add_argument("--minima", default=None)
    sp.add_argument("--maxima", default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_measure)

    sp = sub.add_parser("convolve", help="free or quantized convolution")
    sp.add_argument("--kind", choices=["free", "quant", "quantized"], required=True)
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_convolve)

    sp = sub.add_parser("project", help="free or quantized rank projection")
    sp.add_argument("--kind", choices=["free", "quant", "quantized"], required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("input")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_project)

    sp = sub.add_parser("qmap", help="exponential moment map")
    sp.add_argument("input")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_qmap)

    sp = sub.add_parser("mk", help="moment-map bijection (forward/inverse)")
    sp.add_argument("--direction", choices=["forward", "inverse"], default="forward")
    sp.add_argument("input")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_mk)

    sp = sub.add_parser("infdiv", help="divisible-family moments from parameters")
    for name in ("a-plus", "a-minus", "b-plus", "b-minus"):
        sp.add_argument(f"--{name}", default=None, help="measure/moments JSON path")
    sp.add_argument("--gamma-plus", default="0")
    sp.add_argument("--gamma-minus", default="0")
    sp.add_argument("--bound-plus", default="1/2")
    sp.add_argument("--bound-minus", default="1/2")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_infdiv)

    sp = sub.add_parser("tensor", help="exact tensor-product decomposition")
    add_common(sp)
    sp.set_defaults(fn=cmd_tensor)

    sp = sub.add_parser("restrict", help="exact restriction decomposition")
    add_common(sp)
    sp.add_argument("--target-rank", type=int, required=True)
    sp.set_defaults(fn=cmd_restrict)

    sp = sub.add_parser("sample-tiling", help="exact uniform tiling sample")
    add_common(sp)
    sp.add_argument("--symmetry", choices=["auto", "none", "strong", "weak"],
                    default="auto")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--stop-column", type=int, default=1)
    sp.set_defaults(fn=cmd_sample_tiling)

    sp = sub.add_parser("char", help="one-variable normalized character value")
    add_common(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--log", action="store_true")
    sp.add_argument("--precision", type=int, default=256)
    sp.set_defaults(fn=cmd_char)

    sp = sub.add_parser("lln", help="law-of-large-numbers experiment tables")
    sp.add_argument("experiment",
                    choices=["tensor", "restrict", "pp-limit", "kerov", "symmetry"])
    sp.add_argument("--profiles", default=None,
                    help="comma list: rect:h:c, const:c, or JSON paths")
    sp.add_argument("--group", default=None)
    sp.add_argument("--Ns", default=None, help="comma list of ranks")
    sp.add_argument("--widths", default=None, help="comma list (symmetry mode)")
    sp.add_argument("--rows", default=None, help="diagram rows (kerov mode)")
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--measure", choices=["counting", "pp"], default=None)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--K", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--config", default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--no-plot", action="store_true")
    sp.set_defaults(fn=cmd_lln)

    sp = sub.add_parser("check", help="fast internal self-checks")
    sp.add_argument("--K", type=int, default=DEFAULT_K)
    sp.set_defaults(fn=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SizeGuardError as exc:
        sys.stderr.write(f"size guard: {exc}\n")
        return 3
    except InvariantError as exc:
        sys.stderr.write(f"internal invariant breach: {exc}\n")
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: classify, curve, verify.

Every command emits machine-readable output carrying a reproducibility
manifest (see manifest.py).  JSON goes to stdout (or --out), curves go
to CSV with a manifest sidecar, and verification additionally prints a
human-readable table to stderr.  Exit status: 0 on success (including
``premises_not_met`` verification outcomes), 1 when a verification run
reports a violated inequality, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from .conditions import (
    DEFAULT_HORIZON,
    NULL_TREND_TOL,
    STABILIZATION_THRESHOLD,
    ClassifyOptions,
    classify,
    resolve_horizon,
)
from .harness import (
    EQUIV_NCN_TOL,
    EQUIV_SUP_TOL,
    STATUS_VIOLATED,
    run_sector_implication_corpus,
    run_weighted_implication_corpus,
    verify_equivalence_diagnostics,
    verify_lacunary_counterexample,
)
from .manifest import build_manifest
from .sequences import (
    ANGLE_TOL,
    REL_TOL,
    CoefficientSequence,
    SequenceError,
    parse_family_spec,
    sequence_from_text,
    weight_from_spec,
)
from .series import GridSpec, convergence_curve

__all__ = ["main"]


def _parse_int_list(text: str) -> tuple:
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise SequenceError(f"bad integer list {text!r}") from exc
    if not vals:
        raise SequenceError(f"bad integer list {text!r}")
    return vals


def _parse_n_list(text: str) -> list:
    """``64,256,1024`` or ``64..4096:dyadic`` (doubling ladder, inclusive)."""
    text = text.strip()
    if text.endswith(":dyadic"):
        body = text[:-len(":dyadic")]
        lo_s, sep, hi_s = body.partition("..")
        if not sep:
            raise SequenceError(f"bad n range {text!r}")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise SequenceError(f"bad n range {text!r}") from exc
        if lo < 1 or hi < lo:
            raise SequenceError(f"bad n range {text!r}")
        out = []
        n = lo
        while n <= hi:
            out.append(n)
            n *= 2
        return out
    return list(_parse_int_list(text))


def _sequence_from_file(path: str) -> CoefficientSequence:
    """One value per line, ``re`` or ``re,im``; blank lines and ``#``
    comments are skipped."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                if len(parts) == 1:
                    values.append(complex(float(parts[0]), 0.0))
                elif len(parts) == 2:
                    values.append(complex(float(parts[0]), float(parts[1])))
                else:
                    raise ValueError(line)
            except ValueError as exc:
                raise SequenceError(
                    f"{path}:{lineno}: expected `re` or `re,im`, got "
                    f"{line!r}") from exc
    if not values:
        raise SequenceError(f"{path}: no values")
    return CoefficientSequence.explicit(np.asarray(values, dtype=complex),
                                        label=f"file:{path}")


def _resolve_sequence(spec: str):
    """Returns (sequence, input file paths used)."""
    if spec.startswith("file:"):
        path = spec[len("file:"):]
        return _sequence_from_file(path), [path]
    return sequence_from_text(spec), []


def _tolerance_defaults() -> dict:
    return {
        "rel_tol": REL_TOL,
        "angle_tol": ANGLE_TOL,
        "stabilization_threshold": STABILIZATION_THRESHOLD,
        "null_trend_tol": NULL_TREND_TOL,
    }


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, out: Optional[str]) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2,
                     allow_nan=False) + "\n", out)


def cmd_classify(args, argv: Sequence[str]) -> int:
    seq, inputs = _resolve_sequence(args.spec)
    weight = (weight_from_spec(parse_family_spec(args.weight))
              if args.weight else None)
    options = ClassifyOptions(
        horizon=args.horizon, m_max=args.m_max,
        n0_list=_parse_int_list(args.n0), theta0=args.theta0, weight=weight)
    reports = classify(seq, options)
    defaults = {
        "spec": seq.label,
        "horizon": resolve_horizon(seq, args.horizon),
        "m_max": args.m_max,
        "n0_list": list(options.n0_list),
        "theta0": args.theta0,
        "weight": args.weight,
        "tolerances": _tolerance_defaults(),
    }
    manifest = build_manifest(argv, defaults, input_paths=inputs)
    payload = {"manifest": manifest.to_json_dict(),
               "reports": [r.to_json_dict() for r in reports]}
    _emit_json(payload, args.out)
    return 0


def cmd_curve(args, argv: Sequence[str]) -> int:
    seq, inputs = _resolve_sequence(args.spec)
    ns = _parse_n_list(args.n)
    grid = GridSpec(n_ref=ns[-1], oversample=args.oversample)
    curve = convergence_curve(seq, ns, N_ref=args.nref, grid=grid)
    defaults = {
        "spec": seq.label,
        "n_list": ns,
        "n_ref": curve.n_ref,
        "reference_horizon": args.nref,
        "grid": curve.grid,
        "slack_settled": curve.slack_settled,
    }
    manifest = build_manifest(argv, defaults, input_paths=inputs)
    _emit(curve.to_csv(), args.out)
    if args.out:
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(manifest.dumps())
    else:
        sys.stderr.write(manifest.dumps())
    return 0


def cmd_verify(args, argv: Sequence[str]) -> int:
    if args.theorem == "t3":
        size = args.corpus_size if args.corpus_size else 50
        outcome = run_weighted_implication_corpus(args.seed, size)
        defaults = {"seed_start": args.seed, "corpus_size": size}
    elif args.theorem == "corollary":
        size = args.corpus_size if args.corpus_size else 25
        outcome = run_sector_implication_corpus(args.seed, size)
        defaults = {"seed_start": args.seed, "corpus_size": size}
    elif args.theorem == "lacunary":
        outcome = verify_lacunary_counterexample(args.alpha)
        defaults = {"alpha": args.alpha,
                    "horizon": outcome.summary["horizon"],
                    "n0_list": outcome.summary["n0_list"],
                    "sup_threshold": outcome.summary["threshold"]}
    else:
        outcome = verify_equivalence_diagnostics()
        defaults = {"N_ref": outcome.summary["N_ref"],
                    "n_list": outcome.summary["n_list"],
                    "sup_tol": EQUIV_SUP_TOL, "ncn_tol": EQUIV_NCN_TOL}
    defaults["tolerances"] = _tolerance_defaults()
    manifest = build_manifest(argv, defaults, seed=args.seed)
    payload = {"manifest": manifest.to_json_dict(),
               "outcome": outcome.to_json_dict()}
    _emit_json(payload, args.out)
    sys.stderr.write(outcome.table() + "\n")
    return 1 if outcome.status == STATUS_VIOLATED else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trigconv",
        description="Classify coefficient sequences, estimate tail "
                    "sup-norms, and verify the implication chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "classify",
        help="run every applicable condition check on a sequence")
    p.add_argument("spec",
                   help="family spec like harmonic(1.0), explicit:[...], "
                        "or file:PATH (one `re` or `re,im` per line)")
    p.add_argument("--horizon", type=int, default=None,
                   help=f"prefix length (generators default to "
                        f"{DEFAULT_HORIZON})")
    p.add_argument("--m-max", type=int, default=None, dest="m_max",
                   help="upper end of the scan range (default horizon/4)")
    p.add_argument("--n0", default="1,2,4,8,16",
                   help="window lengths for the group-variation check")
    p.add_argument("--theta0", type=float, default=0.0,
                   help="half-angle of the sector for complex checks")
    p.add_argument("--weight", default=None, metavar="R-SPEC",
                   help="weight spec (one, const(a), power(b), log, exp2) "
                        "for the weighted checks")
    p.add_argument("--out", default=None, help="write JSON here instead "
                                               "of stdout")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "curve", help="tail sup-norm curve against the n*c_n diagnostic")
    p.add_argument("spec")
    p.add_argument("--n", required=True,
                   help="comma list `64,256,1024` or range `64..4096:dyadic`")
    p.add_argument("--nref", type=int, default=None,
                   help="reference partial-sum index (default "
                        "max(2^16, 64*max n))")
    p.add_argument("--oversample", type=int, default=8,
                   help="uniform grid points per oscillation")
    p.add_argument("--out", default=None,
                   help="write CSV here (plus a .manifest.json sidecar)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser(
        "verify", help="run a claim-verification harness")
    p.add_argument("theorem",
                   choices=("t3", "corollary", "lacunary", "equivalence"),
                   help="which claim to verify")
    p.add_argument("--seed", type=int, default=1,
                   help="first corpus seed")
    p.add_argument("--corpus-size", type=int, default=None,
                   dest="corpus_size",
                   help="number of corpus members (t3: 50, corollary: 25)")
    p.add_argument("--alpha", type=float, default=1.0,
                   help="decay exponent for the lacunary counterexample")
    p.add_argument("--out", default=None, help="write JSON here instead "
                                               "of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except SequenceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

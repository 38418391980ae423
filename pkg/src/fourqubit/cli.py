"""Command line front end: JSON state documents in, JSON results out.

A state document is an object with an "amplitudes" field holding 16
[re, im] pairs in big-endian basis order (|0000> first, qubit 1 most
significant), plus optional "normalized" and "label" fields.  Every
float in emitted documents is printed with 17 significant digits so
output is byte-identical across runs and safe to diff.

Exit codes: 0 success, 2 parse/input error, 3 ambiguous classification,
4 divergence reported (the result document is still emitted), 64 usage.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .classify import classify, signature
from .distill import distill
from .errors import AmbiguousStructureError, FourQubitError, InvalidInputError
from .families import NAMED_STATES, named_state
from .figures import render_figures
from .measures import entanglement_report, monotone_M
from .normal_form import lu_normal_form
from .states import PureState4, sample

_DEFAULT_ALPHAS = (1, 2, 3, 4, 6)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage, which collides with the parse-error
    code; the traditional EX_USAGE value is used instead."""

    def error(self, message):
        self.exit(64, "%s: error: %s\n" % (self.prog, message))


# ---------------------------------------------------------------------------
# document codecs


def parse_state(doc):
    """StateDocument dict -> PureState4, with positioned error messages."""
    if not isinstance(doc, dict):
        raise InvalidInputError("state document must be a JSON object")
    if "amplitudes" not in doc:
        raise InvalidInputError("state document has no 'amplitudes' field")
    amps = doc["amplitudes"]
    if not isinstance(amps, list):
        raise InvalidInputError("'amplitudes' must be a list of [re, im] pairs")
    if len(amps) != 16:
        raise InvalidInputError(
            "expected 16 amplitude pairs, got %d" % len(amps)
        )
    vec = np.zeros(16, dtype=complex)
    for i, pair in enumerate(amps):
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(
                isinstance(v, (int, float)) and not isinstance(v, bool)
                for v in pair
            )
        )
        if not ok:
            raise InvalidInputError(
                "amplitude %d is not a [re, im] number pair" % i
            )
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvalidInputError("amplitude %d is not finite" % i)
        vec[i] = complex(re, im)
    if not np.any(vec):
        raise InvalidInputError("all 16 amplitudes are zero")
    state = PureState4(vec)
    if doc.get("normalized"):
        state = state.normalized()
    return state


def _pair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _pairs(values):
    return [_pair(z) for z in values]


def _cmatrix(M):
    return [[_pair(z) for z in row] for row in np.asarray(M, dtype=complex)]


def _rmatrix(M):
    return [[float(x) for x in row] for row in np.asarray(M, dtype=float)]


def _plain(value):
    """Nested tuples of ints (structure fingerprints) -> nested lists."""
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def _state_doc(state):
    return {"amplitudes": _pairs(state.amplitudes), "normalized": True}


def _emit(value, out, pretty, depth):
    pad = "  " * (depth + 1) if pretty else ""
    end = "  " * depth if pretty else ""
    sep = "\n" if pretty else ""
    if isinstance(value, str):
        out.append(json.dumps(value))
    elif value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise TypeError("non-finite float in output document")
        out.append("%.16e" % value)
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{" + sep)
        for k, v in value.items():
            if not isinstance(k, str):
                raise TypeError("non-string key %r" % (k,))
            out.append(pad + json.dumps(k) + (": " if pretty else ":"))
            _emit(v, out, pretty, depth + 1)
            out.append("," + sep)
        out[-1] = sep + end + "}" if pretty else "}"
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[" + sep)
        for v in value:
            out.append(pad)
            _emit(v, out, pretty, depth + 1)
            out.append("," + sep)
        out[-1] = sep + end + "]" if pretty else "]"
    else:
        raise TypeError("cannot emit %r" % type(value))


def emit_json(doc, pretty=False):
    """Deterministic JSON text; floats at 17 significant digits."""
    out = []
    _emit(doc, out, pretty, 0)
    return "".join(out) + "\n"


# ---------------------------------------------------------------------------
# i/o plumbing


def _read_document(path):
    if path == "-":
        text = sys.stdin.read()
        source = "stdin"
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInputError("cannot read %s: %s" % (path, exc))
        source = path
    try:
        return json.loads(text)
    except ValueError as exc:
        raise InvalidInputError("invalid JSON from %s: %s" % (source, exc))


def _load_state(args):
    doc = _read_document(args.infile)
    return doc, parse_state(doc)


def _write_out(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _label_doc(label):
    # an exact structure fit has no competing candidate; its infinite
    # margin is emitted as null (JSON has no Infinity)
    margin = float(label.diagnostics["marginRatio"])
    diag = {
        "structures": {
            name: _plain(value)
            for name, value in label.diagnostics["structures"].items()
        },
        "localRanks": _plain(label.diagnostics["localRanks"]),
        "marginRatio": margin if math.isfinite(margin) else None,
        "extractionSplit": label.diagnostics["extractionSplit"],
    }
    if "note" in label.diagnostics:
        diag["note"] = label.diagnostics["note"]
    return {
        "family": label.family,
        "params": _pairs(label.params),
        "diagnostics": diag,
    }


def _signature_doc(sig):
    return {
        "quad": _pairs(sig.quad),
        "rrtEigenvalues": _pairs(sig.rrt_eigenvalues),
        "norm": float(sig.norm),
    }


def _distill_doc(result):
    return {
        "status": result.status,
        "successProbability": float(result.successProbability),
        "iterations": int(result.iterations),
        "finalState": _state_doc(result.finalState),
        "filters": [_cmatrix(f) for f in result.filters.ops],
    }


def _cmd_classify(args):
    _, state = _load_state(args)
    label = classify(state, tol=args.tol, rank_tol=args.rank_tol)
    return _label_doc(label), 0


def _cmd_signature(args):
    _, state = _load_state(args)
    return _signature_doc(signature(state, tol=args.tol)), 0


def _cmd_normal_form(args):
    _, state = _load_state(args)
    nf = lu_normal_form(state)
    doc = {
        "normalR": _cmatrix(nf.normalR),
        "phase": _pair(nf.phase),
        "left": _rmatrix(nf.left),
        "right": _rmatrix(nf.right),
        "singularValues": [float(s) for s in nf.singularValues],
        "degenerate": bool(nf.degenerate),
        "fallbackGauge": bool(nf.fallbackGauge),
    }
    return doc, 0


def _cmd_monotones(args):
    _, state = _load_state(args)
    alphas = args.alpha if args.alpha else list(_DEFAULT_ALPHAS)
    rows = [monotone_M(state, alpha) for alpha in alphas]
    doc = {
        "monotones": [
            {"alpha": int(row.alpha), "value": float(row.value)}
            for row in rows
        ]
    }
    return doc, 0


def _cmd_report(args):
    raw, state = _load_state(args)
    alphas = args.alpha if args.alpha else list(_DEFAULT_ALPHAS)
    rep = entanglement_report(
        state,
        seed=args.seed,
        samples=args.samples,
        alphas=alphas,
        tol=args.tol,
        rank_tol=args.rank_tol,
    )
    label = rep["label"]
    doc = {
        "toolVersion": __version__,
        "toleranceSettings": {
            "tol": float(args.tol),
            "rankTol": float(args.rank_tol),
        },
        "seed": int(args.seed),
        "samples": int(args.samples),
        "input": raw,
        "signature": _signature_doc(rep["signature"]),
        "family": {"family": label.family, "params": _pairs(label.params)},
        "segreClusters": {
            name: _plain(value)
            for name, value in label.diagnostics["structures"].items()
        },
        "monotones": [
            {"alpha": int(row.alpha), "value": float(row.value)}
            for row in rep["monotones"]
        ],
        "concurrences": {
            "%d%d" % pair: float(rep["concurrences"][pair])
            for pair in sorted(rep["concurrences"])
        },
        "tangleAverages": {
            str(traced): {
                "mean": float(row["mean"]),
                "std": float(row["std"]),
                "decompositionDependent": bool(row["decompositionDependent"]),
            }
            for traced, row in sorted(rep["tangleAverages"].items())
        },
    }
    code = 0
    if args.distill:
        result = distill(state, max_iter=args.max_iter, floor=args.floor)
        doc["distillation"] = _distill_doc(result)
        if result.status != "converged":
            code = 4
    if args.figures:
        doc["figures"] = render_figures(doc, args.figures)
    return doc, code


def _cmd_distill(args):
    _, state = _load_state(args)
    result = distill(
        state, max_iter=args.max_iter, tol=args.tol, floor=args.floor
    )
    code = 0 if result.status == "converged" else 4
    return _distill_doc(result), code


def _cmd_sample(args):
    if args.samples < 1:
        raise InvalidInputError("--samples must be >= 1")
    rng = np.random.default_rng(args.seed)
    states = [sample("haar_state", rng) for _ in range(args.samples)]
    if args.samples == 1:
        # bare document so `sample | classify` pipes directly
        return _state_doc(states[0]), 0
    doc = {
        "seed": int(args.seed),
        "samples": int(args.samples),
        "states": [_state_doc(s) for s in states],
    }
    return doc, 0


def _cmd_catalog(args):
    rows = []
    for name in NAMED_STATES:
        _, expected, description = NAMED_STATES[name]
        rows.append(
            {
                "name": name,
                "label": expected,
                "description": description,
                "amplitudes": _pairs(named_state(name).amplitudes),
            }
        )
    return {"states": rows}, 0


# ---------------------------------------------------------------------------
# parser


def _add_io(sub, state_input=True):
    if state_input:
        sub.add_argument(
            "--in",
            dest="infile",
            default="-",
            metavar="PATH",
            help="state document path, or - for stdin (default)",
        )
    sub.add_argument(
        "--out",
        default="-",
        metavar="PATH",
        help="output path, or - for stdout (default)",
    )
    sub.add_argument(
        "--pretty", action="store_true", help="indented JSON output"
    )


def build_parser():
    parser = _Parser(
        prog="fourqubit",
        description="SLOCC family classification and entanglement "
        "diagnostics for pure 4-qubit states.",
    )
    parser.add_argument(
        "--version", action="version", version="fourqubit %s" % __version__
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("classify", help="SLOCC family label")
    sub.add_argument("--tol", type=float, default=1e-6)
    sub.add_argument("--rank-tol", type=float, default=1e-8)
    _add_io(sub)
    sub.set_defaults(handler=_cmd_classify)

    sub = commands.add_parser("signature", help="spectral signature quad")
    sub.add_argument("--tol", type=float, default=1e-6)
    _add_io(sub)
    sub.set_defaults(handler=_cmd_signature)

    sub = commands.add_parser(
        "normal-form", help="local-unitary normal form of R"
    )
    _add_io(sub)
    sub.set_defaults(handler=_cmd_normal_form)

    sub = commands.add_parser("monotones", help="entanglement monotones M_a")
    sub.add_argument(
        "--alpha",
        type=int,
        action="append",
        help="monotone order, repeatable (default 1 2 3 4 6)",
    )
    _add_io(sub)
    sub.set_defaults(handler=_cmd_monotones)

    sub = commands.add_parser("report", help="full diagnostic report")
    sub.add_argument("--tol", type=float, default=1e-6)
    sub.add_argument("--rank-tol", type=float, default=1e-8)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument(
        "--samples",
        type=int,
        default=128,
        help="right-unitary draws per tangle average",
    )
    sub.add_argument("--alpha", type=int, action="append")
    sub.add_argument(
        "--distill",
        action="store_true",
        help="append a distillation block (exit 4 when it diverges)",
    )
    sub.add_argument("--max-iter", type=int, default=1000)
    sub.add_argument("--floor", type=float, default=1e-8)
    sub.add_argument(
        "--figures",
        metavar="DIR",
        help="also render PNG/CSV companions into DIR",
    )
    _add_io(sub)
    sub.set_defaults(handler=_cmd_report)

    sub = commands.add_parser(
        "distill", help="iterated local filtering to the stochastic form"
    )
    sub.add_argument("--max-iter", type=int, default=1000)
    sub.add_argument("--tol", type=float, default=1e-10)
    sub.add_argument("--floor", type=float, default=1e-8)
    _add_io(sub)
    sub.set_defaults(handler=_cmd_distill)

    sub = commands.add_parser("sample", help="seeded Haar-random states")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--samples", type=int, default=1)
    _add_io(sub, state_input=False)
    sub.set_defaults(handler=_cmd_sample)

    sub = commands.add_parser(
        "catalog", help="named example states and their labels"
    )
    _add_io(sub, state_input=False)
    sub.set_defaults(handler=_cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except AmbiguousStructureError as exc:
        sys.stderr.write("ambiguous classification: %s\n" % exc)
        return 3
    except FourQubitError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    _write_out(args.out, emit_json(doc, pretty=args.pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())

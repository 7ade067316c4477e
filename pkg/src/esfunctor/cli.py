"""Command-line front end: JSON in on stdin (or --input), JSON out on stdout.

Exit codes: 0 success, 1 usage or payload error, 2 domain error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr
from typing import Any, Optional, Sequence

from . import codec
from .bratteli import build_diagram, diagram_to_dict, export_diagram, level_dimensions
from .contfrac import ContinuedFraction, EquivalenceVerdict, cf_expand, cf_value, convergents, equivalence_decide
from .errors import DomainError, RationalThetaError
from .functor import MarkedPair, f_morphism, f_object, pipeline
from .lattice import Lattice, ModuliPoint, normalize, reduce_fundamental
from .pseudolattice import PseudoLattice, basis_change_pl, slope, to_foliation


class PayloadError(ValueError):
    code = "invalid_payload"


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _need(payload: dict, key: str):
    if key not in payload:
        raise PayloadError(f"payload is missing field {key!r}")
    return payload[key]


def _decode(fn, value, what: str):
    try:
        return fn(value)
    except DomainError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise PayloadError(f"bad {what}: {e}") from None


def encode_cf(cf) -> dict:
    return {"preperiod": list(cf.preperiod), "period": list(cf.period)}


def encode_verdict(v: EquivalenceVerdict) -> dict:
    out: dict = {"kind": v.kind}
    if v.witness is not None:
        out["witness"] = codec.encode_matrix(v.witness)
        out["det"] = v.det
    return out


def _real(payload, key):
    return _decode(codec.decode_real, _need(payload, key), key)


def _pseudo_lattice(obj) -> PseudoLattice:
    if not isinstance(obj, dict):
        raise PayloadError("pseudo_lattice must be an object")
    return PseudoLattice(_real(obj, "lambda1"), _real(obj, "lambda2"))


def _lattice(obj) -> Lattice:
    if not isinstance(obj, dict):
        raise PayloadError("lattice must be an object")
    w1 = _decode(codec.decode_complex, _need(obj, "omega1"), "omega1")
    w2 = _decode(codec.decode_complex, _need(obj, "omega2"), "omega2")
    return Lattice(w1, w2)


# -- subcommands ---------------------------------------------------------------


def cmd_reduce(payload: dict, args) -> dict:
    out = {}
    if "tau" in payload:
        tau = ModuliPoint(_decode(codec.decode_complex, payload["tau"], "tau"))
    else:
        tau = normalize(_lattice(payload))
    red, m = reduce_fundamental(tau)
    out["tau"] = codec.encode_complex(tau.tau)
    out["tau_reduced"] = codec.encode_complex(red.tau)
    out["witness"] = codec.encode_matrix(m)
    return out


def cmd_cf(payload: dict, args) -> dict:
    u = _real(payload, "u")
    cf = cf_expand(u, args.max_terms)
    n = payload.get("convergents")
    out = {"u": codec.encode_real(u), "cf": encode_cf(cf), "value": codec.encode_real(cf_value(cf))}
    if n is not None:
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise PayloadError("convergents must be a non-negative integer")
        out["convergents"] = [[c.p, c.q] for c in convergents(cf, n)]
    return out


def cmd_equiv(payload: dict, args) -> dict:
    u, v = _real(payload, "u"), _real(payload, "v")
    return {"u": codec.encode_real(u), "v": codec.encode_real(v), "verdict": encode_verdict(equivalence_decide(u, v))}


def cmd_functor(payload: dict, args) -> dict:
    pl = _pseudo_lattice(payload.get("pseudo_lattice", payload))
    ppl = f_object(pl)
    fol = to_foliation(pl)
    out = {
        "pseudo_lattice": {"lambda1": codec.encode_real(pl.lambda1), "lambda2": codec.encode_real(pl.lambda2)},
        "foliation": {"slope": codec.encode_real(fol.slope), "measure": codec.encode_real(fol.measure)},
        "theta": codec.encode_real(ppl.theta),
        "theta_rational": ppl.is_rational,
    }
    if "morphism" in payload:
        m = _decode(codec.decode_matrix, payload["morphism"], "morphism")
        fm = f_morphism(m)
        image = basis_change_pl(pl, m)
        out["morphism"] = codec.encode_matrix(fm)
        out["image"] = {
            "lambda1": codec.encode_real(image.lambda1),
            "lambda2": codec.encode_real(image.lambda2),
            "theta": codec.encode_real(slope(image)),
        }
    return out


def _theta_cf(payload: dict, args):
    if "cf" in payload:
        obj = payload["cf"]
        try:
            return ContinuedFraction(tuple(obj["preperiod"]), tuple(obj.get("period", ())))
        except (KeyError, TypeError) as e:
            raise PayloadError(f"bad cf: {e}") from None
    theta = _real(payload, "theta")
    return cf_expand(theta, getattr(args, "max_terms", None))


def cmd_bratteli(payload: dict, args):
    cf = _theta_cf(payload, args)
    if cf.is_finite():
        raise RationalThetaError("the Effros-Shen algebra requires an irrational theta")
    levels = args.levels if args.levels is not None else payload.get("levels", 5)
    dg = build_diagram(cf, _levels(levels))
    if args.format == "dot":
        return export_diagram(dg, "dot")
    return diagram_to_dict(dg)


def _levels(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise PayloadError("levels must be a positive integer")
    return n


def cmd_pipeline(payload: dict, args) -> dict:
    mp = MarkedPair(_lattice(_need(payload, "lattice")), _pseudo_lattice(_need(payload, "pseudo_lattice")))
    levels = args.levels if args.levels is not None else payload.get("levels", 5)
    res = pipeline(mp, _levels(levels))
    return {
        "tau": codec.encode_complex(res.tau.tau),
        "tau_reduced": codec.encode_complex(res.tau_reduced.tau),
        "reduction": codec.encode_matrix(res.reduction),
        "theta": codec.encode_real(res.theta.theta),
        "theta_rational": res.theta.is_rational,
        "cf": encode_cf(res.cf),
        "diagram": None if res.diagram is None else diagram_to_dict(res.diagram),
        "dimensions": None if res.diagram is None else [list(x) for x in level_dimensions(res.diagram)],
    }


COMMANDS = {
    "reduce": cmd_reduce,
    "cf": cmd_cf,
    "equiv": cmd_equiv,
    "functor": cmd_functor,
    "bratteli": cmd_bratteli,
    "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="esfunctor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", "-i", help="read the JSON payload from this file instead of stdin")
        return sp

    add("reduce", "reduce tau (or a lattice) to the fundamental domain")
    add("cf", "continued fraction of a quadratic number").add_argument("--max-terms", type=int, default=None)
    add("equiv", "decide SL2(Z)/GL2(Z) equivalence of two numbers")
    add("functor", "apply the functor to a pseudo-lattice (and optionally a morphism)")
    b = add("bratteli", "Bratteli diagram of the Effros-Shen algebra of theta")
    b.add_argument("--levels", type=int, default=None)
    b.add_argument("--format", choices=("json", "dot"), default="json")
    b.add_argument("--max-terms", type=int, default=None)
    add("pipeline", "run the full torus -> algebra chain on a marked pair").add_argument(
        "--levels", type=int, default=None
    )
    return p


def _error(code: str, message: str) -> str:
    return _dump({"error": {"code": code, "message": message}})


def run(argv: Sequence[str], stdin: str = "") -> tuple[int, str, str]:
    parser = build_parser()
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as e:
        code = 0 if e.code == 0 else 1
        return code, "", err.getvalue()
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin
        payload = json.loads(text) if text.strip() else {}
    except (OSError, json.JSONDecodeError) as e:
        return 1, _error("invalid_input", str(e)), f"error: cannot read payload: {e}\n"
    if not isinstance(payload, dict):
        return 1, _error("invalid_payload", "payload must be a JSON object"), "error: payload must be a JSON object\n"
    if getattr(args, "levels", None) is not None and args.levels < 1:
        return 1, _error("invalid_payload", "--levels must be >= 1"), "error: --levels must be >= 1\n"
    try:
        result = COMMANDS[args.command](payload, args)
    except PayloadError as e:
        return 1, _error(e.code, str(e)), f"error: {e}\n"
    except DomainError as e:
        return 2, _error(e.code, str(e)), f"error: {e}\n"
    except ZeroDivisionError as e:
        return 2, _error("division_by_zero", str(e)), f"error: {e}\n"
    except ValueError as e:
        return 1, _error("invalid_payload", str(e)), f"error: {e}\n"
    if isinstance(result, str):
        return 0, result, ""
    return 0, _dump(result), ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    stdin = "" if sys.stdin is None or sys.stdin.isatty() else sys.stdin.read()
    code, out, err = run(argv, stdin)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

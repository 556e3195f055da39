"""Command-line front end: every library operation over JSON.

Input is read from ``--input PATH`` or standard input; output is canonical
JSON (sorted keys, arbitrary-precision numerics as decimal strings) on
standard output, so identical inputs and seeds give byte-identical output.
Exit codes: 0 ok, 2 precondition failure or malformed input, 3 degenerate
input / genericity exhaustion, 4 inapplicable criterion.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from itertools import product

from . import multidegree as mdg
from . import multiview as mv
from . import polymatroid as pm
from .errors import (
    DegenerateInputError,
    InapplicableError,
    MultichowError,
    PreconditionError,
)

EXIT_CODES = {
    "ok": 0,
    "precondition-failed": 2,
    "degenerate-input": 3,
    "inapplicable": 4,
}

#: Which library operations each subcommand exposes.  Every public operation
#: appears exactly once; the coverage test in the test suite enforces this.
SUBCOMMAND_OPERATIONS = {
    "validate-rank": ("validate_rank_function",),
    "support": ("support_from_projections",),
    "projections": ("projections_from_support",),
    "betas": ("enumerate_beta",),
    "analyze": (
        "is_one_deficient",
        "minimal_tight_set",
        "is_circuit",
        "criterion_form",
        "is_hypersurface",
        "determines_variety",
    ),
    "chow-degree": ("chow_form_multidegree", "multidegree_add"),
    "slice": ("slice_multidegree",),
    "tensor": ("multifocal_tensor",),
    "residual": ("chow_residual",),
    "contract": ("tensor_contract",),
    "oracle-multidegree": ("intersection_count_oracle", "multiview_multidegree"),
    "oracle-epsilon": ("epsilon_oracle", "project_point"),
    "sz-test": ("sz_membership",),
}


@dataclass
class CommandResult:
    status: str
    payload: object
    diagnostics: list = field(default_factory=list)
    format: str = "compact"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


# ---------------------------------------------------------------------------
# input parsing helpers


def _load_input(args) -> object:
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"malformed JSON input: {exc}")


def _parse_signature(obj) -> pm.SpaceSignature:
    try:
        return pm.SpaceSignature(tuple(obj["n"]), int(obj["r"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"input needs 'n' and 'r': {exc}")


def _sig_and_delta(obj) -> tuple[pm.SpaceSignature, pm.RankFunction]:
    """Accept either an explicit rank function or a multidegree to read
    projection dimensions from."""
    if isinstance(obj, dict) and "coefficients" in obj:
        md = mdg.Multidegree.from_json(obj)
        return md.sig, md.rank_function()
    sig = _parse_signature(obj)
    try:
        delta = pm.RankFunction.from_json(obj["rank_function"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"input needs 'rank_function': {exc}")
    return sig, delta


def _parse_beta(obj, key="beta") -> pm.BetaVector:
    try:
        return pm.BetaVector(tuple(int(b) for b in obj[key]))
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"input needs '{key}': {exc}")


def _parse_multidegree(obj) -> mdg.Multidegree:
    if "multidegrees" in obj:
        parts = [mdg.Multidegree.from_json(part) for part in obj["multidegrees"]]
        if not parts:
            raise PreconditionError("'multidegrees' must be nonempty")
        total = parts[0]
        for part in parts[1:]:
            total = mdg.multidegree_add(total, part)
        return total
    if isinstance(obj, dict) and "multidegree" in obj:
        return mdg.Multidegree.from_json(obj["multidegree"])
    if isinstance(obj, dict) and "coefficients" in obj:
        return mdg.Multidegree.from_json(obj)
    raise PreconditionError("input needs 'multidegree' (or top-level coefficients)")


def _parse_cameras(obj) -> mv.CameraConfiguration:
    return mv.CameraConfiguration.from_json(obj)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_validate_rank(obj, args):
    sig, delta = _sig_and_delta(obj)
    return pm.validate_rank_function(sig, delta).to_json()


def _cmd_support(obj, args):
    sig, delta = _sig_and_delta(obj)
    support = pm.support_from_projections(sig, delta)
    return {"support": [list(g) for g in support]}


def _cmd_projections(obj, args):
    try:
        n = tuple(int(x) for x in obj["n"])
        support = [tuple(int(g) for g in gamma) for gamma in obj["support"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"input needs 'n' and 'support': {exc}")
    if not support:
        raise PreconditionError("rank function undefined for empty support")
    r = sum(n) - sum(support[0])
    if "r" in obj and int(obj["r"]) != r:
        raise PreconditionError(
            f"given r={obj['r']} contradicts support total degree (implies r={r})"
        )
    sig = pm.SpaceSignature(n, r)
    delta = pm.projections_from_support(sig, support)
    out = delta.to_json()
    out["r"] = r
    return out


def _cmd_betas(obj, args):
    sig, delta = _sig_and_delta(obj)
    betas = pm.enumerate_beta(sig, delta, args.criterion)
    return {"betas": [list(b.beta) for b in betas]}


def _analyze_one(md, sig, delta, beta):
    record = {"beta": list(beta.beta)}
    record["hypersurface"] = mdg.is_hypersurface(md, beta)
    record["determines"] = mdg.determines_variety(md, beta)
    record["one_deficient"] = pm.is_one_deficient(sig, delta, beta)
    record["circuit"] = pm.is_circuit(sig, delta, beta)
    if record["one_deficient"]:
        record["tight_set"] = list(pm.minimal_tight_set(sig, delta, beta))
    else:
        record["tight_set"] = None
    form = mdg.criterion_form(md, beta)
    record["criterion_form"] = [str(c) for c in form]
    if record["hypersurface"]:
        record["chow_degree"] = [
            str(d) for d in mdg.chow_form_multidegree(md, beta).degrees
        ]
    else:
        record["chow_degree"] = None
    return record


def _cmd_analyze(obj, args):
    md = _parse_multidegree(obj)
    sig = md.sig
    delta = md.rank_function()
    if args.all_beta:
        records = []
        for raw in product(*(range(n + 1) for n in sig.n)):
            if sum(raw) != sig.r + 1:
                continue
            records.append(_analyze_one(md, sig, delta, pm.BetaVector(raw)))
        return {"results": records}
    beta = _parse_beta(obj)
    return _analyze_one(md, sig, delta, beta)


def _cmd_chow_degree(obj, args):
    md = _parse_multidegree(obj)
    beta = _parse_beta(obj)
    degree = mdg.chow_form_multidegree(md, beta)
    return {"chow_degree": [str(d) for d in degree.degrees]}


def _cmd_slice(obj, args):
    md = _parse_multidegree(obj)
    beta = _parse_beta(obj)
    try:
        subset = [int(i) for i in obj["subset"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"input needs 'subset': {exc}")
    return mdg.slice_multidegree(md, subset, beta).to_json()


def _cmd_tensor(obj, args):
    config = _parse_cameras(obj)
    beta = _parse_beta(obj)
    tensor = mv.multifocal_tensor(config, beta)
    return tensor.to_json()


def _cmd_residual(obj, args):
    config = _parse_cameras(obj)
    try:
        spaces = mv.LinearSpaceTuple.from_json(obj["spaces"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"input needs 'spaces': {exc}")
    return {"residual": str(mv.chow_residual(config, spaces))}


def _cmd_contract(obj, args):
    try:
        tensor = mv.MultifocalTensor.from_json(obj["tensor"])
        coords = obj["coordinates"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"input needs 'tensor' and 'coordinates': {exc}")
    coords = [mv._parse_vec(vec, 3) for vec in coords]
    return {"value": str(mv.tensor_contract(tensor, coords))}


def _counts_json(counts):
    return ["non-finite" if c is None else c for c in counts]


def _cmd_oracle_multidegree(obj, args):
    config = _parse_cameras(obj)
    try:
        gamma = tuple(int(g) for g in obj["gamma"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"input needs 'gamma': {exc}")
    counts = mv.intersection_count_oracle(config, gamma, args.trials, args.seed)
    majority = mv.majority_count(counts)
    expected = mv.multiview_multidegree(config.k).coefficient(gamma)
    return {
        "counts": _counts_json(counts),
        "majority": "non-finite" if majority is None else majority,
        "expected": expected,
    }


def _cmd_oracle_epsilon(obj, args):
    config = _parse_cameras(obj)
    beta = _parse_beta(obj)
    counts = mv.epsilon_oracle(config, beta, args.trials, args.seed)
    return {"counts": _counts_json(counts)}


def _cmd_sz_test(obj, args):
    config = _parse_cameras(obj)
    beta = _parse_beta(obj)
    try:
        candidate = obj["candidate"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"input needs 'candidate': {exc}")
    tensor = mv.multifocal_tensor(config, beta)
    member = mv.sz_membership(config, tensor, candidate, args.trials, args.seed)
    return {"member": member}


HANDLERS = {
    "validate-rank": _cmd_validate_rank,
    "support": _cmd_support,
    "projections": _cmd_projections,
    "betas": _cmd_betas,
    "analyze": _cmd_analyze,
    "chow-degree": _cmd_chow_degree,
    "slice": _cmd_slice,
    "tensor": _cmd_tensor,
    "residual": _cmd_residual,
    "contract": _cmd_contract,
    "oracle-multidegree": _cmd_oracle_multidegree,
    "oracle-epsilon": _cmd_oracle_epsilon,
    "sz-test": _cmd_sz_test,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="multichow",
        description="Multidegree criteria and multifocal tensors, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="path to the JSON input (default: stdin)")
        p.add_argument(
            "--format",
            choices=("pretty", "compact"),
            default="compact",
            help="whitespace style of the JSON output",
        )
        if name == "betas":
            p.add_argument(
                "--criterion",
                choices=("hypersurface", "determining"),
                required=True,
            )
        if name == "analyze":
            p.add_argument("--all-beta", action="store_true", dest="all_beta")
        if name in ("oracle-multidegree", "oracle-epsilon", "sz-test"):
            p.add_argument("--trials", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)
    return parser


class _ArgumentError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def run(argv) -> CommandResult:
    """Parse argv, dispatch, and map failures to statuses."""
    try:
        args = _build_parser().parse_args(argv)
    except _ArgumentError as exc:
        return CommandResult("precondition-failed", None, [str(exc)])
    try:
        obj = _load_input(args)
        payload = HANDLERS[args.command](obj, args)
        return CommandResult("ok", payload, format=args.format)
    except InapplicableError as exc:
        return CommandResult("inapplicable", None, [str(exc)], args.format)
    except DegenerateInputError as exc:
        return CommandResult("degenerate-input", None, [str(exc)], args.format)
    except (PreconditionError, MultichowError) as exc:
        return CommandResult("precondition-failed", None, [str(exc)], args.format)


def render(payload, fmt: str) -> str:
    if fmt == "pretty":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    if result.status == "ok":
        sys.stdout.write(render(result.payload, result.format))
    else:
        error = {
            "error": {
                "status": result.status,
                "message": "; ".join(result.diagnostics),
            }
        }
        sys.stderr.write(render(error, result.format))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: one JSON document per invocation on stdout.

Exit codes: 0 success, 1 internal check failed (``--strict``), 2 invalid
input, 64 unknown subcommand.  Errors go to stderr as
``{"error": code, "detail": text}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import fixtures
from .csco import build_csco, paper_fixture, validate_csco
from .errors import MubQpdError, UnsupportedDimension
from .mub import SUPPORTED_DIMS, build_mub, twist_map_check, verify_unbiased
from .numerics import matrix_to_dict
from .polytope import enumerate_faces, membership, support_probe
from .qpd import classify, mh_fourier_sweep, qpd_marginal, qpd_table
from .state import BlochState, bloch_from_density, density_from_bloch, random_state
from .tomography import estimate_bloch, simulate_counts

ORACLE_TOL = 1e-8
PROBE_TOL = 1e-7
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNKNOWN_SUBCOMMAND = 64


class BadInput(Exception):
    code = "bad_input"


class InternalCheckFailed(Exception):
    code = "check_failed"

    def __init__(self, detail: str, document: dict):
        super().__init__(detail)
        self.document = document


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(message)


def _parse_theta(text: str | None, n: int) -> BlochState | None:
    if text is None:
        return None
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise BadInput(f"cannot read --theta file: {exc}") from None
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"--theta is not a JSON array: {exc}") from None
    if not isinstance(values, list) or not all(isinstance(x, (int, float)) for x in values):
        raise BadInput("--theta must be a JSON array of numbers")
    if len(values) != n * n - 1:
        raise BadInput(f"--theta needs {n * n - 1} entries for --dim {n}, got {len(values)}")
    return BlochState(n, np.array(values, dtype=float))


def _parse_subset(text: str | None, n: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        subset = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise BadInput(f"--subset must be comma-separated integers, got {text!r}") from None
    if not subset or subset[0] < 1 or subset[-1] > n + 1:
        raise BadInput(f"--subset entries must lie in 1..{n + 1}")
    return subset


def _basis(args):
    return paper_fixture(args.dim) if args.basis == "stored" else build_csco(args.dim)


def _require_theta(args):
    theta = _parse_theta(args.theta, args.dim)
    if theta is None:
        raise BadInput("--theta is required")
    return theta


def cmd_mub(args) -> dict:
    family = build_mub(args.dim)
    doc = {
        "dim": family.dim,
        "bases": [matrix_to_dict(b) for b in family.bases],
        "max_unbiased_deviation": verify_unbiased(family),
    }
    if family.dim == 3:
        ok, residual = twist_map_check(family)
        doc["twist_check"] = {"passed": ok, "residual": residual}
    return doc


def cmd_csco(args) -> dict:
    basis = build_csco(args.dim)
    doc = basis.to_dict()
    doc["validation"] = validate_csco(basis, build_mub(args.dim)).to_dict()
    return doc


def cmd_fixtures(args) -> dict:
    basis = paper_fixture(args.dim)
    doc = basis.to_dict()
    if args.dim == 3:
        doc["unitaries"] = [matrix_to_dict(u) for u in fixtures.U_SPIN1]
    doc["validation"] = validate_csco(basis, build_mub(args.dim)).to_dict()
    return doc


def cmd_qpd(args) -> dict:
    return qpd_table(_require_theta(args), _basis(args)).to_dict()


def cmd_classify(args) -> dict:
    basis = _basis(args)
    theta = _require_theta(args)
    doc = {"dim": args.dim}
    doc.update(classify(theta, basis).to_dict())
    doc["membership_margin"] = membership(theta, basis).margin
    return doc


def cmd_marginal(args) -> dict:
    basis = _basis(args)
    subset = _parse_subset(args.subset, args.dim)
    if subset is None:
        raise BadInput("--subset is required")
    values = qpd_marginal(qpd_table(_require_theta(args), basis), subset)
    return {"dim": args.dim, "subset": list(subset),
            "values": [float(x) for x in values.ravel()], "order": "k1-major"}


def cmd_oracle(args) -> dict:
    basis = _basis(args)
    subset = _parse_subset(args.subset, args.dim)
    tol = ORACLE_TOL if args.tol is None else args.tol
    sweep = mh_fourier_sweep(basis, subset, args.samples, args.seed, threads=args.threads)
    doc = {
        "dim": args.dim,
        "subset": list(sweep.subset),
        "samples": args.samples,
        "seed": args.seed,
        "max_deviation": sweep.max_deviation,
        "tolerance": tol,
        "within_tolerance": sweep.max_deviation < tol,
    }
    if args.strict and not doc["within_tolerance"]:
        raise InternalCheckFailed(
            f"MH characteristic deviates from the closed-form Fourier transform by "
            f"{sweep.max_deviation:.3e} > {tol:g}", doc)
    return doc


def cmd_polytope(args) -> dict:
    return enumerate_faces(build_csco(args.dim)).to_dict()


def cmd_probe(args) -> dict:
    tol = PROBE_TOL if args.tol is None else args.tol
    gap = support_probe(build_csco(args.dim), args.samples, args.seed)
    doc = {"dim": args.dim, "directions": args.samples, "seed": args.seed,
           "max_gap": gap, "tolerance": tol, "certified": gap < tol}
    if args.strict and not doc["certified"]:
        raise InternalCheckFailed(f"support gap {gap:.3e} exceeds {tol:g}", doc)
    return doc


def cmd_tomo(args) -> dict:
    basis = _basis(args)
    theta = _parse_theta(args.theta, args.dim)
    if theta is None:
        rho = random_state(args.dim, "mixed", seed=(args.seed, 0))
        theta = bloch_from_density(rho, basis)
    else:
        rho = density_from_bloch(theta, basis)
    record = simulate_counts(rho, basis, args.shots, seed=(args.seed, 1))
    est = estimate_bloch(record, basis)
    doc = record.to_dict()
    doc.update({
        "theta_true": [float(x) for x in theta.theta],
        "theta_hat": [float(x) for x in est.state.theta],
        "stderr": [float(x) for x in est.stderr],
        "error_norm": float(np.linalg.norm(est.state.theta - theta.theta)),
        "aggregate_stderr": est.aggregate_stderr,
    })
    return doc


COMMANDS = {
    "mub": (cmd_mub, "complete MUB family"),
    "csco": (cmd_csco, "generated commuting operator basis"),
    "qpd": (cmd_qpd, "closed-form quasiprobability table"),
    "classify": (cmd_classify, "sign of the quasiprobability table"),
    "marginal": (cmd_marginal, "marginal over a subset of commuting sets"),
    "oracle": (cmd_oracle, "Margenau-Hill vs closed-form Fourier check"),
    "polytope": (cmd_polytope, "vertex/facet/edge counts"),
    "probe": (cmd_probe, "LP support-function hull certification"),
    "tomo": (cmd_tomo, "simulated tomography"),
    "fixtures": (cmd_fixtures, "stored explicit operators"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mubqpd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--shots", type=int, default=10_000)
        p.add_argument("--theta")
        p.add_argument("--subset")
        p.add_argument("--basis", choices=("generated", "stored"), default="generated")
        p.add_argument("--strict", action="store_true")
        p.add_argument("--tol", type=float, help="override the oracle/probe tolerance")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out")
    return parser


def _emit_error(code: str, detail: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "detail": detail}) + "\n")


def _dump(doc: dict, out: str | None) -> None:
    text = json.dumps(doc) + "\n"
    sys.stdout.write(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING)
    if argv and argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    if not argv or argv[0] not in COMMANDS:
        _emit_error("unknown_subcommand",
                    f"expected one of {', '.join(COMMANDS)}; got {argv[0] if argv else 'nothing'}")
        return EXIT_UNKNOWN_SUBCOMMAND
    try:
        args = build_parser().parse_args(argv)
        if args.samples < 1 or args.shots < 1 or args.threads < 1:
            raise BadInput("--samples, --shots and --threads must be at least 1")
        if args.dim not in SUPPORTED_DIMS:
            raise UnsupportedDimension(f"--dim must be one of {sorted(SUPPORTED_DIMS)}")
        doc = COMMANDS[args.command][0](args)
    except InternalCheckFailed as exc:
        _dump(exc.document, getattr(args, "out", None))
        _emit_error(exc.code, str(exc))
        return EXIT_CHECK_FAILED
    except BadInput as exc:
        _emit_error(exc.code, str(exc))
        return EXIT_BAD_INPUT
    except (MubQpdError, ValueError) as exc:
        _emit_error(getattr(exc, "code", "bad_input"), str(exc))
        return EXIT_BAD_INPUT
    except OSError as exc:
        _emit_error("io_error", str(exc))
        return EXIT_BAD_INPUT
    _dump(doc, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

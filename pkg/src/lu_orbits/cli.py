"""Command-line interface.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or input
error, 3 ambiguous singular spectrum under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .harness import survey, verify_theorem1, verify_theorem2
from .numerics import TolerancePolicy
from .reports import FORMATS, emit_report
from .stabilizer import check_group_element, stabilize
from .states import PartyDims, special_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_AMBIGUOUS = 0, 1, 2, 3
STRICT_MIN_GAP = 1e6
MEMBERSHIP_TOL = 1e-10

log = logging.getLogger("lu_orbits")


class UsageError(Exception):
    pass


def _dims(text: str) -> PartyDims:
    try:
        return PartyDims.of(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
    p.add_argument("--tol", type=float, default=None,
                   help="relative singular-value cutoff (default 1e-9, or $LU_ORBIT_TOL)")
    p.add_argument("--strict", action="store_true",
                   help=f"exit 3 if any singular-value gap is below {STRICT_MIN_GAP:g}")
    if fmt:
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")


def _add_state(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", required=True,
                   choices=["witness", "maximally-mixed", "pure-product", "bell-diagonal"])
    p.add_argument("--dims", type=_dims, required=True, help="party dimensions, e.g. 2,3")
    p.add_argument("--params", type=_floats, default=None, help="bell-diagonal weights p1,p2,p3,p4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lu-orbit", description="Local-unitary orbit dimensions of mixed states.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="reproduce the orbit-dimension theorems")
    vsub = verify.add_subparsers(dest="theorem", required=True)
    t1 = vsub.add_parser("thm1", help="bipartite witness sweep")
    t1.add_argument("--m-max", type=int, default=5)
    t1.add_argument("--n-max", type=int, default=5)
    _add_common(t1)
    t2 = vsub.add_parser("thm2", help="multipartite witness candidate plus random survey")
    t2.add_argument("--dims", type=_dims, required=True)
    t2.add_argument("--samples", type=int, default=50)
    t2.add_argument("--seed", type=int, default=0)
    _add_common(t2)

    od = sub.add_parser("orbit-dim", help="stabilizer report for one state")
    _add_state(od)
    od.add_argument("--dump", type=Path, default=None, help="write the density matrix as JSON")
    _add_common(od)

    sv = sub.add_parser("survey", help="orbit-dimension histogram of random states")
    sv.add_argument("--dims", type=_dims, required=True)
    sv.add_argument("--samples", type=int, default=100)
    sv.add_argument("--seed", type=int, default=0)
    sv.add_argument("--rank", type=int, default=None, help="rank of the sampled states (default: full)")
    _add_common(sv)

    ce = sub.add_parser("check-element", help="test whether a local unitary fixes a state")
    _add_state(ce)
    ce.add_argument("--unitaries", type=Path, required=True,
                    help='JSON list of per-party matrices, each {"re": [[..]], "im": [[..]]} or a real nested list')
    _add_common(ce, fmt=False)
    return parser


def load_unitaries(path: Path) -> list[np.ndarray]:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read unitaries from {path}: {e}") from None
    if not isinstance(data, list) or not data:
        raise UsageError("unitaries file must hold a non-empty JSON list")
    out = []
    for entry in data:
        if isinstance(entry, dict):
            re = np.asarray(entry.get("re", 0.0), dtype=float)
            im = np.asarray(entry.get("im", np.zeros_like(re)), dtype=float)
            out.append(re + 1j * im)
        else:
            out.append(np.asarray(entry, dtype=float).astype(complex))
    return out


def _policy(args) -> TolerancePolicy:
    if args.tol is not None:
        return TolerancePolicy.from_env(relative_cutoff=args.tol)
    return TolerancePolicy.from_env()


def _write(report: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(report.decode())
    else:
        out.write_bytes(report)


def _strict_code(args, gaps) -> int:
    if args.strict and any(g < STRICT_MIN_GAP for g in gaps):
        log.error("singular-value gap below %g: %s", STRICT_MIN_GAP, [g for g in gaps if g < STRICT_MIN_GAP])
        return EXIT_AMBIGUOUS
    return EXIT_OK


def _state(args):
    return special_state(args.state, args.dims, args.params)


def run(args) -> int:
    tol = _policy(args)
    if args.command == "verify" and args.theorem == "thm1":
        rows = verify_theorem1(args.m_max, args.n_max, tol)
        _write(emit_report(rows, args.format), args.out)
        if not all(r.passed for r in rows):
            return EXIT_FAIL
        return _strict_code(args, [r.sv_gap for r in rows])

    if args.command == "verify" and args.theorem == "thm2":
        if args.samples < 1:
            raise UsageError("--samples must be >= 1")
        res = verify_theorem2(args.dims, args.samples, args.seed, tol)
        _write(emit_report(res, args.format), args.out)
        if not res.passed:
            return EXIT_FAIL
        gaps = [res.survey.min_sv_gap]
        if res.row.status != "candidate_failed":
            gaps.append(res.row.sv_gap)
        return _strict_code(args, gaps)

    if args.command == "orbit-dim":
        rho = _state(args)
        if args.dump is not None:
            args.dump.write_text(rho.to_json())
        rep = stabilize(rho, args.dims, tol)
        _write(emit_report(rep, args.format), args.out)
        return _strict_code(args, [rep.sv_gap])

    if args.command == "survey":
        if args.samples < 1:
            raise UsageError("--samples must be >= 1")
        res = survey(args.dims, args.samples, args.seed, args.rank, tol)
        _write(emit_report(res, args.format), args.out)
        if res.max_observed > args.dims.max_orbit_dim:
            return EXIT_FAIL
        return _strict_code(args, [res.min_sv_gap])

    if args.command == "check-element":
        rho = _state(args)
        residual = check_group_element(rho.matrix, load_unitaries(args.unitaries), args.dims)
        member = residual < MEMBERSHIP_TOL
        print(json.dumps({"dims": list(args.dims.dims), "residual": residual, "member": member}))
        return EXIT_OK if member else EXIT_FAIL

    raise UsageError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (UsageError, ValueError) as e:
        print(f"lu-orbit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

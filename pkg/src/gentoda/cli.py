"""Command-line front end: ``gentoda {charpoly,verify,reduce,simulate}``.

Exit codes: 0 success, 1 verification or simulation failure, 2 usage or
configuration error.  Output files go to ``--out`` or, if unset, to the
directory named by ``GENTODA_OUT_DIR``; otherwise JSON is printed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .suites import QUANTUM_SUITES, SUITES, run_suite

log = logging.getLogger("gentoda")

GUARDRAILS = {"classical": 5, "quantum": 4}
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
OUT_ENV = "GENTODA_OUT_DIR"


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not np.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gentoda", description="Generic Toda families: construction and checks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_n=2):
        p.add_argument("--n", type=_positive_int, default=default_n, help="rank of gl_n")
        p.add_argument("--out", type=Path, default=None, help="output file (default: stdout or $%s)" % OUT_ENV)
        p.add_argument("--force", action="store_true", help="skip rank guardrails (may run for a long time)")

    p = sub.add_parser("charpoly", help="expand the pencil determinant and write the graded family")
    common(p)
    p.add_argument("--mode", choices=("classical", "quantum"), default="classical")

    p = sub.add_parser("verify", help="run one verification suite")
    common(p)
    p.add_argument("--suite", required=True, choices=sorted(SUITES), metavar="SUITE", help=", ".join(sorted(SUITES)))
    p.add_argument("--mode", choices=("classical", "quantum"), default=None, help="restrict mode-aware suites")
    p.add_argument("--samples", type=_positive_int, default=None, help="random samples where applicable")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("reduce", help="write the reduced family in U(b)")
    common(p)

    p = sub.add_parser("simulate", help="integrate the open chain or a KK flow on b*")
    common(p, default_n=3)
    p.add_argument("--model", choices=("open", "kk"), default="open")
    p.add_argument("--dt", type=_positive_float, default=1e-3)
    p.add_argument("--t-end", type=_positive_float, default=10.0)
    p.add_argument("--w", type=float, default=0.0, help="corner parameter of L(w)")
    p.add_argument("--stride", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init", type=Path, default=None, help="JSON initial data: {q, p} or {x: {\"ij\": v}}")
    p.add_argument("--hamiltonian", default="delta:0,1", help="delta:K,I selects Delta[K, I] (lambda^I)")
    p.add_argument("--trace", type=Path, default=None, help="CSV trace path")
    return parser


def _out_path(args, default_name: str) -> Path | None:
    if args.out is not None:
        return args.out
    d = os.environ.get(OUT_ENV)
    if d:
        Path(d).mkdir(parents=True, exist_ok=True)
        return Path(d) / default_name
    return None


def _emit(doc, args, default_name: str) -> None:
    path = _out_path(args, default_name)
    if path is None:
        sys.stdout.write(serialize.dumps(doc))
    else:
        serialize.write(doc, path)
        log.info("wrote %s", path)


def _guard(n: int, mode: str, force: bool) -> None:
    limit = GUARDRAILS[mode]
    if n > limit and not force:
        raise UsageError(f"n={n} exceeds the {mode} guardrail n <= {limit}; pass --force to override")


def cmd_charpoly(args) -> int:
    from .spectral import family

    _guard(args.n, args.mode, args.force)
    F = family(args.n, args.mode)
    _emit(serialize.family_to_json(F), args, f"charpoly_n{args.n}_{args.mode}.json")
    return EXIT_OK


def cmd_verify(args) -> int:
    modes = [args.mode] if args.mode else ["classical"]
    if args.suite in QUANTUM_SUITES or args.mode is None and args.suite in ("grading", "characters"):
        modes.append("quantum")
    for m in set(modes):
        _guard(args.n, m, args.force)
    kwargs = {"seed": args.seed}
    if args.mode:
        kwargs["mode"] = args.mode
    if args.samples:
        kwargs["samples"] = args.samples
    report = run_suite(args.suite, args.n, **kwargs)
    _emit(serialize.report_to_json(report), args, f"verify_{args.suite}_n{args.n}.json")
    log.info("%s n=%d: %s", args.suite, args.n, report.status)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_reduce(args) -> int:
    from . import aks

    _guard(args.n, "quantum", args.force)
    R = aks.reduce_family(args.n)
    if args.n > 1:
        checks = [aks.aks_identity_check(R.family), aks.ratio_commutativity_check(R)]
        failed = [c.name for c in checks if not c.passed]
    else:
        failed = []
    doc = serialize.reduced_to_json(R)
    doc["checks"] = {"failed": failed}
    _emit(doc, args, f"reduce_n{args.n}.json")
    return EXIT_FAIL if failed else EXIT_OK


def _parse_hamiltonian(spec: str, n: int):
    from .spectral import delta_coefficients

    kind, _, rest = spec.partition(":")
    if kind != "delta" or "," not in rest:
        raise UsageError(f"hamiltonian must look like delta:K,I, got {spec!r}")
    try:
        k, i = (int(v) for v in rest.split(","))
    except ValueError:
        raise UsageError(f"bad hamiltonian indices in {spec!r}") from None
    if not 0 <= k <= n - 1:
        raise UsageError(f"K must lie in [0, {n - 1}]")
    coeffs = delta_coefficients(n, k)
    if i not in coeffs:
        raise UsageError(f"Delta[{k}, {i}] is zero or absent; available I: {sorted(coeffs)}")
    return coeffs[i]


def _load_init(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read initial data {path}: {exc}") from None


def cmd_simulate(args) -> int:
    from .sim import toda
    from .spectral import delta_coefficients

    n = args.n
    if n < 2:
        raise UsageError("simulation needs n >= 2")
    rng = np.random.default_rng(args.seed)
    init = _load_init(args.init) if args.init else None
    if args.model == "open":
        if init:
            q, p = np.asarray(init["q"], float), np.asarray(init["p"], float)
            if len(q) != n or len(p) != n:
                raise UsageError("initial q and p must have length n")
        else:
            q, p = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        y0 = np.concatenate([q, p])
        rhs = toda.open_toda_field
        labels = toda.chain_labels(n)
    else:
        _guard(n, "classical", args.force)
        H = _parse_hamiltonian(args.hamiltonian, n)
        coords = toda.borel_coordinates(n)
        if init:
            vals = {(int(k[0]), int(k[1])): float(v) for k, v in init["x"].items()}
            y0 = np.array([vals.get(c, 0.0) for c in coords])
        else:
            y0 = rng.uniform(-0.5, 0.5, len(coords))
        rhs = toda.KKFlow(H, n)
        labels = toda.borel_labels(n)
    try:
        traj = toda.integrate(y0, rhs, args.dt, args.t_end, stride=args.stride)
    except toda.SimulationError as exc:
        print(f"gentoda: simulation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    with np.errstate(over="ignore", invalid="ignore"):
        if args.model == "open":
            report = toda.spectral_drift(traj, args.w)
        else:
            inv = {f"delta_{k}_{i}": f for k in range(n) for i, f in delta_coefficients(n, k).items()}
            report = toda.invariant_drift(traj, inv)
        roots = toda.delta_root_drift(traj, n) if args.model == "kk" else None
    if not np.isfinite(report.overall):
        print(f"gentoda: simulation failed: non-finite invariants (last good time {traj.times[-1]:.6g})", file=sys.stderr)
        return EXIT_FAIL
    if args.trace:
        toda.write_trace_csv(args.trace, traj, labels, report)
    doc = {
        "model": args.model,
        "n": n,
        "dt": args.dt,
        "t_end": args.t_end,
        "w": args.w if args.model == "open" else None,
        "hamiltonian": args.hamiltonian if args.model == "kk" else None,
        "initial_state": [float(v) for v in y0],
        "drift": report.to_dict(),
    }
    if roots is not None:
        doc["root_drift"] = {k: roots.max_drift[k] for k in sorted(roots.max_drift)}
    _emit(doc, args, f"simulate_{args.model}_n{n}.json")
    return EXIT_OK


COMMANDS = {"charpoly": cmd_charpoly, "verify": cmd_verify, "reduce": cmd_reduce, "simulate": cmd_simulate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gentoda: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

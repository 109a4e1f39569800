"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (a certificate is printed),
2 usage error, 3 genericity exhaustion.
"""

from __future__ import annotations

import argparse
import json
import logging
import shlex
import sys
from dataclasses import dataclass
from pathlib import Path

from grassfano import schubert
from grassfano.coincidence import change_line_experiment, verify_equivalence
from grassfano.congruence import check_hypersurface, det_hypersurface, order_statistic, sample_Y
from grassfano.errors import FieldError, GenericityError, GrassFanoError, InputError, ParseError
from grassfano.kernel.fields import DEFAULT_PRIME, QQ, GF
from grassfano.omega import dim_Sn, format_omega, parse_omega, random_Sn
from grassfano.seeding import DEFAULT_SEED, MAX_RETRIES, derive_seed, rng_for

MAX_N = 12

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GENERICITY = 0, 1, 2, 3

log = logging.getLogger("grassfano")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None
    prime: int | None  # None means the rationals
    seed: int
    samples: int
    trials: int
    omega_path: Path | None
    out_path: Path | None
    fmt: str
    argv: list

    @property
    def field(self):
        return QQ if self.prime is None else GF(self.prime)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    fld = common.add_mutually_exclusive_group()
    fld.add_argument("--prime", type=int, default=None)
    fld.add_argument("--rational", action="store_true")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--omega", type=Path, help="read omega from a file")
    common.add_argument("--out", type=Path)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="grassfano", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("catalan", parents=[common], help="Catalan number c_k")
    sp.add_argument("--k", type=int, required=True)
    sub.add_parser("moduli-dim", parents=[common], help="dimension of the moduli space")
    sub.add_parser("pn-coeffs", parents=[common], help="coefficients p_{n,k}")
    sp = sub.add_parser("euler", parents=[common], help="Euler characteristic of X")
    sp.add_argument("--oracle", choices=("series", "schubert", "both"), default="both")
    sub.add_parser("betti", parents=[common], help="middle Betti number b_n")
    sp = sub.add_parser("hodge-low", parents=[common], help="h^{p,q} for p+q < n")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sub.add_parser("dim-sn", parents=[common], help="dimension of S_n as a kernel")
    sub.add_parser("gen-omega", parents=[common], help="random element of S_n")
    sub.add_parser("verify-equivalence", parents=[common], help="check X and Y_omega coincide")
    sub.add_parser("congruence-order", parents=[common], help="lines through random points")
    sub.add_parser("det-hypersurface", parents=[common], help="equation of Z")
    sub.add_parser("sample-y", parents=[common], help="exact points of Y_omega")
    sp = sub.add_parser("change-line", parents=[common], help="re-split with a new center")
    sp.add_argument("--center", help="comma-separated coordinates of the new center (n+3 values)")
    return parser


def _config(args, argv) -> RunConfig:
    if args.omega is not None and args.n is None:
        try:
            args.n = parse_omega(args.omega.read_text()).n
        except OSError as exc:
            raise UsageError(f"cannot read {args.omega}: {exc}") from None
    if args.command != "catalan" and args.n is None:
        raise UsageError("--n is required")
    if args.n is not None:
        if args.n > MAX_N:
            raise UsageError(f"n={args.n} exceeds {MAX_N}; refusing (runtime and memory grow too fast)")
        if args.n < 2 and args.command != "catalan":
            raise UsageError("n must be at least 2")
    prime = None if args.rational else (args.prime if args.prime is not None else DEFAULT_PRIME)
    if prime is not None:
        try:
            F = GF(prime)
            if args.n is not None:
                F.check_dimension(args.n)
        except FieldError as exc:
            raise UsageError(str(exc)) from None
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("--seed must fit in 64 unsigned bits")
    if args.samples < 1 or args.trials < 1:
        raise UsageError("--samples and --trials must be positive")
    return RunConfig(
        args.command, args.n, prime, args.seed, args.samples, args.trials,
        args.omega, args.out, args.format, list(argv),
    )


def _load_omega(cfg: RunConfig):
    if cfg.omega_path is None:
        return None
    try:
        omega = parse_omega(cfg.omega_path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.omega_path}: {exc}") from None
    if cfg.n is not None and omega.n != cfg.n:
        raise UsageError(f"omega file has n={omega.n}, --n says {cfg.n}")
    return omega


def _generic_omega(cfg: RunConfig, trial_fn):
    """Run trial_fn on random omegas until one is generic enough (32 attempts)."""
    given = _load_omega(cfg)
    if given is not None:
        return given, trial_fn(given)
    last = None
    for attempt in range(MAX_RETRIES):
        s = cfg.seed if attempt == 0 else derive_seed(cfg.seed, "retry", attempt)
        omega = random_Sn(cfg.n, cfg.field, s)
        try:
            return omega, trial_fn(omega)
        except GenericityError as exc:
            log.info("omega from seed %d not generic: %s", s, exc)
            last = exc
    raise GenericityError(f"no generic omega in {MAX_RETRIES} attempts", certificate=last.certificate)


def _replay(cfg: RunConfig) -> str:
    return "grassfano " + shlex.join(str(a) for a in cfg.argv)


def _failure_extras(cfg: RunConfig, omega) -> dict:
    return {"replay": _replay(cfg), "omega": format_omega(omega)}


def run(cfg: RunConfig, args) -> tuple[object, int]:
    """Execute one subcommand; returns (output payload, exit code)."""
    cmd = cfg.command
    n = cfg.n
    if cmd == "catalan":
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        return schubert.catalan(args.k), EXIT_OK
    if cmd == "moduli-dim":
        return schubert.moduli_dimension(n), EXIT_OK
    if cmd == "pn-coeffs":
        return schubert.pn_coefficients(n), EXIT_OK
    if cmd == "euler":
        if args.oracle == "series":
            return schubert.euler_series(n), EXIT_OK
        if args.oracle == "schubert":
            return schubert.euler_schubert(n), EXIT_OK
        s, e = schubert.euler_series(n), schubert.euler_schubert(n)
        return {"n": n, "series": s, "schubert": e, "agree": s == e}, EXIT_OK if s == e else EXIT_FAIL
    if cmd == "betti":
        return schubert.middle_betti(n), EXIT_OK
    if cmd == "hodge-low":
        try:
            return schubert.hodge_low(n, args.p, args.q), EXIT_OK
        except InputError as exc:
            raise UsageError(str(exc)) from None
    if cmd == "dim-sn":
        d = dim_Sn(n, cfg.field)
        closed = n * (n + 2) * (n + 3) // 2
        out = {"n": n, "field": cfg.field.descriptor, "dim": d, "closed_form": closed, "agree": d == closed}
        return out, EXIT_OK if d == closed else EXIT_FAIL
    if cmd == "gen-omega":
        return format_omega(random_Sn(n, cfg.field, cfg.seed)), EXIT_OK

    if cfg.prime is None:
        raise UsageError(f"{cmd} needs a prime field")
    if cmd == "verify-equivalence":
        omega, rep = _generic_omega(cfg, lambda w: verify_equivalence(w, cfg.samples, cfg.seed))
        out = rep.to_dict()
        out["omega_seed"] = omega.seed
        if not rep.ok:
            out.update(_failure_extras(cfg, omega))
        return out, EXIT_OK if rep.ok else EXIT_FAIL
    if cmd == "congruence-order":
        omega = _load_omega(cfg) or random_Sn(n, cfg.field, cfg.seed)
        rep = order_statistic(omega, cfg.trials, cfg.seed)
        out = rep.to_dict()
        out["omega_seed"] = omega.seed
        return out, EXIT_OK if rep.all_degree_ok else EXIT_FAIL
    if cmd == "det-hypersurface":
        omega, chk = _generic_omega(cfg, lambda w: check_hypersurface(w, cfg.samples, cfg.seed))
        out = {k: v for k, v in vars(chk).items()}
        out["ok"] = chk.ok
        out["omega_seed"] = omega.seed
        if cfg.out_path is not None:
            cfg.out_path.write_text(det_hypersurface(omega).to_text())
            out["hypersurface_file"] = str(cfg.out_path)
        if not chk.ok:
            out.update(_failure_extras(cfg, omega))
        return out, EXIT_OK if chk.ok else EXIT_FAIL
    if cmd == "sample-y":
        omega, planes = _generic_omega(cfg, lambda w: sample_Y(w, cfg.samples, cfg.seed))
        pts = [[int(x) for x in P.point().coords] for P in planes]
        return {"n": omega.n, "p": cfg.prime, "seed": cfg.seed, "omega_seed": omega.seed, "points": pts}, EXIT_OK
    if cmd == "change-line":
        big = n + 3
        if args.center:
            try:
                center = [int(x) for x in args.center.split(",")]
            except ValueError:
                raise UsageError("--center must be comma-separated integers") from None
            if len(center) != big:
                raise UsageError(f"--center needs {big} coordinates")
        else:
            rng = rng_for(cfg.seed, "new-center")
            center = [rng.randrange(cfg.prime) for _ in range(big)]
        omega, rep = _generic_omega(cfg, lambda w: change_line_experiment(w, center, cfg.samples, cfg.seed))
        out = rep.to_dict()
        out["omega_seed"] = omega.seed
        if not rep.ok:
            out.update(_failure_extras(cfg, omega))
        return out, EXIT_OK if rep.ok else EXIT_FAIL
    raise UsageError(f"unknown command {cmd}")


def render(payload, fmt: str) -> str:
    if isinstance(payload, str):
        return payload if payload.endswith("\n") else payload + "\n"
    if fmt == "json":
        if isinstance(payload, dict):
            return json.dumps(payload, indent=2) + "\n"
        return json.dumps(payload) + "\n"
    if not isinstance(payload, dict):
        payload = {"value": payload}
    keys = list(payload)
    cells = [v if isinstance(v, (int, float, str)) else json.dumps(v) for v in payload.values()]
    return "\t".join(keys) + "\n" + "\t".join(str(c) for c in cells) + "\n"


def dispatch(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        cfg = _config(args, argv)
        payload, code = run(cfg, args)
    except (UsageError, ParseError, FieldError) as exc:
        print(f"grassfano: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenericityError as exc:
        print(f"grassfano: genericity exhausted: {exc}", file=sys.stderr)
        print(json.dumps({"error": "genericity", "message": str(exc), "certificate": exc.certificate}))
        return EXIT_GENERICITY
    except GrassFanoError as exc:
        print(f"grassfano: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(payload, cfg.fmt)
    if cfg.out_path is not None and cfg.command != "det-hypersurface":
        cfg.out_path.write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

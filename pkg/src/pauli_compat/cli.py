"""
Command line front end.

Exit status: 0 on success, 1 on invalid channels/observables/parameters
(one JSON line ``{"error": ..., "message": ...}`` on stderr), 2 on I/O
errors.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import compatibility as compat
from .channels import PauliChannel, UnitalDecomposition, family
from .compatibility import (dual_certificate, ellipsoid_sample, optimal_primal,
                            p_plus_minus, sharpest_direction, simplex_region_sample)
from .formats import (certificate_from_json, certificate_to_json, channel_from_json,
                      dumps, ellipsoid_csv, observable_from_json, simplex_csv)
from .observables import BinaryObservable, unit_vector
from .verify import certificate_check, instrument_consistency, primal_search

COMMANDS = ("check", "smax", "certify", "region-ellipsoid", "region-simplex",
            "family", "verify-instrument", "search")
SEED_ENV = "PAULI_COMPAT_SEED"


class DomainError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inline: dict = field(default_factory=dict)
    files: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    output: str = None
    seed: int = 0
    tol: float = None
    psd_tol: float = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        for name in ("tol", "psd_tol"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise DomainError(f"{name} must be positive")


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _load(cfg, key, required=True):
    """Inline JSON for `key`, falling back to the file argument; inline wins."""
    text = cfg.inline.get(key)
    if text is None and cfg.files.get(key):
        with open(cfg.files[key], encoding="utf-8") as fh:
            text = fh.read()
    if text is None:
        if required:
            raise DomainError(f"missing --{key}")
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"--{key} is not valid JSON: {exc}") from None


def _channel(cfg):
    return channel_from_json(_load(cfg, "channel"))


def _pauli(cfg):
    ch = _channel(cfg)
    if not isinstance(ch, PauliChannel):
        raise DomainError("this command needs a Pauli channel (\"p\" or \"family\")")
    return ch


def _direction(cfg, required=True):
    n = _load(cfg, "n", required)
    return None if n is None else unit_vector(n)


def _channel_json(ch):
    if isinstance(ch, UnitalDecomposition):
        return {"p": ch.p, "frame": "unital"}
    return ch.to_json()


def _check(cfg):
    ch = _channel(cfg)
    obs = observable_from_json(_load(cfg, "obs"))
    tol = cfg.tol if cfg.tol is not None else compat.BOUNDARY_TOL
    if isinstance(ch, UnitalDecomposition):
        verdict = compat.unital_is_compatible(obs, ch, tol)
    else:
        verdict = compat.is_compatible(obs, ch, tol)
    out = verdict.to_json()
    out.update(channel=_channel_json(ch), obs=obs.to_json())
    return dumps(out)


def _smax(cfg):
    ch = _channel(cfg)
    n = _direction(cfg, required=not cfg.params.get("sharpest"))
    if n is None:
        pauli = ch.channel if isinstance(ch, UnitalDecomposition) else ch
        axis, value, tie = sharpest_direction(pauli)
        out = {"axis": axis, "s_max": value, "tie": tie}
        if isinstance(ch, UnitalDecomposition):
            R = _input_rotation(ch)
            out["n"] = R[:, axis - 1]
        return dumps(out)
    if isinstance(ch, UnitalDecomposition):
        value = compat.unital_s_max(ch, n)
    else:
        value = compat.s_max(ch, n)
    return dumps({"s_max": value, "n": n})


def _input_rotation(decomp):
    return np.column_stack([decomp.to_pauli_frame(e) for e in np.eye(3)]).T


def _certify(cfg):
    ch = _pauli(cfg)
    n = _direction(cfg)
    given = _load(cfg, "certificate", required=False)
    cert = certificate_from_json(given) if given is not None else dual_certificate(ch, n)
    kwargs = {} if cfg.psd_tol is None else {"psd_tol": cfg.psd_tol}
    feasible, upper = certificate_check(cert, ch, n, **kwargs)
    smax = compat.s_max(ch, n)
    out = certificate_to_json(cert)
    out.update(feasible=feasible, upper_bound=upper, gap=upper - smax)
    return dumps(out)


def _region_ellipsoid(cfg):
    ch = _channel(cfg)
    count = int(cfg.params.get("count") or 200)
    if isinstance(ch, UnitalDecomposition):
        sample = ellipsoid_sample(ch.channel, count)
        # points live in the Pauli frame; rotate back to the input frame
        points = sample.points @ _input_rotation(ch).T
    else:
        points = ellipsoid_sample(ch, count).points
    return ellipsoid_csv(points)


def _region_simplex(cfg):
    obs = observable_from_json(_load(cfg, "obs"))
    res = int(cfg.params.get("resolution") or 21)
    points, flags = simplex_region_sample(obs, res)
    return simplex_csv(points, flags)


def _family(cfg):
    name = cfg.params.get("name")
    if name is None or cfg.params.get("param") is None:
        raise DomainError("family needs --name and --param")
    ch = family(name, cfg.params["param"])
    axis, value, tie = sharpest_direction(ch)
    return dumps({
        "family": name, "param": float(cfg.params["param"]), "p": ch.p,
        "p_plus": p_plus_minus(ch).p_plus, "sharpest_axis": axis,
        "s_max_sharpest": value, "tie": tie,
    })


def _verify_instrument(cfg):
    ch = _pauli(cfg)
    n = _direction(cfg)
    trials = int(cfg.params.get("trials") or 20)
    try:
        aprime = optimal_primal(ch, n).a_prime_plus
    except ValueError:
        aprime = 0.5 * np.eye(4)
    check = instrument_consistency(BinaryObservable(aprime), ch, trials, cfg.seed)
    return dumps({
        "max_channel_error": check.max_channel_error,
        "max_probability_error": check.max_probability_error,
        "trials": check.trials, "seed": cfg.seed,
    })


def _search(cfg):
    ch = _pauli(cfg)
    n = _direction(cfg)
    iterations = int(cfg.params.get("iterations") or 10_000)
    report = primal_search(ch, n, iterations, cfg.seed)
    feasible, upper = certificate_check(dual_certificate(ch, n), ch, n)
    if not feasible:
        upper = float("nan")
    return dumps(report.to_json(upper_bound=upper))


HANDLERS = {
    "check": _check, "smax": _smax, "certify": _certify,
    "region-ellipsoid": _region_ellipsoid, "region-simplex": _region_simplex,
    "family": _family, "verify-instrument": _verify_instrument, "search": _search,
}


def _emit(cfg, text):
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")


def run(cfg):
    """Execute `cfg`; return the process exit status."""
    try:
        _emit(cfg, HANDLERS[cfg.command](cfg))
    except (DomainError, ValueError) as exc:
        _fail("domain", exc)
        return 1
    except OSError as exc:
        _fail("io", exc)
        return 2
    return 0


def _positive(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pauli-compat",
        description="Compatibility of unbiased qubit observables with Pauli channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, channel=True, obs=False, n=False):
        if channel:
            p.add_argument("--channel", help='inline JSON: {"p":[...]}, {"family":..,"param":..} or {"bloch":[[..]]}')
            p.add_argument("--channel-file")
        if obs:
            p.add_argument("--obs", help='inline JSON {"s":..,"n":[x,y,z]}')
            p.add_argument("--obs-file")
        if n:
            p.add_argument("--n", help="inline JSON unit vector [x,y,z]")
            p.add_argument("--n-file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=None,
                       help=f"random seed (default: ${SEED_ENV} or 0)")
        p.add_argument("--tol", type=_positive, default=None)
        p.add_argument("--psd-tol", type=_positive, default=None)

    common(sub.add_parser("check", help="compatibility verdict"), obs=True)
    p = sub.add_parser("smax", help="largest compatible sharpness along a direction")
    common(p, n=True)
    p.add_argument("--sharpest", action="store_true",
                   help="report the axis with the largest compatible sharpness")
    p = sub.add_parser("certify", help="dual optimality certificate")
    common(p, n=True)
    p.add_argument("--certificate", help="check this certificate instead of building one")
    p.add_argument("--certificate-file")
    p = sub.add_parser("region-ellipsoid", help="CSV of boundary Bloch vectors")
    common(p)
    p.add_argument("--count", type=int, default=200)
    p = sub.add_parser("region-simplex", help="CSV of compatible Pauli channels on a grid")
    common(p, channel=False, obs=True)
    p.add_argument("--resolution", type=int, default=21)
    p = sub.add_parser("family", help="named channel family")
    common(p, channel=False)
    p.add_argument("--name", required=True,
                   choices=["depolarizing", "phase_damping", "measure_and_prepare", "luders_z"])
    p.add_argument("--param", type=float, required=True)
    p = sub.add_parser("verify-instrument", help="simulate the optimal instrument")
    common(p, n=True)
    p.add_argument("--trials", type=int, default=20)
    p = sub.add_parser("search", help="randomized primal lower bound")
    common(p, n=True)
    p.add_argument("--iterations", type=int, default=10_000)
    return parser


def config_from_args(args):
    keys = ("channel", "obs", "n", "certificate")
    inline = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    files = {k: getattr(args, f"{k}_file") for k in keys
             if getattr(args, f"{k}_file", None) is not None}
    params = {k: getattr(args, k) for k in
              ("sharpest", "count", "resolution", "name", "param", "trials", "iterations")
              if hasattr(args, k)}
    seed = args.seed if args.seed is not None else _default_seed()
    return RunConfig(args.command, inline, files, params, args.out, seed,
                     args.tol, args.psd_tol)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except DomainError as exc:
        _fail("domain", exc)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

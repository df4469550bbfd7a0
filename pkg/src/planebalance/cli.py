"""Command-line interface.

Subcommands: ``balance`` (static odd balancing), ``stream`` (online
balancing), ``game`` (the two-player balancing game), ``ft``
(Fermat-Toricelli certificate and oracle).  Exit codes: 0 when all
asserted bounds hold, 1 on a violated bound (diagnostic on stderr),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .geometry import CERT_EPS, InvalidNormError, Norm, Vec2, as_vec2
from .balance_static import balance_odd, signed_sum
from .balance_online import SQRT2, StreamBalancer
from .fermat import (CertificateError, Configuration, build_certificate,
                     check_opposite_rays, grid_minimum, total_distance,
                     verify_certificate)
from .game import PLAYER1_NAMES, PLAYER2_NAMES, GameConfig, simulate
from .harness import Scenario

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _parse_norm(text: str) -> Norm:
    try:
        return Norm.from_config(json.loads(text))
    except (json.JSONDecodeError, InvalidNormError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid norm spec {text!r}: {exc}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fp:
        return fp.read()


def _parse_vectors(text: str, mode: str, norm: Norm | None) -> tuple[list[Vec2], Norm]:
    """A vector payload: a scenario object, a bare JSON array, or CSV x,y
    lines.  The --norm flag wins over a scenario's embedded norm."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        scenario = Scenario.loads(stripped)
        if scenario.mode != mode:
            raise UsageError(f"scenario mode {scenario.mode!r} does not match {mode!r}")
        return list(scenario.vectors), (norm or scenario.norm)
    if norm is None:
        raise UsageError("--norm is required unless the input is a scenario file")
    if stripped.startswith("["):
        return [as_vec2(v) for v in json.loads(stripped)], norm
    vectors = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise UsageError(f"expected 'x,y' per line, got {line!r}")
        vectors.append(Vec2(float(parts[0]), float(parts[1])))
    return vectors, norm


def _cmd_balance(args) -> int:
    norm = _parse_norm(args.norm) if args.norm else None
    vectors, norm = _parse_vectors(_read_text(args.input), "balance", norm)
    signs = balance_odd(norm, vectors)
    achieved = norm.value(signed_sum([norm.require_unit(v) for v in vectors], signs))
    print(json.dumps({"signs": list(signs), "norm": achieved}))
    if achieved > 1.0 + args.eps:
        print(f"bound violated: achieved norm {achieved!r} exceeds 1",
              file=sys.stderr)
        return 1
    return 0


def _cmd_stream(args) -> int:
    norm = _parse_norm(args.norm) if args.norm else None
    vectors, norm = _parse_vectors(_read_text(args.input), "stream", norm)
    balancer = StreamBalancer(norm, tight_euclidean=args.tight_euclidean)
    bound = balancer.bound
    position = Vec2(0.0, 0.0)
    pending: list[Vec2] = []
    violated = False
    count = 0

    def emit(signs):
        nonlocal position, violated, count
        for s in signs:
            v = pending.pop(0)
            position = position + s * v
            count += 1
            pnorm = norm.value(position)
            print(f"{s},{pnorm!r}")
            if count % 2 == 0 and pnorm > bound + args.eps:
                violated = True
                print(f"even-prefix bound violated at index {count}: {pnorm!r}",
                      file=sys.stderr)

    for v in vectors:
        u = norm.require_unit(v)
        pending.append(u)
        emit(balancer.push(u))
    emit(balancer.flush_pending())
    return 1 if violated else 0


def _cmd_game(args) -> int:
    norm = _parse_norm(args.norm) if args.norm else Norm.euclidean()
    try:
        config = GameConfig(k=args.k, dim=args.dim, norm=norm,
                            rounds=args.rounds, seed=args.seed)
        trajectory = simulate(config, args.p1, args.p2)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.trajectory:
        with open(args.trajectory, "w", encoding="utf-8") as fp:
            trajectory.write_csv(fp)
    summary = {
        "k": config.k, "dim": config.dim, "rounds": config.rounds,
        "seed": config.seed, "p1": args.p1, "p2": args.p2,
        "max_norm": trajectory.max_norm,
        "final_position": list(trajectory.final_position),
        "final_norm": trajectory.norms[-1],
    }
    if args.format == "csv":
        for key, value in summary.items():
            print(f"{key},{value}")
    else:
        print(json.dumps(summary))
    if args.p2 == "pairwise" and trajectory.max_norm > 2.0 + args.eps:
        print(f"bound violated: pairwise play reached norm {trajectory.max_norm!r}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_ft(args) -> int:
    norm = _parse_norm(args.norm) if args.norm else None
    text = _read_text(args.input).lstrip()
    data = json.loads(text)
    if "mode" in data:
        scenario = Scenario.from_json_dict(data)
        if scenario.mode != "ft":
            raise UsageError(f"scenario mode {scenario.mode!r} does not match 'ft'")
        cfg = scenario.points
        norm = norm or scenario.norm
    else:
        if norm is None:
            raise UsageError("--norm is required unless the input is a scenario file")
        cfg = Configuration(data["p0"], data["sites"])

    check = check_opposite_rays(cfg, eps=args.eps)
    cert = None
    cert_ok = None
    cert_reason = None
    if check.holds:
        try:
            cert = build_certificate(cfg, norm, eps=args.eps)
            verdict = verify_certificate(cfg, cert, norm, include_candidate=True,
                                         eps=args.eps)
            cert_ok, cert_reason = verdict.ok, verdict.reason
        except CertificateError as exc:
            cert_ok, cert_reason = False, str(exc)
    at_candidate = total_distance(cfg, norm, cfg.candidate, include_candidate=True)
    oracle_point, oracle_value = grid_minimum(cfg, norm, include_candidate=True)
    is_ft = bool(cert_ok) or at_candidate <= oracle_value + 1e-6

    if args.format == "json":
        out = {
            "hypothesis": check.holds,
            "failing_pair": list(check.failing_pair) if check.failing_pair else None,
            "certificate": None,
            "certificate_valid": cert_ok,
            "certificate_reason": cert_reason,
            "objective_at_p0": at_candidate,
            "oracle_minimum": oracle_value,
            "oracle_point": [oracle_point.x, oracle_point.y],
            "is_fermat_toricelli": is_ft,
        }
        if cert is not None:
            out["certificate"] = {
                "functionals": [[f.x, f.y] for f in cert.functionals],
                "residual": [cert.residual.x, cert.residual.y],
                "residual_dual_norm": cert.residual_dual_norm,
            }
        print(json.dumps(out))
    else:
        if check.holds:
            print("hypothesis: holds")
        else:
            print(f"hypothesis: fails at pair {check.failing_pair}")
        if cert is not None:
            for i, f in enumerate(cert.functionals):
                print(f"functional {i}: [{f.x!r}, {f.y!r}]")
            print(f"residual: [{cert.residual.x!r}, {cert.residual.y!r}]")
            print(f"residual dual norm: {cert.residual_dual_norm!r}")
            print(f"certificate: {'valid' if cert_ok else 'invalid (' + str(cert_reason) + ')'}")
        else:
            print("certificate: not constructed")
        print(f"objective at p0: {at_candidate!r}")
        print(f"oracle minimum: {oracle_value!r} at [{oracle_point.x!r}, {oracle_point.y!r}]")
        print(f"p0 is a Fermat-Toricelli point: {'yes' if is_ft else 'no'}")
    if check.holds and not cert_ok:
        print(f"certificate failed: {cert_reason}", file=sys.stderr)
        return 1
    if not is_ft:
        print(f"the oracle beats p0 by {at_candidate - oracle_value!r}",
              file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=CERT_EPS,
                        help="certificate tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output encoding where applicable (game defaults "
                             "to json, ft to plain text)")

    parser = argparse.ArgumentParser(
        prog="planebalance",
        description="Sign balancing of unit vectors in normed planes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("balance", parents=[common],
                       help="signs making an odd signed sum land in the unit ball")
    p.add_argument("--norm", help="norm spec as JSON, e.g. '{\"type\":\"lp\",\"p\":3.0}'")
    p.add_argument("--input", required=True,
                   help="vector list: CSV x,y lines, JSON array, or scenario file")
    p.set_defaults(func=_cmd_balance)

    p = sub.add_parser("stream", parents=[common],
                       help="online signs keeping even prefixes within norm 2")
    p.add_argument("--norm", help="norm spec as JSON")
    p.add_argument("--input", required=True,
                   help="vectors as CSV x,y lines ('-' for stdin), JSON, or scenario")
    p.add_argument("--tight-euclidean", action="store_true",
                   help="use the sqrt(2) Euclidean bound")
    p.set_defaults(func=_cmd_stream)

    p = sub.add_parser("game", parents=[common],
                       help="simulate the k-vectors-per-round balancing game")
    p.add_argument("--k", type=int, required=True, help="vectors per round")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--norm", help="norm spec as JSON (dim 2 only; default euclidean)")
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--p1", choices=PLAYER1_NAMES, default="random",
                   help="Player I strategy")
    p.add_argument("--p2", choices=PLAYER2_NAMES, default="pairwise",
                   help="Player II strategy")
    p.add_argument("--trajectory", help="write a per-vector CSV trajectory here")
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("ft", parents=[common],
                       help="Fermat-Toricelli hypothesis check, certificate, oracle")
    p.add_argument("--norm", help="norm spec as JSON")
    p.add_argument("--input", required=True,
                   help="JSON with 'p0' and 'sites', or a scenario file")
    p.set_defaults(func=_cmd_ft)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (OSError, json.JSONDecodeError, InvalidNormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

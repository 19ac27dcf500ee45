"""Command-line front end: reproducible experiments with JSON/CSV reports.

Exit codes: 0 success, 1 suite failure, 2 precondition/domain violation,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from . import asymptotics, census, characters, constants, contour, primes, shiu, suite
from .errors import CongapsError

_BOOL_KEYS = {"list_pairs", "members"}
_INT_KEYS = {"q", "a", "x", "h", "p0", "limit", "threads", "n"}
_FLOAT_KEYS = {"epsilon", "y", "tol", "c", "big_c", "beta", "eta", "r",
               "kappa", "t_height", "u_max", "theta"}


def _load_config(path: str) -> dict:
    """Flat key=value config; '#' starts a comment; unknown keys rejected
    at argparse level by feeding them back as flags."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CongapsError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _apply_config(args: argparse.Namespace, config: dict, parser, argv) -> None:
    known = set(vars(args))
    for key, value in config.items():
        if key not in known:
            parser.error(f"unknown config key: {key}")
        if _explicitly_set(key, argv):
            continue  # flags override config
        if key in _INT_KEYS:
            value = int(value)
        elif key in _FLOAT_KEYS:
            value = float(value)
        elif key in _BOOL_KEYS:
            value = value.lower() in ("1", "true", "yes")
        setattr(args, key, value)


def _explicitly_set(key: str, argv) -> bool:
    flag = "--" + key.replace("_", "-")
    return any(arg == flag or arg.startswith(flag + "=") for arg in argv)


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "csv" and isinstance(
        payload, asymptotics.ComparisonReport
    ):
        text = asymptotics.reports_to_csv([payload])
    elif isinstance(payload, asymptotics.ComparisonReport):
        text = json.dumps(payload.to_dict()) + "\n"
    else:
        text = json.dumps(payload) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_constants(args) -> int:
    bundle = constants.constants_bundle(args.q, l_tol=args.tol)
    payload = {
        "q": bundle.q,
        "gamma_euler": bundle.gamma_euler,
        "l_values": [_complex_pair(z) for z in bundle.l_values],
        "theta1": bundle.theta1,
        "c_q": bundle.c_q,
        "gamma_recip": bundle.gamma_recip,
        "tolerances": bundle.tolerances,
    }
    _emit(payload, args)
    return 0


def cmd_mertens(args) -> int:
    table = primes.get_prime_table(args.x, args.cache_dir)
    bundle = constants.constants_bundle(args.q)
    report = asymptotics.compare(
        "mertens product vs prediction",
        asymptotics.mertens_ap_product(args.q, args.x, table),
        asymptotics.mertens_prediction(args.q, args.x, bundle),
        args.tol,
        params={"q": args.q, "X": args.x},
    )
    _emit(report, args)
    return 0


def cmd_count(args) -> int:
    table = primes.get_prime_table(args.x, args.cache_dir)
    bundle = constants.constants_bundle(args.q)
    report = asymptotics.compare(
        "restricted count vs prediction",
        asymptotics.count_restricted(args.x, args.q, args.y, table),
        asymptotics.lemma33_prediction(args.x, args.q, args.y, bundle, table),
        args.tol,
        params={"q": args.q, "X": args.x, "Y": args.y},
    )
    _emit(report, args)
    return 0


def cmd_shiu(args) -> int:
    table = primes.get_prime_table(args.h, args.cache_dir)
    con = shiu.build_construction(args.h, args.q, args.a, args.p0, table)
    spf_table = primes.build_spf(args.h)
    sets = shiu.compute_S_T(con, spf_table, keep_members=args.members)
    lemma = shiu.lemma34_check(con, sets)
    tb = shiu.t_bound_report(con, sets)
    payload = {
        "H": con.H,
        "q": con.q,
        "a": con.a,
        "p0": con.p0,
        "tH": con.tH,
        "regime_ok": con.regime_ok,
        "P_size": int(con.script_p.size),
        "S_count": sets.S_count,
        "T_count": sets.T_count,
        "phiQ_over_Q": sets.phiQ_over_Q,
        "lemma34_lhs": lemma.actual,
        "lemma34_rhs": lemma.predicted,
        "lemma34_ratio": lemma.ratio,
        "t_bound_ratio": tb.ratio,
    }
    _emit(payload, args)
    return 0


def cmd_census(args) -> int:
    # margin past X so every p_r <= X has its successor in the table
    table = primes.get_prime_table(args.x + 10_000, args.cache_dir)
    result = census.find_congruent_pairs(
        args.x, args.q, args.a, args.epsilon, table,
        thm11_c=args.c, shiu_C=args.big_c,
    )
    if args.list_pairs:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["p_r", "p_next", "gap", "log_p", "q", "a"])
        for p, nxt in result.pairs:
            writer.writerow([p, nxt, nxt - p, repr(math.log(p)), args.q, args.a])
        return 0
    _emit(result.to_dict(), args)
    return 0


def cmd_contour(args) -> int:
    if args.mode == "hankel":
        params = contour.default_params(args.x, args.beta, eta=args.eta, r=args.r)
        value = contour.hankel_main(params)
        closed = contour.hankel_closed_form(args.x, args.beta)
        payload = {
            "mode": "hankel",
            "X": args.x,
            "beta": args.beta,
            "eta": params.eta,
            "r": params.r,
            "kappa": params.kappa,
            "T": params.T,
            "value": value,
            "closed_form": closed,
            "rel_dev": abs(value - closed) / closed,
        }
    elif args.mode == "perron":
        coeffs = [1.0] * args.n
        integral, partial, err = contour.perron_check(
            coeffs, args.x, args.t_height, args.kappa
        )
        payload = {
            "mode": "perron",
            "N": args.n,
            "X": args.x,
            "T": args.t_height,
            "kappa": args.kappa,
            "integral": integral,
            "partial_sum": partial,
            "error": err,
        }
    else:
        payload = {
            "mode": "gamma",
            "theta": args.theta,
            "reflection_residual": contour.gamma_reflection_check(args.theta),
        }
    _emit(payload, args)
    return 0


def cmd_suite(args) -> int:
    start = time.perf_counter()
    results = suite.run_suite(args.scale, args.cache_dir)
    hard_fail = False
    for record in results:
        status = "PASS" if record["ok"] else "FAIL"
        print(f"[{status}] {record['name']}", file=sys.stderr)
        hard_fail = hard_fail or not record["ok"]
    payload = {
        "scale": args.scale,
        "checks": results,
        "ok": not hard_fail,
        "wall_time_ms": (time.perf_counter() - start) * 1000.0,
    }
    _emit(payload, args)
    return 1 if hard_fail else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congaps",
        description="Constants, constructions, and counts around consecutive "
        "congruent primes with small gaps.",
    )
    parser.add_argument("--config", help="flat key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--cache-dir", dest="cache_dir",
                       help="prime cache directory (default: $CONGAPS_CACHE_DIR)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap hint (modules are single-threaded)")

    p = sub.add_parser("constants", help="constants bundle for one modulus")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("mertens", help="Mertens product vs its prediction")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--tol", type=float, default=0.05)
    common(p)
    p.set_defaults(func=cmd_mertens)

    p = sub.add_parser("count", help="restricted-integer count vs prediction")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=0.2)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("shiu", help="prime-set construction and S/T split")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p0", type=int, default=1)
    p.add_argument("--members", action="store_true")
    common(p)
    p.set_defaults(func=cmd_shiu)

    p = sub.add_parser("census", help="consecutive congruent prime pairs")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=int, default=10**7)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0,
                   help="constant in the X^(1-c/loglog X) reference bound")
    p.add_argument("--big-c", dest="big_c", type=float, default=1.0,
                   help="constant in the X^(1-eps(X)) reference bound")
    p.add_argument("--list-pairs", dest="list_pairs", action="store_true")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("contour", help="Hankel/Perron/Gamma numerical checks")
    p.add_argument("--mode", choices=["hankel", "perron", "gamma"], required=True)
    p.add_argument("--x", type=float, default=math.exp(20))
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--t-height", dest="t_height", type=float, default=1e4)
    p.add_argument("--kappa", type=float, default=1.1)
    p.add_argument("--theta", type=float, default=0.5)
    common(p)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("suite", help="run the verification battery")
    p.add_argument("--scale", choices=["small", "full"], default="small")
    common(p)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            config = _load_config(args.config)
        except OSError as exc:
            print(f"congaps: cannot read config: {exc}", file=sys.stderr)
            return 3
        except CongapsError as exc:
            print(f"congaps: {exc}", file=sys.stderr)
            return 2
        _apply_config(args, config, parser, argv)
    try:
        return args.func(args)
    except CongapsError as exc:
        print(f"congaps: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"congaps: I/O failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

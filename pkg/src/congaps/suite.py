"""The built-in verification battery, ordered cheap to expensive.

Each check returns a dict with a deterministic payload plus a hard pass
flag; informational checks (unquantified asymptotic inequalities) always
pass and only report their outcome.
"""

from __future__ import annotations

import math

import numpy as np

from . import asymptotics, census, characters, constants, contour, primes, shiu

SCALE_LIMITS = {"small": 10**5, "full": 10**7}


def _check_orthogonality() -> dict:
    worst = 0.0
    ok = True
    for q in range(3, 51):
        table = characters.build_character_table(q)
        for n in range(1, q + 1):
            exact = characters.orthogonality_sum(table, n)
            expect = table.phi_q if n % q == 1 % q else 0
            ok &= exact == complex(expect)
            approx = sum(chi(n) for chi in table.characters)
            worst = max(worst, abs(approx - expect))
    return {"name": "orthogonality", "ok": bool(ok and worst <= 1e-9),
            "max_float_residual": worst}


def _check_l_closed_forms() -> dict:
    chi3 = characters.build_character_table(3).characters[1]
    chi4 = [c for c in characters.build_character_table(4).characters
            if not c.is_principal][0]
    d3 = abs(constants.l_one(chi3, 1e-8) - math.pi / (3 * math.sqrt(3)))
    d4 = abs(constants.l_one(chi4, 1e-8) - math.pi / 4)
    return {"name": "l_one_closed_forms", "ok": bool(d3 <= 1e-8 and d4 <= 1e-8),
            "dev_q3": d3, "dev_q4": d4}


def _check_c_anchors() -> dict:
    ok = constants.c_of_q(1) == 1.0 and constants.c_of_q(2) == 0.5
    values = {}
    for q in range(3, 31):
        c = constants.c_of_q(q)
        th = constants.theta_at_one(q)
        values[str(q)] = c
        ok = ok and c > 0 and 0 < th <= 1
    return {"name": "c_of_q_anchors", "ok": bool(ok), "c_values": values}


def _check_gamma_identities() -> dict:
    refl = max(contour.gamma_reflection_check(t) for t in (1 / 6, 1 / 3, 0.5))
    X = math.exp(20)
    res = contour.residue_circle(X)
    res_dev = abs(res - X) / X
    return {"name": "gamma_identities", "ok": bool(refl <= 1e-10 and res_dev <= 1e-8),
            "reflection_residual": refl, "residue_rel_dev": res_dev}


def _check_hankel() -> dict:
    X = math.exp(20)
    devs = {}
    ok = True
    for beta in (0.5, 1 / 3, 0.25):
        p = contour.default_params(X, beta, eta=0.6)
        dev = abs(contour.hankel_main(p) - contour.hankel_closed_form(X, beta))
        dev /= contour.hankel_closed_form(X, beta)
        devs[f"beta={beta:.4f}"] = dev
        ok = ok and dev <= 1e-4
    return {"name": "hankel_main_term", "ok": bool(ok), "rel_devs": devs}


def _check_perron() -> dict:
    coeffs = [1.0] * 20
    errs = []
    for T in (1e2, 1e3, 1e4, 1e5):
        _, _, err = contour.perron_check(coeffs, 10.5, T, 1.1)
        errs.append(abs(err))
    increases = sum(1 for a, b in zip(errs, errs[1:]) if b > a)
    ok = increases <= 1 and errs[-1] <= 0.5
    return {"name": "perron_truncation", "ok": bool(ok), "abs_errors": errs}


def _check_mertens(table) -> dict:
    out = {}
    ok = True
    xs = [10**4, table.limit]
    for q in (3, 4, 5):
        bundle = constants.constants_bundle(q)
        devs = []
        for X in xs:
            ratio = asymptotics.mertens_ap_product(q, X, table) / \
                asymptotics.mertens_prediction(q, X, bundle)
            devs.append(abs(ratio - 1.0))
        out[str(q)] = devs
        if table.limit >= 10**7:
            ok = ok and devs[-1] <= 0.05 and devs[-1] < devs[0]
        else:
            ok = ok and devs[-1] <= 0.25
    return {"name": "mertens_in_progression", "ok": bool(ok), "abs_dev": out}


def _check_lemma33(table, spf_table) -> dict:
    ok = True
    out = {}
    for q, Y in ((3, 1), (3, 10), (4, 1)):
        bundle = constants.constants_bundle(q)
        devs = []
        for X in (10**4, table.limit):
            ratio = asymptotics.count_restricted(X, q, Y, table) / \
                asymptotics.lemma33_prediction(X, q, Y, bundle, table)
            devs.append(abs(ratio - 1.0))
        out[f"q={q},Y={Y}"] = devs
        if table.limit >= 10**7:
            ok = ok and devs[-1] <= 0.2 and devs[-1] < devs[0]
        else:
            ok = ok and devs[-1] <= 0.2
    # exact agreement with the factorization oracle on a modest prefix
    n_max = min(spf_table.limit, 2000)
    brute = sum(
        1 for n in range(1, n_max + 1)
        if all(p % 3 == 1 for p in spf_table.factor(n))
    )
    ok = ok and brute == asymptotics.count_restricted(n_max, 3, 1, table)
    return {"name": "restricted_count", "ok": bool(ok), "abs_dev": out}


def _check_shiu(table, spf_table) -> dict:
    out = {}
    ok = True
    H = min(10**4, table.limit)
    for q, a in ((3, 1), (3, 2), (4, 3), (6, 5)):
        con = shiu.build_construction(H, q, a, 1, table)
        sets = shiu.compute_S_T(con, spf_table)
        qset = con.modulus_primes()
        brute_s = brute_t = 0
        for h in range(1, H + 1):
            if all(h % p != 0 for p in qset):
                if h % q == a % q:
                    brute_s += 1
                else:
                    brute_t += 1
        ok = ok and (brute_s, brute_t) == (sets.S_count, sets.T_count)
        rep = shiu.lemma34_check(con, sets)
        out[f"q={q},a={a}"] = {
            "S": sets.S_count, "T": sets.T_count,
            "lemma34_ratio": rep.ratio, "lemma34_holds": rep.passed,
            "regime": rep.params["regime"],
            "t_bound_ratio": shiu.t_bound_report(con, sets).ratio,
        }
    return {"name": "shiu_partition", "ok": bool(ok), "cases": out}


def _check_census(table) -> dict:
    X = min(10**5, table.limit)
    res = census.find_congruent_pairs(X, 3, 2, 2.0, table)
    ok = True
    for p, nxt in res.pairs:
        between = table.primes[(table.primes > p) & (table.primes < nxt)]
        ok = ok and between.size == 0 and p % 3 == 2 and nxt % 3 == 2
        ok = ok and (nxt - p) < 2.0 * math.log(p)
    smaller = census.find_congruent_pairs(X // 10, 3, 2, 2.0, table)
    ok = ok and smaller.pair_count <= res.pair_count
    return {"name": "census_pairs", "ok": bool(ok), "pair_count": res.pair_count}


def run_suite(scale: str = "small", cache_dir: str | None = None) -> list[dict]:
    """Run the battery; returns one record per check (deterministic apart
    from any wall-time fields, of which there are none here)."""
    if scale not in SCALE_LIMITS:
        raise ValueError(f"scale must be one of {sorted(SCALE_LIMITS)}")
    limit = SCALE_LIMITS[scale]
    results = [
        _check_orthogonality(),
        _check_l_closed_forms(),
        _check_c_anchors(),
        _check_gamma_identities(),
        _check_hankel(),
        _check_perron(),
    ]
    table = primes.get_prime_table(limit, cache_dir)
    spf_table = primes.build_spf(min(limit, 10**5))
    results.append(_check_mertens(table))
    results.append(_check_lemma33(table, spf_table))
    results.append(_check_shiu(table, spf_table))
    results.append(_check_census(table))
    return results

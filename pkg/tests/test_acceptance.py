"""Acceptance gate: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.  Every comparison is
exact; the only float is the figure ratio, compared at ``RATIO_TOL``
because the CSV carries six decimals.
"""
import csv
import io
import random
import sys

import pytest

from cycbound.bounds import (
    HtWitness,
    bch_bound,
    ht_bound,
    nzl_bound,
    nzl_run,
    parity_bound_formula,
    prop1_improves,
    rs_bound_formula,
    synth_ht_pattern,
)
from cycbound.cli import run, sound, soundness_sweep
from cycbound.cyclic_code import (
    DefiningSet,
    build_code,
    parity_check_locator,
    rs_code,
    smallest_rs_alphabet,
)
from cycbound.oracle import (
    check_degrees,
    common_field_for,
    coprime_negative_case,
    min_distance_brute,
    random_codewords,
    verify_coprime_factors,
    verify_definition2,
    verify_series_identity,
)

RATIO_TOL = 1e-6
SEED = 20120701
C21_SET = (1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 14, 15, 16, 18)
GRID = [(nu, d0, m) for nu in range(1, 7) for d0 in range(2, 21) for m in range(nu + 2, nu + 7)]

RESULTS: dict[int, tuple[bool, str]] = {}


def record(k: int, ok: bool, note: str) -> None:
    RESULTS[k] = (ok, note)
    print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {note}")
    assert ok, note


def test_criterion_1_c21_pipeline():
    C = build_code(2, 21, [1, 3, 7, 9])
    res = min_distance_brute(C)
    value, w = nzl_bound(C.defining_set, parity_check_locator(5))
    run_len = nzl_run(C.defining_set, parity_check_locator(5).defining_set, w.e)
    ok = (C.defining_set.members == C21_SET and C.k == 7 and res.distance == 8 and res.exact
          and res.enumerated == 127 and (value, w.e, w.mu, run_len) == (7, 0, 14, 13))
    record(1, ok, f"k={C.k} d={res.distance} over {res.enumerated} words, nzl={value} e={w.e} mu={w.mu}")


def test_criterion_2_n13_pattern():
    S = DefiningSet.of(13, [1, 2, 4, 5, 8, 9, 11, 12])
    D_L = DefiningSet.of(3, [0])
    best = max(nzl_run(S, D_L, e) for e in range(13))
    value, w = nzl_bound(S, parity_check_locator(3))
    paper = HtWitness(-5 % 13, 3, 1, 5, 1)
    ok = best == 13 and w.mu == 14 and value == 7 and paper.validate(S) and paper.bound == 6
    record(2, ok, f"run={best} mu={w.mu} nzl={value}; HT witness (8,3,1,5,1) valid, certifies {paper.bound}")


def test_criterion_3_formula_search_agreement():
    bad = []
    for nu, d0, m in GRID:
        S = synth_ht_pattern(0, m, d0, nu, 2 * m * d0 + 1)
        v = nzl_bound(S, rs_code(smallest_rs_alphabet(m), m, nu + 1, 0))[0]
        if v != rs_bound_formula(d0, nu, m):
            bad.append((nu, d0, m, v))
        if m == nu + 2 and nzl_bound(S, parity_check_locator(m))[0] != parity_bound_formula(d0, nu):
            bad.append((nu, d0, m, "parity"))
    record(3, len(GRID) == 570 and not bad, f"{len(GRID)} grid points, {len(bad)} mismatches")


def test_criterion_4_improvement_condition():
    bad = [(nu, d0, m) for nu, d0, m in GRID if prop1_improves(d0, nu, m) != (d0 > m - nu + 1)]
    record(4, not bad, f"{len(GRID)} grid points, {len(bad)} exceptions")


def _figure(which):
    code, out = run(["figure", which])
    assert code == 0
    return [{k: (float(v) if k == "ratio" else int(v)) for k, v in r.items()}
            for r in csv.DictReader(io.StringIO(out))]


def test_criterion_5_figures():
    f1, f2 = _figure("fig1"), _figure("fig2")
    ok = len(f1) == 6 * 19 and len(f2) == 5 * 19
    for r in f1:
        ok &= r["d_star"] == parity_bound_formula(r["d0"], r["nu"]) and r["ht"] == r["d0"] + r["nu"]
        ok &= abs(r["ratio"] - r["d_star"] / r["ht"]) <= RATIO_TOL
        if r["d0"] > 3:
            ok &= r["ratio"] > 1.0
    at = next(r for r in f1 if (r["nu"], r["d0"]) == (1, 3))
    ok &= abs(at["ratio"] - 1.0) <= RATIO_TOL
    for r in f2:
        ok &= r["d_star"] == rs_bound_formula(r["d0"], r["nu"], r["m"]) and r["m"] == r["nu"] + r["d_l"]
        ok &= abs(r["ratio"] - r["d_star"] / r["ht"]) <= RATIO_TOL
    for d0 in range(4, 21):
        ratios = [r["ratio"] for r in sorted((r for r in f2 if r["d0"] == d0), key=lambda r: r["d_l"])]
        ok &= all(a > b for a, b in zip(ratios, ratios[1:]))
    record(5, bool(ok), "fig1 ratio 1.0 at (1,3), >1 for d0>3; fig2 strictly decreasing in d_l for d0>=4")


def test_criterion_6_soundness_sweep():
    rows = soundness_sweep(2, 31, 2**20)
    bad = [r for r in rows if not sound(r)]
    lengths = sorted({r["n"] for r in rows})
    ok = not bad and lengths == list(range(3, 32, 2))
    record(6, ok, f"{len(rows)} binary cyclic codes, odd n <= 31, q^k <= 2^20; {len(bad)} violations")


def test_criterion_7_definition2():
    C = build_code(2, 21, [1, 3, 7, 9])
    rep = verify_definition2(C, rs_code(16, 5, 4, 0), 0, 14, trials=20, seed=SEED)
    ok = (rep.passed and rep.params["field"]["t"] == 12 and rep.details["pairs"] == 20
          and rep.details["coefficients_checked"] == 13)
    record(7, ok, f"GF(2^{rep.params['field']['t']}), {rep.details.get('pairs')} pairs incl. min-weight, "
                  f"{rep.details.get('coefficients_checked')} leading coefficients zero")


def test_criterion_8_series_degrees_coprime():
    C = build_code(2, 21, [1, 3, 7, 9])
    L = rs_code(16, 5, 4, 0)
    rng = random.Random(SEED)
    words = random_codewords(C, 50, rng)
    series_ok = all(verify_series_identity(w, 2 * C.n) for w in words)
    common = common_field_for(C, L)
    pairs = list(zip(random_codewords(C, 50, rng), random_codewords(L, 50, rng)))
    deg_ok = check_degrees(pairs, 0, common).passed
    cop_ok = all(verify_coprime_factors(c, a, common) for c, a in pairs)
    neg_fails = coprime_negative_case() is False
    record(8, series_ok and deg_ok and cop_ok and neg_fails,
           f"series={series_ok} degrees={deg_ok} coprime={cop_ok} negative case fails={neg_fails}")


def test_criterion_9_ht_witness_guard():
    C = build_code(2, 21, [1, 3, 7, 9])
    value, w = ht_bound(C.defining_set)
    d_true = min_distance_brute(C).distance
    ok = w.validate(C.defining_set) and w.bound == value and bch_bound(C.defining_set)[0] <= value <= d_true == 8
    record(9, ok, f"exhaustive HT = {value} with valid witness {w.to_dict()}, d_true = {d_true}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))

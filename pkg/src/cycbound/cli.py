"""Command-line front end.

Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import bounds as B
from .cyclic_code import (
    PARITY,
    CodeError,
    CyclicCode,
    DefiningSet,
    build_code,
    code_from_defining_set,
    cyclotomic_coset,
    cyclotomic_cosets,
    default_locator_alphabet,
    parity_check_locator,
    rs_code,
    smallest_rs_alphabet,
)
from .finite_field import FIELD_CAP, FieldCapExceeded, FieldError, prime_power
from .oracle import (
    DEFAULT_SEED,
    ENUM_CAP,
    CapExceeded,
    Report,
    check_degrees,
    coprime_negative_case,
    common_field_for,
    min_distance_brute,
    random_codewords,
    verify_coprime_factors,
    verify_definition2,
    verify_series_identity,
)
from .polynomial import format_poly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
SWEEP_FIELD_CAP = 2**30

DEFAULT_CODE = {"q": 2, "n": 21, "cosets": [1, 3, 7, 9]}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    source: str | None
    fmt: str
    cap_enum: int
    cap_field: int
    seed: int
    jobs: int

    def __post_init__(self):
        if self.cap_enum <= 0 or self.cap_field <= 0:
            raise InputError("caps must be positive")


# --- input ----------------------------------------------------------------------

def read_description(args) -> dict:
    if args.inline is not None and args.input is not None:
        raise InputError("use either --input or --inline")
    try:
        if args.inline is not None:
            desc = json.loads(args.inline)
        elif args.input is not None:
            desc = json.loads(Path(args.input).read_text())
        else:
            raise InputError("a code description is required (--input FILE or --inline JSON)")
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read code description: {exc}") from exc
    if not isinstance(desc, dict) or "n" not in desc:
        raise InputError("description must be a JSON object with at least 'n'")
    return desc


def parse_description(desc: dict, cap_field: int = FIELD_CAP) -> CyclicCode | DefiningSet:
    """Build a code from ``{q, n, cosets}`` or a closed ``defining_set``; otherwise a bare set."""
    try:
        n = int(desc["n"])
        q = desc.get("q")
        q = int(q) if q is not None else None
        if n < 2:
            raise InputError("n must be at least 2")
        if "cosets" in desc:
            if q is None:
                raise InputError("'cosets' needs 'q'")
            return build_code(q, n, [int(r) for r in desc["cosets"]], cap_field)
        if "defining_set" in desc:
            members = [int(r) for r in desc["defining_set"]]
            closed = bool(desc.get("closed", q is not None))
            if closed:
                if q is None:
                    raise InputError("closed defining set needs 'q'")
                return code_from_defining_set(q, n, members, cap_field)
            if q is not None:
                prime_power(q)
            return DefiningSet.of(n, members, q)
        raise InputError("description needs 'cosets' or 'defining_set'")
    except (CodeError, FieldError, TypeError, ValueError) as exc:
        if isinstance(exc, (InputError, FieldCapExceeded)):
            raise
        raise InputError(str(exc)) from exc


def _defset(obj) -> DefiningSet:
    return obj.defining_set if isinstance(obj, CyclicCode) else obj


# --- output helpers -----------------------------------------------------------

def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] for c in columns])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def field_record(f) -> dict:
    return {"p": f.p, "t": f.t, "modulus": list(f.modulus)}


# --- commands -------------------------------------------------------------------

def code_report(obj: CyclicCode | DefiningSet) -> dict:
    S = _defset(obj)
    out = {"n": S.n, "defining_set": list(S.members), "rendered": S.render(), "closed": S.closed}
    if isinstance(obj, CyclicCode):
        out.update({
            "q": obj.q, "k": obj.k, "s": obj.splitting_degree,
            "cosets": {str(r): list(cyclotomic_coset(obj.n, obj.q, r)) for r in obj.cosets},
            "generator": list(obj.generator.coeffs),
            "generator_str": format_poly(obj.generator),
            "field": field_record(obj.ext_field),
        })
    elif S.q is not None:
        out["q"] = S.q
    return out


def cmd_code(cfg: RunConfig, obj) -> tuple[int, str]:
    rep = code_report(obj)
    if cfg.fmt == "json":
        rep["seed"] = cfg.seed
        return EXIT_OK, _json(rep)
    if cfg.fmt == "csv":
        row = {"n": rep["n"], "k": rep.get("k", "NA"), "size": len(rep["defining_set"])}
        return EXIT_OK, _csv([row], ["n", "k", "size"])
    lines = []
    if isinstance(obj, CyclicCode):
        lines.append(f"code {obj}  q={obj.q} n={obj.n} k={obj.k} s={obj.splitting_degree}")
        for r, c in rep["cosets"].items():
            lines.append(f"  M_{r} = {{{','.join(map(str, c))}}}")
    else:
        lines.append(f"defining set over Z_{rep['n']} (not a code)")
    lines.append(f"defining set: {{{rep['rendered']}}}")
    if "generator_str" in rep:
        lines.append(f"generator: {rep['generator_str']}")
        lines.append(f"generator coefficients (low to high): {rep['generator']}")
    lines.append(f"seed: {cfg.seed}")
    return EXIT_OK, "\n".join(lines) + "\n"


def bounds_report(obj, families: B.LocatorFamilies, oracle: bool, cap_enum: int) -> B.BoundReport:
    S = _defset(obj)
    ident = {"n": S.n, "defining_set": list(S.members)}
    if isinstance(obj, CyclicCode):
        ident.update({"q": obj.q, "k": obj.k, "cosets": list(obj.cosets)})
    report = B.compute_bounds(S, families, ident)
    hn, hw = B.ht_bound_normalized(S)
    report.extra["ht_normalized"] = {"value": hn, **hw.to_dict()}
    if oracle:
        if not isinstance(obj, CyclicCode):
            raise InputError("--oracle needs a code, not a bare defining set")
        report.true_distance = min_distance_brute(obj, cap_enum).distance
    return report


def cmd_bounds(cfg: RunConfig, obj, families: B.LocatorFamilies, oracle: bool) -> tuple[int, str]:
    report = bounds_report(obj, families, oracle, cfg.cap_enum)
    d = report.to_dict()
    if cfg.fmt == "json":
        d["seed"] = cfg.seed
        return EXIT_OK, _json(d)
    nzl = d["nzl"]["value"] if d["nzl"] else "NA"
    if cfg.fmt == "csv":
        row = {"n": d["n"], "k": d.get("k", "NA"), "bch": d["bch"]["value"], "ht": d["ht"]["value"],
               "nzl": nzl, "d_true": d.get("true_distance", "NA")}
        return EXIT_OK, _csv([row], list(row))
    ht = d["ht"]
    lines = [f"n={d['n']}" + (f" k={d['k']}" if "k" in d else ""),
             f"BCH bound: {d['bch']['value']}  (run start {d['bch']['b']}, length {d['bch']['length']})",
             f"HT bound:  {ht['value']}  (b1={ht['b1']} m1={ht['m1']} m2={ht['m2']} d0={ht['d0']} nu={ht['nu']})"]
    if d["nzl"]:
        z = d["nzl"]
        lines.append(f"NZL bound: {z['value']}  ({z['family']} n_l={z['n_l']} d_l={z['d_l']} e={z['e']} mu={z['mu']})")
    else:
        lines.append("NZL bound: NA (no admissible locator)")
    if report.true_distance is not None:
        lines.append(f"true distance: {report.true_distance}")
    lines.append(f"seed: {cfg.seed}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _canonical_under_units(S: DefiningSet) -> tuple[int, ...]:
    n = S.n
    return min(S.scaled(u).members for u in range(1, n) if math.gcd(u, n) == 1)


def scan_row(q: int, n: int, reps: tuple[int, ...], families: B.LocatorFamilies,
             cap_enum: int, cap_field: int) -> dict:
    members = sorted(set().union(*(cyclotomic_coset(n, q, r) for r in reps)))
    S = DefiningSet.of(n, members, q)
    bch = B.bch_bound(S)[0]
    ht = B.ht_bound(S)[0]
    try:
        nzl = B.nzl_search(S, families)[0]
    except B.BoundError:
        nzl = "NA"
    d_true = "NA"
    if q ** (n - len(S)) <= cap_enum:
        try:
            d_true = min_distance_brute(build_code(q, n, reps, cap_field), cap_enum).distance
        except (FieldCapExceeded, CapExceeded):
            pass
    flag = int(nzl != "NA" and nzl > ht)
    return {"n": n, "k": n - len(S), "cosets": " ".join(map(str, reps)), "bch": bch, "ht": ht,
            "nzl": nzl, "d_true": d_true, "nzl_gt_ht": flag}


def _scan_row_star(args):
    return scan_row(*args)


SCAN_COLUMNS = ["n", "k", "cosets", "bch", "ht", "nzl", "d_true", "nzl_gt_ht"]


def scan_codes(q: int, n_max: int, n_min: int = 2, dedupe: bool = False):
    """``(n, reps)`` for every nonzero proper cyclic code, ordered by (n, defining set)."""
    for n in range(n_min, n_max + 1):
        if math.gcd(n, q) != 1:
            continue
        cos = cyclotomic_cosets(n, q)
        entries = []
        for r in range(1, len(cos)):
            for sub in itertools.combinations(cos, r):
                members = tuple(sorted(itertools.chain.from_iterable(sub)))
                if len(members) == n:
                    continue
                entries.append((members, tuple(c[0] for c in sub)))
        entries.sort()
        seen = set()
        for members, reps in entries:
            if dedupe:
                key = _canonical_under_units(DefiningSet.of(n, members))
                if key in seen:
                    continue
                seen.add(key)
            yield n, reps


def cmd_scan(cfg: RunConfig, q: int, n_max: int, families: B.LocatorFamilies, dedupe: bool,
             n_min: int = 2) -> tuple[int, str]:
    tasks = [(q, n, reps, families, cfg.cap_enum, cfg.cap_field)
             for n, reps in scan_codes(q, n_max, n_min, dedupe)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            rows = list(ex.map(_scan_row_star, tasks, chunksize=4))
    else:
        rows = [scan_row(*t) for t in tasks]
    if cfg.fmt == "json":
        return EXIT_OK, _json({"q": q, "n_max": n_max, "seed": cfg.seed, "rows": rows})
    return EXIT_OK, _csv(rows, SCAN_COLUMNS)


FIGURE_COLUMNS = ["d0", "nu", "m", "d_l", "d_star", "ht", "ratio"]


def figure_rows(which: str, nus=range(1, 7), d0s=range(2, 21), dls=range(2, 7),
                cross_check: bool = True) -> list[dict]:
    """Closed-form curves, each point re-derived by the generic search on a synthetic pattern."""
    if which == "fig1":
        params = [(nu, nu + 2) for nu in nus]
    elif which == "fig2":
        params = [(nu, nu + dl) for nu in nus for dl in dls]
    else:
        raise InputError(f"unknown figure {which!r}")
    rows = []
    for nu, m in params:
        for d0 in d0s:
            if which == "fig1":
                d_star = B.parity_bound_formula(d0, nu)
            else:
                d_star = B.rs_bound_formula(d0, nu, m)
            if cross_check:
                S = B.synth_ht_pattern(0, m, d0, nu, 2 * m * d0 + 1)
                loc = parity_check_locator(m) if which == "fig1" else rs_code(
                    smallest_rs_alphabet(m), m, nu + 1, 0)
                found = B.nzl_bound(S, loc)[0]
                if found != d_star:
                    raise AssertionError(f"closed form {d_star} != search {found} at d0={d0} nu={nu} m={m}")
            ht = d0 + nu
            rows.append({"d0": d0, "nu": nu, "m": m, "d_l": m - nu, "d_star": d_star, "ht": ht,
                         "ratio": f"{d_star / ht:.6f}"})
    return rows


def _range(text: str | None, default: range) -> range:
    if text is None:
        return default
    try:
        vals = B._parse_ints(text)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc
    if not vals:
        raise InputError(f"empty range {text!r}")
    return range(min(vals), max(vals) + 1)


def cmd_figure(cfg: RunConfig, which: str, nu: str | None, d0: str | None, dl: str | None) -> tuple[int, str]:
    if which == "fig1":
        nus = _range(nu, range(1, 7))
    else:
        nus = _range(nu, range(6, 7))
    d0s = _range(d0, range(2, 21))
    dls = _range(dl, range(2, 7))
    if min(nus) < 0 or min(d0s) < 2 or min(dls) < 2:
        raise InputError("need nu >= 0, d0 >= 2, d_l >= 2")
    try:
        rows = figure_rows(which, nus, d0s, dls)
    except AssertionError as exc:
        sys.stderr.write(f"cross-check failed: {exc}\n")
        return EXIT_FAIL, ""
    if cfg.fmt == "json":
        return EXIT_OK, _json({"figure": which, "rows": rows})
    return EXIT_OK, _csv(rows, FIGURE_COLUMNS)


# --- verification suites ---------------------------------------------------------

def _verifiable_locator(C: CyclicCode, families: B.LocatorFamilies):
    """Best nzl witness among locators that exist over the code's characteristic."""
    p = C.base_field.p
    fam = B.LocatorFamilies(tuple(x for x in families.parity_lengths if math.gcd(x, p) == 1),
                            families.rs_lengths, families.rs_nus)
    value, w = B.nzl_search(C.defining_set, fam, p)
    loc = w.locator
    q_l = default_locator_alphabet(p, loc.n_l)
    if loc.family == PARITY:
        # parity code over the smallest field holding beta, as an RS code with k = n - 1
        loc = rs_code(q_l, loc.n_l, loc.n_l - 1, 0)
    return value, B.NzlWitness(loc, w.e, w.mu)


def suite_def2(C: CyclicCode, families: B.LocatorFamilies, cfg: RunConfig, trials: int = 20) -> list[Report]:
    _, w = _verifiable_locator(C, families)
    return [verify_definition2(C, w.locator, w.e, w.mu, trials, cfg.seed, cfg.cap_field, cfg.cap_enum)]


def suite_series(C: CyclicCode, cfg: RunConfig, count: int = 50) -> list[Report]:
    rng = random.Random(cfg.seed)
    words = random_codewords(C, count, rng)
    failed = [list(w.coeffs) for w in words if not verify_series_identity(w, 2 * C.n)]
    params = {"n": C.n, "q": C.q, "words": count, "N": 2 * C.n}
    return [Report("series", params, not failed, cfg.seed, {"c": failed[0]} if failed else None)]


def suite_degrees(C: CyclicCode, families: B.LocatorFamilies, cfg: RunConfig, count: int = 50) -> list[Report]:
    _, w = _verifiable_locator(C, families)
    L = w.locator
    common = common_field_for(C, L, cfg.cap_field)
    rng = random.Random(cfg.seed)
    pairs = list(zip(random_codewords(C, count, rng), random_codewords(L, count, rng)))
    rep = check_degrees(pairs, w.e, common)
    rep.seed = cfg.seed
    cop = all(verify_coprime_factors(c, a, common) for c, a in pairs)
    neg = coprime_negative_case(cfg.cap_field)
    return [rep,
            Report("coprime", {"pairs": count, "n_l": L.n_l}, cop, cfg.seed),
            Report("coprime_negative", {"n": 21, "n_l": 7}, not neg, cfg.seed)]


def soundness_sweep(q: int = 2, n_max: int = 31, k_cap: int = 2**20,
                    families: B.LocatorFamilies = B.DEFAULT_FAMILIES,
                    cap_field: int = SWEEP_FIELD_CAP, jobs: int = 1):
    """Rows of (bounds, true distance) for every cyclic code of length ``<= n_max`` with ``q^k <= k_cap``."""
    tasks = [(q, n, reps, families, k_cap, cap_field) for n, reps in scan_codes(q, n_max)]
    tasks = [t for t in tasks if q ** (t[1] - _size(q, t[1], t[2])) <= k_cap]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_sweep_row_star, tasks, chunksize=2))
    return [_sweep_row(*t) for t in tasks]


def _size(q, n, reps) -> int:
    return len(set().union(*(cyclotomic_coset(n, q, r) for r in reps)))


def _sweep_row(q, n, reps, families, k_cap, cap_field) -> dict:
    row = scan_row(q, n, reps, families, k_cap, cap_field)
    S = DefiningSet.of(n, set().union(*(cyclotomic_coset(n, q, r) for r in reps)), q)
    row["ht_normalized"] = B.ht_bound_normalized(S)[0]
    row["witnesses_ok"] = (B.bch_bound(S)[1].validate(S) and B.ht_bound(S)[1].validate(S)
                           and B.nzl_search(S, families)[1].validate(S))
    return row


def _sweep_row_star(args):
    return _sweep_row(*args)


def sound(row: dict) -> bool:
    d = row["d_true"]
    if d == "NA":
        return False
    return (row["bch"] <= row["ht"] <= d and row["ht"] == row["ht_normalized"]
            and (row["nzl"] == "NA" or row["nzl"] <= d) and row["witnesses_ok"])


def suite_soundness(cfg: RunConfig, families: B.LocatorFamilies, n_max: int = 31) -> list[Report]:
    rows = soundness_sweep(2, n_max, min(cfg.cap_enum, 2**20), families, max(cfg.cap_field, SWEEP_FIELD_CAP),
                           cfg.jobs)
    bad = [r for r in rows if not sound(r)]
    return [Report("soundness", {"q": 2, "n_max": n_max, "codes": len(rows)}, not bad, cfg.seed,
                   bad[0] if bad else None)]


def cmd_verify(cfg: RunConfig, suite: str, obj, families: B.LocatorFamilies, n_max: int) -> tuple[int, str]:
    if suite != "soundness" and not isinstance(obj, CyclicCode):
        raise InputError("verification suites need a code")
    if suite == "def2":
        reports = suite_def2(obj, families, cfg)
    elif suite == "series":
        reports = suite_series(obj, cfg)
    elif suite == "degrees":
        reports = suite_degrees(obj, families, cfg)
    elif suite == "soundness":
        reports = suite_soundness(cfg, families, n_max)
    elif suite == "all":
        reports = (suite_def2(obj, families, cfg) + suite_series(obj, cfg)
                   + suite_degrees(obj, families, cfg) + suite_soundness(cfg, families, n_max))
    else:
        raise InputError(f"unknown suite {suite!r}")
    ok = all(r.passed for r in reports)
    payload = {"suite": suite, "seed": cfg.seed, "pass": ok, "reports": [r.to_dict() for r in reports]}
    if cfg.fmt == "text":
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.check} {json.dumps(r.params, sort_keys=True)}"
                 for r in reports]
        lines.append(f"seed: {cfg.seed}")
        out = "\n".join(lines) + "\n"
    else:
        out = _json(payload)
    return (EXIT_OK if ok else EXIT_FAIL), out


def cmd_distance(cfg: RunConfig, obj) -> tuple[int, str]:
    if not isinstance(obj, CyclicCode):
        raise InputError("distance needs a code")
    res = min_distance_brute(obj, cfg.cap_enum)
    d = {"n": obj.n, "k": obj.k, "q": obj.q, "distance": res.distance, "enumerated": res.enumerated,
         "witness": list(res.witness_codeword.coeffs), "exact": res.exact, "seed": cfg.seed}
    if cfg.fmt == "json":
        return EXIT_OK, _json(d)
    if cfg.fmt == "csv":
        return EXIT_OK, _csv([d], ["n", "k", "q", "distance", "enumerated"])
    return EXIT_OK, (f"{obj}: d = {res.distance} over {res.enumerated} nonzero codewords\n"
                     f"witness: {res.witness_codeword}\nseed: {cfg.seed}\n")


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="code description JSON file")
    common.add_argument("--inline", help="code description as a JSON string")
    common.add_argument("--format", dest="fmt", choices=["csv", "json", "text"], default=None)
    common.add_argument("--cap-enum", type=int, default=ENUM_CAP, help="max codewords enumerated")
    common.add_argument("--cap-field", type=int, default=FIELD_CAP, help="max field order")
    common.add_argument("--families", default=None,
                        help='locator families, e.g. "parity:2-8;rs:3-8" (default)')
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="cycbound", description="Minimum-distance bounds for cyclic codes.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("code", parents=[common], help="construct a code and show its defining set")
    pb = sub.add_parser("bounds", parents=[common], help="BCH, HT and non-zero-locator bounds")
    pb.add_argument("--oracle", action="store_true", help="also compute the true distance")
    ps = sub.add_parser("scan", parents=[common], help="bounds for every cyclic code up to a length")
    ps.add_argument("--q", type=int, default=2)
    ps.add_argument("--n-max", type=int, default=15)
    ps.add_argument("--n-min", type=int, default=2)
    ps.add_argument("--dedupe", action="store_true", help="one code per unit-multiple class")
    pf = sub.add_parser("figure", parents=[common], help="ratio curves as CSV")
    pf.add_argument("which", choices=["fig1", "fig2"])
    pf.add_argument("--nu")
    pf.add_argument("--d0")
    pf.add_argument("--dl")
    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("suite", choices=["def2", "series", "degrees", "soundness", "all"])
    pv.add_argument("--n-max", type=int, default=31)
    sub.add_parser("distance", parents=[common], help="brute-force minimum distance")
    return p


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    default_fmt = "csv" if args.command in ("scan", "figure") else "text"
    try:
        cfg = RunConfig(args.command, args.input or args.inline, args.fmt or default_fmt,
                        args.cap_enum, args.cap_field, args.seed, max(1, args.jobs))
        families = B.LocatorFamilies.parse(args.families) if args.families else B.DEFAULT_FAMILIES
        if args.command == "scan":
            if args.q < 2:
                raise InputError("q must be a prime power")
            prime_power(args.q)
            return cmd_scan(cfg, args.q, args.n_max, families, args.dedupe, args.n_min)
        if args.command == "figure":
            return cmd_figure(cfg, args.which, args.nu, args.d0, args.dl)
        if args.command == "verify" and args.input is None and args.inline is None:
            obj = parse_description(DEFAULT_CODE, cfg.cap_field)
        else:
            obj = parse_description(read_description(args), cfg.cap_field)
        if args.command == "code":
            return cmd_code(cfg, obj)
        if args.command == "bounds":
            return cmd_bounds(cfg, obj, families, args.oracle)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, obj, families, args.n_max)
        if args.command == "distance":
            return cmd_distance(cfg, obj)
    except (CapExceeded, FieldCapExceeded) as exc:
        return EXIT_CAP, f"error: {exc}\n"
    except (InputError, B.BoundError, CodeError, FieldError) as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    raise AssertionError("unreachable")


def main(argv: list[str] | None = None) -> int:
    code, out = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
    stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

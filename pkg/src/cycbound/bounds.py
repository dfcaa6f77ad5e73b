"""Lower bounds on the minimum distance of cyclic codes.

All bounds take a :class:`DefiningSet` (or any subset of it, since every
bound is monotone in the set) and return ``(value, witness)``.  Witnesses
carry enough parameters to be re-checked against the set directly.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .cyclic_code import (
    DefiningSet,
    LocatorSpec,
    default_locator_alphabet,
    parity_check_locator,
    rs_code,
    smallest_rs_alphabet,
)
from .finite_field import prime_power

HT_MAX_N = 255


class BoundError(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1] if n > 1 else [0]


def _check_proper(S: DefiningSet) -> None:
    if not S.members:
        raise BoundError("defining set is empty")
    if len(S) == S.n:
        raise BoundError("defining set is all of Z_n")


def _longest_cyclic_run(bits: list[int]) -> tuple[int, list[int]]:
    """Longest cyclic run of ones and all indices where such a run starts."""
    n = len(bits)
    if all(bits):
        raise BoundError("full set has no finite run")
    best, starts = 0, []
    # begin the scan just after a zero so no run is split across the seam
    z = bits.index(0)
    run = 0
    for k in range(1, n + 1):
        i = (z + k) % n
        if bits[i]:
            run += 1
            continue
        if run > best:
            best, starts = run, [(i - run) % n]
        elif run == best and run:
            starts.append((i - run) % n)
        run = 0
    return best, starts


# --- BCH ---------------------------------------------------------------------

@dataclass(frozen=True)
class BchWitness:
    b: int
    length: int

    @property
    def bound(self) -> int:
        return self.length + 1

    def validate(self, S: DefiningSet) -> bool:
        return self.length >= 1 and all((self.b + i) in S for i in range(self.length))

    def to_dict(self) -> dict:
        return {"b": self.b, "length": self.length}


def bch_bound(S: DefiningSet) -> tuple[int, BchWitness]:
    """Longest cyclic run ``{b, ..., b+L-1}`` in ``S``; value ``L + 1``."""
    _check_proper(S)
    bits = [1 if r in S.as_set else 0 for r in range(S.n)]
    L, starts = _longest_cyclic_run(bits)
    w = BchWitness(min(starts), L)
    return w.bound, w


# --- Hartmann-Tzeng ----------------------------------------------------------

@dataclass(frozen=True)
class HtWitness:
    b1: int
    m1: int
    m2: int
    d0: int
    nu: int

    @property
    def bound(self) -> int:
        return self.d0 + self.nu

    def pattern(self, n: int) -> set[int]:
        return {(self.b1 + i1 * self.m1 + i2 * self.m2) % n
                for i1 in range(self.d0 - 1) for i2 in range(self.nu + 1)}

    def validate(self, S: DefiningSet) -> bool:
        n = S.n
        if self.d0 < 2 or self.nu < 0:
            return False
        if math.gcd(n, self.m1) != 1 or math.gcd(n, self.m2) != 1:
            return False
        return self.pattern(n) <= S.as_set

    def to_dict(self) -> dict:
        return {"b1": self.b1, "m1": self.m1, "m2": self.m2, "d0": self.d0, "nu": self.nu}


def _shift_mask(mask: int, s: int, n: int) -> int:
    """Mask of ``{x : x + s in set}``."""
    s %= n
    full = (1 << n) - 1
    return ((mask >> s) | (mask << (n - s))) & full


def _check_ht_size(S: DefiningSet, max_n: int) -> None:
    _check_proper(S)
    if S.n > max_n:
        raise BoundError(f"n = {S.n} exceeds HT search cap {max_n}")


def ht_bound(S: DefiningSet, max_n: int = HT_MAX_N) -> tuple[int, HtWitness]:
    """Exhaustive Hartmann-Tzeng search over ``(b1, m1, m2, d0, nu)``.

    Among witnesses of maximal ``d0 + nu`` the lexicographically smallest
    ``(nu, m1, m2, b1)`` is returned.
    """
    _check_ht_size(S, max_n)
    n = S.n
    units = _units(n)
    # m -> n-m maps witnesses to witnesses with the same (d0, nu), so the
    # smallest representative of each pair is enough for the tie-break
    half = [u for u in units if u <= n - u] or units
    perms = {m1: [k * m1 % n for k in range(n)] for m1 in half}
    best_key = None
    best = None
    for m2 in half:
        T = S.mask
        nu = 0
        while T:
            for m1 in half:
                bits = [(T >> x) & 1 for x in perms[m1]]
                R, starts = _longest_cyclic_run(bits)
                b1 = min(perms[m1][k] for k in starts)
                key = (-(R + 1 + nu), nu, m1, m2, b1)
                if best_key is None or key < best_key:
                    best_key, best = key, HtWitness(b1, m1, m2, R + 1, nu)
            nu += 1
            T &= _shift_mask(S.mask, nu * m2, n)
    return best.bound, best


@dataclass(frozen=True)
class NormalizedHtWitness:
    """Pattern ``{b2 + i1*m + i2}`` contained in ``unit * S``."""

    unit: int
    b2: int
    m: int
    d0: int
    nu: int

    @property
    def bound(self) -> int:
        return self.d0 + self.nu

    def to_ht(self, n: int) -> HtWitness:
        inv = pow(self.unit, -1, n) if n > 1 else 0
        return HtWitness(self.b2 * inv % n, self.m * inv % n or n, inv or 1, self.d0, self.nu)

    def validate(self, S: DefiningSet) -> bool:
        if self.m <= self.nu + 1 or math.gcd(self.m, S.n) != 1:
            return False
        return self.to_ht(S.n).validate(S)

    def to_dict(self) -> dict:
        return {"unit": self.unit, "b2": self.b2, "m": self.m, "d0": self.d0, "nu": self.nu}


def _smallest_step_above(n: int, lo: int) -> int:
    m = lo + 1
    while math.gcd(m, n) != 1:
        m += 1
    return m


def ht_bound_normalized(S: DefiningSet, max_n: int = HT_MAX_N) -> tuple[int, NormalizedHtWitness]:
    """HT search in the form ``{b2 + i1*m + i2} subset of u*S`` with ``m > nu + 1``.

    Patterns with a single block (``d0 = 2``) never use ``m``; for those the
    reported ``m`` is the smallest admissible integer, which may exceed n.
    """
    _check_ht_size(S, max_n)
    n = S.n
    units = _units(n)
    perms = {m: [k * m % n for k in range(n)] for m in units}
    best_key = None
    best = None
    for u in units:
        mask = S.scaled(u).mask
        T = mask
        nu = 0
        while T:
            bits = [(T >> x) & 1 for x in range(n)]
            _, starts = _longest_cyclic_run(bits)
            m = _smallest_step_above(n, nu + 1)
            key = (-(nu + 2), nu, m, u, min(starts))
            if best_key is None or key < best_key:
                best_key, best = key, NormalizedHtWitness(u, min(starts), m, 2, nu)
            for m in units:
                if m <= nu + 1:
                    continue
                bits = [(T >> x) & 1 for x in perms[m]]
                R, starts = _longest_cyclic_run(bits)
                b2 = min(perms[m][k] for k in starts)
                key = (-(R + 1 + nu), nu, m, u, b2)
                if key < best_key:
                    best_key, best = key, NormalizedHtWitness(u, b2, m, R + 1, nu)
            nu += 1
            T &= _shift_mask(mask, nu, n)
    return best.bound, best


def synth_ht_pattern(b2: int, m: int, d0: int, nu: int, n: int) -> DefiningSet:
    """Exactly ``{b2 + i1*m + i2 : 0 <= i1 <= d0-2, 0 <= i2 <= nu}`` mod ``n``."""
    if math.gcd(n, m) != 1:
        raise BoundError(f"gcd(n={n}, m={m}) != 1")
    if m <= nu + 1:
        raise BoundError("need m > nu + 1")
    if d0 < 2 or nu < 0:
        raise BoundError("need d0 >= 2 and nu >= 0")
    pts = [(b2 + i1 * m + i2) % n for i1 in range(d0 - 1) for i2 in range(nu + 1)]
    if len(set(pts)) != len(pts):
        raise BoundError("pattern collides with itself modulo n")
    return DefiningSet.of(n, pts)


# --- non-zero-locator bound -------------------------------------------------

@dataclass(frozen=True)
class NzlWitness:
    locator: LocatorSpec
    e: int
    mu: int

    @property
    def bound(self) -> int:
        return _ceil_div(self.mu, self.locator.d_l)

    def covered(self, S: DefiningSet, j: int) -> bool:
        return (j + self.e) % S.n in S.as_set or j % self.locator.n_l in self.locator.defining_set.as_set

    def validate(self, S: DefiningSet) -> bool:
        if math.gcd(S.n, self.locator.n_l) != 1:
            return False
        if not all(self.covered(S, j) for j in range(self.mu - 1)):
            return False
        return not self.covered(S, self.mu - 1)

    def to_dict(self) -> dict:
        return {"family": self.locator.family, "q_l": self.locator.q_l, "n_l": self.locator.n_l,
                "k_l": self.locator.k_l, "d_l": self.locator.d_l, "e": self.e, "mu": self.mu}


def nzl_run(S: DefiningSet, D_L: DefiningSet, e: int) -> int:
    """Largest ``M`` such that every ``j < M`` has ``j+e`` in S or ``j`` in D_L."""
    n, nl = S.n, D_L.n
    if math.gcd(n, nl) != 1:
        raise BoundError(f"gcd(n={n}, n_l={nl}) != 1")
    s, dl = S.as_set, D_L.as_set
    limit = n * nl
    j = 0
    while j < limit and ((j + e) % n in s or j % nl in dl):
        j += 1
    if j == limit:
        raise BoundError("degenerate full coverage: defining sets cover every position")
    return j


def _check_locator(locator: LocatorSpec) -> None:
    if not locator.defining_set.members or locator.d_l <= 1:
        raise BoundError("locator codes with an empty defining set (d_l = 1) are not admissible")


def nzl_bound(S: DefiningSet, locator: LocatorSpec) -> tuple[int, NzlWitness]:
    """``ceil(mu / d_l)`` maximized over the offset ``e``.

    Offsets ``e`` and ``e + n`` give identical coverage, so ``e`` ranges
    over ``[0, n)``; ties go to the smallest ``e``.
    """
    _check_locator(locator)
    if math.gcd(S.n, locator.n_l) != 1:
        raise BoundError(f"gcd(n={S.n}, n_l={locator.n_l}) != 1")
    best_e, best_M = 0, -1
    for e in range(S.n):
        M = nzl_run(S, locator.defining_set, e)
        if M > best_M:
            best_e, best_M = e, M
    w = NzlWitness(locator, best_e, best_M + 1)
    return w.bound, w


@dataclass(frozen=True)
class LocatorFamilies:
    """Candidate locators for :func:`nzl_search`.

    ``rs_nus`` restricts the RS dimension parameter; by default every
    ``0 <= nu <= m-2`` is tried.  The locator alphabet is only needed for
    numeric verification: with a known characteristic ``p`` it is
    ``p^ord(p, n_l)``, otherwise the smallest admissible prime power.
    """

    parity_lengths: tuple[int, ...] = ()
    rs_lengths: tuple[int, ...] = ()
    rs_nus: tuple[int, ...] | None = None

    @classmethod
    def parse(cls, text: str) -> LocatorFamilies:
        """Parse e.g. ``"parity:2-8;rs:3-8"`` or ``"parity:5,7;rs:9;nu:1,2"``."""
        par: list[int] = []
        rs: list[int] = []
        nus: list[int] | None = None
        for part in filter(None, (p.strip() for p in text.split(";"))):
            name, _, vals = part.partition(":")
            nums = _parse_ints(vals)
            name = name.strip().lower()
            if name == "parity":
                par += nums
            elif name == "rs":
                rs += nums
            elif name == "nu":
                nus = (nus or []) + nums
            else:
                raise BoundError(f"unknown locator family {name!r}")
        return cls(tuple(par), tuple(rs), tuple(nus) if nus is not None else None)

    def candidates(self, n: int, p: int | None = None) -> list[LocatorSpec]:
        out = []
        for nl in self.parity_lengths:
            if nl >= 2 and math.gcd(n, nl) == 1:
                q_l = default_locator_alphabet(p, nl) if p is not None and math.gcd(p, nl) == 1 else (p or 2)
                out.append(parity_check_locator(nl, q_l))
        for m in self.rs_lengths:
            if m < 2 or math.gcd(n, m) != 1:
                continue
            if p is not None:
                if math.gcd(p, m) != 1:
                    continue
                q_l = default_locator_alphabet(p, m)
            else:
                q_l = smallest_rs_alphabet(m)
            for nu in range(m - 1):
                if self.rs_nus is None or nu in self.rs_nus:
                    out.append(rs_code(q_l, m, nu + 1, 0))
        return out


def _parse_ints(text: str) -> list[int]:
    out: list[int] = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        m = re.fullmatch(r"(\d+)-(\d+)", tok)
        if m:
            out += list(range(int(m.group(1)), int(m.group(2)) + 1))
        else:
            out.append(int(tok))
    return out


DEFAULT_FAMILIES = LocatorFamilies(parity_lengths=tuple(range(2, 9)), rs_lengths=tuple(range(3, 9)))


def nzl_search(S: DefiningSet, families: LocatorFamilies, p: int | None = None) -> tuple[int, NzlWitness]:
    """Best non-zero-locator bound over a family of candidate locators.

    Ties prefer the smaller ``n_l``, then the smaller ``d_l``, then the
    smaller offset; remaining ties keep the first candidate (parity first).
    """
    if not families.parity_lengths and not families.rs_lengths:
        raise BoundError("empty locator configuration")
    if p is None and S.q is not None:
        p = prime_power(S.q)[0]
    cands = families.candidates(S.n, p)
    if not cands:
        raise BoundError(f"no admissible locator for n = {S.n}")
    best_key, best = None, None
    for loc in cands:
        value, w = nzl_bound(S, loc)
        key = (-value, loc.n_l, loc.d_l, w.e)
        if best_key is None or key < best_key:
            best_key, best = key, (value, w)
    return best


# --- closed forms ---------------------------------------------------------------

def parity_bound_formula(d0: int, nu: int) -> int:
    """Bound from a parity-check locator of length nu+2 on an HT pattern."""
    if d0 < 2 or nu < 0:
        raise BoundError("need d0 >= 2 and nu >= 0")
    return _ceil_div((nu + 2) * d0 - nu, 2)


def rs_bound_formula(d0: int, nu: int, m: int) -> int:
    """Bound from an RS locator of length m (distance m - nu) on an HT pattern."""
    if m <= nu + 1:
        raise BoundError("need m > nu + 1")
    if d0 < 2 or nu < 0:
        raise BoundError("need d0 >= 2 and nu >= 0")
    return _ceil_div(m * d0 - nu, m - nu)


def prop1_improves(d0: int, nu: int, m: int) -> bool:
    """Whether the RS-locator closed form beats ``d0 + nu``."""
    return rs_bound_formula(d0, nu, m) > d0 + nu


# --- report ---------------------------------------------------------------------

@dataclass
class BoundReport:
    code: dict
    bch: tuple[int, BchWitness]
    ht: tuple[int, HtWitness]
    nzl: tuple[int, NzlWitness] | None
    true_distance: int | None = None
    extra: dict = field(default_factory=dict)

    def validate(self, S: DefiningSet) -> bool:
        ok = self.bch[1].validate(S) and self.ht[1].validate(S)
        if self.nzl is not None:
            ok = ok and self.nzl[1].validate(S)
        return ok

    def to_dict(self) -> dict:
        out = dict(self.code)
        out["bch"] = {"value": self.bch[0], **self.bch[1].to_dict()}
        out["ht"] = {"value": self.ht[0], **self.ht[1].to_dict()}
        out["nzl"] = None if self.nzl is None else {"value": self.nzl[0], **self.nzl[1].to_dict()}
        if self.true_distance is not None:
            out["true_distance"] = self.true_distance
        out.update(self.extra)
        return out


def compute_bounds(S: DefiningSet, families: LocatorFamilies = DEFAULT_FAMILIES,
                   code: dict | None = None) -> BoundReport:
    ident = code if code is not None else {"n": S.n, "defining_set": list(S.members)}
    try:
        nzl = nzl_search(S, families)
    except BoundError:
        nzl = None
    return BoundReport(ident, bch_bound(S), ht_bound(S), nzl)

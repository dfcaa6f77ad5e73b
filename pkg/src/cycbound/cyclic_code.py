"""Cyclic codes from cyclotomic cosets, cyclic RS codes and locator codes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .finite_field import (
    FIELD_CAP,
    FieldElement,
    FieldSpec,
    build_field,
    embed,
    nth_root_of_unity,
    ord_mod,
    prime_power,
)
from .polynomial import Poly, from_roots

PARITY = "ParityCheck"
REED_SOLOMON = "ReedSolomon"
CUSTOM = "Custom"

GAP = "□"


class CodeError(ValueError):
    pass


def _require_coprime(n: int, q: int) -> None:
    if n < 1:
        raise CodeError("length must be positive")
    if math.gcd(n, q) != 1:
        raise CodeError(f"gcd(n={n}, q={q}) != 1")


@dataclass(frozen=True)
class DefiningSet:
    """Exponents ``i`` in Z_n.  ``closed`` marks a union of q-cyclotomic cosets."""

    n: int
    members: tuple[int, ...]
    q: int | None = None
    closed: bool = False

    def __post_init__(self):
        if any(not 0 <= r < self.n for r in self.members):
            raise CodeError("members must lie in [0, n)")
        if len(set(self.members)) != len(self.members) or list(self.members) != sorted(self.members):
            raise CodeError("members must be sorted and distinct")
        if self.closed:
            if self.q is None:
                raise CodeError("closed defining set needs q")
            ms = set(self.members)
            if any(r * self.q % self.n not in ms for r in ms):
                raise CodeError("defining set is not closed under multiplication by q")

    @classmethod
    def of(cls, n: int, members: Iterable[int], q: int | None = None) -> DefiningSet:
        """Reduce ``members`` mod ``n`` and detect closure when ``q`` is given."""
        ms = tuple(sorted({int(r) % n for r in members}))
        closed = q is not None and math.gcd(n, q) == 1 and all(r * q % n in ms for r in ms)
        return cls(n, ms, q, closed)

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> int:
        return sum(1 << r for r in self.members)

    def __contains__(self, r: int) -> bool:
        return r % self.n in self.as_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def scaled(self, u: int) -> DefiningSet:
        return DefiningSet.of(self.n, (u * r for r in self.members), self.q)

    def render(self, start: int | None = None, stop: int | None = None) -> str:
        """Comma-joined listing over ``[start, stop)`` with gap markers.

        Defaults span the smallest to the largest member.
        """
        if not self.members:
            return ""
        if start is None:
            start = self.members[0]
        if stop is None:
            stop = self.members[-1] + 1
        return ",".join(str(j) if j % self.n in self.as_set else GAP for j in range(start, stop))


def cyclotomic_coset(n: int, q: int, r: int) -> tuple[int, ...]:
    """Orbit of ``r`` under multiplication by ``q`` mod ``n``, sorted."""
    _require_coprime(n, q)
    r %= n
    orbit = [r]
    x = r * q % n
    while x != r:
        orbit.append(x)
        x = x * q % n
    return tuple(sorted(orbit))


def cyclotomic_cosets(n: int, q: int) -> list[tuple[int, ...]]:
    """All cosets partitioning Z_n, ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for r in range(n):
        if r not in seen:
            c = cyclotomic_coset(n, q, r)
            seen.update(c)
            out.append(c)
    return out


def splitting_field(q: int, n: int, cap: int = FIELD_CAP) -> tuple[FieldSpec, FieldSpec, FieldElement]:
    """``(GF(q), GF(q^s), alpha)`` with ``alpha`` the designated n-th root of unity."""
    _require_coprime(n, q)
    p, a = prime_power(q)
    s = ord_mod(q, n)
    base = build_field(p, a, cap=cap)
    ext = build_field(p, a * s, cap=cap)
    return base, ext, nth_root_of_unity(ext, n)


def restrict(f: Poly, base: FieldSpec) -> Poly:
    """Rewrite a polynomial whose coefficients lie in the subfield ``base``."""
    ext = f.field
    if ext == base:
        return f
    if base.t == 1:
        if any(c >= base.p for c in f.coeffs):
            raise CodeError("coefficients are not in the prime field")
        return Poly(base, f.coeffs)
    back = {embed(x, ext).value: x.value for x in base.elements()}
    try:
        return Poly(base, tuple(back[c] for c in f.coeffs))
    except KeyError:
        raise CodeError(f"coefficients are not in {base}") from None


def minimal_polynomial(n: int, q: int, r: int, cap: int = FIELD_CAP) -> Poly:
    base, ext, alpha = splitting_field(q, n, cap)
    roots = [alpha ** i for i in cyclotomic_coset(n, q, r)]
    return restrict(from_roots(ext, roots), base)


@dataclass(frozen=True)
class CyclicCode:
    q: int
    n: int
    k: int
    cosets: tuple[int, ...]
    defining_set: DefiningSet
    generator: Poly
    splitting_degree: int
    base_field: FieldSpec
    ext_field: FieldSpec
    alpha: FieldElement

    def __str__(self) -> str:
        return f"C_{self.q}[{self.n},{self.k}]"


def build_code(q: int, n: int, coset_reps: Sequence[int], cap_field: int = FIELD_CAP) -> CyclicCode:
    """Cyclic code whose defining set is the union of the cosets of ``coset_reps``."""
    _require_coprime(n, q)
    base, ext, alpha = splitting_field(q, n, cap_field)
    reps: list[int] = []
    members: set[int] = set()
    for r in coset_reps:
        c = cyclotomic_coset(n, q, r)
        if c[0] not in reps:
            reps.append(c[0])
            members.update(c)
    if len(members) == n:
        raise CodeError("defining set is all of Z_n (zero code)")
    reps.sort()
    roots = [alpha ** i for i in sorted(members)]
    g = restrict(from_roots(ext, roots), base)
    ds = DefiningSet(n, tuple(sorted(members)), q, True)
    return CyclicCode(q, n, n - len(members), tuple(reps), ds, g, ord_mod(q, n), base, ext, alpha)


def code_from_defining_set(q: int, n: int, members: Iterable[int], cap_field: int = FIELD_CAP) -> CyclicCode:
    ds = DefiningSet.of(n, members, q)
    if not ds.closed:
        raise CodeError("defining set is not a union of cyclotomic cosets")
    reps = sorted({cyclotomic_coset(n, q, r)[0] for r in ds.members})
    return build_code(q, n, reps, cap_field)


@dataclass(frozen=True)
class LocatorSpec:
    """Parameters of a non-zero-locator code over GF(q_l)."""

    family: str
    q_l: int
    n_l: int
    k_l: int
    d_l: int
    defining_set: DefiningSet
    rs_offset: int = 0

    @property
    def n(self) -> int:
        return self.n_l

    @property
    def k(self) -> int:
        return self.k_l

    @cached_property
    def base_field(self) -> FieldSpec:
        p, a = prime_power(self.q_l)
        return build_field(p, a)

    @cached_property
    def root_field(self) -> FieldSpec:
        """Smallest extension of GF(q_l) holding a primitive n_l-th root of unity."""
        p, a = prime_power(self.q_l)
        return build_field(p, a * ord_mod(self.q_l, self.n_l))

    @cached_property
    def beta(self) -> FieldElement:
        return nth_root_of_unity(self.root_field, self.n_l)

    @cached_property
    def generator(self) -> Poly:
        if self.family == PARITY:
            return Poly.of(self.base_field, [-1, 1])
        roots = [self.beta ** i for i in self.defining_set.members]
        return restrict(from_roots(self.root_field, roots), self.base_field)

    def describe(self) -> dict:
        out = {"family": self.family, "q_l": self.q_l, "n_l": self.n_l, "k_l": self.k_l, "d_l": self.d_l,
               "defining_set": list(self.defining_set.members)}
        if self.family == REED_SOLOMON:
            out["delta"] = self.rs_offset
        return out

    def __str__(self) -> str:
        return f"L_{self.q_l}[{self.n_l},{self.k_l},{self.d_l}]"


def rs_code(q_l: int, n_l: int, k_l: int, delta: int = 0) -> LocatorSpec:
    """Cyclic Reed-Solomon code with zeros beta^delta .. beta^(delta+n-k-1)."""
    prime_power(q_l)
    if n_l < 1 or (q_l - 1) % n_l:
        raise CodeError(f"n_l={n_l} does not divide q_l-1={q_l - 1}")
    if not 0 < k_l <= n_l:
        raise CodeError("need 0 < k_l <= n_l")
    ds = DefiningSet.of(n_l, range(delta, delta + n_l - k_l))
    return LocatorSpec(REED_SOLOMON, q_l, n_l, k_l, n_l - k_l + 1, ds, delta)


def parity_check_locator(n_l: int, q_l: int = 2) -> LocatorSpec:
    """Single parity check code of length ``n_l``, generator ``x - 1``."""
    if n_l < 2:
        raise CodeError("parity check locator needs n_l >= 2")
    prime_power(q_l)
    return LocatorSpec(PARITY, q_l, n_l, n_l - 1, 2, DefiningSet(n_l, (0,)))


def custom_locator(q_l: int, n_l: int, members: Iterable[int], cap: int = 2**24) -> LocatorSpec:
    """Locator from an arbitrary closed defining set; d_l comes from brute force."""
    from .oracle import min_distance_brute

    _require_coprime(n_l, q_l)
    ds = DefiningSet.of(n_l, members, q_l)
    if not ds.closed:
        raise CodeError("custom locator defining set must be a union of cyclotomic cosets")
    if not ds.members or len(ds) == n_l:
        raise CodeError("custom locator defining set must be a nonempty proper subset")
    spec = LocatorSpec(CUSTOM, q_l, n_l, n_l - len(ds), 0, ds)
    d = min_distance_brute(spec, cap=cap).distance
    return LocatorSpec(CUSTOM, q_l, n_l, n_l - len(ds), d, ds)


def default_locator_alphabet(p: int, n_l: int) -> int:
    """``p^ord(p, n_l)``: smallest field of characteristic ``p`` with an n_l-th root of unity."""
    return p ** ord_mod(p, n_l)


def smallest_rs_alphabet(n_l: int) -> int:
    """Smallest prime power ``q`` with ``n_l | q - 1``."""
    q = n_l + 1
    while True:
        try:
            prime_power(q)
            return q
        except ValueError:
            q += n_l


@dataclass(frozen=True)
class Codeword:
    code: CyclicCode | LocatorSpec
    coeffs: tuple[int, ...]

    @property
    def field(self) -> FieldSpec:
        return self.code.base_field

    def poly(self) -> Poly:
        return Poly(self.field, self.coeffs)

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coeffs) if self.field.order <= 10 else str(list(self.coeffs))


def encode(code: CyclicCode | LocatorSpec, message) -> Codeword:
    """Non-systematic encoding ``m(x) * g(x)``."""
    f = code.base_field
    m = message if isinstance(message, Poly) else Poly.of(f, message)
    if m.field != f:
        raise CodeError("message alphabet does not match code")
    if m.degree >= code.k:
        raise CodeError(f"message degree {m.degree} >= k = {code.k}")
    c = (m * code.generator).coeffs
    return Codeword(code, c + (0,) * (code.n - len(c)))


def is_codeword(code: CyclicCode | LocatorSpec, coeffs: Sequence[int]) -> bool:
    if len(coeffs) != code.n:
        return False
    return (Poly.of(code.base_field, coeffs) % code.generator).is_zero()


def rotate(w: Codeword, k: int = 1) -> tuple[int, ...]:
    n = len(w.coeffs)
    return tuple(w.coeffs[(i - k) % n] for i in range(n))


def support(w: Codeword | Sequence[int]) -> tuple[int, ...]:
    coeffs = w.coeffs if isinstance(w, Codeword) else w
    return tuple(i for i, c in enumerate(coeffs) if c)

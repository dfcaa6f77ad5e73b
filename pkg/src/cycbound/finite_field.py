"""Exact arithmetic in GF(p^t).

Elements are stored internally as integers ``sum(e_i * p**i)`` where
``(e_0, ..., e_{t-1})`` is the canonical coefficient vector.  Fields of
order up to ``TABLE_LIMIT`` use exp/log tables; larger fields multiply
coefficient vectors directly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

FIELD_CAP = 2**24
TABLE_LIMIT = 2**20


class FieldError(ValueError):
    pass


class FieldCapExceeded(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, a)`` with ``q == p**a``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = ps[0]
    a = round(math.log(q, p))
    while p**a < q:
        a += 1
    while p**a > q:
        a -= 1
    return p, a


def ord_mod(q: int, n: int) -> int:
    """Smallest ``s >= 1`` with ``q**s == 1 (mod n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    if n == 1:
        return 1
    s, x = 1, q % n
    while x != 1:
        x = x * q % n
        s += 1
    return s


# --- coefficient-list helpers over GF(p); lists are low-to-high ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _prime_polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _prime_polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..t//2."""
    t = len(modulus) - 1
    if p == 2:
        m = sum(c << i for i, c in enumerate(modulus))
        for d in range(1, t // 2 + 1):
            for low in range(1 << d):
                if _gf2_mod(m, low | (1 << d)) == 0:
                    return False
        return True
    for d in range(1, t // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _prime_polymod(list(modulus), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^t) with a fixed modulus and primitive element.

    ``modulus`` is ``(c_0, ..., c_t)``, monic.  ``generator`` is the
    coefficient vector of a primitive element.  Use :func:`build_field`
    rather than constructing directly.
    """

    p: int
    t: int
    modulus: tuple[int, ...]
    generator: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.t

    @property
    def group_order(self) -> int:
        return self.p**self.t - 1

    def __str__(self) -> str:
        return f"GF({self.p}^{self.t})" if self.t > 1 else f"GF({self.p})"

    # encoding -----------------------------------------------------------

    def to_coeffs(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.t):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.t:
            coeffs = _prime_polymod(coeffs, list(self.modulus), self.p) if self.t > 1 else [sum(coeffs) % self.p]
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def __call__(self, value) -> FieldElement:
        """Element from an integer encoding, a coefficient vector, or an element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.t == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.order:
                raise FieldError(f"encoding {value} out of range for {self}")
            return FieldElement(self, value)
        return FieldElement(self, self.from_coeffs(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        return FieldElement(self, self.from_coeffs(self.generator))

    def elements(self):
        return (FieldElement(self, v) for v in range(self.order))

    # raw arithmetic on encodings ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.t == 1:
            return (a + b) % self.p
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.t == 1:
            return (a - b) % self.p
        return self._digitwise(a, b, -1)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.sub(0, a)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        v, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            v += ((x + sign * y) % p) * scale
            scale *= p
        return v

    def _tables(self):
        tabs = self._cache.get("tables")
        if tabs is None:
            qm1 = self.group_order
            exp = [0] * (2 * qm1)
            log = [0] * self.order
            g = self.from_coeffs(self.generator)
            x = 1
            for i in range(qm1):
                exp[i] = x
                log[x] = i
                x = self._slow_mul(x, g)
            exp[qm1:] = exp[:qm1]
            tabs = (exp, log)
            self._cache["tables"] = tabs
        return tabs

    @property
    def has_tables(self) -> bool:
        return self.order <= TABLE_LIMIT

    def _slow_mul(self, a: int, b: int) -> int:
        if self.t == 1:
            return a * b % self.p
        if self.p == 2:
            mod = self.from_coeffs(self.modulus[: self.t]) | (1 << self.t)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.t:
                    a ^= mod
            return r
        prod = _prime_polymul(list(self.to_coeffs(a)), list(self.to_coeffs(b)), self.p)
        return self.from_coeffs(_prime_polymod(prod, list(self.modulus), self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.t == 1:
            return a * b % self.p
        if self.has_tables:
            exp, log = self._tables()
            return exp[log[a] + log[b]]
        return self._slow_mul(a, b)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        if self.t == 1:
            return pow(a, k, self.p)
        if self.has_tables:
            exp, log = self._tables()
            return exp[log[a] * k % self.group_order]
        return self._slow_pow(a, k)

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.t == 1:
            return pow(a, -1, self.p)
        if self.has_tables:
            exp, log = self._tables()
            return exp[(-log[a]) % self.group_order]
        return self.pow(a, self.group_order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def log(self, a: int) -> int:
        """Discrete logarithm to the base of the designated generator."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if not self.has_tables:
            raise FieldError("discrete log unavailable above table limit")
        return self._tables()[1][a]

    def exp(self, k: int) -> int:
        return self.pow(self.from_coeffs(self.generator), k)

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        e = self.group_order
        for r in prime_factors(self.group_order):
            while e % r == 0 and self.pow(a, e // r) == 1:
                e //= r
        return e


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot mix {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field}{list(self.coeffs)}"


def build_field(p: int, t: int = 1, cap: int = FIELD_CAP) -> FieldSpec:
    """Construct GF(p^t) deterministically.

    The modulus is the smallest monic irreducible polynomial of degree ``t``
    when coefficient vectors ``(c_0, ..., c_t)`` are compared
    lexicographically; the generator is the smallest primitive element in
    the same order.  Prime fields record the modulus as ``x - g``.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if t < 1:
        raise FieldError("degree must be positive")
    if p**t > cap:
        raise FieldCapExceeded(f"field order {p}^{t} exceeds cap {cap}")
    return _build_field(p, t)


@lru_cache(maxsize=None)
def _build_field(p: int, t: int) -> FieldSpec:
    qm1 = p**t - 1
    factors = prime_factors(qm1)
    if t == 1:
        for g in range(1, p):
            if all(pow(g, qm1 // r, p) != 1 for r in factors):
                return FieldSpec(p, 1, ((-g) % p, 1), (g,))
        raise AssertionError("unreachable")
    # c_0 = 0 means x divides the candidate
    for low in itertools.product(range(1, p), *[range(p)] * (t - 1)):
        modulus = list(low) + [1]
        if _is_irreducible(modulus, p):
            break
    probe = FieldSpec(p, t, tuple(modulus), (0,) * t)
    for cand in itertools.product(range(p), repeat=t):
        v = probe.from_coeffs(cand)
        if v == 0:
            continue
        if all(probe._slow_pow(v, qm1 // r) != 1 for r in factors):
            return FieldSpec(p, t, tuple(modulus), tuple(cand))
    raise AssertionError("unreachable")


def nth_root_of_unity(f: FieldSpec, n: int) -> FieldElement:
    """``generator ** ((p^t - 1) / n)``, an element of order exactly ``n``."""
    if n < 1 or f.group_order % n:
        raise FieldError(f"{n} does not divide |{f}*| = {f.group_order}")
    return f.gen ** (f.group_order // n)


def element_order(x: FieldElement) -> int:
    return x.field.order_of(x.value)


def arith(x: FieldElement, y: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch a named field operation; ``y`` is the exponent for ``pow``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x**y
    if op == "inv":
        return x.inv()
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def minimal_polynomial_over_prime(x: FieldElement) -> list[int]:
    """Minimal polynomial of ``x`` over GF(p), as prime-field coefficients low-to-high."""
    f = x.field
    conj = []
    y = x.value
    while y not in conj:
        conj.append(y)
        y = f.pow(y, f.p)
    poly = [1]
    for r in conj:
        nr = f.neg(r)
        out = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            out[i + 1] = f.add(out[i + 1], c)
            out[i] = f.add(out[i], f.mul(c, nr))
        poly = out
    if any(c >= f.p for c in poly):
        raise AssertionError("minimal polynomial left the prime field")
    return poly


def _embedding_image(source: FieldSpec, target: FieldSpec) -> int:
    """Image of the source generator under the canonical embedding."""
    key = ("embed", source)
    hit = target._cache.get(key)
    if hit is not None:
        return hit
    h = target.pow(target.from_coeffs(target.generator), target.group_order // source.group_order)
    mp = minimal_polynomial_over_prime(source.gen)
    k = 1
    while True:
        if math.gcd(k, source.group_order) == 1:
            cand = target.pow(h, k)
            acc = 0
            for c in reversed(mp):
                acc = target.add(target.mul(acc, cand), c)
            if acc == 0:
                target._cache[key] = cand
                return cand
        k += 1


def embed(x: FieldElement, target: FieldSpec) -> FieldElement:
    """Field embedding GF(p^t1) -> GF(p^t2) for ``t1 | t2``.

    The source generator is sent to the root of its minimal polynomial
    ``h**k`` with ``h = target_generator ** ((p^t2-1)/(p^t1-1))`` and ``k``
    the smallest admissible exponent (``k = 1`` whenever that is already a
    root), which makes the map additive as well as multiplicative.
    """
    src = x.field
    if src.p != target.p:
        raise FieldError("different characteristic")
    if target.t % src.t:
        raise FieldError(f"{src} is not a subfield of {target}")
    if src == target:
        return x
    if x.value == 0:
        return target.zero
    if src.t == 1:
        return FieldElement(target, x.value)
    img = _embedding_image(src, target)
    return FieldElement(target, target.pow(img, src.log(x.value)))


def common_field(p: int, *degrees: int, cap: int = FIELD_CAP) -> FieldSpec:
    t = 1
    for d in degrees:
        t = t * d // math.gcd(t, d)
    return build_field(p, t, cap=cap)

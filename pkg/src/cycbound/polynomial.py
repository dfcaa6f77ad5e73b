"""Dense univariate polynomials over a :class:`FieldSpec`.

Coefficients are held as field encodings, index ``i`` for ``x**i``.  Integer
inputs are passed through ``FieldSpec.__call__`` (residues for prime fields,
encodings for extensions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .finite_field import FieldElement, FieldError, FieldSpec, embed

NEG_INF = -math.inf  # degree of the zero polynomial


def _strip(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _strip(list(self.coeffs)))

    @classmethod
    def of(cls, field: FieldSpec, coeffs: Iterable) -> Poly:
        return cls(field, _strip([field(c).value for c in coeffs]))

    @classmethod
    def zero(cls, field: FieldSpec) -> Poly:
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> Poly:
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, c: int = 1) -> Poly:
        return cls(field, (0,) * k + (field(c).value,))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.field, v)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def lead(self) -> FieldElement:
        return self[len(self.coeffs) - 1]

    def _check(self, other: Poly) -> None:
        if other.field != self.field:
            raise FieldError(f"polynomials over {self.field} and {other.field}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = f.add(out[i], y)
        return Poly(self.field, _strip(out))

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        f = self.field
        if isinstance(other, (FieldElement, int)):
            s = f(other).value
            return Poly(f, _strip([f.mul(c, s) for c in self.coeffs]))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly(f, _strip(out))

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = f.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = f.mul(c, inv_lead)
            quot[k - db] = c
            for i, y in enumerate(other.coeffs):
                rem[k - db + i] = f.sub(rem[k - db + i], f.mul(c, y))
        return Poly(f, _strip(quot)), Poly(f, _strip(rem[:db]))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * self.lead.inv()

    def __call__(self, x: FieldElement) -> FieldElement:
        return eval_poly(self, x)

    def __str__(self) -> str:
        return format_poly(self)


def format_coeff(field: FieldSpec, v: int) -> str:
    if field.t == 1:
        return str(v)
    if v == 1:
        return "1"
    if field.has_tables:
        return f"g^{field.log(v)}"
    return str(list(field.to_coeffs(v)))


def format_poly(f: Poly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        cs = format_coeff(f.field, c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown op {op!r}")


def eval_poly(f: Poly, x: FieldElement) -> FieldElement:
    """Horner evaluation; ``x`` may live in an extension of ``f.field``."""
    tgt = x.field
    if tgt == f.field:
        coeffs = f.coeffs
    else:
        coeffs = [embed(FieldElement(f.field, c), tgt).value for c in f.coeffs]
    acc = 0
    for c in reversed(coeffs):
        acc = tgt.add(tgt.mul(acc, x.value), c)
    return FieldElement(tgt, acc)


def from_roots(field: FieldSpec, roots: Sequence[FieldElement]) -> Poly:
    """Monic ``prod(x - r)`` over ``field``."""
    out = [1]
    for r in roots:
        nr = field.neg(field(r).value)
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = field.add(nxt[i + 1], c)
            nxt[i] = field.add(nxt[i], field.mul(c, nr))
        out = nxt
    return Poly(field, _strip(out))


def series_of_rational(num: Poly, den: Poly, N: int) -> list[FieldElement]:
    """First ``N`` coefficients of the power series ``num / den``."""
    num._check(den)
    f = num.field
    if den.is_zero() or den.coeffs[0] == 0:
        raise ZeroDivisionError("denominator vanishes at x = 0")
    inv0 = f.inv(den.coeffs[0])
    d = den.coeffs
    out: list[int] = []
    for i in range(N):
        acc = num.coeffs[i] if i < len(num.coeffs) else 0
        for k in range(1, min(i, len(d) - 1) + 1):
            if d[k]:
                acc = f.sub(acc, f.mul(d[k], out[i - k]))
        out.append(f.mul(acc, inv0))
    return [FieldElement(f, v) for v in out]

"""Brute-force ground truth and numeric checks of the power-series argument."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cyclic_code import Codeword, CyclicCode, LocatorSpec, build_code, parity_check_locator, support
from .finite_field import FIELD_CAP, FieldElement, FieldError, FieldSpec, build_field, embed
from .polynomial import Poly, eval_poly, poly_gcd, series_of_rational

ENUM_CAP = 2**24
DEFAULT_SEED = 20120701
_BLOCK = 2**16


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    witness_codeword: Codeword
    enumerated: int
    exact: bool = True


def _vector_ops(f: FieldSpec):
    """Vectorised add and scalar-multiply on arrays of field encodings."""
    if f.t == 1:
        p = f.p

        def add(a, b):
            return (a + b) % p

        def smul(c, a):
            return (a * c) % p
        return add, smul

    exp, log = f._tables()
    exp = np.asarray(exp, dtype=np.int64)
    log = np.asarray(log, dtype=np.int64)
    qm1 = f.group_order

    if f.p == 2:
        def add(a, b):
            return a ^ b
    else:
        p, t = f.p, f.t

        def add(a, b):
            out = np.zeros_like(a)
            scale = 1
            for _ in range(t):
                out += ((a // scale % p + b // scale % p) % p) * scale
                scale *= p
            return out

    def smul(c, a):
        if c == 0:
            return np.zeros_like(a)
        lc = log[c]
        return np.where(a == 0, 0, exp[(log[a] + lc) % qm1])
    return add, smul


def generator_matrix(code: CyclicCode | LocatorSpec) -> np.ndarray:
    """Rows ``x^i g(x)`` for ``i < k``."""
    g = code.generator.coeffs
    G = np.zeros((code.k, code.n), dtype=np.int64)
    for i in range(code.k):
        G[i, i:i + len(g)] = g
    return G


def min_distance_brute(code: CyclicCode | LocatorSpec, cap: int = ENUM_CAP) -> DistanceResult:
    """Exact minimum distance by encoding every nonzero message.

    Messages are visited in lexicographic order of ``(m_0, ..., m_{k-1})``;
    the witness is the first minimum-weight codeword met in that order.
    """
    f = code.base_field
    q, k, n = f.order, code.k, code.n
    total = q**k
    if total > cap:
        raise CapExceeded(f"{q}^{k} codewords exceed enumeration cap {cap}")
    if k == 0:
        raise ValueError("zero code has no minimum distance")
    add, smul = _vector_ops(f)
    G = generator_matrix(code)
    kl = 0
    while kl < k and q ** (kl + 1) <= _BLOCK:
        kl += 1
    kh = k - kl
    # block over the trailing digits; the digit added last is the most significant
    block = np.zeros((1, n), dtype=np.int64)
    for i in range(k - 1, kh - 1, -1):
        block = np.concatenate([add(block, smul(c, G[i])[None, :]) for c in range(q)])
    best_w, best_vec = n + 1, None
    for prefix in itertools.product(range(q), repeat=kh):
        off = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(prefix):
            if c:
                off = add(off, smul(c, G[i]))
        words = add(block, off[None, :])
        wts = np.count_nonzero(words, axis=1)
        if not any(prefix):
            wts[0] = n + 1
        idx = int(np.argmin(wts))
        if wts[idx] < best_w:
            best_w, best_vec = int(wts[idx]), words[idx]
    w = Codeword(code, tuple(int(x) for x in best_vec))
    return DistanceResult(best_w, w, total - 1)


# --- words with an attached root of unity -----------------------------------------

@dataclass(frozen=True)
class Word:
    """Coefficient vector over ``field`` paired with the root used to evaluate it."""

    coeffs: tuple[int, ...]
    field: FieldSpec
    root: FieldElement

    @classmethod
    def of(cls, w, root: FieldElement | None = None) -> Word:
        if isinstance(w, Word):
            return w
        if isinstance(w, Codeword):
            code = w.code
            r = root if root is not None else (code.alpha if isinstance(code, CyclicCode) else code.beta)
            return cls(w.coeffs, code.base_field, r)
        raise TypeError("expected Word or Codeword")

    def in_field(self, common: FieldSpec) -> tuple[list[tuple[int, FieldElement]], FieldElement]:
        """Support with coefficients embedded into ``common``, and the embedded root."""
        terms = [(i, embed(FieldElement(self.field, c), common)) for i, c in enumerate(self.coeffs) if c]
        return terms, embed(self.root, common)


@dataclass
class Report:
    check: str
    params: dict
    passed: bool
    seed: int | None = None
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"check": self.check, "params": self.params, "pass": self.passed, "seed": self.seed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


def common_field_for(C: CyclicCode, L: LocatorSpec, cap: int = FIELD_CAP) -> FieldSpec:
    if C.base_field.p != L.base_field.p:
        raise FieldError("code and locator have different characteristic")
    t1, t2 = C.ext_field.t, L.root_field.t
    return build_field(C.base_field.p, t1 * t2 // math.gcd(t1, t2), cap=cap)


def random_codewords(code: CyclicCode | LocatorSpec, count: int, rng: random.Random) -> list[Codeword]:
    """Nonzero codewords from uniformly drawn nonzero messages."""
    from .cyclic_code import encode

    f = code.base_field
    out = []
    while len(out) < count:
        msg = [rng.randrange(f.order) for _ in range(code.k)]
        if any(msg):
            out.append(encode(code, Poly(f, tuple(msg))))
    return out


def product_series(c: Word, a: Word, e: int, N: int, common: FieldSpec) -> list[FieldElement]:
    """``c(alpha^(j+e)) * a(beta^j)`` for ``j < N``, evaluated in ``common``."""
    cpoly = Poly(common, tuple(embed(FieldElement(c.field, x), common).value for x in c.coeffs))
    apoly = Poly(common, tuple(embed(FieldElement(a.field, x), common).value for x in a.coeffs))
    alpha, beta = embed(c.root, common), embed(a.root, common)
    return [eval_poly(cpoly, alpha ** (j + e)) * eval_poly(apoly, beta ** j) for j in range(N)]


def verify_definition2(C: CyclicCode, L: LocatorSpec, e: int, mu: int, trials: int = 20,
                       seed: int = DEFAULT_SEED, cap_field: int = FIELD_CAP,
                       cap_enum: int = ENUM_CAP) -> Report:
    """Check that the first ``mu - 1`` product coefficients vanish on sampled pairs.

    The first pair combines the minimum-weight codewords of both codes when
    they can be enumerated within ``cap_enum``.
    """
    if math.gcd(C.n, L.n_l) != 1:
        raise ValueError(f"gcd(n={C.n}, n_l={L.n_l}) != 1")
    common = common_field_for(C, L, cap_field)
    rng = random.Random(seed)
    cs = random_codewords(C, trials, rng)
    as_ = random_codewords(L, trials, rng)
    min_pair = None
    try:
        cmin = min_distance_brute(C, cap_enum).witness_codeword
        amin = min_distance_brute(L, cap_enum).witness_codeword
        cs[0], as_[0] = cmin, amin
        min_pair = (cmin, amin)
    except CapExceeded:
        pass
    params = {"n": C.n, "q": C.q, "locator": L.describe(), "e": e, "mu": mu, "trials": trials,
              "field": {"p": common.p, "t": common.t, "modulus": list(common.modulus)}}
    for c, a in zip(cs, as_):
        seq = product_series(Word.of(c), Word.of(a), e, mu - 1, common)
        bad = [j for j, v in enumerate(seq) if v]
        if bad:
            return Report("def2", params, False, seed,
                          {"c": list(c.coeffs), "a": list(a.coeffs), "nonzero_at": bad})
    details = {"pairs": len(cs), "coefficients_checked": max(mu - 1, 0)}
    if min_pair is not None and mu > 1:
        rf = rational_form(Word.of(min_pair[0]), Word.of(min_pair[1]), e, common)
        details["min_pair_numerator_degree"] = rf.numerator.degree
        details["min_pair_denominator_degree"] = rf.denominator.degree
        low_zero = all(rf.numerator.coeffs[i] == 0 for i in range(min(mu - 1, len(rf.numerator))))
        if rf.numerator.degree < mu - 1 or not low_zero:
            return Report("def2", params, False, seed, {"reason": "numerator degree below mu - 1"}, details)
    return Report("def2", params, True, seed, None, details)


@dataclass(frozen=True)
class RationalForm:
    numerator: Poly
    denominator: Poly
    field: FieldSpec
    reduced: bool = False

    @property
    def degrees(self) -> tuple[int, int]:
        return self.numerator.degree, self.denominator.degree


def _linear(common: FieldSpec, gamma: FieldElement) -> Poly:
    return Poly(common, (1, common.neg(gamma.value)))


def rational_form(c, a, e: int, common: FieldSpec) -> RationalForm:
    """Numerator and denominator of ``sum_j c(alpha^(j+e)) a(beta^j) x^j``.

    ``denominator = prod_{i in Y, j in Z} (1 - x alpha^i beta^j)`` and the
    numerator is the partial-fraction sum over the same pairs, each term
    carrying the product of all other linear factors.
    """
    c, a = Word.of(c), Word.of(a)
    cterms, alpha = c.in_field(common)
    aterms, beta = a.in_field(common)
    if not cterms or not aterms:
        raise ValueError("both words must be nonzero")
    factors = {}
    for i, _ in cterms:
        for j, _ in aterms:
            factors[(i, j)] = _linear(common, alpha ** i * beta ** j)
    den = Poly.one(common)
    for lin in factors.values():
        den = den * lin
    num = Poly.zero(common)
    for i, ci in cterms:
        scale = ci * alpha ** (i * e)
        for j, aj in aterms:
            rest = Poly.one(common)
            for key, lin in factors.items():
                if key != (i, j):
                    rest = rest * lin
            num = num + rest * (scale * aj)
    return RationalForm(num, den, common)


def verify_coprime_factors(c, a, common: FieldSpec) -> bool:
    """``gcd(prod_j (1 - x alpha^i beta^j), prod_j (1 - x alpha^m beta^j)) = 1`` for all ``i != m``."""
    c, a = Word.of(c), Word.of(a)
    cterms, alpha = c.in_field(common)
    aterms, beta = a.in_field(common)
    blocks = []
    for i, _ in cterms:
        prod = Poly.one(common)
        for j, _ in aterms:
            prod = prod * _linear(common, alpha ** i * beta ** j)
        blocks.append(prod)
    for x, y in itertools.combinations(blocks, 2):
        if poly_gcd(x, y).degree > 0:
            return False
    return True


def verify_series_identity(c, N: int) -> bool:
    """Direct evaluations ``c(alpha^j)`` against the sum of geometric series."""
    c = Word.of(c)
    ext = c.root.field
    terms, alpha = c.in_field(ext)
    cpoly = Poly(ext, tuple(embed(FieldElement(c.field, x), ext).value for x in c.coeffs))
    left = [eval_poly(cpoly, alpha ** j) for j in range(N)]
    right = [ext.zero] * N
    for i, ci in terms:
        s = series_of_rational(Poly(ext, (ci.value,)), _linear(ext, alpha ** i), N)
        right = [x + y for x, y in zip(right, s)]
    return left == right


def check_degrees(pairs: Sequence[tuple], e: int, common: FieldSpec) -> Report:
    """Denominator degree ``|Y||Z|`` and numerator degree at most ``|Y||Z| - 1``."""
    observed = []
    for c, a in pairs:
        rf = rational_form(c, a, e, common)
        yz = len(support(Word.of(c).coeffs)) * len(support(Word.of(a).coeffs))
        observed.append((yz, rf.numerator.degree, rf.denominator.degree))
        if rf.denominator.degree != yz or rf.numerator.degree > yz - 1:
            return Report("degrees", {"pairs": len(pairs), "e": e}, False, None,
                          {"YZ": yz, "num": rf.numerator.degree, "den": rf.denominator.degree})
    full = sum(1 for yz, nd, _ in observed if nd == yz - 1)
    return Report("degrees", {"pairs": len(pairs), "e": e}, True, None, None,
                  {"numerator_full_degree": full})


def coprime_negative_case(cap_field: int = FIELD_CAP) -> bool:
    """Coprimality check for n = 21, n_l = 7, where alpha^3 and beta generate the same subgroup.

    With ``alpha^d = beta``, ``c = 1 + x^d`` and ``a = 1 + x`` give a shared
    factor, so the result is expected to be ``False``.
    """
    C = build_code(2, 21, [0])
    L = parity_check_locator(7)
    common = common_field_for(C, L, cap_field)
    alpha, beta = embed(C.alpha, common), embed(L.beta, common)
    d = next(i for i in range(1, 21) if alpha ** i == beta)
    c = [0] * 21
    c[0] = c[d] = 1
    a = (1, 1, 0, 0, 0, 0, 0)
    return verify_coprime_factors(Word(tuple(c), C.base_field, C.alpha), Word(a, L.base_field, L.beta), common)

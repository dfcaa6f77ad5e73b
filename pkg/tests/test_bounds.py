import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycbound.bounds import (
    DEFAULT_FAMILIES,
    BoundError,
    HtWitness,
    LocatorFamilies,
    NzlWitness,
    bch_bound,
    compute_bounds,
    ht_bound,
    ht_bound_normalized,
    nzl_bound,
    nzl_run,
    nzl_search,
    parity_bound_formula,
    prop1_improves,
    rs_bound_formula,
    synth_ht_pattern,
)
from cycbound.cyclic_code import DefiningSet, build_code, parity_check_locator, rs_code


def naive_bch(S):
    n, best = S.n, 0
    for b in range(n):
        L = 0
        while L < n and (b + L) % n in S:
            L += 1
        best = max(best, L)
    return best + 1


def naive_ht(S):
    """Max d0 + nu over every (b1, m1, m2, nu), growing d0 column by column."""
    n = S.n
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    best = 1
    for b1 in range(n):
        for m1 in units:
            for m2 in units:
                for nu in range(n):
                    cols = 0
                    while cols <= n and all((b1 + cols * m1 + i2 * m2) % n in S for i2 in range(nu + 1)):
                        cols += 1
                    if cols == 0:
                        break
                    best = max(best, cols + 1 + nu)
    return best


def naive_nzl(S, D_L):
    """Scan every offset in [0, n * n_l) and every position directly."""
    n, nl = S.n, D_L.n
    best = 0
    for e in range(n * nl):
        j = 0
        while (j + e) % n in S or j % nl in D_L:
            j += 1
        best = max(best, j)
    return best + 1


@st.composite
def proper_sets(draw, n_min=3, n_max=13):
    n = draw(st.integers(n_min, n_max))
    members = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    return DefiningSet.of(n, members)


@given(proper_sets(n_max=20))
def test_bch_matches_naive(S):
    value, w = bch_bound(S)
    assert value == naive_bch(S)
    assert w.validate(S)


@settings(max_examples=40, deadline=None)
@given(proper_sets(n_max=11))
def test_ht_matches_naive(S):
    value, w = ht_bound(S)
    assert value == naive_ht(S)
    assert w.validate(S) and w.bound == value


@settings(max_examples=60, deadline=None)
@given(proper_sets(n_max=17))
def test_ht_ordering_and_normalized_agree(S):
    b, _ = bch_bound(S)
    h, _ = ht_bound(S)
    hn, wn = ht_bound_normalized(S)
    assert b <= h == hn
    assert wn.validate(S)


@settings(max_examples=40, deadline=None)
@given(proper_sets(n_max=15), st.integers(0, 2**15))
def test_bounds_monotone_in_defining_set(S, extra):
    bigger = DefiningSet.of(S.n, set(S.members) | {i for i in range(S.n) if extra >> i & 1})
    if len(bigger) == S.n:
        return
    assert bch_bound(S)[0] <= bch_bound(bigger)[0]
    assert ht_bound(S)[0] <= ht_bound(bigger)[0]
    loc = parity_check_locator(next(nl for nl in (2, 3, 5, 7) if math.gcd(nl, S.n) == 1))
    try:
        assert nzl_bound(S, loc)[0] <= nzl_bound(bigger, loc)[0]
    except BoundError:
        pass  # the larger set covers every position


@settings(max_examples=60, deadline=None)
@given(proper_sets(n_max=13), st.sampled_from([(2, [0]), (3, [0]), (4, [0, 1]), (5, [0, 1, 2]), (7, [0])]))
def test_nzl_matches_naive(S, loc):
    nl, members = loc
    if math.gcd(S.n, nl) != 1:
        return
    D_L = DefiningSet.of(nl, members)
    L = parity_check_locator(nl) if len(members) == 1 else rs_code(
        {4: 5, 5: 11}[nl], nl, nl - len(members))
    try:
        value, w = nzl_bound(S, L)
    except BoundError:
        return  # full coverage
    assert w.mu == naive_nzl(S, D_L)
    assert value == -(-w.mu // L.d_l)
    assert w.validate(S)


def test_bch_paper_values():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    assert bch_bound(S)[0] == 5
    assert bch_bound(S)[1].b == 1 and bch_bound(S)[1].length == 4


def test_ht_c21_witness():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    value, w = ht_bound(S)
    assert value == 6
    assert (w.b1, w.m1, w.m2, w.d0, w.nu) == (1, 1, 5, 5, 1)


def test_ht_c21_alternative_witness_certifies_six():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    w = HtWitness(1, 5, 1, 3, 3)
    assert w.pattern(21) == {1, 2, 3, 4, 6, 7, 8, 9}
    assert w.validate(S) and w.bound == 6


def test_synth_n35_pattern_search_value():
    S = synth_ht_pattern(0, 4, 4, 2, 35)
    value, w = ht_bound(S)
    assert value == 7 and w.validate(S) and (w.m1, w.d0, w.nu) == (2, 7, 0)


def test_ht_witness_validation_rejects_bad_steps():
    S = DefiningSet.of(15, [0, 3, 6, 9])
    assert not HtWitness(0, 3, 1, 5, 0).validate(S)  # gcd(15, 3) != 1
    assert not HtWitness(0, 1, 1, 1, 0).validate(S)


def test_n13_pattern_witness():
    S = DefiningSet.of(13, [-5, -4, -2, -1, 1, 2, 4, 5])
    w = HtWitness(-5 % 13, 3, 1, 5, 1)
    assert w.validate(S) and w.bound == 6
    assert ht_bound(S)[0] >= 6


def test_nzl_c21_parity_lengths():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    vals = {nl: nzl_bound(S, parity_check_locator(nl))[0] for nl in (2, 4, 5, 8)}
    assert vals == {2: 5, 4: 5, 5: 7, 8: 3}
    value, w = nzl_bound(S, parity_check_locator(5))
    assert (value, w.e, w.mu) == (7, 0, 14)
    assert nzl_run(S, parity_check_locator(5).defining_set, 0) == 13


def test_nzl_rejects_bad_locators():
    S = DefiningSet.of(21, [1, 2, 3])
    with pytest.raises(BoundError):
        nzl_bound(S, parity_check_locator(3))
    with pytest.raises(BoundError):
        nzl_bound(S, rs_code(16, 5, 5))  # empty locator defining set
    with pytest.raises(BoundError):
        nzl_run(DefiningSet.of(3, [1, 2]), DefiningSet.of(2, [0, 1]), 1)


def test_nzl_witness_maximality_checked():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    L = parity_check_locator(5)
    assert NzlWitness(L, 0, 14).validate(S)
    assert not NzlWitness(L, 0, 13).validate(S)
    assert not NzlWitness(L, 0, 15).validate(S)


def test_families_parse_and_candidates():
    fam = LocatorFamilies.parse("parity:2-4; rs:5,7; nu:1")
    assert fam.parity_lengths == (2, 3, 4) and fam.rs_lengths == (5, 7) and fam.rs_nus == (1,)
    cands = fam.candidates(21, 2)
    assert [(c.family, c.n_l, c.k_l) for c in cands] == [
        ("ParityCheck", 2, 1), ("ParityCheck", 4, 3), ("ReedSolomon", 5, 2)]
    assert cands[2].q_l == 16
    with pytest.raises(BoundError):
        LocatorFamilies.parse("bogus:3")
    with pytest.raises(BoundError):
        nzl_search(DefiningSet.of(21, [1]), LocatorFamilies())


def test_nzl_search_c21():
    S = build_code(2, 21, [1, 3, 7, 9]).defining_set
    value, w = nzl_search(S, DEFAULT_FAMILIES)
    assert value == 7 and w.validate(S)


@pytest.mark.parametrize("b2,m,d0,nu,n", [(0, 4, 4, 2, 35), (3, 5, 3, 1, 31), (0, 3, 5, 1, 13)])
def test_synth_pattern_is_exact(b2, m, d0, nu, n):
    S = synth_ht_pattern(b2, m, d0, nu, n)
    pts = {(b2 + i1 * m + i2) % n for i1 in range(d0 - 1) for i2 in range(nu + 1)}
    assert set(S.members) == pts and not S.closed
    assert ht_bound(S)[0] >= d0 + nu


def test_synth_pattern_errors():
    with pytest.raises(BoundError):
        synth_ht_pattern(0, 2, 4, 1, 35)
    with pytest.raises(BoundError):
        synth_ht_pattern(0, 5, 4, 1, 35)
    with pytest.raises(BoundError):
        synth_ht_pattern(0, 4, 10, 2, 13)


def test_closed_forms():
    assert parity_bound_formula(4, 1) == 6 and parity_bound_formula(3, 1) == 4
    assert rs_bound_formula(2, 6, 12) == 3
    for nu in range(0, 5):
        for d0 in range(2, 12):
            assert parity_bound_formula(d0, nu) == rs_bound_formula(d0, nu, nu + 2)
    assert prop1_improves(5, 1, 3) and not prop1_improves(3, 1, 3)
    with pytest.raises(BoundError):
        rs_bound_formula(4, 3, 4)


def test_compute_bounds_report():
    C = build_code(2, 21, [1, 3, 7, 9])
    rep = compute_bounds(C.defining_set)
    d = rep.to_dict()
    assert (d["bch"]["value"], d["ht"]["value"], d["nzl"]["value"]) == (5, 6, 7)
    assert rep.validate(C.defining_set)


def test_degenerate_sets():
    with pytest.raises(BoundError):
        bch_bound(DefiningSet.of(7, []))
    with pytest.raises(BoundError):
        ht_bound(DefiningSet.of(7, range(7)))

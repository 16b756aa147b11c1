"""Linear codes: duals, derived codes, MDS checks, weight searches."""

import random

import pytest

from qmds.budgets import SearchBudget
from qmds.errors import (
    BadCoordinate,
    FieldMismatch,
    LengthMismatch,
    NotASubcode,
    ZeroDimensional,
)
from qmds.gf import build_field
from qmds.linalg import (
    code_from_parity,
    dual,
    hermitian_inner,
    is_subcode,
    linear_code,
    mds_verify,
    min_weight,
    min_weight_relative,
    puncture,
    shorten,
    subfield_subcode,
    words_supported_in,
)

from oracles import (
    all_codewords,
    brute_min_weight,
    brute_min_weight_relative,
    brute_spectrum,
    is_member,
    macwilliams_dual_spectrum,
)


def random_code(field, n, k, rng):
    while True:
        rows = [[rng.randrange(field.q) for _ in range(n)] for _ in range(k)]
        code = linear_code(field, rows, n)
        if code.k == k:
            return code


def test_linear_code_basics():
    f = build_field(2)
    c = linear_code(f, [(1, 0, 1), (0, 1, 1)])
    assert (c.n, c.k) == (3, 2)
    assert c.contains((1, 1, 0))
    assert not c.contains((1, 0, 0))
    with pytest.raises(LengthMismatch):
        c.contains((1, 0))
    with pytest.raises(LengthMismatch):
        linear_code(f, [(1, 0), (1, 0, 1)])
    with pytest.raises(FieldMismatch):
        linear_code(f, [(0, 2, 0)])
    assert linear_code(f, [(1, 1), (1, 1)]).k == 1


@pytest.mark.parametrize("q,n,k", [(2, 7, 3), (3, 6, 2), (4, 5, 3), (5, 6, 2), (9, 4, 2)])
def test_dual_involution_and_dimension(q, n, k):
    from qmds.gf import field_for_order

    f = field_for_order(q)
    rng = random.Random(q * 100 + n)
    for _ in range(20):
        c = random_code(f, n, k, rng)
        d = dual(c)
        assert d.k == n - c.k
        assert dual(d) == c
        for u in c.gen:
            for v in d.gen:
                acc = 0
                for a, b in zip(u, v):
                    acc = f.add(acc, f.mul(a, b))
                assert acc == 0


@pytest.mark.parametrize("q", [4, 9, 25])
def test_hermitian_dual(q):
    from qmds.gf import field_for_order

    f = field_for_order(q)
    rng = random.Random(q)
    for _ in range(10):
        c = random_code(f, 6, 2, rng)
        h = dual(c, "hermitian")
        assert h.k == c.n - c.k
        assert dual(h, "hermitian") == c
        for u in c.gen:
            for v in h.gen:
                assert hermitian_inner(f, u, v) == 0


def test_code_from_parity_matches_dual():
    f = build_field(3)
    rows = [(1, 1, 1, 0), (0, 1, 2, 1)]
    assert code_from_parity(f, rows, 4) == dual(linear_code(f, rows))


def test_shorten_puncture_duality():
    # dual(shortened C) == punctured dual, coordinate set by coordinate set
    rng = random.Random(7)
    for q, n, k in [(2, 7, 3), (3, 6, 3), (4, 6, 2)]:
        from qmds.gf import field_for_order

        f = field_for_order(q)
        for _ in range(10):
            c = random_code(f, n, k, rng)
            coords = sorted(rng.sample(range(n), 2))
            left = dual(shorten(c, coords))
            right = puncture(dual(c), coords)
            assert left == right


def test_shorten_and_puncture_edges():
    f = build_field(2)
    c = linear_code(f, [(1, 1, 0, 0), (0, 0, 1, 1)])
    assert shorten(c, [0]).n == 3
    assert puncture(c, [0]).n == 3
    with pytest.raises(BadCoordinate):
        shorten(c, [4])
    with pytest.raises(BadCoordinate):
        puncture(c, [0, 0])


def test_words_supported_in():
    f = build_field(3)
    c = linear_code(f, [(1, 0, 2, 0), (0, 1, 1, 0), (0, 0, 0, 1)])
    sub = words_supported_in(c, [0, 1, 2])
    assert sub.n == c.n
    for row in sub.gen:
        assert row[3] == 0
        assert c.contains(row)


def test_subfield_subcode():
    big = build_field(2, 2)
    small = build_field(2, 1)
    c = linear_code(big, [(1, 2, 0), (0, 1, 1)])
    sub = subfield_subcode(c, small)
    for row in sub.gen:
        assert all(x in (0, 1) for x in row)
    for word in all_codewords(sub):
        # reading the binary labels inside GF(4) must stay inside c
        assert c.contains(tuple(word))


@pytest.mark.parametrize("Q,d", [(4, 3), (5, 3), (7, 4), (8, 5), (9, 4)])
def test_mds_verify_accepts_mds(Q, d):
    from qmds.ccodes import build_code, mds_spec

    assert mds_verify(build_code(mds_spec(Q, d))) is True


def test_mds_verify_rejects_non_mds():
    f = build_field(2)
    c = linear_code(f, [(1, 0, 0, 0), (0, 1, 1, 1)])
    assert mds_verify(c) is False


@pytest.mark.parametrize("q,n,k", [(2, 8, 4), (3, 7, 3), (4, 6, 3), (5, 5, 2)])
def test_min_weight_matches_brute_force(q, n, k):
    from qmds.gf import field_for_order

    f = field_for_order(q)
    rng = random.Random(q * n + k)
    for _ in range(15):
        c = random_code(f, n, k, rng)
        got = min_weight(c)
        assert got.exact
        assert got.value == brute_min_weight(c)
        wt = sum(1 for x in got.witness if x)
        assert wt == got.value
        assert c.contains(got.witness)
    with pytest.raises(ZeroDimensional):
        min_weight(linear_code(f, [], 4))


def test_min_weight_search_paths_agree():
    # same code, three ladders: force enumeration off, then supports off,
    # and check every exact answer agrees with the unrestricted one
    f = build_field(3)
    rng = random.Random(99)
    c = random_code(f, 9, 4, rng)
    free = min_weight(c)
    no_enum = min_weight(c, SearchBudget(enum=1))
    assert free.exact and no_enum.exact
    assert free.value == no_enum.value


@pytest.mark.parametrize("q,n,k,ksub", [(2, 7, 4, 2), (3, 6, 3, 1), (4, 5, 3, 2)])
def test_min_weight_relative_matches_brute_force(q, n, k, ksub):
    from qmds.gf import field_for_order

    f = field_for_order(q)
    rng = random.Random(q + n + k)
    hits = 0
    while hits < 10:
        big = random_code(f, n, k, rng)
        sub = linear_code(f, big.gen[:ksub], n)
        got = min_weight_relative(big, sub)
        assert got.exact
        assert got.value == brute_min_weight_relative(big, sub)
        assert big.contains(got.witness) and not sub.contains(got.witness)
        hits += 1
    with pytest.raises(NotASubcode):
        min_weight_relative(sub, big)


def test_min_weight_relative_empty_set():
    f = build_field(2)
    c = linear_code(f, [(1, 1, 0), (0, 1, 1)])
    res = min_weight_relative(c, c)
    assert res.status == "undefined"


def test_spectrum_against_macwilliams():
    f = build_field(3)
    rng = random.Random(5)
    c = random_code(f, 6, 3, rng)
    primal = brute_spectrum(c)
    dual_counts = brute_spectrum(dual(c))
    assert macwilliams_dual_spectrum(primal, 3, c.n, c.k) == dual_counts


def test_is_member_oracle_agrees_with_contains():
    f = build_field(2, 2)
    rng = random.Random(11)
    c = random_code(f, 6, 3, rng)
    for _ in range(50):
        vec = tuple(rng.randrange(4) for _ in range(6))
        assert c.contains(vec) == is_member(c, vec)


def test_is_subcode():
    f = build_field(2)
    big = linear_code(f, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    small = linear_code(f, [(1, 1, 0)])
    assert is_subcode(small, big)
    assert not is_subcode(big, small)

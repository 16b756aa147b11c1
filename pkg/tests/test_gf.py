"""Field tables, embeddings, and the polynomial helpers."""

import random

import pytest

from qmds.errors import (
    NotASubfield,
    NotGaloisStable,
    NotInSubfield,
    NotPrime,
    NotQuadraticTower,
    TooLarge,
    UnsupportedAlphabet,
)
from qmds.gf import (
    build_field,
    conjugate,
    embed,
    field_for_order,
    norm,
    norm_preimage,
    poly_from_roots,
    subfield_order,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 4),
          (5, 1), (5, 2), (7, 1), (7, 2), (13, 1)]


@pytest.mark.parametrize("p,m", FIELDS)
def test_table_closure(p, m):
    f = build_field(p, m)
    q = f.q
    assert f.exp_table[0] == 1
    assert sorted(f.exp_table[: q - 1]) == list(range(1, q))
    for v in range(1, q):
        assert f.exp_table[f.log_table[v]] == v
    assert f.log_table[0] == -1


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms_random(p, m):
    f = build_field(p, m)
    rng = random.Random(1000 * p + m)
    for _ in range(300):
        a = rng.randrange(f.q)
        b = rng.randrange(f.q)
        c = rng.randrange(f.q)
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_field_for_order():
    assert field_for_order(9).m == 2
    assert field_for_order(9).p == 3
    assert field_for_order(16).q == 16
    assert field_for_order(7).m == 1
    with pytest.raises(UnsupportedAlphabet):
        field_for_order(6)
    with pytest.raises(UnsupportedAlphabet):
        field_for_order(1)
    with pytest.raises(NotPrime):
        build_field(6, 2)
    with pytest.raises(TooLarge):
        build_field(2, 17)


def test_generator_is_primitive():
    for p, m in FIELDS:
        f = build_field(p, m)
        seen = set()
        v = 1
        for _ in range(f.q - 1):
            seen.add(v)
            v = f.mul(v, f.generator)
        assert len(seen) == f.q - 1


def test_modulus_snapshots():
    # regression anchors: the searched moduli must stay put or every
    # serialized artifact silently changes meaning
    assert build_field(2, 2).modulus == (1, 1, 1)
    assert build_field(3, 2).modulus == (2, 1, 1)
    assert build_field(2, 4).modulus[-1] == 1
    assert len(build_field(5, 2).modulus) == 3


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (5, 2), (7, 2), (2, 4), (2, 6), (3, 4)])
def test_conjugate_and_norm(p, m):
    f = build_field(p, m)
    q0 = subfield_order(f)
    small = build_field(p, m // 2)
    emb = embed(small, f)
    for a in range(f.q):
        ca = conjugate(f, a)
        assert conjugate(f, ca) == a
        assert norm(f, a) == f.mul(a, ca)
        assert emb.contains(norm(f, a))
    with pytest.raises(NotQuadraticTower):
        subfield_order(build_field(2, 3))


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (5, 2), (7, 2), (2, 4)])
def test_norm_surjective_with_even_fibers(p, m):
    f = build_field(p, m)
    q0 = subfield_order(f)
    small = build_field(p, m // 2)
    emb = embed(small, f)
    fibers = {}
    for a in range(1, f.q):
        fibers.setdefault(norm(f, a), 0)
        fibers[norm(f, a)] += 1
    images = {emb.map(x) for x in range(1, small.q)}
    assert set(fibers) == images
    assert all(cnt == q0 + 1 for cnt in fibers.values())
    for target in images:
        y = norm_preimage(f, target)
        assert norm(f, y) == target
    outside = next(a for a in range(1, f.q) if a not in images)
    with pytest.raises(NotInSubfield):
        norm_preimage(f, outside)


@pytest.mark.parametrize("p,a,b", [(2, 1, 2), (2, 2, 4), (2, 3, 6), (3, 1, 2),
                                   (3, 2, 4), (5, 1, 2), (5, 2, 4), (7, 2, 4)])
def test_embedding_is_a_field_map(p, a, b):
    small, big = build_field(p, a), build_field(p, b)
    emb = embed(small, big)
    for x in range(small.q):
        for y in range(small.q):
            assert emb.map(small.add(x, y)) == big.add(emb.map(x), emb.map(y))
            assert emb.map(small.mul(x, y)) == big.mul(emb.map(x), emb.map(y))
        assert emb.section(emb.map(x)) == x
    with pytest.raises(NotASubfield):
        embed(build_field(2, 2), build_field(2, 3))


@pytest.mark.parametrize("p,a,b,c", [
    (2, 1, 2, 4), (2, 2, 4, 8), (2, 3, 6, 12), (2, 1, 3, 6), (2, 2, 6, 12),
    (3, 1, 2, 4), (3, 2, 4, 8), (5, 1, 2, 4), (7, 1, 2, 4),
])
def test_embedding_triangles_commute(p, a, b, c):
    # the whole spectral machinery rests on this: going small -> mid -> big
    # must land on the same elements as going small -> big directly
    A, B, C = build_field(p, a), build_field(p, b), build_field(p, c)
    eab, ebc, eac = embed(A, B), embed(B, C), embed(A, C)
    for x in range(A.q):
        assert ebc.map(eab.map(x)) == eac.map(x)


def test_quadratic_coordinates():
    big = build_field(3, 2)
    small = build_field(3, 1)
    emb = embed(small, big)
    theta = big.generator
    for b in range(big.q):
        c0, c1 = emb.coords2(b)
        rebuilt = big.add(emb.map(c0), big.mul(emb.map(c1), theta))
        assert rebuilt == b


def test_poly_from_roots_galois_guard():
    big = build_field(2, 4)
    small = build_field(2, 2)
    emb = embed(small, big)
    g = big.generator
    # the orbit {g, g**4} is stable under x -> x**4, a lone root is not
    stable = poly_from_roots(big, [g, big.pow(g, 4)], emb)
    assert stable.degree == 2
    for r in (g, big.pow(g, 4)):
        acc = 0
        xp = 1
        for cf in stable.coeffs:
            acc = big.add(acc, big.mul(emb.map(cf), xp))
            xp = big.mul(xp, r)
        assert acc == 0
    with pytest.raises(NotGaloisStable):
        poly_from_roots(big, [g], emb)

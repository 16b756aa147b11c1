"""Exact arithmetic in small finite fields.

An element of GF(p**m) is a plain int in [0, p**m): its base-p digits are the
coefficients of the residue polynomial, lowest degree first.  Field
multiplication runs on exp/log tables built once per field, so everything is
integer arithmetic end to end.

The defining modulus of GF(p**m) is the first monic degree-m polynomial, in
ascending integer encoding, whose powers of x run through the whole
multiplicative group.  That pins down one canonical table per order, and makes
the element x (the int p) a generator whenever m > 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .errors import (
    NotASubfield,
    NotGaloisStable,
    NotInSubfield,
    NotPrime,
    NotQuadraticTower,
    TooLarge,
    UnsupportedAlphabet,
)

MAX_FIELD_ORDER = 1 << 16
MAX_TABLE_ORDER = 256


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    out = 0
    for d in reversed(ds):
        out = out * p + d
    return out


def _digit_add(a: int, b: int, p: int) -> int:
    out = 0
    shift = 1
    while a or b:
        a, ra = divmod(a, p)
        b, rb = divmod(b, p)
        out += ((ra + rb) % p) * shift
        shift *= p
    return out


def _digit_neg(a: int, p: int) -> int:
    out = 0
    shift = 1
    while a:
        a, ra = divmod(a, p)
        out += ((p - ra) % p) * shift
        shift *= p
    return out


def _mul_by_x(v: int, p: int, m: int, low: int) -> int:
    """v(x) * x mod (x^m + low(x)), elements packed base p."""
    lead = v // p ** (m - 1)
    v = (v - lead * p ** (m - 1)) * p
    if lead:
        red = 0
        shift = 1
        t = low
        while t:
            t, d = divmod(t, p)
            red += ((d * lead) % p) * shift
            shift *= p
        v = _digit_add(v, _digit_neg(red, p), p)
    return v


def _x_generates(p: int, m: int, low: int) -> bool:
    """True when x has multiplicative order exactly p**m - 1 mod x^m + low."""
    q = p**m
    if m == 1:
        # x reduces to the constant -low
        v = (p - low) % p
        if v == 0:
            return False
        acc = v
        for step in range(1, q):
            if acc == 1:
                return step == q - 1
            acc = (acc * v) % p
        return False
    v = p % q  # the element x itself; for m == 1 handled above
    acc = v
    for step in range(1, q):
        if acc == 0:
            return False
        if acc == 1:
            return step == q - 1
        acc = _mul_by_x(acc, p, m, low)
    return False


def _maximal_proper_divisors(m: int) -> list[int]:
    primes = set()
    r, t = 2, m
    while r * r <= t:
        if t % r == 0:
            primes.add(r)
            while t % r == 0:
                t //= r
        r += 1
    if t > 1:
        primes.add(t)
    return sorted(m // r for r in primes)


def _digit_scale(a: int, c: int, p: int) -> int:
    out, shift = 0, 1
    while a:
        out += ((a % p) * c % p) * shift
        a //= p
        shift *= p
    return out


def _norm_compatible(p: int, m: int, low: int) -> bool:
    """True when x**((p**m-1)/(p**d-1)) is a root of every maximal subfield
    modulus.

    This pins the generator system down so that embeddings compose: the
    image of any subfield generator is always a plain power of the big
    generator, no matter which intermediate field the embedding routes
    through.
    """
    for d in _maximal_proper_divisors(m):
        sub_modulus = build_field(p, d).modulus
        big_r = (p**m - 1) // (p**d - 1)
        want = {big_r * j for j in range(d + 1)}
        got = {0: 1}
        v = 1
        for step in range(1, big_r * d + 1):
            v = _mul_by_x(v, p, m, low)
            if step in want:
                got[step] = v
        acc = 0
        for j, coeff in enumerate(sub_modulus):
            if coeff:
                acc = _digit_add(acc, _digit_scale(got[big_r * j], coeff, p), p)
        if acc:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _find_modulus_low(p: int, m: int) -> int:
    for low in range(p**m):
        if _x_generates(p, m, low) and _norm_compatible(p, m, low):
            return low
    raise RuntimeError(f"no primitive modulus found for GF({p}**{m})")


class FieldTable:
    """One finite field: exp/log tables plus scalar arithmetic."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.q = p**m
        low = _find_modulus_low(p, m)
        # modulus coefficients, constant term first, monic leading 1
        self.modulus = tuple(_digits(low, p, m)) + (1,)
        q = self.q
        exp = [0] * max(2 * (q - 1), 2)
        log = [-1] * q
        if m == 1:
            g = (p - low) % p
            v = 1
            for i in range(q - 1):
                exp[i] = v
                exp[i + q - 1] = v
                log[v] = i
                v = (v * g) % p
        else:
            v = 1
            for i in range(q - 1):
                exp[i] = v
                exp[i + q - 1] = v
                log[v] = i
                v = _mul_by_x(v, p, m, low)
            if v != 1:
                raise RuntimeError(f"exp table for GF({q}) did not close")
        self.exp_table = tuple(exp)
        self.log_table = tuple(log)
        self.generator = self.exp_table[1] if q > 2 else 1
        self._np = None

    def __repr__(self):
        return f"GF({self.q})"

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return _digit_add(a, b, self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (self.p - a) % self.p
        return _digit_neg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[self.q - 1 - self.log_table[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def np_tables(self) -> SimpleNamespace:
        """Dense uint8 lookup tables for vectorized kernels."""
        if self._np is None:
            if self.q > MAX_TABLE_ORDER:
                raise TooLarge(
                    f"vectorized tables support order <= {MAX_TABLE_ORDER}, got {self.q}"
                )
            q = self.q
            add = np.zeros((q, q), dtype=np.uint8)
            mul = np.zeros((q, q), dtype=np.uint8)
            neg = np.zeros(q, dtype=np.uint8)
            inv = np.zeros(q, dtype=np.uint8)
            for a in range(q):
                neg[a] = self.neg(a)
                if a:
                    inv[a] = self.inv(a)
                for b in range(q):
                    add[a, b] = self.add(a, b)
                    if a and b:
                        mul[a, b] = self.mul(a, b)
            sub = add[:, neg]
            self._np = SimpleNamespace(add=add, sub=sub, mul=mul, neg=neg, inv=inv)
        return self._np


def _spot_check(f: FieldTable) -> None:
    q = f.q
    picks = sorted({1, f.generator, q - 1, (q // 2) or 1, f.exp_table[(q - 1) // 2]})
    for a in picks:
        if f.mul(a, f.inv(a)) != 1:
            raise RuntimeError(f"inverse check failed in GF({q})")
        for b in picks:
            for c in picks:
                left = f.mul(a, f.add(b, c))
                right = f.add(f.mul(a, b), f.mul(a, c))
                if left != right:
                    raise RuntimeError(f"distributivity check failed in GF({q})")
                if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)):
                    raise RuntimeError(f"associativity check failed in GF({q})")


@functools.lru_cache(maxsize=None)
def build_field(p: int, m: int = 1) -> FieldTable:
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise TooLarge(f"extension degree must be positive, got {m}")
    if p**m > MAX_FIELD_ORDER:
        raise TooLarge(f"field order {p}**{m} exceeds {MAX_FIELD_ORDER}")
    f = FieldTable(p, m)
    _spot_check(f)
    return f


def field_for_order(q: int) -> FieldTable:
    """The canonical field with exactly q elements."""
    if q < 2:
        raise UnsupportedAlphabet(f"no field of order {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            m = 0
            t = q
            while t % p == 0:
                t //= p
                m += 1
            if t != 1:
                raise UnsupportedAlphabet(f"{q} is not a prime power")
            return build_field(p, m)
        p += 1
    return build_field(q, 1)


def subfield_order(field: FieldTable) -> int:
    """q such that the field is GF(q**2)."""
    if field.m % 2:
        raise NotQuadraticTower(f"GF({field.q}) is not a quadratic extension")
    return field.p ** (field.m // 2)


def conjugate(field: FieldTable, a: int) -> int:
    """Frobenius a -> a**q over GF(q**2)."""
    q0 = subfield_order(field)
    if a == 0:
        return 0
    return field.exp_table[(field.log_table[a] * q0) % (field.q - 1)]


def norm(field: FieldTable, a: int) -> int:
    """a -> a**(q+1), mapping GF(q**2) onto its index-2 subfield."""
    q0 = subfield_order(field)
    if a == 0:
        return 0
    return field.exp_table[(field.log_table[a] * (q0 + 1)) % (field.q - 1)]


def norm_preimage(field: FieldTable, a: int) -> int:
    """Some y with norm(y) = a, choosing the smallest discrete log.

    The argument is an element of GF(q**2) that must lie in the subfield
    image; passing anything outside raises NotInSubfield.
    """
    q0 = subfield_order(field)
    if a == 0:
        return 0
    ell = field.log_table[a]
    if ell % (q0 + 1):
        raise NotInSubfield(f"element {a} is not in the norm image")
    return field.exp_table[ell // (q0 + 1)]


@dataclass(frozen=True)
class SubfieldEmbedding:
    """The canonical embedding of one field table into a larger one."""

    small: FieldTable
    big: FieldTable
    image_of_generator: int

    @property
    def ratio(self) -> int:
        return (self.big.q - 1) // (self.small.q - 1)

    def map(self, a: int) -> int:
        if a == 0:
            return 0
        g_log = self.big.log_table[self.image_of_generator]
        return self.big.exp_table[(g_log * self.small.log_table[a]) % (self.big.q - 1)]

    def contains(self, b: int) -> bool:
        return b == 0 or self.big.log_table[b] % self.ratio == 0

    def section(self, b: int) -> int:
        """Inverse of map; raises NotInSubfield off the image."""
        if b == 0:
            return 0
        t = self.ratio
        lb = self.big.log_table[b]
        if lb % t:
            raise NotInSubfield(f"element {b} is outside the embedded subfield")
        j0 = self.big.log_table[self.image_of_generator] // t
        order = self.small.q - 1
        i = ((lb // t) * pow(j0, -1, order)) % order if order > 1 else 0
        return self.small.exp_table[i]

    def coords2(self, b: int) -> tuple[int, int]:
        """Split b = c0 + c1*theta over the subfield, theta the big generator.

        Only defined when the big field is a quadratic extension of the small
        one; the pair (c0, c1) consists of small-field elements.
        """
        big, small = self.big, self.small
        if big.m != 2 * small.m:
            raise NotQuadraticTower(
                f"GF({big.q}) is not quadratic over GF({small.q})"
            )
        q0 = small.q
        theta = big.generator
        bq = big.pow(b, q0)
        thq = big.pow(theta, q0)
        c1 = big.div(big.sub(b, bq), big.sub(theta, thq))
        c0 = big.sub(b, big.mul(c1, theta))
        return self.section(c0), self.section(c1)


def _poly_eval_big(field: FieldTable, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


@functools.lru_cache(maxsize=None)
def embed(small: FieldTable, big: FieldTable) -> SubfieldEmbedding:
    """Canonical embedding GF(p**a) -> GF(p**b) for a | b.

    The small generator maps to the root of the small modulus that has the
    smallest discrete log in the big field.
    """
    if small.p != big.p or big.m % small.m:
        raise NotASubfield(f"GF({small.q}) does not embed in GF({big.q})")
    if small.q == big.q:
        return SubfieldEmbedding(small, big, big.generator)
    t = (big.q - 1) // (small.q - 1)
    image = None
    for j in range(small.q - 1):
        cand = big.exp_table[(t * j) % (big.q - 1)]
        if _poly_eval_big(big, small.modulus, cand) == 0:
            image = cand
            break
    if image is None:
        raise RuntimeError(
            f"no root of the GF({small.q}) modulus inside GF({big.q})"
        )
    emb = SubfieldEmbedding(small, big, image)
    limit = small.q if small.q <= 81 else 16
    for a in range(limit):
        for b in range(limit):
            if emb.map(small.add(a, b)) != big.add(emb.map(a), emb.map(b)):
                raise RuntimeError("embedding is not additive")
            if emb.map(small.mul(a, b)) != big.mul(emb.map(a), emb.map(b)):
                raise RuntimeError("embedding is not multiplicative")
    return emb


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial over one field, constant term first."""

    field: FieldTable
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        return _poly_eval_big(self.field, self.coeffs, x)


def poly_from_roots(big: FieldTable, roots, target: SubfieldEmbedding) -> Polynomial:
    """Expand prod (z - r) over the big field and descend to target.small.

    Raises NotGaloisStable when some expanded coefficient falls outside the
    embedded subfield, i.e. the root multiset is not closed under the right
    Galois action.
    """
    if target.big is not big:
        raise NotASubfield("target embedding does not land in the root field")
    coeffs = [1]
    for r in roots:
        nr = big.neg(r)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = big.add(nxt[i], big.mul(c, nr))
            nxt[i + 1] = big.add(nxt[i + 1], c)
        coeffs = nxt
    small_coeffs = []
    for c in coeffs:
        if not target.contains(c):
            raise NotGaloisStable("coefficient escapes the subfield")
        small_coeffs.append(target.section(c))
    return Polynomial(target.small, tuple(small_coeffs))

"""Finite fields F_q, q = p^k, with elements encoded as integers.

An element with power-basis coordinates ``(c_0, ..., c_{k-1})`` is encoded as
the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  All arithmetic lives on
:class:`FieldSpec` and works on these integers; :class:`FieldElement` is a thin
operator-overloading wrapper for interactive use and serialization.

The default modulus for a degree-k extension is the lexicographically smallest
monic irreducible, comparing coefficient vectors from the constant term up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np
from sympy.ntheory import factorint, isprime

from .errors import DegreeMismatch, FieldMismatch, NotPrime, ReducibleModulus, ZeroInverse

TABLE_LIMIT = 256


# -- polynomials over the prime field, as ascending coefficient lists --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _powmod_x(e: int, m: Sequence[int], p: int) -> list[int]:
    """x^e mod m over F_p."""
    result, base = [1], [0, 1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p (ascending coefficients)."""
    f = _trim([c % p for c in poly])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_powmod_x(p**k, f, p), x, p):
        return False
    for r in factorint(k):
        h = _psub(_powmod_x(p ** (k // r), f, p), x, p)
        g = _pgcd(f, h, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p, comparing c_0 first."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(1, p), *([range(p)] * (k - 1))):
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields -------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[t]/(modulus), ``modulus`` monic of degree k, ascending."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def char(self) -> int:
        return self.p

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # encoding helpers
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        p = self.p
        v = 0
        for c in reversed(list(ds)):
            v = v * p + c % p
        return v

    def elements(self) -> range:
        return range(self.q)

    def one(self) -> int:
        return 1

    def from_int(self, m: int) -> int:
        """Image of the integer m under Z -> F_q."""
        return m % self.p

    # -- arithmetic (tables when small) ---------------------------------------
    @cached_property
    def _tables(self):
        q = self.q
        if q > TABLE_LIMIT:
            return None
        add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        neg = [self._neg_raw(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return add, mul, neg, inv

    @cached_property
    def np_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(add, mul, neg) lookup arrays for vectorized kernels."""
        add, mul, neg, _ = self._tables
        return (np.array(add, dtype=np.int64), np.array(mul, dtype=np.int64),
                np.array(neg, dtype=np.int64))

    def _add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def _neg_raw(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return -a % self.p
        return self.from_digits(-x for x in self.digits(a))

    def _mul_raw(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            mod = sum(1 << i for i, c in enumerate(self.modulus) if c)
            for i in range(r.bit_length() - 1, k - 1, -1):
                if r >> i & 1:
                    r ^= mod << (i - k)
            return r
        prod = _pmul(self.digits(a), self.digits(b), p)
        return self.from_digits(_pmod(prod, self.modulus, p))

    def add(self, a: int, b: int) -> int:
        t = self._tables
        return t[0][a][b] if t else self._add_raw(a, b)

    def neg(self, a: int) -> int:
        t = self._tables
        return t[2][a] if t else self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self._tables
        return t[1][a][b] if t else self._mul_raw(a, b)

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            a, m = self.inv(a), -m
        result = 1
        while m:
            if m & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            m >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        t = self._tables
        if t:
            return t[3][a]
        return self.pow(a, self.q - 2)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroInverse("zero has no multiplicative order")
        m = self.q - 1
        for r, e in factorint(m).items():
            for _ in range(e):
                if self.pow(a, m // r) == 1:
                    m //= r
                else:
                    break
        return m

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        """Accept an int encoding, a coefficient list, or a FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value.value
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise DegreeMismatch(f"element has {len(value)} coordinates, field degree is {self.k}")
            return self.from_digits(value)
        v = int(value)
        if self.k == 1:
            return v % self.p
        if not 0 <= v < self.q:
            raise ValueError(f"element encoding {v} outside [0, {self.q})")
        return v

    # serialization
    def serialize_element(self, a: int):
        return a if self.k == 1 else self.digits(a)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


def field_new(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated FieldSpec; picks the smallest irreducible when ``modulus`` is omitted."""
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if modulus is None:
        return _field_cached(p, k, smallest_irreducible(p, k))
    mod = [int(c) % p for c in modulus]
    mod = _trim(mod)
    if len(mod) - 1 != k or mod[-1] != 1:
        raise DegreeMismatch(f"modulus {list(modulus)} is not monic of degree {k}")
    if not is_irreducible(mod, p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
    return _field_cached(p, k, tuple(mod))


@lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def field_from_order(q: int) -> FieldSpec:
    """Field of order q with the default modulus."""
    f = factorint(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    (p, k), = f.items()
    return field_new(p, k)


def field_from_json(obj) -> FieldSpec:
    if isinstance(obj, int):
        return field_from_order(obj)
    return field_new(int(obj["p"]), int(obj.get("k", 1)), obj.get("modulus"))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {b.field!r}")
            return b.value
        return self.field.from_int(b)

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __truediv__(self, b):
        return self * FieldElement(self.field, self.field.inv(self._other(b)))

    def __pow__(self, m: int):
        return FieldElement(self.field, self.field.pow(self.value, m))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field.serialize_element(self.value)}"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul}[op]
    return FieldElement(a.field, fn(a.value, b.value))


def field_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def field_pow(a: FieldElement, m: int) -> FieldElement:
    return a**m

"""Polynomials over F_q and the group algebra R_n = F_q[x]/(x^n - 1).

:class:`Poly` is variable length and canonical (no trailing zeros);
:class:`RingElement` always carries exactly n coefficients, the coefficient of
x^i doubling as the group-algebra coefficient of h^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BothZero, DivisionByZeroPoly, FieldMismatch, LengthMismatch
from .gf import FieldSpec


@dataclass(frozen=True)
class Poly:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence) -> "Poly":
        return cls(field, tuple(field.coerce(c) for c in coeffs))

    @classmethod
    def monomial(cls, field: FieldSpec, deg: int, c: int = 1) -> "Poly":
        return cls(field, (0,) * deg + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = f.add(out[i], y)
        return Poly(f, tuple(out))

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f, ())
        out = [0] * (len(a) + len(b) - 1)
        if f.k == 1:
            bnz = [(j, y) for j, y in enumerate(b) if y]
            for i, x in enumerate(a):
                if x:
                    for j, y in bnz:
                        out[i + j] += x * y
            p = f.p
            return Poly(f, tuple(c % p for c in out))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly(f, tuple(out))

    def scale(self, c: int) -> "Poly":
        return Poly(self.field, tuple(self.field.mul(c, x) for x in self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[0]

    def __call__(self, x: int, field: FieldSpec | None = None, embed=None) -> int:
        """Horner evaluation; with ``field``/``embed`` evaluates in an extension."""
        tgt = field or self.field
        emb = embed or (lambda c: c)
        acc = 0
        for c in reversed(self.coeffs):
            acc = tgt.add(tgt.mul(acc, x), emb(c))
        return acc

    def to_json(self) -> list:
        return [self.field.serialize_element(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(self.field.serialize_element(c))
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a._check(b)
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    f = a.field
    rem = list(a.coeffs)
    db = b.degree
    if len(rem) - 1 < db:
        return Poly(f, ()), a
    inv_lead = f.inv(b.lead)
    quo = [0] * (len(rem) - db)
    if f.k == 1:
        p = f.p
        bc = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if not c:
                continue
            c = c * inv_lead % p
            quo[i - db] = c
            for j, y in bc:
                rem[i - db + j] -= c * y
        return Poly(f, tuple(quo)), Poly(f, tuple(x % p for x in rem[:db]))
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        c = f.mul(c, inv_lead)
        quo[i - db] = c
        nc = f.neg(c)
        for j, y in enumerate(b.coeffs):
            if y:
                rem[i - db + j] = f.add(rem[i - db + j], f.mul(nc, y))
    return Poly(f, tuple(quo)), Poly(f, tuple(rem[:db]))


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, u, v) with d = gcd(a, b) monic and d = u*a + v*b."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials is undefined")
    f = a.field
    one, zero = Poly(f, (1,)), Poly(f, ())
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        qt, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    c = f.inv(r0.lead)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    """u with u*a = 1 (mod m); requires gcd(a, m) = 1."""
    f = a.field
    r0, r1, s0, s1 = m, a % m, Poly(f, ()), Poly(f, (1,))
    while not r1.is_zero():
        qt, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
    if r0.degree != 0:
        raise ValueError("polynomial is not invertible modulo m")
    return s0.scale(f.inv(r0.lead)) % m


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return poly_xgcd(a, b)[0]


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    f = base.field
    result = Poly(f, (1,)) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def xn_minus_1(n: int, field: FieldSpec) -> Poly:
    return Poly(field, (field.neg(1),) + (0,) * (n - 1) + (1,))


@dataclass(frozen=True)
class RingElement:
    """Element of F_q[x]/(x^n - 1); coefficient i is the color of h^i."""

    field: FieldSpec
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise LengthMismatch(f"expected {self.n} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_poly(cls, p: Poly, n: int) -> "RingElement":
        f = p.field
        out = [0] * n
        for i, c in enumerate(p.coeffs):
            if c:
                out[i % n] = f.add(out[i % n], c)
        return cls(f, n, tuple(out))

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence, n: int | None = None) -> "RingElement":
        n = len(coeffs) if n is None else n
        vals = [field.coerce(c) for c in coeffs]
        return cls.from_poly(Poly(field, tuple(vals)), n)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "RingElement":
        return cls(field, n, (0,) * n)

    @classmethod
    def one(cls, field: FieldSpec, n: int) -> "RingElement":
        return cls(field, n, (1,) + (0,) * (n - 1))

    @classmethod
    def x_power(cls, field: FieldSpec, n: int, i: int) -> "RingElement":
        out = [0] * n
        out[i % n] = 1
        return cls(field, n, tuple(out))

    def to_poly(self) -> Poly:
        return Poly(self.field, self.coeffs)

    def _check(self, other: "RingElement"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.n != other.n:
            raise LengthMismatch(f"ring lengths {self.n} and {other.n} differ")

    def __add__(self, other: "RingElement") -> "RingElement":
        return ring_add(self, other)

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        f = self.field
        return RingElement(f, self.n, tuple(f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "RingElement") -> "RingElement":
        return ring_mul(self, other)

    def shift(self, i: int) -> "RingElement":
        """x^i * self."""
        n = self.n
        i %= n
        return RingElement(self.field, n, self.coeffs[n - i:] + self.coeffs[:n - i])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list:
        return [self.field.serialize_element(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RingElement(n={self.n}, {self.to_poly()!r})"


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    f = a.field
    return RingElement(f, a.n, tuple(f.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def ring_scalar_mul(c, a: RingElement) -> RingElement:
    f = a.field
    c = f.coerce(c)
    return RingElement(f, a.n, tuple(f.mul(c, x) for x in a.coeffs))


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Cyclic convolution: (ab)_t = sum over i + j = t (mod n) of a_i b_j."""
    a._check(b)
    f, n = a.field, a.n
    out = [0] * n
    bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in bnz:
                t = (i + j) % n
                out[t] = f.add(out[t], f.mul(x, y))
    return RingElement(f, n, tuple(out))


def ring_ideal_basis(g: RingElement) -> list[RingElement]:
    """The n cyclic shifts g, xg, ..., x^{n-1}g spanning the ideal (g)."""
    return [g.shift(i) for i in range(g.n)]

"""Semisimple cyclic codes of length n over F_q.

A code is named by its zero set: a union of q-cyclotomic cosets mod n.  Each
coset is attached to one irreducible factor of x^n - 1 (found by Berlekamp's
algorithm) by evaluating the factor at a fixed primitive n-th root of unity
alpha in the splitting field F_{q^m}, m = ord_n(q).

Root convention: the splitting field is F_p[t]/(smallest irreducible of degree
k*m); F_q embeds via the lowest-encoded root of its modulus; alpha is
gamma^((q^m - 1)/n) for the lowest-encoded gamma giving an element of order n.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from sympy.ntheory import factorint, n_order

from .errors import NotACoset, NotADivisor, NotCoprime, TooManyCodes
from .gf import FieldSpec, field_from_json, field_new
from .linalg import nullspace
from .linearcode import LinearCode, code_from_ring_element
from .polyring import Poly, RingElement, poly_divmod, poly_gcd, poly_inverse_mod, poly_powmod, xn_minus_1

DEFAULT_CODE_CAP = 4096
PAIRING_METHOD = "splitting-field"

Coset = tuple[int, ...]


def _require_coprime(n: int, q: int):
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    if gcd(n, q) != 1:
        raise NotCoprime(f"gcd(n={n}, q={q}) != 1; F_q[Z_n] is not semisimple")


def cyclotomic_cosets(n: int, q: int) -> list[Coset]:
    """Orbits of j -> q*j mod n, each sorted, listed by smallest element."""
    _require_coprime(n, q)
    seen: set[int] = set()
    out = []
    for j in range(n):
        if j in seen:
            continue
        orbit, x = [], j
        while x not in orbit:
            orbit.append(x)
            x = x * q % n
        seen.update(orbit)
        out.append(tuple(sorted(orbit)))
    return out


def berlekamp(f: Poly) -> list[Poly]:
    """Factor a monic squarefree polynomial into monic irreducibles."""
    fld = f.field
    d = f.degree
    if d <= 1:
        return [f]
    x = Poly(fld, (0, 1))
    xq = poly_powmod(x, fld.q, f)
    rows = []
    cur = Poly(fld, (1,))
    for _ in range(d):
        rows.append(list(cur.coeffs) + [0] * (d - len(cur.coeffs)))
        cur = (cur * xq) % f
    # kernel of (Q^T - I): v(x)^q = v(x) mod f
    m = [[rows[i][j] for i in range(d)] for j in range(d)]
    for j in range(d):
        m[j][j] = fld.sub(m[j][j], 1)
    kernel = nullspace(m, fld, d)
    r = len(kernel)
    factors = [f]
    for v in kernel:
        if len(factors) == r:
            break
        vp = Poly(fld, tuple(v))
        if vp.degree < 1:
            continue
        new = []
        for g in factors:
            if g.degree <= 1:
                new.append(g)
                continue
            parts = []
            for s in fld.elements():
                h = poly_gcd(g, vp - Poly(fld, (s,)))
                if h.degree >= 1:
                    parts.append(h)
            new.extend(parts)
        factors = new
    return sorted(factors, key=lambda p: (p.degree, p.coeffs))


@dataclass(frozen=True)
class SplittingField:
    """F_{q^m} with an embedding of F_q and a primitive n-th root of unity."""

    base: FieldSpec
    big: FieldSpec
    n: int
    embedding: tuple[int, ...]  # image of each F_q element, by encoding
    alpha: int

    def embed(self, c: int) -> int:
        return self.embedding[c]

    @cached_property
    def _preimage(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.embedding)}

    def restrict(self, c: int) -> int:
        """Inverse of the embedding on its image."""
        return self._preimage[c]

    def root(self, j: int) -> int:
        return self.big.pow(self.alpha, j % self.n)

    def evaluate(self, poly: Poly, j: int) -> int:
        return poly(self.root(j), self.big, self.embed)

    def minimal_polynomial(self, coset: Iterable[int]) -> Poly:
        """prod (x - alpha^j) over the coset, pulled back to F_q."""
        big = self.big
        acc = Poly(big, (1,))
        for j in coset:
            acc = acc * Poly(big, (big.neg(self.root(j)), 1))
        return Poly(self.base, tuple(self.restrict(c) for c in acc.coeffs))


def _first_of_order(big: FieldSpec, order: int) -> int:
    """gamma^((Q-1)/order) for the lowest-encoded gamma making it of exact order."""
    qq = big.q
    cof = (qq - 1) // order
    primes = list(factorint(order)) if order > 1 else []
    for gamma in range(1, qq):
        a = big.pow(gamma, cof)
        if all(big.pow(a, order // r) != 1 for r in primes):
            return a
    raise AssertionError("no element of the requested order")  # pragma: no cover


@lru_cache(maxsize=None)
def splitting_field(n: int, field: FieldSpec) -> SplittingField:
    _require_coprime(n, field.q)
    m = n_order(field.q, n) if n > 1 else 1
    big = field_new(field.p, field.k * m)
    if field.k == 1:
        embedding = tuple(range(field.p))
    else:
        zeta = _first_of_order(big, field.q - 1)
        roots = []
        for i in range(field.q - 1):
            z = big.pow(zeta, i)
            if Poly(big, field.modulus)(z) == 0:
                roots.append(z)
        beta = min(roots)
        embedding = tuple(
            Poly(big, tuple(field.digits(c)))(beta) for c in range(field.q)
        )
    alpha = _first_of_order(big, n)
    return SplittingField(field, big, n, embedding, alpha)


@dataclass(frozen=True)
class CyclotomicStructure:
    """Cosets of (n, q) paired with the irreducible factors of x^n - 1."""

    n: int
    field: FieldSpec
    cosets: tuple[Coset, ...]
    factors: tuple[Poly, ...]  # factors[i] has the roots alpha^j, j in cosets[i]
    pairing: str = PAIRING_METHOD

    def coset_index(self, coset: Sequence[int]) -> int:
        c = tuple(sorted(int(j) % self.n for j in coset))
        try:
            return self.cosets.index(c)
        except ValueError:
            raise NotACoset(f"{list(coset)} is not a {self.field.q}-cyclotomic coset mod {self.n}") from None


def factor_xn_minus_1(n: int, field: FieldSpec) -> list[Poly]:
    """Monic irreducible factors of x^n - 1, sorted by (degree, coefficients)."""
    _require_coprime(n, field.q)
    return berlekamp(xn_minus_1(n, field))


@lru_cache(maxsize=None)
def cyclotomic_structure(n: int, field: FieldSpec) -> CyclotomicStructure:
    cosets = cyclotomic_cosets(n, field.q)
    factors = factor_xn_minus_1(n, field)
    sf = splitting_field(n, field)
    paired: list[Poly | None] = [None] * len(cosets)
    for f in factors:
        hits = [i for i, c in enumerate(cosets) if sf.evaluate(f, c[0]) == 0]
        if len(hits) != 1 or paired[hits[0]] is not None or len(cosets[hits[0]]) != f.degree:
            raise AssertionError(f"factor {f!r} did not pair with a unique coset")
        paired[hits[0]] = f
    return CyclotomicStructure(n, field, tuple(cosets), tuple(paired))


@dataclass(frozen=True)
class CyclicCode:
    n: int
    field: FieldSpec
    zero_cosets: tuple[Coset, ...]
    generator: Poly
    idempotent: RingElement
    pairing: str = dc_field(default=PAIRING_METHOD, compare=False)

    @property
    def dim(self) -> int:
        return self.n - self.generator.degree

    @property
    def zeros(self) -> frozenset[int]:
        return frozenset(j for c in self.zero_cosets for j in c)

    @cached_property
    def linear(self) -> LinearCode:
        return code_from_ring_element(self.idempotent)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "cosets": [list(c) for c in self.zero_cosets],
            "generator": self.generator.to_json(),
            "idempotent": self.idempotent.to_json(),
            "dim": self.dim,
            "pairing": self.pairing,
        }

    def __repr__(self) -> str:
        return f"CyclicCode(n={self.n}, q={self.field.q}, zeros={[list(c) for c in self.zero_cosets]}, k={self.dim})"


def generator_to_idempotent(g: Poly, n: int, field: FieldSpec) -> RingElement:
    """The unique idempotent e = u*g with u*g + v*h = 1, h = (x^n - 1)/g."""
    _require_coprime(n, field.q)
    h, r = poly_divmod(xn_minus_1(n, field), g)
    if not r.is_zero():
        raise NotADivisor(f"{g!r} does not divide x^{n} - 1")
    u = poly_inverse_mod(g, h) if h.degree > 0 else Poly(field, ())
    return RingElement.from_poly(u * g, n)


def code_from_cosets(n: int, field: FieldSpec, zero_cosets: Iterable[Sequence[int]]) -> CyclicCode:
    st = cyclotomic_structure(n, field)
    idx = sorted({st.coset_index(c) for c in zero_cosets})
    g = Poly(field, (1,))
    for i in idx:
        g = g * st.factors[i]
    e = generator_to_idempotent(g, n, field)
    return CyclicCode(n, field, tuple(st.cosets[i] for i in idx), g, e, st.pairing)


def code_from_generator(g: Poly, n: int) -> CyclicCode:
    field = g.field
    g = g.monic()
    st = cyclotomic_structure(n, field)
    _, r = poly_divmod(xn_minus_1(n, field), g)
    if g.is_zero() or not r.is_zero():
        raise NotADivisor(f"{g!r} does not divide x^{n} - 1")
    sf = splitting_field(n, field)
    cosets = [c for c in st.cosets if sf.evaluate(g, c[0]) == 0]
    code = code_from_cosets(n, field, cosets)
    if code.generator != g:  # pragma: no cover - squarefree factorization is unique
        raise AssertionError("generator does not match its zero set")
    return code


def code_from_idempotent(e: RingElement) -> CyclicCode:
    """Recover the code generated by an idempotent; rejects non-idempotents."""
    if e * e != e:
        raise ValueError("element is not idempotent")
    g = poly_gcd(e.to_poly(), xn_minus_1(e.n, e.field)) if not e.is_zero() else xn_minus_1(e.n, e.field)
    code = code_from_generator(g, e.n)
    if code.idempotent != e:  # pragma: no cover - idempotent generators are unique
        raise AssertionError("idempotent differs from the computed one")
    return code


def enumerate_cyclic_codes(n: int, field: FieldSpec, cap: int = DEFAULT_CODE_CAP) -> list[CyclicCode]:
    """All 2^c cyclic codes, ordered by the bitmask of their zero cosets."""
    st = cyclotomic_structure(n, field)
    c = len(st.cosets)
    if 2**c > cap:
        raise TooManyCodes(f"{2**c} codes for n={n}, q={field.q} exceeds cap {cap}")
    # the idempotent of a code is the sum of the primitive idempotents of its nonzero cosets
    full = (1 << c) - 1
    prim = [code_from_cosets(n, field, [st.cosets[j] for j in range(c) if j != i]).idempotent
            for i in range(c)]
    gens = [Poly(field, (1,))]
    idems = [RingElement.zero(field, n)]
    for mask in range(1, 2**c):
        low = (mask & -mask).bit_length() - 1
        gens.append(gens[mask & (mask - 1)] * st.factors[low])
    for mask in range(1, 2**c):
        low = (mask & -mask).bit_length() - 1
        idems.append(idems[mask & (mask - 1)] + prim[low])
    out = []
    for mask in range(2**c):
        chosen = tuple(st.cosets[i] for i in range(c) if mask >> i & 1)
        out.append(CyclicCode(n, field, chosen, gens[mask], idems[full ^ mask], st.pairing))
    return out


def cyclic_code_from_json(obj: dict) -> CyclicCode:
    """Build from any of cosets / generator / idempotent, cross-checking the rest."""
    n = int(obj["n"])
    field = field_from_json(obj["field"])
    code = None
    if obj.get("cosets") is not None:
        code = code_from_cosets(n, field, obj["cosets"])
    if obj.get("generator") is not None:
        other = code_from_generator(Poly.from_coeffs(field, obj["generator"]), n)
        if code is not None and other != code:
            raise ValueError("generator disagrees with cosets")
        code = other
    if obj.get("idempotent") is not None:
        other = code_from_idempotent(RingElement.from_coeffs(field, obj["idempotent"], n))
        if code is not None and other != code:
            raise ValueError("idempotent disagrees with the other fields")
        code = other
    if code is None:
        raise ValueError("code spec needs one of cosets, generator, idempotent")
    if "dim" in obj and obj["dim"] is not None and int(obj["dim"]) != code.dim:
        raise ValueError(f"dim {obj['dim']} disagrees with computed {code.dim}")
    return code

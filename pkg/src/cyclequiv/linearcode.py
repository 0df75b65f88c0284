"""Linear codes in F_q^n, coordinate permutations and circulant (H-)matrices.

Permutations compose left to right: ``g * h`` applies g first, then h.  A
permutation acts on a vector by moving the entry at position i to position
g(i), i.e. ``f^g(w) = f(g^{-1}(w))``, so ``(f^g)^h = f^(g*h)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FieldMismatch, LengthMismatch
from .gf import FieldSpec, field_from_json
from .linalg import matmul, nullspace, rref
from .polyring import RingElement, ring_ideal_basis


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {list(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def shift(cls, n: int, s: int = 1) -> "Permutation":
        return cls(tuple((i + s) % n for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise LengthMismatch(f"degrees {self.n} and {other.n} differ")
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycle_type(self) -> list[int]:
        seen, lengths = set(), []
        for i in range(self.n):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = self.images[j]
                length += 1
            lengths.append(length)
        return sorted(lengths, reverse=True)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """The vector v^g: entry i of v lands at position g(i)."""
        out = [0] * self.n
        for i, j in enumerate(self.images):
            out[j] = v[i]
        return tuple(out)

    def matrix(self) -> list[list[int]]:
        """P_g with P_g v = v^g."""
        m = [[0] * self.n for _ in range(self.n)]
        for i, j in enumerate(self.images):
            m[j][i] = 1
        return m

    def to_json(self) -> list[int]:
        return list(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class LinearCode:
    """A subspace of F_q^n stored by its reduced row-echelon basis."""

    field: FieldSpec
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, c in enumerate(row) if c) for row in self.basis)

    @cached_property
    def check_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Rows h with <h, v> = 0 for all v in the code, spanning the dual."""
        return tuple(tuple(h) for h in nullspace(self.basis, self.field, self.n))

    def contains(self, v: Sequence[int]) -> bool:
        f = self.field
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = w[pc]
            if c:
                nc = f.neg(c)
                w = [f.add(x, f.mul(nc, y)) if y else x for x, y in zip(w, row)]
        return not any(w)

    def size(self) -> int:
        return self.field.q ** self.dim

    def codewords(self) -> Iterable[tuple[int, ...]]:
        f = self.field
        for coeffs in itertools.product(range(f.q), repeat=self.dim):
            w = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    w = [f.add(x, f.mul(c, y)) for x, y in zip(w, row)]
            yield tuple(w)

    def to_json(self) -> dict:
        ser = self.field.serialize_element
        return {"n": self.n, "field": self.field.to_json(),
                "basis": [[ser(c) for c in row] for row in self.basis]}

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.dim}, {self.field!r})"


def rref_canonical(rows: Sequence[Sequence[int]], field: FieldSpec, n: int | None = None) -> LinearCode:
    rows = [[field.coerce(c) for c in r] for r in rows]
    if n is None:
        if not rows:
            raise ValueError("n is required for an empty row list")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise LengthMismatch("rows have differing lengths")
    red, _ = rref(rows, field, n)
    return LinearCode(field, n, tuple(tuple(r) for r in red))


def linear_code_from_json(obj: dict) -> LinearCode:
    field = field_from_json(obj["field"])
    return rref_canonical(obj["basis"], field, int(obj["n"]))


def _check_pair(c: LinearCode, d: LinearCode):
    if c.field != d.field:
        raise FieldMismatch(f"{c.field!r} vs {d.field!r}")
    if c.n != d.n:
        raise LengthMismatch(f"code lengths {c.n} and {d.n} differ")


def permute_code(c: LinearCode, g: Permutation) -> LinearCode:
    if g.n != c.n:
        raise LengthMismatch(f"permutation degree {g.n} != code length {c.n}")
    return rref_canonical([g.apply(row) for row in c.basis], c.field, c.n)


def code_equal(c: LinearCode, d: LinearCode) -> bool:
    _check_pair(c, d)
    return c.basis == d.basis


def code_from_ring_element(e: RingElement) -> LinearCode:
    """The ideal (e) as a linear code: span of the shifts of e."""
    return rref_canonical([s.coeffs for s in ring_ideal_basis(e)], e.field, e.n)


def is_invariant(c: LinearCode, g: Permutation) -> bool:
    """Whether c^g = c, by membership of the permuted basis rows."""
    return all(c.contains(g.apply(row)) for row in c.basis)


@dataclass(frozen=True)
class CirculantMatrix:
    """The H-matrix of e: entry (x, y) is e_{(x - y) mod n}."""

    e: RingElement

    @property
    def n(self) -> int:
        return self.e.n

    def __getitem__(self, xy: tuple[int, int]) -> int:
        x, y = xy
        return self.e.coeffs[(x - y) % self.e.n]

    @cached_property
    def rows(self) -> list[list[int]]:
        n, c = self.e.n, self.e.coeffs
        return [[c[(x - y) % n] for y in range(n)] for x in range(n)]

    def columns(self) -> list[list[int]]:
        return [list(col) for col in zip(*self.rows)]

    def column_space(self) -> LinearCode:
        return rref_canonical(self.columns(), self.e.field, self.n)


def circulant(e: RingElement) -> CirculantMatrix:
    return CirculantMatrix(e)


def projector_verify(e: RingElement, c: LinearCode) -> bool:
    """Whether circulant(e) is idempotent with column space equal to c."""
    if c.n != e.n or c.field != e.field:
        return False
    a = circulant(e)
    if matmul(a.rows, a.rows, e.field) != a.rows:
        return False
    return a.column_space() == c


def centralizer_check(e: RingElement, g: Permutation) -> bool:
    """Whether P_g commutes with circulant(e), i.e. g preserves arc colors."""
    if g.n != e.n:
        raise LengthMismatch(f"permutation degree {g.n} != ring length {e.n}")
    n, c, im = e.n, e.coeffs, g.images
    return all(c[(x - y) % n] == c[(im[x] - im[y]) % n] for x in range(n) for y in range(n))

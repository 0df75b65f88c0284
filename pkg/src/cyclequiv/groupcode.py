"""Semisimple group codes over elementary abelian groups (Z_p)^d.

Group elements are the vectors of F_p^d, indexed in lexicographic order: the
element ``(a_0, ..., a_{d-1})`` has index ``a_0 p^{d-1} + ... + a_{d-1}``.
Cayley isomorphisms are the coordinate permutations induced by GL(d, p).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

from .errors import GroupMismatch, NotAnElement, NotInvariant, NotSemisimple, SolverInconsistent
from .gf import FieldSpec, field_from_json
from .linalg import solve
from .linearcode import LinearCode, Permutation, permute_code, rref_canonical
from .oracle import (DEFAULT_CAP, CIReport, _arrays, _invariant_under_conjugates, _require_cap, _scan,
                     maps_into)

IDEAL_ENUM_CAP = 1 << 20


@dataclass(frozen=True)
class ElemAbelianGroup:
    p: int
    d: int

    @property
    def order(self) -> int:
        return self.p**self.d

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(range(self.p), repeat=self.d))

    def index(self, v) -> int:
        v = tuple(int(x) % self.p for x in v)
        if len(v) != self.d:
            raise NotAnElement(f"{v} is not in (Z_{self.p})^{self.d}")
        i = 0
        for x in v:
            i = i * self.p + x
        return i

    @cached_property
    def add_table(self) -> np.ndarray:
        """add_table[x, y] = index of element x + y."""
        n, p = self.order, self.p
        els = self.elements
        return np.array([[self.index([(a + b) % p for a, b in zip(els[x], els[y])]) for y in range(n)]
                         for x in range(n)], dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        """sub_table[x, y] = index of element x - y."""
        n, p = self.order, self.p
        els = self.elements
        return np.array([[self.index([(a - b) % p for a, b in zip(els[x], els[y])]) for y in range(n)]
                         for x in range(n)], dtype=np.int64)

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for i in range(self.d)) for j in range(self.d)]

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d}


def translation_perm(group: ElemAbelianGroup, h) -> Permutation:
    """x -> x + h under the fixed indexing."""
    if isinstance(h, int):
        if not 0 <= h < group.order:
            raise NotAnElement(f"index {h} outside the group")
        hi = h
    else:
        if len(tuple(h)) != group.d:
            raise NotAnElement(f"{h} is not in (Z_{group.p})^{group.d}")
        hi = group.index(h)
    return Permutation(tuple(group.add_table[:, hi].tolist()))


def convolve(group: ElemAbelianGroup, field: FieldSpec, a, b) -> tuple[int, ...]:
    """Product in F_q[H]: (ab)_t = sum over x + y = t of a_x b_y."""
    out = [0] * group.order
    add = group.add_table
    for x, ax in enumerate(a):
        if ax:
            for y, by in enumerate(b):
                if by:
                    t = add[x, y]
                    out[t] = field.add(out[t], field.mul(ax, by))
    return tuple(out)


@dataclass(frozen=True)
class GroupCode:
    group: ElemAbelianGroup
    field: FieldSpec
    code: LinearCode
    idempotent: tuple[int, ...]
    provenance: str = dc_field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.code.dim

    def to_json(self) -> dict:
        ser = self.field.serialize_element
        return {"p": self.group.p, "d": self.group.d, "field": self.field.to_json(),
                "generator": [ser(c) for c in self.idempotent],
                "basis": [[ser(c) for c in r] for r in self.code.basis], "dim": self.dim}


def _require_semisimple(group: ElemAbelianGroup, field: FieldSpec):
    if field.char == group.p:
        raise NotSemisimple(f"characteristic {field.char} divides |H| = {group.order}")


def _translation_invariant(group: ElemAbelianGroup, code: LinearCode) -> bool:
    return all(code.contains(translation_perm(group, g).apply(row))
               for g in group.generators() for row in code.basis)


def idempotent_of_ideal(group: ElemAbelianGroup, field: FieldSpec, code: LinearCode) -> tuple[int, ...]:
    """The unit element e of the ideal: e * b = b for every basis vector b."""
    _require_semisimple(group, field)
    if not _translation_invariant(group, code):
        raise NotInvariant("code is not invariant under the translations")
    basis = code.basis
    k, n = len(basis), group.order
    if k == 0:
        return (0,) * n
    products = [[convolve(group, field, bi, bj) for bi in basis] for bj in basis]
    rows, rhs = [], []
    for j, bj in enumerate(basis):
        for t in range(n):
            rows.append([products[j][i][t] for i in range(k)])
            rhs.append(bj[t])
    lam = solve(rows, rhs, field)
    if lam is None:
        raise SolverInconsistent("no identity element found in the ideal")
    e = [0] * n
    for c, b in zip(lam, basis):
        if c:
            e = [field.add(x, field.mul(c, y)) for x, y in zip(e, b)]
    e = tuple(e)
    if convolve(group, field, e, e) != e:  # pragma: no cover - semisimple ideals have a unit
        raise SolverInconsistent("solution is not idempotent")
    return e


def ideal_from_element(group: ElemAbelianGroup, field: FieldSpec, v, provenance: str = "generator") -> GroupCode:
    """The ideal spanned by all translates of v."""
    _require_semisimple(group, field)
    v = tuple(field.coerce(c) for c in v)
    if len(v) != group.order:
        raise NotAnElement(f"expected {group.order} coefficients, got {len(v)}")
    rows = [translation_perm(group, h).apply(v) for h in range(group.order)]
    code = rref_canonical(rows, field, group.order)
    return GroupCode(group, field, code, idempotent_of_ideal(group, field, code), provenance)


def group_code_from_json(obj: dict) -> GroupCode:
    group = ElemAbelianGroup(int(obj["p"]), int(obj["d"]))
    field = field_from_json(obj["field"])
    if obj.get("generator") is not None:
        return ideal_from_element(group, field, obj["generator"])
    code = rref_canonical(obj["basis"], field, group.order)
    return GroupCode(group, field, code, idempotent_of_ideal(group, field, code), "basis")


@lru_cache(maxsize=None)
def enumerate_group_ideals(group: ElemAbelianGroup, field: FieldSpec) -> tuple[GroupCode, ...]:
    """Every ideal of F_q[H], found by scanning all q^|H| elements for idempotents."""
    _require_semisimple(group, field)
    n, q = group.order, field.q
    if q**n > IDEAL_ENUM_CAP:
        raise ValueError(f"q^|H| = {q**n} elements exceeds the enumeration cap {IDEAL_ENUM_CAP}")
    vecs = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    sub = group.sub_table
    # square[:, t] = sum_x v_x v_{t - x}
    if field.k == 1:
        square = np.einsum("mx,mtx->mt", vecs, vecs[:, sub]) % field.p
    else:
        add, mul, _ = field.np_tables
        square = np.zeros_like(vecs)
        for x in range(n):
            square = add[square, mul[vecs[:, x, None], vecs[:, sub[:, x]]]]
    idem = vecs[(square == vecs).all(axis=1)]
    out = []
    for e in idem.tolist():
        gc = ideal_from_element(group, field, e, "idempotent-enumeration")
        if gc.idempotent != tuple(e):  # pragma: no cover - uniqueness of idempotents
            raise AssertionError("ideal has two generating idempotents")
        out.append(gc)
    return tuple(sorted(out, key=lambda g: (g.dim, g.code.basis)))


@lru_cache(maxsize=None)
def gl_matrices(d: int, p: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """GL(d, p): the identity first, then the rest in lexicographic order."""
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    out = [ident]
    for flat in itertools.product(range(p), repeat=d * d):
        a = tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d))
        if a != ident and _rank_mod_p(a, p) == d:
            out.append(a)
    return tuple(out)


def _rank_mod_p(a, p: int) -> int:
    m = [list(r) for r in a]
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def matrix_perm(group: ElemAbelianGroup, a) -> Permutation:
    """The coordinate permutation x -> A x induced by A in GL(d, p)."""
    p = group.p
    imgs = []
    for x in group.elements:
        y = [sum(a[i][j] * x[j] for j in range(group.d)) % p for i in range(group.d)]
        imgs.append(group.index(y))
    return Permutation(tuple(imgs))


def cayley_equivalent_groupcodes(i: GroupCode, j: GroupCode):
    """First A in GL(d, p) whose induced permutation maps I onto J, or None."""
    if i.group != j.group or i.field != j.field:
        raise GroupMismatch("codes live over different groups or fields")
    if i.dim != j.dim:
        return None
    for a in gl_matrices(i.group.d, i.group.p):
        if permute_code(i.code, matrix_perm(i.group, a)) == j.code:
            return a
    return None


def verify_ci_groupcode(code: GroupCode, cap: int = DEFAULT_CAP, threads: int = 1) -> CIReport:
    """Every translation-invariant image I^g, g in Sym(p^d), must be some I^A, A in GL(d, p)."""
    group, field = code.group, code.field
    n = group.order
    _require_cap(n, cap)
    t0 = time.perf_counter()
    lin = code.code
    basis, checks = _arrays(lin)
    gens = [translation_perm(group, g).images for g in group.generators()]
    targets: list[LinearCode] = []
    for a in gl_matrices(group.d, group.p):
        k = permute_code(lin, matrix_perm(group, a))
        if k not in targets:
            targets.append(k)
    target_checks = [_arrays(t)[1] for t in targets]

    def work(block):
        inv_ok = np.ones(block.shape[0], dtype=bool)
        for gen in gens:
            inv_ok &= _invariant_under_conjugates(basis, checks, block, gen, field)
        sub = block[inv_ok]
        matched = np.zeros(sub.shape[0], dtype=bool)
        for tc in target_checks:
            matched |= maps_into(basis, sub, tc, field)
        return int(inv_ok.sum()), sub[~matched]

    checked = images = 0
    counter = None
    for block, (ninv, bad) in _scan(n, work, threads):
        checked += block.shape[0]
        images += ninv
        if bad.shape[0]:
            g = Permutation(tuple(bad[0].tolist()))
            counter = {"permutation": g.to_json(), "code_basis": lin.to_json()["basis"],
                       "image_basis": permute_code(lin, g).to_json()["basis"]}
            break
    return CIReport(n, checked, images, counter, (time.perf_counter() - t0) * 1000,
                    {"p": group.p, "d": group.d, "dim": code.dim})

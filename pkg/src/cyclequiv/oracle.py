"""Brute-force ground truth over Sym(n) for small n.

Everything here scans permutations in lexicographic order, in numpy chunks,
so "first found" answers are reproducible.  Groups are explicit element lists.
"""

from __future__ import annotations

import itertools
import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
from sympy.ntheory import factorint

from .cycliccode import CyclicCode
from .errors import CapExceeded, FieldMismatch, LengthMismatch, NotASubgroup, PreconditionFailed
from .gf import FieldSpec
from .linearcode import LinearCode, Permutation, permute_code
from .polyring import RingElement
from .solving import multiplier_perm, units

DEFAULT_CAP = 4_000_000
CHUNK = 20_000
MAX_CLOSURE_DEGREE = 10


def factorial_fits(n: int, cap: int) -> bool:
    return math.factorial(n) <= cap


def _require_cap(n: int, cap: int):
    if not factorial_fits(n, cap):
        raise CapExceeded(f"{n}! = {math.factorial(n)} permutations exceeds cap {cap}")
    if n > 8:
        warnings.warn(f"scanning Sym({n}) ({math.factorial(n)} permutations) is slow", stacklevel=3)


def perm_chunks(n: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """All permutations of range(n) in lexicographic order, as (m, n) arrays."""
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), n)


def _scan(n: int, fn: Callable[[np.ndarray], object], threads: int = 1) -> Iterator[tuple[np.ndarray, object]]:
    """Apply fn to each chunk, yielding (chunk, result) in lexicographic order."""
    if threads <= 1:
        for block in perm_chunks(n):
            yield block, fn(block)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        blocks = list(perm_chunks(n))
        yield from zip(blocks, pool.map(fn, blocks))


# -- vectorized field kernels ---------------------------------------------------

def annihilated(vectors: np.ndarray, checks: np.ndarray, field: FieldSpec) -> np.ndarray:
    """For vectors of shape (..., n): whether every check row is orthogonal to it."""
    if checks.shape[0] == 0:
        return np.ones(vectors.shape[:-1], dtype=bool)
    if field.k == 1:
        return ((vectors @ checks.T) % field.p == 0).all(axis=-1)
    add, mul, _ = field.np_tables
    acc = np.zeros(vectors.shape[:-1] + (checks.shape[0],), dtype=np.int64)
    for j in range(vectors.shape[-1]):
        acc = add[acc, mul[vectors[..., j, None], checks[:, j]]]
    return (acc == 0).all(axis=-1)


def _arrays(code: LinearCode) -> tuple[np.ndarray, np.ndarray]:
    n = code.n
    basis = np.array(code.basis, dtype=np.int64).reshape(code.dim, n)
    checks = np.array(code.check_matrix, dtype=np.int64).reshape(len(code.check_matrix), n)
    return basis, checks


def maps_into(basis: np.ndarray, perms: np.ndarray, checks: np.ndarray, field: FieldSpec) -> np.ndarray:
    """For each permutation g (rows of perms): whether every basis row of C^g passes checks."""
    if basis.shape[0] == 0:
        return np.ones(perms.shape[0], dtype=bool)
    inv = np.argsort(perms, axis=1)
    moved = basis[:, inv]  # (k, m, n): v^g = v[g^{-1}]
    return annihilated(moved, checks, field).all(axis=0)


# -- permutation groups -------------------------------------------------------------

@dataclass(frozen=True)
class PermGroup:
    """Finite permutation group stored as its sorted element list."""

    n: int
    elements: tuple[tuple[int, ...], ...]
    label: str = dc_field(default="", compare=False)

    @classmethod
    def from_elements(cls, n: int, elems: Iterable[Sequence[int]], label: str = "") -> "PermGroup":
        return cls(n, tuple(sorted({tuple(int(x) for x in e) for e in elems})), label)

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]], label: str = "") -> "PermGroup":
        gens = [tuple(g) for g in gens]
        ident = tuple(range(n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(g[i] for i in a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls.from_elements(n, seen, label)

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        return cls(n, tuple(itertools.permutations(range(n))), f"Sym({n})")

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls(n, (tuple(range(n)),), "1")

    @classmethod
    def shift_group(cls, n: int) -> "PermGroup":
        """H_R for H = Z_n: the translations i -> i + s."""
        return cls.from_elements(n, [tuple((i + s) % n for i in range(n)) for s in range(n)], f"Z_{n}")

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, g) -> bool:
        if isinstance(g, Permutation):
            g = g.images
        return tuple(g) in self._set

    def __iter__(self):
        return (Permutation(e) for e in self.elements)

    def __le__(self, other: "PermGroup") -> bool:
        return self.n == other.n and self._set <= other._set

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.n)

    def is_group(self) -> bool:
        s = self._set
        if tuple(range(self.n)) not in s:
            return False
        return all(tuple(b[i] for i in a) in s for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {"n": self.n, "order": self.order, "label": self.label}


@dataclass(frozen=True)
class TwoOrbitPartition:
    """Orbits of G on ordered pairs; ``labels[a][b]`` numbers the orbit of (a, b)."""

    n: int
    labels: tuple[tuple[int, ...], ...]

    @property
    def num_classes(self) -> int:
        return 1 + max(max(r) for r in self.labels) if self.n else 0

    def classes(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.num_classes)]
        for a in range(self.n):
            for b in range(self.n):
                out[self.labels[a][b]].append((a, b))
        return out


def two_orbits(g: PermGroup) -> TwoOrbitPartition:
    n = g.n
    labels = [[-1] * n for _ in range(n)]
    arr = g.array
    nxt = 0
    for a in range(n):
        for b in range(n):
            if labels[a][b] >= 0:
                continue
            for x, y in set(zip(arr[:, a].tolist(), arr[:, b].tolist())):
                labels[x][y] = nxt
            nxt += 1
    return TwoOrbitPartition(n, tuple(tuple(r) for r in labels))


def colored_digraph_automorphisms(colors: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """All g with colors[g(a)][g(b)] == colors[a][b], in lexicographic order."""
    n = len(colors)
    sig = [
        (colors[v][v], tuple(sorted(map(repr, colors[v]))), tuple(sorted(repr(colors[u][v]) for u in range(n))))
        for v in range(n)
    ]
    cands = [[w for w in range(n) if sig[w] == sig[v]] for v in range(n)]
    out: list[tuple[int, ...]] = []
    img = [0] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            out.append(tuple(img))
            return
        for w in cands[i]:
            if used[w]:
                continue
            if all(colors[j][i] == colors[img[j]][w] and colors[i][j] == colors[w][img[j]] for j in range(i)):
                img[i] = w
                used[w] = True
                extend(i + 1)
                used[w] = False

    extend(0)
    return out


def two_closure(g: PermGroup) -> PermGroup:
    """All permutations preserving every 2-orbit of g."""
    if g.n > MAX_CLOSURE_DEGREE:
        raise CapExceeded(f"2-closure limited to degree {MAX_CLOSURE_DEGREE}, got {g.n}")
    orb = two_orbits(g)
    closed = PermGroup.from_elements(g.n, colored_digraph_automorphisms(orb.labels),
                                     f"{g.label}^(2)" if g.label else "")
    if not g <= closed or two_orbits(closed) != orb:  # pragma: no cover - closure invariant
        raise AssertionError("2-closure is not 2-equivalent to its input")
    return closed


def cayley_automorphism_group(e: RingElement) -> PermGroup:
    """Aut(Cay(Z_n, e)): the centralizer of circulant(e) in Sym(n)."""
    n, c = e.n, e.coeffs
    colors = [[c[(x - y) % n] for y in range(n)] for x in range(n)]
    return PermGroup.from_elements(n, colored_digraph_automorphisms(colors), f"Aut(Cay(Z_{n},e))")


# -- equivalence and automorphisms by exhaustive search ------------------------------

@dataclass(frozen=True)
class OracleReport:
    checked: int
    witness: Permutation | None
    elapsed_ms: float

    def to_json(self, timings: bool = True) -> dict:
        return {"checked": self.checked,
                "witness": self.witness.to_json() if self.witness else None,
                "elapsed_ms": round(self.elapsed_ms, 3) if timings else 0.0}


def equivalence_search(c: LinearCode, d: LinearCode, cap: int = DEFAULT_CAP, threads: int = 1) -> OracleReport:
    if c.n != d.n:
        raise LengthMismatch(f"code lengths {c.n} and {d.n} differ")
    if c.field != d.field:
        raise FieldMismatch(f"{c.field!r} vs {d.field!r}")
    n = c.n
    _require_cap(n, cap)
    t0 = time.perf_counter()
    if c.dim != d.dim:
        return OracleReport(0, None, (time.perf_counter() - t0) * 1000)
    basis, _ = _arrays(c)
    _, checks = _arrays(d)
    checked = 0
    for block, ok in _scan(n, lambda b: maps_into(basis, b, checks, c.field), threads):
        hits = np.flatnonzero(ok)
        if hits.size:
            checked += int(hits[0]) + 1
            w = Permutation(tuple(block[hits[0]].tolist()))
            return OracleReport(checked, w, (time.perf_counter() - t0) * 1000)
        checked += block.shape[0]
    return OracleReport(checked, None, (time.perf_counter() - t0) * 1000)


def equivalence_bruteforce(c: LinearCode, d: LinearCode, cap: int = DEFAULT_CAP, threads: int = 1) -> Permutation | None:
    """Lexicographically first g in Sym(n) with C^g = D, or None."""
    return equivalence_search(c, d, cap, threads).witness


def paut_bruteforce(c: LinearCode, cap: int = DEFAULT_CAP, threads: int = 1) -> PermGroup:
    """PAut(C) = {g : C^g = C} by a full scan of Sym(n)."""
    _require_cap(c.n, cap)
    basis, checks = _arrays(c)
    elems = []
    for block, ok in _scan(c.n, lambda b: maps_into(basis, b, checks, c.field), threads):
        elems.extend(map(tuple, block[ok].tolist()))
    return PermGroup(c.n, tuple(elems), "PAut")


def fixes_code(c: LinearCode, perms: np.ndarray) -> np.ndarray:
    basis, checks = _arrays(c)
    return maps_into(basis, perms, checks, c.field)


# -- fusion control -------------------------------------------------------------------

def fusion_control_check(y: PermGroup, z: PermGroup, n: int | None = None) -> bool:
    """Whether Y controls fusion of the regular cyclic group in Z.

    True iff every regular cyclic subgroup <c> of Z (c an n-cycle) has a
    Z-conjugate z^{-1} c z lying in Y.
    """
    n = z.n if n is None else n
    if y.n != n or z.n != n:
        raise LengthMismatch("groups must act on the same n points")
    if not y <= z:
        raise NotASubgroup("Y is not contained in Z")
    zarr = z.array
    zinv = np.argsort(zarr, axis=1)
    ncycles = [e for e in z.elements if Permutation(e).cycle_type() == [n]]
    pending = set(ncycles)
    while pending:
        c = np.array(pending.pop(), dtype=np.int64)
        # (z^{-1} c z)(i) = z(c(z^{-1}(i)))
        conj = np.take_along_axis(zarr, c[zinv], axis=1)
        orbit = set(map(tuple, conj.tolist()))
        pending -= orbit
        if not any(o in y for o in orbit):
            return False
    return True


# -- CI verification for cyclic codes ------------------------------------------------------

@dataclass(frozen=True)
class CIReport:
    n: int
    checked: int
    cyclic_images: int
    counterexample: dict | None
    elapsed_ms: float
    subject: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self, timings: bool = True) -> dict:
        return {"subject": self.subject, "checked": self.checked, "cyclic_images": self.cyclic_images,
                "counterexample": self.counterexample, "passed": self.passed,
                "elapsed_ms": round(self.elapsed_ms, 3) if timings else 0.0}


def _invariant_under_conjugates(basis, checks, perms, gen, field) -> np.ndarray:
    """For each g: whether C^g is invariant under the permutation gen."""
    inv = np.argsort(perms, axis=1)
    gen = np.asarray(gen, dtype=np.int64)
    # conj = g * gen * g^{-1} (apply g, then gen, then g^{-1}); C^g gen-invariant iff C^conj = C
    conj = np.take_along_axis(inv, gen[perms], axis=1)
    return maps_into(basis, conj, checks, field)


def verify_ci_code(code: CyclicCode, cap: int = DEFAULT_CAP, threads: int = 1) -> CIReport:
    """Check that every cyclic image I^g of the code is a multiplier image."""
    n, field = code.n, code.field
    _require_cap(n, cap)
    t0 = time.perf_counter()
    lin = code.linear
    basis, checks = _arrays(lin)
    shift = [(i + 1) % n for i in range(n)]
    targets = []
    for m in units(n):
        k = permute_code(lin, multiplier_perm(m, n))
        if all(k != t for _, t in targets):
            targets.append((m, k))
    target_checks = [_arrays(t)[1] for _, t in targets]

    def work(block):
        cyc = _invariant_under_conjugates(basis, checks, block, shift, field)
        sub = block[cyc]
        matched = np.zeros(sub.shape[0], dtype=bool)
        for tc in target_checks:
            matched |= maps_into(basis, sub, tc, field)
        return int(cyc.sum()), sub[~matched]

    checked = cyclic = 0
    counter = None
    for block, (ncyc, bad) in _scan(n, work, threads):
        checked += block.shape[0]
        cyclic += ncyc
        if bad.shape[0]:
            g = Permutation(tuple(bad[0].tolist()))
            image = permute_code(lin, g)
            counter = {"permutation": g.to_json(), "code_basis": lin.to_json()["basis"],
                       "image_basis": image.to_json()["basis"]}
            break
    return CIReport(n, checked, cyclic, counter, (time.perf_counter() - t0) * 1000,
                    {"cosets": [list(c) for c in code.zero_cosets], "dim": code.dim})


def verify_theorem_2closed(c: LinearCode, g: PermGroup) -> bool:
    """For G <= PAut(C) with gcd(|G|, char) = 1: whether G^(2) <= PAut(C)."""
    if g.n != c.n:
        raise LengthMismatch(f"group degree {g.n} != code length {c.n}")
    if g.n > 8:
        raise CapExceeded(f"degree {g.n} > 8")
    if not fixes_code(c, g.array).all():
        raise PreconditionFailed("G is not contained in PAut(C)")
    if gcd(g.order, c.field.char) != 1:
        raise PreconditionFailed(f"|G| = {g.order} is not coprime to the characteristic {c.field.char}")
    closure = two_closure(g)
    return bool(fixes_code(c, closure.array).all())


def is_prime_power(m: int) -> bool:
    return m == 1 or len(factorint(m)) == 1

"""Row reduction, null spaces and linear solves over a FieldSpec.

Vectors are sequences of integer-encoded field elements.  Over F_2 the row
reduction packs each row into a Python int and eliminates with XOR.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .gf import FieldSpec

Matrix = list[list[int]]


def _rref_gf2(rows: Sequence[Sequence[int]], n: int) -> tuple[Matrix, list[int]]:
    packed = [sum(1 << j for j, c in enumerate(r) if c) for r in rows]
    packed = [r for r in packed if r]
    pivots: list[int] = []
    basis: list[int] = []
    for col in range(n):
        bit = 1 << col
        idx = next((i for i, r in enumerate(packed) if r & bit), None)
        if idx is None:
            continue
        piv = packed.pop(idx)
        packed = [r ^ piv if r & bit else r for r in packed]
        basis = [b ^ piv if b & bit else b for b in basis]
        basis.append(piv)
        pivots.append(col)
        packed = [r for r in packed if r]
        if not packed:
            break
    out = [[(b >> j) & 1 for j in range(n)] for b in basis]
    return out, pivots


def _rref_numpy(rows: Sequence[Sequence[int]], field: FieldSpec, n: int) -> tuple[Matrix, list[int]]:
    m = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    m = m[m.any(axis=1)]
    prime = field.k == 1
    p = field.p
    if not prime:
        add, mul, neg = field.np_tables
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m.shape[0]:
            break
        nz = np.flatnonzero(m[r:, col])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        s = field.inv(int(m[r, col]))
        if prime:
            m[r] = m[r] * s % p
            f = m[:, col].copy()
            f[r] = 0
            m = (m - f[:, None] * m[r][None, :]) % p
        else:
            m[r] = mul[s, m[r]]
            f = neg[m[:, col]]
            f[r] = 0
            m = add[m, mul[f[:, None], m[r][None, :]]]
        pivots.append(col)
        r += 1
    return m[:r].tolist(), pivots


def rref(rows: Sequence[Sequence[int]], field: FieldSpec, n: int) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon basis of the row span and its pivot columns."""
    if field.q == 2:
        return _rref_gf2(rows, n)
    if len(rows) * n > 64 and field.q <= 256:
        return _rref_numpy(rows, field, n)
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][col])
        if s != 1:
            m[r] = [mul(s, x) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            c = m[i][col]
            if i != r and c:
                nc = neg(c)
                row = m[i]
                m[i] = [add(x, mul(nc, y)) if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[int]], field: FieldSpec, n: int) -> int:
    return len(rref(rows, field, n)[1])


def nullspace(rows: Sequence[Sequence[int]], field: FieldSpec, n: int) -> Matrix:
    """Basis of {x : M x = 0} for the matrix with the given rows and n columns."""
    red, pivots = rref(rows, field, n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = field.neg(row[f])
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence[int]], b: Sequence[int], field: FieldSpec) -> list[int] | None:
    """One solution x of A x = b, or None if the system is inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], field: FieldSpec) -> Matrix:
    if field.q <= 256 and a and b:
        x = np.array(a, dtype=np.int64)
        y = np.array(b, dtype=np.int64)
        if field.k == 1:
            return ((x @ y) % field.p).tolist()
        add, mul, _ = field.np_tables
        acc = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
        for j in range(x.shape[1]):
            acc = add[acc, mul[x[:, j, None], y[j][None, :]]]
        return acc.tolist()
    add, mul = field.add, field.mul
    bt = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(new)
    return out

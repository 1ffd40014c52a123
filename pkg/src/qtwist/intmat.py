"""Exact integer matrix normal forms.

Matrices are plain lists of lists of Python ints so that entries never
overflow. Two normal forms are provided:

* ``hnf_rows``: the row-style Hermite normal form of the Z-span of a set of
  row vectors (positive pivots, entries above each pivot reduced into
  ``[0, pivot)``), which is a canonical basis of the lattice.
* ``smith``: the Smith normal form ``U @ A @ V == D`` with the unimodular
  transforms and their inverses.
"""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of an (m x k) and a (k x n) matrix.

    ``inner`` gives k explicitly when ``a`` has no rows to infer it from.
    """
    k = len(b) if inner is None else inner
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * n
        for t in range(k):
            c = row[t]
            if c:
                brow = b[t]
                for j in range(n):
                    if brow[j]:
                        acc[j] += c * brow[j]
        out.append(acc)
    return out


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def hnf_rows(rows, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical Hermite basis of the lattice spanned by ``rows``.

    The result is in row echelon form with strictly increasing pivot
    columns, positive pivots, and every entry above a pivot reduced into
    ``[0, pivot)``. Two row sets span the same lattice iff their results are
    equal.
    """
    pending = [list(r) for r in rows if any(r)]
    for r in pending:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)}, expected {ncols}")
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        active = [r for r in pending if r[col] != 0]
        rest = [r for r in pending if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            survivors = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                if q:
                    for j in range(col, ncols):
                        r[j] -= q * p[j]
                if r[col] != 0:
                    survivors.append(r)
                elif any(r[col + 1:]):
                    rest.append(r)
            active = survivors
        if active:
            p = active[0]
            if p[col] < 0:
                p = [-v for v in p]
            basis.append(p)
            pivots.append(col)
        pending = rest
    for i in range(len(basis)):
        pc, pv = pivots[i], basis[i][pivots[i]]
        for k in range(i):
            q = basis[k][pc] // pv
            if q:
                row_k = basis[k]
                for j in range(pc, ncols):
                    row_k[j] -= q * basis[i][j]
    return tuple(tuple(r) for r in basis)


def hnf_contains(basis, vec) -> bool:
    """Membership of ``vec`` in the lattice with Hermite basis ``basis``."""
    v = list(vec)
    for row in basis:
        pc = next(j for j, x in enumerate(row) if x)
        if v[pc] % row[pc]:
            return False
        q = v[pc] // row[pc]
        if q:
            for j in range(pc, len(v)):
                v[j] -= q * row[j]
    return not any(v)


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular.

    ``diagonal`` lists the nonzero invariant factors d_0 | d_1 | ..., so
    ``rank == len(diagonal)``.
    """

    diagonal: list[int]
    U: Matrix
    Uinv: Matrix
    V: Matrix
    Vinv: Matrix

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith(a: Matrix, nrows: int | None = None, ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms, choosing the smallest pivot each step."""
    m = len(a) if nrows is None else nrows
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    A = [list(r) for r in a]
    U, Uinv = identity(m), identity(m)
    V, Vinv = identity(n), identity(n)

    def row_add(i, j, c):  # row_i += c * row_j
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui[k] += c * Uj[k]
        for r in Uinv:
            if r[i]:
                r[j] -= c * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_add(i, j, c):  # col_i += c * col_j
        for r in A:
            if r[j]:
                r[i] += c * r[j]
        for r in V:
            if r[j]:
                r[i] += c * r[j]
        Vi, Vj = Vinv[i], Vinv[j]
        for k in range(n):
            if Vi[k]:
                Vj[k] -= c * Vi[k]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    diagonal = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
            cand = None
            for i in range(t + 1, m):
                if A[i][t] and (cand is None or abs(A[i][t]) < abs(cand[2])):
                    cand = ("r", i, A[i][t])
            for j in range(t + 1, n):
                if A[t][j] and (cand is None or abs(A[t][j]) < abs(cand[2])):
                    cand = ("c", j, A[t][j])
            if cand is not None:
                if cand[0] == "r":
                    row_swap(t, cand[1])
                else:
                    col_swap(t, cand[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        diagonal.append(A[t][t])
    return SmithForm(diagonal, U, Uinv, V, Vinv)


def kernel_basis(a: Matrix, ncols: int) -> tuple[Matrix, Matrix]:
    """Z-basis of the integer kernel of ``a`` (m x ncols).

    Returns ``(K, Kcoords)``: the columns of ``K`` (ncols x k) form a basis of
    ``{v : a @ v == 0}`` and ``Kcoords`` (k x ncols) maps any kernel vector to
    its coordinates in that basis.
    """
    sf = smith(a, len(a), ncols)
    r = sf.rank
    K = [row[r:] for row in sf.V]
    Kcoords = [list(row) for row in sf.Vinv[r:]]
    return K, Kcoords


"""Hot loops over finite operation tables.

Each kernel has a numba ``@njit`` implementation and a pure-numpy one. The
numba path is used when numba imports and ``QTWIST_DISABLE_NUMBA`` is unset
(or ``0``); every public function also takes ``backend="numba"|"numpy"`` so
both paths can be exercised side by side.

Relators are passed in a flat encoding built by ``encode_relators``:
``bases[2r]``/``bases[2r+1]`` are the base generators of the two sides of
relator r, ``starts``/``stops`` delimit their letters in ``letter_gen`` and
``letter_sign``, and ``level[r]`` is the largest generator index the
relator mentions (it is checked once that generator has a value).
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

DEFAULT_BACKEND = (
    "numba"
    if HAVE_NUMBA and os.environ.get("QTWIST_DISABLE_NUMBA", "0").lower() in ("", "0", "false", "no")
    else "numpy"
)

AXIOM_OK, AXIOM_Q1, AXIOM_Q2, AXIOM_Q3 = 0, 1, 2, 3


def _resolve(backend):
    backend = backend or DEFAULT_BACKEND
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def _jit(func):
    return numba.njit(cache=True)(func) if HAVE_NUMBA else func


# --- axioms -----------------------------------------------------------------


@_jit
def _axioms_loop(T):
    n = T.shape[0]
    for x in range(n):
        if T[x, x] != x:
            return AXIOM_Q1, x, x, x
    seen = np.empty(n, dtype=np.int64)
    for y in range(n):
        seen[:] = -1
        for z in range(n):
            v = T[z, y]
            if seen[v] >= 0:
                return AXIOM_Q2, v, y, z
            seen[v] = z
    for x in range(n):
        for y in range(n):
            xy = T[x, y]
            for z in range(n):
                if T[xy, z] != T[T[x, z], T[y, z]]:
                    return AXIOM_Q3, x, y, z
    return AXIOM_OK, -1, -1, -1


def _axioms_numpy(T):
    n = T.shape[0]
    idx = np.arange(n)
    bad = np.nonzero(T[idx, idx] != idx)[0]
    if bad.size:
        x = int(bad[0])
        return AXIOM_Q1, x, x, x
    cols = np.sort(T, axis=0)
    bad_cols = np.nonzero((cols != idx[:, None]).any(axis=0))[0]
    if bad_cols.size:
        y = int(bad_cols[0])
        col = T[:, y]
        # first z whose value was already produced by an earlier z
        _, first = np.unique(col, return_index=True)
        z = int(np.setdiff1d(idx, first)[0])
        return AXIOM_Q2, int(col[z]), y, z
    lhs = T[T[:, :, None], idx[None, None, :]]  # (x^y)^z
    rhs = T[T[:, None, :], T[None, :, :]]  # (x^z)^(y^z)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        return AXIOM_Q3, x, y, z
    return AXIOM_OK, -1, -1, -1


# --- coloring search --------------------------------------------------------


@_jit
def _eval_side(T, Tinv, assign, base, start, stop, letter_gen, letter_sign):
    e = assign[base]
    for t in range(start, stop):
        c = assign[letter_gen[t]]
        if letter_sign[t] > 0:
            e = T[e, c]
        else:
            e = Tinv[e, c]
    return e


@_jit
def _colorings_dfs(T, Tinv, ngens, bases, starts, stops, letter_gen, letter_sign, level):
    # depth-first in generator order; ngens >= 1
    n = T.shape[0]
    nrel = level.shape[0]
    cap = 64
    out = np.empty((cap, ngens), dtype=np.int64)
    count = 0
    assign = np.full(ngens, -1, dtype=np.int64)
    pos = 0
    while pos >= 0:
        assign[pos] += 1
        if assign[pos] >= n:
            assign[pos] = -1
            pos -= 1
            continue
        ok = True
        for r in range(nrel):
            if level[r] != pos:
                continue
            a = _eval_side(T, Tinv, assign, bases[2 * r], starts[2 * r], stops[2 * r],
                           letter_gen, letter_sign)
            b = _eval_side(T, Tinv, assign, bases[2 * r + 1], starts[2 * r + 1],
                           stops[2 * r + 1], letter_gen, letter_sign)
            if a != b:
                ok = False
                break
        if not ok:
            continue
        if pos == ngens - 1:
            if count == cap:
                bigger = np.empty((2 * cap, ngens), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = assign
            count += 1
        else:
            pos += 1
    return out[:count].copy()


def _colorings_numpy(T, Tinv, ngens, bases, starts, stops, letter_gen, letter_sign, level):
    # breadth-first: extend every partial assignment by one generator, filter
    n = T.shape[0]
    frontier = np.zeros((1, 0), dtype=np.int64)
    values = np.arange(n, dtype=np.int64)
    for pos in range(ngens):
        f = frontier.shape[0]
        nxt = np.empty((f * n, pos + 1), dtype=np.int64)
        nxt[:, :pos] = np.repeat(frontier, n, axis=0)
        nxt[:, pos] = np.tile(values, f)
        keep = np.ones(nxt.shape[0], dtype=bool)
        for r in np.nonzero(level == pos)[0]:
            sides = []
            for s in (2 * r, 2 * r + 1):
                e = nxt[:, bases[s]]
                for t in range(starts[s], stops[s]):
                    c = nxt[:, letter_gen[t]]
                    e = T[e, c] if letter_sign[t] > 0 else Tinv[e, c]
                sides.append(e)
            keep &= sides[0] == sides[1]
        frontier = nxt[keep]
        if frontier.shape[0] == 0:
            return np.zeros((0, ngens), dtype=np.int64)
    return frontier


def axiom_witness(table: np.ndarray, backend: str | None = None):
    """``(code, x, y, z)`` for the first failing axiom, or ``(AXIOM_OK, -1, -1, -1)``."""
    T = np.ascontiguousarray(table, dtype=np.int64)
    if _resolve(backend) == "numba":
        return tuple(int(v) for v in _axioms_loop(T))
    return _axioms_numpy(T)


def colorings(table, inv_table, ngens, encoded, backend: str | None = None) -> np.ndarray:
    """All assignments (rows, lexicographic) satisfying every encoded relator."""
    T = np.ascontiguousarray(table, dtype=np.int64)
    Tinv = np.ascontiguousarray(inv_table, dtype=np.int64)
    if ngens == 0:
        return np.zeros((1 if encoded[-1].size == 0 else 0, 0), dtype=np.int64)
    if _resolve(backend) == "numba":
        return _colorings_dfs(T, Tinv, ngens, *encoded)
    return _colorings_numpy(T, Tinv, ngens, *encoded)


def encode_relators(relators):
    """Flatten ``[(lhs, rhs), ...]`` of free-quandle words for the kernels."""
    bases, starts, stops, gens, signs, level = [], [], [], [], [], []
    for lhs, rhs in relators:
        top = 0
        for w in (lhs, rhs):
            bases.append(w.base)
            starts.append(len(gens))
            for g, s in w.tail:
                gens.append(g)
                signs.append(s)
            stops.append(len(gens))
            top = max([top, w.base, *(g for g, _ in w.tail)])
        level.append(top)
    arr = lambda v: np.asarray(v, dtype=np.int64)
    return arr(bases), arr(starts), arr(stops), arr(gens), arr(signs), arr(level)

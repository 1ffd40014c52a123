"""Finite quandles, free quandle words, presentations and colorings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NonHomomorphism, QuandleAxiomError, StructuralError

AXIOM_NAMES = {_kernels.AXIOM_Q1: "Q1", _kernels.AXIOM_Q2: "Q2", _kernels.AXIOM_Q3: "Q3"}


@dataclass(frozen=True)
class Violation:
    """First failing instance of a named identity."""

    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise StructuralError(f"ragged or non-integer table: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise StructuralError(f"table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise StructuralError("a quandle is non-empty")
    if arr.min() < 0 or arr.max() >= n:
        raise StructuralError(f"table entries must lie in [0, {n})")
    return arr


def check_axioms(table, backend: str | None = None) -> Violation | None:
    """Exhaustive check of (Q1)-(Q3); returns ``None`` when they all hold.

    Witnesses: ``Q1 -> (x,)``, ``Q2 -> (x, y, z)`` where ``z`` is a second
    preimage of ``x`` under ``-^y``, ``Q3 -> (x, y, z)``.
    """
    arr = _as_table(table)
    code, x, y, z = _kernels.axiom_witness(arr, backend)
    if code == _kernels.AXIOM_OK:
        return None
    if code == _kernels.AXIOM_Q1:
        return Violation("Q1", (x,))
    return Violation(AXIOM_NAMES[code], (x, y, z))


class FiniteQuandle:
    """Quandle on ``{0, ..., n-1}`` with ``table[x, y] == x^y``.

    The table is validated on construction; ``inv_table[x, y]`` is the unique
    ``z`` with ``z^y == x``.
    """

    def __init__(self, table, name: str | None = None, check: bool = True):
        arr = _as_table(table)
        if check:
            bad = check_axioms(arr)
            if bad is not None:
                raise QuandleAxiomError(bad)
        n = arr.shape[0]
        inv = np.empty_like(arr)
        cols = np.arange(n)
        for y in range(n):
            inv[arr[:, y], y] = cols
        arr.setflags(write=False)
        inv.setflags(write=False)
        self.table = arr
        self.inv_table = inv
        self.name = name or f"Q{n}"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def op(self, x: int, y: int, sign: int = 1) -> int:
        return int(self.table[x, y] if sign > 0 else self.inv_table[x, y])

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteQuandle({self.name}, order={self.order})"

    def relabel(self, perm) -> "FiniteQuandle":
        """Isomorphic copy in which element ``x`` is renamed ``perm[x]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(perm)
        T = self.table
        new = perm[T[inv[:, None], inv[None, :]]]
        return FiniteQuandle(new, name=f"{self.name}'")


def is_connected(X: FiniteQuandle) -> tuple[bool, list[list[int]]]:
    """Orbits of the inner automorphism group; connected iff there is one orbit."""
    n = X.order
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(n):
        for y in range(n):
            a, b = find(x), find(int(X.table[x, y]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for x in range(n):
        orbits.setdefault(find(x), []).append(x)
    parts = sorted(orbits.values())
    return len(parts) == 1, parts


def is_homomorphism(rho, Q: FiniteQuandle, X: FiniteQuandle) -> bool:
    rho = np.asarray(rho, dtype=np.int64)
    if rho.shape != (Q.order,) or rho.min() < 0 or rho.max() >= X.order:
        return False
    return bool(np.array_equal(rho[Q.table], X.table[rho[:, None], rho[None, :]]))


def check_homomorphism(rho, Q: FiniteQuandle, X: FiniteQuandle):
    if not is_homomorphism(rho, Q, X):
        raise NonHomomorphism(f"{list(rho)} is not a homomorphism {Q.name} -> {X.name}")


# --- free quandle words -----------------------------------------------------

Letter = tuple[int, int]


def _canonical(base: int, letters) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1):
            raise StructuralError(f"letter sign must be +-1, got {s}")
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    start = 0
    while start < len(stack) and stack[start][0] == base:
        start += 1
    return tuple(stack[start:])


@dataclass(frozen=True)
class FreeQuandleElement:
    """Element ``base^(tail)`` of the free quandle, in canonical form.

    In the conjugation model the element is the free-group conjugate
    ``w^-1 x_base w`` with ``w`` the tail; the tail is freely reduced and has
    leading powers of the base letter stripped, which makes structural
    equality coincide with equality in FQ(S).
    """

    base: int
    tail: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", _canonical(self.base, self.tail))

    @classmethod
    def gen(cls, i: int) -> "FreeQuandleElement":
        return cls(i, ())

    def generators(self) -> set[int]:
        return {self.base, *(g for g, _ in self.tail)}

    def __pow__(self, other):
        # x ** y stands for x^y
        return fq_operate(self, other, 1)

    def format(self, names) -> str:
        if not self.tail:
            return names[self.base]
        items = " ".join(names[g] + ("'" if s < 0 else "") for g, s in self.tail)
        return f"{names[self.base]}^[{items}]"

    def __str__(self):
        return self.format([f"x{i}" for i in range(max(self.generators()) + 1)])


def fq_operate(x: FreeQuandleElement, y: FreeQuandleElement, sign: int = 1) -> FreeQuandleElement:
    """``x^(y^sign)`` in canonical form."""
    if sign not in (1, -1):
        raise StructuralError(f"sign must be +-1, got {sign}")
    inv_tail = tuple((g, -s) for g, s in reversed(y.tail))
    return FreeQuandleElement(x.base, x.tail + inv_tail + ((y.base, sign),) + y.tail)


def word(base: int, *letters) -> FreeQuandleElement:
    """Build ``base^[...]`` from letters given as ``g`` or ``(g, sign)``."""
    tail = [(l, 1) if isinstance(l, int) else tuple(l) for l in letters]
    return FreeQuandleElement(base, tuple(tail))


def evaluate_word(w: FreeQuandleElement, assignment, X: FiniteQuandle) -> int:
    T, Tinv = X.table, X.inv_table
    e = int(assignment[w.base])
    for g, s in w.tail:
        c = assignment[g]
        e = int(T[e, c] if s > 0 else Tinv[e, c])
    return e


# --- presentations ----------------------------------------------------------

Relator = tuple[FreeQuandleElement, FreeQuandleElement]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise StructuralError("duplicate generator names")
        n = len(self.generators)
        for k, (lhs, rhs) in enumerate(self.relators):
            for g in lhs.generators() | rhs.generators():
                if not 0 <= g < n:
                    raise StructuralError(f"relator {k} uses generator index {g} out of range")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def with_relators(self, extra) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def format_relator(self, r: Relator) -> str:
        return f"{r[0].format(self.generators)} = {r[1].format(self.generators)}"

    def __str__(self):
        lines = ["gens: " + " ".join(self.generators)]
        lines += ["rel: " + self.format_relator(r) for r in self.relators]
        return "\n".join(lines)


def satisfies(P: Presentation, assignment, X: FiniteQuandle) -> bool:
    return all(
        evaluate_word(lhs, assignment, X) == evaluate_word(rhs, assignment, X)
        for lhs, rhs in P.relators
    )


def enumerate_homs(P: Presentation, X: FiniteQuandle, backend: str | None = None):
    """All assignments of the generators satisfying every relator.

    Returned as tuples of element indices in lexicographic order. Generators
    are assigned depth-first in index order and each relator is tested as
    soon as all generators it mentions have values.
    """
    enc = _kernels.encode_relators(P.relators)
    rows = _kernels.colorings(X.table, X.inv_table, P.ngens, enc, backend)
    return [tuple(int(v) for v in row) for row in rows]


def presentation_from_table(X: FiniteQuandle) -> Presentation:
    n = X.order
    gens = tuple(f"x{i}" for i in range(n))
    rels = tuple(
        (word(i, j), word(int(X.table[i, j])))
        for i in range(n)
        for j in range(n)
    )
    return Presentation(gens, rels)


# --- corpus constructors ----------------------------------------------------


def trivial_quandle(n: int) -> FiniteQuandle:
    return FiniteQuandle(np.tile(np.arange(n)[:, None], (1, n)), name=f"T{n}")


def dihedral_quandle(n: int) -> FiniteQuandle:
    """R_n: ``x^y = 2y - x mod n``."""
    x = np.arange(n)
    return FiniteQuandle((2 * x[None, :] - x[:, None]) % n, name=f"R{n}")


def alexander_quandle(n: int, t: int) -> FiniteQuandle:
    """Alexander quandle on Z/n: ``x^y = t x + (1 - t) y``."""
    x = np.arange(n)
    return FiniteQuandle((t * x[:, None] + (1 - t) * x[None, :]) % n, name=f"Alex({n},{t})")


def tetrahedral_quandle() -> FiniteQuandle:
    """Alexander quandle on F_4 = F_2[w]/(w^2+w+1) with t = w.

    Element ``a + b w`` is encoded as ``a + 2 b``. Since ``1 - w = 1 + w = w^2``
    the operation is ``x^y = w x + w^2 y``.
    """

    def mul(p, q):
        a, b = p & 1, p >> 1
        c, d = q & 1, q >> 1
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = w + 1
        e0 = (a * c + b * d) & 1
        e1 = (a * d + b * c + b * d) & 1
        return e0 | (e1 << 1)

    w, w2 = 2, 3
    table = [[mul(w, x) ^ mul(w2, y) for y in range(4)] for x in range(4)]
    return FiniteQuandle(table, name="S4")


def conjugation_quandle(perms, name: str | None = None) -> FiniteQuandle:
    """Quandle on a conjugation-closed list of permutations, ``x^y = y^-1 x y``."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # apply p then q
        return tuple(q[p[i]] for i in range(len(p)))

    def inverse(p):
        out = [0] * len(p)
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    table = [
        [index[compose(compose(inverse(y), x), y)] for y in perms]
        for x in perms
    ]
    return FiniteQuandle(table, name=name)


def conjugacy_classes(degree: int):
    """Conjugacy classes of the symmetric group on ``degree`` points."""
    elems = list(itertools.permutations(range(degree)))
    seen: set = set()
    classes = []
    for p in elems:
        if p in seen:
            continue
        cls = set()
        for g in elems:
            ginv = [0] * degree
            for i, v in enumerate(g):
                ginv[v] = i
            cls.add(tuple(g[p[ginv[i]]] for i in range(degree)))
        seen |= cls
        classes.append(sorted(cls))
    return classes


def search_connected_conjugation_quandles(order: int, max_degree: int = 5):
    """Connected conjugation quandles of the given order found among conjugacy
    classes of S_k for k <= ``max_degree`` (duplicates up to table equality removed)."""
    found = []
    for k in range(2, max_degree + 1):
        for cls in conjugacy_classes(k):
            if len(cls) != order:
                continue
            Q = conjugation_quandle(cls, name=f"Conj(S{k},{len(cls)})#{len(found)}")
            if is_connected(Q)[0] and all(Q != F for F in found):
                found.append(Q)
    return found


def corpus() -> dict[str, FiniteQuandle]:
    """Quandles used by the verification harnesses."""
    out = {f"T{n}": trivial_quandle(n) for n in range(1, 5)}
    for n in (3, 4, 5):
        out[f"R{n}"] = dihedral_quandle(n)
    out["S4"] = tetrahedral_quandle()
    out["Alex(5,2)"] = alexander_quandle(5, 2)
    out["Alex(5,3)"] = alexander_quandle(5, 3)
    six = search_connected_conjugation_quandles(6, max_degree=4)
    for i, Q in enumerate(six):
        Q.name = f"C6_{i}"
        out[Q.name] = Q
    return out

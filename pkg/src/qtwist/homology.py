"""Quandle chain complex in degrees 1-3, H^Q_2, and 2-cocycles.

Chains live on the quotient complex C^Q: bases list only non-degenerate
tuples (no two adjacent entries equal), and boundaries drop degenerate
images.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CocycleViolation, StructuralError
from .intmat import kernel_basis, matmul, smith, transpose
from .quandle import FiniteQuandle, Violation, check_homomorphism
from .ring import AbelianGroup, GroupElem, cyclic


@dataclass(frozen=True)
class ChainBasis:
    degree: int
    tuples: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.tuples)

    @property
    def position(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tuples)}


def is_degenerate(t) -> bool:
    return any(a == b for a, b in zip(t, t[1:]))


def chain_basis(X: FiniteQuandle, degree: int) -> ChainBasis:
    if degree not in (1, 2, 3):
        raise StructuralError("chain degrees are limited to 1, 2, 3")
    tuples = tuple(
        t for t in itertools.product(range(X.order), repeat=degree) if not is_degenerate(t)
    )
    return ChainBasis(degree, tuples)


def boundary(X: FiniteQuandle, t) -> dict[tuple[int, ...], int]:
    """Boundary of a single tuple in C^Q, as ``{tuple: coeff}``."""
    T = X.table
    out: dict[tuple[int, ...], int] = {}

    def put(u, c):
        if not is_degenerate(u):
            out[u] = out.get(u, 0) + c

    if len(t) == 2:
        x, y = t
        put((x,), 1)
        put((int(T[x, y]),), -1)
    elif len(t) == 3:
        x, y, z = t
        put((x, z), 1)
        put((int(T[x, y]), z), -1)
        put((x, y), -1)
        put((int(T[x, z]), int(T[y, z])), 1)
    else:
        raise StructuralError("boundary is implemented for degrees 2 and 3")
    return {u: c for u, c in out.items() if c}


def boundary_matrix(X: FiniteQuandle, n: int) -> list[list[int]]:
    """Matrix of d_n : C^Q_n -> C^Q_{n-1}, rows indexed by the degree n-1 basis."""
    src, dst = chain_basis(X, n), chain_basis(X, n - 1)
    pos = dst.position
    M = [[0] * len(src) for _ in range(len(dst))]
    for j, t in enumerate(src.tuples):
        for u, c in boundary(X, t).items():
            M[pos[u]][j] += c
    return M


@dataclass(frozen=True)
class HomologyResult:
    """``invariant_factors`` lists torsion orders (>1) then a 0 per free summand;
    ``generators[i]`` is a cycle ``{(x, y): coeff}`` generating that summand."""

    invariant_factors: tuple[int, ...]
    generators: tuple[dict, ...]

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)


def format_chain(chain: dict) -> str:
    if not chain:
        return "0"
    parts = []
    for t, c in sorted(chain.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = ("" if mag == 1 else f"{mag}*") + "(" + ",".join(map(str, t)) + ")"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return text + "".join(f" {s} {b}" for s, b in parts[1:])


@lru_cache(maxsize=64)
def _h2_cached(table_bytes: bytes, n: int) -> HomologyResult:
    import numpy as np

    X = FiniteQuandle(np.frombuffer(table_bytes, dtype=np.int64).reshape(n, n), check=False)
    c2 = chain_basis(X, 2)
    d2 = boundary_matrix(X, 2)
    d3 = boundary_matrix(X, 3)
    K, Kcoords = kernel_basis(d2, len(c2))
    k = len(Kcoords)
    # d3 expressed in kernel coordinates
    C = matmul(Kcoords, d3, inner=len(c2)) if k else []
    sf = smith(C, k, len(chain_basis(X, 3)))
    factors, gens = [], []
    diag = sf.diagonal + [0] * (k - sf.rank)
    order = [i for i, d in enumerate(diag) if d > 1] + [i for i, d in enumerate(diag) if d == 0]
    for i in order:
        coords = [sf.Uinv[r][i] for r in range(k)]
        cycle = {}
        for row, t in enumerate(c2.tuples):
            v = sum(K[row][s] * coords[s] for s in range(k))
            if v:
                cycle[t] = v
        factors.append(diag[i])
        gens.append(cycle)
    return HomologyResult(tuple(factors), tuple(gens))


def quandle_H2(X: FiniteQuandle) -> HomologyResult:
    """H^Q_2(X) with explicit generator cycles."""
    return _h2_cached(X.table.tobytes(), X.order)


# --- cocycles ---------------------------------------------------------------


class Cocycle:
    """Table ``theta(x, y)`` of elements of a finite or infinite abelian group.

    Construction does not verify the cocycle identity; see ``cocycle_check``.
    """

    def __init__(self, group: AbelianGroup, values, order: int | None = None):
        vals = tuple(tuple(group.reduce(v) for v in row) for row in values)
        n = len(vals)
        if any(len(row) != n for row in vals):
            raise StructuralError("cocycle table must be square")
        self.group = group
        self.values = vals
        self.order = order  # order of the cohomology class, when known

    @classmethod
    def from_ints(cls, m: int, table, order=None) -> "Cocycle":
        return cls(cyclic(m), [[(v,) for v in row] for row in table], order)

    @classmethod
    def zero(cls, group: AbelianGroup, n: int) -> "Cocycle":
        return cls(group, [[group.zero] * n for _ in range(n)])

    @property
    def size(self) -> int:
        return len(self.values)

    def __call__(self, x: int, y: int) -> GroupElem:
        return self.values[x][y]

    def evaluate(self, chain: dict) -> GroupElem:
        """Linear extension of theta to a degree-2 chain."""
        grp = self.group
        acc = grp.zero
        for (x, y), c in chain.items():
            acc = grp.add(acc, grp.scale(c, self.values[x][y]))
        return acc

    def is_zero(self) -> bool:
        z = self.group.zero
        return all(v == z for row in self.values for v in row)

    def __eq__(self, other):
        return isinstance(other, Cocycle) and (self.group, self.values) == (other.group, other.values)

    def __hash__(self):
        return hash((self.group, self.values))

    def __repr__(self):
        return f"Cocycle({self.group}, order={self.order})"

    def format(self) -> str:
        lines = [str(self.group)]
        for x, row in enumerate(self.values):
            for y, v in enumerate(row):
                if v != self.group.zero:
                    lines.append(f"{x} {y} " + " ".join(map(str, v)))
        return "\n".join(lines)


def cocycle_check(X: FiniteQuandle, theta: Cocycle) -> Violation | None:
    """Exhaustive check; returns ``None`` for a valid quandle 2-cocycle."""
    n = X.order
    if theta.size != n:
        raise StructuralError(f"cocycle has size {theta.size}, quandle has order {n}")
    grp, T = theta.group, X.table
    for x in range(n):
        if theta(x, x) != grp.zero:
            return Violation("diagonal", (x,))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = grp.add(theta(x, y), theta(int(T[x, y]), z))
                rhs = grp.add(theta(x, z), theta(int(T[x, z]), int(T[y, z])))
                if lhs != rhs:
                    return Violation("cocycle", (x, y, z))
    return None


def require_cocycle(X: FiniteQuandle, theta: Cocycle) -> None:
    bad = cocycle_check(X, theta)
    if bad is not None:
        raise CocycleViolation(bad)


def coboundary(X: FiniteQuandle, phi, group: AbelianGroup) -> Cocycle:
    """``theta(x, y) = phi(x) - phi(x^y)`` for a 1-cochain ``phi``."""
    n = X.order
    phi = [group.reduce(p) for p in phi]
    return Cocycle(
        group,
        [[group.sub(phi[x], phi[int(X.table[x, y])]) for y in range(n)] for x in range(n)],
    )


def cohomology_classes(X: FiniteQuandle, m: int) -> list[Cocycle]:
    """Representatives of cyclic generators of H^2_Q(X; Z/m).

    The cocycle lattice ``{theta in Z^C2 : theta o d3 = 0 mod m}`` is
    quotiented by coboundaries plus ``m Z^C2``; each returned cocycle has
    ``order`` set to the order of its class, and the classes generate the
    cohomology group as a direct sum of cyclic groups.
    """
    if m < 2:
        raise StructuralError("modulus must be >= 2")
    c2 = chain_basis(X, 2)
    N = len(c2)
    if N == 0:
        return []
    d2 = boundary_matrix(X, 2)
    d3 = boundary_matrix(X, 3)
    delta2 = transpose(d3, N)  # C^2 -> C^3
    sf = smith(delta2, len(delta2), N)
    scale = [m // math.gcd(d, m) for d in sf.diagonal] + [1] * (N - sf.rank)
    Q, Qinv = sf.V, sf.Vinv
    # basis of the cocycle lattice: columns Q[:, i] * scale[i]
    M = [[Q[r][i] * scale[i] for i in range(N)] for r in range(N)]

    def coords(v):
        out = []
        for i in range(N):
            s = sum(Qinv[i][r] * v[r] for r in range(N))
            assert s % scale[i] == 0
            out.append(s // scale[i])
        return out

    # coboundary of the point cochain e_p is row p of d2
    cob_vectors = [list(row) for row in d2]
    cob_vectors += [[m * int(i == j) for j in range(N)] for i in range(N)]
    B = transpose([coords(v) for v in cob_vectors], N)  # N x (#gens)
    sq = smith(B, N, len(cob_vectors))
    out = []
    for i, d in enumerate(sq.diagonal):
        if d == 1:
            continue
        c = [sq.Uinv[r][i] for r in range(N)]
        vec = [sum(M[r][s] * c[s] for s in range(N)) % m for r in range(N)]
        table = [[0] * X.order for _ in range(X.order)]
        for (x, y), v in zip(c2.tuples, vec):
            table[x][y] = v
        out.append(Cocycle.from_ints(m, table, order=d))
    return out


def cocycle_basis(X: FiniteQuandle, m: int) -> list[Cocycle]:
    """Cocycles over Z/m whose classes form a basis (generating set of cyclic
    summands) of H^2_Q(X; Z/m)."""
    return cohomology_classes(X, m)


def pushforward(chain: dict, rho) -> dict:
    out: dict = {}
    for t, c in chain.items():
        u = tuple(int(rho[x]) for x in t)
        if not is_degenerate(u):
            out[u] = out.get(u, 0) + c
    return {u: c for u, c in out.items() if c}


def theta_rho_image(Q: FiniteQuandle, X: FiniteQuandle, rho, theta: Cocycle) -> list[GroupElem]:
    """Images under theta o rho_* of the generators of H^Q_2(Q).

    The returned elements generate Im(theta o rho_*) as a subgroup of A.
    """
    check_homomorphism(rho, Q, X)
    return [theta.evaluate(pushforward(z, rho)) for z in quandle_H2(Q).generators]

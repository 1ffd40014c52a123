"""Alexander pairs, f-derivatives, twisted Alexander matrices and their
elementary ideals."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .errors import NonColoringAssignment, StructuralError, UnsupportedGroup
from .homology import Cocycle, require_cocycle
from .quandle import FiniteQuandle, FreeQuandleElement, Presentation, Violation, evaluate_word
from .ring import (
    LAURENT,
    AbelianGroup,
    GroupRingElem,
    IdealLattice,
    LaurentIdeal,
    full_ideal,
    gr_monomial_inverse,
    ideal_from_generators,
    laurent,
    laurent_normalize,
    zero_ideal,
)

RingFn = Callable[[int, int], GroupRingElem]


@dataclass(frozen=True)
class AlexanderPair:
    """``(f1, f2)`` with values in Z[group] and an explicit inverse of ``f1``.

    ``cocycle`` is set for pairs of the form ``(1*theta, 0)``; derivatives use
    a closed-form fast path for them.
    """

    group: AbelianGroup
    f1: RingFn
    f2: RingFn
    f1_inv: RingFn
    name: str = "pair"
    cocycle: Cocycle | None = field(default=None, compare=False)

    @classmethod
    def from_functions(cls, group, f1, f2, name="pair") -> "AlexanderPair":
        """Pair whose ``f1`` inverse is taken monomial-wise (may raise NotMonomialUnit)."""
        return cls(group, f1, f2, lambda x, y: gr_monomial_inverse(f1(x, y)), name)


def pair_laurent() -> AlexanderPair:
    t = laurent({1: 1})
    one_minus_t = laurent({0: 1, 1: -1})
    t_inv = laurent({-1: 1})
    return AlexanderPair(
        LAURENT, lambda x, y: t, lambda x, y: one_minus_t, lambda x, y: t_inv, "(t, 1-t)"
    )


def pair_cocycle(theta: Cocycle, X: FiniteQuandle | None = None) -> AlexanderPair:
    """``(1*theta, 0)``. When ``X`` is given the cocycle identity is checked."""
    if X is not None:
        require_cocycle(X, theta)
    grp = theta.group
    zero = GroupRingElem.zero(grp)
    mono = [[GroupRingElem.monomial(grp, v) for v in row] for row in theta.values]
    inv = [[GroupRingElem.monomial(grp, grp.neg(v)) for v in row] for row in theta.values]
    return AlexanderPair(
        grp,
        lambda x, y: mono[x][y],
        lambda x, y: zero,
        lambda x, y: inv[x][y],
        "(f_theta, 0)",
        theta,
    )


def verify_alexander_pair(X: FiniteQuandle, p: AlexanderPair) -> Violation | None:
    """Exhaustive check of the unit, diagonal and three triple identities."""
    n, T = X.order, X.table
    one = GroupRingElem.one(p.group)
    f1 = [[p.f1(x, y) for y in range(n)] for x in range(n)]
    f2 = [[p.f2(x, y) for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(n):
            if f1[x][y] * p.f1_inv(x, y) != one:
                return Violation("unit", (x, y))
    for x in range(n):
        if f1[x][x] + f2[x][x] != one:
            return Violation("diagonal", (x,))
    for x in range(n):
        for y in range(n):
            xy = int(T[x, y])
            for z in range(n):
                xz, yz = int(T[x, z]), int(T[y, z])
                if f1[xy][z] * f1[x][y] != f1[xz][yz] * f1[x][z]:
                    return Violation("f1-f1", (x, y, z))
                if f1[xy][z] * f2[x][y] != f2[xz][yz] * f1[y][z]:
                    return Violation("f1-f2", (x, y, z))
                if f2[xy][z] != f1[xz][yz] * f2[x][z] + f2[xz][yz] * f2[y][z]:
                    return Violation("f2-f2", (x, y, z))
    return None


# --- derivatives ------------------------------------------------------------

Gradient = dict[int, GroupRingElem]


def _scale_gradient(u: GroupRingElem, D: Gradient) -> Gradient:
    out = {}
    for j, d in D.items():
        v = u * d
        if v:
            out[j] = v
    return out


def _add_to(D: Gradient, j: int, v: GroupRingElem) -> None:
    s = D[j] + v if j in D else v
    if s:
        D[j] = s
    else:
        D.pop(j, None)


def gradient_general(w: FreeQuandleElement, p: AlexanderPair, a, X: FiniteQuandle) -> Gradient:
    """All f-derivatives of ``w`` via the two letter rules, letter by letter.

    Peeling the last letter of ``x^{y^s}`` expresses its derivative through
    that of ``x``; running the recursion forward keeps the image of the
    prefix in ``e``.
    """
    T, Tinv = X.table, X.inv_table
    e = int(a[w.base])
    D: Gradient = {w.base: GroupRingElem.one(p.group)}
    for g, s in w.tail:
        c = int(a[g])
        if s > 0:
            D = _scale_gradient(p.f1(e, c), D)
            _add_to(D, g, p.f2(e, c))
            e = int(T[e, c])
        else:
            e = int(Tinv[e, c])
            u = p.f1_inv(e, c)
            D = _scale_gradient(u, D)
            _add_to(D, g, -(u * p.f2(e, c)))
    return D


def weight_along(theta: Cocycle, base_value: int, tail, a, X: FiniteQuandle):
    """Signed cocycle sum along ``base^tail``; the exponent of its f-derivative."""
    T, Tinv = X.table, X.inv_table
    grp = theta.group
    acc = grp.zero
    e = int(base_value)
    for g, s in tail:
        c = int(a[g])
        if s > 0:
            acc = grp.add(acc, theta(e, c))
            e = int(T[e, c])
        else:
            e = int(Tinv[e, c])
            acc = grp.sub(acc, theta(e, c))
    return acc


def gradient_cocycle(w: FreeQuandleElement, theta: Cocycle, a, X: FiniteQuandle) -> Gradient:
    """Closed form for ``(1*theta, 0)``: a single monomial in the base column."""
    W = weight_along(theta, a[w.base], w.tail, a, X)
    return {w.base: GroupRingElem.monomial(theta.group, W)}


def word_gradient(w: FreeQuandleElement, p: AlexanderPair, a, X: FiniteQuandle) -> Gradient:
    if p.cocycle is not None:
        return gradient_cocycle(w, p.cocycle, a, X)
    return gradient_general(w, p, a, X)


def f_derivative_general(w, j, p, a, X) -> GroupRingElem:
    return gradient_general(w, p, a, X).get(j, GroupRingElem.zero(p.group))


def f_derivative_cocycle(w, j, theta: Cocycle, a, X) -> GroupRingElem:
    return gradient_cocycle(w, theta, a, X).get(j, GroupRingElem.zero(theta.group))


def f_derivative(w: FreeQuandleElement, j: int, p: AlexanderPair, a, X: FiniteQuandle) -> GroupRingElem:
    """f-derivative of ``w`` with respect to generator ``j`` under the coloring ``a``."""
    return word_gradient(w, p, a, X).get(j, GroupRingElem.zero(p.group))


# --- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class TwistedMatrix:
    group: AbelianGroup
    rows: tuple[tuple[GroupRingElem, ...], ...]
    ncols: int
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(len(r) != self.ncols for r in self.rows):
            raise StructuralError("ragged twisted matrix")
        if not self.row_labels:
            object.__setattr__(self, "row_labels", tuple(f"r{i}" for i in range(len(self.rows))))
        if not self.col_labels:
            object.__setattr__(self, "col_labels", tuple(f"c{j}" for j in range(self.ncols)))

    @classmethod
    def from_lists(cls, group, rows, ncols=None, row_labels=(), col_labels=()):
        ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        return cls(group, tuple(tuple(r) for r in rows), ncols, tuple(row_labels), tuple(col_labels))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i, j) -> GroupRingElem:
        return self.rows[i][j]

    def format(self) -> str:
        if not self.rows or not self.ncols:
            return f"[{self.nrows}x{self.ncols} matrix]"
        cells = [[str(x) for x in r] for r in self.rows]
        width = [max(len(self.col_labels[j]), *(len(c[j]) for c in cells)) for j in range(self.ncols)]
        lw = max(len(s) for s in self.row_labels)
        lines = [" " * lw + " | " + "  ".join(h.rjust(w) for h, w in zip(self.col_labels, width))]
        for lab, c in zip(self.row_labels, cells):
            lines.append(lab.rjust(lw) + " | " + "  ".join(s.rjust(w) for s, w in zip(c, width)))
        return "\n".join(lines)


def build_matrix(P: Presentation, a, X: FiniteQuandle, p: AlexanderPair) -> TwistedMatrix:
    """f-twisted Alexander matrix of ``P`` pulled back along the coloring ``a``."""
    if len(a) != P.ngens:
        raise StructuralError(f"assignment has {len(a)} values, presentation has {P.ngens} generators")
    zero = GroupRingElem.zero(p.group)
    rows = []
    for k, (lhs, rhs) in enumerate(P.relators):
        if evaluate_word(lhs, a, X) != evaluate_word(rhs, a, X):
            raise NonColoringAssignment(
                f"relator {k} ({P.format_relator((lhs, rhs))}) is violated by {tuple(int(v) for v in a)}"
            )
        D = dict(word_gradient(lhs, p, a, X))
        for j, v in word_gradient(rhs, p, a, X).items():
            _add_to(D, j, -v)
        rows.append(tuple(D.get(j, zero) for j in range(P.ngens)))
    labels = tuple(P.format_relator(r) for r in P.relators)
    return TwistedMatrix(p.group, tuple(rows), P.ngens, labels, tuple(P.generators))


# --- the transformations (M1)-(M8) -------------------------------------------


def _replace(M: TwistedMatrix, rows, ncols=None, row_labels=None, col_labels=None):
    return TwistedMatrix(
        M.group,
        tuple(tuple(r) for r in rows),
        M.ncols if ncols is None else ncols,
        M.row_labels if row_labels is None else tuple(row_labels),
        M.col_labels if col_labels is None else tuple(col_labels),
    )


def move_add_column(M: TwistedMatrix, i: int, j: int, r: GroupRingElem) -> TwistedMatrix:
    """(M1) column i += r * column j, i != j."""
    if i == j:
        raise StructuralError("column added to itself")
    rows = [list(row) for row in M.rows]
    for row in rows:
        row[i] = row[i] + r * row[j]
    return _replace(M, rows)


def move_add_row(M: TwistedMatrix, i: int, j: int, r: GroupRingElem) -> TwistedMatrix:
    """(M2) row i += r * row j, i != j."""
    if i == j:
        raise StructuralError("row added to itself")
    rows = [list(row) for row in M.rows]
    rows[i] = [x + r * y for x, y in zip(rows[i], rows[j])]
    return _replace(M, rows)


def move_append_zero_row(M: TwistedMatrix) -> TwistedMatrix:
    """(M3) append a zero row."""
    zero = GroupRingElem.zero(M.group)
    return _replace(M, list(M.rows) + [[zero] * M.ncols], row_labels=M.row_labels + ("0",))


def move_stabilize(M: TwistedMatrix) -> TwistedMatrix:
    """(M4) ``A -> A (+) [1]``: new last row and column, 1 in the corner."""
    zero, one = GroupRingElem.zero(M.group), GroupRingElem.one(M.group)
    rows = [list(r) + [zero] for r in M.rows] + [[zero] * M.ncols + [one]]
    return _replace(
        M, rows, M.ncols + 1, M.row_labels + ("s",), M.col_labels + ("s",)
    )


def move_swap_columns(M: TwistedMatrix, i: int, j: int) -> TwistedMatrix:
    """(M5)"""
    rows = [list(r) for r in M.rows]
    for r in rows:
        r[i], r[j] = r[j], r[i]
    labels = list(M.col_labels)
    labels[i], labels[j] = labels[j], labels[i]
    return _replace(M, rows, col_labels=labels)


def move_scale_column(M: TwistedMatrix, i: int, u: GroupRingElem) -> TwistedMatrix:
    """(M6) column i *= u for a monomial unit u."""
    gr_monomial_inverse(u)
    rows = [list(r) for r in M.rows]
    for r in rows:
        r[i] = u * r[i]
    return _replace(M, rows)


def move_swap_rows(M: TwistedMatrix, i: int, j: int) -> TwistedMatrix:
    """(M7)"""
    rows = list(M.rows)
    rows[i], rows[j] = rows[j], rows[i]
    labels = list(M.row_labels)
    labels[i], labels[j] = labels[j], labels[i]
    return _replace(M, rows, row_labels=labels)


def move_scale_row(M: TwistedMatrix, i: int, u: GroupRingElem) -> TwistedMatrix:
    """(M8) row i *= u for a monomial unit u."""
    gr_monomial_inverse(u)
    rows = list(M.rows)
    rows[i] = [u * x for x in rows[i]]
    return _replace(M, rows)


def random_move(M: TwistedMatrix, rng, coeff_elements=None) -> TwistedMatrix:
    """Apply one randomly chosen transformation; ``rng`` is a ``random.Random``.

    Moves that need two rows/columns are skipped when the matrix is too
    small, falling back to (M3) or (M4).
    """
    grp = M.group
    coeffs = coeff_elements or [GroupRingElem.one(grp)]

    def ring_elem():
        r = GroupRingElem.zero(grp)
        for _ in range(rng.randint(1, 2)):
            r = r + rng.choice((1, -1, 2)) * rng.choice(coeffs)
        return r

    def unit():
        return rng.choice((1, -1)) * rng.choice([c for c in coeffs if c.is_monomial_unit()] or [GroupRingElem.one(grp)])

    m, n = M.shape
    kind = rng.randrange(8)
    if kind == 0 and n >= 2:
        i, j = rng.sample(range(n), 2)
        return move_add_column(M, i, j, ring_elem())
    if kind == 1 and m >= 2:
        i, j = rng.sample(range(m), 2)
        return move_add_row(M, i, j, ring_elem())
    if kind == 4 and n >= 2:
        return move_swap_columns(M, *rng.sample(range(n), 2))
    if kind == 5 and n >= 1:
        return move_scale_column(M, rng.randrange(n), unit())
    if kind == 6 and m >= 2:
        return move_swap_rows(M, *rng.sample(range(m), 2))
    if kind == 7 and m >= 1:
        return move_scale_row(M, rng.randrange(m), unit())
    if kind == 3 or rng.random() < 0.5:
        return move_stabilize(M)
    return move_append_zero_row(M)


# --- reduction and ideals ---------------------------------------------------


def reduce_matrix(M: TwistedMatrix) -> TwistedMatrix:
    """Eliminate monomial-unit entries and zero rows.

    Each step scales the pivot row to make the pivot 1 (M8), clears the
    pivot column with row additions (M2), clears the pivot row with column
    additions (M1, which only touches the pivot row once the column is
    clear), moves the unit to the corner (M5, M7) and strips it (M4).
    Zero rows are dropped (M3). Every E_d is preserved with the same d.
    """
    rows = [list(r) for r in M.rows]
    rlab, clab = list(M.row_labels), list(M.col_labels)
    while True:
        keep = [i for i, r in enumerate(rows) if any(r)]
        rows = [rows[i] for i in keep]
        rlab = [rlab[i] for i in keep]
        pivot = next(
            ((i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x.is_monomial_unit()),
            None,
        )
        if pivot is None:
            break
        pi, pj = pivot
        inv = gr_monomial_inverse(rows[pi][pj])
        prow = [inv * x for x in rows[pi]]
        for i, r in enumerate(rows):
            if i != pi and r[pj]:
                f = r[pj]
                rows[i] = [x - f * y for x, y in zip(r, prow)]
        del rows[pi], rlab[pi]
        for r in rows:
            del r[pj]
        del clab[pj]
    return TwistedMatrix(M.group, tuple(tuple(r) for r in rows), len(clab), tuple(rlab), tuple(clab))


def determinant(rows) -> GroupRingElem:
    """Determinant of a square matrix of group-ring elements (Laplace, memoized)."""
    k = len(rows)
    if k == 0:
        raise StructuralError("determinant of an empty matrix needs a group; use minors()")
    grp = rows[0][0].group
    return _minor(rows, tuple(range(k)), tuple(range(k)), {}, grp)


def _minor(rows, R, C, memo, grp) -> GroupRingElem:
    # expand along row R[i] where i = k - len(cols); memo keyed by remaining columns
    if not C:
        return GroupRingElem.one(grp)
    if C in memo:
        return memo[C]
    r = rows[R[len(R) - len(C)]]
    acc = GroupRingElem.zero(grp)
    for p, c in enumerate(C):
        x = r[c]
        if not x:
            continue
        sub = _minor(rows, R, C[:p] + C[p + 1:], memo, grp)
        if sub:
            acc = acc + x * sub if p % 2 == 0 else acc - x * sub
    memo[C] = acc
    return acc


def minors(M: TwistedMatrix, k: int):
    """All k x k minors, row subsets outer and column subsets inner, lexicographic."""
    if k == 0:
        yield GroupRingElem.one(M.group)
        return
    for R in itertools.combinations(range(M.nrows), k):
        memo: dict = {}
        for C in itertools.combinations(range(M.ncols), k):
            yield _minor(M.rows, R, C, memo, M.group)


def _assemble(group: AbelianGroup, gens):
    if group.is_finite:
        return ideal_from_generators(group, gens)
    if group.is_laurent:
        gens = tuple(g for g in gens if g)
        return LaurentIdeal(gens, laurent_normalize(gens))
    raise UnsupportedGroup(f"elementary ideals over {group} are not assembled")


def elementary_ideal(M: TwistedMatrix, d: int, reduce: bool = True):
    """E_d: the ideal of (n - d)-minors, R for d >= n and 0 for d < n - m.

    Returns an ``IdealLattice`` over finite groups and a ``LaurentIdeal``
    (generators and gcd) over Z[t, t^-1].
    """
    if d < 0:
        raise StructuralError("d must be non-negative")
    group = M.group
    if not (group.is_finite or group.is_laurent):
        raise UnsupportedGroup(f"elementary ideals over {group} are not assembled")
    one = GroupRingElem.one(group)
    if reduce:
        M = reduce_matrix(M)
    m, n = M.shape
    if d >= n:
        return _assemble(group, [one])
    if d < n - m:
        return _assemble(group, [])
    return _assemble(group, list(minors(M, n - d)))


def ideal_lattice_or_raise(I) -> IdealLattice:
    if not isinstance(I, IdealLattice):
        raise UnsupportedGroup("ideal equality is only decided over finite groups")
    return I


__all__ = [
    "AlexanderPair",
    "TwistedMatrix",
    "build_matrix",
    "determinant",
    "elementary_ideal",
    "f_derivative",
    "f_derivative_cocycle",
    "f_derivative_general",
    "gradient_cocycle",
    "gradient_general",
    "minors",
    "move_add_column",
    "move_add_row",
    "move_append_zero_row",
    "move_scale_column",
    "move_scale_row",
    "move_stabilize",
    "move_swap_columns",
    "move_swap_rows",
    "pair_cocycle",
    "pair_laurent",
    "random_move",
    "reduce_matrix",
    "verify_alexander_pair",
    "weight_along",
    "word_gradient",
    "full_ideal",
    "zero_ideal",
]

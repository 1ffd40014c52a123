"""Knot diagrams as PD codes, Wirtinger presentations, state sums, marked
surface-knot presentations, and the ideal-comparison harnesses."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .alexander import build_matrix, elementary_ideal, pair_cocycle, weight_along
from .errors import LoopNotClosed, NotConnected, StructuralError
from .homology import Cocycle, require_cocycle, theta_rho_image
from .quandle import (
    FiniteQuandle,
    FreeQuandleElement,
    Presentation,
    enumerate_homs,
    evaluate_word,
    is_connected,
    presentation_from_table,
    word,
)
from .ring import GroupRingElem, IdealLattice, ideal_equal, ideal_from_generators


@dataclass(frozen=True)
class Crossing:
    """One PD crossing after sign inference.

    ``under_in``/``under_out`` are the labels of the under strand, ``over``
    an over label, ``sign`` is +1 or -1.
    """

    labels: tuple[int, int, int, int]
    sign: int

    @property
    def under_in(self) -> int:
        return self.labels[0]

    @property
    def under_out(self) -> int:
        return self.labels[2]

    @property
    def over(self) -> int:
        return self.labels[1]


@dataclass(frozen=True)
class PDCode:
    """Crossings ``(i, j, k, l)`` read counterclockwise from the incoming under-arc.

    Labels run over 1..2c and the orientation follows increasing labels
    (cyclically). A crossing-free code stands for the unknot with one arc.
    """

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        cr = tuple(tuple(int(v) for v in x) for x in self.crossings)
        object.__setattr__(self, "crossings", cr)
        if any(len(x) != 4 for x in cr):
            raise StructuralError("every PD crossing needs exactly 4 labels")
        c = len(cr)
        counts = Counter(v for x in cr for v in x)
        if c and set(counts) != set(range(1, 2 * c + 1)):
            raise StructuralError(f"PD labels must be exactly 1..{2 * c}, got {sorted(counts)}")
        bad = [v for v, k in counts.items() if k != 2]
        if bad:
            raise StructuralError(f"PD labels {sorted(bad)} do not appear exactly twice")

    @property
    def size(self) -> int:
        return len(self.crossings)

    def succ(self, label: int) -> int:
        return label % (2 * self.size) + 1


def pd_crossings(pd: PDCode) -> list[Crossing]:
    """Crossings with signs inferred from the direction of the over strand."""
    out = []
    for x in pd.crossings:
        i, j, k, l = x
        if k != pd.succ(i):
            raise StructuralError(f"crossing {list(x)}: under strand {i} -> {k} is not consecutive")
        forward = l == pd.succ(j)  # over strand runs j -> l
        backward = j == pd.succ(l)  # over strand runs l -> j
        if forward == backward:
            raise StructuralError(f"crossing {list(x)}: cannot infer the over-strand direction")
        out.append(Crossing(x, -1 if forward else 1))
    return out


def _arc_classes(pd: PDCode) -> dict[int, int]:
    """Label -> generator index, merging the two over labels of each crossing."""
    parent = {v: v for x in pd.crossings for v in x}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, j, _, l in pd.crossings:
        a, b = find(j), find(l)
        if a != b:
            parent[max(a, b)] = min(a, b)
    reps = sorted({find(v) for v in parent})
    index = {r: n for n, r in enumerate(reps)}
    return {v: index[find(v)] for v in parent}


def arc_generators(pd: PDCode) -> tuple[dict[int, int], list[str]]:
    """Label-to-generator map and generator names ``x<smallest label>``."""
    if not pd.crossings:
        return {}, ["a"]
    cls = _arc_classes(pd)
    names = {}
    for v in sorted(cls):
        names.setdefault(cls[v], f"x{v}")
    return cls, [names[i] for i in range(len(names))]


@dataclass(frozen=True)
class WirtingerCrossing:
    """Crossing data in generator indices: the relator reads ``source^[over^1] = target``."""

    source: int
    over: int
    target: int
    sign: int


def wirtinger_crossings(pd: PDCode) -> list[WirtingerCrossing]:
    cls, _ = arc_generators(pd)
    out = []
    for c in pd_crossings(pd):
        a_in, a_out, a_over = cls[c.under_in], cls[c.under_out], cls[c.over]
        if c.sign > 0:
            out.append(WirtingerCrossing(a_in, a_over, a_out, 1))
        else:
            out.append(WirtingerCrossing(a_out, a_over, a_in, -1))
    return out


def pd_to_presentation(pd: PDCode) -> Presentation:
    """Wirtinger presentation: one generator per arc, one relator per crossing."""
    _, names = arc_generators(pd)
    rels = [
        (word(w.source, w.over), FreeQuandleElement.gen(w.target)) for w in wirtinger_crossings(pd)
    ]
    return Presentation(tuple(names), tuple(rels))


def pd_longitude(pd: PDCode, base: int = 0) -> tuple[tuple[int, int], ...]:
    """Signed over-arc word met while walking once around the knot from ``base``.

    ``base^word`` equals ``base`` in the knot quandle, so the word can serve as
    a loop of a marked presentation.
    """
    if not pd.crossings:
        return ()
    cls, _ = arc_generators(pd)
    by_in = {c.under_in: c for c in pd_crossings(pd)}
    start = min(v for v, g in cls.items() if g == base)
    letters = []
    v = start
    for _ in range(2 * pd.size):
        c = by_in.get(v)
        if c is not None:
            letters.append((cls[c.over], c.sign))
        v = pd.succ(v)
    return tuple(letters)


def state_sum_weights(pd: PDCode, X: FiniteQuandle, theta: Cocycle, check: bool = True):
    """Per-coloring weights ``sum eps * theta(source color, over color)``.

    Returns ``(colorings, weights)`` in enumeration order; ``Counter(weights)``
    is the state-sum multiset.
    """
    if check:
        require_cocycle(X, theta)
    P = pd_to_presentation(pd)
    grp = theta.group
    homs = enumerate_homs(P, X)
    crossings = wirtinger_crossings(pd)
    weights = []
    for a in homs:
        w = grp.zero
        for c in crossings:
            s, o = int(a[c.source]), int(a[c.over])
            v = theta(s, o)
            w = grp.add(w, v) if c.sign > 0 else grp.sub(w, v)
        weights.append(w)
    return homs, weights


def state_sum_multiset(pd: PDCode, X: FiniteQuandle, theta: Cocycle) -> Counter:
    return Counter(state_sum_weights(pd, X, theta)[1])


# --- marked presentations ---------------------------------------------------


@dataclass(frozen=True)
class MarkedPresentation:
    """Presentation with a base generator and loop words standing for an H_1 basis."""

    presentation: Presentation
    base: int
    loops: tuple[tuple[tuple[int, int], ...], ...] = ()

    def __post_init__(self):
        n = self.presentation.ngens
        if not 0 <= self.base < n:
            raise StructuralError(f"base generator {self.base} out of range")
        loops = tuple(tuple((int(g), int(s)) for g, s in w) for w in self.loops)
        for w in loops:
            for g, s in w:
                if not 0 <= g < n or s not in (1, -1):
                    raise StructuralError(f"bad loop letter {(g, s)}")
        object.__setattr__(self, "loops", loops)

    def loop_element(self, k: int) -> FreeQuandleElement:
        return word(self.base, *self.loops[k])

    def augmented(self) -> Presentation:
        """The presentation with ``(base^loop, base)`` appended for every loop."""
        base = FreeQuandleElement.gen(self.base)
        return self.presentation.with_relators(
            [(self.loop_element(k), base) for k in range(len(self.loops))]
        )


def loop_weights(mp: MarkedPresentation, a, X: FiniteQuandle, theta: Cocycle):
    """``W`` for each loop word, after checking that the loop closes under ``a``."""
    out = []
    for k, w in enumerate(mp.loops):
        end = evaluate_word(word(mp.base, *w), a, X)
        if end != int(a[mp.base]):
            raise LoopNotClosed(
                f"loop {k} ends at {end}, base generator is colored {int(a[mp.base])}"
            )
        out.append(weight_along(theta, a[mp.base], w, a, X))
    return out


def surface_weight_ideal(mp: MarkedPresentation, a, X: FiniteQuandle, theta: Cocycle) -> IdealLattice:
    """Ideal generated by ``1*W - 1*0`` over the loop words."""
    grp = theta.group
    one = GroupRingElem.one(grp)
    gens = [GroupRingElem.monomial(grp, W) - one for W in loop_weights(mp, a, X, theta)]
    return ideal_from_generators(grp, gens)


def augmented_ideal(mp: MarkedPresentation, a, X: FiniteQuandle, theta: Cocycle, d: int = 0):
    """E_d of the cocycle-pair matrix of the loop-augmented presentation."""
    M = build_matrix(mp.augmented(), a, X, pair_cocycle(theta))
    return elementary_ideal(M, d)


# --- harness ----------------------------------------------------------------


@dataclass(frozen=True)
class IdealComparison:
    lhs: IdealLattice
    rhs: IdealLattice
    equal: bool
    image: tuple = ()


def verify_theorem2(X: FiniteQuandle, theta: Cocycle, rho=None, Q: FiniteQuandle | None = None) -> IdealComparison:
    """Compare E_0 of the cocycle-pair matrix of ``Q``'s table presentation,
    pulled back along ``rho``, with the ideal of ``1*a - 1*0`` over the image of
    theta o rho_* on H_2(Q).

    By default ``Q = X`` and ``rho`` is the identity.
    """
    Q = X if Q is None else Q
    rho = list(range(Q.order)) if rho is None else [int(v) for v in rho]
    connected, _ = is_connected(Q)
    if not connected:
        raise NotConnected(f"{Q.name or 'quandle'} is not connected")
    require_cocycle(X, theta)
    M = build_matrix(presentation_from_table(Q), rho, X, pair_cocycle(theta))
    lhs = elementary_ideal(M, 0)
    grp = theta.group
    one = GroupRingElem.one(grp)
    image = tuple(theta_rho_image(Q, X, rho, theta))
    rhs = ideal_from_generators(grp, [GroupRingElem.monomial(grp, g) - one for g in image])
    return IdealComparison(lhs, rhs, ideal_equal(lhs, rhs), image)


def trefoil() -> PDCode:
    return PDCode(((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)))


def figure_eight() -> PDCode:
    return PDCode(((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)))

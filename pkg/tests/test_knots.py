import random
from collections import Counter

import pytest

from qtwist.alexander import build_matrix, elementary_ideal, pair_cocycle
from qtwist.errors import CocycleViolation, LoopNotClosed, NotConnected, StructuralError
from qtwist.homology import Cocycle, coboundary, cocycle_basis
from qtwist.io import read_marked
from qtwist.knots import (
    MarkedPresentation,
    PDCode,
    augmented_ideal,
    figure_eight,
    loop_weights,
    pd_crossings,
    pd_longitude,
    pd_to_presentation,
    state_sum_multiset,
    state_sum_weights,
    surface_weight_ideal,
    trefoil,
    verify_theorem2,
)
from qtwist.quandle import (
    FreeQuandleElement,
    Presentation,
    dihedral_quandle,
    enumerate_homs,
    evaluate_word,
    is_connected,
    trivial_quandle,
    word,
)
from qtwist.ring import GroupRingElem, cyclic, ideal_from_generators

R3, R5 = dihedral_quandle(3), dihedral_quandle(5)
Z3 = cyclic(3)


def _relabel(pd: PDCode, shift: int) -> PDCode:
    n = 2 * pd.size
    return PDCode(tuple(tuple((v - 1 + shift) % n + 1 for v in x) for x in pd.crossings))


def _w_ideal(grp, W):
    return ideal_from_generators(grp, [GroupRingElem.monomial(grp, W) - GroupRingElem.one(grp)])


def test_unknot_presentation():
    P = pd_to_presentation(PDCode(()))
    assert P.generators == ("a",) and P.relators == ()
    assert len(enumerate_homs(P, R5)) == 5


def test_trefoil_presentation():
    P = pd_to_presentation(trefoil())
    assert P.generators == ("x1", "x2", "x4")
    assert len(P.relators) == 3
    assert [c.sign for c in pd_crossings(trefoil())] == [-1, -1, -1]  # left-handed


def test_figure_eight_signs():
    signs = sorted(c.sign for c in pd_crossings(figure_eight()))
    assert signs == [-1, -1, 1, 1]


def test_coloring_counts():
    assert len(enumerate_homs(pd_to_presentation(trefoil()), R3)) == 9
    assert len(enumerate_homs(pd_to_presentation(figure_eight()), R5)) == 25
    assert len(enumerate_homs(pd_to_presentation(figure_eight()), R3)) == 3
    assert len(enumerate_homs(pd_to_presentation(trefoil()), R5)) == 5


@pytest.mark.parametrize("pd", [trefoil(), figure_eight()], ids=["trefoil", "figure-eight"])
def test_counts_invariant_under_relabeling(pd, corpus):
    for shift in range(1, 2 * pd.size):
        Q = _relabel(pd, shift)
        for X in (R3, R5, corpus["S4"]):
            assert len(enumerate_homs(pd_to_presentation(Q), X)) == len(enumerate_homs(pd_to_presentation(pd), X))
        th = cocycle_basis(corpus["S4"], 2)[0]
        assert state_sum_multiset(Q, corpus["S4"], th) == state_sum_multiset(pd, corpus["S4"], th)


def test_malformed_pd_codes():
    with pytest.raises(StructuralError):
        PDCode(((1, 2, 3),))
    with pytest.raises(StructuralError):
        PDCode(((1, 2, 2, 1), (3, 3, 4, 5)))
    with pytest.raises(StructuralError):
        pd_crossings(PDCode(((1, 2, 4, 3), (3, 1, 2, 4))))


def test_state_sum_trefoil_s4(corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    ss = state_sum_multiset(trefoil(), X, th)
    assert ss == Counter({(0,): 4, (1,): 12})
    homs, weights = state_sum_weights(trefoil(), X, th)
    for a, W in zip(homs, weights):
        assert (W == (0,)) == (len(set(a)) == 1)


def test_state_sum_coboundary_is_trivial():
    th = coboundary(R3, [(0,), (1,), (0,)], Z3)
    assert state_sum_multiset(trefoil(), R3, th) == Counter({(0,): 9})
    assert state_sum_multiset(figure_eight(), R5, Cocycle.zero(Z3, 5)) == Counter({(0,): 25})


def test_state_sum_rejects_non_cocycle():
    with pytest.raises(CocycleViolation):
        state_sum_weights(trefoil(), R3, Cocycle.from_ints(3, [[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


@pytest.mark.parametrize("pd", [trefoil(), figure_eight()], ids=["trefoil", "figure-eight"])
def test_per_coloring_E0_is_weight_ideal(pd, corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    P = pd_to_presentation(pd)
    homs, weights = state_sum_weights(pd, X, th)
    for a, W in zip(homs, weights):
        M = build_matrix(P, a, X, pair_cocycle(th))
        assert elementary_ideal(M, 0) == _w_ideal(th.group, W)


def test_longitude_weight_is_state_sum(corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    for pd in (trefoil(), figure_eight()):
        P = pd_to_presentation(pd)
        mp = MarkedPresentation(P, 0, (pd_longitude(pd),))
        homs, weights = state_sum_weights(pd, X, th)
        for a, W in zip(homs, weights):
            assert evaluate_word(mp.loop_element(0), a, X) == a[0]
            assert loop_weights(mp, a, X, th) == [W]


# --- marked presentations ---------------------------------------------------


def _marked_fixtures(data_dir):
    return [read_marked(data_dir / f) for f in ("trefoil_longitude.mpres", "figure8_longitude.mpres", "trivial_sphere.mpres")]


def test_surface_ideal_equals_augmented_E0(corpus, data_dir):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    for mp in _marked_fixtures(data_dir) + [MarkedPresentation(Presentation(("a",)), 0)]:
        for a in enumerate_homs(mp.augmented(), X):
            assert surface_weight_ideal(mp, a, X, th) == augmented_ideal(mp, a, X, th)


def test_loop_free_gives_zero_ideal(corpus, data_dir):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    mp = read_marked(data_dir / "trivial_sphere.mpres")
    assert mp.loops == ()
    for a in enumerate_homs(mp.augmented(), X):
        assert surface_weight_ideal(mp, a, X, th).is_zero()
        assert augmented_ideal(mp, a, X, th).is_zero()


def test_cancelling_pair_leaves_weights(corpus, data_dir):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    rng = random.Random(41)
    mp = read_marked(data_dir / "trefoil_longitude.mpres")
    for _ in range(10):
        loops = []
        for w in mp.loops:
            w = list(w)
            k = rng.randint(0, len(w))
            g = rng.randrange(mp.presentation.ngens)
            s = rng.choice((1, -1))
            loops.append(tuple(w[:k] + [(g, s), (g, -s)] + w[k:]))
        mp2 = MarkedPresentation(mp.presentation, mp.base, tuple(loops))
        for a in enumerate_homs(mp.presentation, X):
            assert loop_weights(mp2, a, X, th) == loop_weights(mp, a, X, th)


def test_loop_not_closed(corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    mp = MarkedPresentation(Presentation(("a", "b")), 0, (((1, 1),),))
    with pytest.raises(LoopNotClosed):
        loop_weights(mp, (0, 1), X, th)


def test_marked_validation():
    with pytest.raises(StructuralError):
        MarkedPresentation(Presentation(("a",)), 2)
    with pytest.raises(StructuralError):
        MarkedPresentation(Presentation(("a",)), 0, (((3, 1),),))


# --- ideal comparison ------------------------------------------------------


def test_ideal_comparison_s4(corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    res = verify_theorem2(X, th)
    assert res.equal
    assert res.image == ((1,),)
    assert res.lhs == _w_ideal(th.group, (1,))


def test_ideal_comparison_zero_cocycle(corpus):
    for name in ("R3", "R5", "S4"):
        X = corpus[name]
        res = verify_theorem2(X, Cocycle.zero(cyclic(2), X.order))
        assert res.equal and res.lhs.is_zero() and res.rhs.is_zero()


def test_ideal_comparison_relabel_invariance(corpus):
    X = corpus["S4"]
    perm = [3, 1, 0, 2]
    Y = X.relabel(perm)
    for th in cocycle_basis(X, 2):
        vals = [[None] * 4 for _ in range(4)]
        for x in range(4):
            for y in range(4):
                vals[perm[x]][perm[y]] = th(x, y)
        th_y = Cocycle(th.group, vals)
        a, b = verify_theorem2(X, th), verify_theorem2(Y, th_y)
        assert a.equal and b.equal and a.lhs == b.lhs


def test_ideal_comparison_with_nontrivial_rho(corpus):
    X = corpus["S4"]
    th = cocycle_basis(X, 2)[0]
    res = verify_theorem2(X, th, rho=[0, 0, 0], Q=dihedral_quandle(3))
    assert res.equal and res.lhs.is_zero()


def test_ideal_comparison_rejects_disconnected(corpus):
    with pytest.raises(NotConnected):
        verify_theorem2(trivial_quandle(2), Cocycle.zero(cyclic(2), 2))
    with pytest.raises(NotConnected):
        verify_theorem2(corpus["R4"], Cocycle.zero(cyclic(2), 4))


@pytest.mark.parametrize("m", [4, 5])
def test_ideal_comparison_beyond_z2_z3(corpus, m):
    for name, X in corpus.items():
        if X.order == 1 or not is_connected(X)[0]:
            continue
        for th in cocycle_basis(X, m):
            assert verify_theorem2(X, th).equal, (name, m)


def test_generator_relator_words():
    P = pd_to_presentation(trefoil())
    for (lhs, rhs) in P.relators:
        assert isinstance(rhs, FreeQuandleElement) and rhs.tail == ()
        assert lhs == word(lhs.base, lhs.tail[0][0])

"""Acceptance suite: one test per criterion, each recording PASS/FAIL.

Run directly with ``python tests/test_acceptance.py`` or through pytest; the
per-criterion lines are printed in the terminal summary.
"""
import functools
import random
import sys
from pathlib import Path

import pytest

import conftest
from oracles import brute_force_cocycles, fox_alexander_gcd, homology_counts, laurent_to_sympy
from qtwist.alexander import (
    AlexanderPair,
    build_matrix,
    elementary_ideal,
    f_derivative,
    pair_cocycle,
    pair_laurent,
    random_move,
    verify_alexander_pair,
)
from qtwist.homology import Cocycle, boundary_matrix, chain_basis, cocycle_basis, quandle_H2
from qtwist.intmat import matmul
from qtwist.io import read_marked
from qtwist.knots import (
    MarkedPresentation,
    augmented_ideal,
    figure_eight,
    pd_to_presentation,
    state_sum_weights,
    surface_weight_ideal,
    trefoil,
    verify_theorem2,
)
from qtwist.quandle import (
    FreeQuandleElement,
    Presentation,
    check_axioms,
    corpus,
    dihedral_quandle,
    enumerate_homs,
    is_connected,
    presentation_from_table,
    search_connected_conjugation_quandles,
    trivial_quandle,
    word,
)
from qtwist.ring import GroupRingElem, cyclic, ideal_from_generators, laurent

ROOT = Path(__file__).resolve().parent.parent
R3, R5 = dihedral_quandle(3), dihedral_quandle(5)
CORPUS = corpus()


def criterion(key, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            conftest.ACCEPTANCE_RESULTS[key] = (False, title)
            fn(*args, **kwargs)
            conftest.ACCEPTANCE_RESULTS[key] = (True, title)

        return inner

    return wrap


def _w_ideal(grp, W):
    return ideal_from_generators(grp, [GroupRingElem.monomial(grp, W) - GroupRingElem.one(grp)])


@criterion("1", "quandle and Alexander-pair axiom suites")
def test_criterion_1_axioms():
    names = {"T1", "T2", "T3", "T4", "R3", "R4", "R5"}
    assert names <= set(CORPUS)
    six = [X for X in CORPUS.values() if X.order == 6 and is_connected(X)[0]]
    assert six, "no connected order-6 quandle in the corpus"
    found = search_connected_conjugation_quandles(6)
    assert any((X.table == Y.table).all() for X in six for Y in found)
    for name, X in CORPUS.items():
        assert check_axioms(X.table) is None, name
    laurent_pair = pair_laurent()
    for name, X in CORPUS.items():
        assert verify_alexander_pair(X, laurent_pair) is None, name
        for m in (2, 3):
            for th in cocycle_basis(X, m):
                assert verify_alexander_pair(X, pair_cocycle(th, X)) is None, (name, m)


@criterion("2", "chain-complex sanity and homology oracle")
def test_criterion_2_chain_complex():
    for name, X in CORPUS.items():
        n2, n3 = len(chain_basis(X, 2)), len(chain_basis(X, 3))
        d2, d3 = boundary_matrix(X, 2), boundary_matrix(X, 3)
        assert all(v == 0 for row in matmul(d2, d3, inner=n2) for v in row), name
        h = quandle_H2(X)
        pos = chain_basis(X, 2).position
        for z in h.generators:
            v = [0] * n2
            for t, c in z.items():
                v[pos[t]] = c
            assert not any(sum(a * b for a, b in zip(row, v)) for row in d2), name
        free, torsion = homology_counts(d2, d3, n2, n3)
        assert sum(1 for d in h.invariant_factors if d == 0) == free, name
        for p, count in torsion.items():
            assert sum(1 for d in h.invariant_factors if d > 1 and d % p == 0) == count, (name, p)


def _random_word(rng, ngens):
    tail = tuple((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(rng.randint(0, 8)))
    return FreeQuandleElement(rng.randrange(ngens), tail)


@criterion("3", "cocycle fast path equals the general derivative rule")
def test_criterion_3_fast_path():
    rng = random.Random(2024)
    Z3 = cyclic(3)
    basis = cocycle_basis(R3, 3)
    # the basis is empty for R3 over Z/3, so every Z/3 cocycle is checked as well
    every = [Cocycle.from_ints(3, [list(r) for r in tab]) for tab in brute_force_cocycles(R3, 3)]
    assert len(every) == 9
    for th in basis + every:
        assert th.group == Z3
        fast = pair_cocycle(th, R3)
        general = AlexanderPair(fast.group, fast.f1, fast.f2, fast.f1_inv)
        for _ in range(200):
            w = _random_word(rng, 4)
            a = tuple(rng.randrange(3) for _ in range(4))
            for j in range(4):
                assert f_derivative(w, j, fast, a, R3) == f_derivative(w, j, general, a, R3)


def _suite_matrices():
    S4 = CORPUS["S4"]
    th2 = cocycle_basis(S4, 2)[0]
    pair = pair_cocycle(th2)
    out = []
    for pd in (trefoil(), figure_eight()):
        P = pd_to_presentation(pd)
        for a in enumerate_homs(P, S4):
            out.append((P, a, S4, pair))
    P = presentation_from_table(S4)
    for a in enumerate_homs(P, S4)[:4]:
        out.append((P, a, S4, pair))
    th3 = Cocycle.from_ints(3, [list(r) for r in sorted(brute_force_cocycles(R3, 3))[1]])
    P = pd_to_presentation(trefoil())
    for a in enumerate_homs(P, R3):
        out.append((P, a, R3, pair_cocycle(th3)))
    return out


def _consequences(P):
    x = [FreeQuandleElement.gen(i) for i in range(P.ngens)]
    lhs, rhs = P.relators[0]
    return [
        (word(0, 1, (1, -1)), x[0]),
        (lhs ** x[-1], rhs ** x[-1]),
        (rhs, lhs),
        P.relators[-1],
    ]


@criterion("4", "elementary ideals survive random moves and consequence relators")
def test_criterion_4_move_invariance():
    rng = random.Random(4)
    for P, a, X, pair in _suite_matrices():
        M = build_matrix(P, a, X, pair)
        ds = range(M.ncols + 1)
        ideals = [elementary_ideal(M, d) for d in ds]
        coeffs = [GroupRingElem.monomial(M.group, g) for g in M.group.elements]
        N = M
        for _ in range(100):
            N = random_move(N, rng, coeffs)
        assert [elementary_ideal(N, d) for d in ds] == ideals
        for extra in _consequences(P):
            K = build_matrix(P.with_relators([extra]), a, X, pair)
            assert [elementary_ideal(K, d) for d in ds] == ideals


@criterion("5", "ideal comparison on connected quandles of order <= 5")
def test_criterion_5_ideal_comparison():
    compared = 0
    for name, X in CORPUS.items():
        if X.order > 5 or not is_connected(X)[0]:
            continue
        for m in (2, 3):
            for th in cocycle_basis(X, m):
                assert verify_theorem2(X, th).equal, (name, m)
                compared += 1
    assert compared >= 1


@criterion("6", "loop-weight ideal equals E_0 of the loop-augmented matrix")
def test_criterion_6_loop_weight_ideal():
    marked = [read_marked(ROOT / "data" / f) for f in
              ("trefoil_longitude.mpres", "figure8_longitude.mpres", "trivial_sphere.mpres")]
    marked.append(MarkedPresentation(Presentation(("a",)), 0))
    assert sum(1 for mp in marked if not mp.loops) >= 1
    S4 = CORPUS["S4"]
    th = cocycle_basis(S4, 2)[0]
    for mp in marked:
        for a in enumerate_homs(mp.augmented(), S4):
            lhs = surface_weight_ideal(mp, a, S4, th)
            assert lhs == augmented_ideal(mp, a, S4, th)
            if not mp.loops:
                assert lhs.is_zero()


@criterion("7a", "trefoil has 9 R3-colorings")
def test_criterion_7a_trefoil_colorings():
    assert len(enumerate_homs(pd_to_presentation(trefoil()), R3)) == 9


@criterion("7b", "figure-eight has 25 R5-colorings")
def test_criterion_7b_figure_eight_colorings():
    assert len(enumerate_homs(pd_to_presentation(figure_eight()), R5)) == 25


@criterion("7c", "trefoil E_1 for (t, 1-t) is t^2 - t + 1")
def test_criterion_7c_alexander_polynomial():
    P = pd_to_presentation(trefoil())
    M = build_matrix(P, (0, 0, 0), trivial_quandle(1), pair_laurent())
    I = elementary_ideal(M, 1)
    assert I.gcd == laurent([1, -1, 1])
    assert (laurent_to_sympy(I.gcd) - fox_alexander_gcd(P, 2).as_expr()).expand() == 0


@criterion("7d", "trefoil over R3 with a nontrivial Z/3 class: E_0 = (1*W - 1), W != 0 off the diagonal")
def test_criterion_7d_trefoil_state_sum():
    basis = cocycle_basis(R3, 3)
    assert basis, "R3 has no nontrivial Z/3 cohomology class (H^2(R3; Z/3) = 0)"
    P = pd_to_presentation(trefoil())
    for th in basis:
        homs, weights = state_sum_weights(trefoil(), R3, th)
        for a, W in zip(homs, weights):
            assert elementary_ideal(build_matrix(P, a, R3, pair_cocycle(th)), 0) == _w_ideal(th.group, W)
            if len(set(a)) > 1:
                assert W != th.group.zero


@criterion("8", "surface-diagram claims: limitation documented, algebraic content covered by 5 and 6")
def test_criterion_8_documented_limitation():
    readme = (ROOT / "README.md").read_text()
    assert "## Limitations" in readme
    section = readme.split("## Limitations", 1)[1]
    assert "surface" in section and "diagram" in section


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

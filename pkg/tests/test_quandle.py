import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_colorings, brute_force_endomorphisms
from qtwist.errors import NonHomomorphism, QuandleAxiomError, StructuralError
from qtwist.quandle import (
    FiniteQuandle,
    FreeQuandleElement,
    Presentation,
    check_axioms,
    check_homomorphism,
    dihedral_quandle,
    enumerate_homs,
    evaluate_word,
    fq_operate,
    is_connected,
    presentation_from_table,
    satisfies,
    trivial_quandle,
    word,
)
from qtwist.knots import pd_to_presentation, trefoil

R3 = dihedral_quandle(3)


def test_dihedral_axioms_exhaustive():
    assert check_axioms(R3.table) is None
    assert all(
        R3.table[x, y] == (2 * y - x) % 3 for x in range(3) for y in range(3)
    )


def test_q1_violation():
    bad = check_axioms([[1, 0], [0, 1]])
    assert bad.axiom == "Q1" and bad.witness[0] == 0


def test_q2_and_q3_violations():
    assert check_axioms([[0, 0, 0], [1, 1, 0], [2, 2, 2]]).axiom == "Q2"
    # columns are permutations and the diagonal is fixed, but self-distributivity fails
    T = [[0, 2, 1, 0], [2, 1, 3, 1], [1, 3, 2, 2], [3, 0, 0, 3]]
    v = check_axioms(T)
    assert v is not None and v.axiom in ("Q2", "Q3")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_trivial_quandles(n):
    X = trivial_quandle(n)
    assert check_axioms(X.table) is None
    conn, orbits = is_connected(X)
    assert conn == (n == 1)
    assert orbits == [[i] for i in range(n)]


def test_structural_errors():
    with pytest.raises(StructuralError):
        check_axioms([[0, 1], [0]])
    with pytest.raises(StructuralError):
        check_axioms([[0, 5], [1, 1]])
    with pytest.raises(QuandleAxiomError):
        FiniteQuandle([[1, 0], [0, 1]])


def test_connectivity_examples(corpus):
    assert is_connected(R3) == (True, [[0, 1, 2]])
    assert is_connected(corpus["R4"]) == (False, [[0, 2], [1, 3]])


def test_fq_operate_examples():
    a, b, c = (FreeQuandleElement.gen(i) for i in range(3))
    assert a ** a == a
    assert fq_operate(a ** b, b, -1) == a
    assert (a ** b) ** c == word(0, 1, 2)
    assert word(0, 1, 2).tail == ((1, 1), (2, 1))


def test_evaluate_word_examples():
    assert evaluate_word(FreeQuandleElement.gen(0), (1,), R3) == 1
    assert evaluate_word(word(0, 1), (1, 2), R3) == 0
    w = word(0, (1, 1), (1, -1))
    assert w == FreeQuandleElement.gen(0)
    for a in itertools.product(range(3), repeat=2):
        assert evaluate_word(w, a, R3) == a[0]


def test_enumerate_homs_examples(corpus):
    P = pd_to_presentation(trefoil())
    homs = enumerate_homs(P, R3)
    assert len(homs) == 9
    assert sum(len(set(a)) == 1 for a in homs) == 3
    assert sum(len(set(a)) == 3 for a in homs) == 6
    assert homs == brute_force_colorings(P, R3)
    for X in corpus.values():
        if X.order <= 5:
            assert len(enumerate_homs(P, trivial_quandle(1))) == 1
            assert len(enumerate_homs(Presentation(("a",)), X)) == X.order


def test_presentation_from_table_examples(small_corpus):
    P1 = presentation_from_table(trivial_quandle(1))
    assert P1.ngens == 1 and len(P1.relators) == 1
    assert P1.relators[0] == (word(0, 0), word(0))
    P3 = presentation_from_table(R3)
    assert P3.ngens == 3 and len(P3.relators) == 9
    for X in small_corpus.values():
        if X.order <= 4:
            homs = enumerate_homs(presentation_from_table(X), X)
            assert sorted(homs) == brute_force_endomorphisms(X)


def test_homomorphism_check(corpus):
    check_homomorphism([0, 0, 0], R3, R3)
    with pytest.raises(NonHomomorphism):
        check_homomorphism([0, 1, 1], R3, R3)


def test_presentation_validates_indices():
    with pytest.raises(StructuralError):
        Presentation(("a",), ((word(0, 1), word(0)),))


# --- properties -------------------------------------------------------------

letters = st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=6)
elements = st.builds(FreeQuandleElement, st.integers(0, 3), letters.map(tuple))


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_free_quandle_axioms_symbolically(x, y, z):
    assert x ** x == x
    assert fq_operate(x ** y, y, -1) == x
    assert fq_operate(fq_operate(x, y, -1), y, 1) == x
    assert (x ** y) ** z == (x ** z) ** (y ** z)


@settings(max_examples=200, deadline=None)
@given(elements, elements, st.data())
def test_evaluate_is_homomorphism(x, y, data):
    from qtwist.quandle import corpus

    X = data.draw(st.sampled_from([Q for Q in corpus().values() if Q.order <= 5]))
    a = data.draw(st.tuples(*[st.integers(0, X.order - 1)] * 4))
    ex, ey = evaluate_word(x, a, X), evaluate_word(y, a, X)
    assert evaluate_word(x ** y, a, X) == X.table[ex, ey]
    assert evaluate_word(fq_operate(x, y, -1), a, X) == X.inv_table[ex, ey]


def _random_presentation(rng, ngens, nrel, tail=3):
    rels = []
    for _ in range(nrel):
        sides = []
        for _ in range(2):
            base = rng.randrange(ngens)
            t = [(rng.randrange(ngens), rng.choice((1, -1))) for _ in range(rng.randint(0, tail))]
            sides.append(FreeQuandleElement(base, tuple(t)))
        rels.append(tuple(sides))
    return Presentation(tuple(f"g{i}" for i in range(ngens)), tuple(rels))


def test_enumeration_exact_on_small_instances(small_corpus):
    rng = random.Random(11)
    for X in small_corpus.values():
        if X.order > 4:
            continue
        for _ in range(8):
            P = _random_presentation(rng, rng.randint(1, 4), rng.randint(0, 4))
            homs = enumerate_homs(P, X)
            assert homs == brute_force_colorings(P, X)
            assert all(satisfies(P, a, X) for a in homs)


def test_reordering_permutes_homs(small_corpus):
    rng = random.Random(5)
    for X in small_corpus.values():
        for _ in range(4):
            P = _random_presentation(rng, 3, 3)
            base = set(enumerate_homs(P, X))
            rels = list(P.relators)
            rng.shuffle(rels)
            assert set(enumerate_homs(Presentation(P.generators, tuple(rels)), X)) == base
            perm = [2, 0, 1]  # generator i of P becomes generator perm[i]

            def rename(w):
                return FreeQuandleElement(perm[w.base], tuple((perm[g], s) for g, s in w.tail))

            names = [None] * 3
            for i in range(3):
                names[perm[i]] = P.generators[i]
            Q = Presentation(tuple(names), tuple((rename(l), rename(r)) for l, r in P.relators))
            moved = {tuple(a[perm[i]] for i in range(3)) for a in enumerate_homs(Q, X)}
            assert moved == base


def test_relabel_is_isomorphism(corpus):
    X = corpus["S4"]
    Y = X.relabel([2, 0, 3, 1])
    assert check_axioms(Y.table) is None
    perm = [2, 0, 3, 1]
    for x in range(4):
        for y in range(4):
            assert Y.table[perm[x], perm[y]] == perm[X.table[x, y]]


def test_inverse_table(corpus):
    for X in corpus.values():
        n = X.order
        idx = np.arange(n)
        for y in range(n):
            assert np.array_equal(X.table[X.inv_table[:, y], y], idx)

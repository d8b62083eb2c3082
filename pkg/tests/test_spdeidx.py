import random

from hypothesis import given, settings, strategies as st

from mnov.exactalg import MultiIdx, ONE, Poly, poly_mul
from mnov.spdeidx import (
    EMPTY,
    SpdeVar,
    derivation_D,
    derivation_partial,
    free_generation_check,
    first_letters,
    is_populated,
    make_word,
    product_tri,
    spde_var,
    word_normal_form,
)
from mnov.verify import random_letter_tuple, random_spde_poly


def W(*ns, ds=()):
    return make_word(ns, ds)


def test_word_examples():
    assert word_normal_form([("D", (1, 0)), ("d", 0)]) == Poly.basis(W((1, 0), ds=(0,)))
    assert word_normal_form([("d", 0), ("D", (1, 0))]) == Poly({W((1, 0), ds=(0,)): 1, W((0, 0)): 1})
    assert word_normal_form([("d", 0), ("D", (0, 1))]) == Poly.basis(W((0, 1), ds=(0,)))


def test_word_coefficient_is_component():
    # d0 (2,0) = (2,0) d0 + 2 (1,0)
    got = word_normal_form([("d", 0), ("D", (2, 0))])
    assert got == Poly({W((2, 0), ds=(0,)): 1, W((1, 0)): 2})


def test_derivation_D_examples():
    n = (1, 0)
    assert derivation_D(n, spde_var("l")) == spde_var("l", W(n))
    assert derivation_D(n, spde_var("l", W(n))) == spde_var("l", W(n, n))
    assert derivation_D(n, Poly({ONE: 1})) == Poly()


def test_partial_examples():
    assert derivation_partial(0, spde_var("l")) == spde_var("l", W(ds=(0,)))
    got = derivation_partial(0, spde_var("l", W((1, 0))))
    assert got == spde_var("l", W((1, 0), ds=(0,))) + spde_var("l", W((0, 0)))
    assert derivation_partial(0, spde_var("l", W((0, 1)))) == spde_var("l", W((0, 1), ds=(0,)))


def test_product_examples():
    n = (0, 1)
    assert product_tri(n, spde_var("l"), spde_var("l")) == poly_mul(spde_var("l"), spde_var("l", W(n)))
    p = spde_var("l", W((1, 0))) + spde_var("m")
    assert product_tri(n, Poly({ONE: 1}), p) == derivation_D(n, p)
    assert product_tri(n, p, Poly({ONE: 1})) == Poly()


def test_populated_examples():
    assert is_populated(MultiIdx([SpdeVar("l", EMPTY)]))
    assert is_populated(MultiIdx([SpdeVar("l", W(ds=(0,)))]))
    assert not is_populated(MultiIdx([SpdeVar("l", W((1, 0)))]))


def test_free_generation_examples():
    assert free_generation_check(1, (1, 1), ["l"], 0)["equal"]
    assert free_generation_check(2, (1, 1), ["l"], 0)["equal"]
    r = free_generation_check(3, (1, 1), ["l"], 1)
    assert r["equal"] and r["free"] == r["span"] == r["populated"] > 0


def test_first_letters_order():
    assert first_letters(1, 4) == [(0, 0), (0, 1), (1, 0), (0, 2)]


def test_commutator_relation():
    rng = random.Random(11)
    for _ in range(100):
        p = random_spde_poly(rng, 2)
        n = random_letter_tuple(rng, 2, 3)
        for i in range(3):
            lhs = derivation_partial(i, derivation_D(n, p)) - derivation_D(n, derivation_partial(i, p))
            lowered = n[:i] + (n[i] - 1,) + n[i + 1:]
            rhs = n[i] * derivation_D(lowered, p) if n[i] else Poly()
            assert lhs == rhs


def test_partials_commute():
    rng = random.Random(12)
    for _ in range(100):
        p = random_spde_poly(rng, 2)
        assert derivation_partial(0, derivation_partial(2, p)) == derivation_partial(2, derivation_partial(0, p))


def test_partial_preserves_populated():
    rng = random.Random(13)
    for _ in range(100):
        v = SpdeVar("l", make_word([random_letter_tuple(rng, 1, 2)], []))
        m = MultiIdx([SpdeVar("l", EMPTY), v])
        assert is_populated(m)
        out = derivation_partial(rng.randint(0, 1), Poly.basis(m))
        assert all(is_populated(u) for u in out.keys())


letter = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
wletter = st.one_of(letter.map(lambda n: ("D", n)), st.integers(0, 2).map(lambda i: ("d", i)))


@settings(max_examples=200, deadline=None)
@given(st.lists(wletter, max_size=6))
def test_word_confluence_and_homogeneity(w):
    left = word_normal_form(w, "leftmost")
    assert left == word_normal_form(w, "rightmost")
    nbig = sum(1 for k, _ in w if k == "D")
    assert all(u.length == nbig for u in left.keys())


@settings(max_examples=100, deadline=None)
@given(st.lists(letter, max_size=3), st.lists(st.integers(0, 2), max_size=2), st.integers(0, 2))
def test_fast_partial_matches_rewriting(ns, ds, i):
    p = spde_var("l", make_word(ns, ds))
    assert derivation_partial(i, p) == derivation_partial(i, p, via_rewriting=True)

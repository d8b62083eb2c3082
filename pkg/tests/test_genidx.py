import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from mnov import magnov
from mnov.exactalg import MultiIdx, ONE, Poly, poly_mul
from mnov.genidx import (
    GenVar,
    GeneralIndices,
    NotPopulated,
    brace_closed_form,
    derivation_D,
    enumerate_populated,
    express_in_generators,
    gen_var,
    is_populated,
    is_populated_graded,
    product_tri,
)
from mnov.magnov import Leaf, Node
from mnov.verify import random_element


def z(k, label="l"):
    """ODE dictionary: z_k = z_(l, a^k)."""
    return gen_var(label, ["a"] * k)


def mono(*ks):
    return MultiIdx([GenVar("l", MultiIdx(["a"] * k)) for k in ks])


def test_derivation_examples():
    assert derivation_D("a", gen_var("l")) == gen_var("l", ["a"])
    assert derivation_D("a", gen_var("l", ["a"])) == 2 * gen_var("l", ["a", "a"])
    assert derivation_D("a", Poly({ONE: 1})) == Poly()


def test_product_examples():
    assert product_tri("a", z(0), z(0)) == poly_mul(z(0), z(1))
    assert product_tri("a", z(1), z(0)) == poly_mul(z(1), z(1))
    assert product_tri("a", z(0), z(1)) == 2 * poly_mul(z(0), z(2))


def test_populated_examples():
    assert is_populated(mono(0))
    assert not is_populated(mono(1))
    assert is_populated(mono(0, 0, 2))


def test_populated_formulations_agree():
    for n in range(1, 6):
        for ks in combinations_with_replacement(range(5), n):
            m = mono(*ks)
            assert is_populated(m) == is_populated_graded(m)


def partition_numbers(n):
    # p(0..n) by the pentagonal-free dynamic programme over part sizes
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(part, n + 1):
            p[k] += p[k - part]
    return p


def test_enumeration_counts_one_letter():
    p = partition_numbers(6)
    counts = [len(enumerate_populated(n, ["a"], ["l"])) for n in range(1, 8)]
    assert counts == [1, 1, 2, 3, 5, 7, 11] == p[:7]


def test_enumeration_two_letters_degree_3():
    # brute force: multisets of 3 weight vectors (i, j) with total weight (sum) 2
    vecs = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]
    brute = sum(1 for ms in combinations_with_replacement(vecs, 3) if sum(i + j for i, j in ms) == 2)
    assert brute == 6
    assert len(enumerate_populated(3, ["a", "b"], ["l"])) == 6


def test_enumeration_is_populated_and_sorted():
    out = enumerate_populated(4, ["a", "b"], ["l", "m"])
    assert all(is_populated(m) and m.degree == 4 for m in out)
    assert out == sorted(out) and len(set(out)) == len(out)


def test_express_examples():
    ctx = GeneralIndices(["a"], ["l"])
    l = Leaf("l")
    assert express_in_generators(mono(0), ctx) == Poly.basis(l)
    assert express_in_generators(mono(0, 1), ctx) == Poly.basis(Node("a", l, l))
    corolla = Node("a", l, Node("a", l, l))
    chain = Node("a", Node("a", l, l), l)
    expected = Poly({corolla: Fraction(1, 2), chain: Fraction(-1, 2)})
    assert express_in_generators(mono(0, 0, 2), ctx) == expected
    assert magnov.eval_poly(expected, ctx) == Poly.basis(mono(0, 0, 2))


def test_express_rejects_unpopulated():
    with pytest.raises(NotPopulated):
        express_in_generators(mono(1))


def test_express_round_trip():
    ctx = GeneralIndices(["a", "b"], ["l", "m"])
    for n in range(1, 5):
        for m in enumerate_populated(n, ctx.letters, ctx.gens):
            assert magnov.eval_poly(express_in_generators(m, ctx), ctx) == Poly.basis(m)


def random_poly(rng, letters, labels, max_deg=3):
    out = Poly()
    for _ in range(rng.randint(1, 3)):
        vs = [GenVar(rng.choice(labels), MultiIdx(rng.choices(letters, k=rng.randint(0, 2))))
              for _ in range(rng.randint(0, max_deg))]
        out = out + Fraction(rng.randint(-3, 3), rng.randint(1, 3)) * Poly.basis(MultiIdx(vs))
    return out


def test_derivations_commute():
    rng = random.Random(5)
    for _ in range(100):
        p = random_poly(rng, "ab", "lm")
        assert derivation_D("a", derivation_D("b", p)) == derivation_D("b", derivation_D("a", p))


def test_products_preserve_populated_span():
    rng = random.Random(6)
    ctx = GeneralIndices(["a", "b"], ["l", "m"])
    for _ in range(60):
        p = random_element(rng, ctx, 3, ctx.letters, ctx.gens)
        q = random_element(rng, ctx, 3, ctx.letters, ctx.gens)
        r = product_tri(rng.choice("ab"), p, q)
        assert all(is_populated(m) for m in r.keys())


def test_span_dimension_equals_populated_count():
    from mnov.exactalg import rank

    ctx = GeneralIndices(["a", "b"], ["l"])
    for n in range(1, 6):
        vecs = [magnov.eval_canonical(t, ctx) for t in magnov.enumerate_normal(n, ctx=ctx)]
        assert rank(vecs) == len(enumerate_populated(n, ctx.letters, ctx.gens))


def test_brace_closed_form_small():
    x, y1, y2 = gen_var("x"), gen_var("y"), gen_var("z")
    expected = poly_mul(poly_mul(gen_var("x", ["a", "b"]), y1), y2)
    assert brace_closed_form(x, [y1, y2], ["a", "b"]) == expected
    assert brace_closed_form(x, [y1], ["a"]) == poly_mul(gen_var("x", ["a"]), y1)

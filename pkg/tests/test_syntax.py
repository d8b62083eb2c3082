import random

import pytest

from mnov.dectree import DecTree, RawTree, tree_normal_form
from mnov.exactalg import MultiIdx, Poly
from mnov.genidx import GenVar
from mnov.magnov import Leaf, Node
from mnov.spdeidx import SpdeVar, make_word, var_of_word, word_normal_form
from mnov.syntax import (
    ParseError,
    format_gen_monomial,
    format_letter_seq,
    format_poly,
    format_raw_tree,
    format_spde_monomial,
    format_term,
    format_tree,
    format_word,
    parse,
)
from mnov.verify import random_dectree, random_raw_tree

IDENTS = ["x", "y", "l", "m", "ab", "q1", "z"]
LETTERS = ["a", "b", "c2", (0,), (1, 0), (2, 1, 0)]


def rand_letter(rng, tuples_only=False, width=None):
    if tuples_only:
        return tuple(rng.randint(0, 3) for _ in range(width))
    return rng.choice(LETTERS)


def rand_term(rng, n):
    if n == 1:
        return Leaf(rng.choice(IDENTS))
    k = rng.randint(1, n - 1)
    return Node(rand_letter(rng), rand_term(rng, k), rand_term(rng, n - k))


def test_examples():
    x = Leaf("x")
    assert parse("x >[a] (x >[a] x)", "magma") == Node("a", x, Node("a", x, x))
    m = parse("z{l; (1,0)} * z{l;}", "genidx")
    assert m == MultiIdx([GenVar("l", MultiIdx([(1, 0)])), GenVar("l", MultiIdx())])
    t = parse("T[l | X0 ; I((1,0), T[m |;])]", "tree")
    assert t == RawTree("l", [("X", 0), ("I", (1, 0), RawTree("m"))])
    assert parse("I((1),T[l|;]) X0 T[l|;]", "tree") == RawTree("l", [("I", (1,), RawTree("l")), ("X", 0)])
    assert parse("d0.D(1,0)", "spde") == ("word", [("d", 0), ("D", (1, 0))])
    assert parse("1", "spde") == ("word", [])


def test_right_associativity():
    x, y, z = Leaf("x"), Leaf("y"), Leaf("z")
    assert parse("x >[a] y >[b] z", "magma") == Node("a", x, Node("b", y, z))
    assert parse("(x >[a] y) >[b] z", "magma") == Node("b", Node("a", x, y), z)


def test_whitespace_insensitive():
    assert parse(" ( x>[ (1 ,0) ]y ) ", "magma") == Node((1, 0), Leaf("x"), Leaf("y"))


@pytest.mark.parametrize("text,kind,line,col", [
    ("x >[a (x", "magma", 1, 7),
    ("x >[a]\n  >[b] y", "magma", 2, 3),
    ("z{l; (1,}", "genidx", 1, 9),
    ("d0.Q", "spde", 1, 4),
    ("T[l| Y0]", "tree", 1, 6),
    ("x $ y", "magma", 1, 3),
    ("", "magma", 1, 1),
])
def test_errors_carry_position(text, kind, line, col):
    with pytest.raises(ParseError) as info:
        parse(text, kind)
    assert (info.value.line, info.value.col) == (line, col)
    assert info.value.expected


def test_unknown_kind():
    with pytest.raises(ValueError):
        parse("x", "nope")


def test_round_trip_magma():
    rng = random.Random(100)
    for _ in range(1000):
        t = rand_term(rng, rng.randint(1, 7))
        assert parse(format_term(t), "magma") == t


def test_round_trip_genidx():
    rng = random.Random(101)
    for _ in range(1000):
        vs = [GenVar(rng.choice(IDENTS), MultiIdx([rand_letter(rng) for _ in range(rng.randint(0, 3))]))
              for _ in range(rng.randint(0, 4))]
        m = MultiIdx(vs) if len({type(a) for v in vs for a in v.w.keys()}) <= 1 else MultiIdx(vs[:1])
        assert parse(format_gen_monomial(m), "genidx") == m


def test_round_trip_spde():
    rng = random.Random(102)
    for _ in range(1000):
        width = rng.randint(1, 3)
        seq = []
        for _ in range(rng.randint(0, 5)):
            if rng.random() < 0.5:
                seq.append(("D", rand_letter(rng, True, width)))
            else:
                seq.append(("d", rng.randint(0, width - 1)))
        assert parse(format_letter_seq(seq), "spde") == ("word", seq)
        nf = word_normal_form(seq)
        for w in nf.keys():
            tag, body = parse(format_word(w), "spde")
            assert word_normal_form(body) == Poly.basis(w)
        vs = [SpdeVar(rng.choice(IDENTS), w) for w in list(nf.keys())[:3]]
        m = MultiIdx(vs)
        tag, body = parse(format_spde_monomial(m), "spde")
        rebuilt = Poly.basis(MultiIdx())
        for label, s, k in body:
            for _ in range(k):
                rebuilt = rebuilt * var_of_word(label, word_normal_form(s))
        assert rebuilt == Poly.basis(m)


def test_round_trip_trees():
    rng = random.Random(103)
    letters = [(0, 1), (1, 0), (1, 1)]
    for _ in range(1000):
        raw = random_raw_tree(rng, rng.randint(1, 5), letters, 1)
        assert parse(format_raw_tree(raw), "tree") == raw
        t = random_dectree(rng, rng.randint(1, 5), letters, [("l", (0, 0)), ("m", (1, 0))])
        assert tree_normal_form(parse(format_tree(t), "tree")) == Poly.basis(t)


def test_canonical_tree_printing():
    t = DecTree("l", MultiIdx([0]), [((1, 0), DecTree("m"))])
    assert format_tree(t) == "T[l|X0;I((1,0),T[m|;])]"


def test_poly_printing():
    x = Leaf("x")
    p = Poly({x: 1, Node("a", x, x): -2})
    assert format_poly(p, format_term) == "x - 2*x >[a] x"
    assert format_poly(Poly(), format_term) == "0"

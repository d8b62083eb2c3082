import os
import subprocess
import sys
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from mnov import kernels
from mnov.exactalg import (
    DerivationSpec,
    ExactSolver,
    MultiIdx,
    ONE,
    Poly,
    SingularSystem,
    apply_derivation,
    mono_mul,
    poly_add,
    poly_mul,
    poly_scale,
    rank,
    var,
)


def test_poly_add_examples():
    assert poly_add(Poly({"b": 2}), Poly({"b": -2})) == Poly()
    assert poly_add(Poly({"b": 1}), Poly({"b": 1})) == Poly({"b": 2})
    p = Poly({"b1": Fraction(1, 2), "b2": 1})
    assert poly_add(p, Poly({"b1": Fraction(1, 2)})) == Poly({"b1": 1, "b2": 1})


def test_poly_scale_examples():
    assert poly_scale(0, Poly({"b": 3})) == Poly()
    p = Poly({"b": 3, "c": Fraction(-1, 7)})
    assert poly_scale(1, p) == p
    assert poly_scale(Fraction(1, 2), Poly({"b": 2})) == Poly({"b": 1})


def test_no_stored_zeros():
    p = Poly({"a": 0, "b": 1})
    assert list(p.keys()) == ["b"]
    assert len(p - p) == 0


def test_mono_mul_examples():
    z0, z1 = MultiIdx(["z0"]), MultiIdx(["z1"])
    assert mono_mul(ONE, z0 * z1) == z0 * z1
    assert mono_mul(z0, z0) == MultiIdx({"z0": 2})
    assert mono_mul(z0 * z1, z1) == MultiIdx({"z0": 1, "z1": 2})


def test_multiidx_structural_equality():
    assert MultiIdx({"a": 1, "b": 0}) == MultiIdx(["a"])
    assert MultiIdx(["a", "b", "a"]).degree == 3
    assert MultiIdx(["a", "a"]).factorial() == 2
    with pytest.raises(ValueError):
        MultiIdx({"a": -1})


def ode_D():
    # z_k -> (k+1) z_{k+1}
    return DerivationSpec(lambda k: (k + 1) * var(k + 1))


def test_derivation_examples():
    d = DerivationSpec(lambda v: var("y") if v == "x" else Poly())
    assert apply_derivation(d, poly_mul(var("x"), var("x"))) == 2 * poly_mul(var("x"), var("y"))
    assert apply_derivation(d, Poly({ONE: 1})) == Poly()
    got = apply_derivation(ode_D(), poly_mul(var(0), var(1)))
    assert got == poly_mul(var(1), var(1)) + 2 * poly_mul(var(0), var(2))


VARS = ["x", "y", "z"]
monos = st.lists(st.sampled_from(VARS), max_size=4).map(MultiIdx)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monos, coeffs, max_size=4).map(Poly)


def deriv(table):
    return DerivationSpec(lambda v: table[v])


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert poly_mul(p, q + r) == poly_mul(p, q) + poly_mul(p, r)


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.lists(polys, min_size=3, max_size=3))
def test_leibniz(p, q, images):
    d = deriv(dict(zip(VARS, images)))
    assert d(poly_mul(p, q)) == poly_mul(d(p), q) + poly_mul(p, d(q))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_commuting_derivations(p):
    # d1 = d/dx, d2 = x d/dy commute on variables, so on every polynomial
    d1 = deriv({"x": Poly({ONE: 1}), "y": Poly(), "z": Poly()})
    d2 = deriv({"x": Poly(), "y": Poly(), "z": var("y")})
    assert d1(d2(p)) == d2(d1(p))


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=50).filter(lambda f: f != 0))
def test_scalar_inverse(f):
    assert f * (1 / f) == 1


def det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(small)
def test_rank_and_solver_against_determinant(m):
    vecs = [Poly({j: c for j, c in enumerate(row) if c}) for row in m]
    full = det(m) != 0
    assert (rank(vecs) == 3) == full
    assert (rank(vecs, certify=False) == 3) == full
    if full:
        s = ExactSolver(vecs)
        target = Poly({0: 1, 1: Fraction(1, 3), 2: -2})
        x = s.solve(target)
        back = Poly()
        for c, v in zip(x, vecs):
            back = back + c * v
        assert back == target
    elif any(any(r) for r in m):
        with pytest.raises(SingularSystem):
            ExactSolver(vecs)


def test_solver_rejects_outside_span():
    s = ExactSolver([Poly({"a": 1})])
    with pytest.raises(SingularSystem):
        s.solve(Poly({"b": 1}))


def test_kernels_agree():
    import random

    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 12)
        rows = [{c: rng.randint(-5, 5) for c in range(n) if rng.random() < 0.4} for _ in range(n)]
        rows = [{c: v for c, v in r.items() if v} for r in rows]
        expected = kernels.python_impl.rank_mod_p(rows, n, kernels.PRIME)
        if kernels.compiled_impl is not None:
            assert kernels.compiled_impl.rank_mod_p(rows, n, kernels.PRIME) == expected
        assert kernels.rank_mod_p(rows, n, kernels.PRIME) == expected


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, MNOV_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mnov import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"

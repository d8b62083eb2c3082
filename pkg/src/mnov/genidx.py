"""General multi-indices.

Variables are ``z_(l, w)`` with ``l`` a generator label and ``w`` a
commutative word in letters.  ``D^(n)`` sends ``z_(l, w)`` to
``(w(n) + 1) z_(l, nw)`` and ``p |>_n q = p * D^(n)(q)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import List, NamedTuple, Sequence

from .exactalg import DerivationSpec, MultiIdx, ONE, Poly, apply_derivation, poly_mul, var
from .magnov import Alphabet, component_solver, normal_basis


class GenVar(NamedTuple):
    label: object
    w: MultiIdx

    def __repr__(self):
        letters = ",".join(_fmt_letter(a) for a in self.w.elements())
        return f"z{{{self.label};{letters}}}"


def _fmt_letter(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(str(c) for c in a) + ")"
    return str(a)


class NotPopulated(ValueError):
    pass


def gen_var(label, w=ONE) -> Poly:
    if not isinstance(w, MultiIdx):
        w = MultiIdx(w)
    return var(GenVar(label, w))


@lru_cache(maxsize=None)
def _D(n) -> DerivationSpec:
    def action(v: GenVar) -> Poly:
        return (v.w[n] + 1) * var(GenVar(v.label, v.w.add(n)))

    return DerivationSpec(action, f"D^({_fmt_letter(n)})")


def derivation_D(n, p: Poly) -> Poly:
    return apply_derivation(_D(n), p)


def product_tri(n, p: Poly, q: Poly) -> Poly:
    return poly_mul(p, derivation_D(n, q))


def monomial_weight(m: MultiIdx) -> int:
    """``sum (1 - |w|) beta(l, w)``; populated monomials have weight 1."""
    return sum((1 - v.w.degree) * k for v, k in m.items())


def is_populated(m: MultiIdx) -> bool:
    return monomial_weight(m) == 1


def is_populated_graded(m: MultiIdx) -> bool:
    """Same condition read off the bigrading ``(-1 + |w|, 1)`` of variables."""
    first = sum((-1 + v.w.degree) * k for v, k in m.items())
    return first == -1


def populated_poly(p: Poly) -> bool:
    return all(is_populated(m) for m in p.keys())


def enumerate_populated(degree: int, letters: Sequence, labels: Sequence) -> List[MultiIdx]:
    """Populated monomials with ``degree`` variables over the given alphabet.

    Such monomials carry exactly ``degree - 1`` letters in total.  Output is
    sorted by the order on monomials.
    """
    if degree < 1:
        return []
    budget = degree - 1
    variables = []
    for k in range(budget + 1):
        for w in combinations_with_replacement(letters, k):
            for l in labels:
                variables.append(GenVar(l, MultiIdx(w)))
    variables.sort()
    out = []

    def rec(start, slots, letters_left, acc):
        if slots == 0:
            if letters_left == 0:
                out.append(MultiIdx(acc))
            return
        for i in range(start, len(variables)):
            v = variables[i]
            if v.w.degree <= letters_left:
                acc.append(v)
                rec(i, slots - 1, letters_left - v.w.degree, acc)
                acc.pop()

    rec(0, degree, budget, [])
    out.sort()
    return out


class GeneralIndices(Alphabet):
    """Realisation of the free multi-Novikov algebra on general multi-indices."""

    def generator(self, x) -> Poly:
        return gen_var(x)

    def product(self, a, p: Poly, q: Poly) -> Poly:
        return product_tri(a, p, q)

    def derivation(self, a, p: Poly) -> Poly:
        return derivation_D(a, p)


def monomial_content(m: MultiIdx):
    """The magmatic content (degree, letters, generators) matching ``m``."""
    lets = MultiIdx()
    gens = MultiIdx()
    for v, k in m.items():
        for _ in range(k):
            lets = lets * v.w
        gens = gens.add(v.label, k)
    return (m.degree, lets, gens)


def express_in_generators(m: MultiIdx, ctx: GeneralIndices = None) -> Poly:
    """A combination of normal magmatic terms evaluating exactly to ``m``."""
    if not is_populated(m):
        raise NotPopulated(f"{m!r} is not populated")
    key = monomial_content(m)
    if ctx is None:
        ctx = GeneralIndices(key[1].keys(), key[2].keys())
    solver = component_solver(ctx, key)
    coords = solver.solve(Poly.basis(m))
    basis = normal_basis(ctx, key)
    return Poly({t: c for t, c in zip(basis, coords) if c})


def brace_closed_form(x: Poly, ys: Sequence[Poly], letters: Sequence) -> Poly:
    """``D^(a1)...D^(an)(x) * y1 ... yn``."""
    p = x
    for a in letters:
        p = derivation_D(a, p)
    for y in ys:
        p = poly_mul(p, y)
    return p

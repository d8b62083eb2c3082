"""SPDE multi-indices.

Words mix big letters ``D(n)`` (``n`` a tuple of d+1 naturals) and small
letters ``d_i``.  Big letters commute, small letters commute, and

    d_i n = n_i (n - e_i) + n d_i

(the correction is absent when ``n_i == 0``).  Normal words list the big
letters first, each group sorted.  Variables ``z_(l, alpha)`` are linear in
the word ``alpha``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .exactalg import (
    DerivationSpec,
    MultiIdx,
    Poly,
    apply_derivation,
    linear_combination,
    poly_mul,
    rank,
    var,
)
from .magnov import Alphabet, content, enumerate_normal, eval_canonical


class Word(NamedTuple):
    """A normal word: sorted big letters, then sorted small letter indices."""

    ns: Tuple = ()
    ds: Tuple = ()

    @property
    def length(self) -> int:
        # only big letters count
        return len(self.ns)

    def letters(self) -> List:
        return [("D", n) for n in self.ns] + [("d", i) for i in self.ds]

    def __repr__(self):
        return format_word(self)


EMPTY = Word()


def make_word(ns=(), ds=()) -> Word:
    return Word(tuple(sorted(ns)), tuple(sorted(ds)))


def format_word(w: Word) -> str:
    parts = ["(" + ",".join(map(str, n)) + ")" for n in w.ns]
    parts += [f"d{i}" for i in w.ds]
    return ".".join(parts) if parts else "1"


def _lower(n: Tuple, i: int) -> Tuple:
    return n[:i] + (n[i] - 1,) + n[i + 1:]


def word_normal_form(letters: Sequence, strategy: str = "leftmost") -> Poly:
    """Normal form of a word given as a sequence of ``("D", n)``/``("d", i)``.

    ``strategy`` picks which ``d_i n`` redex is rewritten first: the
    ``leftmost`` or the ``rightmost`` one.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _wnf(tuple(letters), strategy)


@lru_cache(maxsize=65536)
def _wnf(seq: Tuple, strategy: str) -> Poly:
    redexes = [
        k for k in range(len(seq) - 1)
        if seq[k][0] == "d" and seq[k + 1][0] == "D"
    ]
    if not redexes:
        ns = [x for kind, x in seq if kind == "D"]
        ds = [x for kind, x in seq if kind == "d"]
        return Poly.basis(make_word(ns, ds))
    k = redexes[0] if strategy == "leftmost" else redexes[-1]
    i, n = seq[k][1], seq[k + 1][1]
    if not 0 <= i < len(n):
        raise ValueError(f"d{i} does not act on a letter of length {len(n)}")
    out = _wnf(seq[:k] + (seq[k + 1], seq[k]) + seq[k + 2:], strategy)
    if n[i]:
        out = out + n[i] * _wnf(seq[:k] + (("D", _lower(n, i)),) + seq[k + 2:], strategy)
    return out


def prefix_D(n: Tuple, w: Word) -> Word:
    return make_word(w.ns + (n,), w.ds)


def prefix_d(i: int, w: Word) -> Poly:
    """``d_i w`` in normal form, moving ``d_i`` past every big letter."""
    terms = [(1, make_word(w.ns, w.ds + (i,)))]
    for j, n in enumerate(w.ns):
        if n[i]:
            terms.append((n[i], make_word(w.ns[:j] + (_lower(n, i),) + w.ns[j + 1:], w.ds)))
    return linear_combination((c, Poly.basis(u)) for c, u in terms)


class SpdeVar(NamedTuple):
    label: object
    word: Word

    def __repr__(self):
        return f"z{{{self.label};{'' if self.word == EMPTY else format_word(self.word)}}}"


def spde_var(label, word: Word = EMPTY) -> Poly:
    return var(SpdeVar(label, word))


def var_of_word(label, wp: Poly) -> Poly:
    """``z_(l, alpha)`` for a linear combination ``alpha`` of normal words."""
    return linear_combination((c, spde_var(label, w)) for w, c in wp.raw_items())


@lru_cache(maxsize=None)
def _D(n) -> DerivationSpec:
    n = tuple(n)
    return DerivationSpec(
        lambda v: spde_var(v.label, prefix_D(n, v.word)), f"D^{n}"
    )


@lru_cache(maxsize=None)
def _partial(i: int) -> DerivationSpec:
    return DerivationSpec(
        lambda v: var_of_word(v.label, prefix_d(i, v.word)), f"d{i}"
    )


@lru_cache(maxsize=None)
def _partial_by_rewriting(i: int) -> DerivationSpec:
    return DerivationSpec(
        lambda v: var_of_word(v.label, word_normal_form([("d", i)] + v.word.letters())),
        f"d{i} (rewriting)",
    )


def derivation_D(n, p: Poly) -> Poly:
    return apply_derivation(_D(tuple(n)), p)


def derivation_partial(i: int, p: Poly, via_rewriting: bool = False) -> Poly:
    spec = _partial_by_rewriting(i) if via_rewriting else _partial(i)
    return apply_derivation(spec, p)


def product_tri(n, p: Poly, q: Poly) -> Poly:
    return poly_mul(p, derivation_D(n, q))


def is_populated(m: MultiIdx) -> bool:
    return sum((1 - v.word.length) * k for v, k in m.items()) == 1


def small_d_word(k: Sequence[int]) -> Word:
    """``d_0^k0 ... d_d^kd``."""
    return make_word((), [i for i, e in enumerate(k) for _ in range(e)])


class SpdeIndices(Alphabet):
    """Realisation on SPDE multi-indices.

    A generator is either a bare label (``z_(l, 1)``) or a pair
    ``(label, k)`` standing for ``z_(l, d^k)``.
    """

    def __init__(self, letters: Sequence, gens: Sequence, dims: int = None):
        super().__init__(letters, gens)
        if dims is None:
            dims = len(self.letters[0]) - 1 if self.letters else 0
        self.dims = dims

    def generator(self, g) -> Poly:
        if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], tuple):
            return spde_var(g[0], small_d_word(g[1]))
        return spde_var(g)

    def product(self, a, p: Poly, q: Poly) -> Poly:
        return product_tri(a, p, q)

    def derivation(self, a, p: Poly) -> Poly:
        return derivation_D(a, p)


def letter_tuples(dims: int, cap: int) -> List[Tuple]:
    """All of ``{0..cap}^(dims+1)``, by total degree then lexicographically."""
    out = list(product(range(cap + 1), repeat=dims + 1))
    out.sort(key=lambda n: (sum(n), n))
    return out


def first_letters(dims: int, count: int) -> List[Tuple]:
    """The first ``count`` elements of N^(dims+1) in (total degree, lex) order."""
    out: List[Tuple] = []
    total = 0
    while len(out) < count:
        layer = sorted(
            n for n in product(range(total + 1), repeat=dims + 1) if sum(n) == total
        )
        out.extend(layer)
        total += 1
    return out[:count]


def enumerate_populated(degree: int, letters: Sequence, gens: Sequence) -> List[MultiIdx]:
    """Populated monomials in variables ``z_(l, w d^k)`` with ``w`` over ``letters``.

    ``gens`` lists generator descriptors accepted by :class:`SpdeIndices`.
    Each monomial has ``degree`` variables and ``degree - 1`` big letters.
    """
    if degree < 1:
        return []
    ctx = SpdeIndices(letters, gens)
    budget = degree - 1
    variables = []
    for g in gens:
        (base,) = ctx.generator(g).keys()
        (v,) = base.keys()
        for k in range(budget + 1):
            for w in combinations_with_replacement(letters, k):
                variables.append(SpdeVar(v.label, make_word(tuple(w), v.word.ds)))
    variables = sorted(set(variables))
    out = []

    def rec(start, slots, left, acc):
        if slots == 0:
            if left == 0:
                out.append(MultiIdx(acc))
            return
        for j in range(start, len(variables)):
            v = variables[j]
            if v.word.length <= left:
                acc.append(v)
                rec(j, slots - 1, left - v.word.length, acc)
                acc.pop()

    rec(0, degree, budget, [])
    out.sort()
    return out


def free_generation_check(degree: int, caps: Tuple[int, int], labels: Sequence, dims: int) -> Dict:
    """Compare free-algebra and multi-index dimensions in one degree.

    Generators are ``z_(l, d^k)`` with every ``k_i <= caps[1]``; letters are
    the ``n`` with every component ``<= caps[0]``.  Three numbers are
    reported: normal (free basis) terms, the rank of their evaluations, and
    the populated monomials of the capped component.
    """
    letter_cap, d_cap = caps
    letters = letter_tuples(dims, letter_cap)
    gens = [(l, k) for l in labels for k in product(range(d_cap + 1), repeat=dims + 1)]
    ctx = SpdeIndices(letters, gens, dims)
    terms = enumerate_normal(degree, ctx=ctx)
    groups: Dict = {}
    for t in terms:
        groups.setdefault(content(t), []).append(eval_canonical(t, ctx))
    span = sum(rank(vs) for vs in groups.values())
    populated = len(enumerate_populated(degree, letters, gens))
    return {
        "degree": degree,
        "dims": dims,
        "caps": list(caps),
        "free": len(terms),
        "span": span,
        "populated": populated,
        "equal": len(terms) == span == populated,
    }

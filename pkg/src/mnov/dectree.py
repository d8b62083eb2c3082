"""Decorated trees modulo the X/I commutation relations.

A raw planar tree is a node: an ordered list of factors ``X_i`` and
``I_a(tree)`` followed by one noise ``Xi_l``.  In the quotient the ``X`` factors
commute, the ``I`` factors commute, and

    I_a(t) X_i = X_i I_a(t) + I_{a - e_i}(t)

where the correction is absent if ``a_i == 0``.  Canonical trees
(:class:`DecTree`) keep the ``X`` factors as an exponent and the planted
children as a sorted multiset.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .exactalg import MultiIdx, Poly, linear_combination, poly_mul, rank
from .magnov import Alphabet, all_terms, content, eval_canonical
from .spdeidx import SpdeVar, make_word, spde_var, word_normal_form


class DecTree:
    """Canonical tree: ``X^xexp * prod I_a(child) * Xi_noise``."""

    __slots__ = ("noise", "xexp", "children", "_hash", "_key")

    def __init__(self, noise, xexp: MultiIdx = MultiIdx(), children=()):
        self.noise = noise
        self.xexp = xexp if isinstance(xexp, MultiIdx) else MultiIdx(xexp)
        self.children = tuple(sorted(children, key=lambda c: (c[0], c[1].sort_key())))
        self._hash = hash((noise, self.xexp, self.children))
        self._key = None

    def sort_key(self):
        if self._key is None:
            self._key = (
                self.size(),
                self.noise,
                self.xexp.items(),
                tuple((a, c.sort_key()) for a, c in self.children),
            )
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, DecTree)
            and self._hash == other._hash
            and self.noise == other.noise
            and self.xexp == other.xexp
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def size(self) -> int:
        """Number of noise vertices."""
        return 1 + sum(c.size() for _, c in self.children)

    def with_child(self, letter, child: "DecTree") -> "DecTree":
        return DecTree(self.noise, self.xexp, self.children + ((letter, child),))

    def to_raw(self) -> "RawTree":
        xs = [("X", i) for i in self.xexp.elements()]
        return RawTree(self.noise, xs + [("I", a, c.to_raw()) for a, c in self.children])

    def __repr__(self):
        from .syntax import format_tree

        return f"DecTree({format_tree(self)})"


class RawTree:
    """Planar node: factors ``("X", i)`` or ``("I", letter, RawTree)`` then the noise."""

    __slots__ = ("noise", "factors", "_hash")

    def __init__(self, noise, factors=()):
        self.noise = noise
        self.factors = tuple(factors)
        self._hash = hash((noise, self.factors))

    def __eq__(self, other):
        return isinstance(other, RawTree) and self.noise == other.noise and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .syntax import format_raw_tree

        return f"RawTree({format_raw_tree(self)})"


def xi(label) -> DecTree:
    return DecTree(label)


def _lower(a: Tuple, i: int) -> Tuple:
    return a[:i] + (a[i] - 1,) + a[i + 1:]


# ---------------------------------------------------------------------------
# normal form

def tree_normal_form(t) -> Poly:
    """Canonical form of a raw tree (or of a canonical tree, trivially)."""
    if isinstance(t, DecTree):
        return Poly.basis(t)
    return _tnf(t)


_TNF_CACHE: Dict = {}


def _tnf(t: RawTree) -> Poly:
    hit = _TNF_CACHE.get(t)
    if hit is not None:
        return hit
    # expand children first, then push X factors to the left
    options = []
    for f in t.factors:
        if f[0] == "X":
            options.append([(f, Fraction(1))])
        else:
            options.append([(("I", f[1], c), k) for c, k in _tnf(f[2]).raw_items()])
    acc = []
    for combo in product(*options):
        coeff = Fraction(1)
        for _, k in combo:
            coeff *= k
        acc.append((coeff, _sort_node(tuple(f for f, _ in combo), t.noise)))
    out = linear_combination(acc)
    _TNF_CACHE[t] = out
    return out


def _sort_node(factors: Tuple, noise) -> Poly:
    # first I before an X
    for p in range(len(factors) - 1):
        f, g = factors[p], factors[p + 1]
        if f[0] == "I" and g[0] == "X":
            i = g[1]
            a = f[1]
            out = _sort_node(factors[:p] + (g, f) + factors[p + 2:], noise)
            if a[i]:
                lowered = ("I", _lower(a, i), f[2])
                out = out + _sort_node(factors[:p] + (lowered,) + factors[p + 2:], noise)
            return out
    xs = MultiIdx([f[1] for f in factors if f[0] == "X"])
    kids = [(f[1], f[2]) for f in factors if f[0] == "I"]
    return Poly.basis(DecTree(noise, xs, kids))


# ---------------------------------------------------------------------------
# grafting

def vertices(t: DecTree) -> int:
    return t.size()


def graft(n, sigma: DecTree, tau: DecTree) -> Poly:
    """Sum over vertices v of ``tau`` of ``tau`` with ``I_n(sigma)`` attached at v."""
    acc: Counter = Counter()
    for u in _graft_all(n, sigma, tau):
        acc[u] += 1
    return Poly(acc)


def _graft_all(n, sigma, tau) -> List[DecTree]:
    out = [tau.with_child(n, sigma)]
    kids = list(tau.children)
    for j, (a, c) in enumerate(kids):
        for c2 in _graft_all(n, sigma, c):
            out.append(DecTree(tau.noise, tau.xexp, kids[:j] + [(a, c2)] + kids[j + 1:]))
    return out


def graft_poly(n, p: Poly, q: Poly) -> Poly:
    return linear_combination(
        (c1 * c2, graft(n, s, t)) for s, c1 in p.raw_items() for t, c2 in q.raw_items()
    )


def multi_idx_factorial(k: MultiIdx) -> int:
    return k.factorial()


def tuple_factorial(a: Sequence[int]) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def symmetry_factor(t: DecTree) -> int:
    """``k! * prod m_j! * prod S(child)`` over all planted children."""
    s = t.xexp.factorial()
    for m in Counter(t.children).values():
        s *= factorial(m)
    for _, c in t.children:
        s *= symmetry_factor(c)
    return s


# ---------------------------------------------------------------------------
# maps to SPDE multi-indices

def _vertex_var(t: DecTree) -> SpdeVar:
    return SpdeVar(t.noise, make_word([a for a, _ in t.children], t.xexp.elements()))


def tree_to_multiindex(t) -> Poly:
    """Product over vertices of ``z_(l_v, a_1...a_m d^k_v)``."""
    if isinstance(t, Poly):
        return linear_combination((c, tree_to_multiindex(u)) for u, c in t.raw_items())
    vs = []
    stack = [t]
    while stack:
        u = stack.pop()
        vs.append(_vertex_var(u))
        stack.extend(c for _, c in u.children)
    return Poly.basis(MultiIdx(vs))


LITERAL = "literal"
RESCALED = "rescaled"


def elementary_differential(t, convention: str = LITERAL) -> Poly:
    """Elementary differential as an SPDE multi-index polynomial.

    ``literal``: at each node the factors act in their written order,
    ``X_j`` as ``d_j`` and ``I_a`` as ``D(a)``.  A canonical tree is read with
    its planted children before its ``X`` factors, which makes this agree
    with :func:`tree_to_multiindex`.

    ``rescaled``: ``X_j`` acts as ``-d_j`` and ``I_a`` as ``D(a) / a!``; a
    canonical tree is read with its ``X`` factors first.
    """
    if convention not in (LITERAL, RESCALED):
        raise ValueError(f"unknown convention {convention!r}")
    if isinstance(t, Poly):
        return linear_combination((c, elementary_differential(u, convention)) for u, c in t.raw_items())
    if isinstance(t, DecTree):
        if convention == LITERAL:
            return tree_to_multiindex(t)
        t = t.to_raw()
    return _ed_raw(t, convention)


def _ed_raw(t: RawTree, convention: str) -> Poly:
    word = []
    scale = Fraction(1)
    out = None
    for f in t.factors:
        if f[0] == "X":
            word.append(("d", f[1]))
            if convention == RESCALED:
                scale = -scale
        else:
            word.append(("D", tuple(f[1])))
            if convention == RESCALED:
                scale /= tuple_factorial(f[1])
            sub = _ed_raw(f[2], convention)
            out = sub if out is None else poly_mul(out, sub)
    root = linear_combination(
        (c, spde_var(t.noise, w)) for w, c in word_normal_form(word).raw_items()
    )
    if out is not None:
        root = poly_mul(root, out)
    return scale * root


# ---------------------------------------------------------------------------
# braces

class ArityMismatch(ValueError):
    pass


def brace(x, ys: Sequence, letters: Sequence, alg, orientation: str = "default"):
    """Multi-symmetric brace ``{x; y1..yn}_{a1..an}`` in a multi-pre-Lie algebra.

    ``alg.product(a, p, q)`` is the product ``p |>_a q``.  By default the
    one-element brace is ``y |>_a x``, so braces of generators are corollas
    rooted at ``x``; ``orientation="paper"`` uses ``x |>_a y`` instead.
    """
    if len(ys) != len(letters) or not ys:
        raise ArityMismatch(f"{len(ys)} arguments for {len(letters)} letters")
    if orientation not in ("default", "paper"):
        raise ValueError(f"unknown orientation {orientation!r}")
    prod = alg.product
    if len(ys) == 1:
        if orientation == "default":
            return prod(letters[0], ys[0], x)
        return prod(letters[0], x, ys[0])
    ys, last = list(ys[:-1]), ys[-1]
    ls, a = list(letters[:-1]), letters[-1]
    out = prod(a, last, brace(x, ys, ls, alg, orientation))
    for i in range(len(ys)):
        ys2 = ys[:i] + [prod(a, last, ys[i])] + ys[i + 1:]
        out = out - brace(x, ys2, ls, alg, orientation)
    return out


def corolla(x, ys: Sequence, letters: Sequence) -> DecTree:
    return DecTree(x, MultiIdx(), [(a, DecTree(y)) for y, a in zip(ys, letters)])


# ---------------------------------------------------------------------------
# the tree algebra as a multi-pre-Lie algebra

def tree_generator(g) -> DecTree:
    """``Xi_l`` for a label, ``X^k Xi_l`` for a pair ``(l, k)`` with ``k`` a tuple."""
    if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], tuple):
        l, k = g
        return DecTree(l, MultiIdx({i: e for i, e in enumerate(k) if e}))
    return DecTree(g)


class TreeAlgebra(Alphabet):
    def generator(self, g) -> Poly:
        return Poly.basis(tree_generator(g))

    def product(self, a, p: Poly, q: Poly) -> Poly:
        return graft_poly(a, p, q)


def enumerate_trees(size: int, letters: Sequence, gens: Sequence) -> List[DecTree]:
    """Canonical trees with ``size`` vertices, vertex generators from ``gens``."""
    roots = [tree_generator(g) for g in gens]
    memo: Dict[int, List[DecTree]] = {}

    def trees(n):
        if n not in memo:
            out = []
            for root in roots:
                for kids in forests(n - 1, 1):
                    out.append(DecTree(root.noise, root.xexp, kids))
            memo[n] = sorted(out)
        return memo[n]

    planted_memo: Dict[int, List] = {}

    def planted(n):
        if n not in planted_memo:
            planted_memo[n] = [(a, t) for t in trees(n) for a in letters]
        return planted_memo[n]

    def forests(n, min_size):
        # multisets of planted trees with total size n, sizes non-decreasing
        if n == 0:
            yield ()
            return
        for s in range(min_size, n + 1):
            ps = planted(s)
            for k in range(1, n // s + 1):
                for group in combinations_with_replacement(range(len(ps)), k):
                    chosen = tuple(ps[j] for j in group)
                    for rest in forests(n - s * k, s + 1):
                        yield chosen + rest

    return trees(size)


def rooted_tree_counts(max_size: int, n_letters: int, n_gens: int) -> List[int]:
    """Counts of non-planar rooted trees, vertex labels in ``n_gens``, edge labels in ``n_letters``."""
    t = [0] * (max_size + 1)
    for n in range(1, max_size + 1):
        # coefficient of x^(n-1) in prod_m (1 - x^m)^(-L t_m)
        poly = [0] * n
        poly[0] = 1
        for m in range(1, n):
            e = n_letters * t[m]
            for _ in range(e):
                for j in range(m, n):
                    poly[j] += poly[j - m]
        t[n] = n_gens * poly[n - 1]
    return t[1:]


def free_prelie_check(size: int, letters: Sequence, gens: Sequence) -> Dict:
    """Trees of a given size vs the span of iterated grafts of generators."""
    alg = TreeAlgebra(letters, gens)
    trees = enumerate_trees(size, letters, gens)
    groups: Dict = {}
    for t in all_terms(size, letters, gens):
        groups.setdefault(content(t), []).append(eval_canonical(t, alg))
    span = sum(rank(vs) for vs in groups.values())
    oracle = rooted_tree_counts(size, len(letters), len(gens))[-1]
    return {
        "size": size,
        "trees": len(trees),
        "span": span,
        "oracle": oracle,
        "equal": len(trees) == span == oracle,
    }

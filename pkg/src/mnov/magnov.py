"""Free multi-magmatic terms and the free multi-Novikov algebra.

A term is a planar binary tree: :class:`Leaf` carries a generator, :class:`Node`
carries a letter and stands for ``left |>_letter right``.  Two independent
normal-form algorithms are provided:

* :func:`rewrite_normal_form` rewrites with the three defining identities
  (exchange of arguments, exchange of letters, right commutativity) until only
  normal ordered left-leaning terms remain;
* :func:`solve_normal_form` evaluates in the free commutative multidifferential
  algebra and solves for coordinates in the image of the normal terms.

Orders on letters and generators come from an :class:`Alphabet`.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import ExactSolver, MultiIdx, Poly, SingularSystem, linear_combination

NOT_LEFT_LEANING = "not_left_leaning"
LEFT_LEANING = "left_leaning"
ORDERED = "ordered"
NORMAL = "normal"


class Leaf:
    __slots__ = ("gen", "_hash")
    degree = 1

    def __init__(self, gen):
        self.gen = gen
        self._hash = hash(("L", gen))

    def __eq__(self, other):
        return isinstance(other, Leaf) and self.gen == other.gen

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (0, self.gen)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Leaf({self.gen!r})"


class Node:
    """``left |>_letter right``."""

    __slots__ = ("letter", "left", "right", "degree", "_hash", "_key")

    def __init__(self, letter, left, right):
        self.letter = letter
        self.left = left
        self.right = right
        self.degree = left.degree + right.degree
        self._hash = hash((letter, left._hash, right._hash))
        self._key = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Node)
            and self._hash == other._hash
            and self.letter == other.letter
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return self._hash

    def sort_key(self):
        if self._key is None:
            self._key = (1, self.degree, self.letter, self.left.sort_key(), self.right.sort_key())
        return self._key

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Node({self.letter!r}, {self.left!r}, {self.right!r})"


MagmaTerm = "Leaf | Node"


def tri(letter, left, right) -> Node:
    return Node(letter, left, right)


def r(factors: Sequence, letters: Sequence, tail) -> "Leaf | Node":
    """Right-normed product ``y1 |>_a1 (y2 |>_a2 (... (yn |>_an z)))``.

    ``tail`` may be a generator or a Leaf.
    """
    t = tail if isinstance(tail, (Leaf, Node)) else Leaf(tail)
    for y, a in zip(reversed(factors), reversed(letters)):
        t = Node(a, y, t)
    return t


@dataclass(frozen=True)
class RightNormed:
    factors: Tuple  # ((y1, a1), ..., (yn, an))
    tail: object  # generator

    def to_term(self):
        return r([y for y, _ in self.factors], [a for _, a in self.factors], self.tail)

    @property
    def length(self) -> int:
        return len(self.factors)


def right_normed(t) -> RightNormed:
    factors = []
    while isinstance(t, Node):
        factors.append((t.left, t.letter))
        t = t.right
    return RightNormed(tuple(factors), t.gen)


def knuth_leaf_count(t) -> int:
    """Number of generator occurrences that become leaves under rotation."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Node):
            if isinstance(u.left, Leaf):
                n += 1
            else:
                stack.append(u.left)
            stack.append(u.right)
    return n


def leaves(t) -> List:
    """Generators at the leaves of ``t`` in planar (left-to-right) order."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Leaf):
            out.append(u.gen)
        else:
            stack.append(u.right)
            stack.append(u.left)
    return out


def letters_of(t) -> List:
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Node):
            out.append(u.letter)
            stack.append(u.right)
            stack.append(u.left)
    return out


def content(t) -> Tuple:
    """Fine grading of a term: (degree, letter multiset, generator multiset)."""
    return (t.degree, MultiIdx(letters_of(t)), MultiIdx(leaves(t)))


# ---------------------------------------------------------------------------
# Knuth rotation

class RootedTree:
    """Planar rooted tree: vertex labelled by a generator, edges by letters."""

    __slots__ = ("label", "children", "_hash")

    def __init__(self, label, children=()):
        self.label = label
        self.children = tuple(children)  # ((letter, RootedTree), ...)
        self._hash = hash((label, self.children))

    def __eq__(self, other):
        return (
            isinstance(other, RootedTree)
            and self.label == other.label
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.children)

    def __repr__(self):
        if not self.children:
            return f"RootedTree({self.label!r})"
        return f"RootedTree({self.label!r}, {list(self.children)!r})"


def knuth_rotation(t) -> RootedTree:
    """Collapse every right path onto its rightmost leaf."""
    rn = right_normed(t)
    return RootedTree(rn.tail, [(a, knuth_rotation(y)) for y, a in rn.factors])


def knuth_rotation_inv(tree: RootedTree):
    return r(
        [knuth_rotation_inv(c) for _, c in tree.children],
        [a for a, _ in tree.children],
        tree.label,
    )


def binary_shapes(n_leaves: int):
    """All planar binary trees with ``n_leaves`` leaves; leaves hold None."""
    if n_leaves == 1:
        return [Leaf(None)]
    out = []
    for k in range(1, n_leaves):
        for left in binary_shapes(k):
            for right in binary_shapes(n_leaves - k):
                out.append(Node(None, left, right))
    return out


def relabel(shape, letters: Sequence, gens: Sequence):
    """Fill a shape's internal vertices and leaves in planar order."""
    li = iter(letters)
    gi = iter(gens)

    def go(u):
        if isinstance(u, Leaf):
            return Leaf(next(gi))
        left = go(u.left)
        a = next(li)
        return Node(a, left, go(u.right))

    return go(shape)


def all_terms(degree: int, letters: Sequence, gens: Sequence):
    """Every monomial of the free multi-magmatic algebra of a given degree."""
    for shape in binary_shapes(degree):
        for ls in product(letters, repeat=degree - 1):
            for gs in product(gens, repeat=degree):
                yield relabel(shape, ls, gs)


# ---------------------------------------------------------------------------
# orders and classification

class Alphabet:
    """Finite ordered letter set ``A`` and generator set ``X``.

    The order of each set is the order of declaration.
    """

    def __init__(self, letters: Sequence, gens: Sequence):
        self.letters = tuple(letters)
        self.gens = tuple(gens)
        if len(set(self.letters)) != len(self.letters) or len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate letters or generators")
        self._lrank = {a: i for i, a in enumerate(self.letters)}
        self._grank = {x: i for i, x in enumerate(self.gens)}
        self._caches: Dict[str, dict] = defaultdict(dict)

    @classmethod
    def from_terms(cls, terms) -> "Alphabet":
        ls, gs = set(), set()
        for t in terms:
            ls.update(letters_of(t))
            gs.update(leaves(t))
        return cls(sorted(ls), sorted(gs))

    def letter_rank(self, a) -> int:
        try:
            return self._lrank[a]
        except KeyError:
            raise ValueError(f"letter {a!r} not in alphabet") from None

    def gen_rank(self, x) -> int:
        try:
            return self._grank[x]
        except KeyError:
            raise ValueError(f"generator {x!r} not in alphabet") from None

    def cache(self, name: str) -> dict:
        return self._caches[name]

    def __repr__(self):
        return f"{type(self).__name__}(letters={self.letters!r}, gens={self.gens!r})"


class _Config:
    """A left-leaning term as a stack of levels, outermost first.

    Each level is ``[root, letters, tail]``: the right-normed factor list of
    the level is ``[inner, *tail]`` with ``inner`` the next level (or, for the
    innermost level, the generator ``first``).
    """

    __slots__ = ("levels", "first")

    def __init__(self, levels, first):
        self.levels = levels
        self.first = first

    @classmethod
    def of(cls, t) -> Optional["_Config"]:
        levels = []
        while True:
            rn = right_normed(t)
            if not rn.factors:
                return None if levels else cls([], rn.tail)
            ys = [y for y, _ in rn.factors]
            if any(not isinstance(y, Leaf) for y in ys[1:]):
                return None
            levels.append([rn.tail, [a for _, a in rn.factors], [y.gen for y in ys[1:]]])
            if isinstance(ys[0], Leaf):
                return cls(levels, ys[0].gen)
            t = ys[0]

    def copy(self) -> "_Config":
        return _Config([[z, list(ls), list(tl)] for z, ls, tl in self.levels], self.first)

    def term(self, upto: int = 0):
        """The subterm rooted at level ``upto``."""
        if not self.levels:
            return Leaf(self.first)
        t = Leaf(self.first)
        for z, ls, tl in reversed(self.levels[upto:]):
            t = r([t] + [Leaf(x) for x in tl], ls, z)
        return t

    def factors(self, j: int) -> List:
        inner = self.term(j + 1) if j + 1 < len(self.levels) else Leaf(self.first)
        return [inner] + [Leaf(x) for x in self.levels[j][2]]

    def wrap(self, j: int, sub):
        """Plug ``sub`` in place of level ``j`` inside the outer levels."""
        for z, ls, tl in reversed(self.levels[:j]):
            sub = r([sub] + [Leaf(x) for x in tl], ls, z)
        return sub

    def leaf_slots(self) -> List[Tuple[int, int]]:
        """(level, factor position) of every leaf, in planar reading order."""
        k = len(self.levels)
        slots = [(k - 1, 0)]
        for j in range(k - 1, -1, -1):
            slots.extend((j, p) for p in range(1, len(self.levels[j][1])))
        return slots

    def leaf_at(self, j: int, p: int):
        if p == 0:
            assert j == len(self.levels) - 1
            return self.first
        return self.levels[j][2][p - 1]

    def set_leaf(self, j: int, p: int, x):
        if p == 0:
            self.first = x
        else:
            self.levels[j][2][p - 1] = x

    def reading(self) -> List:
        return [self.leaf_at(j, p) for j, p in self.leaf_slots()]


def _signature(ctx: Alphabet, level) -> Tuple:
    z, ls, _ = level
    return (len(ls), ctx.gen_rank(z), tuple(sorted(ctx.letter_rank(a) for a in ls)))


def _classify_config(ctx: Alphabet, cfg: _Config) -> str:
    for _, ls, _ in cfg.levels:
        ranks = [ctx.letter_rank(a) for a in ls]
        if ranks != sorted(ranks):
            return LEFT_LEANING
    sigs = [_signature(ctx, lv) for lv in cfg.levels]
    if any(s > s2 for s, s2 in zip(sigs, sigs[1:])):
        return LEFT_LEANING
    ranks = [ctx.gen_rank(x) for x in cfg.reading()]
    if ranks != sorted(ranks):
        return ORDERED
    return NORMAL


def classify(t, ctx: Optional[Alphabet] = None) -> str:
    """Strongest of not_left_leaning < left_leaning < ordered < normal."""
    ctx = ctx or Alphabet.from_terms([t])
    cfg = _Config.of(t)
    if cfg is None:
        return NOT_LEFT_LEANING
    return _classify_config(ctx, cfg)


def is_normal(t, ctx: Alphabet) -> bool:
    return classify(t, ctx) == NORMAL


# ---------------------------------------------------------------------------
# enumeration of the normal basis

def _level_signatures(ctx: Alphabet, max_arity: int):
    sigs = []
    for n in range(1, max_arity + 1):
        for z in ctx.gens:
            for ls in combinations_with_replacement(ctx.letters, n):
                sigs.append((n, z, ls))
    sigs.sort(key=lambda s: (s[0], ctx.gen_rank(s[1]), tuple(ctx.letter_rank(a) for a in s[2])))
    return sigs


def _level_stacks(sigs, start: int, budget: int):
    """Non-decreasing sequences of signatures whose arities sum to ``budget``."""
    if budget == 0:
        yield ()
        return
    for i in range(start, len(sigs)):
        n = sigs[i][0]
        if n > budget:
            break
        for rest in _level_stacks(sigs, i, budget - n):
            yield (sigs[i],) + rest


def _build_normal(stack, leaf_seq) -> "Leaf | Node":
    # innermost level takes the first leaves, outer levels follow
    pos = 0
    levels = []
    for j, (n, z, ls) in enumerate(reversed(stack)):
        take = n if j == 0 else n - 1
        levels.append([z, list(ls), list(leaf_seq[pos:pos + take])])
        pos += take
    levels.reverse()
    first = levels[-1][2].pop(0)
    return _Config(levels, first).term()


def enumerate_normal(degree: int, letters: Sequence = None, gens: Sequence = None,
                     ctx: Optional[Alphabet] = None) -> List:
    """All normal ordered left-leaning terms of a given degree, each once."""
    if ctx is None:
        ctx = Alphabet(letters, gens)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree == 1:
        return [Leaf(x) for x in ctx.gens]
    sigs = _level_signatures(ctx, degree - 1)
    out = []
    for stack in _level_stacks(sigs, 0, degree - 1):
        n_leaves = degree - len(stack)
        for leaf_seq in combinations_with_replacement(ctx.gens, n_leaves):
            out.append(_build_normal(stack, leaf_seq))
    return out


def normal_basis(ctx: Alphabet, key: Tuple) -> List:
    """Normal terms with a given :func:`content`."""
    cache = ctx.cache("normal_basis")
    if key not in cache:
        degree, lets, gens = key
        sub = Alphabet(
            [a for a in ctx.letters if a in lets],
            [x for x in ctx.gens if x in gens],
        )
        cache[key] = [t for t in enumerate_normal(degree, ctx=sub) if content(t) == key]
    return cache[key]


# ---------------------------------------------------------------------------
# evaluation in a commutative multidifferential algebra

def eval_canonical(t, ctx) -> Poly:
    """Structural evaluation ``x |>_a y = x * D_a(y)`` in a realisation.

    ``ctx`` must provide ``generator(x) -> Poly`` and
    ``product(a, p, q) -> Poly`` (see :mod:`mnov.genidx`).
    """
    cache = ctx.cache("eval") if hasattr(ctx, "cache") else {}
    return _eval(t, ctx, cache)


def _eval(t, ctx, cache) -> Poly:
    v = cache.get(t)
    if v is None:
        if isinstance(t, Leaf):
            v = ctx.generator(t.gen)
        else:
            v = ctx.product(t.letter, _eval(t.left, ctx, cache), _eval(t.right, ctx, cache))
        cache[t] = v
    return v


def eval_poly(p: Poly, ctx) -> Poly:
    return linear_combination((c, eval_canonical(t, ctx)) for t, c in p.raw_items())


def _realisation(ctx):
    if hasattr(ctx, "product"):
        return ctx
    from .genidx import GeneralIndices

    cache = ctx.cache("realisation")
    if "genidx" not in cache:
        cache["genidx"] = GeneralIndices(ctx.letters, ctx.gens)
    return cache["genidx"]


def component_solver(ctx, key: Tuple) -> ExactSolver:
    """Exact solver for the evaluation matrix of one graded component."""
    ctx = _realisation(ctx)
    cache = ctx.cache("solver")
    if key not in cache:
        basis = normal_basis(ctx, key)
        try:
            cache[key] = ExactSolver([eval_canonical(t, ctx) for t in basis])
        except SingularSystem as exc:
            raise SingularSystem(f"normal terms of content {key!r} are dependent: {exc}") from None
    return cache[key]


def solve_normal_form(t, ctx=None) -> Poly:
    """Normal form by exact change of basis in the realisation."""
    ctx = _realisation(ctx or Alphabet.from_terms([t]))
    key = content(t)
    solver = component_solver(ctx, key)
    coords = solver.solve(eval_canonical(t, ctx))
    basis = normal_basis(ctx, key)
    return Poly({b: c for b, c in zip(basis, coords) if c})


# ---------------------------------------------------------------------------
# rewriting

class MeasureError(AssertionError):
    pass


class Rewriter:
    """Rewrites terms to normal form using the multi-Novikov identities.

    Every recursive call is made on a term whose measure
    ``(degree, knuth leaves, phase, length, position sum)`` is strictly
    smaller than the caller's; this is asserted.  ``stats`` counts identity
    applications by kind.
    """

    def __init__(self, ctx: Alphabet):
        self.ctx = ctx
        self.cache: Dict = {}
        self.stats: Counter = Counter()

    def normal_form(self, t) -> Poly:
        return self._normalize(t, None)

    def _measure(self, t) -> Tuple:
        rn = right_normed(t)
        ys = [y for y, _ in rn.factors]
        ell = knuth_leaf_count(t)
        if all(isinstance(y, Leaf) for y in ys[1:]):
            return (t.degree, ell, 0, 0, 0)
        possum = sum(i for i, y in enumerate(ys, 1) if not isinstance(y, Leaf))
        return (t.degree, ell, 1, len(ys), possum)

    def _normalize(self, t, bound) -> Poly:
        hit = self.cache.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Leaf):
            return Poly.basis(t)
        rn = right_normed(t)
        ys = [y for y, _ in rn.factors]
        ls = [a for _, a in rn.factors]
        inner_bound = (t.degree,)
        expansions = [
            [(y, Fraction(1))] if isinstance(y, Leaf) else self._normalize(y, inner_bound).items()
            for y in ys
        ]
        acc = []
        for combo in product(*expansions):
            coeff = Fraction(1)
            fs = []
            for y, c in combo:
                coeff *= c
                fs.append(y)
            t2 = r(fs, ls, rn.tail)
            mu = self._measure(t2)
            if bound is not None and not mu < bound:
                raise MeasureError(f"measure {mu} does not decrease below {bound} for {t2!r}")
            acc.append((coeff, self._combine(t2, mu)))
        out = linear_combination(acc)
        self.cache[t] = out
        return out

    # -- phase A: reach a left-leaning shape --------------------------------
    def _combine(self, t, mu) -> Poly:
        if mu[2] == 0:
            return self._phase_b(_Config.of(t), mu)
        hit = self.cache.get(t)
        if hit is not None:
            return hit
        rn = right_normed(t)
        ys = [y for y, _ in rn.factors]
        ls = [a for _, a in rn.factors]
        z = rn.tail
        if isinstance(ys[0], Leaf):
            # move the first compound factor one step left with exchange of arguments
            i = next(k for k in range(1, len(ys)) if not isinstance(ys[k], Leaf))
            x, y, a, b = ys[i - 1], ys[i], ls[i - 1], ls[i]
            self.stats["exchange_arguments"] += 1
            main = r(ys[:i - 1] + [y, x] + ys[i + 1:], ls, z)
            c1 = r(ys[:i - 1] + [Node(a, x, y)] + ys[i + 1:], ls[:i - 1] + [b] + ls[i + 1:], z)
            c2 = r(ys[:i - 1] + [Node(a, y, x)] + ys[i + 1:], ls[:i - 1] + [b] + ls[i + 1:], z)
            out = (
                self._normalize(main, mu)
                + self._normalize(c1, mu)
                - self._normalize(c2, mu)
            )
        else:
            # right commutativity: (u |>_b v) |>_a w = (u |>_a w) |>_b v
            rn1 = right_normed(ys[0])
            ys1 = [y for y, _ in rn1.factors]
            ls1 = [a for _, a in rn1.factors]
            self.stats["right_commutativity"] += 1
            inner = r([ys1[0]] + ys[1:], [ls[0]] + ls[1:], z)
            new = r([inner] + ys1[1:], ls1, rn1.tail)
            out = self._normalize(new, mu)
        self.cache[t] = out
        return out

    # -- phase B: sort letters, levels and leaves of a left-leaning term ----
    def _phase_b(self, cfg: _Config, mu) -> Poly:
        ctx = self.ctx
        if not cfg.levels:
            return Poly.basis(Leaf(cfg.first))
        t0 = cfg.term()
        hit = self.cache.get(t0)
        if hit is not None:
            return hit
        corrections: List[Tuple] = []

        def emit(c, term):
            corrections.append((c, self._normalize(term, mu)))

        def swap_letters(j, p):
            x, y = cfg.factors(j)[p], Leaf(cfg.leaf_at(j, p + 1))
            z, ls, tl = cfg.levels[j]
            a, b = ls[p], ls[p + 1]
            fs = cfg.factors(j)
            self.stats["exchange_letters"] += 1
            emit(1, cfg.wrap(j, r(fs[:p] + [Node(a, x, y)] + fs[p + 2:], ls[:p] + [b] + ls[p + 2:], z)))
            emit(-1, cfg.wrap(j, r(fs[:p] + [Node(b, x, y)] + fs[p + 2:], ls[:p] + [a] + ls[p + 2:], z)))
            ls[p], ls[p + 1] = b, a

        def swap_leaves(j, p):
            x, y = cfg.leaf_at(j, p), cfg.leaf_at(j, p + 1)
            if x == y:
                return
            z, ls, tl = cfg.levels[j]
            fs = cfg.factors(j)
            a, b = ls[p], ls[p + 1]
            X, Y = Leaf(x), Leaf(y)
            self.stats["exchange_arguments"] += 1
            emit(1, cfg.wrap(j, r(fs[:p] + [Node(a, X, Y)] + fs[p + 2:], ls[:p] + [b] + ls[p + 2:], z)))
            emit(-1, cfg.wrap(j, r(fs[:p] + [Node(a, Y, X)] + fs[p + 2:], ls[:p] + [b] + ls[p + 2:], z)))
            cfg.set_leaf(j, p, y)
            cfg.set_leaf(j, p + 1, x)

        def swap_levels(j):
            # exact: right commutativity at the subterm of level j
            self.stats["right_commutativity"] += 1
            cfg.levels[j], cfg.levels[j + 1] = cfg.levels[j + 1], cfg.levels[j]

        def transpose_in_level(j, p, q):
            for s in range(p, q):
                swap_leaves(j, s)
            for s in range(q - 2, p - 1, -1):
                swap_leaves(j, s)

        def exchange_with_first(j, p):
            k = len(cfg.levels)
            moves = list(range(j, k - 1))
            for s in moves:
                swap_levels(s)
            transpose_in_level(k - 1, 0, p)
            for s in reversed(moves):
                swap_levels(s)

        # letters within each level
        for j in range(len(cfg.levels)):
            ls = cfg.levels[j][1]
            for end in range(len(ls) - 1, 0, -1):
                for p in range(end):
                    if ctx.letter_rank(ls[p]) > ctx.letter_rank(ls[p + 1]):
                        swap_letters(j, p)
        # levels by signature
        k = len(cfg.levels)
        for end in range(k - 1, 0, -1):
            for j in range(end):
                if _signature(ctx, cfg.levels[j]) > _signature(ctx, cfg.levels[j + 1]):
                    swap_levels(j)
        # leaves in reading order
        slots = cfg.leaf_slots()
        target = sorted(cfg.reading(), key=ctx.gen_rank)
        for s in range(len(slots)):
            cur = cfg.reading()
            if cur[s] == target[s]:
                continue
            t_ = next(u for u in range(s + 1, len(slots)) if cur[u] == target[s])
            (js, ps), (jt, pt) = slots[s], slots[t_]
            if js == jt:
                transpose_in_level(js, ps, pt)
            elif s == 0:
                exchange_with_first(jt, pt)
            else:
                exchange_with_first(js, ps)
                exchange_with_first(jt, pt)
                exchange_with_first(js, ps)
        final = cfg.term()
        assert _classify_config(ctx, cfg) == NORMAL, final
        out = Poly.basis(final) + linear_combination(corrections)
        self.cache[t0] = out
        return out


def rewriter_for(ctx: Alphabet) -> Rewriter:
    cache = ctx.cache("rewriter")
    if "rw" not in cache:
        cache["rw"] = Rewriter(ctx)
    return cache["rw"]


def rewrite_normal_form(t, ctx: Optional[Alphabet] = None) -> Poly:
    """Normal form modulo the multi-Novikov identities, by rewriting."""
    ctx = ctx or Alphabet.from_terms([t])
    return rewriter_for(ctx).normal_form(t)


def rewrite_poly(p: Poly, ctx: Alphabet) -> Poly:
    rw = rewriter_for(ctx)
    return linear_combination((c, rw.normal_form(t)) for t, c in p.raw_items())


# ---------------------------------------------------------------------------
# identities

def novikov_relations(x, y, z, a, b) -> Dict[str, Poly]:
    """The three defining relations as elements of the free magmatic algebra."""
    B = Poly.basis
    assoc_xy = B(Node(b, Node(a, x, y), z)) - B(Node(a, x, Node(b, y, z)))
    return {
        "exchange_arguments": assoc_xy - B(Node(b, Node(a, y, x), z)) + B(Node(a, y, Node(b, x, z))),
        "exchange_letters": assoc_xy - B(Node(a, Node(b, x, y), z)) + B(Node(b, x, Node(a, y, z))),
        "right_commutativity": B(Node(b, Node(a, x, y), z)) - B(Node(a, Node(b, x, z), y)),
    }

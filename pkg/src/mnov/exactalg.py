"""Exact scalars, finitely supported maps and sparse polynomials.

Coefficients are :class:`fractions.Fraction` throughout.  A :class:`MultiIdx`
is a finitely supported map ``K -> N`` and doubles as a commutative monomial;
a :class:`Poly` is a finitely supported map from an arbitrary (hashable,
orderable) basis to rationals.  Both are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Tuple

from . import kernels

Scalar = Fraction


def scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _mixed_key(kv):
    return (type(kv[0]).__name__, repr(kv[0]))


def _sorted_items(d: Dict) -> Tuple:
    # keys of one type sort naturally; mixed key types fall back to a fixed order
    try:
        return tuple(sorted(d.items()))
    except TypeError:
        return tuple(sorted(d.items(), key=_mixed_key))


class MultiIdx:
    """Finitely supported map ``key -> positive int`` (absent keys mean 0)."""

    __slots__ = ("_items", "_hash", "_degree")

    def __init__(self, data: Mapping | Iterable = ()):
        if isinstance(data, Mapping):
            counts = {k: int(v) for k, v in data.items() if v}
        else:
            counts = {}
            for k in data:
                counts[k] = counts.get(k, 0) + 1
        for k, v in counts.items():
            if v < 0:
                raise ValueError(f"negative exponent for {k!r}")
        self._set(_sorted_items(counts))

    def _set(self, items):
        self._items = items
        self._hash = hash(items)
        self._degree = sum(v for _, v in items)

    @classmethod
    def _from_items(cls, items: Tuple) -> "MultiIdx":
        m = cls.__new__(cls)
        m._set(items)
        return m

    # mapping-ish interface
    def __getitem__(self, key) -> int:
        for k, v in self._items:
            if k == key:
                return v
        return 0

    get = __getitem__

    def __contains__(self, key) -> bool:
        return any(k == key for k, _ in self._items)

    def items(self) -> Tuple:
        return self._items

    def keys(self) -> Tuple:
        return tuple(k for k, _ in self._items)

    def elements(self) -> Tuple:
        """Keys repeated according to multiplicity, in key order."""
        return tuple(k for k, v in self._items for _ in range(v))

    def __iter__(self) -> Iterator:
        return iter(self.keys())

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    @property
    def degree(self) -> int:
        return self._degree

    def factorial(self) -> int:
        out = 1
        for _, v in self._items:
            out *= factorial(v)
        return out

    def __mul__(self, other: "MultiIdx") -> "MultiIdx":
        if not other._items:
            return self
        if not self._items:
            return other
        d = dict(self._items)
        for k, v in other._items:
            d[k] = d.get(k, 0) + v
        return MultiIdx._from_items(_sorted_items(d))

    def add(self, key, n: int = 1) -> "MultiIdx":
        d = dict(self._items)
        v = d.get(key, 0) + n
        if v < 0:
            raise ValueError(f"exponent of {key!r} would become negative")
        if v:
            d[key] = v
        else:
            d.pop(key, None)
        return MultiIdx._from_items(_sorted_items(d))

    def remove(self, key, n: int = 1) -> "MultiIdx":
        return self.add(key, -n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiIdx):
            return NotImplemented
        return self._hash == other._hash and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "MultiIdx") -> bool:
        return self._items < other._items

    def __le__(self, other: "MultiIdx") -> bool:
        return self._items <= other._items

    def __gt__(self, other: "MultiIdx") -> bool:
        return self._items > other._items

    def __ge__(self, other: "MultiIdx") -> bool:
        return self._items >= other._items

    def __repr__(self) -> str:
        return f"MultiIdx({dict(self._items)!r})"


ONE = MultiIdx()


class Poly:
    """Finitely supported map from basis elements to rationals.

    Zero coefficients are never stored.  Arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: Dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            c = scalar(c)
            if c:
                acc[b] = acc.get(b, 0) + c
        self._terms = {b: c for b, c in acc.items() if c}

    @classmethod
    def _wrap(cls, d: Dict) -> "Poly":
        """Adopt ``d`` (dropping zeros) without copying coefficients."""
        p = cls.__new__(cls)
        p._terms = {b: c for b, c in d.items() if c}
        return p

    @classmethod
    def basis(cls, b, coeff=1) -> "Poly":
        return cls({b: coeff})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._wrap({})

    def __getitem__(self, b) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def coeff(self, b) -> Fraction:
        return self[b]

    def __contains__(self, b) -> bool:
        return b in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.keys())

    def keys(self):
        return sorted(self._terms)

    def items(self):
        """(basis, coefficient) pairs in basis order."""
        return sorted(self._terms.items(), key=lambda bc: bc[0])

    def raw_items(self):
        """Unsorted view of the terms; cheaper when order is irrelevant."""
        return self._terms.items()

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_add(self, poly_scale(-1, other))

    def __neg__(self) -> "Poly":
        return poly_scale(-1, self)

    def __rmul__(self, c) -> "Poly":
        return poly_scale(c, self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return poly_scale(other, self)

    def map_basis(self, f: Callable) -> "Poly":
        """Apply a basis map ``b -> Poly`` linearly."""
        acc: Dict = {}
        for b, c in self._terms.items():
            for b2, c2 in f(b)._terms.items():
                acc[b2] = acc.get(b2, 0) + c * c2
        return Poly._wrap(acc)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Poly(0)"
        return "Poly({" + ", ".join(f"{b!r}: {c}" for b, c in self.items()) + "})"


def poly_add(p: Poly, q: Poly) -> Poly:
    if not q._terms:
        return p
    if not p._terms:
        return q
    acc = dict(p._terms)
    for b, c in q._terms.items():
        acc[b] = acc.get(b, 0) + c
    return Poly._wrap(acc)


def poly_scale(c, p: Poly) -> Poly:
    c = scalar(c)
    if not c:
        return Poly.zero()
    if c == 1:
        return p
    return Poly._wrap({b: c * v for b, v in p._terms.items()})


def poly_sum(polys: Iterable[Poly]) -> Poly:
    acc: Dict = {}
    for p in polys:
        for b, c in p._terms.items():
            acc[b] = acc.get(b, 0) + c
    return Poly._wrap(acc)


def linear_combination(pairs: Iterable[Tuple]) -> Poly:
    """Sum of ``c * p`` over ``(c, p)`` pairs."""
    acc: Dict = {}
    for c, p in pairs:
        c = scalar(c)
        if not c:
            continue
        for b, v in p._terms.items():
            acc[b] = acc.get(b, 0) + c * v
    return Poly._wrap(acc)


def mono_mul(u: MultiIdx, v: MultiIdx) -> MultiIdx:
    return u * v


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Product in the polynomial algebra; basis elements must be MultiIdx."""
    acc: Dict = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u * v
            acc[w] = acc.get(w, 0) + a * b
    return Poly._wrap(acc)


def var(v) -> Poly:
    """The polynomial consisting of the single variable ``v``."""
    return Poly._wrap({MultiIdx._from_items(((v, 1),)): Fraction(1)})


def constant(c) -> Poly:
    return Poly({ONE: c})


class DerivationSpec:
    """A derivation of a polynomial algebra given by its values on variables.

    ``action(v)`` returns a ``Poly`` over monomials.  Values are memoised, so
    ``action`` must be pure.
    """

    def __init__(self, action: Callable[[Hashable], Poly], name: str = ""):
        self.action = action
        self.name = name
        self._cache: Dict = {}

    def on_var(self, v) -> Poly:
        r = self._cache.get(v)
        if r is None:
            r = self._cache[v] = self.action(v)
        return r

    def __call__(self, p: Poly) -> Poly:
        return apply_derivation(self, p)

    def __repr__(self):
        return f"DerivationSpec({self.name or self.action!r})"


def apply_derivation(d: DerivationSpec, p: Poly) -> Poly:
    """Leibniz extension of ``d`` to polynomials."""
    acc: Dict = {}
    for mono, c in p._terms.items():
        items = mono.items()
        for idx, (v, e) in enumerate(items):
            dv = d.on_var(v)
            if not dv:
                continue
            if e == 1:
                rest = MultiIdx._from_items(items[:idx] + items[idx + 1:])
            else:
                rest = MultiIdx._from_items(items[:idx] + ((v, e - 1),) + items[idx + 1:])
            ce = c * e
            for m2, c2 in dv._terms.items():
                w = rest * m2
                acc[w] = acc.get(w, 0) + ce * c2
    return Poly._wrap(acc)


def monomial_degree(p: Poly) -> set:
    return {m.degree for m in p._terms}


# ---------------------------------------------------------------------------
# exact linear algebra

class SingularSystem(ArithmeticError):
    """A square system that should be invertible is not."""


def _row_echelon(rows):
    """Reduce sparse Fraction rows in place; returns the list of pivot rows.

    Each pivot row is a dict ``col -> Fraction`` normalised so that the pivot
    (its smallest column) is 1.
    """
    pivots: Dict = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                break
            f = row[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return pivots


def _index_vectors(vectors):
    index: Dict = {}
    rows = []
    for vec in vectors:
        row = {}
        for b, c in vec.raw_items():
            j = index.get(b)
            if j is None:
                j = index[b] = len(index)
            row[j] = c
        rows.append(row)
    return rows, index


def rank(vectors: Iterable[Poly], certify: bool = True) -> int:
    """Exact rank of a family of sparse vectors.

    When ``certify`` is set a modular rank is computed first; a modular rank
    equal to the number of vectors proves full rank over Q and skips the
    rational elimination.
    """
    vectors = list(vectors)
    if not vectors:
        return 0
    rows, index = _index_vectors(vectors)
    if certify and len(rows) <= len(index):
        if kernels.rank_mod_p(_integer_rows(rows), len(index)) == len(rows):
            return len(rows)
    return len(_row_echelon(rows))


def modular_rank(vectors: Iterable[Poly]) -> int:
    """Rank modulo the kernel prime; a lower bound for the rank over Q."""
    rows, index = _index_vectors(list(vectors))
    if not rows:
        return 0
    return kernels.rank_mod_p(_integer_rows(rows), len(index))


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            d = v.denominator
            if den % d:
                den = den * d // _gcd(den, d)
        out.append({c: int(v * den) for c, v in row.items()})
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class ExactSolver:
    """Coordinates with respect to a basis of sparse vectors, over Q.

    The basis is eliminated once; ``solve`` is then cheap.  Raises
    :class:`SingularSystem` at construction if the vectors are dependent.
    """

    def __init__(self, basis_vectors):
        self.basis_vectors = list(basis_vectors)
        n = len(self.basis_vectors)
        # row i of [V | I]: the basis vector transposed, tagged with its index
        rows, index = _index_vectors(self.basis_vectors)
        self._index = index
        self._width = len(index)
        tagged = []
        for i, row in enumerate(rows):
            r = dict(row)
            r[self._width + i] = Fraction(1)
            tagged.append(r)
        pivots = _row_echelon(tagged)
        # a basis vector reduced to zero in the left block is dependent
        left = [c for c in pivots if c < self._width]
        if len(left) != n:
            raise SingularSystem(
                f"{n} vectors span only a {len(left)}-dimensional space"
            )
        # back-substitute to reduced echelon form on the left block
        order = sorted(left, reverse=True)
        for c in order:
            prow = pivots[c]
            for c2 in sorted(left):
                if c2 >= c:
                    break
                r = pivots[c2]
                f = r.get(c)
                if f:
                    for k, v in prow.items():
                        nv = r.get(k, 0) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
        self._pivots = {c: pivots[c] for c in left}

    def solve(self, target: Poly) -> list:
        """Coefficients ``x`` with ``sum(x[i] * basis[i]) == target``."""
        t = {}
        for b, c in target.raw_items():
            j = self._index.get(b)
            if j is None:
                raise SingularSystem(f"target involves {b!r} outside the span")
            t[j] = c
        # reduced echelon form: target = sum over pivots c of t[c] * row_c
        x = [Fraction(0)] * len(self.basis_vectors)
        check: Dict = {}
        for col, prow in self._pivots.items():
            tc = t.get(col)
            if not tc:
                continue
            for k, v in prow.items():
                if k < self._width:
                    check[k] = check.get(k, 0) + tc * v
                else:
                    x[k - self._width] += tc * v
        if {k: v for k, v in check.items() if v} != t:
            raise SingularSystem("target is not in the span of the basis")
        return x

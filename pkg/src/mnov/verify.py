"""Deterministic verification suites behind ``mnov verify``.

Each suite returns a report ``{"suite", "params", "checks", "passed"}``;
every check records how many cases it ran and how many failed.  All
randomness comes from one ``random.Random(seed)``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

from . import dectree, genidx, magnov, spdeidx
from .exactalg import MultiIdx, Poly, linear_combination
from .magnov import Leaf, Node

LABELS = "lmpqrstuvw"

SUITES = (
    "identities",
    "freeness-gen",
    "freeness-spde",
    "braces",
    "morphism",
    "rotation",
    "words",
    "trees",
)


class UnknownSuite(ValueError):
    pass


def labels(n: int) -> List[str]:
    if not 1 <= n <= len(LABELS):
        raise ValueError(f"between 1 and {len(LABELS)} labels are supported")
    return list(LABELS[:n])


class Check:
    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.failures = 0
        self.details: Dict = {}
        self.first_failure = None

    def record(self, ok: bool, what=None):
        self.count += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None and what is not None:
                self.first_failure = str(what)

    def as_dict(self) -> Dict:
        out = {"name": self.name, "count": self.count, "failures": self.failures,
               "passed": self.failures == 0}
        if self.details:
            out["details"] = self.details
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        return out


def _report(suite: str, params: Dict, checks: Sequence[Check]) -> Dict:
    cs = [c.as_dict() for c in checks]
    return {"suite": suite, "params": params, "checks": cs,
            "passed": all(c["passed"] for c in cs)}


# ---------------------------------------------------------------------------
# random inputs

def random_term(rng: random.Random, degree: int, letters: Sequence, gens: Sequence):
    if degree == 1:
        return Leaf(rng.choice(gens))
    k = rng.randint(1, degree - 1)
    return Node(rng.choice(letters), random_term(rng, k, letters, gens),
                random_term(rng, degree - k, letters, gens))


def random_element(rng, alg, max_degree: int, letters, gens, terms: int = 2) -> Poly:
    """A random combination of evaluated terms, hence a populated element."""
    pairs = []
    for _ in range(rng.randint(1, terms)):
        t = random_term(rng, rng.randint(1, max_degree), letters, gens)
        pairs.append((Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2)),
                      magnov.eval_canonical(t, alg)))
    return linear_combination(pairs)


def identity_residuals(product: Callable, x, y, z, a, b) -> Dict[str, Poly]:
    """Left sides minus right sides of the multi-Novikov and multi-pre-Lie identities."""
    assoc_ab = product(b, product(a, x, y), z) - product(a, x, product(b, y, z))
    return {
        "exchange_arguments": assoc_ab
        - (product(b, product(a, y, x), z) - product(a, y, product(b, x, z))),
        "exchange_letters": assoc_ab
        - (product(a, product(b, x, y), z) - product(b, x, product(a, y, z))),
        "right_commutativity": product(b, product(a, x, y), z) - product(a, product(b, x, z), y),
        "pre_lie": assoc_ab
        - (product(a, product(b, y, x), z) - product(b, y, product(a, x, z))),
    }


def random_spde_poly(rng, dims: int, max_degree: int = 3, max_letter: int = 3) -> Poly:
    """Random polynomial in SPDE variables (not necessarily populated)."""
    def rand_letter():
        while True:
            n = tuple(rng.randint(0, max_letter) for _ in range(dims + 1))
            if sum(n) <= max_letter:
                return n

    def rand_var():
        ns = [rand_letter() for _ in range(rng.randint(0, 2))]
        ds = [rng.randint(0, dims) for _ in range(rng.randint(0, 2))]
        return spdeidx.SpdeVar(rng.choice("lm"), spdeidx.make_word(ns, ds))

    pairs = []
    for _ in range(rng.randint(1, 3)):
        m = MultiIdx([rand_var() for _ in range(rng.randint(0, max_degree))])
        pairs.append((Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Poly.basis(m)))
    return linear_combination(pairs)


def random_letter_tuple(rng, dims: int, max_total: int) -> tuple:
    while True:
        n = tuple(rng.randint(0, max_total) for _ in range(dims + 1))
        if sum(n) <= max_total:
            return n


def random_word(rng, dims: int, max_len: int = 6, max_total: int = 2) -> List:
    out = []
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.5:
            out.append(("d", rng.randint(0, dims)))
        else:
            out.append(("D", random_letter_tuple(rng, dims, max_total)))
    return out


def random_dectree(rng, size: int, letters, gens) -> dectree.DecTree:
    root = dectree.tree_generator(rng.choice(gens))
    kids = []
    left = size - 1
    while left:
        k = rng.randint(1, left)
        kids.append((rng.choice(letters), random_dectree(rng, k, letters, gens)))
        left -= k
    return dectree.DecTree(root.noise, root.xexp, kids)


def random_raw_tree(rng, size: int, letters, dims: int, max_x: int = 2) -> dectree.RawTree:
    fs = [("X", rng.randint(0, dims)) for _ in range(rng.randint(0, max_x))]
    left = size - 1
    while left:
        k = rng.randint(1, left)
        fs.append(("I", rng.choice(letters), random_raw_tree(rng, k, letters, dims, max_x)))
        left -= k
    rng.shuffle(fs)
    return dectree.RawTree(rng.choice("lm"), fs)


# ---------------------------------------------------------------------------
# suites

def suite_identities(seed: int = 0, max_degree: int = 4, triples: int = 500, dims: int = 1,
                     operator_samples: int = 200) -> Dict:
    rng = random.Random(seed)
    checks = []
    gen_letters = spdeidx.first_letters(dims, 2)
    gen_alg = genidx.GeneralIndices(gen_letters, ["l", "m"])
    spde_letters = spdeidx.first_letters(dims, 3)
    spde_alg = spdeidx.SpdeIndices(spde_letters, [("l", (0,) * (dims + 1)), ("l", (1,) + (0,) * dims)], dims)
    tree_gens = [("l", (0,) * (dims + 1)), ("m", (1,) + (0,) * dims)]
    tree_alg = dectree.TreeAlgebra(gen_letters, tree_gens)

    for name, alg, letters, kinds in (
        ("genidx", gen_alg, gen_letters, ("exchange_arguments", "exchange_letters", "right_commutativity")),
        ("spdeidx", spde_alg, spde_letters, ("exchange_arguments", "exchange_letters", "right_commutativity")),
        ("dectree", tree_alg, gen_letters, ("pre_lie",)),
    ):
        cs = {k: Check(f"{name}:{k}") for k in kinds}
        for _ in range(triples):
            x, y, z = (random_element(rng, alg, max_degree, letters, alg.gens) for _ in range(3))
            a, b = rng.choice(letters), rng.choice(letters)
            res = identity_residuals(alg.product, x, y, z, a, b)
            for k in kinds:
                cs[k].record(not res[k], (x, y, z, a, b))
        checks.extend(cs.values())

    # bilinearity in the letter slot: letters replaced by combinations
    lin = Check("genidx:linearised")
    for _ in range(min(triples, 100)):
        x, y, z = (random_element(rng, gen_alg, 3, gen_letters, gen_alg.gens) for _ in range(3))
        cu = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in gen_letters]
        cv = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in gen_letters]

        def lin_product(v, p, q):
            return linear_combination((c, gen_alg.product(a, p, q)) for c, a in zip(v, gen_letters))

        res = identity_residuals(lin_product, x, y, z, tuple(cu), tuple(cv))
        lin.record(all(not res[k] for k in ("exchange_arguments", "exchange_letters", "right_commutativity")))
    checks.append(lin)

    # commutation of derivations in the SPDE algebra
    comm = Check("spdeidx:partial_D_commutator")
    dcomm = Check("spdeidx:derivations_commute")
    for _ in range(operator_samples):
        p = random_spde_poly(rng, 2)
        n = random_letter_tuple(rng, 2, 3)
        i = rng.randint(0, 2)
        lhs = spdeidx.derivation_partial(i, spdeidx.derivation_D(n, p)) - spdeidx.derivation_D(
            n, spdeidx.derivation_partial(i, p))
        rhs = n[i] * spdeidx.derivation_D(spdeidx._lower(n, i), p) if n[i] else Poly()
        comm.record(lhs == rhs, (p, n, i))
        m = random_letter_tuple(rng, 2, 3)
        j = rng.randint(0, 2)
        ok = spdeidx.derivation_D(m, spdeidx.derivation_D(n, p)) == spdeidx.derivation_D(
            n, spdeidx.derivation_D(m, p))
        ok = ok and spdeidx.derivation_partial(i, spdeidx.derivation_partial(j, p)) == \
            spdeidx.derivation_partial(j, spdeidx.derivation_partial(i, p))
        dcomm.record(ok, (p, n, m, i, j))
    checks += [comm, dcomm]
    return _report("identities", {"seed": seed, "max_degree": max_degree, "triples": triples,
                                  "dims": dims}, checks)


def dims_gen_row(degrees, n_letters: int, n_labels: int, dims: int = 1) -> List[Dict]:
    letters = spdeidx.first_letters(dims, n_letters)
    labs = labels(n_labels)
    ctx = genidx.GeneralIndices(letters, labs)
    rows = []
    for n in degrees:
        populated = genidx.enumerate_populated(n, letters, labs)
        normal = magnov.enumerate_normal(n, ctx=ctx)
        rows.append({"degree": n, "populated": len(populated), "normal": len(normal)})
    return rows


def suite_freeness_gen(seed: int = 0, max_degree: int = 5, n_letters: int = 1,
                       n_labels: int = 1, dims: int = 1) -> Dict:
    letters = spdeidx.first_letters(dims, n_letters)
    labs = labels(n_labels)
    ctx = genidx.GeneralIndices(letters, labs)
    counts = Check("counts")
    solve = Check("change_of_basis")
    roundtrip = Check("express_roundtrip")
    row = []
    for n in range(1, max_degree + 1):
        populated = genidx.enumerate_populated(n, letters, labs)
        normal = magnov.enumerate_normal(n, ctx=ctx)
        row.append(len(populated))
        counts.record(len(populated) == len(normal), n)
        keys = sorted({magnov.content(t) for t in normal}, key=repr)
        for key in keys:
            basis = magnov.normal_basis(ctx, key)
            images = {m for t in basis for m in magnov.eval_canonical(t, ctx).keys()}
            try:
                magnov.component_solver(ctx, key)
                ok = len(images) == len(basis)
            except Exception:  # singular or malformed system
                ok = False
            solve.record(ok, key)
        for m in populated:
            e = genidx.express_in_generators(m, ctx)
            roundtrip.record(magnov.eval_poly(e, ctx) == Poly.basis(m), m)
    counts.details["dimensions"] = row
    return _report("freeness-gen", {"seed": seed, "max_degree": max_degree, "letters": n_letters,
                                    "labels": n_labels, "dims": dims}, [counts, solve, roundtrip])


def suite_freeness_spde(seed: int = 0, max_degree: int = 3, dims: int = 1, letter_cap: int = 1,
                        d_cap: int = 1, n_labels: int = 1) -> Dict:
    c = Check("free_generation")
    rows = []
    for n in range(1, max_degree + 1):
        r = spdeidx.free_generation_check(n, (letter_cap, d_cap), labels(n_labels), dims)
        rows.append(r)
        c.record(r["equal"], r)
    c.details["rows"] = rows
    return _report("freeness-spde", {"seed": seed, "max_degree": max_degree, "dims": dims,
                                     "letter_cap": letter_cap, "d_cap": d_cap,
                                     "labels": n_labels}, [c])


def suite_braces(seed: int = 0, max_degree: int = 4) -> Dict:
    from itertools import product

    letters = ["a", "b"]
    gens = ["x", "y"]
    g = genidx.GeneralIndices(letters, gens)
    t = dectree.TreeAlgebra(letters, gens)
    closed = Check("genidx:closed_formula")
    corolla = Check("dectree:corolla")
    for n in range(1, max_degree + 1):
        for ls in product(letters, repeat=n):
            for xs in product(gens, repeat=n + 1):
                x, ys = xs[0], xs[1:]
                rec = dectree.brace(g.generator(x), [g.generator(y) for y in ys], ls, g)
                cf = genidx.brace_closed_form(g.generator(x), [g.generator(y) for y in ys], ls)
                closed.record(rec == cf, (x, ys, ls))
                tb = dectree.brace(t.generator(x), [t.generator(y) for y in ys], ls, t)
                corolla.record(tb == Poly.basis(dectree.corolla(x, ys, ls)), (x, ys, ls))
    return _report("braces", {"seed": seed, "max_degree": max_degree}, [closed, corolla])


def suite_morphism(seed: int = 0, max_degree: int = 4, pairs: int = 200, dims: int = 1) -> Dict:
    rng = random.Random(seed)
    letters = spdeidx.first_letters(dims, 3)
    gens = [("l", (0,) * (dims + 1)), ("m", (0,) * (dims + 1)), ("l", (1,) + (0,) * dims)]
    c = Check("graft_to_product")
    for _ in range(pairs):
        s = random_dectree(rng, rng.randint(1, max_degree), letters, gens)
        t = random_dectree(rng, rng.randint(1, max_degree), letters, gens)
        n = rng.choice(letters)
        lhs = dectree.tree_to_multiindex(dectree.graft(n, s, t))
        rhs = spdeidx.product_tri(n, dectree.tree_to_multiindex(s), dectree.tree_to_multiindex(t))
        c.record(lhs == rhs, (n, s, t))
    return _report("morphism", {"seed": seed, "max_degree": max_degree, "pairs": pairs,
                                "dims": dims}, [c])


def suite_rotation(seed: int = 0, max_leaves: int = 7, labelings: int = 3) -> Dict:
    rng = random.Random(seed)
    c = Check("round_trip")
    shapes_by_size = []
    for n in range(1, max_leaves + 1):
        shapes = magnov.binary_shapes(n)
        shapes_by_size.append(len(shapes))
        for shape in shapes:
            ok = True
            for _ in range(labelings):
                ls = [rng.choice("ab") for _ in range(n - 1)]
                gs = [rng.choice("xyz") for _ in range(n)]
                t = magnov.relabel(shape, ls, gs)
                rt = magnov.knuth_rotation(t)
                ok = ok and magnov.knuth_rotation_inv(rt) == t and rt.size() == n
                ok = ok and magnov.knuth_rotation(magnov.knuth_rotation_inv(rt)) == rt
            c.record(ok, shape)
    c.details["shapes_by_leaves"] = shapes_by_size
    c.details["shapes"] = sum(shapes_by_size)
    return _report("rotation", {"seed": seed, "max_leaves": max_leaves,
                                "labelings": labelings}, [c])


def suite_words(seed: int = 0, words: int = 500, dims: int = 2, max_len: int = 6) -> Dict:
    rng = random.Random(seed)
    confluent = Check("strategies_agree")
    homogeneous = Check("length_invariant")
    fast = Check("prefix_matches_rewriting")
    for _ in range(words):
        w = random_word(rng, dims, max_len)
        left = spdeidx.word_normal_form(w, "leftmost")
        right = spdeidx.word_normal_form(w, "rightmost")
        confluent.record(left == right, w)
        nbig = sum(1 for k, _ in w if k == "D")
        homogeneous.record(all(u.length == nbig for u in left.keys()), w)
        i = rng.randint(0, dims)
        v = spdeidx.SpdeVar("l", next(iter(left.keys())) if left else spdeidx.EMPTY)
        p = Poly.basis(MultiIdx([v]))
        fast.record(spdeidx.derivation_partial(i, p) ==
                    spdeidx.derivation_partial(i, p, via_rewriting=True), w)
    return _report("words", {"seed": seed, "words": words, "dims": dims, "max_len": max_len},
                   [confluent, homogeneous, fast])


def suite_trees(seed: int = 0, max_degree: int = 4, samples: int = 200, dims: int = 1) -> Dict:
    rng = random.Random(seed)
    letters = spdeidx.letter_tuples(dims, 1)
    idem = Check("normal_form_idempotent")
    resc = Check("rescaled_differential_invariant")
    example = Check("worked_example")
    counts = Check("free_prelie_counts")
    for _ in range(samples):
        t = random_raw_tree(rng, rng.randint(1, max_degree), letters, dims)
        nf = dectree.tree_normal_form(t)
        again = linear_combination(
            (c, dectree.tree_normal_form(u.to_raw())) for u, c in nf.raw_items())
        idem.record(again == nf, t)
        resc.record(dectree.elementary_differential(t, dectree.RESCALED)
                    == dectree.elementary_differential(nf, dectree.RESCALED), t)
    for b in spdeidx.letter_tuples(dims, 2):
        for i in range(dims + 1):
            ok = worked_example_ok(b, i)
            example.record(ok, (b, i))
    gens = [("l", (0,) * (dims + 1)), ("l", (1,) + (0,) * dims)]
    rows = []
    for n in range(1, max_degree + 1):
        r = dectree.free_prelie_check(n, letters[:2], gens)
        rows.append(r)
        counts.record(r["equal"], r)
    counts.details["rows"] = rows
    return _report("trees", {"seed": seed, "max_degree": max_degree, "samples": samples,
                             "dims": dims}, [idem, resc, example, counts])


def worked_example(b: tuple, i: int, label: str = "l") -> Dict:
    """The raw tree ``I_b(Xi) X_i Xi``, its normal form and elementary differential."""
    leaf = dectree.RawTree(label)
    raw = dectree.RawTree(label, [("I", b, leaf), ("X", i)])
    nf = dectree.tree_normal_form(raw)
    ed = dectree.elementary_differential(raw)
    return {"raw": raw, "normal_form": nf, "elementary_differential": ed}


def worked_example_ok(b: tuple, i: int) -> bool:
    ex = worked_example(b, i)
    leaf = dectree.DecTree("l")
    expected = Poly.basis(dectree.DecTree("l", MultiIdx([i]), [(b, leaf)]))
    if b[i]:
        expected = expected + Poly.basis(dectree.DecTree("l", MultiIdx(), [(spdeidx._lower(b, i), leaf)]))
    z = spdeidx.SpdeVar("l", spdeidx.EMPTY)
    zb = spdeidx.SpdeVar("l", spdeidx.make_word([b], [i]))
    return ex["normal_form"] == expected and ex["elementary_differential"] == Poly.basis(MultiIdx([z, zb]))


def run_suite(name: str, **kw) -> Dict:
    table = {
        "identities": suite_identities,
        "freeness-gen": suite_freeness_gen,
        "freeness-spde": suite_freeness_spde,
        "braces": suite_braces,
        "morphism": suite_morphism,
        "rotation": suite_rotation,
        "words": suite_words,
        "trees": suite_trees,
    }
    if name not in table:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    return table[name](**kw)

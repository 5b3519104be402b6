"""Seeded random generators for terms of both calculi.

Distributive terms are built bottom-up with globally fresh labels, so they are
correct by construction in the common case; callers still filter through the
correctness checker. Pure terms are drawn from a small grammar and kept only
when their derivation space is finite and a refinement can be synthesized.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from hypothesis import strategies as st

from lamdist import dist_core as dc
from lamdist import lambda_core as lc
from lamdist.refine import refinement_for
from lamdist.spaces import SpaceTooLargeError, build_space, enumerate_graph_lambda

DIST_SEED = 20240611
LAMBDA_SEED = 1729


class _DistGen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.labels = itertools.count(1)
        self.fresh_names = itertools.count()
        self.pool: list[str] = []

    def label(self) -> int:
        return next(self.labels)

    def name(self) -> str:
        if self.pool and self.rng.random() < 0.3:
            return self.rng.choice(self.pool)
        name = f"v{next(self.fresh_names)}"
        self.pool.append(name)
        return name

    def type(self, depth: int = 2) -> dc.DistType:
        if depth <= 0 or self.rng.random() < 0.6:
            return dc.Base(self.rng.choice("abc"), self.label())
        dom = tuple(self.type(depth - 1) for _ in range(self.rng.randint(0, 2)))
        return dc.Arrow(dom, self.label(), self.type(depth - 1))

    def var(self, ty: dc.DistType | None = None) -> dc.DistTerm:
        return dc.DVar(self.name(), ty if ty is not None else self.type())

    def abstract_some(self, body: dc.DistTerm, label: int) -> dc.DistTerm:
        names = sorted(dc.free_vars(body))
        if names and self.rng.random() < 0.85:
            return dc.dlam(self.rng.choice(names), label, body)
        return dc.dlam(f"u{next(self.fresh_names)}", label, body)

    def redex(self, ty: dc.DistType | None, budget: int) -> dc.DistTerm:
        body = self.term(ty, budget // 2)
        fun = self.abstract_some(body, self.label())
        occurrences = dc.type_of(fun).domain
        args = [self.term(c, max(1, budget // (2 * max(1, len(occurrences))))) for c in occurrences]
        return dc.DApp(fun, tuple(args))

    def head_app(self, ty: dc.DistType | None, budget: int) -> dc.DistTerm:
        n = self.rng.randint(0, 2)
        args = tuple(self.term(None, max(1, (budget - 1) // max(1, n))) for _ in range(n))
        codomain = ty if ty is not None else self.type(1)
        head = dc.DVar(self.name(), dc.Arrow(tuple(dc.type_of(a) for a in args), self.label(), codomain))
        return dc.DApp(head, args)

    def lam_of(self, ty: dc.Arrow, budget: int) -> dc.DistTerm:
        x = f"u{next(self.fresh_names)}"
        if ty.domain:
            uses = tuple(dc.DVar(x, c) for c in ty.domain)
            head = dc.DVar(self.name(), dc.Arrow(ty.domain, self.label(), ty.codomain))
            body = dc.DApp(head, uses)
        else:
            body = self.term(ty.codomain, budget - 1)
        return dc.dlam(x, ty.label, body)

    def term(self, ty: dc.DistType | None, budget: int) -> dc.DistTerm:
        r = self.rng.random()
        if budget <= 1 or r < 0.25:
            return self.var(ty)
        if isinstance(ty, dc.Arrow) and r < 0.55:
            return self.lam_of(ty, budget)
        if r < 0.7:
            return self.redex(ty, budget)
        if ty is None and r < 0.8:
            return self.abstract_some(self.term(None, budget - 1), self.label())
        return self.head_app(ty, budget)


def random_dist_term(rng: random.Random, budget: int = 10) -> dc.DistTerm:
    gen = _DistGen(rng)
    return gen.redex(None, budget) if rng.random() < 0.7 else gen.term(None, budget)


@lru_cache(maxsize=None)
def correct_dist_terms(count: int = 200, seed: int = DIST_SEED, max_size: int = 25) -> tuple[dc.DistTerm, ...]:
    """``count`` distinct correct terms of size at most ``max_size``, each with a redex."""
    rng = random.Random(seed)
    found: dict[dc.DistTerm, None] = {}
    while len(found) < count:
        t = random_dist_term(rng, rng.randint(3, 14))
        if dc.size(t) <= max_size and dc.dist_redexes(t) and dc.check_correct(t):
            found[t] = None
    return tuple(found)


def dist_terms(max_size: int = 25) -> st.SearchStrategy:
    """Hypothesis strategy of correct distributive terms."""
    def build(seed: int):
        rng = random.Random(seed)
        while True:
            t = random_dist_term(rng, rng.randint(1, 12))
            if dc.size(t) <= max_size and dc.check_correct(t):
                return t
    return st.integers(min_value=0, max_value=2**32).map(build)


# ---------------------------------------------------------------------------
# Pure terms

FREE_NAMES = ("y", "z", "w")


def random_lambda_term(rng: random.Random, depth: int, bound: tuple[str, ...] = ()) -> lc.Term:
    r = rng.random()
    if depth <= 0 or r < 0.3:
        if bound and rng.random() < 0.6:
            return lc.Var(rng.choice(bound))
        return lc.Var(rng.choice(FREE_NAMES))
    if r < 0.45:
        x = f"x{len(bound)}"
        return lc.lam(x, random_lambda_term(rng, depth - 1, bound + (x,)))
    if r < 0.75:
        x = f"x{len(bound)}"
        fun = lc.lam(x, random_lambda_term(rng, depth - 1, bound + (x,)))
        return lc.App(fun, random_lambda_term(rng, depth - 1, bound))
    return lc.App(random_lambda_term(rng, depth - 1, bound), random_lambda_term(rng, depth - 1, bound))


def finite_space(t: lc.Term, fuel: int = 12, max_classes: int = 40):
    """The derivation space of ``t`` when it is finite and small, else None."""
    try:
        graph = enumerate_graph_lambda(t, fuel, node_cap=200)
        if not graph.is_acyclic():
            return None
        space = build_space(graph, class_cap=max_classes)
    except SpaceTooLargeError:
        return None
    return space


@lru_cache(maxsize=None)
def lambda_instances(count: int = 100, seed: int = LAMBDA_SEED) -> tuple:
    """``count`` distinct (term, space, refinement) triples with finite, non-trivial spaces."""
    rng = random.Random(seed)
    found = {}
    while len(found) < count:
        t = random_lambda_term(rng, rng.randint(2, 5))
        if t in found or not lc.beta_redexes(t):
            continue
        space = finite_space(t)
        if space is None:
            continue
        t_prime = refinement_for(t)
        if t_prime is not None:
            found[t] = (t, space, t_prime)
    return tuple(found.values())


def lambda_terms(max_depth: int = 4) -> st.SearchStrategy:
    """Hypothesis strategy of arbitrary pure terms, closed or with free variables."""
    names = st.sampled_from(("x", "y", "z", "f"))
    return st.recursive(
        names.map(lc.Var),
        lambda inner: st.one_of(
            st.tuples(names, inner).map(lambda p: lc.lam(*p)),
            st.tuples(inner, inner).map(lambda p: lc.App(*p))),
        max_leaves=12)

"""Garbage, sieving, and the factorization of derivation spaces.

Relative to a refinement ``t'`` of the source, a derivation is garbage when
its simulation is empty: it only reduces parts of the term that ``t'`` leaves
untyped. Sieving extracts the garbage-free part of a derivation by repeatedly
taking the leftmost step that both belongs to the derivation and is simulated
by at least one step. Every derivation is equivalent to its sieve followed by
garbage, and this decomposition is an isomorphism between the derivation space
and a Grothendieck construction over the lattice of garbage-free classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import lambda_core as lc
from .errors import NotCoinitialError
from .lambda_core import LamDerivation, LamStep, Position
from .refine import RefinementWitness
from .simulate import _residual_steps, _transport, sim_residual_derivation
from .spaces import (SpaceLattice, build_space, check_joins, check_meets,
                     check_partial_order, enumerate_graph_lambda)


def _require_source(rho: LamDerivation, w: RefinementWitness):
    if rho.source != w.lam_term:
        raise NotCoinitialError("the witness does not refine the source of the derivation")


def is_garbage(rho: LamDerivation, w: RefinementWitness) -> bool:
    """True when ``rho`` is simulated by the empty derivation."""
    _require_source(rho, w)
    return len(sim_residual_derivation(rho, w)[0]) == 0


def _coarse(w: RefinementWitness, rho: tuple[Position, ...]) -> list[Position]:
    t = w.lam_term
    return [p for p in lc.redex_positions(t)
            if not lc._project_positions(t, (p,), rho) and _residual_steps(w, p)]


def coarse_steps(rho: LamDerivation, w: RefinementWitness) -> list[LamStep]:
    """Source steps that are prefixes of ``rho`` and are simulated, leftmost first."""
    _require_source(rho, w)
    return [LamStep(rho.source, p) for p in _coarse(w, rho.positions)]


@lru_cache(maxsize=1 << 15)
def _sieve(w: RefinementWitness, rho: tuple[Position, ...]) -> tuple[Position, ...]:
    coarse = _coarse(w, rho)
    if not coarse:
        return ()
    r0 = coarse[0]
    rest = lc._project_positions(w.lam_term, rho, (r0,))
    return (r0,) + _sieve(_transport(w, r0)[1], rest)


def sieve(rho: LamDerivation, w: RefinementWitness) -> LamDerivation:
    """The garbage-free part of ``rho`` with respect to ``w``."""
    _require_source(rho, w)
    return LamDerivation.from_positions(rho.source, _sieve(w, rho.positions))


def is_garbage_free(rho: LamDerivation, w: RefinementWitness) -> bool:
    return lc.perm_equiv(sieve(rho, w), rho)


@dataclass(frozen=True)
class FactorizationResult:
    """``garbage_free`` followed by ``garbage`` is equivalent to the input.

    ``witness`` is the refinement transported along ``garbage_free``; the
    garbage part is garbage with respect to it.
    """

    garbage_free: LamDerivation
    garbage: LamDerivation
    witness: RefinementWitness


def factorize(rho: LamDerivation, w: RefinementWitness) -> FactorizationResult:
    head = sieve(rho, w)
    tail = lc.project(rho, head)
    return FactorizationResult(head, tail, sim_residual_derivation(head, w)[1])


# ---------------------------------------------------------------------------
# Grothendieck construction


@dataclass
class Fiber:
    """Garbage classes over one garbage-free class.

    ``space`` is the derivation space of the target of the base
    representative and ``elements`` lists its classes that are garbage with
    respect to ``witness``.
    """

    base_class: int
    space: SpaceLattice
    witness: RefinementWitness
    elements: list[int]
    index: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {c: i for i, c in enumerate(self.elements)}

    def leq(self, x: int, y: int) -> bool:
        return self.space.leq[self.elements[x]][self.elements[y]]

    def join(self, x: int, y: int) -> int | None:
        return self.index.get(self.space.joins[self.elements[x]][self.elements[y]])

    def representative(self, x: int) -> LamDerivation:
        return self.space.representative(self.elements[x])


@dataclass
class GrothendieckSpace:
    """Pairs (garbage-free class, garbage class over it) with the twisted order.

    Base points are indices into ``base``, which lists class indices of
    ``space``. ``action[(a, b)]`` is defined when ``a ⊴ b`` and maps each
    element of fiber ``a`` to an element of fiber ``b`` (None marks a law
    violation).
    """

    space: SpaceLattice
    witness: RefinementWitness
    base: list[int]
    base_leq: list[list[bool]]
    base_join: list[list[int]]
    base_meet: list[list[int]]
    base_top: int
    fibers: list[Fiber]
    action: dict[tuple[int, int], list[int | None]]
    pairs: list[tuple[int, int]]
    pair_leq: list[list[bool]]
    pair_join: list[list[int | None]]

    @property
    def base_bottom(self) -> int:
        return 0

    def base_representative(self, a: int) -> LamDerivation:
        return self.space.representative(self.base[a])

    def pair_index(self, a: int, x: int) -> int:
        return self._pair_index[(a, x)]

    def __post_init__(self):
        self._pair_index = {p: i for i, p in enumerate(self.pairs)}


def build_grothendieck(space: SpaceLattice, w: RefinementWitness) -> GrothendieckSpace:
    if space.calculus != "lambda" or space.root != w.lam_term:
        raise NotCoinitialError("the witness must refine the root of a pure derivation space")
    reps = space.representatives
    n = len(space)
    transported = [sim_residual_derivation(r, w)[1] for r in reps]

    base = [i for i in range(n) if is_garbage_free(reps[i], w)]
    base_of = {c: a for a, c in enumerate(base)}
    nb = len(base)

    def unlhd(i: int, j: int) -> bool:
        return is_garbage(lc.project(reps[i], reps[j]), transported[j])

    base_leq = [[unlhd(base[a], base[b]) for b in range(nb)] for a in range(nb)]
    base_join = [[base_of[space.class_of(sieve(reps[space.joins[base[a]][base[b]]], w))]
                  for b in range(nb)] for a in range(nb)]
    base_top = 0
    for a in range(nb):
        base_top = base_join[base_top][a]

    def fold_join(points):
        out = 0
        for p in points:
            out = base_join[out][p]
        return out

    base_meet = [[fold_join(c for c in range(nb) if base_leq[c][a] and base_leq[c][b])
                  for b in range(nb)] for a in range(nb)]

    fibers = []
    for a in range(nb):
        rep = reps[base[a]]
        sub = build_space(enumerate_graph_lambda(rep.target, space.graph.length_cap,
                                                 space.graph.node_cap))
        wa = transported[base[a]]
        elements = [c for c in range(len(sub)) if is_garbage(sub.representative(c), wa)]
        fibers.append(Fiber(base[a], sub, wa, elements))

    action: dict[tuple[int, int], list[int | None]] = {}
    for a, b in itertools.product(range(nb), repeat=2):
        if not base_leq[a][b]:
            continue
        ra, rb = reps[base[a]], reps[base[b]]
        images = []
        for x in range(len(fibers[a].elements)):
            moved = lc.project(ra.then(fibers[a].representative(x)), rb)
            images.append(fibers[b].index.get(fibers[b].space.class_of(moved)))
        action[(a, b)] = images

    pairs = [(a, x) for a in range(nb) for x in range(len(fibers[a].elements))]
    pair_index = {p: i for i, p in enumerate(pairs)}

    def pleq(p, q):
        (a, x), (b, y) = p, q
        if not base_leq[a][b]:
            return False
        image = action[(a, b)][x]
        return image is not None and fibers[b].leq(image, y)

    pair_leq = [[pleq(p, q) for q in pairs] for p in pairs]

    def pjoin(p, q):
        (a, x), (b, y) = p, q
        c = base_join[a][b]
        if (a, c) not in action or (b, c) not in action:
            return None
        xi, yi = action[(a, c)][x], action[(b, c)][y]
        if xi is None or yi is None:
            return None
        z = fibers[c].join(xi, yi)
        return None if z is None else pair_index[(c, z)]

    pair_join = [[pjoin(p, q) for q in pairs] for p in pairs]
    return GrothendieckSpace(space, w, base, base_leq, base_join, base_meet, base_top,
                             fibers, action, pairs, pair_leq, pair_join)


@dataclass
class IsoReport:
    """Outcome of comparing a derivation space with its factorization."""

    phi: list[tuple[int, int] | None]
    psi: dict[tuple[int, int], int]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def decompose_class(space: SpaceLattice, groth: GrothendieckSpace, cls: int) -> tuple[int, int] | None:
    """The pair (garbage-free class, garbage class) of ``cls``."""
    rho = space.representative(cls)
    result = factorize(rho, groth.witness)
    c = space.class_of(result.garbage_free)
    if c not in groth.base:
        return None
    a = groth.base.index(c)
    fiber = groth.fibers[a]
    x = fiber.index.get(fiber.space.class_of(result.garbage))
    return None if x is None else (a, x)


def compose_pair(space: SpaceLattice, groth: GrothendieckSpace, a: int, x: int) -> int:
    rho = groth.base_representative(a).then(groth.fibers[a].representative(x))
    return space.class_of(rho)


def check_factorization_iso(space: SpaceLattice, groth: GrothendieckSpace) -> IsoReport:
    """Check that decomposition and composition are inverse semilattice isomorphisms."""
    failures = []
    n = len(space)
    phi = [decompose_class(space, groth, i) for i in range(n)]
    for i, p in enumerate(phi):
        if p is None:
            failures.append(f"class {i} does not decompose into a garbage-free class and garbage")
    psi = {p: compose_pair(space, groth, *p) for p in groth.pairs}
    if failures:
        return IsoReport(phi, psi, failures)
    index = {p: k for k, p in enumerate(groth.pairs)}
    for i in range(n):
        if psi[phi[i]] != i:
            failures.append(f"composing the factors of class {i} gives class {psi[phi[i]]}")
    for p in groth.pairs:
        if phi[psi[p]] != p:
            failures.append(f"pair {p} is not the factorization of its composite")
    if len(set(phi)) != n or len(groth.pairs) != n:
        failures.append(f"{n} classes but {len(groth.pairs)} pairs")
    if phi[space.bottom] != (groth.base_bottom, 0) or groth.fibers[0].elements[0] != 0:
        failures.append("the empty derivation does not map to the bottom pair")
    for i, j in itertools.product(range(n), repeat=2):
        pi, pj = index[phi[i]], index[phi[j]]
        if space.leq[i][j] != groth.pair_leq[pi][pj]:
            failures.append(f"order differs between classes {i}, {j} and their pairs")
        joined = groth.pair_join[pi][pj]
        if joined is None or groth.pairs[joined] != phi[space.joins[i][j]]:
            failures.append(f"join of classes {i}, {j} does not map to the join of their pairs")
    return IsoReport(phi, psi, failures)


def check_grothendieck_laws(groth: GrothendieckSpace) -> list[str]:
    """Lattice laws of the base, semilattice laws of fibers, lax functor laws, pair laws."""
    problems = []
    nb = len(groth.base)
    problems += ["base: " + p for p in check_partial_order(groth.base_leq)]
    problems += ["base: " + p for p in check_joins(groth.base_leq, groth.base_join)]
    problems += ["base: " + p for p in check_meets(groth.base_leq, groth.base_meet)]
    if not all(groth.base_leq[a][groth.base_top] for a in range(nb)):
        problems.append("base: top is not above every class")
    for a, fiber in enumerate(groth.fibers):
        if not fiber.elements or fiber.elements[0] != 0:
            problems.append(f"fiber {a}: the empty derivation is missing")
        elems = fiber.elements
        for x, y in itertools.product(range(len(elems)), repeat=2):
            if fiber.join(x, y) is None:
                problems.append(f"fiber {a}: join of {x}, {y} is not garbage")
        for x in range(len(elems)):
            if groth.action[(a, a)][x] != x:
                problems.append(f"fiber {a}: the identity action moves {x}")
    for (a, b), images in groth.action.items():
        fa, fb = groth.fibers[a], groth.fibers[b]
        if any(im is None for im in images):
            problems.append(f"action {a}->{b} leaves the garbage fiber")
            continue
        for x, y in itertools.product(range(len(images)), repeat=2):
            if fa.leq(x, y) and not fb.leq(images[x], images[y]):
                problems.append(f"action {a}->{b} is not monotone at {x}, {y}")
    for a, b, c in itertools.product(range(nb), repeat=3):
        if (a, b) in groth.action and (b, c) in groth.action:
            direct, first, second = groth.action[(a, c)], groth.action[(a, b)], groth.action[(b, c)]
            for x, im in enumerate(direct):
                via = first[x] if first[x] is None else second[first[x]]
                if im is None or via is None or not groth.fibers[c].leq(im, via):
                    problems.append(f"composition law fails for {a}->{b}->{c} at {x}")
    problems += ["pairs: " + p for p in check_partial_order(groth.pair_leq)]
    if all(j is not None for row in groth.pair_join for j in row):
        problems += ["pairs: " + p for p in check_joins(groth.pair_leq, groth.pair_join)]
    else:
        problems.append("pairs: some join is undefined")
    return problems

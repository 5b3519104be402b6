"""Executable statements of the algebraic laws, checked on concrete instances.

Every ``*_laws`` function returns a list of human-readable failures; an empty
list means the instance satisfies the laws. Checks that would be cubic in the
number of classes are sampled with a seeded generator once a space is large.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from . import dist_core as dc
from . import lambda_core as lc
from .factor import (build_grothendieck, check_factorization_iso,
                     check_grothendieck_laws, coarse_steps, is_garbage, sieve)
from .refine import (RefinementWitness, check_refines, is_strongly_sequential,
                     refinement_for)
from .simulate import sim_residual_derivation, sim_residual_step, sim_transport
from .spaces import (SpaceLattice, build_space, check_distributive, check_joins,
                     check_meets, check_partial_order, class_members,
                     enumerate_graph_dist, enumerate_graph_lambda)

MAX_TRIPLES = 400
MAX_MEMBERS = 2000


def _pairs(n: int, rng: random.Random, limit: int = MAX_TRIPLES) -> list[tuple[int, int]]:
    pairs = list(itertools.product(range(n), repeat=2))
    return pairs if len(pairs) <= limit else rng.sample(pairs, limit)


def _triples(n: int, rng: random.Random, limit: int = MAX_TRIPLES) -> list[tuple[int, int, int]]:
    if n ** 3 <= limit:
        return list(itertools.product(range(n), repeat=3))
    return [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(limit)]


# ---------------------------------------------------------------------------
# Pure calculus


def lambda_space_laws(space: SpaceLattice, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    reps = space.representatives
    n = len(space)
    out = check_partial_order(space.leq) + check_joins(space.leq, space.joins)
    J = space.joins
    for i, j in _pairs(n, rng):
        if J[i][j] != J[j][i]:
            out.append(f"join of {i}, {j} is not commutative")
    for i, j, k in _triples(n, rng):
        if J[J[i][j]][k] != J[i][J[j][k]]:
            out.append(f"join of {i}, {j}, {k} is not associative")
        if space.leq[i][j] and not space.leq[J[i][k]][J[j][k]]:
            out.append(f"join is not monotone at {i}, {j}, {k}")
        rho, sigma = reps[i], reps[j]
        tau = lc.project(reps[k], sigma)
        if not lc.perm_equiv(lc.project(rho, sigma.then(tau)), lc.project(lc.project(rho, sigma), tau)):
            out.append(f"projection after a composite differs at {i}, {j}, {k}")
        s2 = lc.project(reps[j], rho)
        lhs = lc.project(rho.then(s2), reps[k])
        rhs = lc.project(rho, reps[k]).then(lc.project(s2, lc.project(reps[k], rho)))
        if not lc.perm_equiv(lhs, rhs):
            out.append(f"projection of a composite differs at {i}, {j}, {k}")
        left = lc.project(lc.join(rho, sigma), reps[k])
        right = lc.join(lc.project(rho, reps[k]), lc.project(sigma, reps[k]))
        if not lc.perm_equiv(left, right):
            out.append(f"projection does not distribute over join at {i}, {j}, {k}")
    return out


def orthogonality_laws(t: lc.Term) -> list[str]:
    out = []
    steps = lc.beta_redexes(t)
    for r, s in itertools.product(steps, repeat=2):
        if r.redex in {p.redex for p in lc.residuals(r, r)}:
            out.append(f"step at {lc.format_position(r.redex)} survives itself")
        rs = lc.develop(s.target, lc.residuals(r, s))
        sr = lc.develop(r.target, lc.residuals(s, r))
        if rs.target != sr.target:
            out.append(f"steps at {lc.format_position(r.redex)}, {lc.format_position(s.redex)} do not close")
            continue
        one = lc.LamDerivation(t, (r,)).then(sr)
        two = lc.LamDerivation(t, (s,)).then(rs)
        for third in steps:
            a = {x.redex for x in lc.residuals_after(third, one)}
            b = {x.redex for x in lc.residuals_after(third, two)}
            if a != b:
                out.append(f"residuals of {lc.format_position(third.redex)} depend on the closing order")
    return out


def well_defined_projection_laws(space: SpaceLattice, seed: int = 0) -> list[str]:
    """τ/ρ is the same derivation for every member ρ of a class."""
    rng = random.Random(seed)
    out = []
    members = class_members(space, MAX_MEMBERS)
    reps = space.representatives
    for c, paths in enumerate(members):
        derivs = [_lam_path(space, p) for p in paths[:8]]
        for k in rng.sample(range(len(space)), min(len(space), 6)):
            results = {lc.project(reps[k], d).positions for d in derivs}
            targets = {d.target for d in derivs}
            if len(targets) != 1:
                out.append(f"members of class {c} have different targets")
            if len(results) != 1:
                projected = [lc.project(reps[k], d) for d in derivs]
                if not all(lc.perm_equiv(projected[0], p) for p in projected[1:]):
                    out.append(f"projecting class {k} onto members of class {c} disagrees")
    return out


def _lam_path(space: SpaceLattice, path) -> lc.LamDerivation:
    return lc.LamDerivation.from_positions(space.root, [space.graph.edges[e].position for e in path])


# ---------------------------------------------------------------------------
# Simulation


def simulation_laws(space: SpaceLattice, w: RefinementWitness, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    out = []
    t = space.root
    reps = space.representatives
    n = len(space)
    # single-step simulation is a multistep landing on a refinement
    for r in lc.beta_redexes(t):
        d, w2 = sim_residual_derivation(lc.LamDerivation(t, (r,)), w)
        if not check_refines(w2.dist_term, r.target):
            out.append(f"simulation of {lc.format_position(r.redex)} loses refinement")
    # basic cube on source steps
    for r, s in itertools.product(lc.beta_redexes(t), repeat=2):
        ws = sim_transport(s, w)
        left = {_project_step_labels(x, sim_residual_step(s, w)) for x in sim_residual_step(r, w)}
        left = set().union(*left) if left else set()
        right = set()
        for r2 in lc.residuals(r, s):
            right |= {x.label for x in sim_residual_step(r2, ws)}
        if left != right:
            out.append(f"basic cube fails for {lc.format_position(r.redex)}, {lc.format_position(s.redex)}")
    # compatibility within each class
    members = class_members(space, MAX_MEMBERS)
    for c, paths in enumerate(members):
        sims = [sim_residual_derivation(_lam_path(space, p), w) for p in paths[:12]]
        labs = {d.labs for d, _ in sims}
        finals = {fw.dist_term for _, fw in sims}
        if len(labs) != 1 or len(finals) != 1:
            out.append(f"members of class {c} simulate differently")
    # cube lemma and algebraic simulation
    sim = [sim_residual_derivation(r, w) for r in reps]
    for i, j in _pairs(n, rng):
        rho, sigma = reps[i], reps[j]
        lhs = sim_residual_derivation(lc.project(rho, sigma), sim[j][1])[0]
        rhs = dc.dist_project(sim[i][0], sim[j][0])
        if not dc.dist_equiv(lhs, rhs):
            out.append(f"cube fails for classes {i}, {j}")
        if space.leq[i][j] and not dc.dist_prefix(sim[i][0], sim[j][0]):
            out.append(f"simulation does not preserve order at {i}, {j}")
        joined = sim_residual_derivation(reps[space.joins[i][j]], w)[0]
        if not dc.dist_equiv(joined, dc.dist_join(sim[i][0], sim[j][0])):
            out.append(f"simulation does not preserve the join of {i}, {j}")
    if len(sim[space.bottom][0]) != 0:
        out.append("simulation of the empty derivation is not empty")
    return out


def _project_step_labels(x: dc.DistStep, by: Iterable[dc.DistStep]) -> frozenset[int]:
    d = dc.DistDerivation(x.source, (x,))
    steps = tuple(by)
    if not steps:
        return frozenset(d.labels)
    sigma = dc.DistDerivation.from_labels(x.source, [s.label for s in steps])
    return frozenset(dc.dist_project(d, sigma).labels)


# ---------------------------------------------------------------------------
# Garbage and sieving


def garbage_laws(space: SpaceLattice, w: RefinementWitness, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    out = []
    reps = space.representatives
    n = len(space)
    transported = [sim_residual_derivation(r, w)[1] for r in reps]
    garbage = [is_garbage(r, w) for r in reps]
    for i, j in _pairs(n, rng, MAX_TRIPLES * 2):
        if garbage[i] and space.leq[j][i] and not garbage[j]:
            out.append(f"class {j} is a prefix of garbage class {i} but not garbage")
        rest = lc.project(reps[j], reps[i])
        composite = garbage[space.joins[i][j]]
        if composite != (garbage[i] and is_garbage(rest, transported[i])):
            out.append(f"composition law fails for garbage at {i}, {j}")
        if garbage[i] and not is_garbage(lc.project(reps[i], reps[j]), transported[j]):
            out.append(f"garbage class {i} does not project to garbage over {j}")
        if garbage[space.joins[i][j]] != (garbage[i] and garbage[j]):
            out.append(f"join law fails for garbage at {i}, {j}")
    return out


def sieve_laws(space: SpaceLattice, w: RefinementWitness, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    out = []
    reps = space.representatives
    n = len(space)
    sieved = [sieve(r, w) for r in reps]
    for i, r in enumerate(reps):
        s = sieved[i]
        if not lc.is_prefix(s, r):
            out.append(f"sieve of class {i} is not a prefix")
        ws = sim_residual_derivation(s, w)[1]
        if not is_garbage(lc.project(r, s), ws):
            out.append(f"remainder of the sieve of class {i} is not garbage")
        if (len(s) == 0) != is_garbage(r, w):
            out.append(f"sieve of class {i} is empty exactly when garbage fails")
        if not lc.perm_equiv(sieve(s, w), s):
            out.append(f"sieve of class {i} is not idempotent")
        coarse = coarse_steps(r, w)
        if coarse:
            r0 = coarse[0]
            for k in range(len(r) + 1):
                prefix = lc.LamDerivation(r.source, r.steps[:k])
                if len(lc.residuals_after(r0, prefix)) > 1:
                    out.append(f"leftmost coarse step of class {i} duplicates along a prefix")
    members = class_members(space, MAX_MEMBERS)
    for c, paths in enumerate(members):
        results = {sieve(_lam_path(space, p), w).positions for p in paths[:12]}
        if len(results) != 1:
            out.append(f"sieve is not invariant within class {c}")
    for i, j in _pairs(n, rng):
        rest = lc.project(reps[j], reps[i])
        wi = sim_residual_derivation(reps[i], w)[1]
        if is_garbage(rest, wi) and sieve(reps[i].then(rest), w).positions != sieved[i].positions:
            out.append(f"trailing garbage changes the sieve at {i}, {j}")
    out += garbage_creation_laws(space.root, w)
    return out


def garbage_creation_laws(t: lc.Term, w: RefinementWitness) -> list[str]:
    """Garbage steps only create or duplicate garbage steps."""
    out = []
    sources = lc.beta_redexes(t)
    for r in sources:
        if sim_residual_step(r, w):
            continue
        after = sim_transport(r, w)
        residual_count: dict[lc.Position, int] = {}
        copies: dict[lc.Position, int] = {}
        for other in sources:
            res = lc.residuals(other, r)
            for x in res:
                residual_count[x.redex] = residual_count.get(x.redex, 0) + 1
                copies[x.redex] = max(copies.get(x.redex, 0), len(res))
        for s in lc.beta_redexes(r.target):
            created = s.redex not in residual_count
            duplicated = copies.get(s.redex, 0) > 1
            if (created or duplicated) and sim_residual_step(s, after):
                kind = "creates" if created else "duplicates"
                out.append(f"garbage step at {lc.format_position(r.redex)} {kind} a simulated step")
    return out


def factorization_laws(space: SpaceLattice, w: RefinementWitness) -> list[str]:
    groth = build_grothendieck(space, w)
    report = check_factorization_iso(space, groth)
    return report.failures + check_grothendieck_laws(groth)


# ---------------------------------------------------------------------------
# Distributive calculus


def dist_step_laws(t: dc.DistTerm) -> list[str]:
    """Diamond closure and subject reduction on every step of every reachable term."""
    out = []
    graph = enumerate_graph_dist(t)
    for u in graph.nodes:
        judgment = dc.infer_type(u)
        steps = dc.dist_redexes(u)
        for r in steps:
            if not dc.same_judgment(dc.infer_type(r.target), judgment):
                out.append(f"step #{r.label} changes the typing judgment")
            if not dc.check_correct(r.target):
                out.append(f"step #{r.label} breaks correctness")
            if dc.count_lambdas(r.target) != dc.count_lambdas(u) - 1:
                out.append(f"step #{r.label} does not consume exactly one lambda")
        for r, s in itertools.product(steps, repeat=2):
            if r.label == s.label:
                continue
            (r2,) = dc.dist_residual(r, s) or (None,)
            (s2,) = dc.dist_residual(s, r) or (None,)
            if r2 is None or s2 is None or r2.target != s2.target:
                out.append(f"steps #{r.label}, #{s.label} do not close a diamond")
    return out


def dist_space_laws(space: SpaceLattice, distributive_limit: int = 64) -> list[str]:
    """Label sets represent the space faithfully: order, joins, meets, and belonging.

    Every pair of classes is checked; the cubic lattice axioms only up to 64 classes.
    """
    out = []
    reps = space.representatives
    n = len(space)
    labs = [r.labs for r in reps]
    if len(set(labs)) != n:
        out.append("distinct classes share a label set")
    for i, r in enumerate(reps):
        if len(r) != len(r.labs):
            out.append(f"class {i} repeats a label")
    out += check_partial_order(space.leq)
    for i, j in itertools.product(range(n), repeat=2):
        if space.leq[i][j] != (labs[i] <= labs[j]):
            out.append(f"order differs from inclusion at {i}, {j}")
        proj = dc.dist_project(reps[i], reps[j])
        if proj.labs != labs[i] - labs[j]:
            out.append(f"projection does not subtract labels at {i}, {j}")
        if (len(proj) == 0) != (labs[i] <= labs[j]):
            out.append(f"prefix by projection disagrees with inclusion at {i}, {j}")
        if labs[space.joins[i][j]] != labs[i] | labs[j]:
            out.append(f"join is not union at {i}, {j}")
        if labs[space.meets[i][j]] != labs[i] & labs[j]:
            out.append(f"meet is not intersection at {i}, {j}")
    out += check_joins(space.leq, space.joins) if n <= 64 else []
    out += check_meets(space.leq, space.meets) if n <= 64 else []
    if n <= distributive_limit:
        out += check_distributive(space)
    for i, r in enumerate(reps):
        for s in dc.dist_redexes(space.root):
            single = dc.DistDerivation(space.root, (s,))
            if dc.dist_prefix(single, r) != (s.label in labs[i]):
                out.append(f"belonging of #{s.label} in class {i} is not membership of its label")
    return out


def dist_space_oracle(space: SpaceLattice, limit: int = MAX_MEMBERS) -> list[str]:
    """Group paths by the projection definition of equivalence and compare with the classes.

    Class counts are compared only when every path of the graph was enumerated.
    """
    out = []
    graph = space.graph
    from .spaces import all_paths, derivation_of_path
    reps: list[dc.DistDerivation] = []
    group_class: list[int] = []
    seen = 0
    for path in all_paths(graph, limit + 1):
        seen += 1
        if seen > limit:
            break
        d = derivation_of_path(graph, path)
        c = space.class_of_path(path)
        for g, rep in enumerate(reps):
            if not dc.dist_project(d, rep).steps and not dc.dist_project(rep, d).steps:
                if group_class[g] != c:
                    out.append(f"{d} is equivalent to {rep} but lies in another class")
                break
        else:
            if c in group_class:
                out.append(f"{d} shares a class with an inequivalent path")
            reps.append(d)
            group_class.append(c)
    if seen <= limit and len(reps) != len(space):
        out.append(f"{len(reps)} classes by projection but {len(space)} by label sets")
    return out


# ---------------------------------------------------------------------------
# Driver


@dataclass(frozen=True)
class CheckResult:
    name: str
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _run(name: str, fn: Callable[[], list[str]]) -> CheckResult:
    try:
        return CheckResult(name, tuple(fn()))
    except Exception as e:  # a crash is a failed check, reported rather than raised
        return CheckResult(name, (f"{type(e).__name__}: {e}",))


def verify_instance(t: lc.Term, t_prime: dc.DistTerm | None = None, seed: int = 0,
                    fuel: int = 12) -> list[CheckResult]:
    """Run every applicable law on ``t`` and a refinement of it."""
    results = []
    space = build_space(enumerate_graph_lambda(t, fuel))
    results.append(_run("derivation space laws", lambda: lambda_space_laws(space, seed)))
    results.append(_run("orthogonality", lambda: orthogonality_laws(t)))
    results.append(_run("projection is well defined on classes",
                        lambda: well_defined_projection_laws(space, seed)))
    if t_prime is None:
        t_prime = refinement_for(t)
        if t_prime is None:
            results.append(CheckResult("refinement synthesis", ("no head normal form within fuel",)))
            return results
        results.append(_run("refinement synthesis", lambda: [] if is_strongly_sequential(t_prime)
                            and check_refines(t_prime, t) else ["synthesized term is not a valid refinement"]))
    w = check_refines(t_prime, t)
    if not w:
        results.append(CheckResult("refinement", (str(w),)))
        return results
    results.append(_run("typing and diamonds in the refinement", lambda: dist_step_laws(t_prime)))
    dspace = build_space(enumerate_graph_dist(t_prime))
    results.append(_run("label sets represent the refinement's space",
                        lambda: dist_space_laws(dspace)))
    results.append(_run("simulation laws", lambda: simulation_laws(space, w, seed)))
    results.append(_run("garbage laws", lambda: garbage_laws(space, w, seed)))
    results.append(_run("sieve laws", lambda: sieve_laws(space, w, seed)))
    results.append(_run("factorization isomorphism", lambda: factorization_laws(space, w)))
    return results

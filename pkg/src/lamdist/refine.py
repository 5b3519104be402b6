"""Refinement of pure terms by distributive terms.

A correct distributive term refines a pure term when it has the same shape,
except that every application may carry any number of copies of its argument,
each refining the original argument. Refinements exist exactly for the terms
that have a head normal form; :func:`refinement_for` builds one by typing the
head normal form and pulling the typing back along the reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping

from . import dist_core as dc
from . import lambda_core as lc
from .errors import RefinementError
from .lambda_core import Position, format_position

BASE_TYPE_NAME = "a"


@dataclass(frozen=True)
class RefinementWitness:
    """Evidence that ``dist_term`` refines ``lam_term``.

    ``correspondence`` sends every position of the distributive term to the
    position of the pure term it refines. Witnesses compare and hash by their
    two terms; the correspondence is determined by them.
    """

    dist_term: dc.DistTerm
    lam_term: lc.Term
    correspondence: Mapping[Position, Position] = field(compare=False, repr=False)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class RefinementFailure:
    position: Position
    message: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"no refinement at {format_position(self.position)}: {self.message}"


def _match(tp: dc.DistTerm, t: lc.Term, pp: Position, lp: Position, out: dict) -> RefinementFailure | None:
    out[pp] = lp
    if isinstance(tp, dc.DVar):
        if isinstance(t, lc.Var) and t.name == tp.name:
            return None
        return RefinementFailure(pp, f"free variable {tp.name} does not match")
    if isinstance(tp, dc.DBVar):
        if isinstance(t, lc.BVar) and t.index == tp.index:
            return None
        return RefinementFailure(pp, "bound variable does not match")
    if isinstance(tp, dc.DLam):
        if not isinstance(t, lc.Lam):
            return RefinementFailure(pp, "abstraction does not match")
        return _match(tp.body, t.body, pp + (0,), lp + (0,), out)
    if not isinstance(t, lc.App):
        return RefinementFailure(pp, "application does not match")
    fail = _match(tp.fun, t.fun, pp + (0,), lp + (0,), out)
    if fail is not None:
        return fail
    for i, a in enumerate(tp.args, 1):
        fail = _match(a, t.arg, pp + (i,), lp + (1,), out)
        if fail is not None:
            return fail
    return None


@lru_cache(maxsize=1 << 14)
def check_refines(t_prime: dc.DistTerm, t: lc.Term) -> RefinementWitness | RefinementFailure:
    """Decide ``t_prime ⋉ t``; the result is truthy exactly when it is a witness."""
    report = dc.check_correct(t_prime)
    if not report:
        return RefinementFailure(report.position or (), f"not a correct term: {report}")
    corr: dict[Position, Position] = {}
    fail = _match(t_prime, t, (), (), corr)
    if fail is not None:
        return fail
    return RefinementWitness(t_prime, t, corr)


def witness(t_prime: dc.DistTerm, t: lc.Term) -> RefinementWitness:
    """Like :func:`check_refines`, but raise when there is no refinement."""
    w = check_refines(t_prime, t)
    if not w:
        raise RefinementError(str(w))
    return w


# ---------------------------------------------------------------------------
# Strong sequentiality


def _annotate(t: dc.DistTerm, depth: int, pos: Position, out: list) -> frozenset[int]:
    """Record (position, depth, bound levels used, external label) for each subterm.

    Levels count binders from the root; the returned set holds the levels of
    the binders above ``t`` that ``t`` mentions.
    """
    if isinstance(t, dc.DBVar):
        levels = frozenset({depth - 1 - t.index})
    elif isinstance(t, dc.DVar):
        levels = frozenset()
    elif isinstance(t, dc.DLam):
        levels = _annotate(t.body, depth + 1, pos + (0,), out) - {depth}
    else:
        levels = _annotate(t.fun, depth, pos + (0,), out)
        for i, a in enumerate(t.args, 1):
            levels = levels | _annotate(a, depth, pos + (i,), out)
    out.append((pos, depth, max(levels, default=-1), dc.type_of(t).external_label))
    return levels


def _disjoint(p: Position, q: Position) -> bool:
    n = min(len(p), len(q))
    return p[:n] != q[:n]


def sequentiality_violation(t_prime: dc.DistTerm) -> tuple[Position, Position, Position] | None:
    """A subterm and two disjoint free subterms of it sharing an external label."""
    info: list = []
    _annotate(t_prime, 0, (), info)
    for s_pos, s_depth, _, _ in info:
        by_label: dict[int, list[Position]] = {}
        for u_pos, _, u_top, lab in info:
            if u_pos[:len(s_pos)] != s_pos or u_top >= s_depth:
                continue
            for other in by_label.get(lab, ()):
                if _disjoint(other, u_pos):
                    return s_pos, other, u_pos
            by_label.setdefault(lab, []).append(u_pos)
    return None


def is_strongly_sequential(t_prime: dc.DistTerm) -> bool:
    return bool(dc.check_correct(t_prime)) and sequentiality_violation(t_prime) is None


# ---------------------------------------------------------------------------
# Construction


def all_labels(t: dc.DistTerm) -> set[int]:
    """Every label in ``t``, on lambdas and inside types."""
    out: set[int] = set()

    def of_type(ty: dc.DistType):
        out.add(ty.label)
        if isinstance(ty, dc.Arrow):
            for d in ty.domain:
                of_type(d)
            of_type(ty.codomain)

    def walk(s: dc.DistTerm):
        if isinstance(s, (dc.DVar, dc.DBVar)):
            of_type(s.type)
        elif isinstance(s, dc.DLam):
            out.add(s.label)
            walk(s.body)
        else:
            walk(s.fun)
            for a in s.args:
                walk(a)

    walk(t)
    return out


def fresh_labels_after(t: dc.DistTerm) -> Iterator[int]:
    return itertools.count(max(all_labels(t), default=0) + 1)


def canonical_hnf_refinement(t: lc.Term, fresh: Iterator[int] | None = None) -> dc.DistTerm:
    """The refinement of a head normal form that uses every argument zero times.

    For ``λx1..xn. y t1..tm`` this is
    ``λ^l1 x1..λ^ln xn. y^([] ->^k1 .. [] ->^km a^k)[]..[]`` with fresh labels
    drawn in the order l1..ln, k1..km, k.
    """
    if not lc.is_head_normal_form(t):
        raise RefinementError(f"{lc.show(t)} is not a head normal form")
    fresh = fresh if fresh is not None else itertools.count(1)
    binders = []
    while isinstance(t, lc.Lam):
        binders.append((next(fresh), t.hint))
        t = t.body
    m = 0
    head = t
    while isinstance(head, lc.App):
        head = head.fun
        m += 1
    arrow_labels = [next(fresh) for _ in range(m)]
    ty: dc.DistType = dc.Base(BASE_TYPE_NAME, next(fresh))
    for lab in reversed(arrow_labels):
        ty = dc.Arrow((), lab, ty)
    body: dc.DistTerm = (dc.DVar(head.name, ty) if isinstance(head, lc.Var)
                         else dc.DBVar(head.index, ty))
    for _ in range(m):
        body = dc.DApp(body, ())
    for lab, hint in reversed(binders):
        body = dc.DLam(lab, body, hint)
    return body


def _unshift(t: dc.DistTerm, d: int, cutoff: int = 0) -> dc.DistTerm:
    if d == 0:
        return t
    if isinstance(t, dc.DBVar):
        if t.index < cutoff:
            return t
        if t.index - cutoff < d:
            raise RefinementError("argument copy mentions a variable bound inside the redex body")
        return dc.DBVar(t.index - d, t.type)
    if isinstance(t, dc.DVar):
        return t
    if isinstance(t, dc.DLam):
        return dc.DLam(t.label, _unshift(t.body, d, cutoff + 1), t.hint)
    return dc.DApp(_unshift(t.fun, d, cutoff), tuple(_unshift(a, d, cutoff) for a in t.args))


def _decompose(u: lc.Term, sp: dc.DistTerm, d: int, args: list) -> dc.DistTerm:
    """Split ``sp``, which refines ``u`` with the bound variable instantiated, into body and arguments."""
    if isinstance(u, lc.BVar) and u.index == d:
        args.append(_unshift(sp, d))
        return dc.DBVar(d, dc.type_of(sp))
    if isinstance(u, lc.BVar):
        expected = u.index - 1 if u.index > d else u.index
        if not (isinstance(sp, dc.DBVar) and sp.index == expected):
            raise RefinementError("term does not refine the contractum")
        return dc.DBVar(u.index, sp.type)
    if isinstance(u, lc.Var):
        if not (isinstance(sp, dc.DVar) and sp.name == u.name):
            raise RefinementError("term does not refine the contractum")
        return sp
    if isinstance(u, lc.Lam):
        if not isinstance(sp, dc.DLam):
            raise RefinementError("term does not refine the contractum")
        return dc.DLam(sp.label, _decompose(u.body, sp.body, d + 1, args), sp.hint)
    if not isinstance(sp, dc.DApp):
        raise RefinementError("term does not refine the contractum")
    fun = _decompose(u.fun, sp.fun, d, args)
    return dc.DApp(fun, tuple(_decompose(u.arg, a, d, args) for a in sp.args))


def _pull(t: lc.Term, pos: Position, sp: dc.DistTerm, fresh: Iterator[int]) -> dc.DistTerm:
    if not pos:
        redex = t
        args: list[dc.DistTerm] = []
        body = _decompose(redex.fun.body, sp, 0, args)
        return dc.DApp(dc.DLam(next(fresh), body, redex.fun.hint), tuple(args))
    d, rest = pos[0], pos[1:]
    if isinstance(t, lc.Lam):
        if not isinstance(sp, dc.DLam):
            raise RefinementError("term does not refine the target")
        return dc.DLam(sp.label, _pull(t.body, rest, sp.body, fresh), sp.hint)
    if not isinstance(sp, dc.DApp):
        raise RefinementError("term does not refine the target")
    if d == 0:
        return dc.DApp(_pull(t.fun, rest, sp.fun, fresh), sp.args)
    return dc.DApp(sp.fun, tuple(_pull(t.arg, rest, a, fresh) for a in sp.args))


def pullback_refinement(step: lc.LamStep, s_prime: dc.DistTerm,
                        fresh: Iterator[int] | None = None,
                        check: bool = True) -> dc.DistTerm:
    """A strongly sequential refinement of the source of ``step`` reducing to ``s_prime``.

    ``s_prime`` must be a strongly sequential refinement of the target. Every
    copy of the redex inside ``s_prime`` is rebuilt with a fresh lambda label,
    so that contracting those labels leads back to ``s_prime``.
    """
    if check:
        if not check_refines(s_prime, step.target):
            raise RefinementError(f"{dc.show(s_prime)} does not refine {lc.show(step.target)}")
        if not is_strongly_sequential(s_prime):
            raise RefinementError(f"{dc.show(s_prime)} is not strongly sequential")
    fresh = fresh if fresh is not None else fresh_labels_after(s_prime)
    return _pull(step.source, step.redex, s_prime, fresh)


@dataclass(frozen=True)
class RefinementReport:
    """Outcome of :func:`synthesize_refinement`.

    ``status`` is ``"ok"``, ``"fuel_exhausted"`` (no head normal form within
    the fuel) or ``"pullback_failed"``.
    """

    term: dc.DistTerm | None
    status: str
    head_derivation: lc.LamDerivation | None = None
    message: str = ""

    def __bool__(self):
        return self.term is not None


DEFAULT_FUEL = 200


def synthesize_refinement(t: lc.Term, fuel: int = DEFAULT_FUEL,
                          fresh: Iterator[int] | None = None) -> RefinementReport:
    fresh = fresh if fresh is not None else itertools.count(1)
    rho = lc.head_normalize(t, fuel)
    if rho is None:
        return RefinementReport(None, "fuel_exhausted",
                                message=f"no head normal form within {fuel} steps")
    current = canonical_hnf_refinement(rho.target, fresh)
    try:
        for step in reversed(rho.steps):
            current = pullback_refinement(step, current, fresh, check=False)
    except RefinementError as e:
        return RefinementReport(None, "pullback_failed", rho, str(e))
    return RefinementReport(current, "ok", rho)


def refinement_for(t: lc.Term, fuel: int = DEFAULT_FUEL,
                   fresh: Iterator[int] | None = None) -> dc.DistTerm | None:
    """A refinement of ``t``, or None when no head normal form is found within ``fuel``."""
    return synthesize_refinement(t, fuel, fresh).term

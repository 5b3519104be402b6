"""Simulating pure reduction inside a refinement.

A pure step ``R`` is simulated in a refinement ``t'`` by contracting every
copy of its redex that ``t'`` keeps. Those copies are the simulation residuals
``R/t'``; contracting all of them yields the transported refinement ``t'/R``.
"""

from __future__ import annotations

from functools import lru_cache

from . import dist_core as dc
from . import lambda_core as lc
from .errors import NotCoinitialError, RefinementError
from .refine import RefinementWitness, check_refines


def _require_source(step_source: lc.Term, w: RefinementWitness):
    if step_source != w.lam_term:
        raise NotCoinitialError("the witness does not refine the source of the step")


def sim_residual_step(step: lc.LamStep, w: RefinementWitness) -> tuple[dc.DistStep, ...]:
    """The distributive steps of ``w.dist_term`` simulating ``step``, by ascending label."""
    _require_source(step.source, w)
    return _residual_steps(w, step.redex)


@lru_cache(maxsize=1 << 15)
def _residual_steps(w: RefinementWitness, redex: lc.Position) -> tuple[dc.DistStep, ...]:
    out = [dc.DistStep(w.dist_term, p) for p, q in w.correspondence.items() if q == redex]
    return tuple(sorted(out, key=lambda s: s.label))


@lru_cache(maxsize=1 << 15)
def _transport(w: RefinementWitness, redex: lc.Position) -> tuple[tuple[int, ...], RefinementWitness]:
    steps = _residual_steps(w, redex)
    labels = tuple(s.label for s in steps)
    d = dc.DistDerivation.from_labels(w.dist_term, labels)
    target = lc.contract(w.lam_term, redex)
    new = check_refines(d.target, target)
    if not new:
        raise RefinementError(f"simulation did not preserve refinement: {new}")
    return labels, new


def sim_transport(step: lc.LamStep, w: RefinementWitness) -> RefinementWitness:
    """The witness for ``t'/R`` refining the target of ``R``."""
    _require_source(step.source, w)
    return _transport(w, step.redex)[1]


def sim_residual_derivation(rho: lc.LamDerivation, w: RefinementWitness
                            ) -> tuple[dc.DistDerivation, RefinementWitness]:
    """``rho/t'`` together with the witness for ``t'/rho``."""
    _require_source(rho.source, w)
    labels: list[int] = []
    cur = w
    for p in rho.positions:
        step_labels, cur = _transport(cur, p)
        labels.extend(step_labels)
    return dc.DistDerivation.from_labels(w.dist_term, labels), cur


def transport_along(rho: lc.LamDerivation, w: RefinementWitness) -> RefinementWitness:
    return sim_residual_derivation(rho, w)[1]

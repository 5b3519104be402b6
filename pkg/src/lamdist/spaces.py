"""Finite reduction graphs and the lattices of derivations they carry.

The derivation space of a term is the set of derivations from it modulo
permutation equivalence. Classes are discovered by walking the reduction
graph: extending any member of a class by a step gives a member of a single
class, so one transition per (class, outgoing edge) suffices. Classes are
visited in shortlex order of their representatives, so each representative is
the least member of its class, comparing steps by redex position.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

from . import dist_core as dc
from . import lambda_core as lc
from .errors import InvalidStepError, NotCoinitialError, SpaceTooLargeError
from .lambda_core import Position

DEFAULT_LENGTH_CAP = 12
DEFAULT_NODE_CAP = 10_000

AnyTerm = Union[lc.Term, dc.DistTerm]
AnyDerivation = Union[lc.LamDerivation, dc.DistDerivation]


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    position: Position
    label: int | None = None


@dataclass
class ReductionGraph:
    """Terms reachable from ``root``; node 0 is the root."""

    calculus: str
    nodes: list
    edges: list[Edge]
    length_cap: int = DEFAULT_LENGTH_CAP
    node_cap: int = DEFAULT_NODE_CAP
    _out: list[list[int]] = field(init=False, repr=False)
    _by_position: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._out = [[] for _ in self.nodes]
        self._by_position = {}
        for i, e in enumerate(self.edges):
            self._out[e.src].append(i)
            self._by_position[(e.src, e.position)] = i
        for out in self._out:
            out.sort(key=lambda i: self.edges[i].position)

    @property
    def root(self):
        return self.nodes[0]

    def out_edges(self, node: int) -> list[int]:
        return self._out[node]

    def edge_at(self, node: int, position: Position) -> int:
        try:
            return self._by_position[(node, tuple(position))]
        except KeyError:
            raise InvalidStepError("step is not an edge of the reduction graph") from None

    def is_acyclic(self) -> bool:
        indegree = [0] * len(self.nodes)
        for e in self.edges:
            indegree[e.dst] += 1
        ready = [i for i, d in enumerate(indegree) if d == 0]
        seen = 0
        while ready:
            n = ready.pop()
            seen += 1
            for i in self._out[n]:
                d = self.edges[i].dst
                indegree[d] -= 1
                if indegree[d] == 0:
                    ready.append(d)
        return seen == len(self.nodes)

    def sinks(self) -> list[int]:
        return [i for i, out in enumerate(self._out) if not out]


def _enumerate(root, successors: Callable, calculus: str, depth_cap: int | None,
               node_cap: int) -> ReductionGraph:
    nodes = [root]
    index = {root: 0}
    depth = [0]
    edges = []
    queue = deque([0])
    while queue:
        n = queue.popleft()
        for position, label, target in successors(nodes[n]):
            if target not in index:
                if depth_cap is not None and depth[n] + 1 > depth_cap:
                    raise SpaceTooLargeError(
                        f"reduction graph deeper than {depth_cap} steps")
                if len(nodes) >= node_cap:
                    raise SpaceTooLargeError(f"reduction graph has more than {node_cap} nodes")
                index[target] = len(nodes)
                nodes.append(target)
                depth.append(depth[n] + 1)
                queue.append(index[target])
            edges.append(Edge(n, index[target], position, label))
    return ReductionGraph(calculus, nodes, edges,
                          depth_cap if depth_cap is not None else len(nodes), node_cap)


def enumerate_graph_lambda(t: lc.Term, fuel: int = DEFAULT_LENGTH_CAP,
                           node_cap: int = DEFAULT_NODE_CAP) -> ReductionGraph:
    """Breadth-first closure of ``t`` under beta steps.

    ``fuel`` bounds the distance of any node from ``t``; exceeding it or
    ``node_cap`` raises :class:`SpaceTooLargeError`.
    """
    def successors(u):
        return [(p, None, lc.contract(u, p)) for p in lc.redex_positions(u)]
    return _enumerate(t, successors, "lambda", fuel, node_cap)


def enumerate_graph_dist(t: dc.DistTerm, node_cap: int = DEFAULT_NODE_CAP) -> ReductionGraph:
    """The complete reduction graph of a correct term; it is always finite."""
    def successors(u):
        return [(s.redex, s.label, s.target) for s in dc.dist_redexes(u)]
    return _enumerate(t, successors, "dist", None, node_cap)


# ---------------------------------------------------------------------------
# Spaces


@dataclass
class SpaceLattice:
    """Permutation-equivalence classes of derivations from the graph root.

    Class 0 is the class of the empty derivation. ``leq`` and ``joins`` are
    indexed by class; ``meets``, ``labs`` and ``top`` are only filled for the
    distributive calculus.
    """

    graph: ReductionGraph
    paths: list[tuple[int, ...]]
    transitions: dict[tuple[int, int], int]
    leq: list[list[bool]] = field(default_factory=list)
    joins: list[list[int]] = field(default_factory=list)
    meets: list[list[int]] | None = None
    labs: list[frozenset[int]] | None = None
    top: int | None = None

    @property
    def calculus(self) -> str:
        return self.graph.calculus

    @property
    def root(self):
        return self.graph.root

    @property
    def bottom(self) -> int:
        return 0

    def __len__(self):
        return len(self.paths)

    def node_of(self, cls: int) -> int:
        path = self.paths[cls]
        return self.graph.edges[path[-1]].dst if path else 0

    def representative(self, cls: int) -> AnyDerivation:
        return derivation_of_path(self.graph, self.paths[cls])

    @property
    def representatives(self) -> list[AnyDerivation]:
        return [self.representative(i) for i in range(len(self))]

    def class_of_path(self, path: Sequence[int], start: int = 0) -> int:
        cls = start
        for e in path:
            cls = self.transitions[(cls, e)]
        return cls

    def class_of(self, rho: AnyDerivation, start: int = 0) -> int:
        """The class of ``rho``, which must start at the target of class ``start``."""
        node = self.node_of(start)
        if rho.source != self.graph.nodes[node]:
            raise NotCoinitialError("derivation does not start at the expected term")
        cls = start
        for s in rho.steps:
            e = self.graph.edge_at(node, s.redex)
            cls = self.transitions[(cls, e)]
            node = self.graph.edges[e].dst
        return cls

    def join_all(self, classes) -> int:
        out = self.bottom
        for c in classes:
            out = self.joins[out][c]
        return out

    def hasse_edges(self) -> list[tuple[int, int]]:
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and not any(
                        k not in (i, j) and self.leq[i][k] and self.leq[k][j] for k in range(n)):
                    out.append((i, j))
        return out


def derivation_of_path(graph: ReductionGraph, path: Sequence[int]) -> AnyDerivation:
    positions = [graph.edges[e].position for e in path]
    if graph.calculus == "lambda":
        return lc.LamDerivation.from_positions(graph.root, positions)
    steps = []
    cur = graph.root
    for e in path:
        s = dc.DistStep(cur, graph.edges[e].position, graph.edges[e].label)
        steps.append(s)
        cur = s.target
    return dc.DistDerivation(graph.root, tuple(steps))


def _path_positions(graph: ReductionGraph, path: Sequence[int]) -> tuple[Position, ...]:
    return tuple(graph.edges[e].position for e in path)


def _discover_classes(graph: ReductionGraph, same_class: Callable, class_cap: int, length_cap: int | None):
    """Shortlex discovery of classes; ``same_class(path, cls_path)`` decides equivalence."""
    paths: list[tuple[int, ...]] = [()]
    node_of = [0]
    by_node: dict[int, list[int]] = {0: [0]}
    transitions: dict[tuple[int, int], int] = {}
    heap = [((0, ()), 0)]
    while heap:
        _, c = heapq.heappop(heap)
        for e in graph.out_edges(node_of[c]):
            edge = graph.edges[e]
            cand = paths[c] + (e,)
            found = None
            for j in by_node.get(edge.dst, ()):
                if same_class(cand, paths[j]):
                    found = j
                    break
            if found is None:
                if length_cap is not None and len(cand) > length_cap:
                    raise SpaceTooLargeError(f"derivation space has derivations longer than {length_cap}")
                if len(paths) >= class_cap:
                    raise SpaceTooLargeError(f"derivation space has more than {class_cap} classes")
                found = len(paths)
                paths.append(cand)
                node_of.append(edge.dst)
                by_node.setdefault(edge.dst, []).append(found)
                key = (len(cand), _path_positions(graph, cand))
                heapq.heappush(heap, (key, found))
            transitions[(c, e)] = found
    return paths, transitions


def build_space(graph: ReductionGraph, class_cap: int | None = None,
                length_cap: int | None = None) -> SpaceLattice:
    """Quotient the derivations of ``graph`` by permutation equivalence.

    Pure classes are compared by mutual empty projection; distributive classes
    by their label sets. A pure space is finite exactly when its graph is
    finite and acyclic.
    """
    class_cap = class_cap or graph.node_cap
    if graph.calculus == "lambda":
        if not graph.is_acyclic():
            raise SpaceTooLargeError("reduction graph has a cycle, so the derivation space is infinite")
        length_cap = length_cap if length_cap is not None else graph.length_cap
        root = graph.root

        def same(p, q):
            a, b = _path_positions(graph, p), _path_positions(graph, q)
            return (not lc._project_positions(root, a, b)
                    and not lc._project_positions(root, b, a))
        paths, transitions = _discover_classes(graph, same, class_cap, length_cap)
        space = SpaceLattice(graph, paths, transitions)
        _fill_lambda(space)
    else:
        labels = {e: graph.edges[e].label for e in range(len(graph.edges))}

        def same(p, q):
            return {labels[e] for e in p} == {labels[e] for e in q}
        paths, transitions = _discover_classes(graph, same, class_cap, None)
        space = SpaceLattice(graph, paths, transitions)
        _fill_dist(space)
    return space


def _fill_lambda(space: SpaceLattice):
    n = len(space)
    reps = space.representatives
    root = space.root
    pos = [r.positions for r in reps]
    space.leq = [[not lc._project_positions(root, pos[i], pos[j]) for j in range(n)] for i in range(n)]
    space.joins = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rest = lc._project_positions(root, pos[j], pos[i])
            space.joins[i][j] = space.class_of(
                lc.LamDerivation.from_positions(reps[i].target, rest), start=i)


def _fill_dist(space: SpaceLattice):
    n = len(space)
    reps = space.representatives
    space.labs = [r.labs for r in reps]
    space.leq = [[dc.dist_prefix(reps[i], reps[j]) for j in range(n)] for i in range(n)]
    space.joins = [[space.class_of(dc.dist_join(reps[i], reps[j])) for j in range(n)] for i in range(n)]
    space.meets = [[space.class_of(dc.dist_meet(reps[i], reps[j])) for j in range(n)] for i in range(n)]
    space.top = space.join_all(range(n))


def space_of(t: AnyTerm, fuel: int = DEFAULT_LENGTH_CAP) -> SpaceLattice:
    if isinstance(t, dc.DistTerm):
        return build_space(enumerate_graph_dist(t))
    return build_space(enumerate_graph_lambda(t, fuel))


def all_paths(graph: ReductionGraph, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every path from the root of an acyclic graph, shortest first within each branch."""
    stack: list[tuple[int, tuple[int, ...]]] = [(0, ())]
    produced = 0
    while stack:
        node, path = stack.pop()
        yield path
        produced += 1
        if limit is not None and produced >= limit:
            return
        for e in reversed(graph.out_edges(node)):
            stack.append((graph.edges[e].dst, path + (e,)))


def class_members(space: SpaceLattice, limit: int | None = None) -> list[list[tuple[int, ...]]]:
    """Paths of the graph grouped by class, using the transition table."""
    out: list[list[tuple[int, ...]]] = [[] for _ in range(len(space))]
    for path in all_paths(space.graph, limit):
        out[space.class_of_path(path)].append(path)
    return out


# ---------------------------------------------------------------------------
# Order-theoretic checks


def check_partial_order(leq: list[list[bool]]) -> list[str]:
    n = len(leq)
    problems = []
    for i in range(n):
        if not leq[i][i]:
            problems.append(f"not reflexive at {i}")
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                problems.append(f"not antisymmetric at {i}, {j}")
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    problems.append(f"not transitive at {i}, {j}, {k}")
    return problems


def check_joins(leq: list[list[bool]], joins: list[list[int]], elements=None) -> list[str]:
    """``joins[i][j]`` is the least upper bound of ``i`` and ``j`` among ``elements``."""
    elements = list(range(len(leq))) if elements is None else list(elements)
    problems = []
    for i, j in itertools.product(elements, repeat=2):
        k = joins[i][j]
        if not (leq[i][k] and leq[j][k]):
            problems.append(f"join of {i}, {j} is not an upper bound")
        for m in elements:
            if leq[i][m] and leq[j][m] and not leq[k][m]:
                problems.append(f"join of {i}, {j} is not least (witness {m})")
    return problems


def check_meets(leq: list[list[bool]], meets: list[list[int]], elements=None) -> list[str]:
    flipped = [[leq[j][i] for j in range(len(leq))] for i in range(len(leq))]
    return [p.replace("join", "meet").replace("upper", "lower").replace("least", "greatest")
            for p in check_joins(flipped, meets, elements)]


def check_distributive(space: SpaceLattice) -> list[str]:
    if space.meets is None:
        raise ValueError("distributivity needs meets")
    n = len(space)
    J, M = space.joins, space.meets
    return [f"meet does not distribute at {a}, {b}, {c}"
            for a, b, c in itertools.product(range(n), repeat=3)
            if M[a][J[b][c]] != J[M[a][b]][M[a][c]]]

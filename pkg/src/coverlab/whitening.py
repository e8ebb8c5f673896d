"""The whitening fixed point and frozen-set checks.

Whitening starts from a coloring, then repeatedly sets to 0 any still
colored vertex that lacks support: a vertex is *stable* when it is
colored and, for every other color j, at least two of its neighbors
(counted with edge multiplicity) hold j. Loops feed a vertex's own
color only, so they never help stability. The fixed point is reached
when every colored vertex is stable; it does not depend on the order
in which unstable vertices are cleared.

``whiten`` is the incremental worklist implementation; the quadratic
``whiten_reference`` re-scans from scratch and takes an explicit
randomized clearing order, which makes it the differential test
partner for order-independence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from coverlab.colorings import Coloring, _proper_assignments
from coverlab.errors import DomainError, ResourceBudgetError
from coverlab.graphs import MultiGraph
from coverlab.rng import generator


@dataclass(frozen=True)
class PartialColoring:
    """Assignment of {0} union {1..k}; 0 marks an uncolored vertex."""

    values: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be positive, got {self.k}")
        object.__setattr__(self, "values", tuple(int(c) for c in self.values))
        for v, c in enumerate(self.values, start=1):
            if not 0 <= c <= self.k:
                raise DomainError(f"vertex {v} has value {c}, outside 0..{self.k}")

    @classmethod
    def from_coloring(cls, coloring: Coloring) -> "PartialColoring":
        return cls(coloring.values, coloring.k)

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise DomainError(f"vertex {v} out of range 1..{self.n}")
        return self.values[v - 1]

    def zeros(self) -> frozenset[int]:
        return frozenset(v for v, c in enumerate(self.values, start=1) if c == 0)

    @property
    def zero_count(self) -> int:
        return sum(1 for c in self.values if c == 0)


def _neighbor_counts(graph: MultiGraph, values: tuple[int, ...], v: int, k: int) -> list[int]:
    cnt = [0] * (k + 1)
    for u in graph.adjacency[v]:
        cnt[values[u - 1]] += 1
    return cnt


def is_stable(graph: MultiGraph, assignment: PartialColoring, v: int) -> bool:
    """Stability of one vertex under the given partial assignment.

    An uncolored vertex is never stable. A colored vertex is stable
    when every *other* color appears on at least two of its neighbors,
    multiplicities included.
    """
    if assignment.n != graph.n:
        raise DomainError(f"assignment covers {assignment.n} vertices, graph has {graph.n}")
    zv = assignment.value(v)
    if zv == 0:
        return False
    cnt = _neighbor_counts(graph, assignment.values, v, assignment.k)
    return all(cnt[j] >= 2 for j in range(1, assignment.k + 1) if j != zv)


def _as_partial(start: Coloring | PartialColoring, initial_zeros: Iterable[int]) -> PartialColoring:
    if isinstance(start, Coloring):
        start = PartialColoring.from_coloring(start)
    zeros = set(initial_zeros)
    if not zeros:
        return start
    for v in zeros:
        if not 1 <= v <= start.n:
            raise DomainError(f"initial zero {v} out of range 1..{start.n}")
    vals = tuple(0 if v in zeros else c for v, c in enumerate(start.values, start=1))
    return PartialColoring(vals, start.k)


def whiten(
    graph: MultiGraph,
    start: Coloring | PartialColoring,
    initial_zeros: Iterable[int] = (),
) -> PartialColoring:
    """Run whitening to its fixed point (worklist implementation).

    ``initial_zeros`` clears extra vertices before the iteration
    starts; the damage-monotonicity tests rely on this hook.
    """
    state = _as_partial(start, initial_zeros)
    if state.n != graph.n:
        raise DomainError(f"assignment covers {state.n} vertices, graph has {graph.n}")
    k = state.k
    vals = list(state.values)
    cnt = [[0] * (k + 1) for _ in range(graph.n + 1)]
    for v in graph.vertices():
        for u in graph.adjacency[v]:
            cnt[v][vals[u - 1]] += 1

    def unstable(v: int) -> bool:
        cv = vals[v - 1]
        return cv != 0 and any(cnt[v][j] < 2 for j in range(1, k + 1) if j != cv)

    queue = deque(v for v in graph.vertices() if unstable(v))
    queued = set(queue)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        if not unstable(v):
            continue
        cv = vals[v - 1]
        vals[v - 1] = 0
        for u in graph.adjacency[v]:
            cnt[u][cv] -= 1
            cnt[u][0] += 1
            if u not in queued and vals[u - 1] not in (0, cv) and cnt[u][cv] < 2:
                queue.append(u)
                queued.add(u)
    return PartialColoring(tuple(vals), k)


def whiten_reference(
    graph: MultiGraph,
    start: Coloring | PartialColoring,
    seed: Optional[int] = None,
    initial_zeros: Iterable[int] = (),
) -> PartialColoring:
    """Whitening by repeated full scans, clearing one vertex at a time.

    With a seed, each step clears a uniformly random unstable vertex;
    without one, the lowest-numbered. Quadratic, kept as the oracle
    for differential tests against ``whiten``.
    """
    state = _as_partial(start, initial_zeros)
    if state.n != graph.n:
        raise DomainError(f"assignment covers {state.n} vertices, graph has {graph.n}")
    rng = generator(seed) if seed is not None else None
    vals = list(state.values)
    k = state.k
    while True:
        bad = []
        for v in graph.vertices():
            cv = vals[v - 1]
            if cv == 0:
                continue
            cnt = [0] * (k + 1)
            for u in graph.adjacency[v]:
                cnt[vals[u - 1]] += 1
            if any(cnt[j] < 2 for j in range(1, k + 1) if j != cv):
                bad.append(v)
        if not bad:
            return PartialColoring(tuple(vals), k)
        pick = bad[int(rng.integers(len(bad)))] if rng is not None else bad[0]
        vals[pick - 1] = 0


def is_delta_frozen(
    graph: MultiGraph,
    coloring: Coloring,
    subset: Iterable[int],
    delta: float,
    budget: Optional[int] = 10**6,
) -> bool:
    """Decide by enumeration whether a coloring is delta-frozen on a set.

    The property: every proper coloring of the graph either agrees
    with ``coloring`` on all of ``subset`` or differs from it on at
    least delta*n vertices of ``subset``. Enumeration stops with a
    ``ResourceBudgetError`` (verdict unknown) once ``budget`` proper
    colorings have been examined.
    """
    fset = frozenset(subset)
    for v in fset:
        if not 1 <= v <= graph.n:
            raise DomainError(f"subset member {v} out of range 1..{graph.n}")
    if delta < 0:
        raise DomainError(f"delta must be nonnegative, got {delta}")
    need = delta * graph.n
    base = coloring.values
    examined = 0
    for vals in _proper_assignments(graph, coloring.k, None):
        examined += 1
        if budget is not None and examined > budget:
            raise ResourceBudgetError(
                f"freeze check budget of {budget} colorings exhausted",
                partial={"examined": examined - 1},
            )
        diff = sum(1 for v in fset if vals[v - 1] != base[v - 1])
        if 0 < diff < need:
            return False
    return True


@dataclass(frozen=True)
class FreezeSample:
    """Verdict of the sampling-based freeze check.

    Sampling can only ever falsify; the positive outcome is reported
    as "not-falsified", never as a proof.
    """

    verdict: str  # "violated" or "not-falsified"
    witness: Optional[Coloring]
    trials: int


def delta_frozen_sample(
    graph: MultiGraph,
    coloring: Coloring,
    subset: Iterable[int],
    delta: float,
    trials: int,
    seed: int,
) -> FreezeSample:
    """Search for a freeze violation among randomly sampled colorings.

    Each trial runs a backtracking search with seeded random color
    order and keeps the first proper coloring it reaches.
    """
    fset = frozenset(subset)
    for v in fset:
        if not 1 <= v <= graph.n:
            raise DomainError(f"subset member {v} out of range 1..{graph.n}")
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    need = delta * graph.n
    base = coloring.values
    k = coloring.k
    rng = generator(seed)
    for t in range(trials):
        vals = _random_proper(graph, k, rng)
        if vals is None:
            continue
        diff = sum(1 for v in fset if vals[v - 1] != base[v - 1])
        if 0 < diff < need:
            return FreezeSample("violated", Coloring(vals, k), t + 1)
    return FreezeSample("not-falsified", None, trials)


def _random_proper(graph: MultiGraph, k: int, rng) -> Optional[tuple[int, ...]]:
    """First proper coloring reached by DFS with random color order."""
    if any(u == v for u, v in graph.edges):
        return None
    n = graph.n
    vals = [0] * n
    orders = [list(rng.permutation(k) + 1) for _ in range(n)]

    def extend(v: int) -> bool:
        if v > n:
            return True
        for c in orders[v - 1]:
            ok = all(vals[u - 1] != c for u in graph.adjacency[v] if u < v)
            if ok:
                vals[v - 1] = int(c)
                if extend(v + 1):
                    return True
                vals[v - 1] = 0
        return False

    return tuple(vals) if extend(1) else None

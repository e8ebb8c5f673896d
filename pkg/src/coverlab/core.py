"""Core decomposition, freeze checks, and edge-expansion search.

Given a proper coloring with classes V_1..V_k and a density parameter
ell, the decomposition removes three layers of fragile vertices:

* w: vertices with fewer than 3*ell edges into some other class,
* u: vertices with more than ell edges into the w-part of some class,
* y: the closure of u under "at least ell edges into y so far".

The core is what survives (V minus w minus y). A decomposition is
*freeze-checked* by confirming every core vertex keeps at least ell
in-core neighbors of every color other than its own; whitening started
anywhere then provably spares the core once ell >= 2, and the report
flags whether that regime applies rather than asserting it.

``expansion_violation`` hunts for a small vertex set spanning at least
(ell/2) * size edges. A global peel at threshold ell/2 that empties
the graph certifies that no violating set of any size exists; when the
peel leaves a remnant, an exhaustive search over subsets up to the
requested size settles the question.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from coverlab.colorings import Coloring, is_proper
from coverlab.errors import DomainError, ResourceBudgetError
from coverlab.graphs import MultiGraph, edge_count_between


@dataclass(frozen=True)
class CoreDecomposition:
    """The three removed layers and the surviving core."""

    k: int
    ell: float
    w_classes: tuple[frozenset[int], ...]
    w: frozenset[int]
    u: frozenset[int]
    y: frozenset[int]
    core: frozenset[int]

    @property
    def whitening_supported(self) -> bool:
        """Whether ell is large enough (>= 2) for the guarantee that
        whitening never clears a freeze-checked core."""
        return self.ell >= 2

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "w_classes": [sorted(s) for s in self.w_classes],
            "w": sorted(self.w),
            "u": sorted(self.u),
            "y": sorted(self.y),
            "core": sorted(self.core),
            "sizes": {
                "w": len(self.w),
                "u": len(self.u),
                "y": len(self.y),
                "core": len(self.core),
            },
            "whitening_supported": self.whitening_supported,
        }


def build_core(graph: MultiGraph, coloring: Coloring, ell: float) -> CoreDecomposition:
    """Run the three removal stages for a proper coloring.

    Thresholds are used exactly as stated: strictly fewer than 3*ell
    cross edges for w, strictly more than ell edges into a w-class for
    u, and at least ell edges into the growing set for the closure y.
    """
    if ell < 0:
        raise DomainError(f"ell must be nonnegative, got {ell}")
    if not is_proper(graph, coloring):
        raise DomainError("core decomposition needs a proper coloring")
    k = coloring.k
    classes = coloring.classes()
    incident = _incidence(graph)

    def edges_into(v: int, target: frozenset[int] | set[int]) -> int:
        return sum(1 for nb in incident[v] if nb in target)

    w_classes = []
    for i in range(k):
        members = set()
        for v in classes[i]:
            for j in range(k):
                if j != i and edges_into(v, classes[j]) < 3 * ell:
                    members.add(v)
                    break
        w_classes.append(frozenset(members))
    w = frozenset().union(*w_classes) if w_classes else frozenset()

    u = frozenset(
        v
        for v in graph.vertices()
        if any(edges_into(v, w_classes[j]) > ell for j in range(k))
    )

    y = set(u)
    grew = True
    while grew:
        grew = False
        for v in graph.vertices():
            if v not in y and edges_into(v, y) >= ell:
                y.add(v)
                grew = True

    core = frozenset(set(graph.vertices()) - w - y)
    return CoreDecomposition(
        k=k,
        ell=ell,
        w_classes=tuple(w_classes),
        w=w,
        u=u,
        y=frozenset(y),
        core=core,
    )


def core_freeze_check(
    graph: MultiGraph, coloring: Coloring, decomposition: CoreDecomposition
) -> bool:
    """True when every core vertex has at least ell in-core neighbors
    of each color other than its own (multiplicities count)."""
    classes = coloring.classes()
    core = decomposition.core
    ell = decomposition.ell
    for v in core:
        cv = coloring.color(v)
        for j in range(1, decomposition.k + 1):
            if j == cv:
                continue
            target = classes[j - 1] & core
            if edge_count_between(graph, [v], target) < ell:
                return False
    return True


def default_ell(k: int, floor: float = 0.0) -> float:
    """The density parameter used at large k: e^-7 * ln k, floored."""
    if k < 2:
        raise DomainError(f"need k >= 2, got k={k}")
    return max(math.exp(-7) * math.log(k), floor)


def freeze_delta(k: int) -> float:
    """The freeze distance fraction 1 / (k ln k)."""
    if k < 2:
        raise DomainError(f"need k >= 2, got k={k}")
    return 1.0 / (k * math.log(k))


def expansion_bound_size(n: int, k: int) -> int:
    """Largest set size the expansion search must cover:
    ceil(2 n lnln k / (k ln k))."""
    if k < 3:
        raise DomainError(f"need k >= 3 for a positive bound, got k={k}")
    if n < 1:
        raise DomainError(f"need n >= 1, got n={n}")
    return math.ceil(2 * n * math.log(math.log(k)) / (k * math.log(k)))


@dataclass(frozen=True)
class ExpansionReport:
    """Result of the search for a violating set.

    ``violating_set`` is the first hit in (size, lexicographic) order,
    or None. ``method`` records how the answer was settled: "peeling"
    means the global peel emptied the graph, which rules out violating
    sets of *every* size, not only up to ``max_size``; "exhaustive"
    means subsets up to ``max_size`` were enumerated.
    """

    ell: float
    max_size: int
    violating_set: Optional[tuple[int, ...]]
    method: str
    subsets_examined: int
    peel_remnant: int


def _incidence(graph: MultiGraph) -> list[list[int]]:
    """incident[v] lists the far endpoint of each edge at v, loops once.

    Counting memberships of this list in a target set counts *edges*
    between {v} and the set, matching ``edge_count_between``.
    """
    inc: list[list[int]] = [[] for _ in range(graph.n + 1)]
    for a, b in graph.edges:
        if a == b:
            inc[a].append(a)
        else:
            inc[a].append(b)
            inc[b].append(a)
    return inc


def _set_edge_count(graph: MultiGraph, members: frozenset[int]) -> int:
    return sum(1 for a, b in graph.edges if a in members and b in members)


def expansion_violation(
    graph: MultiGraph,
    ell: float,
    max_size: int,
    subset_budget: Optional[int] = 10**6,
) -> ExpansionReport:
    """Find a nonempty set of at most max_size vertices spanning at
    least (ell/2) * size edges, or certify that none exists.

    The peel runs first: repeatedly discard any vertex with fewer than
    ell/2 edges into the remaining set (loops counted once). An empty
    remnant is a sound certificate that no violating set of any size
    exists. Otherwise subsets are enumerated smallest-first in
    lexicographic order; ``subset_budget`` caps the enumeration and
    raises ``ResourceBudgetError`` (verdict unknown) when exhausted.
    """
    if ell < 0:
        raise DomainError(f"ell must be nonnegative, got {ell}")
    if max_size < 1:
        raise DomainError(f"max_size must be at least 1, got {max_size}")
    threshold = ell / 2
    incident = _incidence(graph)

    current = set(graph.vertices())
    changed = True
    while changed and current:
        changed = False
        for v in sorted(current):
            inside = sum(1 for w in incident[v] if w in current)
            if inside < threshold:
                current.discard(v)
                changed = True
    if not current:
        return ExpansionReport(
            ell=ell,
            max_size=max_size,
            violating_set=None,
            method="peeling",
            subsets_examined=0,
            peel_remnant=0,
        )

    examined = 0
    verts = list(graph.vertices())
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(verts, size):
            examined += 1
            if subset_budget is not None and examined > subset_budget:
                raise ResourceBudgetError(
                    f"expansion search budget of {subset_budget} subsets exhausted",
                    partial={
                        "peel_remnant": len(current),
                        "subsets_examined": examined - 1,
                    },
                )
            members = frozenset(combo)
            if _set_edge_count(graph, members) >= threshold * size:
                return ExpansionReport(
                    ell=ell,
                    max_size=max_size,
                    violating_set=combo,
                    method="exhaustive",
                    subsets_examined=examined,
                    peel_remnant=len(current),
                )
    return ExpansionReport(
        ell=ell,
        max_size=max_size,
        violating_set=None,
        method="exhaustive",
        subsets_examined=examined,
        peel_remnant=len(current),
    )

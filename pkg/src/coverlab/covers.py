"""Cover axioms, the cover census, and cover profile statistics.

A k-cover is a partial assignment with values in {0} union {1..k}
satisfying three axioms:

1. no edge joins two vertices of equal nonzero value ("edge-conflict"
   when violated; a loop on a colored vertex violates this),
2. every colored vertex is stable ("unstable-vertex"),
3. every uncolored vertex v admits an ordered pair of distinct colors
   (i, j) such that no neighbor of v holds i and at most one holds j
   ("unsupported-zero").

Whitening a proper coloring always lands on a cover, and distinct
proper colorings mapping to the same cover form its *cluster*. The
census enumerates all proper colorings, whitens each, and groups the
fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from coverlab.colorings import Coloring
from coverlab.errors import DomainError, ResourceBudgetError
from coverlab.graphs import MultiGraph
from coverlab.whitening import PartialColoring, _neighbor_counts, whiten

EDGE_CONFLICT = "edge-conflict"
UNSTABLE_VERTEX = "unstable-vertex"
UNSUPPORTED_ZERO = "unsupported-zero"


@dataclass(frozen=True)
class CoverCheck:
    """Outcome of the cover axioms with a pointer to the first failure."""

    ok: bool
    violation: Optional[str] = None  # one of the three axiom labels
    witness: Optional[tuple] = None  # offending edge or (vertex,) tuple

    def __bool__(self) -> bool:
        return self.ok


def is_cover(graph: MultiGraph, assignment: PartialColoring) -> CoverCheck:
    """Check the three cover axioms, reporting the first violation.

    Axioms are checked in order (edges, then colored vertices, then
    uncolored vertices, each in natural order), so the witness is
    deterministic.
    """
    if assignment.n != graph.n:
        raise DomainError(f"assignment covers {assignment.n} vertices, graph has {graph.n}")
    vals = assignment.values
    k = assignment.k
    for u, v in graph.edges:
        if vals[u - 1] != 0 and vals[u - 1] == vals[v - 1]:
            return CoverCheck(False, EDGE_CONFLICT, (u, v))
    for v in graph.vertices():
        cv = vals[v - 1]
        if cv == 0:
            continue
        cnt = _neighbor_counts(graph, vals, v, k)
        if any(cnt[j] < 2 for j in range(1, k + 1) if j != cv):
            return CoverCheck(False, UNSTABLE_VERTEX, (v,))
    for v in graph.vertices():
        if vals[v - 1] != 0:
            continue
        cnt = _neighbor_counts(graph, vals, v, k)
        absent = [j for j in range(1, k + 1) if cnt[j] == 0]
        scarce = [j for j in range(1, k + 1) if cnt[j] <= 1]
        # need i absent and j != i scarce; absent colors are scarce too
        if not (absent and len(scarce) >= 2):
            return CoverCheck(False, UNSUPPORTED_ZERO, (v,))
    return CoverCheck(True)


@dataclass(frozen=True)
class CensusEntry:
    """One cover together with its cluster (the whitening fiber)."""

    cover: PartialColoring
    colorings: tuple[Coloring, ...]

    @property
    def size(self) -> int:
        return len(self.colorings)


@dataclass(frozen=True)
class CoverCensus:
    """All valid covers of a graph with their clusters."""

    n: int
    k: int
    entries: tuple[CensusEntry, ...]

    @property
    def cover_count(self) -> int:
        return len(self.entries)

    @property
    def coloring_count(self) -> int:
        return sum(e.size for e in self.entries)

    def cluster_sizes(self) -> tuple[int, ...]:
        return tuple(e.size for e in self.entries)

    def to_json_dict(self, include_colorings: bool = False) -> dict:
        clusters = []
        for e in self.entries:
            row: dict = {"cover": list(e.cover.values), "size": e.size}
            if include_colorings:
                row["colorings"] = [list(c.values) for c in e.colorings]
            clusters.append(row)
        return {
            "n": self.n,
            "k": self.k,
            "cover_count": self.cover_count,
            "coloring_count": self.coloring_count,
            "clusters": clusters,
        }


def valid_cover_census(
    graph: MultiGraph, k: int, budget: Optional[int] = 10**6
) -> CoverCensus:
    """Whiten every proper k-coloring and group the fibers.

    Entries are sorted by cover value vector. ``budget`` caps the
    number of colorings enumerated; exceeding it raises a
    ``ResourceBudgetError``.
    """
    from coverlab.colorings import _proper_assignments

    fibers: dict[tuple[int, ...], list[Coloring]] = {}
    examined = 0
    for vals in _proper_assignments(graph, k, None):
        examined += 1
        if budget is not None and examined > budget:
            raise ResourceBudgetError(
                f"census budget of {budget} colorings exhausted",
                partial={"examined": examined - 1},
            )
        coloring = Coloring(vals, k)
        image = whiten(graph, coloring)
        fibers.setdefault(image.values, []).append(coloring)
    entries = tuple(
        CensusEntry(PartialColoring(key, k), tuple(fibers[key])) for key in sorted(fibers)
    )
    return CoverCensus(graph.n, k, entries)


def cluster_separation(census: CoverCensus) -> Optional[int]:
    """Minimum Hamming distance between colorings in different clusters.

    Returns None when fewer than two clusters exist (the quantity is
    undefined, which is distinct from any numeric answer).
    """
    if census.cover_count < 2:
        return None
    best: Optional[int] = None
    for a in range(census.cover_count):
        for b in range(a + 1, census.cover_count):
            for ca in census.entries[a].colorings:
                for cb in census.entries[b].colorings:
                    dist = sum(1 for x, y in zip(ca.values, cb.values) if x != y)
                    if best is None or dist < best:
                        best = dist
    return best


@dataclass(frozen=True)
class CoverProfileReport:
    """Outcome of the three cover-profile statistics.

    ``few_zeros``: the uncolored share is at most n * k^(-2/3).
    ``classes_near_even``: every colored class is within ``slack`` of
    n/k in ratio.
    ``few_deviant_classes``: at most ln^9 k classes deviate from n/k
    by more than n/(k ln^3 k).
    """

    n: int
    k: int
    zero_count: int
    zero_cap: float
    few_zeros: bool
    class_sizes: tuple[int, ...]
    max_ratio_deviation: float
    slack: float
    classes_near_even: bool
    deviant_classes: int
    deviant_cap: float
    deviation_threshold: float
    few_deviant_classes: bool

    @property
    def passed(self) -> bool:
        return self.few_zeros and self.classes_near_even and self.few_deviant_classes

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "zero_count": self.zero_count,
            "zero_cap": self.zero_cap,
            "few_zeros": self.few_zeros,
            "class_sizes": list(self.class_sizes),
            "max_ratio_deviation": self.max_ratio_deviation,
            "slack": self.slack,
            "classes_near_even": self.classes_near_even,
            "deviant_classes": self.deviant_classes,
            "deviant_cap": self.deviant_cap,
            "deviation_threshold": self.deviation_threshold,
            "few_deviant_classes": self.few_deviant_classes,
            "passed": self.passed,
        }


def check_cover_profile(
    subject: Union[PartialColoring, Sequence[int]],
    slack: float = 0.5,
) -> CoverProfileReport:
    """Profile statistics of a cover (or of a bare (k+1)-profile).

    When given a sequence, it is read as class sizes (nu_0, nu_1, ...,
    nu_k) with nu_0 the uncolored count. Needs k >= 2.
    """
    import math

    if isinstance(subject, PartialColoring):
        k = subject.k
        sizes = [0] * (k + 1)
        for c in subject.values:
            sizes[c] += 1
    else:
        sizes = [int(x) for x in subject]
        k = len(sizes) - 1
        if any(x < 0 for x in sizes):
            raise DomainError(f"class sizes must be nonnegative, got {sizes}")
    if k < 2:
        raise DomainError(f"cover profile statistics need k >= 2, got k={k}")
    n = sum(sizes)
    if n < 1:
        raise DomainError("profile statistics need a nonempty profile")
    if not 0 <= slack:
        raise DomainError(f"slack must be nonnegative, got {slack}")
    log_k = math.log(k)
    zero_cap = n * k ** (-2 / 3)
    target = n / k
    colored = sizes[1:]
    ratio_dev = max(abs(x * k / n - 1) for x in colored)
    threshold = n / (k * log_k**3)
    deviant = sum(1 for x in colored if abs(x - target) > threshold)
    deviant_cap = log_k**9
    return CoverProfileReport(
        n=n,
        k=k,
        zero_count=sizes[0],
        zero_cap=zero_cap,
        few_zeros=sizes[0] <= zero_cap,
        class_sizes=tuple(colored),
        max_ratio_deviation=ratio_dev,
        slack=slack,
        classes_near_even=ratio_dev <= slack,
        deviant_classes=deviant,
        deviant_cap=deviant_cap,
        deviation_threshold=threshold,
        few_deviant_classes=deviant <= deviant_cap,
    )

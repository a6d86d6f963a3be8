"""Exhaustive search for maximum intersecting families in PSL(2,q).

Two elements g1, g2 intersect when g1 * g2^(-1) fixes a projective point.
Intersecting families are exactly the cliques of the graph on PSL(2,q) with
that adjacency, which is invariant under right translation.  Maximum cliques
are therefore enumerated up to translation: every maximum family contains
some element g, and translating by g^(-1) gives a maximum family through the
identity, so it suffices to enumerate maximum cliques through the identity
and re-expand by all right translations.

The clique search is a branch and bound over bitmask candidate sets with a
greedy coloring bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, NotIntersectingError
from .groups import PGL2, Element

DEFAULT_MAX_Q = 7
OPT_IN_MAX_Q = 9


@dataclass(frozen=True)
class FamilyClassification:
    kind: str  # "stabilizer_coset" | "other"
    point_pair: tuple[int, int] | None = None


class IntersectionGraph:
    def __init__(self, group: PGL2, max_q: int = OPT_IN_MAX_Q):
        if group.q > max_q:
            raise BudgetExceededError(f"q = {group.q} exceeds the clique-search budget {max_q}")
        self.group = group
        self.vertices: list[Element] = group.elements("psl")
        self.index = {g: i for i, g in enumerate(self.vertices)}
        n = len(self.vertices)
        inverses = [group.inv(g) for g in self.vertices]
        adj = [0] * n
        for i in range(n):
            gi = self.vertices[i]
            for j in range(i + 1, n):
                if not group.is_derangement(group.mul(gi, inverses[j])):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.adjacency = adj

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()


def _color_bound_order(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; vertices come back ordered by
    color class with the number of classes used so far as their bound."""
    order, bounds = [], []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            v = (available & -available).bit_length() - 1
            available &= available - 1
            bit = 1 << v
            uncolored &= ~bit
            available &= ~adj[v]
            order.append(v)
            bounds.append(color)
    return order, bounds


def _max_clique_size(adj: list[int], cand: int, current: int, best: int) -> int:
    if cand == 0:
        return max(best, current)
    order, bounds = _color_bound_order(adj, cand)
    for idx in range(len(order) - 1, -1, -1):
        if current + bounds[idx] <= best:
            return best
        v = order[idx]
        best = _max_clique_size(adj, cand & adj[v], current + 1, best)
        cand &= ~(1 << v)
    return best


def _collect_cliques(adj: list[int], cand: int, need: int, prefix: list[int], out: list[list[int]]):
    if need == 0:
        out.append(list(prefix))
        return
    if cand.bit_count() < need:
        return
    order, bounds = _color_bound_order(adj, cand)
    for idx in range(len(order) - 1, -1, -1):
        if bounds[idx] < need:
            return
        v = order[idx]
        prefix.append(v)
        _collect_cliques(adj, cand & adj[v], need - 1, prefix, out)
        prefix.pop()
        cand &= ~(1 << v)


def max_intersecting_families(
    group: PGL2, allow_q9: bool = False
) -> tuple[int, list[frozenset[Element]]]:
    """Size of the largest intersecting family and every family of that size."""
    max_q = OPT_IN_MAX_Q if allow_q9 else DEFAULT_MAX_Q
    graph = IntersectionGraph(group, max_q=max_q)
    adj = graph.adjacency
    id_idx = graph.index[group.identity]
    neighborhood = adj[id_idx]
    best = 1 + _max_clique_size(adj, neighborhood, 0, 0)

    raw: list[list[int]] = []
    _collect_cliques(adj, neighborhood, best - 1, [], raw)
    through_identity = [
        frozenset([group.identity] + [graph.vertices[i] for i in clique]) for clique in raw
    ]

    families = set()
    for base in through_identity:
        for h in graph.vertices:
            families.add(frozenset(group.mul(g, h) for g in base))
    ordered = sorted(families, key=lambda fam: sorted(fam))
    return best, ordered


def is_intersecting(group: PGL2, members) -> bool:
    members = list(members)
    for i, g1 in enumerate(members):
        for g2 in members[i + 1 :]:
            if group.is_derangement(group.mul(g1, group.inv(g2))):
                return False
    return True


def stabilizer_coset(group: PGL2, x: int, y: int) -> frozenset[Element]:
    """{g in PSL : x^g = y}; the extremal families of the classification."""
    return frozenset(g for g in group.elements("psl") if group.act(x, g) == y)


def classify_family(group: PGL2, members) -> FamilyClassification:
    """Decide whether an intersecting family is exactly a stabilizer coset."""
    fam = frozenset(members)
    if not is_intersecting(group, fam):
        raise NotIntersectingError("the set is not pairwise intersecting")
    for x in group.points:
        images = {group.act(x, g) for g in fam}
        if len(images) != 1:
            continue
        y = next(iter(images))
        if fam == stabilizer_coset(group, x, y):
            return FamilyClassification("stabilizer_coset", (x, y))
    return FamilyClassification("other")

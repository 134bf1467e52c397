"""Answer-preserving simplification rules for vertex-cover instances.

Rule 1: drop an isolated vertex.
Rule 2: a degree-1 vertex v: take its neighbor; remove N[v], k -= 1.
Rule 3: a degree-2 vertex whose neighbors are adjacent: take both
        neighbors; remove the closed neighborhood, k -= 2.
Rule 4: two adjacent degree-2 vertices: contract through them, joining
        their outer neighbors, k -= 1.
Rule 5: an even cycle alternating degree-2 / degree->=3 vertices: take the
        high-degree half; remove the cycle, k -= len/2.  Also fires on an
        all-degree-2 even cycle (an isolated cycle component), taking
        alternate vertices.

Rule 4 skips the pair whose outer neighbors are adjacent degree-2 vertices:
that pair closes an isolated 4-cycle, where contracting would drop the
outer degrees and increase k-parameterized measures; rule 5 removes that
component with the measure intact instead.  Together the two still
eliminate every adjacent degree-2 pair, which the branch cost bounds
assume.

The same structural detectors run in two modes: on concrete instances
(`find_site`) and on local configurations (`config_site`), where a rule is
reported only when every host graph of the configuration must admit it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .configs import LocalConfiguration
from .errors import ContractError
from .graphs import Graph, Instance, enumerate_cycles

CYCLE_SEARCH_CAP = 8


@dataclass(frozen=True)
class SimplificationSite:
    rule_id: int
    witness: tuple[int, ...]


def _rule3_sites(g: Graph, deg: Callable[[int], int], complete: Callable[[int], bool]):
    for v in sorted(g.vertices):
        if deg(v) != 2 or not complete(v):
            continue
        u, w = sorted(g.neighbors(v))
        if g.has_edge(u, w):
            yield SimplificationSite(3, (v, u, w))


def _rule4_blocked(g: Graph, u: int, v: int) -> bool:
    """The pair closes an isolated 4-cycle: both outer neighbors are
    degree-2 and adjacent to each other."""
    a = next(iter(g.neighbors(u) - {v}))
    b = next(iter(g.neighbors(v) - {u}))
    return a != b and g.degree(a) == 2 and g.degree(b) == 2 and g.has_edge(a, b)


def _rule4_sites(g: Graph, deg: Callable[[int], int], skip_blocked: bool = False):
    for u, v in g.edges():
        if deg(u) == 2 and deg(v) == 2:
            if skip_blocked and _rule4_blocked(g, u, v):
                continue
            yield SimplificationSite(4, (u, v))


def _rule5_sites(g: Graph, deg: Callable[[int], int]):
    for cyc in enumerate_cycles(g, CYCLE_SEARCH_CAP):
        if len(cyc) % 2:
            continue
        if all(deg(x) == 2 for x in cyc):
            yield SimplificationSite(5, cyc)
            continue
        for parity in (0, 1):
            ok = all(
                (deg(x) == 2) if i % 2 == parity else (deg(x) > 2)
                for i, x in enumerate(cyc)
            )
            if ok:
                yield SimplificationSite(5, cyc)
                break


def _first(sites: Iterable[SimplificationSite]) -> Optional[SimplificationSite]:
    return min(sites, key=lambda s: s.witness, default=None)


def find_site(inst: Instance) -> Optional[SimplificationSite]:
    """Lowest-numbered applicable rule, lexicographically smallest witness."""
    g = inst.graph
    deg = g.degree
    for rule in (1, 2):
        want = rule - 1  # rule 1 fires on degree 0, rule 2 on degree 1
        hit = _first(
            SimplificationSite(rule, (v,)) for v in sorted(g.vertices) if deg(v) == want
        )
        if hit:
            return hit
    hit = _first(_rule3_sites(g, deg, lambda v: True))
    if hit:
        return hit
    hit = _first(_rule4_sites(g, deg, skip_blocked=True))
    if hit:
        return hit
    return _first(_rule5_sites(g, deg))


def config_site(l: LocalConfiguration) -> Optional[SimplificationSite]:
    """A site certain from the configuration alone, using true degrees.

    Structures count only when fully resolved inside H: rule 3 needs both of
    the apex's edges and the neighbor-neighbor edge complete; rules 4 and 5
    need the carrying edges complete.  A merely possible site is not
    reported, since the unknown part of the host can always avoid it.

    An adjacent true-degree-2 pair is certain as a rule-4 site even though
    the host-level rule 4 skips isolated 4-cycles: in a host closing that
    cycle, rule 5 (or rule 3, for a shared neighbor) fires instead, so some
    simplification always applies.
    """
    g = l.h
    deg = l.true_degree
    for rule in (1, 2):
        want = rule - 1
        hit = _first(
            SimplificationSite(rule, (v,)) for v in sorted(g.vertices) if deg(v) == want
        )
        if hit:
            return hit
    hit = _first(_rule3_sites(g, deg, lambda v: g.degree(v) == 2))
    if hit:
        return hit
    hit = _first(_rule4_sites(g, deg))
    if hit:
        return hit
    return _first(_rule5_sites(g, deg))


def _validate(inst: Instance, site: SimplificationSite) -> None:
    g = inst.graph
    w = site.witness
    ok = all(v in g for v in w)
    if ok:
        if site.rule_id == 1:
            ok = g.degree(w[0]) == 0
        elif site.rule_id == 2:
            ok = g.degree(w[0]) == 1
        elif site.rule_id == 3:
            v, u, x = w
            ok = g.degree(v) == 2 and g.neighbors(v) == {u, x} and g.has_edge(u, x)
        elif site.rule_id == 4:
            u, v = w
            ok = g.has_edge(u, v) and g.degree(u) == 2 and g.degree(v) == 2
            if ok:
                a = next(iter(g.neighbors(u) - {v}))
                b = next(iter(g.neighbors(v) - {u}))
                # a shared neighbor is rule-3 territory; an isolated 4-cycle
                # belongs to rule 5
                ok = a != b and not _rule4_blocked(g, u, v)
        elif site.rule_id == 5:
            ok = len(w) % 2 == 0 and all(
                g.has_edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w))
            )
            if ok and not all(g.degree(x) == 2 for x in w):
                parity = 0 if g.degree(w[0]) == 2 else 1
                ok = all(
                    (g.degree(x) == 2) if i % 2 == parity else (g.degree(x) > 2)
                    for i, x in enumerate(w)
                )
        else:
            ok = False
    if not ok:
        raise ContractError(f"site {site} is stale for {inst}")


def apply(inst: Instance, site: SimplificationSite) -> Instance:
    """Reduced instance after firing the rule; YES/NO answer is unchanged."""
    _validate(inst, site)
    g, k, w = inst.graph, inst.budget, site.witness
    if site.rule_id == 1:
        return Instance(g.without({w[0]}), k)
    if site.rule_id == 2:
        v = w[0]
        return Instance(g.without(g.neighbors(v) | {v}), k - 1)
    if site.rule_id == 3:
        return Instance(g.without(set(w)), k - 2)
    if site.rule_id == 4:
        u, v = w
        a = next(iter(g.neighbors(u) - {v}))
        b = next(iter(g.neighbors(v) - {u}))
        reduced = g.without({u, v})
        if not reduced.has_edge(a, b):  # merge parallel edges
            reduced = reduced.with_edge(a, b)
        return Instance(reduced, k - 1)
    return Instance(g.without(set(w)), k - len(w) // 2)


def lift_cover(
    g_before: Graph, site: SimplificationSite, cover_after: frozenset[int]
) -> frozenset[int]:
    """Turn a cover of the reduced graph into a cover of the original."""
    w = site.witness
    if site.rule_id == 1:
        return cover_after
    if site.rule_id == 2:
        v = w[0]
        return cover_after | g_before.neighbors(v)
    if site.rule_id == 3:
        return cover_after | {w[1], w[2]}
    if site.rule_id == 4:
        u, v = w
        a = next(iter(g_before.neighbors(u) - {v}))
        return cover_after | ({v} if a in cover_after else {u})
    if all(g_before.degree(x) == 2 for x in w):
        return cover_after | set(w[1::2])  # isolated cycle: alternate vertices
    parity = 0 if g_before.degree(w[0]) == 2 else 1
    highs = {x for i, x in enumerate(w) if i % 2 != parity}
    return cover_after | highs


def simplify_fixpoint(
    inst: Instance,
) -> tuple[Instance, list[tuple[SimplificationSite, Graph]]]:
    """Fire rules until none applies; returns the trace for cover lifting."""
    events: list[tuple[SimplificationSite, Graph]] = []
    while True:
        site = find_site(inst)
        if site is None:
            return inst, events
        events.append((site, inst.graph))
        inst = apply(inst, site)

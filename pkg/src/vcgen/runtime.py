"""Execution of certified rule tables.

A solve step simplifies to a fixpoint, classifies the residual instance
into its subspace, anchors that subspace's table, walks the expansion tree
to a leaf and applies the leaf's rule: the randomized engine samples one
branch with probability proportional to weight times measure shrinkage,
the deterministic engine explores every selected branch.  YES answers are
only ever reported with an explicitly verified cover in hand, so NO-side
errors cannot occur.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import CertificateViolation, ContractError, InputDomainError
from .graphs import Graph, Instance, ORACLE_CAP, VertexCoverSolver
from .measure import Measure, evaluate
from .rulegen import RuleTable, verify_table
from .simplify import lift_cover, simplify_fixpoint
from .subspaces import classify
from .tree import find_anchor, match_instance

PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class TrialPlan:
    trials: int
    base_seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise InputDomainError("a trial plan needs at least one trial")

    @staticmethod
    def for_instance(
        m: Measure, inst: Instance, safety: int = 20, base_seed: int = 0
    ) -> "TrialPlan":
        mu = float(evaluate(m, inst))
        trials = max(1, math.ceil(2.0**mu * safety))
        return TrialPlan(trials, base_seed)


@dataclass
class RandomizedResult:
    answer: bool
    trials_run: int
    successes: int
    mu: Fraction
    cover: Optional[frozenset[int]]


@dataclass
class TraceStep:
    subspace: int
    leaf: int
    branch: tuple[int, ...]
    probability: float

    def format(self) -> str:
        return f"P{self.subspace} {self.leaf} {list(self.branch)} {self.probability:.6f}"


def _trial_seed(base_seed: int, i: int) -> int:
    return (base_seed * 0x9E3779B97F4A7C15 + i * 0xBF58476D1CE4E5B9) % 2**64


def _component_cover(g: Graph, comp: frozenset[int]) -> frozenset[int]:
    sub = Graph(comp, ((u, v) for u, v in g.edges() if u in comp and v in comp))
    return VertexCoverSolver(sub).cover()


def _budget_cover(inst: Instance) -> Optional[frozenset[int]]:
    """Fallback decision when the measure bottoms out with edges remaining:
    exact oracle under the cap, plain two-way branching beyond it."""
    g = inst.graph
    if len(g) <= ORACLE_CAP:
        cover = VertexCoverSolver(g).cover()
        return cover if len(cover) <= inst.budget else None
    if inst.budget < 0:
        return None
    v = max(g.vertices, key=lambda x: (g.degree(x), -x))
    if g.degree(v) == 0:
        return _budget_cover(Instance(g.without({v}), inst.budget))
    take = _budget_cover(Instance(g.without({v}), inst.budget - 1))
    if take is not None:
        return take | {v}
    nbrs = g.neighbors(v)
    drop = _budget_cover(Instance(g.without(nbrs | {v}), inst.budget - len(nbrs)))
    if drop is not None:
        return drop | nbrs
    return None


def is_vertex_cover(g: Graph, cover: frozenset[int]) -> bool:
    return all(u in cover or v in cover for u, v in g.edges())


class TableEngine:
    """Loaded and certified tables, ready to solve instances."""

    def __init__(self, tables: dict[int, RuleTable], m: Measure, verify: bool = True):
        self.measure = m
        self.tables = dict(tables)
        self.fallbacks = 0
        for sid, t in self.tables.items():
            if t.measure != m:
                raise ContractError(f"table P{sid} was generated for another measure")
            if verify:
                cert = verify_table(t)
                if not cert.ok:
                    raise ContractError(
                        f"table P{sid} is not certified: " + "; ".join(cert.failures[:3])
                    )

    def _table_for(self, sid: int) -> RuleTable:
        try:
            return self.tables[sid]
        except KeyError:
            raise ContractError(f"no rule table loaded for subspace P{sid}") from None

    # -- shared per-step machinery ------------------------------------------

    def _match_leaf(self, inst: Instance):
        sid = classify(inst.graph)
        table = self._table_for(sid)
        anchor = find_anchor(inst, table.tree.root_config)
        if anchor is None:
            raise CertificateViolation(
                f"subspace P{sid} root does not anchor the residual instance"
            )
        leaf_id, phi = match_instance(table.tree, inst, anchor)
        leaf = table.tree.node(leaf_id)
        assert leaf.leaf is not None
        if leaf.leaf.kind == "simplification":
            raise CertificateViolation(
                "matched a simplification leaf on a simplification-free instance"
            )
        return sid, table, leaf, phi

    # -- deterministic mode --------------------------------------------------

    def deterministic_cover(self, inst: Instance) -> Optional[frozenset[int]]:
        for sid, t in self.tables.items():
            if t.rule_mode != "deterministic":
                raise ContractError(
                    f"table P{sid} is randomized; deterministic search needs ILP tables"
                )
        cover = self._det_search(inst)
        if cover is None:
            return None
        if not is_vertex_cover(inst.graph, cover) or len(cover) > inst.budget:
            raise CertificateViolation("constructed set is not a budget cover")
        return cover

    def _det_search(self, inst: Instance) -> Optional[frozenset[int]]:
        inst, events = simplify_fixpoint(inst)
        if inst.budget < 0:
            return None
        if inst.graph.edge_count() == 0:
            return _unwind(events, frozenset())
        if evaluate(self.measure, inst) <= 0:
            self.fallbacks += 1
            cover = _budget_cover(inst)
            return None if cover is None else _unwind(events, cover)
        sid, table, leaf, phi = self._match_leaf(inst)
        if leaf.leaf.kind == "constant":
            comp = frozenset(phi.values())
            comp_cover = _component_cover(inst.graph, comp)
            rest = Instance(inst.graph.without(comp), inst.budget - len(comp_cover))
            sub = self._det_search(rest)
            return None if sub is None else _unwind(events, sub | comp_cover)
        for entry in leaf.leaf.entries:
            take = frozenset(phi[v] for v in entry.take)
            child = Instance(inst.graph.without(take), inst.budget - len(take))
            sub = self._det_search(child)
            if sub is not None:
                return _unwind(events, sub | take)
        return None

    # -- randomized mode -----------------------------------------------------

    def rsearch_cover(
        self, inst: Instance, seed: int, trace: Optional[list[TraceStep]] = None
    ) -> Optional[frozenset[int]]:
        """One random root-to-leaf walk; a cover on success, else None."""
        rng = random.Random(seed)
        original = inst
        events: list = []
        while True:
            inst, simplifications = simplify_fixpoint(inst)
            events.extend(("simplify", site, g) for site, g in simplifications)
            if inst.budget < 0:
                return None
            if inst.graph.edge_count() == 0:
                break
            if evaluate(self.measure, inst) <= 0:
                self.fallbacks += 1
                cover = _budget_cover(inst)
                if cover is None:
                    return None
                events.append(("take", cover))
                break
            sid, table, leaf, phi = self._match_leaf(inst)
            if leaf.leaf.kind == "constant":
                comp = frozenset(phi.values())
                comp_cover = _component_cover(inst.graph, comp)
                events.append(("take", comp_cover))
                inst = Instance(inst.graph.without(comp), inst.budget - len(comp_cover))
                continue
            # weighted random branch choice per the measure shrinkage
            children = []
            for entry in leaf.leaf.entries:
                take = frozenset(phi[v] for v in entry.take)
                child = Instance(inst.graph.without(take), inst.budget - len(take))
                share = float(entry.weight) * 2.0 ** float(evaluate(self.measure, child))
                children.append((take, child, share))
            total = sum(share for _, _, share in children)
            assert total > 0
            probs = [share / total for _, _, share in children]
            assert abs(sum(probs) - 1.0) <= PROBABILITY_TOL
            r = rng.random()
            cum = 0.0
            pick = len(children) - 1
            for i, p in enumerate(probs):
                cum += p
                if r < cum:
                    pick = i
                    break
            take, child, _ = children[pick]
            if trace is not None:
                trace.append(TraceStep(sid, leaf.node_id, tuple(sorted(take)), probs[pick]))
            events.append(("take", take))
            inst = child
        cover = _unwind_events(events)
        if not is_vertex_cover(original.graph, cover) or len(cover) > original.budget:
            return None
        return cover

    def solve_randomized(self, inst: Instance, plan: TrialPlan) -> RandomizedResult:
        mu = evaluate(self.measure, inst)
        successes = 0
        witness: Optional[frozenset[int]] = None
        for i in range(plan.trials):
            cover = self.rsearch_cover(inst, _trial_seed(plan.base_seed, i))
            if cover is not None:
                successes += 1
                if witness is None:
                    witness = cover
        return RandomizedResult(witness is not None, plan.trials, successes, mu, witness)


def _unwind(events, cover: frozenset[int]) -> frozenset[int]:
    for site, g_before in reversed(events):
        cover = lift_cover(g_before, site, cover)
    return cover


def _unwind_events(events) -> frozenset[int]:
    cover: frozenset[int] = frozenset()
    for ev in reversed(events):
        if ev[0] == "take":
            cover = cover | ev[1]
        else:
            cover = lift_cover(ev[2], ev[1], cover)
    return cover


# -- module-level entry points (build, certify, solve) -----------------------


def rsearch(
    inst: Instance, tables: dict[int, RuleTable], m: Measure, seed: int
) -> bool:
    """One randomized trial; YES only with a verified cover in hand."""
    return TableEngine(tables, m).rsearch_cover(inst, seed) is not None


def solve_randomized(
    inst: Instance, tables: dict[int, RuleTable], m: Measure, plan: TrialPlan
) -> bool:
    return TableEngine(tables, m).solve_randomized(inst, plan).answer


def solve_deterministic(
    inst: Instance, tables: dict[int, RuleTable], m: Measure
) -> bool:
    return TableEngine(tables, m).deterministic_cover(inst) is not None

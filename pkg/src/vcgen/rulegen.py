"""Rule synthesis: the recursive generator, its certificates, and table files.

At each configuration the generator either attaches a simplification or
constant-solvable leaf, finds a weighted branch set whose total
upward-rounded cost is at most 1 while covering every crucial boundary
requirement (LP for randomized rules, ILP for deterministic ones), or
expands one incomplete edge and recurses.  Certification recomputes every
leaf's requirement sets, costs and coverage from scratch.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .branching import (
    Branch,
    NO_ASSERTIONS,
    SubspaceAssertions,
    branch_sort_key,
    cost_bound,
    cost_value,
    extend_branches,
    prune_dominated_indexed,
    seed_branches,
)
from .configs import (
    LocalConfiguration,
    canonical_key,
    expand,
    format_config,
    isomorphism,
    select_expansion_vertex,
)
from .errors import CapacityError, ContractError, InputDomainError
from .graphs import Graph
from .lp import solve_cover_ilp, solve_cover_lp
from .measure import Measure, generation_admissible
from .requirements import Requirement, RequirementContext
from .simplify import config_site
from .tree import ChildRef, ExpansionTree, Leaf, RuleEntry, TreeNode


@dataclass(frozen=True)
class GenLimits:
    max_depth: int = 12
    max_nodes: int = 200_000
    max_seconds: Optional[float] = None


@dataclass(frozen=True)
class FailureReport:
    reason: str
    chain: tuple[str, ...]  # config text forms, root first

    def describe(self) -> str:
        parts = [f"generation aborted: {self.reason}; blocking chain:"]
        parts.extend(self.chain)
        return "\n".join(parts)


@dataclass
class RuleTable:
    subspace_id: Optional[int]
    measure: Measure
    rule_mode: str  # "randomized" | "deterministic"
    delta: int
    tree: ExpansionTree
    meta: dict = field(default_factory=dict)
    failure: Optional[FailureReport] = None

    @property
    def complete(self) -> bool:
        return self.failure is None


class _LimitHit(Exception):
    def __init__(self, reason: str, chain: list[LocalConfiguration]):
        self.reason = reason
        self.chain = chain


def solve_lp(
    branches: Sequence[Branch],
    costs: Sequence[Fraction],
    crucial: Sequence[Requirement],
    eb_sets: Sequence[Sequence[Requirement]],
) -> Optional[tuple[tuple[Fraction, ...], Fraction]]:
    """Minimize total weighted cost subject to unit coverage of every
    crucial requirement; weights in [0, 1].  None when uncoverable."""
    index = {r: i for i, r in enumerate(crucial)}
    masks = []
    for sats in eb_sets:
        mask = 0
        for r in sats:
            mask |= 1 << index[r]
        masks.append(mask)
    sol = solve_cover_lp(list(costs), masks, len(crucial))
    if sol is None:
        return None
    return sol.weights, sol.objective


def solve_ilp(
    branches: Sequence[Branch],
    costs: Sequence[Fraction],
    crucial: Sequence[Requirement],
    eb_sets: Sequence[Sequence[Requirement]],
) -> Optional[tuple[tuple[Fraction, ...], Fraction]]:
    """The deterministic variant: weights restricted to {0, 1}."""
    index = {r: i for i, r in enumerate(crucial)}
    masks = []
    for sats in eb_sets:
        mask = 0
        for r in sats:
            mask |= 1 << index[r]
        masks.append(mask)
    sol = solve_cover_ilp(list(costs), masks, len(crucial))
    if sol is None:
        return None
    return sol.weights, sol.objective


def _verify_solution(
    weights: Sequence[Fraction],
    costs: Sequence[Fraction],
    masks: Sequence[int],
    n_reqs: int,
) -> bool:
    """Direct substitution with the upward-rounded costs."""
    if any(w < 0 or w > 1 for w in weights):
        return False
    if sum(w * c for w, c in zip(weights, costs)) > 1:
        return False
    for r in range(n_reqs):
        if sum(w for w, m in zip(weights, masks) if m >> r & 1) < 1:
            return False
    return True


def gensa(
    root: LocalConfiguration,
    m: Measure,
    delta: int = 3,
    rule_mode: str = "randomized",
    assertions: SubspaceAssertions = NO_ASSERTIONS,
    limits: GenLimits = GenLimits(),
    subspace_id: Optional[int] = None,
    audit: Optional[Callable[[dict], None]] = None,
) -> RuleTable:
    """Generate a rule table for every instance expanding the root.

    Limits turn into a failure report carrying the root-to-blocker chain of
    configurations, not an exception; the table is then partial and carries
    no certificate.
    """
    if rule_mode not in ("randomized", "deterministic"):
        raise InputDomainError(f"unknown rule mode {rule_mode!r}")
    adm = generation_admissible(m)
    if not adm.ok:
        raise InputDomainError(
            "measure not admissible for generation: " + "; ".join(adm.violations)
        )
    start = time.monotonic()
    nodes: list[TreeNode] = []
    memo: dict[bytes, int] = {}
    counters = {"lp_calls": 0, "rule_leaves": 0, "aliases": 0, "pruned_children": 0}

    def out_of_budget() -> Optional[str]:
        if len(nodes) >= limits.max_nodes:
            return "node budget exhausted"
        if limits.max_seconds is not None and time.monotonic() - start > limits.max_seconds:
            return "wall budget exhausted"
        return None

    def emit(node: TreeNode) -> int:
        nodes.append(node)
        return node.node_id

    def build(config: LocalConfiguration, basis: list[Branch], depth: int,
              chain: list[LocalConfiguration]) -> int:
        chain = chain + [config]
        reason = out_of_budget()
        if reason is not None:
            raise _LimitHit(reason, chain)
        if depth > limits.max_depth:
            raise _LimitHit("depth limit exceeded", chain)

        site = config_site(config)
        if site is not None:
            return emit(TreeNode(len(nodes), config, "leaf",
                                 leaf=Leaf("simplification", rule_id=site.rule_id)))
        if not config.boundary():
            return emit(TreeNode(len(nodes), config, "leaf", leaf=Leaf("constant")))

        try:
            key = canonical_key(config)
        except CapacityError:
            key = None  # merging is an optimization; generate without it
        if key is not None and key in memo:
            target_id = memo[key]
            iso = isomorphism(nodes[target_id].config, config)
            assert iso is not None
            counters["aliases"] += 1
            return emit(TreeNode(len(nodes), config, "alias",
                                 alias_target=target_id, alias_iso=iso))

        try:
            ctx = RequirementContext(config)
            crucial = ctx.crucial_set()
        except CapacityError:
            raise _LimitHit("boundary width beyond requirement cap", chain)

        candidates = sorted((b for b in basis if b), key=branch_sort_key)
        exponents = [cost_bound(config, b, m, assertions).exponent for b in candidates]
        masks = []
        for b in candidates:
            mask = 0
            for i, r in enumerate(crucial):
                if ctx.satisfies(b, r):
                    mask |= 1 << i
            masks.append(mask)
        keep = prune_dominated_indexed(candidates, exponents, masks)
        pruned = [candidates[i] for i in keep]
        pruned_masks = [masks[i] for i in keep]
        pruned_costs = [cost_value(exponents[i]) for i in keep]

        counters["lp_calls"] += 1
        lp_sol = solve_cover_lp(pruned_costs, pruned_masks, len(crucial))
        if rule_mode == "deterministic":
            sol = solve_cover_ilp(pruned_costs, pruned_masks, len(crucial))
        else:
            sol = lp_sol
        if audit is not None:
            audit({
                "config": format_config(config),
                "depth": depth,
                "branches": len(pruned),
                "crucial": len(crucial),
                "lp_objective": None if lp_sol is None else lp_sol.objective,
                "ilp_objective": None if rule_mode != "deterministic" or sol is None
                else sol.objective,
                "accepted": sol is not None and sol.objective <= 1,
            })

        if sol is not None and sol.objective <= 1:
            if not _verify_solution(sol.weights, pruned_costs, pruned_masks, len(crucial)):
                raise ContractError("solver returned a solution failing substitution")
            entries = tuple(
                RuleEntry(b, w)
                for b, w in zip(pruned, sol.weights)
                if w > 0
            )
            counters["rule_leaves"] += 1
            node_id = emit(TreeNode(len(nodes), config, "leaf",
                                    leaf=Leaf("rule", entries=entries)))
            if key is not None:
                memo[key] = node_id
            return node_id

        # no efficient rule: expand and recurse
        selected = select_expansion_vertex(config)
        refs: list[ChildRef] = []
        for label, child in expand(config, delta):
            forbidden = _forbidden_by(child, assertions)
            if forbidden is not None:
                counters["pruned_children"] += 1
                refs.append(ChildRef(label, None, pruned_by=forbidden))
                continue
            new_edge = _expansion_edge(config, child)
            basis_for_child = extend_branches([frozenset()] + pruned, *new_edge)
            child_id = build(child, basis_for_child, depth + 1, chain)
            refs.append(ChildRef(label, child_id))
        node_id = emit(TreeNode(len(nodes), config, "expanded",
                                selected=selected, children=tuple(refs)))
        if key is not None:
            memo[key] = node_id
        return node_id

    def _forbidden_by(child: LocalConfiguration, a: SubspaceAssertions) -> Optional[int]:
        """Smallest excluded subspace whose structure is certain in child."""
        from .subspaces import _Structures, _detector

        s = _Structures(child.h, child.true_degree)
        for sid in a.excluded_subspaces:
            if _detector(sid)(s):
                return sid
        return None

    def _expansion_edge(parent: LocalConfiguration, child: LocalConfiguration) -> tuple[int, int]:
        (edge,) = set(child.h.edges()) - set(parent.h.edges())
        return edge

    basis0 = [frozenset()] + seed_branches(root)
    try:
        root_id = build(root, basis0, 0, [])
        failure = None
    except _LimitHit as hit:
        root_id = -1
        failure = FailureReport(hit.reason, tuple(format_config(c) for c in hit.chain))
    tree = ExpansionTree(nodes, root_id)
    meta = {
        "nodes": len(nodes),
        "limits": {
            "max_depth": limits.max_depth,
            "max_nodes": limits.max_nodes,
            "max_seconds": limits.max_seconds,
        },
        **counters,
    }
    return RuleTable(subspace_id, m, rule_mode, delta, tree, meta, failure)


# -- certification -----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    ok: bool
    failures: tuple[str, ...]
    leaf_objectives: dict[int, Fraction]
    measure_ok: bool = True


def _iso_valid(a: LocalConfiguration, b: LocalConfiguration, iso: dict[int, int]) -> bool:
    if set(iso) != set(a.h.vertices) or set(iso.values()) != set(b.h.vertices):
        return False
    if len(set(iso.values())) != len(iso):
        return False
    if a.h.edge_count() != b.h.edge_count() or a.delta != b.delta:
        return False
    for u, v in a.h.edges():
        if not b.h.has_edge(iso[u], iso[v]):
            return False
    return all(a.d[v] == b.d[iso[v]] for v in iso)


def verify_table(t: RuleTable) -> Certificate:
    """Recompute everything a leaf claims and every node's cover; pass iff
    all checks pass.  Failure tables never certify."""
    failures: list[str] = []
    objectives: dict[int, Fraction] = {}

    def fail(msg: str) -> None:
        failures.append(msg)

    if t.failure is not None:
        fail(f"table carries a failure report ({t.failure.reason})")
        return Certificate(False, tuple(failures), objectives, measure_ok=False)
    adm = generation_admissible(t.measure)
    measure_ok = adm.ok
    if not adm.ok:
        fail("measure inadmissible: " + "; ".join(adm.violations))
    if t.tree.root < 0 or t.tree.root >= len(t.tree.nodes):
        fail("missing root node")
        return Certificate(False, tuple(failures), objectives, measure_ok)
    assertions = NO_ASSERTIONS
    if t.subspace_id is not None:
        from .subspaces import assertions_for

        assertions = assertions_for(t.subspace_id)

    from .subspaces import _Structures, _detector

    for node in t.tree.nodes:
        nid = node.node_id
        if node.kind == "leaf":
            leaf = node.leaf
            if leaf is None:
                fail(f"node {nid}: leaf node without leaf payload")
                continue
            if leaf.kind == "simplification":
                site = config_site(node.config)
                if site is None or site.rule_id != leaf.rule_id:
                    fail(f"node {nid}: simplification rule {leaf.rule_id} does not fire")
            elif leaf.kind == "constant":
                if node.config.boundary():
                    fail(f"node {nid}: constant leaf with nonempty boundary")
            elif leaf.kind == "rule":
                _verify_rule_leaf(t, node, assertions, failures, objectives)
            else:
                fail(f"node {nid}: unknown leaf kind {leaf.kind!r}")
        elif node.kind == "alias":
            if node.alias_target is None or node.alias_iso is None:
                fail(f"node {nid}: incomplete alias")
                continue
            if not (0 <= node.alias_target < len(t.tree.nodes)):
                fail(f"node {nid}: alias target out of range")
                continue
            target = t.tree.nodes[node.alias_target]
            if target.kind == "alias":
                fail(f"node {nid}: alias chains to another alias")
            if not _iso_valid(target.config, node.config, node.alias_iso):
                fail(f"node {nid}: alias isomorphism invalid")
        elif node.kind == "expanded":
            if config_site(node.config) is not None:
                fail(f"node {nid}: expanded although a simplification applies")
            expected = expand(node.config, t.delta)
            got = {ref.label: ref for ref in node.children}
            if [ref.label for ref in node.children] != [lbl for lbl, _ in expected]:
                fail(f"node {nid}: children do not match the expansion cover")
                continue
            if node.selected != select_expansion_vertex(node.config):
                fail(f"node {nid}: wrong selected vertex")
            for label, child_cfg in expected:
                ref = got[label]
                if ref.node is None:
                    s = _Structures(child_cfg.h, child_cfg.true_degree)
                    allowed = ref.pruned_by in assertions.excluded_subspaces
                    if not allowed or not _detector(ref.pruned_by)(s):
                        fail(f"node {nid}: child {label} pruned without justification")
                else:
                    child = t.tree.nodes[ref.node]
                    if child.config != child_cfg:
                        fail(f"node {nid}: child {label} configuration mismatch")
        else:
            fail(f"node {nid}: unknown kind {node.kind!r}")
    return Certificate(not failures, tuple(failures), objectives, measure_ok)


def _verify_rule_leaf(
    t: RuleTable,
    node: TreeNode,
    assertions: SubspaceAssertions,
    failures: list[str],
    objectives: dict[int, Fraction],
) -> None:
    nid = node.node_id
    leaf = node.leaf
    assert leaf is not None
    config = node.config
    try:
        ctx = RequirementContext(config)
        crucial = ctx.crucial_set()
    except CapacityError:
        failures.append(f"node {nid}: boundary beyond requirement cap")
        return
    objective = Fraction(0)
    sat_weights: dict[Requirement, Fraction] = {r: Fraction(0) for r in crucial}
    for entry in leaf.entries:
        if not entry.take or not entry.take <= config.h.vertices:
            failures.append(f"node {nid}: branch {sorted(entry.take)} outside the graph")
            return
        if any(config.h.degree(v) == 0 for v in entry.take):
            failures.append(
                f"node {nid}: branch {sorted(entry.take)} takes an isolated vertex "
                "(its cost bound is not sound)"
            )
            return
        if entry.weight <= 0 or entry.weight > 1:
            failures.append(f"node {nid}: weight {entry.weight} outside (0, 1]")
            return
        if t.rule_mode == "deterministic" and entry.weight != 1:
            failures.append(f"node {nid}: fractional weight in a deterministic table")
            return
        exp = cost_bound(config, entry.take, t.measure, assertions).exponent
        objective += entry.weight * cost_value(exp)
        for r in crucial:
            if ctx.satisfies(entry.take, r):
                sat_weights[r] += entry.weight
    for r in crucial:
        if sat_weights[r] < 1:
            failures.append(
                f"node {nid}: requirement {sorted(r)} covered with weight "
                f"{sat_weights[r]} < 1"
            )
    if objective > 1:
        failures.append(f"node {nid}: objective {objective} exceeds 1")
    objectives[nid] = objective


# -- serialization -----------------------------------------------------------

FORMAT_NAME = "vcgen-rule-table"
FORMAT_VERSION = 1


def _frac_str(x: Fraction) -> str:
    return str(x)


def _config_obj(l: LocalConfiguration) -> dict:
    return {
        "vertices": sorted(l.h.vertices),
        "edges": [list(e) for e in l.h.edges()],
        "d": {str(v): l.d[v] for v in sorted(l.h.vertices) if l.d[v]},
        "delta": l.delta,
    }


def _config_from_obj(obj: dict) -> LocalConfiguration:
    g = Graph(obj["vertices"], [tuple(e) for e in obj["edges"]])
    d = {int(v): c for v, c in obj["d"].items()}
    return LocalConfiguration(g, d, obj["delta"])


def table_to_json(t: RuleTable) -> str:
    nodes = []
    for node in t.tree.nodes:
        obj: dict = {
            "id": node.node_id,
            "kind": node.kind,
            "config": _config_obj(node.config),
        }
        if node.kind == "expanded":
            obj["selected"] = node.selected
            obj["children"] = [
                {
                    "label": list(ref.label),
                    "node": ref.node,
                    **({"pruned_by": ref.pruned_by} if ref.node is None else {}),
                }
                for ref in node.children
            ]
        elif node.kind == "leaf":
            leaf = node.leaf
            assert leaf is not None
            lobj: dict = {"kind": leaf.kind}
            if leaf.kind == "rule":
                lobj["entries"] = [
                    {"take": sorted(e.take), "weight": _frac_str(e.weight)}
                    for e in leaf.entries
                ]
            elif leaf.kind == "simplification":
                lobj["rule"] = leaf.rule_id
            obj["leaf"] = lobj
        elif node.kind == "alias":
            obj["alias"] = {
                "target": node.alias_target,
                "iso": {str(k): v for k, v in sorted(node.alias_iso.items())},
            }
        nodes.append(obj)
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "subspace": t.subspace_id,
        "mode": t.rule_mode,
        "measure": {
            "mode": t.measure.mode,
            "alpha": _frac_str(t.measure.alpha),
            "b1": _frac_str(t.measure.beta1),
            "b2": _frac_str(t.measure.beta2),
            "b3": _frac_str(t.measure.beta3),
        },
        "delta": t.delta,
        "root": t.tree.root,
        "nodes": nodes,
        "meta": t.meta,
        "failure": None
        if t.failure is None
        else {"reason": t.failure.reason, "chain": list(t.failure.chain)},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def table_from_json(text: str) -> RuleTable:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_NAME or doc.get("version") != FORMAT_VERSION:
        raise InputDomainError("not a rule-table file")
    measure = Measure(
        Fraction(doc["measure"]["alpha"]),
        Fraction(doc["measure"]["b1"]),
        Fraction(doc["measure"]["b2"]),
        Fraction(doc["measure"]["b3"]),
        doc["measure"]["mode"],
    )
    nodes = []
    for obj in doc["nodes"]:
        config = _config_from_obj(obj["config"])
        kind = obj["kind"]
        if kind == "expanded":
            children = tuple(
                ChildRef(
                    (ref["label"][0], ref["label"][1]),
                    ref["node"],
                    ref.get("pruned_by"),
                )
                for ref in obj["children"]
            )
            nodes.append(TreeNode(obj["id"], config, kind,
                                  selected=obj["selected"], children=children))
        elif kind == "leaf":
            lobj = obj["leaf"]
            if lobj["kind"] == "rule":
                entries = tuple(
                    RuleEntry(frozenset(e["take"]), Fraction(e["weight"]))
                    for e in lobj["entries"]
                )
                leaf = Leaf("rule", entries=entries)
            elif lobj["kind"] == "simplification":
                leaf = Leaf("simplification", rule_id=lobj["rule"])
            else:
                leaf = Leaf("constant")
            nodes.append(TreeNode(obj["id"], config, kind, leaf=leaf))
        elif kind == "alias":
            nodes.append(
                TreeNode(
                    obj["id"],
                    config,
                    kind,
                    alias_target=obj["alias"]["target"],
                    alias_iso={int(k): v for k, v in obj["alias"]["iso"].items()},
                )
            )
        else:
            raise InputDomainError(f"unknown node kind {kind!r}")
    failure = None
    if doc["failure"] is not None:
        failure = FailureReport(doc["failure"]["reason"], tuple(doc["failure"]["chain"]))
    return RuleTable(
        doc["subspace"],
        measure,
        doc["mode"],
        doc["delta"],
        ExpansionTree(nodes, doc["root"]),
        doc["meta"],
        failure,
    )

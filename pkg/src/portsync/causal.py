"""Causal trees: hierarchical interaction structure of a connector.

A causal tree is a forest of interaction-labeled nodes.  A node may
participate only if its parent does; siblings are independent.  The
interaction set of a tree is therefore the set of unions over nonempty
parent-closed selections of nodes.

Trees are the stepping stone between the connector algebra and the
boolean encoding: tau() translates a fusion term into a tree, and
causal_rules() reads the tree back as implications

    p  =>  m1 or m2 or ...

(one per port, bodies are conjunctions of ports) plus a root clause
that at least one root port fires.  The conjunction of the rules with
the root clause characterizes the interaction set without enumerating
it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolfunc import BoolExpr, Var, conj, disj, implies, neg
from .connectors import (
    AcTerm,
    Fusion,
    Interaction,
    OneLeaf,
    PortLeaf,
    ZeroLeaf,
    interaction_key,
    normalize_binary,
)


@dataclass(frozen=True)
class CausalNode:
    label: Interaction
    children: tuple["CausalNode", ...] = ()


@dataclass(frozen=True)
class CausalTree:
    roots: tuple[CausalNode, ...] = ()


@dataclass(frozen=True)
class CausalRule:
    head: str
    body: frozenset[Interaction]  # disjunction of conjunctive monomials


def tau(term: AcTerm) -> CausalTree:
    """Translate a connector term into its causal tree."""
    return CausalTree(_tau(normalize_binary(term)))


def _tau(term: AcTerm) -> tuple[CausalNode, ...]:
    if isinstance(term, PortLeaf):
        return (CausalNode(frozenset((term.port,))),)
    if isinstance(term, OneLeaf):
        return (CausalNode(frozenset()),)
    if isinstance(term, ZeroLeaf):
        return ()
    factors = term.factors
    if len(factors) == 1:
        return _tau(factors[0].term)
    triggers = [f for f in factors if f.trigger]
    synchrons = [f for f in factors if not f.trigger]
    if len(triggers) == 1:
        # trigger causes each synchron independently
        head = _tau(triggers[0].term)
        tail: tuple[CausalNode, ...] = ()
        for s in synchrons:
            tail = tail + _tau(s.term)
        return tuple(CausalNode(n.label, n.children + tail) for n in head)
    if len(triggers) == 2 and not synchrons:
        return _tau(triggers[0].term) + _tau(triggers[1].term)
    if not triggers and len(synchrons) == 2:
        # strong synchronization: pairwise label union at the roots
        left = _tau(synchrons[0].term)
        right = _tau(synchrons[1].term)
        return tuple(
            CausalNode(a.label | b.label, a.children + b.children)
            for a in left
            for b in right
        )
    raise ValueError("term is not in normalized binary form")


def ct_interactions(tree: CausalTree) -> frozenset[Interaction]:
    """Interaction set of the tree: unions over nonempty parent-closed selections."""

    def node_choices(node: CausalNode) -> frozenset[Interaction]:
        combos: set[Interaction] = {frozenset()}
        for child in node.children:
            picks = node_choices(child)
            combos = {u | v for u in combos for v in picks} | combos
        return frozenset(node.label | c for c in combos)

    out: set[Interaction] = set()
    root_choices = [node_choices(r) for r in tree.roots]

    def walk(idx: int, acc: Interaction, any_selected: bool) -> None:
        if idx == len(root_choices):
            if any_selected:
                out.add(acc)
            return
        walk(idx + 1, acc, any_selected)
        for c in root_choices[idx]:
            walk(idx + 1, acc | c, True)

    walk(0, frozenset(), False)
    return frozenset(out)


def causal_rules(tree: CausalTree) -> tuple[tuple[CausalRule, ...], frozenset[str]]:
    """Extract per-port rules and the root clause from a tree.

    Each occurrence of port p in a node labeled a under a parent
    labeled b contributes the monomial (a | b) - {p} to p's body.
    A rule whose body contains the empty monomial is vacuously true and
    dropped (ports that can fire unconditionally, e.g. singleton-label
    roots).  Rules are returned sorted by head for determinism.
    """
    bodies: dict[str, set[Interaction]] = {}

    def visit(node: CausalNode, parent_label: Interaction) -> None:
        for p in node.label:
            bodies.setdefault(p, set()).add(frozenset((node.label | parent_label) - {p}))
        for child in node.children:
            visit(child, node.label)

    for root in tree.roots:
        visit(root, frozenset())
    root_clause = frozenset(p for r in tree.roots for p in r.label)
    rules = tuple(
        CausalRule(p, frozenset(monomials))
        for p, monomials in sorted(bodies.items())
        if frozenset() not in monomials
    )
    return rules, root_clause


def rules_to_formula(
    rules: tuple[CausalRule, ...],
    root_clause: frozenset[str],
    support: frozenset[str] | set[str],
) -> BoolExpr:
    """Conjunction of the rules with the root clause, over `support`.

    Ports in the support that occur in no rule and not in the root
    clause are forced false, so satisfying valuations never invent
    participants.
    """
    parts: list[BoolExpr] = [disj(Var(p) for p in sorted(root_clause))]
    mentioned = set(root_clause)
    for rule in rules:
        body = disj(
            conj(Var(q) for q in sorted(m))
            for m in sorted(rule.body, key=interaction_key)
        )
        parts.append(implies(Var(rule.head), body))
        mentioned.add(rule.head)
        mentioned.update(p for m in rule.body for p in m)
    for p in sorted(set(support) - mentioned):
        parts.append(neg(Var(p)))
    return conj(parts)


def canonical(tree: CausalTree) -> CausalTree:
    """Sort sibling order recursively; equality of canonical forms is
    equality up to reordering of independent branches."""

    def node_key(node: CausalNode):
        return (tuple(sorted(node.label)), tuple(node_key(c) for c in node.children))

    def fix(node: CausalNode) -> CausalNode:
        kids = tuple(sorted((fix(c) for c in node.children), key=node_key))
        return CausalNode(node.label, kids)

    roots = tuple(sorted((fix(r) for r in tree.roots), key=node_key))
    return CausalTree(roots)


def format_tree(tree: CausalTree) -> str:
    """Render with -> for causality and (+) for independent branches."""

    def fmt_label(label: Interaction) -> str:
        return " ".join(sorted(label)) if label else "1"

    def fmt_node(node: CausalNode) -> str:
        if not node.children:
            return fmt_label(node.label)
        inner = " (+) ".join(fmt_node(c) for c in node.children)
        if len(node.children) > 1:
            inner = f"({inner})"
        return f"{fmt_label(node.label)} -> {inner}"

    if not tree.roots:
        return "0"
    return " (+) ".join(
        f"({fmt_node(r)})" if (r.children and len(tree.roots) > 1) else fmt_node(r)
        for r in tree.roots
    )

"""Connector algebra: typed fusion terms over ports.

A connector is a term built from port leaves and fusions of factors.
Each factor is either a trigger (marked, can initiate the interaction)
or a synchron (unmarked, participates only if someone else initiates).
The meaning of a term is a set of interactions (sets of ports):

- with at least one trigger among the factors, any sub-multiset of the
  factors containing at least one trigger may fire, each contributing
  one of its own interactions;
- with no triggers, every factor must contribute exactly one.

The constants ZeroLeaf (no interaction) and OneLeaf (only the empty
interaction) complete the algebra but are not expressible in the DSL.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .boolfunc import BoolExpr, Var, conj, disj, evaluate, neg, variables

Interaction = frozenset[str]

AcTerm = Union["PortLeaf", "ZeroLeaf", "OneLeaf", "Fusion"]


@dataclass(frozen=True)
class PortLeaf:
    port: str


@dataclass(frozen=True)
class ZeroLeaf:
    pass


@dataclass(frozen=True)
class OneLeaf:
    pass


@dataclass(frozen=True)
class Factor:
    term: AcTerm
    trigger: bool = False


@dataclass(frozen=True)
class Fusion:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("fusion needs at least one factor")


def fusion(factors: Iterable[Factor]) -> AcTerm:
    """Build a fusion, collapsing a lone unmarked factor to its term.

    Parser and generators share this constructor so that serialized
    terms re-parse to structurally equal values.
    """
    items = tuple(factors)
    if len(items) == 1 and not items[0].trigger:
        return items[0].term
    return Fusion(items)


def support(term: AcTerm) -> frozenset[str]:
    """All ports occurring in the term, including under dead branches."""
    if isinstance(term, PortLeaf):
        return frozenset((term.port,))
    if isinstance(term, (ZeroLeaf, OneLeaf)):
        return frozenset()
    out: set[str] = set()
    for f in term.factors:
        out |= support(f.term)
    return frozenset(out)


def interactions_of(term: AcTerm) -> frozenset[Interaction]:
    """The interaction set denoted by the term."""
    if isinstance(term, PortLeaf):
        return frozenset((frozenset((term.port,)),))
    if isinstance(term, OneLeaf):
        return frozenset((frozenset(),))
    if isinstance(term, ZeroLeaf):
        return frozenset()
    factors = term.factors
    choice_sets = [interactions_of(f.term) for f in factors]
    has_trigger = any(f.trigger for f in factors)
    out: set[Interaction] = set()

    def walk(idx: int, acc: Interaction, fired: bool) -> None:
        if idx == len(factors):
            if fired or not has_trigger:
                out.add(acc)
            return
        if has_trigger:
            # triggers permit absence of any factor
            walk(idx + 1, acc, fired)
        for choice in choice_sets[idx]:
            walk(idx + 1, acc | choice, fired or factors[idx].trigger)

    walk(0, frozenset(), False)
    return frozenset(out)


def normalize_binary(term: AcTerm) -> AcTerm:
    """Fold n-ary fusions into left-nested binary groups.

    After normalization each fusion is one of: a single factor, one
    trigger plus any number of synchrons, exactly two triggers, or
    exactly two synchrons.  Folding preserves the interaction set:
    triggers fold as [[x1]'[x2]']'... while the grouped pair is itself
    marked, synchrons fold as plain pairs.
    """
    if not isinstance(term, Fusion):
        return term
    factors = tuple(Factor(normalize_binary(f.term), f.trigger) for f in term.factors)
    if len(factors) == 1:
        return Fusion(factors)
    triggers = [f for f in factors if f.trigger]
    synchrons = [f for f in factors if not f.trigger]
    if len(triggers) >= 2 and synchrons:
        folded = triggers[0]
        for t in triggers[1:]:
            folded = Factor(Fusion((folded, t)), True)
        return Fusion((folded, *synchrons))
    if len(triggers) > 2:
        folded = triggers[0]
        for t in triggers[1:-1]:
            folded = Factor(Fusion((folded, t)), True)
        return Fusion((folded, triggers[-1]))
    if not triggers and len(synchrons) > 2:
        folded = synchrons[0]
        for s in synchrons[1:-1]:
            folded = Factor(Fusion((folded, s)), False)
        return Fusion((folded, synchrons[-1]))
    return Fusion(factors)


def interaction_key(a: Interaction) -> tuple[int, tuple[str, ...]]:
    """Deterministic sort key for interactions (size, then lexicographic)."""
    return (len(a), tuple(sorted(a)))


def interactions_to_bool(gamma: Iterable[Interaction], universe: Iterable[str]) -> BoolExpr:
    """Characteristic function of an interaction set over a port universe.

    Each interaction becomes a full minterm; ports outside the
    interaction are negated, so valuations and interactions are in
    bijection.
    """
    names = sorted(set(universe))
    name_set = set(names)
    minterms = []
    for a in sorted(set(gamma), key=interaction_key):
        if not a <= name_set:
            raise ValueError(f"interaction {sorted(a)} not within universe {names}")
        lits = [Var(p) if p in a else neg(Var(p)) for p in names]
        minterms.append(conj(lits))
    return disj(minterms)


def bool_to_interactions(expr: BoolExpr, universe: Iterable[str]) -> frozenset[Interaction]:
    """Satisfying valuations of `expr` over `universe`, read as interactions."""
    names = sorted(set(universe))
    extra = variables(expr) - set(names)
    if extra:
        raise ValueError(f"expression mentions ports outside the universe: {sorted(extra)}")
    out: set[Interaction] = set()

    def walk(idx: int, acc: set[str]) -> None:
        if idx == len(names):
            if evaluate(expr, frozenset(acc)):
                out.add(frozenset(acc))
            return
        walk(idx + 1, acc)
        acc.add(names[idx])
        walk(idx + 1, acc)
        acc.discard(names[idx])

    walk(0, set())
    return frozenset(out)

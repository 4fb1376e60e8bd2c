"""Core system model and reference semantics.

A system is a set of atomic components (labeled transition systems over
disjoint port sets) glued by named connectors and an optional priority
order.  The interaction pool gamma is the union of the connectors'
interaction sets, with the empty interaction removed.  One step of the
system fires a single interaction that is enabled (every atom owning a
port of it has a matching transition) and not dominated under the
priority order.

Functions here are the executable reference semantics; the two engines
must agree with them (and with each other) on survivor sets at every
reachable state.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

from .connectors import AcTerm, Interaction, interaction_key, interactions_of, support

GlobalState = tuple[str, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ModelError(Exception):
    pass


class ValidationError(ModelError):
    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class NotEnabledError(ModelError):
    """Raised when step() is asked to fire a non-enabled interaction."""


@dataclass(frozen=True)
class Diagnostic:
    invariant: str  # short name of the violated invariant
    location: str   # model element, e.g. "atom B1" or "connector x"
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message} [{self.invariant}]"


@dataclass(frozen=True)
class Transition:
    source: str
    label: Interaction
    target: str


@dataclass(frozen=True)
class AtomicBehavior:
    name: str
    states: tuple[str, ...]
    init: str
    ports: tuple[str, ...]
    transitions: tuple[Transition, ...]

    @cached_property
    def port_set(self) -> frozenset[str]:
        return frozenset(self.ports)

    @cached_property
    def moves(self) -> dict[tuple[str, Interaction], tuple[str, ...]]:
        out: dict[tuple[str, Interaction], list[str]] = {}
        for t in self.transitions:
            out.setdefault((t.source, t.label), []).append(t.target)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def labels_from(self) -> dict[str, frozenset[Interaction]]:
        out: dict[str, set[Interaction]] = {s: set() for s in self.states}
        for t in self.transitions:
            out.setdefault(t.source, set()).add(t.label)
        return {s: frozenset(v) for s, v in out.items()}

    def targets(self, state: str, label: Interaction) -> tuple[str, ...]:
        return self.moves.get((state, label), ())


@dataclass(frozen=True)
class MaximalProgress:
    """Dominate every enabled interaction by its enabled strict supersets in gamma."""


@dataclass(frozen=True)
class ExplicitPairs:
    """User-listed domination pairs (low, high); closed transitively."""

    pairs: frozenset[tuple[Interaction, Interaction]]

    @cached_property
    def closure(self) -> frozenset[tuple[Interaction, Interaction]]:
        succ: dict[Interaction, set[Interaction]] = {}
        for lo, hi in self.pairs:
            succ.setdefault(lo, set()).add(hi)
        out: set[tuple[Interaction, Interaction]] = set()
        for start in succ:
            seen: set[Interaction] = set()
            stack = list(succ[start])
            while stack:
                nxt = stack.pop()
                if nxt in seen:
                    continue
                seen.add(nxt)
                stack.extend(succ.get(nxt, ()))
            out.update((start, hi) for hi in seen)
        return frozenset(out)


Priority = Union[MaximalProgress, ExplicitPairs, None]


@dataclass(frozen=True)
class Connector:
    name: str
    term: AcTerm


@dataclass(frozen=True)
class SystemModel:
    name: str
    atoms: tuple[AtomicBehavior, ...]
    connectors: tuple[Connector, ...]
    priority: Priority = None

    @cached_property
    def port_owner(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for i, atom in enumerate(self.atoms):
            for p in atom.ports:
                out.setdefault(p, i)
        return out

    @cached_property
    def all_ports(self) -> tuple[str, ...]:
        return tuple(p for atom in self.atoms for p in atom.ports)

    @cached_property
    def gamma(self) -> frozenset[Interaction]:
        """Interaction pool: union over connectors, empty interaction removed."""
        out: set[Interaction] = set()
        for c in self.connectors:
            out |= interactions_of(c.term)
        out.discard(frozenset())
        return frozenset(out)

    def initial_state(self) -> GlobalState:
        return tuple(atom.init for atom in self.atoms)


@dataclass(frozen=True)
class Trace:
    """Execution record: (interaction, resulting state) per step."""

    initial: GlobalState
    steps: tuple[tuple[Interaction, GlobalState], ...]
    deadlocked: bool
    total_ns: int = 0

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def interactions(self) -> tuple[Interaction, ...]:
        return tuple(a for a, _ in self.steps)


def validate(system: SystemModel) -> list[Diagnostic]:
    """Structural well-formedness; each diagnostic names the violated invariant."""
    diags: list[Diagnostic] = []

    def bad_name(kind: str, name: str, where: str) -> None:
        diags.append(Diagnostic("name-format", where, f"{kind} name {name!r} is not an identifier"))

    if not _NAME_RE.match(system.name or ""):
        bad_name("system", system.name, f"system {system.name!r}")

    seen_atoms: set[str] = set()
    seen_ports: dict[str, str] = {}
    for atom in system.atoms:
        where = f"atom {atom.name}"
        if not _NAME_RE.match(atom.name or ""):
            bad_name("atom", atom.name, where)
        if atom.name in seen_atoms:
            diags.append(Diagnostic("unique-atom-names", where, "duplicate atom name"))
        seen_atoms.add(atom.name)
        if len(set(atom.states)) != len(atom.states):
            diags.append(Diagnostic("unique-states", where, "duplicate state names"))
        if not atom.states:
            diags.append(Diagnostic("nonempty-states", where, "atom has no states"))
        for s in atom.states:
            if not _NAME_RE.match(s or ""):
                bad_name("state", s, where)
        if atom.states and atom.init not in atom.states:
            diags.append(Diagnostic("init-state", where, f"initial state {atom.init!r} not declared"))
        if len(set(atom.ports)) != len(atom.ports):
            diags.append(Diagnostic("unique-ports", where, "duplicate port names within atom"))
        for p in atom.ports:
            if not _NAME_RE.match(p or ""):
                bad_name("port", p, where)
            if p in seen_ports:
                diags.append(Diagnostic(
                    "disjoint-ports", where,
                    f"port {p!r} already owned by {seen_ports[p]}"))
            else:
                seen_ports[p] = atom.name
        state_set = set(atom.states)
        for t in atom.transitions:
            tw = f"{where} trans {t.source}->{t.target}"
            if t.source not in state_set or t.target not in state_set:
                diags.append(Diagnostic("transition-endpoints", tw, "endpoint not a declared state"))
            if not t.label:
                diags.append(Diagnostic("nonempty-label", tw, "transition label is empty"))
            if not t.label <= atom.port_set:
                extra = sorted(t.label - atom.port_set)
                diags.append(Diagnostic("label-ports", tw, f"label uses foreign ports {extra}"))

    all_ports = set(seen_ports)
    seen_connectors: set[str] = set()
    for conn in system.connectors:
        where = f"connector {conn.name}"
        if not _NAME_RE.match(conn.name or ""):
            bad_name("connector", conn.name, where)
        if conn.name in seen_connectors:
            diags.append(Diagnostic("unique-connector-names", where, "duplicate connector name"))
        seen_connectors.add(conn.name)
        unbound = sorted(support(conn.term) - all_ports)
        if unbound:
            diags.append(Diagnostic("bound-ports", where, f"unbound ports {unbound}"))

    pr = system.priority
    if isinstance(pr, ExplicitPairs):
        where = "priority"
        for lo, hi in pr.pairs:
            loose = sorted((lo | hi) - all_ports)
            if loose:
                diags.append(Diagnostic("bound-ports", where, f"priority pair uses unbound ports {loose}"))
            if lo == hi:
                diags.append(Diagnostic("strict-order", where, f"reflexive pair on {sorted(lo)}"))
        for lo, hi in pr.closure:
            if lo == hi:
                diags.append(Diagnostic("strict-order", where, f"priority cycle through {sorted(lo)}"))
                break
    return diags


def act(system: SystemModel, state: GlobalState, a: Interaction) -> bool:
    """Is `a` active at `state`: every owning atom has a transition whose
    label equals exactly its share a & ports(atom)?  Atoms with no share
    do not constrain.  The empty interaction is vacuously active."""
    if len(state) != len(system.atoms):
        raise ValueError("state arity does not match the number of atoms")
    owner = system.port_owner
    for p in a:
        if p not in owner:
            raise ValueError(f"port {p!r} does not belong to the system")
    for i, atom in enumerate(system.atoms):
        share = a & atom.port_set
        if not share:
            continue
        if not atom.targets(state[i], share):
            return False
    return True


def enabled(system: SystemModel, state: GlobalState) -> frozenset[Interaction]:
    """Interactions of gamma active at `state` (before priority)."""
    return frozenset(a for a in system.gamma if act(system, state, a))


def effective_pairs(
    priority: Priority, gamma: frozenset[Interaction]
) -> frozenset[tuple[Interaction, Interaction]]:
    """The domination pairs both engines must agree on.

    MaximalProgress materializes strict-subset pairs within gamma;
    ExplicitPairs contributes its transitive closure (dominators need
    not belong to gamma).
    """
    if priority is None:
        return frozenset()
    if isinstance(priority, MaximalProgress):
        return frozenset((a, b) for a in gamma for b in gamma if a < b)
    return priority.closure


def filter_priority(
    system: SystemModel, state: GlobalState, candidates: Iterable[Interaction]
) -> frozenset[Interaction]:
    """Drop candidates dominated by an *active* higher-priority interaction.

    Domination is activity-checked only: the dominator must be active at
    `state` but is not required to belong to gamma.
    """
    pairs = effective_pairs(system.priority, system.gamma)
    if not pairs:
        return frozenset(candidates)
    dominators: dict[Interaction, set[Interaction]] = {}
    for lo, hi in pairs:
        dominators.setdefault(lo, set()).add(hi)
    out = set()
    for a in candidates:
        doms = dominators.get(a, ())
        if not any(act(system, state, b) for b in doms):
            out.add(a)
    return frozenset(out)


def survivors(system: SystemModel, state: GlobalState) -> frozenset[Interaction]:
    """Enabled interactions that survive the priority filter."""
    return filter_priority(system, state, enabled(system, state))


def step(
    system: SystemModel,
    state: GlobalState,
    a: Interaction,
    rng: Optional[random.Random] = None,
) -> GlobalState:
    """Fire `a` at `state`; nondeterministic targets resolved by `rng`
    (first declared target if None).  The empty interaction is the
    identity.  Raises NotEnabledError if `a` is not enabled."""
    if not a:
        return state
    if a not in system.gamma or not act(system, state, a):
        raise NotEnabledError(f"interaction {sorted(a)} is not enabled at {state}")
    return _advance(system, state, a, rng)


def _advance(
    system: SystemModel, state: GlobalState, a: Interaction, rng: Optional[random.Random]
) -> GlobalState:
    nxt = list(state)
    for i, atom in enumerate(system.atoms):
        share = a & atom.port_set
        if not share:
            continue
        targets = atom.targets(state[i], share)
        if len(targets) == 1 or rng is None:
            nxt[i] = targets[0]
        else:
            nxt[i] = rng.choice(sorted(targets))
    return tuple(nxt)


def successors(system: SystemModel, state: GlobalState, a: Interaction) -> frozenset[GlobalState]:
    """All states reachable by firing `a` (per-atom target choices expanded)."""
    if not a:
        return frozenset((state,))
    if a not in system.gamma or not act(system, state, a):
        raise NotEnabledError(f"interaction {sorted(a)} is not enabled at {state}")
    outs: list[GlobalState] = [state]
    for i, atom in enumerate(system.atoms):
        share = a & atom.port_set
        if not share:
            continue
        targets = atom.targets(state[i], share)
        outs = [s[:i] + (t,) + s[i + 1:] for s in outs for t in targets]
    return frozenset(outs)


@dataclass(frozen=True)
class ReachableSet:
    states: frozenset[GlobalState]
    truncated: bool


def reachable(system: SystemModel, bound: int = 100000) -> ReachableSet:
    """BFS over priority-filtered steps, truncated at `bound` states."""
    init = system.initial_state()
    seen: set[GlobalState] = {init}
    frontier = [init]
    truncated = False
    while frontier:
        nxt: list[GlobalState] = []
        for s in frontier:
            for a in survivors(system, s):
                for t in successors(system, s, a):
                    if t in seen:
                        continue
                    if len(seen) >= bound:
                        truncated = True
                        return ReachableSet(frozenset(seen), truncated)
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return ReachableSet(frozenset(seen), truncated)


def sorted_interactions(pool: Iterable[Interaction]) -> tuple[Interaction, ...]:
    return tuple(sorted(pool, key=interaction_key))

"""Boolean encoding of a system and the symbolic execution engine.

Encoding, over one variable per state and per port (plus a primed copy
of each port for priorities):

- behavior: per atom, a disjunct per control state (one-hot state cube
  conjoined with the port minterms of its outgoing transitions) plus an
  idle disjunct with all the atom's ports false;
- connectors: per connector, its causal rules conjoined with the root
  clause and with the negation of every port foreign to the connector;
  the system-wide function is the disjunction over connectors;
- priority: pairs (a, a') rendered over unprimed/primed port copies;
  under maximal progress the pair set is the strict-subset relation
  within the pool, which factors algebraically and never needs to be
  enumerated.

A step restricts the system function by the current state valuation,
subtracts interactions dominated by some active higher-priority
interaction, and picks one satisfying valuation of the remainder.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from . import boolfunc as bf
from .bdd import BddManager, BddRef
from .causal import causal_rules, rules_to_formula, tau
from .connectors import Interaction, support
from .model import (
    AtomicBehavior,
    Connector,
    ExplicitPairs,
    GlobalState,
    MaximalProgress,
    SystemModel,
    Trace,
    ValidationError,
    effective_pairs,
    validate,
)

PRIME = "'"


def prime(port: str) -> str:
    return port + PRIME


def state_var(atom: AtomicBehavior, state: str) -> str:
    # dot keeps state variables out of the port namespace
    return f"{atom.name}.{state}"


def variable_order(system: SystemModel) -> tuple[str, ...]:
    """Per atom: its state variables, then each port adjacent to its
    primed copy.  Keeps related variables close and state blocks cheap."""
    order: list[str] = []
    for atom in system.atoms:
        for s in atom.states:
            order.append(state_var(atom, s))
        for p in atom.ports:
            order.append(p)
            order.append(prime(p))
    return tuple(order)


def encode_atom(
    atom: AtomicBehavior, mgr: BddManager, port_name: Callable[[str], str] = lambda p: p
) -> BddRef:
    """Behavior of one atom: state-consistent firings or idleness."""
    parts: list[BddRef] = []
    for q in atom.states:
        onehot = mgr.cube({state_var(atom, s): s == q for s in atom.states})
        labels = atom.labels_from.get(q, frozenset())
        if not labels:
            continue
        firings = mgr.or_all(
            mgr.cube({port_name(p): p in lbl for p in atom.ports}) for lbl in labels
        )
        parts.append(onehot & firings)
    idle = mgr.cube({port_name(p): False for p in atom.ports})
    return mgr.or_all(parts) | idle


def encode_behavior(
    system: SystemModel, mgr: BddManager, port_name: Callable[[str], str] = lambda p: p
) -> BddRef:
    return mgr.and_all(encode_atom(atom, mgr, port_name) for atom in system.atoms)


def _expr_bdd(mgr: BddManager, expr: bf.BoolExpr, port_name: Callable[[str], str]) -> BddRef:
    if isinstance(expr, bf.Var):
        return mgr.var(port_name(expr.name))
    if isinstance(expr, bf.Const):
        return mgr.true if expr.value else mgr.false
    if isinstance(expr, bf.Not):
        return ~_expr_bdd(mgr, expr.arg, port_name)
    if isinstance(expr, bf.And):
        return mgr.and_all(_expr_bdd(mgr, a, port_name) for a in expr.args)
    if isinstance(expr, bf.Or):
        return mgr.or_all(_expr_bdd(mgr, a, port_name) for a in expr.args)
    raise TypeError(f"not a boolean expression: {expr!r}")


def encode_connector(
    conn: Connector,
    all_ports: tuple[str, ...],
    mgr: BddManager,
    port_name: Callable[[str], str] = lambda p: p,
) -> BddRef:
    """Causal rules of one connector, with foreign ports forced false."""
    sup = support(conn.term)
    rules, root_clause = causal_rules(tau(conn.term))
    expr = rules_to_formula(rules, root_clause, sup)
    inside = _expr_bdd(mgr, expr, port_name)
    outside = mgr.cube({port_name(p): False for p in all_ports if p not in sup})
    return inside & outside


def encode_connectors(
    system: SystemModel, mgr: BddManager, port_name: Callable[[str], str] = lambda p: p
) -> BddRef:
    return mgr.or_all(
        encode_connector(c, system.all_ports, mgr, port_name) for c in system.connectors
    )


def encode_priority_pairs(
    pairs: frozenset[tuple[Interaction, Interaction]],
    all_ports: tuple[str, ...],
    mgr: BddManager,
) -> BddRef:
    """Priority relation as full minterms: a over the plain copies, its
    dominator over the primed copies."""
    disjuncts = []
    for lo, hi in sorted(pairs, key=lambda ab: (sorted(ab[0]), sorted(ab[1]))):
        assignment: dict[str, bool] = {p: p in lo for p in all_ports}
        assignment.update({prime(p): p in hi for p in all_ports})
        disjuncts.append(mgr.cube(assignment))
    return mgr.or_all(disjuncts)


def _maxprog_priority(system: SystemModel, mgr: BddManager, connector_fn: BddRef) -> BddRef:
    """Maximal progress without pair enumeration.

    The pair set is {(a, a') in gamma^2 | a strictly below a'}, so the
    relation is: both copies satisfy the connector function and the
    plain copy is a strict subset of the primed copy.  Canonicity makes
    this the same node the minterm route would build.
    """
    primed_fn = encode_connectors(system, mgr, prime)
    ports = system.all_ports
    subset = mgr.and_all(mgr.var(p).implies(mgr.var(prime(p))) for p in ports)
    equal = mgr.and_all(~(mgr.var(p) ^ mgr.var(prime(p))) for p in ports)
    return connector_fn & primed_fn & subset & ~equal


@dataclass
class SystemEncoding:
    system: SystemModel
    manager: BddManager
    behavior_fn: BddRef         # all atoms consistent with their state
    connector_fn: BddRef        # valuations that are pool interactions
    system_fn: BddRef           # behavior & connectors
    priority_fn: BddRef         # domination pairs over plain/primed ports
    primed_behavior_fn: BddRef  # behavior over primed port copies
    port_names: tuple[str, ...]
    primed_names: tuple[str, ...]

    def node_counts(self) -> dict[str, int]:
        m = self.manager
        return {
            "fs_nodes": m.node_count(self.system_fn),
            "fb_nodes": m.node_count(self.behavior_fn),
            "fc_nodes": m.node_count(self.connector_fn),
            "fp_nodes": m.node_count(self.priority_fn),
        }

    def state_assignment(self, state: GlobalState) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for atom, current in zip(self.system.atoms, state):
            for s in atom.states:
                out[state_var(atom, s)] = s == current
        return out

    # Only the behavior factors mention state variables, so each step
    # restricts those and conjoins the static port-only functions; the
    # manager's operation cache then reuses everything below the atoms
    # whose state did not change since some earlier step.

    def enabled_fn(self, state: GlobalState) -> BddRef:
        m = self.manager
        asg = self.state_assignment(state)
        return m.restrict_many(self.behavior_fn, asg) & self.connector_fn

    def survivor_fn(self, state: GlobalState) -> BddRef:
        m = self.manager
        asg = self.state_assignment(state)
        g = m.restrict_many(self.behavior_fn, asg) & self.connector_fn
        if self.priority_fn == m.false:
            return g
        dom = self.priority_fn & m.restrict_many(self.primed_behavior_fn, asg)
        excluded = m.exists(dom, self.primed_names)
        return g & ~excluded

    def survivors(self, state: GlobalState) -> frozenset[Interaction]:
        fn = self.survivor_fn(state)
        return frozenset(self.manager.iter_models(fn, self.port_names))


def build(system: SystemModel) -> SystemEncoding:
    diags = validate(system)
    if diags:
        raise ValidationError(diags)
    mgr = BddManager(variable_order(system))
    behavior = encode_behavior(system, mgr)
    connector_fn = encode_connectors(system, mgr)
    system_fn = behavior & connector_fn
    pr = system.priority
    if pr is None:
        priority_fn = mgr.false
    elif isinstance(pr, MaximalProgress):
        priority_fn = _maxprog_priority(system, mgr, connector_fn)
    elif isinstance(pr, ExplicitPairs):
        priority_fn = encode_priority_pairs(
            effective_pairs(pr, system.gamma), system.all_ports, mgr)
    else:
        raise TypeError(f"unknown priority model: {pr!r}")
    if priority_fn == mgr.false:
        primed_behavior = mgr.false
    else:
        primed_behavior = encode_behavior(system, mgr, prime)
    ports = system.all_ports
    return SystemEncoding(
        system=system,
        manager=mgr,
        behavior_fn=behavior,
        connector_fn=connector_fn,
        system_fn=system_fn,
        priority_fn=priority_fn,
        primed_behavior_fn=primed_behavior,
        port_names=ports,
        primed_names=tuple(prime(p) for p in ports),
    )


class SymbolicEngine:
    """Stepper that works on the encoded system only.

    The per-step work is a restriction of the precomputed functions by
    the current state plus one satisfying-assignment pick; the pool is
    never enumerated.  `greedy_progress` switches the maximal-progress
    pick to repeated extension of an initial pick instead of the
    domination subtraction; survivor queries are unaffected.
    """

    def __init__(self, system: SystemModel, seed: int = 0, greedy_progress: bool = False):
        self.encoding = build(system)
        self.system = system
        self.seed = seed
        self.greedy = greedy_progress and isinstance(system.priority, MaximalProgress)
        self.state: GlobalState = system.initial_state()
        self.steps_taken = 0
        self._rng = random.Random(seed)
        self._port_set = frozenset(system.all_ports)

    def reset(self) -> None:
        self.state = self.system.initial_state()
        self.steps_taken = 0
        self._rng = random.Random(self.seed)

    def survivors(self, state: Optional[GlobalState] = None) -> frozenset[Interaction]:
        return self.encoding.survivors(self.state if state is None else state)

    def _pick(self, fn: BddRef) -> Optional[Interaction]:
        assignment = self.encoding.manager.pick_sat(fn, seed=self._rng.getrandbits(64))
        if assignment is None:
            return None
        return frozenset(p for p in self.encoding.port_names if assignment[p])

    def _pick_greedy(self, state: GlobalState) -> Optional[Interaction]:
        enc = self.encoding
        m = enc.manager
        g = enc.enabled_fn(state)
        a = self._pick(g)
        if a is None:
            return None
        while True:
            for p in enc.port_names:
                if p in a:
                    continue
                extended = g & m.cube({q: True for q in a | {p}})
                if extended != m.false:
                    bigger = self._pick(extended)
                    assert bigger is not None and bigger > a
                    a = bigger
                    break
            else:
                return a

    def step(self) -> Optional[tuple[Interaction, GlobalState]]:
        """Fire one surviving interaction; None signals deadlock."""
        if self.greedy:
            a = self._pick_greedy(self.state)
        else:
            a = self._pick(self.encoding.survivor_fn(self.state))
        if a is None:
            return None
        nxt = list(self.state)
        for i, atom in enumerate(self.system.atoms):
            share = a & atom.port_set
            if not share:
                continue
            targets = atom.targets(self.state[i], share)
            nxt[i] = targets[0] if len(targets) == 1 else self._rng.choice(sorted(targets))
        self.state = tuple(nxt)
        self.steps_taken += 1
        return a, self.state

    def run(self, steps: int) -> Trace:
        initial = self.state
        entries: list[tuple[Interaction, GlobalState]] = []
        deadlocked = False
        t0 = time.perf_counter_ns()
        for _ in range(steps):
            result = self.step()
            if result is None:
                deadlocked = True
                break
            entries.append(result)
        total = time.perf_counter_ns() - t0
        return Trace(initial=initial, steps=tuple(entries), deadlocked=deadlocked, total_ns=total)

"""Enumerative execution engine.

The interaction pool is materialized once at construction.  Every step
scans the entire pool for activity, applies the priority filter over
the active set, and picks one survivor uniformly with the engine's own
seeded generator.  The scan is deliberately linear in the pool size --
this engine is the baseline the symbolic one is measured against -- and
`activity_checks` counts the scans so tests can pin that cost down.
"""

from __future__ import annotations

import random
import time
from typing import Optional

from .connectors import Interaction
from .model import (
    GlobalState,
    SystemModel,
    Trace,
    ValidationError,
    effective_pairs,
    sorted_interactions,
    validate,
)

# participation plan: which atom must take which exact label
_Plan = tuple[tuple[int, Interaction], ...]


class EnumEngine:
    def __init__(self, system: SystemModel, seed: int = 0):
        diags = validate(system)
        if diags:
            raise ValidationError(diags)
        self.system = system
        self.seed = seed
        self.pool: tuple[Interaction, ...] = sorted_interactions(system.gamma)
        self.state: GlobalState = system.initial_state()
        self.steps_taken = 0
        self.activity_checks = 0   # pool scans
        self.priority_checks = 0   # dominator activity probes
        self._rng = random.Random(seed)
        self._labels = [atom.labels_from for atom in system.atoms]
        self._targets = [atom.moves for atom in system.atoms]
        self._plans: list[_Plan] = [self._plan(a) for a in self.pool]
        self._plan_of = dict(zip(self.pool, self._plans))
        pairs = effective_pairs(system.priority, system.gamma)
        dominators: dict[Interaction, list[_Plan]] = {a: [] for a in self.pool}
        for lo, hi in sorted(pairs, key=lambda ab: (sorted(ab[0]), sorted(ab[1]))):
            if lo in dominators:
                dominators[lo].append(self._plan(hi))
        self._dominators = {a: tuple(ps) for a, ps in dominators.items()}

    def _plan(self, a: Interaction) -> _Plan:
        shares: dict[int, set[str]] = {}
        for p in a:
            shares.setdefault(self.system.port_owner[p], set()).add(p)
        return tuple((i, frozenset(ps)) for i, ps in sorted(shares.items()))

    def _active(self, plan: _Plan, state: GlobalState) -> bool:
        labels = self._labels
        return all(label in labels[i][state[i]] for i, label in plan)

    def reset(self) -> None:
        self.state = self.system.initial_state()
        self.steps_taken = 0
        self.activity_checks = 0
        self.priority_checks = 0
        self._rng = random.Random(self.seed)

    def survivors(self, state: Optional[GlobalState] = None) -> frozenset[Interaction]:
        """Active pool interactions not dominated by an active one.

        Scans the whole pool; there is no state-indexed shortcut.
        """
        st = self.state if state is None else state
        active = self._active
        enabled: list[Interaction] = []
        self.activity_checks += len(self.pool)
        for a, plan in zip(self.pool, self._plans):
            if active(plan, st):
                enabled.append(a)
        out = []
        for a in enabled:
            doms = self._dominators[a]
            self.priority_checks += len(doms)
            if not any(active(p, st) for p in doms):
                out.append(a)
        return frozenset(out)

    def step(self) -> Optional[tuple[Interaction, GlobalState]]:
        """Fire one surviving interaction; None signals deadlock."""
        survivors = sorted_interactions(self.survivors())
        if not survivors:
            return None
        a = self._rng.choice(survivors)
        state = self.state
        targets_of = self._targets
        nxt = list(state)
        for i, label in self._plan_of[a]:
            targets = targets_of[i][(state[i], label)]
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

"""Differential check: enumerative vs symbolic survivor sets.

Walks the reachable state space (bounded BFS) and compares, at every
visited state, the survivor set computed by the enumerative engine with
the one read off the symbolic encoding.  Exploration follows the union
of both answers so a divergence in either direction is still expanded.

An explicitly supplied encoding is compared as-is; that is the hook for
the corrupted-encoding negative control in the tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .connectors import Interaction
from .enumerative import EnumEngine
from .model import GlobalState, SystemModel, successors
from .symbolic import SystemEncoding, build


@dataclass(frozen=True)
class Divergence:
    state: GlobalState
    enum_survivors: frozenset[Interaction]
    symbolic_survivors: frozenset[Interaction]


@dataclass
class EquivalenceReport:
    system_name: str
    states_checked: int
    truncated: bool
    divergences: list[Divergence] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.divergences

    def summary(self) -> str:
        if self.equivalent:
            extra = " (truncated)" if self.truncated else ""
            return f"equivalent, {self.states_checked} states{extra}"
        d = self.divergences[0]
        return (
            f"divergence at state {d.state}: "
            f"enumerative {sorted(sorted(a) for a in d.enum_survivors)} vs "
            f"symbolic {sorted(sorted(a) for a in d.symbolic_survivors)} "
            f"({len(self.divergences)} diverging states of {self.states_checked})"
        )


def check_equivalence(
    system: SystemModel,
    bound: int = 10000,
    encoding: Optional[SystemEncoding] = None,
) -> EquivalenceReport:
    enum_engine = EnumEngine(system)
    enc = encoding if encoding is not None else build(system)
    init = system.initial_state()
    seen: set[GlobalState] = {init}
    queue: deque[GlobalState] = deque((init,))
    report = EquivalenceReport(system_name=system.name, states_checked=0, truncated=False)
    while queue:
        state = queue.popleft()
        report.states_checked += 1
        from_enum = enum_engine.survivors(state)
        from_symbolic = enc.survivors(state)
        if from_enum != from_symbolic:
            report.divergences.append(Divergence(state, from_enum, from_symbolic))
        for a in from_enum | from_symbolic:
            if not a:
                continue
            for nxt in successors(system, state, a) if a in system.gamma else ():
                if nxt not in seen:
                    if len(seen) >= bound:
                        # stop growing the frontier, still check what was found
                        report.truncated = True
                        continue
                    seen.add(nxt)
                    queue.append(nxt)
    return report

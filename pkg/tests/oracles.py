"""Independent reference implementations used to cross-check the engines.

Everything here is written directly from the definitions, on purpose
duplicating none of the library code paths: enabledness walks the atom
transition relations, priority filtering recomputes domination from
scratch, and state spaces come from the raw product of state sets.
"""

from itertools import product

from portsync.model import MaximalProgress, ExplicitPairs


def all_states(system):
    return [tuple(s) for s in product(*(a.states for a in system.atoms))]


def oracle_act(system, state, interaction):
    for atom, current in zip(system.atoms, state):
        label = frozenset(interaction & atom.port_set)
        if not label:
            continue
        if not any(
            t.source == current and t.label == label for t in atom.transitions
        ):
            return False
    return True


def oracle_enabled(system, state):
    return {a for a in system.gamma if oracle_act(system, state, a)}


def _oracle_pairs(system):
    pr = system.priority
    if pr is None:
        return set()
    if isinstance(pr, MaximalProgress):
        return {
            (a, b)
            for a in system.gamma
            for b in system.gamma
            if a < b  # frozenset: strict subset
        }
    assert isinstance(pr, ExplicitPairs)
    pairs = set(pr.pairs)
    while True:  # transitive closure by saturation
        extra = {
            (a, c)
            for (a, b) in pairs
            for (b2, c) in pairs
            if b == b2 and (a, c) not in pairs
        }
        if not extra:
            return pairs
        pairs |= extra


def oracle_survivors(system, state):
    en = oracle_enabled(system, state)
    pairs = _oracle_pairs(system)
    return {
        a
        for a in en
        if not any(
            low == a and oracle_act(system, state, high) for (low, high) in pairs
        )
    }


def bdd_table(mgr, f, names):
    """Truth table of f over `names` as an int, row i = assignment bits
    of i with names[0] as the most significant bit."""
    n = len(names)
    out = 0
    for i in range(1 << n):
        asg = {
            name: bool((i >> (n - 1 - k)) & 1) for k, name in enumerate(names)
        }
        if mgr.evaluate(f, asg):
            out |= 1 << i
    return out

"""Core model: activation, priority filtering, stepping, reachability."""

import pytest

from portsync.connectors import PortLeaf, Factor, Fusion
from portsync.model import (
    AtomicBehavior,
    Connector,
    ExplicitPairs,
    MaximalProgress,
    NotEnabledError,
    SystemModel,
    Transition,
    ValidationError,
    act,
    effective_pairs,
    enabled,
    filter_priority,
    reachable,
    sorted_interactions,
    step,
    successors,
    survivors,
    validate,
)
from portsync.generators import gen_bus, modulo8, random_system

from oracles import all_states, oracle_enabled, oracle_survivors


def fz(*names):
    return frozenset(names)


class TestModulo8Basics:
    def test_gamma(self, mod8):
        assert mod8.gamma == {
            fz("p"), fz("p", "q", "r"),
            fz("p", "q", "r", "s", "t"),
            fz("p", "q", "r", "s", "t", "u"),
        }

    def test_initial_enabled(self, mod8):
        s0 = mod8.initial_state()
        assert s0 == ("l1", "l3", "l5")
        assert enabled(mod8, s0) == {fz("p")}

    def test_act_checks_every_participant(self, mod8):
        assert act(mod8, ("l2", "l3", "l5"), fz("p", "q", "r"))
        assert not act(mod8, ("l1", "l3", "l5"), fz("p", "q", "r"))

    def test_act_rejects_foreign_ports(self, mod8):
        with pytest.raises(ValueError):
            act(mod8, mod8.initial_state(), fz("nope"))

    def test_maxprog_pairs(self, mod8):
        pairs = effective_pairs(mod8.priority, mod8.gamma)
        assert len(pairs) == 6  # strict subset pairs among 4 chained sets
        assert (fz("p"), fz("p", "q", "r")) in pairs

    def test_step_and_successors(self, mod8):
        s0 = mod8.initial_state()
        nxt = step(mod8, s0, fz("p"))
        assert nxt == ("l2", "l3", "l5")
        assert successors(mod8, s0, fz("p")) == {("l2", "l3", "l5")}

    def test_empty_interaction_is_identity(self, mod8):
        s0 = mod8.initial_state()
        assert step(mod8, s0, frozenset()) == s0

    def test_step_requires_enabled_pool_member(self, mod8):
        s0 = mod8.initial_state()
        with pytest.raises(NotEnabledError):
            step(mod8, s0, fz("p", "q", "r"))  # in gamma, not enabled
        with pytest.raises(NotEnabledError):
            step(mod8, s0, fz("q"))  # not in gamma at all

    def test_reachable_is_the_full_cycle(self, mod8):
        r = reachable(mod8)
        assert len(r.states) == 8
        assert not r.truncated

    def test_reachable_bound_truncates(self, mod8):
        r = reachable(mod8, bound=3)
        assert r.truncated
        assert len(r.states) == 3


class TestPriorityFiltering:
    def test_broadcast_maximal_progress(self, broadcast_system):
        s0 = broadcast_system.initial_state()
        en = enabled(broadcast_system, s0)
        assert len(en) == 8
        assert survivors(broadcast_system, s0) == {fz("s", "r1", "r2", "r3")}

    def test_filter_drops_dominated_candidates(self, broadcast_system):
        # both candidates lose to the active full broadcast
        pool = {fz("s", "r1"), fz("s", "r2")}
        kept = filter_priority(broadcast_system,
                               broadcast_system.initial_state(), pool)
        assert kept == frozenset()

    def test_explicit_pairs_closure(self):
        a, b, c = fz("x"), fz("y"), fz("z")
        pr = ExplicitPairs((( a, b), (b, c)))
        assert (a, c) in pr.closure

    def test_dominator_outside_gamma_is_activity_checked(self):
        # y dominates x but no connector offers y; x still loses while
        # the y transition is locally active
        atom = AtomicBehavior(
            "A", ("s0", "s1"), "s0", ("x", "y"),
            (Transition("s0", fz("x"), "s1"),
             Transition("s0", fz("y"), "s1")),
        )
        sysm = SystemModel(
            "m", (atom,),
            (Connector("cx", PortLeaf("x")),),
            ExplicitPairs(((fz("x"), fz("y")),)),
        )
        assert validate(sysm) == []
        assert survivors(sysm, ("s0",)) == frozenset()
        assert enabled(sysm, ("s0",)) == {fz("x")}


class TestValidation:
    def good(self):
        return modulo8()

    def test_clean_system(self):
        assert validate(self.good()) == []

    def check(self, sysm, fragment):
        diags = validate(sysm)
        assert diags, f"expected a diagnostic mentioning {fragment!r}"
        assert any(fragment in str(d) for d in diags)

    def test_duplicate_atom_names(self):
        a = AtomicBehavior("A", ("s",), "s", ("p",),
                           (Transition("s", fz("p"), "s"),))
        b = AtomicBehavior("A", ("t",), "t", ("q",),
                           (Transition("t", fz("q"), "t"),))
        self.check(SystemModel("m", (a, b),
                               (Connector("c", PortLeaf("p")),), None), "A")

    def test_bad_init_state(self):
        a = AtomicBehavior("A", ("s",), "nope", ("p",),
                           (Transition("s", fz("p"), "s"),))
        self.check(SystemModel("m", (a,),
                               (Connector("c", PortLeaf("p")),), None), "nope")

    def test_overlapping_ports(self):
        a = AtomicBehavior("A", ("s",), "s", ("p",),
                           (Transition("s", fz("p"), "s"),))
        b = AtomicBehavior("B", ("t",), "t", ("p",),
                           (Transition("t", fz("p"), "t"),))
        self.check(SystemModel("m", (a, b),
                               (Connector("c", PortLeaf("p")),), None), "p")

    def test_unbound_connector_port(self):
        a = AtomicBehavior("A", ("s",), "s", ("p",),
                           (Transition("s", fz("p"), "s"),))
        self.check(SystemModel("m", (a,),
                               (Connector("c", PortLeaf("zz")),), None), "zz")

    def test_transition_label_must_use_own_ports(self):
        a = AtomicBehavior("A", ("s",), "s", ("p",),
                           (Transition("s", fz("q"), "s"),))
        self.check(SystemModel("m", (a,),
                               (Connector("c", PortLeaf("p")),), None), "q")

    def test_priority_cycle_rejected(self):
        a = AtomicBehavior("A", ("s",), "s", ("p", "q"),
                           (Transition("s", fz("p"), "s"),
                            Transition("s", fz("q"), "s"),))
        sysm = SystemModel(
            "m", (a,),
            (Connector("cp", PortLeaf("p")), Connector("cq", PortLeaf("q"))),
            ExplicitPairs(((fz("p"), fz("q")), (fz("q"), fz("p")))),
        )
        diags = validate(sysm)
        assert diags
        with pytest.raises(ValidationError):
            from portsync.symbolic import build
            build(sysm)

    def test_reflexive_pair_rejected(self):
        a = AtomicBehavior("A", ("s",), "s", ("p",),
                           (Transition("s", fz("p"), "s"),))
        sysm = SystemModel(
            "m", (a,), (Connector("cp", PortLeaf("p")),),
            ExplicitPairs(((fz("p"), fz("p")),)),
        )
        assert validate(sysm)


class TestAgainstProductOracle:
    """enabled/survivors equal a direct product-automaton reading."""

    def run_system(self, sysm):
        for state in all_states(sysm):
            assert enabled(sysm, state) == oracle_enabled(sysm, state)
            assert survivors(sysm, state) == oracle_survivors(sysm, state)

    def test_modulo8(self, mod8):
        self.run_system(mod8)

    def test_broadcast(self, broadcast_system):
        self.run_system(broadcast_system)

    def test_bus1(self):
        self.run_system(gen_bus(1))

    def test_random_small(self):
        for seed in range(20):
            self.run_system(random_system(seed))


def test_sorted_interactions_is_stable():
    pool = {fz("b"), fz("a", "b"), fz("a")}
    assert sorted_interactions(pool) == (fz("a"), fz("b"), fz("a", "b"))


def test_trace_properties(mod8):
    from portsync.enumerative import EnumEngine
    tr = EnumEngine(mod8, seed=0).run(4)
    assert len(tr) == 4
    assert tr.initial == mod8.initial_state()
    assert [a for a in tr.interactions] == [s[0] for s in tr.steps]
    assert not tr.deadlocked

"""Causal tree translation, causal rules, and the rule formula."""

import random

from hypothesis import given, settings, strategies as st

from portsync.boolfunc import models
from portsync.causal import (
    CausalNode,
    CausalRule,
    CausalTree,
    canonical,
    causal_rules,
    ct_interactions,
    format_tree,
    rules_to_formula,
    tau,
)
from portsync.connectors import interactions_of, support
from portsync.generators import modulo8, random_monomial_term

from test_connectors import AB, BC, CC, RV, p, syn, trig, Fusion


def node(label, *children):
    return CausalNode(frozenset(label), tuple(children))


def tree(*roots):
    return CausalTree(tuple(roots))


class TestFourSchemeTrees:
    def test_rendezvous(self):
        assert canonical(tau(RV)) == canonical(tree(node({"s", "r1", "r2", "r3"})))

    def test_broadcast(self):
        want = tree(node({"s"}, node({"r1"}), node({"r2"}), node({"r3"})))
        assert canonical(tau(BC)) == canonical(want)

    def test_atomic_broadcast(self):
        want = tree(node({"s"}, node({"r1", "r2", "r3"})))
        assert canonical(tau(AB)) == canonical(want)

    def test_causal_chain(self):
        want = tree(node({"s"}, node({"r1"}, node({"r2"}, node({"r3"})))))
        assert canonical(tau(CC)) == canonical(want)


def test_two_trigger_tree():
    # p'q'[[r's][t'u]] splits into one tree per trigger over the shared
    # synchron product rt -> (s + u)
    term = Fusion((
        trig(p("p")),
        trig(p("q")),
        syn(Fusion((
            syn(Fusion((trig(p("r")), syn(p("s"))))),
            syn(Fusion((trig(p("t")), syn(p("u"))))),
        ))),
    ))
    sub = lambda: node({"r", "t"}, node({"s"}), node({"u"}))
    want = tree(node({"p"}, sub()), node({"q"}, sub()))
    assert canonical(tau(term)) == canonical(want)


def test_chain_rules_and_root_clause():
    x = modulo8().connectors[0].term
    rules, root_clause = causal_rules(tau(x))
    by_head = {r.head: r.body for r in rules}
    mono = lambda *ws: frozenset(frozenset(w) for w in ws)
    assert by_head == {
        "q": mono({"p", "r"}),
        "r": mono({"p", "q"}),
        "s": mono({"q", "r", "t"}),
        "t": mono({"q", "r", "s"}),
        "u": mono({"s", "t"}),
    }
    assert root_clause == frozenset({"p"})


def test_broadcast_rules_drop_vacuous_heads():
    rules, root_clause = causal_rules(tau(BC))
    assert {r.head for r in rules} == {"r1", "r2", "r3"}
    assert all(r.body == frozenset({frozenset({"s"})}) for r in rules)
    assert root_clause == frozenset({"s"})


def test_merged_rule_bodies_union_occurrences():
    # same port under two triggers: each occurrence contributes a monomial
    term = Fusion((
        trig(p("p")),
        trig(p("q")),
        syn(Fusion((
            syn(Fusion((trig(p("r")), syn(p("s"))))),
            syn(Fusion((trig(p("t")), syn(p("u"))))),
        ))),
    ))
    rules, root_clause = causal_rules(tau(term))
    by_head = {r.head: r.body for r in rules}
    assert root_clause == frozenset({"p", "q"})
    assert by_head["r"] == frozenset({frozenset({"p", "t"}), frozenset({"q", "t"})})
    assert by_head["s"] == frozenset({frozenset({"r", "t"})})


def test_rules_formula_matches_interactions():
    for term in (RV, BC, AB, CC):
        rules, root_clause = causal_rules(tau(term))
        f = rules_to_formula(rules, root_clause, support(term))
        got = models(f, sorted(support(term)))
        assert got == set(interactions_of(term)) - {frozenset()}


def test_format_tree():
    s = format_tree(tau(CC))
    assert s == "s -> r1 -> r2 -> r3"
    t = format_tree(canonical(tau(BC)))
    assert "(+)" in t and t.startswith("s ->")


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10_000))
def test_tree_semantics_preservation(seed):
    rng = random.Random(seed)
    ports = [f"x{i}" for i in range(rng.randint(1, 6))]
    term = random_monomial_term(rng, ports, max_depth=4)
    assert ct_interactions(tau(term)) == interactions_of(term)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000))
def test_rule_formula_faithful_on_random_terms(seed):
    rng = random.Random(seed)
    ports = [f"x{i}" for i in range(rng.randint(1, 5))]
    term = random_monomial_term(rng, ports, max_depth=3)
    rules, root_clause = causal_rules(tau(term))
    f = rules_to_formula(rules, root_clause, support(term))
    got = models(f, sorted(support(term)))
    assert got == set(interactions_of(term)) - {frozenset()}


def test_canonical_ignores_sibling_order():
    a = tree(node({"s"}, node({"r1"}), node({"r2"})))
    b = tree(node({"s"}, node({"r2"}), node({"r1"})))
    assert canonical(a) == canonical(b)
    assert a != b

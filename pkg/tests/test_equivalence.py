"""Cross-engine agreement over explored state spaces."""

from portsync.equivalence import check_equivalence
from portsync.generators import gen_bus, gen_tasks, modulo8, random_system
from portsync.symbolic import build


def test_modulo8_equivalent(mod8):
    report = check_equivalence(mod8)
    assert report.equivalent
    assert report.states_checked == 8
    assert report.summary() == "equivalent, 8 states"


def test_tasks_equivalent():
    report = check_equivalence(gen_tasks(2, 1))
    assert report.equivalent
    assert not report.truncated


def test_bus_equivalent():
    report = check_equivalence(gen_bus(2))
    assert report.equivalent
    assert report.states_checked == 256


def test_truncation_is_flagged_not_fatal():
    report = check_equivalence(gen_bus(2), bound=10)
    assert report.truncated
    assert report.states_checked == 10
    assert report.equivalent  # no divergence among the visited states


def test_corrupted_encoding_reports_divergence(mod8):
    enc = build(mod8)
    enc.connector_fn = enc.manager.false  # sabotage: symbolic sees no pool
    report = check_equivalence(mod8, encoding=enc)
    assert not report.equivalent
    d = report.divergences[0]
    assert d.enum_survivors != d.symbolic_survivors
    assert "divergence" in report.summary()


def test_random_systems_equivalent():
    for seed in range(15):
        report = check_equivalence(random_system(seed), bound=2000)
        assert report.equivalent, report.summary()

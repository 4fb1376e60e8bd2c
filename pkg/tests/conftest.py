import pytest

from portsync.connectors import Factor, PortLeaf, Fusion
from portsync.model import (
    AtomicBehavior,
    Connector,
    MaximalProgress,
    SystemModel,
    Transition,
)
from portsync.generators import modulo8


def _loop_atom(name: str, port: str) -> AtomicBehavior:
    # single state, one self-loop
    return AtomicBehavior(
        name=name,
        states=("idle",),
        init="idle",
        ports=(port,),
        transitions=(Transition("idle", frozenset({port}), "idle"),),
    )


def sender_receivers(term) -> SystemModel:
    """One sender S (port s), receivers R1..R3, one connector, maximal progress."""
    atoms = (
        _loop_atom("S", "s"),
        _loop_atom("R1", "r1"),
        _loop_atom("R2", "r2"),
        _loop_atom("R3", "r3"),
    )
    return SystemModel(
        name="sr",
        atoms=atoms,
        connectors=(Connector("c", term),),
        priority=MaximalProgress(),
    )


@pytest.fixture
def mod8():
    return modulo8()


@pytest.fixture
def broadcast_system():
    term = Fusion((
        Factor(PortLeaf("s"), trigger=True),
        Factor(PortLeaf("r1")),
        Factor(PortLeaf("r2")),
        Factor(PortLeaf("r3")),
    ))
    return sender_receivers(term)


@pytest.fixture
def deadlock_system():
    # one consumable transition, then no moves anywhere
    atom = AtomicBehavior(
        name="A",
        states=("s0", "s1"),
        init="s0",
        ports=("k",),
        transitions=(Transition("s0", frozenset({"k"}), "s1"),),
    )
    return SystemModel(
        name="dead",
        atoms=(atom,),
        connectors=(Connector("only", PortLeaf("k")),),
        priority=None,
    )

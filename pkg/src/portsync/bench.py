"""Benchmark harness for the built-in model families.

Timing covers the run loop only; engine construction (pool
materialization, encoding) happens before the clock starts.  Each
measurement does one untimed warm-up run, then `repetitions` timed runs
from a reset engine; the reported row is the median repetition by total
time.  Symbolic rows carry the node counts of the encoded functions,
enumerative rows leave them empty.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Optional, Union

from .enumerative import EnumEngine
from .generators import gen_bus, gen_tasks
from .model import SystemModel
from .symbolic import SymbolicEngine

CSV_HEADER = "example,engine,n,m,steps,total_ns,mean_step_ns,fs_nodes,fb_nodes,fc_nodes,fp_nodes,seed"

EXAMPLES = ("bus", "tasks")
ENGINES = ("enum", "symbolic")


@dataclass(frozen=True)
class BenchRecord:
    example: str
    engine: str
    n: int
    m: Optional[int]
    steps: int             # steps actually executed (may stop early on deadlock)
    total_ns: int
    mean_step_ns: float
    fs_nodes: Optional[int]
    fb_nodes: Optional[int]
    fc_nodes: Optional[int]
    fp_nodes: Optional[int]
    seed: int

    def csv_row(self) -> str:
        def cell(v) -> str:
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.3f}"
            return str(v)

        return ",".join(cell(v) for v in (
            self.example, self.engine, self.n, self.m, self.steps,
            self.total_ns, self.mean_step_ns,
            self.fs_nodes, self.fb_nodes, self.fc_nodes, self.fp_nodes,
            self.seed,
        ))


def make_system(example: str, n: int, m: Optional[int]) -> SystemModel:
    if example == "bus":
        return gen_bus(n)
    if example == "tasks":
        return gen_tasks(n, m if m is not None else 1)
    raise ValueError(f"unknown example {example!r} (expected one of {EXAMPLES})")


def make_engine(system: SystemModel, engine: str, seed: int) -> Union[EnumEngine, SymbolicEngine]:
    if engine == "enum":
        return EnumEngine(system, seed=seed)
    if engine == "symbolic":
        return SymbolicEngine(system, seed=seed)
    raise ValueError(f"unknown engine {engine!r} (expected one of {ENGINES})")


def bench(
    example: str,
    n: int,
    m: Optional[int],
    steps: int,
    seed: int,
    engine: str,
    repetitions: int = 1,
    warmup_steps: Optional[int] = None,
) -> BenchRecord:
    """One benchmark point; returns the median repetition."""
    if steps < 1:
        raise ValueError("steps must be positive")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    system = make_system(example, n, m)
    runner = make_engine(system, engine, seed)
    warm = steps if warmup_steps is None else warmup_steps
    if warm:
        runner.run(warm)
    samples: list[tuple[int, int]] = []  # (total_ns, executed)
    for _ in range(repetitions):
        runner.reset()
        trace = runner.run(steps)
        samples.append((trace.total_ns, len(trace)))
    median_total = statistics.median(t for t, _ in samples)
    total, executed = min(samples, key=lambda te: abs(te[0] - median_total))
    if engine == "symbolic":
        counts = runner.encoding.node_counts()
    else:
        counts = {"fs_nodes": None, "fb_nodes": None, "fc_nodes": None, "fp_nodes": None}
    return BenchRecord(
        example=example,
        engine=engine,
        n=n,
        m=m if example == "tasks" else None,
        steps=executed,
        total_ns=total,
        mean_step_ns=(total / executed) if executed else 0.0,
        fs_nodes=counts["fs_nodes"],
        fb_nodes=counts["fb_nodes"],
        fc_nodes=counts["fc_nodes"],
        fp_nodes=counts["fp_nodes"],
        seed=seed,
    )


def write_csv(records: list[BenchRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional


MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenConfig:
    """Knobs shared by the term generators and the suites."""

    seed: int = 0
    max_size: int = 12
    var_pool: int = 3
    atom_pool: int = 2
    closed: bool = False
    annotated: bool = False
    trials: int = 1000

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.var_pool < 1 or self.atom_pool < 1:
            raise ValueError("var_pool and atom_pool must be at least 1")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")

    def trial_seed(self, i: int) -> int:
        return (self.seed * 1_000_003 + i) & MASK64


@dataclass(frozen=True)
class Counterexample:
    term: str
    seed: Optional[int]
    details: str


@dataclass
class SuiteReport:
    suite: str
    attempted: int = 0
    passed: int = 0
    vacuous: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    wall_time: float = 0.0
    notes: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def record(self, verdict: str, term: str = "", seed: Optional[int] = None,
               details: str = "") -> None:
        """Count one trial; ``verdict`` is "pass", "vacuous" or "fail"."""
        self.attempted += 1
        if verdict == "pass":
            self.passed += 1
        elif verdict == "vacuous":
            self.vacuous += 1
        elif verdict == "fail":
            self.counterexamples.append(Counterexample(term, seed, details))
        else:
            raise ValueError(f"unknown verdict {verdict!r}")

    def note(self, key: str, by: int = 1) -> None:
        self.notes[key] = self.notes.get(key, 0) + by

    def finish(self) -> "SuiteReport":
        self.counterexamples.sort(key=lambda c: (c.seed is not None, c.seed or 0, c.term))
        assert self.passed + self.vacuous + len(self.counterexamples) == self.attempted
        return self

    def to_text(self, with_time: bool = True) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [
            f"suite {self.suite}: {status}",
            f"  attempted {self.attempted}, passed {self.passed}, vacuous {self.vacuous}, "
            f"counterexamples {len(self.counterexamples)}",
        ]
        for key in sorted(self.notes):
            lines.append(f"  {key} = {self.notes[key]}")
        for c in self.counterexamples:
            seed = "corpus" if c.seed is None else str(c.seed)
            lines.append(f"  counterexample [seed {seed}] {c.term} :: {c.details}")
        if with_time:
            lines.append(f"  wall time {self.wall_time:.2f}s")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["ok"] = self.ok
        data["notes"] = dict(sorted(self.notes.items()))
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

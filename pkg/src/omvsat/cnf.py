"""
CNF clause sets: data model, DIMACS ingestion and classical truth semantics.

The exhaustive satisfiability sweep here is the ground truth every other
module is checked against, so it is deliberately the dumbest possible
evaluator: no propagation, no pruning.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

MAX_ENUMERATE_VARS = 30

# assignments evaluated per numpy batch in the exhaustive sweep
_SWEEP_CHUNK = 1 << 20


class CNFError(ValueError):
    """Raised for malformed DIMACS input or an invalid clause set."""


@dataclass(frozen=True)
class Literal:
    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise CNFError(f"variable index must be >= 1, got {self.variable}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise CNFError("0 is not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def value(self, bits: Sequence[int]) -> int:
        v = 1 if bits[self.variable - 1] else 0
        return 1 - v if self.negated else v

    def __str__(self) -> str:
        return ("~x" if self.negated else "x") + str(self.variable)


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals. Listing order is kept; the compiler depends on it."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise CNFError("empty clause")
        seen = set()
        for lit in self.literals:
            if lit.variable in seen:
                raise CNFError(f"duplicate variable x{lit.variable} in clause")
            seen.add(lit.variable)

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "Clause":
        return cls(tuple(Literal.from_int(v) for v in values))

    def to_ints(self) -> list[int]:
        return [lit.to_int() for lit in self.literals]

    @property
    def negated_count(self) -> int:
        return sum(lit.negated for lit in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.literals) + "}"


@dataclass(frozen=True)
class ClauseSet:
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 1:
            raise CNFError(f"variable count must be >= 1, got {self.n}")
        if not self.clauses:
            raise CNFError("clause set must contain at least one clause")
        for clause in self.clauses:
            for lit in clause:
                if lit.variable > self.n:
                    raise CNFError(
                        f"variable x{lit.variable} out of range for n={self.n}"
                    )

    @classmethod
    def from_lists(cls, n: int, clauses: Iterable[Iterable[int]]) -> "ClauseSet":
        """Build from DIMACS-style signed integers, e.g. ``[[1, -2], [3]]``."""
        return cls(n, tuple(Clause.from_ints(c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def cards(self) -> list[int]:
        return [len(c) for c in self.clauses]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(map(str, c.to_ints())) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str | TextIO) -> ClauseSet:
    """Parse DIMACS CNF text (or an open text stream) into a ClauseSet.

    Clauses may span lines; a ``%`` line (SATLIB trailer) ends the input.
    """
    if not isinstance(text, str):
        text = text.read()

    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise CNFError(f"line {lineno}: second problem header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CNFError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CNFError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 1 or header[1] < 1:
                raise CNFError(f"line {lineno}: header counts must be positive")
            continue
        if header is None:
            raise CNFError(f"line {lineno}: clause data before problem header")
        for tok in line.split():
            try:
                value = int(tok)
            except ValueError:
                raise CNFError(f"line {lineno}: bad token {tok!r}") from None
            if value == 0:
                if not current:
                    raise CNFError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
                continue
            if abs(value) > header[0]:
                raise CNFError(
                    f"line {lineno}: variable {abs(value)} out of range 1..{header[0]}"
                )
            current.append(value)

    if header is None:
        raise CNFError("missing problem header 'p cnf <n> <m>'")
    if current:
        # tolerate a missing terminator on the final clause
        clauses.append(current)
    n, m = header
    if len(clauses) != m:
        raise CNFError(f"header declares {m} clauses, found {len(clauses)}")
    return ClauseSet.from_lists(n, clauses)


def load_dimacs(path: str | Path) -> ClauseSet:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


def _check_assignment(bits: Sequence[int], n: int) -> None:
    if len(bits) < n:
        raise ValueError(f"assignment has {len(bits)} bits, needs {n}")


def eval_clause(bits: Sequence[int], clause: Clause) -> int:
    """Truth value of one clause: OR over its literals."""
    for lit in clause:
        if lit.value(bits):
            return 1
    return 0


def eval_clause_set(bits: Sequence[int], cs: ClauseSet) -> int:
    """Truth value of the clause set: AND over clauses, in order."""
    _check_assignment(bits, cs.n)
    for clause in cs.clauses:
        if not eval_clause(bits, clause):
            return 0
    return 1


def _satisfying_mask(cs: ClauseSet, start: int, stop: int) -> np.ndarray:
    # index k encodes the assignment with x_1 as the most significant bit,
    # so increasing k is lexicographic order over (e_1, ..., e_n)
    k = np.arange(start, stop, dtype=np.int64)
    ok = np.ones(stop - start, dtype=bool)
    for clause in cs.clauses:
        sat = np.zeros(stop - start, dtype=bool)
        for lit in clause:
            bit = ((k >> (cs.n - lit.variable)) & 1).astype(bool)
            sat |= ~bit if lit.negated else bit
        ok &= sat
    return ok


def _index_to_bits(k: int, n: int) -> tuple[int, ...]:
    return tuple((k >> (n - i)) & 1 for i in range(1, n + 1))


def enumerate_satisfying(cs: ClauseSet) -> tuple[int, list[tuple[int, ...]]]:
    """Exhaustive sweep over all 2^n assignments.

    Returns ``(r, witnesses)`` where witnesses are the satisfying assignments
    as 0/1 tuples ``(e_1, ..., e_n)`` in lexicographic order.
    """
    if cs.n > MAX_ENUMERATE_VARS:
        raise ValueError(
            f"exhaustive sweep limited to n <= {MAX_ENUMERATE_VARS}, got n={cs.n}"
        )
    total = 1 << cs.n
    witnesses: list[tuple[int, ...]] = []
    for start in range(0, total, _SWEEP_CHUNK):
        stop = min(total, start + _SWEEP_CHUNK)
        hits = np.flatnonzero(_satisfying_mask(cs, start, stop))
        witnesses.extend(_index_to_bits(start + int(h), cs.n) for h in hits)
    return len(witnesses), witnesses


def count_satisfying(cs: ClauseSet) -> int:
    """Same sweep as :func:`enumerate_satisfying` without materializing witnesses."""
    if cs.n > MAX_ENUMERATE_VARS:
        raise ValueError(
            f"exhaustive sweep limited to n <= {MAX_ENUMERATE_VARS}, got n={cs.n}"
        )
    total = 1 << cs.n
    return sum(
        int(_satisfying_mask(cs, s, min(total, s + _SWEEP_CHUNK)).sum())
        for s in range(0, total, _SWEEP_CHUNK)
    )

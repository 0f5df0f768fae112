"""
Register layout and gate-level synthesis of the SAT circuit.

Qubit lines are numbered 1..N. Lines 1..n carry the variables, the next
mu lines are dust (OR/AND intermediates, never uncomputed) and line N
receives the truth value of the whole clause set.

Per clause k the work region starts at ``s[k]``. A clause of cardinality c
needs c-1 OR targets (or one copy line when c == 1); every clause except
the first also owns the line that stores the running conjunction.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

from .cnf import ClauseSet, Literal


class GateError(ValueError):
    pass


@dataclass(frozen=True)
class Not:
    target: int
    kind = "X"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class CNot:
    control: int
    target: int
    kind = "CX"

    def __post_init__(self):
        if self.control == self.target:
            raise GateError(f"CX control and target coincide: {self.control}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class CCNot:
    control1: int
    control2: int
    target: int
    kind = "CCX"

    def __post_init__(self):
        if len({self.control1, self.control2, self.target}) != 3:
            raise GateError(f"CCX indices must be distinct: {self.qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control1, self.control2, self.target)


@dataclass(frozen=True)
class Hadamard:
    target: int
    kind = "H"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


Gate = Union[Not, CNot, CCNot, Hadamard]
GATE_KINDS = ("H", "X", "CX", "CCX")
_BY_KIND = {"H": Hadamard, "X": Not, "CX": CNot, "CCX": CCNot}


def _delta1(card: int) -> int:
    return 1 if card == 1 else 0


@dataclass(frozen=True)
class RegisterLayout:
    n: int
    m: int
    cards: tuple[int, ...]
    deltas: tuple[int, ...]
    s: tuple[int, ...]
    s_f: int
    mu: int
    width: int
    clause_out: tuple[int, ...]
    and_targets: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.width

    @property
    def result_qubit(self) -> int:
        return self.width


def compute_layout(cs: ClauseSet) -> RegisterLayout:
    n, m = cs.n, cs.m
    cards = tuple(cs.cards)
    deltas = tuple(_delta1(c) for c in cards)
    span = [c + d for c, d in zip(cards, deltas)]

    s = [n + 1]
    if m >= 2:
        s.append(s[0] + span[0] - 1)
    for i in range(2, m):
        s.append(s[-1] + span[i - 1])
    s_f = s[-1] - 1 + span[-1]

    if m == 1:
        # the register needs one line past s_f for the final copy
        mu = span[0] - 1
        clause_out = (s[0] + span[0] - 2,)
        and_targets = (n + mu + 1,)
    else:
        mu = s_f - 1 - n
        outs = [s[1] - 1]
        outs += [s[k + 1] - 2 for k in range(1, m - 1)]
        outs.append(s[-1] + span[-1] - 2)
        clause_out = tuple(outs)
        targets = [s[k + 1] - 1 for k in range(1, m - 1)]
        targets.append(s[-1] + span[-1] - 1)
        and_targets = tuple(targets)

    return RegisterLayout(
        n=n,
        m=m,
        cards=cards,
        deltas=deltas,
        s=tuple(s),
        s_f=s_f,
        mu=mu,
        width=n + mu + 1,
        clause_out=clause_out,
        and_targets=and_targets,
    )


def expand_or(u: int, v: int, w: int, neg_u: bool = False, neg_v: bool = False) -> list[Gate]:
    """OR of lines u and v into a fresh line w, with optional input negation.

    The three base gates commute while w starts at 0; they are emitted in
    the order CCX, CX(v), CX(u).
    """
    if len({u, v, w}) != 3:
        raise GateError(f"OR indices must be distinct: {(u, v, w)}")
    pre = [Not(q) for q, neg in ((u, neg_u), (v, neg_v)) if neg]
    base: list[Gate] = [CCNot(u, v, w), CNot(v, w), CNot(u, w)]
    return pre + base + pre[::-1]


def expand_clause(cs: ClauseSet, layout: RegisterLayout, k: int) -> list[Gate]:
    """Gates computing t(C_k) onto ``layout.clause_out[k - 1]`` (k is 1-based)."""
    if not 1 <= k <= cs.m:
        raise IndexError(f"clause index {k} outside 1..{cs.m}")
    lits: tuple[Literal, ...] = cs.clauses[k - 1].literals
    sk = layout.s[k - 1]

    if len(lits) == 1:
        gates: list[Gate] = [CNot(lits[0].variable, sk)]
        if lits[0].negated:
            gates.append(Not(sk))
        return gates

    a, b = lits[0], lits[1]
    gates = expand_or(a.variable, b.variable, sk, a.negated, b.negated)
    for i in range(1, len(lits) - 1):
        lit = lits[i + 1]
        gates += expand_or(lit.variable, sk + i - 1, sk + i, lit.negated, False)
    return gates


def expand_and_chain(cs: ClauseSet, layout: RegisterLayout) -> list[Gate]:
    out, targets = layout.clause_out, layout.and_targets
    if cs.m == 1:
        return [CNot(out[0], targets[0])]
    gates: list[Gate] = []
    running = out[0]
    for k in range(1, cs.m):
        gates.append(CCNot(running, out[k], targets[k - 1]))
        running = targets[k - 1]
    return gates


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...]
    layout: RegisterLayout | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.qubits:
                if not 1 <= q <= self.width:
                    raise GateError(f"{g} addresses qubit {q} outside 1..{self.width}")

    @property
    def N(self) -> int:
        return self.width

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def logic_only(self) -> "Circuit":
        """The circuit without its Hadamard prefix (a classical reversible map)."""
        return Circuit(
            self.width,
            tuple(g for g in self.gates if not isinstance(g, Hadamard)),
            self.layout,
        )

    def reversed(self) -> "Circuit":
        # every gate kind used here is its own inverse
        return Circuit(self.width, self.gates[::-1], self.layout)


def synthesize(cs: ClauseSet) -> Circuit:
    layout = compute_layout(cs)
    gates: list[Gate] = [Hadamard(i) for i in range(1, cs.n + 1)]
    for k in range(1, cs.m + 1):
        gates += expand_clause(cs, layout, k)
    gates += expand_and_chain(cs, layout)
    return Circuit(layout.width, tuple(gates), layout)


@dataclass(frozen=True)
class GateCensus:
    counts: dict[str, int]
    total: int

    def __getitem__(self, kind: str) -> int:
        return self.counts[kind]


def gate_census(circuit: Circuit | Iterable[Gate]) -> GateCensus:
    tally = Counter(g.kind for g in circuit)
    counts = {kind: tally.get(kind, 0) for kind in GATE_KINDS}
    return GateCensus(counts, sum(counts.values()))


def _format_gate(g: Gate) -> str:
    return " ".join([g.kind, *map(str, g.qubits)])


def circuit_to_text(circuit: Circuit) -> str:
    """Serialize as ``qubits N``, ``#`` layout comments, then one gate per line."""
    lines = [f"qubits {circuit.width}"]
    lay = circuit.layout
    if lay is not None:
        lines += [
            f"# n={lay.n} m={lay.m}",
            "# cards=" + ",".join(map(str, lay.cards)),
            "# s_k=" + ",".join(map(str, lay.s)),
            f"# s_f={lay.s_f}",
            f"# mu={lay.mu}",
            "# clause_out=" + ",".join(map(str, lay.clause_out)),
        ]
    lines += [_format_gate(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    """Inverse of :func:`circuit_to_text`; layout comments are ignored."""
    width = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *args = line.split()
        if head == "qubits":
            width = int(args[0])
            continue
        if head not in _BY_KIND:
            raise GateError(f"line {lineno}: unknown gate {head!r}")
        gates.append(_BY_KIND[head](*map(int, args)))
    if width is None:
        raise GateError("missing 'qubits N' header")
    return Circuit(width, tuple(gates))

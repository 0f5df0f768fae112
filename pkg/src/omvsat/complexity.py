"""
Gate-count complexity: closed forms, bounds and the combined report.

T_Q is the number of elementary gates in the compiled circuit, T_C the
amplifier step budget and their product the cost of the whole algorithm.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .amplifier import t_c
from .cnf import ClauseSet
from .compiler import GateCensus


class ComplexityError(RuntimeError):
    """Measured and closed-form counts disagree: a compiler or census bug."""


def t_q_uncorrected(cs: ClauseSet) -> int:
    """3 * sum(card - 1) + 2 * (negated literals) + (m - 1) + n.

    Leaves out the copy gates emitted for single-literal clauses and the
    final copy when m == 1, and double-counts the inverter of a negated
    single-literal clause (it is applied once, after the copy).
    """
    ors = sum(3 * (len(c) - 1) + 2 * c.negated_count for c in cs.clauses)
    return ors + (cs.m - 1) + cs.n


def t_q_closed_form(cs: ClauseSet) -> int:
    """Exact gate count of :func:`omvsat.compiler.synthesize`."""
    ors = 0
    for c in cs.clauses:
        if len(c) == 1:
            ors += 1 + c.negated_count
        else:
            ors += 3 * (len(c) - 1) + 2 * c.negated_count
    ands = max(cs.m - 1, 1)
    return ors + ands + cs.n


def t_q_bound(n: int, m: int) -> int:
    if n < 1 or m < 1:
        raise ValueError(f"need n, m >= 1, got n={n}, m={m}")
    return 8 * m * n - 2 * m + n - 1


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    m: int
    t_q_measured: int
    t_q_closed_form: int
    t_q_uncorrected: int
    t_q_bound: int
    t_c: int
    total: int
    total_bound: int

    def to_dict(self) -> dict:
        return asdict(self)


def report(cs: ClauseSet, census: GateCensus) -> ComplexityReport:
    measured = census.total
    closed = t_q_closed_form(cs)
    bound = t_q_bound(cs.n, cs.m)
    steps = t_c(cs.n)
    rep = ComplexityReport(
        n=cs.n,
        m=cs.m,
        t_q_measured=measured,
        t_q_closed_form=closed,
        t_q_uncorrected=t_q_uncorrected(cs),
        t_q_bound=bound,
        t_c=steps,
        total=measured * steps,
        total_bound=bound * steps,
    )
    if measured != closed:
        raise ComplexityError(f"census {measured} != closed form {closed}")
    if measured > bound:
        raise ComplexityError(f"census {measured} exceeds bound {bound}")
    return rep

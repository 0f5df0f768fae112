"""Exit criteria for the build; run with ``pytest tests/test_acceptance.py -v``."""
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from omvsat.amplifier import (
    LogisticParams,
    amplify,
    reduced_denominator_lower_bound,
    step_bounds,
    t_c,
)
from omvsat.cnf import enumerate_satisfying, eval_clause_set
from omvsat.compiler import CCNot, CNot, Not, compute_layout, gate_census, synthesize
from omvsat.complexity import report, t_q_bound, t_q_closed_form
from omvsat.simulator import basis_state, propagate_lines, run, simulate, truth_table_run, unpack_line

from conftest import random_clause_set

NORM_TOL = 1e-9
# dense-engine instances are drawn with at most this many qubits (2^20 amplitudes)
DENSE_WIDTH = 20


def _contains(seq, sub):
    seq, sub = list(seq), list(sub)
    return any(seq[i : i + len(sub)] == sub for i in range(len(seq) - len(sub) + 1))


def _or(u, v, w, neg_u=False, neg_v=False):
    wrap = [Not(q) for q, neg in ((u, neg_u), (v, neg_v)) if neg]
    return wrap + [CCNot(u, v, w), CNot(v, w), CNot(u, w)] + wrap[::-1]


@pytest.mark.criterion(1, "worked-example layout s=(5,7,10,12), s_f=14, mu=9, N=14")
def test_ac01_layout(worked):
    lay = compute_layout(worked)
    assert lay.s == (5, 7, 10, 12)
    assert (lay.s_f, lay.mu, lay.width) == (14, 9, 14)


@pytest.mark.criterion(2, "worked-example q^2 = 7/16 on both engines")
def test_ac02_probability(worked):
    c = synthesize(worked)
    assert truth_table_run(worked, c) == (7, Fraction(7, 16))
    t0 = time.perf_counter()
    q2 = simulate(c).q_squared
    elapsed = time.perf_counter() - t0
    assert c.width == 14
    assert abs(q2 - 7 / 16) <= NORM_TOL
    assert elapsed < 1.0


@pytest.mark.criterion(3, "worked-example gate subsequences and 36-gate census")
def test_ac03_gate_structure(worked):
    c = synthesize(worked)
    gates = c.gates
    assert _contains(gates, _or(2, 5, 6, neg_u=True))
    assert _contains(gates, _or(2, 3, 7) + _or(4, 7, 8))
    assert _contains(gates, [CCNot(6, 8, 9), CCNot(9, 10, 11), CCNot(11, 13, 14)])
    census = gate_census(c)
    assert census.total == 36 == t_q_closed_form(worked)


@pytest.mark.criterion(4, "three-clause example SAT, witness (0,0,0,1), r=10, q^2=10/16")
def test_ac04_example1(example1):
    r, wit = enumerate_satisfying(example1)
    assert r == 10 and (0, 0, 0, 1) in wit
    c = synthesize(example1)
    assert truth_table_run(example1, c) == (10, Fraction(10, 16))
    assert abs(simulate(c).q_squared - 10 / 16) <= NORM_TOL


@pytest.mark.criterion(5, "200 random instances: dense q^2 = r/2^n, q^2 = 0 iff UNSAT")
def test_ac05_projector_property():
    rng = random.Random(5)
    unsat_seen = sat_seen = 0
    for _ in range(200):
        cs = random_clause_set(rng, n_max=6, m_max=8, max_card=3, max_width=DENSE_WIDTH)
        r, _ = enumerate_satisfying(cs)
        q2 = simulate(synthesize(cs)).q_squared
        assert abs(q2 - r / 2**cs.n) <= NORM_TOL
        assert (q2 == 0.0) == (r == 0)
        unsat_seen += r == 0
        sat_seen += r > 0
    assert unsat_seen and sat_seen


def _check_combinational(cs):
    c = synthesize(cs).logic_only()
    lines = propagate_lines(cs.n, c)
    total = 1 << cs.n
    for i in range(1, cs.n + 1):
        got = unpack_line(lines[i], cs.n)
        assert got.tolist() == [(a >> (i - 1)) & 1 for a in range(total)]
    result = unpack_line(lines[c.width], cs.n).tolist()
    for a in range(total):
        eps = tuple((a >> (i - 1)) & 1 for i in range(1, cs.n + 1))
        assert result[a] == eval_clause_set(eps, cs)


@pytest.mark.criterion(6, "exhaustive combinational correctness, n <= 10")
def test_ac06_combinational(worked, example1):
    rng = random.Random(6)
    _check_combinational(worked)
    _check_combinational(example1)
    for _ in range(60):
        _check_combinational(random_clause_set(rng, n_max=10, m_max=12, max_card=5))


@pytest.mark.criterion(7, "100 random instances: circuit then reverse returns |0^N>")
def test_ac07_reversibility():
    rng = random.Random(7)
    for _ in range(100):
        cs = random_clause_set(rng, n_max=6, m_max=8, max_card=3, max_width=DENSE_WIDTH)
        c = synthesize(cs)
        s = run(c, basis_state(c.width))
        run(c.reversed(), s)
        expect = np.zeros_like(s.amplitudes)
        expect[0] = 1
        assert np.abs(s.amplitudes - expect).max() <= NORM_TOL


@pytest.mark.criterion(8, "amplify(1/2^12) crosses at m*=6 within [5, 13] and <= 24")
def test_ac08_crossing():
    n = 12
    tr = amplify(1 / 2**n, LogisticParams(a=3.71, max_steps=2 * n))
    assert tr.m_star == 6
    lower, upper = step_bounds(n, 1)
    assert lower == 5 and upper == t_c(12) == 13
    assert lower <= tr.m_star <= upper and tr.m_star <= 2 * n


@pytest.mark.criterion(9, "bound sweep n=2..16, all r: lower <= m* <= floor(5(n-1)/4)")
def test_ac09_bound_sweep():
    t0 = time.perf_counter()
    reduced_denominator_violations = 0
    for n in range(2, 17):
        params = LogisticParams.for_n(n)
        for r in range(1, 2 ** (n - 1) + 1):
            m_star = amplify(r / 2**n, params).m_star
            lower, upper = step_bounds(n, r)
            assert m_star is not None
            assert lower <= m_star <= 5 * (n - 1) // 4 == upper, (n, r, m_star)
            reduced_denominator_violations += reduced_denominator_lower_bound(n, r) > m_star
    assert time.perf_counter() - t0 < 60
    # the (log2 3.71 - 1) denominator is refuted by the same sweep
    assert reduced_denominator_violations > 0


@pytest.mark.criterion(10, "500 random instances: census = closed form <= 8mn-2m+n-1")
def test_ac10_complexity_bounds():
    rng = random.Random(10)
    for _ in range(500):
        cs = random_clause_set(rng, n_max=10, m_max=30, max_card=10)
        census = gate_census(synthesize(cs))
        assert census.total == t_q_closed_form(cs) <= t_q_bound(cs.n, cs.m)
        rep = report(cs, census)
        assert rep.t_c == 5 * (cs.n - 1) // 4
        assert rep.total == rep.t_q_measured * rep.t_c


@pytest.mark.criterion(11, "product bound evaluated and polynomially dominated")
def test_ac11_product_bound():
    rng = random.Random(11)
    for _ in range(200):
        cs = random_clause_set(rng, n_max=10, m_max=30, max_card=10)
        rep = report(cs, gate_census(synthesize(cs)))
        assert rep.total_bound == t_q_bound(cs.n, cs.m) * t_c(cs.n)
        assert rep.total <= rep.total_bound
    # (8mn - 2m + n - 1) * floor(5(n-1)/4) <= 11.25 m n^2 for all n, m >= 1
    for n in range(1, 300):
        for m in (1, 2, 10, 100, 1000):
            assert t_q_bound(n, m) * t_c(n) <= 11.25 * m * n * n

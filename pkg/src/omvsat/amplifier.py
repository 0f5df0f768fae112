"""
Chaos amplification of the success probability with the logistic map.

The amplifier state after m steps is diagonal,
rho_m = diag((1 + x_m) / 2, (1 - x_m) / 2), whose sigma_3 expectation is
the m-th logistic iterate x_m of x_0 = q^2. A measurement is decisive once
x_m exceeds 1/2.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

DEFAULT_A = 3.71
THRESHOLD = 0.5
MAX_GRID_VARS = 20


def logistic_step(x: float, a: float = DEFAULT_A) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if not 0.0 <= a <= 4.0:
        raise ValueError(f"a must lie in [0, 4], got {a}")
    return a * x * (1.0 - x)


def t_c(n: int) -> int:
    """Amplifier step budget floor(5(n-1)/4)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 5 * (n - 1) // 4


def default_max_steps(n: int) -> int:
    return max(2 * n, t_c(n))


@dataclass(frozen=True)
class LogisticParams:
    a: float = DEFAULT_A
    max_steps: int = 64
    threshold: float = THRESHOLD

    def __post_init__(self):
        if not 0.0 <= self.a <= 4.0:
            raise ValueError(f"a must lie in [0, 4], got {self.a}")
        if self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")

    @classmethod
    def for_n(cls, n: int, a: float = DEFAULT_A) -> "LogisticParams":
        return cls(a=a, max_steps=default_max_steps(n))


@dataclass(frozen=True)
class AmplificationTrace:
    a: float
    orbit: tuple[float, ...]
    m_star: int | None

    @property
    def x0(self) -> float:
        return self.orbit[0]

    @property
    def crossed(self) -> bool:
        return self.m_star is not None

    def write_csv(self, fh: TextIO) -> None:
        """``step,x`` rows at 17 significant digits, then a ``# m_star=`` row."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["step", "x"])
        for step, x in enumerate(self.orbit):
            writer.writerow([step, f"{x:.17g}"])
        fh.write(f"# m_star={'' if self.m_star is None else self.m_star}\n")


def amplify(q2: float, params: LogisticParams | None = None) -> AmplificationTrace:
    """Iterate from x_0 = q^2 until x_m > threshold or max_steps is reached."""
    params = params or LogisticParams()
    if not 0.0 <= q2 <= 1.0:
        raise ValueError(f"q^2 must lie in [0, 1], got {q2}")
    x = float(q2)
    orbit = [x]
    m_star = 0 if x > params.threshold else None
    while m_star is None and len(orbit) <= params.max_steps:
        x = logistic_step(x, params.a)
        orbit.append(x)
        if x > params.threshold:
            m_star = len(orbit) - 1
    return AmplificationTrace(params.a, tuple(orbit), m_star)


def step_bounds(n: int, r: int, a: float = DEFAULT_A) -> tuple[int, int]:
    """Lower and upper bounds on the crossing step for q^2 = r / 2^n.

    lower = floor((n - 1 - log2 r) / log2 a), clamped at 0;
    upper = floor(5(n - 1) / 4).
    """
    if n < 1 or not 1 <= r <= (1 << n):
        raise ValueError(f"need n >= 1 and 1 <= r <= 2^n, got n={n}, r={r}")
    lower = math.floor((n - 1 - math.log2(r)) / math.log2(a))
    return max(0, lower), t_c(n)


def reduced_denominator_lower_bound(n: int, r: int, a: float = DEFAULT_A) -> int:
    """Lower bound with the alternative denominator log2(a) - 1.

    Kept for comparison only; it overshoots observed crossings (n=12, r=1
    gives 12 while the orbit crosses at step 6).
    """
    return max(0, math.floor((n - 1 - math.log2(r)) / (math.log2(a) - 1)))


def crossing_grid(
    n: int, a: float = DEFAULT_A, max_steps: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """First crossing step for every grid point q^2 = r / 2^n, r = 1..2^(n-1).

    Returns ``(steps, x_at)``: entry r-1 holds the step for r (-1 when no
    crossing happens within max_steps) and the orbit value at that step.
    Uses the same arithmetic as :func:`logistic_step`, so it agrees with
    :func:`amplify` bit for bit.
    """
    if not 1 <= n <= MAX_GRID_VARS:
        raise ValueError(f"grid sweep limited to 1 <= n <= {MAX_GRID_VARS}, got {n}")
    if max_steps is None:
        max_steps = default_max_steps(n)
    x = np.arange(1, (1 << (n - 1)) + 1, dtype=np.float64) / float(1 << n)
    steps = np.full(x.shape, -1, dtype=np.int64)
    x_at = np.full(x.shape, np.nan)
    hit = x > THRESHOLD
    steps[hit], x_at[hit] = 0, x[hit]
    for m in range(1, max_steps + 1):
        pending = steps < 0
        if not pending.any():
            break
        x = a * x * (1.0 - x)
        hit = pending & (x > THRESHOLD)
        steps[hit], x_at[hit] = m, x[hit]
    return steps, x_at


def crossing_steps(n: int, a: float = DEFAULT_A, max_steps: int | None = None) -> np.ndarray:
    return crossing_grid(n, a, max_steps)[0]


def empirical_t_c(n: int, a: float = DEFAULT_A) -> int:
    """Worst first-crossing step over the grid r / 2^n, r = 1..2^(n-1)."""
    steps = crossing_steps(n, a, max_steps=max(64, 4 * n))
    if (steps < 0).any():
        raise RuntimeError(f"some grid points never crossed for n={n}, a={a}")
    return int(steps.max())


@dataclass(frozen=True)
class AmplifierState:
    rho: tuple[float, float]
    m: float

    @property
    def trace(self) -> float:
        return self.rho[0] + self.rho[1]

    def sigma3_expectation(self) -> float:
        return self.rho[0] - self.rho[1]


def density_view(x: float) -> AmplifierState:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    up = (1.0 + x) / 2.0
    # up lies in [1/2, 1], so 1 - up is exact and the pair sums to exactly 1
    return AmplifierState((up, 1.0 - up), x)

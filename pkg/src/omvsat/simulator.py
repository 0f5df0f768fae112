"""
Dense state-vector and bit-parallel truth-table engines.

Basis index b encodes qubit j in bit j-1 (qubit 1 is the least significant
bit), so |1,0,...,0> is index 1 and |0,1,0,...> is index 2.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

import numpy as np

from .cnf import ClauseSet
from .compiler import CCNot, CNot, Circuit, Gate, Hadamard, Not, RegisterLayout

DEFAULT_MAX_QUBITS = 26
HARD_MAX_QUBITS = 30
MAX_TABLE_VARS = 30
NORM_TOL = 1e-9
ZERO_TOL = 1e-12

_SQRT1_2 = 1 / math.sqrt(2)
_WORD_BITS = 64
_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)
# word budget per truth-table batch, summed over all lines (32 MiB)
_TABLE_BATCH_WORDS = 1 << 22


class WidthError(ValueError):
    """Register too wide for the requested engine."""


def _check_width(width: int, max_qubits: int) -> None:
    if max_qubits > HARD_MAX_QUBITS:
        raise WidthError(f"dense cap cannot exceed {HARD_MAX_QUBITS} qubits")
    if width > max_qubits:
        raise WidthError(
            f"{width} qubits exceeds dense limit {max_qubits} "
            f"(2^{width} amplitudes); use the truth-table engine"
        )


@dataclass
class StateVector:
    width: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.width,):
            raise ValueError(
                f"expected {1 << self.width} amplitudes, got {self.amplitudes.shape}"
            )

    def copy(self) -> "StateVector":
        return StateVector(self.width, self.amplitudes.copy())

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def _tensor(self) -> np.ndarray:
        # axis 0 is the most significant bit, i.e. qubit N
        return self.amplitudes.reshape((2,) * self.width)

    def _axis(self, qubit: int) -> int:
        if not 1 <= qubit <= self.width:
            raise IndexError(f"qubit {qubit} outside 1..{self.width}")
        return self.width - qubit

    def dump_csv(self, fh: TextIO, threshold: float = 0.0) -> None:
        """Write ``index,real,imag`` rows for amplitudes with modulus above threshold."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "real", "imag"])
        for idx in np.flatnonzero(np.abs(self.amplitudes) > threshold):
            amp = self.amplitudes[idx]
            writer.writerow([int(idx), f"{amp.real:.17g}", f"{amp.imag:.17g}"])


def basis_state(
    width: int, bits: Sequence[int] | None = None, max_qubits: int = DEFAULT_MAX_QUBITS
) -> StateVector:
    """|bits> on ``width`` qubits; bits[0] is qubit 1. Defaults to all zeros."""
    _check_width(width, max_qubits)
    bits = tuple(bits) if bits is not None else (0,) * width
    if len(bits) != width:
        raise ValueError(f"expected {width} bits, got {len(bits)}")
    index = sum(1 << j for j, b in enumerate(bits) if b)
    amps = np.zeros(1 << width, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(width, amps)


def _slices(state: StateVector, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * state.width
    for qubit, value in fixed.items():
        idx[state._axis(qubit)] = value
    return tuple(idx)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply ``gate`` in place and return the same state.

    Each kernel pairs the amplitudes whose indices differ only in the target
    bit (restricted to control bits set) through strided views; no gate
    matrix over the full register is ever built.
    """
    psi = state._tensor()
    if isinstance(gate, Hadamard):
        lo = _slices(state, {gate.target: 0})
        hi = _slices(state, {gate.target: 1})
        a0 = psi[lo].copy()
        a1 = psi[hi]
        psi[lo] = (a0 + a1) * _SQRT1_2
        psi[hi] = (a0 - a1) * _SQRT1_2
        return state

    if isinstance(gate, Not):
        controls: dict[int, int] = {}
    elif isinstance(gate, CNot):
        controls = {gate.control: 1}
    elif isinstance(gate, CCNot):
        controls = {gate.control1: 1, gate.control2: 1}
    else:
        raise TypeError(f"unsupported gate {gate!r}")
    lo = _slices(state, {**controls, gate.target: 0})
    hi = _slices(state, {**controls, gate.target: 1})
    tmp = psi[lo].copy()
    psi[lo] = psi[hi]
    psi[hi] = tmp
    return state


def run(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply every gate of ``circuit`` to ``state`` in order (in place)."""
    if circuit.width != state.width:
        raise ValueError(
            f"circuit width {circuit.width} does not match state width {state.width}"
        )
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


@dataclass(frozen=True)
class MeasurementSummary:
    q_squared: float
    distribution: tuple[float, float]

    @property
    def sat(self) -> bool:
        return self.q_squared > ZERO_TOL


def success_probability(state: StateVector, layout: RegisterLayout | None = None) -> MeasurementSummary:
    """Probability that the last qubit reads 1."""
    if layout is not None and layout.width != state.width:
        raise ValueError("layout and state widths differ")
    # last qubit is the most significant bit: the upper half of the array
    upper = state.amplitudes[1 << (state.width - 1):]
    q2 = float(np.vdot(upper, upper).real)
    q2 = min(max(q2, 0.0), 1.0)
    return MeasurementSummary(q2, (1.0 - q2, q2))


def simulate(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> MeasurementSummary:
    """Run ``circuit`` on |0^N> with the dense engine and measure the last line."""
    state = run(circuit, basis_state(circuit.width, max_qubits=max_qubits))
    return success_probability(state, circuit.layout)


# -- truth-table engine -----------------------------------------------------

_LOW_PATTERNS = [
    np.uint64(sum(1 << i for i in range(_WORD_BITS) if (i >> b) & 1)) for b in range(6)
]


def _variable_words(bit: int, words: np.ndarray) -> np.ndarray:
    if bit < 6:
        return np.full(words.shape, _LOW_PATTERNS[bit], dtype=np.uint64)
    sel = (words >> np.uint64(bit - 6)) & np.uint64(1)
    return np.where(sel.astype(bool), _ALL_ONES, np.uint64(0))


def propagate_lines(n: int, circuit: Circuit, start_word: int = 0, stop_word: int | None = None) -> np.ndarray:
    """Push every assignment in a word range through the logic gates.

    Returns an array of shape ``(N + 1, words)``; row j holds qubit line j
    packed 64 assignments per word (row 0 unused). Assignment index a sets
    variable i to bit i-1 of a, matching the dense basis encoding.
    Hadamard gates are skipped: they only prepare the uniform superposition
    that this engine enumerates explicitly.
    """
    total_words = max(1, (1 << n) // _WORD_BITS)
    if stop_word is None:
        stop_word = total_words
    words = np.arange(start_word, stop_word, dtype=np.uint64)
    lines = np.zeros((circuit.width + 1, words.size), dtype=np.uint64)
    for i in range(1, n + 1):
        lines[i] = _variable_words(i - 1, words)
    for g in circuit.gates:
        if isinstance(g, Hadamard):
            continue
        if isinstance(g, Not):
            lines[g.target] ^= _ALL_ONES
        elif isinstance(g, CNot):
            lines[g.target] ^= lines[g.control]
        elif isinstance(g, CCNot):
            lines[g.target] ^= lines[g.control1] & lines[g.control2]
        else:
            raise TypeError(f"unsupported gate {g!r}")
    return lines


def _valid_mask(n: int) -> np.uint64:
    if n >= 6:
        return _ALL_ONES
    return np.uint64((1 << (1 << n)) - 1)


def truth_table_run(cs: ClauseSet, circuit: Circuit) -> tuple[int, Fraction]:
    """Count assignments whose result line ends at 1; q^2 = r / 2^n exactly."""
    n = cs.n
    if n > MAX_TABLE_VARS:
        raise WidthError(f"truth-table engine limited to n <= {MAX_TABLE_VARS}, got {n}")
    total_words = max(1, (1 << n) // _WORD_BITS)
    mask = _valid_mask(n)
    chunk = max(1, _TABLE_BATCH_WORDS // (circuit.width + 1))
    r = 0
    for start in range(0, total_words, chunk):
        stop = min(total_words, start + chunk)
        result = propagate_lines(n, circuit, start, stop)[circuit.width] & mask
        r += int(np.bitwise_count(result).sum())
    return r, Fraction(r, 1 << n)


def unpack_line(packed: np.ndarray, n: int) -> np.ndarray:
    """Expand one packed row of :func:`propagate_lines` to a 0/1 array of length 2^n."""
    bits = np.unpackbits(packed.astype("<u8").view(np.uint8), bitorder="little")
    return bits[: 1 << n]

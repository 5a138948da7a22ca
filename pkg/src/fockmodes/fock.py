"""Occupation-number basis states for multi-mode bosonic fields.

States are stored sparsely as a map from occupation tuples to complex
amplitudes, so superpositions that mix total photon numbers (vacuum plus
photon pairs, say) need no special casing.  Amplitudes with modulus below
``PRUNE_THRESHOLD`` are dropped on construction.
"""

from __future__ import annotations

import math
import operator
from collections.abc import Mapping

from .errors import DegenerateStateError, DimensionError, NotNormalizedError

# Amplitudes below this modulus are dropped when states are built.
PRUNE_THRESHOLD = 1e-15
# Deviation from unit norm accepted by operations that need a normalized state.
NORM_TOLERANCE = 1e-9

Occupation = tuple[int, ...]


def _as_occupation(occ, mode_count: int) -> Occupation:
    try:
        counts = tuple(operator.index(c) for c in occ)
    except TypeError as exc:
        raise ValueError(f"occupation entries must be integers: {occ!r}") from exc
    if len(counts) != mode_count:
        raise DimensionError(
            f"occupation {counts} has {len(counts)} modes, expected {mode_count}"
        )
    if any(c < 0 for c in counts):
        raise ValueError(f"negative photon count in occupation {counts}")
    return counts


class PureState:
    """Sparse pure state over the |n1 ... nM> photon-number basis.

    Instances are treated as immutable: operations return new states and
    never modify ``amplitudes`` in place, so states are safe to share
    across threads.
    """

    __slots__ = ("mode_count", "amplitudes")

    def __init__(self, mode_count: int, amplitudes: Mapping[Occupation, complex]):
        mode_count = operator.index(mode_count)
        if mode_count < 1:
            raise DimensionError("mode_count must be a positive integer")
        kept: dict[Occupation, complex] = {}
        for occ, amp in amplitudes.items():
            counts = _as_occupation(occ, mode_count)
            value = complex(amp)
            if abs(value) >= PRUNE_THRESHOLD:
                kept[counts] = value
        self.mode_count = mode_count
        self.amplitudes = kept

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def support(self) -> list[Occupation]:
        """Occupations with nonzero amplitude, in canonical order."""
        return sorted(self.amplitudes, reverse=True)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __repr__(self) -> str:
        return f"PureState(mode_count={self.mode_count}, terms={len(self.amplitudes)})"


def basis_state(occ) -> PureState:
    """Single basis ket |n1 ... nM> with amplitude one."""
    counts = tuple(operator.index(c) for c in occ)
    return PureState(len(counts), {counts: 1.0})


def enumerate_sector(mode_count: int, total: int) -> list[Occupation]:
    """All occupations of `mode_count` modes with `total` photons.

    Canonical order: lexicographic with the first mode most significant
    and higher counts first, so (2,0) precedes (1,1) precedes (0,2).
    """
    mode_count = operator.index(mode_count)
    total = operator.index(total)
    if mode_count < 1:
        raise DimensionError("mode_count must be a positive integer")
    if total < 0:
        raise ValueError("total photon number must be non-negative")
    out: list[Occupation] = []

    def fill(prefix: Occupation, remaining: int, modes_left: int) -> None:
        if modes_left == 1:
            out.append(prefix + (remaining,))
            return
        for count in range(remaining, -1, -1):
            fill(prefix + (count,), remaining - count, modes_left - 1)

    fill((), total, mode_count)
    return out


def sector_dimension(mode_count: int, total: int) -> int:
    """Number of occupations of `mode_count` modes with `total` photons."""
    return math.comb(total + mode_count - 1, mode_count - 1)


def require_normalized(state: PureState) -> None:
    """Raise unless the state has unit norm within NORM_TOLERANCE."""
    if not state.amplitudes:
        raise DegenerateStateError("state has zero norm")
    deviation = abs(state.norm() - 1.0)
    if deviation > NORM_TOLERANCE:
        raise NotNormalizedError(
            f"state norm deviates from 1 by {deviation:.3e}; normalize it first"
        )


def normalize(state: PureState) -> PureState:
    """Rescale by a positive real so the result has unit norm."""
    nrm = state.norm()
    if nrm < PRUNE_THRESHOLD:
        raise DegenerateStateError("cannot normalize a state with zero norm")
    return PureState(
        state.mode_count, {occ: amp / nrm for occ, amp in state.amplitudes.items()}
    )


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, summed over the shared support."""
    if a.mode_count != b.mode_count:
        raise DimensionError(
            f"mode counts differ: {a.mode_count} vs {b.mode_count}"
        )
    small, large = (a.amplitudes, b.amplitudes)
    if len(small) <= len(large):
        return sum(
            small[occ].conjugate() * large[occ] for occ in small if occ in large
        )
    return sum(large[occ] * small[occ].conjugate() for occ in large if occ in small)


def sector_weights(state: PureState) -> dict[int, float]:
    """Probability of each total photon number present in the support."""
    require_normalized(state)
    weights: dict[int, float] = {}
    for occ, amp in state.amplitudes.items():
        total = sum(occ)
        weights[total] = weights.get(total, 0.0) + abs(amp) ** 2
    return dict(sorted(weights.items()))


def canonicalize_phase(state: PureState) -> PureState:
    """Multiply by a global phase so the first canonical amplitude is real-positive."""
    if not state.amplitudes:
        return state
    lead = state.amplitudes[state.support()[0]]
    phase = lead / abs(lead)
    factor = phase.conjugate()
    return PureState(
        state.mode_count, {occ: amp * factor for occ, amp in state.amplitudes.items()}
    )

"""Bipartite Schmidt analysis of pure states across a mode partition.

The Schmidt spectrum is computed from the singular values of the bipartite
coefficient matrix rather than by diagonalizing a reduced density matrix;
the SVD conditions better when eigenvalues nearly coincide.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .errors import NumericalConsistencyError, PartitionError
from .fock import Occupation, PureState, require_normalized, sector_dimension

# lambdas above this count toward the numerical Schmidt rank; sits between
# double-precision noise and the smallest meaningful eigenvalue in practice.
RANK_THRESHOLD = 1e-10
# Eigenvalues in [-EIG_CLIP, 0) are rounding noise and get clipped to zero;
# anything more negative indicates a bug, not noise.
EIG_CLIP = 1e-12


@dataclass(frozen=True)
class Partition:
    """Disjoint two-way split of the mode indices defining the entanglement cut."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        side_a = tuple(operator.index(i) for i in self.side_a)
        side_b = tuple(operator.index(i) for i in self.side_b)
        object.__setattr__(self, "side_a", side_a)
        object.__setattr__(self, "side_b", side_b)
        if not side_a or not side_b:
            raise PartitionError("both sides of the partition must be non-empty")
        if any(i < 0 for i in side_a + side_b):
            raise PartitionError("mode indices must be non-negative")
        seen = set(side_a)
        if len(seen) != len(side_a) or len(set(side_b)) != len(side_b):
            raise PartitionError("duplicate mode index within a side")
        if seen & set(side_b):
            raise PartitionError("partition sides must be disjoint")

    @property
    def mode_count(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def ensure_covers(self, mode_count: int) -> None:
        if sorted(self.side_a + self.side_b) != list(range(mode_count)):
            raise PartitionError(
                f"partition {self.side_a}|{self.side_b} does not cover modes "
                f"0..{mode_count - 1}"
            )

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        """Parse 'i,j,..|k,l,..' with zero-based indices."""
        halves = text.split("|")
        if len(halves) != 2:
            raise PartitionError(
                f"expected exactly one '|' in partition string {text!r}"
            )
        try:
            side_a = tuple(int(tok) for tok in halves[0].split(",") if tok.strip() != "")
            side_b = tuple(int(tok) for tok in halves[1].split(",") if tok.strip() != "")
        except ValueError as exc:
            raise PartitionError(f"bad mode index in partition string {text!r}") from exc
        return cls(side_a, side_b)

    def __str__(self) -> str:
        return ",".join(map(str, self.side_a)) + "|" + ",".join(map(str, self.side_b))


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending Schmidt coefficients with their entropy in ebits."""

    lambdas: np.ndarray
    entropy_bits: float
    numerical_rank: int


def _restrict(occ: Occupation, side: tuple[int, ...]) -> Occupation:
    return tuple(occ[i] for i in side)


def coefficient_matrix(
    state: PureState, partition: Partition
) -> tuple[np.ndarray, list[Occupation], list[Occupation]]:
    """Amplitudes arranged as a (side-A occupations) x (side-B occupations) matrix.

    Rows and columns are exactly the restrictions appearing in the support,
    in canonical order; the Frobenius norm equals the state norm.
    """
    partition.ensure_covers(state.mode_count)
    rows = sorted({_restrict(occ, partition.side_a) for occ in state.amplitudes}, reverse=True)
    cols = sorted({_restrict(occ, partition.side_b) for occ in state.amplitudes}, reverse=True)
    row_index = {occ: r for r, occ in enumerate(rows)}
    col_index = {occ: c for c, occ in enumerate(cols)}
    matrix = np.zeros((len(rows), len(cols)), dtype=complex)
    for occ, amp in state.amplitudes.items():
        matrix[row_index[_restrict(occ, partition.side_a)],
               col_index[_restrict(occ, partition.side_b)]] = amp
    return matrix, rows, cols


def clip_spectrum(values: np.ndarray) -> np.ndarray:
    """Clip eigenvalue noise in [-EIG_CLIP, 0) to zero; reject anything worse."""
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -EIG_CLIP:
        raise NumericalConsistencyError(
            f"spectrum has eigenvalue {values.min():.3e} below -{EIG_CLIP:.0e}"
        )
    return np.clip(values, 0.0, 1.0)


def entropy_of_spectrum(lambdas: np.ndarray) -> float:
    """-sum lambda log2 lambda with the 0 log 0 := 0 convention."""
    lam = np.asarray(lambdas, dtype=float)
    lam = lam[lam > 0.0]
    if lam.size == 0:
        return 0.0
    return float(-(lam * np.log2(lam)).sum())


def schmidt_spectrum(state: PureState, partition: Partition) -> SchmidtSpectrum:
    """Squared singular values of the coefficient matrix, descending, plus entropy."""
    require_normalized(state)
    matrix, _, _ = coefficient_matrix(state, partition)
    singulars = np.linalg.svd(matrix, compute_uv=False)
    lambdas = clip_spectrum(singulars**2)
    total = float(lambdas.sum())
    if abs(total - 1.0) > 1e-10:
        raise NumericalConsistencyError(
            f"Schmidt coefficients sum to {total!r}, expected 1 within 1e-10"
        )
    lambdas = np.sort(lambdas)[::-1]
    lambdas.setflags(write=False)
    return SchmidtSpectrum(
        lambdas=lambdas,
        entropy_bits=entropy_of_spectrum(lambdas),
        numerical_rank=int((lambdas > RANK_THRESHOLD).sum()),
    )


def reduced_density_matrix(
    state: PureState, partition: Partition, side: str = "A"
) -> tuple[np.ndarray, list[Occupation]]:
    """Reduced density matrix of one side, with its occupation index.

    Side 'A' returns C C† on the row occupations, side 'B' returns
    Cᵀ conj(C) on the column occupations; eigenvalues match the Schmidt
    spectrum either way.
    """
    require_normalized(state)
    matrix, rows, cols = coefficient_matrix(state, partition)
    side = side.upper()
    if side == "A":
        rho = matrix @ matrix.conj().T
        index = rows
    elif side == "B":
        rho = matrix.T @ matrix.conj()
        index = cols
    else:
        raise PartitionError(f"side must be 'A' or 'B', got {side!r}")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > 1e-10:
        raise NumericalConsistencyError(
            f"reduced density matrix trace {trace!r} deviates from 1 beyond 1e-10"
        )
    return rho, index


def rank_bound(state: PureState, partition: Partition) -> int:
    """A priori cap on the Schmidt rank across the partition.

    For a state with definite total photon number N the bound counts the
    per-sector dimensions, sum over n of min(dim(|A|, n), dim(|B|, N - n)),
    and holds for every unitary mode redefinition of the state.  For mixed
    totals it falls back to the support shape min(#rows, #cols), which only
    bounds the state as given.
    """
    partition.ensure_covers(state.mode_count)
    totals = {sum(occ) for occ in state.amplitudes}
    if not totals:
        return 0
    if len(totals) == 1:
        total = totals.pop()
        a, b = len(partition.side_a), len(partition.side_b)
        return sum(
            min(sector_dimension(a, n), sector_dimension(b, total - n))
            for n in range(total + 1)
        )
    matrix, rows, cols = coefficient_matrix(state, partition)
    return min(len(rows), len(cols))

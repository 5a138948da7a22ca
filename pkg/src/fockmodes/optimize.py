"""Extremize entanglement entropy over all unitary mode redefinitions.

The unitary group is parameterized by U = exp(iH) over R^{M^2}, which is
surjective and unconstrained, and the search uses derivative-free
Nelder-Mead descent with seeded random restarts.  Restart 0 always starts
at the identity, so the input state's own entropy is a structural lower
(upper) bound on the reported maximum (minimum).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import Partition, schmidt_spectrum
from .errors import DimensionError, NumericalConsistencyError
from .fock import PureState, enumerate_sector, require_normalized
from .transform import (
    HermitianParams,
    ModeUnitary,
    apply_redefinition,
    exp_map,
    hermitian_from_params,
)

# Above this dense sector size the objective falls back to the sparse path.
_DENSE_SECTOR_LIMIT = 300_000
# The optimizer is meant for desk-scale problems; M^2 parameters beyond this
# would make Nelder-Mead pointless anyway.
_MAX_PARAMETERS = 144


@dataclass(frozen=True)
class OptConfig:
    """Search settings; defaults reproduce the published reference table."""

    direction: str
    restarts: int = 24
    seed: int = 0
    max_iterations: int = 4000
    simplex_tolerance: float = 1e-10
    step_scale: float = 0.3

    def __post_init__(self):
        if self.direction not in ("min", "max"):
            raise ValueError(f"direction must be 'min' or 'max', got {self.direction!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not (self.simplex_tolerance > 0 and self.step_scale > 0):
            raise ValueError("tolerances and step scale must be positive")


@dataclass(frozen=True)
class OptResult:
    """Best extremum found, its unitary, and per-restart bookkeeping."""

    direction: str
    best_entropy_bits: float
    best_unitary: ModeUnitary
    best_params: HermitianParams
    per_restart_values: tuple[float, ...]
    evaluations: int
    converged: bool


# When the vertex-value spread collapses, the apparent optimum is checked by
# perturbing the best vertex this far along each coordinate before stopping;
# a transient tie (simplex straddling the optimum) otherwise halts the search.
_PROBE_STEP = 1e-3


def _nelder_mead(
    func: Callable[[np.ndarray], float],
    x0: np.ndarray,
    max_iterations: int,
    tolerance: float,
    step_scale: float,
    callback: Callable[[int, np.ndarray, float], None] | None = None,
) -> tuple[np.ndarray, float, int, bool]:
    """Standard reflect/expand/contract/shrink simplex minimization.

    Coefficients 1, 2, 0.5, 0.5; stops when the spread of vertex values
    falls below `tolerance` (verified by coordinate perturbations) or after
    `max_iterations` iterations.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    dim = x0.size
    evals = 0

    def feval(x: np.ndarray) -> float:
        nonlocal evals
        value = float(func(x))
        evals += 1
        if not math.isfinite(value):
            raise NumericalConsistencyError(
                f"objective returned non-finite value {value!r} at point {x.tolist()}"
            )
        return value

    def build_simplex(center: np.ndarray, step: float):
        pts = np.tile(center, (dim + 1, 1))
        for i in range(dim):
            pts[i + 1, i] += step
        vals = np.array([feval(p) for p in pts])
        return pts, vals

    points, values = build_simplex(x0, step_scale)

    converged = False
    for iteration in range(max_iterations):
        order = np.argsort(values, kind="stable")
        points = points[order]
        values = values[order]
        if values[-1] - values[0] < tolerance:
            improved = None
            for i in range(dim):
                for sign in (1.0, -1.0):
                    probe = points[0].copy()
                    probe[i] += sign * _PROBE_STEP
                    if feval(probe) < values[0] - tolerance:
                        improved = probe
                        break
                if improved is not None:
                    break
            if improved is None:
                converged = True
                break
            points, values = build_simplex(improved, _PROBE_STEP)
            continue

        centroid = points[:-1].mean(axis=0)
        reflected = centroid + (centroid - points[-1])
        f_reflected = feval(reflected)
        if f_reflected < values[0]:
            expanded = centroid + 2.0 * (centroid - points[-1])
            f_expanded = feval(expanded)
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
        else:
            if f_reflected < values[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid + 0.5 * (points[-1] - centroid)
            f_contracted = feval(contracted)
            if f_contracted < min(f_reflected, values[-1]):
                points[-1], values[-1] = contracted, f_contracted
            else:
                # Shrink every vertex toward the current best.
                for i in range(1, dim + 1):
                    points[i] = points[0] + 0.5 * (points[i] - points[0])
                    values[i] = feval(points[i])
        if callback is not None:
            best = int(np.argmin(values))
            callback(iteration, points[best], float(values[best]))

    order = np.argsort(values, kind="stable")
    return points[order[0]].copy(), float(values[order[0]]), evals, converged


def nelder_mead(
    func: Callable[[np.ndarray], float],
    x0,
    cfg: OptConfig,
    callback: Callable[[int, np.ndarray, float], None] | None = None,
) -> tuple[np.ndarray, float]:
    """Minimize `func` from `x0`; returns the best vertex and its value."""
    best_x, best_f, _, _ = _nelder_mead(
        func,
        np.asarray(x0, dtype=float),
        max_iterations=cfg.max_iterations,
        tolerance=cfg.simplex_tolerance,
        step_scale=cfg.step_scale,
        callback=callback,
    )
    return best_x, best_f


def _restrict(occ, side):
    return tuple(occ[i] for i in side)


def entropy_objective(
    state: PureState, partition: Partition
) -> Callable[[np.ndarray], float]:
    """Build theta -> entropy_bits(apply_redefinition(state, exp_map(theta)), p).

    The returned closure evaluates the same multinomial expansion as
    ``apply_redefinition``, vectorized per photon-number sector as a dense
    symmetric-tensor contraction so it is cheap enough for an optimizer
    loop.  Oversized sectors fall back to the sparse path.
    """
    mode_count = state.mode_count
    sectors: dict[int, list] = {}
    for occ, amp in state.amplitudes.items():
        sectors.setdefault(sum(occ), []).append((occ, amp))
    max_total = max(sectors) if sectors else 0

    if mode_count**max_total > _DENSE_SECTOR_LIMIT:
        def fallback(theta: np.ndarray) -> float:
            unitary = exp_map(theta)
            return schmidt_spectrum(
                apply_redefinition(state, unitary), partition
            ).entropy_bits

        return fallback

    # Row/column layout over every occupation reachable in the populated
    # sectors (a redefinition can fill each sector completely).
    row_index: dict[tuple, int] = {}
    col_index: dict[tuple, int] = {}
    blocks = []
    for total in sorted(sectors):
        occs = enumerate_sector(mode_count, total)
        for occ in occs:
            row = _restrict(occ, partition.side_a)
            col = _restrict(occ, partition.side_b)
            row_index.setdefault(row, len(row_index))
            col_index.setdefault(col, len(col_index))
        if total == 0:
            vac = occs[0]
            blocks.append(
                (
                    0,
                    complex(dict(sectors[0])[vac]),
                    row_index[_restrict(vac, partition.side_a)],
                    col_index[_restrict(vac, partition.side_b)],
                )
            )
            continue
        tensor = np.zeros((mode_count,) * total, dtype=complex)
        for occ, amp in sectors[total]:
            modes = tuple(
                itertools.chain.from_iterable([j] * c for j, c in enumerate(occ))
            )
            weight = amp * math.sqrt(
                math.prod(math.factorial(c) for c in occ)
            ) / math.factorial(total)
            for perm in set(itertools.permutations(modes)):
                tensor[perm] = weight
        flat = np.empty(len(occs), dtype=np.intp)
        weights = np.empty(len(occs), dtype=float)
        rows = np.empty(len(occs), dtype=np.intp)
        cols = np.empty(len(occs), dtype=np.intp)
        for idx, occ in enumerate(occs):
            modes = tuple(
                itertools.chain.from_iterable([j] * c for j, c in enumerate(occ))
            )
            flat[idx] = np.ravel_multi_index(modes, tensor.shape)
            weights[idx] = math.factorial(total) / math.sqrt(
                math.prod(math.factorial(c) for c in occ)
            )
            rows[idx] = row_index[_restrict(occ, partition.side_a)]
            cols[idx] = col_index[_restrict(occ, partition.side_b)]
        blocks.append((total, tensor, flat, weights, rows, cols))

    n_rows, n_cols = len(row_index), len(col_index)

    def objective(theta: np.ndarray) -> float:
        herm = hermitian_from_params(theta)
        eigvals, eigvecs = np.linalg.eigh(herm)
        unitary = (eigvecs * np.exp(1j * eigvals)) @ eigvecs.conj().T
        subst = unitary.conj().T
        coeff = np.zeros((n_rows, n_cols), dtype=complex)
        for block in blocks:
            if block[0] == 0:
                _, amp, r, c = block
                coeff[r, c] = amp
                continue
            total, tensor, flat, weights, rows, cols = block
            transformed = tensor
            for _ in range(total):
                transformed = np.tensordot(transformed, subst, axes=([0], [0]))
            coeff[rows, cols] = transformed.reshape(-1)[flat] * weights
        singulars = np.linalg.svd(coeff, compute_uv=False)
        lam = singulars * singulars
        lam = lam[lam > 0.0]
        return float(-(lam * np.log2(lam)).sum()) if lam.size else 0.0

    return objective


def optimize_entanglement(
    state: PureState, partition: Partition, cfg: OptConfig
) -> OptResult:
    """Extremal entanglement entropy over all mode redefinitions.

    Restart 0 starts at the identity; restarts 1.. start at seeded uniform
    points in [-pi, pi]^{M^2}.  Results are deterministic for a fixed
    (seed, restarts, tolerances) and independent of restart execution order
    (ties break toward the lowest restart index).
    """
    require_normalized(state)
    partition.ensure_covers(state.mode_count)
    mode_count = state.mode_count
    n_params = mode_count * mode_count
    if n_params > _MAX_PARAMETERS:
        raise DimensionError(
            f"{n_params} parameters exceeds the practical cap of {_MAX_PARAMETERS}"
        )

    entropy = entropy_objective(state, partition)
    minimizing = cfg.direction == "min"
    objective = entropy if minimizing else (lambda theta: -entropy(theta))

    rng = np.random.default_rng(cfg.seed)
    starts = [np.zeros(n_params)]
    for _ in range(cfg.restarts - 1):
        starts.append(rng.uniform(-math.pi, math.pi, n_params))

    per_restart: list[float] = []
    evaluations = 0
    best_value: float | None = None
    best_theta: np.ndarray | None = None
    best_converged = False
    for theta0 in starts:
        theta, f_best, evals, converged = _nelder_mead(
            objective,
            theta0,
            max_iterations=cfg.max_iterations,
            tolerance=cfg.simplex_tolerance,
            step_scale=cfg.step_scale,
        )
        value = f_best if minimizing else -f_best
        per_restart.append(value)
        evaluations += evals
        better = best_value is None or (
            value < best_value if minimizing else value > best_value
        )
        if better:
            best_value = value
            best_theta = theta
            best_converged = converged

    best_params = HermitianParams(best_theta)
    best_unitary = exp_map(best_params)
    recheck = schmidt_spectrum(
        apply_redefinition(state, best_unitary), partition
    ).entropy_bits
    if abs(recheck - best_value) > 1e-9:
        raise NumericalConsistencyError(
            f"optimizer value {best_value!r} disagrees with re-evaluated "
            f"entropy {recheck!r}"
        )
    return OptResult(
        direction=cfg.direction,
        best_entropy_bits=best_value,
        best_unitary=best_unitary,
        best_params=best_params,
        per_restart_values=tuple(per_restart),
        evaluations=evaluations,
        converged=best_converged,
    )

"""Exact enumeration and simulated annealing for QUBO models.

The exhaustive solver enumerates assignments in lexicographic order, with
variable 0 as the most significant bit. The low ``L`` variables form a block
whose energies are tabulated once; every assignment of the remaining high
variables then updates that table by a constant shift plus one cross-term
vector, so each state costs O(L) integer work in vectorised numpy.

The annealer runs independent single-flip Metropolis chains compiled with
numba. Restart ``r`` draws from ``SeedSequence(seed, spawn_key=(r,))`` so
results do not depend on how restarts are scheduled.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import CapacityError, DimensionError
from .qubo import QuboModel, energy

DEFAULT_VAR_CAP = 24
_BLOCK_BITS = 14
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class SolveResult:
    """Best energy found and the assignments achieving it.

    ``minima`` holds every global minimum (exhaustive, lexicographically
    sorted) or the single best state (annealer).
    """

    best_energy: int
    minima: tuple
    stats: Mapping = field(default_factory=dict)

    @property
    def best(self) -> tuple:
        return self.minima[0]


def _coefficient_bound(model: QuboModel) -> int:
    return (abs(model.offset) + sum(abs(c) for c in model.linear.values())
            + sum(abs(c) for c in model.quadratic.values()))


def _check_int64(model: QuboModel) -> None:
    if _coefficient_bound(model) >= _INT64_SAFE:
        raise OverflowError("model coefficients too large for 64-bit enumeration")


def _bit_table(width: int) -> np.ndarray:
    """Row ``k`` holds the ``width`` bits of ``k``, most significant first."""
    k = np.arange(1 << width, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return (k[:, None] >> shifts[None, :]) & 1


def exhaustive_solve(model: QuboModel, var_cap: int = DEFAULT_VAR_CAP) -> SolveResult:
    """Every global minimum of ``model`` by full enumeration."""
    n = model.num_vars
    if n > var_cap:
        raise CapacityError(f"model has {n} variables, exhaustive cap is {var_cap}")
    _check_int64(model)
    if n == 0:
        return SolveResult(model.offset, ((),), {"evaluations": 1, "solver": "exhaustive"})

    low = min(n, _BLOCK_BITS)
    high = n - low
    h = np.zeros(n, dtype=np.int64)
    for i, c in model.linear.items():
        h[i] = c
    jmat = np.zeros((n, n), dtype=np.int64)
    for (i, j), c in model.quadratic.items():
        jmat[i, j] = c

    lo_bits = _bit_table(low)
    lo = slice(high, n)
    lo_energy = lo_bits @ h[lo] + np.einsum("ki,ij,kj->k", lo_bits, jmat[lo, lo], lo_bits)
    cross = jmat[:high, lo]  # couplings from high to low variables

    best = None
    hits: list[tuple[int, np.ndarray]] = []
    hi_bits = _bit_table(high) if high else np.zeros((1, 0), dtype=np.int64)
    for k, hb in enumerate(hi_bits):
        shift = int(hb @ h[:high] + hb @ jmat[:high, :high] @ hb)
        values = lo_energy + (lo_bits @ (hb @ cross)) + shift
        m = int(values.min())
        if best is None or m < best:
            best, hits = m, []
        if m == best:
            hits.append((k, np.flatnonzero(values == m)))

    minima = []
    for k, idx in hits:
        hb = tuple(int(b) for b in hi_bits[k])
        minima.extend(hb + tuple(int(b) for b in lo_bits[i]) for i in idx)
    return SolveResult(best + model.offset, tuple(minima),
                       {"evaluations": 1 << n, "solver": "exhaustive"})


def local_energy_delta(model: QuboModel, bits: Sequence[int], index: int) -> int:
    """``energy(bits with bit index flipped) - energy(bits)`` from the variable's couplings."""
    if len(bits) != model.num_vars:
        raise DimensionError(f"assignment has {len(bits)} bits, model has {model.num_vars} variables")
    if not 0 <= index < model.num_vars:
        raise IndexError(f"variable index {index} out of range")
    field_ = model.linear.get(index, 0) + sum(c for j, c in model.neighbours[index] if bits[j])
    return field_ if bits[index] == 0 else -field_


# ---------------------------------------------------------------------- annealing


@dataclass(frozen=True)
class AnnealParams:
    """Geometric-schedule annealing settings.

    Temperatures are relative: the chain starts at ``t_initial`` times the
    largest absolute coefficient and ends at ``t_final`` times the smallest
    nonzero one.
    """

    num_restarts: int = 64
    sweeps: int = 5000
    t_initial: float = 1.0
    t_final: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.num_restarts < 1 or self.sweeps < 1:
            raise ValueError("num_restarts and sweeps must be at least 1")
        if not 0 < self.t_final < self.t_initial:
            raise ValueError("temperatures must satisfy 0 < t_final < t_initial")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def _csr(model: QuboModel):
    n = model.num_vars
    h = np.zeros(n, dtype=np.int64)
    for i, c in model.linear.items():
        h[i] = c
    indptr = np.zeros(n + 1, dtype=np.int64)
    nbrs = model.neighbours
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(nbrs[i])
    idx = np.fromiter((j for a in nbrs for j, _ in a), dtype=np.int64, count=int(indptr[-1]))
    w = np.fromiter((c for a in nbrs for _, c in a), dtype=np.int64, count=int(indptr[-1]))
    return h, indptr, idx, w


@numba.njit(cache=True)
def _metropolis(h, indptr, idx, w, state, temps, uniforms):
    """One chain: sequential sweeps, returning (best state, best energy - offset)."""
    n = state.shape[0]
    field_ = h.copy()
    for i in range(n):
        if state[i]:
            for p in range(indptr[i], indptr[i + 1]):
                field_[idx[p]] += w[p]
    e = 0
    for i in range(n):
        if state[i]:
            e += h[i]
            for p in range(indptr[i], indptr[i + 1]):
                if idx[p] > i and state[idx[p]]:
                    e += w[p]
    best_e = e
    best = state.copy()
    for s in range(temps.shape[0]):
        t = temps[s]
        for i in range(n):
            delta = field_[i] if state[i] == 0 else -field_[i]
            if delta <= 0 or uniforms[s, i] < np.exp(-delta / t):
                sign = 1 if state[i] == 0 else -1
                state[i] = 1 - state[i]
                e += delta
                for p in range(indptr[i], indptr[i + 1]):
                    field_[idx[p]] += sign * w[p]
                if e < best_e:
                    best_e = e
                    best[:] = state
    return best, best_e


def anneal(model: QuboModel, params: AnnealParams | None = None) -> SolveResult:
    """Best state over independent restarts; ties go to the lowest restart index."""
    params = params or AnnealParams()
    n = model.num_vars
    if n == 0:
        return SolveResult(model.offset, ((),), {"restarts": params.num_restarts, "seed": params.seed,
                                                 "evaluations": 0, "solver": "anneal"})
    _check_int64(model)
    coeffs = [abs(c) for c in (*model.linear.values(), *model.quadratic.values())]
    hi = max(coeffs, default=1)
    lo = min(coeffs, default=1)
    t0, t1 = params.t_initial * hi, params.t_final * lo
    if params.sweeps == 1:
        temps = np.array([t0])
    else:
        temps = t0 * (t1 / t0) ** (np.arange(params.sweeps) / (params.sweeps - 1))
    h, indptr, idx, w = _csr(model)

    best_state, best_e = None, None
    for r in range(params.num_restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=params.seed, spawn_key=(r,)))
        state = rng.integers(0, 2, size=n).astype(np.int64)
        uniforms = rng.random((params.sweeps, n))
        s, e = _metropolis(h, indptr, idx, w, state, temps, uniforms)
        if best_e is None or e < best_e:
            best_state, best_e = tuple(int(b) for b in s), int(e)
    exact = energy(model, best_state)
    assert exact == best_e + model.offset
    return SolveResult(exact, (best_state,), {
        "restarts": params.num_restarts,
        "sweeps": params.sweeps,
        "seed": params.seed,
        "evaluations": params.num_restarts * params.sweeps * n,
        "solver": "anneal",
    })

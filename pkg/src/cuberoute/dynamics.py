"""Single-excitation dynamics under the network Hamiltonian.

With one excitation hopping on the graph the Hamiltonian is the adjacency
matrix itself (coupling set to one, time measured in coupling-normalized
units).  For dressed hypercubes the eigenbasis is the Hadamard basis, so

    U(tau) = W . diag(exp(-i * lambda * tau)) . W

with W the normalized Walsh-Hadamard transform: two O(N log N) butterfly
passes and a phase multiply per evolution, no dense matrix anywhere.

A dense eigendecomposition oracle is kept alongside as an independent
cross-check and for graphs with no product structure (paths, arbitrary
adjacency input).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGraph
from .spectral import SpectralTable, build_spectral_table

DENSE_ORACLE_MAX_DIM = 1 << 10


class DimensionMismatchError(ValueError):
    """State length does not match the spectral table."""


class TooLargeError(ValueError):
    """Matrix is beyond the dense oracle's size cap."""


def basis_state(d: int, node: int) -> np.ndarray:
    """The excitation localized on one node."""
    psi = np.zeros(1 << d, dtype=complex)
    psi[node] = 1.0
    return psi


def _fwht_inplace(a: np.ndarray) -> None:
    # Unnormalized butterfly passes along axis 0; a must be C-contiguous.
    n = a.shape[0]
    h = 1
    while h < n:
        view = a.reshape(n // (2 * h), 2, h, *a.shape[1:])
        top = view[:, 0] + view[:, 1]
        view[:, 1] = view[:, 0] - view[:, 1]
        view[:, 0] = top
        h *= 2


def hadamard_transform(state: np.ndarray) -> np.ndarray:
    """Normalized Walsh-Hadamard transform along the first axis.

    Self-inverse.  Accepts a single state of power-of-two length or a 2-D
    array whose columns are states.
    """
    a = np.ascontiguousarray(state, dtype=complex).copy()
    n = a.shape[0]
    if n == 0 or n & (n - 1):
        raise DimensionMismatchError(f"length {n} is not a power of two")
    _fwht_inplace(a)
    a *= 1.0 / math.sqrt(n)
    return a


def evolve(state: np.ndarray, tau: float, table: SpectralTable) -> np.ndarray:
    """Apply U(tau) diagonally in the Hadamard basis.

    Transform in, multiply each component by exp(-i * lambda * tau),
    transform back.  Unitary by construction; works on (N,) states or
    (N, k) column batches.
    """
    psi = np.ascontiguousarray(state, dtype=complex)
    if psi.shape[0] != table.size:
        raise DimensionMismatchError(
            f"state length {psi.shape[0]} does not match 2**{table.d} = {table.size}"
        )
    phases = np.exp(-1j * tau * table.eigenvalues)
    if psi.ndim > 1:
        phases = phases.reshape(-1, *([1] * (psi.ndim - 1)))
    out = hadamard_transform(psi)
    out *= phases
    _fwht_inplace(out)
    out *= 1.0 / math.sqrt(table.size)
    return out


def evolve_dense_oracle(state: np.ndarray, tau: float, adjacency: np.ndarray) -> np.ndarray:
    """Evolve by full symmetric eigendecomposition of the adjacency matrix.

    Independent of the fast path: no Hadamard structure is assumed.
    Capped at 1024 nodes.
    """
    a = np.asarray(adjacency, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"adjacency must be square, got shape {a.shape}")
    if n > DENSE_ORACLE_MAX_DIM:
        raise TooLargeError(f"dense oracle capped at {DENSE_ORACLE_MAX_DIM} nodes, got {n}")
    if not np.allclose(a, a.T):
        raise ValueError("adjacency must be symmetric")
    psi = np.asarray(state, dtype=complex)
    if psi.shape[0] != n:
        raise DimensionMismatchError(f"state length {psi.shape[0]} vs matrix size {n}")
    w, v = np.linalg.eigh(a)
    phases = np.exp(-1j * w * tau)
    if psi.ndim > 1:
        phases = phases[:, None]
    return v @ (phases * (v.conj().T @ psi))


@dataclass(frozen=True)
class FidelitySeries:
    """Return and transfer probabilities on a uniform time grid."""

    d: int
    l: int
    source: int
    target: int
    taus: np.ndarray
    p_return: np.ndarray
    p_target: np.ndarray


def fidelity_series(
    graph: CayleyGraph,
    source: int,
    target: int,
    tau_max: float,
    samples: int,
) -> FidelitySeries:
    """Sample |<source|U(tau)|source>|^2 and |<target|U(tau)|source>|^2 over [0, tau_max].

    The source state is transformed once; each sample then costs one phase
    multiply and one inverse transform.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    n = graph.num_nodes
    if not (0 <= source < n and 0 <= target < n):
        raise ValueError(f"source/target must lie in [0, {n - 1}]")
    table = build_spectral_table(graph.d, graph.l, graph.coord_perm)
    phi = hadamard_transform(basis_state(graph.d, source))
    taus = np.linspace(0.0, tau_max, samples)
    p_return = np.empty(samples)
    p_target = np.empty(samples)
    inv_sqrt_n = 1.0 / math.sqrt(n)
    for i, tau in enumerate(taus):
        work = np.exp(-1j * tau * table.eigenvalues) * phi
        _fwht_inplace(work)
        p_return[i] = abs(work[source] * inv_sqrt_n) ** 2
        p_target[i] = abs(work[target] * inv_sqrt_n) ** 2
    for arr in (taus, p_return, p_target):
        arr.flags.writeable = False
    return FidelitySeries(
        d=graph.d, l=graph.l, source=source, target=target,
        taus=taus, p_return=p_return, p_target=p_target,
    )

"""Quarter-period permutations and perfect excitation routing.

Evolving any dressed hypercube for tau = pi/2 permutes the node states:
every node label is XORed with a fixed flip mask determined by the
dressing.  The plain hypercube (l = 1) flips every bit, a dressing level
1 < l < d leaves the dressed coordinates alone and flips the rest, and
the complete graph (l = d) flips nothing.  Rotating the dressing moves
the protected coordinates, so the reachable single-step masks are:

    weight 0            l = d        (wait in place)
    weight 1 .. d-2     l = d - w    (dress the untouched coordinates)
    weight d            l = 1        (bare hypercube, antipodal swap)

A weight d-1 mask is unreachable in one step and is composed as the
all-ones flip followed by the missing single-bit flip.  Any ordered node
pair is therefore connected in at most two quarter periods, a duration
bound that does not grow with the network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cayley import BitVector, dressed_hypercube, identity_perm, validate_coord_perm, _check_bounds
from .dynamics import basis_state, evolve
from .spectral import build_spectral_table

STEP_DURATION = math.pi / 2


class UnroutableError(ValueError):
    """No sequence of dressings realizes the requested transfer."""


class NotAPermutationError(Exception):
    """The evolution does not act as a node permutation at the probed time."""

    def __init__(self, node: int, leaked_probability: float, reason: str = ""):
        self.node = node
        self.leaked_probability = leaked_probability
        detail = reason or "probability leaked off the dominant node"
        super().__init__(
            f"{detail}: node index {node} leaks {leaked_probability:.3e}"
        )


def cycles_from_mask(d: int, mask: int) -> tuple[tuple[int, int], ...]:
    """1-based label 2-cycles of the XOR-by-mask permutation (empty for the identity)."""
    return tuple(
        (x + 1, (x ^ mask) + 1) for x in range(1 << d) if x < x ^ mask
    )


def format_cycles(cycles: tuple[tuple[int, int], ...]) -> str:
    if not cycles:
        return "identity"
    return "".join(f"({a},{b})" for a, b in cycles)


@dataclass(frozen=True)
class PermutationSpec:
    """The involution performed by a quarter-period evolution.

    ``mask`` is XORed onto every node index; ``global_phase_k`` encodes
    the accompanying unobservable phase exp(-i k pi / 2).
    """

    d: int
    mask: BitVector
    cycles: tuple[tuple[int, int], ...]
    global_phase_k: int

    def apply(self, node: int) -> int:
        return node ^ self.mask.index

    def __str__(self) -> str:
        return format_cycles(self.cycles)


def flip_mask(d: int, l: int, coord_perm: tuple[int, ...] | None = None) -> int:
    """Integer flip mask of the quarter-period permutation for dressing (l, rotation)."""
    _check_bounds(d, l)
    perm = identity_perm(d) if coord_perm is None else validate_coord_perm(coord_perm, d)
    if l == 1:
        return (1 << d) - 1
    dressed = 0
    for i in range(1, l + 1):
        dressed |= 1 << (d - perm[i - 1])
    return ((1 << d) - 1) ^ dressed


def predicted_permutation(
    d: int,
    l: int,
    coord_perm: tuple[int, ...] | None = None,
) -> PermutationSpec:
    """The permutation the quarter-period evolution must perform, from theory alone."""
    mask = flip_mask(d, l, coord_perm)
    k = (2**l + d - l - 1) % 4
    return PermutationSpec(
        d=d,
        mask=BitVector.from_index(mask, d),
        cycles=cycles_from_mask(d, mask),
        global_phase_k=k,
    )


def extract_permutation(
    graph,
    tau: float,
    tolerance: float = 1e-8,
) -> PermutationSpec:
    """Read the permutation off the dynamics by evolving every node state.

    Succeeds only if each basis state lands on a single node with
    probability at least 1 - tolerance and all landing phases agree to
    the same tolerance; otherwise raises NotAPermutationError carrying
    the worst-offending node and its leaked probability mass.  The
    reported phase is snapped to the nearest quarter turn.
    """
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    if not 0 < tolerance <= 1e-3:
        raise ValueError(f"tolerance must lie in (0, 1e-3], got {tolerance}")
    n = graph.num_nodes
    table = build_spectral_table(graph.d, graph.l, graph.coord_perm)

    mask = None
    phases = np.empty(n, dtype=complex)
    worst_node, worst_leak = 0, -1.0
    chunk = max(1, (1 << 22) // n)
    for start in range(0, n, chunk):
        width = min(chunk, n - start)
        block = np.zeros((n, width), dtype=complex)
        block[start + np.arange(width), np.arange(width)] = 1.0
        out = evolve(block, tau, table)
        for j in range(width):
            x = start + j
            column = out[:, j]
            if mask is None:
                mask = int(np.argmax(np.abs(column))) ^ x
            amp = column[x ^ mask]
            leak = 1.0 - abs(amp) ** 2
            if leak > worst_leak:
                worst_node, worst_leak = x, leak
            phases[x] = amp / abs(amp) if abs(amp) > 0.5 else 0.0

    if worst_leak > tolerance:
        raise NotAPermutationError(worst_node, worst_leak)
    spread = float(np.max(np.abs(phases - phases[0])))
    if spread > tolerance:
        raise NotAPermutationError(worst_node, worst_leak, reason=f"landing phases disagree by {spread:.3e}")
    k = int(round(-np.angle(phases[0]) / (math.pi / 2))) % 4
    return PermutationSpec(
        d=graph.d,
        mask=BitVector.from_index(mask, graph.d),
        cycles=cycles_from_mask(graph.d, mask),
        global_phase_k=k,
    )


@dataclass(frozen=True)
class RouteStep:
    """One quarter-period evolution: dressing level and the protected coordinates."""

    l: int
    dressed_coords: tuple[int, ...]


@dataclass(frozen=True)
class RoutePlan:
    """An ordered dressing schedule whose step masks XOR to source ^ target."""

    d: int
    source: int
    target: int
    steps: tuple[RouteStep, ...]

    @property
    def total_duration(self) -> float:
        return len(self.steps) * STEP_DURATION

    @property
    def net_mask(self) -> BitVector:
        mask = 0
        for step in self.steps:
            mask ^= step_mask(self.d, step)
        return BitVector.from_index(mask, self.d)


def step_mask(d: int, step: RouteStep) -> int:
    """The flip mask a step performs."""
    if step.l == 1:
        return (1 << d) - 1
    mask = (1 << d) - 1
    for coord in step.dressed_coords:
        mask &= ~(1 << (d - coord))
    return mask


def step_coord_perm(d: int, step: RouteStep) -> tuple[int, ...]:
    """A rotation sending the canonical dressed block onto the step's coordinates."""
    dressed = sorted(step.dressed_coords)
    rest = [i for i in range(1, d + 1) if i not in step.dressed_coords]
    return tuple(dressed + rest)


def _one_step(d: int, mask: int) -> RouteStep:
    weight = bin(mask).count("1")
    if weight == d:
        return RouteStep(l=1, dressed_coords=(1,))
    coords = tuple(i for i in range(1, d + 1) if not (mask >> (d - i)) & 1)
    return RouteStep(l=d - weight, dressed_coords=coords)


def plan_route(d: int, source: int, target: int) -> RoutePlan:
    """Schedule dressings that carry an excitation from source to target.

    Zero steps when the nodes coincide, one step whenever the difference
    mask is realizable directly, and two otherwise (difference weight
    d - 1: the all-ones flip followed by the leftover single-bit flip).
    Raises UnroutableError for the genuinely unreachable d <= 2 cases.
    """
    _check_bounds(d, d)
    n = 1 << d
    if not (0 <= source < n and 0 <= target < n):
        raise ValueError(f"source/target must lie in [0, {n - 1}]")
    mask = source ^ target
    weight = bin(mask).count("1")
    if weight == 0:
        steps: tuple[RouteStep, ...] = ()
    elif weight <= d - 2 or weight == d:
        steps = (_one_step(d, mask),)
    elif d >= 3:  # weight == d - 1
        all_ones = (1 << d) - 1
        steps = (_one_step(d, all_ones), _one_step(d, mask ^ all_ones))
    else:
        raise UnroutableError(
            f"difference mask {mask:0{d}b} (weight {weight}) is unreachable at d={d}: "
            "available flips have weight 0 or d only"
        )
    return RoutePlan(d=d, source=source, target=target, steps=steps)


def execute_route(plan: RoutePlan) -> tuple[np.ndarray, float]:
    """Run the plan: build each step's rotated network and evolve a quarter period.

    Returns the final state and the probability of finding the excitation
    on the target node.
    """
    psi = basis_state(plan.d, plan.source)
    for step in plan.steps:
        graph = dressed_hypercube(plan.d, step.l, step_coord_perm(plan.d, step))
        table = build_spectral_table(graph.d, graph.l, graph.coord_perm)
        psi = evolve(psi, STEP_DURATION, table)
    return psi, float(abs(psi[plan.target]) ** 2)

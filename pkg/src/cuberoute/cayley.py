"""Binary-group networks: elements of Z_2^d, generating sets, and the graphs they span.

Nodes are d-bit vectors; two nodes are linked when they differ by a
generator, i.e. ``y = x XOR g`` for some ``g`` in the generating set.
The generating set ``S(d, l)`` contains every weight-1 vector plus every
nonzero vector supported on the first ``l`` coordinates, so ``l = 1``
gives the plain d-dimensional hypercube and ``l = d`` the complete graph
on ``2**d`` nodes.  Levels in between "dress" the hypercube with chords.

Bit order convention: coordinate 1 is the leftmost / most significant
bit, so node ``(1,0,0)`` has integer index 4 in d = 3 and 1-based label 5.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_DIMENSION = 16

# 2x2 building blocks of the Kronecker representation: identity and swap.
_I2 = np.array([[1, 0], [0, 1]], dtype=np.int64)
_C2 = np.array([[0, 1], [1, 0]], dtype=np.int64)


class OutOfRangeError(ValueError):
    """A dimension or dressing level is outside the supported bounds."""


def _check_bounds(d: int, l: int) -> None:
    if not 1 <= d <= MAX_DIMENSION:
        raise OutOfRangeError(f"dimension d={d} outside [1, {MAX_DIMENSION}]")
    if not 1 <= l <= d:
        raise OutOfRangeError(f"dressing level l={l} outside [1, d={d}]")


def validate_coord_perm(perm: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Check that ``perm`` maps coordinates {1..d} onto themselves."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, d + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{d}")
    return perm


def identity_perm(d: int) -> tuple[int, ...]:
    return tuple(range(1, d + 1))


def permute_mask(mask: int, perm: tuple[int, ...], d: int) -> int:
    """Move bit at coordinate i to coordinate perm[i-1] (coordinates 1-based)."""
    out = 0
    for i in range(1, d + 1):
        if (mask >> (d - i)) & 1:
            out |= 1 << (d - perm[i - 1])
    return out


@dataclass(frozen=True)
class BitVector:
    """An element of Z_2^d: node identity, generator, or flip mask."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.bits) <= MAX_DIMENSION:
            raise OutOfRangeError(f"bit vector length {len(self.bits)} outside [1, {MAX_DIMENSION}]")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0/1, got {self.bits}")

    @classmethod
    def from_index(cls, index: int, d: int) -> BitVector:
        if not 0 <= index < (1 << d):
            raise OutOfRangeError(f"index {index} outside [0, {(1 << d) - 1}]")
        return cls(tuple((index >> (d - i)) & 1 for i in range(1, d + 1)))

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        return cls(tuple(int(c) for c in text))

    @classmethod
    def zero(cls, d: int) -> BitVector:
        return cls((0,) * d)

    @property
    def d(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        """Integer node index; coordinate 1 is the most significant bit."""
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    @property
    def label(self) -> int:
        """1-based node label, as used in permutation cycle notation."""
        return self.index + 1

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def __xor__(self, other: BitVector) -> BitVector:
        if other.d != self.d:
            raise ValueError("dimension mismatch in XOR")
        return BitVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class GeneratingSet:
    """The set S(d, l): all weight-1 vectors plus all nonzero vectors on the first l coordinates."""

    d: int
    l: int
    elements: frozenset[BitVector]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def masks(self) -> tuple[int, ...]:
        """Generators as integer bit masks, sorted."""
        return tuple(sorted(e.index for e in self.elements))


def build_generating_set(d: int, l: int) -> GeneratingSet:
    """Build S(d, l).  Its size is always 2**l + d - l - 1.

    The weight-1 family contributes d vectors, the dressed family the
    2**l - 1 nonzero vectors living on the first l coordinates; the two
    overlap in the l weight-1 vectors of that block, and the union keeps
    a single copy.  The identity (all-zero vector) is excluded.
    """
    _check_bounds(d, l)
    elements: set[BitVector] = set()
    for i in range(1, d + 1):
        elements.add(BitVector.from_index(1 << (d - i), d))
    for head in itertools.product((0, 1), repeat=l):
        if any(head):
            elements.add(BitVector(head + (0,) * (d - l)))
    return GeneratingSet(d=d, l=l, elements=frozenset(elements))


@dataclass(frozen=True)
class CayleyGraph:
    """A dressed-hypercube network, optionally rotated.

    ``coord_perm`` relocates the dressed block: generator bits at
    coordinate i move to coordinate coord_perm[i-1].  ``translation``
    relabels nodes by an XOR offset; it never changes the edge set and is
    kept only to record how a graph was produced.

    The graph is stored as generator masks; the dense adjacency matrix
    and the explicit edge set are materialized on demand.
    """

    d: int
    l: int
    coord_perm: tuple[int, ...]
    translation: BitVector
    gen_masks: tuple[int, ...]

    @property
    def num_nodes(self) -> int:
        return 1 << self.d

    @property
    def degree(self) -> int:
        return len(self.gen_masks)

    def neighbors(self, node: int) -> list[int]:
        return [node ^ g for g in self.gen_masks]

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        found: set[tuple[int, int]] = set()
        for x in range(self.num_nodes):
            for g in self.gen_masks:
                y = x ^ g
                found.add((x, y) if x < y else (y, x))
        return frozenset(found)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_cayley_graph(
    gen: GeneratingSet,
    coord_perm: tuple[int, ...] | None = None,
    translation: BitVector | None = None,
) -> CayleyGraph:
    """Connect every node x to x XOR g for each (rotated) generator g."""
    d = gen.d
    perm = identity_perm(d) if coord_perm is None else validate_coord_perm(coord_perm, d)
    if translation is None:
        translation = BitVector.zero(d)
    elif translation.d != d:
        raise ValueError(f"translation has dimension {translation.d}, expected {d}")
    masks = tuple(sorted(permute_mask(g, perm, d) for g in gen.masks))
    return CayleyGraph(d=d, l=gen.l, coord_perm=perm, translation=translation, gen_masks=masks)


def dressed_hypercube(
    d: int,
    l: int,
    coord_perm: tuple[int, ...] | None = None,
    translation: BitVector | None = None,
) -> CayleyGraph:
    """Shorthand for ``build_cayley_graph(build_generating_set(d, l), ...)``."""
    return build_cayley_graph(build_generating_set(d, l), coord_perm, translation)


def adjacency_matrix(graph: CayleyGraph) -> np.ndarray:
    """Dense 0/1 adjacency; symmetric, zero diagonal, constant row sum."""
    n = graph.num_nodes
    a = np.zeros((n, n), dtype=np.int64)
    for g in graph.gen_masks:
        x = np.arange(n)
        a[x, x ^ g] = 1
    return a


def generator_masks(gen: GeneratingSet) -> list[BitVector]:
    """Generators read as Kronecker-factor masks, sorted by index.

    Each mask selects which of the d two-dimensional factors carries the
    swap block instead of the identity; summing kronecker_term over the
    list reproduces the adjacency matrix of the unrotated graph.
    """
    return [BitVector.from_index(m, gen.d) for m in gen.masks]


def kronecker_term(mask: BitVector) -> np.ndarray:
    """The d-fold Kronecker product with a swap block where mask has a 1."""
    out = np.array([[1]], dtype=np.int64)
    for b in mask.bits:
        out = np.kron(out, _C2 if b else _I2)
    return out


def cartesian_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Adjacency of the Cartesian graph product.

    A(G x H) = A(G) (x) I + I (x) A(H); the spectrum of the product is
    every pairwise sum of component eigenvalues.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    na, nb = a.shape[0], b.shape[0]
    return np.kron(a, np.eye(nb, dtype=a.dtype)) + np.kron(np.eye(na, dtype=b.dtype), b)


def build_path_graph(n: int) -> np.ndarray:
    """Adjacency of the n-node path (homogeneous nearest-neighbor chain)."""
    if n < 2:
        raise OutOfRangeError(f"path graph needs n >= 2, got n={n}")
    a = np.zeros((n, n), dtype=np.int64)
    idx = np.arange(n - 1)
    a[idx, idx + 1] = 1
    a[idx + 1, idx] = 1
    return a


@dataclass(frozen=True)
class ColumnarReport:
    """Result of the column-arrangement test rooted at a source node.

    ``columns`` are the BFS distance classes from the source (they always
    partition the node set; column 0 is the source alone).  The graph is
    columnar when no edge stays inside a column, edges only join adjacent
    columns, and within each column all nodes agree on their forward and
    backward link counts.  ``violation`` describes the first failure.
    """

    is_columnar: bool
    columns: tuple[tuple[int, ...], ...]
    violation: str | None = None


def check_columnar(graph: CayleyGraph, source: int = 0) -> ColumnarReport:
    n = graph.num_nodes
    if not 0 <= source < n:
        raise OutOfRangeError(f"source index {source} outside [0, {n - 1}]")

    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    layers: list[list[int]] = [[source]]
    while queue:
        u = queue.popleft()
        for v in graph.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                if dist[v] == len(layers):
                    layers.append([])
                layers[dist[v]].append(v)
                queue.append(v)
    columns = tuple(tuple(sorted(layer)) for layer in layers)

    def fail(reason: str) -> ColumnarReport:
        return ColumnarReport(is_columnar=False, columns=columns, violation=reason)

    for u in range(n):
        for v in graph.neighbors(u):
            if u < v:
                if dist[u] == dist[v]:
                    return fail(f"intra-column edge ({u},{v}) in column {dist[u]}")
                if abs(dist[u] - dist[v]) > 1:
                    return fail(f"non-adjacent-column edge ({u},{v})")

    for col_index, layer in enumerate(columns):
        forward = {sum(1 for v in graph.neighbors(u) if dist[v] == col_index + 1) for u in layer}
        if len(forward) > 1:
            return fail(f"non-uniform forward degree in column {col_index}")
        backward = {sum(1 for v in graph.neighbors(u) if dist[v] == col_index - 1) for u in layer}
        if len(backward) > 1:
            return fail(f"non-uniform backward degree in column {col_index}")

    return ColumnarReport(is_columnar=True, columns=columns)


def graph_to_dict(graph: CayleyGraph) -> dict:
    """JSON-ready description: 0-based node indices, edges sorted lexicographically."""
    return {
        "d": graph.d,
        "l": graph.l,
        "coord_perm": list(graph.coord_perm),
        "translation": str(graph.translation),
        "nodes": graph.num_nodes,
        "edges": [list(e) for e in graph.sorted_edges()],
    }


def graph_from_dict(payload: dict) -> CayleyGraph:
    """Rebuild a graph from its JSON description and confirm the edge set matches."""
    graph = dressed_hypercube(
        int(payload["d"]),
        int(payload["l"]),
        tuple(payload["coord_perm"]),
        BitVector.from_string(payload["translation"]),
    )
    edges = frozenset((min(i, j), max(i, j)) for i, j in payload["edges"])
    if edges != graph.edges:
        raise ValueError("edge list does not match the declared (d, l, coord_perm)")
    return graph

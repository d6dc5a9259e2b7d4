"""Disjoint random-walk partitioners and uniform subgraph batching.

Both partitioners consume the node set greedily: a root is drawn uniformly
from the nodes not yet assigned to any subgraph, then the walk extends only
through not-yet-assigned neighbors and stops early at dead ends. Every node
therefore lands in exactly one subgraph, which is what caps the gradient
sensitivity of a batch at one subgraph's contribution.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BatchTooLarge,
    InvalidRestartCount,
    InvalidWalkLength,
    RateExceedsOne,
)
from .graph import Graph
from .rng import as_generator

DRW = "drw"
DRW_R = "drw-r"
DRW_D = "drw-d"
METHODS = (DRW, DRW_R, DRW_D)


@dataclass(frozen=True)
class Subgraph:
    root: int
    nodes: tuple            # nodes[0] == root, no duplicates
    method: str

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Partition:
    subgraphs: tuple
    method: str
    walk_length: int
    restarts: int           # 1 for plain disjoint walks
    n_nodes: int

    @property
    def size(self) -> int:
        return len(self.subgraphs)

    @property
    def max_subgraph_nodes(self) -> int:
        """Per-method cap on subgraph size: L+1, or 1+R*L with restarts."""
        if self.method == DRW_R:
            return 1 + self.restarts * self.walk_length
        return self.walk_length + 1

    def owner(self) -> np.ndarray:
        """node id -> index of the subgraph containing it."""
        out = np.full(self.n_nodes, -1, dtype=np.int64)
        for i, sg in enumerate(self.subgraphs):
            out[list(sg.nodes)] = i
        return out


@dataclass(frozen=True)
class Batch:
    members: tuple          # distinct Subgraph references
    iteration: int

    def __len__(self):
        return len(self.members)


class _RemainingSet:
    """Set of node ids with O(1) uniform sampling and O(1) removal."""

    def __init__(self, n):
        self.items = np.arange(n, dtype=np.int64)
        self.pos = np.arange(n, dtype=np.int64)
        self.size = n

    def sample(self, rng) -> int:
        return int(self.items[rng.integers(self.size)])

    def remove(self, v) -> None:
        i = self.pos[v]
        last = self.items[self.size - 1]
        self.items[i] = last
        self.pos[last] = i
        self.items[self.size - 1] = v
        self.pos[v] = self.size - 1
        self.size -= 1

    def contains(self, v) -> bool:
        return self.pos[v] < self.size


def _extend_walk(g, rng, remaining, start, walk_length, out_nodes):
    """Walk from ``start`` through unconsumed neighbors, consuming them."""
    v = start
    for _ in range(walk_length):
        nbrs = g.neighbors(v)
        valid = [int(u) for u in nbrs if remaining.contains(u)]
        if not valid:
            break
        v = valid[rng.integers(len(valid))]
        out_nodes.append(v)
        remaining.remove(v)


def drw_partition(g: Graph, walk_length: int, seed) -> Partition:
    """Partition all nodes into disjoint walks of at most ``walk_length`` steps."""
    if walk_length < 1:
        raise InvalidWalkLength(f"walk length must be >= 1, got {walk_length}")
    rng = as_generator(seed)
    remaining = _RemainingSet(g.n_nodes)
    subgraphs = []
    while remaining.size:
        root = remaining.sample(rng)
        remaining.remove(root)
        nodes = [root]
        _extend_walk(g, rng, remaining, root, walk_length, nodes)
        subgraphs.append(Subgraph(root=root, nodes=tuple(nodes), method=DRW))
    return Partition(subgraphs=tuple(subgraphs), method=DRW,
                     walk_length=walk_length, restarts=1, n_nodes=g.n_nodes)


def drw_r_partition(g: Graph, walk_length: int, restarts: int, seed) -> Partition:
    """Like drw_partition, but each root launches ``restarts`` walks.

    Walk r only sees nodes not consumed by walks 1..r-1, so a subgraph holds
    at most 1 + restarts * walk_length nodes.
    """
    if walk_length < 1:
        raise InvalidWalkLength(f"walk length must be >= 1, got {walk_length}")
    if restarts < 1:
        raise InvalidRestartCount(f"restart count must be >= 1, got {restarts}")
    rng = as_generator(seed)
    remaining = _RemainingSet(g.n_nodes)
    subgraphs = []
    while remaining.size:
        root = remaining.sample(rng)
        remaining.remove(root)
        nodes = [root]
        for _ in range(restarts):
            _extend_walk(g, rng, remaining, root, walk_length, nodes)
        subgraphs.append(Subgraph(root=root, nodes=tuple(nodes), method=DRW_R))
    return Partition(subgraphs=tuple(subgraphs), method=DRW_R,
                     walk_length=walk_length, restarts=restarts, n_nodes=g.n_nodes)


def sample_batch(p: Partition, m: int, seed, iteration: int = 0) -> Batch:
    """Uniformly random m-subset of the partition's subgraphs (no replacement)."""
    if not 1 <= m <= p.size:
        raise BatchTooLarge(f"batch size {m} not in [1, {p.size}]")
    rng = as_generator(seed)
    idx = rng.choice(p.size, size=m, replace=False)
    return Batch(members=tuple(p.subgraphs[i] for i in idx), iteration=iteration)


def min_subgraph_count(method: str, n_nodes: int, walk_length: int,
                       restarts: int = 1) -> int:
    """Fewest subgraphs any n-node graph can yield under the given method."""
    if walk_length < 1:
        raise InvalidWalkLength(f"walk length must be >= 1, got {walk_length}")
    if method in (DRW, DRW_D):
        cap = walk_length + 1
    elif method == DRW_R:
        if restarts < 1:
            raise InvalidRestartCount(f"restart count must be >= 1, got {restarts}")
        cap = 1 + restarts * walk_length
    else:
        raise ValueError(f"unknown sampling method {method!r}")
    return math.ceil(n_nodes / cap)


def sampling_rate_bound(method: str, n_nodes: int, walk_length: int,
                        restarts: int, m: int) -> float:
    """Upper bound on the probability that a fixed node's subgraph is batched.

    Equal to m / M_min; valid for amplification only while it is a
    probability, so configurations pushing it above 1 are rejected.
    """
    m_min = min_subgraph_count(method, n_nodes, walk_length, restarts)
    q = m / m_min
    if q > 1.0:
        raise RateExceedsOne(
            f"m={m} over M_min={m_min} gives rate {q:.4g} > 1; "
            f"shrink the batch or the walks")
    return q


def export_partition_jsonl(p: Partition, path) -> None:
    """Debug dump: one subgraph per line as {"root", "nodes", "method"}."""
    with open(path, "w") as fh:
        for sg in p.subgraphs:
            fh.write(json.dumps({"root": int(sg.root),
                                 "nodes": [int(v) for v in sg.nodes],
                                 "method": sg.method}) + "\n")

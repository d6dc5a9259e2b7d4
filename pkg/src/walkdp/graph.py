"""Immutable undirected graph and its on-disk bundle format.

A graph bundle is a directory of five files::

    edges.tsv     one "u<TAB>v" pair per line, decimal node ids
    features.csv  N rows x d comma-separated decimals, no header
    labels.tsv    one integer class id per line
    masks.tsv     one of {train,val,test,none} per line
    meta.json     {"n_nodes", "n_features", "n_classes", "checksum"}

The checksum is the hex SHA-256 of edges.tsv. The loader validates every
declared count against file contents and rejects mismatches.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CountMismatch,
    LabelOutOfRange,
    MalformedInput,
    MissingFile,
    NonNumericFeature,
    OverlappingMasks,
)

log = logging.getLogger(__name__)

BUNDLE_FILES = ("edges.tsv", "features.csv", "labels.tsv", "masks.tsv", "meta.json")
MASK_TOKENS = ("train", "val", "test", "none")


@dataclass(frozen=True)
class Graph:
    """Undirected graph: CSR adjacency, dense float64 features, labels, masks.

    Immutable after construction; safe for concurrent reads. The CSR stores
    each undirected edge in both directions, neighbor lists sorted ascending,
    no self-loops, no duplicates.
    """

    n_nodes: int
    n_features: int
    n_classes: int
    features: np.ndarray   # (N, d) float64
    indptr: np.ndarray     # (N + 1,) int64
    indices: np.ndarray    # (nnz,) int64
    labels: np.ndarray     # (N,) int64 in [0, n_classes)
    train_mask: np.ndarray
    val_mask: np.ndarray
    test_mask: np.ndarray

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def n_edges(self) -> int:
        """Number of undirected edges."""
        return int(self.indices.shape[0]) // 2

    def mask(self, which: str) -> np.ndarray:
        try:
            return {"train": self.train_mask, "val": self.val_mask,
                    "test": self.test_mask}[which]
        except KeyError:
            raise ValueError(f"unknown mask {which!r}") from None

    def validate(self) -> None:
        n = self.n_nodes
        if self.features.shape != (n, self.n_features):
            raise CountMismatch(
                f"features shape {self.features.shape} != ({n}, {self.n_features})")
        if self.features.dtype != np.float64:
            raise NonNumericFeature(f"features dtype {self.features.dtype} != float64")
        if self.indptr.shape != (n + 1,) or self.indptr[0] != 0:
            raise CountMismatch("malformed CSR indptr")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= n):
            raise CountMismatch("adjacency index outside [0, n_nodes)")
        for v in range(n):
            nbr = self.neighbors(v)
            if nbr.size == 0:
                continue
            if np.any(np.diff(nbr) <= 0):
                raise CountMismatch(f"neighbors of node {v} not strictly ascending")
            if np.any(nbr == v):
                raise CountMismatch(f"self-loop stored at node {v}")
        if not _csr_is_symmetric(n, self.indptr, self.indices):
            raise CountMismatch("adjacency is not symmetric")
        if self.labels.shape != (n,):
            raise CountMismatch(f"labels shape {self.labels.shape} != ({n},)")
        bad = np.flatnonzero((self.labels < 0) | (self.labels >= self.n_classes))
        if bad.size:
            raise LabelOutOfRange(
                f"label {int(self.labels[bad[0]])} at node {int(bad[0])} "
                f"outside [0, {self.n_classes})")
        for m in (self.train_mask, self.val_mask, self.test_mask):
            if m.shape != (n,) or m.dtype != np.bool_:
                raise CountMismatch("mask must be boolean of length n_nodes")
        overlap = (self.train_mask.astype(int) + self.val_mask.astype(int)
                   + self.test_mask.astype(int))
        if np.any(overlap > 1):
            v = int(np.flatnonzero(overlap > 1)[0])
            raise OverlappingMasks(f"node {v} belongs to more than one split")


def _csr_is_symmetric(n, indptr, indices) -> bool:
    import scipy.sparse as sp
    a = sp.csr_matrix((np.ones(indices.size, dtype=np.int8), indices, indptr),
                      shape=(n, n))
    return (a != a.T).nnz == 0


def build_graph(n_nodes, edges, features, labels, train_mask, val_mask, test_mask,
                n_classes=None) -> Graph:
    """Assemble and validate a Graph from an edge list.

    Edges are symmetrized and deduplicated; self-loops are dropped (logged).
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= n_nodes):
        bad = edges[(edges < 0).any(axis=1) | (edges >= n_nodes).any(axis=1)][0]
        raise CountMismatch(f"edge {tuple(bad)} references node outside [0, {n_nodes})")
    loops = edges[:, 0] == edges[:, 1]
    if loops.any():
        log.info("dropping %d self-loop(s)", int(loops.sum()))
        edges = edges[~loops]
    indptr, indices = _edges_to_csr(n_nodes, edges)
    features = np.ascontiguousarray(np.asarray(features, dtype=np.float64))
    labels = np.asarray(labels, dtype=np.int64)
    if n_classes is None:
        n_classes = int(labels.max()) + 1 if labels.size else 0
    g = Graph(
        n_nodes=int(n_nodes),
        n_features=int(features.shape[1]) if features.ndim == 2 else 0,
        n_classes=int(n_classes),
        features=features,
        indptr=indptr,
        indices=indices,
        labels=labels,
        train_mask=np.asarray(train_mask, dtype=bool),
        val_mask=np.asarray(val_mask, dtype=bool),
        test_mask=np.asarray(test_mask, dtype=bool),
    )
    g.validate()
    return g


def _edges_to_csr(n_nodes, edges):
    if edges.size == 0:
        return np.zeros(n_nodes + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    both = np.concatenate([edges, edges[:, ::-1]], axis=0)
    # unique over (u, v) pairs deduplicates and symmetrizes in one shot
    key = both[:, 0] * n_nodes + both[:, 1]
    key = np.unique(key)
    u = key // n_nodes
    v = key % n_nodes
    counts = np.bincount(u, minlength=n_nodes)
    indptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, v.astype(np.int64)


def max_degree(g: Graph) -> int:
    """Largest neighbor count over all nodes; 0 for an edgeless graph."""
    if g.indices.size == 0:
        return 0
    return int(g.degrees().max())


# --- bundle I/O -------------------------------------------------------------

def load_graph_bundle(path) -> Graph:
    """Load and validate a graph bundle directory."""
    root = Path(path)
    for name in BUNDLE_FILES:
        if not (root / name).is_file():
            raise MissingFile(f"{root / name}: required bundle file is missing")

    meta_file = root / "meta.json"
    try:
        meta = json.loads(meta_file.read_text())
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{meta_file}: invalid JSON ({e})") from None
    for key in ("n_nodes", "n_features", "n_classes", "checksum"):
        if key not in meta:
            raise MalformedInput(f"{meta_file}: missing key {key!r}")
    n = int(meta["n_nodes"])
    d = int(meta["n_features"])
    n_classes = int(meta["n_classes"])

    edge_bytes = (root / "edges.tsv").read_bytes()
    checksum = hashlib.sha256(edge_bytes).hexdigest()
    if checksum != meta["checksum"]:
        raise CountMismatch(
            f"{root / 'edges.tsv'}: checksum {checksum} does not match meta.json")

    edges = _parse_edges(root / "edges.tsv", edge_bytes, n)
    features = _parse_features(root / "features.csv", n, d)
    labels = _parse_labels(root / "labels.tsv", n, n_classes)
    masks = _parse_masks(root / "masks.tsv", n)
    return build_graph(n, edges, features, labels, *masks, n_classes=n_classes)


def _parse_edges(path, raw: bytes, n_nodes):
    edges = []
    for i, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MalformedInput(f"{path}:{i}: expected 'u<TAB>v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedInput(f"{path}:{i}: non-integer node id in {line!r}") from None
        if not (0 <= u < n_nodes and 0 <= v < n_nodes):
            raise CountMismatch(f"{path}:{i}: node id outside [0, {n_nodes})")
        edges.append((u, v))
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


def _parse_features(path, n_nodes, n_features):
    try:
        feats = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError:
        _scan_features_for_error(path, n_features)
        raise  # unreachable if the scan found the culprit
    if feats.size == 0:
        feats = feats.reshape(0, n_features)
    if feats.shape[0] != n_nodes:
        raise CountMismatch(f"{path}: {feats.shape[0]} rows, meta declares {n_nodes}")
    if feats.shape[1] != n_features:
        raise CountMismatch(f"{path}: {feats.shape[1]} columns, meta declares {n_features}")
    if not np.isfinite(feats).all():
        r, c = np.argwhere(~np.isfinite(feats))[0]
        raise NonNumericFeature(f"{path}:{r + 1}: non-finite value in column {c + 1}")
    return feats


def _scan_features_for_error(path, n_features):
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            cells = line.rstrip("\n").split(",")
            if len(cells) != n_features:
                raise CountMismatch(
                    f"{path}:{i}: {len(cells)} columns, meta declares {n_features}")
            for j, cell in enumerate(cells, start=1):
                try:
                    float(cell)
                except ValueError:
                    raise NonNumericFeature(
                        f"{path}:{i}: non-numeric value {cell!r} in column {j}") from None


def _parse_labels(path, n_nodes, n_classes):
    labels = []
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                continue
            try:
                y = int(s)
            except ValueError:
                raise MalformedInput(f"{path}:{i}: non-integer label {s!r}") from None
            if not (0 <= y < n_classes):
                raise LabelOutOfRange(f"{path}:{i}: label {y} outside [0, {n_classes})")
            labels.append(y)
    if len(labels) != n_nodes:
        raise CountMismatch(f"{path}: {len(labels)} labels, meta declares {n_nodes}")
    return np.asarray(labels, dtype=np.int64)


def _parse_masks(path, n_nodes):
    tokens = []
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                continue
            if s not in MASK_TOKENS:
                raise MalformedInput(
                    f"{path}:{i}: mask token {s!r} not in {MASK_TOKENS}")
            tokens.append(s)
    if len(tokens) != n_nodes:
        raise CountMismatch(f"{path}: {len(tokens)} rows, meta declares {n_nodes}")
    arr = np.asarray(tokens)
    return arr == "train", arr == "val", arr == "test"


def save_graph_bundle(g: Graph, path) -> None:
    """Write a Graph as a bundle directory; load(save(g)) round-trips bitwise."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    lines = []
    for u in range(g.n_nodes):
        for v in g.neighbors(u):
            if u < v:  # store each undirected edge once, canonical order
                lines.append(f"{u}\t{v}\n")
    edge_bytes = "".join(lines).encode("utf-8")
    (root / "edges.tsv").write_bytes(edge_bytes)

    np.savetxt(root / "features.csv", g.features, fmt="%.17g", delimiter=",")
    (root / "labels.tsv").write_text("".join(f"{y}\n" for y in g.labels))
    token = np.full(g.n_nodes, "none", dtype=object)
    token[g.train_mask] = "train"
    token[g.val_mask] = "val"
    token[g.test_mask] = "test"
    (root / "masks.tsv").write_text("".join(f"{t}\n" for t in token))

    meta = {
        "n_nodes": g.n_nodes,
        "n_features": g.n_features,
        "n_classes": g.n_classes,
        "checksum": hashlib.sha256(edge_bytes).hexdigest(),
    }
    (root / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def row_normalize_features(g: Graph) -> Graph:
    """Scale each feature row to sum 1 (rows summing to 0 are left as-is)."""
    sums = g.features.sum(axis=1, keepdims=True)
    scale = np.where(sums != 0, sums, 1.0)
    feats = g.features / scale
    return Graph(
        n_nodes=g.n_nodes, n_features=g.n_features, n_classes=g.n_classes,
        features=feats, indptr=g.indptr, indices=g.indices, labels=g.labels,
        train_mask=g.train_mask, val_mask=g.val_mask, test_mask=g.test_mask,
    )

"""Deterministic synthetic graphs for tests, demos and desk-scale runs."""

import numpy as np

from .graph import Graph, build_graph
from .rng import as_generator


def random_graph(n_nodes, avg_degree=3.0, n_features=4, n_classes=3, seed=0) -> Graph:
    """Uniform random graph with arbitrary (uninformative) features and labels.

    Used by property tests that only care about structure.
    """
    rng = as_generator(seed)
    n_edges = int(round(avg_degree * n_nodes / 2))
    if n_nodes >= 2 and n_edges > 0:
        edges = rng.integers(0, n_nodes, size=(n_edges, 2))
        edges = edges[edges[:, 0] != edges[:, 1]]
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    features = rng.standard_normal((n_nodes, n_features))
    labels = rng.integers(0, n_classes, size=n_nodes)
    split = rng.random(n_nodes)
    train = split < 0.5
    val = (split >= 0.5) & (split < 0.7)
    test = split >= 0.7
    return build_graph(n_nodes, edges, features, labels, train, val, test,
                       n_classes=n_classes)


def planted_graph(n_nodes, n_features, n_classes, *, train_per_class, n_val,
                  n_test, avg_degree=4.0, homophily=0.9, signal=0.8,
                  noise_rate=0.02, seed=0) -> Graph:
    """Homophilous classification graph with class-indicative binary features.

    Nodes get a label; edges prefer same-label endpoints with probability
    ``homophily``; features are sparse 0/1 indicators that fire at rate
    ``signal`` on the label's own feature block and ``noise_rate`` elsewhere.
    Masks follow the transductive citation-benchmark convention: a small
    per-class training set, then validation and test blocks.
    """
    rng = as_generator(seed)
    labels = rng.integers(0, n_classes, size=n_nodes)
    members = [np.flatnonzero(labels == c) for c in range(n_classes)]

    n_edges = int(round(avg_degree * n_nodes / 2))
    us = rng.integers(0, n_nodes, size=n_edges)
    same = rng.random(n_edges) < homophily
    vs = np.empty(n_edges, dtype=np.int64)
    for i, u in enumerate(us):
        pool = members[labels[u]] if same[i] and members[labels[u]].size > 1 else None
        if pool is None:
            vs[i] = rng.integers(0, n_nodes)
        else:
            vs[i] = pool[rng.integers(0, pool.size)]
    edges = np.stack([us, vs], axis=1)
    edges = edges[edges[:, 0] != edges[:, 1]]

    block = n_features // n_classes
    features = (rng.random((n_nodes, n_features)) < noise_rate).astype(np.float64)
    for c in range(n_classes):
        lo = c * block
        hi = n_features if c == n_classes - 1 else lo + block
        rows = members[c]
        features[np.ix_(rows, np.arange(lo, hi))] = (
            rng.random((rows.size, hi - lo)) < signal).astype(np.float64)

    train = np.zeros(n_nodes, dtype=bool)
    for c in range(n_classes):
        take = members[c][:train_per_class]
        train[take] = True
    rest = np.flatnonzero(~train)
    rest = rng.permutation(rest)
    val = np.zeros(n_nodes, dtype=bool)
    test = np.zeros(n_nodes, dtype=bool)
    val[rest[:n_val]] = True
    test[rest[n_val:n_val + n_test]] = True
    return build_graph(n_nodes, edges, features, labels, train, val, test,
                       n_classes=n_classes)


def cora_like_graph(seed=0) -> Graph:
    """Surrogate with the Cora benchmark's shape: 2708 nodes, 1433 binary
    features, 7 classes, 140 train / 500 val / 1000 test."""
    return planted_graph(2708, 1433, 7, train_per_class=20, n_val=500,
                         n_test=1000, avg_degree=3.9, homophily=0.85,
                         signal=0.12, noise_rate=0.005, seed=seed)

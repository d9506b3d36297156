"""Undirected dyadic samples: triangular storage and edge-list ingestion."""
import math

import numpy as np

from .errors import (
    ConflictingDuplicate,
    DyadDataError,
    MissingDyad,
    NonFiniteWeight,
    SelfLoop,
)


def flat_index(i, j, n_nodes):
    """Flat position of the unordered pair {i,j}, i<j, in row-major order."""
    return i * n_nodes - i * (i + 1) // 2 + (j - i - 1)


class DyadicSample:
    """N nodes and the N(N-1)/2 undirected dyad weights W_ij.

    One value is stored per unordered pair (upper triangle, row-major),
    so W_ij == W_ji structurally. Immutable after construction.
    """

    __slots__ = ("n_nodes", "_weights", "node_labels")

    def __init__(self, n_nodes, weights, node_labels=None):
        n_nodes = int(n_nodes)
        if n_nodes < 2:
            raise ValueError("a dyadic sample needs at least 2 nodes")
        w = np.ascontiguousarray(weights, dtype=np.float64)
        expected = n_nodes * (n_nodes - 1) // 2
        if w.ndim != 1 or w.shape[0] != expected:
            raise ValueError(
                f"expected {expected} dyad weights for N={n_nodes}, "
                f"got shape {w.shape}"
            )
        if not np.all(np.isfinite(w)):
            raise NonFiniteWeight("dyad weights must be finite")
        w = w.copy()
        w.setflags(write=False)
        self.n_nodes = n_nodes
        self._weights = w
        self.node_labels = (
            list(node_labels) if node_labels is not None else list(range(n_nodes))
        )

    @property
    def weights(self):
        """Read-only flat weight array, pair {i,j} at flat_index(i, j, N)."""
        return self._weights

    @property
    def n_dyads(self):
        return self.n_nodes * (self.n_nodes - 1) // 2

    def get(self, i, j):
        if i == j:
            raise SelfLoop(f"dyad ({i},{i}) is undefined", pair=(i, j))
        if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
            raise IndexError(f"node id out of range: ({i},{j})")
        if i > j:
            i, j = j, i
        return float(self._weights[flat_index(i, j, self.n_nodes)])

    def permuted(self, perm):
        """Sample with node i relabeled to perm[i]; used by invariance tests."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n_nodes)):
            raise ValueError("perm must be a permutation of 0..N-1")
        n = self.n_nodes
        out = np.empty_like(self._weights)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = perm[i], perm[j]
                if a > b:
                    a, b = b, a
                out[flat_index(a, b, n)] = self._weights[flat_index(i, j, n)]
        return DyadicSample(n, out)


def _compact_labels(labels):
    if all(isinstance(x, int) and not isinstance(x, bool) for x in labels):
        ordered = sorted(labels)
    else:
        ordered = sorted(labels, key=str)
    return ordered, {lab: k for k, lab in enumerate(ordered)}


def from_edge_list(rows):
    """Build a DyadicSample from (i, j, w) rows.

    Node labels may be arbitrary hashables; they are compacted to dense
    0-based ids in sorted order (kept on ``node_labels``). Each unordered
    pair must appear exactly once, or twice with bit-equal values.
    """
    rows = list(rows)
    labels = set()
    for i, j, _ in rows:
        labels.add(i)
        labels.add(j)
    if len(labels) < 2:
        raise MissingDyad("edge list must mention at least 2 nodes")
    ordered, idmap = _compact_labels(labels)
    n_nodes = len(ordered)
    n = n_nodes * (n_nodes - 1) // 2
    weights = np.full(n, np.nan)
    seen = {}
    for li, lj, w in rows:
        if li == lj:
            raise SelfLoop(f"self loop at node {li!r}", pair=(li, lj))
        w = float(w)
        if not math.isfinite(w):
            raise NonFiniteWeight(
                f"non-finite weight for dyad ({li!r},{lj!r})", pair=(li, lj)
            )
        i, j = idmap[li], idmap[lj]
        if i > j:
            i, j = j, i
        key = (i, j)
        if key in seen:
            if seen[key] != w:
                raise ConflictingDuplicate(
                    f"dyad ({li!r},{lj!r}) appears twice with values "
                    f"{seen[key]!r} and {w!r}",
                    pair=(li, lj),
                )
        else:
            seen[key] = w
            weights[flat_index(i, j, n_nodes)] = w
    if len(seen) < n:
        for i in range(n_nodes):
            for j in range(i + 1, n_nodes):
                if (i, j) not in seen:
                    raise MissingDyad(
                        f"dyad ({ordered[i]!r},{ordered[j]!r}) never appears",
                        pair=(ordered[i], ordered[j]),
                    )
    return DyadicSample(n_nodes, weights, node_labels=ordered)


def dyad_mean(sample):
    """(1/n) sum_{i<j} W_ij."""
    return float(np.mean(sample.weights))


def read_edge_list_csv(path):
    """Read an `i,j,w` edge-list CSV (``#`` comment lines ignored)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        lineno = 0
        header_seen = False
        for line in fh:
            lineno += 1
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                cols = [c.strip().lower() for c in line.split(",")]
                if cols != ["i", "j", "w"]:
                    raise DyadDataError(
                        f"{path}:{lineno}: expected header 'i,j,w', got {line!r}"
                    )
                header_seen = True
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3:
                raise DyadDataError(f"{path}:{lineno}: expected 3 fields")
            li, lj = _parse_label(parts[0]), _parse_label(parts[1])
            try:
                w = float(parts[2])
            except ValueError:
                raise NonFiniteWeight(
                    f"{path}:{lineno}: cannot parse weight {parts[2]!r}",
                    pair=(li, lj),
                ) from None
            rows.append((lineno, li, lj, w))
    if not header_seen:
        raise DyadDataError(f"{path}: empty edge list")
    try:
        return from_edge_list([(li, lj, w) for _, li, lj, w in rows])
    except DyadDataError as err:
        if err.pair is not None:
            lines = [
                ln for ln, li, lj, _ in rows
                if {li, lj} == set(err.pair) or (li, lj) == tuple(err.pair)
            ]
            if lines:
                raise type(err)(
                    f"{path}:{lines[-1]}: {err}", pair=err.pair
                ) from None
        raise type(err)(f"{path}: {err}", pair=err.pair) from None


def _parse_label(text):
    try:
        return int(text)
    except ValueError:
        return text


def write_edge_list_csv(sample, path):
    """Write canonical i<j rows, sorted, with an `i,j,w` header."""
    n = sample.n_nodes
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("i,j,w\n")
        for i in range(n):
            for j in range(i + 1, n):
                li, lj = sample.node_labels[i], sample.node_labels[j]
                fh.write(f"{li},{lj},{sample.get(i, j)!r}\n")

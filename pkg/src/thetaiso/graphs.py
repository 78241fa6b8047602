"""Simple undirected graphs, file parsing, and the association graph of a pair.

Vertices are 0-based integers.  Graphs are immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Graph",
    "GraphParseError",
    "VertexPairIndex",
    "parse_graph",
    "parse_dimacs",
    "parse_graph_text",
    "load_graph",
    "complement",
    "association_graph",
    "relabel",
    "empty_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "disjoint_union",
    "petersen_graph",
]


class GraphParseError(ValueError):
    """Malformed graph input.  Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Stores both the edge set (as sorted vertex pairs) and a symmetric boolean
    adjacency table; the two always agree.  Self-loops are rejected.
    """

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n, edges=()):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        normalized = set()
        adj = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop ({i},{i}) not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            a, b = (i, j) if i < j else (j, i)
            normalized.add((a, b))
            adj[a, b] = adj[b, a] = True
        adj.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adjacency", adj)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def has_edge(self, i, j):
        return bool(self.adjacency[i, j])

    def degrees(self):
        """Vertex degrees as a tuple of ints."""
        return tuple(int(d) for d in self.adjacency.sum(axis=1))

    @property
    def num_edges(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


class VertexPairIndex:
    """Row-major flat indexing of vertex pairs (i,j) plus the extra symbol omega.

    Pair (i,j) maps to i*n + j; omega maps to n*n.  The map is a bijection
    between [0,n)^2 union {omega} and [0, n^2].
    """

    __slots__ = ("n", "omega")

    def __init__(self, n):
        if n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "omega", n * n)

    def __setattr__(self, name, value):
        raise AttributeError("VertexPairIndex is immutable")

    def index(self, i, j):
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"pair ({i},{j}) out of range for n={n}")
        return i * n + j

    def pair(self, v):
        """Inverse map: flat index to (i,j), or None for the omega index."""
        if v == self.omega:
            return None
        if not 0 <= v < self.omega:
            raise ValueError(f"index {v} out of range")
        return divmod(v, self.n)

    @property
    def size(self):
        """Total number of indices including omega."""
        return self.omega + 1


def _data_lines(text, comment_chars):
    """Yield (line_number, stripped_line) skipping blanks and comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in comment_chars:
            continue
        yield lineno, line


def parse_graph(text):
    """Parse the plain edge-list dialect.

    The first non-comment line is "n m"; the following m lines each hold one
    edge "i j" with distinct endpoints in [0, n).  Lines starting with '#' and
    blank lines are ignored.  Duplicate edges collapse.
    """
    lines = _data_lines(text, "#")
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphParseError("empty input: expected 'n m' header") from None
    parts = header.split()
    if len(parts) != 2:
        raise GraphParseError(f"expected 'n m' header, got {header!r}", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(f"non-integer header {header!r}", lineno) from None
    if n < 1:
        raise GraphParseError(f"vertex count must be positive, got {n}", lineno)
    if m < 0:
        raise GraphParseError(f"edge count must be nonnegative, got {m}", lineno)

    edges = []
    count = 0
    for lineno, line in lines:
        if count >= m:
            raise GraphParseError(f"unexpected extra line {line!r}", lineno)
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'i j' edge line, got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer edge line {line!r}", lineno) from None
        if i == j:
            raise GraphParseError(f"self-loop ({i},{j}) not allowed", lineno)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphParseError(f"vertex id out of range in ({i},{j}), n={n}", lineno)
        edges.append((i, j))
        count += 1
    if count < m:
        raise GraphParseError(f"expected {m} edge lines, found {count}")
    return Graph(n, edges)


def parse_dimacs(text):
    """Parse the DIMACS dialect: "p edge n m" then m lines "e i j", 1-based."""
    n = None
    edges = []
    declared = 0
    for lineno, line in _data_lines(text, "c"):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError(f"expected 'p edge n m', got {line!r}", lineno)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(f"non-integer problem line {line!r}", lineno) from None
            if n < 1:
                raise GraphParseError(f"vertex count must be positive, got {n}", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise GraphParseError(f"expected 'e i j', got {line!r}", lineno)
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"non-integer edge line {line!r}", lineno) from None
            if i == j:
                raise GraphParseError(f"self-loop ({i},{j}) not allowed", lineno)
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphParseError(f"vertex id out of range in ({i},{j}), n={n}", lineno)
            edges.append((i - 1, j - 1))
        else:
            raise GraphParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p edge' problem line")
    g = Graph(n, edges)
    if len(g.edges) > declared:
        raise GraphParseError(f"found {len(g.edges)} distinct edges, declared {declared}")
    return g


def parse_graph_text(text):
    """Parse either dialect, sniffing DIMACS from its 'p'/'c' leading lines."""
    for _, line in _data_lines(text, "#"):
        if line[0] in "pc":
            return parse_dimacs(text)
        break
    return parse_graph(text)


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def complement(g):
    """Graph with edge (i,j), i != j, exactly where g has none."""
    n = g.n
    i, j = np.triu_indices(n, k=1)
    missing = ~g.adjacency[i, j]
    return Graph(n, zip(i[missing].tolist(), j[missing].tolist()))


def association_graph(g1, g2):
    """Pairwise-conflict graph on the n^2 assignment pairs of two graphs.

    Vertex (i,j), meaning "map i to j", is flat-indexed by VertexPairIndex
    (omega excluded).  Two assignments conflict, and are joined by an edge,
    when they reuse a vertex (same i with different j, or same j with
    different i) or when their adjacency classes disagree across the two
    graphs.  Non-edges are exactly the compatible assignment pairs.
    """
    if g1.n != g2.n:
        raise ValueError(f"graph sizes differ: {g1.n} != {g2.n}")
    n = g1.n
    first = np.repeat(np.arange(n), n)   # i of flat index
    second = np.tile(np.arange(n), n)    # j of flat index

    same_i = first[:, None] == first[None, :]
    same_j = second[:, None] == second[None, :]
    adj1 = g1.adjacency[first[:, None], first[None, :]]
    adj2 = g2.adjacency[second[:, None], second[None, :]]

    conflict = (same_i & ~same_j) | (same_j & ~same_i) | (adj1 != adj2)
    np.fill_diagonal(conflict, False)

    r, s = np.nonzero(np.triu(conflict, k=1))
    return Graph(n * n, zip(r.tolist(), s.tolist()))


def relabel(g, sigma):
    """Apply a vertex bijection: edge (i,j) becomes (sigma[i], sigma[j])."""
    if sorted(sigma) != list(range(g.n)):
        raise ValueError("sigma is not a bijection on the vertex set")
    return Graph(g.n, ((sigma[i], sigma[j]) for i, j in g.edges))


def empty_graph(n):
    return Graph(n)


def complete_graph(n):
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n):
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n):
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(n):
    """Star on n vertices: center 0 joined to 1..n-1."""
    return Graph(n, ((0, i) for i in range(1, n)))


def disjoint_union(g, h):
    """Disjoint union; h's vertices are shifted up by g.n."""
    shifted = ((i + g.n, j + g.n) for i, j in h.edges)
    return Graph(g.n + h.n, list(g.edges) + list(shifted))


def petersen_graph():
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -> i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)

"""Simple undirected graphs on dense integer ids, plus the set functions N, d
and independence that the rest of the package is built on.

Adjacency is stored as one integer bitmask per vertex; bit ``u`` of
``adj[v]`` is set iff ``uv`` is an edge.  Vertex sets travel around as
:class:`VertexSet`, itself a thin wrapper over a bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union


class GraphFormatError(ValueError):
    """Raised when an edge list or graph6 string cannot be decoded."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class VertexSet:
    """Immutable, sorted set of vertex ids backed by a bitmask.

    Iteration is in ascending id order.  Supports ``|``, ``&``, ``-``,
    ``<=``/``<`` (subset), membership and hashing.  Compares equal to other
    VertexSets and to plain ``set``/``frozenset`` objects with the same ids.
    """

    __slots__ = ("mask",)

    def __init__(self, ids: Iterable[int] = ()):
        if isinstance(ids, VertexSet):
            mask = ids.mask
        else:
            mask = 0
            for v in ids:
                v = int(v)
                if v < 0:
                    raise ValueError(f"negative vertex id {v}")
                mask |= 1 << v
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        if mask < 0:
            raise ValueError("mask must be non-negative")
        vs = cls.__new__(cls)
        object.__setattr__(vs, "mask", mask)
        return vs

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __or__(self, other: Iterable[int]) -> "VertexSet":
        return VertexSet.from_mask(self.mask | VertexSet(other).mask)

    def __and__(self, other: Iterable[int]) -> "VertexSet":
        return VertexSet.from_mask(self.mask & VertexSet(other).mask)

    def __sub__(self, other: Iterable[int]) -> "VertexSet":
        return VertexSet.from_mask(self.mask & ~VertexSet(other).mask)

    def __le__(self, other: Iterable[int]) -> bool:
        return self.mask & ~VertexSet(other).mask == 0

    def __lt__(self, other: Iterable[int]) -> bool:
        o = VertexSet(other).mask
        return self.mask != o and self.mask & ~o == 0

    def __ge__(self, other: Iterable[int]) -> bool:
        return VertexSet(other) <= self

    def __gt__(self, other: Iterable[int]) -> bool:
        return VertexSet(other) < self

    def __repr__(self) -> str:
        return "VertexSet({%s})" % ", ".join(map(str, self))

    def add(self, v: int) -> "VertexSet":
        return VertexSet.from_mask(self.mask | 1 << v)

    def discard(self, v: int) -> "VertexSet":
        return VertexSet.from_mask(self.mask & ~(1 << v))

    def to_list(self) -> list[int]:
        return list(self)

    @property
    def max_id(self) -> int:
        return self.mask.bit_length() - 1


SetLike = Union[VertexSet, Iterable[int]]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbour bitmask of ``v`` and is authoritative; sorted
    neighbour lists are derived lazily.  ``labels`` optionally names each
    vertex (fixtures use it to keep the figure labels) and takes no part in
    equality.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"adj has {len(self.adj)} rows, expected {self.n}")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise ValueError(f"vertex {v} has a neighbour id >= n")
            if a >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(a):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must name every vertex")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @cached_property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    @cached_property
    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(iter_bits(a)) for a in self.adj)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.from_mask((1 << self.n) - 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.neighbor_lists[v]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.neighbor_lists[u] if u < v]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex_id(self, name: str | int) -> int:
        """Resolve a vertex label (or a plain id) to its id."""
        if isinstance(name, int):
            return name
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        try:
            return int(name)
        except ValueError:
            raise KeyError(f"unknown vertex label {name!r}") from None

    def ids(self, names: Iterable[str | int]) -> VertexSet:
        return VertexSet(self.vertex_id(x) for x in names)

    def names(self, X: SetLike) -> list[str]:
        return [self.label(v) for v in VertexSet(X)]

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.neighbor_lists[v]:
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1


def as_mask(G: Graph, X: SetLike) -> int:
    """Bitmask of ``X``, validated against the vertex range of ``G``."""
    mask = X.mask if isinstance(X, VertexSet) else VertexSet(X).mask
    if mask >> G.n:
        raise ValueError(f"vertex set contains ids >= n={G.n}")
    return mask


def neighborhood_mask(adj: Sequence[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def neighborhood(G: Graph, X: SetLike) -> VertexSet:
    """N(X): every vertex with at least one neighbour in ``X``.

    Members of ``X`` appear in the result when they have a neighbour in ``X``.
    """
    return VertexSet.from_mask(neighborhood_mask(G.adj, as_mask(G, X)))


def difference(G: Graph, X: SetLike) -> int:
    """d(X) = |X| - |N(X)|."""
    mask = as_mask(G, X)
    return popcount(mask) - popcount(neighborhood_mask(G.adj, mask))


def is_independent(G: Graph, X: SetLike) -> bool:
    mask = as_mask(G, X)
    return neighborhood_mask(G.adj, mask) & mask == 0


def induced_subgraph(G: Graph, X: SetLike) -> tuple[Graph, list[int]]:
    """G[X] with ids re-packed to ``0..|X|-1``.

    Returns the subgraph and ``mapping`` where ``mapping[new_id]`` is the
    original id.
    """
    mapping = list(VertexSet.from_mask(as_mask(G, X)))
    index = {old: new for new, old in enumerate(mapping)}
    adj = []
    for old in mapping:
        row = 0
        for u in G.neighbor_lists[old]:
            if u in index:
                row |= 1 << index[u]
        adj.append(row)
    labels = tuple(G.labels[v] for v in mapping) if G.labels is not None else None
    return Graph(len(mapping), tuple(adj), labels), mapping


def delete_vertex(G: Graph, v: int) -> tuple[Graph, list[int]]:
    """G - v, re-packed; see :func:`induced_subgraph` for the mapping."""
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    return induced_subgraph(G, VertexSet.from_mask(((1 << G.n) - 1) & ~(1 << v)))


def lift(mapping: Sequence[int], X: SetLike) -> VertexSet:
    """Translate a vertex set of a re-packed subgraph back to original ids."""
    return VertexSet(mapping[v] for v in VertexSet(X))


# -- edge-list format ---------------------------------------------------------

_LABELS_DIRECTIVE = "labels:"


def parse_edge_list(text: str) -> Graph:
    """Parse the line-oriented ``n m`` / ``u v`` edge-list format.

    ``#`` starts a comment.  A comment of the form ``# labels: a b c ...``
    names the vertices in id order.  Duplicate edges collapse; ``m`` in the
    header is the number of edge lines that follow.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    labels: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith(_LABELS_DIRECTIVE):
            labels = comment[len(_LABELS_DIRECTIVE):].split()
        fields = body.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"expected two integers, got {body.strip()!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {body.strip()!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative vertex or edge count", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    if labels is not None and len(labels) != n:
        raise GraphFormatError(f"labels directive names {len(labels)} vertices, expected {n}")
    return Graph.from_edges(n, edges, labels)


def format_edge_list(G: Graph, comment: str | None = None) -> str:
    """Inverse of :func:`parse_edge_list`; labels are written as a directive."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    if G.labels is not None:
        lines.append(f"# {_LABELS_DIRECTIVE} " + " ".join(G.labels))
    edges = G.edges()
    lines.append(f"{G.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# -- graph6 -------------------------------------------------------------------


def _graph6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise GraphFormatError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header is accepted)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    for c in data:
        if c < 63 or c > 126:
            raise GraphFormatError(f"invalid graph6 byte {c!r}")
    n, offset = _graph6_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {need} for n={n}"
        )
    adj = [0] * n
    k = 0
    # bits run over the upper triangle column by column: (0,1),(0,2),(1,2),(0,3),...
    for v in range(1, n):
        for u in range(v):
            if body[k // 6] - 63 >> (5 - k % 6) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    return Graph(n, tuple(adj))


def to_graph6(G: Graph) -> str:
    """Encode ``G`` as a graph6 string (no header, no newline)."""
    n = G.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [(n >> s & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    acc = 0
    nacc = 0
    adj = G.adj
    for v in range(1, n):
        for u in range(v):
            acc = (acc << 1) | (adj[u] >> v & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out).decode("ascii")


def read_graph6_lines(text: str) -> list[Graph]:
    """Decode a graph6 corpus: one graph per non-blank line."""
    graphs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph6(line))
        except GraphFormatError as exc:
            raise GraphFormatError(str(exc), lineno) from None
    return graphs

"""Small simple graphs stored as adjacency bitmasks.

Vertices are the integers ``0..n-1`` and every vertex set used by the
library is an ``int`` bitmask internally. Graphs are immutable; every edit
returns a new value together with a vertex map where renumbering happens.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable, Iterator, Sequence

MAX_N = 32
MAX_NONEDGES = 24
CANON_MAX_N = 10

Edge = tuple[int, int]
VertexMap = tuple  # tuple[int | None, ...], indexed by old vertex


class GuardError(ValueError):
    """Raised when an exhaustive routine is asked to exceed its size guard."""


class EdgeKind(enum.Enum):
    PATH = "path"
    COMPLETE = "complete"


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


class Graph:
    """Immutable simple undirected graph on ``0..n-1``.

    ``labels`` is either ``None`` or a mapping from every edge ``(u, v)``
    with ``u < v`` to an :class:`EdgeKind`; it is only populated for
    Cartesian products ``K_a x P_b`` and graphs derived from them.
    """

    __slots__ = ("n", "adj", "_labels", "_hash")

    def __init__(self, n: int, adj: Sequence[int], labels: dict[Edge, EdgeKind] | None = None):
        if not 0 <= n <= MAX_N:
            raise GuardError(f"graph order {n} outside 0..{MAX_N}")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        full = (1 << n) - 1
        for v, nb in enumerate(adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if nb >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(nb):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if labels is not None:
            labels = dict(labels)
            edges = set(_edges_of(adj))
            if set(labels) != edges:
                raise ValueError("edge labels must cover exactly the edge set")
        self.n = n
        self.adj = adj
        self._labels = labels
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels: dict[Edge, EdgeKind] | None = None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is not None:
            labels = {norm_edge(*e): k for e, k in labels.items()}
        return cls(n, adj, labels)

    # queries ---------------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def labels(self) -> dict[Edge, EdgeKind] | None:
        return None if self._labels is None else dict(self._labels)

    def label(self, u: int, v: int) -> EdgeKind | None:
        if self._labels is None:
            return None
        return self._labels[norm_edge(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[Edge]:
        return list(_edges_of(self.adj))

    def edges_of_kind(self, kind: EdgeKind) -> list[Edge]:
        if self._labels is None:
            return []
        return [e for e in self.edges() if self._labels[e] is kind]

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.adj[u] >> v & 1]

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((nb.bit_count() for nb in self.adj), reverse=True))

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.adj[v])

    def unlabeled(self) -> Graph:
        return self if self._labels is None else Graph(self.n, self.adj)

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self._labels is not None:
            out["labels"] = {f"{u},{v}": k.value for (u, v), k in sorted(self._labels.items())}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self._labels == other._labels

    def __hash__(self) -> int:
        if self._hash is None:
            lab = None if self._labels is None else frozenset(self._labels.items())
            self._hash = hash((self.n, self.adj, lab))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _edges_of(adj: Sequence[int]) -> Iterator[Edge]:
    for u, nb in enumerate(adj):
        for v in bits(nb >> (u + 1)):
            yield (u, u + 1 + v)


# generators ---------------------------------------------------------------

def generate(kind: str, n: int) -> Graph:
    """Named families.

    Paths and cycles are numbered along the traversal. Stars and wheels use
    hub 0; ``wheel`` takes the total order, so ``generate("wheel", 6)`` is a
    hub joined to the cycle ``1..5``.
    """
    minimum = {"path": 1, "cycle": 3, "complete": 1, "star": 1, "wheel": 4, "empty": 1}
    if kind not in minimum:
        raise ValueError(f"unknown family {kind!r}")
    if n > MAX_N:
        raise GuardError(f"{kind} of order {n} exceeds {MAX_N}")
    if n < minimum[kind]:
        raise ValueError(f"{kind} needs n >= {minimum[kind]}, got {n}")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "complete":
        edges = list(itertools.combinations(range(n), 2))
    elif kind == "star":
        edges = [(0, i) for i in range(1, n)]
    elif kind == "wheel":
        rim = n - 1
        edges = [(0, i) for i in range(1, n)] + [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    else:
        edges = []
    return Graph.from_edges(n, edges)


def cartesian_product_complete_path(a: int, b_plus_1: int) -> Graph:
    """``K_a x P_{b+1}`` with vertex ``(row i, column j)`` at index ``j*a + i``.

    Rows are the path copies (edges labelled PATH), columns the complete
    graph copies (edges labelled COMPLETE).
    """
    if a < 0 or b_plus_1 < 1:
        raise ValueError("need a >= 0 and b_plus_1 >= 1")
    if a * b_plus_1 > MAX_N:
        raise GuardError(f"K_{a} x P_{b_plus_1} has more than {MAX_N} vertices")
    labels: dict[Edge, EdgeKind] = {}
    for j in range(b_plus_1):
        for i in range(a):
            v = j * a + i
            if j + 1 < b_plus_1:
                labels[(v, v + a)] = EdgeKind.PATH
            for i2 in range(i + 1, a):
                labels[(v, j * a + i2)] = EdgeKind.COMPLETE
    return Graph.from_edges(a * b_plus_1, labels, labels)


# edits --------------------------------------------------------------------

def delete_edge(g: Graph, e: Edge) -> Graph:
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ValueError(f"{e} is not an edge")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    labels = g.labels
    if labels is not None:
        del labels[norm_edge(u, v)]
    return Graph(g.n, adj, labels)


def delete_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    for e in edges:
        g = delete_edge(g, e)
    return g


def _relabel(g: Graph, vmap: Sequence[int | None], n_new: int) -> Graph:
    adj = [0] * n_new
    labels = None if g._labels is None else {}
    for u, v in g.edges():
        a, b = vmap[u], vmap[v]
        if a is None or b is None or a == b:
            continue
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        if labels is not None:
            key = norm_edge(a, b)
            kind = g._labels[(u, v)]
            # merged edge stays PATH only if every pre-image is PATH
            if labels.get(key, kind) is EdgeKind.COMPLETE or kind is EdgeKind.COMPLETE:
                labels[key] = EdgeKind.COMPLETE
            else:
                labels[key] = EdgeKind.PATH
    return Graph(n_new, adj, labels)


def delete_vertex(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    """Remove ``v``; the map sends ``v`` to ``None`` and shifts later indices down."""
    if not 0 <= v < g.n:
        raise ValueError(f"{v} is not a vertex")
    vmap = tuple(None if x == v else (x if x < v else x - 1) for x in range(g.n))
    return _relabel(g, vmap, g.n - 1), vmap


def contract_edge(g: Graph, e: Edge) -> tuple[Graph, VertexMap]:
    """Contract ``uv``; the merged vertex takes the smaller index."""
    u, v = norm_edge(*e)
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ValueError(f"{e} is not an edge")
    vmap = tuple((x if x < v else x - 1) if x != v else u for x in range(g.n))
    return _relabel(g, vmap, g.n - 1), vmap


def compose_maps(first: VertexMap, second: VertexMap) -> VertexMap:
    return tuple(None if x is None else second[x] for x in first)


def contract_edges(g: Graph, edges: Iterable[Edge]) -> tuple[Graph, VertexMap]:
    """Contract a set of edges given in ``g``'s numbering, one at a time."""
    vmap: VertexMap = tuple(range(g.n))
    for u, v in edges:
        a, b = vmap[u], vmap[v]
        if a == b:
            continue
        g, step = contract_edge(g, (a, b))
        vmap = compose_maps(vmap, step)
    return g, vmap


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_N:
        raise GuardError(f"union would have more than {MAX_N} vertices")
    adj = list(g.adj) + [nb << g.n for nb in h.adj]
    labels = None
    if g._labels is not None and h._labels is not None:
        labels = dict(g._labels)
        labels.update({(u + g.n, v + g.n): k for (u, v), k in h._labels.items()})
    return Graph(g.n + h.n, adj, labels)


def add_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    adj = list(g.adj)
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(g.n, adj)


def spanning_supergraphs(g: Graph, max_nonedges: int = MAX_NONEDGES) -> Iterator[Graph]:
    """Yield ``g`` and every graph obtained by adding a non-empty set of non-edges."""
    missing = g.non_edges()
    if len(missing) > max_nonedges:
        raise GuardError(f"{len(missing)} non-edges exceed the supergraph guard of {max_nonedges}")
    base = g.unlabeled()
    for r in range(len(missing) + 1):
        for extra in itertools.combinations(missing, r):
            yield add_edges(base, extra) if extra else base


def spanning_subgraphs(g: Graph) -> Iterator[Graph]:
    edges = g.edges()
    base = Graph(g.n, [0] * g.n)
    for r in range(len(edges) + 1):
        for keep in itertools.combinations(edges, r):
            yield add_edges(base, keep)


def connected_components(g: Graph, restrict: Iterable[int] | int | None = None) -> list[frozenset[int]]:
    return [from_mask(c) for c in component_masks(g, g.full if restrict is None else to_mask(restrict))]


def component_masks(g: Graph, restrict: int) -> list[int]:
    out = []
    rest = restrict
    adj = g.adj
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= restrict & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g, g.full)) == 1


def independence_number(g: Graph) -> int:
    """Exact maximum independent set size by branch and bound on bitsets."""
    adj = g.adj
    best = 0

    def search(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        # branch on the candidate with most candidate neighbours
        v = max(bits(cand), key=lambda x: (adj[x] & cand).bit_count())
        if not adj[v] & cand:
            # isolated within the candidates: always take it
            search(cand & ~(1 << v), size + 1)
            return
        search(cand & ~adj[v] & ~(1 << v), size + 1)
        search(cand & ~(1 << v), size)

    search(g.full, 0)
    return best


# graph6 -------------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    n = g.n
    if n > 62:
        raise GuardError("only the single-byte graph6 header is supported")
    out = [chr(n + 63)]
    acc = 0
    k = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise ValueError("graph6 character out of range")
    if codes[0] == 63:
        raise GuardError(f"graph6 order beyond {MAX_N} is not supported")
    n = codes[0]
    if n > MAX_N:
        raise GuardError(f"graph6 order {n} exceeds {MAX_N}")
    nbits = n * (n - 1) // 2
    body = codes[1:]
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    stream = 0
    for c in body:
        stream = (stream << 6) | c
    pad = 6 * len(body) - nbits
    if stream & ((1 << pad) - 1):
        raise ValueError("graph6 padding bits are not zero")
    stream >>= pad
    adj = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> pos & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos -= 1
    return Graph(n, adj)


# isomorphism --------------------------------------------------------------

def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    """Equitable refinement; new colour ids depend only on invariant data."""
    n = len(adj)
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[u] for u in bits(adj[v]))
            sigs.append((colors[v], tuple(nb)))
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sigs]
        if len(order) == len(set(colors)):
            return new
        colors = new


def _code(adj: Sequence[int], perm: Sequence[int]) -> int:
    # perm[k] = original vertex placed at canonical position k
    n = len(perm)
    code = 0
    for j in range(1, n):
        aj = adj[perm[j]]
        for i in range(j):
            code = (code << 1) | (aj >> perm[i] & 1)
    return code


def canonical_labeling(g: Graph, max_n: int = CANON_MAX_N) -> tuple[int, ...]:
    """Permutation ``perm`` (canonical position -> vertex) minimising the
    graph6 bit string, searched over the leaves of an individualise-refine
    tree. Twin vertices in a cell are interchangeable, so only one is tried.
    """
    n = g.n
    if n > max_n:
        raise GuardError(f"canonical labelling limited to n <= {max_n}")
    adj = g.adj
    if n == 0:
        return ()
    best_code = None
    best_perm: tuple[int, ...] = ()

    def visit(colors: list[int]) -> None:
        nonlocal best_code, best_perm
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm = [0] * n
            for v, c in enumerate(colors):
                perm[c] = v
            code = _code(adj, perm)
            if best_code is None or code < best_code:
                best_code, best_perm = code, tuple(perm)
            return
        tried: list[int] = []
        for v in target:
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            # individualise v: give it a fresh colour just below its cell
            new = [2 * c + 1 for c in colors]
            new[v] -= 1
            visit(_refine(adj, new))

    visit(_refine(adj, [0] * n))
    return best_perm


def canonical_form(g: Graph, max_n: int = CANON_MAX_N) -> bytes:
    """graph6 bytes of the canonical relabelling; equal iff isomorphic."""
    perm = canonical_labeling(g, max_n)
    return write_graph6(relabel(g.unlabeled(), perm)).encode()


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph whose vertex ``k`` is ``g``'s vertex ``perm[k]``."""
    inv = [0] * g.n
    for k, v in enumerate(perm):
        inv[v] = k
    return _relabel(g, inv, g.n)


def is_isomorphic(g: Graph, h: Graph, max_n: int = CANON_MAX_N) -> bool:
    if g.n != h.n or g.m != h.m or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g, max_n) == canonical_form(h, max_n)


def find_spanning_embedding(g: Graph, h: Graph, required: Graph | None = None) -> tuple[int, ...] | None:
    """Bijection ``pi`` with ``pi[v]`` in ``h`` such that every edge of ``g``
    maps onto an edge of ``h``. When ``required`` (a spanning subgraph of
    ``h``) is given, its edges must additionally be images of edges of ``g``.
    Returns ``None`` when no such bijection exists.
    """
    n = g.n
    if h.n != n or g.m > h.m:
        return None
    gadj, hadj = g.adj, h.adj
    radj = required.adj if required is not None else [0] * n
    # degree-wise domination is necessary for a spanning embedding
    gd = sorted((nb.bit_count() for nb in gadj), reverse=True)
    hd = sorted((nb.bit_count() for nb in hadj), reverse=True)
    if any(x > y for x, y in zip(gd, hd)):
        return None
    # order g's vertices: highest degree first, then stay connected
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda x: ((gadj[x] & placed).bit_count(), gadj[x].bit_count(), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    pi = [-1] * n
    used = 0
    inv = [-1] * n

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = order[k]
        dv = gadj[v].bit_count()
        for x in range(n):
            if used >> x & 1 or hadj[x].bit_count() < dv or radj[x].bit_count() > dv:
                continue
            ok = True
            for u in bits(gadj[v]):
                pu = pi[u]
                if pu >= 0 and not hadj[x] >> pu & 1:
                    ok = False
                    break
            if ok:
                for y in bits(radj[x] & used):
                    if not gadj[v] >> inv[y] & 1:
                        ok = False
                        break
            if not ok:
                continue
            pi[v] = x
            inv[x] = v
            used |= 1 << x
            if extend(k + 1):
                return True
            used &= ~(1 << x)
            pi[v] = -1
            inv[x] = -1
        return False

    return tuple(pi) if extend(0) else None


def graphs_of_order(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, as canonical
    representatives, ordered by graph6 string."""
    return [parse_graph6(s.decode()) for s in sorted(_canonical_set(n))]


_CACHE: dict[int, frozenset[bytes]] = {}


def _canonical_set(n: int) -> frozenset[bytes]:
    if n in _CACHE:
        return _CACHE[n]
    if n > 8:
        raise GuardError("graph enumeration limited to n <= 8")
    if n == 0:
        out = frozenset({canonical_form(Graph(0, []))})
    else:
        out = set()
        for s in _canonical_set(n - 1):
            g = parse_graph6(s.decode())
            for nb in range(1 << (n - 1)):
                adj = list(g.adj) + [nb]
                for u in bits(nb):
                    adj[u] |= 1 << (n - 1)
                out.add(canonical_form(Graph(n, adj)))
        out = frozenset(out)
    _CACHE[n] = out
    return out

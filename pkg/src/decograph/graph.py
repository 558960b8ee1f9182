"""Half-edge representation of trivalent graphs.

A trivalent graph is a set of half-edges grouped into named vertices (each an
unordered triple) together with a fixed-point-free partial involution pairing
some half-edges into internal edges.  Unpaired half-edges form the boundary
(external edges).  Loops and multiple edges are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


class GraphError(ValueError):
    """Base class for structural errors in graph construction."""


class DuplicateHalfEdge(GraphError):
    pass


class HalfEdgeInTwoVertices(GraphError):
    pass


class SelfPairing(GraphError):
    pass


class DanglingPair(GraphError):
    pass


class BadBoundaryMap(GraphError):
    pass


class InvalidCycle(GraphError):
    pass


class NotConnected(GraphError):
    pass


@dataclass(frozen=True)
class TrivalentGraph:
    """Immutable trivalent graph.

    ``vertices`` maps vertex names to sorted half-edge triples; ``pairing``
    is stored as a sorted tuple of sorted internal-edge pairs; ``boundary``
    is the stable declared order of the unpaired half-edges.
    """

    vertices: tuple[tuple[str, tuple[str, str, str]], ...]
    edges: tuple[tuple[str, str], ...]
    boundary: tuple[str, ...]
    # Derived lookups, excluded from equality/hash.
    _vertex_of: dict = field(default_factory=dict, compare=False, repr=False)
    _partner: dict = field(default_factory=dict, compare=False, repr=False)
    _triple_of: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for name, triple in self.vertices:
            self._triple_of[name] = triple
            for h in triple:
                self._vertex_of[h] = name
        for a, b in self.edges:
            self._partner[a] = b
            self._partner[b] = a

    # -- queries ---------------------------------------------------------

    def half_edges(self) -> list[str]:
        return sorted(self._vertex_of)

    def vertex_of(self, h: str) -> str:
        return self._vertex_of[h]

    def triple(self, vertex: str) -> tuple[str, str, str]:
        return self._triple_of[vertex]

    def partner(self, h: str) -> Optional[str]:
        return self._partner.get(h)

    def is_internal(self, h: str) -> bool:
        return h in self._partner

    def others_at_vertex(self, h: str) -> tuple[str, ...]:
        """The other half-edges at h's vertex, in sorted order."""
        return tuple(x for x in self._triple_of[self._vertex_of[h]] if x != h)

    def edge_of(self, h: str) -> tuple[str, str]:
        """The sorted internal edge containing h."""
        p = self._partner[h]
        return (h, p) if h < p else (p, h)

    def has_edge(self, a: str, b: str) -> bool:
        return self._partner.get(a) == b

    def vertex_names(self) -> list[str]:
        return [name for name, _ in self.vertices]


def build_graph(
    vertex_triples: Mapping[str, Iterable[str]] | Iterable[Iterable[str]],
    pairing: Iterable[tuple[str, str]] = (),
    boundary: Optional[Sequence[str]] = None,
) -> TrivalentGraph:
    """Validate and build a TrivalentGraph.

    ``vertex_triples`` is either a mapping vertex-name -> half-edge triple or
    a plain iterable of triples (auto-named v0, v1, ...).  ``boundary`` may
    fix the declared order of external half-edges; it defaults to sorted.
    """
    if isinstance(vertex_triples, Mapping):
        items = [(str(k), tuple(str(h) for h in v)) for k, v in vertex_triples.items()]
    else:
        items = [
            (f"v{i}", tuple(str(h) for h in v)) for i, v in enumerate(vertex_triples)
        ]
    seen: dict[str, str] = {}
    names = set()
    for name, triple in items:
        if name in names:
            raise DuplicateHalfEdge(f"duplicate vertex name {name!r}")
        names.add(name)
        if len(triple) != 3:
            raise GraphError(f"vertex {name!r} must have exactly 3 half-edges")
        for h in triple:
            if not h:
                raise DuplicateHalfEdge("empty half-edge name")
            if h in seen:
                kind = HalfEdgeInTwoVertices if seen[h] != name else DuplicateHalfEdge
                raise kind(f"half-edge {h!r} occurs twice (vertices {seen[h]!r}, {name!r})")
            seen[h] = name
    vertices = tuple(sorted((name, tuple(sorted(t))) for name, t in items))

    paired: dict[str, str] = {}
    for a, b in pairing:
        a, b = str(a), str(b)
        if a == b:
            raise SelfPairing(f"half-edge {a!r} paired with itself")
        for h in (a, b):
            if h not in seen:
                raise DanglingPair(f"pairing references unknown half-edge {h!r}")
            if h in paired:
                raise DanglingPair(f"half-edge {h!r} paired twice")
        paired[a] = b
        paired[b] = a
    edges = tuple(sorted((a, b) for a, b in paired.items() if a < b))

    unpaired = sorted(h for h in seen if h not in paired)
    if boundary is None:
        bound = tuple(unpaired)
    else:
        bound = tuple(str(h) for h in boundary)
        if sorted(bound) != unpaired:
            raise GraphError(
                "declared boundary does not match the unpaired half-edges"
            )
    g = TrivalentGraph(vertices=vertices, edges=edges, boundary=bound)
    v, i, e = len(g.vertices), len(g.edges), len(g.boundary)
    assert 3 * v == 2 * i + e
    return g


@dataclass(frozen=True)
class GraphStats:
    v: int
    i: int
    e: int
    components: int
    genus: tuple[int, ...]  # per component, in component order


def _component_partition(g: TrivalentGraph) -> list[list[str]]:
    """Vertex names grouped into connected components (sorted, deterministic)."""
    remaining = set(g.vertex_names())
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        frontier = [start]
        while frontier:
            vtx = frontier.pop()
            for h in g.triple(vtx):
                p = g.partner(h)
                if p is not None:
                    w = g.vertex_of(p)
                    if w not in comp:
                        comp.add(w)
                        frontier.append(w)
        remaining -= comp
        comps.append(sorted(comp))
    return comps


def graph_stats(g: TrivalentGraph) -> GraphStats:
    comps = _component_partition(g)
    genus = []
    for comp in comps:
        cv = set(comp)
        ci = sum(1 for a, b in g.edges if g.vertex_of(a) in cv)
        genus.append(ci - len(comp) + 1)
    return GraphStats(
        v=len(g.vertices),
        i=len(g.edges),
        e=len(g.boundary),
        components=len(comps),
        genus=tuple(genus),
    )


def is_connected(g: TrivalentGraph) -> bool:
    return len(_component_partition(g)) <= 1


@dataclass(frozen=True)
class OrientedCycle:
    """A cycle as a tuple of oriented internal edges (out_half, in_half).

    Edge j leaves a vertex through ``out_half`` and arrives at the next
    vertex through ``in_half`` (its pairing partner).  Consecutive edges
    share a vertex: ``in_half`` of edge j and ``out_half`` of edge j+1 (mod
    length) lie at the same vertex.
    """

    steps: tuple[tuple[str, str], ...]

    def validate(self, g: TrivalentGraph) -> None:
        if not self.steps:
            raise InvalidCycle("empty cycle")
        seen_vertices = set()
        k = len(self.steps)
        for j, (out, inn) in enumerate(self.steps):
            if g.partner(out) != inn:
                raise InvalidCycle(f"{out!r} and {inn!r} are not an internal edge")
            nxt = self.steps[(j + 1) % k][0]
            vtx = g.vertex_of(inn)
            if g.vertex_of(nxt) != vtx:
                raise InvalidCycle(
                    f"edge {j} arrives at {vtx!r} but the next edge leaves elsewhere"
                )
            if vtx in seen_vertices:
                raise InvalidCycle(f"vertex {vtx!r} visited twice")
            seen_vertices.add(vtx)

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle(tuple((inn, out) for out, inn in reversed(self.steps)))

    def half_edges(self) -> list[str]:
        out = []
        for a, b in self.steps:
            out.extend((a, b))
        return out

    def edge_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(tuple(sorted(s)) for s in self.steps)

    def canonical(self) -> "OrientedCycle":
        """Rotate so the lexicographically least step comes first."""
        k = len(self.steps)
        best = min(range(k), key=lambda j: self.steps[j:] + self.steps[:j])
        return OrientedCycle(self.steps[best:] + self.steps[:best])


def spanning_tree(g: TrivalentGraph) -> tuple[set[tuple[str, str]], list[tuple[str, str]]]:
    """Deterministic BFS spanning forest.

    Returns (tree edge set, sorted non-tree internal edges), edges as sorted
    pairs.
    """
    tree: set[tuple[str, str]] = set()
    visited: set[str] = set()
    for comp in _component_partition(g):
        root = comp[0]
        visited.add(root)
        frontier = [root]
        while frontier:
            frontier.sort()
            vtx = frontier.pop(0)
            for h in sorted(g.triple(vtx)):
                p = g.partner(h)
                if p is None:
                    continue
                w = g.vertex_of(p)
                if w not in visited:
                    visited.add(w)
                    tree.add(tuple(sorted((h, p))))
                    frontier.append(w)
    non_tree = sorted(e for e in g.edges if e not in tree)
    return tree, non_tree


def tree_path(
    g: TrivalentGraph,
    tree: set[tuple[str, str]],
    start_vertex: str,
    end_vertex: str,
) -> list[tuple[str, str]]:
    """Oriented tree edges (out_half, in_half) from start_vertex to end_vertex."""
    if start_vertex == end_vertex:
        return []
    prev: dict[str, tuple[str, str]] = {}
    visited = {start_vertex}
    frontier = [start_vertex]
    while frontier:
        vtx = frontier.pop(0)
        for h in sorted(g.triple(vtx)):
            p = g.partner(h)
            if p is None or tuple(sorted((h, p))) not in tree:
                continue
            w = g.vertex_of(p)
            if w not in visited:
                visited.add(w)
                prev[w] = (h, p)
                frontier.append(w)
                if w == end_vertex:
                    frontier = []
                    break
    if end_vertex not in prev:
        raise GraphError(f"no tree path from {start_vertex!r} to {end_vertex!r}")
    path = []
    cur = end_vertex
    while cur != start_vertex:
        step = prev[cur]
        path.append(step)
        cur = g.vertex_of(step[0])
    path.reverse()
    return path


def cycle_basis(g: TrivalentGraph) -> list[OrientedCycle]:
    """Fundamental cycles of the deterministic spanning forest.

    One cycle per non-tree internal edge; each cycle starts with that edge
    oriented from its smaller half-edge.
    """
    tree, non_tree = spanning_tree(g)
    basis = []
    for a, b in non_tree:
        steps = [(a, b)]
        steps.extend(tree_path(g, tree, g.vertex_of(b), g.vertex_of(a)))
        cyc = OrientedCycle(tuple(steps))
        cyc.validate(g)
        basis.append(cyc)
    return basis


def boundary_isomorphism(
    g1: TrivalentGraph,
    g2: TrivalentGraph,
    boundary_map: Mapping[str, str],
) -> Optional[dict[str, str]]:
    """Half-edge bijection g1 -> g2 extending boundary_map, or None.

    The bijection maps vertices to vertices and commutes with the pairing.
    Plain backtracking over vertex assignments; instances are desk-scale.
    """
    b1, b2 = set(g1.boundary), set(g2.boundary)
    if set(boundary_map) != b1 or set(boundary_map.values()) != b2 or len(
        boundary_map
    ) != len(b2):
        raise BadBoundaryMap("boundary_map is not a bijection of the boundaries")
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None

    order = g1.vertex_names()
    targets = g2.vertex_names()
    vmap: dict[str, str] = {}
    hmap: dict[str, str] = dict(boundary_map)
    used_vertices: set[str] = set()

    def consistent(h: str, h2: str) -> bool:
        p = g1.partner(h)
        if p is None:
            return g2.partner(h2) is None
        q = g2.partner(h2)
        if q is None:
            return False
        if p in hmap:
            return hmap[p] == q
        # partner not yet mapped; fine if its vertex is not yet assigned
        return g1.vertex_of(p) not in vmap or True

    def extend(idx: int) -> bool:
        if idx == len(order):
            # final check: pairing fully respected
            return all(
                hmap[g1.partner(h)] == g2.partner(hmap[h])
                for h in hmap
                if g1.partner(h) is not None
            )
        vtx = order[idx]
        triple = g1.triple(vtx)
        # forced target vertex when some half-edge at vtx is already matched
        forced = None
        for h in triple:
            if h in hmap:
                w = g2.vertex_of(hmap[h])
                if forced is not None and forced != w:
                    return False
                forced = w
        candidates = [forced] if forced is not None else [
            t for t in targets if t not in used_vertices
        ]
        for tgt in candidates:
            if tgt is None or tgt in used_vertices:
                continue
            t2 = g2.triple(tgt)
            for perm in _triple_bijections(triple, t2, hmap):
                ok = all(consistent(h, h2) for h, h2 in perm)
                if not ok:
                    continue
                added = [h for h, _ in perm if h not in hmap]
                for h, h2 in perm:
                    hmap.setdefault(h, h2)
                vmap[vtx] = tgt
                used_vertices.add(tgt)
                if len(set(hmap.values())) == len(hmap) and extend(idx + 1):
                    return True
                used_vertices.discard(tgt)
                del vmap[vtx]
                for h in added:
                    del hmap[h]
        return False

    if extend(0):
        result = dict(hmap)
        return result
    return None


def _triple_bijections(t1, t2, hmap):
    """All bijections t1 -> t2 compatible with the partial map hmap."""
    import itertools

    out = []
    for perm in itertools.permutations(t2):
        pairs = list(zip(t1, perm))
        if all(hmap.get(h, h2) == h2 for h, h2 in pairs):
            out.append(pairs)
    return out

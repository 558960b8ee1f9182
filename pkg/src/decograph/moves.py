"""IH moves with exact decoration transport, and the IH-move planner.

An IH move contracts an internal edge u~v and re-expands it the other way.
With the outer half-edges labelled x, y at u's vertex and z, w at v's
vertex, the move regroups either {x,z}/{y,w} (pairing choice 'b') or
{y,z}/{x,w} (choice 'c').  Decoration transport goes through the local
torsor coordinate

    B(beta) = (beta_{xu}, beta_{yx}, beta_{zw}+delta, beta_{wv}+delta),
    delta = beta_{ux} - beta_{vw},

whose class in the common quotient group G^alpha (by (1,1,1,1),
(0,0,a_u,a_u) and (0,a_u',0,a_u')) defines equivalence across the move.
The canonical transport gauge sets beta'_{u'x} = beta'_{v'w} = 0 so that
B'(beta') = B(beta) holds identically on minimal lifts.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .decoration import (
    Decoration,
    ExternalEdge,
    Residue,
    TrivialMod,
    apply_trivial_mod,
    make_decoration,
    reduce_lift,
)
from .graph import (
    BadBoundaryMap,
    GraphError,
    NotConnected,
    TrivalentGraph,
    boundary_isomorphism,
    build_graph,
    graph_stats,
    is_connected,
    spanning_tree,
    tree_path,
)


class MoveError(ValueError):
    pass


class InvalidMove(MoveError):
    pass


class ModuliMismatch(MoveError):
    pass


class GenusMismatch(MoveError):
    pass


class ScriptError(MoveError):
    pass


@dataclass(frozen=True)
class IhMove:
    """IH move on an internal edge with a pairing choice 'b' or 'c'.

    The outer labels x,y (at the vertex of the smaller edge half) and z,w
    (at the other vertex) are fixed by sorted order; 'b' regroups {x,z} and
    {y,w}, 'c' regroups {y,z} and {x,w} (Fig. (b) and (c) respectively).
    """

    edge: tuple[str, str]
    pairing_choice: str

    def __post_init__(self):
        object.__setattr__(self, "edge", tuple(sorted(self.edge)))
        if self.pairing_choice not in ("b", "c"):
            raise InvalidMove(f"unknown pairing choice {self.pairing_choice!r}")


@dataclass(frozen=True)
class LocalB:
    """Local torsor coordinate of a decoration at an internal edge."""

    lifts: tuple[int, int, int, int]  # (B_x, B_y, B_z, B_w), minimal lifts
    moduli: tuple[int, int, int, int]  # (alpha_x, alpha_y, alpha_z, alpha_w)
    alpha_u: int
    alpha_uprime: int  # 2 - alpha_x - alpha_z, the new edge alpha after 'b'

    def generators_delta(self) -> list[tuple[int, int, int, int]]:
        return [(1, 1, 1, 1), (0, 0, self.alpha_u, self.alpha_u)]

    def generators_common(self) -> list[tuple[int, int, int, int]]:
        return self.generators_delta() + [
            (0, self.alpha_uprime, 0, self.alpha_uprime)
        ]


@dataclass(frozen=True)
class IhTrace:
    """Record of one applied IH move (effective labels, new names, B)."""

    u: str
    v: str
    x: str
    y: str
    z: str
    w: str
    u_new: str
    v_new: str
    B: LocalB


@dataclass(frozen=True)
class MoveScript:
    """Replayable sequence of trivial modifications and IH moves.

    ``hashes``, when nonempty, holds one hex snapshot digest per step;
    replaying verifies them.
    """

    steps: tuple[Union[TrivialMod, IhMove], ...]
    hashes: tuple[str, ...] = ()


def _labels(g: TrivalentGraph, edge: Sequence[str]):
    u, v = sorted(edge)
    if g.partner(u) != v:
        raise ExternalEdge(f"{tuple(edge)!r} is not an internal edge")
    if g.vertex_of(u) == g.vertex_of(v):
        raise InvalidMove(f"edge {tuple(edge)!r} is a loop; IH move undefined")
    x, y = sorted(g.others_at_vertex(u))
    z, w = sorted(g.others_at_vertex(v))
    return u, v, x, y, z, w


def _local_B_labelled(dec: Decoration, u, v, x, y, z, w) -> LocalB:
    delta = dec.b(u, x) - dec.b(v, w)
    ax, ay, az, aw = dec.a(x), dec.a(y), dec.a(z), dec.a(w)
    lifts = (
        reduce_lift(dec.b(x, u), ax),
        reduce_lift(dec.b(y, x), ay),
        reduce_lift(dec.b(z, w) + delta, az),
        reduce_lift(dec.b(w, v) + delta, aw),
    )
    return LocalB(
        lifts=lifts,
        moduli=(ax, ay, az, aw),
        alpha_u=dec.a(u),
        alpha_uprime=2 - ax - az,
    )


def local_B(g: TrivalentGraph, dec: Decoration, edge: Sequence[str]) -> LocalB:
    """B(beta) at an internal edge, labels fixed by stable sorted order."""
    return _local_B_labelled(dec, *_labels(g, edge))


def local_B_prime(dec: Decoration, trace: IhTrace) -> LocalB:
    """B'(beta') on the re-glued graph, in the labels recorded by the trace.

    B'(beta') = (beta'_{xu'}, beta'_{yv'}+delta', beta'_{zu'},
    beta'_{wv'}+delta') with delta' = beta'_{u'x} - beta'_{v'w}.  Under the
    canonical transport gauge this equals B(beta) on the nose.
    """
    x, y, z, w = trace.x, trace.y, trace.z, trace.w
    un, vn = trace.u_new, trace.v_new
    delta = dec.b(un, x) - dec.b(vn, w)
    ax, ay, az, aw = dec.a(x), dec.a(y), dec.a(z), dec.a(w)
    lifts = (
        reduce_lift(dec.b(x, un), ax),
        reduce_lift(dec.b(y, vn) + delta, ay),
        reduce_lift(dec.b(z, un), az),
        reduce_lift(dec.b(w, vn) + delta, aw),
    )
    return LocalB(
        lifts=lifts,
        moduli=(ax, ay, az, aw),
        alpha_u=2 - ax - ay,
        alpha_uprime=dec.a(un),
    )


def refined_epsilon(B: LocalB) -> tuple[Residue, ...]:
    """The refined mod-4 invariant vector.

    Component order (eps_yx, eps_zx, eps_wx, eps_zy, eps_wy, eps_wz).  The
    two Z_4 identities are

        eps_wz - eps_yx = eps_wy - eps_zx + 2
        eps_yx + eps_wz = eps_zx + eps_wy - 2*eps_zy

    and hold identically for every B.
    """
    bx, by, bz, bw = B.lifts
    vals = (
        by - bx + 1,
        bz - bx,
        bw - bx,
        bz - by,
        bw - by,
        bw - bz - 1,
    )
    return tuple(Residue(v, 4) for v in vals)


def local_equivalent(B1: LocalB, B2: LocalB) -> bool:
    """Equality in the common quotient G^alpha, by lattice membership."""
    from .lattice import in_lattice

    if B1.moduli != B2.moduli:
        raise ModuliMismatch(
            f"moduli differ: {B1.moduli} vs {B2.moduli}"
        )
    columns = [list(v) for v in B1.generators_common()]
    for i, a in enumerate(B1.moduli):
        if a != 0:
            vec = [0, 0, 0, 0]
            vec[i] = abs(a)
            columns.append(vec)
    target = [p - q for p, q in zip(B1.lifts, B2.lifts)]
    return in_lattice(columns, target)


def _fresh_name(base: str, taken: set) -> str:
    cand = base + "'"
    while cand in taken:
        cand += "'"
    return cand


def ih_apply(
    g: TrivalentGraph,
    dec: Optional[Decoration],
    move: IhMove,
) -> tuple[TrivalentGraph, Optional[Decoration], IhTrace]:
    """Apply an IH move, transporting the decoration canonically.

    The new edge halves are named by priming the old ones.  The left new
    vertex (inheriting the name of u's vertex) carries {x, z, u'}; the
    right one {y, w, v'} — with x, y swapped first for pairing choice 'c'.
    Transport writes beta'_{u'x} = beta'_{v'w} = 0 and the four B(beta)
    components at (x,u'), (y,v'), (z,u'), (w,v'), so B'(beta') = B(beta).
    """
    u, v, x, y, z, w = _labels(g, move.edge)
    if move.pairing_choice == "c":
        x, y = y, x
    taken = set(g.half_edges())
    u_new = _fresh_name(u, taken)
    taken.add(u_new)
    v_new = _fresh_name(v, taken)

    vu, vv = g.vertex_of(u), g.vertex_of(v)
    new_vertices = {}
    for name, triple in g.vertices:
        if name == vu:
            new_vertices[name] = (x, z, u_new)
        elif name == vv:
            new_vertices[name] = (y, w, v_new)
        else:
            new_vertices[name] = triple
    new_edges = [(a, b) for a, b in g.edges if a != u] + [(u_new, v_new)]
    g2 = build_graph(new_vertices, new_edges, boundary=g.boundary)

    if dec is None:
        B = LocalB((0, 0, 0, 0), (0, 0, 0, 0), 0, 0)
        return g2, None, IhTrace(u, v, x, y, z, w, u_new, v_new, B)

    B = _local_B_labelled(dec, u, v, x, y, z, w)
    a_unew = B.alpha_uprime
    alpha = dec.alpha_map()
    del alpha[u], alpha[v]
    alpha[u_new] = a_unew
    alpha[v_new] = -a_unew
    beta = {
        p: val
        for p, val in dec.beta_map().items()
        if u not in p and v not in p and not (
            {p[0], p[1]} <= {x, y, u} or {p[0], p[1]} <= {z, w, v}
        )
    }
    bx, by, bz, bw = B.lifts
    beta[(u_new, x)] = 0
    beta[(v_new, w)] = 0
    beta[(x, u_new)] = bx
    beta[(y, v_new)] = by
    beta[(z, u_new)] = bz
    beta[(w, v_new)] = bw
    dec2 = make_decoration(g2, alpha, beta)
    return g2, dec2, IhTrace(u, v, x, y, z, w, u_new, v_new, B)


def choice_for(
    g: TrivalentGraph, edge: Sequence[str], together: set[str]
) -> IhMove:
    """The IhMove on ``edge`` that puts the two half-edges in ``together``
    (one from each end vertex) onto the same new vertex."""
    u, v, x, y, z, w = _labels(g, edge)
    pair = frozenset(together)
    if pair in (frozenset((x, z)), frozenset((y, w))):
        return IhMove((u, v), "b")
    if pair in (frozenset((y, z)), frozenset((x, w))):
        return IhMove((u, v), "c")
    raise InvalidMove(
        f"{sorted(together)} is not a cross pair of the outer half-edges"
    )


def invert_move(g_after: TrivalentGraph, trace: IhTrace) -> IhMove:
    """The IH move on the new edge that undoes the recorded move."""
    return choice_for(g_after, (trace.u_new, trace.v_new), {trace.x, trace.y})


def snapshot_hash(g: TrivalentGraph, dec: Optional[Decoration]) -> str:
    from .textio import serialize_decorated_graph

    text = serialize_decorated_graph(g, dec)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def apply_script(
    g: TrivalentGraph,
    dec: Optional[Decoration],
    script: MoveScript,
) -> tuple[TrivalentGraph, Optional[Decoration]]:
    """Replay a script left to right, verifying snapshot hashes if present."""
    check = bool(script.hashes)
    if check and len(script.hashes) != len(script.steps):
        raise ScriptError("hash count does not match step count")
    for idx, step in enumerate(script.steps):
        try:
            if isinstance(step, TrivialMod):
                if dec is None:
                    raise ScriptError("trivial modification needs a decoration")
                dec = apply_trivial_mod(g, dec, step)
            elif isinstance(step, IhMove):
                g, dec, _ = ih_apply(g, dec, step)
            else:
                raise ScriptError(f"unknown step type {type(step).__name__}")
        except (MoveError, GraphError, ValueError) as exc:
            raise ScriptError(f"step {idx} failed: {exc}") from exc
        if check and script.hashes[idx] != snapshot_hash(g, dec):
            raise ScriptError(f"step {idx}: snapshot hash mismatch")
    return g, dec


def with_hashes(
    g: TrivalentGraph, dec: Optional[Decoration], script: MoveScript
) -> MoveScript:
    """Attach snapshot hashes by replaying on (g, dec)."""
    hashes = []
    for step in script.steps:
        if isinstance(step, TrivialMod):
            dec = apply_trivial_mod(g, dec, step)
        else:
            g, dec, _ = ih_apply(g, dec, step)
        hashes.append(snapshot_hash(g, dec))
    return MoveScript(steps=script.steps, hashes=tuple(hashes))


# -- planner -------------------------------------------------------------


class _PlanState:
    """Mutable planning state: current graph, recorded moves, frozen region."""

    def __init__(self, g: TrivalentGraph):
        self.g = g
        self.steps: list[IhMove] = []
        self.traces: list[IhTrace] = []
        self.frozen: set[str] = set()  # vertex names
        self.cut: set[tuple[str, str]] = set()  # sorted half pairs

    def _path(self, va: str, vb: str) -> list[tuple[str, str]]:
        """Oriented path of non-cut internal edges between vertices."""
        tree = {e for e in self.g.edges if e not in self.cut}
        return tree_path(self.g, tree, va, vb)

    def apply(self, move: IhMove) -> IhTrace:
        g2, _, trace = ih_apply(self.g, None, move)
        self.g = g2
        self.steps.append(move)
        self.traces.append(trace)
        return trace

    def meet(self, a: str, b: str) -> str:
        """IH moves until a and b share a vertex; returns the vertex name."""
        guard = 0
        while True:
            va, vb = self.g.vertex_of(a), self.g.vertex_of(b)
            if va == vb:
                return va
            assert va not in self.frozen and vb not in self.frozen
            path = self._path(va, vb)
            guard += 1
            assert guard <= 10_000, "planner failed to converge"
            p, q = path[0]
            cont = path[1][0] if len(path) > 1 else b
            assert p != a and self.g.vertex_of(q) not in self.frozen
            self.apply(choice_for(self.g, (p, q), {a, cont}))


def normalize_to_apple_tree(
    g: TrivalentGraph, external_order: Optional[Sequence[str]] = None
) -> tuple[_PlanState, list[tuple[str, str, Optional[str]]]]:
    """Normalize a connected graph to the canonical apple-tree shape.

    Cuts one non-tree edge per basis cycle, gathers each cut pair into a
    terminal loop vertex, then assembles a straight spine over the external
    edges (in ``external_order``, default sorted) followed by the loop
    stems.  Returns the final plan state and the loop records (m, o, stem
    half at the loop vertex; stem is None for the bare wheel).
    """
    if not is_connected(g):
        raise NotConnected("planner requires a connected graph")
    state = _PlanState(g)
    _, non_tree = spanning_tree(g)
    state.cut = set(non_tree)
    order = list(external_order) if external_order is not None else sorted(g.boundary)
    if sorted(order) != sorted(g.boundary):
        raise BadBoundaryMap("external_order must list the boundary")

    loops: list[tuple[str, str, Optional[str]]] = []
    stems: list[str] = []
    for m, o in non_tree:
        wv = state.meet(m, o)
        (t,) = [h for h in state.g.triple(wv) if h not in (m, o)]
        state.frozen.add(wv)
        if state.g.partner(t) is None:
            loops.append((m, o, None))  # bare wheel: stem slot is external
        else:
            loops.append((m, o, t))
            stems.append(state.g.partner(t))

    leaves = order + stems
    n_unfrozen = len(state.g.vertices) - len(state.frozen)
    if n_unfrozen == 0 or len(leaves) < 2:
        return state, loops
    if len(leaves) == 2:
        assert n_unfrozen == 0 or state.g.vertex_of(leaves[0]) == state.g.vertex_of(
            leaves[1]
        )
        return state, loops
    vtx = state.meet(leaves[0], leaves[1])
    state.frozen.add(vtx)
    (cur,) = [h for h in state.g.triple(vtx) if h not in leaves[:2]]
    pending = leaves[2:]
    while len(pending) > 1:
        d = state.g.partner(cur)
        assert d is not None and state.g.vertex_of(d) not in state.frozen
        leaf = pending.pop(0)
        vtx = state.meet(d, leaf)
        state.frozen.add(vtx)
        (cur,) = [h for h in state.g.triple(vtx) if h not in (d, leaf)]
    assert cur == pending[0], "spine assembly left a dangling leaf"
    return state, loops


def ih_plan(
    g1: TrivalentGraph,
    g2: TrivalentGraph,
    boundary_map: dict[str, str],
) -> MoveScript:
    """A script of IH moves taking g1 to a graph boundary-isomorphic to g2.

    Both graphs are normalized to the canonical apple tree (g2 with its
    externals ordered by boundary_map preimage), then g2's normalization is
    inverted on top of g1's.
    """
    if set(boundary_map) != set(g1.boundary) or set(
        boundary_map.values()
    ) != set(g2.boundary) or len(boundary_map) != len(g2.boundary):
        raise BadBoundaryMap("boundary_map is not a bijection of the boundaries")
    for g in (g1, g2):
        if not is_connected(g):
            raise NotConnected("planner requires connected graphs")
    s1, s2 = graph_stats(g1), graph_stats(g2)
    if s1.genus != s2.genus:
        raise GenusMismatch(f"genus {s1.genus} vs {s2.genus}")

    state1, _ = normalize_to_apple_tree(g1, external_order=sorted(g1.boundary))
    order2 = [boundary_map[h] for h in sorted(g1.boundary)]
    state2, _ = normalize_to_apple_tree(g2, external_order=order2)

    inv_map = {boundary_map[h]: h for h in boundary_map}
    psi = boundary_isomorphism(state2.g, state1.g, inv_map)
    assert psi is not None, "canonical forms failed to match (planner bug)"

    G = state1.g
    steps = list(state1.steps)
    for trace in reversed(state2.traces):
        edge = (psi[trace.u_new], psi[trace.v_new])
        move = choice_for(G, edge, {psi[trace.x], psi[trace.y]})
        G, _, tr2 = ih_apply(G, None, move)
        steps.append(move)
        del psi[trace.u_new], psi[trace.v_new]
        # The new half sharing a vertex with psi(x), psi(y) replays trace.u.
        vx = G.vertex_of(psi[trace.x])
        if tr2.u_new in G.triple(vx):
            psi[trace.u], psi[trace.v] = tr2.u_new, tr2.v_new
        else:
            psi[trace.u], psi[trace.v] = tr2.v_new, tr2.u_new
    return MoveScript(steps=tuple(steps))

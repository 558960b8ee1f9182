"""Genus-stratified classification of decorated trivalent graphs.

Genus 0: the boundary alpha vector.  Genus 1: the gcd invariant
A~ = gcd({alpha_x - 2 : x external}, a, b).  Genus >= 2: the four classes
I-IV cut out by parity of alpha, parity of the cycle invariants b_c, the
boundary alpha mod 4, and (for classes III/IV) the Arf invariant over the
disjoint cycle system frak_C.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .decoration import (
    Decoration,
    Residue,
    cycle_b,
    gcd_all,
    make_decoration,
    reduce_lift,
    validate_decoration,
)
from .graph import (
    BadBoundaryMap,
    NotConnected,
    OrientedCycle,
    TrivalentGraph,
    build_graph,
    cycle_basis,
    graph_stats,
    is_connected,
)
from .moves import MoveScript, apply_script, normalize_to_apple_tree


class InvariantError(ValueError):
    pass


class WrongGenus(InvariantError):
    pass


class ConditionsFail(InvariantError):
    pass


class ReductionStuck(InvariantError):
    pass


def _connected_genus(g: TrivalentGraph) -> int:
    stats = graph_stats(g)
    if stats.components != 1:
        raise NotConnected(f"graph has {stats.components} components")
    return stats.genus[0]


def a_tilde(g: TrivalentGraph, dec: Decoration) -> int:
    """The genus-1 invariant gcd({alpha_x - 2 : x external}, a, b)."""
    genus = _connected_genus(g)
    if genus != 1:
        raise WrongGenus(f"a_tilde requires genus 1, got {genus}")
    (cyc,) = cycle_basis(g)
    a_lift = dec.a(cyc.steps[0][0])
    b_lift = cycle_b(g, dec, cyc).value
    return gcd_all(
        [dec.a(h) - 2 for h in g.boundary] + [a_lift, b_lift]
    )


def _check_conditions(
    g: TrivalentGraph, dec: Decoration, through: int
) -> list[str]:
    """Violations of conditions (1)..(through) of the Arf setup."""
    problems = []
    if through >= 1:
        odd = sorted(h for h, a in dec.alpha if a % 2)
        if odd:
            problems.append(f"(1) odd alpha at {odd}")
    if through >= 2:
        bad = sorted(h for h in g.boundary if dec.a(h) % 4 != 2)
        if bad:
            problems.append(f"(2) boundary alpha != 2 mod 4 at {bad}")
    if through >= 3 and not problems:
        for idx, c in enumerate(cycle_basis(g)):
            if cycle_b(g, dec, c).value % 2:
                problems.append(f"(3) odd b_c on basis cycle {idx}")
    return problems


def frak_C(g: TrivalentGraph, dec: Decoration) -> list[OrientedCycle]:
    """The disjoint cycles of internal edges with alpha == 0 mod 4.

    Requires conditions (1) and (2).  Every vertex of that subgraph has
    degree exactly 2 (the mod-2 residues p_x sum to zero at vertices), so
    components are simple cycles, returned in deterministic order.
    """
    problems = _check_conditions(g, dec, through=2)
    if problems:
        raise ConditionsFail("; ".join(problems))
    sub: set[str] = set()
    for a, b in g.edges:
        if dec.a(a) % 4 == 0:
            sub.add(a)
            sub.add(b)
    for name, triple in g.vertices:
        deg = sum(1 for h in triple if h in sub)
        assert deg in (0, 2), f"vertex {name!r} has degree {deg} in frak_C"
    cycles = []
    unused = set(sub)
    while unused:
        start = min(unused)
        steps = []
        out = start
        while True:
            inn = g.partner(out)
            steps.append((out, inn))
            unused.discard(out)
            unused.discard(inn)
            (out,) = [
                h for h in g.others_at_vertex(inn) if h in sub and h != inn
            ]
            if out == start:
                break
        cyc = OrientedCycle(tuple(steps))
        cyc.validate(g)
        cycles.append(cyc)
    return cycles


def arf(g: TrivalentGraph, dec: Decoration) -> int:
    """A = sum over frak_C of q_c = b_c/2 + 1 in Z_2 (b_c taken mod 4)."""
    problems = _check_conditions(g, dec, through=3)
    if problems:
        raise ConditionsFail("; ".join(problems))
    total = 0
    for c in frak_C(g, dec):
        b4 = reduce_lift(cycle_b(g, dec, c).value, 4)
        assert b4 % 2 == 0
        total += b4 // 2 + 1
    return total % 2


def decoration_class(g: TrivalentGraph, dec: Decoration) -> str:
    """The four-way partition I | II | III | IV (total on connected graphs)."""
    _connected_genus(g)
    if any(a % 2 for _, a in dec.alpha):
        return "I"
    if any(cycle_b(g, dec, c).value % 2 for c in cycle_basis(g)):
        return "I"
    if any(dec.a(h) % 4 == 0 for h in g.boundary):
        return "II"
    return "III" if arf(g, dec) == 0 else "IV"


@dataclass(frozen=True)
class InvariantReport:
    """Classification record; only genus-appropriate fields are populated."""

    genus: int
    boundary_alpha: tuple[tuple[str, int], ...]  # in declared boundary order
    cycle_bs: tuple[str, ...]  # informational, basis-dependent
    a_tilde: Optional[int] = None
    cls: Optional[str] = None
    arf: Optional[int] = None

    def key(self):
        """The genus-stratified equivalence key (drops the basis-dependent
        per-cycle values)."""
        return (self.genus, self.boundary_alpha, self.a_tilde, self.cls, self.arf)

    def to_dict(self) -> dict:
        out = {
            "genus": self.genus,
            "boundary_alpha": {h: a for h, a in self.boundary_alpha},
            "cycle_b": list(self.cycle_bs),
        }
        if self.a_tilde is not None:
            out["a_tilde"] = self.a_tilde
        if self.cls is not None:
            out["class"] = self.cls
        if self.arf is not None:
            out["arf"] = self.arf
        return out


def classify(g: TrivalentGraph, dec: Decoration) -> InvariantReport:
    genus = _connected_genus(g)
    boundary_alpha = tuple((h, dec.a(h)) for h in g.boundary)
    cycle_bs = tuple(str(cycle_b(g, dec, c)) for c in cycle_basis(g))
    if genus == 0:
        return InvariantReport(genus, boundary_alpha, cycle_bs)
    if genus == 1:
        return InvariantReport(
            genus, boundary_alpha, cycle_bs, a_tilde=a_tilde(g, dec)
        )
    cls = decoration_class(g, dec)
    a = arf(g, dec) if cls in ("III", "IV") else None
    return InvariantReport(genus, boundary_alpha, cycle_bs, cls=cls, arf=a)


def equivalent(
    g1: TrivalentGraph,
    dec1: Decoration,
    g2: TrivalentGraph,
    dec2: Decoration,
    boundary_map: dict[str, str],
) -> bool:
    """The theorems' decision rule: genus, boundary alpha, and the
    genus-appropriate invariant (nothing / A~ / class)."""
    if set(boundary_map) != set(g1.boundary) or set(
        boundary_map.values()
    ) != set(g2.boundary) or len(boundary_map) != len(g2.boundary):
        raise BadBoundaryMap("boundary_map is not a bijection of the boundaries")
    genus1, genus2 = _connected_genus(g1), _connected_genus(g2)
    if genus1 != genus2:
        return False
    if any(dec1.a(h) != dec2.a(boundary_map[h]) for h in g1.boundary):
        return False
    if genus1 == 0:
        return True
    if genus1 == 1:
        return a_tilde(g1, dec1) == a_tilde(g2, dec2)
    return decoration_class(g1, dec1) == decoration_class(g2, dec2)


# -- loop tuples and the normal form -------------------------------------


@dataclass(frozen=True)
class LoopTuple:
    """(alpha_i, b~_i) per loop of an apple tree, plus the boundary alpha."""

    pairs: tuple[tuple[int, int], ...]
    boundary_alpha: tuple[int, ...]


def _pair_gcd(a: int, b: int) -> int:
    """Canonical single-pair reduction: Euclid via (a,b) -> (b,-a) and
    b -> b mod a, landing on (gcd, 0)."""
    return gcd_all((a, b))


def _tuple_class(t: LoopTuple) -> str:
    """decoration_class recomputed at tuple level (on the apple tree all
    other alpha values are even combinations of these)."""
    if any(a % 2 for a in t.boundary_alpha) or any(
        a % 2 or b % 2 for a, b in t.pairs
    ):
        return "I"
    if any(a % 4 == 0 for a in t.boundary_alpha):
        return "II"
    total = 0
    for a, b in t.pairs:
        if a % 4 == 0:
            b4 = b % 4
            total += b4 // 2 + 1
    return "III" if total % 2 == 0 else "IV"


def tuple_reduce(t: LoopTuple, cls: Optional[str] = None) -> LoopTuple:
    """Canonical representative of a LoopTuple under the proof's moves.

    Genus >= 2 canonical tuples: class I ((1,0))^g, class II and III
    ((2,0))^g, class IV ((0,0),(2,0)^(g-1)).  Genus 1 has no mod-4 move
    (the double-apple needs two loops), so the canonical pair is (A~, 0)
    with A~ = gcd({alpha_x - 2}, alpha_1, b~_1).
    """
    g = len(t.pairs)
    if g == 0:
        return t
    d = [_pair_gcd(a, b) for a, b in t.pairs]
    if g == 1:
        at = gcd_all([a - 2 for a in t.boundary_alpha] + d)
        return LoopTuple(((at, 0),), t.boundary_alpha)
    if cls is None:
        cls = _tuple_class(t)
    elif cls != _tuple_class(t):
        raise ReductionStuck(
            f"tuple {t.pairs} is in class {_tuple_class(t)}, not {cls}"
        )
    m = gcd_all([4] + [a - 2 for a in t.boundary_alpha])
    if cls == "I":
        if gcd_all(d + [m]) % 2 != 1:
            raise ReductionStuck("class I tuple with even reachable gcd")
        pairs = ((1, 0),) * g
    elif cls == "II":
        if m != 2:
            raise ReductionStuck("class II tuple without a 0 mod 4 boundary")
        pairs = ((2, 0),) * g
    else:
        if m != 4:
            raise ReductionStuck("class III/IV tuple with non-trivial boundary moves")
        residues = [di % 4 for di in d]
        if any(r % 2 for r in residues):
            raise ReductionStuck("odd pair in class III/IV tuple")
        zeros = sum(1 for r in residues if r == 0)
        if zeros % 2 == 0:
            if cls != "III":
                raise ReductionStuck("pair parity disagrees with class III")
            pairs = ((2, 0),) * g
        else:
            if cls != "IV":
                raise ReductionStuck("pair parity disagrees with class IV")
            pairs = ((0, 0),) + ((2, 0),) * (g - 1)
    out = LoopTuple(pairs, t.boundary_alpha)
    if _tuple_class(out) != cls:
        raise ReductionStuck("reduced tuple changed class (internal bug)")
    return out


def build_canonical_apple(
    boundary: list[tuple[str, int]], pairs: list[tuple[int, int]]
) -> tuple[TrivalentGraph, Decoration]:
    """The canonical apple tree with the given boundary names/alpha and
    loop pairs, carrying the canonical gauge-zero decoration with b~_i
    written on each loop."""
    n, g = len(boundary), len(pairs)
    if 2 * g + n - 2 < 1:
        raise InvariantError("no trivalent graph with this boundary/genus")
    prefix = "_"
    names = {h for h, _ in boundary}
    while any(h.startswith(prefix) for h in names):
        prefix += "_"

    vertices: dict[str, tuple[str, str, str]] = {}
    edges: list[tuple[str, str]] = []
    alpha: dict[str, int] = {h: a for h, a in boundary}
    vcount = 0

    def new_vertex(triple):
        nonlocal vcount
        vertices[f"{prefix}n{vcount}"] = tuple(triple)
        vcount += 1

    # loop gadgets: vertex {stem_b, l_a, l_b}; the spine sees stem_a.
    loop_leaves = []
    for i, (ai, bi) in enumerate(pairs):
        la, lb = f"{prefix}l{i}a", f"{prefix}l{i}b"
        alpha[la], alpha[lb] = ai, -ai
        loop_leaves.append((la, lb))
    leaves: list[str] = [h for h, _ in boundary]
    if n == 1 and g == 1:
        la, lb = loop_leaves[0]
        new_vertex((leaves[0], la, lb))
        edges.append((la, lb))
    elif n == 0 and g == 2:
        stems = (f"{prefix}t0", f"{prefix}t1")
        alpha[stems[0]], alpha[stems[1]] = 2, -2
        for i in range(2):
            la, lb = loop_leaves[i]
            new_vertex((stems[i], la, lb))
            edges.append((la, lb))
        edges.append(stems)
    else:
        for i, (la, lb) in enumerate(loop_leaves):
            sa, sb = f"{prefix}t{i}a", f"{prefix}t{i}b"
            alpha[sa], alpha[sb] = -2, 2
            new_vertex((sb, la, lb))
            edges.append((la, lb))
            edges.append((sa, sb))
            leaves.append(sa)
        m = len(leaves)
        assert m >= 3
        if m == 3:
            new_vertex(tuple(leaves))
        else:
            prev = None
            for k in range(m - 2):
                if k == 0:
                    sa = f"{prefix}s0a"
                    new_vertex((leaves[0], leaves[1], sa))
                    alpha[sa] = 2 - alpha[leaves[0]] - alpha[leaves[1]]
                elif k < m - 3:
                    sb = f"{prefix}s{k-1}b"
                    sa = f"{prefix}s{k}a"
                    alpha[sb] = -alpha[f"{prefix}s{k-1}a"]
                    alpha[sa] = 2 - alpha[sb] - alpha[leaves[k + 1]]
                    new_vertex((sb, leaves[k + 1], sa))
                    edges.append((f"{prefix}s{k-1}a", sb))
                else:
                    sb = f"{prefix}s{k-1}b"
                    alpha[sb] = -alpha[f"{prefix}s{k-1}a"]
                    new_vertex((sb, leaves[k + 1], leaves[k + 2]))
                    edges.append((f"{prefix}s{k-1}a", sb))
                prev = k
    graph = build_graph(vertices, edges)
    # gauge-zero beta with b~_i written on each loop
    beta: dict[tuple[str, str], int] = {}
    loop_sources = set()
    for (la, lb), (ai, bi) in zip(loop_leaves, pairs):
        beta[(la, lb)] = bi
        beta[(lb, la)] = 0
        loop_sources.update((la, lb))
    for _, triple in graph.vertices:
        for s in triple:
            if s not in loop_sources:
                beta[(s, min(x for x in triple if x != s))] = 0
    dec = make_decoration(graph, alpha, beta)
    problems = validate_decoration(graph, dec)
    if problems:
        raise InvariantError(
            "canonical apple tree decoration invalid: " + "; ".join(problems)
        )
    return graph, dec


@dataclass(frozen=True)
class NormalForm:
    """Canonical apple tree + decoration; the script is a witness and is
    excluded from record equality."""

    graph: TrivalentGraph
    decoration: Decoration
    report: InvariantReport
    script: MoveScript = field(compare=False)


def extract_loop_tuple(
    g: TrivalentGraph,
    dec: Decoration,
    loops: list[tuple[str, str, Optional[str]]],
) -> LoopTuple:
    pairs = []
    for m, o, _ in loops:
        cyc = OrientedCycle(((m, o),))
        b = cycle_b(g, dec, cyc)
        pairs.append((dec.a(m), b.value))
    boundary_alpha = tuple(dec.a(h) for h in sorted(g.boundary))
    return LoopTuple(tuple(pairs), boundary_alpha)


def normal_form(g: TrivalentGraph, dec: Decoration) -> NormalForm:
    """Reduce to the canonical apple tree with the canonical loop tuple.

    Two decorated graphs with identically-named boundaries are equivalent()
    iff their NormalForm records compare equal.
    """
    problems = validate_decoration(g, dec)
    if problems:
        raise InvariantError("invalid decoration: " + "; ".join(problems))
    genus = _connected_genus(g)
    state, loops = normalize_to_apple_tree(g, external_order=sorted(g.boundary))
    script = MoveScript(tuple(state.steps))
    g_norm, dec_norm = apply_script(g, dec, script)
    assert g_norm == state.g
    t = extract_loop_tuple(g_norm, dec_norm, loops)
    cls = decoration_class(g_norm, dec_norm) if genus >= 2 else None
    t_red = tuple_reduce(t, cls)
    boundary = [(h, dec.a(h)) for h in sorted(g.boundary)]
    g_can, dec_can = build_canonical_apple(boundary, list(t_red.pairs))
    report = classify(g_can, dec_can)
    if genus >= 2:
        assert report.cls == cls, "normal form changed class (internal bug)"
    elif genus == 1:
        assert report.a_tilde == a_tilde(g, dec)
    return NormalForm(g_can, dec_can, report, script)

"""Brute-force oracles: bounded orbit enumeration and classification checks.

These are deliberately dumb searches used to cross-check the closed-form
invariants on desk-scale instances: an SL(2,Z)-style orbit walker for single
(a, b) pairs, a bounded walker over the full move groupoid (trivial
modifications and IH round trips), and an exhaustive small-window comparison
of move orbits against the classification.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .decoration import (
    Decoration,
    TrivialMod,
    apply_trivial_mod,
    make_decoration,
    validate_decoration,
)
from .graph import NotConnected, TrivalentGraph, build_graph, is_connected
from .invariants import classify
from .moves import InvalidMove, IhMove, ih_apply, invert_move


class FrontierExceeded(RuntimeError):
    """Search frontier outgrew the configured bound; ``partial`` holds the
    states found so far."""

    def __init__(self, message: str, partial: set):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class OrbitBounds:
    """Caps for the bounded searches."""

    max_param: int = 1  # trivial-modification amounts searched: 1..max_param
    max_depth: int = 8  # BFS depth
    max_frontier: int = 20_000  # total states before giving up


def sl2_orbit(a: int, b: int, bound: int) -> set[tuple[int, int]]:
    """Orbit of (a, b) under b -> b +- a and (a, b) -> (b, -a), restricted
    to the max-norm window |a|, |b| <= bound.

    The Euclidean reduction path from any window point to (gcd, 0) never
    leaves the window, so the restriction does not split gcd classes.
    """
    if max(abs(a), abs(b)) > bound:
        raise ValueError("seed outside the window")
    seen = {(a, b)}
    frontier = deque(seen)
    while frontier:
        p, q = frontier.popleft()
        for cand in ((p, q + p), (p, q - p), (q, -p), (-q, p)):
            if max(abs(cand[0]), abs(cand[1])) <= bound and cand not in seen:
                seen.add(cand)
                frontier.append(cand)
    return seen


def _rename_halves(dec: Decoration, mapping: dict[str, str]) -> Decoration:
    alpha = tuple(
        sorted((mapping.get(h, h), a) for h, a in dec.alpha)
    )
    beta = tuple(
        sorted(
            ((mapping.get(s, s), mapping.get(t, t)), v)
            for (s, t), v in dec.beta
        )
    )
    return Decoration(alpha=alpha, beta=beta)


def ih_round_trips(
    g: TrivalentGraph, dec: Decoration, max_param: int
) -> Iterable[Decoration]:
    """Decorations obtained by an IH move, an optional I-modification on
    the fresh edge, and the inverse IH move, renamed back onto g."""
    amounts = [0] + [s * k for k in range(1, max_param + 1) for s in (1, -1)]
    for edge in g.edges:
        for choice in ("b", "c"):
            try:
                g1, dec1, tr1 = ih_apply(g, dec, IhMove(edge, choice))
            except InvalidMove:
                break  # loop edge: no IH move either way
            for m in amounts:
                d1 = dec1
                if m:
                    d1 = apply_trivial_mod(
                        g1, d1, TrivialMod("I", (tr1.u_new, tr1.v_new), m)
                    )
                g2, dec2, tr2 = ih_apply(g1, d1, invert_move(g1, tr1))
                # Rename the two fresh halves back to u, v: the one at the
                # vertex rejoining {x, y} replays u.
                vx = g2.vertex_of(tr1.x)
                if tr2.u_new in g2.triple(vx):
                    ren = {tr2.u_new: tr1.u, tr2.v_new: tr1.v}
                else:
                    ren = {tr2.v_new: tr1.u, tr2.u_new: tr1.v}
                out = _rename_halves(dec2, ren)
                restored = {
                    frozenset(ren.get(h, h) for h in triple)
                    for _, triple in g2.vertices
                }
                assert restored == {
                    frozenset(t) for _, t in g.vertices
                }, "IH round trip did not restore the graph (internal bug)"
                problems = validate_decoration(g, out)
                assert not problems, f"round trip broke the decoration: {problems}"
                yield out


def _neighbors(
    g: TrivalentGraph, dec: Decoration, bounds: OrbitBounds
) -> Iterable[Decoration]:
    amounts = [s * k for k in range(1, bounds.max_param + 1) for s in (1, -1)]
    for name, _ in g.vertices:
        for n in amounts:
            yield apply_trivial_mod(g, dec, TrivialMod("V", name, n))
    for edge in g.edges:
        for n in amounts:
            yield apply_trivial_mod(g, dec, TrivialMod("I", edge, n))
    for x in g.boundary:
        for n in amounts:
            yield apply_trivial_mod(g, dec, TrivialMod("E", x, n))
    yield from ih_round_trips(g, dec, bounds.max_param)


def move_orbit(
    g: TrivalentGraph, dec: Decoration, bounds: OrbitBounds = OrbitBounds()
) -> set[Decoration]:
    """Bounded BFS orbit of dec under trivial modifications and IH round
    trips (the graph-preserving moves).  Raises FrontierExceeded past the
    frontier cap; the exception carries the partial orbit."""
    seen = {dec}
    frontier = deque([(dec, 0)])
    while frontier:
        cur, depth = frontier.popleft()
        if depth >= bounds.max_depth:
            continue
        for nxt in _neighbors(g, cur, bounds):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > bounds.max_frontier:
                    raise FrontierExceeded(
                        f"orbit exceeded {bounds.max_frontier} states", seen
                    )
                frontier.append((nxt, depth + 1))
    return seen


# -- exhaustive classification check -------------------------------------


def enumerate_alpha(
    g: TrivalentGraph, window: int
) -> list[dict[str, int]]:
    """All alpha assignments with every value in [-window, window].

    Free variables: one per external half-edge and one per internal edge
    (the value on its smaller half); constraints are the vertex sums."""
    variables: list[str] = list(g.boundary) + [a for a, _ in g.edges]
    if (2 * window + 1) ** len(variables) > 5_000_000:
        raise ValueError("alpha window too large to enumerate")
    out = []
    for combo in itertools.product(
        range(-window, window + 1), repeat=len(variables)
    ):
        val = dict(zip(variables, combo))
        alpha = {}
        for h in g.half_edges():
            p = g.partner(h)
            if p is None:
                alpha[h] = val[h]
            elif h < p:
                alpha[h] = val[h]
            else:
                alpha[h] = -val[p]
        if all(
            sum(alpha[h] for h in triple) == 2 for _, triple in g.vertices
        ) and all(abs(a) <= window for a in alpha.values()):
            out.append(alpha)
    return out


def enumerate_decorations(
    g: TrivalentGraph, alpha: dict[str, int], window: int
) -> list[Decoration]:
    """All decorations over a fixed alpha: one free lift per source
    half-edge, ranged over its residue classes (a window of integers when
    the source alpha is 0)."""
    sources = []
    ranges = []
    total = 1
    for _, triple in g.vertices:
        for s in triple:
            sources.append((s, min(t for t in triple if t != s)))
            a = abs(alpha[s])
            r = range(a) if a else range(-window, window + 1)
            ranges.append(r)
            total *= len(r)
            if total > 5_000_000:
                raise ValueError("beta window too large to enumerate")
    out = []
    for combo in itertools.product(*ranges):
        beta = {pair: v for pair, v in zip(sources, combo)}
        out.append(make_decoration(g, alpha, beta))
    # distinct seeds can complete to the same reduced decoration only when
    # alpha is 0 on no source, where seeds are already reduced reps
    return sorted(set(out), key=lambda d: (d.alpha, d.beta))


@dataclass
class ClassificationReport:
    """Outcome of the exhaustive orbit-vs-classification comparison."""

    n_decorations: int
    n_orbits: int
    n_classes: int
    violations: list[str] = field(default_factory=list)
    orbits_per_class: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_classification(
    g: TrivalentGraph,
    bounds: OrbitBounds = OrbitBounds(),
    window: int = 2,
) -> ClassificationReport:
    """Enumerate all decorations in a window, partition them into bounded
    move orbits, and verify the classification is constant on every orbit.

    Orbits are computed with bounded search, so two decorations may show as
    distinct orbits while actually being connected outside the window; that
    direction is reported as orbit counts per class, not as a violation.
    Classification differing *within* one orbit is always a violation.
    """
    if not is_connected(g):
        raise NotConnected("classification check needs a connected graph")
    decs: list[Decoration] = []
    for alpha in enumerate_alpha(g, window):
        decs.extend(enumerate_decorations(g, alpha, window))
    index = {d: i for i, d in enumerate(decs)}
    # Bounded BFS orbits are not transitively closed, so orbits seeded at
    # different decorations may partially overlap; overlapping orbits are
    # merged (union-find) since overlap proves they lie in one true orbit.
    parent = list(range(len(decs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    records: dict[int, set] = {}
    seen_seed = [False] * len(decs)
    for i, d in enumerate(decs):
        if seen_seed[i]:
            continue
        try:
            orbit = move_orbit(g, d, bounds)
        except FrontierExceeded as exc:
            orbit = exc.partial
        recs = records.setdefault(i, set())
        for member in orbit:
            j = index.get(member)
            if j is not None:
                seen_seed[j] = True
                union(i, j)
            recs.add(classify(g, member).key())
    # merge record sets along the union-find classes
    merged: dict[int, set] = {}
    for i, recs in records.items():
        merged.setdefault(find(i), set()).update(recs)
    violations: list[str] = []
    for root, recs in sorted(merged.items()):
        if len(recs) > 1:
            violations.append(
                f"orbit of decoration {root} carries {len(recs)} distinct "
                f"classification records"
            )
    by_class: dict = {}
    for i, d in enumerate(decs):
        key = classify(g, d).key()
        by_class.setdefault(key, set()).add(find(i))
    orbits_per_class = {
        str(k): len(v)
        for k, v in sorted(by_class.items(), key=lambda kv: str(kv[0]))
    }
    return ClassificationReport(
        n_decorations=len(decs),
        n_orbits=len(merged),
        n_classes=len(by_class),
        violations=violations,
        orbits_per_class=orbits_per_class,
    )

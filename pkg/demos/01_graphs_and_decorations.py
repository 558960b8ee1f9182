"""Half-edge trivalent graphs and their decorations.

A trivalent graph is given by named half-edges grouped into vertex triples;
internal edges pair two half-edges, unpaired halves form the boundary.  A
decoration puts an integer alpha on every half-edge (summing to 2 at each
vertex, opposite across each edge) and a residue beta_{xy} in Z_{alpha_x}
on every ordered pair of half-edges meeting a vertex.
"""

from decograph import (
    build_graph,
    graph_stats,
    make_decoration,
    serialize_decorated_graph,
    validate_decoration,
)

# The "figure (a)" graph of the IH move: one internal edge u~v, four
# external legs x, y | z, w.
g = build_graph({"A": ("x", "y", "u"), "B": ("z", "w", "v")}, [("u", "v")])

stats = graph_stats(g)
print(f"vertices={stats.v} internal={stats.i} external={stats.e} "
      f"genus={list(stats.genus)}")
# The structural identity 3v = 2i + e always holds:
assert 3 * stats.v == 2 * stats.i + stats.e

# A decoration: alpha sums to 2 at each vertex and is opposite on u, v.
alpha = {"x": 3, "y": -1, "u": 0, "v": 0, "z": -2, "w": 4}
# It is enough to seed one beta lift per source half-edge; the companion
# lifts are completed from the congruence beta_{xz} = beta_{xy} + alpha_z - 1.
beta = {("x", "y"): 1, ("y", "x"): 0, ("u", "x"): 0,
        ("z", "w"): 0, ("w", "z"): 2, ("v", "z"): 0}
dec = make_decoration(g, alpha, beta)
assert validate_decoration(g, dec) == []

print("alpha_x =", dec.a("x"))
print("beta_{x,y} =", dec.b("x", "y"), " beta_{x,u} =", dec.b("x", "u"))

# The canonical text form round-trips byte-for-byte.
print()
print(serialize_decorated_graph(g, dec))

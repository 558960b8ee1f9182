"""Normal forms and the equivalence decision.

Every connected decorated graph reduces, by IH moves and trivial
modifications, to a canonical "apple tree": a straight spine with one loop
per genus, each loop carrying a canonical pair (alpha_i, b~_i).  Two
decorated graphs with matching boundary are equivalent iff their normal
forms coincide, which the closed-form classify() record also detects.
"""

from decograph import (
    build_graph,
    equivalent,
    make_decoration,
    normal_form,
    serialize_decorated_graph,
    ih_plan,
    apply_script,
    boundary_isomorphism,
)

wheel = build_graph({"W": ("x", "y", "z")}, [("x", "y")])


def wheel_dec(a, b):
    return make_decoration(
        wheel, {"x": a, "y": -a, "z": 2},
        {("x", "y"): b, ("y", "x"): 0, ("z", "x"): 0},
    )


# (4, 6) and (2, 0) have the same A~ = 2, so the same normal form.
nf1 = normal_form(wheel, wheel_dec(4, 6))
nf2 = normal_form(wheel, wheel_dec(2, 0))
assert (nf1.graph, nf1.decoration) == (nf2.graph, nf2.decoration)
print("normal form of both wheels:")
print(serialize_decorated_graph(nf1.graph, nf1.decoration))

print("equivalent((4,6), (2,0)):",
      equivalent(wheel, wheel_dec(4, 6), wheel, wheel_dec(2, 0), {"z": "z"}))
print("equivalent((4,6), (3,0)):",
      equivalent(wheel, wheel_dec(4, 6), wheel, wheel_dec(3, 0), {"z": "z"}))

# The planner connects any two connected graphs with matching boundary and
# genus by a replayable IH-move script.
tri = build_graph(
    {"T1": ("r1", "p12", "p13"), "T2": ("r2", "p23", "p21"),
     "T3": ("r3", "p31", "p32")},
    [("p12", "p21"), ("p23", "p32"), ("p31", "p13")],
)
chain = build_graph(
    {"A": ("s1", "m1", "c1a"), "B": ("c1b", "m2", "c2a"),
     "C": ("c2b", "s3", "m3")},
    [("c1a", "c1b"), ("c2a", "c2b"), ("m1", "m2")],
)
bmap = dict(zip(sorted(tri.boundary), sorted(chain.boundary)))
script = ih_plan(tri, chain, bmap)
moved, _ = apply_script(tri, None, script)
assert boundary_isomorphism(moved, chain, bmap) is not None
print(f"planner: triangle -> chain in {len(script.steps)} moves")

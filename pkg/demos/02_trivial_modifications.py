"""Trivial modifications and the cycle invariant b_c.

Three families of moves change beta without changing the decorated graph's
class: V (add a constant at a vertex), I (add a constant on both sides of
an internal edge), E (add a constant at an external half-edge).  Summing
beta around an oriented cycle gives a residue b_c mod the ideal I_c
generated by the alpha values on the cycle; b_c is invariant under all
trivial modifications, and for a fixed alpha it decides equivalence.
"""

from decograph import (
    TrivialMod,
    apply_trivial_mod,
    build_graph,
    cycle_b,
    make_decoration,
    trivial_mod_equivalent,
    apply_script,
)
from decograph.graph import OrientedCycle

# The one-vertex wheel: loop x~y plus an external leg z.
g = build_graph({"W": ("x", "y", "z")}, [("x", "y")])
dec = make_decoration(
    g, {"x": 6, "y": -6, "z": 2},
    {("x", "y"): 4, ("y", "x"): 0, ("z", "x"): 0},
)

loop = OrientedCycle((("y", "x"),))
print("b_c =", cycle_b(g, dec, loop))

# Any chain of trivial modifications leaves b_c untouched.
d2 = dec
for mod in (TrivialMod("V", "W", 5), TrivialMod("I", ("x", "y"), -2),
            TrivialMod("E", "z", 7)):
    d2 = apply_trivial_mod(g, d2, mod)
print("after mods:", cycle_b(g, d2, loop))
assert cycle_b(g, d2, loop) == cycle_b(g, dec, loop)

# trivial_mod_equivalent decides connectivity under these moves and returns
# a replayable witness script.
script = trivial_mod_equivalent(g, dec, d2)
assert script is not None
_, replayed = apply_script(g, dec, script)
assert replayed == d2
print("witness script:", [type(s).__name__ for s in script.steps],
      f"({len(script.steps)} steps)")

# Decorations with a different b_c are genuinely inequivalent.
other = make_decoration(
    g, {"x": 6, "y": -6, "z": 2},
    {("x", "y"): 5, ("y", "x"): 0, ("z", "x"): 0},
)
assert trivial_mod_equivalent(g, dec, other) is None
print("b_c separates:", cycle_b(g, dec, loop), "vs", cycle_b(g, other, loop))

import random

import pytest

from decograph import (
    AlphaMismatch,
    BadTarget,
    ConditionFails,
    NotAtVertex,
    OddAlpha,
    Residue,
    TrivialMod,
    apply_trivial_mod,
    apply_script,
    build_graph,
    canonical_beta_planar,
    cycle_b,
    cycle_basis,
    delta_edge,
    gamma,
    gcd_all,
    make_decoration,
    trivial_mod_equivalent,
    validate_decoration,
    weak_class,
    weaken,
    zero_beta,
)
from decograph.graph import OrientedCycle
from conftest import (
    fig_a_graph,
    random_decoration,
    triangle_graph,
    wheel_decoration,
    wheel_graph,
)


class TestResidue:
    def test_modulus_zero_is_integers(self):
        assert Residue(7, 0).value == 7
        assert Residue(-7, 0).value == -7

    def test_reduction(self):
        assert Residue(7, 3) == Residue(1, 3)
        assert Residue(-1, 3).value == 2

    def test_arithmetic(self):
        assert Residue(2, 5) + Residue(4, 5) == Residue(1, 5)
        assert -Residue(1, 4) == Residue(3, 4)

    def test_gcd_conventions(self):
        assert gcd_all(()) == 0
        assert gcd_all((0, -6)) == 6
        assert gcd_all((4, 6)) == 2


class TestValidation:
    def test_wheel_example_valid(self):
        g, dec = wheel_decoration(3, 1)
        assert validate_decoration(g, dec) == []

    def test_vertex_sum_violation(self):
        g = build_graph([("a", "b", "c")])
        dec = zero_beta(g, {"a": 1, "b": 1, "c": 1})
        problems = validate_decoration(g, dec)
        assert any("alpha sum 3" in p for p in problems)

    def test_closed_graph_undecoratable(self):
        # no external edges: vertex sums force sum(alpha) = 2v over internal
        # pairs which cancel to 0, so some vertex must fail
        g = build_graph(
            [("a1", "b1", "c1"), ("a2", "b2", "c2")],
            [("a1", "a2"), ("b1", "b2"), ("c1", "c2")],
        )
        alpha = {"a1": 1, "a2": -1, "b1": 1, "b2": -1, "c1": 0, "c2": 0}
        dec = zero_beta(g, alpha)
        assert any(
            "alpha sum" in p for p in validate_decoration(g, dec)
        )

    def test_congruence_violation(self):
        g = build_graph([("a", "b", "c")])
        dec = zero_beta(g, {"a": 4, "b": -4, "c": 2})
        bad = dec.beta_map()
        bad[("a", "c")] = dec.b("a", "c") + 1
        from decograph.decoration import Decoration

        broken = Decoration(alpha=dec.alpha, beta=tuple(sorted(bad.items())))
        assert any("beta" in p for p in validate_decoration(g, broken))


class TestGammaDeltaB:
    def test_wheel_gamma(self):
        g, dec = wheel_decoration(3, 1)
        assert gamma(g, dec, "W", "y", "x") == Residue(2, 3)
        assert gamma(g, dec, "W", "x", "y") == Residue(1, 3)

    def test_gamma_antisymmetry_and_relation(self):
        rng = random.Random(0)
        g = fig_a_graph()
        for _ in range(20):
            dec = random_decoration(g, rng, mag=5)
            for name, triple in g.vertices:
                x, y, z = triple
                assert gamma(g, dec, name, x, y) == -gamma(g, dec, name, y, x)
                m = gcd_all(dec.a(h) for h in triple)
                total = (
                    gamma(g, dec, name, x, y).value
                    + gamma(g, dec, name, y, z).value
                    + gamma(g, dec, name, z, x).value
                )
                assert Residue(total, m) == Residue(1, m)

    def test_gamma_not_at_vertex(self):
        g, dec = wheel_decoration(3, 1)
        with pytest.raises(NotAtVertex):
            gamma(g, dec, "W", "x", "x")

    def test_delta_relation_asserted(self):
        rng = random.Random(1)
        g = fig_a_graph()
        for _ in range(20):
            dec = random_decoration(g, rng, mag=5)
            out = delta_edge(g, dec, ("u", "v"))
            assert len(out) == 4

    def test_wheel_cycle_b(self):
        g, dec = wheel_decoration(3, 1)
        c = OrientedCycle((("y", "x"),))
        assert cycle_b(g, dec, c) == Residue(2, 3)
        assert cycle_b(g, dec, c.reversed()) == Residue(1, 3)

    def test_gluing_choice_b_zero(self):
        # beta_{xy} = beta_{yx} = 0 on the wheel gives b = 0
        g = wheel_graph()
        dec = make_decoration(
            g, {"x": 3, "y": -3, "z": 2},
            {("x", "y"): 0, ("y", "x"): 0, ("z", "x"): 0},
        )
        c = OrientedCycle((("x", "y"),))
        assert cycle_b(g, dec, c) == Residue(0, 3)


class TestTrivialMods:
    def test_identity_mod(self):
        g, dec = wheel_decoration(3, 1)
        assert apply_trivial_mod(g, dec, TrivialMod("V", "W", 0)) == dec

    def test_inverse_pair(self):
        g, dec = wheel_decoration(5, 2)
        d2 = apply_trivial_mod(g, dec, TrivialMod("E", "z", 5))
        d3 = apply_trivial_mod(g, d2, TrivialMod("E", "z", -5))
        assert d3 == dec

    def test_wheel_loop_mod_preserves_invariants(self):
        g, dec = wheel_decoration(3, 2)
        d2 = apply_trivial_mod(g, dec, TrivialMod("I", ("x", "y"), 1))
        assert validate_decoration(g, d2) == []
        c = OrientedCycle((("x", "y"),))
        assert cycle_b(g, dec, c) == cycle_b(g, d2, c)
        assert gamma(g, dec, "W", "x", "y") == gamma(g, d2, "W", "x", "y")

    def test_bad_target(self):
        g, dec = wheel_decoration(3, 1)
        with pytest.raises(BadTarget):
            apply_trivial_mod(g, dec, TrivialMod("V", "nope", 1))
        with pytest.raises(BadTarget):
            apply_trivial_mod(g, dec, TrivialMod("E", "x", 1))  # x internal
        with pytest.raises(BadTarget):
            apply_trivial_mod(g, dec, TrivialMod("I", ("x", "z"), 1))


class TestTrivialModEquivalent:
    def test_genus_zero_always_equivalent(self):
        rng = random.Random(2)
        g = fig_a_graph()
        from conftest import random_alpha

        for _ in range(10):
            alpha = random_alpha(g, rng, 4)
            d1 = random_decoration(g, rng, 4, alpha=alpha)
            d2 = random_decoration(g, rng, 4, alpha=alpha)
            script = trivial_mod_equivalent(g, d1, d2)
            assert script is not None
            _, replayed = apply_script(g, d1, script)
            assert replayed == d2

    def test_wheel_b_classifies(self):
        g, d2 = wheel_decoration(3, 2)
        _, d0 = wheel_decoration(3, 0)
        assert trivial_mod_equivalent(g, d2, d0) is None

    def test_single_step_witness(self):
        g, dec = wheel_decoration(3, 1)
        d2 = apply_trivial_mod(g, dec, TrivialMod("V", "W", 7))
        script = trivial_mod_equivalent(g, dec, d2)
        assert script is not None
        _, replayed = apply_script(g, dec, script)
        assert replayed == d2

    def test_alpha_mismatch(self):
        g, d1 = wheel_decoration(3, 0)
        _, d2 = wheel_decoration(5, 0)
        with pytest.raises(AlphaMismatch):
            trivial_mod_equivalent(g, d1, d2)


class TestWeak:
    def test_odd_alpha_rejected(self):
        g, dec = wheel_decoration(3, 1)
        with pytest.raises(OddAlpha):
            weaken(g, dec)

    def test_wheel_weak_class(self):
        g, dec = wheel_decoration(4, 2)
        assert weak_class(g, dec) == (0,)
        _, dec1 = wheel_decoration(4, 1)
        assert weak_class(g, dec1) == (1,)


class TestCanonicalPlanar:
    def test_straight_tree_any_admissible_alpha(self):
        g = fig_a_graph()
        rot = {"A": ("x", "y", "u"), "B": ("v", "z", "w")}
        alpha = {"x": 2, "y": 0, "u": 0, "v": 0, "z": 0, "w": 2}
        dec = canonical_beta_planar(g, rot, alpha)
        assert validate_decoration(g, dec) == []
        # delta vanishes on the embedding's side pairing: succ(u)=x, pred(v)=w
        d = delta_edge(g, dec, ("u", "v"))
        assert d[("x", "w")] == Residue(0, 0)

    def test_triangle_face_cycle_zero(self):
        g = triangle_graph()
        rot = {
            "T1": ("r1", "p12", "p13"),
            "T2": ("r2", "p23", "p21"),
            "T3": ("r3", "p31", "p32"),
        }
        alpha = {
            "p12": 2, "p21": -2, "p23": 2, "p32": -2, "p31": 2, "p13": -2,
            "r1": 2, "r2": 2, "r3": 2,
        }
        dec = canonical_beta_planar(g, rot, alpha)
        assert validate_decoration(g, dec) == []
        face = OrientedCycle((("p12", "p21"), ("p23", "p32"), ("p31", "p13")))
        face.validate(g)
        assert cycle_b(g, dec, face).value % cycle_b(g, dec, face).modulus == 0
        assert cycle_b(g, dec, face) == Residue(0, 2)

    def test_condition_fails(self):
        g = fig_a_graph()
        rot = {"A": ("x", "y", "u"), "B": ("v", "z", "w")}
        # alpha_x = 1 vs alpha_w = 2 disagree mod alpha_u = 2
        alpha = {"x": 1, "y": -1, "u": 2, "v": -2, "z": 2, "w": 2}
        with pytest.raises(ConditionFails):
            canonical_beta_planar(g, rot, alpha)

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from exkup.bracket import assemble, bracket, colored_state_sum, kuperberg
from exkup.double import drinfeld_double
from exkup.errors import AlgebraMismatch, IncompleteColoring, LinkPresent
from exkup.groups import cyclic
from exkup.heegaard import (
    Crossing,
    Curve,
    HeegaardLinkDiagram,
    PlanarLinkPresentation,
    from_planar_link,
    lens_space_diagram,
    reverse,
    s1xs2_diagram,
    s3_diagram,
    stabilize,
    surgery_all,
)
from exkup.hopf import build_group_algebra, solve_integrals
from exkup.linalg import Mat
from exkup.reps import abelian_double_irreps, group_characters, make_regular_rep, trivial_rep
from exkup.scalars import PrimeField
from exkup.tensor import contract_scalar

from conftest import FLEET, double_of, group, group_algebra, integrals
from oracles import count_pth_roots, hopf_link_table_oracle, presentation_hom_count, wirtinger_surgery_count


def planar(strands, word, framings):
    return PlanarLinkPresentation(strands, tuple(word), tuple(framings))


def kup(E, name):
    return kuperberg(E, group_algebra(name), integrals(name))


def regular(name):
    return make_regular_rep(double_of(name), integrals(name))


# ----------------------------------------------------------------------
# closed manifolds


def test_s3_value():
    assert kup(s3_diagram(), "Z2") == 1
    assert kup(s3_diagram(), "S3") == 1


def test_s1xs2_value():
    assert kup(s1xs2_diagram(), "Z3") == 3
    assert contract_scalar(assemble(s1xs2_diagram(), group_algebra("Z3"), integrals("Z3"))) == 3


@pytest.mark.parametrize("name", list(FLEET))
@pytest.mark.parametrize("p", range(0, 8))
def test_lens_spaces_against_root_count(name, p):
    E = lens_space_diagram(p)
    G = group(name)
    expected = count_pth_roots(G, p)
    assert presentation_hom_count(E.to_json(), G) == expected
    assert kup(E, name) == expected


def test_frozen_lens_values():
    assert kup(lens_space_diagram(4), "Z4") == 4
    assert kup(lens_space_diagram(3), "Z2") == 1
    assert kup(lens_space_diagram(2), "S3") == 4


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_stabilized_diagram_same_value(name):
    E = lens_space_diagram(2)
    assert kup(stabilize(stabilize(E)[0])[0], name) == kup(E, name)


@st.composite
def random_diagrams(draw):
    """Arbitrary link-free combinatorial diagrams (realizability is irrelevant for the identity tested)."""
    g = draw(st.integers(1, 2))
    n = draw(st.integers(0, 6))
    owners = [(draw(st.integers(0, g - 1)), draw(st.integers(0, g - 1))) for _ in range(n)]
    signs = [draw(st.sampled_from([1, -1])) for _ in range(n)]
    ids = [f"x{k}" for k in range(n)]
    alpha = [[c for c, (a, _) in zip(ids, owners) if a == i] for i in range(g)]
    beta = [[c for c, (_, b) in zip(ids, owners) if b == i] for i in range(g)]
    alpha = [draw(st.permutations(s)) for s in alpha]
    beta = [draw(st.permutations(s)) for s in beta]
    return HeegaardLinkDiagram(
        g,
        tuple(Curve(f"a{i}", tuple(s)) for i, s in enumerate(alpha)),
        tuple(Curve(f"b{i}", tuple(s)) for i, s in enumerate(beta)),
        (),
        {c: Crossing(c, "ab", s) for c, s in zip(ids, signs)},
    )


@settings(max_examples=60)
@given(random_diagrams(), st.sampled_from(["Z2", "Z3", "S3"]))
def test_group_algebra_kuperberg_counts_presentation_solutions(E, name):
    E.validate()
    assert kup(E, name) == presentation_hom_count(E.to_json(), group(name))


# ----------------------------------------------------------------------
# link diagrams


def test_unknot_regular_rep():
    E = from_planar_link(planar(1, [], [0]))
    assert bracket(E, group_algebra("Z2"), regular("Z2"), integrals("Z2")) == 2


def test_zero_crossing_component_is_trace_of_identity():
    E = from_planar_link(planar(1, [], [0]))
    H = group_algebra("S3")
    rep = regular("S3")
    assert bracket(E, H, rep, integrals("S3")) == rep.trace(Mat.identity(rep.dimV)) * kup(s3_diagram(), "S3")


def test_coloring_errors():
    E = from_planar_link(planar(2, [1, 1], [0, 0]))
    with pytest.raises(IncompleteColoring):
        bracket(E, group_algebra("Z2"), {"L0": regular("Z2")}, integrals("Z2"))
    with pytest.raises(AlgebraMismatch):
        bracket(E, group_algebra("Z3"), regular("Z2"), integrals("Z3"))
    with pytest.raises(LinkPresent):
        kuperberg(E, group_algebra("Z2"), integrals("Z2"))


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_reversing_a_link_component(name):
    E = from_planar_link(planar(2, [1, 1, 1], [0]))
    H, ip, rep = group_algebra(name), integrals(name), regular(name)
    assert bracket(reverse(E, "L0"), H, rep, ip) == bracket(E, H, rep, ip)


LINKS = [
    planar(1, [], [0]),
    planar(1, [], [1]),
    planar(1, [], [-1]),
    planar(1, [], [2]),
    planar(2, [], [0, 1]),
    planar(2, [1, 1], [0, 0]),
    planar(2, [1, 1], [1, -1]),
    planar(2, [-1, -1], [0, 2]),
    planar(2, [1, 1, 1], [1]),
    planar(2, [1, 1, 1], [0]),
    planar(3, [1, -2], [1]),
    planar(3, [1, 1, 2], [0, 1]),
]


@pytest.mark.parametrize("P", LINKS, ids=lambda P: f"{P.strands}:{P.word}:{P.framings}")
@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_regular_bracket_equals_surgery_kuperberg(P, name):
    """Three independent routes: the bracket, Kuperberg of the surgery, and a Wirtinger count."""
    H, ip = group_algebra(name), integrals(name)
    E = from_planar_link(P)
    lhs = bracket(E, H, regular(name), ip)
    rhs = kuperberg(surgery_all(E), H, ip)
    oracle = wirtinger_surgery_count(P.strands, P.word, P.framings, group(name))
    assert lhs == rhs == oracle


@pytest.mark.parametrize("P", [planar(1, [], [0]), planar(1, [], [1]), planar(2, [1, 1], [0, 0])])
def test_regular_bracket_equals_surgery_kuperberg_s3(P):
    H, ip = group_algebra("S3"), integrals("S3")
    E = from_planar_link(P)
    lhs = bracket(E, H, regular("S3"), ip)
    assert lhs == kuperberg(surgery_all(E), H, ip) == wirtinger_surgery_count(P.strands, P.word, P.framings, group("S3"))


# ----------------------------------------------------------------------
# colored state sums


def _gf7_z3():
    H = build_group_algebra(cyclic(3), PrimeField(7))
    ip = solve_integrals(H)
    return H, ip, abelian_double_irreps(cyclic(3), H)


def test_unknot_colored_by_each_z3_irrep():
    H, ip, reps = _gf7_z3()
    E = from_planar_link(planar(1, [], [0]))
    for rep in reps:
        assert bracket(E, H, rep, ip) == 1


def test_unknot_colored_by_each_z2_irrep():
    H, ip = group_algebra("Z2"), integrals("Z2")
    E = from_planar_link(planar(1, [], [0]))
    for rep in abelian_double_irreps(group("Z2"), H):
        assert bracket(E, H, rep, ip) == 1


def test_hopf_link_table_matches_double_braiding_oracle():
    G = group("Z2")
    H, ip = group_algebra("Z2"), integrals("Z2")
    chars = group_characters(G, H.field)
    reps = abelian_double_irreps(G, H)
    table = hopf_link_table_oracle(G, chars)
    E = from_planar_link(planar(2, [1, 1], [0, 0]))
    state = colored_state_sum(E, H, reps, ip)
    k = len(chars)
    for (i, j), val in state.terms.items():
        a, ka = divmod(i, k)
        b, kb = divmod(j, k)
        assert val == table[(a, ka, b, kb)]
        assert val in (1, -1)
    assert state.total == sum(table.values())


@pytest.mark.parametrize("sign", [1, -1])
def test_hopf_link_table_over_gf7(sign):
    """A positive crossing carries the inverse braiding, a negative one the braiding.

    Over Z/3 the characters are not real, so this fixes the chirality convention.
    """
    G = cyclic(3)
    H, ip, reps = _gf7_z3()
    chars = group_characters(G, H.field)
    table = hopf_link_table_oracle(G, chars, inverse=sign > 0)
    E = from_planar_link(planar(2, [sign, sign], [0, 0]))
    for (i, j) in itertools.product(range(9), repeat=2):
        a, ka = divmod(i, 3)
        b, kb = divmod(j, 3)
        assert bracket(E, H, {"L0": reps[i], "L1": reps[j]}, ip) == table[(a, ka, b, kb)]


def test_empty_link_state_sum_is_bracket():
    H, ip = group_algebra("Z3"), integrals("Z3")
    state = colored_state_sum(lens_space_diagram(3), H, [trivial_rep(H)], ip)
    assert state.total == kup(lens_space_diagram(3), "Z3") == 3
    assert list(state.terms) == [()]

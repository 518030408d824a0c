from fractions import Fraction

import pytest

from oracles import is_proper, max_same_color_degree
from trycolor.errors import ParameterError
from trycolor.graph import Coloring, Graph, generate, greedy_input_coloring
from trycolor.palette import (
    chop_to_deltaplus1, corollary_params, eps_defect, epsilon_coloring, greedy_to_target,
    linial_fixed_point, root_ceil, run_corollary,
)


def identity(n):
    return Coloring(n, tuple(range(n)))


def spread(g, m):
    """A proper coloring of g with palette m, colors spread over the whole range."""
    base = greedy_input_coloring(g)
    step = m // base.palette_size
    return Coloring(m, tuple(c * step for c in base.colors))


@pytest.fixture(scope="module")
def g8():
    return generate("random_bounded_degree", 200, 8, 11)


def test_part1_single_iteration(g8):
    r = run_corollary(g8, spread(g8, 8**4), 1)
    assert r.passed and r.info["iterations"] == 1
    assert r.palette <= 256 * 64
    assert is_proper(g8, r.coloring.colors)


def test_part5_defect():
    g = generate("random_bounded_degree", 300, 16, 2)
    r = run_corollary(g, identity(300), 5, d=3)
    assert r.passed and r.info["iterations"] == 1
    assert max_same_color_degree(g, r.coloring.colors) <= 3


def test_part4_outdegree():
    g = generate("random_bounded_degree", 300, 16, 3)
    r = run_corollary(g, identity(300), 4, d=4)
    assert r.passed and r.info["k"] == 1
    assert r.palette <= r.info["q"]
    assert max(r.orientation.outdegrees(g.n)) <= 4


def test_part6_pairs_are_proper_inside_classes():
    g = generate("random_bounded_degree", 200, 12, 4)
    r = run_corollary(g, identity(200), 6, d=2)
    assert r.passed
    assert max_same_color_degree(g, r.coloring.colors) <= 2


@pytest.mark.parametrize("part", [2, 3])
def test_parts_2_3_palette(g8, part):
    r = run_corollary(g8, spread(g8, 4096), part, k=2)
    assert r.passed and r.palette <= r.info["palette_bound"]


def test_corollary_guards():
    with pytest.raises(ParameterError):
        corollary_params(1, 17**4, 16)
    with pytest.raises(ParameterError):
        corollary_params(2, 100, 16)
    with pytest.raises(ParameterError):
        corollary_params(5, 100, 6, d=3)
    with pytest.raises(ParameterError):
        corollary_params(7, 100, 16)
    assert corollary_params(3, 100, 40).k == 3


def test_linial_identity_large():
    g = generate("random_bounded_degree", 10_000, 8, 7)
    r = linial_fixed_point(g, identity(10_000))
    assert r.passed and r.palette <= 256 * 64
    assert r.info["outer_iterations"] <= 5


def test_linial_ring_already_small():
    g = generate("ring", 64, 2)
    r = linial_fixed_point(g, identity(64))
    assert r.info["outer_iterations"] == 0 and r.passed


def test_greedy_star():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)], 3)
    r = greedy_to_target(g, Coloring(5, (4, 0, 1, 2)), 4)
    assert r.coloring.colors == (3, 0, 1, 2)
    assert r.rounds_used == 1


def test_greedy_identity_case(g8):
    psi = greedy_input_coloring(g8)
    psi = Coloring(9, psi.colors)
    r = greedy_to_target(g8, psi, 9)
    assert r.rounds_used == 0 and r.coloring.colors == psi.colors


def test_greedy_after_part2(g8):
    a = run_corollary(g8, spread(g8, 4096), 2, k=2)
    r = greedy_to_target(g8, a.coloring, 9)
    assert r.passed and r.palette == 9
    # the schedule has palette-9 slots; the run stops after the last class present
    assert r.rounds_used <= a.palette - 9
    assert r.rounds_used == a.palette - min(c for c in a.coloring.colors if c >= 9)


def test_greedy_target_too_small(g8):
    with pytest.raises(ParameterError):
        greedy_to_target(g8, greedy_input_coloring(g8), 8)


@pytest.mark.parametrize("delta,expo,want", [(16, Fraction(1, 2), 4), (10, Fraction(1, 2), 4),
                                              (8, Fraction(2, 3), 4), (9, Fraction(1, 3), 3)])
def test_root_ceil(delta, expo, want):
    assert root_ceil(delta, expo) == want


def test_eps_guard():
    assert eps_defect(16, Fraction(1, 2)) == 4
    assert eps_defect(25, Fraction(1, 2)) == 5
    with pytest.raises(ParameterError):
        eps_defect(16, Fraction(1, 10))
    with pytest.raises(ParameterError):
        eps_defect(16, Fraction(1))


def test_epsilon_delta16():
    g = generate("random_bounded_degree", 500, 16, 5)
    r = epsilon_coloring(g, identity(500), Fraction(1, 2))
    assert r.passed and is_proper(g, r.coloring.colors)
    assert r.info["d"] == 4


def test_epsilon_delta25_stage_a_defect():
    g = generate("random_bounded_degree", 400, 25, 6)
    r = epsilon_coloring(g, identity(400), Fraction(1, 2))
    assert r.checks["defect"].passed and r.checks["proper"].passed
    assert r.info["d"] == 5


def test_chop_two_phases():
    g = generate("random_bounded_degree", 300, 8, 8)
    r = chop_to_deltaplus1(g, spread(g, 36), 1)
    assert r.info["phases"] == 2 and r.palette == 9 and r.passed


def test_chop_nothing_to_do():
    g = generate("ring", 30, 2)
    r = chop_to_deltaplus1(g, Coloring(3, greedy_input_coloring(g).colors), 1)
    assert r.info["phases"] == 0 and r.rounds_used == 0


def test_chop_from_part1_palette(g8):
    a = run_corollary(g8, spread(g8, 8**4), 1)
    r = chop_to_deltaplus1(g8, a.coloring, 1)
    assert r.passed and r.palette == 9
    assert is_proper(g8, r.coloring.colors)

from fractions import Fraction

import pytest

from dualdepth.arrangement import build_arrangement
from dualdepth.family import check_pik, surrounds
from dualdepth.generators import (
    HERONIAN_TRIANGLES, GenerationError, gen_concurrent_lines, gen_heronian_triangle,
    gen_lines_general_position, gen_pi_d_family, gen_planted_violation, gen_random_pik,
    gen_rectangle_instance, gen_simplex_facet_bodies, gen_slab_instance, incenter, random_affine,
    rational_sqrt,
)
from dualdepth.io import serialize_family
from dualdepth.linalg import det

F = Fraction


def test_general_position_lines():
    fam = gen_lines_general_position(3)
    assert check_pik(fam, 2) and not check_pik(fam, 3)
    assert len(build_arrangement(gen_lines_general_position(4, seed=9))) == 6 + 16 + 11


def test_concurrent_lines():
    fam = gen_concurrent_lines(5, (0, 0))
    assert check_pik(fam, 5)
    assert gen_concurrent_lines(4, (1, 2, 3)).dimension == 3


def test_thickened_simplex_facets():
    fam = gen_simplex_facet_bodies(2, F(1, 10))
    assert len(fam) == 3 and check_pik(fam, 2) and not check_pik(fam, 3)
    assert surrounds(range(3), incenter(HERONIAN_TRIANGLES[0]), build_arrangement(fam))
    fam3 = gen_simplex_facet_bodies(3, F(1, 20))
    assert len(fam3) == 4 and check_pik(fam3, 3) and not check_pik(fam3, 4)
    assert check_pik(gen_simplex_facet_bodies(2, F(1, 2)), 3)


def test_incenters_are_rational():
    assert incenter(HERONIAN_TRIANGLES[0]) == (1, 1)
    assert incenter(HERONIAN_TRIANGLES[1]) == (6, 4)
    for seed in range(10):
        tri = gen_heronian_triangle(seed)
        incenter(tri)
    with pytest.raises(ValueError):
        rational_sqrt(F(2))


def test_random_pik_and_cap():
    fam = gen_random_pik(5, 2, 3, seed=1)
    assert check_pik(fam, 3)
    with pytest.raises(GenerationError):
        # ten bodies all meeting pairwise is possible, but never all 10 at once with these odds
        gen_random_pik(10, 2, 10, seed=0)


def test_planted_violation_is_the_only_one():
    for seed in range(5):
        fam, planted = gen_planted_violation(6, seed)
        v = check_pik(fam, 3)
        assert not v and v.violating == planted


def test_generators_are_seed_deterministic():
    assert serialize_family(gen_pi_d_family(11)) == serialize_family(gen_pi_d_family(11))
    assert gen_slab_instance(3) == gen_slab_instance(3)
    assert gen_rectangle_instance(5) == gen_rectangle_instance(5)
    assert random_affine(2, 4) == random_affine(2, 4)


def test_mix_and_affine_properties():
    for seed in range(15):
        fam = gen_pi_d_family(seed)
        assert 3 <= len(fam) <= 7 and check_pik(fam, 2)
        assert det(random_affine(2, seed).matrix) != 0

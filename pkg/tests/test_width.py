from fractions import Fraction

import pytest

from polywidth.errors import EmptyModuliError, NonGenericError
from polywidth.harness import sample_many
from polywidth.lengths import LengthVector, apply_permutation, sort_with_permutation
from polywidth.bending import (
    caterpillar_polytope,
    reshuffle_recipe,
    triple_pairs_polytope_6,
)
from polywidth.polytopes import HalfSpace, HPolytope, normal_fan
from polywidth.width import (
    brute_force_cross_size,
    facet_containment_upper_bound,
    gromov_width_report,
    hexagon_cross_witness,
    max_axis_cross,
    pentagon_cross_witness,
    projective_width,
    relation_bound,
    replay_crossfit,
    replay_facet_witness,
    replay_relation,
    replay_upper_bound,
    upper_bound_via_fano_or_blowup,
    verify_projective_normal_form,
)

F = Fraction


def square(s):
    return HPolytope(
        2,
        [
            HalfSpace((1, 0), F(0)),
            HalfSpace((0, 1), F(0)),
            HalfSpace((-1, 0), -F(s)),
            HalfSpace((0, -1), -F(s)),
        ],
    )


def simplex2(a):
    return HPolytope(
        2,
        [
            HalfSpace((1, 0), F(0)),
            HalfSpace((0, 1), F(0)),
            HalfSpace((-1, -1), -F(a)),
        ],
    )


def test_cross_on_square_is_side():
    for s in (F(1), F(7, 3), F(12)):
        fit = max_axis_cross(square(s))
        assert fit.size == s
        replay_crossfit(square(s), fit)


def test_cross_on_simplex_is_size():
    # grid oracle first: refinement approaches the simplex size from below
    a = F(5, 2)
    P = simplex2(a)
    oracle_values = [brute_force_cross_size(P, d) for d in (1, 2, 4, 8)]
    assert all(x <= y for x, y in zip(oracle_values, oracle_values[1:]))
    assert oracle_values[-1] <= a
    fit = max_axis_cross(P)
    assert fit.size == a


def test_grid_oracle_never_beats_lp():
    shapes = [square(F(3, 2)), simplex2(F(2))]
    image = caterpillar_polytope(LengthVector([1, 2, 3, 4, 7]))
    shapes.append(image.polytope)
    for P in shapes:
        fit = max_axis_cross(P)
        for denominator in (1, 2, 4, 8, 16, 64):
            if denominator > 16 and P is shapes[-1]:
                continue  # the moment image has a wide box; keep the grid small
            assert brute_force_cross_size(P, denominator) <= fit.size


def test_grid_oracle_denominator_64_on_scaled_image():
    # shrinking the lengths shrinks the moment polytope linearly, so a
    # 64ths grid fully resolves the optimum of this eighth-size instance
    r = LengthVector([F(1, 8), F(2, 8), F(3, 8), F(4, 8), F(7, 8)])
    P = caterpillar_polytope(r).polytope
    fit = max_axis_cross(P)
    assert fit.size == F(1, 4)  # 2 * r1
    oracle = brute_force_cross_size(P, 64)
    assert oracle <= fit.size
    assert oracle == fit.size  # the optimal center lies on the grid


def test_cross_rejects_degenerate():
    with pytest.raises(ValueError):
        max_axis_cross(
            HPolytope(
                2,
                [
                    HalfSpace((1, 0), F(0)),
                    HalfSpace((-1, 0), F(0)),
                    HalfSpace((0, 1), F(0)),
                    HalfSpace((0, -1), F(-1)),
                ],
            )
        )


def test_cross_on_c2_image_reaches_guarantee():
    image = caterpillar_polytope(LengthVector([1, 2, 3, 4, 7]))
    fit = max_axis_cross(image.polytope)
    assert fit.size >= 2


def test_pentagon_witness_branches():
    w = pentagon_cross_witness(LengthVector([2, 3, 3, 4, 5]))
    assert min(w.arm_lengths) >= 4
    # middle edge at least the first two: the witness pins d1 at their sum
    w = pentagon_cross_witness(LengthVector([1, 2, 5, 6, 7]))
    assert w.point[0] == 3
    assert min(w.arm_lengths) >= 2
    with pytest.raises(ValueError):
        pentagon_cross_witness(LengthVector([1, 1, 1, 1, 3]))  # projective


def test_hexagon_witness():
    w = hexagon_cross_witness(LengthVector([1, 2, 3, 4, 5, 6]))
    assert min(w.arm_lengths) >= 2
    w = hexagon_cross_witness(LengthVector([3, 3, 3, 5, 5, 5]))
    assert min(w.arm_lengths) >= 6
    with pytest.raises(ValueError):
        hexagon_cross_witness(LengthVector([1, 1, 1, 1, 1, 4]))


def test_witness_samples():
    def nonprojective5(r):
        rs, _ = sort_with_permutation(r)
        from polywidth.lengths import is_short

        return is_short(rs, {1, 5})

    for r in sample_many(5, seed=311, count=50, predicate=nonprojective5):
        rs, _ = sort_with_permutation(r)
        w = pentagon_cross_witness(rs)
        assert min(w.arm_lengths) >= 2 * rs.entry(1)


def test_relation_bound_c2_data(oracles):
    image = caterpillar_polytope(LengthVector([1, 2, 3, 4, 7]))
    P = image.polytope
    fan = normal_fan(P)
    offsets = {h.normal: h.offset for h in P.halfspaces}
    rays = fan.rays
    values = [offsets[u] for u in rays]
    cert = relation_bound(rays, values, cap=4)
    assert cert is not None
    assert cert.value == 2  # the opposite horizontal pair
    assert cert.value == oracles.relation(rays, values, 4)
    replay_relation(cert)
    # the three-ray relation is the competing candidate with value gamma
    idx = {u: i for i, u in enumerate(rays)}
    gamma_coeffs = [0] * len(rays)
    for u in ((0, 1), (1, -1), (-1, 0)):
        gamma_coeffs[idx[u]] = 1
    gamma_value = -sum(v * a for v, a in zip(values, gamma_coeffs))
    assert gamma_value == 3  # perimeter slack of (1,2,3,4,7)
    assert cert.value < gamma_value


def test_relation_bound_square_fan(oracles):
    rays = ((1, 0), (0, 1), (-1, 0), (0, -1))
    offsets = [F(0), F(0), F(-7, 3), F(-9)]
    cert = relation_bound(rays, offsets, cap=6)
    assert cert.value == F(7, 3)
    assert cert.value == oracles.relation(rays, offsets, 6)
    assert not cert.at_cap


def test_relation_bound_none_and_cap_flag():
    rays = ((1, 0), (0, 1))  # incomplete: no relation exists
    assert relation_bound(rays, [F(-1), F(-1)], cap=5) is None
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cert = relation_bound(rays, [F(-1)] * 4, cap=2)
    assert cert is not None and cert.at_cap


def test_upper_bound_fano_route():
    image = caterpillar_polytope(LengthVector([1, 2, 3, 4, 7]))
    cert = upper_bound_via_fano_or_blowup(image, cap=7)
    assert cert is not None
    assert cert.kind == "fano"
    assert cert.value == 2
    replay_upper_bound(cert)


def test_upper_bound_blowup_route_pentagon():
    image = caterpillar_polytope(LengthVector([3, 4, 5, 5, 6]))
    cert = upper_bound_via_fano_or_blowup(image, cap=7)
    assert cert is not None
    assert cert.kind == "blowup"
    assert cert.value == 6
    # ties in value resolve toward the fewest deletions: the coarse fan is
    # the twice-blown-up product fan, one stellar step below the image fan
    assert len(cert.steps) == 1
    assert set(cert.coarse_fan.rays) >= {(1, 0), (0, 1), (-1, 0), (0, -1)}
    replay_upper_bound(cert)


def test_upper_bound_blowup_route_hexagon_condition_c():
    rs = LengthVector([3, 3, 3, 5, 5, 5])
    sigma = apply_permutation(rs, reshuffle_recipe(6, "C"))
    image = triple_pairs_polytope_6(sigma)
    cert = upper_bound_via_fano_or_blowup(image, cap=8)
    assert cert is not None
    assert cert.kind == "blowup"
    assert cert.value == 6
    assert len(cert.steps) == 3
    assert set(cert.coarse_fan.rays) == {
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
    }
    replay_upper_bound(cert)


def test_upper_bound_condition_b_value():
    rs = LengthVector([1, 2, 2, 3, 4, 7])
    sigma = apply_permutation(rs, reshuffle_recipe(6, "B"))
    image = triple_pairs_polytope_6(sigma)
    cert = upper_bound_via_fano_or_blowup(image, cap=8)
    assert cert is not None
    assert cert.value == 2
    replay_upper_bound(cert)


def test_facet_containment():
    witness = facet_containment_upper_bound(LengthVector([1, 2, 3, 4, 5, 6]))
    assert witness is not None
    assert witness.short_edge == 2
    assert witness.reshuffled == LengthVector([1, 6, 2, 5, 3, 4])
    assert all(all(m) for _, m in witness.vertex_memberships)
    replay_facet_witness(witness)
    assert facet_containment_upper_bound(LengthVector([1, 2, 2, 3, 4, 7])) is None
    with pytest.raises(ValueError):
        facet_containment_upper_bound(LengthVector([1, 1, 1, 1, 1, 4]))


def test_projective_normal_form_all_arities():
    for entries in ([1, 1, 1, 2], [1, 1, 1, 1, 3], [1, 1, 1, 1, 1, 4], [1, 1, 1, 1, 1, 1, 5]):
        assert verify_projective_normal_form(LengthVector(entries))


def test_projective_width_reports():
    report = projective_width(LengthVector([1, 1, 1, 2]))
    assert report.exact == 1
    report = projective_width(LengthVector([1, 1, 1, 1, 3]))
    assert report.exact == 1
    assert report.certificates["projective"].simplex_map_verified
    report = projective_width(LengthVector([1, 1, 1, 1, 1, 4]))
    assert report.exact == 1
    with pytest.raises(ValueError):
        projective_width(LengthVector([1, 2, 3, 4, 7]))


@pytest.mark.parametrize(
    "entries,exact,provenance_part",
    [
        ([1, 2, 3, 4, 7], 2, "C2"),
        ([1, 2, 5, 6, 7], 2, "C3"),
        ([2, 3, 4, 6, 8], 4, "C4"),
        ([2, 3, 3, 4, 5], 4, "C5"),
        ([3, 4, 5, 5, 6], 6, "C6"),
        ([1, 2, 3, 4, 5, 6], 2, "condition A"),
        ([1, 2, 2, 3, 4, 7], 2, "condition B"),
        ([3, 3, 3, 5, 5, 5], 6, "condition C"),
    ],
)
def test_report_exact_cases(entries, exact, provenance_part):
    report = gromov_width_report(LengthVector(entries))
    assert report.exact == exact
    assert provenance_part in report.provenance


def test_report_uncovered_hexagon():
    report = gromov_width_report(LengthVector([2, 2, 2, 2, 2, 5]))
    assert report.lower == 4
    assert report.upper is None and report.exact is None
    assert "lower bound only" in report.provenance


def test_report_handles_input_permutation():
    report = gromov_width_report(LengthVector([7, 3, 1, 4, 2]))
    assert report.exact == 2
    assert report.sorted_r == LengthVector([1, 2, 3, 4, 7])


def test_report_perturbed_pentagon():
    report = gromov_width_report(LengthVector([2, 2, 2, 2, 3]))
    assert report.exact == 4
    assert any("perturbed" in note for note in report.notes)


def test_report_rejects_bad_input():
    with pytest.raises(NonGenericError):
        gromov_width_report(LengthVector([1, 1, 1, 1]))
    with pytest.raises(EmptyModuliError):
        gromov_width_report(LengthVector([1, 1, 1, 1, 5]))


def test_report_json_shape():
    report = gromov_width_report(LengthVector([1, 2, 3, 4, 7]))
    data = report.to_json()
    assert data["schema"] == "polywidth/1"
    assert data["units"] == "2pi"
    assert data["exact"] == "2"
    assert data["certificates"]["upper"]["kind"] == "fano"
    assert data["lower"] == data["upper"] == data["conjectured"]


def test_experimental_shears_never_folds():
    report = gromov_width_report(LengthVector([2, 2, 2, 2, 2, 5]), experimental_shears=True)
    extra = report.certificates["experimental_shears"]
    assert "best_cross_size" in extra
    assert report.upper is None  # still uncertified

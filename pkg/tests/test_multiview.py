"""Cameras, multifocal tensors, residuals and the randomized oracles."""

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from multichow import (
    CameraConfiguration,
    LinearSpaceTuple,
    MultifocalTensor,
    chow_residual,
    epsilon_oracle,
    intersection_count_oracle,
    multifocal_tensor,
    multiview_multidegree,
    project_point,
    sz_membership,
    tensor_contract,
)
from multichow import linalg
from multichow.errors import DegenerateInputError, PreconditionError
from multichow.multiview import (
    contraction_coordinates,
    forms_through,
    has_world_point_preimage,
    majority_count,
    random_cameras,
    random_independent_forms,
    trial_rng,
)

from helpers import IDENTITY_CAMERA, translated_camera


def pair_config():
    return CameraConfiguration((IDENTITY_CAMERA, translated_camera((1, 0, 0))))


def projected_tuple(config, world, rng, beta):
    """Spaces of codimension beta_i through the images of a world point."""
    images = [project_point(cam, world) for cam in config.cameras]
    return LinearSpaceTuple(
        tuple(forms_through(rng, img, b) for img, b in zip(images, beta))
    )


def random_world_point(config, rng):
    while True:
        q = tuple(Fraction(rng.randint(-10, 10)) for _ in range(4))
        if not linalg.is_zero_vector(q) and all(
            not linalg.is_zero_vector(linalg.mat_vec(cam, q))
            for cam in config.cameras
        ):
            return q


class TestCameras:
    def test_rank_deficient_camera_rejected(self):
        rows = ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0))
        with pytest.raises(PreconditionError):
            CameraConfiguration((rows,))

    def test_center_of_identity_camera(self):
        config = CameraConfiguration((IDENTITY_CAMERA,))
        assert linalg.proportional(config.center(1), (0, 0, 0, 1))

    def test_duplicate_cameras_not_generic(self):
        config = CameraConfiguration((IDENTITY_CAMERA, IDENTITY_CAMERA))
        assert not config.is_generic()

    def test_seeded_configs_are_generic_and_reproducible(self):
        a = random_cameras(4, 5)
        b = random_cameras(4, 5)
        assert a == b
        assert a.is_generic()

    def test_json_round_trip(self):
        config = random_cameras(3, 1)
        assert CameraConfiguration.from_json(config.to_json()) == config


class TestProjectPoint:
    def test_identity_block(self):
        assert project_point(IDENTITY_CAMERA, (1, 2, 3, 1)) == (1, 2, 3)

    def test_center_is_undefined(self):
        with pytest.raises(DegenerateInputError):
            project_point(IDENTITY_CAMERA, (0, 0, 0, 1))

    def test_translated_camera(self):
        assert project_point(translated_camera((1, 0, 0)), (0, 0, 0, 1)) == (1, 0, 0)


class TestMultiviewMultidegree:
    def test_k2(self):
        md = multiview_multidegree(2)
        assert dict(md.coeffs) == {(1, 0): 1, (0, 1): 1}

    def test_k3_seven_monomials(self):
        md = multiview_multidegree(3)
        expected = {(1, 1, 1)} | set(permutations((0, 1, 2)))
        assert set(md.support()) == expected
        assert all(a == 1 for a in md.coeffs.values())

    def test_k4_full_degree_five_box(self):
        md = multiview_multidegree(4)
        expected = {
            g for g in product(range(3), repeat=4) if sum(g) == 5
        }
        assert set(md.support()) == expected
        assert all(a == 1 for a in md.coeffs.values())

    def test_single_camera_rejected(self):
        with pytest.raises(PreconditionError):
            multiview_multidegree(1)


class TestChowResidual:
    def test_vanishes_on_incident_tuples(self):
        config = random_cameras(3, 2)
        rng = trial_rng(2, 0)
        for _ in range(5):
            world = random_world_point(config, rng)
            spaces = projected_tuple(config, world, rng, (2, 1, 1))
            assert chow_residual(config, spaces) == 0

    def test_nonzero_off_the_locus(self):
        # First factor pinned to the point (0,1,0), second to a point away
        # from the matching epipolar locus.
        config = pair_config()
        spaces = LinearSpaceTuple(
            (((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (1, 0, -1)))
        )
        assert chow_residual(config, spaces) != 0

    def test_dependent_cutting_forms_rejected(self):
        with pytest.raises(PreconditionError):
            LinearSpaceTuple((((1, 0, 0), (2, 0, 0)), ((0, 1, 0), (0, 0, 1))))

    def test_wrong_row_count_rejected(self):
        config = random_cameras(3, 3)
        spaces = LinearSpaceTuple((((1, 0, 0),), ((0, 1, 0),), ((0, 0, 1),)))
        with pytest.raises(PreconditionError):
            chow_residual(config, spaces)

    def test_unsupported_camera_count_rejected(self):
        config = random_cameras(5, 4)
        spaces = LinearSpaceTuple(
            (((1, 0, 0),), ((0, 1, 0),), ((0, 0, 1),), ((1, 1, 0),), ())
        )
        with pytest.raises(PreconditionError):
            chow_residual(config, spaces)


class TestMultifocalTensor:
    def test_fundamental_matrix_of_translated_pair(self):
        tensor = multifocal_tensor(pair_config(), (2, 2))
        expected = {(2, 3): Fraction(-1), (3, 2): Fraction(1)}
        for index in product((1, 2, 3), repeat=2):
            assert tensor[index] == expected.get(index, 0)

    def test_fundamental_matrix_incidence(self):
        config = pair_config()
        tensor = multifocal_tensor(config, (2, 2))
        rng = random.Random(9)
        for _ in range(100):
            world = random_world_point(config, rng)
            coords = [project_point(cam, world) for cam in config.cameras]
            assert tensor_contract(tensor, coords) == 0

    def test_trifocal_tensor_nonzero(self):
        tensor = multifocal_tensor(random_cameras(3, 6), (2, 1, 1))
        assert not tensor.is_zero()

    def test_five_cameras_rejected(self):
        with pytest.raises(PreconditionError):
            multifocal_tensor(random_cameras(5, 7), (1, 1, 1, 1, 0))

    def test_zero_codimension_slot_rejected(self):
        with pytest.raises(PreconditionError):
            multifocal_tensor(random_cameras(3, 8), (2, 2, 0))

    def test_non_generic_config_warns(self):
        config = CameraConfiguration((IDENTITY_CAMERA, IDENTITY_CAMERA))
        with pytest.warns(UserWarning):
            multifocal_tensor(config, (2, 2))

    def test_json_round_trip_omits_zeros(self):
        tensor = multifocal_tensor(pair_config(), (2, 2))
        obj = tensor.to_json()
        assert len(obj["entries"]) == 2
        assert MultifocalTensor.from_json(obj).entries == tensor.entries


class TestTensorContract:
    def test_zero_slot_kills_contraction(self):
        tensor = multifocal_tensor(random_cameras(3, 10), (2, 1, 1))
        assert tensor_contract(tensor, [(0, 0, 0), (1, 2, 3), (4, 5, 6)]) == 0

    def test_scaling_one_slot(self):
        tensor = multifocal_tensor(random_cameras(3, 11), (1, 2, 1))
        coords = [(1, 2, 3), (4, 5, 6), (7, 8, 9)]
        base = tensor_contract(tensor, coords)
        scaled = tensor_contract(
            tensor, [coords[0], tuple(5 * x for x in coords[1]), coords[2]]
        )
        assert scaled == 5 * base

    def test_additive_in_each_slot(self):
        tensor = multifocal_tensor(random_cameras(2, 12), (2, 2))
        u, v, w = (1, 2, 3), (4, 5, 6), (7, 8, 9)
        lhs = tensor_contract(tensor, [tuple(a + b for a, b in zip(u, v)), w])
        rhs = tensor_contract(tensor, [u, w]) + tensor_contract(tensor, [v, w])
        assert lhs == rhs

    def test_dimension_mismatch_rejected(self):
        tensor = multifocal_tensor(pair_config(), (2, 2))
        with pytest.raises(PreconditionError):
            tensor_contract(tensor, [(1, 2, 3)])


def random_space_tuple(rng, beta):
    return LinearSpaceTuple(
        tuple(random_independent_forms(rng, b) for b in beta)
    )


class TestDeterminantIdentity:
    @pytest.mark.parametrize(
        "k,beta", [(2, (2, 2)), (3, (2, 1, 1)), (3, (1, 2, 1)), (4, (1, 1, 1, 1))]
    )
    def test_contract_equals_residual(self, k, beta):
        config = random_cameras(k, 13)
        tensor = multifocal_tensor(config, beta)
        rng = random.Random(f"identity:{k}:{beta}")
        for _ in range(20):
            spaces = random_space_tuple(rng, beta)
            assert tensor_contract(
                tensor, contraction_coordinates(spaces)
            ) == chow_residual(config, spaces)

    def test_projective_invariance_of_vanishing(self):
        # Re-coordinatizing world space must not change where the residual
        # vanishes.
        config = random_cameras(3, 14)
        rng = random.Random(15)
        h = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        assert linalg.det(h) != 0
        moved = CameraConfiguration(
            tuple(
                tuple(linalg.mat_vec(tuple(zip(*h)), row) for row in cam)
                for cam in config.cameras
            )
        )
        for trial in range(10):
            spaces = random_space_tuple(random.Random(trial), (2, 1, 1))
            before = chow_residual(config, spaces)
            after = chow_residual(moved, spaces)
            assert (before == 0) == (after == 0)
        world = random_world_point(config, rng)
        incident = projected_tuple(config, world, rng, (2, 1, 1))
        assert chow_residual(config, incident) == 0


class TestIntersectionOracle:
    def test_generic_k3_interior_gamma(self):
        config = random_cameras(3, 16)
        assert intersection_count_oracle(config, (1, 1, 1), 5, 0) == [1] * 5

    def test_generic_k3_boundary_gamma(self):
        config = random_cameras(3, 16)
        assert intersection_count_oracle(config, (0, 1, 2), 5, 0) == [1] * 5

    def test_repeated_camera_drops_gamma_from_support(self):
        cam = random_cameras(1, 17).cameras[0]
        other = random_cameras(3, 18).cameras[2]
        config = CameraConfiguration((cam, cam, other))
        counts = intersection_count_oracle(config, (0, 1, 2), 5, 0)
        assert majority_count(counts) == 0

    def test_gamma_validation(self):
        config = random_cameras(3, 16)
        with pytest.raises(PreconditionError):
            intersection_count_oracle(config, (1, 1, 0), 2, 0)
        with pytest.raises(PreconditionError):
            intersection_count_oracle(config, (3, 0, 0), 2, 0)

    def test_majority_count_requires_trials(self):
        with pytest.raises(PreconditionError):
            majority_count([])

    def test_same_seed_same_counts(self):
        config = random_cameras(2, 19)
        a = intersection_count_oracle(config, (1, 0), 4, 99)
        b = intersection_count_oracle(config, (1, 0), 4, 99)
        assert a == b


class TestEpsilonOracle:
    def test_determining_beta_gives_one(self):
        config = random_cameras(3, 20)
        assert epsilon_oracle(config, (2, 1, 1), 5, 0) == [1] * 5

    def test_two_cameras(self):
        config = random_cameras(2, 21)
        assert epsilon_oracle(config, (2, 2), 5, 0) == [1] * 5

    def test_degenerate_profile_reports_per_trial(self):
        counts = epsilon_oracle(random_cameras(3, 22), (2, 2, 0), 5, 0)
        assert len(counts) == 5
        assert all(c is None or c >= 0 for c in counts)

    def test_wrong_total_rejected(self):
        with pytest.raises(PreconditionError):
            epsilon_oracle(random_cameras(3, 22), (2, 2, 1), 2, 0)


class TestSzMembership:
    def test_image_points_are_members(self):
        config = random_cameras(3, 24)
        tensor = multifocal_tensor(config, (2, 1, 1))
        rng = random.Random(25)
        world = random_world_point(config, rng)
        candidate = [project_point(cam, world) for cam in config.cameras]
        assert has_world_point_preimage(config, candidate)
        assert sz_membership(config, tensor, candidate, 10, 0)

    def test_random_candidate_is_not_a_member(self):
        config = random_cameras(3, 24)
        tensor = multifocal_tensor(config, (2, 1, 1))
        candidate = [(1, 2, 3), (-4, 5, 1), (2, 2, 7)]
        assert not has_world_point_preimage(config, candidate)
        assert not sz_membership(config, tensor, candidate, 10, 0)

    def test_zero_coordinate_rejected(self):
        config = random_cameras(3, 24)
        tensor = multifocal_tensor(config, (2, 1, 1))
        with pytest.raises(PreconditionError):
            sz_membership(config, tensor, [(0, 0, 0), (1, 1, 1), (1, 1, 1)], 2, 0)

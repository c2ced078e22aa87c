import numpy as np
import pytest

from relucert.core.errors import InputError
from relucert.core.network import Activation, Box, Layer, Network, PhaseStatus
from relucert.domain.network import (
    classify, confidence, evaluate, evaluate_many, forward_trace, interval_evaluate, output_bounds,
    phase_of,
)
from tests.conftest import make_random_net
from tests.oracles import grid


class TestNetworkModel:
    def test_labels_default_to_output_indices(self, mirror_net):
        assert mirror_net.labels == (0, 1)
        assert mirror_net.input_dim == 1
        assert mirror_net.output_dim == 2
        assert mirror_net.relu_count == 0

    def test_column_count_must_chain(self):
        with pytest.raises(InputError):
            Network((Layer([[1.0, 2.0]], [0.0], Activation.RELU),
                     Layer([[1.0, 1.0]], [0.0], Activation.IDENTITY)), input_dim=2)

    def test_hidden_layers_must_be_relu(self):
        with pytest.raises(InputError):
            Network((Layer([[1.0]], [0.0], Activation.IDENTITY),
                     Layer([[1.0]], [0.0], Activation.IDENTITY)), input_dim=1)

    def test_bias_length_matches_rows(self):
        with pytest.raises(InputError):
            Layer([[1.0], [2.0]], [0.0])

    def test_rejects_non_finite_weights(self):
        with pytest.raises(InputError):
            Layer([[np.inf]], [0.0])

    def test_label_count_must_match_outputs(self):
        with pytest.raises(InputError):
            Network.from_weights([[[1.0], [-1.0]]], [[0.0, 0.0]], labels=['a'])

    def test_arrays_are_read_only(self, mirror_net):
        with pytest.raises(ValueError):
            mirror_net.layers[0].weights[0, 0] = 5.0


class TestBox:
    def test_rejects_inverted_bounds(self):
        with pytest.raises(InputError):
            Box([1.0], [0.0])

    def test_containment(self):
        outer = Box([-1.0], [1.0])
        assert outer.contains(Box([0.0], [0.5]))
        assert not outer.contains(Box([-2.0], [0.0]))

    def test_inflate_and_intersect(self):
        box = Box([0.0, 0.0], [0.5, 1.0]).inflate(0.25).intersect(Box([0.0, 0.0], [1.0, 1.0]))
        np.testing.assert_allclose(box.lower, [0.0, 0.0])
        np.testing.assert_allclose(box.upper, [0.75, 1.0])


class TestEvaluate:
    def test_identity_layer(self):
        net = Network.from_weights([[[1.0]]], [[0.0]])
        np.testing.assert_array_equal(evaluate(net, [7.0]), [7.0])

    def test_relu_zeroes_negative_pre_activations(self):
        net = Network.from_weights([np.eye(2), np.eye(2)], [[0.0, 0.0], [0.0, 0.0]])
        np.testing.assert_array_equal(evaluate(net, [-2.0, 3.0]), [0.0, 3.0])

    def test_mirror_net(self, mirror_net):
        np.testing.assert_array_equal(evaluate(mirror_net, [1.0]), [1.0, -1.0])

    def test_dimension_mismatch(self, mirror_net):
        with pytest.raises(InputError):
            evaluate(mirror_net, [1.0, 2.0])

    def test_non_finite_input(self, mirror_net):
        with pytest.raises(InputError):
            evaluate(mirror_net, [np.nan])

    def test_batch_matches_single(self, rng):
        net = make_random_net(rng, (3, 5, 4, 2))
        X = rng.uniform(-1, 1, (20, 3))
        expected = np.array([evaluate(net, x) for x in X])
        np.testing.assert_allclose(evaluate_many(net, X), expected)


class TestConfidenceAndClassify:
    def test_confidence_per_label(self, mirror_net):
        assert confidence(mirror_net, [1.0], 0) == 1.0
        assert confidence(mirror_net, [1.0], 1) == -1.0

    def test_confidences_equal_outputs(self, rng):
        net = make_random_net(rng, (2, 3, 3))
        x = [0.3, -0.2]
        assert [confidence(net, x, lab) for lab in net.labels] == list(evaluate(net, x))

    def test_unknown_label(self, mirror_net):
        with pytest.raises(InputError):
            confidence(mirror_net, [1.0], 'z')

    def test_strict_maximum(self, mirror_net):
        assert classify(mirror_net, [1.0]) == 0

    def test_tie_has_no_unique_label(self, mirror_net):
        assert classify(mirror_net, [0.0]) is None

    def test_three_outputs(self):
        net = Network.from_weights([np.zeros((3, 1))], [[0.2, 0.9, 0.1]])
        assert classify(net, [0.0]) == 1


class TestIntervalEvaluate:
    def test_identity_output_bounds(self):
        net = Network.from_weights([[[1.0]]], [[0.0]])
        bounds = output_bounds(net, Box([-1.0], [1.0]))
        np.testing.assert_array_equal(bounds.lower, [-1.0])
        np.testing.assert_array_equal(bounds.upper, [1.0])

    def test_relu_post_bounds(self, relu_net):
        hidden = interval_evaluate(relu_net, Box([-1.0], [2.0]))[0]
        np.testing.assert_array_equal(hidden.post_lower, [0.0])
        np.testing.assert_array_equal(hidden.post_upper, [2.0])

    def test_active_phase_from_bounds(self):
        net = Network.from_weights([[[1.0]], [[1.0]]], [[2.0], [0.0]])
        hidden = interval_evaluate(net, Box([0.0], [3.0]))[0]
        assert hidden.phases() == [PhaseStatus.ACTIVE]

    def test_soundness_against_grid(self, rng):
        for _ in range(10):
            net = make_random_net(rng, (2, 4, 3, 2))
            box = Box([-0.5, 0.0], [0.5, 1.0])
            bounds = output_bounds(net, box)
            values = evaluate_many(net, grid(box, 10))
            assert np.all(values >= bounds.lower - 1e-12)
            assert np.all(values <= bounds.upper + 1e-12)

    def test_every_node_is_sound(self, rng):
        for _ in range(10):
            net = make_random_net(rng, (2, 5, 4, 3))
            box = Box([-1.0, -0.5], [0.5, 1.0])
            bounds = interval_evaluate(net, box)
            for x in grid(box, 8):
                for (pre, post), layer in zip(forward_trace(net, x), bounds):
                    assert np.all(pre >= layer.pre_lower - 1e-12)
                    assert np.all(pre <= layer.pre_upper + 1e-12)
                    assert np.all(post >= layer.post_lower - 1e-12)
                    assert np.all(post <= layer.post_upper + 1e-12)

    def test_sub_box_gives_nested_intervals(self, rng):
        for _ in range(20):
            net = make_random_net(rng, (3, 6, 5, 2))
            outer = Box([-1.0, -1.0, -1.0], [1.0, 1.0, 1.0])
            corners = np.sort(rng.uniform(-1, 1, (2, 3)), axis=0)
            inner = Box(corners[0], corners[1])
            for small, big in zip(interval_evaluate(net, inner), interval_evaluate(net, outer)):
                assert np.all(small.pre_lower >= big.pre_lower - 1e-12)
                assert np.all(small.pre_upper <= big.pre_upper + 1e-12)
                assert np.all(small.post_lower >= big.post_lower - 1e-12)
                assert np.all(small.post_upper <= big.post_upper + 1e-12)


class TestPhaseOf:
    @pytest.mark.parametrize("lo, hi, phase", [
        (1.0, 3.0, PhaseStatus.ACTIVE),
        (-3.0, -1.0, PhaseStatus.INACTIVE),
        (-1.0, 1.0, PhaseStatus.UNDETERMINED),
        (0.0, 0.0, PhaseStatus.ACTIVE),
    ])
    def test_phase(self, lo, hi, phase):
        assert phase_of(lo, hi) == phase

    def test_inverted_interval(self):
        with pytest.raises(InputError):
            phase_of(1.0, 0.0)

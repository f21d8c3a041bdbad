"""Network loader, forward pass, and the movement-prediction contract."""
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_forward, naive_parse_weights
from pitchkit.predictor import (
    BadMagic,
    ConstantVelocityPredictor,
    DimensionMismatch,
    NetworkPredictor,
    NonNumericToken,
    TruncatedFile,
    WeightsParseError,
    forward,
    load_network,
    predict_opponent,
    to_actor_frame,
)
from pitchkit.world import BallState, ObservedPlayer, PlayerState, Vec2

ACTOR = PlayerState(side="ours", unum=9, pos=Vec2(0.0, 0.0), body=0.0)
BALL = BallState(pos=Vec2(0.3, 0.0), vel=Vec2(0.0, 0.0))


def blocker_at(pos, vel=Vec2(0.0, 0.0), body=180.0):
    return ObservedPlayer(
        base=PlayerState(side="theirs", unum=2, pos=pos, vel=vel, body=body)
    )


class TestLoadMinimal:
    def test_parses_single_relu_layer(self, minimal_weights_text):
        net = load_network(minimal_weights_text)
        assert net.in_dim == 1 and net.out_dim == 1
        layer = net.layers[0]
        assert layer.activation == "relu"
        assert layer.weights[0, 0] == 2.0 and layer.bias[0] == 1.0

    def test_forward_values(self, minimal_weights_text):
        net = load_network(minimal_weights_text)
        assert forward(net, [3.0]) == pytest.approx([7.0])
        assert forward(net, [-2.0]) == pytest.approx([0.0])

    def test_accepts_bytes_and_crlf(self, minimal_weights_text):
        crlf = minimal_weights_text.replace("\n", "\r\n").encode()
        net = load_network(crlf)
        assert forward(net, [3.0]) == pytest.approx([7.0])

    def test_inline_comments_stripped(self, minimal_weights_text):
        noisy = minimal_weights_text.replace("2.0", "2.0  # gain")
        assert forward(load_network(noisy), [3.0]) == pytest.approx([7.0])

    def test_input_shape_enforced(self, minimal_weights_text):
        net = load_network(minimal_weights_text)
        with pytest.raises(ValueError):
            forward(net, [1.0, 2.0])


class TestGoldenFixture:
    def test_architecture(self, golden_weights_text):
        net = load_network(golden_weights_text)
        dims = [net.in_dim] + [l.out_dim for l in net.layers]
        assert dims == [9, 128, 64, 32, 16, 2]
        assert [l.activation for l in net.layers] == ["relu"] * 4 + ["linear"]

    def test_matches_recorded_outputs(self, golden_weights_text, fixtures_dir):
        net = load_network(golden_weights_text)
        golden = json.loads((fixtures_dir / "golden.json").read_text())
        for x, want in zip(golden["inputs"], golden["outputs"]):
            got = forward(net, x)
            assert np.allclose(got, want, rtol=1e-5, atol=1e-8)

    def test_matches_independent_evaluator(self, golden_weights_text):
        """Loader + numpy forward vs a from-scratch parser and pure loops."""
        net = load_network(golden_weights_text)
        layers = naive_parse_weights(golden_weights_text)
        rng = np.random.default_rng(7)
        for _ in range(8):
            x = rng.uniform(-2.0, 2.0, size=9)
            mine = forward(net, x)
            ref = naive_forward(layers, list(x))
            assert np.allclose(mine, ref, rtol=1e-9, atol=1e-12)


class TestParseErrors:
    def test_bad_magic(self):
        with pytest.raises(BadMagic) as err:
            load_network("WRONG 1\nlayers 1\n")
        assert err.value.line == 1

    def test_truncated(self, minimal_weights_text):
        lines = minimal_weights_text.strip().splitlines()
        with pytest.raises(TruncatedFile):
            load_network("\n".join(lines[:-1]))

    def test_empty_file_is_truncated(self):
        with pytest.raises(TruncatedFile):
            load_network("")

    def test_wrong_row_width(self):
        text = "CYRUS-DNN 1\nlayers 1\nlayer 0 dense 2 2 relu\n1 2\n3\n4 5\n"
        with pytest.raises(DimensionMismatch) as err:
            load_network(text)
        assert err.value.line == 5

    def test_non_numeric_token(self):
        text = "CYRUS-DNN 1\nlayers 1\nlayer 0 dense 1 1 relu\nabc\n0\n"
        with pytest.raises(NonNumericToken) as err:
            load_network(text)
        assert err.value.line == 4

    def test_chained_dims_must_agree(self):
        text = (
            "CYRUS-DNN 1\nlayers 2\n"
            "layer 0 dense 1 2 relu\n1 1\n0 0\n"
            "layer 1 dense 3 1 linear\n1\n1\n1\n0\n"
        )
        with pytest.raises(DimensionMismatch):
            load_network(text)

    def test_unknown_activation(self):
        text = "CYRUS-DNN 1\nlayers 1\nlayer 0 dense 1 1 swish\n1\n0\n"
        with pytest.raises(WeightsParseError):
            load_network(text)

    def test_trailing_content_rejected(self, minimal_weights_text):
        with pytest.raises(WeightsParseError):
            load_network(minimal_weights_text + "\n9 9 9\n")

    def test_non_finite_rejected(self):
        text = "CYRUS-DNN 1\nlayers 1\nlayer 0 dense 1 1 relu\nnan\n0\n"
        with pytest.raises(WeightsParseError):
            load_network(text)

    def test_errors_are_value_errors(self):
        for exc in (BadMagic, DimensionMismatch, NonNumericToken, TruncatedFile):
            assert issubclass(exc, WeightsParseError)
            assert issubclass(exc, ValueError)


class TestForwardProperties:
    @given(st.floats(0.1, 10.0), st.floats(-5.0, 5.0))
    @settings(max_examples=50)
    def test_relu_positive_homogeneity(self, scale, x):
        # single zero-bias relu layer: f(a*x) == a*f(x) for a > 0
        net = load_network("CYRUS-DNN 1\nlayers 1\nlayer 0 dense 1 1 relu\n3.0\n0\n")
        lhs = forward(net, [scale * x])[0]
        rhs = scale * forward(net, [x])[0]
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestPredictOpponent:
    def test_constant_velocity_extrapolates(self):
        blk = blocker_at(Vec2(5.0, 0.0), vel=Vec2(1.0, 0.0))
        got = predict_opponent(ConstantVelocityPredictor(), ACTOR, BALL, blk)
        assert got.x == pytest.approx(6.0) and got.y == pytest.approx(0.0)

    def test_far_blocker_rejected(self):
        blk = blocker_at(Vec2(50.0, 0.0))
        with pytest.raises(ValueError):
            predict_opponent(ConstantVelocityPredictor(), ACTOR, BALL, blk)

    def test_unknown_predictor_rejected(self):
        with pytest.raises(ValueError):
            predict_opponent(object(), ACTOR, BALL, blocker_at(Vec2(3.0, 0.0)))

    @pytest.mark.parametrize("angle", [0.0, 45.0, 90.0, -120.0])
    def test_fallback_is_rotation_equivariant(self, angle):
        """Global-frame answer must not depend on the actor's body angle."""
        blk = blocker_at(Vec2(4.0, 1.0), vel=Vec2(0.5, -0.25))
        base = predict_opponent(ConstantVelocityPredictor(), ACTOR, BALL, blk)
        turned_actor = PlayerState(side="ours", unum=9, pos=Vec2(0.0, 0.0), body=angle)
        got = predict_opponent(ConstantVelocityPredictor(), turned_actor, BALL, blk)
        assert got.x == pytest.approx(base.x) and got.y == pytest.approx(base.y)

    def test_network_route_round_trips_identity(self):
        """A linear identity network on the blocker-position slots makes
        predict_opponent return the current position in any frame."""
        rows = []
        for i in range(9):
            row = [0.0, 0.0]
            if i == 4:
                row[0] = 1.0
            if i == 5:
                row[1] = 1.0
            rows.append(" ".join(str(v) for v in row))
        text = ("CYRUS-DNN 1\nlayers 1\nlayer 0 dense 9 2 linear\n"
                + "\n".join(rows) + "\n0 0\n")
        net = NetworkPredictor(net=load_network(text))
        actor = PlayerState(side="ours", unum=9, pos=Vec2(3.0, -2.0), body=37.0)
        ball = BallState(pos=Vec2(3.5, -2.0), vel=Vec2(0.0, 0.0))
        blk = blocker_at(Vec2(6.0, 1.0), vel=Vec2(0.3, 0.1), body=-90.0)
        got = predict_opponent(net, actor, ball, blk)
        assert got.x == pytest.approx(6.0, abs=1e-9)
        assert got.y == pytest.approx(1.0, abs=1e-9)


class TestActorFrame:
    def test_layout_in_trivial_frame(self):
        blk = PlayerState(side="theirs", unum=2, pos=Vec2(2.0, 1.0),
                          vel=Vec2(0.1, -0.2), body=90.0)
        ball = BallState(pos=Vec2(0.5, 0.0), vel=Vec2(0.2, 0.0))
        x = to_actor_frame(ACTOR, ball, blk)
        assert x.shape == (9,)
        assert x == pytest.approx([0.5, 0.0, 0.2, 0.0, 2.0, 1.0, 0.1, -0.2, 90.0])

    def test_rotation_moves_world_into_body_frame(self):
        actor = PlayerState(side="ours", unum=9, pos=Vec2(1.0, 1.0), body=90.0)
        blk = PlayerState(side="theirs", unum=2, pos=Vec2(1.0, 3.0), body=90.0)
        ball = BallState(pos=Vec2(1.0, 2.0), vel=Vec2(0.0, 0.0))
        x = to_actor_frame(actor, ball, blk)
        # straight ahead along the body axis maps to +x
        assert x[0] == pytest.approx(1.0) and x[1] == pytest.approx(0.0, abs=1e-12)
        assert x[4] == pytest.approx(2.0) and x[5] == pytest.approx(0.0, abs=1e-12)
        assert x[8] == pytest.approx(0.0)

    def test_relative_body_wraps(self):
        blk = PlayerState(side="theirs", unum=2, pos=Vec2(2.0, 0.0), body=-170.0)
        actor = PlayerState(side="ours", unum=9, pos=Vec2(0.0, 0.0), body=170.0)
        x = to_actor_frame(actor, BALL, blk)
        assert x[8] == pytest.approx(20.0)

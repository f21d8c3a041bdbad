"""Kinematics, geometry, and the noisy observation model."""
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import build_world, random_world
from pitchkit.config import DEFAULT_CONFIG
from pitchkit.world import (
    OURS,
    THEIRS,
    BallState,
    PlayerState,
    Vec2,
    WorldSnapshot,
    ball_travel,
    ceil_cycles,
    cycles_to_point,
    first_kick_speed_for,
    normalize_angle,
    observe,
)


class TestAngles:
    def test_normalize_half_open_interval(self):
        assert normalize_angle(180.0) == -180.0
        assert normalize_angle(-180.0) == -180.0
        assert normalize_angle(190.0) == pytest.approx(-170.0)
        assert normalize_angle(-190.0) == pytest.approx(170.0)
        assert normalize_angle(0.0) == 0.0
        assert normalize_angle(720.0) == 0.0

    @given(st.floats(-1e6, 1e6))
    def test_normalize_range(self, deg):
        out = normalize_angle(deg)
        assert -180.0 <= out < 180.0

    def test_zero_vector_angle_is_zero(self):
        assert Vec2(0.0, 0.0).angle_deg() == 0.0

    def test_rotation_round_trip(self):
        v = Vec2(3.0, -4.0)
        w = v.rotated(37.0).rotated(-37.0)
        assert w.x == pytest.approx(v.x, abs=1e-12)
        assert w.y == pytest.approx(v.y, abs=1e-12)


class TestCeilCycles:
    def test_exact_integers_do_not_round_up(self):
        assert ceil_cycles(5.0) == 5
        # 0.58/0.2 = 2.8999...96 in floats; the epsilon guard keeps ceil at 3
        assert ceil_cycles(0.58 / 0.2) == 3

    def test_negative_clamps_to_zero(self):
        assert ceil_cycles(-0.5) == 0


class TestBallTravel:
    def test_zero_cycles(self):
        b = BallState(pos=Vec2(0.0, 0.0), vel=Vec2(3.0, 0.0))
        assert ball_travel(b, 0) == Vec2(0.0, 0.0)

    def test_one_cycle_is_velocity(self):
        b = BallState(pos=Vec2(0.0, 0.0), vel=Vec2(3.0, 0.0))
        p = ball_travel(b, 1)
        assert p.x == pytest.approx(3.0)
        assert p.y == 0.0

    def test_two_cycles_geometric_sum(self):
        b = BallState(pos=Vec2(0.0, 0.0), vel=Vec2(3.0, 0.0))
        p = ball_travel(b, 2)
        assert p.x == pytest.approx(5.82, abs=1e-9)
        assert p.y == 0.0

    def test_converges_to_geometric_limit(self):
        b = BallState(pos=Vec2(1.0, 2.0), vel=Vec2(0.6, -0.3))
        lim_x = 1.0 + 0.6 / (1.0 - 0.94)
        lim_y = 2.0 - 0.3 / (1.0 - 0.94)
        p = ball_travel(b, 500)
        assert p.x == pytest.approx(lim_x, abs=1e-8)
        assert p.y == pytest.approx(lim_y, abs=1e-8)

    @given(st.integers(0, 60))
    def test_monotone_along_velocity(self, n):
        b = BallState(pos=Vec2(0.0, 0.0), vel=Vec2(1.5, 0.0))
        assert ball_travel(b, n + 1).x > ball_travel(b, n).x

    @given(st.floats(0.5, 40.0), st.integers(1, 30))
    def test_first_kick_speed_inverts_travel(self, distance, cycles):
        speed = first_kick_speed_for(distance, cycles)
        assume(speed <= 3.0)
        b = BallState(pos=Vec2(0.0, 0.0), vel=Vec2(speed, 0.0))
        assert ball_travel(b, cycles).x == pytest.approx(distance, abs=1e-9)


class TestCyclesToPoint:
    def test_aligned_body(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), body=0.0)
        assert cycles_to_point(p, Vec2(5.0, 0.0)) == (0, 5)

    def test_reversed_body_costs_two_turns(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), body=180.0)
        assert cycles_to_point(p, Vec2(5.0, 0.0)) == (2, 5)

    def test_target_on_player(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(3.0, 3.0), body=90.0)
        assert cycles_to_point(p, Vec2(3.0, 3.0)) == (0, 0)

    def test_dead_zone_is_free(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), body=19.0)
        assert cycles_to_point(p, Vec2(5.0, 0.0))[0] == 0

    def test_just_outside_dead_zone(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), body=21.0)
        assert cycles_to_point(p, Vec2(5.0, 0.0))[0] == 1

    @given(
        st.integers(-30, 30), st.integers(-30, 30),
        st.integers(-30, 30), st.integers(-30, 30),
        st.integers(-179, 179),
        st.integers(-20, 20), st.integers(-20, 20),
    )
    def test_translation_equivariance(self, px, py, tx, ty, body, dx, dy):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(float(px), float(py)),
                        body=float(body))
        q = PlayerState(side=OURS, unum=2,
                        pos=Vec2(float(px + dx), float(py + dy)), body=float(body))
        assert cycles_to_point(p, Vec2(float(tx), float(ty))) == \
            cycles_to_point(q, Vec2(float(tx + dx), float(ty + dy)))

    def test_rotation_equivariance_quarter_turns(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(2.0, -7.0), body=40.0)
        t = Vec2(11.0, 5.0)
        base = cycles_to_point(p, t)
        q = PlayerState(side=OURS, unum=2, pos=Vec2(7.0, 2.0), body=130.0)
        assert cycles_to_point(q, Vec2(-5.0, 11.0)) == base


def zero_noise(world, observer=(OURS, 1), seed=7):
    return observe(world, observer, (0.0, 0.0), seed)


class TestObserve:
    def test_zero_noise_is_identity(self):
        world = random_world(3)
        obs = zero_noise(world)
        assert obs.cycle == world.cycle
        assert obs.ball.pos == world.ball.pos
        assert obs.ball.vel == world.ball.vel
        for p in world.players:
            seen = obs.player(p.side, p.unum)
            assert seen.base.pos == p.pos
            assert seen.base.vel == p.vel
            assert seen.base.body == p.body
            assert (seen.pos_count, seen.vel_count, seen.body_count) == (0, 0, 0)

    def test_determinism(self):
        world = random_world(4)
        a = observe(world, (OURS, 3), (0.05, 0.3), 42)
        b = observe(world, (OURS, 3), (0.05, 0.3), 42)
        assert a == b

    def test_seed_changes_noise(self):
        world = random_world(4)
        a = observe(world, (OURS, 3), (0.05, 0.0), 1)
        b = observe(world, (OURS, 3), (0.05, 0.0), 2)
        assert a != b

    def test_observer_entry_exact_under_noise(self):
        world = random_world(5)
        obs = observe(world, (THEIRS, 7), (0.1, 0.5), 11)
        own = obs.player(THEIRS, 7)
        truth = world.player(THEIRS, 7)
        assert own.base == truth
        assert (own.pos_count, own.vel_count, own.body_count) == (0, 0, 0)

    def test_counts_capped_and_nonnegative(self):
        world = random_world(6)
        obs = observe(world, (OURS, 1), (0.0, 0.9), 3)
        for p in obs.players:
            assert 0 <= p.pos_count <= 30
            assert 0 <= p.vel_count <= 30
            assert 0 <= p.body_count <= 30

    def test_stale_rewind_exact_when_noise_free(self):
        # factor 0 + stale_prob > 0 isolates the rewind: the observed
        # position must sit exactly pos_count velocities behind the truth.
        world = random_world(8)
        obs = observe(world, (OURS, 1), (0.0, 0.6), 99)
        for p in world.players:
            if p.side == OURS and p.unum == 1:
                continue
            seen = obs.player(p.side, p.unum)
            expected = p.pos - p.vel.scaled(float(seen.pos_count))
            assert seen.base.pos.x == pytest.approx(expected.x, abs=1e-12)
            assert seen.base.pos.y == pytest.approx(expected.y, abs=1e-12)

    def test_unknown_observer_rejected(self):
        world = random_world(9)
        with pytest.raises(ValueError):
            observe(world, (OURS, 12), (0.0, 0.0), 1)

    def test_bad_noise_rejected(self):
        world = random_world(9)
        with pytest.raises(ValueError):
            observe(world, (OURS, 1), (-0.1, 0.0), 1)
        with pytest.raises(ValueError):
            observe(world, (OURS, 1), (0.0, 1.0), 1)

    def test_positions_clamped_to_field_margin(self):
        world = build_world(
            {2: Vec2(52.0, 33.0)}, {2: Vec2(-52.0, -33.0)}, Vec2(0.0, 0.0)
        )
        for seed in range(200):
            obs = observe(world, (OURS, 1), (0.3, 0.0), seed)
            for p in obs.players:
                assert abs(p.base.pos.x) <= 57.5
                assert abs(p.base.pos.y) <= 39.0


class TestObserveNoiseLaw:
    def test_std_tracks_factor_times_distance(self):
        # Observer at the origin, targets at three distances. Empirical std
        # of the positional error must match factor * distance within 10%
        # and must grow with distance.
        world = build_world(
            {2: Vec2(0.0, 0.0)},
            {3: Vec2(5.0, 0.0), 5: Vec2(20.0, 0.0), 7: Vec2(35.0, 0.0)},
            Vec2(1.0, 1.0),
        )
        targets = {3: 5.0, 5: 20.0, 7: 35.0}
        errors: dict[int, list[float]] = {u: [] for u in targets}
        for seed in range(5000):
            obs = observe(world, (OURS, 2), (0.02, 0.0), seed)
            for unum, d in targets.items():
                seen = obs.player(THEIRS, unum).base.pos
                truth = world.player(THEIRS, unum).pos
                errors[unum].extend([seen.x - truth.x, seen.y - truth.y])
        stds = {u: float(np.std(errors[u])) for u in targets}
        for unum, d in targets.items():
            expected = 0.02 * d
            assert abs(stds[unum] - expected) <= 0.1 * expected, (
                f"distance {d}: std {stds[unum]:.4f} vs expected {expected:.4f}"
            )
        assert stds[3] < stds[5] < stds[7]


class TestStateValidation:
    def test_world_requires_22_players(self):
        world = random_world(1)
        with pytest.raises(ValueError):
            WorldSnapshot(cycle=0, ball=world.ball, players=world.players[:21])

    def test_duplicate_unum_rejected(self):
        world = random_world(1)
        players = list(world.players)
        players[1] = players[0]
        with pytest.raises(ValueError):
            WorldSnapshot(cycle=0, ball=world.ball, players=tuple(players))

    def test_ball_speed_cap(self):
        with pytest.raises(ValueError):
            BallState(pos=Vec2(0.0, 0.0), vel=Vec2(3.1, 0.0))

    def test_player_speed_cap(self):
        with pytest.raises(ValueError):
            PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), vel=Vec2(1.2, 0.0))

    def test_body_normalized_on_construction(self):
        p = PlayerState(side=OURS, unum=2, pos=Vec2(0.0, 0.0), body=270.0)
        assert p.body == -90.0

    def test_bad_side_rejected(self):
        with pytest.raises(ValueError):
            PlayerState(side="left", unum=2, pos=Vec2(0.0, 0.0))

"""Field and kinematics constants.

Everything that is a server-style default lives in one frozen record so
experiments can override it in a single place instead of hunting down
magic numbers.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FieldConfig:
    # pitch geometry (meters)
    half_length: float = 52.5
    half_width: float = 34.0
    out_of_play_margin: float = 5.0
    penalty_area_depth: float = 16.5
    penalty_area_half_width: float = 20.16

    # ball dynamics
    ball_decay: float = 0.94
    ball_max_speed: float = 3.0

    # default player type
    player_max_speed: float = 1.0
    kickable_area: float = 1.085
    player_size: float = 0.3

    # turn model: free up to the dead zone, then a fixed rate per cycle
    turn_dead_zone_deg: float = 20.0
    turn_rate_deg: float = 120.0

    @property
    def our_goal(self) -> tuple[float, float]:
        return (-self.half_length, 0.0)

    @property
    def their_goal(self) -> tuple[float, float]:
        return (self.half_length, 0.0)


DEFAULT_CONFIG = FieldConfig()

"""Snapshot (de)serialization.

One JSON object per line in `.jsonl` scenario files:

    {"cycle": 0,
     "ball": {"x": 0.0, "y": 0.0, "vx": 0.0, "vy": 0.0},
     "players": [{"side": "ours", "unum": 1, "x": -50.0, "y": 0.0,
                  "vx": 0.0, "vy": 0.0, "body": 0.0,
                  "max_speed": 1.0, "kickable_area": 1.085, "size": 0.3}, ...]}

Lines produced by a kick logger may additionally carry a
"pass": {"kicker": u, "receiver": v} object; this module preserves it as an
opaque extra (the feature extractor interprets it).
"""
from __future__ import annotations

import json
from typing import IO, Any

from .world import BallState, PlayerState, PlayerType, Vec2, WorldSnapshot


def snapshot_to_dict(snap: WorldSnapshot) -> dict[str, Any]:
    return {
        "cycle": snap.cycle,
        "ball": {
            "x": snap.ball.pos.x,
            "y": snap.ball.pos.y,
            "vx": snap.ball.vel.x,
            "vy": snap.ball.vel.y,
        },
        "players": [
            {
                "side": p.side,
                "unum": p.unum,
                "x": p.pos.x,
                "y": p.pos.y,
                "vx": p.vel.x,
                "vy": p.vel.y,
                "body": p.body,
                "max_speed": p.type_params.max_speed,
                "kickable_area": p.type_params.kickable_area,
                "size": p.type_params.size,
            }
            for p in snap.players
        ],
    }


def snapshot_from_dict(d: dict[str, Any]) -> WorldSnapshot:
    ball = BallState(
        pos=Vec2(float(d["ball"]["x"]), float(d["ball"]["y"])),
        vel=Vec2(float(d["ball"]["vx"]), float(d["ball"]["vy"])),
    )
    players = tuple(
        PlayerState(
            side=str(pd["side"]),
            unum=int(pd["unum"]),
            pos=Vec2(float(pd["x"]), float(pd["y"])),
            vel=Vec2(float(pd["vx"]), float(pd["vy"])),
            body=float(pd["body"]),
            type_params=PlayerType(
                max_speed=float(pd["max_speed"]),
                kickable_area=float(pd["kickable_area"]),
                size=float(pd["size"]),
            ),
        )
        for pd in d["players"]
    )
    return WorldSnapshot(cycle=int(d["cycle"]), ball=ball, players=players)


def write_snapshots(stream: IO[str], snaps, extras=None) -> None:
    """Write snapshots one per line; extras[i] (if given) is merged into line i."""
    for i, snap in enumerate(snaps):
        d = snapshot_to_dict(snap)
        if extras is not None and extras[i]:
            d.update(extras[i])
        stream.write(json.dumps(d, sort_keys=True) + "\n")


def read_snapshots(stream: IO[str]):
    """Yield (WorldSnapshot, raw_dict) per well-formed line; raises on bad JSON."""
    for line in stream:
        line = line.strip()
        if not line:
            continue
        d = json.loads(line)
        yield snapshot_from_dict(d), d

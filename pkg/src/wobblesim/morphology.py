"""Six-tentacle starfish robot construction.

Each tentacle is a ladder of quadrilateral sections: rung r carries two
nodes straddling the tentacle axis, consecutive rungs are joined by the
two longitudinal side springs (the section's antagonistic muscle pair,
one +1 and one -1 polarity) and two diagonal braces for shear rigidity.
The central body is a ring of nodes stiffened by all pairwise springs,
with one tentacle rooted at each ring node.

Morphology scales are applied at build time only: mass_scale multiplies
every node mass, stiffness_scale multiplies muscle spring stiffness, and
size_scale multiplies section heights (node positions re-derived).  A
World, once built for an epoch, is never morphologically mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .physics import PointMass, Spring, World
from .wobble import MorphologyScales

TENTACLES = 6


class MorphologyError(ValueError):
    pass


@dataclass(frozen=True)
class StarfishSpec:
    """Geometry and material constants of the adult (scale 1.0) robot."""

    tentacle_count: int = 6
    sections_per_tentacle: int = 8
    section_width: float = 0.05
    section_height: float = 0.055
    body_radius: float = 0.12
    base_node_mass: float = 0.02
    structural_stiffness: float = 80.0
    body_stiffness: float = 200.0
    muscle_stiffness: float = 120.0
    structural_damping: float = 0.25
    muscle_damping: float = 0.25

    def __post_init__(self):
        if self.tentacle_count != TENTACLES:
            raise MorphologyError(
                f"the 24-gene controller requires exactly {TENTACLES} tentacles")
        if self.sections_per_tentacle < 2 or self.sections_per_tentacle % 2:
            raise MorphologyError("sections_per_tentacle must be even and >= 2")
        for name in ("section_width", "section_height", "body_radius",
                     "base_node_mass", "structural_stiffness", "body_stiffness",
                     "muscle_stiffness"):
            if not getattr(self, name) > 0:
                raise MorphologyError(f"{name} must be > 0")
        if self.structural_damping < 0 or self.muscle_damping < 0:
            raise MorphologyError("damping constants must be >= 0")


def build_starfish(spec: StarfishSpec, scales: MorphologyScales = MorphologyScales(),
                   **env) -> World:
    """Build the robot World for one epoch's morphology, resting on the ground.

    Node order: the body ring (one node per tentacle), then per tentacle
    the rung nodes root-to-tip, (left, right) within each rung.  Any
    World environment constant (gravity, ground_y, contact/friction
    coefficients) can be overridden through ``env``.
    """
    if not isinstance(scales, MorphologyScales):
        raise MorphologyError("scales must be a MorphologyScales value")
    s = spec
    height = s.section_height * scales.size
    half_w = 0.5 * s.section_width
    node_mass = s.base_node_mass * scales.mass
    n_rungs = s.sections_per_tentacle + 1

    nodes: list[PointMass] = []
    springs: list[Spring] = []
    zero = np.zeros(2)

    def add_node(x: float, y: float) -> int:
        nodes.append(PointMass(np.array([x, y]), zero.copy(), node_mass))
        return len(nodes) - 1

    def link(a: int, b: int, stiffness: float, damping: float,
             group: int | None = None, sign: float = 0.0) -> None:
        pa, pb = nodes[a].position, nodes[b].position
        rest = math.hypot(pb[0] - pa[0], pb[1] - pa[1])
        springs.append(Spring(a, b, rest, stiffness, damping,
                              is_muscle=group is not None,
                              muscle_group=group, muscle_sign=sign))

    ring = [add_node(s.body_radius * math.cos(2.0 * math.pi * t / s.tentacle_count),
                     s.body_radius * math.sin(2.0 * math.pi * t / s.tentacle_count))
            for t in range(s.tentacle_count)]
    for i in range(len(ring)):
        for j in range(i + 1, len(ring)):
            link(ring[i], ring[j], s.body_stiffness, s.structural_damping)

    for t in range(s.tentacle_count):
        theta = 2.0 * math.pi * t / s.tentacle_count
        ux, uy = math.cos(theta), math.sin(theta)
        px, py = -math.sin(theta), math.cos(theta)
        left: list[int] = []
        right: list[int] = []
        for r in range(n_rungs):
            cd = s.body_radius + r * height
            left.append(add_node(cd * ux + half_w * px, cd * uy + half_w * py))
            right.append(add_node(cd * ux - half_w * px, cd * uy - half_w * py))

        link(left[0], ring[t], s.structural_stiffness, s.structural_damping)
        link(right[0], ring[t], s.structural_stiffness, s.structural_damping)
        link(left[0], ring[(t + 1) % s.tentacle_count],
             s.structural_stiffness, s.structural_damping)
        link(right[0], ring[(t - 1) % s.tentacle_count],
             s.structural_stiffness, s.structural_damping)

        for r in range(n_rungs):
            link(left[r], right[r], s.structural_stiffness, s.structural_damping)
        for sec in range(s.sections_per_tentacle):
            group = 2 * t + (0 if sec < s.sections_per_tentacle // 2 else 1)
            k_muscle = s.muscle_stiffness * scales.stiffness
            link(left[sec], left[sec + 1], k_muscle, s.muscle_damping,
                 group=group, sign=1.0)
            link(right[sec], right[sec + 1], k_muscle, s.muscle_damping,
                 group=group, sign=-1.0)
            link(left[sec], right[sec + 1], s.structural_stiffness,
                 s.structural_damping)
            link(right[sec], left[sec + 1], s.structural_stiffness,
                 s.structural_damping)

    world = World.from_parts(nodes, springs, **env)
    world.pos_x -= world.pos_x.mean()
    world.pos_y += world.ground_y - world.pos_y.min()
    return world


@lru_cache(maxsize=16)
def adult_body_length(spec: StarfishSpec) -> float:
    """Tip-to-tip diameter of the scale-(1,1,1) build, in length units.

    Measured on the as-built adult geometry as the largest distance
    between the tip-rung midpoints of opposing tentacles; fixed per spec
    and never rescaled by morphology schedules.
    """
    world = build_starfish(spec, MorphologyScales())
    half = spec.tentacle_count // 2
    n_rungs = spec.sections_per_tentacle + 1
    tips = []
    for t in range(spec.tentacle_count):
        base = spec.tentacle_count + t * 2 * n_rungs
        li, ri = base + 2 * (n_rungs - 1), base + 2 * (n_rungs - 1) + 1
        tips.append(((world.pos_x[li] + world.pos_x[ri]) / 2.0,
                     (world.pos_y[li] + world.pos_y[ri]) / 2.0))
    best = 0.0
    for t in range(half):
        a, b = tips[t], tips[t + half]
        best = max(best, math.hypot(a[0] - b[0], a[1] - b[1]))
    return best


def muscle_groups(world: World) -> dict[int, list[int]]:
    """Spring indices of each motor group, for inspection and tests."""
    groups: dict[int, list[int]] = {}
    for idx, grp in zip(world.muscle_idx, world.muscle_group):
        groups.setdefault(int(grp), []).append(int(idx))
    return groups


def write_robot_csv(world: World, nodes_path, springs_path) -> None:
    """Dump the built robot as a node/spring CSV pair."""
    with open(nodes_path, "w") as fh:
        fh.write("node,x,y,mass\n")
        for i in range(world.n_nodes):
            fh.write(f"{i},{world.pos_x[i]!r},{world.pos_y[i]!r},{world.mass[i]!r}\n")
    with open(springs_path, "w") as fh:
        fh.write("spring,node_a,node_b,rest_length,stiffness,damping,"
                 "is_muscle,muscle_group,muscle_sign\n")
        for i in range(world.n_springs):
            sp = world.spring(i)
            fh.write(f"{i},{sp.node_a},{sp.node_b},{sp.rest_length!r},"
                     f"{sp.stiffness!r},{sp.damping!r},{int(sp.is_muscle)},"
                     f"{'' if sp.muscle_group is None else sp.muscle_group},"
                     f"{sp.muscle_sign!r}\n")

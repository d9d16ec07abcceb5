"""Seeded random scenario generation.

Randomness comes from a self-contained xorshift64* generator so that a seed
produces the same scenario on any platform and any implementation of this
format, independent of a language runtime's RNG.  The update is

    x ^= x >> 12;  x ^= x << 25 (mod 2^64);  x ^= x >> 27
    output = (x * 0x2545F4914F6CDD1D) mod 2^64

with the state seeded through one splitmix64 step (constants
0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB) so that seed 0
is usable.  Doubles take the top 53 output bits; integer ranges reduce the
output modulo the range width.

Draw order is fixed: first one resource value per sector, then per sector a
task count followed by (azimuth fraction, elevation, duration) per task.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError
from .model import Scenario, SurveillanceTask, TWO_PI, Direction, sector_of_direction

_MASK64 = (1 << 64) - 1


class Xorshift64Star:
    """Minimal deterministic PRNG; see module docstring for the constants."""

    def __init__(self, seed: int):
        z = (int(seed) + 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        self._state = z or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_range(self, lo: float, hi: float) -> float:
        return lo + self.uniform() * (hi - lo)

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise InvalidInputError(f"empty integer range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)


@dataclass(frozen=True)
class GenParams:
    """Knobs for random scenario generation.

    ``hotspots`` maps chosen sectors to (resource multiplier, task-count
    multiplier) pairs to create deliberately overloaded or starved sectors;
    a resource multiplier of 0 yields a dead sector.
    """

    n_sectors: int = 30
    fov_half_width: int = 5
    dt: float = 25.0
    tasks_per_sector: tuple[int, int] = (5, 15)
    duration: tuple[float, float] = (0.5, 3.0)
    resources: tuple[float, float] = (5.0, 20.0)
    hotspots: tuple[tuple[int, float, float], ...] = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        if self.n_sectors < 1:
            raise InvalidInputError(f"n_sectors={self.n_sectors!r} must be >= 1")
        if self.fov_half_width < 0:
            raise InvalidInputError("fov_half_width must be >= 0")
        if self.dt <= 0:
            raise InvalidInputError(f"dt={self.dt!r} must be positive")
        lo, hi = self.tasks_per_sector
        if lo < 0 or hi < lo:
            raise InvalidInputError(f"bad tasks_per_sector range {self.tasks_per_sector!r}")
        lo, hi = self.duration
        if lo <= 0 or hi < lo:
            raise InvalidInputError(f"bad duration range {self.duration!r}")
        lo, hi = self.resources
        if lo < 0 or hi < lo:
            raise InvalidInputError(f"bad resources range {self.resources!r}")
        for sector, res_mult, task_mult in self.hotspots:
            if not 0 <= sector < self.n_sectors:
                raise InvalidInputError(f"hotspot sector {sector!r} out of range")
            if res_mult < 0 or task_mult < 0:
                raise InvalidInputError("hotspot multipliers must be >= 0")


def generate(params: GenParams) -> Scenario:
    """Deterministic-in-seed random scenario.

    Azimuths are uniform within each sector's slice, elevations uniform over
    their full range, durations and resources uniform in the configured
    ranges, and hotspot multipliers applied on top.
    """
    rng = Xorshift64Star(params.seed)
    n = params.n_sectors
    hot = {sector: (rm, tm) for sector, rm, tm in params.hotspots}

    resources = []
    for i in range(n):
        r = rng.uniform_range(*params.resources)
        if i in hot:
            r *= hot[i][0]
        resources.append(r)

    tasks: list[SurveillanceTask] = []
    task_id = 0
    width = TWO_PI / n
    for i in range(n):
        count = rng.randint(*params.tasks_per_sector)
        if i in hot:
            count = int(round(count * hot[i][1]))
        for _ in range(count):
            phi = (i + rng.uniform()) * width
            if phi >= TWO_PI:
                phi = math.nextafter(TWO_PI, 0.0)
            theta = rng.uniform_range(-math.pi, math.pi)
            duration = rng.uniform_range(*params.duration)
            tasks.append(SurveillanceTask(
                id=task_id,
                direction=Direction(phi, theta),
                duration=duration,
                home_sector=sector_of_direction(phi, n),
            ))
            task_id += 1

    return Scenario(
        n_sectors=n,
        fov_half_width=params.fov_half_width,
        dt=params.dt,
        resources=tuple(resources),
        tasks=tuple(tasks),
    )

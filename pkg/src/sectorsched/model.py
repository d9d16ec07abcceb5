"""Domain model: beam directions, surveillance tasks, scenarios, sector geometry.

Azimuth is divided into ``n_sectors`` equal slices; a task belongs to the
sector its azimuth falls into (its home sector).  The antenna boresight
rotates at a constant rate of one sector per ``dt`` seconds, and the
electronically steered beam can reach ``fov_half_width`` sectors to either
side of the current main sector.

Sector indices are plain ints, always reduced into ``[0, n_sectors)`` by the
functions that produce them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError

TWO_PI = 2.0 * math.pi

# Absolute slack applied to every capacity / budget comparison so that sums
# of real-valued durations do not flip a decision through accumulation noise.
CAP_SLACK = 1e-9

# Tolerance on floor(ratio) computations: an instant or angle sitting within
# 1e-9 (in ratio units) below a sector boundary resolves to the next sector.
_FLOOR_EPS = 1e-9


def _floor_ratio(ratio: float) -> int:
    return math.floor(ratio + _FLOOR_EPS)


@dataclass(frozen=True)
class Direction:
    """A beam pointing direction in radians: phi in [0, 2*pi), theta in [-pi, pi]."""

    phi: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.phi < TWO_PI:
            raise InvalidInputError(f"phi={self.phi!r} outside [0, 2*pi)")
        if not -math.pi <= self.theta <= math.pi:
            raise InvalidInputError(f"theta={self.theta!r} outside [-pi, pi]")


@dataclass(frozen=True)
class SurveillanceTask:
    """One beam pointing direction to refresh every update cycle.

    ``home_sector`` is derived from the azimuth; keep it consistent with
    ``sector_of_direction(direction.phi, n_sectors)`` for the scenario the
    task lives in (``validate_scenario`` checks this).
    """

    id: int
    direction: Direction
    duration: float
    home_sector: int

    @property
    def phi(self) -> float:
        return self.direction.phi

    @property
    def theta(self) -> float:
        return self.direction.theta


def make_task(task_id: int, phi: float, theta: float, duration: float,
              n_sectors: int) -> SurveillanceTask:
    """Build a task with its home sector derived from phi."""
    return SurveillanceTask(
        id=task_id,
        direction=Direction(phi, theta),
        duration=duration,
        home_sector=sector_of_direction(phi, n_sectors),
    )


@dataclass(frozen=True)
class Scenario:
    """A full problem instance.

    Structural problems (bad sector count, bad dt, resource vector of the
    wrong length) raise at construction.  Data-level problems (non-positive
    durations, inconsistent home sectors, duplicate ids, zero total
    resources) are reported by :func:`validate_scenario` so that malformed
    instances can be inspected rather than being unrepresentable.

    A field of view wider than half the circle adds nothing under mod-N
    arithmetic, so ``fov_half_width`` is clamped to ``n_sectors // 2``.
    """

    n_sectors: int
    fov_half_width: int
    dt: float
    resources: tuple[float, ...]
    tasks: tuple[SurveillanceTask, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.n_sectors, int) or self.n_sectors < 1:
            raise InvalidInputError(f"n_sectors={self.n_sectors!r} must be a positive integer")
        if not isinstance(self.fov_half_width, int) or self.fov_half_width < 0:
            raise InvalidInputError(f"fov_half_width={self.fov_half_width!r} must be a non-negative integer")
        if not self.dt > 0:
            raise InvalidInputError(f"dt={self.dt!r} must be positive")
        object.__setattr__(self, "resources", tuple(float(r) for r in self.resources))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if len(self.resources) != self.n_sectors:
            raise InvalidInputError(
                f"resources has {len(self.resources)} entries, expected {self.n_sectors}")
        object.__setattr__(
            self, "fov_half_width", min(self.fov_half_width, self.n_sectors // 2))

    @property
    def rotation_time(self) -> float:
        """Duration of one full rotation, seconds."""
        return self.n_sectors * self.dt

    def task_by_id(self) -> dict[int, SurveillanceTask]:
        return {t.id: t for t in self.tasks}


def sector_of_direction(phi: float, n_sectors: int) -> int:
    """Sector index owning azimuth ``phi``: floor(phi / (2*pi) * n_sectors)."""
    if n_sectors < 1:
        raise InvalidInputError(f"n_sectors={n_sectors!r} must be >= 1")
    if not 0.0 <= phi < TWO_PI:
        raise InvalidInputError(f"phi={phi!r} outside [0, 2*pi)")
    idx = _floor_ratio(phi / TWO_PI * n_sectors)
    return min(idx, n_sectors - 1)


def main_sector(t: float, n_sectors: int, dt: float) -> int:
    """Sector the boresight points at time ``t``, wrapped into [0, n_sectors)."""
    if dt <= 0:
        raise InvalidInputError(f"dt={dt!r} must be positive")
    if n_sectors < 1:
        raise InvalidInputError(f"n_sectors={n_sectors!r} must be >= 1")
    if t < 0:
        raise InvalidInputError(f"t={t!r} must be non-negative")
    return _floor_ratio(t / dt) % n_sectors


def active_sectors(m: int, fov_half_width: int, n_sectors: int) -> tuple[int, ...]:
    """Sectors reachable while the main sector is ``m``.

    Returns (m + c) mod n_sectors for c from -n to +n, duplicates dropped,
    so the result has min(2n + 1, n_sectors) entries and always contains m.
    A half-width beyond n_sectors // 2 is clamped.
    """
    if n_sectors < 1:
        raise InvalidInputError(f"n_sectors={n_sectors!r} must be >= 1")
    if not 0 <= m < n_sectors:
        raise InvalidInputError(f"main sector {m!r} outside [0, {n_sectors})")
    if fov_half_width < 0:
        raise InvalidInputError(f"fov_half_width={fov_half_width!r} must be >= 0")
    n = min(fov_half_width, n_sectors // 2)
    out: list[int] = []
    seen: set[int] = set()
    for c in range(-n, n + 1):
        j = (m + c) % n_sectors
        if j not in seen:
            seen.add(j)
            out.append(j)
    return tuple(out)


def angular_sector_distance(a: int, b: int, n_sectors: int) -> int:
    """Cyclic distance between two sector indices, in sectors."""
    if n_sectors < 1:
        raise InvalidInputError(f"n_sectors={n_sectors!r} must be >= 1")
    if not (0 <= a < n_sectors and 0 <= b < n_sectors):
        raise InvalidInputError(f"sector pair ({a!r}, {b!r}) outside [0, {n_sectors})")
    d = (a - b) % n_sectors
    return min(d, n_sectors - d)


def validate_scenario(scenario: Scenario) -> list[str]:
    """Check every scenario invariant; returns violations (empty list = ok)."""
    violations: list[str] = []
    for i, r in enumerate(scenario.resources):
        if r < 0:
            violations.append(f"negative resources {r!r} in sector {i}")
    seen_ids: set[int] = set()
    for task in scenario.tasks:
        if not isinstance(task.id, int) or task.id < 0:
            violations.append(f"task id {task.id!r} is not a non-negative integer")
        elif task.id in seen_ids:
            violations.append(f"duplicate task id {task.id}")
        else:
            seen_ids.add(task.id)
        if not task.duration > 0:
            violations.append(f"non-positive duration, task id {task.id}")
        expected = sector_of_direction(task.phi, scenario.n_sectors)
        if task.home_sector != expected:
            violations.append(
                f"inconsistent home sector, task id {task.id}: "
                f"stored {task.home_sector}, phi implies {expected}")
    if scenario.tasks and not math.fsum(scenario.resources) > 0:
        violations.append("all sector resources are zero but the task set is non-empty")
    return violations

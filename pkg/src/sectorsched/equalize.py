"""Greedy revisit-time equalization.

The scheduler sweeps the sectors once.  For each sector it first packs the
sector's own unassigned tasks up to the sector's continuous target, then
extends the pick with unassigned tasks from anywhere in the sector's field
of view, under the same target.  Both picks are maximal: no remaining
candidate fits under the cap.  Whatever is left after the sweep is handed
out one task at a time to the field-of-view sector whose relative load grows
least by taking it.

The result is a partition in which every sector's load hugs its fair share
as closely as the task granularity allows, so all sectors need a similar
number of rotations to drain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import InfeasibleScenarioError, ScenarioValidationError
from .loads import (
    PROVENANCE_FOV,
    PROVENANCE_LEFTOVER,
    PROVENANCE_OWN,
    SchedulePartition,
    build_partition,
    sector_targets,
)
from .model import (
    CAP_SLACK,
    Scenario,
    SurveillanceTask,
    active_sectors,
    angular_sector_distance,
    validate_scenario,
)


def default_fill_order(task: SurveillanceTask, sector: int | None,
                       n_sectors: int | None) -> tuple:
    """Longest first; nearer home sectors first when filling across the FOV.

    With own-sector candidates the distance term is constant zero, so this
    reduces to descending duration with ascending id as tie-break.
    """
    if sector is None or n_sectors is None:
        dist = 0
    else:
        dist = angular_sector_distance(sector, task.home_sector, n_sectors)
    return (-task.duration, dist, task.id)


def default_leftover_order(task: SurveillanceTask) -> tuple:
    return (-task.duration, task.id)


def default_tie_break(sector: int, task: SurveillanceTask, n_sectors: int) -> tuple:
    return (angular_sector_distance(sector, task.home_sector, n_sectors), sector)


@dataclass(frozen=True)
class GreedyPolicy:
    """Deterministic ordering rules for the greedy scheduler.

    ``ordering`` ranks candidates during the capped fill phases (called with
    the sector being filled so distance-aware defaults are possible),
    ``leftover_ordering`` ranks the tasks left over after the sweep, and
    ``tie_break`` settles ties between sectors whose relative-load increase
    is equal.  Every rule must be a total order for reproducible output.
    """

    ordering: Callable[[SurveillanceTask, int | None, int | None], tuple] = \
        field(default=default_fill_order)
    leftover_ordering: Callable[[SurveillanceTask], tuple] = \
        field(default=default_leftover_order)
    tie_break: Callable[[int, SurveillanceTask, int], tuple] = \
        field(default=default_tie_break)


DEFAULT_POLICY = GreedyPolicy()


def maximal_subset(candidates: Sequence[SurveillanceTask], budget: float,
                   already_used: float = 0.0,
                   policy: GreedyPolicy = DEFAULT_POLICY,
                   sector: int | None = None,
                   n_sectors: int | None = None) -> list[int]:
    """First-fit selection in policy order, capped at ``budget``.

    Returns ids whose durations, on top of ``already_used``, stay within the
    budget, and such that no rejected candidate would still fit: the pick is
    maximal.  An empty pick is valid (and maximal) whenever the budget is
    already exhausted, since durations are strictly positive.
    """
    ordered = sorted(candidates, key=lambda t: policy.ordering(t, sector, n_sectors))
    chosen: list[int] = []
    used = already_used
    for task in ordered:
        if used + task.duration <= budget + CAP_SLACK:
            chosen.append(task.id)
            used += task.duration
    return chosen


def equalize(scenario: Scenario, policy: GreedyPolicy = DEFAULT_POLICY) -> SchedulePartition:
    """Partition all tasks over the sectors, flattening relative loads.

    Raises :class:`ScenarioValidationError` for invalid scenarios and
    :class:`InfeasibleScenarioError` when demand exists but no sector has
    resources, or when some leftover task sees only zero-target sectors in
    its field of view.
    """
    problems = validate_scenario(scenario)
    if problems:
        raise ScenarioValidationError(problems)

    n = scenario.n_sectors
    targets = sector_targets(scenario).targets
    by_id = scenario.task_by_id()
    by_home: list[list[SurveillanceTask]] = [[] for _ in range(n)]
    for task in scenario.tasks:
        by_home[task.home_sector].append(task)

    unassigned = set(by_id)
    sector_of_task: dict[int, int] = {}
    provenance: dict[int, str] = {}
    loads = [0.0] * n

    def assign(task_id: int, sector: int, tag: str) -> None:
        unassigned.discard(task_id)
        sector_of_task[task_id] = sector
        provenance[task_id] = tag
        loads[sector] += by_id[task_id].duration

    for i in range(n):
        budget = float(targets[i])
        own = [t for t in by_home[i] if t.id in unassigned]
        for tid in maximal_subset(own, budget, 0.0, policy, sector=i, n_sectors=n):
            assign(tid, i, PROVENANCE_OWN)
        fov = active_sectors(i, scenario.fov_half_width, n)
        reachable = [t for j in fov for t in by_home[j] if t.id in unassigned]
        for tid in maximal_subset(reachable, budget, loads[i], policy,
                                  sector=i, n_sectors=n):
            assign(tid, i, PROVENANCE_FOV)

    leftovers = sorted((by_id[tid] for tid in unassigned), key=policy.leftover_ordering)
    for task in leftovers:
        fov = active_sectors(task.home_sector, scenario.fov_half_width, n)
        eligible = [j for j in fov if targets[j] > 0.0]
        if not eligible:
            raise InfeasibleScenarioError(
                f"task {task.id}: every sector in its field of view has zero target")
        best = min(
            eligible,
            key=lambda j: ((task.duration + loads[j]) / targets[j],
                           policy.tie_break(j, task, n)),
        )
        assign(task.id, best, PROVENANCE_LEFTOVER)

    return build_partition(n, sector_of_task, provenance)

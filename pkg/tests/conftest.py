import math

import pytest

from sectorsched import Scenario, make_task

TWO_PI = 2.0 * math.pi


def scenario_from(n_sectors, fov, dt, resources, homed_durations):
    """Scenario with tasks placed by (home_sector, duration) pairs.

    Azimuths are spread evenly inside each home sector so that every task
    maps back to the sector it was declared in.
    """
    counts = {}
    for home, _ in homed_durations:
        counts[home] = counts.get(home, 0) + 1
    width = TWO_PI / n_sectors
    placed = {}
    tasks = []
    for task_id, (home, duration) in enumerate(homed_durations):
        k = placed.get(home, 0)
        placed[home] = k + 1
        phi = (home + (k + 1) / (counts[home] + 1)) * width
        tasks.append(make_task(task_id, phi, 0.0, duration, n_sectors))
    return Scenario(n_sectors=n_sectors, fov_half_width=fov, dt=dt,
                    resources=tuple(resources), tasks=tuple(tasks))


@pytest.fixture
def tri_scenario():
    """Three sectors, unit FOV, two tasks home 0 and one home 1, all 2 s."""
    return scenario_from(3, 1, 1.0, (2.0, 2.0, 2.0),
                         [(0, 2.0), (0, 2.0), (1, 2.0)])

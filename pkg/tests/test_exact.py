import math

import pytest

from sectorsched import (
    CAP_SLACK,
    InfeasibleScenarioError,
    InvalidInputError,
    LimitsExceededError,
    POLICY_PARTITION,
    SearchLimits,
    Xorshift64Star,
    angular_sector_distance,
    bin_packing_reduce,
    check_assignment,
    equalize,
    exact_min_passes,
    simulate,
)
from conftest import scenario_from


def exists_schedule_within(scenario, last_pass):
    """Brute-force oracle: can every task fit into passes 0..last_pass?

    Plain recursion in task order over all eligible passes, with nothing but
    the capacity check; shares no ordering, bounding, or symmetry logic with
    the solver.
    """
    n = scenario.n_sectors
    if last_pass < 0:
        return not scenario.tasks
    residual = [scenario.resources[p % n] for p in range(last_pass + 1)]
    tasks = scenario.tasks

    def place(index):
        if index == len(tasks):
            return True
        task = tasks[index]
        for p in range(last_pass + 1):
            if angular_sector_distance(p % n, task.home_sector, n) > scenario.fov_half_width:
                continue
            if task.duration > residual[p] + CAP_SLACK:
                continue
            residual[p] -= task.duration
            if place(index + 1):
                return True
            residual[p] += task.duration
        return False

    return place(0)


def enumerate_min_passes(scenario, max_rotations=5):
    """Smallest feasible last pass by scanning objectives upward, or None."""
    for objective in range(max_rotations * scenario.n_sectors):
        if exists_schedule_within(scenario, objective):
            return objective
    return None


def brute_force_bin_packing(sizes, capacities):
    """Independent feasibility enumerator: items into bins, no FOV, no passes."""
    remaining = list(capacities)

    def place(index):
        if index == len(sizes):
            return True
        for b in range(len(remaining)):
            if sizes[index] <= remaining[b] + CAP_SLACK:
                remaining[b] -= sizes[index]
                if place(index + 1):
                    return True
                remaining[b] += sizes[index]
        return False

    return place(0)


class TestExactMinPasses:
    def test_three_sector_example(self, tri_scenario):
        solution = exact_min_passes(tri_scenario)
        assert solution.objective == 2  # one full rotation: passes 0, 1, 2
        assert solution.optimal
        assert check_assignment(tri_scenario, solution.assignments) == []
        assert enumerate_min_passes(tri_scenario) == 2

    def test_empty_task_set(self):
        s = scenario_from(3, 1, 1.0, (2.0,) * 3, [])
        solution = exact_min_passes(s)
        assert solution.objective == -1
        assert solution.optimal
        assert solution.assignments == {}

    def test_task_exceeding_every_capacity(self):
        s = scenario_from(2, 0, 1.0, (4.0, 4.0), [(0, 5.0)])
        with pytest.raises(InfeasibleScenarioError, match="task 0"):
            exact_min_passes(s)

    def test_limits_enforced(self, tri_scenario):
        with pytest.raises(LimitsExceededError):
            exact_min_passes(tri_scenario, SearchLimits(max_tasks=2))
        with pytest.raises(LimitsExceededError):
            exact_min_passes(tri_scenario, SearchLimits(max_sectors=2))
        with pytest.raises(InvalidInputError):
            SearchLimits(max_rotations=0)

    def test_needs_second_rotation(self):
        # Two tasks of 2 on a single sector of capacity 2: passes 0 and 1.
        s = scenario_from(1, 0, 1.0, (2.0,), [(0, 2.0), (0, 2.0)])
        solution = exact_min_passes(s)
        assert solution.objective == 1
        assert solution.assignments[0][0] == 0 and solution.assignments[1][0] == 0
        assert {rot for _, rot in solution.assignments.values()} == {0, 1}

    def test_matches_enumeration_on_random_instances(self):
        rng = Xorshift64Star(314)
        for _ in range(40):
            n = 1 + rng.randint(0, 3)
            tasks = [(rng.randint(0, n - 1), 0.5 + rng.uniform() * 3.0)
                     for _ in range(1 + rng.randint(0, 5))]
            s = scenario_from(n, rng.randint(0, n // 2), 1.0,
                              [3.5 + rng.uniform() * 5.0 for _ in range(n)], tasks)
            solution = exact_min_passes(s)
            assert solution.optimal
            # feasible at the claimed optimum, infeasible strictly below it
            assert check_assignment(s, solution.assignments) == []
            assert exists_schedule_within(s, solution.objective)
            assert not exists_schedule_within(s, solution.objective - 1)

    def test_never_beaten_by_greedy(self):
        rng = Xorshift64Star(2718)
        for _ in range(25):
            n = 2 + rng.randint(0, 3)
            tasks = [(rng.randint(0, n - 1), 0.5 + rng.uniform() * 3.0)
                     for _ in range(2 + rng.randint(0, 6))]
            s = scenario_from(n, rng.randint(0, n // 2), 1.0,
                              [4.0 + rng.uniform() * 6.0 for _ in range(n)], tasks)
            exact = exact_min_passes(s)
            trace = simulate(s, POLICY_PARTITION, equalize(s), cycles=1)
            assert exact.objective <= trace.completion_pass

    def test_replaying_the_assignment_reaches_the_objective(self):
        from sectorsched import check_trace, replay_assignment

        rng = Xorshift64Star(1618)
        for _ in range(25):
            n = 1 + rng.randint(0, 4)
            tasks = [(rng.randint(0, n - 1), 0.5 + rng.uniform() * 3.0)
                     for _ in range(1 + rng.randint(0, 6))]
            s = scenario_from(n, rng.randint(0, n // 2), 1.0,
                              [4.0 + rng.uniform() * 6.0 for _ in range(n)], tasks)
            solution = exact_min_passes(s)
            trace = replay_assignment(s, solution.assignments)
            assert trace.completion_pass == solution.objective
            assert check_trace(s, trace) == []


class TestCheckAssignment:
    def test_detects_overfull_pass(self, tri_scenario):
        bad = {0: (0, 0), 1: (0, 0), 2: (1, 0)}  # 4 s into sector 0's 2 s
        assert any("uses" in p for p in check_assignment(tri_scenario, bad))

    def test_detects_fov_breach(self):
        s = scenario_from(8, 1, 1.0, (9.0,) * 8, [(0, 1.0)])
        assert any("from home" in p for p in check_assignment(s, {0: (4, 0)}))

    def test_detects_missing_task(self, tri_scenario):
        assert any("never assigned" in p
                   for p in check_assignment(tri_scenario, {0: (0, 0)}))


class TestBinPackingReduce:
    def test_classic_feasible_pair(self):
        s = bin_packing_reduce([4, 3, 2, 1], [5, 5])
        assert s.n_sectors == 2 and s.fov_half_width == 1
        solution = exact_min_passes(s)
        assert solution.objective < s.n_sectors  # fits in one rotation
        assert brute_force_bin_packing([4, 3, 2, 1], [5, 5])

    def test_classic_infeasible_triple(self):
        s = bin_packing_reduce([3, 3, 3], [5, 5])
        solution = exact_min_passes(s)
        assert solution.objective >= s.n_sectors  # needs a second rotation
        assert not brute_force_bin_packing([3, 3, 3], [5, 5])

    def test_single_item_single_bin(self):
        s = bin_packing_reduce([1], [1])
        assert exact_min_passes(s).objective == 0

    def test_rejects_bad_values(self):
        with pytest.raises(InvalidInputError):
            bin_packing_reduce([], [1])
        with pytest.raises(InvalidInputError):
            bin_packing_reduce([1, -2], [3])
        with pytest.raises(InvalidInputError):
            bin_packing_reduce([1], [0])

    def test_every_sector_reachable(self):
        for bins in (1, 2, 3, 6, 7):
            s = bin_packing_reduce([1.0], [10.0] * bins)
            assert all(
                angular_sector_distance(j, s.tasks[0].home_sector, bins) <= s.fov_half_width
                for j in range(bins))

    def test_reduction_agrees_with_enumerator(self):
        rng = Xorshift64Star(777)
        for _ in range(25):
            bins = 2 + rng.randint(0, 2)
            caps = [4.0 + rng.uniform() * 8.0 for _ in range(bins)]
            sizes = [0.5 + rng.uniform() * (max(caps) - 0.5)
                     for _ in range(2 + rng.randint(0, 4))]
            s = bin_packing_reduce(sizes, caps)
            one_rotation = exact_min_passes(s).objective < bins
            assert one_rotation == brute_force_bin_packing(sizes, caps)


def test_total_demand_preserved_by_reduction():
    sizes = [4.0, 3.0, 2.0, 1.0]
    s = bin_packing_reduce(sizes, [5.0, 5.0])
    assert math.fsum(t.duration for t in s.tasks) == pytest.approx(10.0)

"""
Checking the heuristic against an exact solver
==============================================

On desk-scale instances a branch-and-bound search can minimize the number of
sector passes needed to update every direction, which makes it an oracle for
the greedy equalizer.  The same machinery decides bin packing: open the field
of view to the whole circle and ask whether everything fits into one
rotation.
"""

from sectorsched import (
    GenParams,
    POLICY_PARTITION,
    bin_packing_reduce,
    check_assignment,
    equalize,
    exact_min_passes,
    generate,
    simulate,
)

# A small random instance: 4 sectors, a dozen-ish tasks.
scenario = generate(GenParams(n_sectors=4, fov_half_width=1, seed=5,
                              tasks_per_sector=(2, 3), duration=(0.5, 4.0),
                              resources=(4.5, 10.0)))
print(f"{len(scenario.tasks)} tasks on {scenario.n_sectors} sectors")

solution = exact_min_passes(scenario)
print(f"exact optimum: last pass {solution.objective} "
      f"(= {solution.objective // scenario.n_sectors + 1} rotation(s)), "
      f"proved optimal: {solution.optimal}")
print(f"independent validity check: "
      f"{check_assignment(scenario, solution.assignments) or 'clean'}")

trace = simulate(scenario, POLICY_PARTITION, equalize(scenario), cycles=1)
print(f"greedy schedule completes at pass {trace.completion_pass} "
      f"(never below the exact optimum)")

# Bin packing through the same lens.
print()
for items, bins in ([4.0, 3.0, 2.0, 1.0], [5.0, 5.0]), ([3.0, 3.0, 3.0], [5.0, 5.0]):
    encoded = bin_packing_reduce(items, bins)
    objective = exact_min_passes(encoded).objective
    verdict = "fits" if objective < len(bins) else "does not fit"
    print(f"items {items} into bins {bins}: {verdict} "
          f"(last pass {objective}, one rotation = passes 0..{len(bins) - 1})")

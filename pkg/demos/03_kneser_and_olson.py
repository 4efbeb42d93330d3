"""Checking the Kneser and Olson sumset statements on explicit instances.

Each checker takes concrete sets, evaluates the hypotheses, and returns a
verdict with a witness dictionary: HOLDS, VIOLATED, or NOT_APPLICABLE when
a hypothesis fails. Nothing is sampled here; these are single instances
chosen to show each outcome.
"""

from cellkit import build_group, check_kneser, check_olson

z6 = build_group("Z6")

# -- Kneser: small sumsets are unions of cosets ---------------------------

# |XY| <= |X| + |Y| - 2 forces |XY| = |HX| + |HY| - |H| with H the
# stabilizer of XY, nontrivial. X = Y = {0,3} is the classic instance:
# the sumset is the subgroup {0,3} itself.
v = check_kneser(z6.subset([0, 3]), z6.subset([0, 3]))
print("Kneser on X = Y = {0,3}:", v.status.value)
for key in ("xy_size", "bound", "h", "rhs"):
    print(f"  {key} = {v.witness[key]}")

# a pair with a large sumset fails the hypothesis, so nothing is claimed
v = check_kneser(z6.subset([0, 1]), z6.subset([0, 1]))
print("\nKneser on X = Y = {0,1}:", v.status.value,
      "|", v.witness["failed_hypothesis"])

# the statement is abelian; on a nonabelian group the checker steps aside
# unless exploration is requested
d3 = build_group("D3")
print("\nKneser on D3:", check_kneser(d3.subset([0, 3]), d3.subset([0, 3])).status.value)
print("Kneser on D3 (explore):",
      check_kneser(d3.subset([0, 3]), d3.subset([0, 3]), explore=True).status.value)

# -- Olson: periodic sets that tell H and K apart -------------------------

# X is H-periodic but not K-periodic, Y the other way around; the symmetric
# difference is then at least |H| + |K| - 2|H n K|. This statement holds in
# every group, abelian or not.
h = z6.subset([0, 3])
k = z6.subset([0, 2, 4])
v = check_olson(x=h, y=k, h=h, k=k)
print("\nOlson on X = {0,3}, Y = {0,2,4}:", v.status.value)
for key in ("x_minus_y", "y_minus_x", "rhs"):
    print(f"  {key} = {v.witness[key]}")

# when X is K-periodic too, the hypotheses are not met
v = check_olson(x=z6.full_set(), y=k, h=h, k=k)
print("\nOlson on X = Z6:", v.status.value, "|", v.witness["failed_hypothesis"])

"""One subgroup that settles every translate: the sumset dichotomy.

For a fixed S, the attached subgroup H = H(S) has a remarkable property on
abelian groups: for every nonempty T, either TS is at least as large as
|T| + |S| - 1, or TS is a union of H-cosets bounded by |HS| + |HT| - |H|.
The point is that one H, computed from S alone, works for all T at once.
"""

from collections import Counter

from cellkit import balandraud_details, build_group, check_dichotomy, iter_bits

g = build_group("Z12")
s = g.subset([0, 1, 6, 7])

details = balandraud_details(s)
h = details.subgroup
print(f"S = {s.spec_string()}, H(S) = {h.spec_string()} "
      f"(u* = {details.u_star}, case {details.case})")

# -- both branches on hand-picked T ---------------------------------------

for t_idx in ([0, 2], [0, 6], [3], [0, 1, 2, 3]):
    t = g.subset(t_idx)
    v = check_dichotomy(s, h, t)
    w = v.witness
    extra = (f"|TS| = {w['ts_size']} >= {w['additive_bound']}"
             if w["branch"] == "additive"
             else f"|TS| = {w['ts_size']} <= {w['coset_bound']}, H-periodic")
    print(f"T = {t.spec_string():>12}: {v.status.value}  [{w['branch']}] {extra}")

# -- exhaustively, every nonempty T ---------------------------------------

branches = Counter()
worst = None
for t_bits in range(1, 1 << g.order):
    v = check_dichotomy(s, h, g.subset(iter_bits(t_bits)))
    branches[v.witness["branch"]] += 1
    if v.status.value != "HOLDS":
        worst = v
print(f"\nall {sum(branches.values())} nonempty T:", dict(branches))
print("any failure:", worst if worst else "none")

# -- how H is selected ----------------------------------------------------

# when no cell has a usable deficiency the subgroup generated by S steps in
simple = build_group("Z6").subset([0, 1, 2])
d = balandraud_details(simple)
print(f"\nS = {simple.spec_string()} in Z6: H(S) = {d.subgroup.spec_string()} "
      f"(case {d.case})")

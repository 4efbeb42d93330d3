"""Building finite groups and working with bitmask subsets.

Every group lives on element indices 0..n-1 with 0 as the identity, and a
subset is an immutable bitmask tied to its owner group. This walk-through
builds a few groups, inspects their structure, and shows the basic subset
algebra everything else is built on.
"""

from cellkit import all_subgroups, build_group, generated_subgroup, is_subgroup

# -- constructing groups from spec strings --------------------------------

z12 = build_group("Z12")
d4 = build_group("D4")
q8 = build_group("Q8")
product = build_group("Z2xZ6")

for g in (z12, d4, q8, product):
    print(f"{g.label}: order {g.order}, abelian {g.is_abelian}")

# the multiplication table is validated at construction: identity, Latin
# square, and associativity are all checked, so a typo in a hand-written
# table is caught immediately
print("\nD4 row for element 1 (a rotation):", d4.mul[1])
print("D4 row for element 4 (a reflection):", d4.mul[4])

# -- subsets as bitmasks --------------------------------------------------

s = z12.subset([0, 1, 6, 7])
t = z12.subset([6, 7, 8])
print("\nS =", s.spec_string(), " T =", t.spec_string())
print("S | T =", (s | t).spec_string())
print("S & T =", (s & t).spec_string())
print("S - T =", (s - t).spec_string())
print("complement of S =", s.complement().spec_string())
print("3 in S:", 3 in s, " 6 in S:", 6 in s, " |S| =", len(s))

# translation acts on one side at a time
print("2 + S =", s.left_translate(2).spec_string())

# -- subgroups ------------------------------------------------------------

print("\nsubgroup {0,6}?", is_subgroup(z12.subset([0, 6])))
print("subgroup {0,1}?", is_subgroup(z12.subset([0, 1])))

gen = generated_subgroup(z12, z12.subset([4, 6]))
print("subgroup generated by {4,6}:", gen.spec_string())

print("\nall subgroups of D4:")
for h in all_subgroups(d4):
    print(f"  {h.spec_string()}  (order {len(h)})")

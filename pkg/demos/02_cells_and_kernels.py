"""Cells, closures, kernels, and the deficiency of a subset.

Fix a subset S containing the identity. A cell of S is a nonempty X that is
exactly the set of elements z with zS inside XS; its deficiency is
|XS| - |X|. The minimal cells at each deficiency (the kernels) carry the
structure the sumset theorems are about, and Z12 with S = {0,1,6,7} is the
running example where everything is visible by hand.
"""

from cellkit import (
    balandraud_details,
    build_group,
    cell_closure,
    enumerate_cells,
    is_cell,
    kernel_chain,
    kernels_at,
    normalize_s,
)

g = build_group("Z12")
s = g.subset([0, 1, 6, 7])

# -- closures -------------------------------------------------------------

# the closure of a seed T is the largest X with XS = TS; it is always a cell
for seed in ([0], [0, 6], [2, 5]):
    rec = cell_closure(g.subset(seed), s)
    print(f"closure of {g.subset(seed).spec_string():>8} = {rec.cell.spec_string():>14}"
          f"  product {rec.product.spec_string()}  deficiency {rec.deficiency}")

print("\nis {0,6} a cell?", is_cell(g.subset([0, 6]), s))
print("is {0,1} a cell?", is_cell(g.subset([0, 1]), s))

# -- the full cell landscape ----------------------------------------------

cells = enumerate_cells(s, u_max=3)
by_u = {}
for c in cells:
    by_u.setdefault(c.deficiency, []).append(c)
print("\ncells by deficiency:", {u: len(v) for u, v in sorted(by_u.items())})

# kernels are the minimal-cardinality cells at one deficiency
k2 = kernels_at(s, 2, cells)
print("2-kernels:", [k.cell.spec_string() for k in k2.kernels])
print("the one containing the identity:", k2.unique_identity_kernel.cell.spec_string())

# -- the subgroup attached to S -------------------------------------------

details = balandraud_details(s)
print(f"\nattached subgroup H(S) = {details.subgroup.spec_string()}"
      f"  (u* = {details.u_star}, case {details.case})")

# subgroup kernels at different deficiencies nest into a chain
report = kernel_chain(s)
print("subgroup kernel chain:", [c.spec_string() for c in report.subgroup_kernel_chain])
print("chain ok:", report.chain_ok)

# -- sets without the identity --------------------------------------------

# cells only make sense when S contains the identity; normalize_s divides
# out the least element to arrange that without changing the structure
raw = g.subset([1, 7])
shifted, by = normalize_s(raw)
print(f"\n{raw.spec_string()} normalizes to {shifted.spec_string()} (divided out {by})")

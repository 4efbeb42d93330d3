"""Cell enumeration, closures, kernels, and the attached subgroup.

The oracles here replay the definitions with plain python sets: a cell of S
is a nonempty X equal to {z : zS is contained in XS}. Frozen values were
produced by these oracles and pinned.
"""

import pytest
from hypothesis import given, strategies as st

from cellkit import (
    ElementSet,
    EnumerationCapError,
    all_subgroups,
    balandraud_details,
    balandraud_subgroup,
    build_group,
    cell_closure,
    enumerate_cells,
    is_cell,
    kernel_chain,
    kernels_at,
    left_stabilizer,
    normalize_s,
    product,
)

Z6 = build_group("Z6")
Z8 = build_group("Z8")
Z12 = build_group("Z12")
D3 = build_group("D3")
D4 = build_group("D4")


# -- oracles --------------------------------------------------------------

def oracle_closure_bits(g, t_bits, s_bits):
    """closure(T) = {z : zS subset of TS}, computed with python sets."""
    s_idx = [b for b in range(g.order) if (s_bits >> b) & 1]
    p = {g.mul[z][b] for z in range(g.order) if (t_bits >> z) & 1 for b in s_idx}
    out = 0
    for z in range(g.order):
        if all(g.mul[z][b] in p for b in s_idx):
            out |= 1 << z
    return out


def oracle_cells_by_filter(g, s_bits):
    """Every cell, by testing each nonempty subset against the definition."""
    return {
        x for x in range(1, 1 << g.order)
        if oracle_closure_bits(g, x, s_bits) == x
    }


def oracle_cells_by_seeds(g, s_bits):
    """Every cell, as the set of closures of all nonempty seeds."""
    return {
        oracle_closure_bits(g, t, s_bits) for t in range(1, 1 << g.order)
    }


def identity_subsets(g, max_size):
    from itertools import combinations
    for size in range(1, max_size + 1):
        for combo in combinations(range(1, g.order), size - 1):
            bits = 1
            for i in combo:
                bits |= 1 << i
            yield bits


# -- enumeration agreement ------------------------------------------------

@pytest.mark.parametrize("g", [Z6, D3], ids=lambda g: g.label)
def test_enumeration_agrees_with_both_oracles(g):
    for s_bits in identity_subsets(g, 3):
        s = ElementSet(g, s_bits)
        got = {r.cell.bits for r in enumerate_cells(s, u_max=g.order)}
        assert got == oracle_cells_by_filter(g, s_bits), s.spec_string()
        assert got == oracle_cells_by_seeds(g, s_bits), s.spec_string()
        for r in enumerate_cells(s, u_max=g.order):
            assert r.product == product(r.cell, s)
            assert r.deficiency == len(r.product) - len(r.cell)


masks8 = st.integers(min_value=1, max_value=255)
idsets8 = st.integers(min_value=0, max_value=127).map(lambda m: (m << 1) | 1)


@given(masks8, idsets8, st.sampled_from(["Z8", "D4"]))
def test_closure_properties(t_bits, s_bits, spec):
    g = Z8 if spec == "Z8" else D4
    t, s = ElementSet(g, t_bits), ElementSet(g, s_bits)
    rec = cell_closure(t, s)
    # extensive, product-preserving, idempotent, and a fixed point
    assert t <= rec.cell
    assert rec.product == product(t, s) == product(rec.cell, s)
    assert cell_closure(rec.cell, s).cell == rec.cell
    assert is_cell(rec.cell, s)
    assert rec.cell.bits == oracle_closure_bits(g, t_bits, s_bits)


@given(masks8, idsets8, st.integers(min_value=0, max_value=7))
def test_cells_are_stable_under_left_translation(x_bits, s_bits, z):
    x, s = ElementSet(Z8, x_bits), ElementSet(Z8, s_bits)
    assert is_cell(x, s) == is_cell(x.left_translate(z), s)


@given(masks8, idsets8)
def test_stabilizer_subgroups_fix_cells(x_bits, s_bits):
    # any H inside stab(XS) has HXS = XS, which forces HX = X for a cell X
    x, s = ElementSet(Z8, x_bits), ElementSet(Z8, s_bits)
    rec = cell_closure(x, s)
    stab = left_stabilizer(rec.product).stabilizer
    for h in all_subgroups(Z8):
        if h <= stab:
            assert product(h, rec.cell) == rec.cell


# -- worked examples ------------------------------------------------------

def test_z12_worked_example():
    s = Z12.subset([0, 1, 6, 7])
    cells = enumerate_cells(s, u_max=3)
    by_u = {}
    for c in cells:
        by_u[c.deficiency] = by_u.get(c.deficiency, 0) + 1
    assert by_u == {0: 1, 2: 24}
    assert len(enumerate_cells(s, u_max=2)) == 25

    k2 = kernels_at(s, 2, cells)
    assert [k.cell.spec_string() for k in k2.kernels] == [
        "{0,6}", "{1,7}", "{2,8}", "{3,9}", "{4,10}", "{5,11}",
    ]
    assert k2.unique_identity_kernel.cell == Z12.subset([0, 6])
    assert k2.unique_identity_kernel.is_subgroup
    # the other 2-kernels are exactly the cosets of the identity one
    base = Z12.subset([0, 6])
    assert {k.cell.bits for k in k2.kernels} == {
        base.left_translate(a).bits for a in range(12)
    }

    k0 = kernels_at(s, 0, cells)
    assert k0.kernels[0].cell == Z12.full_set()
    assert kernels_at(s, 1, cells).kernels == ()
    assert kernels_at(s, 3, cells).unique_identity_kernel is None


def test_z12_balandraud_subgroup():
    s = Z12.subset([0, 1, 6, 7])
    details = balandraud_details(s)
    assert details.subgroup == Z12.subset([0, 6])
    assert details.u_star == 2
    assert details.case == "kernel"
    assert balandraud_subgroup(s) == Z12.subset([0, 6])


def test_z12_kernel_chain():
    report = kernel_chain(Z12.subset([0, 1, 6, 7]))
    assert [c.spec_string() for c in report.subgroup_kernel_chain] == [
        "{0,6}", "{0,1,2,3,4,5,6,7,8,9,10,11}",
    ]
    assert report.chain_ok
    assert report.violations == ()
    assert len(report.per_u) == 4


def test_z6_has_no_deficiency_one_cells():
    s = Z6.subset([0, 1, 2])
    cells = enumerate_cells(s, u_max=6)
    assert all(c.deficiency != 1 for c in cells)
    assert oracle_cells_by_filter(Z6, s.bits) == {c.cell.bits for c in cells}
    details = balandraud_details(s)
    assert details.case == "generated"
    assert details.u_star is None
    assert details.subgroup == Z6.full_set()


def test_balandraud_small_sets():
    assert balandraud_details(Z6.identity_set()).case == "trivial"
    assert balandraud_subgroup(Z6.identity_set()) == Z6.identity_set()
    # |S| = 2 leaves no room for a positive deficiency below |S| - 1
    d = balandraud_details(Z6.subset([0, 3]))
    assert d.case == "generated"
    assert d.subgroup == Z6.subset([0, 3])
    assert balandraud_subgroup(Z6.subset([0, 1])) == Z6.full_set()


def test_full_group_set_has_one_cell():
    for g in (Z6, D4):
        cells = enumerate_cells(g.full_set(), u_max=g.order)
        assert len(cells) == 1
        assert cells[0].cell == g.full_set()
        assert cells[0].deficiency == 0


# -- modes, ordering, and refusals ----------------------------------------

def test_enumeration_is_sorted_and_capped_by_umax():
    s = Z12.subset([0, 1, 6, 7])
    cells = enumerate_cells(s, u_max=0)
    assert [c.deficiency for c in cells] == [0]
    cells = enumerate_cells(s, u_max=2)
    keys = [(c.deficiency, len(c.cell), c.cell.bits) for c in cells]
    assert keys == sorted(keys)


def test_sampled_mode_is_a_deterministic_subset():
    s = Z8.subset([0, 1, 4])
    full = {r.cell.bits for r in enumerate_cells(s, u_max=8)}
    a = enumerate_cells(s, u_max=8, mode="sampled", count=200, seed=7)
    b = enumerate_cells(s, u_max=8, mode="sampled", count=200, seed=7)
    assert [r.cell.bits for r in a] == [r.cell.bits for r in b]
    assert {r.cell.bits for r in a} <= full
    assert len(a) > 0


def test_sampled_mode_requires_count_and_seed():
    s = Z8.subset([0, 1])
    with pytest.raises(ValueError, match="count and seed"):
        enumerate_cells(s, u_max=8, mode="sampled")
    with pytest.raises(ValueError, match="unknown enumeration mode"):
        enumerate_cells(s, u_max=8, mode="guess")


def test_enumeration_refuses_orders_above_cap():
    g = build_group("Z21")
    s = g.subset([0, 1])
    with pytest.raises(EnumerationCapError, match="2\\^21"):
        enumerate_cells(s, u_max=1)
    # a fresh instance, because a memoized enumeration is served without
    # consulting the cap
    fresh = build_group("Z12")
    with pytest.raises(EnumerationCapError):
        balandraud_details(fresh.subset([0, 1, 6, 7]), cap=10)


def test_cells_require_identity_and_nonempty():
    with pytest.raises(ValueError, match="identity"):
        enumerate_cells(Z6.subset([1, 2]), u_max=2)
    with pytest.raises(ValueError, match="nonempty"):
        is_cell(Z6.empty_set(), Z6.subset([0, 1]))
    with pytest.raises(ValueError, match="nonempty"):
        cell_closure(Z6.empty_set(), Z6.subset([0, 1]))
    with pytest.raises(ValueError, match="u_max"):
        enumerate_cells(Z6.subset([0, 1]), u_max=-1)


def test_normalize_s():
    s, shifted = normalize_s(Z12.subset([1, 7]))
    assert s == Z12.subset([0, 6])
    assert shifted == 1
    s, shifted = normalize_s(Z12.subset([0, 5]))
    assert s == Z12.subset([0, 5])
    assert shifted == 0
    with pytest.raises(ValueError, match="empty"):
        normalize_s(Z12.empty_set())
    # nonabelian: divide out on the right, so the identity lands in the set
    s, shifted = normalize_s(D4.subset([4, 5]))
    assert shifted == 4
    assert s.contains_identity
    assert len(s) == 2

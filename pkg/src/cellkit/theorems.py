"""Executable verifiers for the sumset theorems, plus sweep orchestration.

Each check_* function evaluates one statement on one concrete instance and
returns a TheoremVerdict: HOLDS, VIOLATED (with a witness carrying both
sides), or NOT_APPLICABLE when a hypothesis fails. Statements proved only
for abelian groups can be run on nonabelian groups in exploration mode,
where a failed conclusion is reported as FINDING rather than VIOLATED.
run_sweep drives the checkers over whole families of instances.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .cells import (
    ENUMERATION_CAP,
    CellRecord,
    EnumerationCapError,
    balandraud_details,
    enumerate_cells,
    is_cell,
    kernel_chain,
    kernels_at,
    left_translate_masks,
)
from .groups import ElementSet, Group, all_subgroups, build_group, is_subgroup, iter_bits, require_same_group
from .setops import difference_counts, left_stabilizer, product
from .specs import expand_subset_specs, iter_identity_subsets, sample_identity_subsets


class Theorem(str, Enum):
    KNESER = "KNESER"
    OLSON = "OLSON"
    CELL_INTERSECT = "CELL_INTERSECT"
    SUBGROUP_KERNEL_CHAIN = "SUBGROUP_KERNEL_CHAIN"
    COROLLARY_I = "COROLLARY_I"
    COROLLARY_II = "COROLLARY_II"
    COROLLARY_III = "COROLLARY_III"
    DICHOTOMY = "DICHOTOMY"


class Status(str, Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    FINDING = "FINDING"


@dataclass(frozen=True, slots=True)
class TheoremVerdict:
    """Outcome of one checker on one instance."""

    theorem: Theorem
    status: Status
    witness: dict | None = None


def _na(theorem: Theorem, failed_hypothesis: str, base: dict) -> TheoremVerdict:
    return TheoremVerdict(theorem, Status.NOT_APPLICABLE,
                          dict(base, failed_hypothesis=failed_hypothesis))


def _conclude(theorem: Theorem, ok: bool, witness: dict, explore: bool) -> TheoremVerdict:
    if ok:
        return TheoremVerdict(theorem, Status.HOLDS, witness)
    return TheoremVerdict(theorem, Status.FINDING if explore else Status.VIOLATED, witness)


def check_kneser(x: ElementSet, y: ElementSet, *, explore: bool = False) -> TheoremVerdict:
    """|XY| <= |X|+|Y|-2 forces |XY| = |HX|+|HY|-|H| for a nontrivial H = stab(XY).

    An abelian statement: on a nonabelian group the verdict is
    NOT_APPLICABLE, or FINDING on failure with explore=True.
    """
    g = require_same_group(x, y)
    if not x or not y:
        raise ValueError("the Kneser check needs nonempty x and y")
    base = {"group": g.label, "x": x.spec_string(), "y": y.spec_string()}
    if not g.is_abelian and not explore:
        return _na(Theorem.KNESER, "group is not abelian", base)
    xy = product(x, y)
    base["xy_size"] = len(xy)
    base["bound"] = len(x) + len(y) - 2
    if len(xy) > len(x) + len(y) - 2:
        return _na(Theorem.KNESER, "|XY| <= |X|+|Y|-2 does not hold", base)
    h = left_stabilizer(xy).stabilizer
    hx, hy = product(h, x), product(h, y)
    witness = dict(base, h=h.spec_string(), h_size=len(h), hx_size=len(hx),
                   hy_size=len(hy), rhs=len(hx) + len(hy) - len(h))
    ok = len(xy) == witness["rhs"] and len(h) > 1
    return _conclude(Theorem.KNESER, ok, witness, explore and not g.is_abelian)


def check_olson(x: ElementSet, y: ElementSet, h: ElementSet, k: ElementSet) -> TheoremVerdict:
    """HX=X, KY=Y, KX!=X, HY!=Y force |X\\Y| + |Y\\X| >= |H|+|K|-2|H n K|.

    Also checks the disjunction |X\\Y| >= |H|-|H n K| or |Y\\X| >= |K|-|H n K|.
    Valid in every group, so there is no abelian gate.
    """
    g = require_same_group(x, y, h, k)
    if not is_subgroup(h):
        raise ValueError(f"h = {h.spec_string()} is not a subgroup of {g.label}")
    if not is_subgroup(k):
        raise ValueError(f"k = {k.spec_string()} is not a subgroup of {g.label}")
    base = {"group": g.label, "x": x.spec_string(), "y": y.spec_string(),
            "h": h.spec_string(), "k": k.spec_string()}
    if product(h, x) != x:
        return _na(Theorem.OLSON, "HX = X does not hold", base)
    if product(k, y) != y:
        return _na(Theorem.OLSON, "KY = Y does not hold", base)
    if product(k, x) == x:
        return _na(Theorem.OLSON, "KX != X does not hold", base)
    if product(h, y) == y:
        return _na(Theorem.OLSON, "HY != Y does not hold", base)
    dxy, dyx = difference_counts(x, y)
    meet = len(h & k)
    witness = dict(base, x_minus_y=dxy, y_minus_x=dyx, h_size=len(h), k_size=len(k),
                   meet_size=meet, rhs=len(h) + len(k) - 2 * meet)
    ok = dxy + dyx >= witness["rhs"] and (dxy >= len(h) - meet or dyx >= len(k) - meet)
    return _conclude(Theorem.OLSON, ok, witness, explore=False)


def check_cell_intersection(s: ElementSet, m1: ElementSet, m2: ElementSet) -> TheoremVerdict:
    """A nonempty intersection of two cells of s is again a cell of s."""
    g = require_same_group(s, m1, m2)
    if not is_cell(m1, s):
        raise ValueError(f"m1 = {m1.spec_string()} is not a cell of s = {s.spec_string()}")
    if not is_cell(m2, s):
        raise ValueError(f"m2 = {m2.spec_string()} is not a cell of s = {s.spec_string()}")
    base = {"group": g.label, "s": s.spec_string(), "m1": m1.spec_string(), "m2": m2.spec_string()}
    inter = m1 & m2
    if not inter:
        return _na(Theorem.CELL_INTERSECT, "intersection is empty", base)
    witness = dict(base, intersection=inter.spec_string())
    return _conclude(Theorem.CELL_INTERSECT, is_cell(inter, s), witness, explore=False)


def check_theorem_subgroup_kernels(s: ElementSet, *, cap: int = ENUMERATION_CAP) -> TheoremVerdict:
    """Subgroup kernels nest: for a subgroup u-kernel M and subgroup v-cell N
    with u, v <= |S|-1, (i) M and N are comparable when N is a v-kernel or
    u = v, and (ii) M lies inside N when N is a v-kernel with v <= u.

    Valid in every group. The first violating pair, if any, is the witness.
    """
    _require_identity_in(s)
    g = s.group
    size = len(s)
    base = {"group": g.label, "s": s.spec_string()}
    cells = enumerate_cells(s, u_max=size - 1, cap=cap)
    kernel_bits: dict[int, set[int]] = {}
    for u in range(size):
        kernel_bits[u] = {c.cell.bits for c in kernels_at(s, u, cells).kernels}
    subgroup_cells = [c for c in cells if c.is_subgroup]
    subgroup_kernels = [c for c in subgroup_cells if c.cell.bits in kernel_bits[c.deficiency]]
    for m in subgroup_kernels:
        u = m.deficiency
        for n in subgroup_cells:
            v = n.deficiency
            n_is_kernel = n.cell.bits in kernel_bits[v]
            comparable = m.cell <= n.cell or n.cell <= m.cell
            pair = dict(base, m=m.cell.spec_string(), u=u, n=n.cell.spec_string(), v=v,
                        n_is_kernel=n_is_kernel)
            if (n_is_kernel or u == v) and not comparable:
                return TheoremVerdict(Theorem.SUBGROUP_KERNEL_CHAIN, Status.VIOLATED,
                                      dict(pair, part="i", reason="incomparable pair"))
            if n_is_kernel and v <= u and not m.cell <= n.cell:
                return TheoremVerdict(Theorem.SUBGROUP_KERNEL_CHAIN, Status.VIOLATED,
                                      dict(pair, part="ii", reason="M not contained in N"))
    witness = dict(base, subgroup_kernels=[c.cell.spec_string() for c in subgroup_kernels])
    return TheoremVerdict(Theorem.SUBGROUP_KERNEL_CHAIN, Status.HOLDS, witness)


def check_corollary_kernel_structure(s: ElementSet, *, explore: bool = False,
                                     cap: int = ENUMERATION_CAP) -> list[TheoremVerdict]:
    """The three-part kernel structure statement for abelian groups.

    For each deficiency u in 1..|S|-2 attained by a cell, the identity-
    containing u-kernel M must be unique and a subgroup (part I), every
    u-cell must be M-periodic (part II), and each identity-containing
    v-kernel with u < v <= |S|-2 must be a proper subgroup of M (part III).
    Returns one verdict per part, in order.
    """
    _require_identity_in(s)
    g = s.group
    size = len(s)
    base = {"group": g.label, "s": s.spec_string()}
    parts = (Theorem.COROLLARY_I, Theorem.COROLLARY_II, Theorem.COROLLARY_III)
    if not g.is_abelian and not explore:
        return [_na(p, "group is not abelian", base) for p in parts]
    if size < 3:
        return [_na(p, "deficiency range 1..|S|-2 is empty", base) for p in parts]
    soft = explore and not g.is_abelian
    cells = enumerate_cells(s, u_max=size - 2, cap=cap)
    by_u: dict[int, list[CellRecord]] = {}
    for c in cells:
        by_u.setdefault(c.deficiency, []).append(c)
    inhabited = [u for u in range(1, size - 1) if by_u.get(u)]
    if not inhabited:
        return [_na(p, "no cell has deficiency in 1..|S|-2", dict(base, inhabited=False))
                for p in parts]
    base["inhabited_u"] = inhabited
    id_kernels: dict[int, list[CellRecord]] = {}
    for u in inhabited:
        rec = kernels_at(s, u, cells)
        id_kernels[u] = [c for c in rec.kernels if c.contains_identity]
    fail: dict[Theorem, dict] = {}
    for u in inhabited:
        named = id_kernels[u]
        m = named[0] if named else None
        if Theorem.COROLLARY_I not in fail:
            if len(named) != 1:
                fail[Theorem.COROLLARY_I] = dict(
                    base, u=u,
                    reason=f"expected one identity-containing u-kernel, found {len(named)}",
                    kernels=[c.cell.spec_string() for c in named])
            elif not m.is_subgroup:
                fail[Theorem.COROLLARY_I] = dict(
                    base, u=u, reason="identity-containing u-kernel is not a subgroup",
                    m=m.cell.spec_string())
        if m is None:
            continue
        if Theorem.COROLLARY_II not in fail:
            for c in by_u[u]:
                if product(m.cell, c.cell) != c.cell:
                    fail[Theorem.COROLLARY_II] = dict(
                        base, u=u, m=m.cell.spec_string(), cell=c.cell.spec_string(),
                        reason="u-cell is not M-periodic")
                    break
        if Theorem.COROLLARY_III not in fail:
            for v in inhabited:
                if v <= u:
                    continue
                for n in id_kernels[v]:
                    proper = n.is_subgroup and n.cell < m.cell
                    if not proper:
                        fail[Theorem.COROLLARY_III] = dict(
                            base, u=u, v=v, m=m.cell.spec_string(), n=n.cell.spec_string(),
                            reason="v-kernel is not a proper subgroup of M")
                        break
                if Theorem.COROLLARY_III in fail:
                    break
    out = []
    for p in parts:
        if p in fail:
            out.append(_conclude(p, False, fail[p], soft))
        else:
            out.append(TheoremVerdict(p, Status.HOLDS, dict(base)))
    return out


def check_dichotomy(s: ElementSet, h: ElementSet, t: ElementSet, *,
                    explore: bool = False) -> TheoremVerdict:
    """Either |TS| >= |T|+|S|-1, or TS is H-periodic with |TS| <= |HS|+|HT|-|H|.

    The caller supplies h, normally balandraud_subgroup(s): the strength of
    the statement is that one H serves every T. An abelian statement; on a
    nonabelian group the verdict is NOT_APPLICABLE, or FINDING on failure
    with explore=True.
    """
    g = require_same_group(s, h, t)
    _require_identity_in(s)
    if not t:
        raise ValueError("the dichotomy check needs a nonempty t")
    base = {"group": g.label, "s": s.spec_string(), "h": h.spec_string(), "t": t.spec_string()}
    if not g.is_abelian and not explore:
        return _na(Theorem.DICHOTOMY, "group is not abelian", base)
    ts = product(t, s)
    base["ts_size"] = len(ts)
    base["additive_bound"] = len(t) + len(s) - 1
    if len(ts) >= len(t) + len(s) - 1:
        return TheoremVerdict(Theorem.DICHOTOMY, Status.HOLDS, dict(base, branch="additive"))
    hs, ht = product(h, s), product(h, t)
    periodic = product(h, ts) == ts
    witness = dict(base, branch="periodic", periodic=periodic, hs_size=len(hs),
                   ht_size=len(ht), h_size=len(h), coset_bound=len(hs) + len(ht) - len(h))
    ok = periodic and len(ts) <= witness["coset_bound"]
    return _conclude(Theorem.DICHOTOMY, ok, witness, explore and not g.is_abelian)


def _require_identity_in(s: ElementSet) -> None:
    if not s.bits & 1:
        raise ValueError(f"s = {s.spec_string()} does not contain the identity")


# -- sweep orchestration --------------------------------------------------

DRIVER_NAMES = ("kneser", "olson", "intersection", "chain", "corollary", "dichotomy")


class SweepConfigError(ValueError):
    """A sweep configuration that cannot be run as stated."""


@dataclass
class SweepConfig:
    """What to verify: groups, theorems, instance spaces, and bounds."""

    groups: tuple[str, ...]
    theorems: tuple[str, ...]
    mode: str = "exhaustive"
    samples: int = 100_000
    s_samples: int = 5
    seed: int | None = None
    s_min: int = 1
    s_max: int | None = None
    set_spec: str | None = None
    wide: bool = False
    jobs: int = 1
    enumeration_cap: int = ENUMERATION_CAP
    max_instances: int = 1 << 22
    violation_cap: int = 200
    finding_cap: int = 200

    def validate(self) -> None:
        if not self.groups:
            raise SweepConfigError("no groups selected")
        if not self.theorems:
            raise SweepConfigError("no theorems selected")
        for name in self.theorems:
            if name not in DRIVER_NAMES:
                raise SweepConfigError(
                    f"unknown theorem {name!r}; expected one of {', '.join(DRIVER_NAMES)}")
        if self.mode not in ("exhaustive", "sampled"):
            raise SweepConfigError(f"unknown mode {self.mode!r}; expected exhaustive or sampled")
        if self.mode == "sampled":
            if self.seed is None:
                raise SweepConfigError("sampled mode requires a seed")
            if self.samples < 1 or self.s_samples < 1:
                raise SweepConfigError("sampled mode requires positive samples and s_samples")
        if self.jobs < 1:
            raise SweepConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.s_min < 1:
            raise SweepConfigError(f"s_min must be at least 1, got {self.s_min}")
        if self.s_max is not None and self.s_max < self.s_min:
            raise SweepConfigError(f"s_max {self.s_max} is below s_min {self.s_min}")


@dataclass
class SweepResult:
    """Aggregated outcome of a sweep."""

    summary: dict
    violations: list[dict]
    findings: list[dict]
    errors: list[dict]

    @property
    def violated(self) -> int:
        return self.summary["totals"].get(Status.VIOLATED.value, 0)


class _SweepState:
    def __init__(self, sink: Callable[[dict], None] | None,
                 violation_cap: int, finding_cap: int) -> None:
        self.sink = sink
        self.counts: dict[tuple[str, str, str], int] = {}
        self.violations: list[dict] = []
        self.findings: list[dict] = []
        self.errors: list[dict] = []
        self.exploration: set[tuple[str, str]] = set()
        self.violation_cap = violation_cap
        self.finding_cap = finding_cap

    def tally(self, theorem: str, group: str, status: str, k: int = 1) -> None:
        if k:
            key = (theorem, group, status)
            self.counts[key] = self.counts.get(key, 0) + k

    def add(self, group: str, verdict: TheoremVerdict) -> None:
        self.tally(verdict.theorem.value, group, verdict.status.value)
        record = {"kind": "verdict", "theorem": verdict.theorem.value, "group": group,
                  "status": verdict.status.value, "witness": verdict.witness}
        if verdict.status is Status.VIOLATED and len(self.violations) < self.violation_cap:
            self.violations.append(record)
        elif verdict.status is Status.FINDING and len(self.findings) < self.finding_cap:
            self.findings.append(record)
        if self.sink is not None:
            self.sink(record)

    def bulk(self, theorem: Theorem, group: str, status: Status, k: int) -> None:
        self.tally(theorem.value, group, status.value, k)

    def error(self, theorem: Theorem, group: str, message: str) -> None:
        record = {"kind": "error", "theorem": theorem.value, "group": group, "message": message}
        self.errors.append(record)
        if self.sink is not None:
            self.sink(record)

    def note_exploration(self, theorem: Theorem, group: str) -> None:
        self.exploration.add((theorem.value, group))


def _derive_seed(*parts: object) -> int:
    text = "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def _random_nonempty_subset(g: Group, rng: random.Random) -> ElementSet:
    k = rng.randint(1, g.order)
    bits = 0
    for i in rng.sample(range(g.order), k):
        bits |= 1 << i
    return ElementSet(g, bits)


def _s_space(g: Group, cfg: SweepConfig, seed: int) -> list[ElementSet]:
    if cfg.set_spec is not None:
        sets = expand_subset_specs(cfg.set_spec, g)
        bad = [s for s in sets if not s.bits & 1]
        if bad:
            raise SweepConfigError(
                f"--set produced {bad[0].spec_string()}, which lacks the identity")
        return sets
    hi = g.order if cfg.s_max is None else min(cfg.s_max, g.order)
    if cfg.mode == "sampled":
        rng = random.Random(f"{seed}|s-space")
        return sample_identity_subsets(g, cfg.s_min, hi, cfg.s_samples, rng)
    return list(iter_identity_subsets(g, cfg.s_min, hi))


def _right_coset_masks(g: Group, h_bits: int) -> list[int]:
    """Masks of the right cosets Hx, in order of least uncovered element."""
    masks = []
    seen = 0
    for x in range(g.order):
        if (seen >> x) & 1:
            continue
        m = 0
        for h in iter_bits(h_bits):
            m |= 1 << g.mul[h][x]
        masks.append(m)
        seen |= m
    return masks


def _product_size(g: Group, a_bits: int, b_bits: int) -> int:
    bits = 0
    for a in iter_bits(a_bits):
        row = g.mul[a]
        for b in iter_bits(b_bits):
            bits |= 1 << row[b]
    return bits.bit_count()


# -- kneser sweep ---------------------------------------------------------

def _right_translate_tables(g: Group) -> list[np.ndarray]:
    """tables[y][x_bits] = bits of X*y, for every element y."""
    n = g.order
    tables = []
    for y in range(n):
        col = [g.mul[x][y] for x in range(n)]
        t = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            t[m] = t[m ^ low] | (1 << col[low.bit_length() - 1])
        tables.append(np.array(t, dtype=np.uint32))
    return tables


def _sweep_kneser(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    tag = Theorem.KNESER
    explore = not g.is_abelian
    if explore:
        state.note_exploration(tag, g.label)
    if cfg.mode == "sampled":
        rng = random.Random(f"{seed}|pairs")
        for _ in range(cfg.samples):
            x = _random_nonempty_subset(g, rng)
            y = _random_nonempty_subset(g, rng)
            state.add(g.label, check_kneser(x, y, explore=explore))
        return
    n = g.order
    total = ((1 << n) - 1) ** 2
    if total > cfg.max_instances:
        state.error(tag, g.label,
                    f"exhaustive pair space {total} exceeds max_instances {cfg.max_instances}")
        return
    if state.sink is not None:
        for y_bits in range(1, 1 << n):
            y = ElementSet(g, y_bits)
            for x_bits in range(1, 1 << n):
                state.add(g.label, check_kneser(ElementSet(g, x_bits), y, explore=explore))
        return
    # counting path: a vectorized prefilter on the hypothesis, then scalar
    # checks on the surviving pairs. Saturated products XY = G are resolved
    # in bulk: their stabilizer is G, so the equality holds automatically.
    tables = _right_translate_tables(g)
    pc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int16)
    full = np.uint32((1 << n) - 1)
    for y_bits in range(1, 1 << n):
        xy = np.zeros(1 << n, dtype=np.uint32)
        for z in iter_bits(y_bits):
            xy |= tables[z]
        hyp = np.bitwise_count(xy).astype(np.int16) <= pc + np.int16(y_bits.bit_count() - 2)
        hyp[0] = False
        saturated = hyp & (xy == full)
        state.bulk(tag, g.label, Status.HOLDS, int(saturated.sum()))
        cand = np.nonzero(hyp & ~saturated)[0]
        state.bulk(tag, g.label, Status.NOT_APPLICABLE, (1 << n) - 1 - len(cand) - int(saturated.sum()))
        y = ElementSet(g, y_bits)
        for x_bits in cand.tolist():
            state.add(g.label, check_kneser(ElementSet(g, int(x_bits)), y, explore=explore))


# -- olson sweep ----------------------------------------------------------

def _coset_unions(g: Group, h_bits: int) -> list[int]:
    """Every nonempty union of right cosets of H, ascending."""
    cosets = _right_coset_masks(g, h_bits)
    c = len(cosets)
    out = [0] * (1 << c)
    for m in range(1, 1 << c):
        low = m & -m
        out[m] = out[m ^ low] | cosets[low.bit_length() - 1]
    return sorted(out[1:])


def _sweep_olson(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    tag = Theorem.OLSON
    subs = all_subgroups(g)
    unions = {h.bits: _coset_unions(g, h.bits) for h in subs}
    if cfg.mode == "sampled":
        rng = random.Random(f"{seed}|olson")
        for _ in range(cfg.samples):
            h = subs[rng.randrange(len(subs))]
            k = subs[rng.randrange(len(subs))]
            hu, ku = unions[h.bits], unions[k.bits]
            x = ElementSet(g, hu[rng.randrange(len(hu))])
            y = ElementSet(g, ku[rng.randrange(len(ku))])
            state.add(g.label, check_olson(x, y, h, k))
        return
    per_side = sum(len(u) for u in unions.values())
    if per_side * per_side > cfg.max_instances:
        state.error(tag, g.label,
                    f"exhaustive coset-union space {per_side}^2 exceeds max_instances {cfg.max_instances}")
        return
    for h in subs:
        for k in subs:
            ku = unions[k.bits]
            for x_bits in unions[h.bits]:
                x = ElementSet(g, x_bits)
                for y_bits in ku:
                    state.add(g.label, check_olson(x, ElementSet(g, y_bits), h, k))


# -- cell intersection sweep ----------------------------------------------

def _sweep_intersection(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    tag = Theorem.CELL_INTERSECT
    for s in _s_space(g, cfg, seed):
        try:
            cells = enumerate_cells(s, u_max=g.order, cap=cfg.enumeration_cap)
        except EnumerationCapError as exc:
            state.error(tag, g.label, str(exc))
            return
        pairs = len(cells) * (len(cells) - 1) // 2
        if pairs > cfg.max_instances:
            state.error(tag, g.label,
                        f"{len(cells)} cells give {pairs} pairs, above max_instances {cfg.max_instances}")
            return
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                state.add(g.label, check_cell_intersection(s, cells[i].cell, cells[j].cell))


# -- chain sweep ----------------------------------------------------------

def _sweep_chain(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    tag = Theorem.SUBGROUP_KERNEL_CHAIN
    for s in _s_space(g, cfg, seed):
        try:
            verdict = check_theorem_subgroup_kernels(s, cap=cfg.enumeration_cap)
            report = kernel_chain(s, cap=cfg.enumeration_cap)
        except EnumerationCapError as exc:
            state.error(tag, g.label, str(exc))
            return
        witness = dict(verdict.witness or {})
        witness["chain_ok"] = report.chain_ok
        witness["chain"] = [c.spec_string() for c in report.subgroup_kernel_chain]
        if verdict.status is Status.HOLDS and not report.chain_ok:
            v = report.violations[0]
            witness["reason"] = v.reason
            witness["pair"] = [v.first.cell.spec_string(), v.second.cell.spec_string()]
            verdict = TheoremVerdict(tag, Status.VIOLATED, witness)
        else:
            verdict = TheoremVerdict(tag, verdict.status, witness)
        state.add(g.label, verdict)


# -- corollary sweep ------------------------------------------------------

def _sweep_corollary(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    explore = not g.is_abelian
    if explore:
        for part in (Theorem.COROLLARY_I, Theorem.COROLLARY_II, Theorem.COROLLARY_III):
            state.note_exploration(part, g.label)
    for s in _s_space(g, cfg, seed):
        try:
            verdicts = check_corollary_kernel_structure(s, explore=explore, cap=cfg.enumeration_cap)
        except EnumerationCapError as exc:
            state.error(Theorem.COROLLARY_I, g.label, str(exc))
            return
        for v in verdicts:
            state.add(g.label, v)


# -- dichotomy sweep ------------------------------------------------------

def _dichotomy_batch(g: Group, s_bits: int, h_bits: int, t_arr: np.ndarray) -> np.ndarray:
    """Vectorized dichotomy evaluation over an array of T bitmasks."""
    n = g.order
    dtype = t_arr.dtype.type
    lt = left_translate_masks(g, s_bits)
    p = np.zeros_like(t_arr)
    for z in range(n):
        sel = ((t_arr >> dtype(z)) & dtype(1)).astype(bool)
        p |= np.where(sel, dtype(lt[z]), dtype(0))
    pc_t = np.bitwise_count(t_arr).astype(np.int32)
    pc_p = np.bitwise_count(p).astype(np.int32)
    s_size = s_bits.bit_count()
    additive = pc_p >= pc_t + (s_size - 1)
    cosets = _right_coset_masks(g, h_bits)
    periodic = np.ones(len(t_arr), dtype=bool)
    t_cosets = np.zeros(len(t_arr), dtype=np.int32)
    for c in cosets:
        cm = dtype(c)
        q = p & cm
        periodic &= (q == 0) | (q == cm)
        t_cosets += ((t_arr & cm) != 0)
    h_size = h_bits.bit_count()
    hs_size = _product_size(g, h_bits, s_bits)
    coset_ok = periodic & (pc_p <= hs_size + h_size * t_cosets - h_size)
    return additive | coset_ok


def _sampled_t_masks(g: Group, count: int, rng: np.random.Generator) -> np.ndarray:
    n = g.order
    dtype = np.uint32 if n <= 31 else np.uint64
    sizes = rng.integers(1, n + 1, size=count)
    order = np.argsort(rng.random((count, n)), axis=1, kind="stable")
    keep = np.arange(n)[None, :] < sizes[:, None]
    powers = (np.uint64(1) << order.astype(np.uint64))
    bits = np.where(keep, powers, np.uint64(0)).sum(axis=1, dtype=np.uint64)
    return bits.astype(dtype)


def _sweep_dichotomy(g: Group, cfg: SweepConfig, state: _SweepState, seed: int) -> None:
    tag = Theorem.DICHOTOMY
    explore = not g.is_abelian
    if explore:
        state.note_exploration(tag, g.label)
    n = g.order
    dtype = np.uint32 if n <= 31 else np.uint64
    for s in _s_space(g, cfg, seed):
        try:
            details = balandraud_details(s, cap=cfg.enumeration_cap)
        except EnumerationCapError as exc:
            state.error(tag, g.label, str(exc))
            return
        h = details.subgroup
        if cfg.mode == "exhaustive":
            total = (1 << n) - 1
            if total > cfg.max_instances:
                state.error(tag, g.label,
                            f"exhaustive T space {total} exceeds max_instances {cfg.max_instances}")
                return
            batches = [np.arange(1, 1 << n, dtype=dtype)]
        else:
            rng = np.random.default_rng(_derive_seed(seed, s.bits, "t-draws"))
            batches = []
            remaining = cfg.samples
            while remaining > 0:
                take = min(remaining, 1 << 17)
                batches.append(_sampled_t_masks(g, take, rng))
                remaining -= take
        for t_arr in batches:
            if state.sink is not None:
                for t_bits in t_arr.tolist():
                    state.add(g.label, check_dichotomy(s, h, ElementSet(g, int(t_bits)),
                                                       explore=explore))
                continue
            holds = _dichotomy_batch(g, s.bits, h.bits, t_arr)
            state.bulk(tag, g.label, Status.HOLDS, int(holds.sum()))
            for t_bits in t_arr[~holds].tolist():
                state.add(g.label, check_dichotomy(s, h, ElementSet(g, int(t_bits)),
                                                   explore=explore))


_DRIVERS = {
    "kneser": _sweep_kneser,
    "olson": _sweep_olson,
    "intersection": _sweep_intersection,
    "chain": _sweep_chain,
    "corollary": _sweep_corollary,
    "dichotomy": _sweep_dichotomy,
}


def _run_task(g: Group, theorem: str, cfg: SweepConfig, state: _SweepState) -> None:
    seed = _derive_seed(cfg.seed if cfg.seed is not None else 0, g.label, theorem)
    _DRIVERS[theorem](g, cfg, state, seed)


def _worker(args: tuple[str, str, SweepConfig, bool]) -> dict:
    spec, theorem, cfg, collect = args
    records: list[dict] | None = [] if collect else None
    state = _SweepState(records.append if records is not None else None,
                        cfg.violation_cap, cfg.finding_cap)
    _run_task(build_group(spec, wide=cfg.wide), theorem, cfg, state)
    return {
        "records": records,
        "counts": [(list(k), v) for k, v in state.counts.items()],
        "violations": state.violations,
        "findings": state.findings,
        "errors": state.errors,
        "exploration": sorted(state.exploration),
    }


def run_sweep(config: SweepConfig, sink: Callable[[dict], None] | None = None) -> SweepResult:
    """Run the configured checks, streaming records to sink when given.

    The stream and the summary are deterministic functions of the
    configuration: tasks run in (group, theorem) listing order and sampled
    draws are seeded per task, so the jobs count never changes the output.
    """
    config.validate()
    tasks = [(spec, theorem) for spec in config.groups for theorem in config.theorems]
    groups = {spec: build_group(spec, wide=config.wide) for spec in config.groups}
    state = _SweepState(sink, config.violation_cap, config.finding_cap)
    if config.jobs <= 1 or len(tasks) <= 1:
        for spec, theorem in tasks:
            _run_task(groups[spec], theorem, config, state)
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            args = [(spec, theorem, config, sink is not None) for spec, theorem in tasks]
            for part in pool.map(_worker, args):
                for key, v in part["counts"]:
                    state.tally(key[0], key[1], key[2], v)
                for rec in part["violations"]:
                    if len(state.violations) < config.violation_cap:
                        state.violations.append(rec)
                for rec in part["findings"]:
                    if len(state.findings) < config.finding_cap:
                        state.findings.append(rec)
                state.errors.extend(part["errors"])
                state.exploration.update(tuple(e) for e in part["exploration"])
                if sink is not None and part["records"]:
                    for rec in part["records"]:
                        sink(rec)
    counts: dict[str, dict[str, dict[str, int]]] = {}
    totals: dict[str, int] = {}
    instances = 0
    for (theorem, group, status), k in sorted(state.counts.items()):
        counts.setdefault(theorem, {}).setdefault(group, {})[status] = k
        totals[status] = totals.get(status, 0) + k
        instances += k
    summary = {
        "instances": instances,
        "counts": counts,
        "totals": dict(sorted(totals.items())),
        "exploration": [list(e) for e in sorted(state.exploration)],
        "errors": len(state.errors),
    }
    return SweepResult(summary=summary, violations=state.violations,
                       findings=state.findings, errors=state.errors)

"""Set-level primitives: product sets, stabilizers, periodicity, differences."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import ElementSet, is_subgroup, iter_bits, require_same_group


@dataclass(frozen=True, slots=True)
class StabilizerResult:
    """A left stabilizer together with the set it stabilizes."""

    stabilizer: ElementSet
    target: ElementSet


def product(x: ElementSet, s: ElementSet) -> ElementSet:
    """The product set {a*b : a in x, b in s}; empty if either factor is."""
    g = require_same_group(x, s)
    bits = 0
    for a in iter_bits(x.bits):
        row = g.mul[a]
        for b in iter_bits(s.bits):
            bits |= 1 << row[b]
    return ElementSet(g, bits)


def left_stabilizer(a: ElementSet) -> StabilizerResult:
    """The subgroup {g : g*a = a} of elements fixing a under left translation.

    Refuses the empty set, whose stabilizer would degenerate to the whole
    group.
    """
    if not a:
        raise ValueError("left stabilizer of the empty set is degenerate; pass a nonempty set")
    g = a.group
    bits = 0
    for z in range(g.order):
        row = g.mul[z]
        translated = 0
        for x in iter_bits(a.bits):
            translated |= 1 << row[x]
        if translated == a.bits:
            bits |= 1 << z
    return StabilizerResult(ElementSet(g, bits), a)


def is_periodic(a: ElementSet, h: ElementSet) -> bool:
    """True iff h*a = a. Requires h to be a subgroup."""
    require_same_group(a, h)
    if not is_subgroup(h):
        raise ValueError(f"h = {h.spec_string()} is not a subgroup of {h.group.label}")
    return product(h, a).bits == a.bits


def difference_counts(x: ElementSet, y: ElementSet) -> tuple[int, int]:
    """The pair (|x \\ y|, |y \\ x|)."""
    require_same_group(x, y)
    return ((x.bits & ~y.bits).bit_count(), (y.bits & ~x.bits).bit_count())

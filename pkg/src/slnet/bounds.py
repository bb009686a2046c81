"""Poset polynomials bounding the cycle structure of a multi-component network.

The strongly connected components of the dependency graph, ordered by
reachability, determine two integer polynomials in one variable per
component. Evaluating them at the components' exact cycle structures
sandwiches the cycle structure of the whole network from below and above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .cycles import CycleStructure, product_structure, strongly_connected_structure
from .graphs import (POSET_SIZE_CAP, Poset, SccDecomposition, build_poset,
                     loop_number_scc, scc_decompose)
from .operators import find_neutral
from .phasespace import Network, NetworkSpec, RawNetwork

UPPER_POLY_CAP = 12


class NoNeutralError(ValueError):
    """The operator has no neutral element, so the sandwich bounds do not apply."""


class StructPolynomial:
    """Integer polynomial in z1..zt whose monomials are square-free.

    Terms map a variable subset to its coefficient; the empty subset is the
    constant term. Canonical term order is lexicographic on the sorted
    variable tuple, which reproduces collected textbook printings like
    ``-2 + z1 + z2 z3 + z4``.
    """

    __slots__ = ("_nvars", "_terms")

    def __init__(self, nvars: int,
                 terms: Union[Mapping[frozenset, int],
                              Iterable[tuple[Iterable[int], int]]] = ()):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self._nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[frozenset[int], int] = {}
        for support, coeff in items:
            support = frozenset(int(k) for k in support)
            if any(not 0 <= k < nvars for k in support):
                raise ValueError(f"variable index outside [0, {nvars})")
            coeff = int(coeff)
            acc[support] = acc.get(support, 0) + coeff
        self._terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def from_bitmasks(cls, nvars: int,
                      masks: Mapping[int, int]) -> "StructPolynomial":
        terms = []
        for mask, coeff in masks.items():
            support = [k for k in range(nvars) if mask >> k & 1]
            terms.append((support, coeff))
        return cls(nvars, terms)

    @property
    def nvars(self) -> int:
        return self._nvars

    def coefficient(self, support: Iterable[int]) -> int:
        return self._terms.get(frozenset(support), 0)

    def items(self) -> tuple[tuple[frozenset[int], int], ...]:
        return tuple(sorted(self._terms.items(),
                            key=lambda kv: tuple(sorted(kv[0]))))

    def terms(self) -> dict[frozenset[int], int]:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructPolynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"StructPolynomial({self._nvars}, {self.render()!r})"

    def render(self) -> str:
        items = self.items()
        if not items:
            return "0"
        parts = []
        for support, coeff in items:
            mono = " ".join(f"z{k + 1}" for k in sorted(support))
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag} {mono}"
            else:
                body = str(mag)
            parts.append((coeff < 0, body))
        negative, body = parts[0]
        text = ("-" if negative else "") + body
        for negative, body in parts[1:]:
            text += (" - " if negative else " + ") + body
        return text


def maximal_antichains(poset: Poset) -> tuple[frozenset[int], ...]:
    """Every maximal antichain, sorted; exhaustive up to the size cap.

    Recursive include/exclude over elements with comparability masks: a set
    is an antichain when no chosen pair is comparable and maximal when each
    element is comparable to some member.
    """
    t = poset.size
    if t > POSET_SIZE_CAP:
        raise ValueError(
            f"poset has {t} elements, enumeration capped at {POSET_SIZE_CAP}; "
            "decompose the network first")
    comp = []
    for i in range(t):
        mask = 0
        for j in range(t):
            if poset.comparable(i, j):
                mask |= 1 << j
        comp.append(mask)
    full = (1 << t) - 1
    found: list[int] = []

    def grow(i: int, chosen: int, forbidden: int, covered: int) -> None:
        if i == t:
            if covered == full:
                found.append(chosen)
            return
        bit = 1 << i
        if not forbidden & bit:
            grow(i + 1, chosen | bit, forbidden | comp[i], covered | comp[i])
        future = full & ~((bit << 1) - 1)
        if covered & bit or comp[i] & future & ~forbidden:
            grow(i + 1, chosen, forbidden, covered)

    grow(0, 0, 0, 0)
    sets = [frozenset(k for k in range(t) if mask >> k & 1) for mask in found]
    return tuple(sorted(sets, key=sorted))


def lower_polynomial(antichains: Sequence[frozenset[int]],
                     nvars: int) -> StructPolynomial:
    """Alternating sum over nonempty antichain subfamilies.

    A subfamily of size s contributes sign (-1)**(s+1) on the monomial of
    its intersection (the empty intersection is the constant term). Rather
    than walking all 2**families subfamilies, fold families in one at a
    time, tracking net weights per distinct intersection.
    """
    masks = []
    for chain in antichains:
        mask = 0
        for k in chain:
            if not 0 <= k < nvars:
                raise ValueError(f"antichain member {k} outside [0, {nvars})")
            mask |= 1 << k
        masks.append(mask)
    weights: dict[int, int] = {}
    for mask in masks:
        merged = dict(weights)
        for inter, w in weights.items():
            key = inter & mask
            merged[key] = merged.get(key, 0) - w
        merged[mask] = merged.get(mask, 0) + 1
        weights = {k: v for k, v in merged.items() if v}
    return StructPolynomial.from_bitmasks(nvars, weights)


def _iter_subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def upper_polynomial(poset: Poset) -> StructPolynomial:
    """Quadruple alternating sum over closed set pairs of the poset.

    For every nested pair I within N the union of N with the down-set of I
    is weighted by (-1)**(|I|+|N|); likewise with up-sets on the other
    side. Pairs of disjoint closures contribute their weight product on the
    monomial of the leftover variables. Grouping by closure first cuts the
    raw 9**t terms to 2*3**t plus one pass over distinct closure pairs.
    """
    t = poset.size
    if t > UPPER_POLY_CAP:
        raise ValueError(
            f"poset has {t} elements, the alternating sum is capped at "
            f"{UPPER_POLY_CAP}")
    below = []
    above = []
    for j in range(t):
        down = 0
        up = 0
        for k in range(t):
            if poset.is_leq(k, j):
                down |= 1 << k
            if poset.is_leq(j, k):
                up |= 1 << k
        below.append(down)
        above.append(up)
    full = (1 << t) - 1

    def closure_weights(closures: list[int]) -> dict[int, int]:
        weights: dict[int, int] = {}
        for outer in range(full + 1):
            outer_bits = outer.bit_count()
            for inner in _iter_subsets(outer):
                closed = outer
                rest = inner
                while rest:
                    low = rest & -rest
                    closed |= closures[low.bit_length() - 1]
                    rest ^= low
                sign = -1 if (outer_bits + inner.bit_count()) & 1 else 1
                weights[closed] = weights.get(closed, 0) + sign
        return {k: v for k, v in weights.items() if v}

    down_weights = closure_weights(below)
    up_weights = closure_weights(above)
    terms: dict[int, int] = {}
    for down_mask, a in down_weights.items():
        for up_mask, b in up_weights.items():
            if down_mask & up_mask == 0:
                key = full & ~(down_mask | up_mask)
                terms[key] = terms.get(key, 0) + a * b
    return StructPolynomial.from_bitmasks(t, terms)


def evaluate(poly: StructPolynomial,
             values: Sequence[CycleStructure]) -> CycleStructure:
    """Evaluate at one cycle structure per variable.

    Monomials multiply out under the cycle-structure product; the constant
    term contributes that many fixed-point cycles (length 1); everything is
    summed coefficient-wise.
    """
    if len(values) != poly.nvars:
        raise ValueError(
            f"polynomial has {poly.nvars} variables, got {len(values)} values")
    unit = CycleStructure({1: 1})
    total = CycleStructure()
    for support, coeff in poly.items():
        term = unit
        for k in sorted(support):
            term = term * values[k]
        total = total + coeff * term
    return total


@dataclass(eq=False)
class NetworkAnalysis:
    """Everything the closed-form pipeline derives from one network.

    ``lower``/``upper`` are the sandwich bounds (None when they do not
    apply); ``product`` is the always-valid disjoint-union upper bound;
    ``exact`` marks the strongly connected case where all of these collapse
    to the true cycle structure.
    """

    decomposition: SccDecomposition
    nontrivial: tuple[int, ...]
    loop_numbers: tuple[int, ...]
    loop_number: int
    poset: Poset
    structures: tuple[CycleStructure, ...]
    l_poly: StructPolynomial
    u_poly: StructPolynomial
    lower: Optional[CycleStructure]
    upper: Optional[CycleStructure]
    product: CycleStructure
    exact: bool
    warnings: tuple[str, ...]


def bound_network(net: Network, require_neutral: bool = True) -> NetworkAnalysis:
    """Derive exact per-component structures and the network-wide bounds.

    Strongly connected graphs get the exact answer on both sides. Otherwise
    the sandwich bounds require the operator to own a neutral element; with
    ``require_neutral`` they are refused without one (extend_with_neutral
    adjoins one if that is acceptable), else they are left unset and only
    the product bound is reported.
    """
    m = net.m
    decomposition = scc_decompose(net.graph)
    nontrivial = decomposition.nontrivial_indices()
    if not nontrivial:
        raise ValueError("network has no nontrivial component; nothing cycles")
    warnings = []
    if len(nontrivial) != decomposition.count:
        skipped = decomposition.count - len(nontrivial)
        warnings.append(
            f"{skipped} trivial component(s) excluded from the analysis; "
            "their edges still order the rest")
    loops = tuple(loop_number_scc(net.graph, decomposition.components[i])
                  for i in nontrivial)
    overall = math.lcm(*loops)
    structures = tuple(strongly_connected_structure(m, c) for c in loops)
    poset = build_poset(decomposition).restrict(nontrivial)
    product = product_structure(structures)

    if isinstance(net, RawNetwork):
        warnings.append("raw update tables: bounds are predictions for the "
                        "fold network on this graph, not guarantees")
    elif net.unchecked:
        warnings.append("operator axioms unchecked: bounds are predictions, "
                        "not guarantees")

    if len(nontrivial) == 1:
        only = structures[0]
        single = StructPolynomial(1, [((0,), 1)])
        return NetworkAnalysis(
            decomposition, nontrivial, loops, overall, poset, structures,
            l_poly=single, u_poly=single, lower=only, upper=only,
            product=product, exact=True, warnings=tuple(warnings))

    antichains = maximal_antichains(poset)
    l_poly = lower_polynomial(antichains, poset.size)
    u_poly = upper_polynomial(poset)

    neutral_ok = True
    if isinstance(net, NetworkSpec) and not net.unchecked:
        if find_neutral(net.operator) is None:
            if require_neutral:
                raise NoNeutralError(
                    "operator has no neutral element, so the sandwich bounds "
                    "do not apply; extend_with_neutral adjoins one")
            neutral_ok = False
            warnings.append(
                "operator has no neutral element: only the component product "
                "upper bound applies (extend_with_neutral would adjoin one)")

    lower = evaluate(l_poly, structures) if neutral_ok else None
    upper = evaluate(u_poly, structures) if neutral_ok else None
    return NetworkAnalysis(
        decomposition, nontrivial, loops, overall, poset, structures,
        l_poly=l_poly, u_poly=u_poly, lower=lower, upper=upper,
        product=product, exact=False, warnings=tuple(warnings))

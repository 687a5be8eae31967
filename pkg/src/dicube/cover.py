"""The constraint-set cover of plane configurations indexed by double orders,
in exact rational arithmetic: membership, witness points, reading an order
off a configuration, and the cover verification report (completeness,
properness, equivariance, coverage by random configurations).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import ContractError, ResourceCapError
from .orders import (
    DoubleOrder,
    enumerate_orders,
    rel_closure,
    rel_from_pairs,
    rel_is_irreflexive,
    rel_subset,
    to_regular,
    union_bar,
    union_cycle_witness,
)

Config = dict  # label -> (Fraction, Fraction)


def u_contains(o: DoubleOrder, f: Config) -> bool:
    """True iff every ordered pair of o translates into a strict coordinate
    inequality of f; comparisons are exact rationals."""
    pos = list(o.labels)
    for i, a in enumerate(pos):
        for j, b in enumerate(pos):
            if o.x[i] >> j & 1 and not f[a][0] < f[b][0]:
                return False
            if o.y[i] >> j & 1 and not f[a][1] < f[b][1]:
                return False
    return True


def _linear_extension_ranks(o: DoubleOrder, rel) -> dict:
    """Ranks 1..n of a total extension; minimal available element with the
    smallest label index goes first, so the extension is deterministic."""
    n = o.n
    remaining = set(range(n))
    ranks = {}
    next_rank = 1
    while remaining:
        available = sorted(
            i for i in remaining if not any(rel[j] >> i & 1 for j in remaining if j != i)
        )
        if not available:
            raise ContractError("relation has a cycle; no linear extension")
        i = available[0]
        ranks[o.labels[i]] = next_rank
        next_rank += 1
        remaining.discard(i)
    return ranks


def witness_point(o: DoubleOrder) -> Config:
    """A configuration inside the constraint set: coordinates are the rank
    functions of total extensions of the two components."""
    hx = _linear_extension_ranks(o, o.x)
    hy = _linear_extension_ranks(o, o.y)
    return {a: (Fraction(hx[a]), Fraction(hy[a])) for a in o.labels}


def is_injective_configuration(f: Config) -> bool:
    points = list(f.values())
    return len(set(points)) == len(points)


def point_to_order(f: Config, labels: Sequence) -> DoubleOrder:
    """The regular order of an injective configuration: x compares first
    coordinates, y breaks first-coordinate ties by the second."""
    labels = tuple(labels)
    if not is_injective_configuration(f):
        raise ContractError("configuration is not injective")
    n = len(labels)
    x_pairs = []
    y_pairs = []
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if f[a][0] < f[b][0]:
                x_pairs.append((i, j))
            elif f[a][0] == f[b][0] and f[a][1] < f[b][1]:
                y_pairs.append((i, j))
    o = DoubleOrder(labels, rel_from_pairs(n, x_pairs), rel_from_pairs(n, y_pairs))
    if not o.is_regular:
        raise AssertionError("configuration must induce a regular order")
    if not u_contains(o, f):
        raise AssertionError("configuration must lie in its own constraint set")
    return o


def separating_witness(o1: DoubleOrder, o2: DoubleOrder) -> Optional[Config]:
    """A configuration in the o2 constraint set violating some o1 constraint;
    None when o1 is contained in o2 componentwise."""
    for name in ("x", "y"):
        r1 = getattr(o1, name)
        r2 = getattr(o2, name)
        for i in range(o1.n):
            for j in range(o1.n):
                if r1[i] >> j & 1 and not r2[i] >> j & 1:
                    if r2[j] >> i & 1:
                        return witness_point(o2)
                    flipped = rel_closure(
                        tuple(
                            row | (1 << i if k == j else 0) for k, row in enumerate(r2)
                        )
                    )
                    if not rel_is_irreflexive(flipped):
                        raise AssertionError("adding a reverse pair to an incomparable pair cycled")
                    if name == "x":
                        stronger = DoubleOrder(o2.labels, flipped, o2.y)
                    else:
                        stronger = DoubleOrder(o2.labels, o2.x, flipped)
                    return witness_point(stronger)
    return None


def random_configuration(labels: Sequence, rng: random.Random, spread: int = 12) -> Config:
    """Random injective rational configuration; small coordinate ranges make
    first-coordinate ties (and hence y comparisons) common."""
    labels = tuple(labels)
    while True:
        f = {
            a: (
                Fraction(rng.randint(-spread, spread), rng.randint(1, 4)),
                Fraction(rng.randint(-spread, spread), rng.randint(1, 4)),
            )
            for a in labels
        }
        if is_injective_configuration(f):
            return f


def config_to_json_dict(f: Config) -> dict:
    return {
        "points": {
            str(a): [f"{xy[0].numerator}/{xy[0].denominator}", f"{xy[1].numerator}/{xy[1].denominator}"]
            for a, xy in sorted(f.items())
        }
    }


def config_from_json_dict(data: Mapping) -> Config:
    return {a: (Fraction(x), Fraction(y)) for a, (x, y) in data["points"].items()}


@dataclass
class CoverReport:
    labels: tuple
    family: str  # "semi-regular" or "regular"
    completeness_ok: bool = True
    properness_ok: bool = True
    equivariance_ok: bool = True
    covering_ok: bool = True
    intersections_checked: int = 0
    nonempty_intersections: int = 0
    samples_covered: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.completeness_ok
            and self.properness_ok
            and self.equivariance_ok
            and self.covering_ok
        )


def _sigma_index_maps(labels: tuple) -> list[tuple[dict, dict]]:
    import itertools

    out = []
    for image in itertools.permutations(labels):
        sigma = dict(zip(labels, image))
        out.append((sigma, {v: k for k, v in sigma.items()}))
    return out


def verify_cover(labels, samples: int = 1000, seed: int = 0) -> CoverReport:
    """Exact verification of the cover properties over the semi-regular family
    (3 labels at most; 4 labels fall back to the regular-only sub-checks).

    Completeness: pairwise intersections are again members (witnessed) or
    empty (cycle witnessed).  Properness: a member and its image under a
    non-identity permutation never meet, via the regular retraction.
    Equivariance: permuting a member's constraints gives the permuted
    member's constraints.  Covering: random injective configurations all lie
    in the set of the regular order they induce.
    """
    labels = tuple(labels)
    n = len(labels)
    if n <= 3:
        family_name = "semi-regular"
        family = enumerate_orders(labels, "semi-regular")
    elif n == 4:
        family_name = "regular"
        family = enumerate_orders(labels, "regular")
    else:
        raise ResourceCapError("cover verification is capped at 4 labels")
    report = CoverReport(labels, family_name)
    keys = {o.key() for o in family}

    # completeness + the intersection rule, both directions constructive
    for a in family:
        for b in family:
            report.intersections_checked += 1
            u = union_bar(a, b)
            if u is not None:
                if family_name == "semi-regular" and u.key() not in keys:
                    report.completeness_ok = False
                    report.failures.append(
                        {"check": "completeness", "pair": [a.text(), b.text()], "union": u.text()}
                    )
                    continue
                w = witness_point(u)
                if not (u_contains(a, w) and u_contains(b, w) and u_contains(u, w)):
                    report.completeness_ok = False
                    report.failures.append(
                        {"check": "intersection-witness", "pair": [a.text(), b.text()]}
                    )
                else:
                    report.nonempty_intersections += 1
            else:
                cyc = union_cycle_witness(a, b)
                if cyc is None:
                    report.completeness_ok = False
                    report.failures.append(
                        {"check": "cycle-witness", "pair": [a.text(), b.text()]}
                    )
                # a cycle a0 < a1 < ... < a0 in one component makes the joint
                # constraint set unsatisfiable; nothing further to test

    # properness via the regular retraction, plus the direct union criterion
    for sigma, _ in _sigma_index_maps(labels):
        if all(sigma[a] == a for a in labels):
            continue
        for o in family:
            o_s = o.act(sigma)
            if union_bar(o, o_s) is not None:
                report.properness_ok = False
                report.failures.append(
                    {"check": "properness-union", "order": o.text(), "sigma": str(sigma)}
                )
                continue
            r = to_regular(o) if family_name == "semi-regular" else o
            if union_bar(r, r.act(sigma)) is not None:
                report.properness_ok = False
                report.failures.append(
                    {"check": "properness-retraction", "order": o.text(), "sigma": str(sigma)}
                )

    # equivariance as constraint-set equality
    for sigma, inv in _sigma_index_maps(labels):
        for o in family:
            o_s = o.act(sigma)
            expected_x = {(inv[labels[i]], inv[labels[j]]) for i in range(n) for j in range(n) if o.x[i] >> j & 1}
            got_x = {(labels[i], labels[j]) for i in range(n) for j in range(n) if o_s.x[i] >> j & 1}
            expected_y = {(inv[labels[i]], inv[labels[j]]) for i in range(n) for j in range(n) if o.y[i] >> j & 1}
            got_y = {(labels[i], labels[j]) for i in range(n) for j in range(n) if o_s.y[i] >> j & 1}
            if expected_x != got_x or expected_y != got_y:
                report.equivariance_ok = False
                report.failures.append(
                    {"check": "equivariance", "order": o.text(), "sigma": str(sigma)}
                )

    # covering by random configurations
    rng = random.Random(seed)
    regulars = {o.key() for o in enumerate_orders(labels, "regular")}
    for _ in range(samples):
        f = random_configuration(labels, rng)
        o = point_to_order(f, labels)
        if o.key() in regulars and u_contains(o, f):
            report.samples_covered += 1
        else:
            report.covering_ok = False
            report.failures.append(
                {"check": "covering", "config": config_to_json_dict(f)}
            )
    return report


def nerve_retraction_check(labels, max_subset_size: Optional[int] = None, seed: int = 0) -> bool:
    """The retraction between nonempty-intersection index sets and members:
    intersecting then collecting supersets is the identity on members, and
    every index set is contained in the collection of its intersection.

    Exhaustive over all index sets for 2 labels; for larger ground sets the
    pairs, triples, and a seeded sample of larger subsets are checked.
    """
    import itertools

    labels = tuple(labels)
    family = enumerate_orders(labels, "semi-regular")
    keys = {o.key(): o for o in family}

    def bar_union(group):
        acc = group[0]
        for o in group[1:]:
            acc = union_bar(acc, o)
            if acc is None:
                return None
        return acc

    # Phi(Psi(o)) == o for every member
    for o in family:
        below = [u for u in family if rel_subset(u.x, o.x) and rel_subset(u.y, o.y)]
        joined = bar_union(below)
        if joined is None or joined.key() != o.key():
            return False

    # J subset of Psi(Phi(J)) for index sets J with nonempty intersection
    if len(labels) <= 2:
        groups = []
        for r in range(1, len(family) + 1):
            groups.extend(itertools.combinations(range(len(family)), r))
    else:
        groups = list(itertools.combinations(range(len(family)), 2))
        groups += list(itertools.combinations(range(len(family)), 3))
        rng = random.Random(seed)
        for _ in range(200):
            size = rng.randint(4, min(6, len(family)))
            groups.append(tuple(sorted(rng.sample(range(len(family)), size))))
    for group in groups:
        members = [family[i] for i in group]
        joined = bar_union(members)
        if joined is None:
            continue
        if joined.key() not in keys:
            return False
        for o in members:
            if not (rel_subset(o.x, joined.x) and rel_subset(o.y, joined.y)):
                return False
    return True

"""The named verification suite: each registered check runs one family of
exhaustive propositions at a requested size and reports pass/fail with a
reproducible counterexample payload on failure.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .categories import (
    break_functor,
    break_hom_count_oracle,
    build_break_category,
    check_functoriality,
    composable_run_counts,
    nerve_complex,
    nerve_orbit_complex,
    symmetric_order_quotient,
)
from .chains import ChainOrder, CubeChain, enumerate_chains, face_swap
from .complexes import build_final_complex, build_ordered_cover, default_labels, permutations_of
from .cover import verify_cover
from .errors import ResourceCapError, UsageError
from .homology import euler_characteristic, homology, homology_to_json, same_homology
from .orders import (
    chain_to_double_order,
    chain_union,
    double_order_to_chain,
    enumerate_orders,
    poset_leq,
    to_regular,
    union_bar,
)
from .precubical import is_non_self_linked, quotient_by_automorphisms


@dataclass
class VerificationReport:
    id: str
    params: dict
    status: str  # pass | fail | skipped
    details: object = None
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "details": self.details,
            "wall_time": round(self.wall_time, 6),
        }


def _pass(details=None) -> tuple[str, object]:
    return "pass", details


def _fail(details) -> tuple[str, object]:
    return "fail", details


# -- individual checks -----------------------------------------------------------


def check_chain_order_iso(n_max: int, **_) -> tuple[str, object]:
    """Chains of the ordered cover against (regular orders, reverse mixed
    order): mutually inverse, order tables equal, relabeling-equivariant."""
    counts = {}
    for n in range(1, min(n_max, 4) + 1):
        labels = default_labels(n)
        cover = build_ordered_cover(labels)
        order = ChainOrder(cover.complex)
        chains = enumerate_chains(cover.complex)
        regs = enumerate_orders(labels, "regular")
        if len(chains) != len(regs):
            return _fail({"n": n, "chains": len(chains), "regular_orders": len(regs)})
        images = [chain_to_double_order(cover, c) for c in chains]
        if len({o.key() for o in images}) != len(images):
            return _fail({"n": n, "reason": "chain-to-order map is not injective"})
        if {o.key() for o in images} != {o.key() for o in regs}:
            return _fail({"n": n, "reason": "chain-to-order map is not onto"})
        for c, o in zip(chains, images):
            if double_order_to_chain(cover, o) != c:
                return _fail({"n": n, "chain": c.text(cover.complex), "reason": "round trip"})
        for i, a in enumerate(chains):
            for j, b in enumerate(chains):
                chain_le = order.leq(a, b)
                order_le = poset_leq(images[j], images[i], "sqsubseteq")
                if chain_le != order_le:
                    return _fail(
                        {
                            "n": n,
                            "pair": [a.text(cover.complex), b.text(cover.complex)],
                            "chain_leq": chain_le,
                            "order_geq": order_le,
                        }
                    )
        for sigma in permutations_of(labels):
            aut = cover.automorphism(sigma)
            for c, o in zip(chains, images):
                moved = CubeChain(tuple(aut(cell) for cell in c.cells))
                if chain_to_double_order(cover, moved).key() != o.act(sigma).key():
                    return _fail({"n": n, "sigma": str(sigma), "chain": c.text(cover.complex)})
        counts[n] = len(chains)
    return _pass({"poset_sizes": counts})


def check_orbit_iso(n_max: int, **_) -> tuple[str, object]:
    """Quotient of the ordered cover by all relabelings matches the length
    covering of the final complex, cell for cell."""
    results = {}
    for n in range(1, min(n_max, 5) + 1):
        cover = build_ordered_cover(n)
        Q, _proj = quotient_by_automorphisms(cover.complex, cover.symmetric_group())
        from .complexes import build_final_covering

        Z, zalt = build_final_covering(n)
        if Q.dims != Z.dims:
            return _fail({"n": n, "quotient_dims": list(Q.dims), "expected": list(Z.dims)})
        # match orbit cells to covering cells by (dimension, altitude)
        assign = []
        for d in range(Q.max_dim + 1):
            layer = []
            for k in range(Q.dims[d]):
                rep = cover.complex.cell_of_label(Q.label((d, k)))
                alt = cover.cover_cell(rep).altitude
                layer.append(Z.cell_of_label(f"z{d}_{alt}")[1])
            assign.append(layer)
        from .precubical import PrecubicalMap

        try:
            iso = PrecubicalMap(Q, Z, assign)
        except Exception as exc:  # face commutation failure
            return _fail({"n": n, "reason": str(exc)})
        if not (iso.is_isomorphism() and iso.is_bipointed):
            return _fail({"n": n, "reason": "orbit map is not a bipointed isomorphism"})
        results[n] = list(Q.dims)
    return _pass({"dims": results})


def check_non_self_linked(n_max: int, target: str = "ordered-cover", **_) -> tuple[str, object]:
    """The ordered cover is non-self-linked; the truncated final complex is
    not (reported as a failure with its counterexample cell)."""
    if target == "final-truncated":
        z = build_final_complex(2)
        report = is_non_self_linked(z)
        if report.ok:
            return _fail({"reason": "truncated final complex unexpectedly non-self-linked"})
        return _fail(
            {
                "model": "z",
                "max_dim": 2,
                "cell": z.label(report.cell),
                "collision": [list(report.collision[0]), list(report.collision[1])],
            }
        )
    if target != "ordered-cover":
        raise UsageError(f"unknown non-self-linked target {target!r}")
    for n in range(1, min(n_max, 4) + 1):
        cover = build_ordered_cover(n)
        report = is_non_self_linked(cover.complex)
        if not report.ok:
            return _fail({"n": n, "cell": cover.complex.label(report.cell)})
    z = build_final_complex(2)
    control = is_non_self_linked(z)
    if control.ok:
        return _fail({"reason": "truncated final complex unexpectedly non-self-linked"})
    return _pass({"n_checked": min(n_max, 4), "control_counterexample": z.label(control.cell)})


def check_face_swap(n_max: int, **_) -> tuple[str, object]:
    """The constructive swap identity, symbolically verified on the standard
    cube for every compatible (p, q, V, W) with p + q <= n_max."""
    bound = min(n_max, 7) if n_max >= 2 else n_max
    cases = 0
    for p in range(0, bound + 1):
        for q in range(0, bound + 1 - p):
            for v_bits in range(1 << p):
                V = frozenset(i + 1 for i in range(p) if v_bits >> i & 1)
                for w_bits in range(1 << q):
                    W = frozenset(i + 1 for i in range(q) if w_bits >> i & 1)
                    if p - len(V) != q - len(W):
                        continue
                    face_swap(p, q, V, W)  # raises if the identity fails
                    cases += 1
    return _pass({"cases": cases, "max_p_plus_q": bound})


def check_free_action(n_max: int, **_) -> tuple[str, object]:
    """Relabelings act freely on the double orders."""
    counts = {}
    for n in range(1, min(n_max, 4) + 1):
        labels = default_labels(n)
        family = enumerate_orders(labels, "double")
        for sigma in permutations_of(labels):
            if all(sigma[a] == a for a in labels):
                continue
            for o in family:
                if o.act(sigma).key() == o.key():
                    return _fail({"n": n, "order": o.text(), "sigma": str(sigma)})
        counts[n] = len(family)
    return _pass({"double_orders": counts})


def check_union_sigma(n_max: int, **_) -> tuple[str, object]:
    """A regular order never unions consistently with a proper relabeling of
    itself."""
    counts = {}
    for n in range(1, min(n_max, 4) + 1):
        labels = default_labels(n)
        family = enumerate_orders(labels, "regular")
        for sigma in permutations_of(labels):
            identity = all(sigma[a] == a for a in labels)
            for o in family:
                u = union_bar(o, o.act(sigma))
                if identity and (u is None or u.key() != o.key()):
                    return _fail({"n": n, "order": o.text(), "reason": "identity union"})
                if not identity and u is not None:
                    return _fail({"n": n, "order": o.text(), "sigma": str(sigma)})
        counts[n] = len(family)
    return _pass({"regular_orders": counts})


def _poset_chains_as_orders(poset, orders):
    for chain in poset.chains():
        yield [orders[i] for i in chain]


def check_fg_triangles(n_max: int, **_) -> tuple[str, object]:
    """Retraction and union functors: union-then-retract is the top of every
    mixed-order chain; retract-then-union sits below the top of every
    inclusion chain, componentwise."""
    from .categories import regular_orders_poset, semi_regular_orders_poset

    counts = {}
    for n in range(1, min(n_max, 3) + 1):
        labels = default_labels(n)
        rposet, regs = regular_orders_poset(labels, "sqsubseteq")
        checked = 0
        for chain in _poset_chains_as_orders(rposet, regs):
            got = to_regular(chain_union(chain))
            if got.key() != chain[-1].key():
                return _fail({"n": n, "chain": [o.text() for o in chain], "triangle": "FG=max"})
            checked += 1
        sposet, semis = semi_regular_orders_poset(labels)
        checked_sub = 0
        for chain in _poset_chains_as_orders(sposet, semis):
            image = []
            seen = set()
            for o in chain:
                r = to_regular(o)
                if r.key() not in seen:
                    seen.add(r.key())
                    image.append(r)
            for a, b in zip(image, image[1:]):
                if not poset_leq(a, b, "sqsubseteq"):
                    return _fail(
                        {"n": n, "chain": [o.text() for o in chain], "triangle": "sd(F) chain"}
                    )
            joined = chain_union(image)
            if not poset_leq(joined, chain[-1], "subseteq"):
                return _fail(
                    {"n": n, "chain": [o.text() for o in chain], "triangle": "G sd(F) <= max"}
                )
            checked_sub += 1
        counts[n] = {"mixed_chains": checked, "inclusion_chains": checked_sub}
    return _pass(counts)


def check_nerve_quotient(n_max: int, **_) -> tuple[str, object]:
    """Generator-level isomorphism between the orbit complex of the nerve and
    the nerve of the quotient, for regular orders under all relabelings."""
    counts = {}
    for n in range(1, min(n_max, 3) + 1):
        q = symmetric_order_quotient(default_labels(n), "regular")
        orbit_cx, orbit_levels = nerve_orbit_complex(q.category, q.action)
        from .categories import nerve_chains

        quot_levels = nerve_chains(q.quotient)
        quot_cx = nerve_complex(q.quotient)
        if orbit_cx.ranks != quot_cx.ranks:
            return _fail(
                {"n": n, "orbit_ranks": list(orbit_cx.ranks), "quotient_ranks": list(quot_cx.ranks)}
            )
        # the projection functor on runs must give a levelwise bijection
        quot_index = [{run: i for i, run in enumerate(level)} for level in quot_levels]
        mapping: list[list[int]] = []
        for k, level in enumerate(orbit_levels):
            if k == 0:
                images = [(q.object_map[run[0]],) for run in level]
            else:
                images = [tuple(q.morphism_map[m] for m in run) for run in level]
            if len(set(images)) != len(images) or set(images) != set(quot_levels[k]):
                return _fail({"n": n, "level": k, "reason": "projection not bijective on runs"})
            mapping.append([quot_index[k][img] for img in images])
        for k in range(1, len(orbit_levels)):
            for j, col in enumerate(orbit_cx.boundary_columns(k)):
                expected = {mapping[k - 1][r]: v for r, v in col.items()}
                got = quot_cx.boundary_columns(k)[mapping[k][j]]
                if expected != got:
                    return _fail({"n": n, "level": k, "generator": j, "reason": "boundary mismatch"})
        counts[n] = list(orbit_cx.ranks)
    return _pass(counts)


def check_bar_f_iso(n_max: int, **_) -> tuple[str, object]:
    """The functor to the break category is relabeling-invariant and induces a
    bijective functor from the quotient."""
    counts = {}
    for n in range(1, min(n_max, 4) + 1):
        labels = default_labels(n)
        func = break_functor(labels)
        check_functoriality(func)
        key_index = {o.key(): i for i, o in enumerate(func.orders)}
        pair_index = {}
        for m, mor in enumerate(func.source_category.morphisms):
            pair_index[(mor.src, mor.tgt)] = m
        for sigma in permutations_of(labels):
            for i, o in enumerate(func.orders):
                j = key_index[o.act(sigma).key()]
                if func.object_map[i] != func.object_map[j]:
                    return _fail({"n": n, "reason": "object map not invariant", "sigma": str(sigma)})
            for m, mor in enumerate(func.source_category.morphisms):
                src2 = key_index[func.orders[mor.src].act(sigma).key()]
                tgt2 = key_index[func.orders[mor.tgt].act(sigma).key()]
                m2 = pair_index[(src2, tgt2)]
                if func.morphism_map[m] != func.morphism_map[m2]:
                    return _fail({"n": n, "reason": "morphism map not invariant", "sigma": str(sigma)})
        q = symmetric_order_quotient(labels, "regular")
        # induced functor on the quotient: well-defined by the invariance above
        obj_images = {}
        for i in range(len(func.orders)):
            obj_images.setdefault(q.object_map[i], set()).add(func.object_map[i])
        if any(len(s) != 1 for s in obj_images.values()):
            return _fail({"n": n, "reason": "induced object map ill-defined"})
        induced_obj = {k: s.pop() for k, s in obj_images.items()}
        if sorted(induced_obj.values()) != list(range(func.target.n_objects)) or len(
            induced_obj
        ) != func.target.n_objects:
            return _fail({"n": n, "reason": "induced object map not bijective"})
        mor_images = {}
        for m in range(func.source_category.n_morphisms):
            mor_images.setdefault(q.morphism_map[m], set()).add(func.morphism_map[m])
        if any(len(s) != 1 for s in mor_images.values()):
            return _fail({"n": n, "reason": "induced morphism map ill-defined"})
        induced_mor = {k: s.pop() for k, s in mor_images.items()}
        if sorted(induced_mor.values()) != list(range(func.target.n_morphisms)):
            return _fail({"n": n, "reason": "induced morphism map not bijective"})
        # spot-check against the independent hom-count oracle
        for a_idx, a in enumerate(func.target.objects):
            for b_idx, b in enumerate(func.target.objects):
                if set(b) <= set(a):
                    got = len(func.target.hom(a_idx, b_idx))
                    want = break_hom_count_oracle(a, b, n)
                    if got != want:
                        return _fail({"n": n, "hom": [list(a), list(b)], "got": got, "want": want})
        counts[n] = {
            "objects": func.target.n_objects,
            "morphisms": func.target.n_morphisms,
        }
    return _pass(counts)


def check_cover_complete(n_max: int, **_) -> tuple[str, object]:
    """Completeness, the intersection rule, and random-configuration coverage."""
    out = {}
    for n in range(1, min(n_max, 3) + 1):
        report = verify_cover(default_labels(n), samples=1000 if n == min(n_max, 3) else 200)
        if not (report.completeness_ok and report.covering_ok):
            return _fail(report.failures)
        out[n] = {
            "intersections": report.intersections_checked,
            "nonempty": report.nonempty_intersections,
            "samples_covered": report.samples_covered,
        }
    return _pass(out)


def check_cover_proper(n_max: int, **_) -> tuple[str, object]:
    """Properness under non-identity relabelings plus constraint-set
    equivariance."""
    out = {}
    for n in range(1, min(n_max, 3) + 1):
        report = verify_cover(default_labels(n), samples=0)
        if not (report.properness_ok and report.equivariance_ok):
            return _fail(report.failures)
        out[n] = {"family": report.family, "members": len(enumerate_orders(default_labels(n), "semi-regular"))}
    return _pass(out)


# signatures are trailing-zero trimmed (betti, sorted torsion) per degree
PINNED_HOMOLOGY = {
    2: [(1, ()), (1, ())],
    3: [(1, ()), (1, ())],
}

PINNED_ORDERED_HOMOLOGY = {
    2: [(1, ()), (1, ())],
    3: [(1, ()), (3, ()), (2, ())],
}


def _homology_signature(groups):
    out = [(g.betti, tuple(sorted(g.torsion))) for g in groups]
    while out and out[-1] == (0, ()):
        out.pop()
    return out


def check_homology_cross_model(n_max: int, **_) -> tuple[str, object]:
    """Identical homology across the finite models of unordered plane
    configurations, plus agreement of the two ordered models."""
    from .categories import regular_orders_poset, semi_regular_orders_poset

    out = {}
    for n in range(2, min(n_max, 4) + 1):
        labels = default_labels(n)
        models = {"break-category": homology(nerve_complex(build_break_category(n)))}
        models["regular-quotient"] = homology(
            nerve_complex(symmetric_order_quotient(labels, "regular").quotient)
        )
        if n <= 3:
            models["semi-regular-quotient"] = homology(
                nerve_complex(symmetric_order_quotient(labels, "semi-regular").quotient)
            )
        sigs = {name: _homology_signature(groups) for name, groups in models.items()}
        if len(set(map(tuple, sigs.values()))) != 1:
            return _fail({"n": n, "models": {k: homology_to_json(v) for k, v in models.items()}})
        sig = next(iter(sigs.values()))
        if n in PINNED_HOMOLOGY and sig != PINNED_HOMOLOGY[n]:
            return _fail({"n": n, "got": sig, "pinned": PINNED_HOMOLOGY[n]})
        if n == 4:
            if sig[0] != (1, ()) or sig[1] != (1, ()) or 2 not in sig[2][1]:
                return _fail({"n": n, "got": sig, "pinned": "Z, Z, 2-torsion in H2"})
        out[str(n)] = {"homology": sig, "models": sorted(models)}
    for n in range(2, min(n_max, 3) + 1):
        labels = default_labels(n)
        h_mixed = homology(regular_orders_poset(labels, "sqsubseteq")[0].order_complex())
        h_incl = homology(semi_regular_orders_poset(labels)[0].order_complex())
        if not same_homology(h_mixed, h_incl):
            return _fail(
                {
                    "n": n,
                    "ordered_models": {
                        "regular-mixed": homology_to_json(h_mixed),
                        "semi-regular-inclusion": homology_to_json(h_incl),
                    },
                }
            )
        sig = _homology_signature(h_mixed)
        if sig != PINNED_ORDERED_HOMOLOGY[n]:
            return _fail({"n": n, "ordered": sig, "pinned": PINNED_ORDERED_HOMOLOGY[n]})
        out[f"ordered-{n}"] = sig
    return _pass(out)


def check_euler_zero(n_max: int, **_) -> tuple[str, object]:
    """Euler characteristic zero for the break-category nerves; materialized
    complexes up to 4, alternating run counts beyond."""
    out = {}
    for n in range(2, min(n_max, 5) + 1):
        E = build_break_category(n)
        counts = composable_run_counts(E)
        chi_counts = sum((-1) ** k * c for k, c in enumerate(counts))
        if n <= 4:
            chi = euler_characteristic(nerve_complex(E))
            if chi != chi_counts:
                return _fail({"n": n, "materialized": chi, "counted": chi_counts})
        if chi_counts != 0:
            return _fail({"n": n, "euler": chi_counts})
        out[n] = counts
    return _pass(out)


# -- registry and runner ------------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    fn: Callable
    default_n: int
    description: str


REGISTRY: dict[str, CheckSpec] = {
    "chain-order-iso": CheckSpec(check_chain_order_iso, 3, "cube chains vs regular orders"),
    "orbit-iso": CheckSpec(check_orbit_iso, 4, "cover quotient vs final covering"),
    "non-self-linked": CheckSpec(check_non_self_linked, 3, "canonical-map injectivity"),
    "face-swap": CheckSpec(check_face_swap, 6, "constructive face-swap identity"),
    "free-action": CheckSpec(check_free_action, 3, "free relabeling action on double orders"),
    "union-sigma": CheckSpec(check_union_sigma, 3, "self-union under relabeling is cyclic"),
    "F-G-triangles": CheckSpec(check_fg_triangles, 3, "retraction/union functor triangles"),
    "nerve-quotient": CheckSpec(check_nerve_quotient, 3, "orbit complex vs quotient nerve"),
    "bar-F-iso": CheckSpec(check_bar_f_iso, 3, "quotient functor to the break category"),
    "cover-complete": CheckSpec(check_cover_complete, 3, "cover completeness and coverage"),
    "cover-proper": CheckSpec(check_cover_proper, 3, "cover properness and equivariance"),
    "homology-cross-model": CheckSpec(check_homology_cross_model, 3, "model homology agreement"),
    "euler-zero": CheckSpec(check_euler_zero, 4, "Euler characteristic of break nerves"),
}


def run_suite(
    selection: Optional[Sequence[str]] = None,
    n_max: Optional[int] = None,
    jobs: int = 1,
    params: Optional[dict] = None,
) -> list[VerificationReport]:
    """Runs the selected checks (all of them for None) and returns reports in
    selection order; `jobs` bounds parallel execution."""
    if selection is None:
        ids = list(REGISTRY)
    else:
        ids = list(selection)
        for check_id in ids:
            if check_id not in REGISTRY:
                raise UsageError(f"unknown proposition id {check_id!r}")
    extra = dict(params or {})

    def run_one(check_id: str) -> VerificationReport:
        spec = REGISTRY[check_id]
        n = n_max if n_max is not None else spec.default_n
        start = time.perf_counter()
        try:
            status, details = spec.fn(n, **extra)
        except ResourceCapError as exc:
            return VerificationReport(
                check_id,
                {"n_max": n, **extra},
                "skipped",
                {"reason": "resource-cap", "message": str(exc)},
                time.perf_counter() - start,
            )
        return VerificationReport(
            check_id, {"n_max": n, **extra}, status, details, time.perf_counter() - start
        )

    if jobs <= 1 or len(ids) <= 1:
        return [run_one(check_id) for check_id in ids]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_one, check_id) for check_id in ids]
        return [f.result() for f in futures]


def exit_code(reports: Sequence[VerificationReport]) -> int:
    if any(r.status == "fail" for r in reports):
        return 1
    if any(
        r.status == "skipped"
        and isinstance(r.details, dict)
        and r.details.get("reason") == "resource-cap"
        for r in reports
    ):
        return 3
    return 0

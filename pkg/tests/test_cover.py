import itertools
import random
from fractions import Fraction

import pytest

from dicube.complexes import default_labels
from dicube.cover import (
    config_from_json_dict,
    config_to_json_dict,
    nerve_retraction_check,
    point_to_order,
    random_configuration,
    separating_witness,
    u_contains,
    verify_cover,
    witness_point,
)
from dicube.errors import ContractError, ResourceCapError
from dicube.orders import DoubleOrder, enumerate_orders, poset_leq, rel_from_pairs, union_bar

AB = ("a", "b")


def order(labels, x_pairs, y_pairs):
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    return DoubleOrder(
        labels,
        rel_from_pairs(n, [(pos[a], pos[b]) for a, b in x_pairs]),
        rel_from_pairs(n, [(pos[a], pos[b]) for a, b in y_pairs]),
    )


def test_witness_point_membership():
    for o in enumerate_orders(default_labels(3), "semi-regular"):
        w = witness_point(o)
        assert u_contains(o, w)
        assert len(set(w.values())) == len(w)


def test_witness_point_single_label():
    o = order(("a",), [], [])
    assert witness_point(o) == {"a": (Fraction(1), Fraction(1))}


def test_membership_rejects_violated_constraint():
    o = order(AB, [("b", "a")], [])
    f = {"a": (Fraction(0), Fraction(0)), "b": (Fraction(1), Fraction(0))}
    assert not u_contains(o, f)


def test_membership_is_antitone_in_the_order():
    family = enumerate_orders(AB, "semi-regular")
    rng = random.Random(3)
    samples = [random_configuration(AB, rng) for _ in range(40)]
    for o1, o2 in itertools.product(family, repeat=2):
        if poset_leq(o1, o2, "subseteq"):
            for f in samples:
                if u_contains(o2, f):
                    assert u_contains(o1, f)


def test_point_to_order_examples():
    f = {"a": (Fraction(0), Fraction(0)), "b": (Fraction(0), Fraction(1))}
    assert point_to_order(f, AB).key() == order(AB, [], [("a", "b")]).key()
    g = {"a": (Fraction(0), Fraction(0)), "b": (Fraction(1), Fraction(5))}
    assert point_to_order(g, AB).key() == order(AB, [("a", "b")], []).key()


def test_point_to_order_rejects_collisions():
    f = {"a": (Fraction(1), Fraction(1)), "b": (Fraction(1), Fraction(1))}
    with pytest.raises(ContractError):
        point_to_order(f, AB)


def test_witness_of_its_own_order():
    for o in enumerate_orders(AB, "regular"):
        w = witness_point(o)
        assert u_contains(point_to_order(w, AB), w)


def test_intersection_rule_two_labels():
    x_ab = order(AB, [("a", "b")], [])
    x_ba = order(AB, [("b", "a")], [])
    assert union_bar(x_ab, x_ba) is None  # the two constraint sets conflict
    y_ab = order(AB, [], [("a", "b")])
    u = union_bar(x_ab, y_ab)
    assert u is not None
    w = witness_point(u)
    assert u_contains(x_ab, w) and u_contains(y_ab, w)


def test_verify_cover_two_labels():
    report = verify_cover(AB, samples=200, seed=1)
    assert report.ok
    assert report.family == "semi-regular"
    assert report.intersections_checked == 64
    assert report.samples_covered == 200


def test_verify_cover_three_labels_smoke():
    report = verify_cover(default_labels(3), samples=50, seed=2)
    assert report.ok


def test_verify_cover_four_labels_regular_subchecks():
    report = verify_cover(default_labels(4), samples=25, seed=3)
    assert report.ok and report.family == "regular"


def test_verify_cover_cap():
    with pytest.raises(ResourceCapError):
        verify_cover(default_labels(5))


def test_separating_witnesses_distinguish_members():
    family = enumerate_orders(default_labels(3), "semi-regular")
    for o1, o2 in itertools.combinations(family, 2):
        w = separating_witness(o1, o2) or separating_witness(o2, o1)
        assert w is not None
        in1, in2 = u_contains(o1, w), u_contains(o2, w)
        assert in1 != in2


def test_non_containment_gives_a_separating_point():
    # if o1 is not componentwise below o2, some configuration satisfies o2
    # but violates o1, so the constraint sets are not nested that way round
    family = enumerate_orders(AB, "semi-regular")
    for o1, o2 in itertools.product(family, repeat=2):
        if poset_leq(o1, o2, "subseteq"):
            continue
        w = separating_witness(o1, o2)
        assert w is not None
        assert u_contains(o2, w) and not u_contains(o1, w)


def test_nerve_retraction_two_labels_exhaustive():
    assert nerve_retraction_check(AB)


def test_nerve_retraction_three_labels_sampled():
    assert nerve_retraction_check(default_labels(3))


def test_config_json_round_trip():
    f = {"a": (Fraction(1, 2), Fraction(-3)), "b": (Fraction(0), Fraction(7, 4))}
    data = config_to_json_dict(f)
    assert data["points"]["a"] == ["1/2", "-3/1"]
    assert config_from_json_dict(data) == f

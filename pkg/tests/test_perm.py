from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_covers.perm import Perm, PermGroup, group_order, involution_class_index, orbits_of, symmetric_group


def perms_of(n):
    return st.permutations(list(range(n))).map(lambda p: Perm(tuple(p)))


def test_cycle_parse_and_print_round_trip():
    p = Perm.parse(6, "(1,2)(3,4,5)")
    assert p.images == (1, 0, 3, 4, 2, 5)
    assert p.to_cycle_string() == "(1,2)(3,4,5)"
    assert Perm.parse(6, p.to_cycle_string()) == p
    assert Perm.identity(3).to_cycle_string() == "()"


def test_product_acts_right_to_left():
    p = Perm.parse(3, "(1,2)")
    q = Perm.parse(3, "(2,3)")
    # (p*q)(x) = p(q(x)): 1 -> 1 -> 2
    assert (p * q)(0) == 1
    assert (p * q)(1) == 2


@given(perms_of(6), perms_of(6))
def test_inverse_and_order(p, q):
    assert (p * p.inverse()).is_identity()
    assert (p ** p.order()).is_identity()
    assert (p * q).inverse() == q.inverse() * p.inverse()


def test_involution_class_index():
    assert involution_class_index(Perm.identity(5)) == 0
    assert involution_class_index(Perm.parse(5, "(1,3)(2,4)")) == 2
    assert involution_class_index(Perm.parse(6, "(1,2)(3,4)(5,6)")) == 3


def test_group_orders():
    assert group_order([], 4) == 1
    assert group_order([Perm.parse(5, "(1,2)"), Perm.parse(5, "(1,2,3,4,5)")]) == 120
    assert group_order(symmetric_group(8)) == 40320
    assert group_order([Perm.parse(4, "(1,2)"), Perm.parse(4, "(1,3)(2,4)")]) == 8


def _closure(gens, n):
    seen = {Perm.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


@settings(max_examples=40, deadline=None)
@given(st.lists(perms_of(6), min_size=1, max_size=3))
def test_schreier_sims_matches_closure(gens):
    group = PermGroup(6, gens)
    closure = _closure(gens, 6)
    assert group.order == len(closure)
    assert set(group.elements()) == closure


@settings(max_examples=40, deadline=None)
@given(st.lists(perms_of(5), min_size=1, max_size=2))
def test_membership_matches_closure(gens):
    group = PermGroup(5, gens)
    closure = _closure(gens, 5)
    for p in permutations(range(5)):
        assert (Perm(p) in group) == (Perm(p) in closure)


def test_orbits():
    gens = [Perm.parse(6, "(1,2)"), Perm.parse(6, "(4,5,6)")]
    assert sorted(map(sorted, orbits_of(6, gens))) == [[0, 1], [2], [3, 4, 5]]

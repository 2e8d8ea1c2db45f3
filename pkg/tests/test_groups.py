import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from wlgroups.groups import (
    CATALOG, GroupName, MissingInverse, NoIdentity, NotAssociative, NotClosed, NotNormal,
    OrderLimitExceeded, ParameterOutOfRange, TableParseError, catalog_group, catalog_names,
    center, centralizer, element_order, format_table, from_table, generate, is_homomorphism,
    is_normal, load_group, make_named, normal_closure, parse_name, parse_table_text, quotient,
    relabel, resolve_group, save_group, trivial,
)

SMALL = [nm for nm in catalog_names(24)]


def transpositions(G):
    return [g for g in range(G.order) if element_order(G, g) == 2]


# -- from_table


def test_z2_table():
    G = from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.identity == 0


def test_trivial_table():
    assert from_table([[0]]).order == 1


def test_nonassociative_example():
    rows = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    # oracle scan of all 27 triples finds a violation at (1, 1, 1)
    assert O.first_nonassociative(rows) == (1, 1, 1)
    with pytest.raises(NotAssociative, match=r"\(1\*1\)\*1"):
        from_table(rows)


def test_identity_discovered_not_assumed():
    # Z3 with the identity stored at index 2
    rows = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_table(rows)
    assert G.identity == 2


@pytest.mark.parametrize("rows, exc", [
    ([[0, 2], [1, 0]], NotClosed),
    ([[1, 0], [0, 1]], None),   # Z2 with identity 1
    ([[0, 1], [1, 1]], MissingInverse),
    ([[1, 1], [1, 1]], NoIdentity),
])
def test_validation_errors(rows, exc):
    if exc is None:
        assert from_table(rows).identity == 1
    else:
        with pytest.raises(exc):
            from_table(rows)


def test_non_square_rejected():
    with pytest.raises(Exception):
        from_table([[0, 1]])


def test_order_guard():
    with pytest.raises(OrderLimitExceeded):
        make_named("cyclic(20)", max_order=10)


def test_tables_are_read_only():
    G = catalog_group("S3")
    with pytest.raises(ValueError):
        G.table[0, 0] = 1


# -- named constructors


@pytest.mark.parametrize("expr, order", [
    ("cyclic(4)", 4), ("dihedral(5)", 10), ("symmetric(4)", 24), ("alternating(5)", 60),
    ("quaternion8", 8), ("direct_product(alternating(5),cyclic(2))", 120),
    ("swap_wreath(cyclic(3))", 18), ("symmetric(1)", 1), ("alternating(1)", 1),
])
def test_named_orders(expr, order):
    assert make_named(expr).order == order


def test_cyclic4_has_square_of_order_two():
    G = make_named("cyclic(4)")
    e = G.identity
    assert any(G.mul(x, x) != e and G.mul(G.mul(x, x), G.mul(x, x)) == e for x in range(4))


def test_a5_trivial_center():
    G = make_named("alternating(5)")
    assert G.order == 60
    assert center(G).order == 1
    assert len(O.center(O.table(G))) == 1


@pytest.mark.parametrize("expr", ["symmetric(7)", "symmetric(0)", "cyclic(0)", "dihedral(0)", "foo(3)"])
def test_bad_parameters(expr):
    with pytest.raises(ParameterOutOfRange):
        make_named(expr)


def test_parse_name_aliases():
    assert parse_name("A5xZ2") == GroupName("direct_product", (GroupName("alternating", (5,)),
                                                                GroupName("cyclic", (2,))))
    assert parse_name("A5wrZ2").tag == "swap_wreath"
    assert str(parse_name("dihedral(4)")) == "dihedral(4)"


def test_named_tables_deterministic():
    a = make_named("symmetric(4)").table
    b = make_named("symmetric(4)").table
    assert np.array_equal(a, b)


def test_quaternion_center_order_two():
    assert center(catalog_group("Q8")).order == 2


def test_catalog_contents():
    for name in ["Z16", "Z2xZ2", "D3", "D8", "Q8", "S3", "S4", "S5", "A4", "A5", "A4xZ5",
                 "D30", "Z60", "A5xA5", "A5wrZ2"]:
        assert name in CATALOG
    assert catalog_group("D30").order == 60
    assert catalog_names(8)[-1] == "S3"


def test_small_catalog_groups_match_oracle_isomorphism_classes():
    # D3 and S3 are the same abstract group; Z4 and Z2xZ2 are not
    assert O.are_isomorphic(O.table(catalog_group("D3")), O.table(catalog_group("S3")))
    assert not O.are_isomorphic(O.table(catalog_group("Z4")), O.table(catalog_group("Z2xZ2")))


# -- element orders and subgroups


def test_element_orders():
    Z4, S3 = catalog_group("Z4"), catalog_group("S3")
    assert element_order(Z4, Z4.identity) == 1
    assert element_order(Z4, 1) == 4
    t = transpositions(S3)[0]
    assert S3.mul(t, t) == S3.identity and element_order(S3, t) == 2


def test_generate_examples():
    Z4, S3 = catalog_group("Z4"), catalog_group("S3")
    assert generate(Z4, []).elements == (Z4.identity,)
    assert generate(Z4, [1]).order == 4
    t1, t2 = transpositions(S3)[:2]
    assert generate(S3, [t1, t2]).order == 6


def test_normal_closure_examples():
    S3 = catalog_group("S3")
    c3 = next(g for g in range(6) if element_order(S3, g) == 3)
    t = transpositions(S3)[0]
    assert normal_closure(S3, [S3.identity]).order == 1
    assert normal_closure(S3, [c3]).order == 3
    assert normal_closure(S3, [t]).order == 6


def test_quotient_examples():
    Z4, S3 = catalog_group("Z4"), catalog_group("S3")
    Q, pi = quotient(Z4, generate(Z4, [2]))
    assert Q.order == 2 and is_homomorphism(Z4, Q, pi)
    c3 = next(g for g in range(6) if element_order(S3, g) == 3)
    Q, pi = quotient(S3, generate(S3, [c3]))
    assert Q.order == 2 and is_homomorphism(S3, Q, pi)
    Q, pi = quotient(S3, trivial(S3))
    assert Q.order == 6
    assert O.are_isomorphic(O.table(Q), O.table(S3))


def test_quotient_rejects_non_normal():
    S3 = catalog_group("S3")
    with pytest.raises(NotNormal):
        quotient(S3, generate(S3, [transpositions(S3)[0]]))


def test_normality_and_centralizers():
    S3, S5 = catalog_group("S3"), catalog_group("S5")
    assert not is_normal(S3, generate(S3, [transpositions(S3)[0]]))
    # the even permutations: squares generate A5 inside S5
    A5_in_S5 = generate(S5, [S5.mul(g, g) for g in range(S5.order)])
    assert A5_in_S5.order == 60 and is_normal(S5, A5_in_S5)
    assert centralizer(S5, A5_in_S5).order == 1


# -- text format


def test_text_round_trip(tmp_path):
    G = catalog_group("D4")
    p = tmp_path / "d4.txt"
    save_group(G, p)
    H = load_group(p)
    assert np.array_equal(G.table, H.table)
    assert format_table(H) == p.read_text()


def test_parse_comments_and_whitespace():
    rows = parse_table_text("# Z2\n2  \n0 1   # row zero\n1 0\n\n")
    assert rows == [[0, 1], [1, 0]]


@pytest.mark.parametrize("text", ["", "x\n", "2\n0 1\n", "2\n0 1\n1 a\n", "2\n0 1 1\n1 0\n", "0\n"])
def test_parse_errors(text):
    with pytest.raises(TableParseError):
        parse_table_text(text)


def test_serialization_preserves_labels(tmp_path):
    G = relabel(catalog_group("Z3"), [2, 0, 1])
    p = tmp_path / "z3.txt"
    save_group(G, p)
    assert load_group(p).identity == G.identity == 2


def test_resolve_group(tmp_path):
    assert resolve_group("A4").order == 12
    assert resolve_group("dihedral(4)").order == 8
    p = tmp_path / "g.txt"
    save_group(catalog_group("Z5"), p)
    assert resolve_group(str(p)).order == 5


# -- properties

group_names = st.sampled_from([nm for nm in SMALL if catalog_group(nm).order <= 16] + ["A4", "S4"])


@settings(max_examples=40, deadline=None)
@given(group_names, st.randoms(use_true_random=False))
def test_relabel_gives_valid_isomorphic_group(name, rnd):
    G = catalog_group(name)
    perm = list(range(G.order))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    from_table(H.rows())  # axioms re-checked
    assert is_homomorphism(G, H, perm)


@settings(max_examples=60, deadline=None)
@given(group_names, st.data())
def test_generate_idempotent(name, data):
    G = catalog_group(name)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    S = generate(G, gens)
    assert generate(G, S.elements) == S
    assert frozenset(S.elements) == O.closure(O.table(G), gens)


@settings(max_examples=60, deadline=None)
@given(group_names, st.data())
def test_normal_closure_is_smallest_normal_superset(name, data):
    G = catalog_group(name)
    T = O.table(G)
    S = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    N = normal_closure(G, S)
    assert is_normal(G, N) and set(S) <= set(N.elements)
    cands = [M for M in O.normal_subgroups(T) if set(S) <= M]
    assert frozenset(N.elements) == min(cands, key=len)
    assert all(frozenset(N.elements) <= M for M in cands)


@settings(max_examples=30, deadline=None)
@given(group_names, st.data())
def test_quotient_projection_is_homomorphism(name, data):
    G = catalog_group(name)
    normals = sorted(O.normal_subgroups(O.table(G)), key=sorted)
    N = data.draw(st.sampled_from(normals))
    Q, pi = quotient(G, sorted(N))
    assert Q.order * len(N) == G.order
    assert is_homomorphism(G, Q, pi)

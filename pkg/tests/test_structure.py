import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from wlgroups.experiments import group
from wlgroups.groups import from_table, generate, is_isomorphism, relabel
from wlgroups.structure import (
    LengthMismatch, NontrivialCentralizer, NotInSocle, NotSemisimple, NotSocleIso, PermAction,
    analyze, brute_force_isomorphic, extend_socle_isomorphism, is_semisimple,
    marked_extension, minimal_normal_subgroups, pker, soc_factors, socle, solvable_radical,
    tuple_marked_iso, tuple_partial_iso, weight,
)

# frozen from runs of the brute-force oracles in tests/oracles.py
ANALYZE = {
    "A5": {"order": 60, "semisimple": True, "rad": 1, "soc": 60, "factors": [60], "pker": 60},
    "S5": {"order": 120, "semisimple": True, "rad": 1, "soc": 60, "factors": [60], "pker": 120},
    "S4": {"order": 24, "semisimple": False, "rad": 24, "soc": 4, "factors": [], "pker": None},
    "Z60": {"order": 60, "semisimple": False, "rad": 60, "soc": 30, "factors": [], "pker": None},
    "A4xZ5": {"order": 60, "semisimple": False, "rad": 60, "soc": 20, "factors": [], "pker": None},
    "D30": {"order": 60, "semisimple": False, "rad": 60, "soc": 30, "factors": [], "pker": None},
    "Z1": {"order": 1, "semisimple": True, "rad": 1, "soc": 1, "factors": [], "pker": 1},
}


@pytest.mark.parametrize("name", sorted(ANALYZE))
def test_analyze_frozen(name):
    assert analyze(group(name)) == ANALYZE[name]


def test_analyze_products_and_wreath():
    assert analyze(group("A5xA5")) == {"order": 3600, "semisimple": True, "rad": 1, "soc": 3600,
                                       "factors": [60, 60], "pker": 3600}
    assert analyze(group("A5wrZ2")) == {"order": 7200, "semisimple": True, "rad": 1, "soc": 3600,
                                        "factors": [60, 60], "pker": 3600}


@pytest.mark.parametrize("name", ["Z6", "D4", "Q8", "S4", "A4", "Z2xZ2", "D6"])
def test_normal_structure_matches_oracle(name):
    G = group(name)
    T = O.table(G)
    assert {frozenset(M.elements) for M in minimal_normal_subgroups(G)} == O.minimal_normal(T)
    assert frozenset(socle(G).elements) == O.socle(T)
    assert frozenset(solvable_radical(G).elements) == O.solvable_radical(T)


def test_semisimple_flags():
    assert is_semisimple(group("A5"))
    assert not is_semisimple(group("S4"))
    assert not is_semisimple(group("Z60"))


def test_soc_factors_invariants():
    G = group("A5xA5")
    dec = soc_factors(G)
    assert [F.order for F in dec.factors] == [60, 60]
    e = G.identity
    F1, F2 = dec.factors
    assert set(F1.elements) & set(F2.elements) == {e}
    assert all(G.mul(a, b) == G.mul(b, a) for a in F1.elements[:12] for b in F2.elements[:12])
    for F, (x, y) in zip(dec.factors, dec.gen_pairs):
        assert generate(G, (x, y)) == F
    assert dec.socle.order == 3600


def test_gen_pair_is_lexicographically_least():
    G = group("A5")
    dec = soc_factors(G)
    x, y = dec.gen_pairs[0]
    for a, b in itertools.product(range(G.order), repeat=2):
        if (a, b) >= (x, y):
            break
        assert generate(G, (a, b)).order < 60


def test_soc_factors_rejects_non_semisimple():
    with pytest.raises(NotSemisimple):
        soc_factors(group("S4"))


def test_weights_in_product():
    G = group("A5xA5")
    dec = soc_factors(G)
    # element a*60 + b is the pair (a, b)
    e5 = group("A5").identity
    assert weight(dec, G.identity) == 0
    assert weight(dec, 7 * 60 + e5) == 1
    assert weight(dec, e5 * 60 + 9) == 1
    assert weight(dec, 7 * 60 + 9) == 2
    s = 7 * 60 + 9
    comps = dec.components(s)
    assert G.mul(comps[0], comps[1]) == s


def test_weight_outside_socle():
    G = group("A5wrZ2")
    dec = soc_factors(G)
    with pytest.raises(NotInSocle):
        weight(dec, 3600)  # the swap itself


def test_perm_action_and_pker():
    W = group("A5wrZ2")
    act = PermAction.of(W)
    assert act.is_homomorphism()
    assert act.factor_perms[3600].tolist() == [1, 0]
    assert pker(W).order == 3600
    S5 = group("S5")
    assert pker(S5).order == 120
    # conjugation on the socle is faithful: distinct elements act differently
    perms = {tuple(act.socle_permutation(g)[:40].tolist()) for g in range(0, 7200, 97)}
    assert len(perms) == len(range(0, 7200, 97))


# -- tuple predicates


def test_partial_vs_marked():
    Z4, K = group("Z4"), group("Z2xZ2")
    # a single non-identity element shows no relation, but its order differs
    assert tuple_partial_iso(Z4, [1], K, [1])
    assert not tuple_marked_iso(Z4, [1], K, [1])
    assert tuple_marked_iso(Z4, [2], K, [1])
    with pytest.raises(LengthMismatch):
        tuple_partial_iso(Z4, [1], K, [1, 2])


def test_marked_extension_is_isomorphism():
    S3, D3 = group("S3"), group("D3")
    ext = marked_extension(S3, S3.generators, D3, brute_force_tuple(S3, D3))
    assert ext is not None and len(ext) == 6
    assert all(ext[S3.mul(a, b)] == D3.mul(ext[a], ext[b]) for a in ext for b in ext)


def brute_force_tuple(G, H):
    iso = brute_force_isomorphic(G, H)
    return [int(iso[g]) for g in G.generators]


# -- isomorphism extension


def _inner(S5, s):
    soc = socle(S5)
    f = np.full(S5.order, -1)
    inv = S5.inv(s)
    for a in soc.elements:
        f[a] = S5.mul(S5.mul(s, a), inv)
    return f


def test_extend_inner_automorphisms_of_s5():
    S5 = group("S5")
    for s in [0, 1, 7, 33, 119]:
        out = extend_socle_isomorphism(S5, S5, _inner(S5, s))
        assert out is not None and is_isomorphism(S5, S5, out)


def test_extend_product_to_wreath_fails():
    P, W = group("A5xA5"), group("A5wrZ2")
    f = np.full(P.order, -1)
    f[:3600] = np.arange(3600)
    assert extend_socle_isomorphism(P, W, f) is None


def test_extend_non_permutational_socle_map():
    W = group("A5wrZ2")
    S5 = group("S5")
    A5 = group("A5")
    # an odd permutation of S5 induces an outer automorphism of A5; apply it to
    # the first coordinate only
    socS5 = socle(S5).elements
    # transport A5 labels into the S5 copy by marked extension on generators
    emb = marked_extension(A5, A5.generators, S5, brute_force_image(A5, S5, socS5))
    back = {v: k for k, v in emb.items()}
    t = next(g for g in range(120) if g not in socS5)
    phi = [back[S5.mul(S5.mul(t, emb[a]), S5.inv(t))] for a in range(60)]
    f = np.full(W.order, -1)
    for a in range(60):
        for b in range(60):
            f[a * 60 + b] = phi[a] * 60 + b
    assert extend_socle_isomorphism(W, W, f) is None
    g = np.full(W.order, -1)
    for a in range(60):
        for b in range(60):
            g[a * 60 + b] = phi[a] * 60 + phi[b]
    out = extend_socle_isomorphism(W, W, g)
    assert out is not None and is_isomorphism(W, W, out)


def brute_force_image(A5, S5, socS5):
    sub = relabel_subgroup(S5, socS5)
    iso = brute_force_isomorphic(A5, sub)
    return [socS5[int(iso[g])] for g in A5.generators]


def relabel_subgroup(G, elems):
    idx = {g: i for i, g in enumerate(elems)}
    return from_table([[idx[G.mul(a, b)] for b in elems] for a in elems])


def test_extend_errors():
    S5 = group("S5")
    f = np.full(S5.order, -1)
    with pytest.raises(NotSocleIso):
        extend_socle_isomorphism(S5, S5, f)
    Z2 = group("Z2")
    with pytest.raises(NontrivialCentralizer):
        extend_socle_isomorphism(Z2, Z2, {0: 0, 1: 1})


# -- brute force isomorphism


def test_brute_force_examples():
    assert brute_force_isomorphic(group("Z4"), group("Z2xZ2")) is None
    iso = brute_force_isomorphic(group("D3"), group("S3"))
    assert iso is not None and is_isomorphism(group("D3"), group("S3"), iso)
    assert brute_force_isomorphic(group("Q8"), group("D4")) is None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z6", "D4", "Q8", "A4", "D5", "Z2xZ2", "S3"]), st.randoms(use_true_random=False))
def test_brute_force_finds_relabelings(name, rnd):
    G = group(name)
    perm = list(range(G.order))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    iso = brute_force_isomorphic(G, H)
    assert iso is not None and is_isomorphism(G, H, iso)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["Z4", "Z2xZ2", "Z6", "S3", "D3"]), st.sampled_from(["Z4", "Z2xZ2", "Z6", "S3", "D3"]))
def test_brute_force_agrees_with_exhaustive_oracle(a, b):
    G, H = group(a), group(b)
    found = brute_force_isomorphic(G, H) is not None
    assert found == O.are_isomorphic(O.table(G), O.table(H))

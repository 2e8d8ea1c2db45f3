"""Normal structure of finite groups: socle, solvable radical, PKer, weights,
tuple isomorphism types and socle-isomorphism extension."""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .groups import (
    Group,
    GroupError,
    SubgroupSet,
    centralizer,
    commutator_subgroup,
    generate,
    is_homomorphism,
    is_isomorphism,
    is_normal,
    normal_closure,
    preimage,
    quotient,
    trivial,
    whole,
)


class NotSemisimple(GroupError):
    pass


class NotInSocle(GroupError):
    pass


class LengthMismatch(GroupError):
    pass


class NotSocleIso(GroupError):
    pass


class NontrivialCentralizer(GroupError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# normal subgroups


def _class_closures(G: Group, ambient: SubgroupSet | None = None) -> list[SubgroupSet]:
    """Normal closures (under ``ambient``) of each nontrivial ambient-class inside it."""
    if ambient is None:
        classes = G.conjugacy_classes
        inside = None
    else:
        classes = _classes_within(G, ambient)
        inside = ambient
    out = []
    seen = set()
    for cls in classes:
        if G.identity in cls:
            continue
        N = normal_closure(G, cls, ambient=inside)
        if N.elements not in seen:
            seen.add(N.elements)
            out.append(N)
    return out


def _classes_within(G: Group, A: SubgroupSet) -> list[tuple[int, ...]]:
    """Conjugacy classes of the group ``A`` (elements of ``A`` under ``A``-conjugation)."""
    T, inv = G.table, G.inverses
    seen = np.zeros(G.order, dtype=bool)
    acting = A.array
    classes = []
    for x in A.elements:
        if seen[x]:
            continue
        orbit = np.unique(T[T[acting, x], inv[acting]])
        seen[orbit] = True
        classes.append(tuple(int(v) for v in orbit))
    return classes


def _minimal(subgroups: list[SubgroupSet]) -> list[SubgroupSet]:
    subgroups = sorted(subgroups, key=lambda S: (S.order, S.elements))
    out = []
    for S in subgroups:
        if not any(M.order < S.order and M.issubset(S) for M in out):
            out.append(S)
    return out


def minimal_normal_subgroups(G: Group) -> list[SubgroupSet]:
    """Minimal normal subgroups, ordered by (order, elements)."""
    return _minimal(_class_closures(G))


def _join(G: Group, subgroups) -> SubgroupSet:
    gens = set()
    for S in subgroups:
        gens.update(S.generators)
    return generate(G, gens)


def socle(G: Group) -> SubgroupSet:
    return _join(G, minimal_normal_subgroups(G))


def is_abelian_subgroup(G: Group, S: SubgroupSet) -> bool:
    T = G.table
    gens = S.generators
    for a, b in itertools.combinations(gens, 2):
        if T[a, b] != T[b, a]:
            return False
    return True


def is_solvable(G: Group, N: SubgroupSet) -> bool:
    while not N.is_trivial():
        D = commutator_subgroup(G, N)
        if D.order == N.order:
            return False
        N = D
    return True


def solvable_radical(G: Group) -> SubgroupSet:
    """Largest solvable normal subgroup, built by repeatedly pulling back the
    abelian minimal normal subgroups of the current quotient."""
    R = trivial(G)
    while True:
        Q, proj = quotient(G, R)
        abelian = [M for M in minimal_normal_subgroups(Q) if is_abelian_subgroup(Q, M)]
        if not abelian:
            return R
        R = preimage(G, proj, _join(Q, abelian))


def is_semisimple(G: Group) -> bool:
    """True iff no minimal normal subgroup is abelian (trivial group included)."""
    return not any(is_abelian_subgroup(G, M) for M in minimal_normal_subgroups(G))


def is_product_of_nonabelian_simples(G: Group, N: SubgroupSet) -> bool:
    """Whether ``N`` (as an abstract group) is a direct product of nonabelian simple groups.

    Holds iff ``N`` equals its own socle and none of its minimal normal
    subgroups is abelian.  The trivial group is the empty product.
    """
    if N.is_trivial():
        return True
    mins = _minimal(_class_closures(G, N))
    if any(is_abelian_subgroup(G, M) for M in mins):
        return False
    return _join(G, mins).order == N.order


# ---------------------------------------------------------------------------
# socle decomposition


@dataclass(frozen=True)
class SocleDecomposition:
    parent: Group = field(repr=False)
    factors: tuple[SubgroupSet, ...]
    gen_pairs: tuple[tuple[int, int], ...]

    @cached_property
    def socle(self) -> SubgroupSet:
        return _join(self.parent, self.factors)

    @cached_property
    def _complements(self) -> list[np.ndarray]:
        out = []
        for i in range(len(self.factors)):
            others = [F for j, F in enumerate(self.factors) if j != i]
            out.append(_join(self.parent, others).array)
        return out

    def components(self, s: int) -> list[int]:
        """Unique ``s_i`` in ``S_i`` with ``s = s_1 ... s_m``."""
        if s not in self.socle:
            raise NotInSocle(f"element {s} is not in the socle")
        T = self.parent.table
        comps = []
        for F, comp in zip(self.factors, self._complements):
            coset = T[s, comp]
            hit = coset[F.mask[coset]]
            if len(hit) != 1:
                raise GroupError("socle factors do not form a direct product")
            comps.append(int(hit[0]))
        return comps


def _factor_gen_pair(G: Group, F: SubgroupSet) -> tuple[int, int]:
    elems = [x for x in F.elements if x != G.identity]
    T = G.table
    for x in elems:
        for y in elems:
            if y == x:
                continue
            if T[x, y] == T[y, x]:
                continue
            if generate(G, (x, y)).order == F.order:
                return (x, y)
    raise GroupError(f"no 2-element generating pair for a socle factor of order {F.order}")


def soc_factors(G: Group) -> SocleDecomposition:
    """Simple direct factors of the socle of a semisimple group, each with a
    lexicographically least generating pair."""
    if not is_semisimple(G):
        raise NotSemisimple(f"{G!r} has an abelian normal subgroup")
    soc = socle(G)
    if soc.is_trivial():
        return SocleDecomposition(G, (), ())
    # simple factors of Soc(G) are exactly its minimal normal subgroups
    factors = _minimal(_class_closures(G, soc))
    factors.sort(key=lambda F: F.elements)
    pairs = tuple(_factor_gen_pair(G, F) for F in factors)
    return SocleDecomposition(G, tuple(factors), pairs)


def weight(dec: SocleDecomposition, s: int) -> int:
    """Number of nontrivial components of ``s`` across the socle factors."""
    e = dec.parent.identity
    return sum(1 for c in dec.components(s) if c != e)


def factor_permutations(G: Group, dec: SocleDecomposition) -> np.ndarray:
    """Row ``g``: index of the factor ``g S_i g^-1`` for each ``i``."""
    T, inv = G.table, G.inverses
    m = len(dec.factors)
    out = np.empty((G.order, m), dtype=np.intp)
    owner = np.full(G.order, -1, dtype=np.intp)
    for i, F in enumerate(dec.factors):
        owner[F.array[F.array != G.identity]] = i
    for i, (x, y) in enumerate(dec.gen_pairs):
        cx = owner[T[T[:, x], inv]]
        cy = owner[T[T[:, y], inv]]
        if not np.array_equal(cx, cy):
            raise GroupError("conjugation does not permute the socle factors")
        out[:, i] = cx
    return out


@dataclass(frozen=True)
class PermAction:
    """Conjugation action of ``group`` on its socle factors and socle elements."""

    group: Group = field(repr=False)
    decomposition: SocleDecomposition = field(repr=False)
    factor_perms: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, G: Group, dec: SocleDecomposition | None = None) -> "PermAction":
        dec = soc_factors(G) if dec is None else dec
        return cls(G, dec, factor_permutations(G, dec))

    def socle_permutation(self, g: int) -> np.ndarray:
        """Images of the socle elements (in sorted order) under conjugation by ``g``."""
        G = self.group
        soc = self.decomposition.socle.array
        return G.table[G.table[g, soc], G.inverses[g]].astype(np.intp)

    def is_homomorphism(self) -> bool:
        P = self.factor_perms
        T = self.group.table
        for a in range(self.group.order):
            if not np.array_equal(P[T[a]], P[a][P]):
                return False
        return True


def pker(G: Group) -> SubgroupSet:
    """Elements whose conjugation fixes every socle factor (semisimple groups only)."""
    dec = soc_factors(G)
    if not dec.factors:
        return whole(G)
    P = factor_permutations(G, dec)
    fixed = np.all(P == np.arange(len(dec.factors))[None, :], axis=1)
    return SubgroupSet.from_mask(G, fixed)


# ---------------------------------------------------------------------------
# tuple isomorphism types


def partial_iso_type(G: Group, xs: Sequence[int]) -> tuple:
    """Equality pattern plus every visible relation ``x_i x_j = x_l``."""
    k = len(xs)
    T = G.table
    first = []
    for i, x in enumerate(xs):
        first.append(next(j for j in range(i + 1) if xs[j] == x))
    rel = []
    for i in range(k):
        for j in range(k):
            p = T[xs[i], xs[j]]
            for l in range(k):
                rel.append(1 if p == xs[l] else 0)
    return (tuple(first), tuple(rel))


def tuple_partial_iso(G: Group, xs: Sequence[int], H: Group, ys: Sequence[int]) -> bool:
    if len(xs) != len(ys):
        raise LengthMismatch(f"tuple lengths differ: {len(xs)} vs {len(ys)}")
    return partial_iso_type(G, xs) == partial_iso_type(H, ys)


def _closure_automaton(G: Group, xs: Sequence[int]):
    T = G.table
    index = {G.identity: 0}
    order = [G.identity]
    trans = []
    queue = deque([G.identity])
    while queue:
        u = queue.popleft()
        row = []
        for x in xs:
            w = int(T[u, x])
            if w not in index:
                index[w] = len(order)
                order.append(w)
                queue.append(w)
            row.append(index[w])
        trans.append(tuple(row))
    marks = tuple(index[int(x)] for x in xs)
    return tuple(trans), marks, order


def marked_type_signature(G: Group, xs: Sequence[int]) -> tuple:
    """Canonical closure automaton of ``<xs>`` marked by the tuple.

    Breadth-first discovery from the identity using right multiplication by
    ``x_1, ..., x_k`` in order; records every transition and the discovery
    index of each ``x_i``.  Equal signatures iff ``x_i -> y_i`` extends to an
    isomorphism of the generated subgroups.
    """
    trans, marks, _ = _closure_automaton(G, xs)
    return (len(xs), marks, trans)


def tuple_marked_iso(G: Group, xs: Sequence[int], H: Group, ys: Sequence[int]) -> bool:
    if len(xs) != len(ys):
        raise LengthMismatch(f"tuple lengths differ: {len(xs)} vs {len(ys)}")
    return marked_type_signature(G, xs) == marked_type_signature(H, ys)


def marked_extension(G: Group, xs: Sequence[int], H: Group, ys: Sequence[int]) -> dict[int, int] | None:
    """The isomorphism ``<xs> -> <ys>`` sending ``x_i`` to ``y_i``, if it exists."""
    tg, mg, og = _closure_automaton(G, xs)
    th, mh, oh = _closure_automaton(H, ys)
    if (tg, mg) != (th, mh):
        return None
    return dict(zip(og, oh))


# ---------------------------------------------------------------------------
# isomorphisms


def _coerce_map(G: Group, H: Group, f) -> np.ndarray:
    arr = np.full(G.order, -1, dtype=np.intp)
    if isinstance(f, Mapping):
        for a, b in f.items():
            arr[int(a)] = int(b)
    else:
        f = np.asarray(f, dtype=np.intp)
        arr[: len(f)] = f
    return arr


def extend_socle_isomorphism(G: Group, H: Group, f) -> np.ndarray | None:
    """Extend an isomorphism ``Soc(G) -> Soc(H)`` to ``G -> H`` when it is a
    permutational isomorphism of the conjugation actions.

    ``f`` maps socle elements of ``G`` to socle elements of ``H`` (a mapping,
    or an array indexed by elements of ``G`` with ``-1`` off the socle).
    Returns the full isomorphism as an array, or ``None``.
    """
    socG, socH = socle(G), socle(H)
    fmap = _coerce_map(G, H, f)
    images = fmap[socG.array]
    if (images < 0).any() or socG.order != socH.order or \
            sorted(images.tolist()) != list(socH.elements):
        raise NotSocleIso("map is not a bijection Soc(G) -> Soc(H)")
    TG, TH = G.table, H.table
    for a in socG.elements:
        if not np.array_equal(fmap[TG[a, socG.array]], TH[fmap[a], images]):
            raise NotSocleIso("map is not a homomorphism on the socle")
    if centralizer(G, socG).order != 1:
        raise NontrivialCentralizer("Soc(G) has a nontrivial centralizer")
    if centralizer(H, socH).order != 1:
        raise NontrivialCentralizer("Soc(H) has a nontrivial centralizer")
    if G.order != H.order:
        return None

    finv = np.full(H.order, -1, dtype=np.intp)
    finv[images] = socG.array
    gens_h = np.asarray(socH.generators, dtype=np.intp)
    # conjugation action of each h on the socle generators; faithful since C(Soc) = 1
    conj_h = TH[TH[:, gens_h], H.inverses[:, None]]
    lookup = {tuple(row.tolist()): h for h, row in enumerate(conj_h)}
    pre = finv[gens_h]
    out = np.empty(G.order, dtype=np.intp)
    for g in range(G.order):
        target = fmap[TG[TG[g, pre], G.inverses[g]]]
        h = lookup.get(tuple(target.tolist()))
        if h is None:
            return None
        out[g] = h
    if not is_isomorphism(G, H, out):
        return None
    return out


def greedy_generating_sequence(G: Group) -> tuple[int, ...]:
    return G.generators


def brute_force_isomorphic(G: Group, H: Group, time_budget: float | None = 60.0) -> np.ndarray | None:
    """Generator enumeration: try every image tuple of a greedy generating
    sequence of ``G`` and keep the first one with the same marked type."""
    if G.order != H.order:
        return None
    gens = G.generators
    target = marked_type_signature(G, gens)
    og, oh = G.element_orders, H.element_orders
    if sorted(og.tolist()) != sorted(oh.tolist()):
        return None
    _, _, order_g = _closure_automaton(G, gens)
    candidates = [np.flatnonzero(oh == og[g]).tolist() for g in gens]
    deadline = None if time_budget is None else time.monotonic() + time_budget
    for count, ys in enumerate(itertools.product(*candidates)):
        if deadline is not None and count % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("brute-force isomorphism search ran out of time")
        if marked_type_signature(H, ys) == target:
            _, _, order_h = _closure_automaton(H, ys)
            out = np.empty(G.order, dtype=np.intp)
            out[order_g] = order_h
            return out
    return None


def analyze(G: Group) -> dict:
    """Structure summary in a stable field order."""
    semi = is_semisimple(G)
    rad = solvable_radical(G)
    soc = socle(G)
    report = {
        "order": G.order,
        "semisimple": semi,
        "rad": rad.order,
        "soc": soc.order,
        "factors": [],
        "pker": None,
    }
    if semi:
        dec = soc_factors(G)
        report["factors"] = [F.order for F in dec.factors]
        report["pker"] = pker(G).order
    return report


__all__ = [
    "BudgetExceeded", "LengthMismatch", "NontrivialCentralizer", "NotInSocle",
    "NotSemisimple", "NotSocleIso", "PermAction", "SocleDecomposition",
    "analyze", "brute_force_isomorphic",
    "extend_socle_isomorphism", "factor_permutations", "is_product_of_nonabelian_simples",
    "is_semisimple", "is_solvable", "marked_extension", "marked_type_signature",
    "minimal_normal_subgroups", "partial_iso_type", "pker",
    "soc_factors", "socle", "solvable_radical", "tuple_marked_iso", "tuple_partial_iso",
    "weight", "is_normal", "is_homomorphism",
]

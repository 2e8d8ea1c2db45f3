"""Finite groups in the Cayley-table model.

A group is an ``n x n`` table over the element indices ``0..n-1`` with
``table[a, b]`` the index of ``a*b``.  The identity is discovered during
validation and is never assumed to be index 0.

Named constructors use a fixed element ordering so tables are reproducible:

* ``cyclic(n)``: element ``i`` is ``g**i``.
* ``dihedral(m)``: element ``j*m + i`` is ``r**i s**j``.
* ``symmetric(m)`` / ``alternating(m)``: permutations of ``range(m)`` in
  lexicographic one-line order, composed as ``(p*q)[i] = p[q[i]]``.
* ``quaternion8``: ``1, -1, i, -i, j, -j, k, -k``.
* ``direct_product(A, B)``: element ``a*|B| + b`` is ``(a, b)``.
* ``swap_wreath(T)``: element ``s*|T|**2 + a*|T| + b`` is ``(a, b; swap**s)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 10_000
# full n^3 associativity scan below this order, generator-based test above it
_FULL_ASSOC_SCAN = 64


class GroupError(ValueError):
    pass


class NotClosed(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class MissingInverse(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NotNormal(GroupError):
    pass


class ParameterOutOfRange(GroupError):
    pass


class OrderLimitExceeded(GroupError):
    pass


class TableParseError(GroupError):
    pass


def _dtype_for(n):
    return np.int16 if n < 2**15 else np.int32


class Group:
    """A validated finite group given by its Cayley table.

    Instances are immutable.  Use :func:`from_table` or :func:`make_named`
    rather than calling the constructor directly.
    """

    __slots__ = ("table", "identity", "name", "__dict__")

    def __init__(self, table: np.ndarray, identity: int, name: str = ""):
        table = np.ascontiguousarray(table, dtype=_dtype_for(len(table)))
        table.setflags(write=False)
        self.table = table
        self.identity = int(identity)
        self.name = name

    def __repr__(self):
        label = self.name or "group"
        return f"<Group {label} order={self.order}>"

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverses[g]])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.intp)
        inv.setflags(write=False)
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.intp)
        power = idx.copy()
        m = 1
        while True:
            hit = (power == self.identity) & (orders == 0)
            orders[hit] = m
            if orders.all():
                break
            power = self.table[power, idx]
            m += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the lowest element not yet reached."""
        return _greedy_generators(self, range(self.order))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        inv = self.inverses
        for x in range(n):
            if seen[x]:
                continue
            orbit = np.unique(self.table[self.table[:, x], inv])
            seen[orbit] = True
            classes.append(tuple(int(v) for v in orbit))
        return tuple(classes)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def rows(self) -> list[list[int]]:
        return self.table.tolist()


def _greedy_generators(G: Group, candidates: Iterable[int]) -> tuple[int, ...]:
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    for x in candidates:
        if not mask[x]:
            gens.append(int(x))
            mask = _closure_mask(G, mask, gens)
    return tuple(gens)


def _closure_mask(G: Group, start: np.ndarray, gens: Sequence[int]) -> np.ndarray:
    """Close a boolean element mask under right multiplication by ``gens``."""
    mask = start.copy()
    if not gens:
        return mask
    gens_arr = np.asarray(gens, dtype=np.intp)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        products = G.table[frontier][:, gens_arr].ravel()
        fresh = np.unique(products[~mask[products]])
        mask[fresh] = True
        frontier = fresh
    return mask


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup of ``parent`` stored as a sorted tuple of element indices."""

    parent: Group = field(repr=False)
    elements: tuple[int, ...]

    @classmethod
    def from_mask(cls, parent: Group, mask: np.ndarray) -> "SubgroupSet":
        return cls(parent, tuple(int(v) for v in np.flatnonzero(mask)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return bool(self.mask[x])

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        m.setflags(write=False)
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.intp)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return _greedy_generators(self.parent, self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def issubset(self, other: "SubgroupSet") -> bool:
        return bool(np.all(other.mask[self.array]))

    def as_group(self) -> tuple[Group, np.ndarray]:
        """Return the subgroup as a standalone group plus the embedding array."""
        emb = self.array
        pos = np.full(self.parent.order, -1, dtype=np.intp)
        pos[emb] = np.arange(len(emb))
        table = pos[self.parent.table[np.ix_(emb, emb)]]
        return Group(table, int(pos[self.parent.identity])), emb


# ---------------------------------------------------------------------------
# validation and construction


def from_table(rows, max_order: int | None = DEFAULT_MAX_ORDER, name: str = "") -> Group:
    """Validate a Cayley table and return a :class:`Group`.

    Raises the first violated condition among closure, identity,
    associativity and inverses, naming the offending elements.
    """
    table = np.asarray(rows)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupError(f"table must be a non-empty square matrix, got shape {table.shape}")
    n = table.shape[0]
    if max_order is not None and n > max_order:
        raise OrderLimitExceeded(f"order {n} exceeds the limit {max_order}")
    if not np.issubdtype(table.dtype, np.integer):
        raise NotClosed("table entries must be integers")
    bad = np.argwhere((table < 0) | (table >= n))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise NotClosed(f"product {a}*{b} = {int(table[a, b])} is outside [0, {n})")
    table = table.astype(_dtype_for(n))
    idx = np.arange(n)

    identity = None
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no element acts as a two-sided identity")

    G = Group(table, identity, name=name)
    _check_associative(G)

    right = np.argmax(table == identity, axis=1)
    has_right = table[idx, right] == identity
    ok = has_right & (table[right, idx] == identity)
    if not ok.all():
        x = int(np.flatnonzero(~ok)[0])
        raise MissingInverse(f"element {x} has no two-sided inverse")
    return G


def _check_associative(G: Group) -> None:
    T = G.table
    n = G.order
    if n <= _FULL_ASSOC_SCAN:
        left = T[T[:, :, None], np.arange(n)[None, None, :]]  # (a*b)*c
        right = T[np.arange(n)[:, None, None], T[None, :, :]]  # a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = (int(v) for v in bad[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
        return
    # Light's test: elements b with (xb)y = x(by) for all x, y are closed under
    # products, so checking a generating set suffices.
    gens = _greedy_generators(G, range(n))
    for b in gens:
        for start in range(0, n, 256):
            rows = np.arange(start, min(n, start + 256))
            left = T[T[rows, b]]  # (x b) y over y
            right = T[rows[:, None], T[b][None, :]]  # x (b y)
            if np.array_equal(left, right):
                continue
            bad = np.argwhere(left != right)
            if len(bad):
                a, c = int(rows[bad[0][0]]), int(bad[0][1])
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


def relabel(G: Group, perm: Sequence[int]) -> Group:
    """Return the isomorphic copy of ``G`` in which element ``x`` is renamed ``perm[x]``."""
    p = np.asarray(perm, dtype=np.intp)
    if sorted(p.tolist()) != list(range(G.order)):
        raise GroupError("relabeling must be a permutation of the element indices")
    table = np.empty_like(G.table)
    table[np.ix_(p, p)] = p[G.table]
    return Group(table, int(p[G.identity]), name=G.name)


# ---------------------------------------------------------------------------
# text format


def parse_table_text(text: str) -> list[list[int]]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise TableParseError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableParseError(f"first line must be the order, got {lines[0]!r}") from None
    if n <= 0:
        raise TableParseError(f"order must be positive, got {n}")
    if len(lines) - 1 != n:
        raise TableParseError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:]):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise TableParseError(f"row {i}: non-integer entry") from None
        if len(row) != n:
            raise TableParseError(f"row {i}: expected {n} entries, found {len(row)}")
        rows.append(row)
    return rows


def format_table(G: Group) -> str:
    out = [str(G.order)]
    out.extend(" ".join(str(v) for v in row) for row in G.rows())
    return "\n".join(out) + "\n"


def load_group(path, max_order: int | None = DEFAULT_MAX_ORDER) -> Group:
    path = Path(path)
    return from_table(parse_table_text(path.read_text()), max_order=max_order, name=path.stem)


def save_group(G: Group, path) -> None:
    Path(path).write_text(format_table(G))


# ---------------------------------------------------------------------------
# named constructors


@dataclass(frozen=True)
class GroupName:
    tag: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(str(p) for p in self.params)})"


_TAGS = ("cyclic", "dihedral", "symmetric", "alternating", "quaternion8",
         "direct_product", "swap_wreath")

_ALIASES = [
    (re.compile(r"^Z(\d+)$"), lambda m: GroupName("cyclic", (int(m[1]),))),
    (re.compile(r"^D(\d+)$"), lambda m: GroupName("dihedral", (int(m[1]),))),
    (re.compile(r"^S(\d+)$"), lambda m: GroupName("symmetric", (int(m[1]),))),
    (re.compile(r"^A(\d+)$"), lambda m: GroupName("alternating", (int(m[1]),))),
    (re.compile(r"^Q8$"), lambda m: GroupName("quaternion8")),
]


def parse_name(text: str) -> GroupName:
    """Parse ``cyclic(4)``, ``direct_product(A5,Z2)``, ``A5xZ2``, ``A5wrZ2`` and similar."""
    text = text.replace(" ", "")
    if not text:
        raise ParameterOutOfRange("empty group name")
    m = re.match(r"^(\w+)\((.*)\)$", text)
    if m and m[1] in _TAGS:
        args = _split_args(m[2])
        if m[1] in ("direct_product", "swap_wreath"):
            return GroupName(m[1], tuple(parse_name(a) for a in args))
        try:
            return GroupName(m[1], tuple(int(a) for a in args))
        except ValueError:
            raise ParameterOutOfRange(f"bad parameters in {text!r}") from None
    if text == "quaternion8":
        return GroupName("quaternion8")
    if text.endswith("wrZ2"):
        return GroupName("swap_wreath", (parse_name(text[:-4]),))
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "x" and depth == 0 and i > 0:
            return GroupName("direct_product", (parse_name(text[:i]), parse_name(text[i + 1:])))
    for pattern, build in _ALIASES:
        m = pattern.match(text)
        if m:
            return build(m)
    raise ParameterOutOfRange(f"unknown group name {text!r}")


def _split_args(s):
    args, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            args.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        args.append(cur)
    return args


def named_order(name: GroupName) -> int:
    tag, p = name.tag, name.params
    if tag == "cyclic":
        return p[0]
    if tag == "dihedral":
        return 2 * p[0]
    if tag == "symmetric":
        return _factorial(p[0])
    if tag == "alternating":
        return max(1, _factorial(p[0]) // 2)
    if tag == "quaternion8":
        return 8
    if tag == "direct_product":
        return named_order(p[0]) * named_order(p[1])
    if tag == "swap_wreath":
        return 2 * named_order(p[0]) ** 2
    raise ParameterOutOfRange(f"unknown constructor {tag!r}")


def _factorial(m):
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def _check_params(name: GroupName, max_order):
    tag, p = name.tag, name.params
    arity = {"cyclic": 1, "dihedral": 1, "symmetric": 1, "alternating": 1,
             "quaternion8": 0, "direct_product": 2, "swap_wreath": 1}
    if tag not in arity:
        raise ParameterOutOfRange(f"unknown constructor {tag!r}")
    if len(p) != arity[tag]:
        raise ParameterOutOfRange(f"{tag} takes {arity[tag]} parameter(s), got {len(p)}")
    if tag in ("cyclic", "dihedral") and (not isinstance(p[0], int) or p[0] < 1):
        raise ParameterOutOfRange(f"{tag} parameter must be a positive integer")
    if tag in ("symmetric", "alternating") and not (isinstance(p[0], int) and 1 <= p[0] <= 6):
        raise ParameterOutOfRange(f"{tag}(m) requires 1 <= m <= 6")
    if tag in ("direct_product", "swap_wreath"):
        for sub in p:
            if not isinstance(sub, GroupName):
                raise ParameterOutOfRange(f"{tag} expects group names as parameters")
            _check_params(sub, max_order)
    if max_order is not None and named_order(name) > max_order:
        raise OrderLimitExceeded(f"{name} has order {named_order(name)} > {max_order}")


def make_named(name, max_order: int | None = DEFAULT_MAX_ORDER) -> Group:
    """Build a group from a :class:`GroupName` or its string form."""
    if isinstance(name, str):
        label = name
        name = parse_name(name)
    else:
        label = str(name)
    _check_params(name, max_order)
    G = from_table(_build_table(name), max_order=max_order, name=label)
    return G


def _build_table(name: GroupName) -> np.ndarray:
    tag, p = name.tag, name.params
    if tag == "cyclic":
        n = p[0]
        i = np.arange(n)
        return (i[:, None] + i[None, :]) % n
    if tag == "dihedral":
        return _dihedral_table(p[0])
    if tag == "symmetric":
        return _perm_table(list(itertools.permutations(range(p[0]))))
    if tag == "alternating":
        perms = [q for q in itertools.permutations(range(p[0])) if _is_even(q)]
        return _perm_table(perms)
    if tag == "quaternion8":
        return _quaternion_table()
    if tag == "direct_product":
        A = _build_table(p[0])
        B = _build_table(p[1])
        nb = len(B)
        return (A[:, None, :, None] * nb + B[None, :, None, :]).reshape(len(A) * nb, len(A) * nb)
    if tag == "swap_wreath":
        return _swap_wreath_table(_build_table(p[0]))
    raise ParameterOutOfRange(f"unknown constructor {tag!r}")


def _dihedral_table(m):
    n = 2 * m
    table = np.empty((n, n), dtype=np.intp)
    for a in range(2):
        for i in range(m):
            for b in range(2):
                for j in range(m):
                    rot = (i + (j if a == 0 else -j)) % m
                    table[a * m + i, b * m + j] = ((a + b) % 2) * m + rot
    return table


def _is_even(perm):
    seen, parity = set(), 0
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parity += length - 1
    return parity % 2 == 0


def _perm_table(perms):
    index = {q: i for i, q in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.intp)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            table[i, j] = index[tuple(a[x] for x in b)]
    return table


def _quaternion_table():
    # (sign, unit) with units 1, i, j, k
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    table = np.empty((8, 8), dtype=np.intp)
    for i, (sa, ua) in enumerate(elems):
        for j, (sb, ub) in enumerate(elems):
            s, u = units[(ua, ub)]
            table[i, j] = index[(sa * sb * s, u)]
    return table


def _swap_wreath_table(T):
    t = len(T)
    n = 2 * t * t
    T = np.asarray(T, dtype=np.int32)
    s = np.arange(n, dtype=np.int32) // (t * t)
    a = (np.arange(n, dtype=np.int32) // t) % t
    b = np.arange(n, dtype=np.int32) % t
    # (a, b; s)(c, d; u) = (a, b) * swap^s(c, d); s + u
    left_a, left_b, left_s = a[:, None], b[:, None], s[:, None]
    ra, rb, rs = a[None, :], b[None, :], s[None, :]
    sw_a = np.where(left_s == 0, ra, rb)
    sw_b = np.where(left_s == 0, rb, ra)
    na = T[left_a, sw_a]
    nb = T[left_b, sw_b]
    ns = (left_s + rs) % 2
    return ns * t * t + na * t + nb


CATALOG: dict[str, str] = {}
for _n in range(1, 17):
    CATALOG[f"Z{_n}"] = f"cyclic({_n})"
CATALOG["Z2xZ2"] = "direct_product(cyclic(2),cyclic(2))"
for _m in range(3, 9):
    CATALOG[f"D{_m}"] = f"dihedral({_m})"
CATALOG.update({
    "Q8": "quaternion8",
    "S3": "symmetric(3)",
    "S4": "symmetric(4)",
    "S5": "symmetric(5)",
    "A4": "alternating(4)",
    "A5": "alternating(5)",
    "A4xZ5": "direct_product(alternating(4),cyclic(5))",
    "D30": "dihedral(30)",
    "Z60": "cyclic(60)",
    "A5xA5": "direct_product(alternating(5),alternating(5))",
    "A5wrZ2": "swap_wreath(alternating(5))",
})


def catalog_names(max_order: int | None = None) -> list[str]:
    names = list(CATALOG)
    if max_order is not None:
        names = [nm for nm in names if named_order(parse_name(CATALOG[nm])) <= max_order]
    return names


def catalog_group(name: str) -> Group:
    G = make_named(CATALOG[name])
    G.name = name
    return G


def resolve_group(spec: str, max_order: int | None = DEFAULT_MAX_ORDER) -> Group:
    """A catalog name, a constructor expression, or a path to a table file."""
    if spec in CATALOG:
        return catalog_group(spec)
    path = Path(spec)
    if path.exists():
        return load_group(path, max_order=max_order)
    return make_named(spec, max_order=max_order)


# ---------------------------------------------------------------------------
# subgroup machinery


def element_order(G: Group, g: int) -> int:
    return int(G.element_orders[g])


def generate(G: Group, gens: Iterable[int]) -> SubgroupSet:
    """The subgroup generated by ``gens`` (the trivial subgroup for no generators)."""
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    mask = _closure_mask(G, mask, sorted({int(g) for g in gens}))
    return SubgroupSet.from_mask(G, mask)


def _as_elements(S) -> list[int]:
    if isinstance(S, SubgroupSet):
        return list(S.elements)
    return sorted({int(s) for s in S})


def normal_closure(G: Group, S, ambient: SubgroupSet | None = None) -> SubgroupSet:
    """Smallest subgroup containing ``S`` normalised by ``ambient`` (default ``G``)."""
    acting = G.generators if ambient is None else ambient.generators
    inv = G.inverses
    T = G.table
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    gens: list[int] = []
    queue = _as_elements(S)
    while queue:
        x = queue.pop()
        if mask[x]:
            continue
        gens.append(x)
        mask = _closure_mask(G, mask, gens)
        for g in acting:
            y = int(T[T[g, x], inv[g]])
            if not mask[y]:
                queue.append(y)
    return SubgroupSet.from_mask(G, mask)


def is_normal(G: Group, S) -> bool:
    elems = np.asarray(_as_elements(S), dtype=np.intp)
    mask = np.zeros(G.order, dtype=bool)
    mask[elems] = True
    T, inv = G.table, G.inverses
    for g in G.generators:
        if not mask[T[T[g, elems], inv[g]]].all():
            return False
    return True


def centralizer(G: Group, S) -> SubgroupSet:
    """Elements commuting with every element of ``S``."""
    elems = _as_elements(S)
    gens = _greedy_generators(G, elems) if elems else ()
    T = G.table
    mask = np.ones(G.order, dtype=bool)
    for s in gens:
        mask &= T[:, s] == T[s, :]
    return SubgroupSet.from_mask(G, mask)


def center(G: Group) -> SubgroupSet:
    return centralizer(G, range(G.order))


def whole(G: Group) -> SubgroupSet:
    return SubgroupSet(G, tuple(range(G.order)))


def trivial(G: Group) -> SubgroupSet:
    return SubgroupSet(G, (G.identity,))


def commutator_subgroup(G: Group, N: SubgroupSet) -> SubgroupSet:
    """``[N, N]``: normal closure in ``N`` of the commutators of its generators."""
    T, inv = G.table, G.inverses
    comms = set()
    for a in N.generators:
        for b in N.generators:
            comms.add(int(T[T[a, b], T[inv[a], inv[b]]]))
    return normal_closure(G, comms, ambient=N)


def quotient(G: Group, N) -> tuple[Group, np.ndarray]:
    """Cayley table of ``G/N`` and the projection array (element -> coset index).

    Cosets are numbered in order of their smallest element, so the coset of
    ``N`` itself is the identity of the quotient.
    """
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    Nel = np.asarray(_as_elements(N), dtype=np.intp)
    label = np.full(G.order, -1, dtype=np.intp)
    reps = []
    for x in range(G.order):
        if label[x] < 0:
            label[G.table[x, Nel]] = len(reps)
            reps.append(x)
    reps = np.asarray(reps, dtype=np.intp)
    table = label[G.table[np.ix_(reps, reps)]]
    Q = Group(table, int(label[G.identity]), name=f"{G.name}/N" if G.name else "")
    return Q, label


def preimage(G: Group, projection: np.ndarray, S) -> SubgroupSet:
    target = np.zeros(int(projection.max()) + 1, dtype=bool)
    target[_as_elements(S)] = True
    return SubgroupSet.from_mask(G, target[projection])


def is_homomorphism(G: Group, H: Group, f: Sequence[int]) -> bool:
    f = np.asarray(f, dtype=np.intp)
    for start in range(0, G.order, 512):
        rows = np.arange(start, min(G.order, start + 512))
        lhs = f[G.table[rows]]
        rhs = H.table[f[rows][:, None], f[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_isomorphism(G: Group, H: Group, f: Sequence[int]) -> bool:
    f = np.asarray(f, dtype=np.intp)
    if G.order != H.order or sorted(f.tolist()) != list(range(H.order)):
        return False
    return is_homomorphism(G, H, f)

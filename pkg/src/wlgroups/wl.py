"""1-ary and 2-ary k-dimensional Weisfeiler-Leman coloring of group tuples.

Colorings are computed jointly over ``G^k`` (left) and ``H^k`` (right) with a
single shared dictionary, so equal color ids are comparable across groups.
Color ids are dense and assigned in sorted-signature order; nothing is hashed.

A 2-ary refinement replaces the color of a tuple by its old color together
with the color-isomorphism class of every graph ``Gamma(i, j)``:

* ``i == j``: self-loops only, loop ``y`` colored by ``c(x with x_i := y)``;
  its class is the sorted multiset of loop colors.
* ``i < j``: complete digraph, edge ``(y, z)`` colored by
  ``c(x with x_i := y, x_j := z)``; its class is the exact canonical form.

``Gamma(i, j)`` only depends on the coordinates outside ``{i, j}``, so each
class is computed once per such context rather than once per tuple.  The
1-ary refinement uses the loop graphs alone.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .canon import canonical_form
from .groups import Group
from .structure import marked_type_signature

VERSIONS = ("I", "II")
LEFT, RIGHT = 0, 1

# default caps on the group order per tuple length
MAX_ORDER_FOR_K = {1: 10_000, 2: 256, 3: 40, 4: 16}


class CorollaryViolation(AssertionError):
    """Stable multiset equality and identity-tuple equality disagree."""


class SizeLimitExceeded(ValueError):
    pass


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("WLGROUPS_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Coloring:
    q: int
    k: int
    version: str
    round: int
    left: np.ndarray = field(repr=False)
    right: np.ndarray = field(repr=False)
    num_colors: int
    G: Group = field(repr=False, compare=False)
    H: Group = field(repr=False, compare=False)

    def side(self, s: int) -> np.ndarray:
        return self.left if s == LEFT else self.right

    def color(self, s: int, xs) -> int:
        return int(self.side(s)[tuple(xs)])

    def identity_color(self, s: int) -> int:
        e = (self.G if s == LEFT else self.H).identity
        return self.color(s, (e,) * self.k)

    def identity_colors_equal(self) -> bool:
        return self.identity_color(LEFT) == self.identity_color(RIGHT)

    def histogram(self, s: int) -> np.ndarray:
        return np.bincount(self.side(s).ravel(), minlength=self.num_colors)

    def multiset_equal(self) -> bool:
        return bool(np.array_equal(self.histogram(LEFT), self.histogram(RIGHT)))

    def class_counts(self) -> tuple[int, int]:
        return (int(np.unique(self.left).size), int(np.unique(self.right).size))

    def partition_key(self) -> np.ndarray:
        return np.concatenate([self.left.ravel(), self.right.ravel()])


@dataclass
class RefinementTrace:
    """Per-round class counts: ``(total, left, right)``; ``stable_round`` is the
    first round whose partition equals the next round's."""

    sizes: list[tuple[int, int, int]] = field(default_factory=list)
    stable_round: int | None = None


def _check_size(G: Group, H: Group, k: int, max_order):
    if k < 1:
        raise ValueError("tuple length k must be >= 1")
    limit = MAX_ORDER_FOR_K.get(k, 8) if max_order is None else max_order
    if max(G.order, H.order) > limit:
        raise SizeLimitExceeded(
            f"order {max(G.order, H.order)} exceeds the limit {limit} for k={k}; pass max_order to override")


def _all_tuples(n, k):
    grids = np.indices((n,) * k).reshape(k, -1).T
    return grids


def _partial_iso_rows(G: Group, k: int) -> np.ndarray:
    X = _all_tuples(G.order, k)
    cols = []
    for i in range(k):
        first = np.full(len(X), i)
        for j in range(i - 1, -1, -1):
            first = np.where(X[:, j] == X[:, i], j, first)
        cols.append(first)
    T = G.table
    for i in range(k):
        for j in range(k):
            prod = T[X[:, i], X[:, j]]
            for l in range(k):
                cols.append((prod == X[:, l]).astype(np.int64))
    return np.stack(cols, axis=1).astype(np.int64)


def _dense(keys_left, keys_right):
    """Dense ids by sorted key order over the joint key list."""
    ordered = sorted(set(keys_left) | set(keys_right))
    index = {key: i for i, key in enumerate(ordered)}
    return ([index[key] for key in keys_left], [index[key] for key in keys_right])


def _dense_rows(left: np.ndarray, right: np.ndarray):
    rows = np.concatenate([left, right], axis=0)
    _, inv = np.unique(rows, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    return inv[: len(left)], inv[len(left):], int(inv.max()) + 1 if len(inv) else 0


def initial_coloring(G: Group, H: Group, k: int, version: str = "I", q: int = 2,
                     max_order: int | None = None) -> Coloring:
    """Round-0 coloring: partial-isomorphism type (I) or marked type (II)."""
    if version not in VERSIONS:
        raise ValueError(f"version must be one of {VERSIONS}")
    if q not in (1, 2):
        raise ValueError("only arities 1 and 2 are supported")
    _check_size(G, H, k, max_order)
    shape_l, shape_r = (G.order,) * k, (H.order,) * k
    if version == "I":
        lrows, rrows = _partial_iso_rows(G, k), _partial_iso_rows(H, k)
        lid, rid, m = _dense_rows(lrows, rrows)
    else:
        lk = [marked_type_signature(G, tuple(t)) for t in _all_tuples(G.order, k).tolist()]
        rk = [marked_type_signature(H, tuple(t)) for t in _all_tuples(H.order, k).tolist()]
        lid, rid = _dense(lk, rk)
        m = len(set(lid) | set(rid))
    left = np.asarray(lid, dtype=np.int64).reshape(shape_l)
    right = np.asarray(rid, dtype=np.int64).reshape(shape_r)
    left.setflags(write=False)
    right.setflags(write=False)
    return Coloring(q, k, version, 0, left, right, m, G, H)


# ---------------------------------------------------------------------------
# refinement


def _canon_chunk(args):
    rows, n = args
    return [canonical_form(r, n) for r in rows]


def _canonical_rows(rows: list[tuple], n: int, workers: int) -> list[tuple]:
    unique = sorted(set(rows))
    if workers > 1 and len(unique) > 1:
        size = max(1, -(-len(unique) // (workers * 4)))
        chunks = [(unique[i:i + size], n) for i in range(0, len(unique), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            forms = [f for part in pool.map(_canon_chunk, chunks) for f in part]
    else:
        forms = _canon_chunk((unique, n))
    table = dict(zip(unique, forms))
    return [table[r] for r in rows]


def _loop_rows(A: np.ndarray, i: int) -> tuple[list[tuple], tuple]:
    moved = np.moveaxis(np.sort(A, axis=i), i, -1)
    ctx_shape = moved.shape[:-1]
    return [tuple(r) for r in moved.reshape(-1, A.shape[i]).tolist()], ctx_shape


def _pair_rows(A: np.ndarray, i: int, j: int) -> tuple[list[tuple], tuple]:
    moved = np.moveaxis(A, (i, j), (-2, -1))
    ctx_shape = moved.shape[:-2]
    n = A.shape[i]
    return [tuple(r) for r in moved.reshape(-1, n * n).tolist()], ctx_shape


def _broadcast(ids, ctx_shape, axes, full_shape):
    arr = np.asarray(ids, dtype=np.int64).reshape(ctx_shape)
    for ax in sorted(axes):
        arr = np.expand_dims(arr, ax)
    return np.broadcast_to(arr, full_shape)


def refine_step(c: Coloring, workers: int = 1) -> Coloring:
    """One application of the refinement operator (arity ``c.q``)."""
    G, H, k = c.G, c.H, c.k
    lcols = [c.left]
    rcols = [c.right]
    pairs = [(i, j) for i in range(k) for j in range(i, k)]
    if c.q == 1:
        pairs = [(i, i) for i in range(k)]
    for i, j in pairs:
        if i == j:
            lrows, lctx = _loop_rows(c.left, i)
            rrows, rctx = _loop_rows(c.right, i)
            axes = (i,)
        else:
            lrows, lctx = _pair_rows(c.left, i, j)
            rrows, rctx = _pair_rows(c.right, i, j)
            lrows = [(G.order,) + f for f in _canonical_rows(lrows, G.order, workers)]
            rrows = [(H.order,) + f for f in _canonical_rows(rrows, H.order, workers)]
            axes = (i, j)
        lid, rid = _dense(lrows, rrows)
        lcols.append(_broadcast(lid, lctx, axes, c.left.shape))
        rcols.append(_broadcast(rid, rctx, axes, c.right.shape))
    lsig = np.stack([a.ravel() for a in lcols], axis=1)
    rsig = np.stack([a.ravel() for a in rcols], axis=1)
    lnew, rnew, m = _dense_rows(lsig, rsig)
    left = lnew.astype(np.int64).reshape(c.left.shape)
    right = rnew.astype(np.int64).reshape(c.right.shape)
    left.setflags(write=False)
    right.setflags(write=False)
    return Coloring(c.q, k, c.version, c.round + 1, left, right, m, G, H)


def colorings(G: Group, H: Group, k: int, version: str = "I", q: int = 2,
              max_order: int | None = None, workers: int | None = None):
    """Yield the colorings of rounds 0, 1, 2, ... up to and including the
    first round whose partition repeats (the stable coloring's successor)."""
    workers = default_workers() if workers is None else workers
    c = initial_coloring(G, H, k, version, q, max_order=max_order)
    yield c
    while True:
        nxt = refine_step(c, workers=workers)
        yield nxt
        if nxt.num_colors == c.num_colors:
            return
        c = nxt


def coloring_at(G: Group, H: Group, k: int, r: int, version: str = "I", q: int = 2,
                max_order: int | None = None, workers: int | None = None) -> Coloring:
    """The round-``r`` coloring (refinement past stabilization keeps the partition)."""
    last = None
    for c in colorings(G, H, k, version, q, max_order=max_order, workers=workers):
        last = c
        if c.round == r:
            return c
    return last


def stable_coloring(G: Group, H: Group, k: int, version: str = "I", q: int = 2,
                    max_order: int | None = None, workers: int | None = None
                    ) -> tuple[Coloring, RefinementTrace]:
    trace = RefinementTrace()
    prev = None
    for c in colorings(G, H, k, version, q, max_order=max_order, workers=workers):
        if prev is not None and c.num_colors == prev.num_colors:
            trace.stable_round = prev.round
            return prev, trace
        cl, cr = c.class_counts()
        trace.sizes.append((c.num_colors, cl, cr))
        prev = c
    raise AssertionError("refinement did not stabilize")  # pragma: no cover


def identity_tuple_color(c: Coloring, s: int) -> int:
    return c.identity_color(s)


def multiset_equal(c: Coloring) -> bool:
    return c.multiset_equal()


def distinguishes(G: Group, H: Group, k: int, r: int | None = None, version: str = "I",
                  q: int = 2, max_order: int | None = None, workers: int | None = None) -> bool:
    """Whether the coloring separates ``G`` from ``H`` at round ``r``.

    ``r=None`` means the stable coloring; then the multiset criterion and the
    identity-tuple criterion are both evaluated and must agree.  Groups of
    different orders are separated at round 0.
    """
    if G.order != H.order:
        return True
    if r is None:
        c, _ = stable_coloring(G, H, k, version, q, max_order=max_order, workers=workers)
        same_ms = c.multiset_equal()
        same_id = c.identity_colors_equal()
        if same_ms != same_id:
            raise CorollaryViolation(
                f"multiset equality {same_ms} but identity equality {same_id} for {G!r}, {H!r}")
        return not same_id
    c = coloring_at(G, H, k, r, version, q, max_order=max_order, workers=workers)
    return not c.identity_colors_equal()


@dataclass
class WLReport:
    k: int
    q: int
    version: str
    order_left: int
    order_right: int
    rounds: list[tuple[int, int, int]] = field(default_factory=list)
    stable_round: int | None = None
    first_round: int | None = None  # first round where the identity tuples differ
    first_multiset_round: int | None = None

    @property
    def distinguished(self) -> bool:
        return self.first_round is not None

    def verdict(self) -> str:
        if self.distinguished:
            return f"DISTINGUISHED at round {self.first_round}"
        return f"NOT DISTINGUISHED (stable at round {self.stable_round})"


def run_wl(G: Group, H: Group, k: int, version: str = "I", q: int = 2,
           max_order: int | None = None, workers: int | None = None,
           stop_early: bool = False) -> WLReport:
    """Refine to stability, recording class counts and the first separating round."""
    rep = WLReport(k, q, version, G.order, H.order)
    if G.order != H.order:
        rep.first_round = 0
        rep.first_multiset_round = 0
        rep.stable_round = 0
        return rep
    prev = None
    for c in colorings(G, H, k, version, q, max_order=max_order, workers=workers):
        if prev is not None and c.num_colors == prev.num_colors:
            rep.stable_round = prev.round
            break
        cl, cr = c.class_counts()
        rep.rounds.append((c.num_colors, cl, cr))
        if rep.first_round is None and not c.identity_colors_equal():
            rep.first_round = c.round
        if rep.first_multiset_round is None and not c.multiset_equal():
            rep.first_multiset_round = c.round
        prev = c
        if stop_early and rep.first_round is not None:
            break
    return rep

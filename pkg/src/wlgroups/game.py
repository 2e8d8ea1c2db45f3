"""Exact solver for the q-ary bijective pebble game on a pair of groups.

A configuration assigns each of the ``k`` pebble pairs either nothing or a
pair ``(g, h)``.  One round: Spoiler lifts a set ``L`` of at most ``min(q, k)``
pebbles, Duplicator answers with a bijection ``f: G -> H``, and Spoiler puts
between 1 and ``|L|`` of the lifted pebbles on elements ``v`` (partner
``f(v)``); lifted pebbles not put back stay off the board.  Spoiler wins as
soon as the pebbled correspondence stops being a partial isomorphism
(Version I) or a marked isomorphism (Version II).

The winning condition is checked on every configuration reached, which is
the same as checking it right after the lift: both conditions are inherited
by sub-configurations, so a map that fails after the lift already failed.

Spoiler's value is computed top down with memoisation on (normalised
configuration, rounds left).  Pebbles are interchangeable, so a configuration
is normalised to its sorted list of pebbled pairs.  For a fixed lift,
Duplicator's reply is searched by backtracking: ``f`` is assigned element by
element and each partial assignment is checked against every placement it
already determines.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import Group

DEFAULT_MAX_ORDER = 6


class GameError(ValueError):
    pass


class SizeMismatch(GameError):
    pass


class MalformedCertificate(GameError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GameSpec:
    k: int
    r: int
    q: int = 2
    version: str = "I"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if self.q not in (1, 2, 3):
            raise ValueError("q must be 1, 2 or 3")
        if self.version not in ("I", "II"):
            raise ValueError("version must be 'I' or 'II'")

    def with_rounds(self, r: int) -> "GameSpec":
        return GameSpec(self.k, r, self.q, self.version)


@dataclass(frozen=True)
class GameConfig:
    """``slots[i]`` is ``None`` or the pebbled pair ``(g, h)`` of pebble ``i``."""

    slots: tuple

    @classmethod
    def empty(cls, k: int) -> "GameConfig":
        return cls((None,) * k)

    @classmethod
    def from_tuples(cls, xs: Sequence[int], ys: Sequence[int]) -> "GameConfig":
        if len(xs) != len(ys):
            raise ValueError("tuples must have equal length")
        return cls(tuple((int(a), int(b)) for a, b in zip(xs, ys)))

    @property
    def k(self) -> int:
        return len(self.slots)

    def pairs(self) -> list[tuple[int, int]]:
        return [p for p in self.slots if p is not None]

    def normalized(self) -> tuple:
        return _normalize(self.pairs(), self.k)


def _normalize(pairs: Iterable[tuple[int, int]], k: int) -> tuple:
    placed = sorted(pairs)
    return tuple(placed) + (None,) * (k - len(placed))


# ---------------------------------------------------------------------------
# winning conditions, straight from the definitions


def is_partial_iso(G: Group, H: Group, xs: Sequence[int], ys: Sequence[int]) -> bool:
    """``x_i -> y_i`` is a well defined injective map that preserves and
    reflects every product ``x_i x_j = x_l`` among the pebbled elements."""
    m = len(xs)
    for i in range(m):
        for j in range(m):
            if (xs[i] == xs[j]) != (ys[i] == ys[j]):
                return False
    for i in range(m):
        for j in range(m):
            gp = G.mul(xs[i], xs[j])
            hp = H.mul(ys[i], ys[j])
            for l in range(m):
                if (gp == xs[l]) != (hp == ys[l]):
                    return False
    return True


def is_marked_iso(G: Group, H: Group, xs: Sequence[int], ys: Sequence[int]) -> bool:
    """``x_i -> y_i`` extends to an isomorphism ``<xs> -> <ys>``."""
    phi = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for x, y in zip(xs, ys):
                b, c = G.mul(a, x), H.mul(phi[a], y)
                if b in phi:
                    if phi[b] != c:
                        return False
                else:
                    phi[b] = c
                    nxt.append(b)
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return False
    image = set(phi.values())
    # the image must be closed, otherwise <ys> is larger than <xs>
    for y in ys:
        if any(H.mul(c, y) not in image for c in image):
            return False
    return all(phi[G.mul(a, b)] == H.mul(phi[a], phi[b]) for a in phi for b in phi)


# ---------------------------------------------------------------------------
# certificates


@dataclass(eq=False)
class CertNode:
    """One Spoiler decision.  ``lift is None`` marks a leaf whose configuration
    already fails the winning condition.  ``branches`` maps each Duplicator
    bijection (as a tuple ``f[g]``) to ``(placement, child)`` where
    ``placement`` is a tuple of ``(pebble index, element of G)``."""

    config: tuple
    rounds: int
    lift: tuple | None = None
    branches: dict = field(default_factory=dict)


@dataclass
class GameResult:
    spoiler_wins: bool
    spec: GameSpec
    certificate: CertNode | None = None
    nodes: int = 0


# ---------------------------------------------------------------------------
# solver


class Solver:
    def __init__(self, G: Group, H: Group, k: int, q: int = 2, version: str = "I",
                 inverse_pruning: bool = False, max_nodes: int | None = 5_000_000,
                 time_limit: float | None = None, max_order: int = DEFAULT_MAX_ORDER):
        if G.order != H.order:
            raise SizeMismatch(f"orders differ ({G.order} vs {H.order}); Spoiler wins at round 0")
        if G.order > max_order:
            raise BudgetExceeded(f"order {G.order} above the solver limit {max_order}")
        GameSpec(k, 0, q, version)
        self.G, self.H = G, H
        self.n = G.order
        self.k, self.q, self.version = k, q, version
        self.inverse_pruning = inverse_pruning
        self.max_nodes = max_nodes
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self._win: dict = {}
        self._fail: dict = {}
        self.nodes = 0
        self._ginv = [G.inv(a) for a in range(self.n)]
        self._hinv = [H.inv(a) for a in range(self.n)]

    # -- basic predicates

    def fails(self, cfg: tuple) -> bool:
        res = self._fail.get(cfg)
        if res is None:
            pairs = [p for p in cfg if p is not None]
            xs = [a for a, _ in pairs]
            ys = [b for _, b in pairs]
            if self.version == "I":
                res = not is_partial_iso(self.G, self.H, xs, ys)
            else:
                res = not is_marked_iso(self.G, self.H, xs, ys)
            self._fail[cfg] = res
        return res

    def lifts(self, cfg: tuple) -> list[tuple[int, ...]]:
        """Distinct lifts of a normalised configuration, largest first."""
        placed = [i for i, p in enumerate(cfg) if p is not None]
        empty = [i for i, p in enumerate(cfg) if p is None]
        out = []
        for m in range(min(self.q, self.k), 0, -1):
            for s in range(min(m, len(placed)), -1, -1):
                if m - s > len(empty):
                    continue
                for chosen in itertools.combinations(placed, s):
                    out.append(tuple(sorted(chosen + tuple(empty[:m - s]))))
        return out

    # -- main recursion

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted")
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")

    def win(self, cfg: tuple, r: int) -> bool:
        key = (cfg, r)
        res = self._win.get(key)
        if res is not None:
            return res
        self._tick()
        if self.fails(cfg):
            res = True
        elif r == 0:
            res = False
        else:
            res = any(self.duplicator_reply(cfg, lift, r) is None for lift in self.lifts(cfg))
        self._win[key] = res
        return res

    def _child(self, base, elems, f):
        return _normalize(base + [(v, f[v]) for v in elems], self.k)

    def _pruning_level(self, m: int) -> int:
        """0: none, 1: identity preserving, 2: also inverse compatible.

        Excluded bijections must lose at once to a placement of the lifted
        pebbles: ``f(e) != e`` loses to a pebble on ``e``; ``f(x^-1) !=
        f(x)^-1`` loses to pebbles on ``x, x^-1`` in Version II, and needs a
        third pebble on ``e`` in Version I.
        """
        if not self.inverse_pruning:
            return 0
        if m >= 3 or (m == 2 and self.version == "II"):
            return 2
        return 1

    def duplicator_reply(self, cfg: tuple, lift: tuple, r: int) -> tuple | None:
        """A bijection under which every placement loses for Spoiler, or None."""
        n = self.n
        m = len(lift)
        base = [p for i, p in enumerate(cfg) if p is not None and i not in lift]
        level = self._pruning_level(m)
        eG, eH = self.G.identity, self.H.identity
        f = [-1] * n
        used = [False] * n
        assigned: list[int] = []

        def safe(v):
            # every multiset of <= m placed elements that contains v and
            # otherwise only earlier elements
            others = assigned
            for j in range(1, m + 1):
                for rest in itertools.combinations_with_replacement(others + [v], j - 1):
                    elems = (v,) + rest
                    if self.win(self._child(base, elems, f), r - 1):
                        return False
            return True

        def allowed(v, w):
            if level >= 1 and (v == eG) != (w == eH):
                return False
            if level >= 2:
                vi = self._ginv[v]
                if f[vi] >= 0 and self._hinv[f[vi]] != w:
                    return False
                if vi == v and self._hinv[w] != w:
                    return False
            return True

        def extend(v):
            if v == n:
                return True
            for w in range(n):
                if used[w] or not allowed(v, w):
                    continue
                f[v] = w
                used[w] = True
                if safe(v):
                    assigned.append(v)
                    if extend(v + 1):
                        return True
                    assigned.pop()
                f[v] = -1
                used[w] = False
            return False

        if extend(0):
            return tuple(f)
        return None

    # -- certificates

    def certificate(self, cfg: tuple, r: int, _memo=None) -> CertNode:
        """Winning strategy tree for a configuration Spoiler wins.  Covers all
        ``n!`` bijections regardless of pruning."""
        memo = {} if _memo is None else _memo
        key = (cfg, r)
        if key in memo:
            return memo[key]
        if not self.win(cfg, r):
            raise ValueError("Spoiler does not win from this configuration")
        if self.fails(cfg):
            node = CertNode(cfg, r)
            memo[key] = node
            return node
        lift = next(L for L in self.lifts(cfg) if self.duplicator_reply(cfg, L, r) is None)
        node = CertNode(cfg, r, lift)
        memo[key] = node
        base = [p for i, p in enumerate(cfg) if p is not None and i not in lift]
        for perm in itertools.permutations(range(self.n)):
            hit = None
            for j in range(1, len(lift) + 1):
                for elems in itertools.combinations_with_replacement(range(self.n), j):
                    child = self._child(base, elems, perm)
                    if self.win(child, r - 1):
                        hit = (tuple(zip(lift, elems)), child)
                        break
                if hit:
                    break
            if hit is None:  # pragma: no cover - contradicts win()
                raise AssertionError("no winning placement for a bijection")
            node.branches[perm] = (hit[0], self.certificate(hit[1], r - 1, memo))
        return node


def spoiler_wins(G: Group, H: Group, spec: GameSpec, start: GameConfig | None = None,
                 certificate: bool = False, inverse_pruning: bool = False,
                 solver: Solver | None = None, **budget) -> GameResult:
    """Solve the game ``spec`` from ``start`` (default: no pebbles on the board)."""
    if G.order != H.order:
        raise SizeMismatch(f"orders differ ({G.order} vs {H.order}); Spoiler wins at round 0")
    start = GameConfig.empty(spec.k) if start is None else start
    if start.k != spec.k:
        raise ValueError("configuration has the wrong number of pebbles")
    for a, b in start.pairs():
        if not (0 <= a < G.order and 0 <= b < H.order):
            raise ValueError(f"pebbled pair {(a, b)} out of range")
    if solver is None:
        solver = Solver(G, H, spec.k, spec.q, spec.version, inverse_pruning=inverse_pruning, **budget)
    cfg = start.normalized()
    won = solver.win(cfg, spec.r)
    cert = solver.certificate(cfg, spec.r) if (won and certificate) else None
    return GameResult(won, spec, cert, solver.nodes)


def minimal_rounds(G: Group, H: Group, spec: GameSpec, start: GameConfig | None = None,
                   inverse_pruning: bool = False, **budget) -> int | None:
    """Least ``r <= spec.r`` at which Spoiler wins, by binary search, or None."""
    start = GameConfig.empty(spec.k) if start is None else start
    solver = Solver(G, H, spec.k, spec.q, spec.version, inverse_pruning=inverse_pruning, **budget)
    cfg = start.normalized()
    if not solver.win(cfg, spec.r):
        return None
    lo, hi = 0, spec.r
    while lo < hi:
        mid = (lo + hi) // 2
        if solver.win(cfg, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def verify_certificate(G: Group, H: Group, spec: GameSpec, start: GameConfig | None,
                       cert: CertNode) -> bool:
    """Replay ``cert`` against every bijection at every node."""
    if G.order != H.order:
        raise SizeMismatch("orders differ")
    if not isinstance(cert, CertNode):
        raise MalformedCertificate("certificate root is not a node")
    start = GameConfig.empty(spec.k) if start is None else start
    n, k = G.order, spec.k
    judge = Solver(G, H, k, spec.q, spec.version, max_nodes=None, max_order=max(n, 1))
    if cert.config != start.normalized():
        raise MalformedCertificate("root configuration does not match the start")
    if cert.rounds > spec.r:
        raise MalformedCertificate("certificate uses more rounds than allowed")
    seen: dict[int, bool] = {}
    perms = list(itertools.permutations(range(n)))

    def check(node) -> bool:
        if not isinstance(node, CertNode):
            raise MalformedCertificate("child is not a node")
        if id(node) in seen:
            return seen[id(node)]
        cfg = node.config
        if not isinstance(cfg, tuple) or len(cfg) != k:
            raise MalformedCertificate("configuration has the wrong length")
        if node.lift is None:
            ok = judge.fails(cfg)
            seen[id(node)] = ok
            return ok
        lift = node.lift
        if (not lift or len(set(lift)) != len(lift) or len(lift) > min(spec.q, k)
                or any(not (0 <= i < k) for i in lift)):
            raise MalformedCertificate(f"illegal lift {lift}")
        if node.rounds < 1:
            raise MalformedCertificate("move made with no rounds left")
        base = [p for i, p in enumerate(cfg) if p is not None and i not in lift]
        ok = True
        for perm in perms:
            branch = node.branches.get(perm)
            if branch is None:
                ok = False
                break
            placement, child = branch
            idx = [i for i, _ in placement]
            if (not placement or len(set(idx)) != len(idx) or any(i not in lift for i in idx)
                    or any(not (0 <= v < n) for _, v in placement)):
                raise MalformedCertificate(f"illegal placement {placement}")
            want = _normalize(base + [(v, perm[v]) for _, v in placement], k)
            if not isinstance(child, CertNode) or child.config != want:
                raise MalformedCertificate("child configuration does not follow from the move")
            if child.rounds != node.rounds - 1:
                raise MalformedCertificate("child round count is inconsistent")
            if not check(child):
                ok = False
                break
        seen[id(node)] = ok
        return ok

    return check(cert)


def dump_certificate(cert: CertNode, max_lines: int | None = None) -> str:
    """Indented text tree; shared subtrees are printed once and referenced."""
    lines: list[str] = []
    ids: dict[int, int] = {}

    def fmt_cfg(cfg):
        return "[" + " ".join("_" if p is None else f"{p[0]}:{p[1]}" for p in cfg) + "]"

    def walk(node, depth):
        pad = "  " * depth
        if id(node) in ids:
            lines.append(f"{pad}-> node {ids[id(node)]}")
            return
        ids[id(node)] = len(ids)
        head = f"{pad}node {ids[id(node)]} rounds={node.rounds} config={fmt_cfg(node.config)}"
        if node.lift is None:
            lines.append(head + " fails")
            return
        lines.append(head + f" lift={list(node.lift)}")
        for perm, (placement, child) in node.branches.items():
            place = " ".join(f"p{i}={v}" for i, v in placement)
            lines.append(f"{pad}  f={''.join(map(str, perm)) if len(perm) <= 10 else perm} place {place}")
            walk(child, depth + 2)

    walk(cert, 0)
    if max_lines is not None and len(lines) > max_lines:
        lines = lines[:max_lines] + [f"... ({len(lines) - max_lines} more lines)"]
    return "\n".join(lines) + "\n"

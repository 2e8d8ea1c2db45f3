"""Exact canonical forms for edge-colored complete digraphs.

Canonical labeling by individualization-refinement: the vertex partition
starts from self-loop colors and is refined by the multiset of
``(out-color, in-color, neighbour cell)`` triples until equitable.  When the
partition is not discrete the first smallest non-singleton cell is split by
individualizing each member in turn; the canonical form is the
lexicographically least leaf matrix.  Automorphisms found along the way prune
sibling branches in the same orbit, which never changes the output.

Encoding of a :class:`CanonicalClass` as bytes (stable across processes)::

    magic b"ECG1", mode byte (0 loops, 1 complete), n (u32),
    palette size p (u32), palette (p x i64, original colors in first-occurrence order),
    body (u32 per entry): loops -> sorted colors, complete -> row-major matrix,
    each entry re-indexed by first occurrence in the palette.
"""
from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np


class SizeMismatch(ValueError):
    pass


class Mode(Enum):
    LOOPS_ONLY = 0
    COMPLETE = 1


@dataclass(frozen=True)
class EdgeColoredGraph:
    """``colors`` is an n-vector (loops only) or an n x n matrix (complete digraph)."""

    n: int
    mode: Mode
    colors: tuple

    @classmethod
    def loops(cls, colors: Sequence[int]) -> "EdgeColoredGraph":
        colors = tuple(int(c) for c in colors)
        _check_colors(colors)
        return cls(len(colors), Mode.LOOPS_ONLY, colors)

    @classmethod
    def complete(cls, matrix) -> "EdgeColoredGraph":
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("complete digraph needs a square color matrix")
        flat = tuple(int(c) for c in m.ravel())
        _check_colors(flat)
        return cls(m.shape[0], Mode.COMPLETE, flat)

    def matrix(self) -> np.ndarray:
        if self.mode is Mode.LOOPS_ONLY:
            return np.diag(self.colors) if self.n else np.zeros((0, 0), dtype=int)
        return np.asarray(self.colors, dtype=np.int64).reshape(self.n, self.n)

    def permute(self, sigma: Sequence[int]) -> "EdgeColoredGraph":
        """Relabel vertex ``v`` as ``sigma[v]``."""
        sigma = list(sigma)
        n = self.n
        if self.mode is Mode.LOOPS_ONLY:
            out = [0] * n
            for v in range(n):
                out[sigma[v]] = self.colors[v]
            return EdgeColoredGraph(n, self.mode, tuple(out))
        out = [0] * (n * n)
        c = self.colors
        for y in range(n):
            for z in range(n):
                out[sigma[y] * n + sigma[z]] = c[y * n + z]
        return EdgeColoredGraph(n, self.mode, tuple(out))

    def dump(self) -> str:
        """Debug dump: n, mode, then the color rows."""
        lines = [str(self.n), self.mode.name]
        if self.mode is Mode.LOOPS_ONLY:
            lines.append(" ".join(map(str, self.colors)))
        else:
            for y in range(self.n):
                lines.append(" ".join(map(str, self.colors[y * self.n:(y + 1) * self.n])))
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "EdgeColoredGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n = int(lines[0])
        mode = Mode[lines[1].strip()]
        if mode is Mode.LOOPS_ONLY:
            return cls.loops([int(t) for t in lines[2].split()] if n else [])
        return cls.complete([[int(t) for t in ln.split()] for ln in lines[2:2 + n]])


def _check_colors(colors):
    if any(c < 0 for c in colors):
        raise ValueError("color ids must be non-negative")


@dataclass(frozen=True, order=True)
class CanonicalClass:
    mode: int
    n: int
    form: tuple

    def to_bytes(self) -> bytes:
        palette: dict[int, int] = {}
        for c in self.form:
            palette.setdefault(c, len(palette))
        head = b"ECG1" + struct.pack("<BII", self.mode, self.n, len(palette))
        pal = struct.pack(f"<{len(palette)}q", *palette)
        body = struct.pack(f"<{len(self.form)}I", *(palette[c] for c in self.form))
        return head + pal + body


def canonical_class(g: EdgeColoredGraph) -> CanonicalClass:
    if g.mode is Mode.LOOPS_ONLY:
        return CanonicalClass(0, g.n, tuple(sorted(g.colors)))
    return CanonicalClass(1, g.n, canonical_form(g.colors, g.n))


def color_isomorphic(g1: EdgeColoredGraph, g2: EdgeColoredGraph) -> bool:
    """Exhaustive check over all ``n!`` bijections (oracle for small n)."""
    if g1.n != g2.n or g1.mode is not g2.mode:
        raise SizeMismatch("graphs differ in size or mode")
    n = g1.n
    if sorted(g1.colors) != sorted(g2.colors):
        return False
    if g1.mode is Mode.LOOPS_ONLY:
        return True
    a, b = g1.colors, g2.colors
    for perm in itertools.permutations(range(n)):
        if all(a[y * n + z] == b[perm[y] * n + perm[z]] for y in range(n) for z in range(n)):
            return True
    return False


# ---------------------------------------------------------------------------
# individualization-refinement


def _refine(M, n, cells):
    """Refine an ordered partition (list of lists) to an equitable one."""
    while True:
        cell_of = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            keyed = []
            for v in cell:
                row = v * n
                key = sorted([(M[row + u], M[u * n + v], cell_of[u]) for u in range(n) if u != v])
                keyed.append((key, v))
            keyed.sort()
            start = 0
            for i in range(1, len(keyed) + 1):
                if i == len(keyed) or keyed[i][0] != keyed[start][0]:
                    out.append([v for _, v in keyed[start:i]])
                    start = i
        if len(out) == len(cells):
            return out
        cells = out


def _leaf(M, n, order):
    return tuple(M[a * n + b] for a in order for b in order)


class _Search:
    def __init__(self, M, n):
        self.M = M
        self.n = n
        self.first = None  # (form, order, path)
        self.best = None
        self.gens: list[tuple[int, ...]] = []

    def run(self, cells):
        self._dfs(cells, [])
        return self.best[0]

    def _orbit_rep(self, path):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if all(g[v] == v for v in path):
                for v in range(self.n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def _dfs(self, cells, path):
        cells = _refine(self.M, self.n, cells)
        depth = len(path)
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            form = _leaf(self.M, self.n, order)
            if self.first is None:
                self.first = self.best = (form, order, list(path))
                return None
            for ref in (self.first, self.best):
                if form == ref[0]:
                    gen = [0] * self.n
                    for a, b in zip(ref[1], order):
                        gen[a] = b
                    self.gens.append(tuple(gen))
                    common = 0
                    for u, v in zip(ref[2], path):
                        if u != v:
                            break
                        common += 1
                    return common
            if form < self.best[0]:
                self.best = (form, order, list(path))
            return None
        size = min(len(c) for c in cells if len(c) > 1)
        ti = next(i for i, c in enumerate(cells) if len(c) == size)
        target = sorted(cells[ti])
        tried: list[int] = []
        for v in target:
            if tried:
                find = self._orbit_rep(path)
                rv = find(v)
                if any(find(u) == rv for u in tried):
                    continue
            tried.append(v)
            rest = [u for u in cells[ti] if u != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1:]
            jump = self._dfs(child, path + [v])
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_form(M: Sequence[int], n: int) -> tuple:
    """Canonical row-major color matrix of a complete digraph (flat, length n*n)."""
    if n <= 1:
        return tuple(M)
    M = list(M)
    loops = sorted({M[v * n + v] for v in range(n)})
    cells = [[v for v in range(n) if M[v * n + v] == c] for c in loops]
    return _Search(M, n).run(cells)


def canonical_forms(matrices: Sequence[Sequence[int]], n: int) -> list[tuple]:
    return [canonical_form(M, n) for M in matrices]

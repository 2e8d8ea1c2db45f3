"""Batch experiments behind ``check-equivalence`` and the acceptance suite.

Every experiment returns a :class:`Report` whose ``kv()`` text is a pure
function of its inputs: timings are kept out of it, and parallel jobs are
collected in submission order, so the worker count never changes the output.
"""
from __future__ import annotations

import functools
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import canon
from .game import GameConfig, Solver
from .groups import Group, catalog_group, catalog_names, relabel
from .wl import CorollaryViolation, coloring_at, run_wl, stable_coloring


@dataclass
class Report:
    item: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)
    cells: list = field(default_factory=list)  # kept out of kv()

    def add(self, **kv):
        self.lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in kv.items()))

    def kv(self) -> str:
        tail = f"item={self.item} result={'PASS' if self.passed else 'FAIL'}"
        return "\n".join(self.lines + [tail]) + "\n"


def _fmt(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return str(v)


@dataclass(frozen=True)
class Cell:
    """One WL evaluation: does ``(k, r)`` with arity ``q`` separate the pair?
    ``r is None`` means the stable coloring."""

    left: str
    right: str
    k: int
    r: int | None
    q: int
    version: str
    distinguished: bool


@functools.lru_cache(maxsize=None)
def group(name: str) -> Group:
    return catalog_group(name)


def _map(fn, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def equal_order_pairs(names) -> list[tuple[str, str]]:
    """Ordered pairs (including a group with itself) of equal order."""
    return [(a, b) for a, b in itertools.product(names, names) if group(a).order == group(b).order]


# ---------------------------------------------------------------------------
# coloring vs game


def _pebblings(a, b, k, n, samples):
    rng = random.Random(f"pebblings|{a}|{b}|{k}")
    out = [GameConfig.empty(k)]
    for _ in range(samples):
        xs = [rng.randrange(n) for _ in range(k)]
        ys = [rng.randrange(n) for _ in range(k)]
        out.append(GameConfig.from_tuples(xs, ys))
    return out


def _coloring_game_job(args):
    a, b, k, rs, versions, samples = args
    G, H = group(a), group(b)
    starts = _pebblings(a, b, k, G.order, samples)
    rows = []
    for version in versions:
        solver = Solver(G, H, k, 2, version)
        for r in rs:
            c = coloring_at(G, H, k, r, version, 2, max_order=max(G.order, 8))
            agree = 0
            first_bad = None
            for s in starts:
                game = solver.win(s.normalized(), r)
                if s.pairs():
                    xs = tuple(p[0] for p in s.slots)
                    ys = tuple(p[1] for p in s.slots)
                    wl = bool(c.left[xs] != c.right[ys])
                else:
                    wl = not c.identity_colors_equal()
                if game == wl:
                    agree += 1
                elif first_bad is None:
                    first_bad = s.slots
            empty_game = solver.win(starts[0].normalized(), r)
            rows.append((version, r, len(starts), agree, empty_game, first_bad))
    return rows


def coloring_game_grid(pairs, k: int = 2, rs=(0, 1, 2), versions=("I", "II"),
                       samples: int = 50, workers: int = 1, item: str = "1") -> Report:
    """Round-r color inequality against the exact game value, from the empty
    start (compared with the identity tuple) and from sampled pebblings."""
    rep = Report(item)
    jobs = [(a, b, k, tuple(rs), tuple(versions), samples) for a, b in pairs]
    for (a, b), rows in zip(pairs, _map(_coloring_game_job, jobs, workers)):
        for version, r, total, agree, empty_game, bad in rows:
            ok = agree == total
            rep.passed &= ok
            rep.add(pair=f"{a},{b}", k=k, q=2, version=version, r=r, starts=total,
                    agree=agree, empty_start_spoiler=empty_game, ok=ok)
            if bad is not None:
                rep.add(pair=f"{a},{b}", version=version, r=r, first_disagreement=list(bad))
            rep.cells.append(Cell(a, b, k, r, 2, version, empty_game))
    return rep


# ---------------------------------------------------------------------------
# corollary, soundness


def _corollary_job(args):
    a, b, ks, versions = args
    G, H = group(a), group(b)
    rows = []
    for k in ks:
        for version in versions:
            c, trace = stable_coloring(G, H, k, version, 2)
            rows.append((k, version, c.multiset_equal(), c.identity_colors_equal(), trace.stable_round))
    return rows


def corollary_check(max_order: int = 12, ks=(1, 2), versions=("I", "II"), workers: int = 1) -> Report:
    rep = Report("2")
    pairs = equal_order_pairs(catalog_names(max_order))
    jobs = [(a, b, tuple(ks), tuple(versions)) for a, b in pairs]
    for (a, b), rows in zip(pairs, _map(_corollary_job, jobs, workers)):
        for k, version, ms, ident, stable in rows:
            ok = ms == ident
            rep.passed &= ok
            rep.add(pair=f"{a},{b}", k=k, q=2, version=version, stable_round=stable,
                    multisets_equal=ms, identity_equal=ident, ok=ok)
            rep.cells.append(Cell(a, b, k, None, 2, version, not ident))
    return rep


def relabelings(name: str, count: int, seed: int = 0) -> list[Group]:
    G = group(name)
    rng = np.random.default_rng([seed, G.order, sum(map(ord, name))])
    out = []
    for i in range(count):
        H = relabel(G, rng.permutation(G.order))
        H.name = f"{name}~{i}"
        out.append(H)
    return out


def _soundness_job(args):
    name, count, seed, ks, qs, versions = args
    G = group(name)
    rows = []
    for i, H in enumerate(relabelings(name, count, seed)):
        for k in ks:
            for q in qs:
                for version in versions:
                    try:
                        c, _ = stable_coloring(G, H, k, version, q)
                        ms, ident = c.multiset_equal(), c.identity_colors_equal()
                        dist = not ident
                        err = None if ms == ident else "corollary"
                    except CorollaryViolation:  # pragma: no cover
                        dist, err = True, "corollary"
                    rows.append((i, k, q, version, dist, err))
    return rows


def soundness_check(max_order: int = 16, count: int = 5, seed: int = 0, ks=(1, 2), qs=(1, 2),
                    versions=("I", "II"), workers: int = 1) -> Report:
    rep = Report("3")
    names = catalog_names(max_order)
    jobs = [(nm, count, seed, tuple(ks), tuple(qs), tuple(versions)) for nm in names]
    for name, rows in zip(names, _map(_soundness_job, jobs, workers)):
        bad = [row for row in rows if row[4] or row[5]]
        rep.passed &= not bad
        rep.add(group=name, order=group(name).order, relabelings=count, cells=len(rows),
                distinguished=len(bad), ok=not bad)
        for i, k, q, version, dist, _ in rows:
            rep.cells.append(Cell(name, f"{name}~{i}", k, None, q, version, dist))
    return rep


# ---------------------------------------------------------------------------
# version comparison


def _resolve(label: str, seed: int, count: int) -> Group:
    if "~" in label:
        base, i = label.split("~")
        return relabelings(base, count, seed)[int(i)]
    return group(label)


def version_comparison(cells, seed: int = 0, count: int = 5, max_k: int = 4) -> Report:
    """Version I at (k, r) implies Version II at (k, r); for q = 2, Version II
    at (k, r) implies Version I at (k + 2, r + 1) whenever k + 2 <= max_k."""
    rep = Report("4")
    index = {(c.left, c.right, c.k, c.r, c.q, c.version): c.distinguished for c in cells}
    checked_dom = checked_up = violations = 0
    extra: dict = {}
    for (a, b, k, r, q, version), dist in sorted(index.items(), key=lambda kv: str(kv[0])):
        if version != "I":
            continue
        two = index.get((a, b, k, r, q, "II"))
        if two is None:
            continue
        checked_dom += 1
        if dist and not two:
            violations += 1
            rep.add(pair=f"{a},{b}", k=k, r=r, q=q, violation="I_without_II")
    for (a, b, k, r, q, version), dist in sorted(index.items(), key=lambda kv: str(kv[0])):
        if version != "II" or q != 2 or not dist or k + 2 > max_k:
            continue
        r2 = None if r is None else r + 1
        key = (a, b, k + 2, r2)
        if key not in extra:
            G, H = _resolve(a, seed, count), _resolve(b, seed, count)
            if G.order != H.order:
                extra[key] = True
            elif r2 is None:
                c, _ = stable_coloring(G, H, k + 2, "I", 2, max_order=max(G.order, 16))
                extra[key] = not c.identity_colors_equal()
            else:
                c = coloring_at(G, H, k + 2, r2, "I", 2, max_order=max(G.order, 16))
                extra[key] = not c.identity_colors_equal()
        checked_up += 1
        if not extra[key]:
            violations += 1
            rep.add(pair=f"{a},{b}", k=k, r=r, q=q, violation="II_without_I_k+2_r+1")
    rep.passed = violations == 0
    rep.add(dominance_cells=checked_dom, lifted_cells=checked_up, extra_runs=len(extra),
            violations=violations)
    return rep


# ---------------------------------------------------------------------------
# semisimple separation


def _separation_job(args):
    a, b, k, version, canon_workers = args
    return run_wl(group(a), group(b), k, version, 2, max_order=64, workers=canon_workers)


def semisimple_separation(others=("Z60", "D30", "A4xZ5"), base: str = "A5", k: int = 2,
                          version: str = "II", workers: int = 1) -> Report:
    rep = Report("7")
    jobs = [(base, o, k, version, 1) for o in others]
    for o, wr in zip(others, _map(_separation_job, jobs, workers)):
        ok = wr.distinguished
        rep.passed &= ok
        rep.add(pair=f"{base},{o}", k=k, q=2, version=version, first_identity_round=wr.first_round,
                first_multiset_round=wr.first_multiset_round, stable_round=wr.stable_round,
                classes=[t[0] for t in wr.rounds], ok=ok)
    return rep


# ---------------------------------------------------------------------------
# canonical forms


def random_digraph(rng: random.Random, n: int, colors: int) -> tuple:
    return tuple(rng.randrange(colors) for _ in range(n * n))


def _canon_job(args):
    seed, start, stop = args
    rows = []
    for t in range(start, stop):
        rng = random.Random(f"canon|{seed}|{t}")
        n = rng.randint(1, 7)
        colors = rng.randint(1, 4)
        g1 = canon.EdgeColoredGraph(n, canon.Mode.COMPLETE, random_digraph(rng, n, colors))
        sigma = list(range(n))
        rng.shuffle(sigma)
        g_perm = g1.permute(sigma)
        # independent partner: half of the time a near copy, so isomorphic
        # and non-isomorphic pairs both appear
        if rng.random() < 0.5:
            g2 = canon.EdgeColoredGraph(n, canon.Mode.COMPLETE, random_digraph(rng, n, colors))
        else:
            cols = list(g_perm.colors)
            i = rng.randrange(n * n)
            cols[i] = rng.randrange(colors)
            g2 = canon.EdgeColoredGraph(n, canon.Mode.COMPLETE, tuple(cols))
        c1 = canon.canonical_class(g1)
        relabel_ok = c1 == canon.canonical_class(g_perm)
        same = c1 == canon.canonical_class(g2)
        oracle = canon.color_isomorphic(g1, g2)
        rows.append((t, n, colors, relabel_ok, same, oracle))
    return rows


def canon_completeness(trials: int = 1000, seed: int = 0, workers: int = 1, chunk: int = 50) -> Report:
    rep = Report("8")
    jobs = [(seed, s, min(trials, s + chunk)) for s in range(0, trials, chunk)]
    rows = [row for part in _map(_canon_job, jobs, workers) for row in part]
    relabel_fail = [r for r in rows if not r[3]]
    oracle_fail = [r for r in rows if r[4] != r[5]]
    iso = sum(1 for r in rows if r[5])
    for t, n, colors, _, same, oracle in (relabel_fail + oracle_fail)[:20]:
        rep.add(trial=t, n=n, colors=colors, canon_equal=same, oracle_iso=oracle)
    rep.passed = not relabel_fail and not oracle_fail
    rep.add(trials=len(rows), relabel_mismatches=len(relabel_fail), oracle_mismatches=len(oracle_fail),
            isomorphic_pairs=iso, non_isomorphic_pairs=len(rows) - iso)
    return rep


# ---------------------------------------------------------------------------
# grid used by the CLI


def equivalence_grid(max_order: int = 6, k: int = 2, r_max: int = 2, samples: int = 10,
                     workers: int = 1, game_max_order: int = 6) -> list[Report]:
    """Coloring/game agreement (game-sized orders only), corollary, and
    version comparison over every equal-order catalog pair up to ``max_order``."""
    names = catalog_names(max_order)
    pairs = equal_order_pairs(names)
    small = [(a, b) for a, b in pairs if group(a).order <= game_max_order]
    out = []
    if small:
        out.append(coloring_game_grid(small, k=k, rs=range(r_max + 1), samples=samples,
                                      workers=workers, item="theorem"))
    cor = corollary_check(max_order, ks=tuple(range(1, k + 1)), workers=workers)
    cor.item = "corollary"
    out.append(cor)
    cells = [c for rep in out for c in rep.cells]
    ver = version_comparison(cells)
    ver.item = "versions"
    out.append(ver)
    return out

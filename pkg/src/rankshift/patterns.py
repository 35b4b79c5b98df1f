"""Matrix-unit patterns behind the shifted generator products.

Compressing a shifted product of two generating isometries to the span of
shape-m cylinders produces, for each pad/overflow pair (kappa, lambda), a
sparse 0-1 matrix over the words of shape m with cells

    row = nu.u.gamma        col = prefix_m(nu.w.gamma.kappa)

where nu runs over shape-p words feeding both u and w, gamma over the
shape m - p - sigma(u) words fed by both, kappa pads the column string to
shape m + n - sigma(u) with n = sup(sigma(u), sigma(w)), and lambda is the
part of the padded string that overflows the box [0, m].  Compositions
with mismatched endpoint letters contribute nothing.  The claim under test
is that every such pattern is a partial isometry: at most one cell per row
and per column.

The (kappa, lambda) grid is kept in full, including pairs whose endpoint
letters rule every cell out, so the report matches the summation range of
the decomposition.
"""

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

from .budget import DEFAULT as DEFAULT_BUDGET
from .errors import ShapeTooSmallError, WindowTooWideError
from .matrices import require_valid
from .shapes import Shape
from .words import (
    check_enum_budget,
    compose,
    enumerate_extensions,
    enumerate_words,
    restrict_prefix,
    restrict_tail,
    word_to_dict,
)


@dataclass(frozen=True)
class PatternMatrix:
    """Sparse 0-1 matrix over the shape-m words.  ``index`` fixes the
    row/column order, ``cells`` holds the (row-word, col-word) pairs
    carrying a 1."""
    index: tuple
    cells: frozenset

    def to_json(self):
        order = {w: i for i, w in enumerate(self.index)}
        placed = sorted((order[r], order[c]) for r, c in self.cells)
        return {"dimension": len(self.index), "cells": [list(rc) for rc in placed]}


def check_partial_isometry(pattern):
    """True when no row and no column holds two cells; for 0-1 matrices
    this is the partial isometry identity T T*T = T."""
    rows = set()
    cols = set()
    for row, col in pattern.cells:
        if row in rows or col in cols:
            return False
        rows.add(row)
        cols.add(col)
    return True


def build_shift_patterns(family, u, w, p, m, budget=None):
    """Map (kappa, lambda) -> PatternMatrix for generators u, w, shift step
    p and compression shape m.  Needs m >= p + sup(sigma(u), sigma(w))."""
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    n = u.shape.sup(w.shape)
    if not p + n <= m:
        raise ShapeTooSmallError(
            "compression shape must dominate step plus generator shapes",
            m=list(m.coords), needed=list((p + n).coords))
    ext_shape = m + (n - u.shape)
    check_enum_budget(family, ext_shape, budget)

    index = tuple(enumerate_words(family, m))
    grid = {}
    for kappa in enumerate_words(family, n - w.shape):
        for lam in enumerate_words(family, n - u.shape):
            grid[(kappa, lam)] = set()

    if u.origin == w.origin and u.terminal == w.terminal:
        gamma_shape = m - p - u.shape
        for nu in enumerate_words(family, p, origin=None):
            if nu.terminal != u.origin:
                continue
            for gamma in enumerate_words(family, gamma_shape, origin=u.terminal):
                row = compose(family, compose(family, nu, u), gamma)
                base = compose(family, compose(family, nu, w), gamma)
                for ext in enumerate_extensions(family, base, ext_shape):
                    kappa = restrict_tail(ext, base.shape)
                    lam = restrict_tail(ext, m)
                    col = restrict_prefix(ext, m)
                    grid[(kappa, lam)].add((row, col))

    return {key: PatternMatrix(index, frozenset(cells))
            for key, cells in grid.items()}


# -- Aggregate verification -----------------------------------------------------

@dataclass(frozen=True)
class PatternFamilyReport:
    u: object
    w: object
    p: Shape
    m: Shape
    n: Shape
    stats: tuple
    witnesses: tuple

    @property
    def all_partial_isometries(self):
        return not self.witnesses

    def to_json(self):
        return {
            "u": word_to_dict(self.u),
            "w": word_to_dict(self.w),
            "p": list(self.p.coords),
            "m": list(self.m.coords),
            "n": list(self.n.coords),
            "patterns": [s for s in self.stats],
            "all_partial_isometries": self.all_partial_isometries,
            "witnesses": [w for w in self.witnesses],
        }


def _failure_witness(u, p, kappa, lam, pattern):
    """Two cells sharing a row or column, with the decomposition of the
    offending row recovered for the report."""
    by_row = {}
    by_col = {}
    for cell in sorted(pattern.cells, key=lambda rc: (rc[0].labels, rc[1].labels)):
        row, col = cell
        for bucket, key in ((by_row, row), (by_col, col)):
            if key in bucket:
                first = bucket[key]
                nu = restrict_prefix(row, p)
                gamma = restrict_tail(row, p + u.shape)
                return {
                    "kappa": word_to_dict(kappa),
                    "lambda": word_to_dict(lam),
                    "nu": word_to_dict(nu),
                    "gamma": word_to_dict(gamma),
                    "first": [word_to_dict(first[0]), word_to_dict(first[1])],
                    "second": [word_to_dict(row), word_to_dict(col)],
                }
            bucket[key] = cell
    return None


def examine_pair(family, u, w, p, m=None, budget=None):
    """Build all patterns for one generator pair and check each one."""
    n = u.shape.sup(w.shape)
    if m is None:
        m = p + n
    patterns = build_shift_patterns(family, u, w, p, m, budget)
    stats = []
    witnesses = []
    for (kappa, lam) in sorted(patterns, key=lambda kl: (kl[0].labels, kl[1].labels)):
        pattern = patterns[(kappa, lam)]
        ok = check_partial_isometry(pattern)
        stats.append({
            "kappa": word_to_dict(kappa),
            "lambda": word_to_dict(lam),
            "cells": len(pattern.cells),
            "partial_isometry": ok,
        })
        if not ok:
            witnesses.append(_failure_witness(u, p, kappa, lam, pattern))
    return PatternFamilyReport(u, w, p, m, n, tuple(stats), tuple(witnesses))


def verify_partial_isometries(family, p, max_gen_shape, m=None, budget=None,
                              threads=None):
    """Run examine_pair over every generator pair (u, w) with shapes
    dominated by max_gen_shape.  Returns the reports in grid order."""
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    gens = []
    for pt in max_gen_shape.box():
        gens.extend(enumerate_words(family, Shape(pt)))
    pairs = [(u, w) for u in gens for w in gens]

    def run(pair):
        return examine_pair(family, pair[0], pair[1], p, m, budget)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, pairs))
    return [run(pair) for pair in pairs]


# -- Cylinder separation for window potentials ----------------------------------

def check_cylinder_separation(family, m, potential, budget=None):
    """Index-level orthogonality: one-step extensions of distinct shape-m
    words form disjoint sets that partition the next layer, and the
    potential value on a cylinder bounds the value at every extension.

    The potential reads its window at the origin, so it is constant on a
    shape-m cylinder once the window fits inside m; the bound check is the
    falsifiable form of that constancy.
    """
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    if not potential.window <= m:
        raise WindowTooWideError(
            "potential window does not fit in the cylinder shape",
            window=list(potential.window.coords), m=list(m.coords))
    probe = m + Shape.cube(1, m.rank)
    check_enum_budget(family, probe, budget)
    total = sum(1 for _ in enumerate_words(family, probe))
    seen = 0
    for u in enumerate_words(family, m):
        bound = potential.value(u)
        for ext in enumerate_extensions(family, u, probe):
            if restrict_prefix(ext, m) != u:
                return False
            if potential.value(ext) > bound:
                return False
            seen += 1
    return seen == total

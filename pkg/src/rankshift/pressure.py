"""Topological pressure for window potentials along a step direction.

A potential reads the restriction of a configuration to a fixed window box
and the partition function at stage n sums exp of the Birkhoff sum over the
n+1 window sites visited by steps of p inside a word of shape k*e + n*p.

Two evaluation routes are kept deliberately separate.  The enumerate route
sums over every word of the stage shape.  The transfer route runs a weighted
chain over cube-k words: a word of shape k*e + n*p is the same thing as a
compatible chain of its n+1 shifted cube restrictions, consecutive ones
being joined by a unique word of shape p + k*e, so the stage sum is a
matrix power of the 0-1 transition structure with a diagonal weight.  The
routes agree exactly and the transfer route stays cheap at large n.
"""

from dataclasses import dataclass
from math import exp, fsum, log

from .budget import DEFAULT as DEFAULT_BUDGET
from .errors import (
    ShapeMismatchError,
    WindowTooWideError,
    ZeroDirectionError,
)
from .matrices import matrix_power_product, require_valid, spectral_radius
from .shapes import Shape
from .words import (
    Word,
    check_enum_budget,
    enumerate_words,
    make_word,
    restrict_prefix,
    restrict_tail,
)


@dataclass(frozen=True)
class Potential:
    """Window function on words: table lookup with a default value."""
    window: Shape
    default: float
    table: dict

    def value(self, word):
        if not self.window <= word.shape:
            raise WindowTooWideError(
                "word does not contain the potential window",
                window=list(self.window.coords), shape=list(word.shape.coords))
        key = word if word.shape == self.window else restrict_prefix(word, self.window)
        return self.table.get(key, self.default)


def vertex_potential(family, values, default=0.0):
    """Potential with the zero window: reads one letter.  ``values`` maps
    letters (or letter indices) to floats."""
    window = Shape.zero(family.rank)
    table = {}
    for key, val in values.items():
        idx = family.alphabet.index(key) if isinstance(key, str) else int(key)
        table[Word(window, (idx,))] = float(val)
    return Potential(window, float(default), table)


def potential_to_dict(potential):
    entries = sorted(potential.table.items(), key=lambda kv: kv[0].labels)
    return {
        "window": list(potential.window.coords),
        "default": potential.default,
        "entries": [
            {"word": {"shape": list(word.shape.coords), "labels": list(word.labels)},
             "value": val}
            for word, val in entries
        ],
    }


def potential_from_dict(family, data):
    window = Shape(tuple(data["window"]))
    table = {}
    for entry in data["entries"]:
        spec = entry["word"]
        labels = spec["labels"] if isinstance(spec, dict) else spec
        word = make_word(family, window, tuple(labels))
        table[word] = float(entry["value"])
    return Potential(window, float(data.get("default", 0.0)), table)


def log_sum_exp(values):
    values = list(values)
    if not values:
        raise ValueError("log_sum_exp of nothing")
    top = max(values)
    return top + log(fsum(exp(v - top) for v in values))


def birkhoff_sum_on_cylinder(family, potential, word, step, n):
    """Sum of the potential over the n+1 window sites at offsets 0, p, ..,
    n*p inside the word, whose shape must be k*e + n*p for some cube k*e."""
    try:
        base = word.shape - step.scaled(n)
    except ValueError:
        base = None
    if base is None or base != Shape.cube(base.min_coord, base.rank):
        raise ShapeMismatchError(
            "word shape minus n steps must be a cube",
            shape=list(word.shape.coords), step=list(step.coords), n=n)
    _check_stage(family, potential, base.min_coord, step)
    return fsum(
        potential.value(restrict_tail(word, step.scaled(l)))
        for l in range(n + 1)
    )


def _check_stage(family, potential, k, step):
    require_valid(family)
    if step.rank != family.rank or potential.window.rank != family.rank:
        raise ShapeMismatchError("rank mismatch")
    if step.is_zero:
        raise ZeroDirectionError("step direction must be nonzero")
    if k < max(step.coords):
        raise ShapeMismatchError(
            "cube radius must dominate every step coordinate",
            k=k, step=list(step.coords))
    if max(potential.window.coords) > k:
        raise WindowTooWideError(
            "potential window does not fit in the stage cube",
            window=list(potential.window.coords), k=k)


def partition_function_log(family, potential, k, p, n, method="transfer",
                           budget=None):
    """log of the stage-n partition sum at cube radius k along step p."""
    _check_stage(family, potential, k, p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    budget = budget or DEFAULT_BUDGET
    if method == "enumerate":
        shape = Shape.cube(k, family.rank) + p.scaled(n)
        check_enum_budget(family, shape, budget)
        return log_sum_exp(
            birkhoff_sum_on_cylinder(family, potential, w, p, n)
            for w in enumerate_words(family, shape)
        )
    if method != "transfer":
        raise ValueError(f"unknown method {method!r}")
    states, in_edges, weight_logs = _transfer_parts(family, potential, k, p, budget)
    return _chain_log_sum(in_edges, weight_logs, n)


def _transfer_parts(family, potential, k, p, budget):
    cube = Shape.cube(k, family.rank)
    check_enum_budget(family, cube + p, budget)
    states = list(enumerate_words(family, cube))
    index = {w: i for i, w in enumerate(states)}
    in_edges = [[] for _ in states]
    for x in enumerate_words(family, cube + p):
        row = index[restrict_prefix(x, cube)]
        col = index[restrict_tail(x, p)]
        in_edges[col].append(row)
    weight_logs = [potential.value(s) for s in states]
    return states, in_edges, weight_logs


def _chain_log_sum(in_edges, weight_logs, n):
    top = max(weight_logs)
    dvals = [exp(x - top) for x in weight_logs]
    v = dvals[:]
    acc = top
    for _ in range(n):
        w = [fsum(v[row] for row in rows) * dvals[col]
             for col, rows in enumerate(in_edges)]
        peak = max(w)
        if peak == 0.0:
            raise ArithmeticError("transfer chain has no admissible continuation")
        v = [x / peak for x in w]
        acc += top + log(peak)
    return acc + log(fsum(v))


# -- Estimates and the vertex oracle -------------------------------------------

@dataclass(frozen=True)
class PressureEstimate:
    k: int
    step: Shape
    method: str
    sequence: tuple
    diffs: tuple

    @property
    def estimate(self):
        return self.diffs[-1]

    def to_json(self):
        return {
            "k": self.k,
            "step": list(self.step.coords),
            "method": self.method,
            "sequence": list(self.sequence),
            "diffs": list(self.diffs),
            "estimate": self.estimate,
        }


def pressure_estimate(family, potential, k, p, n_max, method="transfer",
                      budget=None):
    """Scaled log partition sums and their increments; the last increment
    is the pressure estimate."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    budget = budget or DEFAULT_BUDGET
    if method == "transfer":
        _check_stage(family, potential, k, p)
        _, in_edges, weight_logs = _transfer_parts(family, potential, k, p, budget)
        logs = [_chain_log_sum(in_edges, weight_logs, n)
                for n in range(1, n_max + 1)]
    else:
        logs = [partition_function_log(family, potential, k, p, n, method, budget)
                for n in range(1, n_max + 1)]
    sequence = tuple(logs[n - 1] / n for n in range(1, n_max + 1))
    diffs = tuple(logs[n] - logs[n - 1] for n in range(1, n_max))
    return PressureEstimate(k, p, method, sequence, diffs)


def pressure_oracle_vertex(family, values, p, budget=None):
    """Independent check for vertex potentials: log spectral radius of the
    letter-weighted step matrix diag(exp g) * M^p."""
    require_valid(family)
    if p.is_zero:
        raise ZeroDirectionError("step direction must be nonzero")
    budget = budget or DEFAULT_BUDGET
    step_matrix = matrix_power_product(family, p, budget)
    gvals = {}
    for key, val in values.items():
        idx = family.alphabet.index(key) if isinstance(key, str) else int(key)
        gvals[idx] = float(val)
    dim = len(family.alphabet)
    weighted = tuple(
        tuple(exp(gvals.get(a, 0.0)) * step_matrix[a][b] for b in range(dim))
        for a in range(dim)
    )
    return log(spectral_radius(weighted))

"""Words: labelings of lattice boxes subject to the transition matrices.

A word of shape m assigns a letter to every point of box(m) so that each
unit step in direction j is allowed by M_j.  Its restriction to a prefix
box [0, k] or a tail box [k, m] (rebased to the origin) is again a word,
and a word is recovered uniquely from any compatible prefix/tail pair by
filling unit squares: the missing corner of a square with three known
corners along a path is forced when the family is valid.

Enumeration is depth-first over box points in row-major order, trying
letters in index order, so words stream in lexicographic order of their
label sequences.
"""

from dataclasses import dataclass
from math import log2

from .budget import DEFAULT as DEFAULT_BUDGET
from .errors import (
    BudgetExceededError,
    NoFillingError,
    NonUniqueFillingError,
    OriginMismatchError,
    ShapeMismatchError,
    ShapeNotDominatedError,
)
from .matrices import require_valid, word_count
from .shapes import Shape


@dataclass(frozen=True)
class Word:
    shape: Shape
    labels: tuple

    @property
    def origin(self):
        return self.labels[0]

    @property
    def terminal(self):
        return self.labels[-1]

    def label_at(self, point):
        return self.labels[self.shape.index_of(point)]

    def letters(self, family):
        return tuple(family.alphabet[i] for i in self.labels)

    def __repr__(self):
        return f"Word({self.shape.coords}, {self.labels})"


def word_to_dict(word):
    return {"shape": list(word.shape.coords), "labels": list(word.labels)}


def word_from_dict(family, data):
    shape = Shape(tuple(data["shape"]))
    return make_word(family, shape, tuple(data["labels"]))


def make_word(family, shape, labels):
    """Validated constructor: checks label range and every box edge."""
    labels = tuple(int(x) for x in labels)
    if len(labels) != shape.volume:
        raise ShapeMismatchError(
            "label count does not match box volume",
            expected=shape.volume, got=len(labels))
    dim = len(family.alphabet)
    if any(not 0 <= x < dim for x in labels):
        raise ValueError("letter index out of range")
    word = Word(shape, labels)
    bad = _first_bad_edge(family, word)
    if bad is not None:
        point, j = bad
        raise ValueError(f"edge constraint violated at {point} direction {j}")
    return word


def _first_bad_edge(family, word):
    m = word.shape
    for point in m.box():
        for j in range(m.rank):
            if point[j] < m[j]:
                nxt = point[:j] + (point[j] + 1,) + point[j + 1:]
                if not family.matrices[j][word.label_at(point)][word.label_at(nxt)]:
                    return point, j
    return None


# -- Budget guard -------------------------------------------------------------

def check_enum_budget(family, shape, budget=None):
    """Refuse enumerations whose raw index space or predicted touched-point
    count exceeds the budget."""
    budget = budget or DEFAULT_BUDGET
    bits = shape.volume * log2(max(len(family.alphabet), 2))
    if bits > budget.max_enum_bits:
        raise BudgetExceededError(
            "enumeration index space too large",
            estimated_bits=bits, max_enum_bits=budget.max_enum_bits)
    nodes = word_count(family, shape, budget) * shape.volume
    if nodes > budget.max_enum_nodes:
        raise BudgetExceededError(
            "enumeration would touch too many lattice points",
            estimated_nodes=nodes, max_enum_nodes=budget.max_enum_nodes)


# -- Enumeration --------------------------------------------------------------

def _dfs_words(family, m, fixed):
    """Backtracking enumeration; ``fixed`` maps box indices to forced letters."""
    mats = family.matrices
    dim = len(family.alphabet)
    points = list(m.box())
    preds = []
    for pt in points:
        pl = []
        for j in range(m.rank):
            if pt[j]:
                prev = pt[:j] + (pt[j] - 1,) + pt[j + 1:]
                pl.append((j, m.index_of(prev)))
        preds.append(pl)
    n = len(points)
    labels = [0] * n

    def candidates(t):
        forced = fixed.get(t)
        pool = (forced,) if forced is not None else range(dim)
        out = []
        for letter in pool:
            if all(mats[j][labels[pidx]][letter] for j, pidx in preds[t]):
                out.append(letter)
        return out

    stack = [iter(candidates(0))]
    while stack:
        t = len(stack) - 1
        letter = next(stack[-1], None)
        if letter is None:
            stack.pop()
            continue
        labels[t] = letter
        if t + 1 == n:
            yield Word(m, tuple(labels))
        else:
            stack.append(iter(candidates(t + 1)))


def enumerate_words(family, m, origin=None):
    """Yield every word of shape m in lexicographic label order; with
    ``origin`` (letter or index) only words starting there."""
    require_valid(family)
    if m.rank != family.rank:
        raise ShapeMismatchError("shape rank does not match family rank")
    fixed = {}
    if origin is not None:
        if isinstance(origin, str):
            origin = family.alphabet.index(origin)
        fixed[0] = int(origin)
    return _dfs_words(family, m, fixed)


def enumerate_extensions(family, base, m):
    """Yield the words of shape m whose prefix of shape sigma(base) is base."""
    require_valid(family)
    if not base.shape <= m:
        raise ShapeNotDominatedError(
            "extension shape must dominate the base shape",
            base=list(base.shape.coords), target=list(m.coords))
    fixed = {m.index_of(pt): base.label_at(pt) for pt in base.shape.box()}
    return _dfs_words(family, m, fixed)


# -- Restriction and composition ---------------------------------------------

def restrict_prefix(word, k):
    """Restriction to the box [0, k]."""
    if not k <= word.shape:
        raise ShapeNotDominatedError(
            "prefix shape not dominated by word shape",
            shape=list(word.shape.coords), prefix=list(k.coords))
    labels = tuple(word.label_at(pt) for pt in k.box())
    return Word(k, labels)


def restrict_tail(word, k):
    """Restriction to the box [k, m], rebased to the origin."""
    if not k <= word.shape:
        raise ShapeNotDominatedError(
            "tail offset not dominated by word shape",
            shape=list(word.shape.coords), offset=list(k.coords))
    rest = word.shape - k
    labels = tuple(
        word.label_at(tuple(a + b for a, b in zip(k.coords, pt)))
        for pt in rest.box()
    )
    return Word(rest, labels)


def compose(family, u, v):
    """The unique word of shape sigma(u) + sigma(v) with prefix u and tail v.

    u is placed on [0, sigma(u)], v on [sigma(u), sigma(u)+sigma(v)] after
    the shared corner is checked, and the rest of the box is filled by
    repeated unique square completion.  Any completion order agrees for a
    valid family; a failure to fill, a non-unique fill, or a broken edge in
    the result all signal a family that wrongly passed validation and
    surface as hard errors.
    """
    require_valid(family)
    if u.shape.rank != v.shape.rank:
        raise ShapeMismatchError("rank mismatch between factors")
    if u.terminal != v.origin:
        raise OriginMismatchError(
            "terminal letter of u differs from origin letter of v",
            terminal=u.terminal, origin=v.origin)
    total = u.shape + v.shape
    mats = family.matrices
    rank = total.rank

    known = {}
    for pt in u.shape.box():
        known[pt] = u.label_at(pt)
    for pt in v.shape.box():
        shifted = tuple(a + b for a, b in zip(u.shape.coords, pt))
        known[shifted] = v.label_at(pt)

    pending = [pt for pt in total.box() if pt not in known]
    while pending:
        progress = False
        still = []
        for q in pending:
            letter = _try_fill(mats, rank, total, known, q)
            if letter is None:
                still.append(q)
            else:
                known[q] = letter
                progress = True
        if not progress:
            raise NoFillingError(
                "square completion stalled", stuck=[list(p) for p in still])
        pending = still

    result = Word(total, tuple(known[pt] for pt in total.box()))
    bad = _first_bad_edge(family, result)
    if bad is not None:
        point, j = bad
        raise NoFillingError(
            "filled box violates an edge constraint",
            point=list(point), direction=j)
    return result


def _try_fill(mats, rank, total, known, q):
    """Fill q from a unit square whose other three corners are known and
    form a path: base = q - e_j, base + e_i, q + e_i."""
    for j in range(rank):
        if not q[j]:
            continue
        base = q[:j] + (q[j] - 1,) + q[j + 1:]
        if base not in known:
            continue
        for i in range(rank):
            if i == j or q[i] + 1 > total[i]:
                continue
            mid = base[:i] + (base[i] + 1,) + base[i + 1:]
            top = q[:i] + (q[i] + 1,) + q[i + 1:]
            if mid not in known or top not in known:
                continue
            cand = [
                d for d in range(len(mats[0]))
                if mats[j][known[base]][d] and mats[i][d][known[top]]
            ]
            if len(cand) > 1:
                raise NonUniqueFillingError(
                    "square completion not unique",
                    point=list(q), candidates=cand)
            if not cand:
                raise NoFillingError(
                    "square completion has no solution", point=list(q))
            return cand[0]
    return None


# -- Count cross-check ---------------------------------------------------------

@dataclass(frozen=True)
class CountCheckRow:
    shape: Shape
    enumerated: int
    matrix_count: int

    @property
    def equal(self):
        return self.enumerated == self.matrix_count

    def to_json(self):
        return {
            "shape": list(self.shape.coords),
            "enumerated": str(self.enumerated),
            "matrix_count": str(self.matrix_count),
            "equal": self.equal,
        }


@dataclass(frozen=True)
class CountCheckReport:
    rows: tuple

    @property
    def ok(self):
        return all(r.equal for r in self.rows)

    def to_json(self):
        return {"ok": self.ok, "rows": [r.to_json() for r in self.rows]}


def count_oracle_check(family, max_shape, budget=None):
    """Compare direct enumeration against the matrix count <e, M^l e> for
    every shape l <= max_shape."""
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    rows = []
    for pt in max_shape.box():
        l = Shape(pt)
        check_enum_budget(family, l, budget)
        enumerated = sum(1 for _ in enumerate_words(family, l))
        rows.append(CountCheckRow(l, enumerated, word_count(family, l, budget)))
    return CountCheckReport(tuple(rows))

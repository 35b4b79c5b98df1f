"""Families of commuting 0-1 transition matrices and their exact arithmetic.

A rank-r family is a tuple (M_1, ..., M_r) of 0-1 matrices over a common
alphabet.  Validity means: every M_i is nonzero, has no all-zero row
(every letter has a successor in every direction), the matrices pairwise
commute with 0-1 products (unique square filling), and for rank >= 3 the
two orders of completing a unit cube from a three-step chain agree.

Counts are exact Python integers throughout; spectral radii go through a
renormalized repeated-squaring loop in float, which is robust to
reducible, periodic and nilpotent inputs.

Families are constructed unvalidated.  The validation report is computed
on first use and cached; all types here are immutable and every operation
is a pure function of its arguments.
"""

import json
import math
from dataclasses import dataclass
from functools import cached_property

from .budget import DEFAULT as DEFAULT_BUDGET
from .errors import (
    BudgetExceededError,
    InvalidFamilyError,
    NegativeEntryError,
    NotSquareError,
    ZeroDirectionError,
)
from .shapes import Shape


# -- Exact integer matrices (tuples of tuples) -------------------------------

def matrix_identity(dim):
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def matrix_mul(a, b):
    dim_inner = len(b)
    cols = range(len(b[0])) if b else ()
    bt = tuple(tuple(b[i][j] for i in range(dim_inner)) for j in cols)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matrix_power(m, k):
    """k-th power by repeated squaring, exact."""
    if k < 0:
        raise ValueError("negative power")
    result = matrix_identity(len(m))
    base = m
    while k:
        if k & 1:
            result = matrix_mul(result, base)
        base_needed = k > 1
        if base_needed:
            base = matrix_mul(base, base)
        k >>= 1
    return result


def matrix_entry_sum(m):
    return sum(sum(row) for row in m)


def _max_row_sum(m):
    return max(sum(row) for row in m)


# -- Alphabet and family ------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        letters = tuple(str(x) for x in self.letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise ValueError("alphabet letters must be distinct")
        object.__setattr__(self, "letters", letters)

    def index(self, letter):
        return self.letters.index(letter)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]


@dataclass(frozen=True)
class Violation:
    code: str
    witness: tuple  # ordered (key, value) pairs, JSON-friendly

    def to_json(self):
        return {"code": self.code, "witness": dict(self.witness)}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        if self.ok:
            return {"status": "valid"}
        return {
            "status": "invalid",
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass(frozen=True)
class MatrixFamily:
    rank: int
    alphabet: Alphabet
    matrices: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "matrices",
            tuple(tuple(tuple(row) for row in m) for m in self.matrices),
        )

    @property
    def dim(self):
        return len(self.alphabet)

    @cached_property
    def validation(self):
        return validate_family(self)

    @property
    def is_valid(self):
        return self.validation.ok

    def __repr__(self):
        return f"MatrixFamily(rank={self.rank}, letters={self.alphabet.letters})"


def require_valid(family):
    report = family.validation
    if not report.ok:
        raise InvalidFamilyError(
            "family failed validation",
            violations=[v.to_json() for v in report.violations],
        )


# -- Validation ---------------------------------------------------------------

def _square_fill_candidates(m_s, m_t, p0, p2):
    """Letters q with m_t(p0, q) = 1 and m_s(q, p2) = 1.

    Completes the square on a known path p0 -(s)-> p1 -(t)-> p2: the missing
    corner sits at p0 + e_t.  With commuting 0-1 products there is exactly
    one candidate.
    """
    return [q for q in range(len(m_t)) if m_t[p0][q] and m_s[q][p2]]


def validate_family(family):
    """Run all validity checks, in stages; later stages presuppose earlier
    ones, so checking stops after the first stage that found violations.

    Witnesses index matrices 1-based (as in M_1 .. M_r) and letters 0-based.
    """
    violations = []
    dim = len(family.alphabet)

    # structure: rank, squareness, binary entries
    if family.rank < 1 or len(family.matrices) != family.rank:
        violations.append(Violation("ShapeMismatch", (
            ("rank", family.rank), ("matrices", len(family.matrices)))))
    for i, m in enumerate(family.matrices, start=1):
        if len(m) != dim or any(len(row) != dim for row in m):
            violations.append(Violation("ShapeMismatch", (
                ("i", i), ("rows", len(m)), ("dim", dim))))
            continue
        bad = next(
            ((a, b) for a in range(dim) for b in range(dim)
             if not isinstance(m[a][b], int) or m[a][b] not in (0, 1)),
            None,
        )
        if bad is not None:
            a, b = bad
            violations.append(Violation("NonBinaryEntry", (
                ("i", i), ("row", a), ("col", b), ("value", m[a][b]))))
    if violations:
        return ValidationReport(tuple(violations))

    # C0 / NS: nonzero matrices, no all-zero rows
    for i, m in enumerate(family.matrices, start=1):
        if all(all(x == 0 for x in row) for row in m):
            violations.append(Violation("ZeroMatrix", (("i", i),)))
            continue
        for a, row in enumerate(m):
            if all(x == 0 for x in row):
                violations.append(Violation("NoSources", (("i", i), ("row", a))))
    if violations:
        return ValidationReport(tuple(violations))

    # C1 / C2: commutation with 0-1 products; one witness per pair, first
    # offending cell in row-major order
    for i in range(family.rank):
        for j in range(i + 1, family.rank):
            p = matrix_mul(family.matrices[i], family.matrices[j])
            q = matrix_mul(family.matrices[j], family.matrices[i])
            cell = next(
                ((a, b) for a in range(dim) for b in range(dim)
                 if p[a][b] != q[a][b] or p[a][b] > 1),
                None,
            )
            if cell is not None:
                a, b = cell
                violations.append(Violation("UniqueFactorizationViolation", (
                    ("i", i + 1), ("j", j + 1), ("row", a), ("col", b),
                    ("count", p[a][b]))))
    if violations:
        return ValidationReport(tuple(violations))

    # C3 (rank >= 3): both orders of completing the unit cube from a chain
    # a -(i)-> b -(j)-> c -(k)-> d must label all eight corners identically.
    # Whether C1+C2 already force this is open, so it is checked outright.
    if family.rank >= 3:
        for i in range(family.rank):
            for j in range(family.rank):
                for k in range(family.rank):
                    if len({i, j, k}) < 3:
                        continue
                    v = _check_cubes(family, i, j, k)
                    if v is not None:
                        violations.append(v)
    return ValidationReport(tuple(violations))


def _check_cubes(family, i, j, k):
    """First cube-consistency violation for the ordered triple (i, j, k)."""
    mi, mj, mk = (family.matrices[t] for t in (i, j, k))
    dim = len(mi)

    def fill(m_s, m_t, p0, p2):
        cand = _square_fill_candidates(m_s, m_t, p0, p2)
        if len(cand) != 1:  # unreachable once C1/C2 passed
            raise AssertionError("square filling not unique after C1/C2")
        return cand[0]

    for a in range(dim):
        for b in range(dim):
            if not mi[a][b]:
                continue
            for c in range(dim):
                if not mj[b][c]:
                    continue
                for d in range(dim):
                    if not mk[c][d]:
                        continue
                    x = fill(mi, mj, a, c)        # corner e_j
                    z_a = fill(mi, mk, x, d)      # corner e_j + e_k
                    w_a = fill(mj, mk, a, z_a)    # corner e_k, first order
                    y = fill(mj, mk, b, d)        # corner e_i + e_k
                    w_b = fill(mi, mk, a, y)      # corner e_k, second order
                    z_b = fill(mi, mj, w_b, d)    # corner e_j + e_k again
                    if (w_a, z_a) != (w_b, z_b):
                        return Violation("CubeInconsistency", (
                            ("i", i + 1), ("j", j + 1), ("k", k + 1),
                            ("chain", [a, b, c, d]),
                            ("first_order", [x, z_a, w_a]),
                            ("second_order", [y, w_b, z_b])))
    return None


# -- Powers, counts, radii ----------------------------------------------------

def _digits_estimate(family, l):
    """Upper bound on decimal digits of entries of the power product."""
    return l.total * math.log10(max(len(family.alphabet), 2)) + 1


def matrix_power_product(family, l, budget=None):
    """M_1^{l_1} ... M_r^{l_r}, exact.  Order does not matter for a valid
    family; the ascending-direction order used here is the canonical one.
    """
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    if l.rank != family.rank:
        raise ValueError(f"shape rank {l.rank} != family rank {family.rank}")
    est = _digits_estimate(family, l)
    if est > budget.max_exact_digits:
        raise BudgetExceededError(
            "exact power product too large",
            estimated_digits=est, max_exact_digits=budget.max_exact_digits)
    out = matrix_identity(len(family.alphabet))
    for m, e in zip(family.matrices, l.coords):
        if e:
            out = matrix_mul(out, matrix_power(m, e))
    return out


def word_count(family, l, budget=None):
    """Number of words of shape l: <e, M^l e>, exact."""
    return matrix_entry_sum(matrix_power_product(family, l, budget))


def log_word_count(family, l, budget=None):
    """Natural log of the word count.

    Returns (value, exact): exact means the count was computed as a big
    integer and logged directly (math.log of a Python int is correctly
    rounded at any size, well beyond 12 digits).  Above the digit guard the
    product is redone in float with per-step renormalization and the result
    is flagged exact=False.
    """
    require_valid(family)
    budget = budget or DEFAULT_BUDGET
    if _digits_estimate(family, l) <= budget.max_exact_digits:
        return math.log(word_count(family, l, budget)), True

    dim = len(family.alphabet)
    prod = [[float(x) for x in row] for row in matrix_identity(dim)]
    prod_log = 0.0

    def renorm(m):
        top = max(max(row) for row in m)
        if top == 0.0:
            raise ZeroDivisionError("zero product in log fallback")
        return [[x / top for x in row] for row in m], math.log(top)

    def fmul(a, b):
        bt = list(zip(*b))
        return [[math.fsum(x * y for x, y in zip(row, col)) for col in bt]
                for row in a]

    for m, e in zip(family.matrices, l.coords):
        base = [[float(x) for x in row] for row in m]
        base_log = 0.0
        while e:
            if e & 1:
                prod, mu = renorm(fmul(prod, base))
                prod_log += base_log + mu
            e >>= 1
            if e:
                base, mu = renorm(fmul(base, base))
                base_log = 2.0 * base_log + mu
    total = math.fsum(math.fsum(row) for row in prod)
    return prod_log + math.log(total), False


def spectral_radius(m):
    """Spectral radius of a square nonnegative matrix (integer or float
    entries; exact big integers welcome).

    Computed as lim ||m^(2^s)||^(1/2^s) by repeated squaring with
    log-domain renormalization, max-row-sum norm.  No irreducibility is
    assumed: reducible, periodic and nilpotent matrices all behave.  The
    full schedule of 64 squarings always runs: the estimates decrease to
    the radius but can stall for a step (||M^4|| = ||M^2||^2 happens for
    honest primitive matrices), so a successive-difference stop would
    return early and wrong.  At s = 64 the subdominant and polynomial
    parts contribute less than machine epsilon, leaving the result within
    1e-10 of the true radius for inputs of moderate size.
    """
    dim = len(m)
    if dim == 0 or any(len(row) != dim for row in m):
        raise NotSquareError("matrix must be square and nonempty")
    if any(x < 0 for row in m for x in row):
        raise NegativeEntryError("matrix entries must be nonnegative")

    norm0 = max(sum(row) for row in m)
    if norm0 == 0:
        return 0.0
    # big-int / big-int division is correctly rounded, so this scaling is
    # safe even when entries far exceed float range
    cur = [[x / norm0 for x in row] for row in m]
    acc = math.log(norm0)
    for s in range(1, 65):
        cur_t = list(zip(*cur))
        nxt = [[math.fsum(x * y for x, y in zip(row, col)) for col in cur_t]
               for row in cur]
        mu = max(math.fsum(row) for row in nxt)
        if mu == 0.0:
            return 0.0
        cur = [[x / mu for x in row] for row in nxt]
        acc += math.log(mu) / (1 << s)
    return math.exp(acc) if acc < 700 else math.inf


def entropy_exact(family, p):
    """log of the spectral radius of M^p: the entropy of the direction-p
    shift on the validated family."""
    require_valid(family)
    if p.rank != family.rank:
        raise ValueError(f"shape rank {p.rank} != family rank {family.rank}")
    if p.is_zero:
        raise ZeroDirectionError("direction vector must be nonzero")
    return math.log(spectral_radius(matrix_power_product(family, p)))


# -- Serialization ------------------------------------------------------------

def family_to_dict(family):
    return {
        "rank": family.rank,
        "alphabet": list(family.alphabet.letters),
        "matrices": [[list(row) for row in m] for m in family.matrices],
    }


def family_from_dict(data):
    try:
        rank = int(data["rank"])
        alphabet = Alphabet(tuple(data["alphabet"]))
        matrices = tuple(
            tuple(tuple(int(x) for x in row) for row in m)
            for m in data["matrices"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed family data: {exc}") from exc
    return MatrixFamily(rank=rank, alphabet=alphabet, matrices=matrices)


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        return family_from_dict(json.load(fh))


def save_family(family, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(family_to_dict(family), fh, indent=2)
        fh.write("\n")


def canonical_family_json(family):
    """Canonical serialization used for fingerprints."""
    return json.dumps(family_to_dict(family), sort_keys=True,
                      separators=(",", ":"))

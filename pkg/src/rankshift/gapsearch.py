"""Search harness for the spectral-radius gap question.

For a valid family of rank at least 2 the entropy of the combined step
never exceeds the sum of the per-direction entropies:

    gap = sum_i log r(M_i^{p_i}) - log r(M_1^{p_1} ... M_r^{p_r}) >= 0

Tensor families sit exactly at zero.  Whether any valid family sits
strictly above zero is open; this module only gathers evidence.  Records
carry full matrices and provenance so any reported gap can be reproduced
from the CSV line alone.
"""

import hashlib
import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import fsum, log

from .budget import DEFAULT as DEFAULT_BUDGET
from .errors import BudgetExceededError, RankOneError, ZeroDirectionError
from .matrices import (
    Alphabet,
    MatrixFamily,
    canonical_family_json,
    family_to_dict,
    matrix_power,
    matrix_power_product,
    require_valid,
    spectral_radius,
)
from .shapes import Shape


def family_fingerprint(family):
    payload = canonical_family_json(family).encode("ascii")
    return hashlib.sha256(payload).hexdigest()


def canonical_form(family):
    """Representative of the simultaneous row/column permutation class,
    minimal in serialization order."""
    dim = family.dim
    best = None
    for perm in itertools.permutations(range(dim)):
        mats = tuple(
            tuple(tuple(m[perm[a]][perm[b]] for b in range(dim))
                  for a in range(dim))
            for m in family.matrices
        )
        if best is None or mats < best:
            best = mats
    return MatrixFamily(family.rank, family.alphabet, best)


def gap_parts(family, p=None, budget=None):
    """Per-factor spectral radii, product radius, and the gap itself."""
    require_valid(family)
    if family.rank < 2:
        raise RankOneError("the gap needs at least two directions",
                           rank=family.rank)
    budget = budget or DEFAULT_BUDGET
    if p is None:
        p = Shape.cube(1, family.rank)
    if p.is_zero:
        raise ZeroDirectionError("step direction must be nonzero")
    radii = tuple(
        spectral_radius(matrix_power(m, c))
        for m, c in zip(family.matrices, p.coords)
    )
    prod_radius = spectral_radius(matrix_power_product(family, p, budget))
    value = fsum(log(r) for r in radii) - log(prod_radius)
    return radii, prod_radius, value


def gap(family, p=None, budget=None):
    return gap_parts(family, p, budget)[2]


@dataclass(frozen=True)
class GapRecord:
    fingerprint: str
    family: MatrixFamily
    radii: tuple
    prod_radius: float
    value: float
    runtime: float
    provenance: tuple

    def to_json(self):
        # runtime deliberately left out: output files must be byte-identical
        # across reruns of the same config
        return {
            "fingerprint": self.fingerprint,
            "family": family_to_dict(self.family),
            "radii": list(self.radii),
            "prod_radius": self.prod_radius,
            "gap": self.value,
            "provenance": dict(self.provenance),
        }


def _record(family, provenance, budget):
    start = time.perf_counter()
    radii, prod_radius, value = gap_parts(family, None, budget)
    runtime = time.perf_counter() - start
    return GapRecord(family_fingerprint(family), family, radii, prod_radius,
                     value, runtime, tuple(provenance.items()))


def _digit_alphabet(size):
    return Alphabet(tuple(str(i) for i in range(size)))


def _nonzero_rows(size):
    rows = []
    for bits in itertools.product((0, 1), repeat=size):
        if any(bits):
            rows.append(bits)
    return rows


def exhaustive_search(alphabet_size, rank=2, canonicalize=False, budget=None,
                      threads=None):
    """Every ordered rank-tuple of 0-1 matrices over the alphabet, filtered
    by validity, one GapRecord per survivor.

    Matrices with a zero row can never validate (no-sources), so the sweep
    runs over nonzero-row matrices only; candidate counts are guarded by
    the enumeration budget.
    """
    budget = budget or DEFAULT_BUDGET
    rows = _nonzero_rows(alphabet_size)
    per_matrix = len(rows) ** alphabet_size
    total = per_matrix ** rank
    if total > budget.max_enum_nodes:
        raise BudgetExceededError(
            "candidate sweep too large",
            candidates=total, max_enum_nodes=budget.max_enum_nodes)
    alphabet = _digit_alphabet(alphabet_size)

    matrices = [mat for mat in itertools.product(rows, repeat=alphabet_size)]
    survivors = []
    seen = set()
    for combo in itertools.product(matrices, repeat=rank):
        family = MatrixFamily(rank, alphabet, combo)
        if not family.is_valid:
            continue
        if canonicalize:
            family = canonical_form(family)
            fp = family_fingerprint(family)
            if fp in seen:
                continue
            seen.add(fp)
        survivors.append(family)

    def run(family):
        return _record(family, {"source": "exhaustive"}, budget)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, survivors))
    return [run(f) for f in survivors]


def random_search(alphabet_size, density, trials, seed, rank=2, controls=(),
                  budget=None):
    """Entry-wise Bernoulli(density) samples with zero rows repaired by one
    uniform 1, validity-filtered.  A single sequential generator drives
    everything, so a fixed seed fixes the record stream exactly.

    ``controls`` holds known matrix tuples (tensor pairs in practice) that
    are evaluated ahead of the random stream as positive controls.
    """
    if not 0 < density < 1:
        raise ValueError("density must be strictly between 0 and 1")
    budget = budget or DEFAULT_BUDGET
    alphabet = _digit_alphabet(alphabet_size)
    records = []
    for idx, combo in enumerate(controls):
        family = MatrixFamily(rank, alphabet, combo)
        if family.is_valid:
            records.append(_record(
                family, {"source": "control", "index": idx}, budget))
    rng = random.Random(seed)
    for trial in range(trials):
        combo = tuple(
            _sample_matrix(rng, alphabet_size, density) for _ in range(rank))
        family = MatrixFamily(rank, alphabet, combo)
        if not family.is_valid:
            continue
        records.append(_record(
            family, {"source": "random", "seed": seed, "trial": trial}, budget))
    return records


def _sample_matrix(rng, size, density):
    mat = [[1 if rng.random() < density else 0 for _ in range(size)]
           for _ in range(size)]
    for row in mat:
        if not any(row):
            row[rng.randrange(size)] = 1
    return tuple(tuple(row) for row in mat)


# -- Output --------------------------------------------------------------------

def sorted_records(records):
    def key(rec):
        prov = dict(rec.provenance)
        return rec.fingerprint, prov.get("trial", -1), prov.get("index", -1)
    return sorted(records, key=key)


def summarize(records, attempts=None):
    values = [r.value for r in records]
    histogram = {}
    for v in sorted(values):
        bucket = f"{v:.6f}"
        histogram[bucket] = histogram.get(bucket, 0) + 1
    summary = {
        "count": len(records),
        "min_gap": min(values) if values else None,
        "max_gap": max(values) if values else None,
        "histogram": histogram,
    }
    if attempts is not None:
        summary["attempts"] = attempts
        summary["valid_rate"] = len(records) / attempts if attempts else 0.0
    return summary


def record_csv_header(rank):
    radii = [f"r{i + 1}" for i in range(rank)]
    return ["fingerprint", "alphabet_size", "matrices", *radii, "r_prod", "gap"]


def record_csv_row(rec):
    flat = "|".join(
        "".join(str(x) for row in m for x in row) for m in rec.family.matrices)
    return [
        rec.fingerprint,
        str(rec.family.dim),
        flat,
        *(f"{r:.12g}" for r in rec.radii),
        f"{rec.prod_radius:.12g}",
        f"{rec.value:.12g}",
    ]


def family_from_csv_row(row, rank):
    """Rebuild the family from the flattened matrices column (index 2)."""
    blocks = row[2].split("|")
    size = int(row[1])
    mats = tuple(
        tuple(tuple(int(ch) for ch in block[a * size:(a + 1) * size])
              for a in range(size))
        for block in blocks
    )
    return MatrixFamily(rank, _digit_alphabet(size), mats)

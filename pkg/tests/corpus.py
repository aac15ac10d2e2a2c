"""A fixed collection of functions used by the bound-soundness checks."""

from math import log2

import numpy as np

import oracles
from aes import aes_table
from imbalance import FunctionTable, build_gold, build_inverse, build_power, build_projection, build_quadratic, make_field
from imbalance.functable import random_bijection, random_function

RANDOM_SHAPES = [
    ([4], [2]), ([6], [3]), ([5], [3]), ([5], [5]), ([4], [4]), ([7], [7]),
    ([2, 2], [2, 2]), ([2, 2, 2], [2]), ([2, 2, 2], [2, 2]), ([2, 2, 2], [2, 2, 2]),
    ([2] * 4, [2] * 2), ([2] * 4, [2] * 3), ([2] * 5, [2] * 3), ([2] * 6, [2] * 4),
    ([3, 3], [3]), ([2, 3], [2, 2]), ([8], [2, 4]),
]
BIJECTION_GROUPS = [[3], [4], [5], [7], [8], [2, 2], [2, 2, 2], [2] * 4, [3, 3]]


def field_functions():
    out = []
    for n in range(2, 7):
        f = make_field(2, n)
        for d in sorted({1, 3, 5, 7, 2**n - 2, 2 ** (n - 1) + 1}):
            if 0 < d < 2**n:
                out.append(build_power(f, d))
        if n >= 3:
            out.append(build_inverse(f))
            out.append(build_gold(f, 1))
            out.append(build_quadratic(f, n - 1, 0))
        for m in range(1, n):
            if n % m == 0:
                out.append(build_projection(f, m))
    for p, n in ((3, 2), (3, 3), (5, 2)):
        f = make_field(p, n)
        out.append(build_power(f, 2))
        out.append(build_power(f, p + 1))
        out.append(build_power(f, 3))
        out.append(build_inverse(f))
    return out


def special_functions():
    z5 = [5]
    return [
        FunctionTable(z5, z5, [pow(x, 3, 5) for x in range(5)]),
        FunctionTable(z5, z5, range(5)),
        FunctionTable([4], [4], [0, 1, 3, 2]),
        FunctionTable([4], [2], [0, 1, 0, 1]),
        FunctionTable([4], [4], [0, 0, 0, 0]),
        FunctionTable([2, 2], [2], [0, 0, 0, 1]),
        FunctionTable([2], [2], [0, 1]),
    ]


def corpus(random_per_shape=6, seed=2024):
    rng = np.random.default_rng(seed)
    out = []
    for o1, o2 in RANDOM_SHAPES:
        out += [random_function(o1, o2, rng) for _ in range(random_per_shape)]
    for g in BIJECTION_GROUPS:
        out += [random_bijection(g, rng) for _ in range(random_per_shape)]
    out += field_functions() + special_functions()
    out.append(aes_table())
    return out


def soundness_problems(F, records):
    """Unexplained failures; flagged records are checked against their corrected forms."""
    by_id = {r.id: r for r in records}
    problems = []
    for r in records:
        if not r.applicable:
            if r.holds is not None or r.tight is not None:
                problems.append(f"{r.id}: inapplicable record carries a verdict")
            continue
        if r.tight and not r.holds:
            problems.append(f"{r.id}: tight but not holding")
        if r.discrepancy is None:
            if r.holds is False:
                problems.append(f"{r.id}: {r.lhs} {r.relation} {r.rhs} fails")
            continue
        if r.id == "B17.n2.uncorrected":
            if not by_id["B17.n2"].holds:
                problems.append("B17.n2: corrected form fails")
        elif r.id == "B19.plateaued.NB.uncorrected":
            if not by_id["B19.plateaued.NB"].holds:
                problems.append("B19.plateaued.NB: corrected form fails")
        elif r.id == "B8.4":
            # no corrected form exists; the measured side must be the true nonlinearity
            n, m = int(log2(F.domain.order)), int(log2(F.codomain.order))
            if n <= 5 and r.lhs != oracles.binary_nonlinearity(n, m, F.values.tolist()):
                problems.append("B8.4: nonlinearity disagrees with the oracle")
        else:
            problems.append(f"{r.id}: unexpected flagged record")
    return problems

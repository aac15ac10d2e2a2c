"""Slow, independent reference implementations used to check the library.

Everything here is plain Python on coordinate tuples: no numpy transforms, no
shared code with the package.
"""

import cmath
import itertools
from fractions import Fraction
from math import comb, prod


def decode(orders, idx):
    out = []
    for n in orders:
        out.append(idx % n)
        idx //= n
    return tuple(out)


def encode(orders, coords):
    idx, w = 0, 1
    for n, c in zip(orders, coords):
        idx += (c % n) * w
        w *= n
    return idx


def add(orders, x, y):
    return encode(orders, [a + b for a, b in zip(decode(orders, x), decode(orders, y))])


def sub(orders, x, y):
    return encode(orders, [a - b for a, b in zip(decode(orders, x), decode(orders, y))])


def ddt(o1, o2, values):
    n1, n2 = prod(o1), prod(o2)
    table = [[0] * n2 for _ in range(n1)]
    for a in range(n1):
        for x in range(n1):
            table[a][sub(o2, values[add(o1, x, a)], values[x])] += 1
    return table


def nb(o1, o2, values):
    """Sum over a != 0 of Nb(D_a F), straight from the preimage-size definition."""
    n1, n2 = prod(o1), prod(o2)
    rows = ddt(o1, o2, values)
    return sum(sum(c * c for c in rows[a]) - Fraction(n1 * n1, n2) for a in range(1, n1))


def ambiguity(o1, o2, values):
    rows = ddt(o1, o2, values)
    return sum(comb(c, 2) for row in rows[1:] for c in row)


def deficiency(o1, o2, values):
    rows = ddt(o1, o2, values)
    return sum(1 for row in rows[1:] for c in row if c == 0)


def uniformity(o1, o2, values):
    return max(max(row) for row in ddt(o1, o2, values)[1:])


def character(orders, alpha, x):
    a, c = decode(orders, alpha), decode(orders, x)
    return cmath.exp(2j * cmath.pi * sum(ai * ci / n for ai, ci, n in zip(a, c, orders)))


def fourier_magnitudes(o1, o2, values):
    """``|sum_x chi_beta(F(x)) chi_alpha(x)|`` for every ``(alpha, beta)``, beta != 0."""
    n1, n2 = prod(o1), prod(o2)
    out = {}
    for beta in range(1, n2):
        for alpha in range(n1):
            s = sum(character(o2, beta, values[x]) * character(o1, alpha, x).conjugate() for x in range(n1))
            out[(alpha, beta)] = abs(s)
    return out


def linearity(o1, o2, values):
    return max(fourier_magnitudes(o1, o2, values).values())


def binary_nonlinearity(n, m, values):
    """Minimum Hamming distance from the components to affine Boolean functions."""
    size = 2**n
    best = size
    for beta in range(1, 2**m):
        comp = [bin(beta & values[x]).count("1") & 1 for x in range(size)]
        for alpha in range(size):
            for c in (0, 1):
                aff = [(bin(alpha & x).count("1") + c) & 1 for x in range(size)]
                best = min(best, sum(u != v for u, v in zip(comp, aff)))
    return best


def gf2_mul(a, b, poly_bits, n):
    """Carry-less multiplication reduced by the modulus (bit j = coefficient of x^j)."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= poly_bits
    return r


def gf2_pow(a, d, poly_bits, n):
    r = 1
    for _ in range(d):
        r = gf2_mul(r, a, poly_bits, n)
    return r


def is_affine(o1, o2, values):
    n1 = prod(o1)
    c = values[0]
    for x, y in itertools.product(range(n1), repeat=2):
        lhs = sub(o2, values[add(o1, x, y)], c)
        rhs = add(o2, sub(o2, values[x], c), sub(o2, values[y], c))
        if lhs != rhs:
            return False
    return True

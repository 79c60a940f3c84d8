"""
Exact subspace arithmetic on sympy matrices.

A subspace of Q^d is stored as a d x r matrix whose columns are a basis
(r may be 0). Every helper returns bases with independent columns.
"""
from fractions import Fraction

import sympy


def as_fraction(value):
    value = rational(value)
    return Fraction(int(value.p), int(value.q))


def rational(value):
    if isinstance(value, sympy.Basic):
        return sympy.Rational(value)
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def matrix(rows, cols, entries=None):
    if entries is None:
        return sympy.zeros(rows, cols)
    return sympy.Matrix(rows, cols, [rational(x) for x in entries])


def column(values):
    return sympy.Matrix(len(values), 1, [rational(x) for x in values])


def identity(d):
    return sympy.eye(d) if d else sympy.zeros(0, 0)


def is_zero(m):
    return all(x == 0 for x in m)


def basis_of(m):
    """Column basis of the column space"""
    if m.cols == 0 or m.rows == 0:
        return sympy.zeros(m.rows, 0)
    columns = m.columnspace()
    if not columns:
        return sympy.zeros(m.rows, 0)
    return sympy.Matrix.hstack(*columns)


def nullspace(m):
    """Basis of {x : m x = 0}"""
    if m.cols == 0:
        return sympy.zeros(0, 0)
    if m.rows == 0:
        return sympy.eye(m.cols)
    vectors = m.nullspace()
    if not vectors:
        return sympy.zeros(m.cols, 0)
    return sympy.Matrix.hstack(*vectors)


def hstack(d, *blocks):
    blocks = [b for b in blocks if b.cols]
    if not blocks:
        return sympy.zeros(d, 0)
    return sympy.Matrix.hstack(*blocks)


def vstack(cols, *blocks):
    blocks = [b for b in blocks if b.rows]
    if not blocks:
        return sympy.zeros(0, cols)
    return sympy.Matrix.vstack(*blocks)


def dim(basis):
    return basis.cols


def span_contains(basis, vectors):
    """Whether every column of vectors lies in the span of basis"""
    if vectors.cols == 0 or is_zero(vectors):
        return True
    if basis.cols == 0:
        return False
    return hstack(basis.rows, basis, vectors).rank() == basis.cols


def same_space(a, b):
    return a.cols == b.cols and span_contains(a, b)


def intersect(a, b):
    d = a.rows
    if a.cols == 0 or b.cols == 0:
        return sympy.zeros(d, 0)
    kernel = nullspace(sympy.Matrix.hstack(a, -b))
    if kernel.cols == 0:
        return sympy.zeros(d, 0)
    return basis_of(a * kernel[:a.cols, :])


def coordinates(basis, vectors):
    """Coefficients c with basis * c = vectors; the columns must lie in the span"""
    if basis.cols == 0:
        return sympy.zeros(0, vectors.cols)
    gram = basis.T * basis
    return gram.inv() * basis.T * vectors


def complement(basis, d):
    """Standard basis vectors completing basis to a basis of Q^d"""
    chosen = []
    current = basis
    for k in range(d):
        unit = sympy.zeros(d, 1)
        unit[k, 0] = 1
        extended = hstack(d, current, unit)
        if extended.rank() > current.cols:
            chosen.append(unit)
            current = extended
    return hstack(d, *chosen)


def kernel_of_stack(d, maps):
    """Common kernel of several maps out of Q^d"""
    if not maps:
        return identity(d)
    return nullspace(vstack(d, *maps))

"""Small helpers that work on both float64 and Fraction object arrays."""

from fractions import Fraction
import numbers

import numpy as np


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (numbers.Integral, np.integer)):
        return Fraction(int(x))
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    # floats are dyadic rationals; keep their exact binary value
    return Fraction(float(x))


def coords(points, exact, ncols=3):
    """Return an (n, ncols) array, float64 or Fraction-valued."""
    if exact:
        rows = [[to_fraction(x) for x in row] for row in points]
        arr = np.empty((len(rows), ncols), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {ncols}")
            arr[i, :] = row
        return arr
    if isinstance(points, np.ndarray) and points.dtype == object:
        points = [[float(x) for x in row] for row in points]
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != ncols:
        raise ValueError(f"expected an (n, {ncols}) array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def is_exact(arr):
    return arr.dtype == object


def dot(a, b):
    """Row-wise dot product of two (..., 3) arrays."""
    return (a * b).sum(axis=-1)


def sqnorm(a):
    return dot(a, a)


def to_float(arr):
    if is_exact(arr):
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    return np.asarray(arr, dtype=float)


def diameter(points):
    """Largest pairwise distance, always as a float."""
    p = to_float(points)
    if len(p) < 2:
        return 0.0
    d2 = ((p[:, None, :] - p[None, :, :]) ** 2).sum(-1)
    return float(np.sqrt(d2.max()))


def zeros(shape, exact):
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)

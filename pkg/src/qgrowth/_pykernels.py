"""Pure-Python convolution kernels.

These are the reference implementations; ``_ckernels`` must agree with them
bit for bit.  Coefficient lists are plain ``list[int]``; ``m == 0`` selects
exact integer arithmetic, otherwise inputs are canonical residues mod ``m``.
"""

from __future__ import annotations

from operator import mul as _mul


def _nonzero(a):
    return [(i, x) for i, x in enumerate(a) if x]


def mul_trunc(a: list[int], b: list[int], n: int, m: int = 0) -> list[int]:
    """First ``n`` coefficients of the product of ``a`` and ``b``."""
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    na = _nonzero(a)
    nb = _nonzero(b)
    if len(nb) < len(na):
        a, b, na = b, a, nb
    c = [0] * n
    lb = len(b)
    for i, x in na:
        stop = min(lb, n - i)
        if stop <= 0:
            continue
        seg = c[i : i + stop]
        c[i : i + stop] = [u + x * v for u, v in zip(seg, b)]
    if m:
        c = [u % m for u in c]
    return c


def inv_trunc(a: list[int], n: int, m: int = 0) -> list[int]:
    """First ``n`` coefficients of ``1/a``; ``a[0]`` must be a unit."""
    if n <= 0:
        return []
    a0 = a[0]
    if m:
        inv0 = pow(a0, -1, m)
    else:
        if a0 not in (1, -1):
            raise ZeroDivisionError("leading coefficient is not a unit over Z")
        inv0 = a0
    tail = _nonzero(a[1:n])
    tail = [(i + 1, x) for i, x in tail]
    c = [0] * n
    c[0] = inv0 % m if m else inv0
    dense = len(tail) * 4 > len(a)
    if dense:
        # dense path: reversed slices let map() do the inner product in C
        coeffs = a[:n] + [0] * max(0, n - len(a))
        for k in range(1, n):
            s = sum(map(_mul, coeffs[1 : k + 1], reversed(c[:k])))
            c[k] = (-s * inv0) % m if m else -s * inv0
    else:
        for k in range(1, n):
            s = 0
            for i, x in tail:
                if i > k:
                    break
                s += x * c[k - i]
            c[k] = (-s * inv0) % m if m else -s * inv0
    return c

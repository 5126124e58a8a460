# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled convolution kernels.

Same contract as ``_pykernels``.  Residue rings with modulus below 2**31 run
on uint64 buffers with lazy reduction; everything else goes through typed
loops over Python integers.
"""

from libc.stdlib cimport calloc, malloc, free
from libc.stdint cimport uint64_t

cdef object MAX_FAST_MODULUS = 2 ** 31


cdef uint64_t* _load(list xs, Py_ssize_t length, object m) except NULL:
    cdef uint64_t* buf = <uint64_t*> calloc(length if length > 0 else 1, sizeof(uint64_t))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(min(length, len(xs))):
        buf[i] = <uint64_t> (xs[i] % m)
    return buf


cdef uint64_t _batch(uint64_t m):
    # number of (m-1)^2 products that can be summed onto a value < m without overflow
    cdef uint64_t sq = (m - 1) * (m - 1)
    if sq == 0:
        return <uint64_t> -1
    return (<uint64_t> 0xFFFFFFFFFFFFFFFF - m) // sq


cdef list _mul_mod(list a, list b, Py_ssize_t n, uint64_t m):
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    cdef Py_ssize_t i, j, k, stop, cnt_a = 0, cnt_b = 0, n_out = 0
    cdef uint64_t x, batch, pending = 0
    cdef uint64_t *pa
    cdef uint64_t *pb
    cdef uint64_t *acc
    cdef Py_ssize_t *idx
    for i in range(la):
        if a[i]:
            cnt_a += 1
    for i in range(lb):
        if b[i]:
            cnt_b += 1
    if cnt_b < cnt_a:
        a, b = b, a
        la, lb = lb, la
    pa = _load(a, la, m)
    pb = _load(b, lb, m)
    acc = <uint64_t*> calloc(n, sizeof(uint64_t))
    idx = <Py_ssize_t*> malloc((la if la > 0 else 1) * sizeof(Py_ssize_t))
    try:
        if acc == NULL or idx == NULL:
            raise MemoryError()
        for i in range(la):
            if pa[i]:
                idx[n_out] = i
                n_out += 1
        batch = _batch(m)
        with nogil:
            for k in range(n_out):
                i = idx[k]
                x = pa[i]
                stop = lb
                if n - i < stop:
                    stop = n - i
                for j in range(stop):
                    acc[i + j] += x * pb[j]
                pending += 1
                if pending >= batch:
                    for j in range(n):
                        acc[j] %= m
                    pending = 0
        return [acc[j] % m for j in range(n)]
    finally:
        free(pa)
        free(pb)
        free(acc)
        free(idx)


cdef list _inv_mod(list a, Py_ssize_t n, uint64_t m):
    cdef Py_ssize_t la = min(len(a), n)
    cdef Py_ssize_t i, k, t, n_nz = 0
    cdef uint64_t s, batch, pending, inv0
    cdef uint64_t *pa = _load(a, la, m)
    cdef uint64_t *c = <uint64_t*> calloc(n, sizeof(uint64_t))
    cdef Py_ssize_t *idx = <Py_ssize_t*> malloc((la if la > 0 else 1) * sizeof(Py_ssize_t))
    try:
        if c == NULL or idx == NULL:
            raise MemoryError()
        inv0 = <uint64_t> pow(int(a[0]), -1, int(m))
        for i in range(1, la):
            if pa[i]:
                idx[n_nz] = i
                n_nz += 1
        batch = _batch(m)
        c[0] = inv0
        with nogil:
            for k in range(1, n):
                s = 0
                pending = 0
                for t in range(n_nz):
                    i = idx[t]
                    if i > k:
                        break
                    s += pa[i] * c[k - i]
                    pending += 1
                    if pending >= batch:
                        s %= m
                        pending = 0
                s %= m
                c[k] = ((m - s) % m) * inv0 % m
        return [c[k] for k in range(n)]
    finally:
        free(pa)
        free(c)
        free(idx)


cdef list _mul_exact(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    cdef Py_ssize_t i, j, stop
    cdef list c = [0] * n
    cdef object x
    cdef Py_ssize_t cnt_a = 0, cnt_b = 0
    for i in range(la):
        if a[i]:
            cnt_a += 1
    for i in range(lb):
        if b[i]:
            cnt_b += 1
    if cnt_b < cnt_a:
        a, b = b, a
        la, lb = lb, la
    for i in range(la):
        x = a[i]
        if not x:
            continue
        stop = min(lb, n - i)
        for j in range(stop):
            c[i + j] = c[i + j] + x * b[j]
    return c


cdef list _inv_exact(list a, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n)
    cdef Py_ssize_t i, k, t, n_nz
    cdef list c = [0] * n
    cdef list nz_i = []
    cdef list nz_x = []
    cdef object s, inv0 = a[0]
    if inv0 != 1 and inv0 != -1:
        raise ZeroDivisionError("leading coefficient is not a unit over Z")
    for i in range(1, la):
        if a[i]:
            nz_i.append(i)
            nz_x.append(a[i])
    n_nz = len(nz_i)
    c[0] = inv0
    for k in range(1, n):
        s = 0
        for t in range(n_nz):
            i = nz_i[t]
            if i > k:
                break
            s = s + nz_x[t] * c[k - i]
        c[k] = -s * inv0
    return c


def mul_trunc(list a, list b, Py_ssize_t n, m=0):
    """First ``n`` coefficients of the product of ``a`` and ``b``."""
    if n <= 0:
        return []
    if m and m < MAX_FAST_MODULUS:
        return _mul_mod(a, b, n, <uint64_t> m)
    c = _mul_exact(a, b, n)
    if m:
        return [u % m for u in c]
    return c


def inv_trunc(list a, Py_ssize_t n, m=0):
    """First ``n`` coefficients of ``1/a``; ``a[0]`` must be a unit."""
    if n <= 0:
        return []
    if m and m < MAX_FAST_MODULUS:
        return _inv_mod(a, n, <uint64_t> m)
    if m:
        # large moduli: exact recurrence with a reduction per step
        from qgrowth._pykernels import inv_trunc as _py_inv
        return _py_inv(a, n, m)
    return _inv_exact(a, n)

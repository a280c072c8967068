# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C loop for the quartic perfect-square scan (128-bit arithmetic).

Callers guarantee every intermediate value fits in a signed 128-bit integer;
the dispatcher in _scan.py enforces that before choosing this kernel.
"""

from libc.math cimport sqrtl

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int128 _isqrt128(int128 v):
    cdef int128 y
    if v < 0:
        return -1
    y = <int128> sqrtl(<long double> v)
    if y < 0:
        y = 0
    while y > 0 and y * y > v:
        y -= 1
    while (y + 1) * (y + 1) <= v:
        y += 1
    return y


def quartic_scan_native(long long a4, long long b2, long long c0,
                        long long x_max, long long modulus,
                        const unsigned char[::1] table):
    """(x, y) pairs with y*y == a4*x^4 + b2*x^2 + c0, 0 <= x <= x_max."""
    cdef long long x
    cdef int128 x2, v, y
    cdef list out = []
    for x in range(x_max + 1):
        if not table[x % modulus]:
            continue
        x2 = (<int128> x) * x
        v = (<int128> a4) * x2 * x2 + (<int128> b2) * x2 + c0
        if v < 0:
            continue
        y = _isqrt128(v)
        if y * y == v:
            out.append((x, <long long> y))
    return out

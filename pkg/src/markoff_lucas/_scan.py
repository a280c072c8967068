"""Backend selection for the quartic integral-point scan.

The scan finds all 0 <= x <= x_max with a4*x^4 + b2*x^2 + c0 a perfect
square.  A residue wheel (is the value a square modulo each factor of the
wheel modulus?) rejects ~99% of x cheaply; survivors get an exact integer
square-root test.  The compiled kernel runs the loop in C with 128-bit
arithmetic; the pure-Python fallback does the wheel in numpy and the exact
confirms in big-int arithmetic.  The backend is chosen at import time.
"""

from __future__ import annotations

import math
from typing import List, Optional, Tuple

import numpy as np

try:
    from ._kernels import quartic_scan_native as _native
except ImportError:  # extension not built: pure fallback
    _native = None

WHEEL_FACTORS = (64, 63, 65, 11)
WHEEL_MODULUS = math.prod(WHEEL_FACTORS)
_INT128_GUARD = 2**126
_COEF_GUARD = 2**62

_SQUARE_TABLES = {}


def _squares_mod(m: int) -> np.ndarray:
    table = _SQUARE_TABLES.get(m)
    if table is None:
        table = np.zeros(m, dtype=bool)
        for t in range((m // 2) + 1):
            table[(t * t) % m] = True
        _SQUARE_TABLES[m] = table
    return table


def build_wheel(a4: int, b2: int, c0: int) -> np.ndarray:
    """Boolean acceptance table over x mod WHEEL_MODULUS for this curve."""
    combined = np.ones(WHEEL_MODULUS, dtype=bool)
    for m in WHEEL_FACTORS:
        t = np.arange(m, dtype=np.uint64)
        t2 = (t * t) % m
        t4 = (t2 * t2) % m
        f = ((a4 % m) * t4 + (b2 % m) * t2 + (c0 % m)) % m
        ok = _squares_mod(m)[f]
        combined &= np.tile(ok, WHEEL_MODULUS // m)
    return combined


def scan_python(
    a4: int, b2: int, c0: int, x_max: int, wheel: Optional[np.ndarray] = None
) -> List[Tuple[int, int]]:
    """Pure fallback: vectorized wheel filter, exact big-int confirmation."""
    if wheel is None:
        wheel = build_wheel(a4, b2, c0)
    out = []
    chunk = 1 << 18
    for start in range(0, x_max + 1, chunk):
        stop = min(start + chunk, x_max + 1)
        xs = np.arange(start, stop, dtype=np.int64)
        survivors = xs[wheel[xs % WHEEL_MODULUS]]
        for xv in survivors.tolist():
            x2 = xv * xv
            value = a4 * x2 * x2 + b2 * x2 + c0
            if value < 0:
                continue
            root = math.isqrt(value)
            if root * root == value:
                out.append((xv, root))
    return out


def native_safe(a4: int, b2: int, c0: int, x_max: int) -> bool:
    """True when every intermediate fits the kernel's 128-bit arithmetic."""
    if _native is None:
        return False
    if max(abs(a4), abs(b2), abs(c0)) >= _COEF_GUARD:
        return False
    bound = abs(a4) * x_max**4 + abs(b2) * x_max**2 + abs(c0)
    return bound < _INT128_GUARD


def scan_native(
    a4: int, b2: int, c0: int, x_max: int, wheel: Optional[np.ndarray] = None
) -> List[Tuple[int, int]]:
    if _native is None:
        raise RuntimeError("compiled kernel is not available")
    if not native_safe(a4, b2, c0, x_max):
        raise OverflowError("coefficients exceed the 128-bit kernel range")
    if wheel is None:
        wheel = build_wheel(a4, b2, c0)
    table = np.ascontiguousarray(wheel, dtype=np.uint8)
    return _native(a4, b2, c0, x_max, WHEEL_MODULUS, table)


def quartic_scan(
    a4: int, b2: int, c0: int, x_max: int, backend: Optional[str] = None
) -> List[Tuple[int, int]]:
    """All (x, y), 0 <= x <= x_max, y >= 0, with y^2 = a4*x^4 + b2*x^2 + c0."""
    if x_max < 0:
        raise ValueError("x_max must be >= 0")
    wheel = build_wheel(a4, b2, c0)
    if backend == "native":
        return scan_native(a4, b2, c0, x_max, wheel)
    if backend == "python":
        return scan_python(a4, b2, c0, x_max, wheel)
    if backend is not None:
        raise ValueError(f"unknown backend {backend!r}")
    if native_safe(a4, b2, c0, x_max):
        return scan_native(a4, b2, c0, x_max, wheel)
    return scan_python(a4, b2, c0, x_max, wheel)


def active_backend() -> str:
    return "native" if _native is not None else "python"

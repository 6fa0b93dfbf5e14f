"""Hot-loop kernels for term-map arithmetic.

The compiled Cython extension (clusterlab._core) is preferred when it built;
otherwise the pure-Python implementations below are used.  Both expose the
same semantics, and benchmarks/bench_kernels.py compares them.  Set
CLUSTERLAB_PURE=1 to force the pure-Python path.
"""

from __future__ import annotations

import os


def _mul_terms_py(a, b):
    """Distributive product of two term maps {exponent tuple: coeff}."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            c = get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def _add_into_py(out, b):
    """In-place termwise sum: out += b, dropping zeros."""
    get = out.get
    for k, c in b.items():
        nc = get(k, 0) + c
        if nc:
            out[k] = nc
        else:
            del out[k]
    return out


if os.environ.get("CLUSTERLAB_PURE") == "1":
    mul_terms, add_into = _mul_terms_py, _add_into_py
    KERNEL_BACKEND = "python"
else:
    try:
        from ._core import add_into, mul_terms

        KERNEL_BACKEND = "cython"
    except ImportError:
        mul_terms, add_into = _mul_terms_py, _add_into_py
        KERNEL_BACKEND = "python"

__all__ = ["mul_terms", "add_into", "KERNEL_BACKEND"]

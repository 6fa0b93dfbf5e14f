# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for sparse exponent-tuple arithmetic.

Same contracts as the pure-Python fallbacks in clusterlab._kernels: term
maps are dicts from flat exponent tuples (ints) to nonzero int coefficients.
"""

from cpython.tuple cimport PyTuple_GET_ITEM, PyTuple_GET_SIZE, PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline tuple _tuple_add(tuple ka, tuple kb, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object s
    for i in range(n):
        s = (<object>PyTuple_GET_ITEM(ka, i)) + (<object>PyTuple_GET_ITEM(kb, i))
        Py_INCREF(s)
        PyTuple_SET_ITEM(out, i, s)
    return out


def mul_terms(dict a, dict b):
    """Distributive product of two term maps {exponent tuple: coeff}."""
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef object ca, cb, c
    cdef Py_ssize_t n = -1
    for kb, cb in b.items():
        if n < 0:
            n = PyTuple_GET_SIZE(kb)
        for ka, ca in a.items():
            k = _tuple_add(ka, kb, n)
            c = out.get(k)
            if c is None:
                out[k] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def add_into(dict out, dict b):
    """In-place termwise sum: out += b, dropping zeros."""
    cdef tuple k
    cdef object c, nc
    for k, c in b.items():
        nc = out.get(k)
        if nc is None:
            out[k] = c
        else:
            nc = nc + c
            if nc:
                out[k] = nc
            else:
                del out[k]
    return out

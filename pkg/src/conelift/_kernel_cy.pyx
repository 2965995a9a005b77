# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernel; contract identical to _kernel_py."""

import heapq

BACKEND = "cython"


def order_key(tuple exp, tuple wrows, tuple perm):
    """Comparison key of a monomial: weight row values, then permuted exponents."""
    cdef list parts = []
    cdef tuple row
    cdef Py_ssize_t i, n = len(exp)
    for row in wrows:
        s = 0
        for i in range(n):
            e = exp[i]
            if e:
                s += row[i] * e
        parts.append(s)
    for i in perm:
        parts.append(exp[i])
    return tuple(parts)


def monomial_divides(tuple a, tuple b):
    """True if x^a divides x^b componentwise."""
    cdef Py_ssize_t i
    for i in range(len(a)):
        if a[i] > b[i]:
            return False
    return True


cdef tuple _neg(tuple k):
    return tuple([-x for x in k])


def normal_form(items, list reducers, tuple wrows, tuple perm):
    """Fully reduce a term list modulo monic reducers.

    Same contract as _kernel_py.normal_form: returns (exponent,
    coefficient) pairs in strictly descending order with no monomial
    divisible by any reducer lead.
    """
    cdef dict coeffs = {}
    cdef dict keys = {}
    cdef list heap = []
    cdef list out = []
    cdef tuple exp, lead, shift, nexp, texp, k
    cdef Py_ssize_t i, n
    cdef bint ok, shifted
    for exp, c in items:
        prev = coeffs.get(exp)
        if prev is None:
            if c:
                coeffs[exp] = c
        else:
            prev = prev + c
            if prev:
                coeffs[exp] = prev
            else:
                del coeffs[exp]
    for exp in coeffs:
        k = order_key(exp, wrows, perm)
        keys[exp] = k
        heap.append((_neg(k), exp))
    heapq.heapify(heap)
    while heap:
        entry = heapq.heappop(heap)
        exp = <tuple> entry[1]
        c = coeffs.pop(exp, None)
        if c is None:
            continue
        n = len(exp)
        hit = None
        for item in reducers:
            lead = <tuple> (<tuple> item)[0]
            ok = True
            for i in range(n):
                if lead[i] > exp[i]:
                    ok = False
                    break
            if ok:
                hit = item
                break
        if hit is None:
            out.append((exp, c))
            continue
        lead = <tuple> (<tuple> hit)[0]
        tail = (<tuple> hit)[1]
        shift = tuple([exp[i] - lead[i] for i in range(n)])
        shifted = False
        for i in range(n):
            if shift[i]:
                shifted = True
                break
        for texp, tc in tail:
            if shifted:
                nexp = tuple([texp[i] + shift[i] for i in range(n)])
            else:
                nexp = texp
            prev = coeffs.get(nexp)
            if prev is None:
                coeffs[nexp] = -c * tc
                k = keys.get(nexp)
                if k is None:
                    k = order_key(nexp, wrows, perm)
                    keys[nexp] = k
                heapq.heappush(heap, (_neg(k), nexp))
            else:
                prev = prev - c * tc
                if prev:
                    coeffs[nexp] = prev
                else:
                    del coeffs[nexp]
    return out

"""Pure-Python reduction kernel.

The single hot loop of every Groebner-basis computation: the full normal
form of a polynomial against a list of monic reducers under a matrix
order (integer weight rows refined by a lexicographic tiebreak).  The
compiled twin in _kernel_cy.pyx implements the identical contract;
kernel.py selects whichever is available.
"""

import heapq

BACKEND = "python"


def order_key(exp, wrows, perm):
    """Comparison key of a monomial: weight row values, then permuted exponents."""
    parts = []
    for row in wrows:
        s = 0
        for w, e in zip(row, exp):
            if e:
                s += w * e
        parts.append(s)
    for i in perm:
        parts.append(exp[i])
    return tuple(parts)


def monomial_divides(a, b):
    """True if x^a divides x^b componentwise."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def normal_form(items, reducers, wrows, perm):
    """Fully reduce a term list modulo monic reducers.

    items: iterable of (exponent tuple, coefficient) pairs (duplicates allowed).
    reducers: list of (lead exponent, tail) pairs, each standing for the
        monic polynomial x^lead + tail with every tail monomial smaller
        than the lead.
    wrows: integer weight rows of the order, highest priority first.
    perm: variable indices for the lex tiebreak.

    Returns the normal form as a list of (exponent, coefficient) pairs in
    strictly descending order; no output monomial is divisible by any lead.
    """
    coeffs = {}
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
    keys = {}
    heap = []
    for exp in coeffs:
        k = order_key(exp, wrows, perm)
        keys[exp] = k
        heap.append((tuple(-x for x in k), exp))
    heapq.heapify(heap)
    out = []
    while heap:
        _, exp = heapq.heappop(heap)
        c = coeffs.pop(exp, None)
        if c is None:
            continue
        hit = None
        for lead, tail in reducers:
            ok = True
            for l, e in zip(lead, exp):
                if l > e:
                    ok = False
                    break
            if ok:
                hit = (lead, tail)
                break
        if hit is None:
            out.append((exp, c))
            continue
        lead, tail = hit
        shift = tuple(e - l for e, l in zip(exp, lead))
        shifted = any(shift)
        for texp, tc in tail:
            nexp = tuple(a + b for a, b in zip(texp, shift)) if shifted else texp
            prev = coeffs.get(nexp)
            if prev is None:
                coeffs[nexp] = -c * tc
                k = keys.get(nexp)
                if k is None:
                    k = order_key(nexp, wrows, perm)
                    keys[nexp] = k
                heapq.heappush(heap, (tuple(-x for x in k), nexp))
            else:
                prev = prev - c * tc
                if prev:
                    coeffs[nexp] = prev
                else:
                    del coeffs[nexp]
    return out

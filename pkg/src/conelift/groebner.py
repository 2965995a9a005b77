"""Division, Buchberger's algorithm, reduced Groebner bases, initial
ideals, cone membership, lineality, monomial-freeness, toric kernels,
and the positivity witness.

Weight vectors follow the min convention (initial form keeps the terms
minimizing w . alpha); term orders are max convention.  The two are
bridged by refined orders whose weight rows are the grading d followed
by -w, so that one Buchberger run computes init_w and its order
refinement at once.
"""

import heapq

from . import kernel
from .polyring import (
    OrderSpec,
    PolyError,
    Polynomial,
    QQ,
    Ring,
    initial_form_weight,
    is_homogeneous,
    rat,
)

_ONE = QQ(1)


class UndeterminedError(RuntimeError):
    """A resource limit was hit; the answer is undetermined, not false."""


class Ideal:
    """A finitely generated ideal: ring plus nonzero generators."""

    __slots__ = ("ring", "generators", "_hash")

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise PolyError("generator not in the ideal's ring")
            if not g:
                raise PolyError("zero generator")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and frozenset(self.generators) == frozenset(other.generators)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.generators)))
        return self._hash

    def __repr__(self):
        return "Ideal(%d generators in %r)" % (len(self.generators), self.ring)

    def is_homogeneous(self, w=None):
        return all(is_homogeneous(g, w) for g in self.generators)


class GroebnerBasis:
    """A Groebner basis for an ideal under a fixed order."""

    __slots__ = ("ideal", "order", "elements", "reduced", "_reducers")

    def __init__(self, ideal, order, elements, reduced):
        self.ideal = ideal
        self.order = order
        self.elements = tuple(elements)
        self.reduced = reduced
        self._reducers = None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def reducers(self):
        if self._reducers is None:
            self._reducers = _reducers(self.elements, self.order)
        return self._reducers

    def lead_monomials(self):
        return tuple(g.leading_term(self.order)[0] for g in self.elements)

    def normal_form(self, f):
        return _nf(f, self.reducers(), self.order)

    def contains(self, f):
        return not self.normal_form(f)

    def standard_monomials(self):
        return StandardMonomialBasis(
            self.ideal.ring, self.order, self.lead_monomials()
        )


def _reducers(elements, order):
    """Kernel reducer list [(lead exponent, tail items)] for monic elements."""
    reducers = []
    for g in elements:
        lead, lc = g.leading_term(order)
        if lc != 1:
            raise PolyError("reducers must be monic")
        tail = tuple(
            (exp, c) for exp, c in g.terms.items() if exp != lead
        )
        reducers.append((lead, tail))
    key = order.key
    reducers.sort(key=lambda r: key(r[0]))
    return reducers


def _nf(f, reducers, order):
    items = kernel.normal_form(
        list(f.terms.items()), reducers, order.int_rows, order.perm
    )
    return Polynomial(f.ring, dict(items))


def normal_form(f, gb_or_polys, order=None):
    """Full normal form of f modulo a Groebner basis (or poly list)."""
    if isinstance(gb_or_polys, GroebnerBasis):
        reducers = gb_or_polys.reducers()
        order = gb_or_polys.order
    else:
        if order is None:
            raise PolyError("an order is required with a plain divisor list")
        polys = [g.monic(order) for g in gb_or_polys if g]
        reducers = _reducers(polys, order)
    return _nf(f, reducers, order)


def divide_with_remainder(f, divisors, order):
    """Division algorithm; returns (quotients, remainder).

    f = sum(q_i g_i) + r, no monomial of r divisible by any leading
    monomial, and init(f) >= init(q_i g_i) whenever q_i is nonzero.
    The first divisor whose lead divides the working monomial is used.
    """
    ring = f.ring
    leads = []
    for g in divisors:
        if not g:
            raise PolyError("zero divisor polynomial")
        leads.append(g.leading_term(order))
    quotients = [{} for _ in divisors]
    remainder = {}
    coeffs = dict(f.terms)
    key = order.key
    heap = [(tuple(-x for x in key(exp)), exp) for exp in coeffs]
    heapq.heapify(heap)
    keys = {}
    while heap:
        _, exp = heapq.heappop(heap)
        c = coeffs.pop(exp, None)
        if c is None:
            continue
        hit = None
        for i, (lm, lc) in enumerate(leads):
            if kernel.monomial_divides(lm, exp):
                hit = i
                break
        if hit is None:
            remainder[exp] = c
            continue
        lm, lc = leads[hit]
        q_exp = tuple(a - b for a, b in zip(exp, lm))
        q_c = c / lc
        prev = quotients[hit].get(q_exp)
        quotients[hit][q_exp] = q_c if prev is None else prev + q_c
        for texp, tc in divisors[hit].terms.items():
            if texp == lm:
                continue
            nexp = tuple(a + b for a, b in zip(texp, q_exp))
            prev = coeffs.get(nexp)
            if prev is None:
                coeffs[nexp] = -q_c * tc
                k = keys.get(nexp)
                if k is None:
                    k = key(nexp)
                    keys[nexp] = k
                heapq.heappush(heap, (tuple(-x for x in k), nexp))
            else:
                prev = prev - q_c * tc
                if prev:
                    coeffs[nexp] = prev
                else:
                    del coeffs[nexp]
    return (
        [Polynomial(ring, q) for q in quotients],
        Polynomial(ring, remainder),
    )


def _lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def s_polynomial(g1, g2, order):
    """S(g1,g2) = lcm/init(g1) * g1 - lcm/init(g2) * g2."""
    lm1, lc1 = g1.leading_term(order)
    lm2, lc2 = g2.leading_term(order)
    lcm = _lcm_exp(lm1, lm2)
    m1 = tuple(a - b for a, b in zip(lcm, lm1))
    m2 = tuple(a - b for a, b in zip(lcm, lm2))
    ring = g1.ring
    return (
        Polynomial(ring, {m1: _ONE / lc1}) * g1
        - Polynomial(ring, {m2: _ONE / lc2}) * g2
    )


def _update_pairs(lms, order, pairs, new_index):
    """Gebauer-Moeller pair pruning when element new_index joins the basis.

    lms: leading exponents including the new one.  pairs: current set of
    index pairs (i, j), i < j < new_index.  Returns the updated set.
    A new pair is dropped when another new pair's lcm divides its lcm
    (processing ascending lcms, so only equal lcms need the look-ahead),
    and coprime pairs are dropped last, after serving as blockers.
    """
    h = new_index
    lm_h = lms[h]
    key = order.key
    lcms = [_lcm_exp(lm_h, lms[i]) for i in range(h)]

    def coprime(i):
        return all(a == 0 or b == 0 for a, b in zip(lm_h, lms[i]))

    candidates = sorted(range(h), key=lambda i: (key(lcms[i]), i))
    kept = []
    for pos, i in enumerate(candidates):
        if not coprime(i):
            blocked = False
            for j in candidates[pos + 1 :]:
                if kernel.monomial_divides(lcms[j], lcms[i]):
                    blocked = True
                    break
            if not blocked:
                for j in kept:
                    if kernel.monomial_divides(lcms[j], lcms[i]):
                        blocked = True
                        break
            if blocked:
                continue
        kept.append(i)
    new_pairs = set()
    for i, j in pairs:
        lij = _lcm_exp(lms[i], lms[j])
        if (
            not kernel.monomial_divides(lm_h, lij)
            or _lcm_exp(lms[i], lm_h) == lij
            or _lcm_exp(lms[j], lm_h) == lij
        ):
            new_pairs.add((i, j))
    for i in kept:
        if not coprime(i):
            new_pairs.add((i, h))
    return new_pairs


def buchberger(ideal, order, max_reductions=None, rng=None):
    """Buchberger's algorithm with normal pair selection and GM pruning.

    Returns a (generally non-reduced) GroebnerBasis.  rng, if given,
    randomizes the pair-selection schedule; the reduced basis obtained
    afterwards is independent of it.  max_reductions bounds the number
    of S-polynomial reductions; exceeding it raises UndeterminedError.
    """
    ring = ideal.ring
    key = order.key
    d = ring.d
    seed = sorted(
        {g.monic(order) for g in ideal.generators},
        key=lambda g: [(key(e), c) for e, c in g.sorted_items(order)],
    )
    basis = []
    lms = []
    pairs = set()
    heap = []
    reducers = []

    def selection_key(p):
        lij = _lcm_exp(lms[p[0]], lms[p[1]])
        return (sum(w * e for w, e in zip(d, lij)), key(lij), p)

    def insert(g):
        lead, _ = g.leading_term(order)
        basis.append(g)
        lms.append(lead)
        nonlocal pairs
        updated = _update_pairs(lms, order, pairs, len(basis) - 1)
        for p in updated - pairs:
            heapq.heappush(heap, selection_key(p))
        pairs = updated
        tail = tuple((e, c) for e, c in g.terms.items() if e != lead)
        reducers.append((lead, tail))

    for g in seed:
        g = _nf(g, reducers, order)
        if g:
            insert(g.monic(order))

    reductions = 0
    while pairs:
        if rng is None:
            while True:
                best = heapq.heappop(heap)[2]
                if best in pairs:
                    break
        else:
            best = sorted(pairs)[rng.randrange(len(pairs))]
        pairs.discard(best)
        i, j = best
        s = s_polynomial(basis[i], basis[j], order)
        if not s:
            continue
        reductions += 1
        if max_reductions is not None and reductions > max_reductions:
            raise UndeterminedError("undetermined")
        r = _nf(s, reducers, order)
        if r:
            insert(r.monic(order))
    return GroebnerBasis(ideal, order, basis, reduced=False)


def reduce_basis(gb):
    """The unique reduced Groebner basis equivalent to gb."""
    order = gb.order
    key = order.key
    elements = sorted(
        (g.monic(order) for g in gb.elements),
        key=lambda g: key(g.leading_term(order)[0]),
    )
    minimal = []
    lead_set = []
    for g in elements:
        lead = g.leading_term(order)[0]
        if any(kernel.monomial_divides(lm, lead) for lm in lead_set):
            continue
        minimal.append(g)
        lead_set.append(lead)
    reduced = list(minimal)
    for i in range(len(reduced)):
        others = [reduced[j] for j in range(len(reduced)) if j != i]
        r = _nf(reduced[i], _reducers(others, order), order)
        reduced[i] = r.monic(order)
    reduced.sort(key=lambda g: key(g.leading_term(order)[0]))
    return GroebnerBasis(gb.ideal, order, reduced, reduced=True)


_GB_CACHE = {}


def groebner_basis(ideal, order, max_reductions=None, rng=None, cache=True):
    """The reduced Groebner basis of ideal under order (cached)."""
    if cache and rng is None:
        hit = _GB_CACHE.get((ideal, order))
        if hit is not None:
            return hit
    gb = reduce_basis(buchberger(ideal, order, max_reductions, rng))
    if cache and rng is None:
        _GB_CACHE[(ideal, order)] = gb
    return gb


def is_groebner(polys, order):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    polys = [g for g in polys if g]
    monic = [g.monic(order) for g in polys]
    reducers = _reducers(monic, order)
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            if _nf(s_polynomial(monic[i], monic[j], order), reducers, order):
                return False
    return True


def refined_order(ring, w, d_first=True, base=None):
    """Order computing init_w: rows d (optional), -w, then base rows + lex.

    With d_first (for d-homogeneous ideals, d positive) the order is
    always global; otherwise -w's columns must pass validation, which
    restricts to weights in the Groebner region.
    """
    rows = []
    if d_first:
        rows.append(ring.d)
    rows.append(tuple(-rat(x) for x in w))
    lex_vars = None
    if base is not None:
        rows.extend(base.rows)
        lex_vars = base.lex_vars
    else:
        rows.append((1,) * ring.n)
    return OrderSpec(ring, rows, lex_vars)


def cone_membership(ideal_or_gb, order_or_w, w=None):
    """Classify w against the closed Groebner cone of (ideal, order).

    Returns "interior", "boundary", or "outside": interior iff
    init_w(g) = init_<(g) for every reduced-basis element; the closed
    cone requires init_<(g) = init_<(init_w(g)); boundary is the closed
    test passing with some init_w(g) having more than one term.
    """
    if isinstance(ideal_or_gb, GroebnerBasis):
        gb = ideal_or_gb
        w = order_or_w
    else:
        gb = groebner_basis(ideal_or_gb, order_or_w)
    w = tuple(rat(x) for x in w)
    order = gb.order
    all_single = True
    for g in gb.elements:
        iw = initial_form_weight(g, w)
        if iw.leading_term(order)[0] != g.leading_term(order)[0]:
            return "outside"
        if len(iw.terms) > 1:
            all_single = False
    return "interior" if all_single else "boundary"


def initial_ideal(ideal, w, order=None, max_reductions=None):
    """init_w(ideal) = <init_w(g) : g in a compatible reduced basis>.

    With an order supplied, w must lie in its closed cone (otherwise
    "weight outside closed cone of supplied order" is raised).  Without
    one, a refined order (d, then -w) is constructed; this requires the
    generators to be d-homogeneous or w to lie in the Groebner region.
    """
    ring = ideal.ring
    w = tuple(rat(x) for x in w)
    if order is not None:
        gb = groebner_basis(ideal, order, max_reductions)
        if cone_membership(gb, w) == "outside":
            raise PolyError("weight outside closed cone of supplied order")
    else:
        use_d = ideal.is_homogeneous() and all(x > 0 for x in ring.d)
        order_w = refined_order(ring, w, d_first=use_d)
        gb = groebner_basis(ideal, order_w, max_reductions)
    gens = [initial_form_weight(g, w) for g in gb.elements]
    if all(len(g.terms) == 1 for g in gens):
        exps = minimal_monomial_generators(
            [next(iter(g.terms)) for g in gens]
        )
        gens = [Polynomial(ring, {e: _ONE}) for e in exps]
    return Ideal(ring, gens)


def minimal_monomial_generators(exponents):
    """Minimal generating exponents of the monomial ideal they span."""
    exps = sorted(set(exponents), key=lambda e: (sum(e), e))
    minimal = []
    for e in exps:
        if not any(kernel.monomial_divides(m, e) for m in minimal):
            minimal.append(e)
    minimal.sort()
    return minimal


def lineality_contains(ideal_or_gb, ell, order=None):
    """True iff init_ell(g) = g for every reduced-basis element."""
    gb = _as_gb(ideal_or_gb, order)
    ell = tuple(rat(x) for x in ell)
    return all(initial_form_weight(g, ell) == g for g in gb.elements)


def lineality_space(ideal_or_gb, order=None):
    """A basis of {ell : init_ell(g) = g for all g}, the lineality space."""
    gb = _as_gb(ideal_or_gb, order)
    rows = []
    for g in gb.elements:
        exps = list(g.terms)
        base = exps[0]
        for other in exps[1:]:
            rows.append(tuple(a - b for a, b in zip(other, base)))
    return nullspace(rows, gb.ideal.ring.n)


def _as_gb(ideal_or_gb, order=None):
    if isinstance(ideal_or_gb, GroebnerBasis):
        return ideal_or_gb
    ring = ideal_or_gb.ring
    if order is None:
        order = ring.default_order()
    return groebner_basis(ideal_or_gb, order)


def nullspace(rows, n):
    """Basis of the rational nullspace of the given row vectors."""
    matrix = [list(map(rat, row)) for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, len(matrix)):
            if matrix[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = _ONE / matrix[r][c]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c]:
                factor = matrix[i][c]
                matrix[i] = [
                    a - factor * b for a, b in zip(matrix[i], matrix[r])
                ]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for c in free:
        vec = [QQ(0)] * n
        vec[c] = _ONE
        for i, p in enumerate(pivots):
            vec[p] = -matrix[i][c]
        basis.append(tuple(vec))
    return basis


def rank(rows):
    """Rank of a rational matrix given as a list of rows."""
    if not rows:
        return 0
    n = len(rows[0])
    return n - len(nullspace(rows, n))


def contains_monomial(ideal, max_reductions=500000):
    """True iff the ideal contains a monomial.

    Decided through saturation: the ideal contains a monomial iff
    adjoining z with z*x1*...*xn - 1 yields the unit ideal.  Exceeding
    the reduction budget raises UndeterminedError("undetermined").
    """
    ring = ideal.ring
    zname = "z"
    while zname in ring.index:
        zname += "_"
    ring2 = ring.extend((zname,), d_new=(1,))
    n = ring.n

    def inject(g):
        return Polynomial(
            ring2, {exp + (0,): c for exp, c in g.terms.items()}
        )

    hyperbola = Polynomial(
        ring2, {(1,) * (n + 1): _ONE, (0,) * (n + 1): -_ONE}
    )
    gens = [inject(g) for g in ideal.generators] + [hyperbola]
    order = OrderSpec(ring2, [(1,) * (n + 1)])
    gb = groebner_basis(
        Ideal(ring2, gens), order, max_reductions=max_reductions
    )
    zero_exp = (0,) * (n + 1)
    return any(
        len(g.terms) == 1 and next(iter(g.terms)) == zero_exp
        for g in gb.elements
    )


def toric_ideal_of_matrix(matrix, target_ring, max_reductions=2000000):
    """Kernel of the monomial map x_i -> u^(column i of matrix).

    Computed by elimination: adjoin u_1..u_k and an inverse handle v
    with u_1*...*u_k*v - 1 (absorbing negative entries), write the
    cleared relations x_i * u^(neg part) - u^(pos part), and keep the
    reduced-basis elements free of u and v.  Returns the prime binomial
    kernel in target_ring.
    """
    rows = [tuple(int(x) for x in row) for row in matrix]
    k = len(rows)
    n = target_ring.n
    for row in rows:
        if len(row) != n:
            raise PolyError("matrix width must match the target ring")
    prefix = "u"
    while any(
        ("%s%d" % (prefix, i + 1)) in target_ring.index for i in range(k)
    ):
        prefix += "_"
    vname = "v"
    while vname in target_ring.index:
        vname += "_"
    aux = ["%s%d" % (prefix, i + 1) for i in range(k)] + [vname]
    names = tuple(aux) + target_ring.vars
    ring = Ring(names)
    total = k + 1 + n
    elim_row = (1,) * (k + 1) + (0,) * n
    order = OrderSpec(ring, [elim_row, (1,) * total])
    gens = []
    for i in range(n):
        col = [rows[r][i] for r in range(k)]
        pos = [max(x, 0) for x in col] + [0]
        neg = [max(-x, 0) for x in col] + [0]
        left = tuple(neg) + tuple(
            1 if j == i else 0 for j in range(n)
        )
        right = tuple(pos) + (0,) * n
        gens.append(Polynomial(ring, {left: _ONE, right: -_ONE}))
    torus = Polynomial(
        ring,
        {(1,) * (k + 1) + (0,) * n: _ONE, (0,) * total: -_ONE},
    )
    gens.append(torus)
    gb = groebner_basis(
        Ideal(ring, gens), order, max_reductions=max_reductions
    )
    kept = []
    for g in gb.elements:
        if all(all(e == 0 for e in exp[: k + 1]) for exp in g.terms):
            kept.append(
                Polynomial(
                    target_ring,
                    {exp[k + 1 :]: c for exp, c in g.terms.items()},
                )
            )
    return Ideal(target_ring, kept)


def totally_positive_witness(gb):
    """True iff each reduced-basis element has exactly one positive-
    coefficient monomial and it is the order-initial one."""
    for g in gb.elements:
        positives = [exp for exp, c in g.terms.items() if c > 0]
        if len(positives) != 1:
            return False
        if positives[0] != g.leading_term(gb.order)[0]:
            return False
    return True


class StandardMonomialBasis:
    """Monomials not divisible by any lead monomial of init_<(J)."""

    __slots__ = ("ring", "order", "lead_monomials")

    def __init__(self, ring, order, lead_monomials):
        self.ring = ring
        self.order = order
        self.lead_monomials = tuple(
            minimal_monomial_generators(lead_monomials)
        )

    def contains(self, exp):
        return not any(
            kernel.monomial_divides(lm, exp) for lm in self.lead_monomials
        )

    def monomials_of_degree(self, degree, d=None):
        """All standard monomials of exact weighted degree."""
        if d is None:
            d = self.ring.d
        degree = rat(degree)
        n = self.ring.n
        out = []
        exp = [0] * n

        def rec(i, remaining):
            if i == n:
                if remaining == 0:
                    e = tuple(exp)
                    if self.contains(e):
                        out.append(e)
                return
            if d[i] <= 0:
                raise PolyError("degree enumeration needs positive weights")
            e = 0
            while e * d[i] <= remaining:
                exp[i] = e
                rec(i + 1, remaining - e * d[i])
                e += 1
            exp[i] = 0

        rec(0, degree)
        return out

    def count_by_degree(self, max_degree, d=None):
        """{k: number of standard monomials of degree k} for k = 0..max_degree."""
        return {
            k: len(self.monomials_of_degree(k, d))
            for k in range(int(max_degree) + 1)
        }

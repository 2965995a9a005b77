"""Multi-parameter lifts of weighted-homogeneous ideals.

Given rays r_1..r_m inside the closed Groebner cone of (J, <), each
reduced-basis element g lifts to g~ = sum c_alpha x^alpha t^(R alpha - mu)
with mu_i = min over terms of r_i . alpha.  The lifted generators cut a
flat family over A^m: t = 1 returns J, coordinate face points return
initial ideals, and the t-exponents record the Rees homogenization
pairing r_i . (alpha - gamma) against the unique t-free monomial gamma.
"""

from .groebner import (
    GroebnerBasis,
    Ideal,
    cone_membership,
    groebner_basis,
    lineality_space,
    rank,
    refined_order,
)
from .polyring import (
    OrderSpec,
    PolyError,
    Polynomial,
    QQ,
    initial_form_weight,
    min_weight,
    rat,
    rat_to_json,
    specialize,
)

_ZERO = QQ(0)


class RayMatrix:
    """Rational rays r_1..r_m bound to a source cone (ideal, order).

    When a source is supplied, construction checks that every row lies
    in the closed cone and that no two rows are proportional modulo the
    lineality space.  tvars names the lift parameters, one per row.
    """

    __slots__ = ("rows", "tvars", "m", "n")

    def __init__(self, rows, tvars=None, ideal=None, order=None):
        self.rows = tuple(tuple(rat(x) for x in row) for row in rows)
        self.m = len(self.rows)
        if self.m == 0:
            raise PolyError("a ray matrix needs at least one row")
        self.n = len(self.rows[0])
        if any(len(row) != self.n for row in self.rows):
            raise PolyError("ray rows must have equal length")
        if tvars is None:
            tvars = tuple("t%d" % (i + 1) for i in range(self.m))
        else:
            tvars = tuple(tvars)
            if len(tvars) != self.m:
                raise PolyError("one t variable per ray row is required")
        self.tvars = tvars
        if ideal is not None or order is not None:
            if ideal is None or order is None:
                raise PolyError("source cone needs both ideal and order")
            self.validate(ideal, order)

    def validate(self, ideal, order):
        gb = (
            ideal
            if isinstance(ideal, GroebnerBasis)
            else groebner_basis(ideal, order)
        )
        for i, row in enumerate(self.rows):
            if cone_membership(gb, row) == "outside":
                raise PolyError(
                    "ray row %d lies outside the closed cone" % (i + 1,)
                )
        lin = lineality_space(gb)
        base_rank = rank(lin) if lin else 0
        for i in range(self.m):
            for j in range(i + 1, self.m):
                if (
                    rank(list(lin) + [self.rows[i], self.rows[j]])
                    != base_rank + 2
                ):
                    raise PolyError(
                        "ray rows %d and %d are proportional modulo lineality"
                        % (i + 1, j + 1)
                    )
        return self

    def weight(self):
        """The distinguished weight w = r_1 + ... + r_m."""
        return tuple(sum(col) for col in zip(*self.rows))


def mu_vector(f, rays):
    """Column vector with entries min over terms of r_i . alpha."""
    return tuple(min_weight(f, row) for row in rays.rows)


def extended_ring(ring, rays):
    """ring with the t variables appended at weight 0."""
    return ring.extend(rays.tvars)


def lift_polynomial(f, rays, ext=None):
    """The lift f~ = sum c_alpha x^alpha t^(R alpha - mu_r(f)).

    Every t-exponent must be a nonnegative integer; a fractional value
    raises "ray scaling incompatible with f".
    """
    if not f:
        raise PolyError("zero has no lift")
    ring = f.ring
    if ext is None:
        ext = extended_ring(ring, rays)
    mu = mu_vector(f, rays)
    terms = {}
    for exp, c in f.terms.items():
        tpart = []
        for row, m_i in zip(rays.rows, mu):
            val = -m_i
            for w, e in zip(row, exp):
                if e:
                    val += w * e
            if val.denominator != 1 or val < 0:
                raise PolyError("ray scaling incompatible with f")
            tpart.append(int(val))
        terms[exp + tuple(tpart)] = c
    return Polynomial(ext, terms)


def extended_order(base, ext, m):
    """The order on the lifted ring: x-parts first, lex on t's after.

    Base weight rows are zero-padded on the t columns and the lex
    tiebreak runs through the base permutation before the t variables,
    so every t_i is smaller than every x_j.
    """
    rows = [row + (_ZERO,) * m for row in base.rows]
    lex_vars = list(base.lex_vars) + list(ext.vars[-m:])
    return OrderSpec(ext, rows, lex_vars)


class LiftedIdeal:
    """Lifts of a reduced Groebner basis, with their source data.

    generators[i] is the lift of base_gb.elements[i].  w_prime is the
    homogeneity vector (sum of rays on the x block, -1 on the t block).
    """

    __slots__ = ("ring", "base_ring", "base_gb", "rays", "generators", "order")

    def __init__(self, ring, base_gb, rays, generators):
        self.ring = ring
        self.base_ring = base_gb.ideal.ring
        self.base_gb = base_gb
        self.rays = rays
        self.generators = tuple(generators)
        self.order = extended_order(base_gb.order, ring, rays.m)

    @property
    def w_prime(self):
        return self.rays.weight() + (-1,) * self.rays.m

    def v_prime(self, coefficients):
        """(-c | sum c_i r_i) homogeneity vector for nonnegative c."""
        c = [rat(x) for x in coefficients]
        if len(c) != self.rays.m:
            raise PolyError("one coefficient per ray row is required")
        xpart = [
            sum(ci * row[j] for ci, row in zip(c, self.rays.rows))
            for j in range(self.rays.n)
        ]
        return tuple(xpart) + tuple(-x for x in c)

    def t_free_exponent(self, g):
        """The x-exponent of the unique t-free monomial of a generator."""
        n = self.base_ring.n
        hits = [
            exp[:n]
            for exp in g.terms
            if all(e == 0 for e in exp[n:])
        ]
        if len(hits) != 1:
            raise PolyError(
                "lift does not have a unique t-free monomial"
            )
        return hits[0]


def lifted_ideal(ideal, order, rays, validate=True):
    """Lift the whole reduced Groebner basis of (ideal, order).

    The lifts generate the lifted ideal and form a Groebner basis for it
    under the extended order; here each lift is checked to contain
    exactly one t-free monomial, which is its extended-order initial.
    """
    gb = (
        ideal
        if isinstance(ideal, GroebnerBasis)
        else groebner_basis(ideal, order)
    )
    if validate:
        rays.validate(gb, gb.order)
    ext = extended_ring(gb.ideal.ring, rays)
    gens = [lift_polynomial(g, rays, ext) for g in gb.elements]
    lifted = LiftedIdeal(ext, gb, rays, gens)
    if validate:
        ext_order = lifted.order
        for g in gens:
            free = lifted.t_free_exponent(g)
            lead = g.leading_term(ext_order)[0]
            if lead[: gb.ideal.ring.n] != free or any(
                e != 0 for e in lead[gb.ideal.ring.n :]
            ):
                raise PolyError(
                    "t-free monomial of a lift is not its initial monomial"
                )
    return lifted


def ray_invariance_check(g, rays_a, rays_b):
    """True iff the lifts of g under the two ray matrices coincide.

    Intended for matrices whose rows differ by lineality elements of the
    source ideal; equality of the lifts is then the expected outcome.
    """
    if rays_a.tvars != rays_b.tvars:
        raise PolyError("ray matrices must share their t variables")
    return lift_polynomial(g, rays_a) == lift_polynomial(g, rays_b)


def fiber(lifted, point):
    """Specialize the t variables of every generator at the given point."""
    point = [rat(x) for x in point]
    if len(point) != lifted.rays.m:
        raise PolyError("point length must match the number of rays")
    assignments = dict(zip(lifted.rays.tvars, point))
    gens = []
    for g in lifted.generators:
        value = specialize(g, assignments)
        if value:
            gens.append(value)
    return Ideal(lifted.base_ring, gens)


def face_point(indices, m):
    """The 0/1 point with zeros exactly at the given 1-based ray indices."""
    indices = set(int(i) for i in indices)
    for i in indices:
        if not 1 <= i <= m:
            raise PolyError("face index %d out of range" % (i,))
    return tuple(0 if i + 1 in indices else 1 for i in range(m))


def one_param_family(ideal, w, order=None, tvar="t"):
    """Generators c_alpha x^alpha t^(w.alpha - min) from the reduced basis.

    The t = 0 fiber is init_w(ideal) and the t = 1 fiber is the ideal
    itself.  Exponents must come out integral.
    """
    if isinstance(ideal, GroebnerBasis):
        gb = ideal
        ring = gb.ideal.ring
    else:
        ring = ideal.ring
        if order is None:
            use_d = ideal.is_homogeneous() and all(x > 0 for x in ring.d)
            order = refined_order(ring, w, d_first=use_d)
        gb = groebner_basis(ideal, order)
    w = tuple(rat(x) for x in w)
    ext = ring.extend((tvar,))
    gens = []
    for g in gb.elements:
        m = min_weight(g, w)
        terms = {}
        for exp, c in g.terms.items():
            val = -m
            for wi, e in zip(w, exp):
                if e:
                    val += wi * e
            if val.denominator != 1:
                raise PolyError("ray scaling incompatible with f")
            terms[exp + (int(val),)] = c
        gens.append(Polynomial(ext, terms))
    return Ideal(ext, gens)


def rees_correspondence_check(lifted):
    """Check the homogenization pairing on every generator.

    True iff each generator has a unique t-free monomial x^gamma and
    every term's t_i-exponent equals r_i . (alpha - gamma) >= 0.
    """
    n = lifted.base_ring.n
    for g in lifted.generators:
        try:
            gamma = lifted.t_free_exponent(g)
        except PolyError:
            return False
        for exp in g.terms:
            alpha = exp[:n]
            diff = tuple(a - b for a, b in zip(alpha, gamma))
            for row, e in zip(lifted.rays.rows, exp[n:]):
                val = sum(w * x for w, x in zip(row, diff))
                if val != e or val < 0:
                    return False
    return True


class FlatnessReport:
    """Graded fiber dimensions compared against the standard-monomial count."""

    __slots__ = ("degree_bound", "expected", "points", "counts", "mismatches")

    def __init__(self, degree_bound, expected, points, counts, mismatches):
        self.degree_bound = degree_bound
        self.expected = expected
        self.points = points
        self.counts = counts
        self.mismatches = mismatches

    @property
    def ok(self):
        return not self.mismatches

    def to_json(self):
        return {
            "format": 1,
            "degree_bound": self.degree_bound,
            "expected": {str(k): v for k, v in self.expected.items()},
            "points": [[rat_to_json(x) for x in p] for p in self.points],
            "counts": [
                {str(k): v for k, v in c.items()} for c in self.counts
            ],
            "ok": self.ok,
            "mismatches": [
                {"point": [rat_to_json(x) for x in p], "degree": k,
                 "dim": got, "expected": want}
                for p, k, got, want in self.mismatches
            ],
        }


def flatness_certificate(lifted, max_degree, points):
    """Certify equal graded dimensions of the sampled fibers.

    For each point a and degree k <= max_degree, the dimension of the
    degree-k part of ring/fiber(a) (counted through standard monomials
    of a Groebner basis of the fiber) must equal the standard-monomial
    count of the source ideal.  Mismatches are reported, not raised.
    """
    max_degree = int(max_degree)
    expected = lifted.base_gb.standard_monomials().count_by_degree(max_degree)
    counts = []
    mismatches = []
    pts = [tuple(rat(x) for x in p) for p in points]
    for point in pts:
        fiber_ideal = fiber(lifted, point)
        fgb = groebner_basis(fiber_ideal, lifted.base_gb.order)
        got = fgb.standard_monomials().count_by_degree(max_degree)
        counts.append(got)
        for k in range(max_degree + 1):
            if got[k] != expected[k]:
                mismatches.append((point, k, got[k], expected[k]))
    return FlatnessReport(max_degree, expected, pts, counts, mismatches)

"""Polygon combinatorics for the Pluecker algebra of 2 x n minors.

A triangulation T of a convex n-gon indexes a seed of the cluster
structure on the homogeneous coordinate ring of the Grassmannian of
planes.  This module builds the combinatorial side of that dictionary:
triangulations and flips, the seed quiver, the extended dual tree and
its turn-rule g-vectors, the block partition producing weight vectors
with toric initial ideals, the gap weight whose cone degenerates all of
them to the crossing-monomial ideal, the rays of that maximal cone, the
closed-form lifted Pluecker relations with one parameter per diagonal,
the g-vector valuation, and Newton-Okounkov polytopes together with the
piecewise-linear maps relating polytopes of adjacent triangulations.

Conventions, fixed once for the whole package:

* Polygon vertices are 1..n in clockwise order.  An arc is a pair
  (i, j) with i < j; boundary arcs are (i, i+1) and (1, n); the other
  arcs are diagonals.  The coordinate arcs of T (its n-3 diagonals plus
  the n boundary arcs) index the basis f_ab of g-vector space.
* The doubled polygon has vertices 1',1,2',2,...,n',n clockwise; the
  cherry for polygon vertex i is the triangle (i-1, i', i), so the
  cherry attaches to the triangle of T containing boundary arc (i-1, i)
  and carries the unprimed leaf i.
"""

from fractions import Fraction

from .polyring import PolyError, Polynomial, Ring, rat
from .groebner import Ideal, groebner_basis, refined_order
from .cluster import IceQuiver
from .lifting import RayMatrix, extended_ring, lifted_ideal

# One-bit ribbon orientation: at an internal tree vertex, leaving via
# the clockwise-next edge after the incoming one is a LEFT turn.  The
# opposite choice negates every g-vector entry (it would give
# g_ij = -f_ij on arcs of T); this one is the choice under which the
# fixture tables in data/gr2n_examples.json are reproduced.
CLOCKWISE_NEXT_IS_LEFT = True

_gb_cache = {}


def arc(i, j):
    """Normalized arc (min, max) between two distinct polygon vertices."""
    i, j = int(i), int(j)
    if i == j:
        raise PolyError("an arc needs two distinct vertices")
    return (i, j) if i < j else (j, i)


def is_boundary_arc(e, n):
    i, j = e
    return j - i == 1 or (i, j) == (1, n)


def boundary_arcs(n):
    return tuple(arc(i, i + 1) for i in range(1, n)) + ((1, n),)


def polygon_arcs(n):
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


def polygon_diagonals(n):
    return tuple(e for e in polygon_arcs(n) if not is_boundary_arc(e, n))


def arcs_cross(e1, e2):
    """True iff the two arcs cross in the open disk."""
    (a, b), (c, d) = sorted((arc(*e1), arc(*e2)))
    return a < c < b < d


def cyclic_interval(x, y, n):
    """Vertices from x to y inclusive, walking clockwise around 1..n."""
    x = (x - 1) % n + 1
    y = (y - 1) % n + 1
    out = [x]
    while x != y:
        x = x % n + 1
        out.append(x)
    return out


class Triangulation:
    """A maximal set of pairwise non-crossing diagonals of the n-gon."""

    __slots__ = ("n", "diagonals")

    def __init__(self, n, diagonals):
        n = int(n)
        if n < 3:
            raise PolyError("a polygon needs at least three vertices")
        diags = frozenset(arc(*e) for e in diagonals)
        for i, j in diags:
            if not (1 <= i < j <= n) or is_boundary_arc((i, j), n):
                raise PolyError("(%d, %d) is not a diagonal" % (i, j))
        for e in diags:
            for f in diags:
                if e < f and arcs_cross(e, f):
                    raise PolyError(
                        "diagonals %s and %s cross" % (e, f)
                    )
        if len(diags) != n - 3:
            raise PolyError(
                "a triangulation of the %d-gon needs %d diagonals, got %d"
                % (n, n - 3, len(diags))
            )
        self.n = n
        self.diagonals = diags

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.n == other.n
            and self.diagonals == other.diagonals
        )

    def __hash__(self):
        return hash((self.n, self.diagonals))

    def __repr__(self):
        inner = ",".join(
            "%d-%d" % e for e in sorted(self.diagonals)
        )
        return "Triangulation(%d, {%s})" % (self.n, inner)

    def coordinate_arcs(self):
        """Diagonals plus boundary arcs, sorted; the basis index set."""
        return tuple(
            sorted(set(boundary_arcs(self.n)) | self.diagonals)
        )

    def edges(self):
        return frozenset(boundary_arcs(self.n)) | self.diagonals

    def triangles(self):
        """Faces as sorted vertex triples (every 3-clique of arcs is one)."""
        edges = self.edges()
        n = self.n
        out = []
        for a in range(1, n - 1):
            for b in range(a + 1, n):
                if (a, b) not in edges:
                    continue
                for c in range(b + 1, n + 1):
                    if (a, c) in edges and (b, c) in edges:
                        out.append((a, b, c))
        if len(out) != n - 2:
            raise PolyError("face count mismatch")
        return out

    def quadrilateral(self, diagonal):
        """Cyclic labels (a, b, c, d) of the quadrilateral around a diagonal.

        a < c is the diagonal, b the opposite vertex with a < b < c and
        d the remaining one, so the sides are ab, bc, cd, da.
        """
        diagonal = arc(*diagonal)
        if diagonal not in self.diagonals:
            raise PolyError("%s is not a diagonal of this triangulation"
                            % (diagonal,))
        a, c = diagonal
        offs = [
            (set(t) - {a, c}).pop()
            for t in self.triangles()
            if a in t and c in t
        ]
        if len(offs) != 2:
            raise PolyError("diagonal is not shared by two faces")
        b = next(v for v in offs if a < v < c)
        d = next(v for v in offs if v != b)
        return (a, b, c, d)

    def flip(self, diagonal):
        """Replace the diagonal by the other one of its quadrilateral."""
        a, b, c, d = self.quadrilateral(diagonal)
        return Triangulation(
            self.n, (self.diagonals - {(a, c)}) | {arc(b, d)}
        )


def parse_triangulation(n, text):
    """Triangulation from a string like "13,14" or "1-3,1-4"."""
    diags = []
    for token in str(text).replace(" ", "").split(","):
        if not token:
            continue
        if "-" in token:
            parts = token.split("-")
        elif len(token) == 2:
            parts = tuple(token)
        else:
            parts = ()
        try:
            i, j = (int(x) for x in parts)
        except ValueError:
            raise PolyError("cannot read arc %r" % token)
        diags.append(arc(i, j))
    return Triangulation(n, diags)


def triangulations(n):
    """All triangulations of the n-gon (Catalan(n-2) of them)."""

    def rec(lo, hi):
        if hi - lo < 2:
            return [frozenset()]
        out = []
        for k in range(lo + 1, hi):
            for left in rec(lo, k):
                for right in rec(k, hi):
                    s = left | right
                    if k - lo >= 2:
                        s = s | {(lo, k)}
                    if hi - k >= 2:
                        s = s | {(k, hi)}
                    out.append(s)
        return out

    return [Triangulation(n, s) for s in rec(1, n)]


def flip_difference(t1, t2):
    """The (removed, added) diagonal pair of a single flip."""
    if t1.n != t2.n:
        raise PolyError("triangulations of different polygons")
    gone = t1.diagonals - t2.diagonals
    new = t2.diagonals - t1.diagonals
    if len(gone) != 1 or len(new) != 1:
        raise PolyError("triangulations are not related by one flip")
    return next(iter(gone)), next(iter(new))


def seed_quiver(tri):
    """Ice quiver of a triangulation: vertices are coordinate arcs,
    each face (a, b, c) contributes the cycle ab -> bc -> ac -> ab,
    boundary arcs are frozen."""
    arrows = []
    for a, b, c in tri.triangles():
        arrows += [((a, b), (b, c)), ((b, c), (a, c)), ((a, c), (a, b))]
    return IceQuiver(
        tri.coordinate_arcs(),
        arrows,
        frozen=boundary_arcs(tri.n),
    )


class ExtendedDualTree:
    """Trivalent ribbon tree of the doubled polygon's triangulation.

    Internal vertices are the faces of T ("t", (a, b, c)) and one
    cherry ("c", i) per polygon vertex; every internal vertex stores
    the clockwise rotation of its three incident edge labels.  The
    internal edges are labeled by the 2n-3 coordinate arcs; the 2n
    leaves are ("lf", i) and ("pl", i).
    """

    __slots__ = ("tri", "rotations", "incidence")

    def __init__(self, tri):
        n = tri.n
        rotations = {}
        for t in tri.triangles():
            a, b, c = t
            rotations[("t", t)] = ((a, b), (b, c), (a, c))
        for i in range(1, n + 1):
            e = arc(i - 1, i) if i > 1 else (1, n)
            rotations[("c", i)] = (("pl", i), ("lf", i), e)
        incidence = {}
        for v, rot in rotations.items():
            for label in rot:
                incidence.setdefault(label, []).append(v)
        for e in tri.coordinate_arcs():
            if len(incidence.get(e, ())) != 2:
                raise PolyError("arc %s is not an internal edge" % (e,))
        self.tri = tri
        self.rotations = rotations
        self.incidence = incidence

    def coordinate_arcs(self):
        return self.tri.coordinate_arcs()

    def neighbor(self, vertex, label):
        u, w = self.incidence[label]
        return w if u == vertex else u

    def _vertex_path(self, start, goal):
        prev = {start: None}
        queue = [start]
        while queue:
            v = queue.pop(0)
            if v == goal:
                break
            for label in self.rotations[v]:
                if label[0] in ("lf", "pl"):
                    continue
                w = self.neighbor(v, label)
                if w not in prev:
                    prev[w] = (v, label)
                    queue.append(w)
        verts, labels = [goal], []
        while prev[verts[-1]] is not None:
            v, label = prev[verts[-1]]
            labels.append(label)
            verts.append(v)
        return verts[::-1], labels[::-1]

    def leaf_path(self, i, j):
        """Internal vertices and traversed arcs from leaf i to leaf j."""
        if i == j:
            raise PolyError("a path needs two distinct leaves")
        return self._vertex_path(("c", i), ("c", j))

    def cherry_distance(self, i, j):
        return len(self.leaf_path(i, j)[1])

    def signed_path(self, i, j):
        """(arc, sign) per traversed arc on the leaf-i to leaf-j path.

        A traversed arc gets +1 when the path turns left at its first
        vertex and right at its second, -1 for right then left, and 0
        when both turns agree.
        """
        verts, labels = self.leaf_path(i, j)
        enter = [("lf", i)] + labels
        leave = labels + [("lf", j)]
        turns = []
        for v, a, b in zip(verts, enter, leave):
            rot = self.rotations[v]
            left = rot[(rot.index(a) + 1) % 3] == b
            if not CLOCKWISE_NEXT_IS_LEFT:
                left = not left
            turns.append(left)
        out = []
        for t, label in enumerate(labels):
            first, second = turns[t], turns[t + 1]
            sign = 0 if first == second else (1 if first else -1)
            out.append((label, sign))
        return out


def extended_dual_tree(tri):
    return ExtendedDualTree(tri)


def _as_tree(tri_or_tree):
    if isinstance(tri_or_tree, ExtendedDualTree):
        return tri_or_tree
    return ExtendedDualTree(tri_or_tree)


def tree_weight(tri_or_tree):
    """Weight with w(p_ij) = -(edges between the cherries of i and j).

    The count equals the leaf distance in the plain dual tree, whose
    leaf i hangs off the face containing boundary arc (i-1, i).  All
    entries are at most -2, and the two largest pair sums of any four
    leaves tie, so every Pluecker relation has a binomial initial form.
    """
    tree = _as_tree(tri_or_tree)
    n = tree.tri.n
    return tuple(
        -tree.cherry_distance(i, j) for i, j in polygon_arcs(n)
    )


def comb_g_vector(tri_or_tree, i, j):
    """g-vector of p_ij as a sparse {arc: coefficient} map."""
    tree = _as_tree(tri_or_tree)
    if not 1 <= i < j <= tree.tri.n:
        raise PolyError("need polygon vertices i < j")
    return {
        label: sign
        for label, sign in tree.signed_path(i, j)
        if sign
    }


def g_vector_table(tri):
    """{(i, j): g-vector} over all Pluecker indices."""
    tree = _as_tree(tri)
    return {
        (i, j): comb_g_vector(tree, i, j)
        for i, j in polygon_arcs(tri.n)
    }


def algorithm1_partition(tri):
    """Ordered partition of the coordinate arcs by repeated sink removal.

    Round after round, the quiver of the surviving faces is rebuilt
    (arcs on one surviving face are frozen, arrows between two frozen
    arcs are dropped); the frozen arcs without outgoing arrows form the
    next block and every face touching them is removed.  Arcs that
    disappear without ever being such a sink make up the final block.
    """
    remaining = list(tri.triangles())
    blocks = []
    assigned = set()
    while remaining:
        counts = {}
        for t in remaining:
            a, b, c = t
            for e in ((a, b), (b, c), (a, c)):
                counts[e] = counts.get(e, 0) + 1
        frozen = {e for e, k in counts.items() if k == 1}
        has_out = set()
        for a, b, c in remaining:
            for x, y in (
                ((a, b), (b, c)),
                ((b, c), (a, c)),
                ((a, c), (a, b)),
            ):
                if x in frozen and y in frozen:
                    continue
                has_out.add(x)
        block = sorted(e for e in frozen if e not in has_out)
        if not block:
            raise PolyError("sink removal stalled")
        blocks.append(block)
        assigned.update(block)
        hit = set(block)
        remaining = [
            t
            for t in remaining
            if not (
                {(t[0], t[1]), (t[1], t[2]), (t[0], t[2])} & hit
            )
        ]
    blocks.append(
        sorted(e for e in tri.coordinate_arcs() if e not in assigned)
    )
    return blocks


def block_weight_map(tri):
    """{arc: block index}; checked to separate every quadrilateral of T.

    For each diagonal ac with quadrilateral (a, b, c, d) the crossing
    side satisfies v(ad) + v(bc) > v(ab) + v(cd); failure would break
    the toric-initial-ideal construction, so it raises.
    """
    v = {
        e: q
        for q, block in enumerate(algorithm1_partition(tri))
        for e in block
    }
    for diagonal in sorted(tri.diagonals):
        a, b, c, d = tri.quadrilateral(diagonal)
        high = v[arc(a, d)] + v[arc(b, c)]
        low = v[arc(a, b)] + v[arc(c, d)]
        if not high > low:
            raise PolyError(
                "block weights fail the quadrilateral bound at %s"
                % (diagonal,)
            )
    return v


def weight_vector_wT(tri):
    """Weight vector with entry v(g_ij) per Pluecker variable.

    Minimizing it over any Pluecker relation keeps the crossing
    monomial and the side pair whose g-vector sum ties with it, so the
    initial ideal is the toric one attached to T.
    """
    v = block_weight_map(tri)
    table = g_vector_table(tri)
    return tuple(
        sum(v[e] * k for e, k in table[(i, j)].items())
        for i, j in polygon_arcs(tri.n)
    )


def compatible_arc_order(tri):
    """Coordinate arcs listed block by block (lex inside each block)."""
    return [e for block in algorithm1_partition(tri) for e in block]


def gvector_sort_key(gv, arc_order):
    """Sort key for the order that prefers larger leading entries."""
    return tuple(-gv.get(e, 0) for e in arc_order)


def _pname(i, j, n):
    return "p%d%d" % (i, j) if n <= 9 else "p%d_%d" % (i, j)


def _tname(i, j, n):
    return "t%d%d" % (i, j) if n <= 9 else "t%d_%d" % (i, j)


def plucker_ring(n):
    """Polynomial ring on p_ij, i < j, in lex pair order, all degrees 1."""
    return Ring([_pname(i, j, n) for i, j in polygon_arcs(n)])


def plucker_ideal(n):
    """Ideal of the three-term quadratic relations, one per quadruple."""
    ring = plucker_ring(n)
    index = {e: k for k, e in enumerate(polygon_arcs(n))}
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    terms = {}
                    for (e1, e2), c in (
                        (((i, j), (k, l)), 1),
                        (((i, k), (j, l)), -1),
                        (((i, l), (j, k)), 1),
                    ):
                        exp = [0] * ring.n
                        exp[index[e1]] += 1
                        exp[index[e2]] += 1
                        terms[tuple(exp)] = rat(c)
                    gens.append(Polynomial(ring, terms))
    return Ideal(ring, gens)


def crossing_pairs(n):
    """Pairs of crossing arcs as ((i,k), (j,l)) per quadruple i<j<k<l."""
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    out.append(((i, k), (j, l)))
    return out


def crossing_ideal(n):
    """Monomial ideal generated by the products of crossing arc pairs."""
    ring = plucker_ring(n)
    index = {e: k for k, e in enumerate(polygon_arcs(n))}
    gens = []
    for e1, e2 in crossing_pairs(n):
        exp = [0] * ring.n
        exp[index[e1]] += 1
        exp[index[e2]] += 1
        gens.append(Polynomial(ring, {tuple(exp): rat(1)}))
    return Ideal(ring, gens)


def u_weight(n):
    """Gap weight u(p_ij) = -(j - i - n/2)^2, rational entries.

    Maximizing u (equivalently minimizing -u, see monomial_cone_weight)
    over any Pluecker relation singles out the crossing monomial, so
    the associated monomial degeneration is the crossing ideal.
    """
    return tuple(
        -Fraction((2 * (j - i) - n) ** 2, 4) for i, j in polygon_arcs(n)
    )


def monomial_cone_weight(n):
    """Integer weight (2(j-i) - n)^2 = -4u, interior to the crossing cone.

    Minimal-weight terms under this vector are the maximal-weight terms
    under the gap weight u; the package convention takes minima, so
    this is the vector actually fed to initial-form routines.
    """
    return tuple((2 * (j - i) - n) ** 2 for i, j in polygon_arcs(n))


def compatible_order(n):
    """Term order refining the crossing cone: degree, -4u, tiebreaks."""
    return refined_order(plucker_ring(n), monomial_cone_weight(n))


def crossing_gb(n):
    """Reduced basis of the Pluecker ideal under compatible_order(n)."""
    key = ("gb", n)
    if key not in _gb_cache:
        _gb_cache[key] = groebner_basis(plucker_ideal(n), compatible_order(n))
    return _gb_cache[key]


def rays_C(n):
    """Ray matrix of the crossing cone: one row (1/2)r_ij per diagonal.

    (r_ij)_kl is -1 when exactly one of k, l lies in the vertex run
    i+1..j and 0 otherwise; rows are indexed by sorted diagonals and
    halved so that lifted relations get unit parameter exponents.
    """
    half = Fraction(1, 2)
    rows = []
    names = []
    for i, j in polygon_diagonals(n):
        inside = set(range(i + 1, j + 1))
        row = [
            -half if (k in inside) != (l in inside) else Fraction(0)
            for k, l in polygon_arcs(n)
        ]
        rows.append(row)
        names.append(_tname(i, j, n))
    return RayMatrix(rows, tvars=names)


def lifted_ring(n):
    """Pluecker ring extended by one parameter per diagonal."""
    return extended_ring(plucker_ring(n), rays_C(n))


def lifted_plucker(n):
    """Closed-form lifts of the Pluecker relations, one per quadruple.

    For i < j < k < l the lift is p_ik p_jl minus p_il p_jk times one
    parameter t_ab for every a in the run i..j-1 and b in k..l-1, minus
    p_ij p_kl times one t_ab for every a in j..k-1 and b in the wrapped
    run l..i-1.  Every such (a, b) is a diagonal.
    """
    ring = lifted_ring(n)
    n_p = len(polygon_arcs(n))
    pindex = {e: k for k, e in enumerate(polygon_arcs(n))}
    tindex = {
        e: n_p + k for k, e in enumerate(polygon_diagonals(n))
    }

    def term(e1, e2, runs):
        exp = [0] * ring.n
        exp[pindex[e1]] += 1
        exp[pindex[e2]] += 1
        if runs is not None:
            (a_lo, a_hi), (b_lo, b_hi) = runs
            for a in cyclic_interval(a_lo, a_hi, n):
                for b in cyclic_interval(b_lo, b_hi, n):
                    exp[tindex[arc(a, b)]] += 1
        return tuple(exp)

    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    terms = {
                        term((i, k), (j, l), None): rat(1),
                        term(
                            (i, l), (j, k), ((i, j - 1), (k, l - 1))
                        ): rat(-1),
                        term(
                            (i, j), (k, l), ((j, k - 1), (l, i - 1))
                        ): rat(-1),
                    }
                    gens.append(Polynomial(ring, terms))
    return gens


def universal_coefficient_check(n):
    """Compare machinery lifts of the reduced basis with the closed form.

    The reduced basis elements are the (monicized) Pluecker relations;
    their lifts under rays_C must reproduce lifted_plucker exactly.  A
    mismatch raises an error naming the quadruple.
    """
    gb = crossing_gb(n)
    lifted = lifted_ideal(gb, gb.order, rays_C(n))
    closed = lifted_plucker(n)
    if len(lifted.generators) != len(closed):
        raise PolyError("lift count mismatch")
    quads = [
        (i, j, k, l)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
        for l in range(k + 1, n + 1)
    ]
    by_lead = {}
    order = lifted.order
    for g in lifted.generators:
        by_lead[g.leading_term(order)[0]] = g
    for quad, g in zip(quads, closed):
        match = by_lead.get(g.leading_term(order)[0])
        if match != g:
            raise PolyError(
                "lift mismatch at quadruple %s" % (quad,)
            )
    return True


def g_valuation(f, tri):
    """Minimal g-vector over the standard-monomial support of f.

    f is reduced against the crossing-cone basis; each surviving
    monomial gets the sum of its factors' g-vectors and the minimum is
    taken in the block order of T (larger leading entries first).
    Distinct standard monomials never tie (asserted).
    """
    tree = _as_tree(tri)
    n = tree.tri.n
    if isinstance(f, str):
        f = plucker_ring(n).parse(f)
    if not f:
        raise PolyError("zero has no valuation")
    nf = crossing_gb(n).normal_form(f)
    if not nf:
        raise PolyError("element lies in the Pluecker ideal")
    table = g_vector_table(tree.tri)
    order = compatible_arc_order(tree.tri)
    pairs = polygon_arcs(n)
    best = None
    seen = set()
    for exp in nf.terms:
        gv = {}
        for pos, e in enumerate(exp):
            if e:
                for label, k in table[pairs[pos]].items():
                    gv[label] = gv.get(label, 0) + e * k
        key = gvector_sort_key(gv, order)
        if key in seen:
            raise PolyError("distinct standard monomials share a g-vector")
        seen.add(key)
        if best is None or key < best[0]:
            best = (key, gv)
    return {e: k for e, k in best[1].items() if k}


def newton_okounkov(tri):
    """(arc order, vertex tuples): distinct g-vectors of all p_ij."""
    arcs = list(tri.coordinate_arcs())
    table = g_vector_table(tri)
    vertices = sorted(
        {
            tuple(gv.get(e, 0) for e in arcs)
            for gv in table.values()
        }
    )
    return arcs, vertices


def shear_zeta(tri, diagonal):
    """Tropicalized exchange at a diagonal ac of T, acting on g-vectors.

    With quadrilateral (a, b, c, d), a vector m is fixed when its ac
    entry is nonpositive and otherwise moves by that entry times
    (f_ad + f_bc - f_ab - f_cd).
    """
    a, b, c, d = tri.quadrilateral(diagonal)
    ac = arc(a, c)
    shift = {
        arc(a, d): 1,
        arc(b, c): 1,
        arc(a, b): -1,
        arc(c, d): -1,
    }

    def apply(m):
        k = m.get(ac, 0)
        if k <= 0:
            return dict(m)
        out = dict(m)
        for e, s in shift.items():
            out[e] = out.get(e, 0) + k * s
        return {e: v for e, v in out.items() if v}

    return apply


def base_change_mu(tri1, tri2):
    """Linear basis change from coordinates of T1 to those of its flip.

    The flipped diagonal satisfies f_bd = f_ab + f_cd - f_ac, so the ac
    entry moves onto ab and cd and reappears negated on bd; shared arcs
    keep their entries.
    """
    old, new = flip_difference(tri1, tri2)
    a, b, c, d = tri1.quadrilateral(old)
    ab, cd = arc(a, b), arc(c, d)

    def apply(m):
        k = m.get(arc(a, c), 0)
        out = {e: v for e, v in m.items() if e != arc(a, c)}
        if k:
            out[ab] = out.get(ab, 0) + k
            out[cd] = out.get(cd, 0) + k
            out[new] = out.get(new, 0) - k
        return {e: v for e, v in out.items() if v}

    return apply

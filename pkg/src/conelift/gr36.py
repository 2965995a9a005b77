"""Verification pipelines for the Grassmannian Gr(3,6) cone data.

The ambient ring has twenty Pluecker variables p_ijk of weight one and
two further generators X and Y of weight two.  Bundled tables describe a
distinguished cone of weight vectors (six lineality rows and sixteen
rays), the reduced Groebner basis of the extended Pluecker ideal under
an order refined from the ray sum, the universal multi-parameter lifts
of that basis, a bipartite seed of the associated rank-four cluster
structure, and a regression example on one facet.  Each verify_*
function recomputes one layer from scratch and compares it with the
tables; reports are plain dicts {"step", "ok", "checks"} with
deterministic ordering so the command line can render them directly.
"""

import itertools
import json
from importlib import resources

from .cluster import (
    cluster_complex_sr_ideal,
    exchange_graph,
    g_vector,
    initial_seed,
    principal_seed,
    IceQuiver,
)
from .groebner import (
    cone_membership,
    contains_monomial,
    groebner_basis,
    initial_ideal,
    lineality_contains,
    minimal_monomial_generators,
    refined_order,
    s_polynomial,
    totally_positive_witness,
    Ideal,
)
from .lifting import extended_ring, lifted_ideal, RayMatrix
from .polyring import (
    initial_form_weight,
    rat,
    specialize,
    OrderSpec,
    PolyError,
    Polynomial,
    Ring,
)

_CACHE = {}


def _load(name):
    key = ("json", name)
    if key not in _CACHE:
        text = resources.files("conelift").joinpath("data/" + name).read_text()
        _CACHE[key] = json.loads(text)
    return _CACHE[key]


def _check(name, ok, detail=None):
    entry = {"name": name, "ok": bool(ok)}
    if detail is not None:
        entry["detail"] = detail
    return entry


def _report(step, checks):
    return {"step": step, "ok": all(c["ok"] for c in checks), "checks": checks}


class Gr36Data:
    """Parsed bundled tables, arithmetic-checked on load."""

    __slots__ = (
        "ring",
        "frozen",
        "lineality",
        "rays",
        "w",
        "ray_variable",
        "variable_ray",
        "coroot_of_parameter",
        "extra_generators",
        "seed_example",
        "bipartite_mutable",
        "bipartite_arrows",
        "exchange_relations",
        "extra_quadric",
        "extra_quartic",
        "gb_elements",
        "ray_matrix",
        "lifted_ring",
        "lifted_elements",
        "facet",
    )

    def __init__(self):
        cone = _load("gr36_cone.json")
        self.ring = Ring(cone["variables"], d=cone["degrees"])
        self.frozen = tuple(cone["frozen"])
        if not set(self.frozen) <= set(self.ring.vars):
            raise PolyError("frozen names must be ring variables")
        self.lineality = tuple(tuple(int(x) for x in r) for r in cone["lineality"])
        self.rays = tuple(tuple(int(x) for x in r) for r in cone["rays"])
        self.w = tuple(int(x) for x in cone["interior_weight"])
        if tuple(sum(col) for col in zip(*self.rays)) != self.w:
            raise PolyError("stored interior weight is not the ray sum")
        third = tuple(rat(sum(col)) / 3 for col in zip(*self.lineality))
        if third != tuple(rat(x) for x in self.ring.d):
            raise PolyError("degree vector is not one third of the lineality sum")
        self.ray_variable = {int(k): v for k, v in cone["ray_to_variable"].items()}
        if sorted(self.ray_variable) != list(range(1, len(self.rays) + 1)):
            raise PolyError("ray labels must be 1..16")
        self.variable_ray = {v: k for k, v in self.ray_variable.items()}
        mutable = set(self.ring.vars) - set(self.frozen)
        if set(self.variable_ray) != mutable:
            raise PolyError("ray labels must cover the non-frozen variables")
        self.coroot_of_parameter = {
            k: tuple(int(x) for x in v)
            for k, v in cone["coroot_of_parameter"].items()
        }
        self.extra_generators = tuple(
            self.ring.parse(s) for s in cone["extra_generators"]
        )
        self.seed_example = cone["seed_weight_example"]
        self.bipartite_mutable = tuple(cone["bipartite_seed"]["mutable"])
        self.bipartite_arrows = tuple(
            (a, b) for a, b in cone["bipartite_seed"]["arrows"]
        )
        gbd = _load("gr36_groebner.json")
        self.exchange_relations = tuple(
            self.ring.parse(s) for s in gbd["exchange_relations"]
        )
        self.extra_quadric = self.ring.parse(gbd["extra_quadric"])
        self.extra_quartic = self.ring.parse(gbd["extra_quartic"])
        self.gb_elements = self.exchange_relations + (
            self.extra_quadric,
            self.extra_quartic,
        )
        self.ray_matrix = RayMatrix(self.rays)
        self.lifted_ring = extended_ring(self.ring, self.ray_matrix)
        lif = _load("gr36_lifted.json")
        self.lifted_elements = tuple(
            self.lifted_ring.parse(s)
            for s in list(lif["exchange_relations"])
            + [lif["extra_quadric"], lif["extra_quartic"]]
        )
        if len(self.lifted_elements) != len(self.gb_elements):
            raise PolyError("one lifted element per basis element is required")
        self.facet = _load("gr36_facet_check.json")


def data():
    """The bundled Gr(3,6) tables (parsed once)."""
    if "data" not in _CACHE:
        _CACHE["data"] = Gr36Data()
    return _CACHE["data"]


def ring36():
    """The 22-variable weighted polynomial ring."""
    return data().ring


def _sorted_index(seq):
    """Sorted tuple and the sign of the sorting permutation (0 on repeats)."""
    items = list(seq)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
            elif items[j] == items[j + 1]:
                return tuple(items), 0
    return tuple(items), sign


def build_Iex():
    """The extended ideal: thirty three-term quadrics plus seven extras.

    For each single index s and quadruple a < b < c < d avoiding s the
    three-term relation p_sab p_scd - p_sac p_sbd + p_sad p_sbc is
    sign-normalized to sorted index triples; the seven bundled extra
    relations involving X and Y complete the generating set.
    """
    dd = data()
    ring = dd.ring
    gens = []
    for s in range(1, 7):
        rest = [x for x in range(1, 7) if x != s]
        for a, b, c, e in itertools.combinations(rest, 4):
            terms = {}
            for (p, q, r, u), coeff in (
                ((a, b, c, e), 1),
                ((a, c, b, e), -1),
                ((a, e, b, c), 1),
            ):
                left, sl = _sorted_index((s, p, q))
                right, sr = _sorted_index((s, r, u))
                exp = [0] * ring.n
                exp[ring.index["p%d%d%d" % left]] += 1
                exp[ring.index["p%d%d%d" % right]] += 1
                exp = tuple(exp)
                terms[exp] = terms.get(exp, 0) + coeff * sl * sr
            gens.append(
                Polynomial(ring, {e2: rat(c) for e2, c in terms.items() if c})
            )
    gens.extend(dd.extra_generators)
    return Ideal(ring, gens)


def cone_order():
    """Order refined from the ray-sum weight (degree row first)."""
    if "order" not in _CACHE:
        dd = data()
        _CACHE["order"] = refined_order(dd.ring, dd.w)
    return _CACHE["order"]


def cone_gb():
    """Reduced basis of the extended ideal under the cone order (cached)."""
    if "gb" not in _CACHE:
        _CACHE["gb"] = groebner_basis(build_Iex(), cone_order())
    return _CACHE["gb"]


def verify_reduced_gb():
    """Recompute the reduced basis and compare it with the stored one.

    Also checks the stored cone data against the basis: lineality rows,
    ray membership, interior weight, and the initial monomial ideal
    (54 squarefree quadratic generators including X*Y and p135*p246).
    """
    dd = data()
    order = cone_order()
    gb = cone_gb()
    checks = []
    mine = set(gb.elements)
    stored = {g.monic(order) for g in dd.gb_elements}
    missing = sorted(str(g) for g in stored - mine)
    extra = sorted(str(g) for g in mine - stored)
    checks.append(
        _check(
            "reduced basis equals the 54 stored elements",
            not missing and not extra and len(gb.elements) == 54,
            detail={"missing": missing, "extra": extra}
            if missing or extra
            else None,
        )
    )
    for i, ell in enumerate(dd.lineality):
        checks.append(
            _check(
                "lineality row %d fixes every basis element" % (i + 1),
                lineality_contains(gb, ell),
            )
        )
    rays_ok = [
        cone_membership(gb, ray) != "outside" for ray in dd.rays
    ]
    checks.append(
        _check(
            "all 16 rays lie in the closed cone",
            all(rays_ok),
            detail={"outside": [i + 1 for i, ok in enumerate(rays_ok) if not ok]}
            if not all(rays_ok)
            else None,
        )
    )
    checks.append(
        _check(
            "the ray sum is an interior weight",
            cone_membership(gb, dd.w) == "interior",
        )
    )
    mins = minimal_monomial_generators(gb.lead_monomials())
    squarefree = all(sum(e) == 2 and max(e) == 1 for e in mins)
    named = {
        next(iter(dd.ring.parse(m).terms)) for m in ("X*Y", "p135*p246")
    }
    checks.append(
        _check(
            "initial ideal has 54 squarefree quadratic generators",
            len(mins) == 54 and squarefree,
            detail={"count": len(mins), "squarefree": squarefree}
            if not (len(mins) == 54 and squarefree)
            else None,
        )
    )
    checks.append(
        _check(
            "initial ideal contains X*Y and p135*p246",
            named <= set(mins),
        )
    )
    return _report("gb", checks)


def verify_lifts_univ():
    """Lift the reduced basis along the sixteen rays; compare with tables.

    Every stored lifted element specializes at t = 1 to a stored basis
    element, and the machinery lift of that element must match exactly.
    """
    dd = data()
    gb = cone_gb()
    lifted = lifted_ideal(gb, gb.order, dd.ray_matrix)
    ones = {t: 1 for t in dd.ray_matrix.tvars}
    checks = []
    stored_by_base = {}
    specialize_ok = True
    for lift in dd.lifted_elements:
        base = specialize(lift, ones)
        if base not in set(gb.elements):
            specialize_ok = False
        stored_by_base[base] = lift
    checks.append(
        _check(
            "each stored lift specializes at t=1 to a basis element",
            specialize_ok and len(stored_by_base) == len(gb.elements),
        )
    )
    mismatches = []
    for g, lift in zip(gb.elements, lifted.generators):
        want = stored_by_base.get(g)
        if want != lift:
            mismatches.append(
                {
                    "base": str(g),
                    "stored": None if want is None else str(want),
                    "computed": str(lift),
                }
            )
    checks.append(
        _check(
            "machinery lifts equal the stored lifted elements",
            not mismatches,
            detail=mismatches or None,
        )
    )
    return _report("lifts", checks)


def bipartite_quiver():
    """The stored bipartite seed quiver (4 mutable, 6 frozen vertices)."""
    dd = data()
    vertices = dd.bipartite_mutable + dd.frozen
    return IceQuiver(vertices, dd.bipartite_arrows, frozen=dd.frozen)


def _relation_table():
    """Name-level exchange data: the lead pair and the two monomial sides."""
    if "relations" in _CACHE:
        return _CACHE["relations"]
    dd = data()
    ring = dd.ring
    order = cone_order()
    table = []
    for rel in dd.exchange_relations:
        rel = rel.monic(order)
        lead_exp = rel.leading_term(order)[0]
        lead = None
        sides = []
        for exp, c in rel.terms.items():
            named = {ring.vars[i]: e for i, e in enumerate(exp) if e}
            if exp == lead_exp:
                if c != 1:
                    raise PolyError("exchange relation lead is not monic")
                lead = named
            else:
                if c != -1:
                    raise PolyError("exchange relation side is not negative")
                sides.append(tuple(sorted(named.items())))
        if lead is None or len(sides) != 2 or sorted(lead.values()) != [1, 1]:
            raise PolyError("exchange relation has an unexpected shape")
        table.append((frozenset(lead), frozenset(sides), tuple(sorted(lead))))
    _CACHE["relations"] = table
    return table


def _match_partner(table, names, rows, k):
    """Name of the variable replacing names[k], via the stored relations."""
    plus = {}
    minus = {}
    for i, name in enumerate(names):
        b = rows[i][k]
        if b > 0:
            plus[name] = plus.get(name, 0) + b
        elif b < 0:
            minus[name] = minus.get(name, 0) - b
    sides = frozenset(
        (tuple(sorted(plus.items())), tuple(sorted(minus.items())))
    )
    hits = [
        pair
        for leadset, s, pair in table
        if names[k] in leadset and s == sides
    ]
    if len(hits) != 1:
        raise PolyError(
            "no unique stored exchange relation matches a mutation at %s"
            % names[k]
        )
    a, b = hits[0]
    return b if a == names[k] else a


def _named_graph(seed0, names0, table, bound=200):
    """Exchange graph plus per-seed name lists and a variable -> name map.

    Every mutation edge is matched against the stored exchange
    relations; inconsistent naming raises.
    """
    graph = exchange_graph(seed0, bound=bound)
    names = [None] * len(graph.seeds)
    names[0] = tuple(names0)
    name_of = {}
    for i, v in enumerate(seed0.variables[: len(names0)]):
        name_of[v] = names0[i]
    for i, j, k in graph.edges:
        base = graph.seeds[i]
        ni = names[i]
        if ni is None:
            raise PolyError("edge order broke name propagation")
        partner = _match_partner(table, ni, base.matrix.rows, k)
        mutated = base.mutate(k)
        v = mutated.variables[k]
        known = name_of.get(v)
        if known is None:
            name_of[v] = partner
        elif known != partner:
            raise PolyError("inconsistent naming of a cluster variable")
        if names[j] is None:
            nj = list(ni)
            nj[k] = partner
            names[j] = tuple(nj)
    if any(n is None for n in names):
        raise PolyError("some seed was never named")
    return graph, names, name_of


def seed_rays(mutable_names):
    """Sorted ray labels of a seed's four mutable variables."""
    dd = data()
    return sorted(dd.variable_ray[name] for name in mutable_names)


def seed_weight(mutable_names):
    """w_s: the sum of the four rays matching the mutable variables."""
    dd = data()
    labels = seed_rays(mutable_names)
    cols = zip(*(dd.rays[i - 1] for i in labels))
    return tuple(sum(col) for col in cols)


def _g_matrix_for_seed(seed, seed_names, table):
    """Rows: the ten g-vector coordinates of every ring variable at seed.

    Computed with principal coefficients attached at this seed; every
    cluster variable is reached by mutation and named through the stored
    exchange relations, and repeated visits must agree.
    """
    dd = data()
    ps = principal_seed(seed.matrix, names=list(seed_names))
    pgraph, pnames, _ = _named_graph(ps, seed_names, table)
    total = len(seed_names)
    cols = {}
    for i, name in enumerate(seed_names):
        cols[name] = tuple(1 if j == i else 0 for j in range(total))
    for si, s in enumerate(pgraph.seeds):
        for pos in range(s.mutable):
            name = pnames[si][pos]
            g = g_vector(s.variables[pos], ps.ring, total)
            prev = cols.get(name)
            if prev is None:
                cols[name] = g
            elif prev != g:
                raise PolyError("g-vector of %s is not well defined" % name)
    if set(cols) != set(dd.ring.vars):
        raise PolyError("g-vectors must cover every ring variable")
    return [[cols[v][r] for v in dd.ring.vars] for r in range(total)]


def _integer_kernel(mat):
    """A basis of the saturated integer kernel, by unimodular column ops."""
    m = len(mat)
    n = len(mat[0])
    cols = [[mat[r][c] for r in range(m)] for c in range(n)]
    unimod = [[1 if i == c else 0 for i in range(n)] for c in range(n)]
    active = list(range(n))
    for r in range(m):
        while True:
            nonzero = [c for c in active if cols[c][r] != 0]
            if len(nonzero) <= 1:
                break
            c0 = min(nonzero, key=lambda c: abs(cols[c][r]))
            for c in nonzero:
                if c == c0:
                    continue
                q = cols[c][r] // cols[c0][r]
                if q:
                    for i in range(m):
                        cols[c][i] -= q * cols[c0][i]
                    for i in range(n):
                        unimod[c][i] -= q * unimod[c0][i]
        nonzero = [c for c in active if cols[c][r] != 0]
        if nonzero:
            active.remove(nonzero[0])
    return [tuple(unimod[c]) for c in active]


def _lattice_binomial(ring, vector):
    """x^(positive part) - x^(negative part)."""
    plus = tuple(max(x, 0) for x in vector)
    minus = tuple(max(-x, 0) for x in vector)
    return Polynomial(ring, {plus: rat(1), minus: rat(-1)})


def _balances(g, mat):
    """True iff the binomial's exponent difference lies in ker(mat)."""
    terms = list(g.terms)
    if len(terms) != 2:
        return False
    a, b = terms
    return all(
        sum(row[i] * (a[i] - b[i]) for i in range(len(a))) == 0
        for row in mat
    )


def _variable_saturated(init, init_gb):
    """True iff init : x_i^infinity == init for every variable.

    Individually trivial colons force init : (x_1 ... x_n)^infinity ==
    init, since the full saturation is the chain of single-variable
    colons.  Each colon comes out of one Groebner basis under the
    degree row refined by the negated variable: elements of a graded
    ideal whose initial monomial carries x_i are divisible by x_i, so
    stripping the shared x_i power from each basis element generates
    the colon, and the colon is trivial iff the stripped elements stay
    inside init.
    """
    ring = init.ring
    for i in range(ring.n):
        rows = [ring.d, tuple(-1 if j == i else 0 for j in range(ring.n))]
        gbi = groebner_basis(init, OrderSpec(ring, rows), cache=False)
        for g in gbi.elements:
            shift = min(exp[i] for exp in g.terms)
            if not shift:
                continue
            lowered = Polynomial(
                ring,
                {
                    tuple(
                        e - shift if j == i else e for j, e in enumerate(exp)
                    ): c
                    for exp, c in g.terms.items()
                },
            )
            if not init_gb.contains(lowered):
                return False
    return True


def _toric_equality(init, init_gb, gmat):
    """Certify init == kernel of the monomial map with exponent matrix gmat.

    Three exact steps: every reduced-basis binomial of init balances
    under gmat (init is contained in the kernel ideal); the binomials of
    an integer kernel basis reduce to zero (their span is contained in
    init); and init equals its saturation by the product of variables.
    The kernel ideal is the saturation of the basis binomials, so the
    three containments force equality.
    """
    if not all(_balances(g, gmat) for g in init_gb.elements):
        return False
    ring = init.ring
    for vector in _integer_kernel(gmat):
        if not init_gb.contains(_lattice_binomial(ring, vector)):
            return False
    return _variable_saturated(init, init_gb)


def named_exchange_graph():
    """The 50-seed exchange graph of the bipartite quiver, with names."""
    if "named_graph" not in _CACHE:
        matrix, order = bipartite_quiver().matrix()
        seed0 = initial_seed(matrix, names=list(order))
        _CACHE["named_graph"] = _named_graph(seed0, order, _relation_table())
    return _CACHE["named_graph"]


def _cluster_monomial_counts(graph, names, max_degree):
    """Monomials of weighted degree <= bound supported on a single seed."""
    dd = data()
    ring = dd.ring
    found = {k: set() for k in range(max_degree + 1)}

    def rec(indices, degrees, pos, remaining, exp):
        if pos == len(indices):
            e = [0] * ring.n
            for i, idx in enumerate(indices):
                e[idx] = exp[i]
            found[max_degree - remaining].add(tuple(e))
            return
        e = 0
        while e * degrees[pos] <= remaining:
            exp.append(e)
            rec(indices, degrees, pos + 1, remaining - e * degrees[pos], exp)
            exp.pop()
            e += 1

    for si in range(len(graph.seeds)):
        indices = [ring.index[n] for n in names[si]]
        degrees = [int(ring.d[i]) for i in indices]
        rec(indices, degrees, 0, max_degree, [])
    return {k: len(found[k]) for k in range(max_degree + 1)}


def verify_seed_faces(toric=True):
    """Check every seed of the exchange graph against the cone.

    For each of the 50 seeds: its weight w_s lies on the boundary, its
    initial ideal is binomial and monomial-free, each reduced-basis
    element keeps a unique positive monomial as its initial, and
    (optionally) the initial ideal equals the toric ideal of the seed's
    g-vector monomial map.  Finishes with the Stanley-Reisner and
    standard-monomial comparisons.
    """
    dd = data()
    ring = dd.ring
    order = cone_order()
    gb = cone_gb()
    ideal = build_Iex()
    table = _relation_table()
    graph, names, name_of = named_exchange_graph()
    checks = []
    checks.append(_check("exchange graph has 50 seeds", len(graph.seeds) == 50))
    checks.append(
        _check(
            "cluster variables are exactly the ring variables",
            set(name_of.values()) == set(ring.vars),
        )
    )
    example = dd.seed_example
    checks.append(
        _check(
            "stored example seed matches rays %s" % example["rays"],
            seed_rays(example["mutable"]) == list(example["rays"]),
        )
    )
    example_found = any(
        frozenset(names[si][: graph.seeds[si].mutable]) == frozenset(example["mutable"])
        for si in range(len(graph.seeds))
    )
    checks.append(_check("stored example seed appears in the graph", example_found))
    failures = {
        "membership": [],
        "binomial": [],
        "monomial": [],
        "witness": [],
        "toric": [],
    }
    for si, seed in enumerate(graph.seeds):
        mutable_names = list(names[si][: seed.mutable])
        ws = seed_weight(mutable_names)
        tag = {"seed": si, "mutable": sorted(mutable_names)}
        if cone_membership(gb, ws) != "boundary":
            failures["membership"].append(tag)
            continue
        init = initial_ideal(ideal, ws, order=order)
        if not all(len(g.terms) <= 2 for g in init.generators):
            failures["binomial"].append(tag)
            continue
        if contains_monomial(init):
            failures["monomial"].append(tag)
        init_gb = groebner_basis(init, order)
        if not totally_positive_witness(init_gb):
            failures["witness"].append(tag)
        if toric:
            gmat = _g_matrix_for_seed(seed, names[si], table)
            if not _toric_equality(init, init_gb, gmat):
                failures["toric"].append(tag)
    checks.append(
        _check(
            "every seed weight lies on the cone boundary",
            not failures["membership"],
            detail=failures["membership"] or None,
        )
    )
    checks.append(
        _check(
            "every seed initial ideal is binomial",
            not failures["binomial"],
            detail=failures["binomial"] or None,
        )
    )
    checks.append(
        _check(
            "no seed initial ideal contains a monomial",
            not failures["monomial"],
            detail=failures["monomial"] or None,
        )
    )
    checks.append(
        _check(
            "every seed initial basis keeps unique positive monomials",
            not failures["witness"],
            detail=failures["witness"] or None,
        )
    )
    if toric:
        checks.append(
            _check(
                "every seed initial ideal equals its g-vector toric ideal",
                not failures["toric"],
                detail=failures["toric"] or None,
            )
        )
    sr = cluster_complex_sr_ideal(graph, ring, name_of)
    sr_exps = {next(iter(g.terms)) for g in sr.generators}
    init_exps = set(minimal_monomial_generators(gb.lead_monomials()))
    checks.append(
        _check(
            "Stanley-Reisner ideal equals the cone initial ideal",
            sr_exps == init_exps,
        )
    )
    sm_counts = gb.standard_monomials().count_by_degree(3)
    cluster_counts = _cluster_monomial_counts(graph, names, 3)
    checks.append(
        _check(
            "standard monomials match cluster monomials up to degree 3",
            sm_counts == cluster_counts,
            detail={"standard": sm_counts, "cluster": cluster_counts}
            if sm_counts != cluster_counts
            else None,
        )
    )
    return _report("seeds", checks)


def regression_facet_example():
    """Recheck the facet example: weights, an S-pair, and its initials.

    v is a relative-interior point of the facet spanned by all rays but
    r2, w = r2 + v a nearby interior point; the S-pair h of two stored
    basis elements has term weights, v- and w-initial forms, and an
    initial-of-initial failure exactly as stored.
    """
    dd = data()
    ring = dd.ring
    order = cone_order()
    gb = cone_gb()
    fx = dd.facet
    checks = []
    quarter = rat(1) / 4
    v = tuple(
        quarter * sum(dd.rays[i][c] for i in range(16) if i not in (1, 7))
        + 5 * quarter * dd.rays[7][c]
        for c in range(ring.n)
    )
    w = tuple(dd.rays[1][c] + v[c] for c in range(ring.n))
    checks.append(
        _check(
            "facet point v matches the stored quarter-integer vector",
            [x * 4 for x in v] == list(fx["quadruple_weight_v"]),
        )
    )
    checks.append(
        _check(
            "nearby interior point w = r2 + v matches the stored vector",
            [x * 4 for x in w] == list(fx["quadruple_weight_w"]),
        )
    )
    checks.append(
        _check(
            "v lies on the boundary, w in the interior",
            cone_membership(gb, v) == "boundary"
            and cone_membership(gb, w) == "interior",
        )
    )
    g1 = ring.parse(fx["spair_inputs"][0])
    g2 = ring.parse(fx["spair_inputs"][1])
    in_basis = g1 in set(gb.elements) and g2 in set(gb.elements)
    checks.append(_check("S-pair inputs are reduced-basis elements", in_basis))
    h = s_polynomial(g1.monic(order), g2.monic(order), order)
    stored_h = ring.parse(fx["spair_value"])
    checks.append(_check("S-polynomial matches the stored value", h == stored_h))
    doubled_v = sorted(
        sum(x * e for x, e in zip(v, exp)) * 2 for exp in h.terms
    )
    doubled_w = sorted(
        sum(x * e for x, e in zip(w, exp)) * 2 for exp in h.terms
    )
    checks.append(
        _check(
            "doubled v-weights of the four terms match",
            doubled_v == sorted(fx["doubled_v_weights"]),
            detail={"computed": [str(x) for x in doubled_v]}
            if doubled_v != sorted(fx["doubled_v_weights"])
            else None,
        )
    )
    checks.append(
        _check(
            "doubled w-weights of the four terms match",
            doubled_w == sorted(fx["doubled_w_weights"]),
            detail={"computed": [str(x) for x in doubled_w]}
            if doubled_w != sorted(fx["doubled_w_weights"])
            else None,
        )
    )
    init_v = initial_form_weight(h, v)
    init_w = initial_form_weight(h, w)
    checks.append(
        _check(
            "v-initial form of h matches",
            init_v == ring.parse(fx["initial_v"]),
        )
    )
    checks.append(
        _check(
            "w-initial form of h matches",
            init_w == ring.parse(fx["initial_w"]),
        )
    )
    sm = gb.standard_monomials()
    inside = {exp for exp in h.terms if not sm.contains(exp)}
    stored_inside = {
        next(iter(ring.parse(m).terms)) for m in fx["cone_initial_monomials"]
    }
    checks.append(
        _check(
            "exactly the stored three monomials of h lie in the initial ideal",
            inside == stored_inside,
        )
    )
    r2 = dd.rays[1]
    chain_ok = all(
        initial_form_weight(initial_form_weight(g, v), r2)
        == initial_form_weight(g, w)
        for g in gb.elements
    )
    checks.append(
        _check(
            "per-element initials factor through the facet for the basis",
            chain_ok,
        )
    )
    checks.append(
        _check(
            "the factorization fails for the S-polynomial h",
            initial_form_weight(init_v, r2) != init_w,
        )
    )
    return _report("regression", checks)


def verify_all(toric=True):
    """All four pipelines, in order."""
    return [
        verify_reduced_gb(),
        verify_lifts_univ(),
        verify_seed_faces(toric=toric),
        regression_facet_example(),
    ]

"""Finite-type cluster algebras with frozen variables.

Seeds carry an extended exchange matrix and explicit Laurent-polynomial
cluster variables, so mutation is exact arithmetic and every identity
(Laurent phenomenon, involutivity, distinct g-vectors) is checkable.
Principal coefficients follow the frozen-variable convention: the
extended matrix is completed to a skew square matrix with zero frozen
block before the identity rows are stacked, giving one coefficient
variable per extended-cluster entry.  g-vectors are read off by setting
all coefficient variables to zero.
"""

from .groebner import Ideal
from .polyring import PolyError, Polynomial, QQ, Ring, exact_divide

_ONE = QQ(1)


def _sgn(x):
    return (x > 0) - (x < 0)


class ExchangeMatrix:
    """Integer (m+f) x m matrix whose top m x m block is skew-symmetric."""

    __slots__ = ("rows", "m", "f")

    def __init__(self, rows):
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not self.rows:
            raise PolyError("empty exchange matrix")
        self.m = len(self.rows[0])
        self.f = len(self.rows) - self.m
        if self.f < 0:
            raise PolyError("exchange matrix needs at least m rows")
        if any(len(row) != self.m for row in self.rows):
            raise PolyError("ragged exchange matrix")
        for i in range(self.m):
            for j in range(self.m):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise PolyError("top square block is not skew-symmetric")

    def __eq__(self, other):
        return isinstance(other, ExchangeMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "ExchangeMatrix(%d x %d)" % (len(self.rows), self.m)

    def entry(self, i, j):
        return self.rows[i][j]

    def column(self, k):
        return tuple(row[k] for row in self.rows)

    def top_square(self):
        return tuple(row[: self.m] for row in self.rows[: self.m])

    def mutate(self, k):
        """Matrix mutation in direction k (0-based); involutive."""
        if not 0 <= k < self.m:
            raise PolyError("mutation direction out of range")
        rows = []
        for i, row in enumerate(self.rows):
            new_row = []
            for j, b in enumerate(row):
                if i == k or j == k:
                    new_row.append(-b)
                else:
                    bik = self.rows[i][k]
                    bkj = self.rows[k][j]
                    new_row.append(b + _sgn(bik) * max(bik * bkj, 0))
            rows.append(new_row)
        return ExchangeMatrix(rows)


def mutate_matrix(matrix, k):
    """Functional alias for ExchangeMatrix.mutate."""
    return matrix.mutate(k)


class IceQuiver:
    """A quiver with frozen vertices; arrows between frozen are neglected."""

    __slots__ = ("vertices", "arrows", "frozen")

    def __init__(self, vertices, arrows, frozen=()):
        self.vertices = tuple(vertices)
        self.frozen = frozenset(frozen)
        if not self.frozen <= set(self.vertices):
            raise PolyError("frozen vertices must be vertices")
        kept = []
        for a, b in arrows:
            if a not in self.vertices or b not in self.vertices:
                raise PolyError("arrow endpoint %r is not a vertex" % ((a, b),))
            if a in self.frozen and b in self.frozen:
                continue
            kept.append((a, b))
        self.arrows = tuple(kept)
        mutable = [v for v in self.vertices if v not in self.frozen]
        for a in mutable:
            for b in mutable:
                if (a, b) in kept and (b, a) in kept:
                    raise PolyError("2-cycle between mutable vertices")

    @property
    def mutable(self):
        return tuple(v for v in self.vertices if v not in self.frozen)

    def matrix(self):
        """B with rows (mutable then frozen, in vertex order) and mutable columns."""
        mutable = self.mutable
        frozen = tuple(v for v in self.vertices if v in self.frozen)
        order = mutable + frozen
        rows = []
        for i in order:
            row = []
            for j in mutable:
                forward = sum(1 for a, b in self.arrows if a == i and b == j)
                backward = sum(1 for a, b in self.arrows if a == j and b == i)
                row.append(forward - backward)
            rows.append(row)
        return ExchangeMatrix(rows), order


def quiver_from_matrix(matrix, labels=None):
    """Reconstruct the ice quiver of an exchange matrix (round trip)."""
    if labels is None:
        labels = tuple(range(len(matrix.rows)))
    m = matrix.m
    arrows = []
    for j in range(m):
        for i in range(len(matrix.rows)):
            b = matrix.rows[i][j]
            if i < m and i >= j:
                continue
            if b > 0:
                arrows.extend([(labels[i], labels[j])] * b)
            elif b < 0:
                arrows.extend([(labels[j], labels[i])] * (-b))
    return IceQuiver(labels, arrows, frozen=labels[m:])


class Seed:
    """Extended cluster (explicit Laurent polynomials) plus its matrix.

    variables[i] matches row i of the matrix; the first ``mutable``
    directions may be mutated (for principal-coefficient seeds this is
    smaller than the number of matrix columns).
    """

    __slots__ = ("matrix", "variables", "mutable", "ring")

    def __init__(self, matrix, variables, mutable=None):
        self.matrix = matrix
        self.variables = tuple(variables)
        if len(self.variables) != len(matrix.rows):
            raise PolyError("one variable per matrix row is required")
        self.mutable = matrix.m if mutable is None else int(mutable)
        if not 0 < self.mutable <= matrix.m:
            raise PolyError("mutable count out of range")
        self.ring = self.variables[0].ring

    def cluster_key(self):
        """Unordered mutable cluster; identifies the seed."""
        return frozenset(self.variables[: self.mutable])

    def exchange_monomials(self, k):
        """The two monomial sides of the exchange relation at k."""
        plus = self.ring.one
        minus = self.ring.one
        for i, row in enumerate(self.matrix.rows):
            b = row[k]
            if b > 0:
                plus = plus * self.variables[i] ** b
            elif b < 0:
                minus = minus * self.variables[i] ** (-b)
        return plus, minus

    def mutate(self, k):
        """Seed mutation in direction k (0-based); involutive."""
        if not 0 <= k < self.mutable:
            raise PolyError("mutation direction out of range")
        plus, minus = self.exchange_monomials(k)
        try:
            new_var = exact_divide(plus + minus, self.variables[k])
        except PolyError:
            raise PolyError("Laurent phenomenon violated") from None
        variables = list(self.variables)
        variables[k] = new_var
        return Seed(self.matrix.mutate(k), variables, self.mutable)


def mutate_seed(seed, k):
    """Functional alias for Seed.mutate."""
    return seed.mutate(k)


def initial_seed(matrix, names=None, mutable=None):
    """Seed whose cluster is the generators of a fresh Laurent ring."""
    total = len(matrix.rows)
    if names is None:
        names = ["x%d" % (i + 1) for i in range(total)]
    names = list(names)
    if len(names) != total:
        raise PolyError("one name per matrix row is required")
    ring = Ring(names, laurent=True)
    return Seed(matrix, ring.gens, mutable)


def build_B_prin(matrix):
    """Principal-coefficient matrix: complete to a skew square, stack identity.

    For an (m+f) x m input the result is 2(m+f) x (m+f): columns are the
    original mutable directions followed by the frozen directions, rows
    add one coefficient direction per extended-cluster entry.
    """
    m, f = matrix.m, matrix.f
    size = m + f
    rows = []
    for i in range(size):
        left = list(matrix.rows[i])
        if i < m:
            right = [-matrix.rows[m + j][i] for j in range(f)]
        else:
            right = [0] * f
        rows.append(left + right)
    for i in range(size):
        rows.append([1 if j == i else 0 for j in range(size)])
    return ExchangeMatrix(rows)


def principal_seed(matrix, names=None, coeff_prefix="t"):
    """Initial seed of the principal-coefficient algebra of matrix.

    Mutations are restricted to the original m mutable directions; the
    coefficient variables (one per extended-cluster entry) are frozen.
    """
    size = matrix.m + matrix.f
    if names is None:
        names = ["x%d" % (i + 1) for i in range(size)]
    names = list(names)
    if len(names) != size:
        raise PolyError("one name per extended-cluster entry is required")
    coeff_names = ["%s%d" % (coeff_prefix, i + 1) for i in range(size)]
    clash = set(names) & set(coeff_names)
    if clash:
        raise PolyError("coefficient names collide: %s" % sorted(clash))
    return initial_seed(
        build_B_prin(matrix), names + coeff_names, mutable=matrix.m
    )


def g_vector(x, ring, coeff_count):
    """Exponent vector of X at coefficient variables = 0.

    The last coeff_count ring variables are the coefficients; the
    surviving part must be a single Laurent monomial with coefficient 1.
    """
    n = ring.n - coeff_count
    survivors = [
        (exp, c)
        for exp, c in x.terms.items()
        if all(e == 0 for e in exp[n:])
    ]
    if len(survivors) != 1 or survivors[0][1] != 1:
        raise PolyError("t = 0 evaluation is not a monomial with coefficient 1")
    return survivors[0][0][:n]


class ExchangeGraph:
    """Seeds, mutation edges, and the set of cluster variables."""

    __slots__ = ("seeds", "edges", "variables")

    def __init__(self, seeds, edges, variables):
        self.seeds = seeds
        self.edges = edges
        self.variables = variables


def exchange_graph(seed, bound=1000):
    """BFS over mutations in the allowed directions, deduplicated by cluster.

    Raises "not finite type at this bound" when more than ``bound`` seeds
    appear.  Returns deterministic seed and edge lists; edges are
    (seed index, seed index, direction).
    """
    seeds = [seed]
    index = {seed.cluster_key(): 0}
    edges = []
    queue = [0]
    while queue:
        current = queue.pop(0)
        s = seeds[current]
        for k in range(s.mutable):
            t = s.mutate(k)
            key = t.cluster_key()
            j = index.get(key)
            if j is None:
                if len(seeds) >= bound:
                    raise PolyError("not finite type at this bound")
                seeds.append(t)
                j = len(seeds) - 1
                index[key] = j
                queue.append(j)
            if current <= j:
                edges.append((current, j, k))
    variables = set()
    for s in seeds:
        variables.update(s.variables[: s.mutable])
    return ExchangeGraph(seeds, edges, variables)


def build_B_univ(matrix, bound=1000):
    """Universal-coefficient matrix: input stacked over the g-vector rows
    of the opposite mutable part.

    The opposite quiver's g-vectors are computed by a principal-
    coefficient sweep of -B (top square only, no frozen rows), truncated
    to the mutable coordinates, and sorted lexicographically.
    """
    m = matrix.m
    opposite = ExchangeMatrix(
        [[-matrix.rows[i][j] for j in range(m)] for i in range(m)]
    )
    seed = principal_seed(opposite)
    graph = exchange_graph(seed, bound)
    ring = seed.ring
    u_rows = sorted(
        {g_vector(x, ring, m)[:m] for x in graph.variables}
    )
    return ExchangeMatrix([list(r) for r in matrix.rows] + [list(r) for r in u_rows])


def cartan_from_exchange(top_square):
    """Cartan matrix of the underlying diagram of a skew top square."""
    n = len(top_square)
    return tuple(
        tuple(
            2 if i == j else -abs(top_square[i][j]) for j in range(n)
        )
        for i in range(n)
    )


def positive_roots(cartan):
    """Positive roots (simple-root coordinates) generated by reflections."""
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            pairing = sum(cartan[i][j] * beta[j] for j in range(n))
            image = list(beta)
            image[i] -= pairing
            image = tuple(image)
            if all(x >= 0 for x in image) and any(image) and image not in found:
                found.add(image)
                frontier.append(image)
    return sorted(found, key=lambda v: (sum(v), v))


def coroot_rows_bipartite(cartan, sources):
    """Universal rows for a bipartite orientation, one per almost positive
    coroot: entry in column i is [beta : alpha_i] for sources and
    -[beta : alpha_i] for sinks.

    The negative simple rows come first (by index), then the positive
    coroots by height.  Simply-laced diagrams only, where coroots share
    coordinates with roots.
    """
    n = len(cartan)
    sources = set(sources)
    for i in range(n):
        for j in range(n):
            if i != j and cartan[i][j] != 0 and (i in sources) == (j in sources):
                raise PolyError("orientation is not bipartite")
    sign = [1 if i in sources else -1 for i in range(n)]
    rows = []
    for i in range(n):
        rows.append(tuple(-sign[j] if j == i else 0 for j in range(n)))
    for beta in positive_roots(cartan):
        rows.append(tuple(sign[j] * beta[j] for j in range(n)))
    return rows


def cluster_complex_sr_ideal(graph, ring, names):
    """Stanley-Reisner ideal of the cluster complex, from co-occurrence.

    graph: an ExchangeGraph.  names: map cluster variable -> ring
    variable name.  Two variables are compatible iff they lie in one
    cluster; the construction asserts the complex is determined by its
    edges (every set of pairwise-compatible variables lies in a cluster,
    i.e. all minimal non-faces have size 2) and returns the ideal of
    incompatible pairs.
    """
    variables = sorted(graph.variables, key=lambda x: names[x])
    clusters = [
        frozenset(s.variables[: s.mutable]) for s in graph.seeds
    ]
    compatible = {}
    for a in variables:
        for b in variables:
            if a == b:
                continue
            pair = frozenset((a, b))
            if pair in compatible:
                continue
            compatible[pair] = any(
                a in c and b in c for c in clusters
            )
    _assert_flag(variables, clusters, compatible)
    gens = []
    seen = set()
    for a in variables:
        for b in variables:
            pair = frozenset((a, b))
            if a == b or pair in seen:
                continue
            seen.add(pair)
            if not compatible[pair]:
                gens.append(ring.gen(names[a]) * ring.gen(names[b]))
    gens.sort(key=lambda g: sorted(g.terms))
    return Ideal(ring, gens)


def _assert_flag(variables, clusters, compatible):
    """Every pairwise-compatible subset must lie in some cluster."""
    import networkx

    graph = networkx.Graph()
    graph.add_nodes_from(range(len(variables)))
    for i in range(len(variables)):
        for j in range(i + 1, len(variables)):
            if compatible[frozenset((variables[i], variables[j]))]:
                graph.add_edge(i, j)
    for clique in networkx.find_cliques(graph):
        members = frozenset(variables[i] for i in clique)
        if not any(members <= c for c in clusters):
            raise PolyError(
                "minimal non-face of size > 2 in the cluster complex"
            )

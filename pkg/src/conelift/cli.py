"""Command-line entry points: file I/O, dispatch, and JSON reports.

Every subcommand reads JSON inputs, emits a versioned JSON report
(``"format": 1``) with sorted keys, and exits 0 on success, 1 on a
verification mismatch, and 2 on unusable input.  Reports are
byte-identical across repeated runs and thread counts.
"""

import json
from fractions import Fraction

import click

from . import gr2n as _gr2n
from . import gr36 as _gr36
from .cluster import (
    ExchangeMatrix,
    build_B_univ,
    cluster_complex_sr_ideal,
    exchange_graph,
    g_vector,
    initial_seed,
    principal_seed,
)
from .groebner import (
    UndeterminedError,
    contains_monomial,
    groebner_basis,
    initial_ideal,
    refined_order,
    totally_positive_witness,
    Ideal,
)
from .lifting import fiber, flatness_certificate, lifted_ideal, RayMatrix
from .polyring import (
    format_polynomial,
    ideal_from_json,
    ideal_to_json,
    order_from_json,
    parse_polynomial,
    rat,
    ring_from_json,
    ParseError,
    PolyError,
    Polynomial,
    Ring,
)

FORMAT = 1


def dump_json(obj):
    """Canonical report text: sorted keys, one-space indent, newline."""
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, ValueError) as exc:
        raise click.UsageError("cannot read %s: %s" % (path, exc))


def jsonable(value):
    """Deep-convert a report value into plain JSON types."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, str):
        return value
    if hasattr(value, "denominator") and hasattr(value, "numerator"):
        return int(value) if value.denominator == 1 else str(value)
    return str(value)


def _emit(report, json_out):
    text = dump_json(jsonable(report))
    click.echo(text, nl=False)
    if json_out:
        try:
            with open(json_out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise click.UsageError("cannot write %s: %s" % (json_out, exc))


def _parse_rationals(text, what):
    out = []
    for token in str(text).split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise click.UsageError("bad %s entry %r" % (what, token))
    if not out:
        raise click.UsageError("empty %s" % what)
    return out


def _load_ideal(ring_path, ideal_path):
    data = load_json(ideal_path)
    if not isinstance(data, dict):
        raise click.UsageError("%s is not a JSON object" % ideal_path)
    try:
        if ring_path:
            ring = ring_from_json(load_json(ring_path))
            texts = data.get("generators")
            if not isinstance(texts, list):
                raise ParseError("ideal JSON must contain a 'generators' list")
            gens = [parse_polynomial(ring, t) for t in texts]
        else:
            ring, gens = ideal_from_json(data)
    except PolyError as exc:
        raise click.UsageError("%s: %s" % (ideal_path, exc))
    if not gens:
        raise click.UsageError("%s has an empty generator list" % ideal_path)
    try:
        return Ideal(ring, gens)
    except PolyError as exc:
        raise click.UsageError("%s: %s" % (ideal_path, exc))


def _load_order(ring, order_path):
    if order_path is None:
        return ring.default_order()
    try:
        return order_from_json(ring, load_json(order_path))
    except PolyError as exc:
        raise click.UsageError("%s: %s" % (order_path, exc))


def _load_rays(rays_path, ideal=None, order=None):
    data = load_json(rays_path)
    if not isinstance(data, dict) or "rows" not in data:
        raise click.UsageError("%s does not declare \"rows\"" % rays_path)
    try:
        return RayMatrix(
            [[rat(x) for x in row] for row in data["rows"]],
            tvars=data.get("tvars"),
            ideal=ideal,
            order=order,
        )
    except (PolyError, ValueError, TypeError) as exc:
        raise click.UsageError("%s: %s" % (rays_path, exc))


def _point_option(required=False, multiple=False):
    return click.option(
        "--point",
        "point_text",
        required=required,
        multiple=multiple,
        help="Comma-separated rational entries, e.g. \"1,0,3/2\".",
    )


def _threads_option(fn):
    return click.option(
        "--threads",
        default=1,
        show_default=True,
        help="Worker cap; execution is sequential either way.",
        callback=lambda ctx, param, v: _positive(v, "--threads"),
    )(fn)


def _positive(value, flag):
    if int(value) < 1:
        raise click.UsageError("%s must be at least 1" % flag)
    return int(value)


def _json_option(fn):
    return click.option(
        "--json", "json_out", type=click.Path(dir_okay=False), default=None,
        help="Also write the JSON report to this file.",
    )(fn)


def _ring_option(fn):
    return click.option(
        "--ring", "ring_path", type=click.Path(exists=True, dir_okay=False),
        default=None, help="Ring JSON {\"vars\": [...], \"d\": [...]}.",
    )(fn)


def _ideal_option(fn):
    return click.option(
        "--ideal", "ideal_path", type=click.Path(exists=True, dir_okay=False),
        required=True, help="Ideal JSON with \"generators\" (and \"vars\" unless --ring is given).",
    )(fn)


def _order_option(fn):
    return click.option(
        "--order", "order_path", type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Order JSON {\"weight_rows\": [[...]], \"tiebreak\": \"lex\", \"vars\": [...]}.",
    )(fn)


def _rays_option(fn):
    return click.option(
        "--rays", "rays_path", type=click.Path(exists=True, dir_okay=False),
        required=True, help="Ray matrix JSON {\"rows\": [[...]], \"tvars\": [...]}.",
    )(fn)


def _poly_lines(polys, order=None):
    return [format_polynomial(g, order) for g in polys]


def _monomial_text(ring, exp):
    return format_polynomial(Polynomial(ring, {tuple(exp): rat(1)}))


@click.group()
def main():
    """Exact Groebner degenerations: lifts, fibers, cones, clusters."""


@main.command()
@_ring_option
@_ideal_option
@_order_option
@_json_option
@_threads_option
def gb(ring_path, ideal_path, order_path, json_out, threads):
    """Reduced Groebner basis: polynomial lines plus a JSON certificate."""
    ideal = _load_ideal(ring_path, ideal_path)
    order = _load_order(ideal.ring, order_path)
    basis = groebner_basis(ideal, order)
    for line in _poly_lines(basis.elements, order):
        click.echo(line)
    _emit(
        {
            "format": FORMAT,
            "count": len(basis.elements),
            "initial_monomials": [
                _monomial_text(ideal.ring, e) for e in basis.lead_monomials()
            ],
            "vars": list(ideal.ring.vars),
        },
        json_out,
    )


@main.command()
@_ring_option
@_ideal_option
@_order_option
@_point_option(required=True)
@_json_option
def initial(ring_path, ideal_path, order_path, point_text, json_out):
    """Weight-initial ideal init_w as a loadable ideal JSON."""
    ideal = _load_ideal(ring_path, ideal_path)
    w = _parse_rationals(point_text, "weight")
    if len(w) != ideal.ring.n:
        raise click.UsageError("weight needs %d entries" % ideal.ring.n)
    order = _load_order(ideal.ring, order_path) if order_path else None
    try:
        init = initial_ideal(ideal, w, order=order)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    report = ideal_to_json(ideal.ring, init.generators)
    report["weight"] = list(w)
    _emit(report, json_out)


@main.command()
@_ring_option
@_ideal_option
@_order_option
@_rays_option
@_json_option
def lift(ring_path, ideal_path, order_path, rays_path, json_out):
    """Lift a reduced basis along a ray matrix; prints the lifted lines."""
    ideal = _load_ideal(ring_path, ideal_path)
    rays = _load_rays(rays_path)
    order = (
        _load_order(ideal.ring, order_path)
        if order_path
        else refined_order(ideal.ring, rays.weight())
    )
    try:
        lifted = lifted_ideal(ideal, order, rays)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    lines = _poly_lines(lifted.generators, lifted.order)
    for line in lines:
        click.echo(line)
    _emit(
        {
            "format": FORMAT,
            "vars": list(lifted.ring.vars),
            "tvars": list(rays.tvars),
            "w_prime": list(lifted.w_prime),
            "generators": lines,
        },
        json_out,
    )


@main.command("fiber")
@_ring_option
@_ideal_option
@_order_option
@_rays_option
@_point_option(required=True)
@_json_option
def fiber_cmd(ring_path, ideal_path, order_path, rays_path, point_text, json_out):
    """Specialize the lifted ideal at a parameter point; emits ideal JSON."""
    ideal = _load_ideal(ring_path, ideal_path)
    rays = _load_rays(rays_path)
    order = (
        _load_order(ideal.ring, order_path)
        if order_path
        else refined_order(ideal.ring, rays.weight())
    )
    point = _parse_rationals(point_text, "point")
    if len(point) != rays.m:
        raise click.UsageError("point needs %d entries, one per ray" % rays.m)
    try:
        lifted = lifted_ideal(ideal, order, rays)
        fib = fiber(lifted, point)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    report = ideal_to_json(ideal.ring, fib.generators)
    report["point"] = list(point)
    _emit(report, json_out)


@main.command()
@_ring_option
@_ideal_option
@_order_option
@_rays_option
@_point_option(multiple=True)
@click.option("--max-degree", "max_degree", default=3, show_default=True,
              callback=lambda ctx, param, v: _positive(v, "--max-degree"))
@_json_option
@_threads_option
def flatness(ring_path, ideal_path, order_path, rays_path, point_text,
             max_degree, json_out, threads):
    """Compare graded fiber dimensions against the standard-monomial count."""
    ideal = _load_ideal(ring_path, ideal_path)
    rays = _load_rays(rays_path)
    order = (
        _load_order(ideal.ring, order_path)
        if order_path
        else refined_order(ideal.ring, rays.weight())
    )
    points = [tuple(_parse_rationals(t, "point")) for t in point_text]
    if not points:
        points = [(1,) * rays.m]
    for p in points:
        if len(p) != rays.m:
            raise click.UsageError("point needs %d entries, one per ray" % rays.m)
    try:
        lifted = lifted_ideal(ideal, order, rays)
        report = flatness_certificate(lifted, max_degree, points)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(report.to_json(), json_out)
    if not report.ok:
        raise SystemExit(1)


@main.command("trop-check")
@_ring_option
@_ideal_option
@_order_option
@_point_option(required=True)
@_json_option
def trop_check(ring_path, ideal_path, order_path, point_text, json_out):
    """Monomial-freeness and positive-witness test for init_w."""
    ideal = _load_ideal(ring_path, ideal_path)
    w = _parse_rationals(point_text, "weight")
    if len(w) != ideal.ring.n:
        raise click.UsageError("weight needs %d entries" % ideal.ring.n)
    order = (
        _load_order(ideal.ring, order_path)
        if order_path
        else refined_order(ideal.ring, w)
    )
    try:
        init = initial_ideal(ideal, w, order=order)
        monomial_free = not contains_monomial(init)
        witness = totally_positive_witness(groebner_basis(init, order))
    except UndeterminedError:
        _emit({"format": FORMAT, "weight": list(w), "undetermined": True}, json_out)
        raise SystemExit(1)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "weight": list(w),
            "monomial_free": monomial_free,
            "positive_witness": witness,
            "generators": _poly_lines(init.generators),
        },
        json_out,
    )
    if not monomial_free:
        raise SystemExit(1)


def _load_seed(seed_path):
    data = load_json(seed_path)
    if not isinstance(data, dict) or "matrix" not in data:
        raise click.UsageError("%s does not declare \"matrix\"" % seed_path)
    try:
        matrix = ExchangeMatrix(data["matrix"])
        seed = initial_seed(matrix, names=data.get("names"),
                            mutable=data.get("mutable"))
    except PolyError as exc:
        raise click.UsageError("%s: %s" % (seed_path, exc))
    return matrix, seed, data.get("names")


@main.group()
@click.option("--seed", "seed_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Seed JSON {\"matrix\": [[...]], \"names\": [...], \"mutable\": m}.")
@click.pass_context
def cluster(ctx, seed_path):
    """Finite-type cluster operations on a seed file."""
    ctx.obj = seed_path


@cluster.command()
@click.argument("k", type=int)
@_json_option
@click.pass_context
def mutate(ctx, k, json_out):
    """Mutate the seed in direction K (1-based)."""
    matrix, seed, _ = _load_seed(ctx.obj)
    if not 1 <= k <= seed.mutable:
        raise click.UsageError("direction must be between 1 and %d" % seed.mutable)
    try:
        out = seed.mutate(k - 1)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "direction": k,
            "cluster": _poly_lines(out.variables),
            "matrix": [list(row) for row in out.matrix.rows],
        },
        json_out,
    )


@cluster.command()
@click.option("--bound", default=1000, show_default=True,
              callback=lambda ctx, param, v: _positive(v, "--bound"))
@_json_option
@click.pass_context
def graph(ctx, bound, json_out):
    """Exchange graph: seed count, edges, cluster-variable count."""
    _, seed, _ = _load_seed(ctx.obj)
    try:
        g = exchange_graph(seed, bound)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "seeds": len(g.seeds),
            "edges": [list(e) for e in g.edges],
            "variables": len(g.variables),
        },
        json_out,
    )


@cluster.command("g-vectors")
@click.option("--bound", default=1000, show_default=True,
              callback=lambda ctx, param, v: _positive(v, "--bound"))
@_json_option
@click.pass_context
def g_vectors(ctx, bound, json_out):
    """Sorted extended g-vectors of all cluster variables."""
    matrix, _, names = _load_seed(ctx.obj)
    try:
        pseed = principal_seed(matrix, names=names)
        g = exchange_graph(pseed, bound)
        size = matrix.m + matrix.f
        vectors = sorted(g_vector(x, pseed.ring, size) for x in g.variables)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "count": len(vectors),
            "g_vectors": [list(v) for v in vectors],
        },
        json_out,
    )


@cluster.command("b-univ")
@click.option("--bound", default=1000, show_default=True,
              callback=lambda ctx, param, v: _positive(v, "--bound"))
@_json_option
@click.pass_context
def b_univ(ctx, bound, json_out):
    """Universal-coefficient matrix: input rows over sorted opposite g-rows."""
    matrix, _, _ = _load_seed(ctx.obj)
    try:
        univ = build_B_univ(matrix, bound)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "mutable": univ.m,
            "matrix": [list(row) for row in univ.rows],
        },
        json_out,
    )


@cluster.command("sr-ideal")
@click.option("--bound", default=1000, show_default=True,
              callback=lambda ctx, param, v: _positive(v, "--bound"))
@_json_option
@click.pass_context
def sr_ideal(ctx, bound, json_out):
    """Stanley-Reisner ideal of the cluster complex, as ideal JSON."""
    _, seed, _ = _load_seed(ctx.obj)
    try:
        g = exchange_graph(seed, bound)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    names = {}
    order = []
    for s in g.seeds:
        for i, x in enumerate(s.variables):
            if x not in names:
                base = seed.ring.vars[i] if s is g.seeds[0] else None
                label = base or "v%d" % (len(names) + 1)
                while label in set(names.values()):
                    label += "_"
                names[x] = label
                order.append(label)
    ring = Ring(order)
    try:
        ideal = cluster_complex_sr_ideal(g, ring, names)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    _emit(
        {
            "format": FORMAT,
            "vars": list(ring.vars),
            "generators": _poly_lines(ideal.generators),
        },
        json_out,
    )


def _parse_tri(n, text, flag):
    try:
        return _gr2n.parse_triangulation(n, text)
    except PolyError as exc:
        raise click.UsageError("%s: %s" % (flag, exc))


def _arc_label(e):
    return "%d-%d" % e


def _nobody_report(n, t1_text, t2_text):
    t1 = _parse_tri(n, t1_text, "--T1")
    t2 = _parse_tri(n, t2_text, "--T2")
    try:
        old, _new = _gr2n.flip_difference(t1, t2)
    except PolyError as exc:
        raise click.UsageError(str(exc))
    arcs1, verts1 = _gr2n.newton_okounkov(t1)
    arcs2, verts2 = _gr2n.newton_okounkov(t2)
    zeta = _gr2n.shear_zeta(t1, old)
    mu = _gr2n.base_change_mu(t1, t2)

    def mapped_dense(m):
        out = mu(zeta(m))
        return tuple(out.get(e, 0) for e in arcs2)

    table1 = _gr2n.g_vector_table(t1)
    table2 = _gr2n.g_vector_table(t2)
    per_coordinate = all(
        mapped_dense(table1[p]) == tuple(table2[p].get(e, 0) for e in arcs2)
        for p in table1
    )
    mapped = sorted(
        {mapped_dense(dict(zip(arcs1, v))) for v in verts1}
    )
    ok = per_coordinate and mapped == list(verts2)
    return {
        "format": FORMAT,
        "n": n,
        "T1": t1_text,
        "T2": t2_text,
        "basis_T1": [_arc_label(e) for e in arcs1],
        "basis_T2": [_arc_label(e) for e in arcs2],
        "vertices_T1": [list(v) for v in verts1],
        "vertices_T2": [list(v) for v in verts2],
        "mapped_vertices": [list(v) for v in mapped],
        "per_coordinate": per_coordinate,
        "ok": ok,
    }


@main.group()
@click.option("--n", "n", type=int, required=True, help="Polygon vertex count (n >= 4).")
@click.pass_context
def gr2n(ctx, n):
    """Gr(2,n) polygon machinery: ideals, weights, lifts, NO-bodies."""
    if n < 4:
        raise click.UsageError("--n must be at least 4")
    ctx.obj = n


@gr2n.command("ideal")
@_json_option
@click.pass_context
def gr2n_ideal(ctx, json_out):
    """The Pluecker ideal as loadable ideal JSON."""
    n = ctx.obj
    ideal = _gr2n.plucker_ideal(n)
    _emit(
        {
            "format": FORMAT,
            "n": n,
            "vars": list(ideal.ring.vars),
            "d": list(ideal.ring.d),
            "generators": _poly_lines(ideal.generators),
        },
        json_out,
    )


@gr2n.command("triangulations")
@_json_option
@click.pass_context
def gr2n_triangulations(ctx, json_out):
    """All triangulations of the n-gon."""
    n = ctx.obj
    ts = _gr2n.triangulations(n)
    labels = sorted(
        ",".join(_arc_label(e) for e in sorted(t.diagonals)) for t in ts
    )
    _emit(
        {"format": FORMAT, "n": n, "count": len(ts), "triangulations": labels},
        json_out,
    )


@gr2n.command("g-vectors")
@click.option("--T", "t_text", required=True, help="Triangulation, e.g. \"13,14\" or \"1-3,1-4\".")
@_json_option
@click.pass_context
def gr2n_g_vectors(ctx, t_text, json_out):
    """Combinatorial g-vectors of every Pluecker variable."""
    n = ctx.obj
    tri = _parse_tri(n, t_text, "--T")
    arcs = tri.coordinate_arcs()
    table = _gr2n.g_vector_table(tri)
    _emit(
        {
            "format": FORMAT,
            "n": n,
            "T": t_text,
            "basis_arcs": [_arc_label(e) for e in arcs],
            "g_vectors": {
                _arc_label(p): [gv.get(e, 0) for e in arcs]
                for p, gv in table.items()
            },
        },
        json_out,
    )


@gr2n.command("weights")
@click.option("--T", "t_text", default=None, help="Triangulation for the tree weights.")
@_json_option
@click.pass_context
def gr2n_weights(ctx, t_text, json_out):
    """Crossing weight u, and per-triangulation tree weight and w_T."""
    n = ctx.obj
    report = {
        "format": FORMAT,
        "n": n,
        "arcs": [_arc_label(e) for e in _gr2n.polygon_arcs(n)],
        "u_weight": list(_gr2n.u_weight(n)),
        "monomial_cone_weight": list(_gr2n.monomial_cone_weight(n)),
    }
    if t_text is not None:
        tri = _parse_tri(n, t_text, "--T")
        report["T"] = t_text
        report["tree_weight"] = list(_gr2n.tree_weight(tri))
        report["w_T"] = list(_gr2n.weight_vector_wT(tri))
    _emit(report, json_out)


@gr2n.command("lift")
@_json_option
@click.pass_context
def gr2n_lift(ctx, json_out):
    """Closed-form lifted Pluecker relations over the crossing cone."""
    n = ctx.obj
    gens = _gr2n.lifted_plucker(n)
    rays = _gr2n.rays_C(n)
    lines = _poly_lines(gens)
    for line in lines:
        click.echo(line)
    _emit(
        {
            "format": FORMAT,
            "n": n,
            "vars": list(gens[0].ring.vars),
            "tvars": list(rays.tvars),
            "generators": lines,
        },
        json_out,
    )


@gr2n.command("nobody")
@click.option("--T1", "t1_text", required=True, help="First triangulation.")
@click.option("--T2", "t2_text", required=True, help="Adjacent triangulation (one flip away).")
@_json_option
@click.pass_context
def gr2n_nobody(ctx, t1_text, t2_text, json_out):
    """Map the T1 Newton-Okounkov vertices onto T2 through zeta then mu."""
    report = _nobody_report(ctx.obj, t1_text, t2_text)
    _emit(report, json_out)
    if not report["ok"]:
        raise SystemExit(1)


@main.command("nobody")
@click.option("--n", "n", type=int, required=True)
@click.option("--T1", "t1_text", required=True)
@click.option("--T2", "t2_text", required=True)
@_json_option
def nobody(n, t1_text, t2_text, json_out):
    """Shortcut for `gr2n --n N nobody --T1 ... --T2 ...`."""
    if n < 4:
        raise click.UsageError("--n must be at least 4")
    report = _nobody_report(n, t1_text, t2_text)
    _emit(report, json_out)
    if not report["ok"]:
        raise SystemExit(1)


_GR36_STEPS = ("gb", "lifts", "seeds", "regression")


@main.group()
def gr36():
    """Gr(3,6) cone verification against the stored fixture data."""


@gr36.command()
@click.option("--step", type=click.Choice(_GR36_STEPS + ("all",)), default="all",
              show_default=True)
@_json_option
@_threads_option
def verify(step, json_out, threads):
    """Run the named verification step and report each check."""
    runners = {
        "gb": _gr36.verify_reduced_gb,
        "lifts": _gr36.verify_lifts_univ,
        "seeds": _gr36.verify_seed_faces,
        "regression": _gr36.regression_facet_example,
    }
    try:
        if step == "all":
            reports = _gr36.verify_all()
        else:
            reports = [runners[step]()]
    except PolyError as exc:
        raise click.UsageError(str(exc))
    for report in reports:
        for check in report["checks"]:
            click.echo(
                "[ %s ] %s: %s"
                % ("ok" if check["ok"] else "FAIL", report["step"], check["name"])
            )
    _emit({"format": FORMAT, "steps": reports}, json_out)
    if not all(r["ok"] for r in reports):
        raise SystemExit(1)


if __name__ == "__main__":
    main()

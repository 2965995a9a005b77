"""Exact sparse polynomials over the rationals.

Rings carry an ordered variable list, a weight vector ``d`` for the
grading, and an optional Laurent flag permitting negative exponents.
Polynomials are immutable maps from exponent vectors to nonzero rational
coefficients.  Two initial-form notions are provided:

* weight-initial forms keep the terms *minimizing* ``w . alpha``;
* order-initial monomials take the *maximum* under an :class:`OrderSpec`,
  a matrix order given by priority weight rows refined by a lexicographic
  tiebreak on a stated variable permutation.

All arithmetic is exact; gmpy2 rationals are used when available.
"""

import json
import re
from fractions import Fraction

from . import kernel

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction

_ZERO = QQ(0)
_ONE = QQ(1)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<op>[-+*^()])|(?P<bad>\S))"
)


class PolyError(ValueError):
    """Domain error: zero degree, bad division, pole, invalid order."""


class ParseError(PolyError):
    """Malformed polynomial text or serialized input."""


def rat(value):
    """Coerce ints, strings like ``3/2``, and rationals to the coefficient type."""
    if isinstance(value, (int, str)):
        return QQ(value)
    if isinstance(value, Fraction) or type(value) is type(_ONE):
        return QQ(value)
    if isinstance(value, float) and value == int(value):
        return QQ(int(value))
    raise ParseError("not an exact rational: %r" % (value,))


def rat_to_json(value):
    return int(value) if value.denominator == 1 else str(value)


class Ring:
    """An ordered list of variables with a weight vector and Laurent flag."""

    __slots__ = ("vars", "d", "laurent", "index", "n", "_gens", "_order")

    def __init__(self, names, d=None, laurent=False):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolyError("duplicate variable names")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ParseError("invalid variable name %r" % (name,))
        self.vars = names
        self.n = len(names)
        if d is None:
            d = (_ONE,) * self.n
        else:
            d = tuple(rat(x) for x in d)
        if len(d) != self.n:
            raise PolyError("weight vector length does not match variables")
        self.d = d
        self.laurent = bool(laurent)
        self.index = {name: i for i, name in enumerate(names)}
        self._gens = None
        self._order = None

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.vars == other.vars
            and self.d == other.d
            and self.laurent == other.laurent
        )

    def __hash__(self):
        return hash((self.vars, self.d, self.laurent))

    def __repr__(self):
        return "Ring(%s)" % ", ".join(self.vars)

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = rat(c)
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exp, coeff=1):
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.n:
            raise PolyError("exponent length does not match ring")
        if not self.laurent and any(e < 0 for e in exp):
            raise PolyError("negative exponent in non-Laurent ring")
        coeff = rat(coeff)
        if not coeff:
            return Polynomial(self, {})
        return Polynomial(self, {exp: coeff})

    def gen(self, name):
        try:
            i = self.index[name]
        except KeyError:
            raise PolyError("unknown variable %r" % (name,)) from None
        exp = [0] * self.n
        exp[i] = 1
        return Polynomial(self, {tuple(exp): _ONE})

    @property
    def gens(self):
        if self._gens is None:
            self._gens = tuple(self.gen(name) for name in self.vars)
        return self._gens

    def from_terms(self, terms):
        """Build a polynomial from (exponent, coefficient) pairs, merging duplicates."""
        acc = {}
        for exp, coeff in dict(terms).items() if isinstance(terms, dict) else terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.n:
                raise PolyError("exponent length does not match ring")
            if not self.laurent and any(e < 0 for e in exp):
                raise PolyError("negative exponent in non-Laurent ring")
            coeff = rat(coeff)
            prev = acc.get(exp)
            if prev is None:
                if coeff:
                    acc[exp] = coeff
            else:
                prev = prev + coeff
                if prev:
                    acc[exp] = prev
                else:
                    del acc[exp]
        return Polynomial(self, acc)

    def extend(self, names, d_new=None, laurent=None):
        """A new ring with extra variables appended."""
        names = tuple(names)
        if d_new is None:
            d_new = (0,) * len(names)
        return Ring(
            self.vars + names,
            self.d + tuple(rat(x) for x in d_new),
            self.laurent if laurent is None else laurent,
        )

    def default_order(self):
        """Graded order (all-ones weight row) with lex tiebreak; used for display."""
        if self._order is None:
            self._order = OrderSpec(self, [(1,) * self.n])
        return self._order

    def parse(self, text):
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial: map exponent tuple -> nonzero rational."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise PolyError("mixed rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for exp, c in other.terms.items():
            prev = acc.get(exp)
            if prev is None:
                acc[exp] = c
            else:
                prev = prev + c
                if prev:
                    acc[exp] = prev
                else:
                    del acc[exp]
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = rat(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        if other.ring != self.ring:
            raise PolyError("mixed rings")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                prev = acc.get(exp)
                if prev is None:
                    acc[exp] = c
                else:
                    prev = prev + c
                    if prev:
                        acc[exp] = prev
                    else:
                        del acc[exp]
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if len(self.terms) == 1 and self.ring.laurent:
                ((exp, c),) = self.terms.items()
                return Polynomial(
                    self.ring, {tuple(-k * e for e in exp): c**k}
                )
            raise PolyError("negative power of a non-monomial")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __repr__(self):
        return format_polynomial(self)

    def sorted_items(self, order=None):
        """Terms as a list sorted by descending order key."""
        if order is None:
            order = self.ring.default_order()
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order):
        """(exponent, coefficient) of the order-maximal monomial."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        key = order.key
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def monic(self, order):
        exp, c = self.leading_term(order)
        if c == 1:
            return self
        inv = _ONE / c
        return Polynomial(self.ring, {e: inv * v for e, v in self.terms.items()})


class OrderSpec:
    """Matrix monomial order: weight rows by priority, then a lex tiebreak.

    Comparison is max-convention.  The order is validated to be global
    (1 is minimal among monomials with nonnegative exponents): in every
    variable column the first nonzero weight entry must be positive, or
    the column is all zero and the lex tiebreak covers it.
    """

    __slots__ = ("ring", "rows", "perm", "int_rows", "_hash")

    def __init__(self, ring, weight_rows, lex_vars=None, validate=True):
        self.ring = ring
        rows = []
        for row in weight_rows:
            row = tuple(rat(x) for x in row)
            if len(row) != ring.n:
                raise PolyError("weight row length does not match ring")
            rows.append(row)
        self.rows = tuple(rows)
        if lex_vars is None:
            perm = tuple(range(ring.n))
        else:
            lex_vars = list(lex_vars)
            if sorted(lex_vars) != sorted(ring.vars):
                raise PolyError("lex tiebreak must permute the ring variables")
            perm = tuple(ring.index[name] for name in lex_vars)
        self.perm = perm
        self.int_rows = tuple(_integerize(row) for row in self.rows)
        self._hash = None
        if validate:
            self.validate()

    def validate(self):
        for j in range(self.ring.n):
            for row in self.rows:
                if row[j] > 0:
                    break
                if row[j] < 0:
                    raise PolyError(
                        "not a global order: first nonzero weight for %r is negative"
                        % (self.ring.vars[j],)
                    )
        return self

    def key(self, exp):
        return kernel.order_key(exp, self.int_rows, self.perm)

    def cmp(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (
            isinstance(other, OrderSpec)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.perm == other.perm
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.perm))
        return self._hash

    @property
    def lex_vars(self):
        return tuple(self.ring.vars[i] for i in self.perm)


def _integerize(row):
    """Scale a rational row by a positive integer to clear denominators."""
    lcm = 1
    for x in row:
        den = x.denominator
        g = _gcd(lcm, den)
        lcm = lcm // g * den
    return tuple(int(x * lcm) for x in row)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def weighted_degree(f, d=None):
    """The common weight d . alpha of all terms, or None if mixed.

    Raises on the zero polynomial: it has no degree.
    """
    if not f.terms:
        raise PolyError("zero has no degree")
    if d is None:
        d = f.ring.d
    deg = None
    for exp in f.terms:
        val = _dot(d, exp)
        if deg is None:
            deg = val
        elif deg != val:
            return None
    return deg


def is_homogeneous(f, d=None):
    return weighted_degree(f, d) is not None


def _dot(w, exp):
    s = _ZERO
    for x, e in zip(w, exp):
        if e:
            s += x * e
    return s


def min_weight(f, w):
    """min over the support of w . alpha (the min-convention weight of f)."""
    if not f.terms:
        raise PolyError("zero has no initial form")
    return min(_dot(w, exp) for exp in f.terms)


def initial_form_weight(f, w):
    """Sum of the terms of f attaining the minimal weight w . alpha."""
    if not f.terms:
        raise PolyError("zero has no initial form")
    w = tuple(rat(x) for x in w)
    if len(w) != f.ring.n:
        raise PolyError("weight length does not match ring")
    best = None
    keep = {}
    for exp, c in f.terms.items():
        val = _dot(w, exp)
        if best is None or val < best:
            best = val
            keep = {exp: c}
        elif val == best:
            keep[exp] = c
    return Polynomial(f.ring, keep)


def initial_monomial_order(f, order):
    """The order-maximal term of f as a one-term polynomial."""
    exp, c = f.leading_term(order)
    return Polynomial(f.ring, {exp: c})


def specialize(f, assignments):
    """Substitution homomorphism; assigned variables leave the ring.

    Values may be rationals or polynomials over the resulting smaller
    ring.  Assigning 0 to a variable with a negative exponent raises
    "pole at zero".
    """
    ring = f.ring
    assigned = {}
    for name, value in assignments.items():
        if name not in ring.index:
            raise PolyError("unknown variable %r" % (name,))
        assigned[ring.index[name]] = value
    keep = [i for i in range(ring.n) if i not in assigned]
    new_ring = Ring(
        tuple(ring.vars[i] for i in keep),
        tuple(ring.d[i] for i in keep),
        ring.laurent,
    )
    for i, value in assigned.items():
        if isinstance(value, Polynomial):
            if value.ring != new_ring:
                raise PolyError(
                    "substitution value for %r must live in the result ring"
                    % (ring.vars[i],)
                )
        else:
            assigned[i] = rat(value)
    result = new_ring.zero
    for exp, c in f.terms.items():
        new_exp = tuple(exp[i] for i in keep)
        term = new_ring.monomial(new_exp, c)
        poly_factors = []
        dead = False
        for i, value in assigned.items():
            e = exp[i]
            if e == 0:
                continue
            if isinstance(value, Polynomial):
                if e < 0:
                    raise PolyError("negative exponent on polynomial substitution")
                poly_factors.append(value**e)
            elif value == 0:
                if e < 0:
                    raise PolyError("pole at zero")
                dead = True
                break
            else:
                term = term * value**e
        if dead:
            continue
        for factor in poly_factors:
            term = term * factor
        result = result + term
    return result


def exact_divide(f, g):
    """q with f = q*g, exactly; raises "not divisible" otherwise."""
    if not g.terms:
        raise PolyError("division by zero")
    ring = f.ring
    if g.ring != ring:
        raise PolyError("mixed rings")
    if not f.terms:
        return ring.zero
    shift_f = _laurent_shift(f)
    shift_g = _laurent_shift(g)
    order = _positive_order(ring)
    lt_g, lc_g = _shifted(g, shift_g).leading_term(order)
    gg = _shifted(g, shift_g)
    ff = _shifted(f, shift_f)
    bound = 1
    for v in range(ring.n):
        fr = _exp_range(ff, v)
        gr = _exp_range(gg, v)
        bound *= fr + gr + 1
    quotient = {}
    steps = 0
    while ff.terms:
        steps += 1
        if steps > bound:
            raise PolyError("not divisible")
        lt_f, lc_f = ff.leading_term(order)
        q_exp = tuple(a - b for a, b in zip(lt_f, lt_g))
        if any(e < 0 for e in q_exp):
            raise PolyError("not divisible")
        q_c = lc_f / lc_g
        quotient[q_exp] = q_c
        ff = ff - Polynomial(ring, {q_exp: q_c}) * gg
    total_shift = tuple(a - b for a, b in zip(shift_g, shift_f))
    if any(total_shift):
        if not ring.laurent and any(
            e + s < 0 for exp in quotient for e, s in zip(exp, total_shift)
        ):
            raise PolyError("not divisible")
        quotient = {
            tuple(e + s for e, s in zip(exp, total_shift)): c
            for exp, c in quotient.items()
        }
    return Polynomial(ring, quotient)


def _laurent_shift(f):
    """Per-variable shift moving the minimal exponent of each variable to 0.

    Corner normalization: Newton-polytope corners add under products, so
    exact quotients of corner-normalized operands are corner-normalized
    (hence exponent-nonnegative) too.
    """
    n = f.ring.n
    shift = None
    for exp in f.terms:
        if shift is None:
            shift = list(exp)
        else:
            for i, e in enumerate(exp):
                if e < shift[i]:
                    shift[i] = e
    return tuple(-s for s in shift)


def _shifted(f, shift):
    if not any(shift):
        return f
    return Polynomial(
        f.ring,
        {tuple(e + s for e, s in zip(exp, shift)): c for exp, c in f.terms.items()},
    )


def _exp_range(f, v):
    vals = [exp[v] for exp in f.terms]
    return max(vals) - min(vals)


def _positive_order(ring):
    return OrderSpec(ring, [(1,) * ring.n], validate=False)


def _parse_rat(text):
    try:
        return QQ(text)
    except ZeroDivisionError:
        raise ParseError("zero denominator in %r" % (text,)) from None


def parse_polynomial(ring, text):
    """Parse the textual grammar: signed terms ``[rational][*]name(^int)``."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise ParseError(
                "unexpected character %r at position %d" % (m.group("bad"), m.start("bad"))
            )
        if m.group("rat"):
            tokens.append(("rat", m.group("rat")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial text")

    terms = []
    i = 0
    n = len(tokens)

    def peek():
        return tokens[i] if i < n else (None, None)

    first = True
    while i < n:
        sign = _ONE
        kind, val = peek()
        if kind == "op" and val in "+-":
            while kind == "op" and val in "+-":
                if val == "-":
                    sign = -sign
                i += 1
                kind, val = peek()
        elif not first:
            raise ParseError("expected + or - between terms")
        first = False
        coeff = sign
        exp = [0] * ring.n
        saw_factor = False
        kind, val = peek()
        if kind == "rat":
            coeff = coeff * _parse_rat(val)
            saw_factor = True
            i += 1
            kind, val = peek()
            if kind == "op" and val == "*":
                i += 1
                kind, val = peek()
        while kind == "name":
            if val not in ring.index:
                raise ParseError("unknown variable %r" % (val,))
            power = 1
            i += 1
            kind, nxt = peek()
            if kind == "op" and nxt == "^":
                i += 1
                kind, nxt = peek()
                neg = False
                if kind == "op" and nxt == "-":
                    neg = True
                    i += 1
                    kind, nxt = peek()
                if kind != "rat" or "/" in nxt:
                    raise ParseError("expected integer exponent")
                power = -int(nxt) if neg else int(nxt)
                i += 1
            if power < 0 and not ring.laurent:
                raise ParseError("negative exponent in non-Laurent ring")
            exp[ring.index[val]] += power
            saw_factor = True
            kind, val = peek()
            if kind == "op" and val == "*":
                i += 1
                kind, val = peek()
                if kind not in ("name", "rat"):
                    raise ParseError("dangling '*'")
                if kind == "rat":
                    coeff = coeff * _parse_rat(val)
                    i += 1
                    kind, val = peek()
                    if kind == "op" and val == "*":
                        i += 1
                        kind, val = peek()
        if not saw_factor:
            raise ParseError("empty term")
        terms.append((tuple(exp), coeff))
    return ring.from_terms(terms)


def format_polynomial(f, order=None):
    """Deterministic text form; round-trips through parse_polynomial."""
    if not f.terms:
        return "0"
    ring = f.ring
    pieces = []
    for exp, c in f.sorted_items(order):
        factors = []
        for i, e in enumerate(exp):
            if e == 0:
                continue
            factors.append(ring.vars[i] if e == 1 else "%s^%d" % (ring.vars[i], e))
        mag = c if c > 0 else -c
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = [body if sign == "+" else "-" + body]
    for sign, body in pieces[1:]:
        out.append(" %s %s" % (sign, body))
    return "".join(out)


def ring_to_json(ring):
    return {
        "format": 1,
        "vars": list(ring.vars),
        "d": [rat_to_json(x) for x in ring.d],
    }


def ring_from_json(obj):
    if not isinstance(obj, dict) or "vars" not in obj:
        raise ParseError("ring JSON must contain 'vars'")
    d = obj.get("d")
    try:
        return Ring(obj["vars"], d, bool(obj.get("laurent", False)))
    except PolyError as exc:
        raise ParseError(str(exc)) from None


def ideal_to_json(ring, generators, order=None):
    return {
        "format": 1,
        "vars": list(ring.vars),
        "d": [rat_to_json(x) for x in ring.d],
        "generators": [format_polynomial(g, order) for g in generators],
    }


def ideal_from_json(obj):
    """Returns (ring, [generators]) from the ideal JSON format."""
    ring = ring_from_json(obj)
    gens = obj.get("generators")
    if not isinstance(gens, list):
        raise ParseError("ideal JSON must contain a 'generators' list")
    return ring, [parse_polynomial(ring, text) for text in gens]


def order_to_json(order):
    return {
        "format": 1,
        "weight_rows": [[rat_to_json(x) for x in row] for row in order.rows],
        "tiebreak": "lex",
        "vars": list(order.lex_vars),
    }


def order_from_json(ring, obj):
    if not isinstance(obj, dict):
        raise ParseError("order JSON must be an object")
    if obj.get("tiebreak", "lex") != "lex":
        raise ParseError("unsupported tiebreak %r" % (obj.get("tiebreak"),))
    rows = obj.get("weight_rows", [])
    parsed_rows = []
    for row in rows:
        parsed_rows.append([rat(x) for x in row])
    try:
        return OrderSpec(ring, parsed_rows, obj.get("vars"))
    except PolyError as exc:
        raise ParseError(str(exc)) from None


def load_json(path):
    with open(path) as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON in %s: %s" % (path, exc)) from None


def dump_json(obj, path):
    with open(path, "w") as handle:
        json.dump(obj, handle, indent=2)
        handle.write("\n")

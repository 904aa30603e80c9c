"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero Fraction
coefficients.  All arithmetic is exact; two polynomials are equal iff
their term maps are equal.  Values are immutable after construction, so
everything here is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def format_rational(q: Fraction) -> str:
    """Render a rational as "num/den", or just "num" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


class PolyError(ValueError):
    pass


class PolyParseError(PolyError):
    """Syntax or lookup error while parsing, with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class MPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("arity", "vars", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponent, Fraction],
                 vars: Sequence[str] | None = None):
        if arity < 1:
            raise PolyError("arity must be positive")
        if vars is None:
            vars = tuple(f"x{i}" for i in range(arity))
        else:
            vars = tuple(vars)
            if len(vars) != arity:
                raise PolyError("variable name count must equal arity")
        clean: dict[Exponent, Fraction] = {}
        for exps, c in terms.items():
            if len(exps) != arity:
                raise PolyError("exponent tuple length must equal arity")
            if any(e < 0 for e in exps):
                raise PolyError("negative exponent")
            c = Fraction(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, arity: int, vars: Sequence[str] | None = None) -> "MPoly":
        return cls(arity, {}, vars)

    @classmethod
    def const(cls, arity: int, c, vars: Sequence[str] | None = None) -> "MPoly":
        return cls(arity, {(0,) * arity: Fraction(c)}, vars)

    @classmethod
    def variable(cls, arity: int, idx: int,
                 vars: Sequence[str] | None = None) -> "MPoly":
        if not 0 <= idx < arity:
            raise PolyError(f"variable index {idx} out of range")
        e = [0] * arity
        e[idx] = 1
        return cls(arity, {tuple(e): Fraction(1)}, vars)

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, MPoly) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.arity, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def _check_same(self, other: "MPoly"):
        if self.arity != other.arity:
            raise PolyError("arity mismatch")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.arity, out, self.vars)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return MPoly(self.arity, out, self.vars)

    def __neg__(self) -> "MPoly":
        return MPoly(self.arity, {e: -c for e, c in self.terms.items()}, self.vars)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return MPoly(self.arity, out, self.vars)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly(self.arity, {e: c * v for e, v in self.terms.items()}, self.vars)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise PolyError("negative power")
        out = MPoly.const(self.arity, 1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- queries ---------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        """Set of weighted degrees realised by the terms."""
        return {sum(w * k for w, k in zip(weights, e)) for e in self.terms}

    def is_weighted_homogeneous(self, weights: Sequence[int],
                                degree: int | None = None) -> bool:
        degs = self.weighted_degrees(weights)
        if not degs:
            return True
        if degree is None:
            return len(degs) == 1
        return degs == {degree}

    def support_vars(self) -> set[int]:
        """Indices of variables that actually occur."""
        out: set[int] = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return out

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- calculus and substitution ----------------------------------------

    def partial(self, var: int) -> "MPoly":
        """Exact formal partial derivative with respect to variable `var`."""
        if not 0 <= var < self.arity:
            raise PolyError(f"variable index {var} out of range for arity {self.arity}")
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            ne = list(e)
            ne[var] = k - 1
            ne = tuple(ne)
            out[ne] = out.get(ne, Fraction(0)) + c * k
        return MPoly(self.arity, out, self.vars)

    def eval(self, point: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.arity:
            raise PolyError("point length must equal arity")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute_zeros(self, zero_vars: Iterable[int]) -> "MPoly":
        """Set the given variables to zero (same arity)."""
        zs = set(zero_vars)
        out = {e: c for e, c in self.terms.items()
               if all(e[i] == 0 for i in zs)}
        return MPoly(self.arity, out, self.vars)

    def project(self, keep: Sequence[int],
                vars: Sequence[str] | None = None) -> "MPoly":
        """Forget variables outside `keep` (they must not occur)."""
        keep = list(keep)
        drop = set(range(self.arity)) - set(keep)
        for e in self.terms:
            if any(e[i] for i in drop):
                raise PolyError("cannot project: dropped variable occurs")
        if vars is None:
            vars = [self.vars[i] for i in keep]
        out = {tuple(e[i] for i in keep): c for e, c in self.terms.items()}
        return MPoly(len(keep), out, vars)

    def permute_vars(self, perm: Sequence[int]) -> "MPoly":
        """Relabel variables: new variable i is old variable perm[i]."""
        if sorted(perm) != list(range(self.arity)):
            raise PolyError("not a permutation")
        inv = [0] * self.arity
        for i, p in enumerate(perm):
            inv[p] = i
        out = {tuple(e[perm[i]] for i in range(self.arity)): c
               for e, c in self.terms.items()}
        return MPoly(self.arity, out, [self.vars[p] for p in perm])

    def substitute(self, assignments: Mapping[int, "MPoly"]) -> "MPoly":
        """Substitute polynomials (of the same arity) for variables."""
        result = MPoly.zero(self.arity, self.vars)
        for e, c in self.terms.items():
            term = MPoly.const(self.arity, c, self.vars)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                base = assignments.get(i)
                if base is None:
                    base = MPoly.variable(self.arity, i, self.vars)
                term = term * base ** k
            result = result + term
        return result

    # -- printing ----------------------------------------------------------

    def _term_str(self, e: Exponent, c: Fraction, lead: bool) -> str:
        factors = []
        for name, k in zip(self.vars, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if lead:
            return body if c > 0 else "-" + body
        return (" + " if c > 0 else " - ") + body

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
        parts = [self._term_str(e, self.terms[e], i == 0)
                 for i, e in enumerate(keys)]
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


# -- parser ----------------------------------------------------------------

class _Parser:
    """Recursive-descent parser for the polynomial grammar:

        poly   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := coeff | var ('^' nat)? | '(' poly ')'
        coeff  := int ('/' nat)?

    Whitespace is insignificant.  The optional leading sign is accepted so
    that printed polynomials round-trip.
    """

    def __init__(self, text: str, vars: Sequence[str]):
        self.text = text
        self.vars = list(vars)
        self.pos = 0

    def error(self, msg: str) -> PolyParseError:
        return PolyParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        return self.text[start:self.pos]

    def factor(self, arity: int) -> MPoly:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            p = self.poly(arity)
            self.take(")")
            return p
        if ch.isdigit() or ch == "-":
            start = self.pos
            neg = ch == "-"
            if neg:
                self.pos += 1
            num = self.nat()
            den = 1
            if self.peek() == "/":
                self.take("/")
                den = self.nat()
                if den == 0:
                    self.pos = start
                    raise self.error("zero denominator")
            c = Fraction(-num if neg else num, den)
            return MPoly.const(arity, c, self.vars)
        if ch.isalpha() or ch == "_":
            start = self.pos
            name = self.ident()
            if name not in self.vars:
                self.pos = start
                raise self.error(f"unknown variable '{name}'")
            idx = self.vars.index(name)
            p = MPoly.variable(arity, idx, self.vars)
            if self.peek() == "^":
                self.take("^")
                p = p ** self.nat()
            return p
        raise self.error("expected a coefficient, variable or '('")

    def term(self, arity: int) -> MPoly:
        p = self.factor(arity)
        while self.peek() == "*":
            self.take("*")
            p = p * self.factor(arity)
        return p

    def poly(self, arity: int) -> MPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -1
            self.pos += 1
        p = self.term(arity).scale(sign)
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            q = self.term(arity)
            p = p + q if op == "+" else p - q
        return p

    def parse(self) -> MPoly:
        arity = len(self.vars)
        p = self.poly(arity)
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return p


def parse_poly(text: str, vars: Sequence[str]) -> MPoly:
    """Parse a polynomial expression over the given variables."""
    if len(set(vars)) != len(vars):
        raise PolyError("duplicate variable names")
    return _Parser(text, vars).parse()


# -- jets and arc derivatives ------------------------------------------------

@dataclass(frozen=True)
class Jet:
    """A truncated arc c(s) = base + arc(s) in a fixed affine chart.

    `arc` maps a variable index to the coefficients (c1, c2) of s and s^2;
    variables without an entry stay at their base value.  The degree-1 part
    (the direction) must be nonzero.  `certified_order` records up to which
    s-order the arc is asserted to agree with the true analytic coordinate
    curve; when None it defaults to the arc's truncation degree.
    """

    chart: int
    base: tuple[Fraction, ...]
    arc: Mapping[int, tuple[Fraction, Fraction]] = field(default_factory=dict)
    certified_order: int | None = None

    def __post_init__(self):
        arc = {int(i): (Fraction(c1), Fraction(c2))
               for i, (c1, c2) in self.arc.items()}
        object.__setattr__(self, "arc", arc)
        object.__setattr__(self, "base", tuple(Fraction(b) for b in self.base))
        for i in arc:
            if not 0 <= i < len(self.base):
                raise PolyError("arc variable index out of range")
        if all(c1 == 0 for c1, _ in arc.values()):
            raise PolyError("jet direction (order-1 part) must be nonzero")

    @property
    def truncation_degree(self) -> int:
        return 2 if any(c2 != 0 for _, c2 in self.arc.values()) else 1

    @property
    def effective_certified_order(self) -> int:
        if self.certified_order is not None:
            return self.certified_order
        return self.truncation_degree

    def is_linear(self) -> bool:
        return self.truncation_degree == 1

    def direction(self) -> tuple[Fraction, ...]:
        d = [Fraction(0)] * len(self.base)
        for i, (c1, _) in self.arc.items():
            d[i] = c1
        return tuple(d)


@dataclass(frozen=True)
class ArcDerivatives:
    """Values d^k/ds^k p(c(s)) at s=0 for k = 0..order, with per-order
    certification against the jet's asserted truncation."""

    values: tuple[Fraction, ...]
    certified: tuple[bool, ...]

    def value(self, k: int) -> Fraction:
        return self.values[k]


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def arc_derivatives(p: MPoly, jet: Jet, order: int) -> ArcDerivatives:
    """Expand p along the jet arc and return k!-scaled s-coefficients.

    Orders above the jet's certified truncation are still computed but
    flagged as uncertified (the caller decides whether to trust them).
    """
    if len(jet.base) != p.arity:
        raise PolyError("jet base point length must equal polynomial arity")
    if order < 0:
        raise PolyError("order must be nonnegative")
    # series of each coordinate, truncated at s^order
    coords: list[list[Fraction]] = []
    for i in range(p.arity):
        c = [Fraction(0)] * (order + 1)
        c[0] = jet.base[i]
        c1, c2 = jet.arc.get(i, (Fraction(0), Fraction(0)))
        if order >= 1:
            c[1] = c1
        if order >= 2:
            c[2] = c2
        coords.append(c)
    total = [Fraction(0)] * (order + 1)
    for e, cf in p.terms.items():
        term = [Fraction(0)] * (order + 1)
        term[0] = cf
        for i, k in enumerate(e):
            for _ in range(k):
                term = _series_mul(term, coords[i], order)
        for k in range(order + 1):
            total[k] += term[k]
    fact = 1
    values = []
    for k in range(order + 1):
        if k > 0:
            fact *= k
        values.append(total[k] * fact)
    cert = jet.effective_certified_order
    return ArcDerivatives(tuple(values), tuple(k <= cert or k == 0
                                               for k in range(order + 1)))


# -- univariate helpers -------------------------------------------------------

class NotFiniteError(PolyError):
    """All inputs vanish identically: the common zero set is not finite."""


@dataclass(frozen=True)
class CommonRoots:
    roots: frozenset[Fraction]
    may_have_irrational: bool


def _as_univariate(p: MPoly) -> tuple[int | None, list[Fraction]]:
    """Return (variable index or None for constants, coefficient list)."""
    sup = p.support_vars()
    if len(sup) > 1:
        raise PolyError("polynomial is not univariate")
    if not sup:
        return None, [p.coefficient((0,) * p.arity)] if p.terms else [Fraction(0)]
    v = sup.pop()
    deg = max(e[v] for e in p.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[v]] = c
    return v, coeffs


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        _poly_trim(a)
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    b = _poly_trim(list(b))
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(_poly_trim(a)) >= len(b) and _poly_trim(a):
        a = _poly_trim(a)
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
    return q, a


def univariate_common_roots(ps: Sequence[MPoly]) -> CommonRoots:
    """Rational common roots of univariate polynomials sharing one variable.

    The flag is set when the gcd retains positive degree after all rational
    roots (with multiplicity) are divided out, i.e. nonrational common roots
    may remain.
    """
    coeff_lists = []
    seen_var: int | None = None
    for p in ps:
        v, coeffs = _as_univariate(p)
        if v is not None:
            if seen_var is not None and v != seen_var:
                raise PolyError("polynomials involve different variables")
            seen_var = v
        coeff_lists.append(_poly_trim(coeffs))
    nonzero = [c for c in coeff_lists if c]
    if not nonzero:
        raise NotFiniteError("all polynomials are zero")
    g = nonzero[0]
    for c in nonzero[1:]:
        g = _poly_gcd(g, c)
        if len(g) == 1:
            return CommonRoots(frozenset(), False)
    if len(g) == 1:
        return CommonRoots(frozenset(), False)
    roots, remaining_degree = _rational_roots_with_mult(g)
    return CommonRoots(frozenset(roots), remaining_degree > 0)


def _rational_roots_with_mult(coeffs: list[Fraction]) -> tuple[list[Fraction], int]:
    """Rational roots of the polynomial; returns (roots, degree remaining
    after dividing out every rational linear factor with multiplicity)."""
    cur = _poly_trim(list(coeffs))
    if not cur:
        raise NotFiniteError("zero polynomial")
    roots: list[Fraction] = []
    while len(cur) > 1 and cur[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        cur = cur[1:]
    if len(cur) <= 1:
        return roots, 0
    den_lcm = 1
    for c in cur:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in cur]
    content = 0
    for v in ints:
        content = gcd(content, v)
    coeffs_f = [Fraction(v // content) for v in ints]
    candidates: set[Fraction] = set()
    for pnum in _divisors(int(coeffs_f[0])):
        for pden in _divisors(int(coeffs_f[-1])):
            candidates.add(Fraction(pnum, pden))
            candidates.add(Fraction(-pnum, pden))

    def eval_at(cs: list[Fraction], q: Fraction) -> Fraction:
        tot = Fraction(0)
        for c in reversed(cs):
            tot = tot * q + c
        return tot

    for cand in sorted(candidates):
        while len(coeffs_f) > 1 and eval_at(coeffs_f, cand) == 0:
            if cand not in roots:
                roots.append(cand)
            q, r = _poly_divmod(coeffs_f, [-cand, Fraction(1)])
            coeffs_f = _poly_trim(q)
    return roots, len(coeffs_f) - 1

"""Exact sparse multivariate polynomials, Buchberger Groebner bases,
Krull dimension and Hilbert series of graded quotients.

Monomials are exponent tuples; the term order is weighted graded reverse
lexicographic: compare weighted degree first, ties broken by the *last*
nonzero entry of the exponent difference being negative.
"""

import re
from fractions import Fraction
from itertools import combinations

from .intlinalg import smith_normal_form, invariant_factors  # noqa: F401 (re-export)
from .rings import QQ, ZZ, RingMismatchError


class BudgetExceeded(RuntimeError):
    """The configured S-pair budget ran out; not a mathematical failure."""


class PolyRing:
    def __init__(self, coeff_ring, names, weights=None):
        self.coeff = coeff_ring
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.weights = tuple(weights) if weights else (1,) * len(self.names)
        if len(self.weights) != len(self.names) or any(w <= 0 for w in self.weights):
            raise ValueError("need one positive weight per variable")
        self.nvars = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.coeff == other.coeff
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.coeff, self.names, self.weights))

    def __repr__(self):
        return f"{self.coeff}[{', '.join(self.names)}]"

    def wdeg(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def mono_cmp_key(self, exps):
        """Sort key putting larger monomials first under weighted grevlex."""
        return (-self.wdeg(exps), tuple(reversed(exps)))

    def mono_gt(self, a, b):
        """a > b in the term order."""
        da, db = self.wdeg(a), self.wdeg(b)
        if da != db:
            return da > db
        for x, y in zip(reversed(a), reversed(b)):
            if x != y:
                return x < y
        return False

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.coeff.coerce(c)
        if c == self.coeff.coerce(0):
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name):
        i = self._index[name]
        exps = tuple(int(j == i) for j in range(self.nvars))
        return Polynomial(self, {exps: self.coeff.coerce(1)})

    def gens(self):
        return [self.gen(nm) for nm in self.names]

    def monomial(self, exps, c=1):
        c = self.coeff.coerce(c)
        if c == self.coeff.coerce(0):
            return self.zero()
        return Polynomial(self, {tuple(exps): c})

    def change_coeff(self, coeff_ring):
        return PolyRing(coeff_ring, self.names, self.weights)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        zero = ring.coeff.coerce(0)
        self.terms = {m: c for m, c in terms.items() if c != zero}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check(other)
        R = self.ring.coeff
        out = dict(self.terms)
        zero = R.coerce(0)
        for m, c in other.terms.items():
            out[m] = R.add(out.get(m, zero), c)
        return Polynomial(self.ring, out)

    def __neg__(self):
        R = self.ring.coeff
        return Polynomial(self.ring, {m: R.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        R = self.ring.coeff
        out = {}
        zero = R.coerce(0)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = R.add(out.get(m, zero), R.mul(c1, c2))
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        R = self.ring.coeff
        c = R.coerce(c)
        return Polynomial(self.ring, {m: R.mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- structure ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.mono_cmp_key(mc[0]))

    def leading_monomial(self):
        return min(self.terms, key=self.ring.mono_cmp_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def monic(self):
        if not self.terms:
            return self
        R = self.ring.coeff
        lc = self.leading_coeff()
        return Polynomial(self.ring, {m: R.div(c, lc) for m, c in self.terms.items()})

    def substitute(self, assignment):
        """Map variable names to polynomials or scalars of the same ring."""
        out = self.ring.zero()
        gens = {nm: self.ring.gen(nm) for nm in self.ring.names}
        for m, c in self.terms.items():
            term = self.ring.const(c)
            for i, e in enumerate(m):
                if e:
                    nm = self.ring.names[i]
                    sub = assignment.get(nm, gens[nm])
                    if not isinstance(sub, Polynomial):
                        sub = self.ring.const(sub)
                    term = term * sub ** e
            out = out + term
        return out

    def change_coeff(self, coeff_ring):
        R2 = self.ring.change_coeff(coeff_ring)
        return Polynomial(R2, {m: coeff_ring.coerce(c) for m, c in self.terms.items()})

    def map_into(self, target_ring, assignment):
        """Ring map: each source variable goes to a target polynomial."""
        out = target_ring.zero()
        for m, c in self.terms.items():
            term = target_ring.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * assignment[self.ring.names[i]] ** e
            out = out + term
        return out

    # -- canonical strings -----------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        one = self.ring.coeff.coerce(1)
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(m) if e)
            neg = _coeff_is_negative(c)
            mag = -c if neg else c
            if mono and mag == one:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not bits:
                bits.append(f"-{body}" if neg else body)
            else:
                bits.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(bits)

    __repr__ = __str__


def _coeff_is_negative(c):
    return isinstance(c, (int, Fraction)) and c < 0


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+/\d+|\d+|\^|\*|\+|-|\(|\))")


def parse_polynomial(ring, text):
    """Parse a canonical polynomial string back into the ring."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    out = ring.zero()
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        term = ring.const(sign)
        expect_factor = True
        while i < n and (expect_factor or tokens[i] == "*"):
            if tokens[i] == "*":
                i += 1
                expect_factor = True
                continue
            tok = tokens[i]
            if tok[0].isdigit():
                term = term * ring.const(Fraction(tok))
            else:
                if tok not in ring._index:
                    raise ValueError(f"unknown variable {tok!r}")
                e = 1
                if i + 2 < n and tokens[i + 1] == "^":
                    e = int(tokens[i + 2])
                    i += 2
                term = term * ring.gen(tok) ** e
            i += 1
            expect_factor = False
            if i < n and tokens[i] not in ("*", "^"):
                break
        out = out + term
    return out


class Ideal:
    """A list of nonzero generators over a common polynomial ring."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != ring:
                raise RingMismatchError("generator outside the ring")

    def groebner(self, budget=200000):
        if not self.gens:
            return []
        return groebner_basis(self.gens, budget)

    def dimension(self, budget=200000):
        gb = self.groebner(budget)
        if not gb:
            return self.ring.nvars
        return ideal_dimension(gb)

    def hilbert(self, truncation=40, budget=200000):
        return hilbert_series(self.groebner(budget), ring=self.ring,
                              truncation=truncation, is_groebner=True)

    def to_document(self):
        return {"ring": {"coeff": self.ring.coeff.name,
                         "names": list(self.ring.names),
                         "weights": list(self.ring.weights)},
                "generators": [str(g) for g in self.gens]}

    @classmethod
    def from_document(cls, doc, coeff_ring):
        ring = PolyRing(coeff_ring, doc["ring"]["names"], doc["ring"]["weights"])
        return cls(ring, [parse_polynomial(ring, s) for s in doc["generators"]])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


# ----------------------------------------------------------------------
# Groebner machinery (field coefficients)


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


def normal_form(f, basis):
    """Remainder of f on division by the list basis (field coefficients)."""
    ring = f.ring
    R = ring.coeff
    lead = [(g.leading_monomial(), g) for g in basis if not g.is_zero()]
    rem = {}
    work = dict(f.terms)
    zero = R.coerce(0)
    while work:
        m = min(work, key=ring.mono_cmp_key)
        c = work.pop(m)
        if c == zero:
            continue
        for lm, g in lead:
            if _mono_divides(lm, m):
                q = _mono_quot(m, lm)
                factor = R.div(c, g.terms[lm])
                for m2, c2 in g.terms.items():
                    mm = tuple(a + b for a, b in zip(q, m2))
                    if mm == m:
                        continue
                    work[mm] = R.sub(work.get(mm, zero), R.mul(factor, c2))
                break
        else:
            rem[m] = c
    return Polynomial(ring, rem)


def s_polynomial(f, g):
    ring = f.ring
    R = ring.coeff
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = _mono_lcm(lf, lg)
    mf = ring.monomial(_mono_quot(lcm, lf), R.div(R.coerce(1), f.leading_coeff()))
    mg = ring.monomial(_mono_quot(lcm, lg), R.div(R.coerce(1), g.leading_coeff()))
    return mf * f - mg * g


def groebner_basis(gens, budget=200000):
    """Reduced Groebner basis of the ideal generated by gens.

    Raises BudgetExceeded if more than `budget` S-pairs are processed.
    """
    ring = gens[0].ring if gens else None
    if ring is not None and not ring.coeff.is_field:
        raise ValueError("Groebner bases require field coefficients")
    G = [g.monic() for g in gens if not g.is_zero()]
    if not G:
        return []
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    spent = 0
    while pairs:
        # prefer pairs with small lcm degree (normal selection)
        i, j = min(pairs, key=lambda ij: ring.wdeg(
            _mono_lcm(G[ij[0]].leading_monomial(), G[ij[1]].leading_monomial())))
        pairs.discard((i, j))
        spent += 1
        if spent > budget:
            raise BudgetExceeded(f"S-pair budget {budget} exhausted")
        li, lj = G[i].leading_monomial(), G[j].leading_monomial()
        lcm = _mono_lcm(li, lj)
        if lcm == tuple(a + b for a, b in zip(li, lj)):
            continue  # coprime leading monomials: S-poly reduces to zero
        # chain criterion
        if any(k != i and k != j
               and _mono_divides(G[k].leading_monomial(), lcm)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        r = normal_form(s_polynomial(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            t = len(G) - 1
            pairs |= {(k, t) for k in range(t)}
    return reduce_basis(G)


def reduce_basis(G):
    """Minimal, fully inter-reduced monic basis, deterministically sorted."""
    G = [g.monic() for g in G if not g.is_zero()]
    G.sort(key=lambda g: g.ring.mono_cmp_key(g.leading_monomial()), reverse=True)
    minimal = []
    for g in G:
        lm = g.leading_monomial()
        if not any(_mono_divides(h.leading_monomial(), lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        # g's lead survives (no other lead divides it); tail gets reduced
        out.append(normal_form(g, others).monic() if others else g)
    out.sort(key=lambda g: g.ring.mono_cmp_key(g.leading_monomial()), reverse=True)
    return out


def ideal_dimension(gb, nvars=None):
    """Krull dimension of ring/I from a Groebner basis of I.

    Maximal cardinality of a variable subset S such that no leading
    monomial is supported entirely inside S.
    """
    if not gb:
        raise ValueError("need at least the ring context; pass the zero ideal as []")
    ring = gb[0].ring
    leads = [g.leading_monomial() for g in gb if not g.is_zero()]
    n = ring.nvars
    if any(all(e == 0 for e in lm) for lm in leads):
        return -1  # unit ideal: empty spectrum
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            Sset = set(S)
            if not any(all(i in Sset for i, e in enumerate(lm) if e) for lm in leads):
                return size
    return 0


# ----------------------------------------------------------------------
# Hilbert series


class HilbertSeries:
    """Truncated integer power series with an optional closed rational form.

    closed form: numerator coefficient list `numer` (index = degree) over
    the product of (1 - t^d) for d in `denom_degs`.
    """

    def __init__(self, coeffs, truncation, numer=None, denom_degs=None):
        self.truncation = truncation
        self.coeffs = list(coeffs[:truncation + 1])
        self.coeffs += [0] * (truncation + 1 - len(self.coeffs))
        self.numer = list(numer) if numer is not None else None
        self.denom_degs = tuple(sorted(denom_degs)) if denom_degs is not None else None
        if self.numer is not None:
            expanded = _expand_rational(self.numer, self.denom_degs, truncation)
            assert expanded == self.coeffs, "closed form disagrees with series"

    @classmethod
    def from_rational(cls, numer, denom_degs, truncation):
        coeffs = _expand_rational(list(numer), denom_degs, truncation)
        return cls(coeffs, truncation, numer, denom_degs)

    def scaled(self, k):
        numer = [k * c for c in self.numer] if self.numer is not None else None
        return HilbertSeries([k * c for c in self.coeffs], self.truncation,
                             numer, self.denom_degs)

    def truncated(self, N):
        if N > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return self.coeffs[:N + 1]

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries)
                and self.truncation == other.truncation
                and self.coeffs == other.coeffs)

    def first_difference(self, other):
        N = min(self.truncation, other.truncation)
        for k in range(N + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def closed_form_str(self):
        if self.numer is None:
            return None
        num = _poly_in_t_str(self.numer)
        if not self.denom_degs:
            return num
        den = "*".join(f"(1 - t^{d})" for d in self.denom_degs)
        if len(self.numer) > 1 or self.numer[0] != 1:
            return f"({num})/({den})"
        return f"1/({den})"

    def __repr__(self):
        cf = self.closed_form_str()
        head = " + ".join(f"{c}*t^{k}" for k, c in enumerate(self.coeffs[:6]) if c)
        return f"HilbertSeries({cf or head + ' + ...'})"


def _poly_in_t_str(coeffs):
    bits = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            bits.append(str(c))
        else:
            mono = "t" if k == 1 else f"t^{k}"
            bits.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(bits) if bits else "0"


def _expand_rational(numer, denom_degs, N):
    coeffs = list(numer[:N + 1]) + [0] * max(0, N + 1 - len(numer))
    for d in denom_degs or ():
        # multiply by 1/(1 - t^d): prefix-sum with stride d
        for k in range(d, N + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs[:N + 1]


def _poly_t_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_t_divide(a, b):
    """Exact division of integer polynomials in t; None if not exact."""
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not a:
        return [0]
    if len(a) < len(b):
        return None
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        if a[k + len(b) - 1] % b[-1]:
            return None
        q[k] = a[k + len(b) - 1] // b[-1]
        for j, y in enumerate(b):
            a[k + j] -= q[k] * y
    if any(a):
        return None
    return q


def _monomial_ideal_numerator(leads, weights):
    """Numerator of the Hilbert series of R/(leads) over prod (1 - t^w)."""
    leads = sorted(set(leads))
    # drop redundant generators
    leads = [m for m in leads
             if not any(m != m2 and _mono_divides(m2, m) for m2 in leads)]
    if not leads:
        return [1]
    if any(not any(m) for m in leads):
        return [0]  # unit ideal
    g = leads[-1]
    rest = leads[:-1]
    n_rest = _monomial_ideal_numerator(rest, weights)
    colon = [_mono_quot(_mono_lcm(m, g), g) for m in rest]
    n_colon = _monomial_ideal_numerator(colon, weights)
    w = sum(e * wt for e, wt in zip(g, weights))
    shifted = [0] * w + n_colon
    out = [0] * max(len(n_rest), len(shifted))
    for i, x in enumerate(n_rest):
        out[i] += x
    for i, x in enumerate(shifted):
        out[i] -= x
    return out


def hilbert_series(gens_or_gb, ring=None, truncation=40, budget=200000,
                   is_groebner=False):
    """Hilbert series of ring/(gens) for homogeneous generators.

    Accepts either raw generators (a Groebner basis is computed) or an
    already-computed basis with is_groebner=True.  With an empty generator
    list, `ring` must be supplied.
    """
    if gens_or_gb:
        ring = gens_or_gb[0].ring
        for g in gens_or_gb:
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator: {g}")
        gb = list(gens_or_gb) if is_groebner else groebner_basis(gens_or_gb, budget)
    else:
        if ring is None:
            raise ValueError("zero ideal needs an explicit ring")
        gb = []
    leads = [g.leading_monomial() for g in gb]
    numer = _monomial_ideal_numerator(leads, ring.weights)
    # cancel common (1 - t^d) factors
    denom = list(ring.weights)
    changed = True
    while changed:
        changed = False
        for d in sorted(set(denom), reverse=True):
            factor = [1] + [0] * (d - 1) + [-1]
            q = _poly_t_divide(numer, factor)
            if q is not None:
                numer = q
                denom.remove(d)
                changed = True
                break
    return HilbertSeries.from_rational(numer, denom, truncation)

"""Reductive root data with almost-simple derived group.

Coordinates
-----------
A datum of derived rank r with a rank-c central torus lives in two ambient
lattices of rank n = r + c:

* cocharacter side ("coweight coordinates"): the first r coordinates are
  coefficients on the fundamental coweights of the derived group, the last
  c are an integral basis of the central block;
* character side ("root coordinates"): the first r coordinates are
  coefficients on the simple roots, the last c are dual to the central
  block.

The pairing between the two sides is the plain dot product.  The datum
stores the Cartan matrix (``cartan[i][j] = <alpha_j, alpha_i^vee>``) and an
integer matrix ``cochar_basis`` whose rows are a basis of the cocharacter
lattice in coweight coordinates.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .intlinalg import (invariant_factors, is_integral, mat_inverse, mat_mul,
                        rational_rank, solve_left, to_int, transpose)


class RootDatumError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factors d_1 | d_2 | ...; a 0 encodes a free Z factor."""

    invariant_factors: tuple

    @property
    def free_rank(self):
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion_order(self):
        order = 1
        for d in self.invariant_factors:
            if d:
                order *= d
        return order

    @property
    def is_finite(self):
        return self.free_rank == 0

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        parts = [f"Z/{d}" if d else "Z" for d in self.invariant_factors]
        return " x ".join(parts)


def _symmetrizer(cartan):
    """Minimal positive integers d with d_i*C[i][j] = d_j*C[j][i].

    d_i is proportional to the squared length of the i-th simple root.
    """
    r = len(cartan)
    d = [None] * r
    d[0] = Fraction(1)
    # propagate along the (connected) Dynkin graph
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(r):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                todo.append(j)
    if any(x is None for x in d):
        raise RootDatumError("Dynkin diagram is disconnected")
    denom_lcm = 1
    for x in d:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _check_cartan(cartan):
    r = len(cartan)
    if r == 0:
        raise RootDatumError("pure torus: the derived group must be nontrivial")
    for i in range(r):
        if len(cartan[i]) != r:
            raise RootDatumError("cartan matrix is not square")
        if cartan[i][i] != 2:
            raise RootDatumError("cartan diagonal must be 2")
        for j in range(r):
            if i != j:
                if cartan[i][j] > 0:
                    raise RootDatumError("off-diagonal cartan entries must be <= 0")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise RootDatumError("cartan zero pattern must be symmetric")
    d = _symmetrizer(cartan)  # also rejects disconnected diagrams
    # positive definiteness of the symmetrization (finite type)
    S = [[d[i] * cartan[i][j] for j in range(r)] for i in range(r)]
    M = [[Fraction(x) for x in row] for row in S]
    for k in range(r):  # leading principal minors via fraction-free-ish elim
        if M[k][k] <= 0:
            raise RootDatumError("cartan matrix is not of finite type")
        for i in range(k + 1, r):
            f = M[i][k] / M[k][k]
            M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return d


def _enumerate_root_coeffs(cartan):
    """All roots as coefficient tuples on the simple roots."""
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    frontier = set(simple)
    while frontier:
        new = set()
        for beta in frontier:
            for i in range(r):
                pairing = sum(beta[j] * cartan[i][j] for j in range(r))
                refl = list(beta)
                refl[i] -= pairing
                refl = tuple(refl)
                if refl not in roots:
                    new.add(refl)
        roots |= new
        frontier = new
    return roots


@dataclass(frozen=True)
class Root:
    """One root of the datum, with both sides of the pairing realised."""

    coeffs: tuple          # coefficients on the simple roots
    vector: tuple          # root coordinates (character side)
    coroot: tuple          # coweight coordinates (cocharacter side)
    height: int

    @property
    def positive(self):
        return self.height > 0


@dataclass(frozen=True)
class RootDatum:
    name: str
    cartan: tuple                 # r x r, rows indexed by simple coroots
    cochar_basis: tuple           # n x n basis of the cocharacter lattice
    central_rank: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        _check_cartan(self.cartan)
        n = self.rank
        B = [list(row) for row in self.cochar_basis]
        if len(B) != n or any(len(row) != n for row in B):
            raise RootDatumError("cochar_basis must be square of rank r + c")
        if not is_integral(B):
            raise RootDatumError("cochar_basis must be integral (inside the coweight lattice)")
        if rational_rank(B) != n:
            raise RootDatumError("cochar_basis is singular")
        for alpha in self.simple_coroots:
            x = solve_left(B, list(alpha))
            if not is_integral(x):
                raise RootDatumError("coroot lattice is not contained in the cocharacter lattice")

    # -- basic shape ---------------------------------------------------

    @property
    def derived_rank(self):
        return len(self.cartan)

    @property
    def rank(self):
        return self.derived_rank + self.central_rank

    @property
    def simple_roots(self):
        """Rows in root coordinates."""
        n, r = self.rank, self.derived_rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(r))

    @property
    def simple_coroots(self):
        """Rows in coweight coordinates."""
        n, r = self.rank, self.derived_rank
        return tuple(tuple(self.cartan[i][j] if j < r else 0 for j in range(n))
                     for i in range(r))

    def symmetrizer(self):
        """Squared simple-root lengths up to overall scale."""
        return _symmetrizer(self.cartan)

    def coroot_length_sq(self):
        """Squared simple-coroot lengths, short coroot normalised to 1."""
        d = self.symmetrizer()
        m = max(d)
        return [m // di for di in d]

    # -- root enumeration ----------------------------------------------

    def roots(self):
        """All roots, positives first sorted by (height, lex)."""
        if "roots" in self._cache:
            return self._cache["roots"]
        r, n = self.derived_rank, self.rank
        d = self.symmetrizer()

        def ip(a, b):  # 2*(a, b) in the symmetrised form
            return sum(a[i] * d[i] * self.cartan[i][j] * b[j]
                       for i in range(r) for j in range(r))

        out = []
        for coeffs in _enumerate_root_coeffs(self.cartan):
            h = sum(coeffs)
            vector = tuple(coeffs) + (0,) * self.central_rank
            norm = ip(coeffs, coeffs)
            cor = [Fraction(2 * coeffs[i] * d[i], norm) for i in range(r)]
            assert all(x.denominator == 1 for x in cor), "coroot is not integral"
            coroot_coeffs = [int(x) for x in cor]
            coroot = [0] * n
            for i, ci in enumerate(coroot_coeffs):
                if ci:
                    for j in range(n):
                        coroot[j] += ci * self.simple_coroots[i][j]
            out.append(Root(tuple(coeffs), vector, tuple(coroot), h))
        out.sort(key=lambda rt: (rt.height <= 0, abs(rt.height),
                                 tuple(-x for x in rt.coeffs) if rt.height < 0 else rt.coeffs))
        result = tuple(out)
        self._cache["roots"] = result
        return result

    def positive_roots(self):
        return tuple(rt for rt in self.roots() if rt.positive)

    def highest_root(self):
        return max(self.positive_roots(), key=lambda rt: rt.height)

    def two_rho(self):
        """Sum of the positive roots, in root coordinates."""
        n = self.rank
        acc = [0] * n
        for rt in self.positive_roots():
            for j in range(n):
                acc[j] += rt.vector[j]
        return tuple(acc)

    # -- numerical invariants --------------------------------------------

    def killing_form(self, x, y):
        """(x, y)_Kil = sum over roots of <root, x><root, y>.

        x, y are cocharacter-side vectors in coweight coordinates.
        """
        if len(x) != self.rank or len(y) != self.rank:
            raise RootDatumError("killing_form: dimension mismatch")
        total = 0
        for rt in self.roots():
            total += _dot(rt.vector, x) * _dot(rt.vector, y)
        return total

    def length_ratio(self):
        """Squared long/short root length ratio (1, 2 or 3)."""
        d = self.symmetrizer()
        return max(d) // min(d)

    def two_rho_degree(self, coroot):
        """<2 rho^vee, alpha> for alpha a coroot of the datum."""
        coroot = tuple(coroot)
        if not any(rt.coroot == coroot for rt in self.roots()):
            raise RootDatumError(f"{coroot} is not a coroot of {self.name}")
        return _dot(self.two_rho(), coroot)

    def exponents(self):
        """Exponents m_1 <= ... <= m_r of the derived group.

        Dual partition of the positive-root height counts.
        """
        heights = [rt.height for rt in self.positive_roots()]
        maxh = max(heights)
        counts = [sum(1 for h in heights if h == k) for k in range(1, maxh + 1)]
        exps = sorted(sum(1 for c in counts if c >= i)
                      for i in range(1, self.derived_rank + 1))
        return exps

    def component_group(self):
        """pi_0 of the loop space side: cocharacter lattice mod coroots."""
        B = [list(row) for row in self.cochar_basis]
        rows = [to_int(solve_left(B, list(alpha))) for alpha in self.simple_coroots]
        if not rows:
            return FiniteAbelianGroup((0,) * self.rank)
        facs = [d for d in invariant_factors(rows) if d != 1]
        free = self.rank - rational_rank(rows)
        return FiniteAbelianGroup(tuple(sorted(facs)) + (0,) * free)

    def center(self):
        """Center of the group: character lattice of the dual mod its roots."""
        return self.dual_datum().component_group()

    def center_order(self):
        return self.center().torsion_order

    # -- duality ---------------------------------------------------------

    def dual_datum(self):
        """Swap roots and coroots; an involution."""
        r, c, n = self.derived_rank, self.central_rank, self.rank
        cartan_t = tuple(tuple(self.cartan[j][i] for j in range(r)) for i in range(r))
        B = [list(row) for row in self.cochar_basis]
        E = transpose(mat_inverse(B))      # dual basis, character side
        Chat = [[self.cartan[i][j] if i < r and j < r else int(i == j)
                 for j in range(n)] for i in range(n)]
        Bd = mat_mul(E, transpose(Chat))
        # the central coordinates are only a Q-basis of the central direction,
        # so each central column may be rescaled; make it primitive integral
        for j in range(r, n):
            col = [Bd[i][j] for i in range(n)]
            denoms = [Fraction(x).denominator for x in col]
            numers = [abs(Fraction(x).numerator) for x in col if x != 0]
            if numers:
                scale = Fraction(lcm(*denoms), gcd(*numers))
                for i in range(n):
                    Bd[i][j] *= scale
        if not is_integral(Bd):
            raise RootDatumError("dual cocharacter basis is not integral")
        name = self.name[:-5] if self.name.endswith("^dual") else self.name + "^dual"
        return RootDatum(name, cartan_t, tuple(tuple(x) for x in to_int(Bd)), c)

    def char_basis(self):
        """Basis of the character lattice, root coordinates (Fraction rows)."""
        return transpose(mat_inverse([list(row) for row in self.cochar_basis]))

    # -- serialization -----------------------------------------------------

    def to_document(self):
        return {
            "name": self.name,
            "cartan": [list(row) for row in self.cartan],
            "lattice": {"basis": [list(row) for row in self.cochar_basis]},
            "central_rank": self.central_rank,
        }


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ----------------------------------------------------------------------
# construction from documents and presets


def _datum_from_doc(doc):
    name = doc.get("name", "datum")
    cartan = tuple(tuple(int(x) for x in row) for row in doc["cartan"])
    r = len(cartan)
    c = int(doc.get("central_rank", 0))
    n = r + c
    lattice = doc.get("lattice", "simply_connected")
    if lattice == "simply_connected":
        B = [[cartan[i][j] if i < r and j < r else int(i == j)
              for j in range(n)] for i in range(n)]
    elif lattice == "adjoint":
        B = [[int(i == j) for j in range(n)] for i in range(n)]
    elif isinstance(lattice, dict) and "basis" in lattice:
        B = [[int(x) for x in row] for row in lattice["basis"]]
    else:
        raise RootDatumError(f"unknown lattice tag {lattice!r}")
    return RootDatum(name, cartan, tuple(tuple(row) for row in B), c)


def load_datum(source):
    """Build a datum from a preset name, a dict, or a JSON document."""
    if isinstance(source, RootDatum):
        return source
    if isinstance(source, dict):
        return _datum_from_doc(source)
    text = source.strip()
    if text in PRESETS:
        return preset(text)
    if text.startswith("{"):
        return _datum_from_doc(json.loads(text))
    raise RootDatumError(f"unknown preset or document: {source!r}")


# Cartan matrices, Bourbaki numbering, cartan[i][j] = <alpha_j, alpha_i^vee>.

def _cartan_A(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]


def _cartan_B(n):
    C = _cartan_A(n)
    C[n - 1][n - 2] = -2   # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
    return C


def _cartan_C(n):
    C = _cartan_A(n)
    C[n - 2][n - 1] = -2   # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
    return C


def _cartan_D(n):
    C = _cartan_A(n)
    C[n - 1][n - 2] = C[n - 2][n - 1] = 0
    C[n - 1][n - 3] = C[n - 3][n - 1] = -1
    return C


def _cartan_E(n):
    # node 2 hangs off node 4 (Bourbaki); chain 1-3-4-5-6(-7)
    chain = [1, 3, 4, 5, 6, 7, 8][:n - 1]
    edges = list(zip(chain, chain[1:])) + [(2, 4)]
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        C[a - 1][b - 1] = C[b - 1][a - 1] = -1
    return C


def _cartan_F4():
    C = _cartan_A(4)
    # alpha_1, alpha_2 long; alpha_3, alpha_4 short
    C[2][1] = -2
    C[1][2] = -1
    return C


def _cartan_G2():
    return [[2, -1], [-3, 2]]


def _hnf_basis(rows, n):
    """Row-span basis (n x n) of an integer lattice given by generator rows."""
    A = [list(map(int, row)) for row in rows]
    basis = []
    for col in range(n):
        piv = None
        for row in A:
            if row[col] != 0 and all(x == 0 for x in row[:col]):
                if piv is None or abs(row[col]) < abs(basis_val := abs(piv[col])):
                    piv = row
        # gcd-reduce all rows with support starting at col
        while True:
            cand = [row for row in A if any(row) and next(i for i, x in enumerate(row) if x) == col]
            if len(cand) <= 1:
                break
            cand.sort(key=lambda row: abs(row[col]))
            a = cand[0]
            for row in cand[1:]:
                q = row[col] // a[col]
                for j in range(n):
                    row[j] -= q * a[j]
        lead = [row for row in A if any(row) and next(i for i, x in enumerate(row) if x) == col]
        if lead:
            row = lead[0]
            if row[col] < 0:
                row = [-x for x in row]
            basis.append(row)
            A = [r for r in A if r is not lead[0]]
            # eliminate column col from remaining rows over Z where possible
            for r2 in A:
                if r2[col] % row[col] == 0:
                    q = r2[col] // row[col]
                    for j in range(n):
                        r2[j] -= q * row[j]
    if len(basis) != n:
        raise RootDatumError("generators do not span a full-rank lattice")
    return basis


def _datum_with_extra_coweights(name, cartan, extras):
    """Lattice generated by the coroots together with extra coweight rows."""
    r = len(cartan)
    rows = [list(row) for row in cartan] + [list(e) for e in extras]
    B = _hnf_basis(rows, r)
    return RootDatum(name, tuple(tuple(row) for row in cartan),
                     tuple(tuple(row) for row in B), 0)


def _fundamental_coweight(r, i):
    return [int(j == i) for j in range(r)]


def _build_presets():
    presets = {}

    def sc(name, cartan):
        presets[name] = lambda c=cartan, nm=name: _datum_from_doc(
            {"name": nm, "cartan": c, "lattice": "simply_connected"})

    def adj(name, cartan):
        presets[name] = lambda c=cartan, nm=name: _datum_from_doc(
            {"name": nm, "cartan": c, "lattice": "adjoint"})

    for n in range(1, 6):
        sc(f"SL{n + 1}", _cartan_A(n))
        adj(f"PGL{n + 1}", _cartan_A(n))
    for n, (s, a) in {2: ("Spin5", "SO5"), 3: ("Spin7", "SO7")}.items():
        sc(s, _cartan_B(n))
        adj(a, _cartan_B(n))
    for n in (2, 3):
        sc(f"Sp{2 * n}", _cartan_C(n))
        adj(f"PSp{2 * n}", _cartan_C(n))
    for n in (4, 5):
        sc(f"Spin{2 * n}", _cartan_D(n))
        adj(f"PSO{2 * n}", _cartan_D(n))
        # vector quotient SO_{2n}: coroots + fundamental coweight 1
        presets[f"SO{2 * n}"] = lambda n=n: _datum_with_extra_coweights(
            f"SO{2 * n}", _cartan_D(n), [_fundamental_coweight(n, 0)])
    # the two half-spin quotients of Spin8
    presets["SO8plus"] = lambda: _datum_with_extra_coweights(
        "SO8plus", _cartan_D(4), [_fundamental_coweight(4, 3)])
    presets["SO8minus"] = lambda: _datum_with_extra_coweights(
        "SO8minus", _cartan_D(4), [_fundamental_coweight(4, 2)])
    for n in (6, 7):
        sc(f"E{n}sc", _cartan_E(n))
        adj(f"PE{n}", _cartan_E(n))
    sc("F4", _cartan_F4())
    sc("G2", _cartan_G2())
    # rows are e_1, e_2 in (coweight, center/2) coordinates: e_i = ±w + z/2
    presets["GL2"] = lambda: RootDatum(
        "GL2", ((2,),), ((1, 1), (-1, 1)), central_rank=1)
    # aliases used throughout the test-bench
    presets["A1"] = presets["SL2"]
    presets["A2"] = presets["SL3"]
    presets["B2"] = presets["Spin5"]
    presets["B3"] = presets["Spin7"]
    presets["C2"] = presets["Sp4"]
    presets["C3"] = presets["Sp6"]
    presets["D4"] = presets["Spin8"]
    return presets


PRESETS = _build_presets()


@lru_cache(maxsize=None)
def preset(name):
    if name not in PRESETS:
        raise RootDatumError(f"unknown preset {name!r}")
    return PRESETS[name]()


def preset_names():
    return sorted(PRESETS)

"""Exact coefficient rings: ZZ, QQ and prime fields F_p.

A ring object bundles the handful of operations the polynomial engine
needs.  Elements are plain ints (ZZ, F_p) or Fractions (QQ), so polynomial
code never has to wrap scalars.
"""

from fractions import Fraction


class RingMismatchError(TypeError):
    pass


class Ring:
    is_field = False

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a in (1, -1)

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ValueError(f"{a} not divisible by {b} in Z")
        return q


class RationalField(Ring):
    name = "Q"
    is_field = True
    characteristic = 0

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def div(self, a, b):
        return Fraction(a) / b


class PrimeField(Ring):
    is_field = True

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F_{p}"
        self.characteristic = p

    def coerce(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p


ZZ = IntegerRing()
QQ = RationalField()

_gf_cache = {}


def GF(p):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def ring_from_name(name):
    """Parse "Q", "Z" or "F<p>" / "F_<p>"."""
    name = name.strip()
    if name == "Q":
        return QQ
    if name == "Z":
        return ZZ
    if name.startswith("F"):
        return GF(int(name.lstrip("F_")))
    raise ValueError(f"unknown ring {name!r}")

"""Exact coefficient rings: arbitrary-precision rationals and integers mod m.

All algebra kernels in this package run over one of these two rings.  Values
are plain ``fractions.Fraction`` (rational mode) or plain ``int`` in
``[0, m)`` (modular mode); the ring object carries the mode and supplies
arithmetic, parsing and random draws.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


class ScalarRing:
    """Base interface; use the RATIONAL singleton or ModularRing(m)."""

    modulus: int | None = None

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def is_field(self) -> bool:
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def to_str(self, value) -> str:
        return str(value)

    def inv(self, value):
        raise NotImplementedError

    def random(self, rng):
        """Bounded random draw: numerator in [-9, 9], denominator in {1,2,3}
        for rationals; uniform residue for modular rings."""
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class RationalRing(ScalarRing):
    zero = Fraction(0)
    one = Fraction(1)

    @property
    def is_field(self) -> bool:
        return True

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} to a rational")

    def parse(self, text: str):
        return Fraction(text)

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(value)

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))

    def key(self):
        return ("Q",)

    def __repr__(self):
        return "RATIONAL"


class ModularRing(ScalarRing):
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = m
        self.zero = 0
        self.one = 1 % m
        self._prime = is_prime(m)

    @property
    def is_field(self) -> bool:
        return self._prime

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.modulus
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator % self.modulus
            return self.coerce(value.numerator) * self.inv(self.coerce(value.denominator)) % self.modulus
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} mod {self.modulus}")

    def parse(self, text: str):
        if "/" in text:
            num, den = text.split("/", 1)
            d = int(den) % self.modulus
            return int(num) % self.modulus * self.inv(d) % self.modulus
        return int(text) % self.modulus

    def inv(self, value):
        value %= self.modulus
        try:
            return pow(value, -1, self.modulus)
        except ValueError:
            raise ZeroDivisionError(
                f"{value} is not invertible mod {self.modulus}") from None

    def random(self, rng):
        return rng.randrange(self.modulus)

    def key(self):
        return ("mod", self.modulus)

    def __repr__(self):
        return f"Z/{self.modulus}"


RATIONAL = RationalRing()


def ring_from_tag(tag) -> ScalarRing:
    """Decode the "scalar" field of an algebra file: "rational" or {"mod": m}."""
    if tag == "rational" or tag is None:
        return RATIONAL
    if isinstance(tag, dict) and "mod" in tag:
        return ModularRing(int(tag["mod"]))
    raise ValueError(f"unknown scalar mode {tag!r}")


def ring_tag(ring: ScalarRing):
    return "rational" if ring.is_rational else {"mod": ring.modulus}


def require_field(ring: ScalarRing, what: str) -> None:
    """Kernel/rank computations need exact division."""
    if not ring.is_field:
        raise ValueError(f"{what} requires rational scalars or a prime modulus, "
                         f"got modulus {ring.modulus}")

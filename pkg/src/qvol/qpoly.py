"""Exact Laurent polynomials in q^(1/4) and the quantum integers built from them.

Exponents are stored in units of q^(1/4), so ``v = q^(1/2)`` has exponent 2 and
``q`` has exponent 4.  Coefficients are Python integers and nothing is ever
rounded.
"""

from __future__ import annotations

import heapq
import json
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "LaurentRatio",
    "DivisionError",
    "PoleError",
    "qint",
    "qfactorial",
    "qfalling",
    "qbinom",
    "qbracket",
    "norms",
    "eval_exact",
    "ONE",
    "ZERO",
    "V",
    "Q",
]

# below this many terms the dict convolution beats packing into big integers
_PACK_THRESHOLD = 48


class DivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` maps an exponent (in quarter powers of q) to a nonzero integer.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        d: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            c = d.get(e, 0) + int(c)
            if c:
                d[e] = c
            else:
                d.pop(e, None)
        self._terms = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "LaurentPoly":
        # d must already be free of zero coefficients
        p = object.__new__(cls)
        p._terms = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({int(exponent): int(coeff)} if coeff else {})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_q(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        """Build from a map of integer powers of q."""
        return cls({4 * e: c for e, c in terms.items()})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def maxdeg(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def mindeg(self) -> int | None:
        return min(self._terms) if self._terms else None

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def l1(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def in_q_lattice(self) -> bool:
        """True when every exponent is an integer power of q."""
        return all(e % 4 == 0 for e in self._terms)

    # ring operations

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        d = dict(self._terms)
        for e, c in other._terms.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                del d[e]
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        if len(b) >= _PACK_THRESHOLD:
            return _packed_mul(self, other)
        d: dict[int, int] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = ea + eb
                d[e] = d.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if self.is_monomial():
                ((e, c),) = self._terms.items()
                if abs(c) == 1:
                    return LaurentPoly.monomial(e * k, c ** (-k))
            raise ValueError("negative powers need a unit monomial")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent: int) -> "LaurentPoly":
        """Multiply by q^(exponent/4)."""
        if not exponent:
            return self
        return LaurentPoly._raw({e + exponent: c for e, c in self._terms.items()})

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        """Substitute q^(1/4) -> q^(factor/4); factor = -1 is the mirror q -> 1/q."""
        return LaurentPoly._raw({e * factor: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        return self.scale_exponents(-1)

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Division with remainder, eliminating the top terms first.

        The remainder has every exponent strictly below ``other.maxdeg``
        relative to the lowest exponent of ``self``.
        """
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return ZERO, ZERO
        if other.is_monomial():
            ((eo, co),) = other._terms.items()
            if all(c % co == 0 for c in self._terms.values()):
                return LaurentPoly._raw({e - eo: c // co for e, c in self._terms.items()}), ZERO
        rem = dict(self._terms)
        dtop = other.maxdeg
        dlen = dtop - other.mindeg
        lead = other._terms[dtop]
        others = [(e - dtop, c) for e, c in other._terms.items() if e != dtop]
        floor = self.mindeg + dlen
        quo: dict[int, int] = {}
        # walk down from the top exponent; new exponents only appear below
        keys = sorted(rem, reverse=True)

        heap = [-e for e in keys]
        heapq.heapify(heap)
        seen = set(keys)
        while heap:
            e = -heapq.heappop(heap)
            seen.discard(e)
            c = rem.get(e, 0)
            if not c:
                continue
            if e < floor:
                break
            qc, r = divmod(c, lead)
            if r:
                raise DivisionError("leading coefficient does not divide")
            qe = e - dtop
            quo[qe] = qc
            del rem[e]
            for oe, oc in others:
                t = qe + dtop + oe
                s = rem.get(t, 0) - qc * oc
                if s:
                    rem[t] = s
                    if t not in seen:
                        seen.add(t)
                        heapq.heappush(heap, -t)
                else:
                    rem.pop(t, None)
        return LaurentPoly._raw(quo), LaurentPoly._raw({e: c for e, c in rem.items() if c})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises :class:`DivisionError` on a nonzero remainder."""
        quo, rem = self.divmod(other)
        if rem:
            raise DivisionError("nonzero remainder in exact division")
        return quo

    def __truediv__(self, other) -> "LaurentRatio":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return LaurentRatio(self, other)

    def __call__(self, x):
        """Evaluate with q^(1/4) = x (any ring supporting ** and +)."""
        return sum((c * x**e for e, c in self._terms.items()), 0 * x)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.pretty()})"

    def pretty(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in sorted(self._terms.items(), reverse=True):
            ex = Fraction(e, 4)
            if ex == 0:
                mono = ""
            elif ex == 1:
                mono = var
            else:
                mono = f"{var}^{ex}" if ex.denominator == 1 and ex > 0 else f"{var}^({ex})"
            if mono:
                cs = "" if c == 1 else "-" if c == -1 else f"{c}*"
            else:
                cs = str(c)
            out.append(cs + mono)
        return " + ".join(out).replace("+ -", "- ")

    # serialization

    def to_json_obj(self) -> dict:
        return {"unit": "q^(1/4)", "terms": [[e, str(c)] for e, c in self.items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        if obj.get("unit") != "q^(1/4)":
            raise ValueError(f"unsupported exponent unit {obj.get('unit')!r}")
        return cls((int(e), int(c)) for e, c in obj["terms"])

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({2: 1})
Q = LaurentPoly._raw({4: 1})


# Kronecker substitution: a polynomial on the lattice lo + step*i becomes the
# integer sum c_i 2^(bits*i); exact as long as every |c_i| < 2^(bits-1).


def _lattice_step(*polys: LaurentPoly) -> int:
    step = 0
    for p in polys:
        lo = p.mindeg
        for e in p._terms:
            step = gcd(step, e - lo)
    return max(step, 1)


def pack(p: LaurentPoly, lo: int, step: int, bits: int) -> int:
    """Encode ``p`` as sum c_i 2^(bits*i) over the lattice lo + step*i."""
    items = sorted(((e - lo) // step, c) for e, c in p._terms.items())
    if not items:
        return 0
    return _pack_range(items, 0, len(items), bits, items[0][0]) << (bits * items[0][0])


def _pack_range(items, i, j, bits, base) -> int:
    # items[i:j] packed relative to slot ``base``; split in halves to stay O(M log M)
    if j - i <= 16:
        acc = 0
        for idx, c in items[i:j]:
            acc += c << (bits * (idx - base))
        return acc
    m = (i + j) // 2
    mid = items[m][0]
    return _pack_range(items, i, m, bits, base) + (
        _pack_range(items, m, j, bits, mid) << (bits * (mid - base))
    )


def unpack(n: int, lo: int, step: int, bits: int) -> LaurentPoly:
    d: dict[int, int] = {}
    half = 1 << (bits - 1)
    full = 1 << bits
    mask = full - 1
    i = 0
    # peel balanced digits; big chunks first keeps this near linear
    if n.bit_length() > 64 * bits:
        return _unpack_split(n, lo, step, bits)
    while n:
        c = n & mask
        if c >= half:
            c -= full
        if c:
            d[lo + step * i] = c
        n = (n - c) >> bits
        i += 1
    return LaurentPoly._raw(d)


def _unpack_split(n: int, lo: int, step: int, bits: int) -> LaurentPoly:
    # divide-and-conquer split at a digit boundary, carrying the sign correctly
    digits = (n.bit_length() + bits - 1) // bits + 1
    half_digits = digits // 2
    cut = bits * half_digits
    low = n & ((1 << cut) - 1)
    # low part is a balanced number only after re-centering
    if low >= (1 << (cut - 1)):
        low -= 1 << cut
    high = (n - low) >> cut
    left = unpack(low, lo, step, bits)
    right = unpack(high, lo + step * half_digits, step, bits)
    d = dict(left._terms)
    d.update(right._terms)
    return LaurentPoly._raw(d)


def _coeff_bits(bound: int) -> int:
    return bound.bit_length() + 2


def _packed_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    step = _lattice_step(a, b)
    bound = min(len(a), len(b)) * a.max_abs_coeff() * b.max_abs_coeff()
    bits = _coeff_bits(bound)
    na = pack(a, a.mindeg, step, bits)
    nb = pack(b, b.mindeg, step, bits)
    return unpack(na * nb, a.mindeg + b.mindeg, step, bits)


class LaurentRatio:
    """Quotient of two Laurent polynomials, compared by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE):
        if isinstance(num, int):
            num = LaurentPoly.constant(num)
        if isinstance(den, int):
            den = LaurentPoly.constant(den)
        if not den:
            raise ZeroDivisionError("LaurentRatio with zero denominator")
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentRatio(other)
        if not isinstance(other, LaurentRatio):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other) -> "LaurentRatio":
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentRatio(other)
        if self.den == other.den:
            return LaurentRatio(self.num + other.num, self.den)
        return LaurentRatio(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "LaurentRatio":
        return LaurentRatio(-self.num, self.den)

    def __sub__(self, other) -> "LaurentRatio":
        return self + (-(other if isinstance(other, LaurentRatio) else LaurentRatio(other)))

    def __mul__(self, other) -> "LaurentRatio":
        if isinstance(other, (int, LaurentPoly)):
            return LaurentRatio(self.num * other, self.den)
        return LaurentRatio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.num

    def to_poly(self) -> LaurentPoly:
        """Exact quotient num/den; raises :class:`DivisionError` if not a polynomial."""
        return self.num.divexact(self.den)

    def __repr__(self) -> str:
        return f"LaurentRatio(({self.num.pretty()}) / ({self.den.pretty()}))"


# quantum integers: {a} = v^a - v^-a with v = q^(1/2)


@lru_cache(maxsize=4096)
def qint(a: int) -> LaurentPoly:
    """The quantum integer {a} = v^a - v^(-a)."""
    if a == 0:
        return ZERO
    return LaurentPoly._raw({2 * a: 1, -2 * a: -1})


def qbracket(a: int) -> LaurentPoly:
    """The balanced quantum integer [a] = {a}/{1} = v^(a-1) + v^(a-3) + ... + v^(1-a)."""
    if a == 0:
        return ZERO
    sign = 1 if a > 0 else -1
    m = abs(a)
    return LaurentPoly._raw({2 * (m - 1 - 2 * i): sign for i in range(m)})


@lru_cache(maxsize=1024)
def qfactorial(a: int) -> LaurentPoly:
    if a < 0:
        raise ValueError("qfactorial of a negative integer")
    if a == 0:
        return ONE
    return qfactorial(a - 1) * qint(a)


@lru_cache(maxsize=65536)
def qfalling(a: int, b: int) -> LaurentPoly:
    """{a}_b = {a}{a-1}...{a-b+1}, computed as a short product."""
    if b < 0 or a < 0:
        raise ValueError("qfalling needs natural arguments")
    if b > a:
        raise ValueError(f"qfalling({a}, {b}) needs b <= a")
    if b == 0:
        return ONE
    return qfalling(a, b - 1) * qint(a - b + 1)


@lru_cache(maxsize=65536)
def qbinom(a: int, b: int) -> LaurentPoly:
    """Symmetric quantum binomial {a}!/({b}!{a-b}!), a polynomial in v^2 up to a shift.

    Built with the v-Pascal rule so no division is needed; the rule is
    exact, and nonnegativity of the coefficients follows from it.
    """
    if b < 0 or b > a:
        raise ValueError(f"qbinom({a}, {b}) needs 0 <= b <= a")
    if b == 0 or b == a:
        return ONE
    # [a,b] = v^b [a-1,b] + v^-(a-b) [a-1,b-1]   (exponents of v)
    return qbinom(a - 1, b).shift(2 * b) + qbinom(a - 1, b - 1).shift(-2 * (a - b))


def norms(f: LaurentPoly) -> dict:
    """l1, squared l2, degrees and span of ``f``; degrees are in powers of q."""
    out = {"l1": f.l1(), "l2sq": sum(c * c for c in f._terms.values())}
    if f:
        out["maxdeg"] = Fraction(f.maxdeg, 4)
        out["mindeg"] = Fraction(f.mindeg, 4)
        out["span"] = Fraction(f.maxdeg - f.mindeg, 4)
    return out


def eval_exact(f: LaurentPoly | LaurentRatio, x) -> Fraction:
    """Exact value of ``f`` with q^(1/4) = x for a nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise PoleError("q^(1/4) = 0 is not allowed")
    if isinstance(f, LaurentRatio):
        den = eval_exact(f.den, x)
        if den == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        return eval_exact(f.num, x) / den
    return sum((c * x**e for e, c in f._terms.items()), Fraction(0))

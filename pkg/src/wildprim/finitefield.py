"""Exact arithmetic in F_{p^f} with deterministic construction.

The modulus of F_{p^f} is the first monic irreducible polynomial of degree
f in value order (integer code sum(c_i * p^i) of the non-leading
coefficients), so the same (p, f) always yields the same field with no
external tables.  Elements are coefficient tuples in the power basis of
the class of x; the element enumeration order used for every "first root"
and "least generator" rule is the same value order on coefficient vectors.

Subfield compatibility is not baked into the moduli; it is provided by the
explicit embed() map, which sends the generator of the small field to the
first root of its modulus inside the big field.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import gfpoly, modrep


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[int]:
    """Prime divisors by trial division (field sizes here stay small)."""
    return gfpoly._prime_divisors(n)


class FFElt:
    """An element of F_{p^f}: a coefficient tuple over Z/p, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FiniteField", coeffs):
        self.field = field
        self.coeffs = tuple(int(c) % field.p for c in coeffs)
        if len(self.coeffs) != field.f:
            raise ValueError("coefficient vector has the wrong length")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FFElt(self.field, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FFElt(self.field, [(a - b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FFElt(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return FFElt(self.field, [a * other for a in self.coeffs])
        self._check(other)
        return FFElt(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FFElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def code(self) -> int:
        """Position in the deterministic element enumeration."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def _check(self, other):
        if not isinstance(other, FFElt) or other.field != self.field:
            raise ValueError("elements belong to different fields")

    def __eq__(self, other):
        return (isinstance(other, FFElt) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.coeffs))

    def __repr__(self):
        return f"FF({self.field.p}^{self.field.f}:{self.code()})"


class FiniteField:
    """F_{p^f} with the deterministic value-least irreducible modulus."""

    def __init__(self, p: int, f: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.f = f
        self.order = p ** f
        self.modulus = self._least_irreducible(p, f)
        # reduction rows: x^(f+k) mod modulus, k = 0..f-2
        self._red = []
        if f > 1:
            base = [(-c) % p for c in self.modulus[:f]]
            cur = list(base)
            for _ in range(f - 1):
                self._red.append(tuple(cur))
                hi = cur[-1]
                cur = [0] + cur[:-1]
                if hi:
                    cur = [(a + hi * b) % p for a, b in zip(cur, base)]
        self.zero = FFElt(self, [0] * f)
        self.one = FFElt(self, [1] + [0] * (f - 1))
        self.gen = FFElt(self, ([0, 1] + [0] * (f - 2)) if f > 1 else [0])

    @staticmethod
    def _least_irreducible(p: int, f: int) -> list[int]:
        if f == 1:
            return [0, 1]  # x
        for code in range(p ** f):
            coeffs = [(code // p ** i) % p for i in range(f)] + [1]
            if gfpoly.is_irreducible(coeffs, p):
                return coeffs
        raise RuntimeError("unreachable: irreducible polynomials exist")

    def _mul(self, a, b):
        p, f = self.p, self.f
        if f == 1:
            return ((a[0] * b[0]) % p,)
        out = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        for k in range(2 * f - 2, f - 1, -1):
            hi = out[k] % p
            out[k] = 0
            if hi:
                red = self._red[k - f]
                for i in range(f):
                    out[i] += hi * red[i]
        return tuple(c % p for c in out[:f])

    def element(self, coeffs) -> FFElt:
        return FFElt(self, coeffs)

    def from_code(self, code: int) -> FFElt:
        return FFElt(self, [(code // self.p ** i) % self.p for i in range(self.f)])

    def from_int(self, n: int) -> FFElt:
        """Image of the rational integer n (prime-subfield element)."""
        return FFElt(self, [n % self.p] + [0] * (self.f - 1))

    def elements(self):
        for code in range(self.order):
            yield self.from_code(code)

    def linear_matrix(self, fn) -> np.ndarray:
        """Matrix over F_p (columns = images of the power basis) of an
        F_p-linear map fn: FFElt -> FFElt."""
        cols = []
        for i in range(self.f):
            e = FFElt(self, [1 if j == i else 0 for j in range(self.f)])
            cols.append(fn(e).coeffs)
        return np.array(cols, dtype=np.int64).T % self.p

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and other.p == self.p
                and other.f == self.f)

    def __hash__(self):
        return hash((self.p, self.f))

    def __repr__(self):
        return f"FiniteField({self.p}, {self.f})"


@lru_cache(maxsize=None)
def field_create(p: int, f: int) -> FiniteField:
    return FiniteField(p, f)


def frobenius(x: FFElt, k: int = 1) -> FFElt:
    """x^(p^k); k may be any integer (negative = inverse Frobenius)."""
    f = x.field.f
    k %= f
    return x ** (x.field.p ** k)


def pth_root(x: FFElt) -> FFElt:
    return frobenius(x, x.field.f - 1)


class Embedding:
    """Ring embedding of a subfield determined by the first-root rule."""

    def __init__(self, sub: FiniteField, sup: FiniteField):
        if sup.f % sub.f or sub.p != sup.p:
            raise ValueError(
                f"no embedding: F_{sub.p}^{sub.f} does not sit inside F_{sup.p}^{sup.f}")
        self.sub = sub
        self.sup = sup
        root = self._first_root()
        self._powers = [sup.one]
        for _ in range(sub.f - 1):
            self._powers.append(self._powers[-1] * root)
        self.root = root
        self._matrix = np.array([pw.coeffs for pw in self._powers],
                                dtype=np.int64).T % sup.p

    def _first_root(self) -> FFElt:
        sub, sup = self.sub, self.sup
        if sub.f == 1:
            return sup.one
        if sub == sup:
            first = sub.gen
        else:
            # The subfield copy inside sup is the kernel of Frob^(sub.f) - id;
            # scan it in enumeration order until one root of the modulus shows.
            frob_mat = sup.linear_matrix(lambda e: frobenius(e, sub.f))
            eye = np.eye(sup.f, dtype=np.int64)
            rows = modrep.kernel((frob_mat - eye) % sup.p, sup.p)
            first = None
            for code in range(1, sup.p ** rows.shape[0]):
                combo = np.zeros(sup.f, dtype=np.int64)
                for i in range(rows.shape[0]):
                    digit = (code // sup.p ** i) % sup.p
                    if digit:
                        combo = (combo + digit * rows[i]) % sup.p
                y = FFElt(sup, combo.tolist())
                if _poly_at(sub.modulus, y).is_zero():
                    first = y
                    break
            if first is None:
                raise RuntimeError("modulus has no root in the subfield copy")
        # all roots form one Frobenius orbit; the rule wants the least one
        orbit = [first]
        for _ in range(sub.f - 1):
            orbit.append(frobenius(orbit[-1]))
        return min(orbit, key=lambda y: y.code())

    def __call__(self, x: FFElt) -> FFElt:
        if x.field != self.sub:
            raise ValueError("element is not in the source field")
        out = self.sup.zero
        for c, pw in zip(x.coeffs, self._powers):
            if c:
                out = out + c * pw
        return out

    def section(self, y: FFElt) -> FFElt:
        """Preimage of y; raises ValueError when y is outside the image."""
        sol = modrep.solve(self._matrix, np.array(y.coeffs, dtype=np.int64), self.sup.p)
        return FFElt(self.sub, sol.tolist())


def _poly_at(poly: list[int], x: FFElt) -> FFElt:
    acc = x.field.zero
    for c in reversed(poly):
        acc = acc * x + x.field.from_int(c)
    return acc


@lru_cache(maxsize=None)
def embed(sub: FiniteField, sup: FiniteField) -> Embedding:
    return Embedding(sub, sup)


def trace_to(x: FFElt, sub: FiniteField) -> FFElt:
    """Trace of x down to (an abstract copy of) the subfield sub."""
    F = x.field
    if F.f % sub.f or F.p != sub.p:
        raise ValueError("trace target is not a subfield")
    acc = x
    term = x
    for _ in range(F.f // sub.f - 1):
        term = frobenius(term, sub.f)
        acc = acc + term
    if sub.f == F.f:
        return acc if sub == F else FFElt(sub, acc.coeffs)
    return embed(sub, F).section(acc)


def abs_trace(x: FFElt) -> int:
    """Trace to the prime field, as an integer in [0, p)."""
    return trace_to(x, field_create(x.field.p, 1)).coeffs[0]


def find_generator(F: FiniteField) -> FFElt:
    """First element (value order) of maximal multiplicative order q - 1."""
    target = F.order - 1
    if target == 1:
        return F.one
    primes = factorize(target)
    for code in range(1, F.order):
        x = F.from_code(code)
        if all(x ** (target // ell) != F.one for ell in primes):
            return x
    raise RuntimeError("unreachable: the unit group is cyclic")


def first_element_of_order(F: FiniteField, e: int) -> FFElt:
    """First element (value order) of exact multiplicative order e.

    Found by listing the e-th roots of unity through the subfield they
    generate, so no scan of the big field is needed.
    """
    if e == 1:
        return F.one
    if (F.order - 1) % e:
        raise ValueError(f"no elements of order {e} in F_{F.p}^{F.f}")
    j = 1
    while (F.p ** j - 1) % e:
        j += 1
    sub = field_create(F.p, j)
    g = find_generator(sub)
    zeta0 = embed(sub, F)(g ** ((sub.order - 1) // e))
    candidates = [zeta0 ** k for k in range(1, e) if _gcd(k, e) == 1]
    return min(candidates, key=lambda y: y.code())


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve_artin_schreier(c: FFElt, b: FFElt):
    """Some x with x^p + c*x = b, or None; the map is F_p-linear in x."""
    F = c.field
    if b.field is not F:
        raise ValueError("arguments lie in different fields")
    A = F.linear_matrix(lambda e: e ** F.p + c * e)
    try:
        sol = modrep.solve(A, np.array(b.coeffs, dtype=np.int64), F.p)
    except ValueError:
        return None
    return FFElt(F, sol.tolist())

"""Truncated exact arithmetic in the valuation ring of a tame tower field.

Mixed characteristic: elements live in W(F_q')/p^m [pi] / (pi^e - p), the
unramified coefficient ring (a nested polynomial ring (Z/p^m)[x]/(h) for a
lifted residue modulus h) with a ramified layer pi whose e-th power is p.
An element is an (e, f') int64 array of coefficient polynomials plus a
validity window w: the element is known modulo pi^w.  All stored elements
are integral (valuation >= 0); window bookkeeping is conservative
(min of the operand windows), which is exact for integral elements.

Equal characteristic: elements are finite Laurent combinations
{exponent -> residue coefficient} in the uniformizer u with u^e = t; the
pipeline needs no truncation here, so arithmetic is exact (window None)
except for series inverses, which are computed to the ring's precision.

Zero detection at exhausted precision raises PrecisionExhausted rather
than guessing: a silently truncated valuation would corrupt every
filtration index downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PrecisionExhausted
from .finitefield import FFElt, FiniteField, field_create


def default_precision(p: int, e: int) -> int:
    """Class reduction never looks past level p*e/(p-1); the slack absorbs
    precision loss in intermediate products."""
    return p * e // (p - 1) + e + 8


class CoeffRing:
    """W(F_{p^f})/p^m as (Z/p^m)[x]/(h), h the lifted residue modulus."""

    def __init__(self, residue: FiniteField, m: int):
        self.residue = residue
        self.p = residue.p
        self.f = residue.f
        self.m = m
        self.pm = self.p ** m
        self.h = np.array(residue.modulus, dtype=np.int64)  # degree f, monic
        # reduction matrix: row k = x^(f+k) mod h, k = 0..f-2 (over Z/p^m)
        f_ = self.f
        red = np.zeros((max(f_ - 1, 0), f_), dtype=np.int64)
        if f_ > 1:
            base = (-self.h[:f_]) % self.pm
            cur = base.copy()
            for k in range(f_ - 1):
                red[k] = cur
                hi = cur[-1]
                cur = np.roll(cur, 1)
                cur[0] = 0
                if hi:
                    cur = (cur + hi * base) % self.pm
        self._red = red
        self._frob = None

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.f == 1:
            return (a * b) % self.pm
        wide = np.convolve(a, b)
        return self.reduce_wide(wide[None, :])[0]

    def reduce_wide(self, wide: np.ndarray) -> np.ndarray:
        """Reduce rows of length 2f-1 modulo h (and p^m)."""
        f_ = self.f
        if f_ == 1:
            return wide % self.pm
        if wide.shape[1] < 2 * f_ - 1:
            pad = np.zeros((wide.shape[0], 2 * f_ - 1 - wide.shape[1]), dtype=np.int64)
            wide = np.concatenate([wide, pad], axis=1)
        return (wide[:, :f_] + wide[:, f_:] @ self._red) % self.pm

    def one(self) -> np.ndarray:
        out = np.zeros(self.f, dtype=np.int64)
        out[0] = 1
        return out

    def lift(self, a: FFElt) -> np.ndarray:
        return np.array(a.coeffs, dtype=np.int64)

    def residue_of(self, c: np.ndarray) -> FFElt:
        return FFElt(self.residue, (c % self.p).tolist())

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        out = self.one()
        base = a % self.pm
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: np.ndarray) -> np.ndarray:
        r = self.residue_of(a)
        if r.is_zero():
            raise ZeroDivisionError("inverse of a non-unit coefficient")
        y = self.lift(r.inverse())
        two = self.one() * 2
        steps = max(1, (self.m - 1).bit_length() + 1)
        for _ in range(steps):
            y = self.mul(y, (two - self.mul(a, y)) % self.pm)
        return y

    def teichmuller(self, a: FFElt) -> np.ndarray:
        """The unique lift with z^(p^f) = z and residue a."""
        z = self.lift(a)
        for _ in range(self.m + 1):
            z = self.pow(z, self.p ** self.f)
        return z

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix (columns = images of x^j) of the p-power Frobenius lift,
        the ring map sending x to the Hensel root of h congruent to x^p."""
        if self._frob is not None:
            return self._frob
        f_ = self.f
        if f_ == 1:
            self._frob = np.eye(1, dtype=np.int64)
            return self._frob
        gen = self.residue.gen
        r = self.lift(gen ** self.p)
        hp = np.array([(i * int(self.h[i])) % self.pm for i in range(1, f_ + 1)],
                      dtype=np.int64)
        for _ in range((self.m - 1).bit_length() + 1):
            hr = self._poly_at(self.h, r)
            dr = self._poly_at(hp, r)
            r = (r - self.mul(hr, self.inv(dr))) % self.pm
        assert not np.any(self._poly_at(self.h, r)), "Hensel lift failed"
        cols = [self.one()]
        for _ in range(f_ - 1):
            cols.append(self.mul(cols[-1], r))
        self._frob = np.stack(cols, axis=1)
        return self._frob

    def _poly_at(self, poly: np.ndarray, z: np.ndarray) -> np.ndarray:
        acc = np.zeros(self.f, dtype=np.int64)
        for c in poly[::-1]:
            acc = self.mul(acc, z)
            acc[0] = (acc[0] + int(c)) % self.pm
        return acc


@dataclass(frozen=True)
class RingDesc:
    """Descriptor of the valuation ring of one tower field."""
    char: int            # 0 for mixed characteristic, else p
    p: int
    fprime: int          # residue degree over the prime field
    e: int               # ramification index (pi^e = p, resp. u^e = t)
    prec: int            # working uniformizer-adic precision
    m: int               # coefficient precision, powers of p (char 0 only)
    residue: FiniteField = field(compare=False)
    coeff: CoeffRing | None = field(compare=False)

    @property
    def full_window(self) -> int:
        return self.m * self.e if self.char == 0 else 1 << 60


def ring_create(char: int, p: int, fprime: int, e: int, prec: int | None = None) -> RingDesc:
    if e % p == 0:
        raise ValueError("ramification index must be prime to p")
    if prec is None:
        prec = default_precision(p, e)
    residue = field_create(p, fprime)
    if char == 0:
        m = -(-prec // e) + 2
        return RingDesc(0, p, fprime, e, prec, m, residue, CoeffRing(residue, m))
    if char != p:
        raise ValueError("characteristic must be 0 or p")
    return RingDesc(p, p, fprime, e, prec, 0, residue, None)


class RingElt:
    """One element, char 0: data (e, f') mod p^m; char p: {exp: FFElt}."""

    __slots__ = ("ring", "data", "window")

    def __init__(self, ring: RingDesc, data, window=None):
        self.ring = ring
        if ring.char == 0:
            self.data = np.asarray(data, dtype=np.int64) % ring.coeff.pm
            self.window = ring.full_window if window is None else min(window, ring.full_window)
        else:
            self.data = {int(k): v for k, v in data.items() if not v.is_zero()}
            self.window = ring.full_window if window is None else window
            self.data = {k: v for k, v in self.data.items() if k < self.window}

    # ---- constructors ----

    @staticmethod
    def zero(ring: RingDesc) -> "RingElt":
        if ring.char == 0:
            return RingElt(ring, np.zeros((ring.e, ring.fprime), dtype=np.int64))
        return RingElt(ring, {})

    @staticmethod
    def one(ring: RingDesc) -> "RingElt":
        if ring.char == 0:
            data = np.zeros((ring.e, ring.fprime), dtype=np.int64)
            data[0, 0] = 1
            return RingElt(ring, data)
        return RingElt(ring, {0: ring.residue.one})

    @staticmethod
    def uniformizer(ring: RingDesc, power: int = 1) -> "RingElt":
        return RingElt.monomial(ring, power, ring.residue.one)

    @staticmethod
    def monomial(ring: RingDesc, power: int, a: FFElt) -> "RingElt":
        """a * pi^power (char 0 lifts a coefficientwise; power may be negative
        only in equal characteristic)."""
        if ring.char == 0:
            if power < 0:
                raise ValueError("negative uniformizer powers only exist in char p")
            q, r = divmod(power, ring.e)
            data = np.zeros((ring.e, ring.fprime), dtype=np.int64)
            data[r] = pow(ring.p, q, ring.coeff.pm) * ring.coeff.lift(a) % ring.coeff.pm
            return RingElt(ring, data)
        return RingElt(ring, {power: a})

    @staticmethod
    def from_int(ring: RingDesc, n: int) -> "RingElt":
        if ring.char == 0:
            data = np.zeros((ring.e, ring.fprime), dtype=np.int64)
            data[0, 0] = n % ring.coeff.pm
            return RingElt(ring, data)
        return RingElt(ring, {0: ring.residue.from_int(n)})

    @staticmethod
    def teichmuller(ring: RingDesc, a: FFElt) -> "RingElt":
        """Multiplicative lift of a residue element (char 0)."""
        if ring.char != 0:
            return RingElt(ring, {0: a})
        data = np.zeros((ring.e, ring.fprime), dtype=np.int64)
        data[0] = ring.coeff.teichmuller(a)
        return RingElt(ring, data)

    # ---- arithmetic ----

    def _check(self, other: "RingElt"):
        if other.ring != self.ring:
            raise ValueError("operands from different rings")

    def __add__(self, other):
        self._check(other)
        w = min(self.window, other.window)
        if self.ring.char == 0:
            return RingElt(self.ring, self.data + other.data, w)
        out = dict(self.data)
        for k, v in other.data.items():
            s = out.get(k, self.ring.residue.zero) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return RingElt(self.ring, out, w)

    def __neg__(self):
        if self.ring.char == 0:
            return RingElt(self.ring, -self.data, self.window)
        return RingElt(self.ring, {k: -v for k, v in self.data.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ring = self.ring
        if ring.char == 0:
            w = min(self.window, other.window)
            e, f = ring.e, ring.fprime
            wide = np.zeros((2 * e - 1, 2 * f - 1), dtype=np.int64)
            for i in range(e):
                if not np.any(self.data[i]):
                    continue
                for j in range(e):
                    if not np.any(other.data[j]):
                        continue
                    if f == 1:
                        wide[i + j, 0] += self.data[i, 0] * other.data[j, 0]
                    else:
                        wide[i + j, :] += np.convolve(self.data[i], other.data[j])
            for k in range(2 * e - 2, e - 1, -1):
                wide[k - e] += ring.p * wide[k]
            return RingElt(ring, ring.coeff.reduce_wide(wide[:e]), w)
        # char p: exact Laurent convolution; error terms x*dy + dx*y
        w = min(self._err_val(other), other._err_val(self))
        out: dict[int, FFElt] = {}
        for i, a in self.data.items():
            for j, b in other.data.items():
                k = i + j
                s = out.get(k, ring.residue.zero) + a * b
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return RingElt(ring, out, w)

    def _err_val(self, other: "RingElt") -> int:
        if other.window >= other.ring.full_window:
            return self.ring.full_window
        v = min(self.data) if self.data else 0
        return v + other.window

    def pth_power(self) -> "RingElt":
        if self.ring.char == 0:
            out = self
            for _ in range(self.ring.p - 1):
                out = out * self
            return out
        # freshman's dream: coefficientwise Frobenius, exponents times p
        return RingElt(self.ring, {k * self.ring.p: v ** self.ring.p
                                   for k, v in self.data.items()},
                       self.window if self.window >= self.ring.full_window
                       else self.window * self.ring.p)

    def inv(self) -> "RingElt":
        ring = self.ring
        if self.val() != 0:
            raise ZeroDivisionError("inverse of a non-unit")
        r = self.leading()[1]
        y = RingElt.monomial(ring, 0, r.inverse()) if ring.char != 0 else \
            RingElt(ring, _const_data(ring, ring.coeff.lift(r.inverse())))
        two = RingElt.from_int(ring, 2)
        if ring.char == 0:
            steps = max(1, (ring.full_window - 1).bit_length() + 1)
        else:
            y = RingElt(ring, y.data, ring.prec)
            steps = max(1, (ring.prec - 1).bit_length() + 1)
        for _ in range(steps):
            y = y * (two - self * y)
        if ring.char == 0:
            return RingElt(ring, y.data, self.window)
        return RingElt(ring, y.data, min(self.window, ring.prec))

    # ---- valuation and digits ----

    def _stored_val(self):
        ring = self.ring
        if ring.char == 0:
            best = None
            for i in range(ring.e):
                row = self.data[i]
                nz = row[row != 0]
                if nz.size == 0:
                    continue
                vp = 0
                vals = nz.copy()
                while np.all(vals % ring.p == 0):
                    vals //= ring.p
                    vp += 1
                cand = i + ring.e * vp
                if best is None or cand < best:
                    best = cand
            return best
        return min(self.data) if self.data else None

    def val(self) -> int:
        v = self._stored_val()
        if v is None or v >= self.window:
            raise PrecisionExhausted(
                "element is indistinguishable from zero at the working precision")
        return v

    def val_at_most(self, bound: int):
        """val() if it is <= bound, else None (certified).  Needs window > bound."""
        if self.window <= bound:
            raise PrecisionExhausted(
                f"window {self.window} cannot certify valuations up to {bound}")
        v = self._stored_val()
        if v is None or v > bound:
            return None
        return v

    def leading(self) -> tuple[int, FFElt]:
        v = self.val()
        shifted = self.divide_uniformizer_power(v)
        ring = self.ring
        if ring.char == 0:
            return v, ring.coeff.residue_of(shifted.data[0])
        return v, shifted.data[0]

    def divide_uniformizer_power(self, k: int) -> "RingElt":
        ring = self.ring
        if k == 0:
            return self
        if ring.char != 0:
            # Laurent elements: negative exponents are legal in char p.
            return RingElt(ring, {exp - k: v for exp, v in self.data.items()},
                           self.window - k if self.window < ring.full_window else None)
        e = ring.e
        out = np.zeros_like(self.data)
        for i in range(e):
            row = self.data[i]
            if not np.any(row):
                continue
            q, r = divmod(i - k, e)
            if q >= 0:
                out[r] = (out[r] + row * ring.p ** q) % ring.coeff.pm
            else:
                div = ring.p ** (-q)
                if np.any(row % div):
                    raise ValueError(f"valuation below {k}: division is not exact")
                out[r] = (out[r] + row // div) % ring.coeff.pm
        return RingElt(ring, out, self.window - k)

    def residue(self) -> FFElt:
        if self.ring.char == 0:
            return self.ring.coeff.residue_of(self.data[0])
        return self.data.get(0, self.ring.residue.zero)

    def agrees_with(self, other: "RingElt") -> bool:
        """Equality up to the smaller validity window."""
        self._check(other)
        diff = self - other
        v = diff._stored_val()
        return v is None or v >= diff.window

    def is_zero_to_window(self) -> bool:
        return self._stored_val() is None or self._stored_val() >= self.window

    def __repr__(self):
        return f"RingElt(window={self.window})"


def _const_data(ring: RingDesc, coeff_vec: np.ndarray) -> np.ndarray:
    data = np.zeros((ring.e, ring.fprime), dtype=np.int64)
    data[0] = coeff_vec
    return data

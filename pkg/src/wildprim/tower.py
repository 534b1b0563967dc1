"""The tame splitting tower over an absolutely unramified base field.

For a base with residue cardinality q = p^f and a degree parameter n, the
tower top is the maximal abelian extension of exponent e = p^n - 1 of the
unramified extension picking up the e-th roots of unity.  Its Galois group
over the base is generated by an inertia generator sigma of order e and a
Frobenius lift phi of order s*e (s = multiplicative order of q mod e),
subject to phi sigma phi^{-1} = sigma^q; the extension of the residue
Galois group by inertia is split, and we fix once and for all the section
in which phi acts trivially on the uniformizer.

Concretely the top is realized as unramified coefficients of residue
degree f*s*e adjoined a uniformizer with pi^e = p (u^e = t in equal
characteristic); sigma multiplies pi by a fixed primitive e-th root of
unity zeta (the first element of order e in the enumeration order,
Teichmueller-lifted in characteristic 0) and phi applies the q-power
Frobenius to coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finitefield import (FFElt, embed, field_create, first_element_of_order,
                          frobenius)
from .localring import RingElt, ring_create


@dataclass(frozen=True)
class BaseField:
    """Absolutely unramified base: Q_p-unramified of degree f, or F_{p^f}((t))."""
    p: int
    f: int
    char: int  # 0 or p

    def __post_init__(self):
        if self.char not in (0, self.p):
            raise ValueError("characteristic must be 0 or p")
        if self.f < 1:
            raise ValueError("residue degree must be positive")
        field_create(self.p, self.f)  # validates primality of p

    @property
    def q(self) -> int:
        return self.p ** self.f

    def describe(self) -> dict:
        return {"p": self.p, "f": self.f, "char": "0" if self.char == 0 else "p"}


def _mult_order(a: int, modulus: int) -> int:
    if modulus == 1:
        return 1
    a %= modulus
    k, acc = 1, a
    while acc != 1:
        acc = acc * a % modulus
        k += 1
    return k


GroupElt = tuple[int, int]  # (inertia exponent a mod e, Frobenius exponent b mod s*e)


class TameTower:
    """Tower data plus the explicit action of its Galois group."""

    def __init__(self, base: BaseField, n: int, precision: int | None = None,
                 max_residue_degree: int = 64):
        if n < 1:
            raise ValueError("the degree parameter n must be positive")
        self.base = base
        self.n = n
        self.p = base.p
        self.e = base.p ** n - 1
        self.s = _mult_order(base.q, self.e) if self.e > 1 else 1
        self.fprime = base.f * self.s * self.e
        if self.fprime > max_residue_degree:
            raise ValueError(
                f"residue degree {self.fprime} exceeds the configured bound "
                f"{max_residue_degree}")
        self.residue = field_create(base.p, self.fprime)
        if self.e == 1:
            # degenerate tower: the top is the base itself
            self.ring = ring_create(base.char, base.p, self.fprime, 1, precision)
            self.zeta = self.residue.one
        else:
            self.ring = ring_create(base.char, base.p, self.fprime, self.e, precision)
            self.zeta = first_element_of_order(self.residue, self.e)
        self.base_residue = field_create(base.p, base.f)
        self.base_embedding = embed(self.base_residue, self.residue)
        self.group_order = self.s * self.e * self.e
        self.sigma: GroupElt = (1 % self.e, 0)
        self.phi: GroupElt = (0, 1 % (self.s * self.e))
        if base.char == 0:
            co = self.ring.coeff
            self._zeta_pows = [co.teichmuller(self.zeta ** i) for i in range(self.e)]
            F1 = co.frobenius_matrix()
            self._frob_pows = [np.eye(co.f, dtype=np.int64)]
            for _ in range(self.fprime - 1):
                self._frob_pows.append((F1 @ self._frob_pows[-1]) % co.pm)
        else:
            self._zeta_pows = None
            self._frob_pows = None

    # ---- group structure ----

    def identity(self) -> GroupElt:
        return (0, 0)

    def compose(self, g: GroupElt, h: GroupElt) -> GroupElt:
        a, b = g
        a2, b2 = h
        return ((a + pow(self.base.q, b, self.e) * a2) % self.e,
                (b + b2) % (self.s * self.e))

    def inverse(self, g: GroupElt) -> GroupElt:
        a, b = g
        se = self.s * self.e
        qb = pow(self.base.q, b, self.e)
        qinv = pow(qb, -1, self.e) if self.e > 1 else 0
        return ((-a * qinv) % self.e, (-b) % se)

    def group_elements(self) -> list[GroupElt]:
        return [(a, b) for a in range(self.e) for b in range(self.s * self.e)]

    def word(self, g: GroupElt, sigma_val, phi_val, mul, one):
        """Evaluate sigma^a * phi^b in any monoid (used for matrix words)."""
        a, b = g
        out = one
        for _ in range(a):
            out = mul(out, sigma_val)
        for _ in range(b):
            out = mul(out, phi_val)
        return out

    # ---- action on the ring ----

    def apply(self, g: GroupElt, x: RingElt) -> RingElt:
        """The automorphism sigma^a . phi^b applied to x."""
        if x.ring != self.ring:
            raise ValueError("element does not live in this tower's ring")
        a, b = g
        if self.base.char == 0:
            co = self.ring.coeff
            data = x.data
            if b:
                Fb = self._frob_pows[(self.base.f * b) % self.fprime]
                data = (data @ Fb.T) % co.pm
            if a and self.e > 1:
                out = np.empty_like(data)
                for i in range(self.e):
                    out[i] = co.mul(data[i], self._zeta_pows[(a * i) % self.e])
                data = out
            return RingElt(self.ring, data, x.window)
        zk = self.zeta
        out = {}
        for k, v in x.data.items():
            w = frobenius(v, (self.base.f * b) % self.fprime) if b else v
            if a and self.e > 1:
                w = w * zk ** ((a * k) % self.e)
            if not w.is_zero():
                out[k] = w
        return RingElt(self.ring, out,
                       None if x.window >= self.ring.full_window else x.window)

    def lift_base_residue(self, a: FFElt) -> RingElt:
        """Teichmueller (resp. constant) lift of a base residue element."""
        img = self.base_embedding(a)
        if self.base.char == 0:
            return RingElt.teichmuller(self.ring, img)
        return RingElt.monomial(self.ring, 0, img)

    def describe(self) -> dict:
        return {
            "base": self.base.describe(),
            "n": self.n,
            "ram_index": self.e,
            "frobenius_order": self.s * self.e,
            "residue_degree": self.fprime,
            "group_order": self.group_order,
            "precision": self.ring.prec,
            "residue_modulus": list(self.residue.modulus),
            "zeta_code": self.zeta.code(),
        }


def build_tower(base: BaseField, n: int, precision: int | None = None,
                max_residue_degree: int = 64) -> TameTower:
    return TameTower(base, n, precision, max_residue_degree)

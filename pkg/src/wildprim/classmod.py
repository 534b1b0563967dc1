"""The filtered class module of a tower top, as an explicit F_p-space.

Mixed characteristic: the multiplicative group modulo p-th powers.  The
filtration-adapted basis has one uniformizer-class vector (index 0 by
convention), one unit vector 1 + w(a_j) pi^i per residue basis element a_j
and per index 1 <= i < p*e/(p-1) prime to p (w = Teichmueller lift), and
one boundary vector at index p*e/(p-1) whose residue coefficient b_0 is
the first element outside the image of a -> a^p + c a, c the residue of
p / pi^e.  Total dimension = [top : Q_p] + 2.

Equal characteristic: the additive group modulo x^p - x, materialized up
to a pole-order bound B: one constant vector (any residue element of
absolute trace 1) and one vector a_j u^{-i} per residue basis element and
pole order 1 <= i <= B prime to p.

reduce_class expresses an arbitrary element in this basis by peeling
leading filtration coefficients; every step strictly increases the level,
so it terminates within the precision window.  The recorded coordinates
are exact: each strip divides (resp. subtracts) the actual product of
basis representatives, never an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import modrep
from .errors import InvariantViolation
from .finitefield import abs_trace, pth_root, solve_artin_schreier
from .localring import RingElt
from .tower import GroupElt, TameTower


@dataclass
class BasisVector:
    kind: str          # uniformizer-class | unit-level | boundary | pole-level | constant
    level: int         # filtration index (char 0) or pole order (char p)
    j: int             # residue-basis position
    rep: RingElt


class ClassBasis:
    def __init__(self, tower: TameTower, vectors: list[BasisVector],
                 level_bound: int | None = None, aux: dict | None = None):
        self.tower = tower
        self.char = tower.base.char
        self.vectors = vectors
        self.dim = len(vectors)
        self.level_bound = level_bound
        self._pos = {(v.kind, v.level, v.j): i for i, v in enumerate(vectors)}
        self.aux = aux or {}

    def position(self, kind: str, level: int, j: int = 0) -> int:
        return self._pos[(kind, level, j)]

    def levels(self) -> np.ndarray:
        return np.array([v.level for v in self.vectors], dtype=np.int64)

    @property
    def boundary_level(self) -> int:
        return self.aux["boundary_level"]

    @property
    def c_index(self) -> int:
        """The integer c with e = c (p - 1) (char 0)."""
        return self.aux["c_index"]


def kummer_basis(tower: TameTower) -> ClassBasis:
    """Filtration-adapted basis of the Kummer module (char 0)."""
    if tower.base.char != 0:
        raise ValueError("Kummer basis requires a characteristic-0 tower")
    ring = tower.ring
    p, e = tower.p, ring.e
    F = tower.residue
    c = e // (p - 1)
    bl = p * c
    one = RingElt.one(ring)

    vectors = [BasisVector("uniformizer-class", 0, 0, RingElt.uniformizer(ring))]
    for i in range(1, bl):
        if i % p == 0:
            continue
        pi_i = RingElt.uniformizer(ring, i)
        for j in range(F.f):
            a = F.from_code(p ** j)  # power-basis element x^j
            vectors.append(BasisVector(
                "unit-level", i, j, one + RingElt.teichmuller(ring, a) * pi_i))

    # boundary data: the twisted equation x^p + c_res x = a decides solvability
    c_res = RingElt.from_int(ring, p).divide_uniformizer_power(e).residue()
    as_matrix = F.linear_matrix(lambda t: t ** p + c_res * t)
    im_rows = modrep.image(as_matrix, p)
    if im_rows.shape[0] != F.f - 1:
        raise InvariantViolation(
            "boundary map image must have corank 1 (p-torsion present)")
    b0 = None
    for code in range(1, F.order):
        cand = F.from_code(code)
        if not modrep.in_row_space(im_rows, np.array(cand.coeffs), p):
            b0 = cand
            break
    assert b0 is not None
    vectors.append(BasisVector(
        "boundary", bl, 0,
        one + RingElt.teichmuller(ring, b0) * RingElt.uniformizer(ring, bl)))

    basis = ClassBasis(tower, vectors, aux={
        "c_index": c, "boundary_level": bl, "c_res": c_res, "b0": b0,
        "inv_reps": {i: v.rep.inv() for i, v in enumerate(vectors)
                     if v.kind != "uniformizer-class"},
    })
    expected = tower.group_order * tower.base.f + 2
    if basis.dim != expected:
        raise InvariantViolation(
            f"Kummer basis dimension {basis.dim} != {expected}")
    return basis


def artinschreier_basis(tower: TameTower, level_bound: int) -> ClassBasis:
    """Filtration-adapted basis of the additive class module up to pole
    order level_bound (char p)."""
    if tower.base.char == 0:
        raise ValueError("Artin-Schreier basis requires an equal-characteristic tower")
    if level_bound < 1:
        raise ValueError("the level bound must be positive")
    ring = tower.ring
    p = tower.p
    F = tower.residue
    c0 = next(F.from_code(code) for code in range(F.order)
              if abs_trace(F.from_code(code)) == 1)
    vectors = [BasisVector("constant", 0, 0, RingElt.monomial(ring, 0, c0))]
    for i in range(1, level_bound + 1):
        if i % p == 0:
            continue
        for j in range(F.f):
            a = F.from_code(p ** j)
            vectors.append(BasisVector("pole-level", i, j,
                                       RingElt.monomial(ring, -i, a)))
    return ClassBasis(tower, vectors, level_bound=level_bound,
                      aux={"constant": c0, "boundary_level": 0})


def reduce_class(basis: ClassBasis, x: RingElt) -> np.ndarray:
    """Coordinates of the class of x in the filtration-adapted basis."""
    if basis.char == 0:
        return _reduce_kummer(basis, x)
    return _reduce_artinschreier(basis, x)


def _reduce_kummer(basis: ClassBasis, x: RingElt) -> np.ndarray:
    tower = basis.tower
    ring = tower.ring
    p = tower.p
    F = tower.residue
    bl = basis.boundary_level
    c = basis.c_index
    c_res = basis.aux["c_res"]
    b0 = basis.aux["b0"]
    inv_reps = basis.aux["inv_reps"]
    one = RingElt.one(ring)
    coords = np.zeros(basis.dim, dtype=np.int64)

    v = x.val()
    coords[basis.position("uniformizer-class", 0)] = v % p
    u = x.divide_uniformizer_power(v)
    # the prime-to-p part of the unit is p-divisible: kill it multiplicatively
    u = u * RingElt.teichmuller(ring, u.residue().inverse())

    while True:
        w = u - one
        lv = w.val_at_most(bl)
        if lv is None:
            break
        a = w.divide_uniformizer_power(lv).residue()
        if lv == bl:
            tau = None
            for t in range(p):
                sol = solve_artin_schreier(c_res, a - t * b0)
                if sol is not None:
                    tau = t
                    break
            assert tau is not None, "boundary cokernel must have order p"
            # a != 0 forces tau > 0 or sol != 0, so the strip is never trivial
            strip = one
            if tau:
                coords[basis.position("boundary", bl)] = tau
                bd_inv = inv_reps[basis.position("boundary", bl)]
                for _ in range(tau):
                    strip = strip * bd_inv
            if not sol.is_zero():
                lift = one + RingElt.monomial(ring, c, sol)
                strip = strip * lift.pth_power().inv()
            u = u * strip
            continue
        if lv % p == 0:
            b = pth_root(a)
            lift = one + RingElt.monomial(ring, lv // p, b)
            u = u * lift.pth_power().inv()
            continue
        strip = one
        for j, cj in enumerate(a.coeffs):
            if cj:
                coords[basis.position("unit-level", lv, j)] = cj
                inv = inv_reps[basis.position("unit-level", lv, j)]
                for _ in range(cj):
                    strip = strip * inv
        u = u * strip
    return coords


def _reduce_artinschreier(basis: ClassBasis, x: RingElt) -> np.ndarray:
    tower = basis.tower
    p = tower.p
    F = tower.residue
    B = basis.level_bound
    coords = np.zeros(basis.dim, dtype=np.int64)
    # positive-valuation tails lie in the image of y -> y^p - y on the
    # maximal ideal; discard them exactly
    work = {k: v for k, v in x.data.items() if k <= 0}
    const = work.pop(0, None)
    if const is not None:
        coords[basis.position("constant", 0)] = abs_trace(const)
    while work:
        k = min(work)
        a = work.pop(k)
        i = -k
        if i % p == 0:
            b = pth_root(a)
            k2 = -(i // p)
            if k2 == 0:
                coords[basis.position("constant", 0)] = (
                    coords[basis.position("constant", 0)] + abs_trace(b)) % p
            else:
                prev = work.get(k2, F.zero)
                s = prev + b
                if s.is_zero():
                    work.pop(k2, None)
                else:
                    work[k2] = s
            continue
        if i > B:
            raise InvariantViolation(
                f"pole order {i} exceeds the materialized level bound {B}")
        for j, cj in enumerate(a.coeffs):
            if cj:
                coords[basis.position("pole-level", i, j)] = cj
    return coords


def class_representative(basis: ClassBasis, coords) -> RingElt:
    """A representative of the class with the given coordinates."""
    ring = basis.tower.ring
    coords = np.asarray(coords, dtype=np.int64) % basis.tower.p
    if basis.char == 0:
        out = RingElt.one(ring)
        for c, vec in zip(coords, basis.vectors):
            for _ in range(int(c)):
                out = out * vec.rep
        return out
    out = RingElt.zero(ring)
    for c, vec in zip(coords, basis.vectors):
        for _ in range(int(c)):
            out = out + vec.rep
    return out


def galois_matrices(basis: ClassBasis) -> dict[GroupElt, np.ndarray]:
    """Action matrices of sigma and phi (columns = reduced images of reps)."""
    tower = basis.tower
    p = tower.p
    out = {}
    for g in (tower.sigma, tower.phi):
        M = np.zeros((basis.dim, basis.dim), dtype=np.int64)
        for idx, vec in enumerate(basis.vectors):
            M[:, idx] = reduce_class(basis, tower.apply(g, vec.rep))
        if modrep.rank(M, p) != basis.dim:
            raise InvariantViolation("a Galois action matrix is singular")
        out[g] = M
    return out


def filtration_index(basis: ClassBasis, rows: np.ndarray):
    """(index, straddle_flag) for a subspace given by coordinate rows.

    Char 0: the unique i with D inside the span of basis vectors of index
    >= i meeting the index >= i+1 span trivially; char p: the analogous
    statement with pole orders <= i, reported as the paper-style negative
    filtration position -max_pole.  straddle_flag is True when the meet is
    nonzero (impossible for Galois-stable simple subspaces).
    """
    p = basis.tower.p
    rows = modrep.as_fp(rows, p)
    levels = basis.levels()
    support = np.flatnonzero(np.any(rows, axis=0))
    if support.size == 0:
        raise ValueError("the zero subspace has no filtration index")
    if basis.char == 0:
        i_star = int(levels[support].min())
        deeper = np.flatnonzero(levels >= i_star + 1)
    else:
        # stored levels are pole orders; filtration position is their negative
        i_star = -int(levels[support].max())
        deeper = np.flatnonzero(levels <= -i_star - 1)
    keep = np.setdiff1d(np.arange(basis.dim), deeper)
    meet = modrep.kernel(rows[:, keep].T, p)
    straddle = meet.shape[0] > 0
    return i_star, straddle


def level_of(basis: ClassBasis, rows: np.ndarray) -> int:
    """The level delta of a stable simple subspace (wildness measure)."""
    i_star, straddle = filtration_index(basis, rows)
    if straddle:
        raise InvariantViolation("subspace straddles the filtration")
    if basis.char == 0:
        return basis.boundary_level - i_star
    return -i_star


def omega_character(basis: ClassBasis,
                    matrices: dict[GroupElt, np.ndarray]) -> dict[GroupElt, int]:
    """The twist character on the generators, read off the boundary line.

    Constantly 1 in char p and for p = 2.
    """
    tower = basis.tower
    if basis.char != 0 or tower.p == 2:
        return {tower.sigma: 1, tower.phi: 1}
    bd = basis.position("boundary", basis.boundary_level)
    out = {}
    for g, M in matrices.items():
        col = M[:, bd]
        if np.any(np.delete(col, bd)) or col[bd] == 0:
            raise InvariantViolation("boundary line is not stable")
        out[g] = int(col[bd])
    return out

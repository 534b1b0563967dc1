"""Dense linear algebra over F_p and modular representation machinery.

Matrices are numpy int64 arrays with entries reduced mod p.  Action
matrices use the column convention: a group element g with matrix M sends
the column vector v to M @ v, so matrices compose like the group
(M_{gh} = M_g @ M_h).  Subspaces are stored as row matrices, normally in
reduced row echelon form, which doubles as the canonical form used for
deterministic ordering.

The module splitter is the usual randomized MeatAxe with Norton's
irreducibility certificate; randomness is driven by a caller-supplied seed
and all emitted data is canonically sorted, so catalogs are reproducible.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import gfpoly
from .errors import IterationBudgetExceeded


def as_fp(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def mm(A, B, p: int) -> np.ndarray:
    return (A @ B) % p


def rref(A, p: int):
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    A = as_fp(A, p).copy()
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        if A[r, c] != 1:
            A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        hit = np.flatnonzero(A[:, c])
        hit = hit[hit != r]
        if hit.size:
            A[hit] = (A[hit] - np.outer(A[hit, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def solve(A, b, p: int) -> np.ndarray:
    """One solution x of A @ x = b; raises ValueError if inconsistent."""
    A = as_fp(A, p)
    b = as_fp(b, p).reshape(-1)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = rref(aug, p)
    if pivots and pivots[-1] == A.shape[1]:
        raise ValueError("inconsistent linear system")
    x = np.zeros(A.shape[1], dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, -1]
    return x


def kernel(A, p: int) -> np.ndarray:
    """Rows spanning {x : A @ x = 0}, canonical (free columns ascending)."""
    A = as_fp(A, p)
    ncols = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-R[i, fc]) % p
    return out


def image(A, p: int) -> np.ndarray:
    """Canonical row basis of the column space of A."""
    return rref(as_fp(A, p).T, p)[0]


def inv_mat(A, p: int) -> np.ndarray:
    A = as_fp(A, p)
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def poly_eval_matrix(f: list[int], M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(f):
        out = (out @ M) % p
        if c:
            out = (out + c * np.eye(n, dtype=np.int64)) % p
    return out


def minpoly(M, p: int) -> list[int]:
    """Minimal polynomial, as the lcm of vector-local minimal polynomials.

    Seeds whose Krylov space is already contained in the span explored so
    far are skipped; that span is an invariant subspace, so their local
    polynomial divides the accumulated lcm.
    """
    M = as_fp(M, p)
    n = M.shape[0]
    acc = [1]
    seen_rows: list[np.ndarray] = []
    seen_pivots: list[int] = []

    def reduce_global(v):
        v = v.copy()
        for i, pc in enumerate(seen_pivots):
            if v[pc]:
                v = (v - v[pc] * seen_rows[i]) % p
        return v

    def insert_global(v):
        v = reduce_global(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return
        pc = int(nz[0])
        v = (v * pow(int(v[pc]), p - 2, p)) % p
        idx = next((i for i, q in enumerate(seen_pivots) if q > pc), len(seen_pivots))
        seen_rows.insert(idx, v)
        seen_pivots.insert(idx, pc)

    for start in range(n):
        if len(acc) - 1 == n:
            break
        v0 = np.zeros(n, dtype=np.int64)
        v0[start] = 1
        if not np.any(reduce_global(v0)):
            continue
        rows: list[np.ndarray] = []
        pivots: list[int] = []
        w = v0.copy()
        k = 0
        while True:
            rec = np.concatenate([w, np.zeros(n + 1, dtype=np.int64)])
            rec[n + k] = 1
            red = rec.copy()
            for i, pc in enumerate(pivots):
                if red[pc]:
                    red = (red - red[pc] * rows[i]) % p
            lead = np.flatnonzero(red[:n])
            if lead.size == 0:
                local = gfpoly.monic(gfpoly.trim([int(c) for c in red[n:n + k + 1]]), p)
                break
            pc = int(lead[0])
            red = (red * pow(int(red[pc]), p - 2, p)) % p
            idx = next((i for i, q in enumerate(pivots) if q > pc), len(pivots))
            rows.insert(idx, red)
            pivots.insert(idx, pc)
            insert_global(w)
            w = mm(M, w[:, None], p).ravel()
            k += 1
        acc = gfpoly.lcm(acc, local, p)
    return acc


def charpoly(M, p: int) -> list[int]:
    """Characteristic polynomial det(xI - M) by Hessenberg reduction."""
    M = as_fp(M, p)
    n = M.shape[0]
    if n == 0:
        return [1]
    H = [[int(x) for x in row] for row in M]
    for j in range(n - 2):
        pivot = next((i for i in range(j + 1, n) if H[i][j]), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            H[pivot], H[j + 1] = H[j + 1], H[pivot]
            for row in H:
                row[pivot], row[j + 1] = row[j + 1], row[pivot]
        inv = pow(H[j + 1][j], p - 2, p)
        for i in range(j + 2, n):
            if H[i][j]:
                t = (H[i][j] * inv) % p
                for c in range(n):
                    H[i][c] = (H[i][c] - t * H[j + 1][c]) % p
                for r in range(n):
                    H[r][j + 1] = (H[r][j + 1] + t * H[r][i]) % p
    polys = [[1]]
    for m in range(1, n + 1):
        cm = m - 1
        term = gfpoly.mul([(-H[cm][cm]) % p, 1], polys[m - 1], p)
        prod = 1
        for i in range(1, m):
            prod = (prod * H[cm - i + 1][cm - i]) % p
            coeff = (H[cm - i][cm] * prod) % p
            if coeff:
                term = gfpoly.sub(term, gfpoly.scale(polys[m - 1 - i], coeff, p), p)
        polys.append(term)
    out = polys[n]
    return list(out) + [0] * (n + 1 - len(out))


def spin(gens, seeds, p: int) -> np.ndarray:
    """Canonical row basis of the smallest invariant subspace holding seeds."""
    gens = [as_fp(M, p) for M in gens]
    dim = gens[0].shape[0]
    gens_t = [np.ascontiguousarray(M.T) for M in gens]
    rows: list[np.ndarray] = []
    pivots: list[int] = []
    queue = deque(as_fp(s, p).reshape(-1).copy() for s in np.atleast_2d(seeds))
    while queue:
        v = queue.popleft()
        for i, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * rows[i]) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        pc = int(nz[0])
        v = (v * pow(int(v[pc]), p - 2, p)) % p
        idx = next((i for i, q in enumerate(pivots) if q > pc), len(pivots))
        rows.insert(idx, v)
        pivots.insert(idx, pc)
        if len(rows) == dim:
            return rref(np.stack(rows), p)[0]
        for Mt in gens_t:
            queue.append((v @ Mt) % p)
    if not rows:
        return np.zeros((0, dim), dtype=np.int64)
    return rref(np.stack(rows), p)[0]


def in_row_space(rows: np.ndarray, v, p: int) -> bool:
    if rows.shape[0] == 0:
        return not np.any(as_fp(v, p))
    R, pivots = rref(rows, p)
    v = as_fp(v, p).reshape(-1).copy()
    for i, pc in enumerate(pivots):
        if v[pc]:
            v = (v - v[pc] * R[i]) % p
    return not np.any(v)


def restrict_action(gens, rows: np.ndarray, p: int) -> list[np.ndarray]:
    """Action matrices on a stable subspace, in the coordinates of its rows.

    Raises ValueError if the subspace is not stable.
    """
    k = rows.shape[0]
    out = []
    for M in gens:
        imgs = mm(as_fp(M, p), rows.T, p)  # columns are images of basis rows
        S = np.zeros((k, k), dtype=np.int64)
        for j in range(k):
            try:
                S[:, j] = solve(rows.T, imgs[:, j], p)
            except ValueError:
                raise ValueError("subspace is not stable under the action")
        out.append(S)
    return out


def quotient_action(gens, rows: np.ndarray, p: int):
    """Action on V / span(rows): returns (matrices, projection).

    projection maps an ambient vector to its quotient coordinates (the free
    coordinates after reduction against the rref rows).
    """
    dim = gens[0].shape[0]
    R, pivots = (rref(rows, p) if rows.shape[0] else
                 (np.zeros((0, dim), dtype=np.int64), []))
    free = [c for c in range(dim) if c not in pivots]

    def project(v: np.ndarray) -> np.ndarray:
        v = as_fp(v, p).reshape(-1).copy()
        for i, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * R[i]) % p
        return v[free]

    mats = []
    for M in gens:
        M = as_fp(M, p)
        Q = np.zeros((len(free), len(free)), dtype=np.int64)
        for j, fc in enumerate(free):
            Q[:, j] = project(M[:, fc])
        mats.append(Q)
    return mats, project


@dataclass
class Constituent:
    """One isomorphism class of composition factor."""
    dim: int
    gens: list[np.ndarray]
    multiplicity: int


def _random_algebra_element(gens, p, rng: random.Random, complexity: int):
    dim = gens[0].shape[0]
    theta = np.zeros((dim, dim), dtype=np.int64)
    for _ in range(2 + complexity):
        w = np.eye(dim, dtype=np.int64)
        for _ in range(1 + rng.randrange(1 + complexity)):
            w = mm(w, gens[rng.randrange(len(gens))], p)
        theta = (theta + rng.randrange(1, p) * w) % p
    return theta


def _split_once(gens, p, rng, max_tries):
    """A proper nonzero submodule (row basis), or None when certified simple."""
    dim = gens[0].shape[0]
    if dim == 1:
        return None
    for attempt in range(max_tries):
        theta = _random_algebra_element(gens, p, rng, complexity=1 + attempt // 8)
        for factor in gfpoly.distinct_irreducible_factors(minpoly(theta, p), p):
            W = kernel(poly_eval_matrix(factor, theta, p), p)
            for w in W:
                U = spin(gens, w, p)
                if 0 < U.shape[0] < dim:
                    return U
            if W.shape[0] == len(factor) - 1:
                # Norton certificate: the transposed side must fill up too.
                Wt = kernel(poly_eval_matrix(factor, theta.T, p), p)
                Ut = spin([M.T for M in gens], Wt[0], p)
                if Ut.shape[0] < dim:
                    return kernel(Ut, p)  # annihilator, a proper submodule
                return None
    raise IterationBudgetExceeded(
        f"module splitter exhausted {max_tries} attempts at dimension {dim}")


def certify_simple(gens, p: int, seed: int = 0, max_tries: int = 200) -> bool:
    rng = random.Random(seed)
    return _split_once([as_fp(M, p) for M in gens], p, rng, max_tries) is None


def chop(gens, p: int, seed: int = 0, max_tries: int = 200) -> list[Constituent]:
    """Composition factors with multiplicities, grouped up to isomorphism.

    Output is sorted by dimension; callers wanting a finer canonical order
    sort by their own fingerprint.  Multiplicities are seed-independent.
    """
    rng = random.Random(seed)
    gens = [as_fp(M, p) for M in gens]
    classes: list[Constituent] = []
    stack = [gens]
    while stack:
        current = stack.pop()
        dim = current[0].shape[0]
        if dim == 0:
            continue
        U = _split_once(current, p, rng, max_tries)
        if U is not None:
            stack.append(restrict_action(current, U, p))
            stack.append(quotient_action(current, U, p)[0])
            continue
        for cls in classes:
            if cls.dim == dim and hom_space(current, cls.gens, p):
                cls.multiplicity += 1
                break
        else:
            classes.append(Constituent(dim=dim, gens=current, multiplicity=1))
    classes.sort(key=lambda c: c.dim)
    return classes


def hom_space(gens_S, gens_V, p: int) -> list[np.ndarray]:
    """Basis of equivariant maps S -> V as (dim V x dim S) matrices.

    Solves X @ rho_S(g) = rho_V(g) @ X, intersecting the per-generator
    kernels one at a time (the solution space shrinks fast, so later
    constraints act on small coordinate spaces).
    """
    gens_S = [as_fp(M, p) for M in gens_S]
    gens_V = [as_fp(M, p) for M in gens_V]
    n = gens_S[0].shape[0]
    N = gens_V[0].shape[0]
    eye_n = np.eye(n, dtype=np.int64)
    eye_N = np.eye(N, dtype=np.int64)
    basis = None  # rows = coordinates of the current solution space
    for MS, MV in zip(gens_S, gens_V):
        block = (np.kron(eye_N, MS.T) - np.kron(MV, eye_n)) % p
        if basis is None:
            basis = kernel(block, p)
        else:
            inner = kernel(mm(block, basis.T, p), p)
            basis = mm(inner, basis, p)
        if basis.shape[0] == 0:
            return []
    return [vec.reshape(N, n) for vec in basis]


def _mat_pow(M, e: int, p: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=np.int64)
    base = M % p
    while e:
        if e & 1:
            out = mm(out, base, p)
        base = mm(base, base, p)
        e >>= 1
    return out


def _matrix_order_is(M, order: int, prime_divisors, p: int) -> bool:
    eye = np.eye(M.shape[0], dtype=np.int64)
    if np.any(_mat_pow(M, order, p) - eye):
        return False
    return all(np.any(_mat_pow(M, order // ell, p) - eye) for ell in prime_divisors)


def end_field(gens_S, p: int):
    """(d, generator): End(S) = F_{p^d} for simple S, with the first (by
    coefficient code) multiplicative generator of the unit group; for d = 1
    the generator is reported as the identity."""
    basis = hom_space(gens_S, gens_S, p)
    d = len(basis)
    n = gens_S[0].shape[0]
    if d == 1:
        return 1, np.eye(n, dtype=np.int64)
    target = p ** d - 1
    factors = gfpoly._prime_divisors(target)
    for code in range(1, p ** d):
        E = np.zeros((n, n), dtype=np.int64)
        c = code
        for B in basis:
            digit = c % p
            c //= p
            if digit:
                E = (E + digit * B) % p
        if _matrix_order_is(E, target, factors, p):
            return d, E
    raise ValueError("endomorphism ring is not a field; module not simple?")


def enumerate_simple_submodules(gens_V, classes, p: int):
    """All simple submodules of V isomorphic to one of the given classes.

    classes: generator tuples of pairwise non-isomorphic simple modules.
    Returns [(class_index, rows)] with rows the canonical rref basis,
    sorted within each class by the flattened basis.  Per class the count
    is (p^dim H - 1)/(p^d - 1); every emitted subspace is asserted stable
    and simple.
    """
    gens_V = [as_fp(M, p) for M in gens_V]
    out = []
    for ci, gens_S in enumerate(classes):
        n = gens_S[0].shape[0]
        H = hom_space(gens_S, gens_V, p)
        m = len(H)
        if m == 0:
            continue
        d, eps = end_field(gens_S, p)
        # Greedy right-End(S) basis of H over the F_p-span of h∘eps^j.
        span = np.zeros((0, H[0].size), dtype=np.int64)
        end_basis = []
        for h in H:
            if in_row_space(span, h.reshape(-1), p):
                continue
            end_basis.append(h)
            orbit = [h]
            for _ in range(d - 1):
                orbit.append(mm(orbit[-1], eps, p))
            span = rref(np.concatenate(
                [span, np.stack([o.reshape(-1) for o in orbit])]), p)[0]
        assert len(end_basis) * d == m, "Hom space is not End-free"
        eps_pows = [np.eye(n, dtype=np.int64)]
        for _ in range(d - 1):
            eps_pows.append(mm(eps_pows[-1], eps, p))
        emitted = []
        for lead in range(len(end_basis)):
            tail = len(end_basis) - lead - 1
            for code in range(p ** (d * tail)):
                h = end_basis[lead].copy()
                c = code
                for t in range(tail):
                    alpha = np.zeros((n, n), dtype=np.int64)
                    for k in range(d):
                        digit = c % p
                        c //= p
                        if digit:
                            alpha = (alpha + digit * eps_pows[k]) % p
                    h = (h + mm(end_basis[lead + 1 + t], alpha, p)) % p
                rows = image(h, p)
                assert rows.shape[0] == n, "hom from a simple module must be injective"
                _assert_simple_stable(gens_V, rows, p)
                emitted.append(rows)
        expected = (p ** m - 1) // (p ** d - 1)
        assert len(emitted) == expected, (len(emitted), expected)
        keys = {tuple(r.ravel()) for r in emitted}
        assert len(keys) == len(emitted), "duplicate submodules emitted"
        emitted.sort(key=lambda r: tuple(r.ravel()))
        out.extend((ci, rows) for rows in emitted)
    return out


def _assert_simple_stable(gens_V, rows: np.ndarray, p: int) -> None:
    sub_gens = restrict_action(gens_V, rows, p)  # raises if unstable
    n = rows.shape[0]
    for code in range(1, p ** n):
        v = np.array([(code // p ** i) % p for i in range(n)], dtype=np.int64)
        if spin(sub_gens, v, p).shape[0] != n:
            raise AssertionError("emitted subspace is not simple")


def brute_simple_submodules(gens_V, n: int, p: int, max_dim: int = 14):
    """Oracle: exhaustive scan over spins of all nonzero vectors.

    Every simple submodule is the spin of each of its nonzero vectors, so
    collecting n-dimensional spins and filtering for simplicity is complete.
    """
    gens_V = [as_fp(M, p) for M in gens_V]
    dim = gens_V[0].shape[0]
    if dim > max_dim or p ** dim > 1 << 22:
        raise ValueError(f"brute enumeration infeasible at dimension {dim}")
    seen = {}
    for code in range(1, p ** dim):
        v = np.array([(code // p ** i) % p for i in range(dim)], dtype=np.int64)
        rows = spin(gens_V, v, p)
        if rows.shape[0] != n:
            continue
        key = tuple(rows.ravel())
        if key in seen:
            continue
        try:
            _assert_simple_stable(gens_V, rows, p)
        except AssertionError:
            continue
        seen[key] = rows
    return [seen[k] for k in sorted(seen)]

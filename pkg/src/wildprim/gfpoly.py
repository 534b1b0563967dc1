"""Univariate polynomial arithmetic over the prime field F_p.

Polynomials are lists of ints in [0, p), low degree first, trimmed so the
last entry is nonzero (the zero polynomial is the empty list).  Everything
here is deterministic; the Berlekamp splitter tries the c in F_p in
ascending order and factor lists are sorted by the value code
sum(c_i * p^i), the canonical ordering used across the package.
"""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_code(f: list[int], p: int) -> int:
    """Integer code of a polynomial: high-degree coefficient most significant."""
    code = 0
    for c in reversed(f):
        code = code * p + c
    return code


def add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def scale(f, a, p):
    a %= p
    return trim([(a * c) % p for c in f])


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) >= len(g):
        if f[-1] == 0:
            f.pop()
            continue
        shift = len(f) - len(g)
        coeff = (f[-1] * inv_lead) % p
        q[shift] = coeff
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - coeff * c) % p
        f.pop()
    return trim(q), trim(f)


def mod(f, g, p):
    return divmod_poly(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    return scale(f, pow(f[-1], p - 2, p), p)


def gcd(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def lcm(f, g, p):
    if not f or not g:
        return []
    return monic(divmod_poly(mul(f, g, p), gcd(f, g, p), p)[0], p)


def pow_mod(f, e: int, m, p):
    """f^e mod m by square and multiply."""
    result = [1]
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def derivative(f, p):
    return trim([(i * f[i]) % p for i in range(1, len(f))])


def evaluate(f, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f, p) -> bool:
    """Rabin test: x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    if sub(pow_mod(x, p ** n, f, p), x, p):
        return False
    for ell in _prime_divisors(n):
        if gcd(sub(pow_mod(x, p ** (n // ell), f, p), x, p), f, p) != [1]:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pth_root_substitute(f, p):
    # f = h(x^p) with all exponents divisible by p; over F_p, c^(1/p) = c.
    return trim([f[i] for i in range(0, len(f), p)])


def _null_space(mat, p):
    """Basis of {w : mat @ w = 0} for a small dense list-of-rows matrix."""
    m = [row[:] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [(x - factor * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fc] = 1
        for row_i, pc in enumerate(pivots):
            v[pc] = (-m[row_i][fc]) % p
        basis.append(v)
    return basis


def _berlekamp_split(f, p):
    """Distinct monic irreducible factors of a squarefree monic f."""
    d = len(f) - 1
    if d <= 1:
        return [f]
    # Berlekamp subalgebra {b : b^p = b mod f}; row i of Q is x^(p*i) mod f.
    xp = pow_mod([0, 1], p, f, p)
    rows = []
    cur = [1]
    for _ in range(d):
        rows.append(cur + [0] * (d - len(cur)))
        cur = mod(mul(cur, xp, p), f, p)
    q_minus_i_t = [[(rows[i][j] - (1 if i == j else 0)) % p for i in range(d)]
                   for j in range(d)]
    kernel = _null_space(q_minus_i_t, p)
    if len(kernel) == 1:
        return [f]
    b = next(trim(list(v)) for v in kernel if len(trim(list(v))) > 1)
    pieces = []
    for c in range(p):
        g = gcd(sub(b, [c], p), f, p)
        if len(g) > 1 and len(g) < len(f):
            pieces.append(g)
    out = []
    for piece in pieces:
        out.extend([piece] if len(piece) - 1 == 1 else _berlekamp_split(piece, p))
    return out


def distinct_irreducible_factors(f, p) -> list[list[int]]:
    """The set of monic irreducible factors of f, sorted by value code."""
    f = monic(trim(list(f)), p)
    found: dict[int, list[int]] = {}

    def walk(g):
        g = monic(g, p)
        if len(g) <= 1:
            return
        d = derivative(g, p)
        if not d:
            walk(_pth_root_substitute(g, p))
            return
        r = gcd(g, d, p)
        if r == [1]:
            for piece in _berlekamp_split(g, p):
                found[poly_code(piece, p)] = piece
            return
        walk(divmod_poly(g, r, p)[0])
        walk(r)

    walk(f)
    return [found[k] for k in sorted(found)]

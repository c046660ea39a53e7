"""Exact integer matrix algebra.

Matrices are plain lists of lists of Python ints (arbitrary precision),
row-major.  The module provides the Smith normal form with its unimodular
transforms, kernels and cokernels of integer matrices, finitely generated
abelian groups in invariant-factor form, and maps induced on cokernels.
"""

from dataclasses import dataclass, field

from .errors import NotWellDefined


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def copy_matrix(m):
    return [row[:] for row in m]


def shape(m):
    return len(m), len(m[0]) if m else 0


def transpose(m):
    r, c = shape(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def matmul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError("dimension mismatch: %dx%d times %dx%d" % (ra, ca, rb, cb))
    out = zeros(ra, cb)
    for i in range(ra):
        ai = a[i]
        oi = out[i]
        for k in range(ca):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cb):
                    oi[j] += aik * bk[j]
    return out


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hstack(a, b):
    ra, _ = shape(a)
    rb, _ = shape(b)
    if ra != rb:
        raise ValueError("row count mismatch")
    return [a[i] + b[i] for i in range(ra)]


def determinant(m):
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group in canonical invariant-factor form.

    ``torsion`` lists the invariant factors d_1 | d_2 | ... with every
    d_i >= 2; the free part has the given rank.
    """

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factor %r below 2" % (d,))
            if prev is not None and d % prev != 0:
                raise ValueError("invariant factors violate divisibility chain")
            prev = d

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def describe(self):
        """Render as ``Z^r (+) Z/d1 (+) Z/d2 ...`` (or ``0`` if trivial)."""
        parts = []
        if self.rank > 0:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        return self.describe()


@dataclass
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...

    ``uinv`` and ``vinv`` are the exact inverses of U and V, tracked
    during the reduction so callers can change bases both ways.
    """

    U: list
    D: list
    V: list
    uinv: list
    vinv: list

    @property
    def diagonal(self):
        r, c = shape(self.D)
        return [self.D[i][i] for i in range(min(r, c))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    def orders(self):
        """Order of each canonical generator of Z^rows / M Z^cols.

        Entry i is d_i for diagonal positions and 0 (free) past the
        diagonal or where d_i = 0.
        """
        r, _ = shape(self.D)
        diag = self.diagonal
        return [diag[i] if i < len(diag) else 0 for i in range(r)]


def _xgcd(p, q):
    """g, s, u with s*p + u*q = g = gcd(p, q) > 0."""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(m):
    """Compute the Smith normal form of an integer matrix.

    Pivoting brings the smallest nonzero absolute value to the front of
    each step; entries are cleared with Bezout 2x2 row/column transforms,
    which keeps intermediate growth modest.
    """
    r, c = shape(m)
    a = copy_matrix(m)
    u, uinv = identity(r), identity(r)
    v, vinv = identity(c), identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]
        for row in uinv:
            row[src] -= k * row[dst]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in uinv:
            row[i] = -row[i]

    def row_transform(t, i, m2, m2inv):
        # rows t, i of a and u get m2; columns t, i of uinv get m2inv
        for target in (a, u):
            rt, ri = target[t], target[i]
            target[t] = [m2[0][0] * x + m2[0][1] * y for x, y in zip(rt, ri)]
            target[i] = [m2[1][0] * x + m2[1][1] * y for x, y in zip(rt, ri)]
        for row in uinv:
            x, y = row[t], row[i]
            row[t] = x * m2inv[0][0] + y * m2inv[1][0]
            row[i] = x * m2inv[0][1] + y * m2inv[1][1]

    def col_transform(t, j, n2, n2inv):
        # columns t, j of a and v get n2; rows t, j of vinv get n2inv
        for target in (a, v):
            for row in target:
                x, y = row[t], row[j]
                row[t] = x * n2[0][0] + y * n2[1][0]
                row[j] = x * n2[0][1] + y * n2[1][1]
        rt, rj = vinv[t], vinv[j]
        vinv[t] = [n2inv[0][0] * x + n2inv[0][1] * y for x, y in zip(rt, rj)]
        vinv[j] = [n2inv[1][0] * x + n2inv[1][1] * y for x, y in zip(rt, rj)]

    def clear_below(t, i):
        p, q = a[t][t], a[i][t]
        if q % p == 0:
            add_row(i, t, -(q // p))
            return
        g, s, w = _xgcd(p, q)
        m2 = [[s, w], [-(q // g), p // g]]
        m2inv = [[p // g, -w], [q // g, s]]
        row_transform(t, i, m2, m2inv)

    def clear_right(t, j):
        p, q = a[t][t], a[t][j]
        if q % p == 0:
            k = -(q // p)
            # col j += k * col t
            for target in (a, v):
                for row in target:
                    row[j] += k * row[t]
            vinv[t] = [x - k * y for x, y in zip(vinv[t], vinv[j])]
            return
        g, s, w = _xgcd(p, q)
        n2 = [[s, -(q // g)], [w, p // g]]
        n2inv = [[p // g, q // g], [-w, s]]
        col_transform(t, j, n2, n2inv)

    def find_pivot(t):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(best[2])):
                    best = (i, j, x)
        return best

    t = 0
    while t < min(r, c):
        piv = find_pivot(t)
        if piv is None:
            break
        i, j, _ = piv
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    clear_below(t, i)
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    clear_right(t, j)
            if any(a[i][t] != 0 for i in range(t + 1, r)):
                continue
            # pivot must divide the rest of the submatrix
            culprit = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t] != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(t, culprit, 1)
        t += 1

    for i in range(min(r, c)):
        if a[i][i] < 0:
            negate_row(i)

    return SmithDecomposition(U=u, D=a, V=v, uinv=uinv, vinv=vinv)


def cokernel(m):
    """Z^rows / (m * Z^cols) as an FgAbelianGroup."""
    r, _ = shape(m)
    snf = smith_normal_form(m)
    diag = snf.diagonal
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d >= 2)
    return FgAbelianGroup(rank=r - len(nonzero), torsion=torsion)


def kernel_basis(m):
    """A lattice basis of {x : m x = 0} over the integers."""
    r, c = shape(m)
    snf = smith_normal_form(m)
    diag = snf.diagonal
    basis = []
    for t in range(c):
        if t >= len(diag) or diag[t] == 0:
            basis.append([snf.V[i][t] for i in range(c)])
    return basis


def solve(m, b, snf=None):
    """One integer solution x of m x = b, or None if there is none."""
    r, c = shape(m)
    if len(b) != r:
        raise ValueError("dimension mismatch")
    if snf is None:
        snf = smith_normal_form(m)
    y = matvec(snf.U, b)
    diag = snf.diagonal
    coef = [0] * c
    for i in range(r):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d != 0:
                return None
            if i < c:
                coef[i] = y[i] // d
    return matvec(snf.V, coef)


@dataclass
class InducedMap:
    """A homomorphism coker(m_src) -> coker(m_dst) induced by matrix j.

    ``matrix`` expresses the map in the canonical generator systems
    produced by the Smith decompositions of the two presentation
    matrices; ``source_orders`` / ``target_orders`` give the generator
    orders (0 meaning free).
    """

    matrix: list
    source_orders: list
    target_orders: list
    source: FgAbelianGroup
    target: FgAbelianGroup
    surjective: bool = field(default=False)

    @property
    def is_isomorphism(self):
        # a surjection between isomorphic finitely generated abelian
        # groups is an isomorphism (such groups are Hopfian)
        return self.surjective and self.source == self.target


def induced_map_on_cokernels(m_src, m_dst, j):
    """Build the map coker(m_src) -> coker(m_dst) induced by j.

    Raises NotWellDefined when j does not carry the image of m_src into
    the image of m_dst (the witness is the offending column index).
    """
    r_src, _ = shape(m_src)
    r_dst, _ = shape(m_dst)
    rj, cj = shape(j)
    if cj != r_src or rj != r_dst:
        raise ValueError("induced map dimension mismatch")
    snf_src = smith_normal_form(m_src)
    snf_dst = smith_normal_form(m_dst)
    jm = matmul(j, m_src)
    _, cols = shape(jm)
    for col in range(cols):
        b = [jm[i][col] for i in range(r_dst)]
        if solve(m_dst, b, snf=snf_dst) is None:
            raise NotWellDefined(
                "image of column %d does not land in the target image" % col,
                witness=col,
            )
    canonical = matmul(snf_dst.U, matmul(j, snf_src.uinv))
    surj = cokernel(hstack(m_dst, j)).is_trivial
    return InducedMap(
        matrix=canonical,
        source_orders=snf_src.orders(),
        target_orders=snf_dst.orders(),
        source=cokernel(m_src),
        target=cokernel(m_dst),
        surjective=surj,
    )


def maps_agree(m_dst, j1, j2):
    """Whether j1 and j2 induce the same map into coker(m_dst)."""
    r, c = shape(j1)
    if shape(j2) != (r, c):
        raise ValueError("dimension mismatch")
    snf_dst = smith_normal_form(m_dst)
    for col in range(c):
        b = [j1[i][col] - j2[i][col] for i in range(r)]
        if solve(m_dst, b, snf=snf_dst) is None:
            return False
    return True


def group_from_matrix(m):
    """Convenience: cokernel group together with its kernel rank."""
    return cokernel(m), len(kernel_basis(m))

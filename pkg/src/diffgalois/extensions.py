"""Iterated-derivative extension matrices.

If sigma(Y) = A Y then the jet (d^n Y, ..., dY, Y) satisfies
sigma(jet) = M(n) jet with the block at (row r, column c), c >= r, equal to
C(n - r, c - r) * d^(c-r) A.  This works because sigma commutes with the
derivation (z d/dz for q-dilations, d/dz for shifts).

M(n) twisted by the dual of A (divide by a) is unipotent: the diagonal
becomes 1 and everything above it is built from the log-derivative da/a and
its derivatives.  For scalar a the fundamental solution matrix

    U(n)[r][c] = C(n - r, c - r) * d^(c-r) f

satisfies sigma(U) = M U, which :func:`verify_solution_identity` checks in
the free algebra of formal jets f_j = d^j f.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidParameterError, SizeError, ZeroInputError
from .exactalg import ONE, ZERO, Derivation, RatFunc, derive, render

MAX_BUILD_DEPTH = 64
MAX_VERIFY_DEPTH = 16


def _as_matrix(a):
    """Scalar, diagonal list, or square list of lists -> list-of-lists matrix."""
    if isinstance(a, RatFunc):
        return [[a]]
    rows = list(a)
    if rows and all(isinstance(x, RatFunc) for x in rows):
        return [[x if i == j else ZERO for j in range(len(rows))] for i, x in enumerate(rows)]
    m = [list(r) for r in rows]
    if not m or any(len(r) != len(m) for r in m):
        raise InvalidParameterError("A must be square")
    return m


def _mat_derive(A, derivation):
    return [[derive(x, derivation) for x in row] for row in A]


def _mat_scale(A, c):
    return [[x * c for x in row] for row in A]


def _zero(k):
    return [[ZERO] * k for _ in range(k)]


def _identity(k):
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = ZERO
            for t in range(m):
                if A[i][t] and B[t][j]:
                    s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


@dataclass(frozen=True)
class BlockMatrix:
    """(n+1) x (n+1) grid of base_dim x base_dim blocks over Q(z)."""

    n: int
    base_dim: int
    blocks: tuple

    def block(self, r, c):
        return self.blocks[r][c]

    def flat(self):
        k = self.base_dim
        size = (self.n + 1) * k
        return [[self.blocks[i // k][j // k][i % k][j % k] for j in range(size)] for i in range(size)]

    def replace_block(self, r, c, B) -> "BlockMatrix":
        blocks = [list(row) for row in self.blocks]
        blocks[r][c] = tuple(tuple(x) for x in B)
        return BlockMatrix(self.n, self.base_dim, tuple(tuple(row) for row in blocks))

    def is_block_upper_triangular(self) -> bool:
        return all(
            not any(x for row in self.blocks[r][c] for x in row) for r in range(self.n + 1) for c in range(r)
        )

    def to_json(self):
        return {
            "n": self.n,
            "baseDim": self.base_dim,
            "blocks": [[[[render(x) for x in row] for row in B] for B in brow] for brow in self.blocks],
        }

    def pretty(self) -> str:
        cells = [[render(x) for x in row] for row in self.flat()]
        width = max((len(s) for row in cells for s in row), default=1)
        k = self.base_dim
        lines = []
        for i, row in enumerate(cells):
            if k > 1 and i and i % k == 0:
                lines.append("")
            parts = []
            for j, s in enumerate(row):
                sep = " | " if k > 1 and j % k == 0 else "  "
                parts.append((sep if j else "") + s.rjust(width))
            lines.append("".join(parts))
        return "\n".join(lines)


def _freeze(B):
    return tuple(tuple(x) for x in B)


def build_iterated_matrix(a, n: int, derivation=Derivation.EULER, action=None) -> BlockMatrix:
    """M(n) for sigma(Y) = A Y.

    ``action`` is accepted for symmetry with the other entry points; the
    matrix itself depends only on A and the derivation.
    """
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if n > MAX_BUILD_DEPTH:
        raise SizeError(f"iteration depth {n} exceeds {MAX_BUILD_DEPTH}")
    A = _as_matrix(a)
    k = len(A)
    derivs = [A]
    for _ in range(n):
        derivs.append(_mat_derive(derivs[-1], derivation))
    blocks = []
    for r in range(n + 1):
        row = []
        for c in range(n + 1):
            if c < r:
                row.append(_freeze(_zero(k)))
            else:
                row.append(_freeze(_mat_scale(derivs[c - r], comb(n - r, c - r))))
        blocks.append(tuple(row))
    return BlockMatrix(n, k, tuple(blocks))


def corrupt_binomial(M: BlockMatrix, a: RatFunc, r: int, c: int, derivation=Derivation.EULER) -> BlockMatrix:
    """Copy of a scalar M(n) with the binomial at (r, c) increased by one."""
    d = a
    for _ in range(c - r):
        d = derive(d, derivation)
    B = M.block(r, c)
    return M.replace_block(r, c, [[B[0][0] + d]])


# -- formal jets -----------------------------------------------------------------


class JetForm:
    """Linear form sum coeffs[j] * f_j over Q(z) in the formal jets f_j = d^j f."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {j: c for j, c in (coeffs or {}).items() if c}

    def __add__(self, other):
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, ZERO) + c
        return JetForm(out)

    def scale(self, c: RatFunc):
        if not c:
            return JetForm()
        return JetForm({j: x * c for j, x in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, JetForm) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"({render(c)})*f{j}" for j, c in sorted(self.coeffs.items())) or "0"


class JetAlgebra:
    """sigma and the derivation on linear forms in the jets of a solution of
    sigma(f) = a f."""

    def __init__(self, a: RatFunc, derivation, action, depth: int):
        self.derivation = derivation
        self.action = action
        self.da = [a]
        for _ in range(depth):
            self.da.append(derive(self.da[-1], derivation))

    def sigma_jet(self, j: int) -> JetForm:
        # sigma(d^j f) = d^j(a f) = sum_i C(j, i) d^i a d^(j-i) f
        return JetForm({j - i: self.da[i] * comb(j, i) for i in range(j + 1)})

    def sigma(self, form: JetForm) -> JetForm:
        out = JetForm()
        for j, c in form.coeffs.items():
            out = out + self.sigma_jet(j).scale(self.action.apply(c))
        return out

    def derive(self, form: JetForm) -> JetForm:
        out = JetForm()
        for j, c in form.coeffs.items():
            out = out + JetForm({j: derive(c, self.derivation), j + 1: c})
        return out


def solution_matrix(n: int):
    """U(n) as a grid of jet forms."""
    return [
        [JetForm({c - r: RatFunc.const(comb(n - r, c - r))}) if c >= r else JetForm() for c in range(n + 1)]
        for r in range(n + 1)
    ]


def binomial_identity_holds(n: int) -> bool:
    """C(n-r, n-k-r) C(n-k-r, l) == C(n-r, l) C(n-r-l, n-k-r-l) for all
    admissible k, r, l: the reindexing behind sigma(U) = M U."""
    for r in range(n + 1):
        for k in range(n - r + 1):
            for l in range(n - k - r + 1):
                if comb(n - r, n - k - r) * comb(n - k - r, l) != comb(n - r, l) * comb(n - r - l, n - k - r - l):
                    return False
    return True


def verify_solution_identity(a: RatFunc, n: int, derivation=Derivation.EULER, action=None, M=None) -> bool:
    """sigma(U(n)) == M(n) U(n) in the formal jet algebra, for scalar a."""
    if n > MAX_VERIFY_DEPTH:
        raise SizeError(f"verification depth {n} exceeds {MAX_VERIFY_DEPTH}")
    if action is None:
        from .exactalg import QScale

        action = QScale(2)
    if M is None:
        M = build_iterated_matrix(a, n, derivation, action)
    if M.base_dim != 1 or M.n != n:
        raise InvalidParameterError("solution identity needs a scalar M(n) of matching depth")
    if not binomial_identity_holds(n):
        return False
    alg = JetAlgebra(a, derivation, action, n)
    U = solution_matrix(n)
    for r in range(n + 1):
        for c in range(n + 1):
            lhs = alg.sigma(U[r][c])
            rhs = JetForm()
            for k in range(n + 1):
                m = M.block(r, k)[0][0]
                if m:
                    rhs = rhs + U[k][c].scale(m)
            if lhs != rhs:
                return False
    return True


# -- dual twist ------------------------------------------------------------------


def dual_twist(M: BlockMatrix, a) -> BlockMatrix:
    """M tensor A*: every block left-multiplied by A^-1 (divided by a for
    scalar a).  Only scalar or diagonal A is supported."""
    diag = [a] if isinstance(a, RatFunc) else list(a)
    if len(diag) != M.base_dim or not all(isinstance(x, RatFunc) for x in diag):
        raise InvalidParameterError("dual twist needs a scalar or the diagonal of A")
    if any(not x for x in diag):
        raise ZeroInputError("cannot twist by zero")
    inv = [x.inverse() for x in diag]
    blocks = tuple(
        tuple(_freeze([[x * inv[i] for x in row] for i, row in enumerate(B)]) for B in brow) for brow in M.blocks
    )
    return BlockMatrix(M.n, M.base_dim, blocks)


def is_unipotent(M: BlockMatrix) -> bool:
    """Block upper triangular with identity diagonal blocks."""
    I = _freeze(_identity(M.base_dim))
    return M.is_block_upper_triangular() and all(M.block(r, r) == I for r in range(M.n + 1))


def nilpotency_index(M: BlockMatrix) -> int | None:
    """Least e with (M - I)^e = 0, or None if M - I is not nilpotent within
    (n+1) * base_dim steps."""
    F = M.flat()
    size = len(F)
    N = [[F[i][j] - (ONE if i == j else ZERO) for j in range(size)] for i in range(size)]
    P = _identity(size)
    for e in range(1, size + 1):
        P = _matmul(P, N)
        if not any(x for row in P for x in row):
            return e
    return None


# -- structure report ------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    unipotent_dim: int
    reductive_dim: int | None
    total: int | None
    note: str = ""

    def to_json(self):
        out = {"unipotentDim": self.unipotent_dim}
        if self.reductive_dim is not None:
            out["reductiveDimIfIndependent"] = self.reductive_dim
            out["totalIfIndependent"] = self.total
        if self.note:
            out["note"] = self.note
        return out


def _diagonal_entries(as_):
    if isinstance(as_, RatFunc):
        return [as_]
    items = list(as_)
    if all(isinstance(x, RatFunc) for x in items):
        return items
    m = _as_matrix(items)
    if any(m[i][j] for i in range(len(m)) for j in range(len(m)) if i != j):
        raise InvalidParameterError("structure report covers diagonal systems only")
    return [m[i][i] for i in range(len(m))]


def structure_report(as_, N: int, action) -> StructureReport:
    """Semidirect-product shape of the Galois group of the N-th jet system:
    unipotent radical of dimension delta_N, reductive quotient G_m^n when the
    multipliers are multiplicatively independent."""
    from .qgalois import galois_report_for

    rep = galois_report_for(_diagonal_entries(as_), N, action)
    if rep.t is None:
        return StructureReport(rep.unipotent_dim, None, None, "multiplicative relation among the a_i; reductive part not computed")
    return StructureReport(rep.unipotent_dim, rep.reductive_dim, rep.t)

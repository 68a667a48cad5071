"""Exact scalar arithmetic and dense exact linear algebra.

Field elements are plain Python values: ``fractions.Fraction`` over the
rationals, integers in ``[0, p)`` over a prime field.  A ``FieldSpec``
bundles the arithmetic; matrices and solvers carry one and refuse to mix
scalars from different fields.  Everything is immutable after construction
and all operations are pure, so values can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """The rationals, or GF(p) for a prime p.

    Elements are kept in canonical form: reduced ``Fraction`` values
    (the Fraction constructor guarantees positive denominators), or
    residues in ``[0, p)``.
    """

    __slots__ = ("kind", "modulus")

    RATIONALS = "rationals"
    PRIME = "prime-field"

    def __init__(self, kind: str, modulus: int | None = None):
        if kind == self.PRIME:
            if modulus is None or not _is_prime(modulus):
                raise ValueError(f"modulus {modulus!r} is not a prime")
        elif kind == self.RATIONALS:
            if modulus is not None:
                raise ValueError("the rationals take no modulus")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.modulus = modulus

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(cls.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(cls.PRIME, p)

    def characteristic(self) -> int:
        return self.modulus if self.kind == self.PRIME else 0

    def normalize(self, x):
        """Coerce an int / Fraction / 'a/b' string into a canonical element."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == self.PRIME:
            if isinstance(x, Fraction):
                return self.div(x.numerator % self.modulus, x.denominator % self.modulus)
            return x % self.modulus
        return x if isinstance(x, Fraction) else Fraction(x)

    def zero(self):
        return 0 if self.kind == self.PRIME else Fraction(0)

    def one(self):
        return 1 if self.kind == self.PRIME else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.modulus if self.kind == self.PRIME else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.kind == self.PRIME else a - b

    def mul(self, a, b):
        return (a * b) % self.modulus if self.kind == self.PRIME else a * b

    def neg(self, a):
        return (-a) % self.modulus if self.kind == self.PRIME else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.kind == self.PRIME:
            return pow(a, self.modulus - 2, self.modulus)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def require_same(self, other: "FieldSpec"):
        if self != other:
            raise FieldMismatchError(f"cannot mix {self} and {other}")

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return "QQ" if self.kind == self.RATIONALS else f"GF({self.modulus})"


QQ = FieldSpec.rationals()

# Default working field: a prime far above any desk-scale socle degree, so the
# characteristic restriction (char 0 or > d) never bites in practice.
GF_DEFAULT = FieldSpec.prime_field(32003)


# ---------------------------------------------------------------------------
# elimination kernels on raw row lists


def _clear_denominators(rows):
    """Scale each row by the lcm of its denominators (kernel/rank preserved)."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                from math import gcd

                lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in row])
    return out


def _echelon_bareiss(rows):
    """Fraction-free (Bareiss) forward elimination on integer rows.

    Returns (pivot_cols, echelon_rows); entries stay integers, intermediate
    growth is bounded by the Bareiss division step.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            # the full Bareiss update keeps entries equal to minors, which is
            # what makes the division exact at the next step
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - ric * row_r[j]) // prev
        prev = piv
        pivot_cols.append(c)
        r += 1
    return pivot_cols, rows[: len(pivot_cols)]


def _echelon_mod_p(rows, p, reduced=False):
    """Gaussian elimination mod p with first-nonzero pivot selection.

    Returns (pivot_cols, echelon_rows) with unit pivots; with ``reduced``
    entries above pivots are cleared too (RREF).
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] % p != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        rng = range(nrows) if reduced else range(r + 1, nrows)
        for i in rng:
            if i == r:
                continue
            f = rows[i][c] % p
            if f:
                row_i, row_r = rows[i], rows[r]
                for j in range(c, ncols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % p
        pivot_cols.append(c)
        r += 1
    return pivot_cols, rows[: len(pivot_cols)]


def _echelon_fraction(rows, reduced=False):
    """Gaussian elimination over the rationals with unit pivots."""
    rows = [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rng = range(nrows) if reduced else range(r + 1, nrows)
        for i in rng:
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i, row_r = rows[i], rows[r]
                for j in range(c, ncols):
                    row_i[j] = row_i[j] - f * row_r[j]
        pivot_cols.append(c)
        r += 1
    return pivot_cols, rows[: len(pivot_cols)]


def rank_rows(rows, field: FieldSpec, ncols: int | None = None) -> int:
    """Exact rank of a list of row vectors."""
    if not rows or (ncols is not None and ncols == 0):
        return 0
    if field.kind == FieldSpec.PRIME:
        return len(_echelon_mod_p(rows, field.modulus)[0])
    return len(_echelon_bareiss(_clear_denominators(rows))[0])


def mat_mul_rows(a_rows, b_rows, field: FieldSpec, b_ncols: int):
    """Row-major product A @ B on raw row lists."""
    if field.kind == FieldSpec.PRIME:
        p = field.modulus
        bt = list(zip(*b_rows)) if b_rows else [()] * b_ncols
        return [
            [sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a_rows
        ]
    bt = list(zip(*b_rows)) if b_rows else [()] * b_ncols
    zero = field.zero()
    return [
        [sum((x * y for x, y in zip(row, col)), zero) for col in bt] for row in a_rows
    ]


class Matrix:
    """Dense exact matrix over a FieldSpec, row-major.

    Zero-row and zero-column shapes are legal (the rank is 0); ``rows`` must
    all share the declared column count.
    """

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows, field: FieldSpec, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if rows:
            ncols_seen = {len(r) for r in rows}
            if len(ncols_seen) != 1:
                raise ValueError("ragged rows")
            if ncols is not None and ncols != ncols_seen.pop():
                raise ValueError("declared column count does not match rows")
            self.ncols = len(rows[0])
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = ncols
        self.nrows = len(rows)
        self.rows = rows
        self.field = field

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        one, zero = field.one(), field.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: FieldSpec) -> "Matrix":
        z = field.zero()
        return cls([[z] * ncols for _ in range(nrows)], field, ncols)

    def transpose(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.rows)] if self.rows else [], self.field, self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self.field.require_same(other.field)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        return Matrix(mat_mul_rows(self.rows, other.rows, self.field, other.ncols), self.field, other.ncols)

    def column(self, j: int):
        return [row[j] for row in self.rows]

    def rank(self) -> int:
        return rank_rows(self.rows, self.field, self.ncols)

    def kernel_basis(self):
        """Basis of the right kernel, one vector per free column.

        Vectors are exact: ``M @ v = 0`` holds on the nose.  Free columns are
        visited in ascending order, so the output is deterministic.
        """
        field = self.field
        if self.ncols == 0:
            return []
        if self.nrows == 0:
            one, zero = field.one(), field.zero()
            return [[one if i == j else zero for i in range(self.ncols)] for j in range(self.ncols)]
        if field.kind == FieldSpec.PRIME:
            p = field.modulus
            pivot_cols, ech = _echelon_mod_p(self.rows, p, reduced=True)
            pivset = set(pivot_cols)
            basis = []
            for f in range(self.ncols):
                if f in pivset:
                    continue
                v = [0] * self.ncols
                v[f] = 1
                for r, c in enumerate(pivot_cols):
                    v[c] = (-ech[r][f]) % p
                basis.append(v)
            return basis
        # rationals: fraction-free echelon, then exact back-substitution
        pivot_cols, ech = _echelon_bareiss(_clear_denominators(self.rows))
        pivset = set(pivot_cols)
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r in range(len(pivot_cols) - 1, -1, -1):
                c = pivot_cols[r]
                s = sum((ech[r][j] * v[j] for j in range(c + 1, self.ncols)), Fraction(0))
                v[c] = -s / ech[r][c]
            basis.append(v)
        return basis

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def matrix_rank(m: Matrix) -> int:
    """Exact rank; invariant under row/column permutation and transposition."""
    return m.rank()


def matrix_kernel_basis(m: Matrix):
    """Column vectors spanning ker(m); count = cols - rank."""
    return m.kernel_basis()


class SpanSolver:
    """Incremental row span with coordinate recovery in the accepted basis.

    ``express_or_add`` feeds candidate vectors in order; independent ones are
    adopted as basis vectors (first-independent-vector pivoting), dependent
    ones come back as exact coordinates over the vectors adopted so far.
    Coordinates computed mid-stream stay valid against the final basis, since
    later basis vectors never enter earlier reductions.
    """

    def __init__(self, ncols: int, field: FieldSpec):
        self.ncols = ncols
        self.field = field
        self._pivots = []  # pivot column per echelon row
        self._rows = []  # echelon rows (unit pivots)
        self._trans = []  # echelon row = sum(trans[j][s] * basis[s])

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec):
        f = self.field
        vec = list(vec)
        coeffs = [f.zero()] * self.rank
        for j, (pc, row) in enumerate(zip(self._pivots, self._rows)):
            x = vec[pc]
            if x != 0:
                coeffs[j] = x
                for i in range(self.ncols):
                    if row[i] != 0:
                        vec[i] = f.sub(vec[i], f.mul(x, row[i]))
        return vec, coeffs

    def express_or_add(self, vec):
        """Returns (added, coords). ``added`` means vec extended the span and
        its coordinate vector is a fresh unit; otherwise coords express vec in
        the accepted basis (length = rank at call time)."""
        f = self.field
        residue, coeffs = self._reduce(vec)
        pc = next((i for i, x in enumerate(residue) if x != 0), None)
        if pc is None:
            out = [f.zero()] * self.rank
            for j, c in enumerate(coeffs):
                if c != 0:
                    tr = self._trans[j]
                    for s, t in enumerate(tr):
                        if t != 0:
                            out[s] = f.add(out[s], f.mul(c, t))
            return False, out
        inv = f.inv(residue[pc])
        row = [f.mul(inv, x) for x in residue]
        # transform of the new echelon row over the basis including vec itself
        tr = [f.zero()] * (self.rank + 1)
        tr[-1] = inv
        for j, c in enumerate(coeffs):
            if c != 0:
                cj = f.mul(inv, c)
                for s, t in enumerate(self._trans[j]):
                    if t != 0:
                        tr[s] = f.sub(tr[s], f.mul(cj, t))
        for j in range(len(self._trans)):
            self._trans[j] = self._trans[j] + [f.zero()]
        self._pivots.append(pc)
        self._rows.append(row)
        self._trans.append(tr)
        coords = [f.zero()] * self.rank
        coords[-1] = f.one()
        return True, coords

    def add(self, vec) -> bool:
        return self.express_or_add(vec)[0]

    def coords(self, vec):
        """Coordinates of vec over the accepted basis, or None if outside."""
        f = self.field
        residue, coeffs = self._reduce(vec)
        if any(x != 0 for x in residue):
            return None
        out = [f.zero()] * self.rank
        for j, c in enumerate(coeffs):
            if c != 0:
                for s, t in enumerate(self._trans[j]):
                    if t != 0:
                        out[s] = f.add(out[s], f.mul(c, t))
        return out

    def contains(self, vec) -> bool:
        residue, _ = self._reduce(vec)
        return all(x == 0 for x in residue)

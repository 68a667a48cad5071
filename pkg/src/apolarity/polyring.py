"""Monomials and graded polynomials over a two-block or generic variable set,
plus the contraction action of the ring R on its divided-power dual S.

A variable set either has full Perazzo shape (an x-block indexed by exponent
tuples summing to d-1, followed by y_1..y_m) or is a plain list of named
variables.  Polynomials live on one of two sides: lowercase 'r' (the acting
ring) or uppercase 's' (the divided-power module being contracted).  All
values are immutable after construction and all operations pure, so they can
be shared freely across threads.
"""

from __future__ import annotations

from .exactlinalg import FieldSpec


class VariableSetMismatchError(ValueError):
    """Operands live over different variable sets or on incompatible sides."""


def exponent_tuples(nvars: int, degree: int):
    """All exponent tuples of the given total degree, descending lexicographic."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    stack = [((), degree)]
    while stack:
        prefix, rem = stack.pop()
        if len(prefix) == nvars - 1:
            out.append(prefix + (rem,))
            continue
        # push ascending so the larger leading exponents pop first
        for e in range(rem + 1):
            stack.append((prefix + (e,), rem - e))
    return out


class VariableSet:
    """Ordered variables of R (lowercase) and S (uppercase).

    Full Perazzo mode fixes the order: x-block first, indexed by exponent
    tuples in descending lexicographic order, then y_1..y_m.  Generic mode
    keeps the caller's name order.
    """

    __slots__ = ("mode", "m", "d", "x_index_set", "names", "nvars", "_xpos")

    PERAZZO = "perazzo"
    GENERIC = "generic"

    def __init__(self, mode, names, m=0, d=None, x_index_set=None):
        self.mode = mode
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.m = m
        self.d = d
        self.x_index_set = tuple(x_index_set) if x_index_set is not None else None
        self._xpos = (
            {u: i for i, u in enumerate(self.x_index_set)} if x_index_set else None
        )

    @classmethod
    def perazzo(cls, m: int, d: int) -> "VariableSet":
        if m < 2 or d < 3:
            raise ValueError("full Perazzo variable sets need m >= 2 and d >= 3")
        xset = exponent_tuples(m, d - 1)
        names = ["x[" + ",".join(map(str, u)) + "]" for u in xset]
        names += [f"y{j}" for j in range(1, m + 1)]
        return cls(cls.PERAZZO, names, m=m, d=d, x_index_set=xset)

    @classmethod
    def generic(cls, names) -> "VariableSet":
        names = [str(n) for n in names]
        if len(set(n.lower() for n in names)) != len(names):
            raise ValueError("duplicate variable names")
        return cls(cls.GENERIC, [n.lower() for n in names])

    @property
    def n_x(self) -> int:
        return self.nvars - self.m

    def x_position(self, idx: tuple) -> int:
        return self._xpos[tuple(idx)]

    def y_position(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise ValueError(f"no y-variable with index {j}")
        return self.n_x + j - 1

    def name(self, pos: int, dual: bool = False) -> str:
        n = self.names[pos]
        if not dual:
            return n
        return n[0].upper() + n[1:]

    def monomials(self, degree: int):
        return exponent_tuples(self.nvars, degree)

    def __eq__(self, other):
        return (
            isinstance(other, VariableSet)
            and self.mode == other.mode
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.mode, self.names))

    def __repr__(self):
        return f"VariableSet({', '.join(self.names)})"


def monomial_degree(mono: tuple) -> int:
    return sum(mono)


def _mono_sort_key(mono: tuple):
    # graded, then lexicographic; reverse the sort to lead with the highest
    # degree and the lexicographically largest exponent vector
    return (sum(mono), mono)


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero coefficient.

    ``side`` is 'r' for the acting ring, 's' for the divided-power dual.
    Addition and scalar multiplication work on both sides; products of two
    polynomials only on the R side (the dual is only ever contracted, so the
    divided-power product is deliberately unsupported).
    """

    __slots__ = ("varset", "side", "field", "terms")

    def __init__(self, varset: VariableSet, side: str, field: FieldSpec, terms=None):
        if side not in ("r", "s"):
            raise ValueError("side must be 'r' or 's'")
        self.varset = varset
        self.side = side
        self.field = field
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != varset.nvars:
                raise ValueError(f"exponent tuple {mono} has wrong length")
            if c != 0:
                clean[mono] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, varset, side, field):
        return cls(varset, side, field)

    @classmethod
    def constant(cls, varset, side, field, value):
        value = field.normalize(value)
        return cls(varset, side, field, {(0,) * varset.nvars: value})

    @classmethod
    def variable(cls, varset, side, field, pos: int):
        mono = [0] * varset.nvars
        mono[pos] = 1
        return cls(varset, side, field, {tuple(mono): field.one()})

    @classmethod
    def monomial(cls, varset, side, field, mono: tuple, coeff=1):
        return cls(varset, side, field, {tuple(mono): field.normalize(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Top degree, or None for the zero polynomial."""
        return max(map(sum, self.terms)) if self.terms else None

    def is_homogeneous(self) -> bool:
        degs = set(map(sum, self.terms))
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        degs = set(map(sum, self.terms))
        if not degs:
            raise ValueError("the zero polynomial has no homogeneous degree")
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous polynomial (degrees {sorted(degs)})")
        return degs.pop()

    def coefficient(self, mono: tuple):
        return self.terms.get(tuple(mono), self.field.zero())

    def _check_compatible(self, other: "Polynomial"):
        if self.varset != other.varset:
            raise VariableSetMismatchError("polynomials over different variable sets")
        if self.side != other.side:
            raise VariableSetMismatchError("polynomials on different sides")
        self.field.require_same(other.field)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = f.add(terms.get(mono, f.zero()), c)
            if s == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return Polynomial(self.varset, self.side, f, terms)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(
            self.varset, self.side, f, {m: f.neg(c) for m, c in self.terms.items()}
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.normalize(c)
        return Polynomial(
            self.varset, self.side, f, {m: f.mul(c, x) for m, x in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other)
        if self.side != "r":
            raise VariableSetMismatchError(
                "products are only defined in the acting ring (side 'r')"
            )
        f = self.field
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = f.add(terms.get(mono, f.zero()), f.mul(c1, c2))
                if s == 0:
                    terms.pop(mono, None)
                else:
                    terms[mono] = s
        return Polynomial(self.varset, self.side, f, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.varset, self.side, self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.varset == other.varset
            and self.side == other.side
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    # -- rendering -----------------------------------------------------------

    def _mono_str(self, mono: tuple) -> str:
        dual = self.side == "s"
        parts = []
        for pos, e in enumerate(mono):
            if e == 0:
                continue
            n = self.varset.name(pos, dual=dual)
            parts.append(n if e == 1 else f"{n}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=_mono_sort_key, reverse=True)
        chunks = []
        for mono in monos:
            c = self.terms[mono]
            ms = self._mono_str(mono)
            if not ms:
                chunks.append(str(c))
            elif c == 1:
                chunks.append(ms)
            elif c == -1:
                chunks.append(f"-{ms}")
            else:
                chunks.append(f"{c}*{ms}")
        out = " + ".join(chunks)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


def contract(f: Polynomial, big_f: Polynomial) -> Polynomial:
    """Contraction action of f in R on F in S.

    Pure exponent decrement: x_i sends X_i^j to X_i^(j-1) with coefficient
    exactly 1 (never j - this is contraction on divided powers, not
    differentiation), extended bilinearly.  The degree of a nonzero result is
    deg F - deg f.
    """
    if f.varset != big_f.varset:
        raise VariableSetMismatchError("contraction across different variable sets")
    if f.side != "r" or big_f.side != "s":
        raise VariableSetMismatchError("contract expects (ring, dual) operands")
    f.field.require_same(big_f.field)
    fld = f.field
    terms = {}
    for alpha, c in f.terms.items():
        for beta, e in big_f.terms.items():
            ok = True
            for a, b in zip(alpha, beta):
                if b < a:
                    ok = False
                    break
            if not ok:
                continue
            gamma = tuple(b - a for a, b in zip(alpha, beta))
            s = fld.add(terms.get(gamma, fld.zero()), fld.mul(c, e))
            if s == 0:
                terms.pop(gamma, None)
            else:
                terms[gamma] = s
    return Polynomial(f.varset, "s", fld, terms)


class LinearForm:
    """A degree-one element of a full Perazzo ring R.

    ``a`` maps x-block exponent tuples to coefficients, ``b`` maps y-indices
    (1-based) to coefficients.  Zero coefficients are dropped on construction.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=None, b=None):
        self.a = {tuple(k): v for k, v in (a or {}).items() if v != 0}
        self.b = {int(j): v for j, v in (b or {}).items() if v != 0}

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def as_polynomial(self, varset: VariableSet, field: FieldSpec) -> Polynomial:
        if varset.mode != VariableSet.PERAZZO:
            raise VariableSetMismatchError(
                "a LinearForm needs a full Perazzo variable set"
            )
        terms = {}
        for u, c in self.a.items():
            if u not in varset._xpos:
                raise ValueError(f"ell: no x-variable indexed by {list(u)}")
            mono = [0] * varset.nvars
            mono[varset.x_position(u)] = 1
            terms[tuple(mono)] = field.normalize(c)
        for j, c in self.b.items():
            mono = [0] * varset.nvars
            mono[varset.y_position(j)] = 1
            terms[tuple(mono)] = field.normalize(c)
        return Polynomial(varset, "r", field, terms)

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "LinearForm":
        vs = poly.varset
        if vs.mode != VariableSet.PERAZZO:
            raise VariableSetMismatchError(
                "from_polynomial needs a full Perazzo variable set"
            )
        if not poly.is_zero() and poly.homogeneous_degree() != 1:
            raise ValueError("not a linear form")
        a, b = {}, {}
        for mono, c in poly.terms.items():
            pos = next(i for i, e in enumerate(mono) if e)
            if pos < vs.n_x:
                a[vs.x_index_set[pos]] = c
            else:
                b[pos - vs.n_x + 1] = c
        return cls(a, b)

    def coeff_items(self):
        """Deterministic (key, value) pairs: a-coefficients then b-coefficients."""
        out = [("a[" + ",".join(map(str, u)) + "]", c) for u, c in sorted(self.a.items(), reverse=True)]
        out += [(f"b{j}", c) for j, c in sorted(self.b.items())]
        return out

    def __str__(self):
        if self.is_zero():
            return "0"
        return ",".join(f"{k}={v}" for k, v in self.coeff_items())

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.a == other.a and self.b == other.b

    __hash__ = None


def as_linear_polynomial(ell, varset: VariableSet, field: FieldSpec) -> Polynomial:
    """Normalize a LinearForm or degree-one Polynomial into a ring polynomial."""
    if isinstance(ell, LinearForm):
        poly = ell.as_polynomial(varset, field)
    elif isinstance(ell, Polynomial):
        if ell.varset != varset:
            raise VariableSetMismatchError("linear form over the wrong variable set")
        if ell.side != "r":
            raise VariableSetMismatchError("linear form must live in the acting ring")
        field.require_same(ell.field)
        poly = ell
    else:
        raise TypeError(f"cannot interpret {type(ell).__name__} as a linear form")
    if poly.is_zero():
        raise ValueError("zero linear form")
    if poly.homogeneous_degree() != 1:
        raise ValueError("multiplication element must be homogeneous of degree 1")
    return poly

"""Graded coordinate models of Artinian algebras.

Two sources: a Macaulay dual generator F (the algebra R/Ann(F), coordinates
on the contraction images W_t = span{x^alpha o F}) or a list of homogeneous
ideal generators (coordinates on monomial coset representatives).  Both kinds
expose the same interface: an h-vector, per-degree basis tags, and a table
mapping every monomial of R_t to exact coordinates, from which multiplication
matrices by powers of a linear form are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exactlinalg import (
    FieldSpec,
    Matrix,
    SpanSolver,
    _echelon_fraction,
    _echelon_mod_p,
)
from .polyring import Polynomial, as_linear_polynomial


class CharacteristicError(ValueError):
    """Field characteristic is positive and too small for the construction."""


class NotArtinianError(ValueError):
    """The quotient algebra has not vanished by the requested degree bound."""


class HVector:
    """Dimensions of the graded pieces: positive entries h_0..h_d."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ValueError("empty h-vector")
        if any(e <= 0 for e in entries):
            raise ValueError(f"h-vector entries must be positive: {entries}")
        self.entries = entries

    def socle_degree(self) -> int:
        return len(self.entries) - 1

    def total(self) -> int:
        return sum(self.entries)

    def sperner(self) -> int:
        return max(self.entries)

    def is_symmetric(self) -> bool:
        return self.entries == self.entries[::-1]

    def is_unimodal(self) -> bool:
        h = self.entries
        r = 0
        while r + 1 < len(h) and h[r] <= h[r + 1]:
            r += 1
        return all(h[i] >= h[i + 1] for i in range(r, len(h) - 1))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, HVector):
            return self.entries == other.entries
        if isinstance(other, (tuple, list)):
            return self.entries == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "(" + ", ".join(map(str, self.entries)) + ")"


@dataclass
class HFStats:
    sperner: int
    unimodal: bool
    symmetric: bool
    compressed: bool | None = None


@dataclass
class AnnBasis:
    """Polynomials spanning the degree-t piece of the annihilator ideal."""

    degree: int
    generators: list


def compressed_hf(c: int, d: int) -> HVector:
    """The maximal (compressed) Gorenstein h-vector for codimension c and
    socle degree d: h_i = C(min(i, d-i) + c - 1, c - 1)."""
    if c < 1 or d < 0:
        raise ValueError("codimension must be >= 1 and socle degree >= 0")
    return HVector(comb(min(i, d - i) + c - 1, c - 1) for i in range(d + 1))


def hf_stats(h: HVector, codim: int | None = None) -> HFStats:
    """Sperner number, unimodality, symmetry, and (given a codimension)
    whether h is the compressed h-vector for that codimension."""
    if not isinstance(h, HVector):
        h = HVector(h)
    compressed = None
    if codim is not None:
        compressed = h == compressed_hf(codim, h.socle_degree())
    return HFStats(
        sperner=h.sperner(),
        unimodal=h.is_unimodal(),
        symmetric=h.is_symmetric(),
        compressed=compressed,
    )


def _contraction_vector(F: Polynomial, gamma, sidx, zero):
    """Dense coordinates of x^gamma o F over the monomials indexing sidx."""
    vec = [zero] * len(sidx)
    for beta, e in F.terms.items():
        ok = True
        for g, b in zip(gamma, beta):
            if b < g:
                ok = False
                break
        if ok:
            vec[sidx[tuple(b - g for g, b in zip(gamma, beta))]] = e
    return vec


def catalecticant(F: Polynomial, t: int) -> Matrix:
    """Matrix of the contraction map R_t -> S_{d-t} in the canonical monomial
    bases (rows indexed by S-monomials, columns by R-monomials, both in
    descending lexicographic order).  Its rank is HF(t) of R/Ann(F)."""
    if F.side != "s":
        raise ValueError("the dual generator must live on the divided-power side")
    if F.is_zero():
        raise ValueError("zero dual generator")
    d = F.homogeneous_degree()
    if not 0 <= t <= d:
        raise ValueError(f"degree {t} out of range 0..{d}")
    varset, field = F.varset, F.field
    smonos = varset.monomials(d - t)
    sidx = {mn: i for i, mn in enumerate(smonos)}
    zero = field.zero()
    cols = [_contraction_vector(F, gamma, sidx, zero) for gamma in varset.monomials(t)]
    rows = [list(r) for r in zip(*cols)] if cols else []
    return Matrix(rows, field, ncols=len(cols))


def hilbert_function(F: Polynomial) -> HVector:
    """h-vector of R/Ann(F): catalecticant ranks in every degree."""
    if F.is_zero():
        raise ValueError("zero dual generator")
    d = F.homogeneous_degree()
    return HVector(catalecticant(F, t).rank() for t in range(d + 1))


def annihilator_basis(F: Polynomial, t: int) -> AnnBasis:
    """Kernel of the degree-t catalecticant, translated back to polynomials.
    Every generator g satisfies contract(g, F) = 0 exactly."""
    mat = catalecticant(F, t)
    rmonos = F.varset.monomials(t)
    gens = []
    for vec in mat.kernel_basis():
        terms = {rmonos[j]: c for j, c in enumerate(vec) if c != 0}
        gens.append(Polynomial(F.varset, "r", F.field, terms))
    return AnnBasis(degree=t, generators=gens)


class GradedAlgebraModel:
    """Exact per-degree coordinates of a graded Artinian algebra.

    ``coords_of_monomial(t, gamma)`` gives the coordinate vector of the class
    of x^gamma in the chosen basis of the degree-t piece; basis tags are the
    monomials whose classes form that basis.  Models are immutable once built
    and safe to share between threads.
    """

    __slots__ = (
        "field",
        "varset",
        "source",
        "socle_degree",
        "hvector",
        "dual_generator",
        "ideal_generators",
        "_basis",
        "_coords",
    )

    def __init__(self, field, varset, source, socle_degree, hvector, basis, coords,
                 dual_generator=None, ideal_generators=None):
        self.field = field
        self.varset = varset
        self.source = source
        self.socle_degree = socle_degree
        self.hvector = hvector
        self._basis = basis
        self._coords = coords
        self.dual_generator = dual_generator
        self.ideal_generators = ideal_generators

    def h(self, t: int) -> int:
        if 0 <= t <= self.socle_degree:
            return self.hvector[t]
        return 0

    def dim(self) -> int:
        return self.hvector.total()

    def basis_tags(self, t: int):
        if 0 <= t <= self.socle_degree:
            return self._basis[t]
        return ()

    def coords_of_monomial(self, t: int, gamma):
        return self._coords[t][tuple(gamma)]

    def __repr__(self):
        return (
            f"GradedAlgebraModel({self.source}, h={self.hvector}, over {self.field})"
        )


def model_from_dual(F: Polynomial) -> GradedAlgebraModel:
    """Model of R/Ann(F) from a nonzero homogeneous dual generator.

    Degree-t coordinates live on W_t = span{x^alpha o F : |alpha| = t}; the
    basis tags are the first monomials (in canonical order) whose contraction
    images are independent, so dim W_t = HF(t) by Macaulay duality.
    """
    if F.side != "s":
        raise ValueError("the dual generator must live on the divided-power side")
    if F.is_zero():
        raise ValueError("zero dual generator")
    d = F.homogeneous_degree()
    char = F.field.characteristic()
    if char != 0 and char <= d:
        raise CharacteristicError(
            f"field characteristic {char} must be zero or exceed the socle degree {d}"
        )
    varset, field = F.varset, F.field
    zero = field.zero()
    basis, coords, hv = [], [], []
    for t in range(d + 1):
        smonos = varset.monomials(d - t)
        sidx = {mn: i for i, mn in enumerate(smonos)}
        solver = SpanSolver(len(smonos), field)
        tags, table = [], {}
        for gamma in varset.monomials(t):
            vec = _contraction_vector(F, gamma, sidx, zero)
            added, cds = solver.express_or_add(vec)
            if added:
                tags.append(gamma)
            table[gamma] = cds
        h_t = len(tags)
        for gamma, cds in table.items():
            table[gamma] = tuple(cds) + (zero,) * (h_t - len(cds))
        basis.append(tuple(tags))
        coords.append(table)
        hv.append(h_t)
    return GradedAlgebraModel(
        field, varset, "dual", d, HVector(hv), basis, coords, dual_generator=F
    )


def _rref(rows, field):
    if field.kind == FieldSpec.PRIME:
        return _echelon_mod_p(rows, field.modulus, reduced=True)
    return _echelon_fraction(rows, reduced=True)


def model_from_ideal(gens, bound: int) -> GradedAlgebraModel:
    """Model of R/I from homogeneous generators, computed degree by degree.

    I_t is the span of all monomial multiples of the generators; coset
    representatives are the non-pivot monomials.  Fails loudly if the algebra
    has not vanished by ``bound`` rather than truncating silently.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotArtinianError("no nonzero generators: the quotient is not Artinian")
    varset, field = gens[0].varset, gens[0].field
    for g in gens:
        if g.varset != varset or g.side != "r":
            raise ValueError("generators must share one ring variable set")
        field.require_same(g.field)
        g.homogeneous_degree()  # raises on inhomogeneous input
    if bound < 1:
        raise ValueError("degree bound must be at least 1")

    basis, coords, hv = [], [], []
    zero, one = field.zero(), field.one()
    for t in range(bound + 1):
        rmonos = varset.monomials(t)
        ridx = {mn: i for i, mn in enumerate(rmonos)}
        rows = []
        for g in gens:
            dg = g.homogeneous_degree()
            if dg > t:
                continue
            for mu in varset.monomials(t - dg):
                vec = [zero] * len(rmonos)
                for mono, c in g.terms.items():
                    vec[ridx[tuple(a + b for a, b in zip(mono, mu))]] = c
                rows.append(vec)
        pivot_cols, red = _rref(rows, field) if rows else ([], [])
        pivset = set(pivot_cols)
        tags = [rmonos[j] for j in range(len(rmonos)) if j not in pivset]
        h_t = len(tags)
        if t == bound and h_t != 0:
            raise NotArtinianError(
                f"degree-{bound} piece still has dimension {h_t}; "
                "raise the bound or check the ideal"
            )
        tagpos = {mn: i for i, mn in enumerate(tags)}
        table = {}
        for j, mono in enumerate(rmonos):
            if j not in pivset:
                vec = [zero] * h_t
                vec[tagpos[mono]] = one
                table[mono] = tuple(vec)
        for r, c in enumerate(pivot_cols):
            vec = [zero] * h_t
            for q, x in enumerate(red[r]):
                if q != c and x != 0:
                    # q is non-pivot here because RREF cleared pivot columns
                    vec[tagpos[rmonos[q]]] = field.neg(x)
            table[rmonos[c]] = tuple(vec)
        basis.append(tuple(tags))
        coords.append(table)
        hv.append(h_t)

    socle = max((t for t in range(bound + 1) if hv[t] > 0), default=None)
    if socle is None:
        raise ValueError("the ideal contains a unit; the quotient algebra is zero")
    char = field.characteristic()
    if char != 0 and char <= socle:
        raise CharacteristicError(
            f"field characteristic {char} must be zero or exceed the socle degree {socle}"
        )
    return GradedAlgebraModel(
        field,
        varset,
        "ideal",
        socle,
        HVector(hv[: socle + 1]),
        basis[: socle + 1],
        coords[: socle + 1],
        ideal_generators=tuple(gens),
    )


def _increment(mono, pos):
    return mono[:pos] + (mono[pos] + 1,) + mono[pos + 1 :]


def step_matrix_rows(model: GradedAlgebraModel, ell_by_pos, i: int):
    """Raw rows of multiplication by a linear form, degree i -> i+1.

    ``ell_by_pos`` is a list of (variable position, coefficient) pairs.
    """
    field = model.field
    h_src, h_tgt = model.h(i), model.h(i + 1)
    if h_tgt == 0:
        return []
    cols = []
    zero = field.zero()
    for tag in model.basis_tags(i):
        acc = [zero] * h_tgt
        for pos, c in ell_by_pos:
            w = model.coords_of_monomial(i + 1, _increment(tag, pos))
            for r, x in enumerate(w):
                if x != 0:
                    acc[r] = field.add(acc[r], field.mul(c, x))
        cols.append(acc)
    return [[cols[j][r] for j in range(h_src)] for r in range(h_tgt)]


def mult_matrix(model: GradedAlgebraModel, ell, i: int, k: int) -> Matrix:
    """Matrix of multiplication by ell^k from the degree-i piece to the
    degree-(i+k) piece, in the model bases."""
    if i < 0 or k < 0:
        raise ValueError("degree and power must be nonnegative")
    if i + k > model.socle_degree + 1:
        raise ValueError(
            f"target degree {i + k} exceeds socle degree {model.socle_degree} + 1"
        )
    field = model.field
    h_src, h_tgt = model.h(i), model.h(i + k)
    ell_poly = as_linear_polynomial(ell, model.varset, field)
    if k == 0:
        return Matrix.identity(h_src, field)
    lk = ell_poly**k
    zero = field.zero()
    cols = []
    for tag in model.basis_tags(i):
        acc = [zero] * h_tgt
        if h_tgt:
            for tau, c in lk.terms.items():
                gamma = tuple(a + b for a, b in zip(tau, tag))
                w = model.coords_of_monomial(i + k, gamma)
                for r, x in enumerate(w):
                    if x != 0:
                        acc[r] = field.add(acc[r], field.mul(c, x))
        cols.append(acc)
    rows = [[cols[j][r] for j in range(h_src)] for r in range(h_tgt)]
    return Matrix(rows, field, ncols=h_src)

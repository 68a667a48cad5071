"""Full Perazzo forms and the closed-form Jordan-type predictions attached to
them, plus a prediction-vs-computation verification harness.

The canonical full Perazzo dual generator of shape (m, d) is
F = sum X_u Y^u over all exponent tuples u of degree d-1 in m variables.
Linear forms ell = sum a_u x_u + sum b_j y_j fall into three families with
known Jordan types:

  CASE_III  all b_j = 0: only strings of lengths one and two, (2^a, 1^b)
            with a the dimension of the algebra dual to ell o F;
  CASE_II   some index k has both b_k != 0 and the pure-power coefficient
            a_{(d-1)e_k} != 0: the dominance-maximal type, one string of
            length d+1;
  CASE_I    the remaining forms with a nonzero y-part: two strings of
            length d.

For cases I and II the Jordan degree type is also predicted in closed form.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb, factorial

from .exactlinalg import FieldSpec, Matrix
from .polyring import LinearForm, Polynomial, VariableSet, exponent_tuples
from .apolar import (
    CharacteristicError,
    HVector,
    hilbert_function,
    model_from_dual,
)
from .jordan import (
    JordanDegreeType,
    Partition,
    _lefschetz_from_profile,
    dominance_compare,
    rank_profile,
)

CASE_I = "CASE_I"
CASE_II = "CASE_II"
CASE_III = "CASE_III"


@dataclass(frozen=True)
class PerazzoParams:
    """Shape of a full Perazzo algebra: m >= 2 dual variables Y_1..Y_m and
    socle degree d >= 3; the x-block then has C(d+m-2, m-1) variables."""

    m: int
    d: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("full Perazzo needs at least two y-variables")
        if self.d < 3:
            raise ValueError("full Perazzo needs degree at least 3")

    @property
    def n_plus_1(self) -> int:
        return comb(self.d + self.m - 2, self.m - 1)

    def varset(self) -> VariableSet:
        return VariableSet.perazzo(self.m, self.d)

    def x_index_set(self):
        return exponent_tuples(self.m, self.d - 1)


def y_ring_varset(m: int) -> VariableSet:
    return VariableSet.generic([f"y{j}" for j in range(1, m + 1)])


def full_perazzo_form(params: PerazzoParams, field: FieldSpec) -> Polynomial:
    """The canonical full Perazzo dual generator with all coefficients 1."""
    vs = params.varset()
    one = field.one()
    terms = {}
    for i, u in enumerate(vs.x_index_set):
        mono = [0] * vs.nvars
        mono[i] = 1
        for j in range(params.m):
            mono[vs.n_x + j] += u[j]
        terms[tuple(mono)] = one
    return Polynomial(vs, "s", field, terms)


def perazzo_hf(params: PerazzoParams) -> HVector:
    """Closed-form Hilbert function: h_i = C(i+m-1, m-1) + C(d-i+m-1, m-1)
    on the lower half, completed by symmetry, with h_0 = h_d = 1."""
    m, d = params.m, params.d
    h = [0] * (d + 1)
    h[0] = h[d] = 1
    for i in range(1, d // 2 + 1):
        h[i] = comb(i + m - 1, m - 1) + comb(d - i + m - 1, m - 1)
        h[d - i] = h[i]
    return HVector(h)


def perazzo_dim(params: PerazzoParams) -> int:
    """dim of the full Perazzo algebra: 2 C(d+m-1, m)."""
    return 2 * comb(params.d + params.m - 1, params.m)


@dataclass
class LinearFormCase:
    """Classification of a linear form on a full Perazzo algebra.

    ``literal_match`` records whether the coefficient pattern is one of the
    verbatim hypotheses behind the closed-form predictions (pure-y, single
    nonzero b_k with vanishing matching pure power, a matched pair, or pure-x);
    residual forms are still assigned CASE_I but flagged for audit.
    """

    tag: str
    witness_k: int | None
    literal_match: bool


def _pure_power_index(params: PerazzoParams, k: int) -> tuple:
    u = [0] * params.m
    u[k - 1] = params.d - 1
    return tuple(u)


def _as_linear_form(ell) -> LinearForm:
    if isinstance(ell, LinearForm):
        return ell
    if isinstance(ell, Polynomial):
        return LinearForm.from_polynomial(ell)
    raise TypeError(f"cannot interpret {type(ell).__name__} as a linear form")


def classify_linear_form(ell, params: PerazzoParams) -> LinearFormCase:
    """CASE_III if the y-part vanishes; CASE_II if some k has b_k != 0 and
    a_{(d-1)e_k} != 0; CASE_I otherwise."""
    lf = _as_linear_form(ell)
    if lf.is_zero():
        raise ValueError("zero linear form")
    if not lf.b:
        return LinearFormCase(CASE_III, None, True)
    for k in sorted(lf.b):
        if lf.a.get(_pure_power_index(params, k), 0) != 0:
            return LinearFormCase(CASE_II, k, True)
    if not lf.a:
        literal = True  # pure y-form
    elif len(lf.b) == 1:
        # single nonzero b_k whose matching pure power vanishes
        literal = True
    else:
        literal = False
    return LinearFormCase(CASE_I, None, literal)


@dataclass
class PredictedJordan:
    partition: Partition
    jdt: JordanDegreeType | None = None
    a: int | None = None


def _string_counts(params: PerazzoParams):
    """Multiplicity c_q of the x- and y-block strings of length q <= d-1."""
    m, d = params.m, params.d
    return {q: comb(d - q + m - 2, m - 2) for q in range(1, d)}


def _case_i_prediction(params: PerazzoParams) -> PredictedJordan:
    # two strings of length d (degrees 0 and 1); for each q < d, c_q strings
    # of length q headed by x-monomials (degree 1) and c_q headed by
    # y-monomials (degree d-q)
    d = params.d
    c = _string_counts(params)
    parts = [d, d]
    cnt = Counter({(d, 0): 1, (d, 1): 1})
    for q in range(d - 1, 0, -1):
        parts.extend([q] * (2 * c[q]))
        cnt[(q, 1)] += c[q]
        cnt[(q, d - q)] += c[q]
    return PredictedJordan(Partition(parts), JordanDegreeType(cnt))


def _case_ii_prediction(params: PerazzoParams) -> PredictedJordan:
    # the length-d strings merge into one of length d+1 plus one of length
    # d-1, so degree 1 carries 2(m-1) + 1 strings of length d-1
    m, d = params.m, params.d
    c = _string_counts(params)
    parts = [d + 1] + [d - 1] * (2 * m - 1)
    cnt = Counter({(d + 1, 0): 1, (d - 1, 1): 2 * m - 1})
    for q in range(d - 2, 0, -1):
        parts.extend([q] * (2 * c[q]))
        cnt[(q, 1)] += c[q]
        cnt[(q, d - q)] += c[q]
    return PredictedJordan(Partition(parts), JordanDegreeType(cnt))


def dual_of_x_contraction(ell, params: PerazzoParams, field: FieldSpec) -> Polynomial:
    """ell o F for the canonical F and a pure-x linear form, written directly
    in the y-variable divided-power ring: sum a_u Y^u."""
    lf = _as_linear_form(ell)
    vs = y_ring_varset(params.m)
    terms = {tuple(u): field.normalize(c) for u, c in lf.a.items()}
    return Polynomial(vs, "s", field, terms)


def predicted_jordan(case: LinearFormCase, params: PerazzoParams, ell, field: FieldSpec) -> PredictedJordan:
    """Closed-form partition (and Jordan degree type for cases I and II);
    for CASE_III the count of length-two strings is the dimension of the
    algebra dual to ell o F."""
    if case.tag == CASE_I:
        return _case_i_prediction(params)
    if case.tag == CASE_II:
        return _case_ii_prediction(params)
    g = dual_of_x_contraction(ell, params, field)
    if g.is_zero():
        raise ValueError("zero linear form")
    a = hilbert_function(g).total()
    b = perazzo_dim(params) - 2 * a
    return PredictedJordan(Partition([2] * a + [1] * b), None, a)


def generic_part_count(params: PerazzoParams) -> int:
    """Number of parts of the dominance-maximal (CASE_II) Jordan type:
    2 (n+1)."""
    return 2 * params.n_plus_1


def a_bounds(params: PerazzoParams) -> tuple[int, int]:
    """Range of the length-two string count over pure-x forms.

    a_min = d comes from ell o F = Y_m^(d-1) (minimal h-vector (1,...,1));
    a_max is the total of the compressed h-vector of codimension m and socle
    degree d-1, realized by the divided-power complete symmetric generator.
    """
    m, d = params.m, params.d
    a_min = d
    if d % 2 == 1:
        a_max = comb((d - 1) // 2 + m - 1, m - 1) + 2 * sum(
            comb(i + m - 1, m - 1) for i in range((d - 1) // 2)
        )
    else:
        a_max = 2 * sum(comb(i + m - 1, m - 1) for i in range(d // 2))
    return a_min, a_max


def hankel_hf(a_coeffs, d: int, field: FieldSpec | None = None) -> HVector:
    """h-vector of the algebra dual to ell o F for m = 2 and pure-x ell.

    The coefficients a_{d-1,0}, ..., a_{0,d-1} fill a Hankel matrix of shape
    (d-r) x (r+1) with r = floor((d-1)/2); its rank s gives the complete
    intersection h-vector (1, 2, ..., s, ..., s, ..., 2, 1) of socle degree
    d-1.  ``a_coeffs`` is a sequence in descending lexicographic order or a
    mapping from exponent pairs.
    """
    field = field or FieldSpec.rationals()
    if isinstance(a_coeffs, dict):
        seq = [a_coeffs.get((d - 1 - i, i), 0) for i in range(d)]
    else:
        seq = list(a_coeffs)
    if len(seq) != d:
        raise ValueError(f"expected {d} coefficients, got {len(seq)}")
    seq = [field.normalize(c) for c in seq]
    if all(c == 0 for c in seq):
        raise ValueError("all x-coefficients vanish")
    r = (d - 1) // 2
    rows = [[seq[i + j] for j in range(r + 1)] for i in range(d - r)]
    s = Matrix(rows, field, ncols=r + 1).rank()
    return HVector(min(t + 1, d - t, s) for t in range(d))


def symmetric_dual_generator(m: int, t: int, field: FieldSpec) -> Polynomial:
    """Divided-power form of the complete symmetric polynomial of degree t in
    m variables: sum over |u| = t of u_1! ... u_m! Y^u.  Its algebra is the
    compressed one of codimension m and socle degree t."""
    if m < 1 or t < 0:
        raise ValueError("need m >= 1 and t >= 0")
    char = field.characteristic()
    if char != 0 and char <= t:
        raise CharacteristicError(
            f"factorials up to {t}! vanish in characteristic {char}"
        )
    vs = y_ring_varset(m)
    terms = {}
    for u in exponent_tuples(m, t):
        coeff = 1
        for e in u:
            coeff *= factorial(e)
        terms[u] = field.normalize(coeff)
    return Polynomial(vs, "s", field, terms)


def chain_partitions(params: PerazzoParams) -> dict:
    """The four reference points of the dominance chain: the minimal and
    maximal two-string types and the case I / case II closed forms."""
    a_min, a_max = a_bounds(params)
    dim = perazzo_dim(params)
    return {
        "bottom": Partition([2] * a_min + [1] * (dim - 2 * a_min)),
        "top_two_string": Partition([2] * a_max + [1] * (dim - 2 * a_max)),
        "case_i": _case_i_prediction(params).partition,
        "case_ii": _case_ii_prediction(params).partition,
    }


def a_min_realizing_form(params: PerazzoParams, field: FieldSpec) -> LinearForm:
    """Pure-x form with ell o F = Y_m^(d-1), hitting a = a_min = d."""
    u = [0] * params.m
    u[-1] = params.d - 1
    return LinearForm(a={tuple(u): field.one()})


def a_max_realizing_form(params: PerazzoParams, field: FieldSpec) -> LinearForm:
    """Pure-x form whose coefficients are the divided-power coefficients of
    the complete symmetric generator, so ell o F realizes a = a_max."""
    g = symmetric_dual_generator(params.m, params.d - 1, field)
    return LinearForm(a=dict(g.terms))


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class SampleRecord:
    index: int
    bucket: str
    ell: LinearForm
    case_tag: str
    literal_match: bool
    predicted: PredictedJordan
    computed_type: Partition
    computed_jdt: JordanDegreeType
    match: bool | None
    strong_lefschetz: bool


@dataclass
class VerificationReport:
    params: PerazzoParams
    field: FieldSpec
    mode: str
    seed: int | None
    sample_count: int
    samples: list
    summary: dict = dc_field(default_factory=dict)

    @property
    def mismatch_count(self) -> int:
        return self.summary.get("mismatch_count", 0)


ENUMERATION_CAP = 10**6


def _rand_coeff(rng, p):
    return rng.randrange(p)


def _rand_nonzero(rng, p):
    return rng.randrange(1, p)


def _sample_bucket(bucket, rng, params: PerazzoParams, p: int) -> LinearForm:
    xset = params.x_index_set()
    m, d = params.m, params.d
    if bucket == "uniform":
        while True:
            a = {u: _rand_coeff(rng, p) for u in xset}
            b = {j: _rand_coeff(rng, p) for j in range(1, m + 1)}
            lf = LinearForm(a, b)
            if not lf.is_zero():
                return lf
    if bucket == "case_i":
        if rng.randrange(2) == 0:
            while True:  # pure y-form, rejection on the all-zero pattern
                b = {j: _rand_coeff(rng, p) for j in range(1, m + 1)}
                if any(v != 0 for v in b.values()):
                    return LinearForm({}, b)
        k = rng.randrange(1, m + 1)
        a = {u: _rand_coeff(rng, p) for u in xset}
        a[_pure_power_index(params, k)] = 0
        return LinearForm(a, {k: _rand_nonzero(rng, p)})
    if bucket == "case_ii":
        k = rng.randrange(1, m + 1)
        a = {u: _rand_coeff(rng, p) for u in xset}
        a[_pure_power_index(params, k)] = _rand_nonzero(rng, p)
        b = {j: _rand_coeff(rng, p) for j in range(1, m + 1)}
        b[k] = _rand_nonzero(rng, p)
        return LinearForm(a, b)
    if bucket == "case_iii":
        while True:
            a = {u: _rand_coeff(rng, p) for u in xset}
            lf = LinearForm(a, {})
            if not lf.is_zero():
                return lf
    raise ValueError(f"unknown bucket {bucket!r}")


def _enumerate_forms(params: PerazzoParams, p: int):
    """All nonzero linear forms up to scalar: first nonzero coordinate 1."""
    xset = params.x_index_set()
    nvars = len(xset) + params.m
    count = (p**nvars - 1) // (p - 1)
    if count > ENUMERATION_CAP:
        raise ValueError(
            f"{count} forms exceed the enumeration cap {ENUMERATION_CAP}"
        )
    for lead in range(nvars):
        for tail in product(range(p), repeat=nvars - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            a = {u: c for u, c in zip(xset, coeffs[: len(xset)]) if c}
            b = {j + 1: c for j, c in enumerate(coeffs[len(xset):]) if c}
            yield LinearForm(a, b)


def verify_full_perazzo(
    params: PerazzoParams,
    field: FieldSpec,
    sample_count: int = 100,
    seed: int = 0,
    mode: str = "sample",
) -> VerificationReport:
    """Classify, predict and compute the Jordan data of linear forms on a
    full Perazzo algebra and cross-check every closed-form claim.

    In sample mode, ``sample_count`` forms are drawn per bucket: uniform
    coefficients plus one structured bucket per case (rejection sampling on
    the zero/nonzero pattern).  Sample i is derived from the seed and its
    bucket alone, so the report is identical however the work is scheduled.
    Mismatches are counted over literal samples only; residual (non-literal)
    CASE_I forms are recorded as observations.
    """
    if field.kind != FieldSpec.PRIME:
        raise ValueError("the verification harness samples over a prime field")
    p = field.modulus
    if p <= params.d:
        raise CharacteristicError(
            f"field characteristic {p} must exceed the socle degree {params.d}"
        )
    big_f = full_perazzo_form(params, field)
    model = model_from_dual(big_f)
    case_i_pred = _case_i_prediction(params)
    case_ii_pred = _case_ii_prediction(params)
    a_min, a_max = a_bounds(params)

    if mode == "enumerate":
        forms = [("enumerate", lf) for lf in _enumerate_forms(params, p)]
    elif mode == "sample":
        forms = []
        for j in range(sample_count):
            for bucket in ("uniform", "case_i", "case_ii", "case_iii"):
                rng = random.Random(f"{seed}:{bucket}:{j}")
                forms.append((bucket, _sample_bucket(bucket, rng, params, p)))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    samples = []
    case_counts = {CASE_I: 0, CASE_II: 0, CASE_III: 0}
    literal_counts = {CASE_I: 0, CASE_II: 0, CASE_III: 0}
    mismatches = 0
    nonliteral = 0
    nonliteral_agree = 0
    observed_types = {}
    strong_seen = False
    for idx, (bucket, lf) in enumerate(forms):
        case = classify_linear_form(lf, params)
        pred = predicted_jordan(case, params, lf, field)
        profile = rank_profile(model, lf)
        ptn = profile.jordan_type()
        jdt = profile.jordan_degree_type()
        strong = _lefschetz_from_profile(profile).strong
        strong_seen = strong_seen or strong
        case_counts[case.tag] += 1
        if case.literal_match:
            literal_counts[case.tag] += 1
            match = ptn == pred.partition and (
                pred.jdt is None or jdt == pred.jdt
            )
            if not match:
                mismatches += 1
        else:
            nonliteral += 1
            match = None
            if ptn == case_i_pred.partition and jdt == case_i_pred.jdt:
                nonliteral_agree += 1
        observed_types.setdefault(ptn.parts, ptn)
        samples.append(
            SampleRecord(
                index=idx,
                bucket=bucket,
                ell=lf,
                case_tag=case.tag,
                literal_match=case.literal_match,
                predicted=pred,
                computed_type=ptn,
                computed_jdt=jdt,
                match=match,
                strong_lefschetz=strong,
            )
        )

    distinct = [observed_types[key] for key in sorted(observed_types)]
    chain_ok = True
    dim = perazzo_dim(params)
    for s in samples:
        if s.case_tag == CASE_III:
            a = s.predicted.a
            expected = Partition([2] * a + [1] * (dim - 2 * a))
            if not (a_min <= a <= a_max and s.computed_type == expected):
                chain_ok = False
    pairwise = True
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            if dominance_compare(distinct[i], distinct[j]) == "incomparable":
                pairwise = False
    max_observed = None
    for cand in distinct:
        if all(
            dominance_compare(cand, other) in ("greater", "equal")
            for other in distinct
        ):
            max_observed = cand
            break
    if case_counts[CASE_II] > 0:
        max_is_case_ii = (
            max_observed is not None
            and max_observed == case_ii_pred.partition
            and len(max_observed) == generic_part_count(params)
        )
    else:
        max_is_case_ii = None

    report = VerificationReport(
        params=params,
        field=field,
        mode=mode,
        seed=seed if mode == "sample" else None,
        sample_count=sample_count if mode == "sample" else len(samples),
        samples=samples,
    )
    report.summary = {
        "total_samples": len(samples),
        "case_counts": dict(case_counts),
        "literal_counts": dict(literal_counts),
        "mismatch_count": mismatches,
        "nonliteral_count": nonliteral,
        "nonliteral_case_i_agreement": nonliteral_agree,
        "distinct_types": [t.exponent_str() for t in distinct],
        "case_iii_bounds_ok": chain_ok,
        "pairwise_comparable": pairwise,
        "max_observed": max_observed.exponent_str() if max_observed else None,
        "max_is_case_ii_prediction": max_is_case_ii,
        "strong_lefschetz_never": not strong_seen,
        "a_min": a_min,
        "a_max": a_max,
        "predicted_case_i": case_i_pred.partition.exponent_str(),
        "predicted_case_ii": case_ii_pred.partition.exponent_str(),
    }
    return report

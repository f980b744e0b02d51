"""Reconstruction of univariate sums of affine powers.

A decomposition writes f as sum_i coeff_i * (x - node_i)^exp_i with nonzero
coefficients and pairwise distinct (node, exponent) pairs.  Each algorithm
here targets a regime in which the decomposition is provably unique and
recoverable; outside its regime an algorithm either still returns a correct
answer or raises a typed error, but it never returns an unverified result:
every candidate is re-expanded and compared to the input before being
accepted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg, sde as sde_mod
from .errors import (
    DeltaExhausted,
    Inconsistent,
    IrrationalNodeDetected,
    ReconstructionFailed,
    ZeroPolynomial,
)
from .unipoly import UniPoly, rational_roots


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class AffineTerm:
    """coeff * (x - node)^exponent with coeff != 0."""

    coeff: Fraction
    node: Fraction
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", _frac(self.coeff))
        object.__setattr__(self, "node", _frac(self.node))
        if not self.coeff:
            raise ValueError("term coefficient must be nonzero")
        if self.exponent < 0:
            raise ValueError("term exponent must be nonnegative")

    def expand(self) -> UniPoly:
        return UniPoly.affine_power(self.coeff, self.node, self.exponent)


@dataclass(frozen=True)
class Decomposition:
    """Terms sorted by (exponent desc, node asc); (node, exponent) unique."""

    terms: tuple[AffineTerm, ...]

    def __post_init__(self):
        keys = [(t.node, t.exponent) for t in self.terms]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (node, exponent) pair")
        ordered = tuple(
            sorted(self.terms, key=lambda t: (-t.exponent, t.node))
        )
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def of(cls, items: Iterable) -> "Decomposition":
        """Build from terms or (coeff, node, exponent) triples, merging
        duplicate (node, exponent) keys and dropping zero coefficients."""
        merged: dict[tuple[Fraction, int], Fraction] = {}
        for item in items:
            if isinstance(item, AffineTerm):
                c, a, e = item.coeff, item.node, item.exponent
            else:
                c, a, e = item
            c, a = _frac(c), _frac(a)
            key = (a, int(e))
            merged[key] = merged.get(key, Fraction(0)) + c
        return cls(
            tuple(
                AffineTerm(c, a, e) for (a, e), c in merged.items() if c
            )
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def expand(self) -> UniPoly:
        total = UniPoly()
        for t in self.terms:
            total = total + t.expand()
        return total

    def max_coeff_bits(self) -> int:
        bits = 0
        for t in self.terms:
            for v in (t.coeff, t.node):
                bits = max(bits, v.numerator.bit_length(), v.denominator.bit_length())
        return bits


def expand(d: Decomposition) -> UniPoly:
    return d.expand()


# -- admission conditions -------------------------------------------------


class Criterion(enum.Enum):
    """Support-growth tests that certify uniqueness/recoverability."""

    REAL_UNIQUENESS = "real_uniqueness"  # 2*n_e <= ceil((e+3)/2)
    UNIQUENESS = "uniqueness"  # n_e <= sqrt((e+1)/2)
    DISTINCT_NODES = "distinct_nodes"  # n_e <= (3e/4)^(1/3) - 1 for e >= 2
    EXPONENT_BOUND = "exponent_bound"  # max exponent < deg + s^2/2


@dataclass
class ConditionReport:
    passed: dict[Criterion, bool]
    witnesses: dict[Criterion, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def check_conditions(
    d: Decomposition, criteria: Sequence[Criterion] | None = None
) -> ConditionReport:
    """Exact integer evaluation of the admission criteria; for each failed
    criterion the witness records the smallest offending exponent."""
    if criteria is None:
        criteria = tuple(Criterion)
    exps = sorted(t.exponent for t in d.terms)
    s = len(exps)
    report = ConditionReport(passed={c: True for c in criteria})

    def fail(crit: Criterion, witness: int) -> None:
        if report.passed[crit]:
            report.passed[crit] = False
            report.witnesses[crit] = witness

    # support counts only change at exponent values, and every right-hand
    # side below grows with e, so checking at the jumps suffices
    for crit in criteria:
        if crit is Criterion.EXPONENT_BOUND:
            continue
        for e in sorted(set(exps)):
            n_e = sum(1 for x in exps if x <= e)
            if crit is Criterion.REAL_UNIQUENESS:
                if 2 * n_e > (e + 4) // 2:
                    fail(crit, e)
            elif crit is Criterion.UNIQUENESS:
                if 2 * n_e * n_e > e + 1:
                    fail(crit, e)
            elif crit is Criterion.DISTINCT_NODES:
                ec = max(e, 2)
                n_ec = sum(1 for x in exps if x <= ec)
                if 4 * (n_ec + 1) ** 3 > 3 * ec:
                    fail(crit, ec)

    if Criterion.EXPONENT_BOUND in criteria and s:
        e_max = exps[-1]
        deg = d.expand().degree
        if 2 * (e_max - deg) >= s * s:
            fail(Criterion.EXPONENT_BOUND, e_max)
    return report


# -- shared plumbing ------------------------------------------------------


def _require_nonzero(f: UniPoly) -> None:
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")


def _solve_in_basis(target: UniPoly, basis: Sequence[UniPoly]) -> list[Fraction]:
    """Coordinates of target in the given polynomial basis; requires the
    system to be uniquely solvable."""
    if not basis:
        raise ReconstructionFailed("no candidate terms to combine")
    n_rows = max([target.degree] + [p.degree for p in basis]) + 1
    n_rows = max(n_rows, 1)
    mat = linalg.QMatrix.from_rows(
        [[p.coeff(r) for p in basis] for r in range(n_rows)]
    )
    rhs = [target.coeff(r) for r in range(n_rows)]
    try:
        res = linalg.solve(mat, rhs)
    except Inconsistent as exc:
        raise ReconstructionFailed(
            "input is not a combination of the candidate terms"
        ) from exc
    if not res.unique:
        raise ReconstructionFailed("candidate terms are linearly dependent")
    return list(res.vector)


def _verify(dec: Decomposition, f: UniPoly) -> Decomposition:
    if dec.expand() != f:
        raise ReconstructionFailed("re-expansion does not reproduce the input")
    return dec


def _require_distinct_nodes(dec: Decomposition) -> Decomposition:
    nodes = [t.node for t in dec.terms]
    if len(set(nodes)) != len(nodes):
        raise ReconstructionFailed(
            "recovered terms repeat a node, outside this algorithm's regime"
        )
    return dec


def _ceil_half(n: int) -> int:
    return -(-n // 2)


# -- single-pass reconstruction (large exponents / large gaps) ------------


def _single_pass(f: UniPoly) -> Decomposition:
    _require_nonzero(f)
    eq = sde_mod.find_min_sde(f, 0)
    r = eq.order
    e_min = _ceil_half((r + 1) ** 2)
    e_max = f.degree + (r * r) // 2
    pairs = sde_mod.power_solutions(s=eq, e_min=e_min, e_max=e_max) if e_min <= e_max else []
    if not pairs:
        raise ReconstructionFailed("no admissible power solutions in range")
    basis = [UniPoly.affine_power(1, b, e) for b, e in pairs]
    coords = _solve_in_basis(f, basis)
    dec = Decomposition.of(
        (c, b, e) for c, (b, e) in zip(coords, pairs) if c
    )
    return _verify(dec, f)


def decompose_big_exponents(f: UniPoly) -> Decomposition:
    """Recover f = sum alpha_i (x - a_i)^{e_i} with pairwise distinct nodes;
    guaranteed when every e_i > 5 s^2 / 2 for s terms.

    Finds the minimal plain (shift-0) equation for f, collects its power
    solutions over the admissible exponent window, and solves for the
    coefficients of f in that candidate basis.
    """
    return _require_distinct_nodes(_single_pass(f))


def decompose_big_gaps(f: UniPoly) -> Decomposition:
    """Same pipeline as decompose_big_exponents but admitting repeated
    nodes; guaranteed when all exponents and all same-node exponent gaps
    exceed 5 s^2 / 2."""
    return _single_pass(f)


# -- iterated reconstruction for distinct nodes ---------------------------


def decompose_distinct_nodes(
    f: UniPoly, *, stats: list | None = None
) -> Decomposition:
    """Recover a distinct-node decomposition by peeling off the terms with
    the largest exponents and recursing on the remainder.

    Guaranteed when the support grows slowly: n_e <= (3e/4)^(1/3) - 1 for
    every e >= 2, where n_e counts terms of exponent at most e.  Each pass
    finds the minimal shift-0 equation of the residual, sorts its power
    solutions by decreasing exponent d_1 >= d_2 >= ..., appends the
    sentinel value (t+1)^2/2, picks the smallest r whose exponent gap
    d_r - d_{r+1} exceeds r^2/2 (with d_{r+1} below the residual degree),
    and matches the j-th derivative of the residual, j = d_r - floor(r^2/2),
    against the first r candidates.
    """
    _require_nonzero(f)
    residual = f
    collected: list[tuple[Fraction, Fraction, int]] = []
    for iteration in range(f.degree + 2):
        if residual.is_zero():
            dec = Decomposition.of(collected)
            return _require_distinct_nodes(_verify(dec, f))
        eq = sde_mod.find_min_sde(residual, 0)
        t = eq.order
        deg = residual.degree
        e_min = _ceil_half((t + 1) ** 2)
        e_max = deg + ((deg + 2) ** 2) // 8
        pairs = sde_mod.power_solutions(eq, e_min, e_max) if e_min <= e_max else []
        if stats is not None:
            stats.append(
                {
                    "iteration": iteration,
                    "order": t,
                    "residual_degree": deg,
                    "max_coeff_bits": residual.max_coeff_bits(),
                }
            )
        if not pairs:
            raise ReconstructionFailed("no admissible power solutions in range")
        pairs.sort(key=lambda be: (-be[1], be[0]))
        count = len(pairs)
        sentinel = Fraction((t + 1) ** 2, 2)
        r_pick = None
        for r in range(1, count + 1):
            d_r = pairs[r - 1][1]
            d_next = Fraction(pairs[r][1]) if r < count else sentinel
            if d_r - d_next > Fraction(r * r, 2) and d_next < deg:
                r_pick = r
                break
        if r_pick is None:
            raise ReconstructionFailed("no usable exponent gap among candidates")
        d_r = pairs[r_pick - 1][1]
        j = d_r - (r_pick * r_pick) // 2
        target = residual.derivative(j)
        basis = [
            UniPoly.affine_power(math.perm(e, j), b, e - j)
            for b, e in pairs[:r_pick]
        ]
        betas = _solve_in_basis(target, basis)
        partial = UniPoly()
        for beta, (b, e) in zip(betas, pairs[:r_pick]):
            if beta:
                partial = partial + UniPoly.affine_power(beta, b, e)
                collected.append((beta, b, e))
        if partial.is_zero():
            raise ReconstructionFailed("peeling step recovered nothing")
        residual = residual - partial
    raise ReconstructionFailed("iteration limit exceeded without convergence")


# -- clustered exponents within short windows -----------------------------


def decompose_small_intervals(
    f: UniPoly, delta: int | None = None, *, delta_max: int = 4
) -> Decomposition:
    """Recover f = sum_i Q_i(x) (x - a_i)^{e_i} with deg(Q_i) <= delta,
    emitted as individual affine-power terms.

    Guaranteed when the base exponents satisfy e_i >= 5 t^2 (delta+1)^2 / 2
    for t distinct nodes.  With delta=None the width is searched upward from
    0 to delta_max, keeping the first verified answer (DeltaExhausted when
    none verifies).  The candidate nodes are the rational roots of the top
    coefficient of the minimal shift-delta equation; per node, a basis of
    equation solutions Q(x) (x - a)^e over the admissible exponent window is
    assembled, f is solved in the union basis, and each node's component is
    re-read through a Taylor shift.
    """
    _require_nonzero(f)
    if delta is None:
        last: ReconstructionFailed | None = None
        for width in range(delta_max + 1):
            try:
                return decompose_small_intervals(f, width)
            except ReconstructionFailed as exc:
                last = exc
        raise DeltaExhausted(
            f"no interval width up to {delta_max} yielded a verified decomposition"
        ) from last
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    eq = sde_mod.find_min_sde(f, delta)
    r = eq.order
    span = (delta + 1) ** 2
    lower = Fraction((r + 1) ** 2 * span, 2)
    upper = Fraction(f.degree) + Fraction(r * r * span, 2)
    e_min = math.floor(lower) + 1  # the guarantee is strict on both sides
    e_max = math.ceil(upper) - 1
    top = eq.polys[r]
    if top.degree < 1:
        raise ReconstructionFailed("top equation coefficient has no roots")
    candidates = sorted(rational_roots(top))
    if not candidates:
        raise ReconstructionFailed("top equation coefficient has no rational roots")
    basis: list[UniPoly] = []
    owner: list[Fraction] = []
    for c in candidates:
        for sol in sde_mod.shifted_poly_solutions(eq, c, delta, e_min, e_max):
            basis.append(sol)
            owner.append(c)
    coords = _solve_in_basis(f, basis)
    terms: list[tuple[Fraction, Fraction, int]] = []
    for c in candidates:
        part = UniPoly()
        for coef, own, p in zip(coords, owner, basis):
            if own == c and coef:
                part = part + p.scale(coef)
        if part.is_zero():
            continue
        shifted = part.taylor_shift(c)
        for exp, coef in enumerate(shifted.coeffs):
            if coef:
                terms.append((coef, c, exp))
    return _verify(Decomposition.of(terms), f)


# -- dispatcher -----------------------------------------------------------

_STRATEGIES: tuple[tuple[str, Callable[[UniPoly], Decomposition]], ...] = (
    ("big_exponents", decompose_big_exponents),
    ("big_gaps", decompose_big_gaps),
    ("distinct_nodes", decompose_distinct_nodes),
    ("small_intervals", lambda f: decompose_small_intervals(f, None)),
)


def decompose_auto(f: UniPoly) -> tuple[Decomposition, str]:
    """Try big_exponents, big_gaps, distinct_nodes, then small_intervals
    with automatic width; return the first verified decomposition and the
    name of the strategy that produced it.

    If every strategy fails and any of them detected an irrational node,
    that error wins (the input decomposes only over an extension field);
    otherwise ReconstructionFailed.
    """
    _require_nonzero(f)
    irrational: IrrationalNodeDetected | None = None
    last: ReconstructionFailed | None = None
    for tag, fn in _STRATEGIES:
        try:
            return fn(f), tag
        except IrrationalNodeDetected as exc:
            irrational = exc
        except ReconstructionFailed as exc:
            last = exc
    if irrational is not None:
        raise irrational
    raise ReconstructionFailed("no strategy produced a verified decomposition") from last

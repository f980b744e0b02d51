"""Shifted differential equations for exact polynomials.

An equation of order k and shift l is sum_{i=0..k} P_i(x) * g^(i)(x) = 0
with deg(P_i) <= i + l and not every P_i zero.  A polynomial f satisfies such
an equation exactly when the polynomials x^j * f^(i) (0 <= i <= k,
0 <= j <= i + l) are linearly dependent, so existence reduces to a kernel
computation on an integer matrix.  The solution space of a fixed equation
restricted to polynomials has dimension at most k.

All searches are deterministic: elimination pivots in a fixed order and the
returned equation is scaled to primitive integer coefficients with positive
first nonzero coefficient.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg, ratroots
from .errors import IrrationalNodeDetected, ZeroPolynomial
from .unipoly import ONE, ZERO, UniPoly

_SCREEN_PRIME = (1 << 61) - 1

_parallelism = 1


def set_parallelism(threads: int) -> None:
    """Number of worker threads used by the exponent scans (default 1)."""
    global _parallelism
    if threads < 1:
        raise ValueError("threads must be >= 1")
    _parallelism = threads


@dataclass(frozen=True)
class SDE:
    """A shifted differential equation in canonical form."""

    order: int
    shift: int
    polys: tuple[UniPoly, ...]

    def __post_init__(self):
        if self.order < 0 or self.shift < 0:
            raise ValueError("order and shift must be nonnegative")
        if len(self.polys) != self.order + 1:
            raise ValueError("need order + 1 coefficient polynomials")
        if all(p.is_zero() for p in self.polys):
            raise ValueError("all coefficient polynomials are zero")
        for i, p in enumerate(self.polys):
            if p.degree > i + self.shift:
                raise ValueError(f"deg(P_{i}) exceeds {i} + shift")

    def int_polys(self) -> list[list[int]]:
        """Coefficient polynomials as integer lists (canonical scaling)."""
        return [[int(c) for c in p.coeffs] for p in self.polys]


def canonical_sde(order: int, shift: int, polys: Sequence[UniPoly]) -> SDE:
    """Build an SDE from arbitrary rational coefficient polynomials by
    applying the global canonical scaling."""
    flat: list[Fraction] = []
    for p in polys:
        flat.extend(p.coeffs)
    lcm = 1
    for c in flat:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in flat]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g:
        first = next(v for v in ints if v)
        if first < 0:
            g = -g
    scale = Fraction(lcm, g) if g else Fraction(1)
    return SDE(order, shift, tuple(p.scale(scale) for p in polys))


def apply_sde(s: SDE, f: UniPoly) -> UniPoly:
    """sum P_i * f^(i); the zero polynomial iff f satisfies the equation."""
    total = ZERO
    df = f
    for i, p in enumerate(s.polys):
        if i:
            df = df.derivative()
        if not p.is_zero() and not df.is_zero():
            total = total + p * df
    return total


def wronskian(fs: Sequence[UniPoly]) -> UniPoly:
    """Determinant of the matrix whose (i, j) entry is fs[j]^(i)."""
    n = len(fs)
    if n == 0:
        raise ValueError("need at least one polynomial")
    rows = []
    current = list(fs)
    for i in range(n):
        if i:
            current = [f.derivative() for f in current]
        rows.append(tuple(current))

    @lru_cache(maxsize=None)
    def minor(r: int, cols: tuple[int, ...]) -> UniPoly:
        if not cols:
            return ONE
        total = ZERO
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            term = entry * minor(r + 1, cols[:idx] + cols[idx + 1 :])
            total = total + term if idx % 2 == 0 else total - term
        return total

    return minor(0, tuple(range(n)))


# -- minimal-order search -------------------------------------------------


def _rank_mod_p(rows: list[list[int]]) -> int:
    p = _SCREEN_PRIME
    m = [[v % p for v in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    for c in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        for i in range(rank + 1, n_rows):
            factor = m[i][c] * inv % p
            if factor:
                row_i, row_r = m[i], m[rank]
                for j in range(c, n_cols):
                    row_i[j] = (row_i[j] - factor * row_r[j]) % p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _dependency_matrix(derivs: list[list[int]], k: int, shift: int, n_rows: int) -> list[list[int]]:
    """Rows indexed by x-degree, columns by (i, j) with j <= i + shift,
    holding the coefficients of x^j * f^(i)."""
    cols: list[list[int]] = []
    for i in range(k + 1):
        d = derivs[i] if i < len(derivs) else []
        for j in range(i + shift + 1):
            col = [0] * n_rows
            for deg, c in enumerate(d):
                col[deg + j] = c
            cols.append(col)
    return [[col[r] for col in cols] for r in range(n_rows)]


def find_min_sde(f: UniPoly, shift: int, max_order: int | None = None) -> SDE | None:
    """Smallest-order equation of the given shift satisfied by f, or None
    when no order up to max_order works (default max_order: deg(f) + 1,
    which always succeeds).

    The returned equation is the canonical kernel vector of the dependency
    matrix at the minimal order: deterministic pivoting, primitive integer
    scaling, positive first nonzero coefficient.
    """
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial satisfies every equation")
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    if max_order is None:
        max_order = f.degree + 1
    if max_order < 1:
        return None

    f_int = ratroots.to_primitive_int(f)
    derivs = [f_int]
    for i in range(1, max_order + 1):
        derivs.append(ratroots._deriv(derivs[-1]))
    n_rows = f.degree + shift + 1

    for k in range(1, max_order + 1):
        rows = _dependency_matrix(derivs, k, shift, n_rows)
        n_cols = len(rows[0])
        if _rank_mod_p(rows) == n_cols:
            continue  # provably full column rank, no equation at this order
        basis = linalg.kernel(linalg.QMatrix.from_rows(rows))
        if not basis:
            continue
        vec = basis[0]
        polys = []
        pos = 0
        for i in range(k + 1):
            width = i + shift + 1
            polys.append(UniPoly(vec[pos : pos + width]))
            pos += width
        return SDE(order=k, shift=shift, polys=tuple(polys))
    return None


# -- power solutions ------------------------------------------------------


def _shifted_coeff_polys(p_int: list[list[int]]) -> list[list[list[int]]]:
    """q[i][t] = coefficients (in the node variable b) of the y^t part of
    P_i(y + b); only depends on the equation, not on the exponent."""
    out = []
    for cs in p_int:
        deg = len(cs) - 1
        q_i = []
        for t in range(deg + 1):
            q_i.append([cs[u] * math.comb(u, t) for u in range(t, deg + 1)])
        out.append(q_i)
    return out


def _power_conditions(q, order: int, shift: int, e: int) -> list[list[int]]:
    """Condition polynomials in b whose common roots are the nodes b with
    (x - b)^e a solution; written in the basis y = x - b."""
    acc: dict[int, list[int]] = {}
    for i in range(min(order, e) + 1):
        fall = math.perm(e, i)
        if fall == 0 or i >= len(q):
            continue
        for t, qit in enumerate(q[i]):
            if not qit:
                continue
            m = e - i + t
            slot = acc.setdefault(m, [])
            if len(slot) < len(qit):
                slot.extend([0] * (len(qit) - len(slot)))
            for idx, c in enumerate(qit):
                slot[idx] += fall * c
    polys = []
    for m in sorted(acc):
        cs = ratroots._strip(acc[m])
        if cs:
            polys.append(cs)
    return polys


def _power_solutions_at(s: SDE, q, e: int) -> list[tuple[Fraction, int]]:
    conditions = _power_conditions(q, s.order, s.shift, e)
    if not conditions:
        raise ValueError(
            f"every node solves the equation at exponent {e}; "
            "the requested range is below the meaningful threshold"
        )
    g = conditions[0]
    for nxt in conditions[1:]:
        if len(g) == 1:
            break
        g = ratroots.poly_gcd_int(g, nxt)
    if len(g) == 1:
        return []
    roots, cofactor_deg = ratroots.rational_roots_with_cofactor(UniPoly(g))
    if cofactor_deg > 0:
        raise IrrationalNodeDetected(
            f"nodes at exponent {e} satisfy an irreducible condition of "
            f"degree {cofactor_deg} with no rational root"
        )
    found = []
    for b in sorted(roots):
        if not apply_sde(s, UniPoly.affine_power(1, b, e)).is_zero():
            raise RuntimeError("power solution failed verification")
        found.append((b, e))
    return found


def power_solutions(s: SDE, e_min: int, e_max: int) -> list[tuple[Fraction, int]]:
    """All pairs (b, e) with e_min <= e <= e_max such that (x - b)^e with
    rational b satisfies the equation, sorted by (e, b).

    Raises IrrationalNodeDetected when some admissible node is provably
    irrational, i.e. the node condition has a nonconstant factor without
    rational roots.
    """
    if e_min < 1:
        raise ValueError("e_min must be at least 1")
    if e_min > e_max:
        return []
    q = _shifted_coeff_polys(s.int_polys())
    exponents = range(e_min, e_max + 1)
    out: list[tuple[Fraction, int]] = []
    if _parallelism > 1:
        with ThreadPoolExecutor(max_workers=_parallelism) as pool:
            for chunk in pool.map(lambda e: _power_solutions_at(s, q, e), exponents):
                out.extend(chunk)
    else:
        for e in exponents:
            out.extend(_power_solutions_at(s, q, e))
    out.sort(key=lambda be: (be[1], be[0]))
    return out


# -- solutions of the form R(x) * (x - c)^e -------------------------------


def shifted_poly_solutions(
    s: SDE, node, delta: int, e_min: int, e_max: int
) -> list[UniPoly]:
    """Basis of the solutions R(x) * (x - node)^e with deg(R) <= delta and
    e_min <= e <= e_max, each scaled to primitive integer coefficients.

    The basis order is deterministic: candidates are scanned by increasing
    exponent and kept when independent of everything kept so far.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if e_min < 1:
        raise ValueError("e_min must be at least 1")
    if e_min > e_max:
        return []
    c = Fraction(node)
    top = e_max + delta
    powers: dict[int, UniPoly] = {}
    applied: dict[int, UniPoly] = {}
    pw = UniPoly.affine_power(1, c, e_min)
    step = UniPoly((-c, 1))
    for m in range(e_min, top + 1):
        powers[m] = pw
        applied[m] = apply_sde(s, pw)
        if m < top:
            pw = pw * step

    kept: list[UniPoly] = []
    registry: list[tuple[int, list[Fraction]]] = []  # (pivot index, reduced row)

    def try_keep(poly: UniPoly) -> None:
        vec = list(poly.coeffs)
        for pivot, row in registry:
            if pivot < len(vec) and vec[pivot]:
                factor = vec[pivot]
                for j in range(pivot, len(row)):
                    if j < len(vec):
                        vec[j] -= factor * row[j]
                    elif row[j]:
                        vec.extend([Fraction(0)] * (j + 1 - len(vec)))
                        vec[j] -= factor * row[j]
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return
        inv = 1 / vec[pivot]
        registry.append((pivot, [v * inv for v in vec]))
        kept.append(UniPoly(ratroots.to_primitive_int(poly)))

    for e in range(e_min, e_max + 1):
        rows_needed = max(applied[e + t].degree for t in range(delta + 1)) + 1
        if rows_needed <= 0:
            rows_needed = 1
        mat = [
            [applied[e + t].coeff(r) for t in range(delta + 1)]
            for r in range(rows_needed)
        ]
        for vec in linalg.kernel(linalg.QMatrix.from_rows(mat)):
            combo = ZERO
            for t, coef in enumerate(vec):
                if coef:
                    combo = combo + powers[e + t].scale(coef)
            if not combo.is_zero():
                try_keep(combo)
    return kept

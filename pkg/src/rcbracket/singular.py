"""Coefficient tables of the diagonal singular vectors.

The singular vector of homogeneity N is

    p(r, s, t) = sum_{i+j<=N} A_{i,j} r^{N-i-j} s^i t^j,

with A_{0,0} = 1.  Its (u, v) form is annihilated by P_uv_xi(N) and
P_uv_nu(N); the coefficient of u^i v^j in P_uv_xi(N) applied to the ansatz
is the four-term relation ``rfe(i, j)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm
from typing import Dict, List, Optional, Tuple

from . import linsolve
from .algebra import (
    LAM,
    MU,
    ONE,
    ZERO,
    LinearFactor,
    ParamPoly,
    ParamScalar,
    UndefinedGammaRatioError,
    ZeroDenominatorError,
    ZeroDivisorError,
    as_fraction,
    gamma_ratio,
    pochhammer,
)
from .operators import (
    RST,
    UV,
    LinearSystem,
    Poly,
    apply,
    build_nilradical,
    build_reduced,
    expand_invariants,
    extract_linear_system,
)

Index = Tuple[int, int]


class DegenerateParameterError(ZeroDivisionError):
    """A divisor of the recurrence vanishes at the requested parameters."""

    def __init__(self, divisor: str, target: Index, lam, mu):
        self.divisor = divisor
        self.target = target
        self.lam = lam
        self.mu = mu
        super().__init__(
            f"divisor {divisor} vanishes at lambda={lam}, mu={mu} while solving for A_{target[0]},{target[1]}"
        )


def triangle(N: int) -> List[Index]:
    """Indices (i, j), i + j <= N, by anti-diagonal."""
    return [(i, d - i) for d in range(N + 1) for i in range(d + 1)]


@dataclass
class CoeffTable:
    n: int
    N: int
    entries: Dict[Index, ParamScalar]
    point: Optional[Tuple[Fraction, Fraction]] = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if self.N < 0:
            raise ValueError("N must be >= 0")
        for (i, j) in self.entries:
            if i < 0 or j < 0 or i + j > self.N:
                raise ValueError(f"index ({i}, {j}) lies outside the triangle i + j <= {self.N}")
        self.entries = {k: ParamScalar.coerce(v) for k, v in self.entries.items()}

    def __getitem__(self, ij: Index) -> ParamScalar:
        # zero-extension outside the triangle
        return self.entries.get(tuple(ij), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return self.n == other.n and self.N == other.N and all(self[k] == other[k] for k in keys)

    def is_normalized(self) -> bool:
        return self[(0, 0)] == ONE

    def is_symmetric(self) -> bool:
        return all(self[(j, i)] == v.swap_params() for (i, j), v in self.entries.items())

    def specialize(self, lam, mu) -> "CoeffTable":
        lam, mu = as_fraction(lam), as_fraction(mu)
        return CoeffTable(self.n, self.N, {k: v.at(lam, mu) for k, v in self.entries.items()}, (lam, mu))

    def perturbed(self, ij: Index, delta=1) -> "CoeffTable":
        entries = dict(self.entries)
        entries[tuple(ij)] = self[ij] + ParamScalar.coerce(delta)
        return CoeffTable(self.n, self.N, entries, self.point)

    def with_entry(self, ij: Index, value) -> "CoeffTable":
        entries = dict(self.entries)
        entries[tuple(ij)] = ParamScalar.coerce(value)
        return CoeffTable(self.n, self.N, entries, self.point)

    def polynomial(self) -> Poly:
        N = self.N
        return Poly(RST, {(N - i - j, i, j): v for (i, j), v in self.entries.items()})

    def uv_polynomial(self) -> Poly:
        return Poly(UV, dict(self.entries))


@dataclass
class SingularVectorRST:
    table: CoeffTable
    polynomial: Poly

    @classmethod
    def from_table(cls, table: CoeffTable) -> "SingularVectorRST":
        return cls(table, table.polynomial())

    def residuals(self) -> Tuple[Poly, Poly]:
        lam, mu = self.table.point or (LAM, MU)
        p = self.polynomial
        return (
            apply(build_reduced("P_rst_xi", self.table.n, lam, mu), p),
            apply(build_reduced("P_rst_nu", self.table.n, lam, mu), p),
        )


# -- the four-term relation -------------------------------------------------


def rfe_coefficients(n: int, N: int, i: int, j: int, lam=LAM, mu=MU) -> Dict[Index, ParamScalar]:
    """The four coefficients of the relation read off at u^i v^j."""
    lam, mu = ParamScalar.coerce(lam), ParamScalar.coerce(mu)
    half = Fraction(1, 2)
    d = i + j - N
    # -i^2 + i(n + lam - 1) + (j - N)(-j + N - lam - 1)
    middle = lam * (i - j + N) + (-i * i + i * (n - 1) + (j - N) * (N - j - 1))
    return {
        (i - 1, j - 1): ParamScalar.coerce(half * (d - 1) * (d - 2)),
        (i, j): middle,
        (i, j + 1): mu * (2 * (j + 1)) + (j + 1) * (n - 2 - 2 * j),
        (i - 1, j): (mu * (-2) + (-i + 3 * j + N)) * (half * (d - 1)),
    }


def rfe_residual(table: CoeffTable, i: int, j: int) -> ParamScalar:
    """Left-hand side of the relation at (i, j), entries outside the triangle taken as zero."""
    lam, mu = table.point or (LAM, MU)
    out = ZERO
    for ij, c in rfe_coefficients(table.n, table.N, i, j, lam, mu).items():
        v = table[ij]
        if v and c:
            out = out + c * v
    return out


def _step(n, N, i, j, lam, mu, get, target, names):
    coeffs = rfe_coefficients(n, N, i, j, lam, mu)
    div = coeffs.pop((i, j + 1))
    if not div:
        first, second = names
        raise DegenerateParameterError(
            f"(j+1)(n+2*{second}-2-2j) with j={j}, n={n}", target, *((lam, mu) if first == "lambda" else (mu, lam))
        )
    rest = ZERO
    for ij, c in coeffs.items():
        v = get(*ij)
        if v and c:
            rest = rest + c * v
    return -rest / div


@lru_cache(maxsize=256)
def _solve(n: int, N: int, point) -> Tuple[Tuple[Index, ParamScalar], ...]:
    if point is None:
        lam, mu = ParamScalar.coerce(LAM), ParamScalar.coerce(MU)
    else:
        lam, mu = (ParamScalar.coerce(x) for x in point)
    A: Dict[Index, ParamScalar] = {(0, 0): ONE}

    def get(a, b):
        return A.get((a, b), ZERO) if a >= 0 and b >= 0 else ZERO

    def get_mirror(a, b):
        return get(b, a)

    for d in range(N):
        # A_{a,b}, b >= 1, from the relation at (a, b-1); divisor b(n+2mu-2b)
        for b in range(1, d + 2):
            a = d + 1 - b
            A[(a, b)] = _step(n, N, a, b - 1, lam, mu, get, (a, b), ("lambda", "mu"))
        if point is None:
            A[(d + 1, 0)] = A[(0, d + 1)].swap_params()
        else:
            # the same relation for the transposed table with exchanged weights
            A[(d + 1, 0)] = _step(n, N, 0, d, mu, lam, get_mirror, (d + 1, 0), ("mu", "lambda"))
    return tuple(sorted(A.items()))


def solve_recurrence(n: int, N: int, lam=None, mu=None) -> CoeffTable:
    """Normalized table by anti-diagonal propagation.

    With ``lam``/``mu`` given the computation runs over Q at that point and
    raises :class:`DegenerateParameterError` when a divisor vanishes.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if N < 0:
        raise ValueError("N must be >= 0")
    if (lam is None) != (mu is None):
        raise ValueError("give both lam and mu, or neither")
    point = None if lam is None else (as_fraction(lam), as_fraction(mu))
    return CoeffTable(n, N, dict(_solve(n, N, point)), point)


@lru_cache(maxsize=64)
def _system(n: int, N: int) -> LinearSystem:
    return extract_linear_system(build_reduced("P_uv_xi", n, LAM, MU, N), N, "xi") + extract_linear_system(
        build_reduced("P_uv_nu", n, LAM, MU, N), N, "nu"
    )


def full_system(n: int, N: int) -> LinearSystem:
    """Every equation of P_uv_xi(N) and P_uv_nu(N) on the ansatz, symbolic."""
    return _system(n, N)


def recurrence_checks(table: CoeffTable) -> Dict[str, object]:
    """Residuals of the four-term relation and of the generated system."""
    N = table.N
    rfe_bad = [(i, j) for i in range(N + 1) for j in range(N + 1) if rfe_residual(table, i, j)]
    system = full_system(table.n, N)
    values = dict(table.entries)
    if table.point is None:
        res = system.residuals(values)
    else:
        lam, mu = table.point
        res = [r.at(lam, mu) if r.is_constant() is False else r for r in system.residuals(values)]
    sys_bad = [lab for lab, r in zip(system.labels, res) if r]
    return {
        "rfe_nonzero": rfe_bad,
        "system_nonzero": sys_bad,
        "equations": len(system.equations),
        "passed": not rfe_bad and not sys_bad,
    }


# -- closed forms -----------------------------------------------------------


def _params(lam, mu):
    if (lam is None) != (mu is None):
        raise ValueError("give both lam and mu, or neither")
    if lam is None:
        return LAM, MU, False
    return ParamPoly.const(as_fraction(lam)), ParamPoly.const(as_fraction(mu)), True


def _inv_poch(base, l: int) -> ParamScalar:
    # 1 / (base)_l with the denominator kept factored
    return gamma_ratio(ParamPoly.coerce(base) + l, -l)


def _closed_upper(n: int, N: int, i: int, j: int, L: ParamPoly, M: ParamPoly) -> ParamScalar:
    # j >= i
    h = Fraction(n, 2)
    pref = gamma_ratio(-N, i + j) * gamma_ratio(L + (1 - N), j - i) * gamma_ratio(L + h, -i)
    pref = pref * _inv_poch(-M + (1 - h), j)
    pref = pref * Fraction((-1) ** (i + j), 2 ** (i + j) * factorial(i) * factorial(j))
    s = ParamPoly.const(0)
    for k in range(i + 1):
        term = (
            pochhammer(j - i + 1 + k, i - k)
            * pochhammer(L + (h - i), i - k)
            * pochhammer(M + (1 - N), k)
            * pochhammer(L + (1 - N - k), k)
        )
        s = s + term.scale((-1) ** k * comb(i, k))
    return pref * ParamScalar(s, (), _reduced=True)


def closed_form_coeff(n: int, N: int, i: int, j: int, lam=None, mu=None) -> ParamScalar:
    """A_{i,j} from the Gamma-ratio / finite-sum closed form."""
    if i < 0 or j < 0 or i + j > N:
        raise ValueError(f"({i}, {j}) outside the triangle i + j <= {N}")
    L, M, special = _params(lam, mu)
    if j >= i:
        return _closed_upper(n, N, i, j, L, M)
    if special:
        return _closed_upper(n, N, j, i, M, L)
    return _closed_upper(n, N, j, i, L, M).swap_params()


def closed_form_table(n: int, N: int, lam=None, mu=None) -> CoeffTable:
    point = None if lam is None else (as_fraction(lam), as_fraction(mu))
    return CoeffTable(n, N, {ij: closed_form_coeff(n, N, *ij, lam, mu) for ij in triangle(N)}, point)


def hyp3f2_terminating(a1: int, a2, a3, b1, b2) -> ParamScalar:
    """3F2(a1, a2, a3; b1, b2; 1) for a nonpositive integer ``a1``."""
    if int(a1) != a1 or a1 > 0:
        raise ValueError("a1 must be a nonpositive integer")
    a1 = int(a1)
    a2, a3, b1, b2 = (ParamPoly.coerce(x.numer if isinstance(x, ParamScalar) else x) for x in (a2, a3, b1, b2))
    for b in (b1, b2):
        if b.is_constant():
            for m in range(-a1):
                if b.constant_value() + m == 0:
                    raise ZeroDivisorError(f"lower parameter {b.constant_value()} gives a vanishing Pochhammer symbol")
    total = ONE
    term = ONE
    for m in range(-a1):
        num = ((a2 + m) * (a3 + m)).scale(a1 + m)
        term = term * ParamScalar(num, (), _reduced=True) * _inv_poch(b1 + m, 1) * _inv_poch(b2 + m, 1) * Fraction(1, m + 1)
        total = total + term
    return total


def coeff_first_row(n: int, N: int, j: int, lam=None, mu=None) -> ParamScalar:
    """A_{1,j} from its dedicated Gamma-ratio formula, 1 <= j <= N."""
    if not 1 <= j <= N:
        raise ValueError("coeff_first_row needs 1 <= j <= N")
    L, M, _ = _params(lam, mu)
    h = Fraction(n, 2)
    out = gamma_ratio(-N, j + 1) * gamma_ratio(L + (1 - N), j - 1) * _inv_poch(-M + (1 - h), j)
    out = out * Fraction((-1) ** (j + 1), 2 ** (j + 1) * factorial(j))
    poly = (L.scale(2) + (n - 2)).scale(j) + ((-L + N) * (M + (1 - N))).scale(2)
    return out * ParamScalar(poly, (), _reduced=True) / ParamScalar(L.scale(2) + (n - 2))


def coeff_diagonal(n: int, N: int, i: int, lam=None, mu=None) -> ParamScalar:
    """A_{i,i} as the symmetrized pair of 3F2 values, 2i <= N."""
    if i < 0 or 2 * i > N:
        raise ValueError("coeff_diagonal needs 0 <= 2i <= N")
    L, M, _ = _params(lam, mu)
    h = Fraction(n, 2)
    f1 = hyp3f2_terminating(-i, -L + N, M + (1 - N), 1, -L + (1 - h))
    f2 = hyp3f2_terminating(-i, L + (1 - N), -M + N, 1, -M + (1 - h))
    pair = f1 * _inv_poch(-M + (1 - h), i) + f2 * _inv_poch(-L + (1 - h), i)
    return pair * gamma_ratio(-N, 2 * i) * Fraction(1, 2 ** (2 * i + 1) * factorial(i))


def coeff_a11(n: int, N: int, lam=None, mu=None) -> ParamScalar:
    """A_{1,1} for general N from its closed expression."""
    L, M, _ = _params(lam, mu)
    h = Fraction(n, 2)
    num = (L * M - (L + M).scale(N) + (1 - h + N * (N - 1))).scale(N * (N - 1))
    return ParamScalar(num) / (ParamScalar(L.scale(2) + (n - 2)) * ParamScalar(M.scale(2) + (n - 2)))


def hyp_four_term_residual(n: int, N: int, i: int, j: int, lam=None, mu=None, literal: bool = False) -> ParamScalar:
    """The four-3F2 combination equivalent to the recurrence, 1 <= i <= j <= N.

    The nonzero Gamma prefactor is dropped.  The two terms whose lower
    parameter is 2-i+j carry a factor 1/(1+j-i); ``literal=True`` omits it,
    which only agrees on the diagonal i = j.
    """
    if not 1 <= i <= j <= N:
        raise ValueError("hyp_four_term_residual needs 1 <= i <= j <= N")
    L, M, _ = _params(lam, mu)
    h = Fraction(n, 2)

    def F(a1, b1):
        return hyp3f2_terminating(a1, -L + N, M + (1 - N), b1, -L + (1 - h))

    w = 1 if literal else Fraction(1, 1 + j - i)
    c1 = (M.scale(2) + (n - 2 * j)).scale(i)
    c2 = ((-L + (-1 + i - j + N)) * (M.scale(2) + (i - 3 * j - N))).scale(i * w)
    c3 = L.scale(-i) + (i * i - i * (n - 1)) + (L + (1 + j - N)).scale(j - N)
    c4 = (-L + (-1 + i - j + N)).scale((1 + j) * (i + j - N) * w)
    out = ZERO
    for c, a1, b1 in ((c1, 1 - i, 1 - i + j), (c2, 1 - i, 2 - i + j), (c3, -i, 1 - i + j), (c4, -i, 2 - i + j)):
        if c:
            out = out + ParamScalar(c, (), _reduced=True) * F(a1, b1)
    return out


# -- cleared form -----------------------------------------------------------


@dataclass
class ClearedTable:
    """Polynomial coefficients ``entries = factor * A``."""

    n: int
    N: int
    entries: Dict[Index, ParamPoly]
    factor: ParamScalar

    def polynomial(self) -> Poly:
        N = self.N
        return Poly(RST, {(N - i - j, i, j): ParamScalar(v, (), _reduced=True) for (i, j), v in self.entries.items()})

    def as_table(self) -> CoeffTable:
        return CoeffTable(self.n, self.N, {k: ParamScalar(v, (), _reduced=True) for k, v in self.entries.items()})

    def content(self) -> Fraction:
        c = Fraction(0)
        from math import gcd

        num = 0
        for v in self.entries.values():
            for x in v.terms.values():
                num = gcd(num, x.numerator)
        c = Fraction(num)
        return c


def _display_form(atom) -> ParamPoly:
    # linear atoms var + c with 2c integral are written 2*var + 2c, matching
    # the (n + 2*lam - 2k) shape of the divisors
    if isinstance(atom, LinearFactor) and (2 * atom.shift).denominator == 1:
        return atom.poly.scale(2)
    return atom.integral_form()


def clear_denominators(table: CoeffTable, primitive: bool = False) -> ClearedTable:
    """Multiply through by the common denominator so all entries lie in Z[lam, mu].

    The denominator is assembled from the factored atoms; the sign makes the
    leading term of the r^N coefficient positive.  ``primitive=True``
    additionally divides out the integer content.
    """
    need: Dict[object, int] = {}
    for v in table.entries.values():
        for atom, k in v.factors:
            need[atom] = max(need.get(atom, 0), k)
    denom = ParamPoly.const(1)
    for atom, k in sorted(need.items(), key=lambda t: t[0].sort_key()):
        denom = denom * _display_form(atom) ** k
    scaled = {}
    for ij, v in table.entries.items():
        w = v * ParamScalar(denom, (), _reduced=True)
        if not w.is_polynomial():
            raise ArithmeticError("common denominator did not clear an entry")
        scaled[ij] = w.numer
    d = 1
    for p in scaled.values():
        for x in p.terms.values():
            d = lcm(d, x.denominator)
    lead = scaled.get((0, 0))
    if lead is None or not lead:
        lead = next((p for _, p in sorted(scaled.items()) if p), None)
    sign = -1 if lead is not None and lead.leading()[1] < 0 else 1
    mult = Fraction(sign * d)
    entries = {ij: p.scale(mult) for ij, p in scaled.items()}
    factor = ParamScalar(denom.scale(mult), (), _reduced=True)
    out = ClearedTable(table.n, table.N, entries, factor)
    if primitive:
        c = out.content()
        if c and c != 1:
            out = ClearedTable(table.n, table.N, {k: p.scale(1 / c) for k, p in entries.items()}, factor * (1 / c))
    return out


# -- annihilation -----------------------------------------------------------


def in_exclusion_set(x, n: int) -> bool:
    """x in {m - n/2 : m = 0, 1, 2, ...}."""
    y = as_fraction(x) + Fraction(n, 2)
    return y.denominator == 1 and y >= 0


@dataclass
class AnnihilationReport:
    n: int
    N: int
    mode: str
    point: Optional[Tuple[Fraction, Fraction]]
    residual_terms: List[int]

    @property
    def passed(self) -> bool:
        return all(k == 0 for k in self.residual_terms)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "point": None if self.point is None else [str(x) for x in self.point],
            "residual_terms": list(self.residual_terms),
            "passed": self.passed,
        }


def verify_annihilation(table: CoeffTable, mode: str = "symbolic", point=None) -> AnnihilationReport:
    """Expand the singular vector into (xi, eta) and apply every P_j^{xi,eta}.

    Symbolic mode works on the cleared table, which differs by a nonzero
    factor and keeps all coefficients polynomial.
    """
    n, N = table.n, table.N
    if mode == "symbolic" and table.point is not None:
        mode, point = "specialized", table.point
    if mode == "symbolic":
        p = clear_denominators(table).polynomial()
        lam, mu = LAM, MU
    elif mode == "specialized":
        if point is None:
            raise ValueError("specialized mode needs a point (lam0, mu0)")
        lam, mu = (as_fraction(x) for x in point)
        for name, x in (("lambda", lam), ("mu", mu)):
            if in_exclusion_set(x, n):
                raise DegenerateParameterError(f"{name} + n/2 = {x + Fraction(n, 2)} (exclusion set)", (0, 0), lam, mu)
        tab = table if table.point is not None else table.specialize(lam, mu)
        p = tab.polynomial()
        point = (lam, mu)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    e = expand_invariants(p, n)
    terms = [len(apply(build_nilradical(("P_diag", j, lam, mu), n), e)) for j in range(1, n + 1)]
    return AnnihilationReport(n, N, mode, point, terms)


# -- branching and special values ------------------------------------------


@dataclass
class BranchingReport:
    lam: object
    mu: object
    jmax: int
    summands: List[Tuple[object, int]]

    @property
    def weights(self) -> list:
        return [w for w, _ in self.summands]


def _affine(x):
    if isinstance(x, ParamScalar):
        if not x.is_polynomial():
            raise ValueError("weights must be affine in lambda, mu")
        x = x.numer
    if isinstance(x, ParamPoly):
        if not x.is_affine() and not x.is_constant():
            raise ValueError("weights must be affine in lambda, mu")
        return x.constant_value() if x.is_constant() else x
    return as_fraction(x)


def branching_decomposition(lam, mu, jmax: int) -> BranchingReport:
    """Summands nu_j = lam + mu - 2j, j = 0..jmax, each with multiplicity one."""
    if jmax < 0:
        raise ValueError("jmax must be >= 0")
    lam, mu = _affine(lam), _affine(mu)
    base = lam + mu
    return BranchingReport(lam, mu, jmax, [(base - 2 * j, 1) for j in range(jmax + 1)])


def system_matrix(n: int, N: int, lam, mu) -> List[List[Fraction]]:
    return full_system(n, N).matrix(as_fraction(lam), as_fraction(mu))


def solution_dimension(n: int, N: int, lam, mu) -> int:
    """Dimension of the solution space of the specialized generated system."""
    rows = system_matrix(n, N, lam, mu)
    return linsolve.nullity(rows, len(full_system(n, N).unknowns))


def normalized_solvable(n: int, N: int, lam, mu) -> bool:
    """Whether the specialized system admits a solution with A_{0,0} = 1."""
    system = full_system(n, N)
    rows = system_matrix(n, N, lam, mu)
    k = system.unknowns.index((0, 0))
    rest = [[x for c, x in enumerate(r) if c != k] for r in rows]
    rhs = [-r[k] for r in rows]
    if not rest or not rest[0]:
        return all(b == 0 for b in rhs)
    return linsolve.is_consistent(rest, rhs)


def random_points(seed: int, count: int, n: int, bound: int = 50) -> List[Tuple[Fraction, Fraction]]:
    """Seeded rational (lam, mu) pairs with |num|, den <= bound, avoiding
    every value x with x + n/2 integral (this covers all tracked divisors).
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pair = []
        while len(pair) < 2:
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if (x + Fraction(n, 2)).denominator != 1:
                pair.append(x)
        out.append(tuple(pair))
    return out


@dataclass
class ScanPoint:
    lam: Fraction
    mu: Fraction
    varied: str
    dimension: int
    normalized_solvable: bool
    recurrence_error: Optional[str]
    closed_form_defined: bool
    closed_form_failures: List[Index] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return self.dimension > 1 or not self.normalized_solvable

    def as_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "varied": self.varied,
            "dimension": self.dimension,
            "normalized_solvable": self.normalized_solvable,
            "flagged": self.flagged,
            "recurrence_error": self.recurrence_error,
            "closed_form_defined": self.closed_form_defined,
            "closed_form_failures": [list(ij) for ij in self.closed_form_failures],
        }


@dataclass
class SpecialValueReport:
    n: int
    N: int
    seed: int
    excluded_values: List[Fraction]
    points: List[ScanPoint]

    def flagged(self) -> List[ScanPoint]:
        return [p for p in self.points if p.flagged]

    def find(self, lam=None, mu=None) -> List[ScanPoint]:
        return [
            p
            for p in self.points
            if (lam is None or p.lam == as_fraction(lam)) and (mu is None or p.mu == as_fraction(mu))
        ]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "seed": self.seed,
            "excluded_values": [str(x) for x in self.excluded_values],
            "points": [p.as_dict() for p in self.points],
        }


def scan_point(n: int, N: int, lam, mu, varied: str = "") -> ScanPoint:
    lam, mu = as_fraction(lam), as_fraction(mu)
    try:
        solve_recurrence(n, N, lam, mu)
        err = None
    except DegenerateParameterError as exc:
        err = exc.divisor
    failures = []
    for ij in triangle(N):
        try:
            closed_form_coeff(n, N, *ij, lam, mu)
        except (ZeroDivisionError, UndefinedGammaRatioError):
            failures.append(ij)
    return ScanPoint(
        lam, mu, varied, solution_dimension(n, N, lam, mu), normalized_solvable(n, N, lam, mu), err, not failures, failures
    )


def special_value_scan(n: int, N: int, seed: int = 0) -> SpecialValueReport:
    """Examine the values m - n/2 hit by the divisors n + 2x - 2 - 2j, j < N.

    Each candidate is tried for mu (lambda generic), for lambda (mu
    generic) and for both at once; generic partners come from ``seed``.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if N < 1:
        raise ValueError("N must be >= 1")
    values = [Fraction(2 + 2 * j - n, 2) for j in range(N)]
    generic = random_points(seed, len(values), n)
    points = []
    for x, (g1, g2) in zip(values, generic):
        points.append(scan_point(n, N, g1, x, "mu"))
        points.append(scan_point(n, N, x, g2, "lambda"))
        points.append(scan_point(n, N, x, x, "both"))
    return SpecialValueReport(n, N, seed, values, points)

"""Bi-differential operators built from a coefficient table.

``B_N = sum A_{i,j} s~^i t~^j r~^k`` with ``s~ = Lap_x``, ``t~ = Lap_y`` and
``r~ = sum_k d_{x_k} d_{y_k}``, applied to ``f(x) g(y)`` and restricted to
the diagonal ``y = x``.  Densities transform under the special conformal
generators ``Q_j(w) = -1/2 |x|^2 d_j + x_j (E - w)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Tuple

from .algebra import LAM, MU, ONE, ParamPoly, ParamScalar, as_fraction
from .operators import (
    RST,
    DiffOp,
    Poly,
    SpaceMismatchError,
    VarSpace,
    apply,
    build_basic,
    build_nilradical,
    x_space,
    xy_space,
)
from .singular import CoeffTable

SYMBOLS = VarSpace(("s~", "t~", "r~"))
TN = VarSpace(("<t,t>", "<n,n>", "<t,n>"))


class OutputWeightError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ScalarDensity:
    poly: Poly
    weight: object

    def __post_init__(self):
        w = self.weight
        if isinstance(w, ParamScalar):
            if not w.is_polynomial():
                raise ValueError("density weight must be affine in lambda, mu")
            w = w.numer
        if isinstance(w, ParamPoly):
            if not (w.is_affine() or w.is_constant()):
                raise ValueError("density weight must be affine in lambda, mu")
        else:
            w = ParamPoly.const(as_fraction(w))
        object.__setattr__(self, "weight", w)


@dataclass(eq=False)
class BracketSymbol:
    n: int
    N: int
    table: CoeffTable
    symbol: Poly
    _cache: Dict[tuple, Poly] = field(default_factory=dict, repr=False)

    @property
    def weights(self) -> Tuple[ParamPoly, ParamPoly]:
        if self.table.point is None:
            return LAM, MU
        return tuple(ParamPoly.const(x) for x in self.table.point)

    def __str__(self) -> str:
        return str(self.symbol)


def build_bracket(table: CoeffTable) -> BracketSymbol:
    N = table.N
    symbol = Poly(SYMBOLS, {(i, j, N - i - j): v for (i, j), v in table.entries.items()})
    return BracketSymbol(table.n, N, table, symbol)


def _restrict(p: Poly, n: int) -> Poly:
    out: Dict[tuple, ParamScalar] = {}
    for e, c in p.terms.items():
        d = tuple(a + b for a, b in zip(e[:n], e[n:]))
        s = out.get(d)
        out[d] = c if s is None else s + c
    return Poly(x_space(n), {e: c for e, c in out.items() if c}, _trusted=True)


def _on_monomials(B: BracketSymbol, a: tuple, b: tuple) -> Poly:
    key = (a, b)
    hit = B._cache.get(key)
    if hit is not None:
        return hit
    n = B.n
    sp = xy_space(n)
    F = Poly(sp, {tuple(a) + tuple(b): ONE}, _trusted=True)
    lap_x = build_basic("laplacian", sp, range(n))
    lap_y = build_basic("laplacian", sp, range(n, 2 * n))
    mixed = DiffOp(sp, {tuple(1 if q in (k, n + k) else 0 for q in range(2 * n)): Poly.const(sp, 1) for k in range(n)})
    total = Poly(sp, {}, _trusted=True)
    rk = {0: F}
    for (i, j, k), c in B.symbol.terms.items():
        if k not in rk:
            for q in range(1, k + 1):
                if q not in rk:
                    rk[q] = apply(mixed, rk[q - 1])
        G = rk[k]
        for _ in range(j):
            G = apply(lap_y, G)
        for _ in range(i):
            G = apply(lap_x, G)
        if G:
            total = total + G.scale(c)
    out = _restrict(total, n)
    B._cache[key] = out
    return out


def _poly_of(f, n: int) -> Poly:
    p = f.poly if isinstance(f, ScalarDensity) else f
    if not isinstance(p, Poly):
        raise TypeError("expected a Poly or ScalarDensity")
    if p.space != x_space(n):
        raise SpaceMismatchError(f"density lives on {p.space.names}, bracket expects {x_space(n).names}")
    return p


def apply_bracket(B: BracketSymbol, f, g) -> Poly:
    """B_N(f, g) restricted to the diagonal; bilinear in (f, g)."""
    pf, pg = _poly_of(f, B.n), _poly_of(g, B.n)
    out = Poly(x_space(B.n), {}, _trusted=True)
    for a, ca in pf.terms.items():
        for b, cb in pg.terms.items():
            m = _on_monomials(B, a, b)
            if m:
                out = out + m.scale(ca * cb)
    return out


def _generator_op(generator, n: int, w) -> DiffOp:
    kind = generator[0]
    sp = x_space(n)
    if kind == "translation":
        j = generator[1]
        if not 1 <= j <= n:
            raise ValueError(f"index {j} out of range 1..{n}")
        return DiffOp.partial(sp, j - 1)
    if kind == "rotation":
        return build_basic(("rotation", generator[1], generator[2]), sp)
    if kind == "special_conformal":
        return build_nilradical(("Q", generator[1], w), n)
    raise ValueError(f"unknown generator {generator!r}")


def _weight_of(f, default):
    return f.weight if isinstance(f, ScalarDensity) else default


def equivariance_residual(B: BracketSymbol, generator, f, g, w_out=None) -> Poly:
    """D_out(B(f, g)) - B(D_lam f, g) - B(f, D_mu g)."""
    lam, mu = B.weights
    wf, wg = _weight_of(f, lam), _weight_of(g, mu)
    if w_out is None:
        w_out = wf + wg
    pf, pg = _poly_of(f, B.n), _poly_of(g, B.n)
    d_out = _generator_op(generator, B.n, w_out)
    d_f = _generator_op(generator, B.n, wf)
    d_g = _generator_op(generator, B.n, wg)
    return apply(d_out, apply_bracket(B, pf, pg)) - apply_bracket(B, apply(d_f, pf), pg) - apply_bracket(B, pf, apply(d_g, pg))


def monomials(n: int, degree: int) -> List[Poly]:
    """All monomials of total degree <= ``degree`` in x_1..x_n."""
    sp = x_space(n)
    out = []
    for e in product(range(degree + 1), repeat=n):
        if sum(e) <= degree:
            out.append(Poly(sp, {e: ONE}, _trusted=True))
    out.sort(key=lambda p: (sum(next(iter(p.terms))), next(iter(p.terms))))
    return out


def generators(n: int, kinds: Iterable[str] = ("translation", "rotation", "special_conformal")) -> List[tuple]:
    out = []
    for kind in kinds:
        if kind == "rotation":
            out += [("rotation", i, j) for i, j in combinations(range(1, n + 1), 2)]
        else:
            out += [(kind, j) for j in range(1, n + 1)]
    return out


@dataclass
class EquivarianceReport:
    n: int
    N: int
    degree: int
    w_out: object
    checked: int
    failures: List[tuple]

    @property
    def passed(self) -> bool:
        return not self.failures


def equivariance_sweep(B: BracketSymbol, degree: int, w_out=None, kinds=("translation", "rotation", "special_conformal"), stop_at_first=False) -> EquivarianceReport:
    """Residuals for every generator of the given kinds on every monomial pair of degree <= ``degree``."""
    mons = monomials(B.n, degree)
    checked = 0
    failures = []
    for gen in generators(B.n, kinds):
        for f in mons:
            for g in mons:
                checked += 1
                r = equivariance_residual(B, gen, f, g, w_out)
                if r:
                    failures.append((gen, next(iter(f.terms)), next(iter(g.terms))))
                    if stop_at_first:
                        return EquivarianceReport(B.n, B.N, degree, w_out, checked, failures)
    return EquivarianceReport(B.n, B.N, degree, w_out, checked, failures)


def infer_output_weight(B: BracketSymbol, degree_bound: int) -> ParamPoly:
    """The unique ``lam + mu + c`` (c an integer) making every special-conformal
    residual vanish on monomial pairs up to ``degree_bound``.

    The residual is affine in c:  R(c) = R(0) - c x_j B(f, g).
    """
    if degree_bound < B.N + 1:
        raise ValueError("degree_bound must be >= N + 1")
    lam, mu = B.weights
    base = lam + mu
    mons = monomials(B.n, degree_bound)
    sp = x_space(B.n)
    c: Optional[ParamScalar] = None
    for gen in generators(B.n, ("special_conformal",)):
        xj = Poly.var(sp, gen[1] - 1)
        for f in mons:
            for g in mons:
                r0 = equivariance_residual(B, gen, f, g, base)
                slope = xj * apply_bracket(B, f, g)
                if not slope:
                    if r0:
                        raise OutputWeightError(f"no output weight removes the residual for {gen} on ({f}, {g})")
                    continue
                mono, sc = next(iter(slope.terms.items()))
                cand = r0.coeff(mono) / sc
                if r0 != slope.scale(cand):
                    raise OutputWeightError(f"residual for {gen} on ({f}, {g}) is not a multiple of x_j B(f, g)")
                if c is None:
                    c = cand
                elif c != cand:
                    raise OutputWeightError(f"inconsistent output weights {c} and {cand}")
    if c is None:
        raise OutputWeightError("the bracket vanishes on every probe; weight undetermined")
    if not c.is_constant() or c.constant_value().denominator != 1:
        raise OutputWeightError(f"output weight shift {c} is not an integer")
    return base + c.constant_value()


def tn_rewrite(p: Poly) -> Poly:
    """Substitute r, s, t by the quarter-formulas in <t,t>, <n,n>, <t,n>."""
    if p.space != RST:
        raise SpaceMismatchError("tn_rewrite expects a polynomial in r, s, t")
    q = Fraction(1, 4)
    tt, nn, tn = (Poly.var(TN, k) for k in range(3))
    images = [
        (tt - nn).scale(q),
        (tt + nn + tn.scale(2)).scale(q),
        (tt + nn - tn.scale(2)).scale(q),
    ]
    return p.substitute(images)

"""Polynomials in named variables and linear differential operators.

Coefficients are :class:`~rcbracket.algebra.ParamScalar`, so lambda and mu
stay symbolic.  Variable spaces used throughout:

* ``xi_space(n)``: the Fourier coordinates of one copy of the nilradical,
* ``xi_eta_space(n)``: both copies; the second copy is called ``eta`` here
  (the weight ``nu = lambda + mu - 2N`` already uses that letter),
* ``x_space(n)`` / ``xy_space(n)``: geometric coordinates,
* ``RST``: the invariants ``r = <xi, eta>``, ``s = <xi, xi>``, ``t = <eta, eta>``,
* ``UV``: ``u = s/r``, ``v = t/r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import ONE, ZERO, ParamPoly, ParamScalar

Mono = Tuple[int, ...]


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class VarSpace:
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self.names}") from None

    def indices(self, subset: Optional[Iterable] = None) -> List[int]:
        if subset is None:
            return list(range(len(self.names)))
        return [k if isinstance(k, int) else self.index(k) for k in subset]

    def unit(self, k: int, power: int = 1) -> Mono:
        e = [0] * len(self.names)
        e[k] = power
        return tuple(e)

    @property
    def zero(self) -> Mono:
        return (0,) * len(self.names)


def xi_space(n: int) -> VarSpace:
    return VarSpace(tuple(f"xi{k}" for k in range(1, n + 1)))


def xi_eta_space(n: int) -> VarSpace:
    return VarSpace(tuple(f"xi{k}" for k in range(1, n + 1)) + tuple(f"eta{k}" for k in range(1, n + 1)))


def x_space(n: int) -> VarSpace:
    return VarSpace(tuple(f"x{k}" for k in range(1, n + 1)))


def xy_space(n: int) -> VarSpace:
    return VarSpace(tuple(f"x{k}" for k in range(1, n + 1)) + tuple(f"y{k}" for k in range(1, n + 1)))


RST = VarSpace(("r", "s", "t"))
UV = VarSpace(("u", "v"))


def _sc(c) -> ParamScalar:
    return c if isinstance(c, ParamScalar) else ParamScalar.coerce(c)


class Poly:
    """Sparse polynomial over ParamScalar in a :class:`VarSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Optional[Dict[Mono, ParamScalar]] = None, _trusted=False):
        self.space = space
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(space):
                raise SpaceMismatchError(f"exponent {e} does not fit {space.names}")
            c = _sc(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def const(cls, space: VarSpace, c=1) -> "Poly":
        return cls(space, {space.zero: c})

    @classmethod
    def var(cls, space: VarSpace, name) -> "Poly":
        k = name if isinstance(name, int) else space.index(name)
        return cls(space, {space.unit(k): ONE}, _trusted=True)

    @classmethod
    def monomial(cls, space: VarSpace, exps: Sequence[int], c=1) -> "Poly":
        return cls(space, {tuple(exps): c})

    def _check(self, other: "Poly"):
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space.names} vs {other.space.names}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.space, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.space, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.space, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.space, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _sc(c)
        if not c:
            return Poly(self.space, {}, _trusted=True)
        if c == ONE:
            return self
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return Poly(self.space, out, _trusted=True)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Mono, ParamScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly(self.space, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.space, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.space == other.space and self.terms == other.terms
        return self == Poly.const(self.space, other)

    __hash__ = None

    def coeff(self, exps: Sequence[int]) -> ParamScalar:
        return self.terms.get(tuple(exps), ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def diff(self, k: int, times: int = 1) -> "Poly":
        if times == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            p = e[k]
            if p < times:
                continue
            f = 1
            for q in range(p - times + 1, p + 1):
                f *= q
            ne = e[:k] + (p - times,) + e[k + 1:]
            out[ne] = c * f
        return Poly(self.space, out, _trusted=True)

    def derivative(self, alpha: Sequence[int]) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if any(p < a for p, a in zip(e, alpha)):
                continue
            f = 1
            for p, a in zip(e, alpha):
                for q in range(p - a + 1, p + 1):
                    f *= q
            out[tuple(p - a for p, a in zip(e, alpha))] = c * f
        return Poly(self.space, out, _trusted=True)

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.space, {e: fn(c) for e, c in self.terms.items()})

    def swap_params(self) -> "Poly":
        return Poly(self.space, {e: c.swap_params() for e, c in self.terms.items()}, _trusted=True)

    def specialize(self, lam, mu) -> "Poly":
        return self.map_coeffs(lambda c: c.at(lam, mu))

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring homomorphism sending variable ``k`` to ``images[k]``."""
        if len(images) != len(self.space):
            raise SpaceMismatchError("one image per variable is required")
        target = images[0].space
        powers: List[Dict[int, Poly]] = [{0: Poly.const(target, 1)} for _ in images]

        def pw(k, d):
            cache = powers[k]
            if d not in cache:
                cache[d] = pw(k, d - 1) * images[k]
            return cache[d]

        acc: Dict[Mono, ParamScalar] = {}
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for k, d in enumerate(e):
                if d:
                    term = term * pw(k, d)
            for te, tc in term.terms.items():
                s = acc.get(te)
                acc[te] = tc if s is None else s + tc
        return Poly(target, {e: c for e, c in acc.items() if c}, _trusted=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(
                (n if p == 1 else f"{n}^{p}") for n, p in zip(self.space.names, e) if p
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            else:
                if len(c.numer.terms) > 1 and c.is_polynomial():
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Poly[{','.join(self.space.names)}]({self})"


class DiffOp:
    """Finite sum of ``coeff(x) * d^alpha``; ``terms`` maps ``alpha`` to a Poly."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Optional[Dict[Mono, Poly]] = None):
        self.space = space
        clean = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if len(a) != len(space):
                raise SpaceMismatchError(f"multi-index {a} does not fit {space.names}")
            if not isinstance(c, Poly):
                c = Poly.const(space, c)
            elif c.space != space:
                raise SpaceMismatchError(f"coefficient lives on {c.space.names}")
            if c:
                clean[a] = c
        self.terms = clean

    @classmethod
    def identity(cls, space: VarSpace) -> "DiffOp":
        return cls(space, {space.zero: Poly.const(space, 1)})

    @classmethod
    def mult(cls, p: Poly) -> "DiffOp":
        return cls(p.space, {p.space.zero: p})

    @classmethod
    def partial(cls, space: VarSpace, name, times: int = 1) -> "DiffOp":
        k = name if isinstance(name, int) else space.index(name)
        return cls(space, {space.unit(k, times): Poly.const(space, 1)})

    def _check(self, other):
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space.names} vs {other.space.names}")

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return DiffOp(self.space, out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.space, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def __mul__(self, c) -> "DiffOp":
        if isinstance(c, DiffOp):
            raise TypeError("use @ to compose differential operators")
        if isinstance(c, Poly):
            return DiffOp(self.space, {a: c * p for a, p in self.terms.items()})
        return DiffOp(self.space, {a: p.scale(c) for a, p in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOp) and self.space == other.space and self.terms == other.terms

    __hash__ = None

    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def swap_params(self) -> "DiffOp":
        return DiffOp(self.space, {a: c.swap_params() for a, c in self.terms.items()})

    def rename(self, space: VarSpace, perm: Sequence[int]) -> "DiffOp":
        """Transport to ``space`` with variable ``k`` sent to ``perm[k]``."""
        def move(e):
            out = [0] * len(space)
            for k, p in enumerate(e):
                out[perm[k]] += p
            return tuple(out)

        return DiffOp(
            space,
            {move(a): Poly(space, {move(e): c for e, c in p.terms.items()}) for a, p in self.terms.items()},
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in sorted(self.terms.items()):
            d = "".join(
                (f"d_{n}" if p == 1 else f"d_{n}^{p}") for n, p in zip(self.space.names, a) if p
            )
            parts.append(f"({c})" + (f"*{d}" if d else ""))
        return " + ".join(parts)

    __repr__ = __str__


def apply(op: DiffOp, p: Poly) -> Poly:
    """``sum coeff * d^alpha p``."""
    if op.space != p.space:
        raise SpaceMismatchError(f"operator on {op.space.names} applied to polynomial on {p.space.names}")
    out = Poly(p.space, {}, _trusted=True)
    for alpha, c in op.terms.items():
        dp = p.derivative(alpha)
        if dp:
            out = out + c * dp
    return out


def compose(op1: DiffOp, op2: DiffOp) -> DiffOp:
    """Normal-ordered ``op1 o op2`` via the Leibniz rule."""
    if op1.space != op2.space:
        raise SpaceMismatchError(f"{op1.space.names} vs {op2.space.names}")
    space = op1.space
    out: Dict[Mono, Poly] = {}
    for a, c1 in op1.terms.items():
        # d^a (c2 d^b) = sum_{g <= a} C(a, g) (d^g c2) d^{a-g+b}
        gammas = [()]
        for ak in a:
            gammas = [g + (k,) for g in gammas for k in range(ak + 1)]
        for b, c2 in op2.terms.items():
            for g in gammas:
                dc = c2.derivative(g)
                if not dc:
                    continue
                f = 1
                for ak, gk in zip(a, g):
                    f *= comb(ak, gk)
                m = tuple(ak - gk + bk for ak, gk, bk in zip(a, g, b))
                term = (c1 * dc).scale(f)
                out[m] = out[m] + term if m in out else term
    return DiffOp(space, out)


# -- basic builders ---------------------------------------------------------


def build_basic(kind, space: VarSpace, subset: Optional[Iterable] = None) -> DiffOp:
    """Euler, Laplacian, rotation or multiplication operator on ``subset``.

    ``kind`` is ``"euler"``, ``"laplacian"``, ``("rotation", i, j)`` or
    ``("mult", name)``.  Rotation indices are 1-based positions inside the
    subset(s); passing several subsets (a list of lists) gives the diagonal
    sum, e.g. ``M^{xi,eta}_{ij}``.
    """
    if subset is not None and subset and isinstance(next(iter(subset)), (list, tuple)):
        parts = [build_basic(kind, space, s) for s in subset]
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out
    idx = space.indices(subset)
    if kind == "euler":
        return DiffOp(space, {space.unit(k): Poly.var(space, k) for k in idx})
    if kind == "laplacian":
        return DiffOp(space, {space.unit(k, 2): Poly.const(space, 1) for k in idx})
    if isinstance(kind, tuple) and kind[0] == "rotation":
        _, i, j = kind
        if i == j or not (1 <= i <= len(idx)) or not (1 <= j <= len(idx)):
            raise ValueError(f"invalid rotation indices ({i}, {j})")
        ki, kj = idx[i - 1], idx[j - 1]
        # M_ij = x_j d_i - x_i d_j
        return DiffOp(space, {space.unit(ki): Poly.var(space, kj), space.unit(kj): -Poly.var(space, ki)})
    if isinstance(kind, tuple) and kind[0] == "mult":
        return DiffOp.mult(Poly.var(space, kind[1]))
    raise ValueError(f"unknown operator kind {kind!r}")


def _half_sq_norm(space: VarSpace, idx) -> Poly:
    out = Poly(space, {}, _trusted=True)
    for k in idx:
        out = out + Poly.monomial(space, space.unit(k, 2), Fraction(1, 2))
    return out


def _p_component(space: VarSpace, idx: List[int], j: int, w) -> DiffOp:
    # 1/2 z_j Lap + (w - E) d_j on the variables idx
    w = _sc(w)
    kj = idx[j - 1]
    lap = build_basic("laplacian", space, idx)
    head = DiffOp.mult(Poly.var(space, kj).scale(Fraction(1, 2))) @ lap
    dj = DiffOp.partial(space, kj)
    eul = build_basic("euler", space, idx)
    return head + (DiffOp.identity(space) * w - eul) @ dj


def build_nilradical(kind, n: int) -> DiffOp:
    """``("Q", j, w)``, ``("P_xi", j, w)`` or ``("P_diag", j, lam, mu)``.

    Q_j(w) = -1/2 |x|^2 d_j + x_j (-w + E) on x-space; P_xi is its Fourier
    dual 1/2 xi_j Lap + (w - E) d_j (overall unit dropped); P_diag acts on
    both copies with weights lam and mu.
    """
    name, j = kind[0], kind[1]
    if not 1 <= j <= n:
        raise ValueError(f"index {j} out of range 1..{n}")
    if name == "Q":
        w = _sc(kind[2])
        sp = x_space(n)
        idx = sp.indices()
        kj = idx[j - 1]
        term1 = DiffOp.mult(-_half_sq_norm(sp, idx)) @ DiffOp.partial(sp, kj)
        xj = DiffOp.mult(Poly.var(sp, kj))
        return term1 + xj @ (build_basic("euler", sp) - DiffOp.identity(sp) * w)
    if name == "P_xi":
        sp = xi_space(n)
        return _p_component(sp, sp.indices(), j, kind[2])
    if name == "P_diag":
        sp = xi_eta_space(n)
        return _p_component(sp, list(range(n)), j, kind[2]) + _p_component(sp, list(range(n, 2 * n)), j, kind[3])
    raise ValueError(f"unknown nilradical operator {name!r}")


# -- reduced operators ------------------------------------------------------


def _consts(space, *vals):
    return [DiffOp.identity(space) * _sc(v) for v in vals]


def reduced_components(n: int, lam, mu) -> Tuple[DiffOp, DiffOp]:
    """The xi_i- and eta_i-components of P_i^{r,s,t} as operators on Pol[r,s,t]."""
    lam, mu = _sc(lam), _sc(mu)
    sp = RST
    I = DiffOp.identity(sp)
    r, s, t = (DiffOp.mult(Poly.var(sp, k)) for k in "rst")
    dr, ds, dt = (DiffOp.partial(sp, k) for k in "rst")
    Er, Es, Et = (build_basic("euler", sp, [k]) for k in "rst")
    half = Fraction(1, 2)
    xi_part = (
        (t @ dr @ dr) * half
        + (I * (lam * 2 + (n - 2)) - Es * 2) @ ds
        - (Er + Et * 2 - I * mu) @ dr
    )
    eta_part = (
        (s @ dr @ dr) * half
        + (I * (mu * 2 + (n - 2)) - Et * 2) @ dt
        - (Er + Es * 2 - I * lam) @ dr
    )
    return xi_part, eta_part


def build_reduced(kind: str, n: int, lam, mu, N: Optional[int] = None):
    """Operators on the invariants.

    ``"P_rst_i"`` returns the (xi-component, eta-component) pair;
    ``"P_rst_xi"``/``"P_rst_nu"`` are the contractions with xi and eta;
    ``"P_uv_xi"``/``"P_uv_nu"`` act on Pol[u, v] for homogeneity ``N``.
    """
    lam, mu = _sc(lam), _sc(mu)
    if kind == "P_rst_i":
        return reduced_components(n, lam, mu)
    if kind in ("P_rst_xi", "P_rst_nu"):
        X, Y = reduced_components(n, lam, mu)
        r, s, t = (DiffOp.mult(Poly.var(RST, k)) for k in "rst")
        if kind == "P_rst_xi":
            return s @ X + r @ Y
        return r @ X + t @ Y
    if kind in ("P_uv_xi", "P_uv_nu"):
        if N is None or N < 0:
            raise ValueError("P_uv operators need N >= 0")
        if kind == "P_uv_xi":
            return _p_uv(n, lam, mu, N, first=0)
        return _p_uv(n, mu, lam, N, first=1)
    raise ValueError(f"unknown reduced operator {kind!r}")


def _p_uv(n: int, lam: ParamScalar, mu: ParamScalar, N: int, first: int) -> DiffOp:
    # first=0: P^{u,v}_xi(lam, mu); first=1: the same expression with u <-> v,
    # called with the weights already exchanged, i.e. P^{u,v}_nu(mu, lam)
    sp = UV
    a, b = ("u", "v") if first == 0 else ("v", "u")
    I = DiffOp.identity(sp)
    A = DiffOp.mult(Poly.var(sp, a))
    AB = DiffOp.mult(Poly.var(sp, a) * Poly.var(sp, b))
    Ea = build_basic("euler", sp, [a])
    Eb = build_basic("euler", sp, [b])
    db = DiffOp.partial(sp, b)
    E = Ea + Eb
    half = Fraction(1, 2)
    return (
        (AB @ (E - I * (N - 1)) @ (E - I * N)) * half
        - Ea @ Ea
        + Ea * (lam + (n - 1))
        + (Eb - I * N) @ ((-Eb) + I * (N - 1) - I * lam)
        + (I * (mu * 2 + (n - 2)) - Eb * 2) @ db
        + (A @ (E - I * N) @ ((-Ea) + Eb * 3 + I * (N - 1) - I * (mu * 2))) * half
    )


def invariant_images(n: int) -> List[Poly]:
    """r, s, t as polynomials on the (xi, eta)-space."""
    sp = xi_eta_space(n)
    xi = [Poly.var(sp, k) for k in range(n)]
    eta = [Poly.var(sp, n + k) for k in range(n)]
    r = sum((a * b for a, b in zip(xi, eta)), Poly(sp, {}))
    s = sum((a * a for a in xi), Poly(sp, {}))
    t = sum((b * b for b in eta), Poly(sp, {}))
    return [r, s, t]


def expand_invariants(p: Poly, n: int) -> Poly:
    """Substitute ``r = sum xi_i eta_i``, ``s = |xi|^2``, ``t = |eta|^2``."""
    if p.space != RST:
        raise SpaceMismatchError("expand_invariants expects a polynomial in r, s, t")
    if n < 1:
        raise ValueError("n must be >= 1")
    return p.substitute(invariant_images(n))


def dehomogenize(p: Poly, N: int) -> Poly:
    """``p(r, s, t) = r^N q(s/r, t/r)``; returns ``q`` on Pol[u, v]."""
    if p.space != RST:
        raise SpaceMismatchError("dehomogenize expects a polynomial in r, s, t")
    if not p.is_homogeneous(N):
        raise ValueError(f"polynomial is not homogeneous of degree {N}")
    return Poly(UV, {(b, c): v for (a, b, c), v in p.terms.items()}, _trusted=True)


def homogenize(q: Poly, N: int) -> Poly:
    if q.space != UV:
        raise SpaceMismatchError("homogenize expects a polynomial in u, v")
    out = {}
    for (b, c), v in q.terms.items():
        if b + c > N:
            raise ValueError(f"degree of {q} exceeds {N}")
        out[(N - b - c, b, c)] = v
    return Poly(RST, out, _trusted=True)


@dataclass
class LinearSystem:
    """Homogeneous linear equations in the unknowns ``A_{i,j}``.

    ``equations[k]`` maps unknowns to coefficients; ``labels[k]`` records
    the operator and output monomial the equation was read off from.
    """

    unknowns: List[Tuple[int, int]]
    equations: List[Dict[Tuple[int, int], ParamScalar]]
    labels: List[tuple] = field(default_factory=list)

    def __post_init__(self):
        known = set(self.unknowns)
        for eq in self.equations:
            missing = set(eq) - known
            if missing:
                raise ValueError(f"equation references unknowns {sorted(missing)} outside the system")

    def __add__(self, other: "LinearSystem") -> "LinearSystem":
        unknowns = list(self.unknowns) + [u for u in other.unknowns if u not in set(self.unknowns)]
        return LinearSystem(unknowns, self.equations + other.equations, self.labels + other.labels)

    def residuals(self, values: Dict[Tuple[int, int], ParamScalar]) -> List[ParamScalar]:
        out = []
        for eq in self.equations:
            acc = ZERO
            for u, c in eq.items():
                v = values.get(u)
                if v is not None:
                    acc = acc + c * v
            out.append(acc)
        return out

    def equation_for(self, label) -> Optional[Dict[Tuple[int, int], ParamScalar]]:
        for lab, eq in zip(self.labels, self.equations):
            if lab == label:
                return eq
        return None

    def matrix(self, lam=None, mu=None) -> List[List[Fraction]]:
        """Coefficient matrix over Q; specializes at ``(lam, mu)`` when given."""
        rows = []
        for eq in self.equations:
            row = []
            for u in self.unknowns:
                c = eq.get(u, ZERO)
                row.append(c.specialize(lam, mu) if lam is not None else c.constant_value())
            rows.append(row)
        return rows


def extract_linear_system(op: DiffOp, N: int, tag: str = "") -> LinearSystem:
    """Read off one equation per output monomial of ``op`` applied to
    ``sum_{i+j<=N} A_{i,j} u^i v^j``.
    """
    if op.space != UV:
        raise SpaceMismatchError("extract_linear_system expects an operator on Pol[u, v]")
    unknowns = [(i, d - i) for d in range(N + 1) for i in range(d + 1)]
    rows: Dict[Mono, Dict[Tuple[int, int], ParamScalar]] = {}
    for ij in unknowns:
        image = apply(op, Poly.monomial(UV, ij))
        for mono, c in image.terms.items():
            rows.setdefault(mono, {})[ij] = c
    monos = sorted(rows, key=lambda m: (sum(m), m))
    return LinearSystem(unknowns, [rows[m] for m in monos], [(tag, m) for m in monos])

"""From the singular vector to a bilinear differential operator.

B_N replaces s, t, r by Lap_x, Lap_y and sum d_{x_k} d_{y_k}, then sets y = x.
Its output weight is found by experiment, then every generator is swept.
"""

from rcbracket.algebra import LAM, MU
from rcbracket.bracket import apply_bracket, build_bracket, equivariance_sweep, infer_output_weight, tn_rewrite
from rcbracket.operators import RST, Poly, x_space
from rcbracket.serialize import parse_poly
from rcbracket.singular import solve_recurrence

n = 3
X = x_space(n)
B = build_bracket(solve_recurrence(n, 1))
print("B_1 symbol:", B)
print("B_1(x1, x1)     =", apply_bracket(B, parse_poly("x1", X), parse_poly("x1", X)))
print("B_1(|x|^2, 1)   =", apply_bracket(B, parse_poly("x1^2+x2^2+x3^2", X), parse_poly("1", X)))

for N in range(3):
    B = build_bracket(solve_recurrence(n, N))
    w = infer_output_weight(B, N + 1)
    rep = equivariance_sweep(B, 3, w)
    print(f"N={N}: output weight {w}; {rep.checked} generator/monomial checks, {len(rep.failures)} failures")

# the output weight l + m + 2N does not fit these generators
B = build_bracket(solve_recurrence(n, 1))
rep = equivariance_sweep(B, 2, LAM + MU + 2, kinds=("special_conformal",), stop_at_first=True)
print("with output weight l + m + 2 instead:", "pass" if rep.passed else "fails")

r, s, t = (Poly.var(RST, k) for k in range(3))
print("tangent/normal form of s - t:", tn_rewrite(s - t))

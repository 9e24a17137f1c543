"""The solved polynomial, expanded in xi and eta, is killed by every P_j.

A table with one entry nudged is not, which is what makes the check meaningful.
"""

from rcbracket.algebra import ParamScalar
from rcbracket.operators import apply, build_nilradical, expand_invariants
from rcbracket.singular import solve_recurrence, verify_annihilation

n, N = 3, 2
T = solve_recurrence(n, N)
p = T.polynomial()
print("p(r,s,t) =", p)

e = expand_invariants(p, n)
print(f"expanded in xi_1..xi_{n}, eta_1..eta_{n}: {len(e)} terms")

for j in range(1, n + 1):
    P = build_nilradical(("P_diag", j, ParamScalar.lam(), ParamScalar.mu()), n)
    print(f"  P_{j} p = {apply(P, e) or 0}")

print("verify_annihilation:", verify_annihilation(T).passed)

bad = T.perturbed((1, 1), 1)
rep = verify_annihilation(bad)
print("after adding 1 to A(1,1):", rep.passed, "residual terms per j:", rep.residual_terms)

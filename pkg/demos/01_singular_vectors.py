"""Solve the four-term recurrence for small N and print both normal forms.

Run:  python3 demos/01_singular_vectors.py
"""

from rcbracket.singular import clear_denominators, closed_form_coeff, solve_recurrence, triangle

n = 3

for N in (1, 2):
    T = solve_recurrence(n, N)
    print(f"n={n}, N={N}: coefficients of s^i t^j r^(N-i-j), normalised A_00 = 1")
    for ij in triangle(N):
        print(f"  A{ij} = {T[ij]}")
    c = clear_denominators(T)
    print(f"  multiplied through by {c.factor}:")
    print(f"  p(r,s,t) = {c.polynomial()}")
    print()

# the table is symmetric under i <-> j together with lambda <-> mu
T = solve_recurrence(4, 5)
print("symmetric under (i,j,l,m) -> (j,i,m,l):", T.is_symmetric())

# the Gamma-ratio closed form reproduces every entry
same = all(closed_form_coeff(4, 5, *ij) == T[ij] for ij in triangle(5))
print("closed form agrees with the recurrence at n=4, N=5:", same)

# at a rational point the solve runs over Q directly
print("A(2,1) at l=1/3, m=2/7:", solve_recurrence(4, 3, "1/3", "2/7")[(2, 1)])

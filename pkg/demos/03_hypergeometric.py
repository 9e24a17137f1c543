"""Terminating 3F2 values behind the closed form.

The four-term identity among 3F2 values is equivalent to the recurrence.
As usually written it is off by a factor 1/(1+j-i) on two of its terms;
the literal form only survives on the diagonal.
"""

from rcbracket.algebra import LAM, MU
from rcbracket.singular import (
    coeff_a11,
    coeff_diagonal,
    coeff_first_row,
    hyp3f2_terminating,
    hyp_four_term_residual,
    solve_recurrence,
)

print("3F2(-2, l, m; 1, l+m+1; 1) =", hyp3f2_terminating(-2, LAM, MU, 1, LAM + MU + 1))

n, N = 4, 4
T = solve_recurrence(n, N)
print("first row A(1,2):", coeff_first_row(n, N, 2) == T[(1, 2)])
print("diagonal A(2,2):", coeff_diagonal(n, N, 2) == T[(2, 2)])
print("A(1,1) general-N formula:", coeff_a11(n, N))

for i, j in ((1, 1), (1, 2), (2, 3)):
    corrected = hyp_four_term_residual(n, N, i, j)
    literal = hyp_four_term_residual(n, N, i, j, literal=True)
    print(f"four-term at (i,j)=({i},{j}): corrected residual {corrected}, literal residual zero: {not literal}")

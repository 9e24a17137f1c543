"""What happens at the values of lambda, mu where denominators vanish.

At x = m - n/2 the recurrence can lose its pivot.  The scan probes each such
value with a seeded generic partner and reports the rank of the full linear
system and whether a solution with A_00 = 1 still exists.
"""

from rcbracket.singular import solution_dimension, special_value_scan

for n, N in ((4, 1), (4, 2)):
    rep = special_value_scan(n, N, seed=0)
    print(f"n={n} N={N}, candidate values {[str(x) for x in rep.excluded_values]}")
    for p in rep.points:
        mark = "FLAG" if p.flagged else "ok"
        print(
            f"  {mark:4} l={str(p.lam):>7} m={str(p.mu):>7}  dim={p.dimension}"
            f"  A00=1 solvable={p.normalized_solvable}  closed form defined={p.closed_form_defined}"
        )

print("generic point, N=3: dimension", solution_dimension(4, 3, "2/9", "-5/11"))

"""Character values of S_N at the x and y elements, and on fast-growth cycle types."""
from collections import Counter

from classical_chars import symfun

N, a = 13, 3

# chi(x) for x of cycle type (a, N-a): only a(N-a) characters survive, all with value +-1
xs = symfun.nonvanishing_set(N, a, "x")
print(f"x in S_{N} with a={a}: {len(xs)} nonvanishing characters (a(N-a) = {a * (N - a)})")
print("values:", Counter(v for _, v in xs))

# the first rows are pure hooks
for b in range(a):
    rows = [lam for lam, _ in xs if lam[0] == N - b]
    print(f"  first row {N - b}: {rows}")

ys = symfun.nonvanishing_set(N, a, "y")
print(f"y of type {symfun.xy_element(N, a, 'y')}: {len(ys)} nonvanishing ((a-1)(N-a) = {(a - 1) * (N - a)})")

# superincreasing cycle types give values in {-1, 0, 1} for every character
for alpha in list(symfun.superincreasing_types(12))[:5]:
    vals = {symfun.mn_value(lam, alpha) for lam in symfun.partitions(12)}
    print(f"alpha={alpha}: values {sorted(vals)}")

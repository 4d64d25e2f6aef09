"""Levels of unipotent symbols and their recovery from the degree."""
from collections import Counter

from classical_chars import howe, symbols as sy
from classical_chars.symbols import sym

S = sym((2, 1), (0,))
print(S, "rank", sy.rank(S), "defect", sy.defect(S), "level", sy.level(S))

# at rank 30 the low-level symbols are built directly, then the level is read off the degree
n = 30
low = sy.enumerate_symbols(n, 1, level_cap=2)
print(f"rank {n}, defect 1 mod 4, level <= 2: {len(low)} symbols")
print("per level:", dict(sorted(Counter(sy.level(T) for T in low).items())))
assert all(sy.level_from_degree(T) == sy.level(T) for T in low)
T = low[-1]
print(f"{T}: log_q degree ~ {sy.log_degree_estimate(T)}, / 2n = {sy.log_degree_estimate(T) / (2 * n):.3f}")

# the main piece of an even-defect symbol is a symbol of rank equal to its level
E = next(U for U in sy.enumerate_symbols(12, 0) if sy.level(U) == 1 and howe.rank_hypothesis(U))
mp = howe.main_piece(E)
print(f"{E} (level 1) -> main piece {mp.S_prime} of rank {sy.rank(mp.S_prime)}, {howe.linked(mp.oriented, mp.S_prime).kind}")

# regular element t_n: which symbols have nonzero value
for S, lev in sy.tn_classification(6, "BC", "t_n_hook"):
    print(f"  t_6 hook: {S} level {lev}")

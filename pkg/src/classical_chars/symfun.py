"""Partitions, border strips and Murnaghan-Nakayama character values of S_N."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import is_prime

Partition = tuple  # weakly decreasing positive parts


def partition(parts) -> tuple[int, ...]:
    ps = tuple(sorted((int(x) for x in parts if x), reverse=True))
    if any(x < 0 for x in ps):
        raise ValueError("negative part")
    return ps


def cycle_type(parts) -> tuple[int, ...]:
    ps = tuple(sorted(int(x) for x in parts))
    if any(x <= 0 for x in ps):
        raise ValueError("cycle lengths must be positive")
    return ps


def partitions(n: int, max_part: int | None = None):
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def transpose(lam) -> tuple[int, ...]:
    lam = partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def cells(lam) -> set[tuple[int, int]]:
    return {(i, j) for i, r in enumerate(lam) for j in range(r)}


@dataclass(frozen=True)
class BorderStrip:
    cells: frozenset
    remainder: tuple  # partition left after removal

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def height(self) -> int:
        return len({i for i, _ in self.cells}) - 1


def _beta(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return [lam[i] + length - 1 - i for i in range(length)]


def _from_beta(beta):
    beta = sorted(beta, reverse=True)
    L = len(beta)
    return partition(beta[i] - (L - 1 - i) for i in range(L))


def _strip_moves(lam, k):
    """(remainder, height) for every removable k-strip, via bead moves on beta numbers."""
    lam = partition(lam)
    L = len(lam)
    beta = _beta(lam, L)
    bs = set(beta)
    out = []
    for b in beta:
        t = b - k
        if t >= 0 and t not in bs:
            ht = sum(1 for x in beta if t < x < b)
            out.append((_from_beta([x for x in beta if x != b] + [t]), ht))
    return out


def border_strips(lam, k: int) -> list[BorderStrip]:
    if k < 1:
        raise ValueError("strip size must be positive")
    lam = partition(lam)
    full = cells(lam)
    return [BorderStrip(frozenset(full - cells(mu)), mu) for mu, _ in _strip_moves(lam, k)]


@lru_cache(maxsize=None)
def _mn(lam: tuple, rho: tuple) -> int:
    # rho sorted ascending; strip the largest part first
    if not rho:
        return 1 if not lam else 0
    k = rho[-1]
    rest = rho[:-1]
    total = 0
    for mu, ht in _strip_moves(lam, k):
        total += (-1) ** ht * _mn(mu, rest)
    return total


def mn_value(lam, rho) -> int:
    lam = partition(lam)
    rho = cycle_type(rho)
    if sum(lam) != sum(rho):
        raise ValueError(f"size mismatch: |{lam}| != |{rho}|")
    return _mn(lam, rho)


def hook_length_degree(lam) -> int:
    lam = partition(lam)
    lt = transpose(lam)
    prod = 1
    for i, r in enumerate(lam):
        for j in range(r):
            prod *= (r - j - 1) + (lt[j] - i - 1) + 1
    return factorial(sum(lam)) // prod


def centralizer_size(rho) -> int:
    c = Counter(rho)
    out = 1
    for k, m in c.items():
        out *= k ** m * factorial(m)
    return out


def class_size(rho) -> int:
    return factorial(sum(rho)) // centralizer_size(rho)


TABLE_BOUND = 8


@dataclass
class CharTable:
    n: int
    partitions: list
    classes: list
    values: list  # values[i][j] = chi_{partitions[i]}(classes[j])

    def row(self, lam):
        return self.values[self.partitions.index(partition(lam))]

    def value(self, lam, rho):
        return self.values[self.partitions.index(partition(lam))][self.classes.index(cycle_type(rho))]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition"] + [" ".join(map(str, c)) for c in self.classes])
        for lam, row in zip(self.partitions, self.values):
            w.writerow([" ".join(map(str, lam))] + row)
        return buf.getvalue()


def char_table(n: int, bound: int = TABLE_BOUND) -> CharTable:
    if n > bound:
        raise ValueError(f"character table bound {bound} exceeded")
    parts = list(partitions(n))
    classes = sorted(cycle_type(p) for p in parts)
    vals = [[mn_value(lam, rho) for rho in classes] for lam in parts]
    return CharTable(n, parts, classes, vals)


def count_tableaux(lam, alpha) -> int:
    """Number of border-strip tableaux of shape lam and ordered type alpha.

    Strip i carries label i, so the last entry of alpha is the outermost strip.
    """
    lam = partition(lam)
    alpha = tuple(alpha)
    if sum(lam) != sum(alpha):
        raise ValueError("size mismatch")
    return _count_tab(lam, alpha)


@lru_cache(maxsize=None)
def _count_tab(lam, alpha):
    if not alpha:
        return 1 if not lam else 0
    return sum(_count_tab(mu, alpha[:-1]) for mu, _ in _strip_moves(lam, alpha[-1]))


def is_minimal(lam, alpha) -> bool:
    return count_tableaux(lam, alpha) <= 1


def fast_growth_holds(alpha) -> bool:
    alpha = list(alpha)
    s = 0
    for i in range(len(alpha) - 1):
        s += alpha[i]
        if alpha[i + 1] < 2 * s - 1:
            return False
    return True


def xy_element(n: int, a: int, variant: str) -> tuple[int, ...]:
    if variant == "x":
        return cycle_type((a, n - a))
    if variant == "y":
        return cycle_type((1, a - 1, n - a))
    raise ValueError("variant must be 'x' or 'y'")


def nonvanishing_set(n: int, a: int, variant: str) -> list[tuple]:
    """All lam with chi_lam nonzero at the x- or y-element, with the values."""
    if not (0 < a and 3 * a < n):
        raise ValueError("need 0 < a < n/3")
    rho = xy_element(n, a, variant)
    out = []
    for lam in partitions(n):
        v = mn_value(lam, rho)
        if v:
            out.append((lam, v))
    return out


def hook_partition(n: int, b: int) -> tuple[int, ...]:
    return (n - b,) + (1,) * b


def prime_order_congruence(lam, g) -> bool:
    g = cycle_type(g)
    ls = {x for x in g if x != 1}
    if len(ls) != 1 or not is_prime(next(iter(ls))):
        raise ValueError("cycle type is not of prime order")
    ell = next(iter(ls))
    n = sum(g)
    return (mn_value(lam, g) - mn_value(lam, (1,) * n)) % ell == 0


def superincreasing_types(n: int):
    """All ascending cycle types of n with a_{i+1} >= 2(a_1+...+a_i) - 1."""
    def rec(rest, prefix, s):
        if rest == 0:
            yield tuple(prefix)
            return
        lo = max(prefix[-1] if prefix else 1, 2 * s - 1, 1)
        for x in range(lo, rest + 1):
            yield from rec(rest - x, prefix + [x], s + x)
    yield from rec(n, [], 0)


def frobenius_count_formula(n: int, x, y, g) -> Fraction:
    """(|x^G||y^G|/|G|) sum_chi chi(x)chi(y)chi(g)/chi(1) in S_n."""
    t = char_table(n, bound=max(TABLE_BOUND, n))
    x, y, g = cycle_type(x), cycle_type(y), cycle_type(g)
    s = Fraction(0)
    one = t.classes.index((1,) * n)
    jx, jy, jg = t.classes.index(x), t.classes.index(y), t.classes.index(g)
    for row in t.values:
        s += Fraction(row[jx] * row[jy] * row[jg], row[one])
    return s * class_size(x) * class_size(y) / factorial(n)

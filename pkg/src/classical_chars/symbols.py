"""Lusztig symbols: half-symbols, rank, defect, level, hooks and cohooks,
enumeration, and degree estimates for classical groups.

A half-symbol is stored as a strictly decreasing tuple of non-negative
integers.  Half-integers (d_i, levels of symplectic characters) are returned as
``fractions.Fraction`` so everything here stays exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

from . import algebra

HalfSymbol = tuple

FULL_RANK_BOUND = 14
CAPPED_RANK_BOUND = 40
CAPPED_LEVEL_BOUND = 3


class NotReducedError(ValueError):
    pass


class DegenerateSymbolError(ValueError):
    pass


def half(xs: Iterable[int]) -> HalfSymbol:
    xs = [int(x) for x in xs]
    if any(x < 0 for x in xs):
        raise ValueError("entries must be non-negative")
    if len(set(xs)) != len(xs):
        raise ValueError("half-symbol entries must be distinct")
    return tuple(sorted(xs, reverse=True))


def sigma(A) -> HalfSymbol:
    return tuple(a + 1 for a in half(A)) + (0,)


def sigma_inverse(A) -> HalfSymbol:
    A = half(A)
    if not A or A[-1] != 0:
        raise NotReducedError("sigma_inverse needs a half-symbol containing 0")
    return tuple(a - 1 for a in A[:-1])


def bar(A) -> HalfSymbol:
    A = half(A)
    if not A:
        raise ValueError("bar of the empty half-symbol")
    return A[1:]


def pi(A) -> tuple[int, ...]:
    A = half(A)
    n = len(A)
    return tuple(x for x in (a - (n - 1 - i) for i, a in enumerate(A)) if x)


def delta(lam) -> HalfSymbol:
    lam = [x for x in lam if x]
    n = len(lam)
    return tuple(x + n - 1 - i for i, x in enumerate(sorted(lam, reverse=True)))


def half_reduced(A) -> bool:
    return not A or A[-1] > 0


@dataclass(frozen=True, order=True)
class Symbol:
    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", half(self.A))
        object.__setattr__(self, "B", half(self.B))

    def __repr__(self):
        return f"({set(self.A) or '{}'}, {set(self.B) or '{}'})"

    @property
    def is_reduced(self) -> bool:
        return half_reduced(self.A) or half_reduced(self.B)

    @property
    def is_degenerate(self) -> bool:
        return self.A == self.B

    def transpose(self) -> "Symbol":
        return Symbol(self.B, self.A)

    def shift(self, k: int = 1) -> "Symbol":
        A, B = self.A, self.B
        for _ in range(k):
            A, B = sigma(A), sigma(B)
        return Symbol(A, B)

    def reduce(self) -> "Symbol":
        A, B = self.A, self.B
        while not (half_reduced(A) or half_reduced(B)):
            A, B = sigma_inverse(A), sigma_inverse(B)
        return Symbol(A, B)

    def to_dict(self):
        return {"A": list(self.A), "B": list(self.B)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["A"]), tuple(d["B"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sym(A, B) -> Symbol:
    return Symbol(tuple(A), tuple(B))


# ---------------------------------------------------------------------------
# basic parameters


def defect(S: Symbol) -> int:
    return len(S.A) - len(S.B)


def m_param(S: Symbol) -> int:
    return len(S.A) + len(S.B) - 1


def epsilon_m(S: Symbol) -> int:
    return m_param(S) % 2


def max_entry(S: Symbol) -> int:
    """Largest entry; -1 for (∅,∅) so that the level formula stays shift-invariant."""
    return max(S.A + S.B, default=-1)


def rank_sum_form(S: Symbol) -> int:
    m = m_param(S)
    return sum(S.A) + sum(S.B) - (m * m) // 4


def rank_partition_form(S: Symbol) -> int:
    d = defect(S)
    eps = epsilon_m(S)
    num = d * d - (1 - eps)
    assert num % 4 == 0
    return sum(pi(S.A)) + sum(pi(S.B)) + num // 4


def rank(S: Symbol) -> int:
    r = rank_sum_form(S)
    r2 = rank_partition_form(S)
    if r != r2:
        raise AssertionError(f"rank forms disagree on {S}: {r} != {r2}")
    return r


def level(S: Symbol) -> int:
    if not S.is_reduced:
        raise NotReducedError(f"{S} is not reduced")
    return _level_any(S)


def _level_any(S: Symbol) -> int:
    return rank_sum_form(S) - max_entry(S) + m_param(S) // 2


def c_sequence(S: Symbol) -> tuple[int, ...]:
    return tuple(sorted(S.A + S.B))


def d_sequence(S: Symbol) -> tuple[Fraction, ...]:
    return tuple(Fraction(2 * c - i, 2) for i, c in enumerate(c_sequence(S)))


def d_sequence_doubled(S: Symbol) -> tuple[int, ...]:
    return tuple(2 * c - i for i, c in enumerate(c_sequence(S)))


def no_tie(S: Symbol) -> bool:
    return max(S.A, default=-1) != max(S.B, default=-1)


def no_tie_hypothesis(S: Symbol) -> bool:
    lev = level(S)
    return rank(S) > 4 * lev * lev + 2 * lev


# ---------------------------------------------------------------------------
# hooks and cohooks


@dataclass(frozen=True)
class Hook:
    side: str  # "A" or "B"
    r: int
    k: int
    kind: str  # "hook" or "cohook"


def hooks(S: Symbol, k: int) -> list[Hook]:
    out = [Hook("A", r, k, "hook") for r in S.A if r >= k and r - k not in S.A]
    out += [Hook("B", r, k, "hook") for r in S.B if r >= k and r - k not in S.B]
    return out


def cohooks(S: Symbol, k: int) -> list[Hook]:
    out = [Hook("A", r, k, "cohook") for r in S.A if r >= k and r - k not in S.B]
    out += [Hook("B", r, k, "cohook") for r in S.B if r >= k and r - k not in S.A]
    return out


def _without(X, r):
    return tuple(x for x in X if x != r)


def remove_hook(S: Symbol, h: Hook) -> Symbol:
    if h.kind != "hook" or h not in hooks(S, h.k):
        raise ValueError(f"{h} is not a hook of {S}")
    A, B = S.A, S.B
    if h.side == "A":
        return Symbol(B, _without(A, h.r) + (h.r - h.k,))
    return Symbol(_without(B, h.r) + (h.r - h.k,), A)


def remove_cohook(S: Symbol, h: Hook) -> Symbol:
    if h.kind != "cohook" or h not in cohooks(S, h.k):
        raise ValueError(f"{h} is not a cohook of {S}")
    A, B = S.A, S.B
    if h.side == "A":
        return Symbol(B + (h.r - h.k,), _without(A, h.r))
    return Symbol(_without(B, h.r), A + (h.r - h.k,))


def remove(S: Symbol, h: Hook) -> Symbol:
    return remove_hook(S, h) if h.kind == "hook" else remove_cohook(S, h)


def add_back(T: Symbol, h: Hook) -> Symbol:
    """Inverse of removing h: the symbol S with remove(S, h) == T."""
    X, Y = T.A, T.B
    r, t = h.r, h.r - h.k
    if h.kind == "hook":
        if h.side == "A":
            return Symbol(_without(Y, t) + (r,), X)
        return Symbol(Y, _without(X, t) + (r,))
    if h.side == "A":
        return Symbol(Y + (r,), _without(X, t))
    return Symbol(_without(Y, t), X + (r,))


# ---------------------------------------------------------------------------
# enumeration


def _defect_ok(d: int, defect_class) -> bool:
    if defect_class in (None, "any"):
        return True
    if defect_class == "even":
        return d % 2 == 0
    if defect_class == "odd":
        return d % 2 == 1
    return d % 4 == int(defect_class) % 4


def parse_defect_class(s):
    if s is None or s in ("any", "even", "odd"):
        return s
    return int(s) % 4


def _subsets(size: int, total: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Strictly decreasing tuples of `size` entries in [0, hi] with the given sum."""
    if size == 0:
        if total == 0:
            yield ()
        return
    s = size - 1
    for x in range(min(hi, total), s - 1, -1):
        rest = total - x
        if rest < s * (s - 1) // 2:
            continue
        if rest > s * (x - 1) - s * (s - 1) // 2:
            break
        for tail in _subsets(s, rest, x - 1):
            yield (x,) + tail


def _enumerate_full(n: int, defect_class) -> list[Symbol]:
    out = []
    # sizes a = |A|, b = |B| with a - b = d
    for a in range(0, n + 2):
        for b in range(0, n + 2):
            d = a - b
            if not _defect_ok(d, defect_class):
                continue
            m = a + b - 1
            total = n + (m * m) // 4
            # reduced: one half avoids 0; minimal possible sum
            lo = min(a * (a - 1) // 2 + b * (b + 1) // 2, a * (a + 1) // 2 + b * (b - 1) // 2)
            if lo > total:
                continue
            for sA in range(a * (a - 1) // 2, total + 1):
                sB = total - sA
                if sB < b * (b - 1) // 2:
                    break
                Bs = list(_subsets(b, sB, n))
                if not Bs:
                    continue
                for A in _subsets(a, sA, n):
                    zA = bool(A) and A[-1] == 0
                    for B in Bs:
                        if zA and B and B[-1] == 0:
                            continue
                        out.append(Symbol(A, B))
    out.sort(key=_sort_key)
    return out


def _sort_key(S: Symbol):
    return (defect(S), S.A, S.B)


@lru_cache(maxsize=None)
def _full_cached(n: int, defect_class) -> tuple[Symbol, ...]:
    return tuple(_enumerate_full(n, defect_class))


def _enumerate_capped(n: int, defect_class, level_cap: int) -> list[Symbol]:
    found = set()
    for l in range(0, min(level_cap, n) + 1):
        for core in _full_cached(l, None):
            m = m_param(core) + 1
            cm = n - l + m // 2
            if cm < max_entry(core):
                continue
            cands = []
            if cm not in core.A:
                cands.append(Symbol(core.A + (cm,), core.B))
            if cm not in core.B:
                cands.append(Symbol(core.A, core.B + (cm,)))
            for S in cands:
                if S.is_reduced and _defect_ok(defect(S), defect_class):
                    found.add(S)
    if n == 0 and _defect_ok(0, defect_class):
        found.add(Symbol((), ()))  # the only symbol without a largest entry
    return sorted(found, key=_sort_key)


def enumerate_symbols(n: int, defect_class=None, reduced_only: bool = True,
                      level_cap: int | None = None, *, rank_bound: int = FULL_RANK_BOUND,
                      capped_bound: int = CAPPED_RANK_BOUND, max_shift: int = 0) -> list[Symbol]:
    """Reduced symbols of rank n in a defect class ("even", "odd", a residue mod 4, or None).

    With ``level_cap`` the symbols of level at most the cap are built directly:
    every such symbol is a reduced core of rank equal to its level plus one
    large entry c_m = n - level + floor(m/2).  Without the cap the full rank-n
    space is enumerated.  ``reduced_only=False`` additionally lists the shifts
    Sigma^j for 1 <= j <= max_shift, since the unreduced class is infinite.
    """
    defect_class = parse_defect_class(defect_class)
    if n < 0:
        raise ValueError("rank must be non-negative")
    if level_cap is not None:
        if n > capped_bound or level_cap > CAPPED_LEVEL_BOUND:
            raise ValueError(f"level-capped enumeration bound exceeded (rank <= {capped_bound}, cap <= {CAPPED_LEVEL_BOUND})")
        out = _enumerate_capped(n, defect_class, level_cap)
    else:
        if n > rank_bound:
            raise ValueError(f"full enumeration bound exceeded (rank <= {rank_bound})")
        out = list(_full_cached(n, defect_class))
    if not reduced_only:
        out = [S.shift(j) for S in out for j in range(max_shift + 1)]
    return out


def bipartition_count(n: int) -> int:
    """Number of ordered pairs of partitions of total size n."""
    p = [0] * (n + 1)
    p[0] = 1
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            p[i] += p[i - k]
    return sum(p[i] * p[n - i] for i in range(n + 1))


def half_with_pi(lam, length: int) -> HalfSymbol:
    lam = [x for x in lam if x]
    if length < len(lam):
        raise ValueError("length shorter than the partition")
    lam = sorted(lam, reverse=True) + [0] * (length - len(lam))
    return tuple(x + length - 1 - i for i, x in enumerate(lam))


def symbol_from_partitions(lam, mu, d: int) -> Symbol:
    """The reduced symbol with pi(A) = lam, pi(B) = mu and defect d."""
    la = len([x for x in lam if x])
    lb = len([x for x in mu if x])
    a = max(la, lb + d)
    return Symbol(half_with_pi(lam, a), half_with_pi(mu, a - d))


def random_symbol(rng, max_len: int = 8, max_entry_value: int = 30) -> Symbol:
    a = rng.randint(0, max_len)
    b = rng.randint(0, max_len)
    A = rng.sample(range(max_entry_value + 1), a)
    B = rng.sample(range(max_entry_value + 1), b)
    return Symbol(A, B)


# ---------------------------------------------------------------------------
# degree estimates


def binom_sum(m: int) -> int:
    """sum_{i >= 0} C(m-1-2i, 2), over the non-negative arguments."""
    total = 0
    x = m - 1
    while x >= 0:
        total += comb(x, 2)
        x -= 2
    return total


def pair_sum(S: Symbol) -> int:
    A, B = S.A, S.B
    s = sum(a1 for i, a1 in enumerate(A) for _ in A[i + 1:])
    s += sum(b1 for i, b1 in enumerate(B) for _ in B[i + 1:])
    s += sum(max(a, b) for a in A for b in B)
    return s


def weighted_c_sum(S: Symbol) -> int:
    return sum(i * c for i, c in enumerate(c_sequence(S)))


def log_degree_estimate(S: Symbol, n: int | None = None) -> int:
    """Dominant q-exponent of the unipotent degree attached to S (rank n)."""
    r = rank(S)
    if n is None:
        n = r
    if n != r:
        raise ValueError(f"rank mismatch: symbol has rank {r}, not {n}")
    eps = epsilon_m(S)
    m = m_param(S)
    return (n * n + (1 - eps) * n - sum(a * (a + 1) for a in S.A) - sum(b * (b + 1) for b in S.B)
            - binom_sum(m) + pair_sum(S))


def log_degree_c_form(S: Symbol, n: int | None = None) -> Fraction:
    if n is None:
        n = rank(S)
    eps = epsilon_m(S)
    m = m_param(S)
    cs = c_sequence(S)
    return (n * n + (1 - eps) * n - sum(c * c + c - i * c for i, c in enumerate(cs))
            - Fraction(2 * m ** 3 - 3 * m ** 2 - 2 * m, 24))


def nint(x: Fraction) -> int:
    """Nearest integer, halves rounded away from zero."""
    x = Fraction(x)
    f = math.floor(x)
    r = x - f
    if r > Fraction(1, 2) or (r == Fraction(1, 2) and x > 0):
        return f + 1
    return f


def is_half_tie(x: Fraction) -> bool:
    x = Fraction(x)
    return x - math.floor(x) == Fraction(1, 2)


def level_from_degree(S: Symbol, n: int | None = None) -> int:
    if n is None:
        n = rank(S)
    return nint(Fraction(log_degree_estimate(S, n), 2 * n))


def slack_window(S: Symbol) -> int:
    return 3 * max(m_param(S), 1)


def inequality_ledger(S: Symbol) -> dict:
    """Both sides of the two lower bounds used for m = O(n^{alpha-1}).

    The ``*_sum_c`` bounds carry -sum(c_i); the ``*_rhs`` bounds replace it by
    -n.  Since sum(c_i) = n + (m^2 - eps_m)/4 >= n the replacement is not a
    valid weakening: only the ``*_sum_c`` forms hold for every symbol.
    """
    n = rank(S)
    m = m_param(S)
    cs = c_sequence(S)
    ds = d_sequence(S)
    lhs = n * n - sum(c * c + c - i * c for i, c in enumerate(cs)) - Fraction(2 * m ** 3 - 3 * m ** 2 - 2 * m, 24)
    head = sum(ds[:-1], Fraction(0))
    tot = sum(ds, Fraction(0))
    big_sigma = tot * tot - sum(d * d for d in ds)
    cube = 2 * ds[-1] * head + Fraction(4 * m * m - m, 8) if ds else None
    m20 = big_sigma + Fraction(7 * m * m + 2 * m, 16)
    sc = sum(cs)
    return {"lhs": lhs, "sum_c": sc,
            "m_cubed_sum_c": None if cube is None else cube - sc,
            "m_cubed_rhs": None if cube is None else cube - n,
            "m20_sum_c": m20 - sc, "m20_rhs": m20 - n}


def ledger_holds(S: Symbol) -> bool:
    led = inequality_ledger(S)
    if led["m_cubed_sum_c"] is None:
        return True
    return led["lhs"] >= led["m_cubed_sum_c"] and led["lhs"] >= led["m20_sum_c"]


def d_chain_holds(S: Symbol) -> bool:
    ds = d_sequence(S)
    for i in range(len(ds)):
        if i + 2 < len(ds) and not ds[i] <= ds[i + 2]:
            return False
        if i + 1 < len(ds) and not ds[i] <= ds[i + 1] + Fraction(1, 2):
            return False
        if sum(ds[:i + 1]) < Fraction(i, 4):
            return False
        if ds[i] < 0 or (i % 2 == 1 and ds[i] < Fraction(1, 2)):
            return False
    return True


def n_identity_holds(S: Symbol) -> bool:
    ds = d_sequence(S)
    m = m_param(S)
    return rank(S) == sum(ds, Fraction(0)) + Fraction(m, 4) + Fraction(epsilon_m(S), 4)


# ---------------------------------------------------------------------------
# nonvanishing at the regular elements t_n and t_{n-1}


FAMILY_DEFECT = {"BC": 1, "Dplus": 0, "Dminus": 2}
TN_ELEMENTS = ("t_n_hook", "t_n_cohook", "t_nminus1_hook_hook", "t_nminus1_hook_cohook",
               "t_nminus1_cohook_hook", "t_nminus1_cohook_cohook", "t_nminus1")
# an (n-1)-cycle type with 0 or 2 negative cycles lies in the split form
T_NMINUS1_FOR = {"Dplus": (("hook", "hook"), ("cohook", "cohook")),
                 "Dminus": (("hook", "cohook"), ("cohook", "hook"))}


def _has(S: Symbol, k: int, kind: str) -> list[Hook]:
    return hooks(S, k) if kind == "hook" else cohooks(S, k)


def tn_nonvanishing(S: Symbol, n: int, element: str) -> bool:
    """Whether the removal pattern required at the element exists for S."""
    if element == "t_n_hook":
        return bool(hooks(S, n))
    if element == "t_n_cohook":
        return bool(cohooks(S, n))
    _, _, k1, k2 = element.split("_")
    for h in _has(S, n - 1, k1):
        T = remove(S, h)
        if _has(T, 1, k2):
            return True
    return False


def tn_classification(n: int, family: str, element: str) -> list[tuple[Symbol, int]]:
    if family not in FAMILY_DEFECT:
        raise ValueError(f"family must be one of {sorted(FAMILY_DEFECT)}")
    if element not in TN_ELEMENTS:
        raise ValueError(f"element must be one of {TN_ELEMENTS}")
    if family == "BC" and n < 4:
        raise ValueError("need n >= 4 for type BC")
    if family != "BC" and n < 5:
        raise ValueError("need n >= 5 for type D")
    if element == "t_nminus1":
        if family == "BC":
            raise ValueError("t_{n-1} is only classified for type D")
        # the canonical (n-1)-cycle: lambda' = (n-1, 1) for D+, (n-1 | 1) for D-;
        # the other admissible class is its transpose and gives the same counts
        a, b = T_NMINUS1_FOR[family][0]
        els = [f"t_nminus1_{a}_{b}"]
    else:
        els = [element]
    out = []
    for S in enumerate_symbols(n, FAMILY_DEFECT[family], rank_bound=max(n, FULL_RANK_BOUND)):
        if any(tn_nonvanishing(S, n, e) for e in els):
            out.append((S, level(S)))
    return out


def four_sets(n: int) -> list[set[Symbol]]:
    """The four explicit families of symbols nonvanishing at t_n in type BC."""
    s1 = {Symbol(tuple(range(1, l + 1)) + (n,), tuple(range(l))) for l in range(n)}
    s2 = {Symbol(tuple(range(l + 2)), tuple(range(1, l + 1)) + (n,)) for l in range(n)}
    s3 = {Symbol(tuple(range(1, l)), tuple(range(l + 1)) + (n,)) for l in range(1, n)}
    s4 = {Symbol(tuple(range(l + 1)) + (n,), tuple(range(1, l + 2))) for l in range(n)}
    return [s1, s2, s3, s4]


def d_family_tn(n: int, family: str) -> set[Symbol]:
    """Explicit symbols nonvanishing at t_n in type D, two per level."""
    out = set()
    for l in range(1, n + 1):
        if family == "Dplus":
            out.add(Symbol(tuple(range(1, l)) + (n,), tuple(range(l))))
            out.add(Symbol(tuple(range(l)), tuple(range(1, l)) + (n,)))
        else:
            out.add(Symbol(tuple(range(l)) + (n,), tuple(range(1, l))))
            out.add(Symbol(tuple(range(1, l)), tuple(range(l)) + (n,)))
    return out


# ---------------------------------------------------------------------------
# general series


@dataclass(frozen=True)
class GLFactor:
    """A factor GL_a(q^k) (eps=+1) or GU_a(q^k) (eps=-1) of the centralizer."""
    a: int
    k: int = 1
    eps: int = 1


@dataclass(frozen=True)
class SeriesDescriptor:
    """Labeling data (s, psi) of an irreducible character of a classical group.

    family is the type of the dual group: "B" for G = Sp_{2n} (dual SO_{2n+1}),
    "C" for G = SO_{2n+1} (dual Sp_{2n}), "D" for G = SO^±_{2n}.  The
    kappa = +1 and kappa = -1 eigenspaces of s carry the symbols of the
    unipotent components; gl lists the factors from the eigenvalues other
    than ±1.  psi0 is an opaque token for the unipotent data on those
    factors.
    """
    family: str
    n: int
    sym_plus: Symbol
    dim_plus: int
    sym_minus: Symbol
    dim_minus: int
    gl: tuple = ()
    q_odd: bool = True
    psi0: object = None

    @property
    def dim_vsharp(self) -> int:
        return 2 * self.n + 1 if self.family == "B" else 2 * self.n

    @property
    def dim_zero(self) -> int:
        return sum(2 * f.a * f.k for f in self.gl)

    def dim(self, kappa: int) -> int:
        return self.dim_plus if kappa == 1 else self.dim_minus

    def symbol(self, kappa: int) -> Symbol:
        return self.sym_plus if kappa == 1 else self.sym_minus

    def delta(self, kappa: int) -> int:
        return int(self.q_odd and self.dim(kappa) % 2 == 1)

    def factor_type(self, kappa: int) -> str:
        """Type of the classical factor on the kappa-eigenspace of the dual group."""
        if self.family == "C":
            return "C"
        if self.family == "D":
            return "D"
        return "B" if self.dim(kappa) % 2 else "D"

    def factor_rank(self, kappa: int) -> int:
        return (self.dim(kappa) - self.delta(kappa)) // 2 if self.q_odd else self.dim(kappa) // 2

    def validate(self) -> None:
        if self.family not in ("B", "C", "D"):
            raise ValueError("family must be B, C or D")
        if self.dim_plus < 0 or self.dim_minus < 0:
            raise ValueError("negative dimension")
        if self.dim_plus + self.dim_minus + self.dim_zero != self.dim_vsharp:
            raise ValueError("eigenspace dimensions do not add up to dim V#")
        if self.family == "B" and self.dim_minus % 2:
            raise ValueError("the -1 eigenspace of an element of SO_{2n+1} has even dimension")
        if self.family in ("C", "D") and (self.dim_plus % 2 or self.dim_minus % 2):
            raise ValueError("eigenspace dimensions must be even")
        for kappa in (1, -1):
            S = self.symbol(kappa)
            if not S.is_reduced:
                raise NotReducedError(f"symbol {S} is not reduced")
            if rank(S) != self.factor_rank(kappa):
                raise ValueError(f"kappa={kappa}: symbol rank {rank(S)} does not match eigenspace of dimension {self.dim(kappa)}")
            t = self.factor_type(kappa)
            d = defect(S)
            if t in ("B", "C") and d % 4 != 1:
                raise ValueError(f"kappa={kappa}: type {t} factor needs defect 1 mod 4")
            if t == "D" and d % 2:
                raise ValueError(f"kappa={kappa}: type D factor needs even defect")
        ranks = self.factor_rank(1) + self.factor_rank(-1) + sum(f.a * f.k for f in self.gl)
        if ranks != self.n:
            raise ValueError("rank bookkeeping fails: n != sum of factor ranks")

    def swap_kappa(self) -> "SeriesDescriptor":
        return SeriesDescriptor(self.family, self.n, self.sym_minus, self.dim_minus,
                                self.sym_plus, self.dim_plus, self.gl, self.q_odd, self.psi0)

    def transpose_symbols(self) -> "SeriesDescriptor":
        return SeriesDescriptor(self.family, self.n, self.sym_plus.transpose(), self.dim_plus,
                                self.sym_minus.transpose(), self.dim_minus, self.gl, self.q_odd, self.psi0)

    def to_dict(self):
        return {"family": self.family, "n": self.n,
                "plus": {"symbol": self.sym_plus.to_dict(), "dim": self.dim_plus},
                "minus": {"symbol": self.sym_minus.to_dict(), "dim": self.dim_minus},
                "gl": [[f.a, f.k, f.eps] for f in self.gl],
                "q_odd": self.q_odd, "psi0": self.psi0}

    @classmethod
    def from_dict(cls, d):
        return cls(d["family"], int(d["n"]),
                   Symbol.from_dict(d["plus"]["symbol"]), int(d["plus"]["dim"]),
                   Symbol.from_dict(d["minus"]["symbol"]), int(d["minus"]["dim"]),
                   tuple(GLFactor(*f) for f in d.get("gl", [])),
                   bool(d.get("q_odd", True)), d.get("psi0"))


def unipotent_descriptor(S: Symbol, family: str, q_odd: bool = True) -> SeriesDescriptor:
    """Descriptor of the unipotent character with symbol S (s = 1)."""
    n = rank(S)
    dim = 2 * n + 1 if family == "B" and q_odd else 2 * n
    if family == "B" and not q_odd:
        raise ValueError("type B duals only arise for odd q")
    # the empty factor still needs a symbol of the right defect class
    empty = Symbol((0,), ()) if family == "C" else Symbol((), ())
    return SeriesDescriptor(family, n, S, dim, empty, 0, (), q_odd)


def kappa_term(desc: SeriesDescriptor, kappa: int) -> Fraction:
    S = desc.symbol(kappa)
    return max_entry(S) - Fraction(m_param(S) // 2) + Fraction(desc.delta(kappa), 2)


def level_general(desc: SeriesDescriptor) -> Fraction:
    desc.validate()
    return Fraction(desc.dim_vsharp, 2) - max(kappa_term(desc, 1), kappa_term(desc, -1))


def dominant_kappa(desc: SeriesDescriptor) -> int | None:
    t1, t2 = kappa_term(desc, 1), kappa_term(desc, -1)
    if t1 == t2:
        return None
    return 1 if t1 > t2 else -1


def _classical_pprime_degree(t: str, r: int) -> int:
    # q-degree of the prime-to-p part of the order
    if r == 0:
        return 0
    if t in ("B", "C"):
        return r * r + r
    return r * r


def _factor_order(t: str, r: int, S: Symbol, q: int) -> int:
    if r == 0:
        return 1
    if t == "B":
        return algebra.group_order("SOodd", 2 * r + 1, q)
    if t == "C":
        return algebra.group_order("Sp", 2 * r, q)
    sign = "+" if defect(S) % 4 == 0 else "-"
    return algebra.group_order("SO" + sign, 2 * r, q)


def _witt_sign(desc: SeriesDescriptor) -> int:
    s = 1
    for kappa in (1, -1):
        if desc.factor_type(kappa) == "D" and defect(desc.symbol(kappa)) % 4 == 2:
            s = -s
    for f in desc.gl:
        if f.eps == -1 and f.a % 2:
            s = -s
    return s


def series_log_degree(desc: SeriesDescriptor, psi_log_degree, family: str | None = None,
                      q: int | None = None):
    """log_q chi(1) = log_q psi(1) + log_q |G|_{p'} - log_q |C_{G*}(s)|_{p'}.

    Without q the prime-to-p parts are replaced by their exact q-degrees and
    the result is a Fraction.  With a concrete odd q the orders are evaluated
    exactly and the logarithm is returned as a float.
    """
    desc.validate()
    if family is not None and family != desc.family:
        raise ValueError("family does not match the descriptor")
    n = desc.n
    if q is None:
        g_deg = n * n + n if desc.family in ("B", "C") else n * n
        c_deg = sum(_classical_pprime_degree(desc.factor_type(k), desc.factor_rank(k)) for k in (1, -1))
        c_deg += sum(f.k * f.a * (f.a + 1) // 2 for f in desc.gl)
        return Fraction(psi_log_degree) + g_deg - c_deg
    p, _ = algebra.prime_power(q)
    if desc.family == "B":
        g = algebra.group_order("Sp", 2 * n, q)
    elif desc.family == "C":
        g = algebra.group_order("SOodd", 2 * n + 1, q)
    else:
        g = algebra.group_order("SO+" if _witt_sign(desc) == 1 else "SO-", 2 * n, q)
    c = 1
    for kappa in (1, -1):
        c *= _factor_order(desc.factor_type(kappa), desc.factor_rank(kappa), desc.symbol(kappa), q)
    for f in desc.gl:
        c *= algebra.group_order("GL" if f.eps == 1 else "GU", f.a, q ** f.k)
    ratio = Fraction(algebra.p_prime_part(g, p), algebra.p_prime_part(c, p))
    return float(psi_log_degree) + (math.log(ratio.numerator) - math.log(ratio.denominator)) / math.log(q)


def unipotent_psi_log_degree(desc: SeriesDescriptor) -> int:
    """Dominant q-exponent of psi(1) with psi0 trivial."""
    return sum(log_degree_estimate(desc.symbol(k)) for k in (1, -1))


def nearest_level(x, half_integral: bool) -> Fraction:
    """nint on Z, or on (1/2)Z when the level may be half-integral."""
    x = Fraction(x)
    if half_integral:
        return Fraction(nint(2 * x), 2)
    return Fraction(nint(x))


def level_may_be_half(desc: SeriesDescriptor) -> bool:
    return desc.family == "B" and desc.q_odd


def weil_descriptor(n: int, sign_variant: bool = False) -> SeriesDescriptor:
    """Weil characters of Sp_{2n}(q), q odd: s = -1 on a 2n-dimensional subspace."""
    minus = Symbol((n,), (0,)) if not sign_variant else Symbol((0,), (n,))
    return SeriesDescriptor("B", n, Symbol((0,), ()), 1, minus, 2 * n)

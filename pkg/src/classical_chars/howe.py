"""Linking of symbols and the symbol-level Howe correspondence.

Only the combinatorial matching rules are modeled: an even-orthogonal or
odd-orthogonal character and a symplectic character correspond when the
dominant symbols are linked, the other symbols agree and the data on the
eigenvalues other than ±1 agree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple

from .symbols import (DegenerateSymbolError, SeriesDescriptor, Symbol, bar, defect,
                      dominant_kappa, enumerate_symbols, level, level_general, m_param,
                      max_entry, pi, rank)


class HypothesisError(ValueError):
    pass


def preceq(lam, mu) -> bool:
    """mu_1 >= lam_1 >= mu_2 >= lam_2 >= ..."""
    lam = [x for x in lam if x]
    mu = [x for x in mu if x]
    L = max(len(lam), len(mu)) + 1
    lam = lam + [0] * (L - len(lam))
    mu = mu + [0] * (L + 1 - len(mu))
    return all(mu[i] >= lam[i] >= mu[i + 1] for i in range(L))


@dataclass(frozen=True)
class LinkWitness:
    kind: str  # "split" or "nonsplit"
    first: tuple  # the pair of partitions in the first interleaving
    second: tuple
    size_offset: int


def linked(S_even: Symbol, S_odd: Symbol) -> LinkWitness | None:
    if defect(S_even) % 2 or not defect(S_odd) % 2:
        raise ValueError("linked() takes an even-defect symbol and an odd-defect symbol")
    A, B = S_even.A, S_even.B
    C, D = S_odd.A, S_odd.B
    pA, pB, pC, pD = pi(A), pi(B), pi(C), pi(D)
    lhs = len(A) - len(B)
    if lhs == 1 + len(D) - len(C) and preceq(pB, pC) and preceq(pD, pA):
        return LinkWitness("split", (pB, pC), (pD, pA), 1)
    if lhs == -1 + len(D) - len(C) and preceq(pA, pD) and preceq(pC, pB):
        return LinkWitness("nonsplit", (pA, pD), (pC, pB), -1)
    return None


def rank_hypothesis(S: Symbol) -> bool:
    lev = level(S)
    return rank(S) > 4 * lev * lev + 2 * lev


def _top_side(S: Symbol) -> str:
    cm = max_entry(S)
    inA, inB = cm in S.A, cm in S.B
    if inA and inB:
        raise DegenerateSymbolError(f"largest entry of {S} occurs in both halves")
    return "A" if inA else "B"


class MainPiece(NamedTuple):
    orientation: str  # "as-is" or "transposed"
    S_prime: Symbol
    oriented: Symbol  # the (possibly transposed) source, linked to S_prime


def main_piece(S: Symbol, require_hypothesis: bool = True) -> MainPiece:
    """S' of rank lev(S) and defect 1 mod 4 linked to S or its transpose."""
    if defect(S) % 2:
        raise ValueError("main_piece needs an even-defect symbol")
    if not S.is_reduced:
        raise ValueError("main_piece needs a reduced symbol")
    if S.is_degenerate:
        raise DegenerateSymbolError(f"{S} is degenerate")
    if require_hypothesis and not rank_hypothesis(S):
        raise HypothesisError(f"rank({S}) <= 4 lev^2 + 2 lev")
    want = "A" if defect(S) % 4 == 0 else "B"
    side = _top_side(S)
    orientation = "as-is"
    if side != want:
        S = S.transpose()
        orientation = "transposed"
    if want == "A":
        Sp = Symbol(S.B, bar(S.A))
    else:
        Sp = Symbol(bar(S.B), S.A)
    return MainPiece(orientation, Sp, S)


def main_piece_odd(S: Symbol, require_hypothesis: bool = True) -> Symbol:
    """S' of rank lev(S) and even defect linked to S (defect 1 mod 4)."""
    if defect(S) % 4 != 1:
        raise ValueError("main_piece_odd needs defect 1 mod 4")
    if not S.is_reduced:
        raise ValueError("main_piece_odd needs a reduced symbol")
    if require_hypothesis and not rank_hypothesis(S):
        raise HypothesisError(f"rank({S}) <= 4 lev^2 + 2 lev")
    if _top_side(S) == "A":
        return Symbol(S.B, bar(S.A))
    return Symbol(bar(S.B), S.A)


def linked_partners(S_prime: Symbol, n: int, defect_constraint, rank_bound: int = 14) -> list[Symbol]:
    """All reduced T of rank n in the defect class that are linked to S_prime."""
    out = []
    odd = defect(S_prime) % 2 == 1
    for T in enumerate_symbols(n, defect_constraint, rank_bound=rank_bound):
        if (defect(T) % 2 == 0) != odd:
            continue
        w = linked(T, S_prime) if odd else linked(S_prime, T)
        if w is not None:
            out.append(T)
    return out


def rebuild_from_piece(S_prime: Symbol, source_rank: int, top_in_A: bool) -> Symbol:
    """Invert the main-piece construction: put c_m back on the appropriate half."""
    C, D = S_prime.A, S_prime.B
    m = len(C) + len(D)
    cm = source_rank + m // 2 - rank(S_prime)
    if top_in_A:
        return Symbol(D + (cm,), C)
    return Symbol(D, C + (cm,))


# ---------------------------------------------------------------------------
# descriptor-level correspondence


SIDE_FAMILY = {"O-even": "D", "SO-odd": "C", "Sp": "B"}


@dataclass(frozen=True)
class HoweAssignment:
    source: SeriesDescriptor
    normalized: SeriesDescriptor  # source after the linear twists
    side: str
    spinor: bool
    sign: bool
    target_group: str  # "Sp", "O" or "SO-odd"
    target_dim: int
    target: SeriesDescriptor
    S_prime: Symbol
    epsilon: int  # type of the dominant orthogonal factor, +1 or -1
    rule: str  # "Howe-even" or "Howe-odd"
    branch: str | None = None  # "a" or "b" on the symplectic side
    transposed_piece: bool = False
    s0_negated: bool = False
    hypothesis_holds: bool = True

    def to_dict(self):
        return {"side": self.side, "spinor": self.spinor, "sign": self.sign,
                "target_group": self.target_group, "target_dim": self.target_dim,
                "target": self.target.to_dict(), "S_prime": self.S_prime.to_dict(),
                "epsilon": self.epsilon, "rule": self.rule, "branch": self.branch,
                "transposed_piece": self.transposed_piece, "s0_negated": self.s0_negated,
                "hypothesis_holds": self.hypothesis_holds,
                "source": self.source.to_dict()}


def howe_hypothesis(n: int, n_prime: Fraction) -> bool:
    return n > 4 * n_prime * n_prime + 3 * n_prime


def howe_map(desc: SeriesDescriptor, side: str, enforce_hypothesis: bool = True) -> HoweAssignment:
    if side not in SIDE_FAMILY:
        raise ValueError(f"side must be one of {sorted(SIDE_FAMILY)}")
    if desc.family != SIDE_FAMILY[side]:
        raise ValueError(f"side {side} needs a descriptor of family {SIDE_FAMILY[side]}")
    if not desc.q_odd:
        raise ValueError("the correspondence is modeled for odd q only")
    n_prime = level_general(desc)
    hyp = howe_hypothesis(desc.n, n_prime)
    if enforce_hypothesis and not hyp:
        raise HypothesisError(f"n={desc.n} <= 4n'^2 + 3n' for n'={n_prime}")
    for k in (1, -1):
        if desc.symbol(k).is_degenerate and desc.dim(k) > 0 and dominant_kappa(desc) == k:
            raise DegenerateSymbolError("dominant symbol is degenerate")
    kappa = dominant_kappa(desc)
    if kappa is None:
        raise AssertionError("both eigenvalues achieve the level maximum")

    if side == "O-even":
        spinor = kappa == -1
        d = desc.swap_kappa() if spinor else desc
        S = d.sym_plus
        want = "A" if defect(S) % 4 == 0 else "B"
        sign = _top_side(S) != want
        if sign:
            d = d.transpose_symbols()
        mp = main_piece(d.sym_plus, require_hypothesis=False)
        assert mp.orientation == "as-is"
        npr = int(n_prime)
        target = SeriesDescriptor("B", npr, mp.S_prime, 2 * rank(mp.S_prime) + 1,
                                  d.sym_minus, d.dim_minus, d.gl, True, d.psi0)
        target.validate()
        eps = 1 if defect(d.sym_plus) % 4 == 0 else -1
        return HoweAssignment(desc, d, side, spinor, sign, "Sp", 2 * npr, target, mp.S_prime,
                              eps, "Howe-even", hypothesis_holds=hyp)

    if side == "SO-odd":
        spinor = kappa == -1
        d = desc.swap_kappa() if spinor else desc
        Sp_ = main_piece_odd(d.sym_plus, require_hypothesis=False)
        npr = int(n_prime)
        target = SeriesDescriptor("B", npr, d.sym_minus, d.dim_minus + 1,
                                  Sp_, 2 * rank(Sp_), d.gl, True, d.psi0)
        target.validate()
        eps = 1 if defect(Sp_) % 4 == 0 else -1
        return HoweAssignment(desc, d, side, spinor, False, "Sp", 2 * npr, target, Sp_,
                              eps, "Howe-odd", s0_negated=True, hypothesis_holds=hyp)

    # symplectic source
    if kappa == 1:
        Sp_ = main_piece_odd(desc.sym_plus, require_hypothesis=False)
        npr = int(n_prime)
        target = SeriesDescriptor("D", npr, Sp_, 2 * rank(Sp_), desc.sym_minus, desc.dim_minus,
                                  desc.gl, True, desc.psi0)
        target.validate()
        eps = 1 if defect(Sp_) % 4 == 0 else -1
        return HoweAssignment(desc, desc, side, False, False, "O", 2 * npr, target, Sp_,
                              eps, "Howe-even", branch="a", hypothesis_holds=hyp)
    mp = main_piece(desc.sym_minus, require_hypothesis=False)
    two_np = int(2 * n_prime)
    target = SeriesDescriptor("C", (two_np - 1) // 2, mp.S_prime, 2 * rank(mp.S_prime),
                              desc.sym_plus, desc.dim_plus - 1, desc.gl, True, desc.psi0)
    target.validate()
    eps = 1 if defect(desc.sym_minus) % 4 == 0 else -1
    return HoweAssignment(desc, desc, side, False, False, "SO-odd", two_np, target, mp.S_prime,
                          eps, "Howe-odd", branch="b", transposed_piece=mp.orientation == "transposed",
                          s0_negated=True, hypothesis_holds=hyp)


def howe_compatible(h: HoweAssignment) -> bool:
    """Check the matching rule between the normalized source and the target."""
    src, tgt = h.normalized, h.target
    if src.gl != tgt.gl or src.psi0 != tgt.psi0:
        return False
    if h.side == "O-even":
        return linked(src.sym_plus, tgt.sym_plus) is not None and src.sym_minus == tgt.sym_minus
    if h.side == "SO-odd":
        return linked(tgt.sym_minus, src.sym_plus) is not None and src.sym_minus == tgt.sym_plus
    if h.branch == "a":
        return linked(tgt.sym_plus, src.sym_plus) is not None and src.sym_minus == tgt.sym_minus
    S = src.sym_minus.transpose() if h.transposed_piece else src.sym_minus
    return linked(S, tgt.sym_plus) is not None and tgt.sym_minus == src.sym_plus


def reconstruct_source(h: HoweAssignment) -> SeriesDescriptor:
    """Rebuild the source descriptor from the target, the twist flags and epsilon."""
    tgt = h.target
    dim0 = tgt.dim_zero
    if h.side == "O-even":
        n = h.source.n
        r = (2 * n - tgt.dim_minus - dim0) // 2
        S = rebuild_from_piece(tgt.sym_plus, r, h.epsilon == 1)
        d = SeriesDescriptor("D", n, S, 2 * r, tgt.sym_minus, tgt.dim_minus, tgt.gl, True, tgt.psi0)
        if h.sign:
            d = d.transpose_symbols()
        if h.spinor:
            d = d.swap_kappa()
        return d
    if h.side == "SO-odd":
        n = h.source.n
        dim_minus = tgt.dim_plus - 1
        r = (2 * n - dim_minus - dim0) // 2
        S = rebuild_from_piece(tgt.sym_minus, r, h.epsilon == 1)
        d = SeriesDescriptor("C", n, S, 2 * r, tgt.sym_plus, dim_minus, tgt.gl, True, tgt.psi0)
        return d.swap_kappa() if h.spinor else d
    n = h.source.n
    if h.branch == "a":
        r = (2 * n + 1 - tgt.dim_minus - dim0 - 1) // 2
        S = rebuild_from_piece(tgt.sym_plus, r, h.epsilon == 1)
        return SeriesDescriptor("B", n, S, 2 * r + 1, tgt.sym_minus, tgt.dim_minus, tgt.gl, True, tgt.psi0)
    dim_plus = tgt.dim_minus + 1
    r = (2 * n + 1 - dim_plus - dim0) // 2
    S = rebuild_from_piece(tgt.sym_plus, r, h.epsilon == 1)
    if h.transposed_piece:
        S = S.transpose()
    return SeriesDescriptor("B", n, tgt.sym_minus, dim_plus, S, 2 * r, tgt.gl, True, tgt.psi0)


def level_monotone(h: HoweAssignment, rank_bound: int = 14) -> bool:
    """Other symbols linked to S' with the same rank and class have smaller level."""
    if h.side == "Sp" and h.branch == "b":
        S = h.normalized.sym_minus.transpose() if h.transposed_piece else h.normalized.sym_minus
    else:
        S = h.normalized.sym_plus
    for T in linked_partners(h.S_prime, rank(S), defect(S) % 4, rank_bound=rank_bound):
        if level(T) > level(S) or (level(T) == level(S) and T != S):
            return False
    return True


# ---------------------------------------------------------------------------
# exhaustive checks


def check_main_piece(n: int, parity: str = "even", rank_bound: int = 14, max_level: int | None = None) -> dict:
    """Properties (i)-(iii) for every reduced symbol of rank n meeting the hypothesis."""
    checked = 0
    failures = []
    classes = (0, 2) if parity == "even" else (1,)
    for dc in classes:
        for S in enumerate_symbols(n, dc, rank_bound=rank_bound):
            if not rank_hypothesis(S) or (max_level is not None and level(S) > max_level):
                continue
            checked += 1
            lev = level(S)
            if parity == "even":
                mp = main_piece(S)
                src, Sp_ = mp.oriented, mp.S_prime
                ok = defect(Sp_) % 4 == 1 and linked(src, Sp_) is not None
                other = linked(src.transpose(), Sp_) if src != src.transpose() else None
                ok = ok and other is None
            else:
                src, Sp_ = S, main_piece_odd(S)
                ok = linked(Sp_, src) is not None
            ok = ok and rank(Sp_) == lev
            partners = [T for T in linked_partners(Sp_, n, dc, rank_bound=rank_bound) if level(T) >= lev]
            ok = ok and partners == [src]
            if not ok:
                failures.append((S, Sp_, partners))
    return {"rank": n, "parity": parity, "checked": checked, "failures": failures}


def _fixed_minus_symbols(j: int, side: str) -> list[Symbol]:
    if side == "O-even":
        return enumerate_symbols(j, "even")
    return enumerate_symbols(j, 1)


def so_bijection_check(n: int, n_prime: int, side: str, enforce_hypothesis: bool = True) -> dict:
    """Symbol-level surjectivity and fiber sizes of chi -> chi' at level n'.

    Targets: (j, S', eps, psi_{-1}) with S' of rank n'-j.  Sources: every
    descriptor of level n' whose eigenspaces have dimensions (2(n-j), 2j) in
    either order, with V#_0 = 0.  Each target must be hit by exactly 4
    (even orthogonal) or 2 (odd orthogonal) sources, and the constructed
    preimage must satisfy the rank and level identities.
    """
    if side not in ("O-even", "SO-odd"):
        raise ValueError("side must be O-even or SO-odd")
    hyp = howe_hypothesis(n, Fraction(n_prime))
    if enforce_hypothesis and not hyp:
        raise HypothesisError(f"n={n} <= 4n'^2 + 3n' for n'={n_prime}")
    family = SIDE_FAMILY[side]
    expected_fiber = 4 if side == "O-even" else 2
    failures = []
    targets = set()
    constructed = 0

    # construction direction
    for j in range(n_prime + 1):
        if side == "O-even":
            pieces = [(Sp_, eps) for Sp_ in enumerate_symbols(n_prime - j, 1) for eps in (1, -1)]
        else:
            pieces = [(Sp_, 1 if defect(Sp_) % 4 == 0 else -1) for Sp_ in enumerate_symbols(n_prime - j, "even")]
        for Sp_, eps in pieces:
            S = rebuild_from_piece(Sp_, n - j, eps == 1)
            m = len(Sp_.A) + len(Sp_.B)
            cm = n - n_prime + m // 2
            constructed += 1
            ok = (rank(S) == n - j and rank(S) == rank(Sp_) + cm - m // 2 and level(S) == n_prime - j
                  and max_entry(S) == cm)
            if side == "O-even":
                ok = ok and defect(S) % 4 == (0 if eps == 1 else 2)
                mp = main_piece(S, require_hypothesis=False)
                ok = ok and mp.orientation == "as-is" and mp.S_prime == Sp_
            else:
                ok = ok and defect(S) % 4 == 1 and main_piece_odd(S, require_hypothesis=False) == Sp_
            if not ok:
                failures.append(("construct", j, Sp_, eps, S))

    # counting direction over all sources
    hits: Counter = Counter()
    sources = 0
    for j in range(n_prime + 1):
        r = n - j
        cls = "even" if side == "O-even" else 1
        main = [S for S in enumerate_symbols(r, cls, level_cap=min(3, n_prime))
                if level(S) == n_prime - j]
        for S in main:
            for mu in _fixed_minus_symbols(j, side):
                base = SeriesDescriptor(family, n, S, 2 * r, mu, 2 * j)
                for d in (base, base.swap_kappa()):
                    if level_general(d) != n_prime:
                        failures.append(("level", d))
                        continue
                    sources += 1
                    h = howe_map(d, side, enforce_hypothesis=False)
                    if not howe_compatible(h) or reconstruct_source(h) != d:
                        failures.append(("roundtrip", d))
                    key = (h.target, h.epsilon)
                    hits[key] += 1
                    targets.add(key)
    expected_targets = 0
    for j in range(n_prime + 1):
        minus = len(_fixed_minus_symbols(j, side))
        if side == "O-even":
            expected_targets += 2 * len(enumerate_symbols(n_prime - j, 1)) * minus
        else:
            expected_targets += len(enumerate_symbols(n_prime - j, "even")) * minus
    fibers = Counter(hits.values())
    ok = (not failures and set(fibers) == {expected_fiber} and len(targets) == expected_targets)
    return {"n": n, "n_prime": n_prime, "side": side, "hypothesis_holds": hyp,
            "constructed": constructed, "sources": sources, "targets": len(targets),
            "expected_targets": expected_targets, "fiber_sizes": dict(fibers),
            "expected_fiber": expected_fiber, "failures": failures, "ok": ok}

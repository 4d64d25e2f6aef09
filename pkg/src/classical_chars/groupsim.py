"""Brute-force computations in small classical matrix groups.

Groups are closed from generators as permutation groups, acting on the
nonzero vectors of the natural module (or on its 1-spaces for projective
groups).  A matrix lift of every element is kept alongside the permutation.
Elements are identified by their images on a short base, which turns
product lookups into a sorted-key search.
"""
from __future__ import annotations

import multiprocessing as mp
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import algebra
from .algebra import FieldElement, FqMatrix, Poly, char_poly, make_field, poly_gcd
from .symfun import frobenius_count_formula

CLASS_LIST_CAP = 10 ** 6
CLASS_SQUARE_CAP = 3 * 10 ** 4
WORK_CAP = 10 ** 9


class CapExceeded(RuntimeError):
    pass


_ALIASES = {
    "gl": "GL", "sl": "SL", "psl": "PSL", "gu": "GU", "su": "SU", "psu": "PSU",
    "sp": "Sp", "psp": "PSp", "so+": "SO+", "so-": "SO-", "soodd": "SOodd",
    "omega+": "Omega+", "omega-": "Omega-", "omegaodd": "Omegaodd",
    "a": "A", "alt": "A", "alternating": "A", "s": "S", "sym": "S", "symmetric": "S",
}


def normalize_family(name: str) -> str:
    key = name.strip().lower()
    if key not in _ALIASES:
        raise ValueError(f"unknown group family {name!r}")
    return _ALIASES[key]


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    q: int = 0
    gram: tuple | None = None  # overrides the standard form when given

    def __post_init__(self):
        object.__setattr__(self, "family", normalize_family(self.family))

    @property
    def is_permutation(self) -> bool:
        return self.family in ("A", "S")

    @property
    def projective(self) -> bool:
        return self.family.startswith("P")

    @property
    def expected_order(self) -> int:
        return algebra.group_order(self.family, self.n, self.q)

    def field(self):
        if self.is_permutation:
            return None
        p, k = algebra.prime_power(self.q)
        return make_field(p, 2 * k if self.family in ("GU", "SU", "PSU") else k)


# ---------------------------------------------------------------------------
# matrix helpers on numpy encodings


def _matmul(F, A, B):
    add, mul, _, _ = F.tables()
    n = A.shape[-1]
    acc = mul[A[..., :, 0, None], B[..., 0, None, :]]
    for k in range(1, n):
        acc = add[acc, mul[A[..., :, k, None], B[..., k, None, :]]]
    return acc


def _frob_matrix(F, A, e):
    out = A.copy()
    for idx in np.ndindex(A.shape):
        out[idx] = F.pow(int(A[idx]), e)
    return out


def _bilinear_ok(F, M, G):
    return np.array_equal(_matmul(F, _matmul(F, M.T.copy(), G), M), G)


def standard_gram(spec: GroupSpec):
    """Gram matrix of the standard form for the family (None when there is no form)."""
    F = spec.field()
    fam = spec.family
    n = spec.n
    if spec.gram is not None:
        return np.array(spec.gram, dtype=np.int64)
    if fam in ("GU", "SU", "PSU"):
        return np.eye(n, dtype=np.int64)  # Hermitian identity form
    if fam in ("Sp", "PSp"):
        m = n // 2
        G = np.zeros((n, n), dtype=np.int64)
        for i in range(m):
            G[i, m + i] = 1
            G[m + i, i] = F.neg(1)
        return G
    if fam.startswith("SO") or fam.startswith("Omega"):
        if F.p == 2:
            raise NotImplementedError("orthogonal groups are built for odd q only")
        G = np.zeros((n, n), dtype=np.int64)
        if fam.endswith("odd"):
            m = (n - 1) // 2
            G[n - 1, n - 1] = 1
        else:
            m = n // 2 if fam.endswith("+") else n // 2 - 1
        for i in range(m):
            G[i, m + i] = 1
            G[m + i, i] = 1
        if fam.endswith("-"):
            # anisotropic tail x^2 - nu y^2 with nu a non-square
            nu = next(a for a in range(1, F.q) if F.pow(a, (F.q - 1) // 2) != 1)
            G[n - 2, n - 2] = 1
            G[n - 1, n - 1] = F.neg(nu)
        return G
    return None


def _transvection_coeffs(F):
    z = F.primitive_element()
    return [F.pow(z, i) for i in range(F.k)]


def _generators(spec: GroupSpec):
    F = spec.field()
    fam, n = spec.family, spec.n
    base = fam[1:] if fam in ("PSL", "PSU", "PSp") else fam
    eye = np.eye(n, dtype=np.int64)
    gens = []
    if base in ("GL", "SL"):
        for a in _transvection_coeffs(F):
            for i in range(n - 1):
                for (r, c) in ((i, i + 1), (i + 1, i)):
                    M = eye.copy()
                    M[r, c] = a
                    gens.append(M)
        if base == "GL" or n == 1:
            M = eye.copy()
            M[0, 0] = F.primitive_element() if base == "GL" else 1
            gens.append(M)
        return gens
    if base in ("GU", "SU"):
        q = isqrt(F.q)
        delta = F.pow(F.primitive_element(), q - 1)  # generates mu_{q+1}
        conj = lambda x: F.pow(x, q)
        if base == "GU":
            M = eye.copy()
            M[0, 0] = delta
            gens.append(M)
        if n >= 2:
            gens.extend(_unitary_transvections(F, n, q))
            gens.extend(_random_special_unitary(F, n, q, 2, random.Random(0)))
        return gens
    if base == "Sp":
        G = standard_gram(spec)
        m = n // 2
        vecs = []
        for i in range(n):
            u = np.zeros(n, dtype=np.int64)
            u[i] = 1
            vecs.append(u)
        for i in range(m):
            for j in range(m):
                if i != j:
                    u = np.zeros(n, dtype=np.int64)
                    u[i], u[j] = 1, 1
                    vecs.append(u)
                u = np.zeros(n, dtype=np.int64)
                u[i], u[m + j] = 1, 1
                vecs.append(u)
        for u in vecs:
            for a in _transvection_coeffs(F):
                gens.append(_sp_transvection(F, G, u, a))
        return gens
    if base.startswith("SO") or base.startswith("Omega"):
        G = standard_gram(spec)
        refl = _small_reflections(F, G, n)
        r0 = refl[0]
        return [_matmul(F, r0, r) for r in refl[1:]]
    raise ValueError(f"no generators for {fam}")


def _unitary_transvections(F, n, q, max_weight=2):
    """x -> x + a h(x,v) v for isotropic v and a + a^q = 0, h the identity Hermitian form."""
    conj = lambda x: F.pow(x, q)
    traceless = [a for a in range(1, F.q) if F.add(a, conj(a)) == 0]
    out = []
    for w in range(2, max_weight + 1):
        for vec in _weighted_vectors(F, n, w):
            if _hermitian_norm(F, vec, conj) != 0:
                continue
            for a in traceless[:2]:
                M = np.eye(n, dtype=np.int64)
                for r in range(n):
                    for c in range(n):
                        M[r, c] = F.add(int(M[r, c]), F.mul(a, F.mul(vec[r], conj(vec[c]))))
                out.append(M)
    return out


def _random_special_unitary(F, n, q, count, rng):
    """Seeded random orthonormal frames, last column rescaled to determinant 1."""
    conj = lambda x: F.pow(x, q)
    Q = F.q
    vecs = [[(c // Q ** i) % Q for i in range(n)] for c in range(1, Q ** n)]
    herm = lambda u, v: _sum(F, (F.mul(a, conj(b)) for a, b in zip(u, v)))
    out = []
    while len(out) < count:
        cols = []
        for _ in range(n):
            ok = [v for v in vecs if herm(v, v) == 1 and all(herm(v, c) == 0 for c in cols)]
            if not ok:
                break
            cols.append(rng.choice(ok))
        if len(cols) < n:
            continue
        M = np.array(cols, dtype=np.int64).T.copy()
        d = FqMatrix(F, M).det()
        M[:, -1] = [F.mul(int(x), F.inv(d)) for x in M[:, -1]]
        out.append(M)
    return out


def _sum(F, xs):
    s = 0
    for x in xs:
        s = F.add(s, x)
    return s


def _hermitian_norm(F, v, conj):
    s = 0
    for x in v:
        s = F.add(s, F.mul(x, conj(x)))
    return s


def _weighted_vectors(F, n, w):
    """Vectors with exactly w nonzero entries, the first of them equal to 1."""
    from itertools import combinations, product
    for supp in combinations(range(n), w):
        for rest in product(range(1, F.q), repeat=w - 1):
            v = [0] * n
            v[supp[0]] = 1
            for i, x in zip(supp[1:], rest):
                v[i] = x
            yield v


def _perm_parity(perm) -> int:
    perm = list(perm)
    seen = [False] * len(perm)
    par = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            L += 1
        par ^= (L - 1) & 1
    return par


def _sp_transvection(F, G, u, a):
    # x -> x + a B(x,u) u with B(x,y) = x^T G y
    n = len(u)
    Gu = [0] * n
    for i in range(n):
        s = 0
        for j in range(n):
            s = F.add(s, F.mul(int(G[i, j]), int(u[j])))
        Gu[i] = s
    M = np.eye(n, dtype=np.int64)
    for r in range(n):
        for c in range(n):
            M[r, c] = F.add(int(M[r, c]), F.mul(a, F.mul(int(u[r]), Gu[c])))
    return M


def _small_reflections(F, G, n, max_weight=3):
    """Reflections in anisotropic vectors of weight at most max_weight."""
    cands = [v for w in range(1, min(n, max_weight) + 1) for v in _weighted_vectors(F, n, w)]
    out = []
    for v in cands:
        Gv = [0] * n
        for i in range(n):
            s = 0
            for j in range(n):
                s = F.add(s, F.mul(int(G[i, j]), v[j]))
            Gv[i] = s
        Q = 0
        for i in range(n):
            Q = F.add(Q, F.mul(v[i], Gv[i]))
        if Q == 0:
            continue
        c = F.neg(F.mul(2 % F.p, F.inv(Q)))  # x -> x - 2 B(x,v)/B(v,v) v
        M = np.eye(n, dtype=np.int64)
        for r in range(n):
            for col in range(n):
                M[r, col] = F.add(int(M[r, col]), F.mul(c, F.mul(v[r], Gv[col])))
        out.append(M)
    return out


def _check_generator(spec, F, M):
    G = standard_gram(spec)
    fam = spec.family
    if fam in ("GU", "SU", "PSU"):
        q = isqrt(F.q)
        Mbar = _frob_matrix(F, M, q)
        ok = np.array_equal(_matmul(F, Mbar.T.copy(), M), np.eye(spec.n, dtype=np.int64))
    elif G is not None:
        ok = _bilinear_ok(F, M, G)
    else:
        ok = True
    det = FqMatrix(F, M).det()
    if fam in ("SL", "PSL", "SU", "PSU", "Sp", "PSp") or fam.startswith("SO") or fam.startswith("Omega"):
        ok = ok and det == 1
    if not ok:
        raise RuntimeError(f"generator does not lie in {fam}")


# ---------------------------------------------------------------------------
# permutation action


class _Action:
    def __init__(self, F, n, projective):
        self.F, self.n, self.projective = F, n, projective
        Q = F.q
        codes = np.arange(1, Q ** n)
        V = np.stack([(codes // Q ** i) % Q for i in range(n)], axis=1)
        if projective:
            keep = np.array([self._normal(v) for v in V])
            V = V[keep]
        self.V = V
        self.lookup = np.full(Q ** n, -1, dtype=np.int64)
        self.lookup[self._codes(V)] = np.arange(len(V))
        self._inv = F.tables()[3]

    def _normal(self, v):
        for x in v:
            if x:
                return x == 1
        return False

    def _codes(self, W):
        Q = self.F.q
        return sum(W[:, i] * Q ** i for i in range(self.n))

    def perm_of(self, M):
        add, mul, _, inv = self.F.tables()
        W = np.zeros_like(self.V)
        for i in range(self.n):
            acc = np.zeros(len(self.V), dtype=np.int64)
            for j in range(self.n):
                acc = add[acc, mul[M[i, j], self.V[:, j]]]
            W[:, i] = acc
        if self.projective:
            lead = np.zeros(len(W), dtype=np.int64)
            for i in reversed(range(self.n)):
                lead = np.where(W[:, i] != 0, W[:, i], lead)
            W = mul[inv[lead][:, None], W]
        return self.lookup[self._codes(W)]


# ---------------------------------------------------------------------------
# group tables


@dataclass
class GroupTable:
    spec: GroupSpec
    F: object
    perms: np.ndarray  # perms[i][x] = image of point x
    mats: np.ndarray | None  # matrix lift of each element
    base: tuple = ()
    _keys: np.ndarray = field(default=None, repr=False)
    _order_idx: np.ndarray = field(default=None, repr=False)
    inverse: np.ndarray = field(default=None, repr=False)
    class_of: np.ndarray = field(default=None, repr=False)
    classes: list = field(default_factory=list, repr=False)

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def reps(self) -> list[int]:
        return [int(c[0]) for c in self.classes]

    def keys_of(self, images_on_base: np.ndarray) -> np.ndarray:
        npts = self.perms.shape[1]
        k = np.zeros(images_on_base.shape[:-1], dtype=np.int64)
        for c in range(images_on_base.shape[-1]):
            k = k * npts + images_on_base[..., c]
        return k

    def index_from_base(self, images_on_base: np.ndarray) -> np.ndarray:
        k = self.keys_of(images_on_base)
        pos = np.searchsorted(self._keys, k)
        pos = np.minimum(pos, len(self._keys) - 1)
        if not np.all(self._keys[pos] == k):
            raise KeyError("product is not in the group")
        return self._order_idx[pos]

    def index(self, perm) -> int:
        perm = np.asarray(perm)
        return int(self.index_from_base(perm[list(self.base)]))

    def mul(self, i: int, j: int) -> int:
        """Index of g_i g_j (apply g_j first)."""
        return self.index(self.perms[i][self.perms[j]])

    def matrix(self, i: int) -> FqMatrix:
        if self.mats is None:
            F = make_field(2) if self.F is None else self.F
            n = self.perms.shape[1]
            M = np.zeros((n, n), dtype=np.int64)
            M[self.perms[i], np.arange(n)] = 1
            return FqMatrix(F, M)
        return FqMatrix(self.F, self.mats[i])

    def class_size(self, c: int) -> int:
        return len(self.classes[c])

    def element_order(self, i: int) -> int:
        p = self.perms[i]
        cur = p.copy()
        ident = np.arange(len(p))
        k = 1
        while not np.array_equal(cur, ident):
            cur = p[cur]
            k += 1
        return k

    def center(self) -> list[int]:
        return [int(c[0]) for c in self.classes if len(c) == 1]


def _closure(gen_perms, gen_mats, F, npts, cap):
    ident = np.arange(npts, dtype=np.int64)
    rows = [ident]
    mats = None
    if gen_mats is not None:
        nn = gen_mats[0].shape[0]
        mats = [np.eye(nn, dtype=np.int64)]
    seen = {ident.tobytes(): 0}
    frontier = [0]
    while frontier:
        Fr = np.stack([rows[i] for i in frontier])
        Fm = np.stack([mats[i] for i in frontier]) if mats is not None else None
        nxt = []
        for g, gm in zip(gen_perms, gen_mats if gen_mats is not None else [None] * len(gen_perms)):
            P = Fr[:, g]  # h g for every frontier element h
            Pm = _matmul(F, Fm, gm) if Fm is not None else None
            for r in range(len(P)):
                b = P[r].tobytes()
                if b not in seen:
                    seen[b] = len(rows)
                    nxt.append(len(rows))
                    rows.append(P[r].copy())
                    if mats is not None:
                        mats.append(Pm[r])
                    if len(rows) > cap:
                        raise CapExceeded(f"closure exceeded {cap} elements")
        frontier = nxt
    return np.stack(rows), (np.stack(mats) if mats is not None else None)


def _greedy_base(perms):
    n_el, npts = perms.shape
    if n_el == 1:
        return (0,)
    base = []
    key = np.zeros(n_el, dtype=np.int64)
    distinct = 1
    limit = np.iinfo(np.int64).max // max(npts, 2)
    for c in range(npts):
        if key.max(initial=0) > limit:
            raise CapExceeded("base keys overflow")
        k2 = key * npts + perms[:, c]
        d2 = len(np.unique(k2))
        if d2 > distinct:
            base.append(c)
            key, distinct = k2, d2
            if distinct == n_el:
                return tuple(base)
    raise RuntimeError("action is not faithful")


def _finish_table(G: GroupTable, gen_perms=None):
    G.base = _greedy_base(G.perms)
    keys = G.keys_of(G.perms[:, list(G.base)])
    order = np.argsort(keys)
    G._keys, G._order_idx = keys[order], order
    inv_perms = np.argsort(G.perms, axis=1)
    G.inverse = G.index_from_base(inv_perms[:, list(G.base)])
    gens = None if gen_perms is None else sorted({G.index(g) for g in gen_perms})
    _classes(G, gens)


def _classes(G: GroupTable, gens=None):
    n_el = G.order
    if gens is None:
        gens = list(range(n_el))
    src, dst = [], []
    b = list(G.base)
    for g in gens:
        gp = G.perms[g]
        ginv = G.perms[G.inverse[g]]
        conj = ginv[G.perms[:, gp[b]]]  # g^-1 h g on the base
        src.append(np.arange(n_el))
        dst.append(G.index_from_base(conj))
    src, dst = np.concatenate(src), np.concatenate(dst)
    A = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n_el, n_el))
    ncomp, labels = connected_components(A, directed=False)
    buckets = [[] for _ in range(ncomp)]
    for i, l in enumerate(labels):
        buckets[l].append(i)
    cls = [np.array(sorted(c)) for c in buckets]
    cls.sort(key=lambda c: (G.element_order(int(c[0])), len(c), int(c[0])))
    G.classes = cls
    G.class_of = np.empty(n_el, dtype=np.int64)
    for ci, c in enumerate(cls):
        G.class_of[c] = ci


def build_group(spec: GroupSpec, cap: int = CLASS_LIST_CAP) -> GroupTable:
    expected = spec.expected_order
    if expected > cap:
        raise CapExceeded(f"|G| = {expected} exceeds the cap {cap}")
    if spec.is_permutation:
        n = spec.n
        if spec.family == "S":
            gens = [np.array([1, 0] + list(range(2, n)))] if n >= 2 else []
            if n >= 3:
                gens.append(np.array(list(range(1, n)) + [0]))
        else:
            gens = []
            for i in range(2, n):
                g = np.arange(n)
                g[0], g[1], g[i] = 1, i, 0
                gens.append(g)
        gens = [np.asarray(g, dtype=np.int64) for g in gens] or [np.arange(max(n, 1))]
        perms, _ = _closure(gens, None, None, max(n, 1), cap)
        G = GroupTable(spec, None, perms, None)
        gp = gens
    else:
        F = spec.field()
        gm = _generators(spec) or [np.eye(spec.n, dtype=np.int64)]
        for M in gm:
            _check_generator(spec, F, M)
        act = _Action(F, spec.n, spec.projective)
        gp = [act.perm_of(M) for M in gm]
        if spec.family.startswith("Omega"):
            gp, gm = _derived_generators(spec, F, act, gp, gm, cap)
        perms, mats = _closure(gp, gm, F, len(act.V), cap)
        rng = random.Random(1)
        tries = 0
        while len(perms) < expected and spec.family in ("GU", "SU", "PSU") and tries < 8:
            # small unitary groups may need extra random frames
            extra = _random_special_unitary(F, spec.n, isqrt(F.q), 2, rng)
            gm = gm + extra
            gp = gp + [act.perm_of(M) for M in extra]
            perms, mats = _closure(gp, gm, F, len(act.V), cap)
            tries += 1
        G = GroupTable(spec, F, perms, mats)
        G.action = act
    if G.order != expected:
        raise RuntimeError(f"closure gave {G.order} elements, expected {expected}")
    _finish_table(G, gp)
    return G


def _derived_generators(spec, F, act, gp, gm, cap):
    """Commutators of SO generators, enlarged until the closure reaches |Omega|."""
    perms, mats = _closure(gp, gm, F, len(act.V), cap)
    T = GroupTable(spec, F, perms, mats)
    T.base = _greedy_base(perms)
    keys = T.keys_of(perms[:, list(T.base)])
    order = np.argsort(keys)
    T._keys, T._order_idx = keys[order], order
    T.inverse = T.index_from_base(np.argsort(perms, axis=1)[:, list(T.base)])
    rng = random.Random(0)
    target = spec.expected_order
    cg, cm = [], []
    batch = 4
    while len(cg) < 64:
        for _ in range(batch):
            a, b = rng.randrange(T.order), rng.randrange(T.order)
            ai, bi = T.inverse[a], T.inverse[b]
            idx = T.mul(T.mul(ai, bi), T.mul(a, b))
            cg.append(T.perms[idx])
            cm.append(T.mats[idx])
        P, _ = _closure(cg, None, None, len(act.V), cap)
        if len(P) == target:
            return cg, cm
        batch *= 2
    raise RuntimeError("derived subgroup generators not found")


# ---------------------------------------------------------------------------
# eigenvalue data of single matrices


def support(g: FqMatrix) -> int:
    K, eig = algebra.eigenvalues(g)
    best = max(algebra.eigenspace_dim(g, lam, K) for lam in eig)
    return g.n - best


def primary_eigenvalue(g: FqMatrix) -> FieldElement | None:
    K, eig = algebra.eigenvalues(g)
    dims = {lam: algebra.eigenspace_dim(g, lam, K) for lam in eig}
    lam, best = max(dims.items(), key=lambda kv: kv[1])
    if 2 * (g.n - best) < g.n:
        return K(lam)
    return None


def fixed_dim(g: FqMatrix) -> int:
    return algebra.eigenspace_dim(g, 1)


def weil_gl_value(g: FqMatrix, eps: int, q: int | None = None) -> int:
    """eps^N (eps q)^{dim ker(g-1)}: the reducible Weil character of GL_N or GU_N."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if q is None:
        q = g.F.q if eps == 1 else isqrt(g.F.q)
    N = g.n
    return eps ** N * (eps * q) ** fixed_dim(g)


@dataclass(frozen=True)
class TensorReport:
    dim: int
    N: int
    j: int
    m: int
    bound_a: int
    holds_a: bool
    bound_b: int
    holds_b: bool | None  # None when s is the identity
    normalized: bool  # 1 is an eigenvalue of g with the largest eigenspace


def tensor_fixed_dim(g: FqMatrix, s: FqMatrix) -> TensorReport:
    if g.F is not s.F:
        raise ValueError("g and s must be over the same field")
    N, j = g.n, s.n
    m = support(g)
    gs = g.kron(s)
    dim = algebra.eigenspace_dim(gs, 1)
    bound_a = j * (N - m)
    bound_b = (N - m) * (j - 2) + N
    is_id = s == FqMatrix.identity(s.F, j)
    return TensorReport(dim, N, j, m, bound_a, dim <= bound_a, bound_b,
                        None if is_id else dim <= bound_b, fixed_dim(g) == N - m)


def is_regular_semisimple(g: FqMatrix) -> bool:
    f = char_poly(g)
    return poly_gcd(f, f.derivative()).degree == 0


def distinct_eigenvalue_count(g: FqMatrix) -> int:
    return len(algebra.eigenvalues(g)[1])


def centralizer_order(G: GroupTable, i: int) -> int:
    p = G.perms[i]
    return int(np.sum(np.all(G.perms[:, p] == p[G.perms], axis=1)))


# ---------------------------------------------------------------------------
# T-orbits and SU-regularity


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class TOrbit:
    K: object
    alpha: int  # encoding in K
    T: tuple
    elements: frozenset
    m: int

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_regular(self) -> bool:
        return self.size == 2 * self.m * len(self.T)

    def product(self) -> int:
        r = 1
        for x in self.elements:
            r = self.K.mul(r, x)
        return r


def _orbit_field(q, m, t_order):
    p, k = algebra.prime_power(q)
    e = m
    while (q ** e - 1) % t_order:
        e += m
        if e > 24 // k * 1 + m * 24:
            raise ValueError("no common field for T and alpha")
    return make_field(p, k * e)


def t_orbit(alpha: int, q: int, m: int, T_order: int | None = None) -> TOrbit:
    """O_T(alpha) = {w alpha^(+-q^i)} with alpha given as an encoding in F_{q^m}."""
    p, k = algebra.prime_power(q)
    if T_order is None:
        T_order = q + 1
    Fm = make_field(p, k * m)
    if not 0 < alpha < Fm.q:
        raise ValueError("alpha must be a unit of F_{q^m}")
    K = _orbit_field(q, m, T_order)
    a = algebra.embed_int(alpha, Fm, K)
    T = tuple(K.roots_of_unity(T_order))
    ai = K.inv(a)
    conj = set()
    x, y = a, ai
    for _ in range(m):
        conj.add(x)
        conj.add(y)
        x, y = K.pow(x, q), K.pow(y, q)
    orbit = frozenset(K.mul(w, c) for w in T for c in conj)
    return TOrbit(K, a, T, orbit, m)


def is_su_regular(alpha: int, q: int, m: int) -> bool:
    return t_orbit(alpha, q, m).is_regular


def su_irregular_by_equation(alpha: int, q: int, m: int) -> bool:
    """alpha solves w1 alpha^(e1 q^r1) = w2 alpha^(e2 q^r2) for distinct triples.

    After normalizing w1 = 1, r1 = 0 the family is alpha^((1 - e q^d)(q+1)) = 1
    with (e, d) != (1, 0), 0 <= d < m.  Evaluated inside F_{q^m} itself.
    """
    p, k = algebra.prime_power(q)
    Fm = make_field(p, k * m)
    order = Fm.q - 1
    for d in range(m):
        for e in (1, -1):
            if e == 1 and d == 0:
                continue
            E = ((1 - e * q ** d) * (q + 1)) % order
            if Fm.pow(alpha, E) == 1:
                return True
    return False


def count_non_su_regular(q: int, m: int) -> dict:
    p, k = algebra.prime_power(q)
    if q ** m > 10 ** 6:
        raise CapExceeded("field too large")
    Fm = make_field(p, k * m)
    by_def = by_eq = 0
    mismatches = []
    products_ok = True
    for a in range(1, Fm.q):
        orb = t_orbit(a, q, m)
        irr_def = not orb.is_regular
        irr_eq = su_irregular_by_equation(a, q, m)
        by_def += irr_def
        by_eq += irr_eq
        if irr_def != irr_eq:
            mismatches.append(a)
        if orb.is_regular and orb.product() != 1:
            products_ok = False
    envelope = 9 * m * m * q ** (1 + m / 2)
    return {"q": q, "m": m, "units": Fm.q - 1, "count_definition": by_def,
            "count_equation": by_eq, "mismatches": mismatches,
            "regular_exists": by_def < Fm.q - 1, "orbit_products_ok": products_ok,
            "envelope": envelope, "within_envelope": by_def <= envelope}


def first_su_regular(q: int, m: int) -> int:
    p, k = algebra.prime_power(q)
    for a in range(1, make_field(p, k * m).q):
        if is_su_regular(a, q, m):
            return a
    raise ValueError(f"no SU-regular element in F_{q}^{m}")


# ---------------------------------------------------------------------------
# the block element x_2


def _min_poly_over_fq(alpha: int, q: int, m: int, target) -> Poly:
    """Minimal polynomial of alpha over F_q, with coefficients mapped into target."""
    p, k = algebra.prime_power(q)
    Fm = make_field(p, k * m)
    Fq = make_field(p, k)
    roots = []
    x = alpha
    while x not in roots:
        roots.append(x)
        x = Fm.pow(x, q)
    f = Poly(Fm, [1])
    for r in roots:
        f = f * Poly(Fm, [Fm.neg(r), 1])
    back = {algebra.embed_int(v, Fq, Fm): v for v in range(Fq.q)}
    return Poly(target, [algebra.embed_int(back[c], Fq, target) for c in f.c])


def build_x2(q: int, m: int, alpha: int | None = None) -> FqMatrix:
    """diag(X, gX, ..., g^q X, X^-1, gX^-1, ..., g^q X^-1) over F_{q^2}, g generating mu_{q+1}."""
    if alpha is None:
        alpha = first_su_regular(q, m)
    elif not is_su_regular(alpha, q, m):
        raise ValueError("alpha is not SU-regular")
    p, k = algebra.prime_power(q)
    F2 = make_field(p, 2 * k)
    X = algebra.companion(_min_poly_over_fq(alpha, q, m, F2))
    Xi = X.inverse()
    gamma = F2.pow(F2.primitive_element(), q - 1)
    blocks = [X.scale(F2.pow(gamma, i)) for i in range(q + 1)]
    blocks += [Xi.scale(F2.pow(gamma, i)) for i in range(q + 1)]
    return algebra.block_diag(F2, blocks)


def verify_scalars(q: int, m: int, alpha: int | None = None) -> dict:
    """Char-poly witness that each w I is a product of two conjugates of x_2.

    w I = x_2 y with y conjugate to x_2 needs w x_2^-1 conjugate to x_2;
    equal characteristic polynomials of regular semisimple elements give
    conjugacy in GU, which is what is checked here.
    """
    x2 = build_x2(q, m, alpha)
    F2 = x2.F
    f = char_poly(x2)
    rs = is_regular_semisimple(x2)
    xi = x2.inverse()
    per_w = {}
    for w in F2.roots_of_unity(q + 1):
        per_w[w] = char_poly(xi.scale(w)) == f
    return {"q": q, "m": m, "L": x2.n, "regular_semisimple": rs, "per_omega": per_w,
            "ok": rs and all(per_w.values()), "witness_only": True}


# ---------------------------------------------------------------------------
# products of classes


def _products_on_base(G: GroupTable, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Indices of a b for a in left, b in right (all pairs), shape (len(left), len(right))."""
    rb = G.perms[right][:, list(G.base)]
    L = G.perms[left]
    img = L[np.arange(len(left))[:, None, None], rb[None, :, :]]
    return G.index_from_base(img)


def frobenius_count_direct(G: GroupTable, cx: int, cy: int, g: int) -> int:
    """#{(a, b) in Cx x Cy : a b = g}."""
    Cx = G.classes[cx]
    ginv_a = G.perms[G.inverse[Cx]]  # a^-1
    b = G.index_from_base(ginv_a[:, G.perms[g][list(G.base)]])
    return int(np.sum(G.class_of[b] == cy))


def frobenius_count_formula_sn(N: int, x, y, g) -> Fraction:
    if N > 7:
        raise ValueError("formula route limited to N <= 7")
    return frobenius_count_formula(N, x, y, g)


def cycle_type_of(perm) -> tuple[int, ...]:
    perm = list(perm)
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            L += 1
        out.append(L)
    return tuple(sorted(out))


def class_by_cycle_type(G: GroupTable) -> dict:
    return {cycle_type_of(G.perms[r]): c for c, r in enumerate(G.reps)}


_WORKER_G = None


def _init_worker(G):
    global _WORKER_G
    _WORKER_G = G


def _shard(args):
    cls, lo, hi = args
    return _shard_mask(_WORKER_G, cls, lo, hi)


def _shard_mask(G, cls, lo, hi, chunk=64):
    C = G.classes[cls]
    mask = np.zeros(G.order, dtype=bool)
    for s in range(lo, hi, chunk):
        idx = _products_on_base(G, C[s:min(hi, s + chunk)], C)
        mask[idx.ravel()] = True
    return mask


@dataclass
class CoverageReport:
    cls: int
    rep: int
    class_size: int
    covered: bool
    mask: np.ndarray = field(repr=False)
    missing_class_reps: list
    excluded: list

    def to_dict(self):
        return {"class": self.cls, "covered": self.covered,
                "missing_class_reps": self.missing_class_reps}


def class_square_coverage(G: GroupTable, cls: int, exclude=None, workers: int = 1,
                          work_cap: int = WORK_CAP, shards: int | None = None) -> CoverageReport:
    """{c1 c2 : c_i in C} as a membership mask; shards over c1, merged by union."""
    C = G.classes[cls]
    if len(C) ** 2 > work_cap:
        raise CapExceeded(f"|C|^2 = {len(C) ** 2} exceeds the work cap {work_cap}")
    nshards = shards or max(1, workers * 4)
    bounds = np.linspace(0, len(C), nshards + 1).astype(int)
    jobs = [(cls, int(bounds[i]), int(bounds[i + 1])) for i in range(nshards) if bounds[i] < bounds[i + 1]]
    mask = np.zeros(G.order, dtype=bool)
    if workers > 1 and len(jobs) > 1:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker, initargs=(G,)) as ex:
            for part in ex.map(_shard, jobs):
                mask |= part
    else:
        for _, lo, hi in jobs:
            mask |= _shard_mask(G, cls, lo, hi)
    excl = sorted(set(int(e) for e in (exclude or ())))
    need = np.ones(G.order, dtype=bool)
    need[excl] = False
    missing = sorted({int(G.reps[G.class_of[i]]) for i in np.flatnonzero(need & ~mask)})
    return CoverageReport(cls, G.reps[cls], len(C), bool(np.all(mask[need])), mask, missing, excl)


def coverage_by_reps(G: GroupTable, cls: int) -> list[bool]:
    """For each class K: does some c1 in C have c1^-1 g in C (g the rep of K)."""
    C = G.classes[cls]
    inv_rows = G.perms[G.inverse[C]]
    out = []
    for r in G.reps:
        idx = G.index_from_base(inv_rows[:, G.perms[r][list(G.base)]])
        out.append(bool(np.any(G.class_of[idx] == cls)))
    return out


def coverage_matrix(G: GroupTable, workers: int = 1) -> list[list[int]]:
    """Row i, column k: 1 iff class k lies in C_i^2."""
    rows = []
    for i in range(len(G.classes)):
        rep = class_square_coverage(G, i, workers=workers)
        rows.append([int(rep.mask[G.reps[k]]) for k in range(len(G.classes))])
    return rows


def find_covering_class(G: GroupTable, workers: int = 1, exclude=None) -> CoverageReport | None:
    """First class (largest first) whose square covers G, or G minus the excluded set."""
    order = sorted(range(1, len(G.classes)), key=lambda c: (-len(G.classes[c]), c))
    for c in order:
        rep = class_square_coverage(G, c, exclude=exclude, workers=workers)
        if rep.covered:
            return rep
    return None

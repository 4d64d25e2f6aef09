"""Finite fields, polynomials and matrices over them, and classical group orders.

Field elements are encoded as integers 0 <= v < p^k whose base-p digits are
the coefficients (lowest degree first) of the residue modulo the defining
polynomial.  The defining polynomial of F_{p^k} is the lexicographically
smallest monic irreducible of degree k, reading coefficients from the top
degree down, so encodings are reproducible between runs.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np

TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# ---------------------------------------------------------------------------
# polynomials over F_p, used only to find defining polynomials


def _pmod_p(a: list[int], f: list[int], p: int) -> list[int]:
    a = a[:]
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        c = a[-1] * inv % p
        if c:
            shift = len(a) - 1 - df
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _pmulmod_p(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return _pmod_p(out, f, p)


def _pgcd_p(a, b, p):
    while b:
        a, b = b, _pmod_p(a, b, p)
    return a


def _irreducible_p(f: list[int], p: int) -> bool:
    # Rabin-style test: gcd(x^{p^i} - x, f) = 1 for i <= k/2
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(k // 2):
        # h <- h^p mod f
        r = [1]
        base, e = h, p
        while e:
            if e & 1:
                r = _pmulmod_p(r, base, f, p)
            base = _pmulmod_p(base, base, f, p)
            e >>= 1
        h = r
        diff = h + [0] * max(0, 2 - len(h))
        diff = diff[:]
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        if not diff:
            return False
        if len(_pgcd_p(f, diff, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p (ascending coefficients)."""
    for code in range(p ** k):
        low = []
        c = code
        for _ in range(k):
            low.append(c % p)
            c //= p
        # the top coefficient is the most significant digit of code
        coeffs = low + [1]
        if k > 1 and coeffs[0] == 0:
            continue
        if _irreducible_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# fields


class FiniteField:
    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = conway_free_modulus(p, k)
        self._exp = None
        self._log = None
        self._gen = None
        self._tables = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # digits
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + d % self.p
        return v

    def __call__(self, v: int) -> "FieldElement":
        return FieldElement(self, v % self.q if self.k == 1 else v)

    def elements(self):
        return range(self.q)

    # ring operations on encodings
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % p
        r, m = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.k == 1:
            return (-a) % p
        r, m = 0, 1
        while a:
            r += ((-a) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _polymul(self, a: int, b: int) -> int:
        p, k, f = self.p, self.k, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * f[i]) % p
        return self.from_digits(prod[:k])

    def _build_log(self):
        if self._exp is not None:
            return
        q = self.q
        g = self.primitive_element()
        exp = [0] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._polymul(x, g)
        self._exp, self._log = exp, log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.q <= TABLE_LIMIT:
            self._build_log()
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._polymul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        if self.q <= TABLE_LIMIT:
            self._build_log()
            return self._exp[self._log[a] * e % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = self._polymul(r, a)
            a = self._polymul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= TABLE_LIMIT:
            self._build_log()
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def primitive_element(self) -> int:
        if self._gen is None:
            n = self.q - 1
            rs = prime_factors(n)
            for g in range(1, self.q):
                if all(self._slow_pow(g, n // r) != 1 for r in rs):
                    self._gen = g
                    break
        return self._gen

    def _slow_pow(self, a, e):
        if self.k == 1:
            return pow(a, e, self.p)
        r = 1
        while e:
            if e & 1:
                r = self._polymul(r, a)
            a = self._polymul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def roots_of_unity(self, n: int) -> list[int]:
        """All x with x^n = 1, sorted by encoding."""
        if (self.q - 1) % n:
            n = gcd(n, self.q - 1)
        g = self.pow(self.primitive_element(), (self.q - 1) // n)
        return sorted(self.pow(g, i) for i in range(n))

    def tables(self):
        """(add, mul, neg, inv) lookup arrays; inv[0] is 0.  Small fields only."""
        if self._tables is None:
            q = self.q
            if q > 1024:
                raise ValueError("lookup tables only for fields with at most 1024 elements")
            add = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            mul = np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
            inv = np.array([0] + [self.inv(a) for a in range(1, q)], dtype=np.int64)
            self._tables = (add, mul, neg, inv)
        return self._tables


class FieldElement:
    __slots__ = ("F", "v")

    def __init__(self, F: FiniteField, v: int):
        if not 0 <= v < F.q:
            raise ValueError("encoding out of range")
        self.F = F
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.F is not self.F:
                raise ValueError("elements of different fields")
            return other.v
        return self.F.from_digits([other % self.F.p])

    def __add__(self, o):
        return FieldElement(self.F, self.F.add(self.v, self._coerce(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.F, self.F.sub(self.v, self._coerce(o)))

    def __rsub__(self, o):
        return FieldElement(self.F, self.F.sub(self._coerce(o), self.v))

    def __neg__(self):
        return FieldElement(self.F, self.F.neg(self.v))

    def __mul__(self, o):
        return FieldElement(self.F, self.F.mul(self.v, self._coerce(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.F, self.F.div(self.v, self._coerce(o)))

    def __pow__(self, e: int):
        return FieldElement(self.F, self.F.pow(self.v, e))

    def inverse(self):
        return FieldElement(self.F, self.F.inv(self.v))

    def order(self) -> int:
        return self.F.order(self.v)

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.F is o.F and self.v == o.v
        if isinstance(o, int):
            return self.v == self._coerce(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.p, self.F.k, self.v))

    def __repr__(self):
        return f"{self.F}({self.v})"


def make_field(p: int, k: int = 1) -> FiniteField:
    # one instance per field: elements compare fields by identity
    return _make_field(int(p), int(k))


@lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> FiniteField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= k <= 24:
        raise ValueError("extension degree must lie in 1..24")
    return FiniteField(p, k)


def field_of_order(q: int) -> FiniteField:
    p, k = prime_power(q)
    return make_field(p, k)


@lru_cache(maxsize=None)
def _embedding_root(p: int, a: int, b: int) -> int:
    """Smallest encoding in F_{p^b} of a root of the defining polynomial of F_{p^a}."""
    K = make_field(p, b)
    f = conway_free_modulus(p, a)
    if a == 1:
        return K.from_digits([0])  # unused: prime field embeds by digits
    h = K.pow(K.primitive_element(), (K.q - 1) // (p ** a - 1))
    cands = []
    x = 1
    for _ in range(p ** a - 1):
        acc = 0
        for c in reversed(f):
            acc = K.add(K.mul(acc, x), K.from_digits([c]))
        if acc == 0:
            cands.append(x)
        x = K.mul(x, h)
    return min(cands)


def embed_int(v: int, F: FiniteField, K: FiniteField) -> int:
    """Embed the encoding v of F into K (same characteristic, deg F | deg K)."""
    if F.p != K.p or K.k % F.k:
        raise ValueError(f"cannot embed {F} into {K}")
    if F.k == K.k:
        return v
    ds = F.digits(v)
    if F.k == 1:
        return K.from_digits([ds[0]])
    r = _embedding_root(F.p, F.k, K.k)
    acc = 0
    for c in reversed(ds):
        acc = K.add(K.mul(acc, r), K.from_digits([c]))
    return acc


def embed(e: FieldElement, target: FiniteField) -> FieldElement:
    return FieldElement(target, embed_int(e.v, e.F, target))


# ---------------------------------------------------------------------------
# polynomials over a finite field (ascending integer-encoded coefficients)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    __slots__ = ("F", "c")

    def __init__(self, F: FiniteField, coeffs):
        self.F = F
        self.c = tuple(_trim(list(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def monic(self) -> "Poly":
        inv = self.F.inv(self.lead())
        return Poly(self.F, [self.F.mul(x, inv) for x in self.c])

    def __add__(self, o: "Poly") -> "Poly":
        F = self.F
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.F, [self.F.neg(x) for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        F = self.F
        if not self.c or not o.c:
            return Poly(F, [])
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, s: int) -> "Poly":
        return Poly(self.F, [self.F.mul(x, s) for x in self.c])

    def divmod(self, d: "Poly"):
        F = self.F
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dd = d.degree
        inv = F.inv(d.lead())
        qc = [0] * max(0, len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = F.mul(r[i], inv)
            if c:
                qc[i - dd] = c
                for j, y in enumerate(d.c):
                    r[i - dd + j] = F.sub(r[i - dd + j], F.mul(c, y))
        return Poly(F, qc), Poly(F, r[:dd] if dd > 0 else [])

    def __mod__(self, d):
        return self.divmod(d)[1]

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __eq__(self, o):
        return isinstance(o, Poly) and o.F is self.F and o.c == self.c

    def __hash__(self):
        return hash(self.c)

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(x, F.from_digits([i % F.p])) for i, x in enumerate(self.c)][1:])

    def __call__(self, x: int) -> int:
        F = self.F
        acc = 0
        for c in reversed(self.c):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __repr__(self):
        return f"Poly({self.F}, {list(self.c)})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_powmod(a: Poly, e: int, f: Poly) -> Poly:
    r = Poly(a.F, [1])
    a = a % f
    while e:
        if e & 1:
            r = (r * a) % f
        a = (a * a) % f
        e >>= 1
    return r


def _pth_root(f: Poly) -> Poly:
    # f is a polynomial in t^p; take p-th roots of coefficients
    F = f.F
    p = F.p
    e = F.q // p  # x -> x^{q/p} inverts Frobenius
    return Poly(F, [F.pow(f.c[i], e) for i in range(0, len(f.c), p)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition over F_q, returns (squarefree factor, multiplicity)."""
    F = f.F
    out: dict[int, Poly] = {}

    def rec(g: Poly, mult: int):
        if g.degree <= 0:
            return
        dg = g.derivative()
        if dg.is_zero():
            rec(_pth_root(g), mult * F.p)
            return
        c = poly_gcd(g, dg)
        w = g // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                out[i * mult] = out[i * mult] * z if i * mult in out else z
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            rec(_pth_root(c), mult * F.p)

    rec(f.monic(), 1)
    return sorted(((v.monic(), k) for k, v in out.items()), key=lambda t: t[1])


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    F = f.F
    x = Poly(F, [0, 1])
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, F.q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _roots_in(f: Poly, K: FiniteField) -> list[int]:
    return [z for z in K.elements() if _eval_in(f, K, z) == 0]


def _eval_in(f: Poly, K: FiniteField, z: int) -> int:
    acc = 0
    for c in reversed(f.c):
        acc = K.add(K.mul(acc, z), embed_int(c, f.F, K))
    return acc


def _split_equal_degree(g: Poly, d: int) -> list[Poly]:
    F = g.F
    if g.degree == d:
        return [g.monic()]
    K = make_field(F.p, F.k * d)
    roots = sorted(set(_roots_in(g, K)))
    # group roots into Galois orbits over F and form minimal polynomials
    seen = set()
    factors = []
    q = F.q
    for r in roots:
        if r in seen:
            continue
        orbit = []
        z = r
        while z not in orbit:
            orbit.append(z)
            z = K.pow(z, q)
        seen.update(orbit)
        # minimal polynomial prod (t - z) over K, then pull back to F
        coeffs = [1]
        for z in orbit:
            nz = K.neg(z)
            new = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i] = K.add(new[i], K.mul(c, nz))
                new[i + 1] = K.add(new[i + 1], c)
            coeffs = new
        factors.append(Poly(F, [_pull_back(c, K, F) for c in coeffs]))
    return factors


@lru_cache(maxsize=None)
def _subfield_preimages(p: int, a: int, b: int) -> dict:
    F, K = make_field(p, a), make_field(p, b)
    return {embed_int(v, F, K): v for v in F.elements()}


def _pull_back(c: int, K: FiniteField, F: FiniteField) -> int:
    table = _subfield_preimages(F.p, F.k, K.k)
    if c not in table:
        raise ValueError("coefficient does not lie in the subfield")
    return table[c]


def factor_squarefree_split(f: Poly, max_ext: int = 8) -> list[tuple[Poly, int]]:
    """Full factorization into monic irreducibles with multiplicities.

    The leading coefficient is dropped; the product of the returned factors
    equals the monic associate of f.  Raises ValueError if some irreducible
    factor has degree above max_ext.
    """
    if f.degree < 1:
        raise ValueError("polynomial of degree < 1")
    out = []
    for g, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(g):
            if d > max_ext:
                raise ValueError(f"irreducible factor of degree {d} exceeds max_ext={max_ext}")
            for h in _split_equal_degree(block, d):
                out.append((h, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].c, t[1]))
    return out


def is_irreducible(f: Poly) -> bool:
    fs = factor_squarefree_split(f, max_ext=f.degree)
    return len(fs) == 1 and fs[0][1] == 1


# ---------------------------------------------------------------------------
# matrices


class FqMatrix:
    """Square matrix over a finite field, entries stored as encodings."""

    __slots__ = ("F", "a")

    def __init__(self, F: FiniteField, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        self.F = F
        self.a = a

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @classmethod
    def identity(cls, F, n):
        return cls(F, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, F, n, s):
        return cls(F, np.eye(n, dtype=np.int64) * s)

    @classmethod
    def diag(cls, F, ds):
        n = len(ds)
        a = np.zeros((n, n), dtype=np.int64)
        for i, d in enumerate(ds):
            a[i, i] = d
        return cls(F, a)

    def rows(self):
        return [list(map(int, r)) for r in self.a]

    def __matmul__(self, o: "FqMatrix") -> "FqMatrix":
        F = self.F
        n = self.n
        A, B = self.rows(), o.rows()
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            Ai = A[i]
            for k in range(n):
                x = Ai[k]
                if x:
                    Bk = B[k]
                    row = out[i]
                    for j in range(n):
                        if Bk[j]:
                            row[j] = F.add(row[j], F.mul(x, Bk[j]))
        return FqMatrix(F, out)

    def __add__(self, o):
        F = self.F
        A, B = self.rows(), o.rows()
        return FqMatrix(F, [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)])

    def __sub__(self, o):
        F = self.F
        A, B = self.rows(), o.rows()
        return FqMatrix(F, [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)])

    def scale(self, s: int) -> "FqMatrix":
        F = self.F
        return FqMatrix(F, [[F.mul(x, s) for x in r] for r in self.rows()])

    def map(self, fn) -> "FqMatrix":
        return FqMatrix(self.F, [[fn(x) for x in r] for r in self.rows()])

    def transpose(self):
        return FqMatrix(self.F, self.a.T.copy())

    def __eq__(self, o):
        return isinstance(o, FqMatrix) and o.F is self.F and np.array_equal(self.a, o.a)

    def __hash__(self):
        return hash(self.a.tobytes())

    def key(self) -> bytes:
        return self.a.tobytes()

    def __repr__(self):
        return f"FqMatrix({self.F}, {self.rows()})"

    def embed(self, K: FiniteField) -> "FqMatrix":
        if K is self.F:
            return self
        return FqMatrix(K, [[embed_int(x, self.F, K) for x in r] for r in self.rows()])

    def rank(self) -> int:
        return _rank(self.F, self.rows())

    def det(self) -> int:
        F = self.F
        m = self.rows()
        n = len(m)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.neg(d)
            d = F.mul(d, m[c][c])
            inv = F.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    f = F.mul(m[r][c], inv)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return d

    def inverse(self) -> "FqMatrix":
        F = self.F
        n = self.n
        m = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows())]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            inv = F.inv(m[c][c])
            m[c] = [F.mul(x, inv) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return FqMatrix(F, [r[n:] for r in m])

    def kron(self, o: "FqMatrix") -> "FqMatrix":
        F = self.F
        n, m = self.n, o.n
        A, B = self.rows(), o.rows()
        out = [[0] * (n * m) for _ in range(n * m)]
        for i in range(n):
            for j in range(n):
                x = A[i][j]
                if x:
                    for k in range(m):
                        for l in range(m):
                            out[i * m + k][j * m + l] = F.mul(x, B[k][l])
        return FqMatrix(F, out)


def _rank(F: FiniteField, m: list[list[int]]) -> int:
    m = [r[:] for r in m]
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        for i in range(r + 1, rows):
            if m[i][c]:
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def block_diag(F: FiniteField, blocks) -> FqMatrix:
    n = sum(b.n for b in blocks)
    a = np.zeros((n, n), dtype=np.int64)
    o = 0
    for b in blocks:
        a[o:o + b.n, o:o + b.n] = b.a
        o += b.n
    return FqMatrix(F, a)


def companion(f: Poly) -> FqMatrix:
    """Companion matrix of a monic polynomial (last column holds -coefficients)."""
    F = f.F
    f = f.monic()
    n = f.degree
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        a[i, i - 1] = 1
    for i in range(n):
        a[i, n - 1] = F.neg(f.c[i])
    return FqMatrix(F, a)


def char_poly(M: FqMatrix) -> Poly:
    """det(t - M) via reduction to upper Hessenberg form."""
    F = M.F
    n = M.n
    H = M.rows()
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            u = F.mul(H[i][j], inv)
            if u:
                H[i] = [F.sub(x, F.mul(u, y)) for x, y in zip(H[i], H[j + 1])]
                for r in H:
                    r[j + 1] = F.add(r[j + 1], F.mul(u, r[i]))
    t = Poly(F, [0, 1])
    ps = [Poly(F, [1])]
    for m in range(1, n + 1):
        pm = (t - Poly(F, [H[m - 1][m - 1]])) * ps[m - 1]
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            coef = F.mul(H[i - 1][m - 1], prod)
            if coef:
                pm = pm - ps[i - 1].scale(coef)
        ps.append(pm)
    return ps[n]


def eigenspace_dim(M: FqMatrix, lam: FieldElement | int, K: FiniteField | None = None) -> int:
    """dim ker(M - lam) computed over the field containing lam."""
    if isinstance(lam, FieldElement):
        K = lam.F
        lv = lam.v
    else:
        K = K or M.F
        lv = lam
    A = M.embed(K).rows()
    for i in range(len(A)):
        A[i][i] = K.sub(A[i][i], lv)
    return len(A) - _rank(K, A)


def splitting_degree(f: Poly, max_ext: int = 24) -> int:
    d = 1
    for g, _ in factor_squarefree_split(f, max_ext):
        d = d * g.degree // gcd(d, g.degree)
    return d


def eigenvalues(M: FqMatrix, max_ext: int = 12) -> tuple[FiniteField, dict[int, int]]:
    """Eigenvalues in the splitting field of the char poly with algebraic multiplicities."""
    F = M.F
    f = char_poly(M)
    facs = factor_squarefree_split(f, max_ext)
    d = 1
    for g, _ in facs:
        d = d * g.degree // gcd(d, g.degree)
    K = make_field(F.p, F.k * d)
    out: dict[int, int] = {}
    for g, mult in facs:
        if g.degree == 1:
            out[embed_int(F.neg(g.c[0]), F, K)] = mult
            continue
        # roots of an irreducible of degree e lie in the subfield of degree e
        E = make_field(F.p, F.k * g.degree)
        for z in _roots_in(g, E):
            out[embed_int(z, E, K)] = mult
    return K, out


# ---------------------------------------------------------------------------
# classical group orders


def _prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


FAMILIES = ("GL", "SL", "PSL", "GU", "SU", "PSU", "Sp", "PSp", "SO+", "SO-", "SOodd",
            "O+", "O-", "Oodd", "Omega+", "Omega-", "Omegaodd", "A", "S")


def group_order(family: str, n: int, q: int = 0) -> int:
    """Exact order of a classical group with natural module of dimension n over F_q.

    For the alternating and symmetric families ("A", "S") n is the degree and
    q is ignored.  In characteristic 2 the orthogonal families follow the
    convention SO = O (determinant is always 1) and Omega = index-2 subgroup.
    """
    if family == "S":
        return _prod(range(1, n + 1))
    if family == "A":
        return _prod(range(1, n + 1)) // (2 if n >= 2 else 1)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family}")
    p, _ = prime_power(q)
    if n < 1:
        raise ValueError("dimension must be positive")
    odd = p != 2
    if family in ("GL", "SL", "PSL"):
        o = q ** (n * (n - 1) // 2) * _prod(q ** i - 1 for i in range(1, n + 1))
        if family == "GL":
            return o
        o //= q - 1
        return o if family == "SL" else o // gcd(n, q - 1)
    if family in ("GU", "SU", "PSU"):
        o = q ** (n * (n - 1) // 2) * _prod(q ** i - (-1) ** i for i in range(1, n + 1))
        if family == "GU":
            return o
        o //= q + 1
        return o if family == "SU" else o // gcd(n, q + 1)
    if family in ("Sp", "PSp"):
        if n % 2:
            raise ValueError("symplectic groups need even dimension")
        m = n // 2
        o = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return o if family == "Sp" else o // gcd(2, q - 1)
    if family in ("SOodd", "Oodd", "Omegaodd"):
        if n % 2 == 0:
            raise ValueError("odd orthogonal family needs odd dimension")
        m = (n - 1) // 2
        so = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        if not odd:
            return so
        return {"SOodd": so, "Oodd": 2 * so, "Omegaodd": so // 2 if m >= 1 else so}[family]
    # even-dimensional orthogonal
    if n % 2:
        raise ValueError("plus/minus orthogonal families need even dimension")
    m = n // 2
    sign = 1 if family.endswith("+") else -1
    o_full = 2 * q ** (m * (m - 1)) * (q ** m - sign) * _prod(q ** (2 * i) - 1 for i in range(1, m))
    base = family[:-1]
    if odd:
        return {"O": o_full, "SO": o_full // 2, "Omega": o_full // 4}[base]
    return {"O": o_full, "SO": o_full, "Omega": o_full // 2}[base]


def p_prime_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n

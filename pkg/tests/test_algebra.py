import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from classical_chars import algebra
from classical_chars.algebra import FqMatrix, Poly, make_field


def trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@pytest.mark.parametrize("n", range(0, 200))
def test_is_prime_matches_trial_division(n):
    assert algebra.is_prime(n) == trial_prime(n)


@pytest.mark.parametrize("q,pk", [(2, (2, 1)), (9, (3, 2)), (16, (2, 4)), (125, (5, 3))])
def test_prime_power(q, pk):
    assert algebra.prime_power(q) == pk


@pytest.mark.parametrize("q", [1, 6, 12, 0])
def test_prime_power_rejects(q):
    with pytest.raises(ValueError):
        algebra.prime_power(q)


FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 2), (7, 1)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    els = list(F.elements())
    assert len(els) == p ** k
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    rng = random.Random(p * 10 + k)
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_cyclic(p, k):
    F = make_field(p, k)
    g = F.primitive_element()
    assert F.order(g) == F.q - 1
    assert len({F.pow(g, i) for i in range(F.q - 1)}) == F.q - 1


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3)])
def test_frobenius_fixes_prime_field(p, k):
    F = make_field(p, k)
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert len(fixed) == p
    for a in F.elements():
        assert F.frobenius(a) == F.pow(a, p)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (3, 2)])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_roots_of_unity(p, k, n):
    F = make_field(p, k)
    rs = F.roots_of_unity(n)
    brute = [a for a in F.elements() if a and F.pow(a, n) == 1]
    assert sorted(rs) == sorted(brute)


def test_embedding_is_ring_homomorphism():
    F, K = make_field(2, 2), make_field(2, 4)
    img = {a: algebra.embed_int(a, F, K) for a in F.elements()}
    assert len(set(img.values())) == 4
    for a, b in itertools.product(F.elements(), repeat=2):
        assert img[F.mul(a, b)] == K.mul(img[a], img[b])
        assert img[F.add(a, b)] == K.add(img[a], img[b])


def _int_poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_poly_mul_matches_integer_convolution(a, b):
    F = make_field(5, 1)
    got = (Poly(F, a) * Poly(F, b))
    want = _int_poly_mul_mod_p(a, b, 5)
    if all(c == 0 for c in want):
        assert got.is_zero()
    else:
        assert list(got.c) == want


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=7),
       st.lists(st.integers(0, 2), min_size=2, max_size=4).filter(lambda d: d[-1] != 0))
def test_poly_divmod_reconstructs(a, d):
    F = make_field(3, 1)
    A, D = Poly(F, a), Poly(F, d)
    Q, R = A.divmod(D)
    assert Q * D + R == A
    assert R.is_zero() or R.degree < D.degree


def _irreducible_brute(coeffs, p):
    # monic, degree <= 4: irreducible iff no monic factor of degree <= deg/2
    n = len(coeffs) - 1
    f = Poly(make_field(p, 1), coeffs)
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = Poly(make_field(p, 1), list(tail) + [1])
            if (f % g).is_zero():
                return False
    return True


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_irreducibility_matches_trial_division(p, n):
    F = make_field(p, 1)
    count = 0
    for tail in itertools.product(range(p), repeat=n):
        coeffs = list(tail) + [1]
        got = algebra.is_irreducible(Poly(F, coeffs))
        assert got == _irreducible_brute(coeffs, p)
        count += got
    # Gauss: number of monic irreducibles of degree n
    from sympy import mobius, divisors
    assert count == sum(mobius(n // d) * p ** d for d in divisors(n)) // n


def test_squarefree_decomposition_multiplicities():
    F = make_field(3, 1)
    x1 = Poly(F, [1, 1])
    f = x1 * x1 * x1 * Poly(F, [1, 0, 1])
    parts = algebra.squarefree_decomposition(f)
    prod = Poly(F, [1])
    for g, e in parts:
        for _ in range(e):
            prod = prod * g
    assert prod == f.monic()


def _brute_det(F, rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        t = 1
        for i in range(n):
            t = F.mul(t, rows[i][perm[i]])
        total = F.add(total, t) if sign == 1 else F.sub(total, t)
    return total


@pytest.mark.parametrize("p,k", [(3, 1), (2, 2), (5, 1)])
def test_matrix_det_inverse_against_permutation_expansion(p, k):
    F = make_field(p, k)
    rng = random.Random(7)
    for _ in range(30):
        rows = [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)]
        M = FqMatrix(F, rows)
        d = M.det()
        assert d == _brute_det(F, rows)
        if d:
            assert M @ M.inverse() == FqMatrix.identity(F, 3)


def test_char_poly_cayley_hamilton_and_companion():
    F = make_field(3, 1)
    f = Poly(F, [1, 2, 0, 1])
    C = algebra.companion(f)
    assert algebra.char_poly(C) == f
    rng = random.Random(3)
    for _ in range(10):
        M = FqMatrix(F, [[rng.randrange(3) for _ in range(3)] for _ in range(3)])
        cp = algebra.char_poly(M)
        acc = FqMatrix.scalar(F, 3, 0)
        P = FqMatrix.identity(F, 3)
        for c in cp.c:
            acc = acc + P.scale(c)
            P = P @ M
        assert acc == FqMatrix.scalar(F, 3, 0)


def _count_gl(n, q):
    F = algebra.field_of_order(q)
    cnt = 0
    for entries in itertools.product(range(q), repeat=n * n):
        M = FqMatrix(F, [list(entries[i * n:(i + 1) * n]) for i in range(n)])
        cnt += M.det() != 0
    return cnt


@pytest.mark.parametrize("n,q", [(1, 5), (2, 2), (2, 3), (2, 4)])
def test_gl_order_by_matrix_count(n, q):
    assert algebra.group_order("GL", n, q) == _count_gl(n, q)


@pytest.mark.parametrize("fam,n,q,order", [
    ("SL", 2, 3, 24), ("PSL", 2, 7, 168), ("SU", 3, 2, 216), ("GU", 3, 2, 648),
    ("Sp", 4, 3, 51840), ("PSp", 4, 3, 25920), ("PSU", 4, 2, 25920), ("SU", 4, 2, 25920),
    ("A", 6, 0, 360), ("S", 5, 0, 120), ("GU", 2, 2, 18), ("SOodd", 3, 3, 24),
])
def test_group_order_known_values(fam, n, q, order):
    assert algebra.group_order(fam, n, q) == order


def test_gu_order_bounds_sample():
    for N in range(1, 8):
        for q in (2, 3, 4):
            o = algebra.group_order("GU", N, q)
            assert q ** (N * N) < o
            assert o ** 5 < q ** (5 * N * N + 3)


def test_eigenvalues_of_diagonal_matrix_over_extension():
    F = make_field(2, 1)
    # x^2 + x + 1 companion has eigenvalues in F_4
    C = algebra.companion(Poly(F, [1, 1, 1]))
    K, ev = algebra.eigenvalues(C)
    assert K.q == 4
    assert sum(ev.values()) == 2 and len(ev) == 2


def test_make_field_single_instance():
    assert make_field(5) is make_field(5, 1) is algebra.field_of_order(5)
    assert make_field(5)(2) == make_field(5, 1)(2)

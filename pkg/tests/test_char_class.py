import pytest
from hypothesis import given, settings, strategies as st

from jordan_osserman.char_class import (
    Obstruction,
    TruncatedZ2Poly,
    brute_force_obstruction,
    invert_total_class,
    factorization_obstruction,
    obstruction_table,
    poly_mul,
    top_class_of_gamma_perp_sub,
    total_class,
)


def P(coeffs, q):
    return TruncatedZ2Poly.from_coeffs(coeffs, q)


def schoolbook(a, b):
    """Coefficient convolution mod 2, truncated: an oracle independent of the bit tricks."""
    ca, cb = a.coeffs, b.coeffs
    out = [0] * a.q
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            if i + j < a.q:
                out[i + j] ^= x & y
    return TruncatedZ2Poly.from_coeffs(out, a.q)


ring = st.integers(1, 64).flatmap(
    lambda q: st.tuples(st.just(q), st.lists(st.integers(0, 2**q - 1), min_size=3, max_size=3)))


class TestMul:
    def test_square_of_one_plus_w(self):
        assert P([1, 1], 4) * P([1, 1], 4) == P([1, 0, 1], 4)

    def test_identity(self):
        a = P([0, 1, 1, 0, 1], 5)
        assert a * TruncatedZ2Poly.one(5) == a

    def test_truncation(self):
        assert (TruncatedZ2Poly.monomial(2, 3) * TruncatedZ2Poly.monomial(1, 3)).bits == 0

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            poly_mul(TruncatedZ2Poly.one(3), TruncatedZ2Poly.one(4))

    def test_bits_only(self):
        with pytest.raises(ValueError):
            P([1, 2], 3)

    def test_str(self):
        assert str(P([1, 1, 0, 1], 4)) == "1 + w + w^3"
        assert str(TruncatedZ2Poly(0, 3)) == "0"

    @settings(max_examples=200)
    @given(ring)
    def test_ring_laws(self, data):
        q, (x, y, z) = data
        a, b, c = (TruncatedZ2Poly(v, q) for v in (x, y, z))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * TruncatedZ2Poly.one(q) == a
        assert a * b == schoolbook(a, b)


class TestInvert:
    def test_geometric_series(self):
        assert invert_total_class(P([1, 1], 5)) == P([1, 1, 1, 1, 1], 5)

    def test_one(self):
        assert invert_total_class(TruncatedZ2Poly.one(6)) == TruncatedZ2Poly.one(6)

    def test_period_three(self):
        a = P([1, 1, 1], 8)
        inv = invert_total_class(a)
        assert inv == P([1, 1, 0, 1, 1, 0, 1, 1], 8)
        assert a * inv == TruncatedZ2Poly.one(8)

    def test_not_a_unit(self):
        with pytest.raises(ValueError, match="not a unit"):
            invert_total_class(P([0, 1], 3))

    def test_recursion_oracle(self):
        # The textbook recursion b_k = sum_{i=1..k} a_i b_{k-i}, written out directly.
        a = P([1, 0, 1, 1, 0, 1, 1, 1, 0, 1], 10)
        b = [1]
        for k in range(1, 10):
            b.append(sum(a.coeffs[i] * b[k - i] for i in range(1, k + 1)) % 2)
        assert invert_total_class(a).coeffs == tuple(b)

    @settings(max_examples=300)
    @given(st.integers(1, 64).flatmap(lambda q: st.tuples(st.just(q), st.integers(0, 2**q - 1))))
    def test_inverse_property(self, data):
        q, bits = data
        a = TruncatedZ2Poly(bits | 1, q)
        assert a * invert_total_class(a) == TruncatedZ2Poly.one(q)

    def test_all_units_small_q(self):
        for q in range(1, 9):
            for bits in range(1, 2**q, 2):
                a = TruncatedZ2Poly(bits, q)
                assert a * invert_total_class(a) == TruncatedZ2Poly.one(q)


class TestTopClass:
    def test_examples(self):
        assert top_class_of_gamma_perp_sub(1, 4) == P([0, 1], 4)
        assert top_class_of_gamma_perp_sub(3, 5) == TruncatedZ2Poly.monomial(3, 5)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            top_class_of_gamma_perp_sub(4, 4)

    def test_total_class_shape(self):
        assert total_class(3, 6) == P([1, 1, 1, 1], 6)
        assert total_class(3, 6, middle=0) == P([1, 0, 0, 1], 6)


class TestObstruction:
    @pytest.mark.parametrize("p, q, r", [(2, 3, 1), (5, 8, 2), (1, 2, 1)])
    def test_examples(self, p, q, r):
        assert factorization_obstruction(p, q, r) is Obstruction.IMPOSSIBLE
        assert brute_force_obstruction(p, q, r) is Obstruction.IMPOSSIBLE

    @pytest.mark.parametrize("p, q, r", [(3, 2, 1), (2, 3, 0), (2, 3, 3), (0, 1, 1)])
    def test_out_of_range(self, p, q, r):
        with pytest.raises(ValueError):
            factorization_obstruction(p, q, r)

    def test_every_middle_pattern_small(self):
        """The argument never uses the middle classes: any 1 + ... + w^r is obstructed."""
        for q in range(2, 9):
            for p in range(1, q):
                for r in range(1, p + 1):
                    for middle in range(0, 1 << r, 2):
                        assert factorization_obstruction(p, q, r, middle) is Obstruction.IMPOSSIBLE
                        assert brute_force_obstruction(p, q, r, middle) is Obstruction.IMPOSSIBLE

    def test_table_pinning(self):
        rows = obstruction_table(6, q=5)
        assert {row[1] for row in rows} == {5}
        assert len(rows) == sum(range(1, 5))
        assert all(v is Obstruction.IMPOSSIBLE for *_, v in rows)

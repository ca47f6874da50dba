import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidsep import matrix as mx
from braidsep.exceptions import DimensionError, SingularMatrixError


def B_block(a, f):
    return np.array([[a - 2, -a + 2, -a + 2],
                     [2 * a - 1, -2 * a + 1, 2 * a - 1],
                     [-f, -f, f]], dtype=complex)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


I3, I6 = mx.identity(3), mx.identity(6)


class TestProduct:
    def test_single(self):
        assert np.array_equal(mx.product([I6]), I6)

    def test_with_inverse(self):
        m = random_complex(np.random.default_rng(0), 6)
        assert mx.max_abs_diff(mx.product([m, mx.inverse(m)]), I6) < 1e-12

    def test_scalars(self):
        assert np.array_equal(mx.product([2 * I3, 3 * I3]), 6 * I3)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mx.product([I3, I6])

    def test_empty(self):
        with pytest.raises(ValueError):
            mx.product([])


class TestInverse:
    def test_identity(self):
        assert np.array_equal(mx.inverse(I6), I6)

    def test_diagonal(self):
        inv = mx.inverse(np.diag([2, 4, 8]))
        assert mx.max_abs_diff(inv, np.diag([0.5, 0.25, 0.125])) == 0

    def test_b_block_residual(self):
        B = B_block(2 - 3j, 7.3)
        assert mx.max_abs_diff(B @ mx.inverse(B), I3) <= 1e-12

    def test_singular_reports_det_and_threshold(self):
        with pytest.raises(SingularMatrixError) as info:
            mx.inverse(B_block(2, 1.0))
        assert info.value.det_abs <= info.value.threshold
        assert "threshold" in str(info.value)

    def test_threshold_is_scale_aware(self):
        big = np.diag([1e8, 1e8, 1e8])
        assert mx.max_abs_diff(mx.inverse(big) * 1e8, I3) < 1e-12
        tiny = np.diag([1e-8, 1e-8, 1e-8])
        assert mx.max_abs_diff(mx.inverse(tiny) * 1e-8, I3) < 1e-12


class TestDeterminant:
    def test_identity(self):
        assert mx.determinant(I6) == pytest.approx(1)

    def test_b_block_closed_form(self):
        # 4 (a-2)(2a-1) f at a=3, f=2
        assert mx.determinant(B_block(3, 2)) == pytest.approx(40)

    def test_b_block_vanishes_at_two(self):
        assert abs(mx.determinant(B_block(2, 5.0))) < 1e-12


class TestTraceAndPower:
    def test_trace(self):
        assert mx.trace(I6) == 6
        assert mx.trace(np.diag([1 + 1j, 2, 3 - 1j])) == 6

    def test_power_zero(self):
        m = random_complex(np.random.default_rng(1), 6)
        assert np.array_equal(mx.power(m, 0), I6)

    def test_power_diag(self):
        assert np.array_equal(mx.power(np.diag([2.0]), 3), np.diag([8.0]))

    def test_negative_power_orders(self):
        m = random_complex(np.random.default_rng(2), 6)
        a = mx.power(m, -2)
        b = mx.inverse(m @ m)
        assert mx.max_abs_diff(a, b) <= 1e-10 * mx.max_entry(b)

    def test_negative_power_uses_given_inverse(self):
        m = np.diag([2.0, 4.0])
        assert np.array_equal(mx.power(m, -1, inv=np.diag([7.0, 7.0])), np.diag([7.0, 7.0]))

    def test_negative_power_singular(self):
        with pytest.raises(SingularMatrixError):
            mx.power(np.zeros((3, 3)), -1)


class TestBlocks:
    def test_identity(self):
        z = np.zeros((3, 3))
        assert np.array_equal(mx.block_compose(I3, z, z, I3), I6)

    def test_minus_sign_negates_off_diagonal(self):
        rng = np.random.default_rng(3)
        A, B, C, D = (random_complex(rng, 3) for _ in range(4))
        plus = mx.block_compose(A, B, C, D, +1)
        minus = mx.block_compose(A, B, C, D, -1)
        pa, pb, pc, pd = mx.split_blocks(plus)
        ma, mb, mc, md = mx.split_blocks(minus)
        assert np.array_equal(pa, ma) and np.array_equal(pd, md)
        assert np.array_equal(mb, -pb) and np.array_equal(mc, -pc)

    def test_roundtrip(self):
        rng = np.random.default_rng(4)
        blocks = [random_complex(rng, 3) for _ in range(4)]
        for got, want in zip(mx.split_blocks(mx.block_compose(*blocks)), blocks):
            assert np.array_equal(got, want)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            mx.block_compose(I3, I3, I3, I3, 2)


class TestMaxAbsDiff:
    def test_zero(self):
        m = random_complex(np.random.default_rng(5), 6)
        assert mx.max_abs_diff(m, m) == 0

    def test_identity_vs_double(self):
        assert mx.max_abs_diff(I6, 2 * I6) == 1

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            mx.max_abs_diff(I3, I6)


class TestJson:
    def test_roundtrip(self):
        m = random_complex(np.random.default_rng(6), 6)
        obj = mx.to_json(m)
        assert obj["rows"] == obj["cols"] == 6
        assert len(obj["entries"]) == 36
        assert np.array_equal(mx.from_json(obj), m)

    def test_row_major(self):
        obj = mx.to_json(np.array([[1, 2j], [3, 4]]))
        assert obj["entries"][1] == [0.0, 2.0]

    @pytest.mark.parametrize("obj", [
        {"rows": 2, "cols": 2, "entries": [[1, 0]]},
        {"rows": 1, "cols": 1, "entries": [[float("nan"), 0]]},
        {"rows": 1},
    ])
    def test_rejects_malformed(self, obj):
        with pytest.raises(ValueError):
            mx.from_json(obj)


six_by_six = st.integers(0, 2**32 - 1).map(
    lambda s: random_complex(np.random.default_rng(s), 6))


class TestProperties:
    @given(six_by_six, six_by_six)
    def test_trace_cyclic(self, X, Y):
        scale = mx.max_entry(X @ Y, Y @ X)
        assert abs(mx.trace(X @ Y) - mx.trace(Y @ X)) <= 1e-10 * scale

    @given(six_by_six, six_by_six)
    def test_det_multiplicative(self, X, Y):
        lhs = mx.determinant(X @ Y)
        rhs = mx.determinant(X) * mx.determinant(Y)
        assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs))

    @given(six_by_six)
    def test_inverse_residual(self, M):
        # well conditioned by shifting the spectrum
        M = M + 10 * I6
        res = mx.max_abs_diff(M @ mx.inverse(M), I6)
        cond = np.linalg.cond(M)
        assert res <= 1e-10 * cond

    @settings(max_examples=40)
    @given(six_by_six, st.integers(-8, 8), st.integers(-8, 8))
    def test_power_additive(self, M, a, b):
        M = M / np.abs(np.linalg.eigvals(M)).max() + 0.5 * I6
        lhs = mx.power(M, a + b)
        rhs = mx.power(M, a) @ mx.power(M, b)
        assert mx.max_abs_diff(lhs, rhs) <= 1e-9 * max(1.0, mx.max_entry(lhs, rhs))

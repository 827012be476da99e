import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from quasistable.errors import ParseError
from quasistable.lp import (
    export_mps,
    lp_from_json,
    lp_to_json,
    read_mps,
    solve_lp,
)
from quasistable.reduce import LinearProgram


def small_lp():
    # maximize 3x + 2y s.t. x + y <= 4, x <= 2
    return LinearProgram.from_dense([[1.0, 1.0], [1.0, 0.0]], [4.0, 2.0], [3.0, 2.0])


class TestSolveLp:
    def test_small_optimum(self):
        sol = solve_lp(small_lp())
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(10.0)  # x=2, y=2
        assert sol.x == pytest.approx([2.0, 2.0])

    def test_unbounded(self):
        lp = LinearProgram.from_dense([[-1.0]], [1.0], [1.0])
        sol = solve_lp(lp)
        assert sol.status == "unbounded"
        assert sol.objective == np.inf

    def test_infeasible(self):
        lp = LinearProgram.from_dense([[1.0], [-1.0]], [1.0, -3.0], [1.0])
        sol = solve_lp(lp)
        assert sol.status == "infeasible"
        assert sol.objective == -np.inf

    def test_zero_objective(self):
        lp = LinearProgram.from_dense([[1.0]], [5.0], [0.0])
        sol = solve_lp(lp)
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(0.0)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(0, 10_000))
    def test_matches_direct_scipy_call(self, seed):
        rng = np.random.default_rng(seed)
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        A = rng.integers(0, 8, size=(m, n)).astype(float)
        b = rng.integers(1, 25, size=m).astype(float)
        c = rng.integers(0, 8, size=n).astype(float)
        sol = solve_lp(LinearProgram.from_dense(A, b, c))
        status, value = oracles.lp_optimum(A, b, c)
        assert sol.status == status
        if status == "optimal":
            assert sol.objective == pytest.approx(value, abs=1e-7)


class TestJsonRoundTrip:
    def test_round_trip(self):
        lp = small_lp()
        lp2 = lp_from_json(lp_to_json(lp))
        assert lp.equal_within(lp2)

    def test_sparse_entries_preserved(self):
        lp = LinearProgram(2, 3, [0, 1], [2, 0], [5.0, -1.5], [1.0, 2.0], [0.0, 0.0, 1.0])
        lp2 = lp_from_json(lp_to_json(lp))
        assert lp.equal_within(lp2)


class TestMps:
    def test_export_then_read_round_trip(self, tmp_path):
        lp = small_lp()
        path = tmp_path / "ex.mps"
        export_mps(lp, path)
        lp2 = read_mps(path)
        assert lp.equal_within(lp2, tol=1e-12)
        assert solve_lp(lp2).objective == pytest.approx(10.0)

    def test_round_trip_with_empty_column(self, tmp_path):
        lp = LinearProgram.from_dense([[1.0, 0.0]], [3.0], [2.0, 0.0])
        path = tmp_path / "col.mps"
        export_mps(lp, path)
        lp2 = read_mps(path)
        assert lp2.n == 2 and lp2.m == 1

    def test_min_objective_flipped_to_max(self, tmp_path):
        text = (
            "NAME T\nROWS\n N OBJ\n L R1\nCOLUMNS\n"
            "    X OBJ -3.0 R1 1.0\nRHS\n    RHS R1 4.0\nENDATA\n"
        )
        path = tmp_path / "min.mps"
        path.write_text(text)
        lp = read_mps(path)
        # plain MPS is a minimization by convention; we store max form
        assert lp.meta.get("converted_from_min")
        assert solve_lp(lp).objective == pytest.approx(12.0)

    def test_greater_rows_negated(self, tmp_path):
        text = (
            "NAME T\nOBJSENSE\n    MAX\nROWS\n N OBJ\n G R1\n L R2\nCOLUMNS\n"
            "    X OBJ 1.0 R1 1.0\n    X R2 1.0\nRHS\n    RHS R1 1.0 R2 5.0\nENDATA\n"
        )
        path = tmp_path / "ge.mps"
        path.write_text(text)
        lp = read_mps(path)
        sol = solve_lp(lp)
        assert sol.objective == pytest.approx(5.0)

    def test_ranges_section_rejected(self, tmp_path):
        text = "NAME T\nROWS\n N OBJ\nRANGES\nENDATA\n"
        path = tmp_path / "bad.mps"
        path.write_text(text)
        with pytest.raises(ParseError):
            read_mps(path)

    def test_random_round_trips_preserve_data(self, tmp_path):
        rng = np.random.default_rng(77)
        for i in range(30):
            m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            A = rng.integers(0, 7, size=(m, n)).astype(float)
            b = rng.integers(1, 20, size=m).astype(float)
            c = rng.integers(0, 7, size=n).astype(float)
            lp = LinearProgram.from_dense(A, b, c)
            path = tmp_path / f"r{i}.mps"
            export_mps(lp, path)
            assert lp.equal_within(read_mps(path), tol=1e-12)

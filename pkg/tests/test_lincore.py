import math

import numpy as np
import pytest

from relucert.config.options import SolverConfig
from relucert.core.errors import InputError, SolverLimitError
from relucert.domain.lincore import (
    LinearSystem, add_equality, add_var, check_feasible, parse_dump, tighten,
)
from tests.oracles import feasible_exact


def random_system(rng, n_vars=6, n_rows=3, planted=True) -> LinearSystem:
    system = LinearSystem()
    point = rng.integers(-3, 4, n_vars)
    for v in range(n_vars):
        lo = int(rng.integers(-4, 1))
        hi = int(rng.integers(0, 5))
        if planted:
            lo, hi = min(lo, point[v]), max(hi, point[v])
        system.add_var(lo, hi)
    for _ in range(n_rows):
        coeffs = {v: float(c) for v, c in enumerate(rng.integers(-3, 4, n_vars))}
        rhs = float(sum(coeffs[v] * point[v] for v in coeffs)) if planted else float(rng.integers(-6, 7))
        system.add_equality(coeffs, rhs)
    return system


class TestConstruction:
    def test_add_var_returns_sequential_ids(self):
        system = LinearSystem()
        assert add_var(system, 0.0, 1.0) == 0
        assert add_var(system, -math.inf, math.inf) == 1
        assert system.var_count == 2

    def test_inverted_bounds(self):
        with pytest.raises(InputError):
            LinearSystem().add_var(2.0, 1.0)

    def test_unknown_variable_in_equality(self):
        system = LinearSystem()
        system.add_var(0.0, 1.0)
        with pytest.raises(InputError):
            add_equality(system, {3: 1.0}, 0.0)

    def test_inequality_uses_bounded_slack(self):
        system = LinearSystem()
        x = system.add_var(0.0, 10.0)
        slack = system.add_inequality({x: 1.0}, lo=2.0, hi=3.0)
        assert (system.lower[slack], system.upper[slack]) == (2.0, 3.0)
        result = check_feasible(system)
        assert result.feasible
        assert 2.0 - 1e-7 <= result.assignment[x] <= 3.0 + 1e-7

    def test_clone_is_independent(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        copy = system.clone()
        copy.restrict(x, lo=0.5)
        copy.add_equality({x: 1.0}, 0.75)
        assert system.lower[x] == 0.0
        assert not system.equalities

    def test_dump_round_trip(self):
        system = LinearSystem()
        x = system.add_var(-1.0, 1.0)
        y = system.add_var(0.0, math.inf)
        system.add_equality({x: 1.0, y: -2.0}, 0.5)
        restored = parse_dump(system.dump())
        assert restored.dump() == system.dump()


class TestCheckFeasible:
    def test_single_equality(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        y = system.add_var(0.0, 1.0)
        system.add_equality({x: 1.0, y: 1.0}, 1.5)
        result = check_feasible(system)
        assert result.feasible
        assert abs(result.assignment[x] + result.assignment[y] - 1.5) <= 1e-7

    def test_infeasible_sum(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        y = system.add_var(0.0, 1.0)
        system.add_equality({x: 1.0, y: 1.0}, 3.0)
        assert not check_feasible(system).feasible

    def test_no_equalities(self):
        system = LinearSystem()
        system.add_var(-2.0, -1.0)
        result = check_feasible(system)
        assert result.feasible
        assert -2.0 <= result.assignment[0] <= -1.0

    def test_crossed_bounds(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        system.restrict(x, lo=2.0)
        assert not check_feasible(system).feasible

    def test_unbounded_variables(self):
        system = LinearSystem()
        x = system.add_var()
        y = system.add_var()
        system.add_equality({x: 1.0, y: -1.0}, 4.0)
        result = check_feasible(system)
        assert result.feasible
        assert abs(result.assignment[x] - result.assignment[y] - 4.0) <= 1e-7

    def test_witness_respects_tolerances(self, rng):
        for _ in range(20):
            system = random_system(rng, planted=True)
            result = check_feasible(system)
            assert result.feasible
            assert system.satisfies(result.assignment, 1e-7, 1e-8)

    def test_matches_exact_oracle(self, rng):
        for _ in range(100):
            system = random_system(rng, planted=bool(rng.integers(0, 2)))
            assert check_feasible(system).feasible == feasible_exact(system)

    def test_pivot_limit(self):
        system = LinearSystem()
        xs = [system.add_var(0.0, 1.0) for _ in range(6)]
        for k in range(3):
            system.add_equality({v: float(i + k + 1) for i, v in enumerate(xs)}, 3.0 + k)
        with pytest.raises(SolverLimitError):
            check_feasible(system, SolverConfig(max_pivots=0))

    @pytest.mark.slow
    def test_matches_exact_oracle_larger(self, rng):
        for _ in range(300):
            system = random_system(rng, n_vars=7, n_rows=4, planted=bool(rng.integers(0, 2)))
            assert check_feasible(system).feasible == feasible_exact(system)


class TestTighten:
    def test_derives_bounds_from_row(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        y = system.add_var(-math.inf, math.inf)
        system.add_equality({x: 1.0, y: -1.0}, 0.0)
        result = tighten(system)
        assert not result.infeasible
        assert result.changed > 0
        assert system.lower[y] == pytest.approx(0.0, abs=1e-9)
        assert system.upper[y] == pytest.approx(1.0, abs=1e-9)

    def test_detects_infeasibility(self):
        system = LinearSystem()
        x = system.add_var(0.0, 1.0)
        y = system.add_var(0.0, 1.0)
        system.add_equality({x: 1.0, y: 1.0}, 3.0)
        assert tighten(system).infeasible

    def test_never_cuts_off_a_feasible_point(self, rng):
        for _ in range(50):
            system = random_system(rng, planted=True)
            before = system.clone()
            witness = check_feasible(before).assignment
            result = tighten(system)
            assert not result.infeasible
            lower, upper = system.bounds()
            assert np.all(witness >= lower - 1e-6)
            assert np.all(witness <= upper + 1e-6)

    @pytest.mark.parametrize("planted", [True, False])
    def test_preserves_feasibility(self, rng, planted):
        for _ in range(60):
            system = random_system(rng, n_vars=5, n_rows=3, planted=planted)
            expected = feasible_exact(system)
            result = tighten(system)
            if result.infeasible:
                assert not expected
            else:
                assert check_feasible(system).feasible == expected

    def test_empty_row_with_nonzero_rhs(self):
        system = LinearSystem()
        system.add_var(0.0, 1.0)
        system.add_equality({0: 0.0}, 1.0)
        assert tighten(system).infeasible

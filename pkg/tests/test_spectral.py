"""Symbols, measures, spectral integrals and admissibility checks."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stechkin import (
    ConfigError,
    SpectralMeasure,
    Symbol,
    check_admissibility,
    norm_phi_f,
    parse_symbol,
    spectral_integral,
)

INF = math.inf


class TestSymbol:
    def test_power_integer_keeps_sign(self):
        p = Symbol.power(1)
        assert p(-2.0) == -2.0
        assert Symbol.power(3)(-2.0) == -8.0

    def test_power_fractional_uses_modulus(self):
        p = Symbol.power(1.5)
        assert p(-4.0) == pytest.approx(8.0)

    def test_power_zero_is_one_everywhere(self):
        p = Symbol.power(0)
        assert p(0.0) == 1.0
        assert p(-7.0) == 1.0

    def test_power_rejects_negative_exponent(self):
        with pytest.raises(ConfigError):
            Symbol.power(-1.0)

    def test_zero_symbol(self):
        z = Symbol.zero()
        assert z(3.0) == 0.0
        assert z.is_zero

    def test_array_evaluation_is_float(self):
        p = Symbol.power(4)
        out = p(np.arange(1, 100000, 40000))
        assert out.dtype == np.float64
        assert out[-1] == pytest.approx(80001.0 ** 4, rel=1e-12)

    def test_table_lookup(self):
        s = Symbol.from_table({0: 1.0, 2: -0.5})
        assert s(0.0) == 1.0
        assert s(2.0) == -0.5
        assert s(1.0) == 0.0
        with pytest.raises(ValueError):
            s(0.5)

    def test_parse_descriptors(self):
        assert parse_symbol("pow:2.5").alpha == 2.5
        assert parse_symbol("zero").is_zero
        with pytest.raises(ConfigError):
            parse_symbol("nope:1")

    def test_parse_table_file(self, tmp_path):
        p = tmp_path / "sym.json"
        p.write_text(json.dumps({"0": 1.0, "2": [0.0, 1.0], "_growth": 0.0}))
        s = parse_symbol(f"table:{p}")
        assert s(0.0) == 1.0
        assert s(2.0) == 1j
        assert s(5.0) == 0.0
        assert s.growth_order == 0.0
        with pytest.raises(ConfigError):
            parse_symbol("table:/nonexistent.json")


class TestMeasures:
    def test_discrete_validation(self):
        with pytest.raises(ConfigError):
            SpectralMeasure.discrete([(1.0, 1.0), (1.0, 2.0)])
        with pytest.raises(ConfigError):
            SpectralMeasure.discrete([(1.0, -1.0)])

    def test_total_mass(self):
        assert SpectralMeasure.discrete([(1, 1), (2, 0.5)]).total_mass() == 1.5
        assert math.isinf(SpectralMeasure.lattice("Z", uniform=1.0).total_mass())
        assert SpectralMeasure.lattice("Z", weights={0: 1.0, 3: 2.0}).total_mass() == 3.0
        assert math.isinf(SpectralMeasure.density().total_mass())
        assert SpectralMeasure.density([(0, 2)], 1.0).total_mass() == pytest.approx(2.0)

    def test_json_roundtrip(self):
        for m in (
            SpectralMeasure.discrete([(1.0, 1.0), (2.0, 1.0)]),
            SpectralMeasure.lattice("Z", uniform=1.0),
            SpectralMeasure.lattice("Z+", weights={0: 1.0, 5: 0.25}),
            SpectralMeasure.density(),
        ):
            again = SpectralMeasure.from_json(json.loads(json.dumps(m.to_json())))
            assert again.variant == m.variant
            assert again.to_json() == m.to_json()

    def test_lattice_rejects_both_weight_forms(self):
        with pytest.raises(ConfigError):
            SpectralMeasure.lattice("Z", weights={0: 1.0}, uniform=1.0)


class TestSpectralIntegral:
    def test_single_atom(self):
        m = SpectralMeasure.discrete([(1.0, 1.0)])
        assert spectral_integral(m, lambda t: t * t) == 1.0

    def test_two_atoms(self):
        m = SpectralMeasure.discrete([(1.0, 1.0), (2.0, 1.0)])
        assert spectral_integral(m, lambda t: t * t) == 5.0

    def test_density_rational(self):
        m = SpectralMeasure.density()
        v = spectral_integral(m, lambda t: t * t / (1 + t ** 4) ** 2, growth=-6.0)
        assert v == pytest.approx(math.pi * math.sqrt(2) / 8, rel=1e-10)

    def test_divergence_flagged_infinite(self):
        m = SpectralMeasure.lattice("Z", uniform=1.0)
        assert math.isinf(norm_phi_f(m, Symbol.power(1)))

    def test_norm_phi_f_finite(self):
        m = SpectralMeasure.discrete([(1.0, 1.0), (2.0, 1.0)])
        assert norm_phi_f(m, Symbol.power(1)) == pytest.approx(math.sqrt(5.0))
        assert norm_phi_f(m, Symbol.zero()) == 0.0

    @settings(max_examples=40, deadline=None)
    @given(
        atoms=st.lists(
            st.tuples(st.floats(-5, 5), st.floats(0, 2)), min_size=1, max_size=8,
            unique_by=lambda a: a[0],
        ),
        c=st.floats(0.1, 3.0),
    )
    def test_monotone_in_weight(self, atoms, c):
        m = SpectralMeasure.discrete(atoms)
        w1 = lambda t: 1.0 / (1.0 + t * t)
        w2 = lambda t: (1.0 + c) / (1.0 + t * t)
        assert spectral_integral(m, w1) <= spectral_integral(m, w2) + 1e-15

    @settings(max_examples=40, deadline=None)
    @given(
        atoms1=st.lists(st.tuples(st.floats(0.1, 5), st.floats(0, 2)), min_size=1,
                        max_size=5, unique_by=lambda a: a[0]),
        atoms2=st.lists(st.tuples(st.floats(-5, -0.1), st.floats(0, 2)), min_size=1,
                        max_size=5, unique_by=lambda a: a[0]),
    )
    def test_additive_in_measure(self, atoms1, atoms2):
        w = lambda t: 1.0 + t * t
        m1 = SpectralMeasure.discrete(atoms1)
        m2 = SpectralMeasure.discrete(atoms2)
        m12 = SpectralMeasure.discrete(list(atoms1) + list(atoms2))
        lhs = spectral_integral(m12, w)
        rhs = spectral_integral(m1, w) + spectral_integral(m2, w)
        assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-13)


class TestAdmissibility:
    def test_power_pair_admissible(self):
        rep = check_admissibility(Symbol.power(1), Symbol.power(2), SpectralMeasure.density())
        assert rep.condition_holds is True
        assert rep.l2_condition_holds is True
        # sup_t |t|/(1+t^4)^(1/2) = (1/2)^(1/2) at |t| = 1
        assert rep.ess_sup_estimate == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_power_pair_inadmissible(self):
        rep = check_admissibility(Symbol.power(2), Symbol.power(1), SpectralMeasure.density())
        assert rep.condition_holds is False
        assert math.isinf(rep.ess_sup_estimate)

    def test_zero_numerator(self):
        rep = check_admissibility(Symbol.zero(), Symbol.power(2),
                                  SpectralMeasure.discrete([(1, 1)]))
        assert rep.condition_holds is True
        assert rep.ess_sup_estimate == 0.0

    def test_power_rule_matches_analytic(self):
        # alpha_phi <= alpha_psi is the boundedness rule for power pairs
        for a in (0.5, 1.0, 2.0, 3.0):
            for b in (0.5, 1.0, 2.0, 3.0):
                rep = check_admissibility(Symbol.power(a), Symbol.power(b),
                                          SpectralMeasure.density())
                assert rep.condition_holds is (a <= b)

    def test_custom_without_growth_is_undecidable(self):
        phi = Symbol.custom(lambda t: math.sin(t) * t)
        rep = check_admissibility(phi, Symbol.power(2), SpectralMeasure.density())
        assert rep.condition_holds is None
        assert "undecidable" in rep.notes

    def test_l2_fails_for_slow_decay(self):
        # ratio^2 ~ t^-1 is not integrable
        rep = check_admissibility(Symbol.power(1.5), Symbol.power(2.0),
                                  SpectralMeasure.density())
        assert rep.condition_holds is True
        assert rep.l2_condition_holds is False

    def test_discrete_measure_l2_not_applicable(self):
        rep = check_admissibility(Symbol.power(1), Symbol.power(2),
                                  SpectralMeasure.discrete([(1, 1)]))
        assert rep.l2_condition_holds is None

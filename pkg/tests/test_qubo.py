import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import qubo_models

from qubomap.errors import DimensionError, ModelError
from qubomap.qubo import (
    QuboBuilder,
    QuboModel,
    VariableRegistry,
    energy,
    format_label,
    ising_energy,
    max_quadratic_degree,
    parse_label,
    to_ising,
)


def test_energy_single_linear_term():
    assert energy(QuboModel(1, {0: -1}), [1]) == -1


def test_energy_coupling_and_offset():
    assert energy(QuboModel(2, {}, {(0, 1): 3}, 2), [1, 1]) == 5


def test_energy_length_mismatch():
    with pytest.raises(DimensionError):
        energy(QuboModel(2), [1])


def test_energy_rejects_non_binary_entries():
    with pytest.raises(DimensionError):
        energy(QuboModel(1, {0: 1}), [2])


def test_energy_is_exact_beyond_int64():
    big = 1 << 80
    assert energy(QuboModel(2, {0: big}, {(0, 1): big}), [1, 1]) == 2 * big


@pytest.mark.parametrize("quadratic", [{(1, 0): 1}, {(0, 0): 1}, {(0, 2): 1}])
def test_model_rejects_bad_quadratic_keys(quadratic):
    with pytest.raises(ModelError):
        QuboModel(2, {}, quadratic)


def test_model_rejects_fractional_coefficients():
    with pytest.raises(ModelError):
        QuboModel(1, {0: 0.5})


def test_zero_coefficients_are_dropped():
    assert QuboModel(2, {0: 0}, {(0, 1): 0}) == QuboModel(2)


def test_to_ising_linear():
    im = to_ising(QuboModel(1, {0: 2}))
    assert im.fields == {0: 1} and im.offset == 1
    assert ising_energy(im, [-1]) == 0


def test_to_ising_quadratic():
    im = to_ising(QuboModel(2, {}, {(0, 1): 4}))
    assert im.couplings == {(0, 1): 1}
    assert im.fields == {0: 1, 1: 1}
    assert im.offset == 1


def test_ising_energy_rejects_bad_spins():
    im = to_ising(QuboModel(1, {0: 1}))
    with pytest.raises(DimensionError):
        ising_energy(im, [0])


@given(qubo_models(max_vars=6))
def test_ising_round_trip_all_assignments(model):
    im = to_ising(model)
    for bits in itertools.product((0, 1), repeat=model.num_vars):
        spins = [2 * b - 1 for b in bits]
        assert ising_energy(im, spins) == Fraction(energy(model, bits))


@given(qubo_models())
def test_zero_assignment_gives_offset(model):
    assert energy(model, [0] * model.num_vars) == model.offset


def test_max_quadratic_degree():
    assert max_quadratic_degree(QuboModel(0)) == 0
    assert max_quadratic_degree(QuboModel(1, {0: 1})) == 1
    assert max_quadratic_degree(QuboModel(2, {}, {(0, 1): 1})) == 2


@given(st.lists(st.tuples(st.sampled_from("xyz"), st.integers(-3, 9), st.integers(0, 9)), unique=True))
def test_registry_is_bijective(labels):
    reg = VariableRegistry(labels)
    assert len(reg) == len(labels)
    for k, lab in enumerate(reg.labels):
        assert reg.index(lab) == k


def test_registry_rejects_duplicates():
    with pytest.raises(ModelError):
        VariableRegistry([("x", 0), ("x", 0)])


def test_registry_assignment_and_ones():
    reg = VariableRegistry([("x", 0), ("x", 1), ("y", 2, 3)])
    bits = reg.assignment([("y", 2, 3)])
    assert bits == (0, 0, 1)
    assert reg.ones(bits) == [("y", 2, 3)]
    with pytest.raises(KeyError):
        reg.assignment([("z", 0)])
    assert reg.assignment([("z", 0)], strict=False) == (0, 0, 0)


@given(st.tuples(st.sampled_from(["x", "yt", "z_a"]), *(st.integers(-5, 50),) * 2))
def test_label_text_round_trip(label):
    assert parse_label(format_label(label)) == label


def test_label_format():
    assert format_label(("x", 3, 1)) == "x[3,1]"
    assert parse_label("y[]") == ("y",)
    with pytest.raises(ValueError):
        parse_label("x[1,")


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(-4, 4), st.integers(1, 5), st.data())
def test_builder_square_expands_exactly(coefs, const, weight, data):
    reg = VariableRegistry([("x", i) for i in range(len(coefs))])
    b = QuboBuilder(reg)
    b.square("A", weight, [(("x", i), c) for i, c in enumerate(coefs)], const=const)
    model, parts = b.build()
    bits = data.draw(st.lists(st.integers(0, 1), min_size=len(coefs), max_size=len(coefs)))
    assert energy(model, bits) == weight * (const + sum(c * x for c, x in zip(coefs, bits))) ** 2
    assert max_quadratic_degree(model) <= 2


def test_builder_product_and_parts():
    reg = VariableRegistry([("x", 0), ("x", 1)])
    b = QuboBuilder(reg)
    b.product("B", 3, [(("x", 0), 1)], [(("x", 1), -1)], left_const=-1, right_const=1)
    b.linear("C", ("x", 0), 2)
    model, parts = b.build()
    for x0, x1 in itertools.product((0, 1), repeat=2):
        assert energy(parts["B"], [x0, x1]) == 3 * (x0 - 1) * (1 - x1)
        assert energy(model, [x0, x1]) == 3 * (x0 - 1) * (1 - x1) + 2 * x0


def test_builder_rejects_non_integral_result():
    b = QuboBuilder(VariableRegistry([("x", 0)]))
    b.linear("A", ("x", 0), Fraction(1, 2))
    with pytest.raises(ModelError):
        b.build()

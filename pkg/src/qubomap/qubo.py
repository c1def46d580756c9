"""QUBO and Ising models, exact energy evaluation and variable naming.

A QUBO model is the integer polynomial

    E(x) = offset + sum_i h_i x_i + sum_{i<j} J_ij x_i x_j,   x in {0,1}^n.

Coefficients are Python integers so every energy is exact. The Ising image
obtained from ``x = (s + 1) / 2`` carries :class:`fractions.Fraction`
coefficients since the substitution produces halves and quarters.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Integral

from .errors import DimensionError, ModelError

Label = tuple  # (name, *int indices), e.g. ("x", 3, 1)

_LABEL_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\[(-?\d+(?:,-?\d+)*)?\]$")


def format_label(label: Label) -> str:
    """Render ``("x", 3, 1)`` as ``"x[3,1]"``."""
    name, *idx = label
    return f"{name}[{','.join(str(int(i)) for i in idx)}]"


def parse_label(text: str) -> Label:
    m = _LABEL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed variable label {text!r}")
    name, body = m.groups()
    idx = tuple(int(t) for t in body.split(",")) if body else ()
    return (name, *idx)


@dataclass(frozen=True)
class VariableRegistry:
    """Bijection between structured labels and contiguous bit positions."""

    labels: tuple
    index_of: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(tuple(lab) for lab in self.labels)
        index = {}
        for k, lab in enumerate(labels):
            if lab in index:
                raise ModelError(f"duplicate variable label {format_label(lab)}")
            index[lab] = k
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index_of", index)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return tuple(label) in self.index_of

    def index(self, label: Label) -> int:
        try:
            return self.index_of[tuple(label)]
        except KeyError:
            raise KeyError(f"unknown variable {format_label(label)}") from None

    def value(self, bits: Sequence[int], label: Label) -> int:
        return int(bits[self.index(label)])

    def assignment(self, ones: Iterable[Label], *, strict: bool = True) -> tuple:
        """Bit tuple with exactly the given labels set to 1.

        With ``strict=False`` labels absent from the registry are ignored.
        """
        bits = [0] * len(self.labels)
        for lab in ones:
            lab = tuple(lab)
            if lab in self.index_of:
                bits[self.index_of[lab]] = 1
            elif strict:
                raise KeyError(f"unknown variable {format_label(lab)}")
        return tuple(bits)

    def ones(self, bits: Sequence[int]) -> list:
        """Labels whose bit is set, in registry order."""
        return [lab for lab, b in zip(self.labels, bits) if b]


def _check_int(value, what):
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise ModelError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class QuboModel:
    """Sparse degree-two pseudo-boolean objective with integer coefficients.

    Zero coefficients are dropped on construction so two models describing the
    same polynomial compare equal.
    """

    num_vars: int
    linear: Mapping = field(default_factory=dict)
    quadratic: Mapping = field(default_factory=dict)
    offset: int = 0

    def __post_init__(self):
        n = _check_int(self.num_vars, "num_vars")
        if n < 0:
            raise ModelError("num_vars must be nonnegative")
        lin = {}
        for i, c in self.linear.items():
            i = _check_int(i, "variable index")
            c = _check_int(c, "linear coefficient")
            if not 0 <= i < n:
                raise ModelError(f"linear index {i} out of range for {n} variables")
            if c:
                lin[i] = c
        quad = {}
        for key, c in self.quadratic.items():
            i, j = (_check_int(t, "variable index") for t in key)
            c = _check_int(c, "quadratic coefficient")
            if not i < j:
                raise ModelError(f"quadratic key ({i},{j}) must satisfy i < j")
            if j >= n or i < 0:
                raise ModelError(f"quadratic index ({i},{j}) out of range for {n} variables")
            if c:
                quad[(i, j)] = c
        object.__setattr__(self, "num_vars", n)
        object.__setattr__(self, "linear", dict(sorted(lin.items())))
        object.__setattr__(self, "quadratic", dict(sorted(quad.items())))
        object.__setattr__(self, "offset", _check_int(self.offset, "offset"))

    @cached_property
    def neighbours(self) -> tuple:
        """Per-variable list of ``(other, J)`` couplings."""
        adj = [[] for _ in range(self.num_vars)]
        for (i, j), c in self.quadratic.items():
            adj[i].append((j, c))
            adj[j].append((i, c))
        return tuple(tuple(a) for a in adj)

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in (*self.linear.values(), *self.quadratic.values())), default=0)

    def __add__(self, other: QuboModel) -> QuboModel:
        if other.num_vars != self.num_vars:
            raise DimensionError("cannot add models of different sizes")
        lin = dict(self.linear)
        for i, c in other.linear.items():
            lin[i] = lin.get(i, 0) + c
        quad = dict(self.quadratic)
        for k, c in other.quadratic.items():
            quad[k] = quad.get(k, 0) + c
        return QuboModel(self.num_vars, lin, quad, self.offset + other.offset)


def energy(model: QuboModel, bits: Sequence[int]) -> int:
    """Exact energy of ``model`` at a 0/1 assignment."""
    if len(bits) != model.num_vars:
        raise DimensionError(f"assignment has {len(bits)} bits, model has {model.num_vars} variables")
    x = [int(b) for b in bits]
    if any(b not in (0, 1) for b in x):
        raise DimensionError("assignment entries must be 0 or 1")
    total = model.offset
    for i, c in model.linear.items():
        if x[i]:
            total += c
    for (i, j), c in model.quadratic.items():
        if x[i] and x[j]:
            total += c
    return total


def max_quadratic_degree(model: QuboModel) -> int:
    if model.quadratic:
        return 2
    if model.linear:
        return 1
    return 0


@dataclass(frozen=True)
class IsingModel:
    """Spin Hamiltonian ``offset + sum h_i s_i + sum_{i<j} J_ij s_i s_j`` over s in {-1,+1}."""

    num_vars: int
    fields: Mapping = field(default_factory=dict)
    couplings: Mapping = field(default_factory=dict)
    offset: Fraction = Fraction(0)


def to_ising(model: QuboModel) -> IsingModel:
    """Substitute ``x_i = (s_i + 1) / 2`` exactly."""
    fields: dict[int, Fraction] = {}
    couplings: dict[tuple, Fraction] = {}
    offset = Fraction(model.offset)
    for i, c in model.linear.items():
        half = Fraction(c, 2)
        fields[i] = fields.get(i, Fraction(0)) + half
        offset += half
    for (i, j), c in model.quadratic.items():
        q = Fraction(c, 4)
        couplings[(i, j)] = q
        fields[i] = fields.get(i, Fraction(0)) + q
        fields[j] = fields.get(j, Fraction(0)) + q
        offset += q
    fields = {i: v for i, v in sorted(fields.items()) if v}
    return IsingModel(model.num_vars, fields, couplings, offset)


def ising_energy(model: IsingModel, spins: Sequence[int]) -> Fraction:
    if len(spins) != model.num_vars:
        raise DimensionError(f"spin vector has {len(spins)} entries, model has {model.num_vars}")
    if any(s not in (-1, 1) for s in spins):
        raise DimensionError("spins must be -1 or +1")
    total = Fraction(model.offset)
    for i, h in model.fields.items():
        total += h * spins[i]
    for (i, j), c in model.couplings.items():
        total += c * spins[i] * spins[j]
    return total


class QuboBuilder:
    """Accumulates named Hamiltonian blocks over labelled variables.

    Each block (conventionally ``"A"``, ``"B"``, ``"C"`` after the weight that
    scales it) is kept separately so callers can check that a configuration
    zeroes the penalty block. Coefficients may pass through halves while
    accumulating; :meth:`build` requires every final coefficient integral.
    """

    def __init__(self, registry: VariableRegistry):
        self.registry = registry
        self._parts: dict[str, list] = {}

    def _part(self, name):
        if name not in self._parts:
            self._parts[name] = [Fraction(0), {}, {}]
        return self._parts[name]

    def constant(self, part: str, value) -> None:
        self._part(part)[0] += value

    def linear(self, part: str, label: Label, coef) -> None:
        if coef:
            lin = self._part(part)[1]
            i = self.registry.index(label)
            lin[i] = lin.get(i, 0) + coef

    def quadratic(self, part: str, a: Label, b: Label, coef) -> None:
        if not coef:
            return
        i, j = self.registry.index(a), self.registry.index(b)
        if i == j:
            self.linear(part, a, coef)
            return
        key = (i, j) if i < j else (j, i)
        quad = self._part(part)[2]
        quad[key] = quad.get(key, 0) + coef

    def square(self, part: str, weight, terms: Iterable, const=0) -> None:
        """Add ``weight * (const + sum c_k x_k)**2``."""
        merged: dict = {}
        for lab, c in terms:
            lab = tuple(lab)
            merged[lab] = merged.get(lab, 0) + c
        items = [(lab, c) for lab, c in merged.items() if c]
        self.constant(part, weight * const * const)
        for k, (lab, c) in enumerate(items):
            self.linear(part, lab, weight * (c * c + 2 * const * c))
            for lab2, c2 in items[k + 1:]:
                self.quadratic(part, lab, lab2, 2 * weight * c * c2)

    def product(self, part: str, weight, left: Iterable, right: Iterable,
                left_const=0, right_const=0) -> None:
        """Add ``weight * (lc + sum a_k x_k) * (rc + sum b_l x_l)``."""
        left, right = list(left), list(right)
        self.constant(part, weight * left_const * right_const)
        for lab, c in left:
            self.linear(part, lab, weight * c * right_const)
        for lab, c in right:
            self.linear(part, lab, weight * c * left_const)
        for la, ca in left:
            for lb, cb in right:
                self.quadratic(part, la, lb, weight * ca * cb)

    def build(self) -> tuple[QuboModel, dict[str, QuboModel]]:
        n = len(self.registry)
        parts = {}
        for name, (off, lin, quad) in sorted(self._parts.items()):
            parts[name] = QuboModel(
                n,
                {i: _integral(c) for i, c in lin.items()},
                {k: _integral(c) for k, c in quad.items()},
                _integral(off),
            )
        total = QuboModel(n)
        for part in parts.values():
            total = total + part
        return total, parts


def _integral(value) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ModelError(f"non-integral coefficient {value}")
    return int(value)

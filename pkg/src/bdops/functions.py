"""Test functions on [0, 1] fed to the operators.

A TestFunction bundles the callable with the metadata the quadrature and
analysis layers need: interior kinks (split points for the composite rule),
closed-form derivatives when available, and exact rational coefficients when
the function is a polynomial (which switches every integral to the exact
Beta-function path).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class TestFunction:
    __test__ = False  # not a pytest class despite the name

    name: str
    fn: Callable
    kinks: Tuple[float, ...] = ()
    poly_coeffs: Optional[Tuple[Fraction, ...]] = None
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    # extra polynomial degree a quadrature rule needs to resolve the
    # non-polynomial factor to machine precision
    poly_resolution: int = 64

    def __call__(self, x):
        return self.fn(x)

    @property
    def is_polynomial(self) -> bool:
        return self.poly_coeffs is not None

    def value_exact(self, x: Fraction) -> Fraction:
        if self.poly_coeffs is None:
            raise ValueError(f"{self.name} has no exact rational path")
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.poly_coeffs):
            acc = acc * x + c
        return acc


def polynomial(coeffs, name: Optional[str] = None) -> TestFunction:
    """Polynomial sum(coeffs[s] * x^s) with exact rational coefficients."""
    cs = tuple(Fraction(c) for c in coeffs)
    while len(cs) > 1 and cs[-1] == 0:
        cs = cs[:-1]
    fs = np.array([float(c) for c in cs])

    def fn(x):
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in fs[::-1]:
            acc = acc * x + c
        return acc if np.ndim(x) else float(acc)

    def d_koeffs(k):
        out = cs
        for _ in range(k):
            out = tuple(i * c for i, c in enumerate(out))[1:] or (Fraction(0),)
        return np.array([float(c) for c in out])

    d1c, d2c = d_koeffs(1), d_koeffs(2)

    def horner(coef, x):
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in coef[::-1]:
            acc = acc * x + c
        return acc if np.ndim(x) else float(acc)

    return TestFunction(
        name=name or f"poly{len(cs) - 1}",
        fn=fn,
        poly_coeffs=cs,
        d1=lambda x: horner(d1c, x),
        d2=lambda x: horner(d2c, x),
        poly_resolution=max(len(cs) - 1, 0),
    )


def monomial(k: int) -> TestFunction:
    """e_k(t) = t^k."""
    if k < 0:
        raise ValueError("monomial degree must be nonnegative")
    return polynomial([0] * k + [1], name=f"e{k}")


def _g1(x):
    return np.sin(4 * np.pi * x) + 4 * np.sin(0.25 * np.pi * x)


def _g1_d1(x):
    return 4 * np.pi * np.cos(4 * np.pi * x) + np.pi * np.cos(0.25 * np.pi * x)


def _g1_d2(x):
    return -16 * np.pi**2 * np.sin(4 * np.pi * x) - 0.25 * np.pi**2 * np.sin(0.25 * np.pi * x)


def _g2(x):
    return np.abs(x - 0.25) * np.cos(4 * np.pi * x)


def _g3(x):
    return (x - 0.25) * np.sin(2 * np.pi * x)


def _g3_d1(x):
    return np.sin(2 * np.pi * x) + 2 * np.pi * (x - 0.25) * np.cos(2 * np.pi * x)


def _g3_d2(x):
    return 4 * np.pi * np.cos(2 * np.pi * x) - 4 * np.pi**2 * (x - 0.25) * np.sin(2 * np.pi * x)


#: g1(x) = sin(4 pi x) + 4 sin(pi x / 4), smooth and oscillatory
G1 = TestFunction(name="g1", fn=_g1, d1=_g1_d1, d2=_g1_d2)

#: g2(x) = |x - 1/4| cos(4 pi x), continuous with a kink at x = 1/4
G2 = TestFunction(name="g2", fn=_g2, kinks=(0.25,))

#: g3(x) = (x - 1/4) sin(2 pi x), smooth
G3 = TestFunction(name="g3", fn=_g3, d1=_g3_d1, d2=_g3_d2)

_BUILTINS = {"g1": G1, "g2": G2, "g3": G3}


def from_name(name: str) -> TestFunction:
    """Look up a builtin by name: 'g1', 'g2', 'g3' or 'e<k>'."""
    key = name.lower()
    if key in _BUILTINS:
        return _BUILTINS[key]
    if key.startswith("e") and key[1:].isdigit():
        return monomial(int(key[1:]))
    raise ValueError(f"unknown test function {name!r}")

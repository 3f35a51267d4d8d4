"""Exact truncated power series in noncommuting letters.

The coefficient field is ``fractions.Fraction``, so every operation in this
module is exact: no floats, no tolerances.  Words are tuples of letter
indices (``()`` is the algebra unit), and zero coefficients are never
stored, which makes equality of series plain dictionary equality.

This is the brute-force side of every coefficient identity checked in
:mod:`shadowosc.goldberg`: ``log_exp_product`` multiplies out exponentials
of single letters and takes the formal logarithm, with no closed-form
knowledge baked in.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple

Word = Tuple[int, ...]


class FreeSeries:
    """A formal power series over noncommuting letters, truncated in degree.

    ``coeffs`` maps words (tuples of letter indices) to nonzero Fractions;
    words longer than ``max_degree`` are silently dropped, which is what
    truncation means here.
    """

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, max_degree: int, coeffs: Mapping[Word, object] | None = None):
        if max_degree < 1:
            raise ValueError(f"max_degree must be positive, got {max_degree}")
        object.__setattr__(self, "max_degree", max_degree)
        clean: dict[Word, Fraction] = {}
        if coeffs:
            for word, value in coeffs.items():
                word = tuple(word)
                if len(word) > max_degree:
                    continue
                value = Fraction(value)
                if value:
                    clean[word] = value
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FreeSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, max_degree: int) -> "FreeSeries":
        return cls(max_degree)

    @classmethod
    def one(cls, max_degree: int) -> "FreeSeries":
        return cls(max_degree, {(): Fraction(1)})

    @classmethod
    def letter(cls, index: int, max_degree: int, scale=1) -> "FreeSeries":
        """The series ``scale * x_index``."""
        if index < 0:
            raise ValueError(f"letter index must be >= 0, got {index}")
        return cls(max_degree, {(index,): Fraction(scale)})

    # -- inspection --------------------------------------------------------

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self.coeffs.get(tuple(word), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeffs.get((), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return self.max_degree == other.max_degree and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"FreeSeries(deg<={self.max_degree}, 0)"
        parts = []
        for word in sorted(self.coeffs, key=lambda w: (len(w), w)):
            name = "".join(str(i) for i in word) if word else "1"
            parts.append(f"{self.coeffs[word]}*{name}")
        return f"FreeSeries(deg<={self.max_degree}, {' + '.join(parts)})"

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "FreeSeries") -> None:
        if self.max_degree != other.max_degree:
            raise ValueError(
                f"mismatched truncation orders: {self.max_degree} vs {other.max_degree}"
            )

    def __add__(self, other: "FreeSeries") -> "FreeSeries":
        self._check_compatible(other)
        total = dict(self.coeffs)
        for word, value in other.coeffs.items():
            total[word] = total.get(word, Fraction(0)) + value
        return FreeSeries(self.max_degree, total)

    def __sub__(self, other: "FreeSeries") -> "FreeSeries":
        return self + other.scaled(-1)

    def __neg__(self) -> "FreeSeries":
        return self.scaled(-1)

    def scaled(self, factor) -> "FreeSeries":
        factor = Fraction(factor)
        if not factor:
            return FreeSeries.zero(self.max_degree)
        return FreeSeries(
            self.max_degree, {w: v * factor for w, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, FreeSeries):
            return self.scaled(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.scaled(other)


def series_mul(a: FreeSeries, b: FreeSeries) -> FreeSeries:
    """Truncated concatenation product.

    The coefficient of a word w in the result is the sum of a[u]*b[v] over
    all splittings w = uv; words longer than max_degree are discarded.
    """
    a._check_compatible(b)
    limit = a.max_degree
    # Bucket the right factor by word length so overflowing pairs are
    # skipped wholesale instead of per pair.
    by_length: dict[int, list[tuple[Word, Fraction]]] = {}
    for word, value in b.coeffs.items():
        by_length.setdefault(len(word), []).append((word, value))
    product: dict[Word, Fraction] = {}
    for left, cl in a.coeffs.items():
        room = limit - len(left)
        for length, items in by_length.items():
            if length > room:
                continue
            for right, cr in items:
                word = left + right
                prev = product.get(word)
                product[word] = cl * cr if prev is None else prev + cl * cr
    return FreeSeries(limit, product)


def series_exp(a: FreeSeries) -> FreeSeries:
    """exp(a) = sum a^m / m!, truncated at a.max_degree.

    Requires a zero constant term so that the sum is finite degree by
    degree.
    """
    if a.constant_term():
        raise ValueError("series_exp requires a zero constant term")
    result = FreeSeries.one(a.max_degree)
    power = FreeSeries.one(a.max_degree)
    for m in range(1, a.max_degree + 1):
        power = series_mul(power, a)
        if not power:
            break
        result = result + power.scaled(Fraction(1, math.factorial(m)))
    return result


def series_log(a: FreeSeries) -> FreeSeries:
    """log(a) = sum (-1)^(m+1) (a-1)^m / m, truncated at a.max_degree.

    Requires constant term 1; inverse of series_exp up to the truncation
    order.
    """
    if a.constant_term() != 1:
        raise ValueError("series_log requires constant term 1")
    shifted = a - FreeSeries.one(a.max_degree)
    result = FreeSeries.zero(a.max_degree)
    power = FreeSeries.one(a.max_degree)
    sign = 1
    for m in range(1, a.max_degree + 1):
        power = series_mul(power, shifted)
        if not power:
            break
        result = result + power.scaled(Fraction(sign, m))
        sign = -sign
    return result


def log_exp_product(
    weights: Sequence[tuple[int, object]], max_degree: int
) -> FreeSeries:
    """log of a product of exponentials of weighted single letters.

    ``weights`` is a sequence of (letter index, rational scale) pairs; the
    result is log(exp(s0 * x_l0) * exp(s1 * x_l1) * ...) truncated at
    ``max_degree``.  This one routine is the oracle for every word
    coefficient claimed in closed form elsewhere.
    """
    if not weights:
        raise ValueError("log_exp_product needs at least one factor")
    product = FreeSeries.one(max_degree)
    for index, scale in weights:
        product = series_mul(
            product, series_exp(FreeSeries.letter(index, max_degree, scale))
        )
    return series_log(product)

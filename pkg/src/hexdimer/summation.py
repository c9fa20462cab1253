"""Compensated accumulation for long convergent series.

math.fsum is used wherever the terms are all in hand; this accumulator serves
streaming loops with a data-dependent stopping rule.
"""


class NeumaierSum:
    """Running compensated sum (Neumaier's variant of Kahan summation)."""

    __slots__ = ("_s", "_c", "count")

    def __init__(self, value: float = 0.0):
        self._s = float(value)
        self._c = 0.0
        self.count = 0

    def add(self, term: float) -> None:
        t = self._s + term
        if abs(self._s) >= abs(term):
            self._c += (self._s - t) + term
        else:
            self._c += (term - t) + self._s
        self._s = t
        self.count += 1

    @property
    def value(self) -> float:
        return self._s + self._c

"""Weight enumerators and the comparison report."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True, eq=False)
class WeightEnumerator:
    """Hamming weight distribution of an [length, dimension] code over GF(field_order).

    ``counts`` maps weight -> number of codewords and always contains 0 -> 1.
    """

    length: int
    dimension: int
    field_order: int
    counts: dict

    def __post_init__(self):
        counts = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}
        if counts.get(0) != 1:
            raise ValueError("a linear code has exactly one codeword of weight 0")
        if any(c < 0 for c in counts.values()):
            raise ValueError("negative count")
        if any(not 0 <= w <= self.length for w in counts):
            raise ValueError("weight outside [0, length]")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.counts if w]

    def items(self):
        return list(self.counts.items())

    def _key(self):
        return (self.length, self.dimension, self.field_order, self.counts)

    def __eq__(self, other):
        # predictions compare equal to computed enumerators with the same data
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None

    def polynomial(self, var: str = "z") -> str:
        terms = []
        for w, c in self.counts.items():
            terms.append(str(c) if w == 0 else f"{c} {var}^{w}")
        return " + ".join(terms)

    def __str__(self):
        return self.polynomial()


@dataclass(frozen=True, eq=False)
class PredictedEnumerator(WeightEnumerator):
    source: str = ""


@dataclass
class Report:
    parameters: dict
    predicted: dict
    computed: dict
    discrepancies: list = field(default_factory=list)
    elapsed: float | None = None

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    @property
    def first_discrepancy(self):
        return self.discrepancies[0] if self.discrepancies else None

    def render(self, timing: bool = False) -> str:
        lines = ["# weight enumerator verification"]
        for k, v in self.parameters.items():
            lines.append(f"{k}: {v}")
        lines.append("weight  predicted  computed")
        for w in sorted(set(self.predicted) | set(self.computed)):
            lines.append(f"{w:>6}  {self.predicted.get(w, 0):>9}  {self.computed.get(w, 0):>8}")
        if self.passed:
            lines.append("verdict: PASS")
        else:
            w, want, got = self.first_discrepancy
            lines.append(f"verdict: FAIL (weight {w}: predicted {want}, computed {got})")
        if timing and self.elapsed is not None:
            lines.append(f"elapsed: {self.elapsed:.3f}s")
        return "\n".join(lines) + "\n"


def verify(computed: WeightEnumerator, predicted: WeightEnumerator, elapsed=None) -> Report:
    """Exact per-weight comparison of two enumerators with the same metadata."""
    meta_c = (computed.length, computed.dimension, computed.field_order)
    meta_p = (predicted.length, predicted.dimension, predicted.field_order)
    if meta_c != meta_p:
        raise ValueError(f"metadata mismatch: computed (N, r, Q) = {meta_c}, predicted {meta_p}")
    discrepancies = []
    for w in sorted(set(computed.counts) | set(predicted.counts)):
        want, got = predicted.counts.get(w, 0), computed.counts.get(w, 0)
        if want != got:
            discrepancies.append((w, want, got))
    params = {"length": computed.length, "dimension": computed.dimension,
              "field_order": computed.field_order}
    if isinstance(predicted, PredictedEnumerator) and predicted.source:
        params["prediction"] = predicted.source
    return Report(params, dict(predicted.counts), dict(computed.counts), discrepancies, elapsed)

"""Run-wide precision and truncation knobs."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PrecisionConfig:
    digits: int = 64
    series_n_max: int = 40
    direct_terms: int = 100_000
    kloosterman_c_max: int = 10_000

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError("digits must be >= 30")
        if min(self.series_n_max, self.direct_terms, self.kloosterman_c_max) <= 0:
            raise ValueError("all counts must be positive")

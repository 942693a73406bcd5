import os
from dataclasses import dataclass

DEFAULT_SIZE_BOUND = 4096


@dataclass(frozen=True)
class Limits:
    # field order q and carrier size q**m are both capped by size_bound
    size_bound: int = DEFAULT_SIZE_BOUND
    # largest boolean array the model-checking oracle may allocate
    eval_budget: int = 20_000_000
    # valuations of free variables tried before falling back to sampling
    exhaustive_valuations: int = 400_000
    samples: int = 256
    seed: int = 0

    @classmethod
    def from_env(cls) -> "Limits":
        raw = os.environ.get("NEARVEC_SIZE_BOUND")
        if raw is None:
            return cls()
        return cls(size_bound=int(raw))


def limits() -> Limits:
    return Limits.from_env()

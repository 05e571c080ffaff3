"""
Deterministic instance generation: affine permutations, Iwahori elements and
composed flag representatives b_- · perm_to_matrix(u) · b_+.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded per
config; trial seeds are derived from (seed, trial) so parallel runs reproduce.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, replace

from .affine_perm import AffinePermutation
from .laurent import Laurent, LaurentMatrix, perm_to_matrix

__all__ = [
    "PRNG_NAME", "SampleConfig", "rng_for", "random_affine_perm", "random_iwahori",
    "Instance", "make_instance", "compose_flag", "derive_seed",
]

PRNG_NAME = "python-random-mt19937"


@dataclass(frozen=True)
class SampleConfig:
    n: int = 3
    k: int = 0
    seed: int = 0
    degree_bound: int = 1
    coeff_bound: int = 2
    spread: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.degree_bound < 1:
            raise ValueError("degree_bound must be at least 1")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be at least 1")

    def for_trial(self, trial: int) -> SampleConfig:
        return replace(self, seed=derive_seed(self.seed, trial))

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> SampleConfig:
        return cls(**{k: int(v) for k, v in obj.items() if k in cls.__dataclass_fields__})


def derive_seed(seed: int, trial: int) -> int:
    return random.Random(f"{seed}:{trial}").getrandbits(63)


def rng_for(config: SampleConfig, salt: str = "") -> random.Random:
    return random.Random(f"{config.seed}/{salt}")


def random_affine_perm(config: SampleConfig, rng: random.Random | None = None) -> AffinePermutation:
    """
    A uniform residue permutation plus per-residue period shifts c_d summing
    to the requested index, each |c_d - k/n| kept within ``spread``.
    """
    rng = rng or rng_for(config, "perm")
    n, k = config.n, config.k
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    base = [k // n + (1 if d < k % n else 0) for d in range(n)]
    rng.shuffle(base)
    shifts = list(base)
    for _ in range(config.spread * n):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b and abs(shifts[a] + 1 - base[a]) <= config.spread and abs(shifts[b] - 1 - base[b]) <= config.spread:
            shifts[a] += 1
            shifts[b] -= 1
    return AffinePermutation(n, tuple(p + n * c for p, c in zip(perm, shifts)))


def _poly(rng: random.Random, keys: range, bound: int) -> Laurent:
    return Laurent({c: rng.randint(-bound, bound) for c in keys})


def _unit(rng: random.Random, bound: int) -> int:
    return rng.choice([-1, 1]) * rng.randint(1, bound)


def random_iwahori(config: SampleConfig, side: str = "upper", rng: random.Random | None = None) -> LaurentMatrix:
    """
    ``side="upper"``: an Iwahori element, entries polynomials in t^{-1} of
    degree <= degree_bound, divisible by t^{-1} strictly below the diagonal,
    nonzero constant terms on the diagonal.

    ``side="lower"``: an element of the opposite group stabilizing every
    anti-lattice, built as (lower unitriangular over Q[t]) · (constant unit
    diagonal) · (upper unitriangular with entries in t·Q[t]) so the
    determinant is a nonzero constant.
    """
    rng = rng or rng_for(config, f"iwahori-{side}")
    n, deg, cb = config.n, config.degree_bound, config.coeff_bound
    if side == "upper":
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                if r == c:
                    row.append(_poly(rng, range(1, deg + 1), cb) + _unit(rng, cb))
                elif r < c:
                    row.append(_poly(rng, range(0, deg + 1), cb))
                else:
                    row.append(_poly(rng, range(1, deg + 1), cb))
            rows.append(row)
        return LaurentMatrix(rows)
    if side != "lower":
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    lower = [[(Laurent.const(1) if r == c else _poly(rng, range(-deg, 1), cb) if r > c else Laurent())
              for c in range(n)] for r in range(n)]
    diag = [[(Laurent.const(_unit(rng, cb)) if r == c else Laurent()) for c in range(n)] for r in range(n)]
    upper = [[(Laurent.const(1) if r == c else _poly(rng, range(-deg, 0), cb) if r < c else Laurent())
              for c in range(n)] for r in range(n)]
    return LaurentMatrix(lower) @ LaurentMatrix(diag) @ LaurentMatrix(upper)


@dataclass
class Instance:
    w: AffinePermutation
    u: AffinePermutation
    b_minus: LaurentMatrix
    b_plus: LaurentMatrix
    M: LaurentMatrix
    label: bool
    config: SampleConfig

    def to_json(self) -> dict:
        return {
            "w": self.w.to_json(), "u": self.u.to_json(),
            "b_minus": self.b_minus.to_json(), "b_plus": self.b_plus.to_json(),
            "M": self.M.to_json(), "label": self.label,
            "config": {**self.config.to_json(), "prng": PRNG_NAME},
        }

    @classmethod
    def from_json(cls, obj: dict) -> Instance:
        return cls(
            AffinePermutation.from_json(obj["w"]), AffinePermutation.from_json(obj["u"]),
            LaurentMatrix.from_json(obj["b_minus"]), LaurentMatrix.from_json(obj["b_plus"]),
            LaurentMatrix.from_json(obj["M"]), bool(obj["label"]),
            SampleConfig.from_json(obj["config"]),
        )


def compose_flag(u: AffinePermutation, b_minus: LaurentMatrix, b_plus: LaurentMatrix) -> LaurentMatrix:
    return b_minus @ perm_to_matrix(u) @ b_plus


def make_instance(w: AffinePermutation, config: SampleConfig, u: AffinePermutation | None = None,
                  identity_factors: bool = False) -> Instance:
    """
    Sample u (same index as w unless given) and b_-, b_+, and label the
    product by the lattice oracle.
    """
    from .lattice_oracle import oracle_membership
    config = replace(config, n=w.n, k=w.index)
    if u is None:
        u = random_affine_perm(config)
    if identity_factors:
        b_minus = b_plus = LaurentMatrix.identity(w.n)
    else:
        b_minus = random_iwahori(config, "lower")
        b_plus = random_iwahori(config, "upper")
    M = compose_flag(u, b_minus, b_plus)
    assert M.index() == u.index, "Iwahori factors must not change the index"
    return Instance(w, u, b_minus, b_plus, M, oracle_membership(M, w), config)

"""Simulation configuration: dataclass, YAML loader, defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import yaml

from ..sampling import CheckParameters
from .attacks import AttackSpec

# Only the output directory may come from the environment; everything
# else must be pinned in the config file so runs stay reproducible.
OUT_DIR_ENV = "SAVI_OUT_DIR"

_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SimulationConfig:
    n: int = 10
    m: int = 1
    d: int = 256
    k: int = 256
    epsilon_log2: int = -40
    M: int = 1 << 20
    B: float = 1.0
    b_ip: int = 64
    b_max: int = 128
    frac_bits: int = 8
    b_coord: int = 16
    seed: int = 1
    rounds: int = 1
    backend: str = "mock"
    workers: int = 1  # thread pool width for the party loops
    attack: AttackSpec = field(default_factory=AttackSpec)
    out_dir: str = "out"
    formats: tuple[str, ...] = ("csv", "json")

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise ValueError("rounds must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.backend not in ("mock", "ristretto255"):
            raise ValueError(f"unknown backend {self.backend!r}")
        bad = [f for f in self.formats if f not in _FORMATS]
        if bad:
            raise ValueError(f"unknown report formats: {bad}")
        ids = self.attack.malicious_ids
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate malicious ids")
        if any(not 1 <= i <= self.n for i in ids):
            raise ValueError("malicious ids must be client ids in 1..n")
        if len(ids) > self.m:
            raise ValueError(f"at most m={self.m} malicious clients allowed")
        # Attacked coordinates still need to fit the fixed-point window,
        # otherwise the malicious client could not even encode its update.
        worst = self.attack.norm_ratio(self.B, self.d) * self.B
        if worst * (1 << self.frac_bits) + 1 >= 1 << (self.b_coord - 1):
            raise ValueError(
                "attack pushes coordinates outside the b_coord window; "
                "raise b_coord or lower the attack scale"
            )
        self.check_parameters()  # validate derived widths eagerly

    def check_parameters(self) -> CheckParameters:
        return CheckParameters.from_epsilon_log2(
            self.epsilon_log2,
            n=self.n,
            m=self.m,
            d=self.d,
            k=self.k,
            M=self.M,
            B=self.B,
            b_ip=self.b_ip,
            b_max=self.b_max,
            frac_bits=self.frac_bits,
            b_coord=self.b_coord,
        )

    def resolved_out_dir(self) -> Path:
        return Path(os.environ.get(OUT_DIR_ENV, self.out_dir))

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "SimulationConfig":
        data = dict(raw)
        attack_raw = data.pop("attack", None)
        if attack_raw is not None:
            if not isinstance(attack_raw, dict):
                raise ValueError("attack must be a mapping")
            attack_raw = dict(attack_raw)
            ids = attack_raw.pop("malicious_ids", ())
            data["attack"] = AttackSpec(malicious_ids=tuple(ids), **attack_raw)
        if "formats" in data:
            data["formats"] = tuple(data["formats"])
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_yaml(cls, path: str | Path) -> "SimulationConfig":
        with open(path) as fh:
            raw = yaml.safe_load(fh)
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: expected a mapping at top level")
        return cls.from_dict(raw)

    def with_seed(self, seed: int) -> "SimulationConfig":
        return replace(self, seed=seed)


def desk_preset(**overrides: Any) -> SimulationConfig:
    """Defaults sized to finish in seconds on one core."""
    return replace(SimulationConfig(), **overrides) if overrides else SimulationConfig()


def deployment_preset(**overrides: Any) -> SimulationConfig:
    """Deployment-scale parameters; expect long runtimes on one core."""
    base = SimulationConfig(
        n=100,
        m=1,
        d=10_000,
        k=1_000,
        epsilon_log2=-128,
        M=1 << 24,
        B=1.0,
        b_ip=64,
        b_max=128,
        frac_bits=8,
        b_coord=16,
        backend="ristretto255",
    )
    return replace(base, **overrides) if overrides else base

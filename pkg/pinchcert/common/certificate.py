# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Machine-readable records of verified claims and their JSON form."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional

import numpy as np


class Verdict(str, Enum):
    """Outcome of one verified claim."""

    HOLDS = "holds"
    FAILS = "fails"
    OUT_OF_RANGE = "out-of-range"

    def __str__(self) -> str:
        return self.value


def to_jsonable(value: Any) -> Any:
    """
    Convert witness and parameter values into JSON-native data.
    Exact rationals become "p/q" strings so no precision is lost; objects providing a to_jsonable method
    (exact scalars, polynomials) render themselves.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "to_jsonable"):
        return value.to_jsonable()
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(item) for item in items]

    # sympy numbers, gmpy2 values and similar exact types print exactly
    return str(value)


@dataclass
class Certificate:
    """Record of one verified claim: identifier, parameters, verdict, witnesses and the effort it took."""

    CLAIM_ID_FIELD_NAME = "claim_id"
    """Field inside the JSON identifying the claim."""

    claim_id: str
    statement: str
    params: Dict[str, Any]
    verdict: Verdict
    witnesses: Dict[str, Any] = field(default_factory=dict)
    precision_bits: Optional[int] = None
    runtime_ms: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)
        self.params = to_jsonable(self.params)
        self.witnesses = to_jsonable(self.witnesses)

        if self.verdict == Verdict.FAILS and not self.witnesses:
            raise ValueError(f"Failing certificate '{self.claim_id}' carries no witness")

    @classmethod
    def decide(
        cls,
        claim_id: str,
        statement: str,
        params: Dict[str, Any],
        holds: bool,
        witnesses: Optional[Dict[str, Any]] = None,
        **kwargs,
    ) -> Certificate:
        return cls(
            claim_id=claim_id,
            statement=statement,
            params=params,
            verdict=Verdict.HOLDS if holds else Verdict.FAILS,
            witnesses=witnesses or {},
            **kwargs,
        )

    @property
    def holds(self) -> bool:
        return self.verdict == Verdict.HOLDS

    def _get_json_dict(self) -> Dict[str, Any]:
        return {
            self.CLAIM_ID_FIELD_NAME: self.claim_id,
            "statement": self.statement,
            "params": self.params,
            "verdict": str(self.verdict),
            "witnesses": self.witnesses,
            "precision_bits": self.precision_bits,
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
        }

    def to_dict(self) -> Dict[str, Any]:
        return self._get_json_dict()

    def get_json_str(self) -> str:
        return json.dumps(self._get_json_dict(), sort_keys=True)

    @staticmethod
    def from_dict(json_dict: Dict[str, Any]) -> Certificate:
        return Certificate(
            claim_id=json_dict[Certificate.CLAIM_ID_FIELD_NAME],
            statement=json_dict["statement"],
            params=json_dict["params"],
            verdict=Verdict(json_dict["verdict"]),
            witnesses=json_dict.get("witnesses", {}),
            precision_bits=json_dict.get("precision_bits"),
            runtime_ms=json_dict.get("runtime_ms", 0.0),
            seed=json_dict.get("seed"),
        )

    @staticmethod
    def from_json_str(json_str: str) -> Certificate:
        return Certificate.from_dict(json.loads(json_str))


class Stopwatch:
    """Measures the wall time of a verification in milliseconds."""

    def __init__(self):
        self.elapsed_ms: float = 0.0

    @contextmanager
    def measure(self) -> Iterator[Stopwatch]:
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = (time.perf_counter() - start) * 1000.0


def all_hold(certificates: List[Certificate]) -> bool:
    return all(certificate.holds for certificate in certificates)

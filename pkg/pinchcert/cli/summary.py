# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""summarized verdicts of a run, driving the exit code"""
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List

from pinchcert.common.certificate import Certificate, Verdict

logger = logging.getLogger(__name__)


@dataclass
class ClaimStats:
    """summarized verdicts of one claim"""

    holds: int = 0
    fails: int = 0
    out_of_range: int = 0
    runtime_ms: float = 0.0

    def register(self, certificate: Certificate):
        if certificate.verdict == Verdict.HOLDS:
            self.holds += 1
        elif certificate.verdict == Verdict.FAILS:
            self.fails += 1
        else:
            self.out_of_range += 1
        self.runtime_ms += certificate.runtime_ms

    @property
    def total(self) -> int:
        return self.holds + self.fails + self.out_of_range


@dataclass
class RunSummary:
    """summarized verdicts of all certificates of a run, in order of first appearance"""

    claim_stats: Dict[str, ClaimStats] = field(default_factory=dict)

    @classmethod
    def of(cls, certificates: List[Certificate]) -> "RunSummary":
        summary = cls()
        for certificate in certificates:
            summary.register(certificate)
        return summary

    def register(self, certificate: Certificate):
        if certificate.claim_id not in self.claim_stats:
            self.claim_stats[certificate.claim_id] = ClaimStats()
        self.claim_stats[certificate.claim_id].register(certificate)

        if not certificate.holds:
            logger.warning(
                "Claim '%s' %s with params %s", certificate.claim_id, certificate.verdict, certificate.params
            )

    @property
    def all_hold(self) -> bool:
        return all(stats.holds == stats.total for stats in self.claim_stats.values())

    @property
    def total_runtime_ms(self) -> float:
        return sum(stats.runtime_ms for stats in self.claim_stats.values())

    def exit_code(self) -> int:
        return os.EX_OK if self.all_hold else os.EX_DATAERR

    def to_jsonable(self) -> Dict:
        return {
            "all_hold": self.all_hold,
            "certificates": sum(stats.total for stats in self.claim_stats.values()),
            "claims": {
                claim_id: {"holds": stats.holds, "fails": stats.fails, "out_of_range": stats.out_of_range}
                for claim_id, stats in self.claim_stats.items()
            },
        }

    def __str__(self) -> str:
        lines = []
        for claim_id, stats in self.claim_stats.items():
            marker = "ok" if stats.holds == stats.total else "FAILED"
            lines.append(f"\t{marker:6}\t{stats.holds}/{stats.total}\t{claim_id}")
        verdict = "all claims hold" if self.all_hold else "some claims do not hold"
        return "\n".join(lines + [f"{verdict} ({self.total_runtime_ms:.0f} ms)"]) + "\n"

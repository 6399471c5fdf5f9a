"""Search for order-two cosets through the convergents of sqrt(2).

If a^2 - m b^2 = -1 and a^2 + m b^2 = c^2 then c^2 - 2a^2 = 1, and c - a, c + a
are consecutive even-index convergent denominators k_{2s-2}, k_{2s} of sqrt(2).
Taking m as the squarefree part of their product produces the candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .classgroup import TorsionCertificate, certify_order_two
from .errors import ContractViolation, GmError, InvalidArgument
from .intkernel import squarefree_part
from .triplegroup import GroupContext

DEFAULT_MAX_S = 7


@dataclass(frozen=True)
class Candidate:
    s: int
    k_prev: int
    k_next: int
    a: int
    b: int
    c: int
    m: int

    @property
    def satisfies_m_gt_c(self) -> bool:
        return self.m > self.c

    def verify(self) -> None:
        a, b, c, m = self.a, self.b, self.c, self.m
        checks = (
            c - a == self.k_prev,
            c + a == self.k_next,
            c * c == 2 * a * a + 1,
            m * b * b == self.k_prev * self.k_next,
            squarefree_part(m) == (m, 1),
            a * a - m * b * b == -1,
            a * a + m * b * b == c * c,
        )
        if not all(checks):
            raise ContractViolation(f"candidate s={self.s} fails its invariants")


@dataclass(frozen=True)
class TableRow:
    candidate: Candidate
    certificate: TorsionCertificate


def sqrt2_even_denominators(count: int) -> List[int]:
    """k_0, k_2, k_4, ... via k_{2(s+1)} = 6 k_{2s} - k_{2s-2}."""
    if count < 2:
        raise InvalidArgument("count must be >= 2")
    ks = [1, 5]
    while len(ks) < count:
        ks.append(6 * ks[-1] - ks[-2])
    return ks


def scan_candidates(max_s: int, timeout: Optional[float] = None) -> List[Candidate]:
    if max_s < 1:
        raise InvalidArgument("max_s must be >= 1")
    ks = sqrt2_even_denominators(max_s + 1)
    out = []
    for s in range(1, max_s + 1):
        k_prev, k_next = ks[s - 1], ks[s]
        try:
            m, b = squarefree_part(k_prev * k_next, timeout=timeout)
        except GmError as exc:
            raise type(exc)(f"candidate s={s}: {exc}") from exc
        cand = Candidate(s, k_prev, k_next, (k_next - k_prev) // 2, b, (k_next + k_prev) // 2, m)
        cand.verify()
        out.append(cand)
    return out


def certify_candidate(cand: Candidate) -> TorsionCertificate:
    return certify_order_two(GroupContext(cand.m), (cand.a, cand.b, cand.c))


def reproduce_table(max_s: int = DEFAULT_MAX_S, timeout: Optional[float] = None) -> List[TableRow]:
    """Certified rows for every candidate with m > c.

    A refused certificate propagates: each row must certify.
    """
    return [
        TableRow(cand, certify_candidate(cand))
        for cand in scan_candidates(max_s, timeout=timeout)
        if cand.satisfies_m_gt_c
    ]

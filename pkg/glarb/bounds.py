"""
Bound Evaluators
Exact big-integer values of the arboricity thresholds behind the long-cycle and
subdivision extractions, with pluggable upper bounds for Ramsey numbers.
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple, Union

from glarb import config
from glarb.errors import BoundTooLargeError, PreconditionError

logger = logging.getLogger(__name__)

HORIZON_NOTE = "exceeds exact-evaluation horizon"


def _guard_bits(bits: int, what: str) -> None:
    if bits > config.MAX_BOUND_BITS:
        raise BoundTooLargeError(f"{what} needs about {bits} bits (limit {config.MAX_BOUND_BITS})")


def power_of_two(exponent: int, what: str = "power of two") -> int:
    _guard_bits(exponent, what)
    return 1 << exponent


# ===================== Ramsey bounds =====================

class RamseyBound(ABC):
    """Upper bounds R(n_1, ..., n_q) on multicolour Ramsey numbers"""

    name = ""

    @abstractmethod
    def multi(self, sizes: Sequence[int]) -> int:
        pass

    def two(self, s: int, t: int) -> int:
        return self.multi([s, t])

    def many(self, n: int, q: int) -> int:
        """R(n; q) = R(n, ..., n) with q colours"""
        if q < 1:
            raise PreconditionError(f"need at least one colour, got {q}")
        return self.multi([n] * q)


def _reduce_sizes(sizes: Sequence[int]) -> Optional[List[int]]:
    """Sizes after the exact degenerate cases; None means the answer is 1"""
    if not sizes:
        raise PreconditionError("need at least one colour")
    if any(n <= 1 for n in sizes):
        return None
    return sorted(n for n in sizes if n != 2)


class ClassicalBound(RamseyBound):
    """(Σ(n_i - 1))! / Π(n_i - 1)!, the binomial bound for two colours"""

    name = "classical"

    def multi(self, sizes: Sequence[int]) -> int:
        reduced = _reduce_sizes(sizes)
        if reduced is None:
            return 1
        if not reduced:
            return 2
        if len(reduced) == 1:
            return reduced[0]
        parts = [n - 1 for n in reduced]
        total = sum(parts)
        _guard_bits((total - max(parts)) * max(1, total.bit_length()), f"R{tuple(sizes)}")
        value = 1
        running = 0
        for part in parts:
            running += part
            value *= math.comb(running, part)
        return value


# Known exact values, keyed by sorted sizes
KNOWN_RAMSEY: Dict[Tuple[int, ...], int] = {
    (3, 3): 6,
    (3, 4): 9,
    (3, 5): 14,
    (3, 6): 18,
    (3, 7): 23,
    (3, 8): 28,
    (3, 9): 36,
    (4, 4): 18,
    (4, 5): 25,
    (3, 3, 3): 17,
}


class TableBound(RamseyBound):
    """Known exact small values, otherwise the classical bound"""

    name = "table"

    def __init__(self, fallback: RamseyBound = None):
        self.fallback = fallback or ClassicalBound()

    def multi(self, sizes: Sequence[int]) -> int:
        reduced = _reduce_sizes(sizes)
        if reduced is not None and tuple(reduced) in KNOWN_RAMSEY:
            return KNOWN_RAMSEY[tuple(reduced)]
        return self.fallback.multi(sizes)


def create_ramsey_bound(policy: str = None) -> RamseyBound:
    """Factory function to create the configured Ramsey bound policy"""
    policy = policy or config.RAMSEY_STUB

    if policy.lower() == "table":
        return TableBound()
    else:
        return ClassicalBound()


# ===================== Long cycles =====================

def g_omega(omega: int, t: int) -> int:
    """(ω+2) * 2^(t(ω+1)+1)"""
    if omega < 1 or t < 1:
        raise PreconditionError(f"omega and t must be positive, got {omega} and {t}")
    return (omega + 2) * power_of_two(t * (omega + 1) + 1, "g_omega")


# ===================== Subdivisions =====================

def r_top(omega: int, t: int) -> int:
    """r_{ω+1}(t) = t + C(t,2)(ω² + ω - 1)"""
    return t + math.comb(t, 2) * (omega * omega + omega - 1)


def r_sequence(omega: int, t: int, ramsey: RamseyBound = None) -> List[int]:
    """[r_0(t), ..., r_{ω+1}(t)] with r_{i-1} = R(t, R(r_i; ω))"""
    if omega < 1 or t < 1:
        raise PreconditionError(f"omega and t must be positive, got {omega} and {t}")
    ramsey = ramsey or create_ramsey_bound()
    values = [r_top(omega, t)]
    for _ in range(omega + 1):
        inner = ramsey.many(values[0], omega)
        values.insert(0, ramsey.two(t, inner))
    return values


def c_sequence(r_values: Sequence[int]) -> List[int]:
    """[c_1, ..., c_{ω+1}] with c_i = Σ_{j<i} C(r_j, 2)"""
    sums = []
    running = 0
    for r in r_values[:-1]:
        running += math.comb(r, 2)
        sums.append(running)
    return sums


def f_omega(omega: int, t: int, d: int, ramsey: RamseyBound = None) -> int:
    """(r_0 + 2c_{ω+1}) * 2^(2(d+1)c_{ω+1})"""
    if d < 1:
        raise PreconditionError(f"d must be positive, got {d}")
    r_values = r_sequence(omega, t, ramsey)
    c_last = c_sequence(r_values)[-1]
    return (r_values[0] + 2 * c_last) * power_of_two(2 * (d + 1) * c_last, "f_omega")


# ===================== Cycles in subdivisions =====================

def mu(omega: int) -> int:
    return max((omega + 2) ** 2, 2 * omega + 6)


def beta(omega: int, p: int, ramsey: RamseyBound = None) -> int:
    """R(μ; p)"""
    return (ramsey or create_ramsey_bound()).many(mu(omega), p)


def r_subdivision(omega: int, p: int, ramsey: RamseyBound = None) -> int:
    """R(β; ω³)"""
    ramsey = ramsey or create_ramsey_bound()
    return ramsey.many(beta(omega, p, ramsey), omega ** 3)


def subdivision_order(r: int, omega: int, k: int) -> int:
    """(r + k)(ω + 2): ω + 2 blocks of r branch vertices, and k relay positions per block"""
    return (r + k) * (omega + 2)


def f_omega_p(omega: int, p: int, k: int, ramsey: RamseyBound = None) -> int:
    return subdivision_order(r_subdivision(omega, p, ramsey), omega, k)


# ===================== Report =====================

BoundValue = Union[int, str]


def _attempt(compute) -> BoundValue:
    try:
        return compute()
    except BoundTooLargeError as e:
        logger.warning(f"Bound not evaluated: {e}")
        return HORIZON_NOTE


def bounds_report(omega: int, t: int, d: int, p: int = None, k: int = None,
                  ramsey: RamseyBound = None) -> dict:
    """Every threshold for (ω, t, d), and for (ω, p, k) when both are given"""
    ramsey = ramsey or create_ramsey_bound()
    report: Dict[str, object] = {"omega": omega, "t": t, "d": d, "ramsey_policy": ramsey.name}
    report["g_omega"] = _attempt(lambda: g_omega(omega, t))

    r_values = _attempt(lambda: r_sequence(omega, t, ramsey))
    if isinstance(r_values, list):
        c_values = c_sequence(r_values)
        report["r"] = {str(i): r for i, r in enumerate(r_values)}
        report["c"] = {str(i + 1): c for i, c in enumerate(c_values)}
        report["f_omega"] = _attempt(lambda: (r_values[0] + 2 * c_values[-1])
                                     * power_of_two(2 * (d + 1) * c_values[-1], "f_omega"))
    else:
        report["r"] = r_values
        report["c"] = r_values
        report["f_omega"] = r_values

    if p is not None and k is not None:
        report["p"] = p
        report["k"] = k
        report["mu"] = mu(omega)
        report["beta"] = _attempt(lambda: beta(omega, p, ramsey))
        report["r_subdivision"] = _attempt(lambda: r_subdivision(omega, p, ramsey))
        report["f_omega_p"] = _attempt(lambda: f_omega_p(omega, p, k, ramsey))
    return report

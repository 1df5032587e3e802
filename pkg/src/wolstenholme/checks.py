"""Registry of named congruence checks with applicability gates.

Each entry binds an id to a pure evaluator ``p -> (lhs, rhs)`` over one
prime-power modulus, the congruence's stated exponent, a minimum prime,
and a scope (all primes, or Wolstenholme primes only).  Evaluators work a
couple of exponents above the stated one where the arithmetic allows, so
an outcome reports how much slack a congruence has, not just pass/fail.

A check passes when v_p(lhs - rhs) reaches the stated exponent.  Skipped
is not failed: gates (below minimum prime, not prime, not a Wolstenholme
prime, beyond an exact-oracle bound) produce skipped outcomes so suites
can sweep wide ranges without noise.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import binomial
from .bernoulli import bernoulli_mod, bernoulli_ratio, high_index_bernoulli
from .errors import UnknownCheck
from .harmonic import _inverse_power_sums_raw, wolstenholme_quotient
from .modring import Residue, is_prime, make_modulus, max_exponent

Fr = Fraction


class Scope(Enum):
    ALL_PRIMES = "all-primes"
    WOLSTENHOLME_ONLY = "wolstenholme-only"


@dataclass(frozen=True)
class CongruenceCheck:
    """A named congruence: applicability gates plus a two-sided evaluator."""

    id: str
    description: str
    source: str
    min_prime: int
    scope: Scope
    modulus_exponent: int
    evaluator: Callable[[int], tuple[Residue, Residue]]
    max_prime: Optional[int] = None


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one check at one prime; lhs/rhs are decimal strings."""

    check_id: str
    p: int
    modulus_exponent: int
    lhs: Optional[str]
    rhs: Optional[str]
    residual_valuation: Optional[int]
    passed: bool
    skipped: bool
    reason: Optional[str]
    elapsed_ns: int


def _eval_exponent(p: int, stated: int, margin: int = 2, cap: int = 10) -> int:
    return max(stated, min(stated + margin, cap, max_exponent(p)))


@lru_cache(maxsize=64)
def _r_values(p: int, K: int) -> tuple[int, ...]:
    """(unused, R_1, .., R_8) mod p^K, reduced from one wide computation."""
    top = min(10, max_exponent(p))
    if K == top:
        return tuple(int(x) for x in _inverse_power_sums_raw(p, 8, p ** top))
    wide = _r_values(p, top)
    m = p ** K
    return tuple(x % m for x in wide)


@lru_cache(maxsize=64)
def _h_values(p: int, K: int) -> tuple[int, ...]:
    """(unused, H_1, .., H_n) mod p^K via the Newton recurrence on _r_values."""
    R = _r_values(p, K)
    m = p ** K
    n_max = min(8, p - 2, len(R) - 1)
    H = [0] * (n_max + 1)
    H[1] = R[1]
    for n in range(2, n_max + 1):
        acc = R[n]
        sign = -1
        for i in range(1, n):
            acc += sign * H[i] * R[n - i]
            sign = -sign
        acc = acc % m * pow(n, -1, m) % m
        if n % 2 == 0:
            acc = -acc % m
        H[n] = acc
    return tuple(H)


@lru_cache(maxsize=64)
def _central_value(p: int, K: int) -> int:
    top = min(10, max_exponent(p))
    if K == top:
        return binomial._central_raw(p, p ** top)
    return _central_value(p, top) % p ** K


def _pair(p, W, lhs, rhs):
    modulus = make_modulus(p, W)
    if not isinstance(lhs, Residue):
        lhs = modulus.residue(lhs)
    if not isinstance(rhs, Residue):
        rhs = modulus.residue(rhs)
    return lhs, rhs


def _indicator_pair(p: int, lhs_holds: bool, rhs_holds: bool):
    modulus = make_modulus(p, 1)
    return modulus.residue(1 if lhs_holds else 0), modulus.residue(1 if rhs_holds else 0)


# --- binomial-side evaluators -------------------------------------------------

def _ev_wolstenholme_thm(p):
    W = _eval_exponent(p, 3)
    return _pair(p, W, _central_value(p, W), 1)


def _ev_glaisher(p):
    W = _eval_exponent(p, 4)
    M = make_modulus(p, W)
    b = M.residue(bernoulli_mod(p - 3, p, W - 3).value.value)
    return M.residue(_central_value(p, W)), 1 - Fr(2, 3) * p ** 3 * b


def _ev_lehmer(p):
    W = _eval_exponent(p, 3)
    M = make_modulus(p, W)
    b = M.residue(bernoulli_mod(p - 3, p, W - 2).value.value)
    return M.residue(_r_values(p, W)[1]), -Fr(1, 3) * p ** 2 * b


def _ev_helou_terjanian(p):
    W = 6
    M = make_modulus(p, W)
    b_big = M.residue(high_index_bernoulli(3, 2, p).value)
    b3 = bernoulli_mod(p - 3, p, 1).value.value
    b5 = bernoulli_mod(p - 5, p, 1).value.value
    rhs = 1 - p ** 3 * b_big + Fr(1, 3) * p ** 5 * M.residue(b3) \
        - Fr(6, 5) * p ** 5 * M.residue(b5)
    return M.residue(_central_value(p, W)), rhs


def _ev_granville(p):
    W = _eval_exponent(p, 5)
    M = make_modulus(p, W)
    central = M.residue(_central_value(p, W))
    big = 3 * M.residue(binomial._shifted_product_raw(p, 2, M.m))
    lhs = big * ((2 * central) ** 3).inverse()
    return lhs, M.embed(Fr(3, 8))


def _ev_sun_wan(p):
    W = _eval_exponent(p, 5)
    M = make_modulus(p, W)
    lhs = M.residue(binomial.exact_binomial(4 * p - 1, 2 * p - 1))
    rhs = M.residue(binomial.exact_binomial(4 * p, p) - 1)
    return lhs, rhs


def _ev_zhao_eq4(p):
    W = 5
    M = make_modulus(p, W)
    lhs = M.residue(binomial.exact_binomial(3 * p, p)) * M.residue(3).inverse()
    rhs = M.residue(1 + 6 * wolstenholme_quotient(p).w * p ** 3)
    return lhs, rhs


# --- harmonic-sum evaluators --------------------------------------------------

def _ev_lemma1(p):
    W = _eval_exponent(p, 4)
    R = _r_values(p, W)
    return _pair(p, W, 2 * R[1], -p * R[2])


def _ev_lemma2a(p):
    W = _eval_exponent(p, 5)
    R = _r_values(p, W)
    return _pair(p, W, _central_value(p, W), 1 + 2 * p * R[1])


def _ev_lemma2b(p):
    W = _eval_exponent(p, 5)
    R = _r_values(p, W)
    return _pair(p, W, _central_value(p, W), -(p * p) * R[2] + 1)


def _make_ev_lemma13(r: int):
    def evaluator(p, _r=r):
        W = _eval_exponent(p, _r + 1)
        R = _r_values(p, W)
        rhs = -sum(p ** i * R[i + 1] for i in range(1, _r + 1))
        return _pair(p, W, 2 * R[1], rhs)

    return evaluator


def _ev_eq19(p):
    W = _eval_exponent(p, 8)
    R = _r_values(p, W)
    rhs = -sum(p ** (i - 1) * R[i] for i in range(2, 7))
    return _pair(p, W, 2 * R[1], rhs)


def _ev_lemma12_iv(p):
    W = _eval_exponent(p, 4)
    M = make_modulus(p, W)
    R = _r_values(p, W)
    return M.residue(p * R[6]), -Fr(2, 5) * M.residue(R[5])


def _ev_lemma4_valuations(p):
    m3 = p ** 3
    R = _r_values(p, 3)
    ok = True
    for n in range(1, min(6, p - 3) + 1):
        need = 2 if n % 2 else 1
        value = R[n] % m3
        ok = ok and (value % p ** need == 0)
    return _indicator_pair(p, ok, True)


def _ev_lemma6_valuations(p):
    # The odd-n bound stops at p-3: H_{p-2} only reaches valuation 1
    # (H_5(7) = 7/240), so the induction from the R_n pattern ends there.
    H = _h_values(p, 3)
    ok = True
    for n in range(1, min(6, p - 3) + 1):
        need = 2 if n % 2 else 1
        ok = ok and (H[n] % p ** need == 0)
    return _indicator_pair(p, ok, True)


def _make_ev_lemma7(n: int, exponent: int):
    sign = 1 if n % 2 else -1

    def evaluator(p, _n=n, _sign=sign, _e=exponent):
        W = _eval_exponent(p, _e)
        M = make_modulus(p, W)
        R = _r_values(p, W)
        H = _h_values(p, W)
        return M.residue(R[_n]), M.residue(_sign * _n * H[_n])

    return evaluator


# --- Bernoulli-side evaluators ------------------------------------------------

def _ev_lemma12_i(p):
    W = 6
    M = make_modulus(p, W)
    b_big4 = M.residue(high_index_bernoulli(4, 2, p).value)
    b_big2 = M.residue(high_index_bernoulli(2, 4, p).value)
    b3 = M.residue(bernoulli_mod(p - 3, p, 1).value.value)
    b5 = M.residue(bernoulli_mod(p - 5, p, 1).value.value)
    rhs = -Fr(1, 2) * p ** 2 * b_big4 - Fr(1, 4) * p ** 4 * b_big2 \
        + Fr(1, 6) * p ** 5 * b3 + Fr(1, 20) * p ** 5 * b5
    return M.residue(_r_values(p, W)[1]), rhs


def _ev_lemma12_ii(p):
    W = _eval_exponent(p, 4, margin=2, cap=6)
    M = make_modulus(p, W)
    b = M.residue(high_index_bernoulli(4, 4, p).value)
    return M.residue(_r_values(p, W)[3]), -Fr(3, 2) * p ** 2 * b


def _ev_lemma12_iii(p):
    W = 5
    M = make_modulus(p, W)
    b = M.residue(high_index_bernoulli(4, 4, p).value)
    return M.residue(_r_values(p, W)[4]), p * b


def _ev_kummer_eq10(p):
    # source index p(p-1) + 4 reduces to 4 modulo phi(p^2)
    W = 4
    M = make_modulus(p, W)
    m = p * (p - 1) + 4
    lhs = M.residue(bernoulli_ratio(m, p, W).value)
    rhs = M.residue(bernoulli_ratio(4, p, W).value)
    return lhs, rhs


def _ev_kummer_eq11(p):
    # second difference of k -> B_{4+k(p-1)}/(4+k(p-1)), evaluated wide
    W = 4
    M = make_modulus(p, W)
    acc = M.residue(0)
    for k, coeff in ((0, 1), (1, -2), (2, 1)):
        acc = acc + coeff * M.residue(bernoulli_ratio(4 + k * (p - 1), p, W).value)
    return acc, M.residue(0)


def _make_ev_eq26(n: int, s: int):
    def evaluator(p, _n=n, _s=s):
        M = make_modulus(p, _n)
        big = p ** _n - p ** (_n - 1) - _s
        lhs = bernoulli_ratio(big, p, _n)
        rhs = M.residue(0)
        for k in range(1, _n + 1):
            coeff = (-1) ** (k + 1) * binomial.exact_binomial(_n, k)
            rhs = rhs + coeff * bernoulli_ratio(k * (p - 1) - _s, p, _n)
        return lhs, rhs

    return evaluator


# --- Wolstenholme-prime expansions --------------------------------------------

def _ev_prop1(p):
    W = _eval_exponent(p, 8)
    M = make_modulus(p, W)
    R = _r_values(p, W)
    rhs = M.residue(1)
    for n, sign in ((1, 1), (2, -1), (3, 1), (4, -1), (5, 1), (6, -1)):
        rhs = rhs + Fr(sign, n) * p ** n * M.residue(R[n])
    return M.residue(_central_value(p, W)), rhs


def _ev_prop2(p):
    W = _eval_exponent(p, 8)
    M = make_modulus(p, W)
    R = _r_values(p, W)
    rhs = 1 + Fr(3, 2) * p * M.residue(R[1]) - Fr(1, 4) * p ** 2 * M.residue(R[2]) \
        + Fr(7, 12) * p ** 3 * M.residue(R[3]) + Fr(5, 12) * p ** 5 * M.residue(R[5])
    return M.residue(_central_value(p, W)), rhs


def _ev_cor1_first(p):
    W = _eval_exponent(p, 7)
    R = _r_values(p, W)
    rhs = 1 - 2 * p * R[1] - 2 * p * p * R[2]
    return _pair(p, W, _central_value(p, W), rhs)


def _ev_cor1_second(p):
    W = _eval_exponent(p, 7)
    M = make_modulus(p, W)
    R = _r_values(p, W)
    rhs = 1 + 2 * p * M.residue(R[1]) + Fr(2, 3) * p ** 3 * M.residue(R[3])
    return M.residue(_central_value(p, W)), rhs


def _ev_cor2(p):
    W = 7
    M = make_modulus(p, W)
    b_big4 = M.residue(high_index_bernoulli(4, 2, p).value)
    b_big2 = M.residue(high_index_bernoulli(2, 4, p).value)
    b5 = M.residue(bernoulli_mod(p - 5, p, 1).value.value)
    rhs = 1 - p ** 3 * b_big4 - Fr(3, 2) * p ** 5 * b_big2 + Fr(3, 10) * p ** 6 * b5
    return M.residue(_central_value(p, W)), rhs


def _ev_cor3(p):
    W = 7
    M = make_modulus(p, W)
    b3 = M.residue(bernoulli_mod(p - 3, p, 4).value.value)
    b4 = M.residue(bernoulli_mod(2 * p - 4, p, 4).value.value)
    b5 = M.residue(bernoulli_mod(3 * p - 5, p, 4).value.value)
    b6 = M.residue(bernoulli_mod(4 * p - 6, p, 4).value.value)
    c5 = M.residue(bernoulli_mod(p - 5, p, 2).value.value)
    c6 = M.residue(bernoulli_mod(2 * p - 6, p, 2).value.value)
    rhs = (
        1
        - p ** 3 * (Fr(8, 3) * b3 - 3 * b4 + Fr(8, 5) * b5 - Fr(1, 3) * b6)
        - p ** 4 * (Fr(8, 9) * b3 - Fr(3, 2) * b4 + Fr(24, 25) * b5 - Fr(2, 9) * b6)
        - p ** 5 * (
            Fr(8, 27) * b3 - Fr(3, 4) * b4 + Fr(72, 125) * b5 - Fr(4, 27) * b6
            + Fr(12, 5) * c5 - c6
        )
        - p ** 6 * Fr(2, 25) * c5
    )
    return M.residue(_central_value(p, W)), rhs


def _ev_remark2(p):
    W = _eval_exponent(p, 8)
    M = make_modulus(p, W)
    R = _r_values(p, W)
    rhs = 1 + 2 * p * M.residue(R[1]) + Fr(5, 6) * p ** 3 * M.residue(R[3]) \
        + Fr(1, 4) * p ** 4 * M.residue(R[4]) + Fr(17, 30) * p ** 5 * M.residue(R[5])
    return M.residue(_central_value(p, W)), rhs


def _cor1_first_holds(p: int) -> bool:
    lhs, rhs = _ev_cor1_first(p)
    return (lhs - rhs).valuation() >= 7


def cor4_equivalence(p: int) -> bool:
    """Wolstenholme-prime status and the mod-p^7 two-sum congruence agree."""
    if p < 11:
        raise ValueError("defined for primes p >= 11")
    return binomial.is_wolstenholme_prime(p) == _cor1_first_holds(p)


def _ev_cor4_iff(p):
    return _indicator_pair(
        p, binomial.is_wolstenholme_prime(p), _cor1_first_holds(p)
    )


def _entries() -> list[CongruenceCheck]:
    A, W_ONLY = Scope.ALL_PRIMES, Scope.WOLSTENHOLME_ONLY
    entries = [
        CongruenceCheck(
            "wolstenholme_thm",
            "C(2p-1,p-1) = 1 (mod p^3)",
            "Wolstenholme 1862", 5, A, 3, _ev_wolstenholme_thm),
        CongruenceCheck(
            "glaisher_p4",
            "C(2p-1,p-1) = 1 - (2/3) p^3 B_{p-3} (mod p^4)",
            "Glaisher 1900", 7, A, 4, _ev_glaisher),
        CongruenceCheck(
            "lehmer_p3",
            "R_1 = -(1/3) p^2 B_{p-3} (mod p^3)",
            "E. Lehmer 1938", 7, A, 3, _ev_lehmer),
        CongruenceCheck(
            "helou_terjanian_p6",
            "C(2p-1,p-1) = 1 - p^3 B_{p^3-p^2-2} + (1/3) p^5 B_{p-3}"
            " - (6/5) p^5 B_{p-5} (mod p^6)",
            "Helou-Terjanian 2008", 11, A, 6, _ev_helou_terjanian),
        CongruenceCheck(
            "granville_p5",
            "C(3p,2p)/C(2p,p)^3 = C(3,2)/C(2,1)^3 (mod p^5)",
            "Granville 1997", 7, A, 5, _ev_granville),
        CongruenceCheck(
            "sun_wan_p5",
            "C(4p-1,2p-1) = C(4p,p) - 1 (mod p^5)",
            "Sun-Wan 2008", 7, A, 5, _ev_sun_wan,
            max_prime=binomial.SUN_WAN_PRIME_CAP),
        CongruenceCheck(
            "zhao_eq4_p5",
            "C(3p,p)/C(3,1) = 1 + 6 w_p p^3 (mod p^5)",
            "Zhao 2007", 7, A, 5, _ev_zhao_eq4,
            max_prime=binomial.ORACLE_CAP // 3),
        CongruenceCheck(
            "lemma1_p4",
            "2 R_1 = -p R_2 (mod p^4)",
            "Zhao 2007", 7, A, 4, _ev_lemma1),
        CongruenceCheck(
            "lemma2a_p5",
            "C(2p-1,p-1) = 1 + 2p R_1 (mod p^5)",
            "Zhao 2007", 7, A, 5, _ev_lemma2a),
        CongruenceCheck(
            "lemma2b_p5",
            "C(2p-1,p-1) = 1 - p^2 R_2 (mod p^5)",
            "Zhao 2007; McIntosh 1995", 7, A, 5, _ev_lemma2b),
        CongruenceCheck(
            "lemma12_i_p6",
            "R_1 = -(1/2) p^2 B_{p^4-p^3-2} - (1/4) p^4 B_{p^2-p-4}"
            " + (1/6) p^5 B_{p-3} + (1/20) p^5 B_{p-5} (mod p^6)",
            "power-sum expansion with Kummer reduction", 11, A, 6, _ev_lemma12_i),
        CongruenceCheck(
            "lemma12_ii_p4",
            "R_3 = -(3/2) p^2 B_{p^4-p^3-4} (mod p^4)",
            "power-sum expansion with Kummer reduction", 11, A, 4, _ev_lemma12_ii),
        CongruenceCheck(
            "lemma12_iii_p3",
            "R_4 = p B_{p^4-p^3-4} (mod p^3)",
            "power-sum expansion with Kummer reduction", 11, A, 3, _ev_lemma12_iii),
        CongruenceCheck(
            "lemma12_iv_p4",
            "p R_6 = -(2/5) R_5 (mod p^4)",
            "power-sum expansion with Kummer reduction", 11, A, 4, _ev_lemma12_iv),
        CongruenceCheck(
            "eq19_p8",
            "2 R_1 = -(p R_2 + p^2 R_3 + p^3 R_4 + p^4 R_5 + p^5 R_6) (mod p^8)",
            "telescoped inverse-pair identity", 11, A, 8, _ev_eq19),
        CongruenceCheck(
            "prop1_p8",
            "C(2p-1,p-1) = 1 + sum((-1)^(n-1) (p^n/n) R_n, n=1..6) (mod p^8)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 8, _ev_prop1),
        CongruenceCheck(
            "prop2_p8",
            "C(2p-1,p-1) = 1 + (3p/2) R_1 - (p^2/4) R_2 + (7p^3/12) R_3"
            " + (5p^5/12) R_5 (mod p^8)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 8, _ev_prop2),
        CongruenceCheck(
            "cor1_first_p7",
            "C(2p-1,p-1) = 1 - 2p R_1 - 2p^2 R_2 (mod p^7)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 7, _ev_cor1_first),
        CongruenceCheck(
            "cor1_second_p7",
            "C(2p-1,p-1) = 1 + 2p R_1 + (2/3) p^3 R_3 (mod p^7)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 7, _ev_cor1_second),
        CongruenceCheck(
            "cor2_p7",
            "C(2p-1,p-1) = 1 - p^3 B_{p^4-p^3-2} - (3/2) p^5 B_{p^2-p-4}"
            " + (3/10) p^6 B_{p-5} (mod p^7)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 7, _ev_cor2),
        CongruenceCheck(
            "cor3_p7",
            "C(2p-1,p-1) in low-index Bernoulli numbers B_{p-3}, B_{2p-4},"
            " B_{3p-5}, B_{4p-6}, B_{p-5}, B_{2p-6} (mod p^7)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 7, _ev_cor3),
        CongruenceCheck(
            "cor4_iff",
            "Wolstenholme-prime status iff the mod-p^7 two-sum congruence",
            "Wolstenholme-prime characterization", 11, A, 1, _ev_cor4_iff),
        CongruenceCheck(
            "remark2_p8",
            "C(2p-1,p-1) = 1 + 2p R_1 + (5p^3/6) R_3 + (p^4/4) R_4"
            " + (17p^5/30) R_5 (mod p^8)",
            "Wolstenholme-prime expansion", 11, W_ONLY, 8, _ev_remark2),
        CongruenceCheck(
            "lemma4_valuations",
            "v_p(R_n) >= 2 for odd n, >= 1 for even n (n <= min(6, p-3))",
            "Bayat 1997", 7, A, 1, _ev_lemma4_valuations),
        CongruenceCheck(
            "lemma6_valuations",
            "v_p(H_n) >= 2 for odd n, >= 1 for even n (n <= min(6, p-3))",
            "Newton-identity induction", 7, A, 1, _ev_lemma6_valuations),
        CongruenceCheck(
            "kummer_eq10",
            "B_m/m = B_n/n (mod p^2) for m = p(p-1)+4, n = 4",
            "Kummer 1851", 7, A, 2, _ev_kummer_eq10),
        CongruenceCheck(
            "kummer_eq11",
            "sum((-1)^k C(2,k) B_{4+k(p-1)}/(4+k(p-1)), k=0..2) = 0 (mod p^2)",
            "Kummer 1851", 7, A, 2, _ev_kummer_eq11),
        CongruenceCheck(
            "eq26_n2_s4",
            "B_{p^2-p-4}/(p^2-p-4) = 2 B_{p-5}/(p-5) - B_{2p-6}/(2p-6) (mod p^2)",
            "Helou-Terjanian 2008", 11, A, 2, _make_ev_eq26(2, 4)),
        CongruenceCheck(
            "eq26_n4_s2",
            "B_{p^4-p^3-2}/(p^4-p^3-2) = sum((-1)^(k+1) C(4,k)"
            " B_{k(p-1)-2}/(k(p-1)-2), k=1..4) (mod p^4)",
            "Helou-Terjanian 2008", 11, A, 4, _make_ev_eq26(4, 2)),
    ]
    for r in range(1, 6):
        entries.append(CongruenceCheck(
            f"lemma13_r{r}",
            f"2 R_1 = -sum(p^i R_(i+1), i=1..{r}) (mod p^{r + 1})",
            "telescoped inverse-pair identity", 3, A, r + 1, _make_ev_lemma13(r)))
    for n, exponent in ((2, 6), (3, 5), (4, 4), (5, 4), (6, 3)):
        sign = "" if n % 2 else "-"
        entries.append(CongruenceCheck(
            f"lemma7_n{n}",
            f"R_{n} = {sign}{n} H_{n} (mod p^{exponent})",
            "Newton-identity consequences at Wolstenholme primes",
            11, Scope.WOLSTENHOLME_ONLY, exponent, _make_ev_lemma7(n, exponent)))
    entries.sort(key=lambda c: c.id)
    return entries


@lru_cache(maxsize=1)
def registry() -> tuple[CongruenceCheck, ...]:
    """The immutable registry of all named congruence checks."""
    return tuple(_entries())


@lru_cache(maxsize=1)
def _by_id() -> dict:
    return {c.id: c for c in registry()}


def lookup(check_id: str) -> CongruenceCheck:
    try:
        return _by_id()[check_id]
    except KeyError:
        raise UnknownCheck(check_id) from None


def _skipped(check: CongruenceCheck, p: int, reason: str) -> CheckOutcome:
    return CheckOutcome(
        check_id=check.id, p=p, modulus_exponent=check.modulus_exponent,
        lhs=None, rhs=None, residual_valuation=None, passed=False,
        skipped=True, reason=reason, elapsed_ns=0)


def run_check(check_id: str, p: int) -> CheckOutcome:
    """Evaluate one check at one prime, honoring the applicability gates."""
    check = lookup(check_id)
    if not is_prime(p):
        return _skipped(check, p, "not prime")
    if p < check.min_prime:
        return _skipped(check, p, f"below minimum prime {check.min_prime}")
    if check.max_prime is not None and p > check.max_prime:
        return _skipped(check, p, f"beyond exact-oracle bound {check.max_prime}")
    if check.scope is Scope.WOLSTENHOLME_ONLY and not binomial.is_wolstenholme_prime(p):
        return _skipped(check, p, "not a Wolstenholme prime")
    start = time.perf_counter_ns()
    try:
        lhs, rhs = check.evaluator(p)
    except Exception as exc:  # failures are data, not suite aborts
        return CheckOutcome(
            check_id=check.id, p=p, modulus_exponent=check.modulus_exponent,
            lhs=None, rhs=None, residual_valuation=None, passed=False,
            skipped=False, reason=f"error: {exc}",
            elapsed_ns=time.perf_counter_ns() - start)
    residual = (lhs - rhs).valuation()
    return CheckOutcome(
        check_id=check.id, p=p, modulus_exponent=check.modulus_exponent,
        lhs=str(lhs.value), rhs=str(rhs.value), residual_valuation=residual,
        passed=residual >= check.modulus_exponent, skipped=False, reason=None,
        elapsed_ns=time.perf_counter_ns() - start)


def _suite_worker(args: tuple[int, tuple[str, ...]]) -> list[CheckOutcome]:
    p, ids = args
    return [run_check(check_id, p) for check_id in ids]


def run_suite(
    ids: Sequence[str],
    primes: Iterable[int],
    parallelism: int = 1,
) -> Iterator[CheckOutcome]:
    """Outcomes for every (prime, check) pair, ordered by prime then id.

    The order is deterministic regardless of parallelism, and evaluation
    errors surface as failed outcomes rather than stopping the stream.
    """
    ids = tuple(sorted(ids))
    for check_id in ids:
        lookup(check_id)
    jobs = ((p, ids) for p in primes)
    if parallelism <= 1:
        for job in jobs:
            yield from _suite_worker(job)
        return
    import multiprocessing

    with multiprocessing.get_context("fork").Pool(parallelism) as pool:
        for outcomes in pool.imap(_suite_worker, jobs, chunksize=4):
            yield from outcomes


def all_check_ids() -> list[str]:
    return [c.id for c in registry()]

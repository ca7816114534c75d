"""
cyclo.py

사이클로토믹 체인 링 O_{s,N} = Z[ζ_{p^s}]/(p^N) 의 정확한 산술
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy


class RingError(ValueError):
    """링 파라미터 오류 또는 서로 다른 링의 원소 혼합"""


class DivisionError(ArithmeticError):
    """π-valuation 장애로 인해 정확한 나눗셈이 불가능한 경우"""


_ARITHMETIC_CACHES: List[Any] = []


def cached(fn):
    """곱셈 결과에 의존하는 lru_cache (clear_caches 로 함께 비워짐)"""
    wrapped = lru_cache(maxsize=None)(fn)
    _ARITHMETIC_CACHES.append(wrapped)
    return wrapped


def clear_caches():
    """cached 로 등록된 모든 캐시 비우기 (mul 을 바꾸기 전후에 호출)"""
    for fn in _ARITHMETIC_CACHES:
        fn.cache_clear()


@dataclass(frozen=True)
class RingSpec:
    """
    O_{s,N} = Z[x]/(Φ_{p^s}(x), p^N) 의 파라미터

    x 는 ζ_{p^s}, 균등화 원소는 π = x − 1, ε = ζ_p − 1 = x^{p^{s-1}} − 1.
    """

    p: int
    s: int
    N: int

    def __post_init__(self):
        if self.s < 1 or self.N < 1:
            raise RingError(f"s, N must be >= 1 (got s={self.s}, N={self.N})")
        if self.p == 2:
            raise RingError("p = 2 is not supported")
        if not sympy.isprime(self.p):
            raise RingError(f"p must be an odd prime (got {self.p})")

    @property
    def e(self) -> int:
        """분기 지수 e_s = p^{s-1}(p-1) (= 계수 벡터 길이)"""
        return self.p ** (self.s - 1) * (self.p - 1)

    @property
    def block(self) -> int:
        return self.p ** (self.s - 1)

    @property
    def order(self) -> int:
        return self.p ** self.s

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def max_val(self) -> int:
        """0 이 아닌 원소의 valuation 은 항상 max_val 미만"""
        return self.N * self.e

    def boosted(self, guard: int) -> "RingSpec":
        return RingSpec(self.p, self.s, self.N + guard)

    def with_precision(self, N: int) -> "RingSpec":
        return RingSpec(self.p, self.s, N)

    def to_json(self) -> Dict[str, int]:
        return {"p": self.p, "s": self.s, "N": self.N}


@dataclass(frozen=True)
class _RingTables:
    phi: Tuple[int, ...]
    # π^{e} = p·w 의 단원 w (x-기저, 축약 전 정수 계수)
    w: Tuple[int, ...]


@lru_cache(maxsize=None)
def _tables(p: int, s: int) -> _RingTables:
    X = sympy.Symbol("x")
    e = p ** (s - 1) * (p - 1)
    phi_poly = sympy.Poly(sympy.cyclotomic_poly(p ** s, X), X)
    phi = tuple(int(c) for c in reversed(phi_poly.all_coeffs()))

    block = p ** (s - 1)
    expected = [0] * (e + 1)
    for j in range(p):
        expected[j * block] = 1
    if list(phi) != expected:
        raise RingError(f"unexpected cyclotomic polynomial for p^s = {p ** s}")

    shifted = sympy.Poly(phi_poly.as_expr().subs(X, X + 1), X)
    f = [int(c) for c in reversed(shifted.all_coeffs())]
    if f[0] != p or any(c % p for c in f[:e]):
        raise RingError("Φ(y+1) is not Eisenstein")

    # w = −Σ_{j<e} (f_j/p)(x−1)^j
    w = [0] * e
    for j in range(e):
        h = f[j] // p
        if not h:
            continue
        for i in range(j + 1):
            w[i] -= h * math.comb(j, i) * (-1) ** (j - i)
    return _RingTables(phi=phi, w=tuple(w))


@lru_cache(maxsize=None)
def make_ring(p: int, s: int, N: int) -> RingSpec:
    """
    RingSpec 생성 (Φ_{p^s} 축약 테이블 사전 계산 포함)

    Args:
        p: 홀수 소수
        s: 사이클로토믹 레벨
        N: p-진 정밀도

    Returns:
        RingSpec
    """
    ring = RingSpec(p, s, N)
    _tables(p, s)
    return ring


def _reduce(ring: RingSpec, values: Sequence[int]) -> Tuple[int, ...]:
    e, b, order, mod = ring.e, ring.block, ring.order, ring.modulus
    if len(values) > order:
        acc = [0] * order
        for i, c in enumerate(values):
            acc[i % order] += c
    else:
        acc = list(values)
        if len(acc) < e:
            acc.extend([0] * (e - len(acc)))

    # x^e = −Σ_{j=0}^{p-2} x^{j·p^{s-1}}
    for k in range(len(acc) - 1, e - 1, -1):
        c = acc[k]
        if c:
            acc[k] = 0
            base = k - e
            for j in range(ring.p - 1):
                acc[base + j * b] -= c
    return tuple(c % mod for c in acc[:e])


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("v_p(0) is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(p: int, n: int) -> int:
    """Legendre 공식으로 v_p(n!)"""
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


@dataclass(frozen=True)
class CycloElem:
    """
    O_{s,N} 의 원소 (x-기저 계수, 길이 e_s, 각 계수 ∈ [0, p^N))

    reliable 은 이 값이 적분적 진실과 일치함이 보장되는 π-단계 수이며
    None 이면 전체 정밀도 N·e_s 를 의미한다. 동등성 비교에서는 제외된다.
    """

    ring: RingSpec
    coeffs: Tuple[int, ...]
    reliable: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != self.ring.e:
            raise RingError(f"expected {self.ring.e} coefficients, got {len(self.coeffs)}")

    # ----- 생성자 -----

    @classmethod
    def from_poly(cls, ring: RingSpec, values: Iterable[int]) -> "CycloElem":
        return cls(ring, _reduce(ring, list(values)))

    @classmethod
    def from_int(cls, ring: RingSpec, n: int) -> "CycloElem":
        coeffs = [0] * ring.e
        coeffs[0] = n % ring.modulus
        return cls(ring, tuple(coeffs))

    @classmethod
    def zero(cls, ring: RingSpec) -> "CycloElem":
        return cls(ring, (0,) * ring.e)

    @classmethod
    def one(cls, ring: RingSpec) -> "CycloElem":
        return cls.from_int(ring, 1)

    @classmethod
    def monomial(cls, ring: RingSpec, k: int, c: int = 1) -> "CycloElem":
        values = [0] * (k % ring.order + 1)
        values[k % ring.order] = c
        return cls.from_poly(ring, values)

    # ----- 정밀도 -----

    @property
    def precision(self) -> int:
        return self.ring.max_val if self.reliable is None else self.reliable

    def _tag(self, rel: int) -> Optional[int]:
        rel = max(0, min(rel, self.ring.max_val))
        return None if rel >= self.ring.max_val else rel

    def with_reliable(self, rel: Optional[int]) -> "CycloElem":
        return CycloElem(self.ring, self.coeffs, None if rel is None else self._tag(rel))

    def lift(self, ring: RingSpec) -> "CycloElem":
        """균형 대표원 (−p^N/2, p^N/2] 을 적분 원소로 보고 정밀도가 더 높은 링으로 올림"""
        self._check_level(ring)
        mod, half = self.ring.modulus, self.ring.modulus // 2
        return CycloElem(ring, tuple((c - mod if c > half else c) % ring.modulus for c in self.coeffs))

    def reduce_to(self, ring: RingSpec) -> "CycloElem":
        self._check_level(ring)
        return CycloElem(ring, tuple(c % ring.modulus for c in self.coeffs))

    def _check_level(self, ring: RingSpec):
        if ring.p != self.ring.p or ring.s != self.ring.s:
            raise RingError("ring level mismatch")

    # ----- 산술 -----

    def _coerce(self, other: Union["CycloElem", int]) -> "CycloElem":
        if isinstance(other, int):
            return CycloElem.from_int(self.ring, other)
        if other.ring != self.ring:
            raise RingError(f"mismatched rings: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        mod = self.ring.modulus
        coeffs = tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs))
        return CycloElem(self.ring, coeffs, self._tag(min(self.precision, other.precision)))

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.modulus
        return CycloElem(self.ring, tuple((-a) % mod for a in self.coeffs), self.reliable)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            mod = self.ring.modulus
            return CycloElem(self.ring, tuple((a * other) % mod for a in self.coeffs), self.reliable)
        other = self._coerce(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycloElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloElem.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ----- 판정 -----

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def residue(self) -> int:
        """O/π ≅ F_p 로의 상 (x ≡ 1 mod π)"""
        return sum(self.coeffs) % self.ring.p

    def is_unit(self) -> bool:
        return self.residue() != 0

    @cached_property
    def valuation(self) -> int:
        return pi_valuation(self)

    def inverse(self) -> "CycloElem":
        """Hensel/Newton 반복으로 단원의 역원 계산"""
        r0 = self.residue()
        if r0 == 0:
            raise DivisionError("element is not a unit")
        one = CycloElem.one(self.ring)
        two = CycloElem.from_int(self.ring, 2)
        v = CycloElem.from_int(self.ring, pow(r0, -1, self.ring.p))
        for _ in range(self.ring.max_val.bit_length() + 2):
            if self * v == one:
                break
            v = v * (two - self * v)
        if self * v != one:
            raise DivisionError("Newton iteration for the inverse did not converge")
        return CycloElem(self.ring, v.coeffs, self.reliable)

    # ----- 직렬화 -----

    def to_json(self) -> Dict[str, Any]:
        data = {**self.ring.to_json(), "coeffs": list(self.coeffs)}
        if self.reliable is not None:
            data["reliable"] = self.reliable
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CycloElem":
        ring = make_ring(int(data["p"]), int(data["s"]), int(data["N"]))
        return cls(ring, tuple(int(c) % ring.modulus for c in data["coeffs"]), data.get("reliable"))

    def __repr__(self) -> str:
        return f"CycloElem(p={self.ring.p}, s={self.ring.s}, N={self.ring.N}, {list(self.coeffs)})"


def mul(a: CycloElem, b: CycloElem) -> CycloElem:
    """정규형 곱"""
    if a.ring != b.ring:
        raise RingError(f"mismatched rings: {a.ring} vs {b.ring}")
    ring = a.ring
    prod = [0] * (2 * ring.e - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
    rel = min(a.precision, b.precision)
    return CycloElem(ring, _reduce(ring, prod), a._tag(rel))


def pi_valuation(a: CycloElem) -> int:
    """
    π-valuation (a 가 π^k 로 나누어지는 최대 k)

    0 은 N·e_s ("적어도 N·e_s") 를 반환한다.
    """
    ring = a.ring
    mod, e = ring.modulus, ring.e
    best = ring.max_val
    # x = y + 1 로 테일러 이동 후 π-기저 계수의 p-진 valuation 을 읽는다
    for j in range(e):
        if j >= best:
            break
        c = sum(a_i * math.comb(i, j) for i, a_i in enumerate(a.coeffs) if a_i and i >= j) % mod
        if c:
            best = min(best, e * _vp(c, ring.p) + j)
    return best


def unit_part(a: CycloElem) -> Tuple[int, CycloElem]:
    """a = π^k·u 분해 (u 는 단원, a ≠ 0)"""
    if a.is_zero():
        raise DivisionError("zero has no unit part")
    k = a.valuation
    return k, divide_by_pi_power(a, k)


def uniformizer(ring: RingSpec) -> CycloElem:
    return CycloElem.from_poly(ring, [-1, 1])


def epsilon(ring: RingSpec) -> CycloElem:
    """ε = ζ_p − 1"""
    return CycloElem.monomial(ring, ring.block) - 1


def _w_unit(ring: RingSpec) -> CycloElem:
    return CycloElem.from_poly(ring, _tables(ring.p, ring.s).w)


@cached
def _pi_shift_factor(ring: RingSpec, t: int, q: int) -> CycloElem:
    # π^t·w^{-q}
    return (uniformizer(ring) ** t) * (_w_unit(ring).inverse() ** q)


def divide_by_pi_power(a: CycloElem, k: int) -> CycloElem:
    """
    π^k·c = a 를 만족하는 c 계산

    π^{e} = p·w 를 이용해 a·π^{t}·w^{-q} 를 p^{q} 로 나눈다
    (q = ⌈k/e⌉, t = q·e − k). 정밀도 N+q 에서 계산 후 N 으로 축약.
    """
    ring = a.ring
    if k == 0:
        return a
    if k < 0:
        raise DivisionError("negative π-power")
    if a.is_zero():
        return CycloElem(ring, a.coeffs, a._tag(a.precision - k))
    q = -(-k // ring.e)
    t = q * ring.e - k
    if q > ring.N:
        raise DivisionError(f"π^{k} exceeds the ring precision")
    hi = ring.boosted(q)
    num = a.lift(hi) * _pi_shift_factor(hi, t, q)
    pq = ring.p ** q
    if any(c % pq for c in num.coeffs):
        raise DivisionError(f"π^{k} does not divide element of valuation {a.valuation}")
    coeffs = tuple((c // pq) % ring.modulus for c in num.coeffs)
    return CycloElem(ring, coeffs, a._tag(a.precision - k))


def exact_div(a: CycloElem, b: CycloElem) -> CycloElem:
    """
    b·c = a 인 c 계산 (유한 링 나눗셈, 신뢰 정밀도 기록)

    Args:
        a: 피제수
        b: 제수 (0 이 아님, val(b) ≤ val(a))

    Returns:
        c (reliable = min(rel(a) − k, rel(b) − 2k + val(a)), k = val(b))
    """
    if a.ring != b.ring:
        raise RingError(f"mismatched rings: {a.ring} vs {b.ring}")
    if b.is_zero():
        raise DivisionError("division by zero")
    kb, ka = b.valuation, a.valuation
    if ka < kb:
        raise DivisionError(f"valuation obstruction: val(a)={ka} < val(b)={kb}")
    unit = divide_by_pi_power(b, kb).with_reliable(None)
    c = divide_by_pi_power(a.with_reliable(None), kb) * unit.inverse()
    rel = min(a.precision - kb, b.precision - 2 * kb + ka, a.ring.max_val - kb)
    return CycloElem(c.ring, c.coeffs, c._tag(rel))


def divide_integer_exact(num: CycloElem, m: int, ring: RingSpec) -> CycloElem:
    """
    정밀도를 올려 계산한 적분 원소 num 을 정수 m 으로 정확히 나누고 ring 으로 축약

    num.ring 의 정밀도는 ring.N + v_p(m) 이상이어야 한다.
    """
    v = _vp(m, ring.p)
    if num.ring.N < ring.N + v:
        raise DivisionError("insufficient working precision for exact division")
    pv = ring.p ** v
    if any(c % pv for c in num.coeffs):
        raise DivisionError(f"element is not divisible by p^{v}")
    unit_inv = pow(m // pv, -1, ring.modulus)
    return CycloElem(ring, tuple(((c // pv) * unit_inv) % ring.modulus for c in num.coeffs))


def divided_power(a: CycloElem, n: int) -> CycloElem:
    """
    a^{[n]} = a^n / n! (a 의 대표원을 정확한 적분 원소로 취급)
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    ring = a.ring
    hi = ring.boosted(vp_factorial(ring.p, n))
    return divide_integer_exact(a.lift(hi) ** n, math.factorial(n), ring)


def divided_power_quotient(a: CycloElem, n: int) -> CycloElem:
    """a^{[n+1]}/a = a^n/(n+1)! (적분성은 val(a) ≥ val(ε) 에서 성립)"""
    if n < 0:
        raise ValueError("n must be >= 0")
    ring = a.ring
    hi = ring.boosted(vp_factorial(ring.p, n + 1))
    return divide_integer_exact(a.lift(hi) ** n, math.factorial(n + 1), ring)


@cached
def divided_power_epsilon(ring: RingSpec, n: int) -> CycloElem:
    """ε^{[n]} = (ζ_p − 1)^n / n! 의 정확한 값"""
    return divided_power(epsilon(ring), n)


@cached
def epsilon_quotient(ring: RingSpec, n: int) -> CycloElem:
    """ε^{[n+1]}/ε"""
    return divided_power_quotient(epsilon(ring), n)


def as_weight(alpha: Union[Fraction, int, str]) -> Fraction:
    value = Fraction(alpha)
    return value - math.floor(value)


def weight_level(p: int, alpha: Union[Fraction, int, str]) -> int:
    """ζ^α 가 사는 최소 레벨 (α = q/p^k 의 k, α = 0 이면 1)"""
    value = as_weight(alpha)
    den = value.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if den != 1:
        raise RingError(f"weight {alpha} does not have a p-power denominator")
    return max(k, 1)


def zeta_power(ring: RingSpec, alpha: Union[Fraction, int, str]) -> CycloElem:
    """
    ζ^α = ζ_{p^k}^q (α = q/p^k), 레벨 s ≥ k 의 링에 매장

    Args:
        ring: 대상 링
        alpha: Z[1/p] 의 가중치 (mod 1 로 정규화)

    Returns:
        ζ^α
    """
    value = as_weight(alpha)
    k = weight_level(ring.p, value)
    if value == 0:
        return CycloElem.one(ring)
    if k > ring.s:
        raise RingError(f"weight {value} needs level {k} > {ring.s}")
    exponent = value.numerator * ring.p ** (ring.s - k)
    return CycloElem.monomial(ring, exponent)


def elements_of(ring: RingSpec) -> Iterable[CycloElem]:
    """유한 링의 모든 원소 열거 (작은 링에서의 전수 검사용)"""
    mod = ring.modulus
    total = mod ** ring.e
    for idx in range(total):
        coeffs = []
        for _ in range(ring.e):
            idx, c = divmod(idx, mod)
            coeffs.append(c)
        yield CycloElem(ring, tuple(coeffs))

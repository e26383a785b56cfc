"""
convex 영역의 Poincare / Poincare-Friedrichs 상수

스칼라 함수(gradient)와 k-form (regularized Poincare/Bogovskii 연산자 노름) 모두
지름 delta 와 부피만으로 결정되는 closed-form 상수입니다.
"""
import math

from scipy.special import comb, gamma

from app.exceptions import DegreeOutOfRange, ExponentOutOfRange
from app.models.constants import ConstantValue


class ConvexConstants:
    """
    convex 영역 상수 모음

    p = inf 는 math.inf 로 표현하며, x^{1/inf} = 1 로 약속합니다.
    """

    @staticmethod
    def efnt_constant(p: float) -> float:
        """
        p 에만 의존하는 최적 gradient 상수 (1 < p < inf)

        p sin(pi/p) / (2 pi (p-1)^{1/p})

        Raises:
            ExponentOutOfRange: p = 1 또는 p = inf (convex_pf_gradient 사용)
        """
        if not (1.0 < p < math.inf):
            raise ExponentOutOfRange(
                f"efnt constant needs 1 < p < inf, got {p}", {"p": p}
            )
        return p * math.sin(math.pi / p) / (2.0 * math.pi * (p - 1.0) ** (1.0 / p))

    @staticmethod
    def convex_pf_gradient(p: float, delta: float) -> ConstantValue:
        """
        convex 영역 gradient PF 상수

        Args:
            p: Lebesgue 지수 (1 <= p <= inf)
            delta: 영역 지름

        Returns:
            delta/2 (p=1), C_EFNT,p * delta (1<p<inf), delta (p=inf)
        """
        if p < 1.0:
            raise ExponentOutOfRange(f"p must be >= 1, got {p}", {"p": p})
        if p == 1.0:
            return ConstantValue(
                value=delta / 2.0, formula_id="convex.gradient.l1", assumptions=["convex"]
            )
        if math.isinf(p):
            return ConstantValue(
                value=delta, formula_id="convex.gradient.linf", assumptions=["convex"]
            )
        return ConstantValue(
            value=ConvexConstants.efnt_constant(p) * delta,
            formula_id="convex.gradient.efnt",
            assumptions=["convex"],
        )

    @staticmethod
    def chua_wheeden_bound(p: float) -> float:
        """Poincare 상수의 p 의존 상한 2 (p/2)^{1/p} (1 <= p < inf)"""
        if not (1.0 <= p < math.inf):
            raise ExponentOutOfRange(f"Chua-Wheeden bound needs 1 <= p < inf, got {p}")
        return 2.0 * (p / 2.0) ** (1.0 / p)

    @staticmethod
    def pf_vs_poincare_factor(p: float) -> float:
        """PF 상수와 Poincare 상수 사이 인자 2^{|2/p - 1|}"""
        if p < 1.0:
            raise ExponentOutOfRange(f"p must be >= 1, got {p}")
        inv = 0.0 if math.isinf(p) else 1.0 / p
        return 2.0 ** abs(2.0 * inv - 1.0)

    @staticmethod
    def _check_degree(n: int, k: int) -> None:
        if not 1 <= k <= n:
            raise DegreeOutOfRange(f"degree k={k} outside 1..{n}", {"n": n, "k": k})

    @staticmethod
    def poincare_op_constant(n: int, k: int) -> float:
        """C_P(n,k) = sum_{l=0}^{n-k} binom(n-k, l) / ((n-l)(l+1))"""
        ConvexConstants._check_degree(n, k)
        return float(sum(
            comb(n - k, ell, exact=True) / ((n - ell) * (ell + 1)) for ell in range(n - k + 1)
        ))

    @staticmethod
    def bogovskii_op_constant(n: int, k: int) -> float:
        """C_B(n,k) = sum_{l=0}^{k-1} binom(k-1, l) / ((n-l)(l+1))"""
        ConvexConstants._check_degree(n, k)
        return float(sum(
            comb(k - 1, ell, exact=True) / ((n - ell) * (ell + 1)) for ell in range(k)
        ))

    @staticmethod
    def sphere_area(n: int) -> float:
        """단위 구면 S^{n-1} 의 (n-1)차원 부피 2 pi^{n/2} / Gamma(n/2)"""
        if n < 1:
            raise ValueError(f"sphere_area needs n >= 1, got {n}")
        return float(2.0 * math.pi ** (n / 2.0) / gamma(n / 2.0))

    @staticmethod
    def convex_pf_kform(
        n: int, k: int, p: float, delta: float, volume: float, variant: str = "poincare"
    ) -> ConstantValue:
        """
        convex 영역 k-form PF 상수 (p 무관)

        C_{P|B}(n,k) * vol(S^{n-1}) * delta^{n+1} / vol

        Args:
            n: 차원
            k: form degree (1..n)
            p: Lebesgue 지수 (값에 영향 없음, 기록용)
            delta: 지름
            volume: 부피
            variant: "poincare" | "bogovskii"
        """
        if variant == "poincare":
            op = ConvexConstants.poincare_op_constant(n, k)
        elif variant == "bogovskii":
            op = ConvexConstants.bogovskii_op_constant(n, k)
        else:
            raise ValueError(f"unknown variant: {variant}")
        value = op * ConvexConstants.sphere_area(n) * delta ** (n + 1) / volume
        return ConstantValue(
            value=value,
            formula_id=f"convex.kform.{variant}",
            assumptions=["convex", f"k={k}", "p-independent"],
        )

    @staticmethod
    def hilbert_div_constant(delta: float) -> ConstantValue:
        """divergence (top degree) 의 p=2 상수: Friedrichs 부등식으로 delta"""
        return ConstantValue(
            value=delta,
            formula_id="convex.div.hilbert",
            assumptions=["convex", "p=2 only", "top degree only"],
        )

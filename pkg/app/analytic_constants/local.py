"""
단일 simplex / face patch 의 국소 상수

- mixed boundary condition (일부 face 에서만 경계조건) gradient 및 k-form 상수
- face 를 공유하는 두 셀 합집합의 gradient Poincare 상수
"""
import math
from typing import Sequence

import numpy as np

from app.analytic_constants.convex import ConvexConstants
from app.config import settings
from app.exceptions import DegreeOutOfRange, ModeExponentMismatch, NotFaceNeighbors
from app.models.constants import ConstantValue
from app.models.mesh import SimplexGeometry
from app.utils.linalg import diameter, hull_volume, lp_power, reciprocal, simplex_volume
from app.utils.logger import log


class LocalConstants:
    """simplex 단위 국소 상수"""

    @staticmethod
    def mixed_bc_gradient_constant(
        geometry: SimplexGeometry, p: float, improved: bool = True
    ) -> ConstantValue:
        """
        face 하나에 경계조건이 있는 simplex 의 gradient 상수

        Args:
            geometry: 셀 기하량
            p: Lebesgue 지수
            improved: p=2 에서 delta/pi 개선값 사용

        Returns:
            p^{-1/p} delta (p < inf), delta (p = inf), p=2 개선 시 delta/pi
        """
        delta = geometry.diameter
        generic = delta if math.isinf(p) else p ** (-1.0 / p) * delta
        if improved and p == 2.0:
            return ConstantValue(
                value=delta / math.pi,
                formula_id="mixed_bc.gradient.hilbert",
                assumptions=["p=2", "hilbert improvement"],
                alternatives={"generic": generic},
            )
        return ConstantValue(value=generic, formula_id="mixed_bc.gradient.generic")

    @staticmethod
    def mixed_bc_kform_constant(
        geometry: SimplexGeometry, ell: int, k: int, p: float, mode: str = "proved"
    ) -> ConstantValue:
        """
        ell+1 개 face 에 경계조건이 있는 simplex 의 k-form 상수

        Args:
            geometry: 셀 기하량 (kappa_M 없으면 n*kappa_A 상한 사용)
            ell: 경계조건 face 수 - 1 (0 <= ell < n)
            k: form degree (0 <= k <= n-1)
            p: Lebesgue 지수
            mode: "proved" | "hilbert_simple"

        Returns:
            proved: n! 2^{ell+1} C_B(n,k+1) vol(S^{n-1}) max(1, kappa_M^{k-1}) sqrt(n) delta
            hilbert_simple: (2/pi) delta (p=2 전용)
        """
        n = geometry.n
        if not 0 <= ell < n:
            raise DegreeOutOfRange(f"ell={ell} outside 0..{n - 1}", {"n": n, "ell": ell})
        if not 0 <= k <= n - 1:
            raise DegreeOutOfRange(f"k={k} outside 0..{n - 1}", {"n": n, "k": k})
        delta = geometry.diameter

        if mode == "hilbert_simple":
            if p != 2.0:
                raise ModeExponentMismatch(
                    "hilbert_simple local constant is only available for p=2", {"p": p}
                )
            return ConstantValue(
                value=2.0 / math.pi * delta,
                formula_id="mixed_bc.kform.hilbert_simple",
                assumptions=["p=2", "conjecture-adjacent"],
                conjecture=True,
            )
        if mode != "proved":
            raise ValueError(f"unknown mode: {mode}")

        assumptions = ["C_1(n) <= sqrt(n)"]
        kappa_M = geometry.kappa_M
        if kappa_M is None or geometry.kappa_M_fallback:
            kappa_M = n * geometry.kappa_A if kappa_M is None else kappa_M
            assumptions.append("kappa_M <= n kappa_A")
        shape = kappa_M ** (k - 1)
        if shape < 1.0:
            # k=0: kappa_M^{-1} 은 1 로 고정
            shape = 1.0
            assumptions.append("kappa_M power clamped to 1")

        value = (
            math.factorial(n)
            * 2.0 ** (ell + 1)
            * ConvexConstants.bogovskii_op_constant(n, k + 1)
            * ConvexConstants.sphere_area(n)
            * shape
            * math.sqrt(n)
            * delta
        )
        return ConstantValue(
            value=value, formula_id="mixed_bc.kform.proved", assumptions=assumptions
        )

    @staticmethod
    def face_patch_constant(
        t1: Sequence[int], t2: Sequence[int], coords: np.ndarray, p: float
    ) -> ConstantValue:
        """
        face 이웃 두 셀 합집합의 gradient Poincare 상수

        합집합이 convex 이면 convex_pf_gradient(p, delta(T1 u T2)),
        아니면 기준 patch 로의 두 affine 사상을 통한 합성 상수.
        두 경우 모두 sharp / lemma 값을 alternatives 에 기록합니다.

        Raises:
            NotFaceNeighbors: 공유 정점이 n 개가 아님
        """
        coords = np.asarray(coords, dtype=float)
        n = coords.shape[1]
        shared = sorted(set(t1) & set(t2))
        if len(shared) != n or len(set(t1) | set(t2)) != n + 2:
            raise NotFaceNeighbors(
                f"cells {tuple(t1)} and {tuple(t2)} are not face neighbors", {"shared": shared}
            )
        (z1,) = set(t1) - set(shared)
        (z2,) = set(t2) - set(shared)
        p1, p2 = coords[list(t1)], coords[list(t2)]
        vol1, vol2 = simplex_volume(p1), simplex_volume(p2)
        union = coords[shared + [z1, z2]]
        delta_union = diameter(union)

        # 기준 patch (지름 2) 에서 T1, T2 로 가는 사상의 Jacobian
        v0 = coords[shared[0]]
        face_cols = [coords[v] - v0 for v in shared[1:]]
        J1 = np.column_stack(face_cols + [coords[z1] - v0])
        J2 = np.column_stack(face_cols + [-(coords[z2] - v0)])
        dets = [abs(float(np.linalg.det(J))) for J in (J1, J2)]
        norms = [float(np.linalg.norm(J, 2)) for J in (J1, J2)]
        r = reciprocal(p)
        reference = ConvexConstants.convex_pf_gradient(p, 2.0).value
        sharp = (
            reference
            * max(d ** r for d in dets)
            * max(d ** (-r) * s for d, s in zip(dets, norms))
        )
        C_rho = max(vol1 / vol2, vol2 / vol1)
        lemma = (
            reference * math.sqrt(n) * lp_power(C_rho, p) * max(diameter(p1), diameter(p2))
        )

        convex = abs(hull_volume(union) - (vol1 + vol2)) <= settings.geometry_tol * (vol1 + vol2)
        if convex:
            value = ConvexConstants.convex_pf_gradient(p, delta_union)
            log.debug(f"face patch {tuple(t1)}+{tuple(t2)}: convex, delta={delta_union:.4g}")
            return value.model_copy(update={
                "formula_id": "face_patch.convex",
                "assumptions": ["convex union"],
                "alternatives": {"sharp": sharp, "lemma": lemma},
            })
        return ConstantValue(
            value=sharp,
            formula_id="face_patch.sharp",
            assumptions=["non-convex union"],
            alternatives={"sharp": sharp, "lemma": lemma},
        )

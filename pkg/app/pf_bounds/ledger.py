"""
recursion row 의 unwrap 과 Hoelder 집계

unwrap 은 forward substitution 으로 C_m = a_m + sum_g coef_g * combine(C_j, j in g) 를
계산합니다. chain 합을 지수적으로 열거하지 않습니다.
"""
import math
from typing import List, Sequence, Union

import numpy as np

from app.exceptions import ForwardReferenceViolation
from app.models.estimate import BoundLedger, CombineRule, RecursionRow
from app.utils.linalg import conjugate_exponent


def combine_rows(rows: np.ndarray, p: float, rule: CombineRule = CombineRule.MINKOWSKI) -> np.ndarray:
    """
    U 의 여러 셀 행을 하나의 계수 벡터로 합침

    minkowski: 열마다 (sum_j C_j[i]^p)^{1/p} (p = inf 이면 max)
    l1: 열마다 sum_j C_j[i]
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rule == CombineRule.L1 or p == 1.0:
        return rows.sum(axis=0)
    if math.isinf(p):
        return rows.max(axis=0)
    return (rows ** p).sum(axis=0) ** (1.0 / p)


def unwrap(
    rows: Sequence[RecursionRow], p: float, rule: CombineRule = CombineRule.MINKOWSKI
) -> BoundLedger:
    """
    recursion row 를 하삼각 계수 행렬로 풀기

    Args:
        rows: 위치 0..M 의 row (row.index == 위치)
        p: Lebesgue 지수 (Minkowski 분배에 사용)
        rule: 다중 셀 U 분배 규칙

    Returns:
        BoundLedger

    Raises:
        ForwardReferenceViolation: row 가 자기 이후 위치를 참조
    """
    size = len(rows)
    C = np.zeros((size, size))
    provenance: List[List[str]] = []
    for m, row in enumerate(rows):
        if row.index != m:
            raise ForwardReferenceViolation(
                f"row at position {m} carries index {row.index}", {"position": m}
            )
        for col, value in row.a.items():
            if not 0 <= col <= m:
                raise ForwardReferenceViolation(
                    f"row {m} puts a coefficient on position {col}", {"row": m, "column": col}
                )
            C[m, col] += value
        for group in row.groups:
            bad = [j for j in group.members if not 0 <= j < m]
            if bad:
                raise ForwardReferenceViolation(
                    f"row {m} refers to positions {bad}", {"row": m, "members": bad}
                )
            if not group.members:
                continue
            C[m] += group.coef * combine_rows(C[group.members], p, rule)
        provenance.append(list(row.provenance))
    return BoundLedger(C=C.tolist(), provenance=provenance)


def holder_aggregate(ledger: Union[BoundLedger, np.ndarray], p: float) -> float:
    """
    (sum_m (sum_l C_{m,l}^q)^{p/q})^{1/p}

    p=2 이면 Frobenius 노름, p=1 이면 sum_m max_l C, p=inf 이면 max_m sum_l C.
    """
    C = ledger.as_array() if isinstance(ledger, BoundLedger) else np.asarray(ledger, dtype=float)
    q = conjugate_exponent(p)
    if math.isinf(q):
        row_norms = C.max(axis=1)
    else:
        row_norms = (C ** q).sum(axis=1) ** (1.0 / q)
    if math.isinf(p):
        return float(row_norms.max())
    return float((row_norms ** p).sum() ** (1.0 / p))

"""
일반화 고유값 문제 S x = lambda M x 의 최소 양의 고유값

작은 문제는 dense scipy.linalg.eigh, 큰 문제는 음의 shift 에서 sparse LU 로
shift-invert 한 eigsh 를 씁니다.
mixed_divfree 제약은 degree k-1 multiplier 의 saddle-point 문제로 gradient kernel 을
정확히 제거하고, penalty 방식은 교차 확인에만 씁니다.
"""
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla
from scipy.sparse import bmat, csr_matrix, diags
from scipy.sparse.linalg import LinearOperator, eigsh, splu

from app.config import settings
from app.exceptions import KernelMisdetection, NoFreeDofs, SolverDivergence
from app.models.reference import Constraint, EigenResult
from app.reference_feec.whitney import OperatorPair
from app.utils.logger import log

PENALTY = 100.0
PENALTY_RETRIES = 3
DIVFREE_COUNT = 4


class SpLuOperator(LinearOperator):
    """(K - sigma M)^{-1} 작용"""

    def __init__(self, mat: csr_matrix):
        self.lu = splu(mat.tocsc())
        self.shape = mat.shape
        self.dtype = np.dtype(float)

    def _matvec(self, x):
        return self.lu.solve(np.asarray(x, dtype=float))


class SaddlePointOperator(LinearOperator):
    """
    [[K - sigma M, B], [B^T, 0]] [y; mu] = [x; 0] 의 y

    B 의 상 (M 을 곱한 gradient) 은 0 으로 보내므로 shift-invert 반복이
    이산 div-free 공간 안에서만 돕니다.
    """

    def __init__(self, K: csr_matrix, M: csr_matrix, B: csr_matrix, sigma: float):
        block = bmat([[K - sigma * M, B], [B.T, None]], format="csc")
        self.lu = splu(block)
        self.n_multipliers = B.shape[1]
        self.shape = K.shape
        self.dtype = np.dtype(float)

    def _matvec(self, x):
        rhs = np.concatenate([np.asarray(x, dtype=float).ravel(), np.zeros(self.n_multipliers)])
        return self.lu.solve(rhs)[: self.shape[0]]


def _spectral_scale(K: csr_matrix, M: csr_matrix) -> float:
    """max diag(K)/diag(M): kernel 판정 기준 크기"""
    if K.shape[0] == 0:
        return 1.0
    ratio = K.diagonal() / M.diagonal()
    return float(max(ratio.max(), 1.0))


def dense_eigs(K: csr_matrix, M: csr_matrix, count: Optional[int]) -> Tuple[np.ndarray, np.ndarray]:
    """작은 고유값 count 개 (None 이면 전체)"""
    size = K.shape[0]
    subset = None if count is None else [0, min(count, size) - 1]
    return sla.eigh(K.toarray(), M.toarray(), subset_by_index=subset)


def divfree_dense_eigs(
    K: csr_matrix, M: csr_matrix, B: csr_matrix
) -> Tuple[np.ndarray, np.ndarray]:
    """
    B^T x = 0 공간 (null_space 기저 Z) 에 제한한 dense 고유값 전체

    Raises:
        NoFreeDofs: 제약 공간이 0 차원
    """
    if B.shape[1] == 0:
        return dense_eigs(K, M, None)
    Z = sla.null_space(B.toarray().T)
    if Z.shape[1] == 0:
        raise NoFreeDofs(
            "divergence constraint leaves no degrees of freedom; refine further",
            {"dofs": K.shape[0], "multipliers": B.shape[1], "hint": "refine further"},
        )
    vals, W = sla.eigh(Z.T @ (K @ Z), Z.T @ (M @ Z))
    return vals, Z @ W


def shift_invert_eigs(
    K: csr_matrix, M: csr_matrix, count: int, B: Optional[csr_matrix] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """음의 shift 주변 shift-invert Lanczos (B 가 있으면 saddle-point 로 제약)"""
    size = K.shape[0]
    count = min(count, size - 2)
    sigma = -1e-3 * float(np.median(K.diagonal() / M.diagonal()))
    if B is None or B.shape[1] == 0:
        op: LinearOperator = SpLuOperator((K - sigma * M).tocsr())
    else:
        op = SaddlePointOperator(K, M, B, sigma)
    vals, vecs = eigsh(K, k=count, M=M, sigma=sigma, which="LM", OPinv=op, tol=1e-12)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def _residual(K: csr_matrix, M: csr_matrix, lam: float, x: np.ndarray) -> float:
    Mx = M @ x
    return float(np.linalg.norm(K @ x - lam * Mx) / (abs(lam) * np.linalg.norm(Mx)))


def _solve(
    K: csr_matrix, M: csr_matrix, count: Optional[int], cross_check: bool
) -> Tuple[np.ndarray, np.ndarray, str, Optional[float]]:
    size = K.shape[0]
    limit = settings.dense_dof_limit
    if size <= limit or count is None:
        vals, vecs = dense_eigs(K, M, count)
        solver = "dense"
        diff = None
        if cross_check and count is not None and count < size - 2:
            other, _ = shift_invert_eigs(K, M, count)
            k = min(len(vals), len(other))
            scale = max(abs(vals[k - 1]), 1e-300)
            diff = float(np.max(np.abs(vals[:k] - other[:k])) / scale)
            if diff > settings.eig_residual_tol:
                raise SolverDivergence(
                    "dense and shift-invert eigenvalues disagree", {"rel_diff": diff}
                )
        return vals, vecs, solver, diff
    vals, vecs = shift_invert_eigs(K, M, count)
    return vals, vecs, "shift_invert", None


def _solve_divfree(
    K: csr_matrix, M: csr_matrix, B: csr_matrix
) -> Tuple[np.ndarray, np.ndarray, str]:
    if K.shape[0] <= settings.dense_dof_limit:
        vals, vecs = divfree_dense_eigs(K, M, B)
        return vals, vecs, "dense"
    vals, vecs = shift_invert_eigs(K, M, DIVFREE_COUNT, B)
    return vals, vecs, "saddle_point"


def _split_kernel(
    vals: np.ndarray, scale: float, kernel_dim: Optional[int]
) -> Tuple[int, float]:
    """kernel 개수와 첫 양의 고유값"""
    zero_tol = 1e-9 * scale
    detected = int(np.sum(np.abs(vals) <= zero_tol))
    if kernel_dim is not None and detected != kernel_dim:
        raise KernelMisdetection(
            f"expected kernel dimension {kernel_dim}, found {detected}",
            {"expected": kernel_dim, "found": detected, "smallest": vals[:8].tolist()},
        )
    if detected >= len(vals):
        raise KernelMisdetection("no positive eigenvalue among computed ones", {"found": detected})
    lam = float(vals[detected])
    floor = max(float(np.max(np.abs(vals[:detected]))) if detected else 0.0, 1e-16 * scale)
    if lam < 1e3 * floor:
        raise KernelMisdetection(
            "positive eigenvalue is not separated from the kernel cluster",
            {"lambda": lam, "kernel_max": floor},
        )
    return detected, lam


def penalty_eig(pair: OperatorPair) -> float:
    """
    S + gamma B C^{-1} B^T 의 최소 양의 고유값 (mixed 풀이 교차 확인용)

    penalty 모드가 최소 고유값을 차지하면 gamma 를 100 배씩 키웁니다.

    Raises:
        KernelMisdetection: 재시도 후에도 penalty 모드가 남음
    """
    M = pair.M
    if pair.B.shape[1] == 0:
        vals, _, _, _ = _solve(pair.S, M, DIVFREE_COUNT, False)
        return _split_kernel(vals, _spectral_scale(pair.S, M), None)[1]
    penalty = pair.B @ diags(1.0 / pair.C) @ pair.B.T
    gamma = PENALTY
    for _ in range(PENALTY_RETRIES):
        K = (pair.S + gamma * penalty).tocsr()
        vals, vecs, _, _ = _solve(K, M, DIVFREE_COUNT, False)
        detected, lam = _split_kernel(vals, _spectral_scale(K, M), None)
        x = vecs[:, detected]
        # penalty 가 아닌 S 에서 나온 고유값인지 확인
        share = float(x @ (pair.S @ x)) / (lam * float(x @ (M @ x)))
        if share >= 1.0 - 1e-6:
            return lam
        log.warning(f"penalty 모드가 최소 고유값을 차지, gamma {gamma:g} -> {gamma * 100:g}")
        gamma *= 100.0
    raise KernelMisdetection("penalty did not separate the gradient kernel", {"gamma": gamma})


def smallest_positive_eig(
    pair: OperatorPair,
    constraint: Constraint = Constraint.NONE,
    kernel_dim: Optional[int] = None,
    cross_check: Optional[bool] = None,
) -> EigenResult:
    """
    최소 양의 고유값과 PF 상수 lambda^{-1/2}

    Args:
        pair: 조립된 연산자 쌍
        constraint: none (kernel 개수로 건너뜀) | mixed_divfree (multiplier 로 gradient 제거)
        kernel_dim: none 에서 알려진 kernel 차원 (None 이면 dense 전체 스펙트럼에서 판정)
        cross_check: none 은 dense 와 shift-invert, mixed_divfree 는 penalty 풀이와 비교
            (기본: settings.solver_cross_check)

    Raises:
        NoFreeDofs: 자유도가 없음
        SolverDivergence: 잔차 초과 또는 solver 불일치
        KernelMisdetection: kernel 과 양의 고유값 분리 실패
    """
    cross_check = settings.solver_cross_check if cross_check is None else cross_check
    if pair.size == 0:
        raise NoFreeDofs(
            "no free degrees of freedom left; refine further",
            {"k": pair.k, "hint": "refine further"},
        )
    M = pair.M
    K = pair.S
    if constraint == Constraint.MIXED_DIVFREE and pair.B is not None:
        vals, vecs, solver = _solve_divfree(K, M, pair.B)
        detected, lam = _split_kernel(vals, _spectral_scale(K, M), None)
        x = vecs[:, detected]
        diff = None
        if cross_check:
            diff = abs(lam - penalty_eig(pair)) / lam
            if diff > settings.eig_residual_tol:
                raise SolverDivergence(
                    "mixed and penalty eigenvalues disagree", {"rel_diff": diff}
                )
    else:
        count = None if kernel_dim is None else kernel_dim + 3
        vals, vecs, solver, diff = _solve(K, M, count, cross_check)
        detected, lam = _split_kernel(vals, _spectral_scale(K, M), kernel_dim)
        x = vecs[:, detected]

    residual = _residual(K, M, lam, x)
    if residual > settings.eig_residual_tol:
        raise SolverDivergence(
            f"eigen residual {residual:.2e} exceeds tolerance", {"residual": residual}
        )
    log.debug(f"eig: k={pair.k}, dofs={pair.size}, lambda={lam:.8g}, solver={solver}")
    return EigenResult(
        lambda_min_positive=lam,
        kernel_dim=detected,
        constant=lam ** -0.5,
        k=pair.k,
        n_dofs=pair.size,
        solver=solver,
        residual=residual,
        cross_check_rel_diff=diff,
    )

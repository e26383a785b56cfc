"""
최저차 Whitney form 이산 de Rham complex

k-simplex (정점 id 오름차순 방향) 가 k-form 자유도이고,
D_k 는 부호 있는 incidence 행렬, M_k 는 정확한 barycentric 적분의 mass 행렬입니다.
"""
import math
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set

import networkx as nx
import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from app.exceptions import InvalidBoundarySelection
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.mesh import Simplex
from app.utils.logger import log


class DiscreteComplex:
    """
    Whitney 자유도와 incidence 행렬

    Attributes:
        c: 메쉬
        dofs: degree 별 k-simplex 목록 (c.skeleta 와 같은 순서)
    """

    def __init__(self, c: SimplicialComplex):
        self.c = c
        self.n = c.n
        self.dofs: List[List[Simplex]] = c.skeleta
        self._incidence: dict = {}

    def num_dofs(self, k: int) -> int:
        return len(self.dofs[k])

    def incidence(self, k: int) -> csr_matrix:
        """
        D_k: k-자유도 -> (k+1)-자유도, D[tau, tau \\ tau_i] = (-1)^i

        Raises:
            ValueError: k 가 0..n-1 밖
        """
        if not 0 <= k < self.n:
            raise ValueError(f"incidence degree {k} outside 0..{self.n - 1}")
        if k not in self._incidence:
            index = self.c.skeleton_index[k]
            rows, cols, vals = [], [], []
            for r, tau in enumerate(self.dofs[k + 1]):
                for i in range(k + 2):
                    rows.append(r)
                    cols.append(index[tau[:i] + tau[i + 1:]])
                    vals.append((-1) ** i)
            shape = (self.num_dofs(k + 1), self.num_dofs(k))
            self._incidence[k] = coo_matrix(
                (np.array(vals, dtype=np.int64), (rows, cols)), shape=shape
            ).tocsr()
        return self._incidence[k]

    def boundary_dofs(self, k: int, bc_faces: Iterable[Sequence[int]]) -> np.ndarray:
        """bc_faces closure 에 포함된 k-자유도 인덱스"""
        index = self.c.skeleton_index[k]
        found: Set[int] = set()
        for face in bc_faces:
            for sub in combinations(sorted(face), k + 1):
                found.add(index[sub])
        return np.array(sorted(found), dtype=np.int64)

    def free_dofs(self, k: int, bc_faces: Iterable[Sequence[int]]) -> np.ndarray:
        mask = np.ones(self.num_dofs(k), dtype=bool)
        mask[self.boundary_dofs(k, bc_faces)] = False
        return np.flatnonzero(mask)


def _barycentric_gradients(c: SimplicialComplex) -> np.ndarray:
    """셀별 grad lambda_i, shape (cells, n+1, n)"""
    pts = c.coords[np.array(c.cells)]
    E = np.transpose(pts[:, 1:] - pts[:, :1], (0, 2, 1))
    inv = np.linalg.inv(E)
    grads = np.empty((len(c.cells), c.n + 1, c.n))
    grads[:, 1:] = inv
    grads[:, 0] = -inv.sum(axis=1)
    return grads


def _cell_volumes(c: SimplicialComplex) -> np.ndarray:
    pts = c.coords[np.array(c.cells)]
    E = pts[:, 1:] - pts[:, :1]
    return np.abs(np.linalg.det(E)) / math.factorial(c.n)


def _minor_dets(gram: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    if not rows:
        return np.ones(gram.shape[0])
    return np.linalg.det(gram[:, rows][:, :, cols])


def mass_matrix(dc: DiscreteComplex, k: int) -> csr_matrix:
    """
    Whitney k-form mass 행렬

    phi_sigma = k! sum_i (-1)^i lambda_{s_i} dlambda_{sigma \\ s_i} 이고
    int lambda_a lambda_b = vol (1 + delta_ab) / ((n+1)(n+2)).
    """
    c = dc.c
    n = c.n
    grads = _barycentric_gradients(c)
    gram = np.einsum("cid,cjd->cij", grads, grads)
    volumes = _cell_volumes(c)
    weight = volumes / ((n + 1) * (n + 2))

    local = list(combinations(range(n + 1), k + 1))
    index = c.skeleton_index[k]
    cells = c.cells
    glob = np.array([[index[tuple(cell[i] for i in s)] for s in local] for cell in cells])

    rows, cols, vals = [], [], []
    scale = math.factorial(k) ** 2
    for a, sa in enumerate(local):
        for b, sb in enumerate(local):
            if b < a:
                continue
            entry = np.zeros(len(cells))
            for i, vi in enumerate(sa):
                rest_a = [v for v in sa if v != vi]
                for j, vj in enumerate(sb):
                    rest_b = [v for v in sb if v != vj]
                    lam = weight * (2.0 if vi == vj else 1.0)
                    entry += (-1) ** (i + j) * lam * _minor_dets(gram, rest_a, rest_b)
            entry *= scale
            rows.append(glob[:, a])
            cols.append(glob[:, b])
            vals.append(entry)
            if a != b:
                rows.append(glob[:, b])
                cols.append(glob[:, a])
                vals.append(entry)
    size = dc.num_dofs(k)
    M = coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    ).tocsr()
    return M


class OperatorPair:
    """
    자유 자유도로 제한한 (M_k, S_k) 와 divergence 제약 B = M_k D_{k-1}

    Attributes:
        k: degree
        M: mass (SPD)
        S: D_k^T M_{k+1} D_k (PSD, k = n 이면 0)
        B: M_k D_{k-1}, 열은 선형독립인 multiplier 만 (k = 0 또는 k > 2 이면 None)
        C: diag(M_{k-1}) 의 multiplier 부분
        free: 자유 k-자유도 인덱스
    """

    def __init__(
        self,
        k: int,
        M: csr_matrix,
        S: csr_matrix,
        free: np.ndarray,
        B: Optional[csr_matrix] = None,
        C: Optional[np.ndarray] = None,
    ):
        self.k = k
        self.M = M
        self.S = S
        self.free = free
        self.B = B
        self.C = C

    @property
    def size(self) -> int:
        return self.M.shape[0]


GROUND = -1


def independent_multipliers(
    dc: DiscreteComplex, k: int, bc_faces: Sequence[Sequence[int]]
) -> np.ndarray:
    """
    자유 (k-1)-자유도 중 D_{k-1} 의 상을 중복 없이 생성하는 것 (free_dofs(k-1) 안의 위치)

    고정 정점을 접지 노드 하나로 합친 그래프 (자유 정점, 자유 edge) 에서
    k=1 은 접지되지 않은 연결 성분마다 정점 하나를 빼고,
    k=2 는 spanning forest 의 edge 를 뺍니다 (tree-cotree).
    상대 cohomology 가 자명하면 남은 열은 선형독립입니다.

    Raises:
        ValueError: k 가 1, 2 가 아님
    """
    if k not in (1, 2):
        raise ValueError(f"multiplier degree {k - 1} is not supported")
    index0 = dc.c.skeleton_index[0]
    free_v = dc.free_dofs(0, bc_faces)
    free_e = dc.free_dofs(1, bc_faces)
    position = {int(i): p for p, i in enumerate(free_v)}

    graph = nx.MultiGraph()
    graph.add_nodes_from(position)
    for e in free_e:
        a, b = dc.dofs[1][e]
        u, v = int(index0[(a,)]), int(index0[(b,)])
        graph.add_edge(
            u if u in position else GROUND, v if v in position else GROUND, key=int(e)
        )

    if k == 1:
        dropped = {
            min(comp) for comp in nx.connected_components(graph) if GROUND not in comp
        }
        keep = [p for i, p in position.items() if i not in dropped]
    else:
        tree = {
            key
            for _, _, key in nx.minimum_spanning_edges(
                graph, algorithm="kruskal", keys=True, data=False
            )
        }
        keep = [p for p, e in enumerate(free_e) if int(e) not in tree]
    return np.array(sorted(keep), dtype=np.int64)


def validate_bc_faces(c: SimplicialComplex, bc_faces: Iterable[Sequence[int]]) -> List[Simplex]:
    """
    Raises:
        InvalidBoundarySelection: 경계 (n-1)-face 가 아닌 항목
    """
    boundary = set(Topology.boundary_faces(c))
    out: List[Simplex] = []
    for face in bc_faces:
        key = tuple(sorted(int(v) for v in face))
        if key not in boundary:
            raise InvalidBoundarySelection(
                f"{key} is not a boundary face", {"face": list(key)}
            )
        out.append(key)
    return out


def assemble_whitney(
    c: SimplicialComplex, k: int, bc_faces: Optional[Iterable[Sequence[int]]] = None
):
    """
    degree k 의 연산자 쌍 조립

    Args:
        c: 메쉬
        k: form degree (0..n)
        bc_faces: essential 경계조건을 줄 경계 face (빈 목록이면 natural)

    Returns:
        (DiscreteComplex, OperatorPair)

    Raises:
        InvalidBoundarySelection
    """
    n = c.n
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} outside 0..{n}")
    faces = validate_bc_faces(c, bc_faces or [])
    dc = DiscreteComplex(c)

    free = dc.free_dofs(k, faces)
    M_full = mass_matrix(dc, k)
    M = M_full[free][:, free].tocsr()
    if k < n:
        D = dc.incidence(k).astype(float)
        S_full = (D.T @ mass_matrix(dc, k + 1) @ D).tocsr()
        S = S_full[free][:, free].tocsr()
    else:
        S = csr_matrix(M.shape)

    B = C = None
    if 1 <= k <= 2:
        free_low = dc.free_dofs(k - 1, faces)
        gauge = free_low[independent_multipliers(dc, k, faces)]
        D_low = dc.incidence(k - 1).astype(float)[free][:, gauge]
        B = (M @ D_low).tocsr()
        C = mass_matrix(dc, k - 1).diagonal()[gauge]

    log.debug(f"Whitney 조립: k={k}, dofs={len(free)}/{dc.num_dofs(k)}, bc_faces={len(faces)}")
    return dc, OperatorPair(k, M, S, free, B, C)

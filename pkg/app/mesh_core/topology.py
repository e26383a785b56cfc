"""
complex 의 조합적 구조: face 분류, star, face-connection 그래프, simplicial 교집합
"""
from itertools import combinations
from typing import Dict, Iterable, List, Sequence

import networkx as nx

from app.exceptions import NotPseudomanifold
from app.mesh_core.complex import SimplicialComplex
from app.models.mesh import FaceKind, InterfaceSet, Simplex


class Star:
    """st(s): s 를 포함하는 n-셀과 그 부분 simplex"""

    def __init__(self, parent: SimplicialComplex, simplex: Simplex, cell_ids: List[int]):
        self.simplex = simplex
        self.cell_ids = cell_ids
        self.complex = parent.sub_complex(cell_ids)
        # star 의 구성원 중 s 를 포함하지 않는 simplex
        self.boundary_star: List[Simplex] = [
            t
            for level in self.complex.skeleta
            for t in level
            if not set(simplex) <= set(t)
        ]

    def __len__(self) -> int:
        return len(self.cell_ids)


class Topology:
    """
    조합적 위상 연산

    Lemma: pseudomanifold 에서 (n-1)-face 는 셀 1개(경계) 또는 2개(내부)에 속합니다.
    """

    @staticmethod
    def classify_faces(c: SimplicialComplex) -> Dict[Simplex, FaceKind]:
        """
        (n-1)-face 를 interior/boundary 로 분류

        Raises:
            NotPseudomanifold: 셀 3개 이상을 가진 face
        """
        kinds: Dict[Simplex, FaceKind] = {}
        for face, owners in c.cofaces.items():
            if len(owners) == 1:
                kinds[face] = FaceKind.BOUNDARY
            elif len(owners) == 2:
                kinds[face] = FaceKind.INTERIOR
            else:
                raise NotPseudomanifold(
                    f"face {face} has {len(owners)} cofaces",
                    {"face": list(face), "cofaces": owners},
                )
        return kinds

    @staticmethod
    def boundary_faces(c: SimplicialComplex) -> List[Simplex]:
        kinds = Topology.classify_faces(c)
        return sorted(f for f, kind in kinds.items() if kind == FaceKind.BOUNDARY)

    @staticmethod
    def is_interior_simplex(c: SimplicialComplex, s: Sequence[int]) -> bool:
        """s 가 어떤 경계 face 에도 포함되지 않는지"""
        s_set = set(s)
        for face, owners in c.cofaces.items():
            if len(owners) == 1 and s_set <= set(face):
                return False
        return True

    @staticmethod
    def star(c: SimplicialComplex, s: Sequence[int]) -> Star:
        """
        st(s) 와 boundary_star

        Raises:
            SimplexNotFound: s 가 complex 에 없음
        """
        simplex = c.require(s)
        return Star(c, simplex, c.cells_containing(simplex))

    @staticmethod
    def link(c: SimplicialComplex, s: Sequence[int]) -> List[Simplex]:
        """st(s) 의 각 셀에서 s 를 뺀 극대 simplex (link 의 facet)"""
        simplex = c.require(s)
        s_set = set(simplex)
        return [
            tuple(v for v in c.cells[i] if v not in s_set) for i in c.cells_containing(simplex)
        ]

    @staticmethod
    def face_connection_graph(c: SimplicialComplex) -> nx.Graph:
        """노드 = n-셀, 간선 = 공유 (n-1)-face"""
        graph = nx.Graph()
        graph.add_nodes_from(range(c.num_cells))
        for face, owners in c.cofaces.items():
            for a, b in combinations(owners, 2):
                graph.add_edge(a, b, face=face)
        return graph

    @staticmethod
    def face_connected_components(c: SimplicialComplex) -> List[List[int]]:
        """face-neighboring 동치류 (최소 인덱스 순)"""
        graph = Topology.face_connection_graph(c)
        components = [sorted(comp) for comp in nx.connected_components(graph)]
        return sorted(components, key=lambda comp: comp[0])

    @staticmethod
    def is_face_connected(c: SimplicialComplex) -> bool:
        return len(Topology.face_connected_components(c)) == 1

    @staticmethod
    def simplicial_intersection(
        c: SimplicialComplex, cell: Sequence[int], prior: Iterable[int]
    ) -> InterfaceSet:
        """
        셀과 이전 셀 합집합의 극대 공유 simplex

        Args:
            c: complex
            cell: 셀 (정점 tuple)
            prior: 이전 셀 인덱스

        Returns:
            InterfaceSet: 모든 극대 simplex 가 (n-1)-face 이면 as_faces 채움
        """
        cell_set = frozenset(cell)
        shared = {frozenset(c.cells[j]) & cell_set for j in prior}
        shared.discard(frozenset())
        maximal = [s for s in shared if not any(s < other for other in shared)]
        shared_maximal = sorted(tuple(sorted(s)) for s in maximal)
        as_faces = None
        if shared_maximal and all(len(s) == c.n for s in shared_maximal):
            as_faces = list(shared_maximal)
        return InterfaceSet(shared_maximal=shared_maximal, as_faces=as_faces)

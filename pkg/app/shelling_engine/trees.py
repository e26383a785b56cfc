"""
face-connection 그래프의 DFS spanning tree
"""
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from app.exceptions import Disconnected, IndexOutOfRange
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.shelling import SpanningTree

# (부모 셀, 자식 셀) -> 비용
EdgeCost = Callable[[int, int], float]


def spanning_tree(
    c: SimplicialComplex, root: int = 0, cost_model: Optional[EdgeCost] = None
) -> SpanningTree:
    """
    greedy DFS spanning tree

    이웃은 (비용, 셀 인덱스) 오름차순으로 방문합니다.

    Args:
        c: complex
        root: 루트 셀
        cost_model: 간선 비용 (기본: 모두 0, 인덱스 순)

    Returns:
        SpanningTree: preorder 순서와 위치 기준 부모 맵

    Raises:
        Disconnected: face-connection 그래프가 연결되지 않음
    """
    if not 0 <= root < c.num_cells:
        raise IndexOutOfRange(f"root {root} outside 0..{c.num_cells - 1}")
    graph = Topology.face_connection_graph(c)
    if not nx.is_connected(graph):
        raise Disconnected(
            "face-connection graph is disconnected",
            {"components": [sorted(comp) for comp in nx.connected_components(graph)]},
        )

    def cost(parent: int, child: int) -> float:
        return 0.0 if cost_model is None else float(cost_model(parent, child))

    order: List[int] = []
    position: Dict[int, int] = {}
    predecessor: Dict[int, int] = {}
    stack: List[Tuple[int, Optional[int]]] = [(root, None)]
    while stack:
        cell, parent = stack.pop()
        if cell in position:
            continue
        position[cell] = len(order)
        order.append(cell)
        if parent is not None:
            predecessor[position[cell]] = position[parent]
        neighbors = sorted(
            (j for j in graph.neighbors(cell) if j not in position),
            key=lambda j: (cost(cell, j), j),
        )
        # 스택이므로 역순으로 넣어 최소 비용 이웃을 먼저 방문
        stack.extend((j, cell) for j in reversed(neighbors))

    return SpanningTree(root=root, order=order, predecessor=predecessor)


def enumerate_spanning_trees(c: SimplicialComplex) -> List[SpanningTree]:
    """
    모든 루트와 모든 이웃 방문 순서에 대한 DFS tree (작은 complex 의 oracle)

    같은 (순서, 부모) 쌍은 한 번만 반환합니다.
    """
    graph = Topology.face_connection_graph(c)
    seen = set()
    trees: List[SpanningTree] = []

    def visit(order: List[int], parents: List[int], path: List[int]) -> None:
        if len(order) == c.num_cells:
            key = (tuple(order), tuple(parents))
            if key not in seen:
                seen.add(key)
                pos = {cell: i for i, cell in enumerate(order)}
                trees.append(SpanningTree(
                    root=order[0],
                    order=list(order),
                    predecessor={i + 1: pos[p] for i, p in enumerate(parents)},
                ))
            return
        # 다음 노드는 현재 DFS 경로에서 가장 깊은, 미방문 이웃이 있는 노드의 자식
        placed = set(order)
        for depth in range(len(path) - 1, -1, -1):
            cell = path[depth]
            fresh = sorted(j for j in graph.neighbors(cell) if j not in placed)
            if fresh:
                for j in fresh:
                    visit(order + [j], parents + [cell], path[: depth + 1] + [j])
                return

    for root in range(c.num_cells):
        visit([root], [], [root])
    return trees

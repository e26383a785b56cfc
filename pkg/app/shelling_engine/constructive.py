"""
구성적 shelling: 2-ball 과 n <= 3 의 star

2-ball 은 "좋은" 삼각형(나머지와의 교집합이 비어 있지 않은 모서리 합집합이고,
제거 후에도 disc 로 남는 삼각형)을 반복 제거해 역순으로 만듭니다.
"""
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.exceptions import Not2Ball, NotPseudomanifold, StarNotShellable
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.shelling import Shelling, Violation
from app.shelling_engine.verifier import verify_shelling
from app.utils.logger import log

Triangle = Tuple[int, ...]


def _euler(triangles: Sequence[Triangle]) -> int:
    vertices = {v for t in triangles for v in t}
    edges = {e for t in triangles for e in combinations(sorted(t), 2)}
    return len(vertices) - len(edges) + len(triangles)


def _is_disc(triangles: Sequence[Triangle]) -> bool:
    """
    삼각형 목록이 disc 인지 조합적으로 판정

    face 연결, 모서리당 삼각형 <= 2, 정점 link 가 경로/순환, 경계 존재, Euler 지표 1
    """
    if not triangles:
        return False
    edge_owners: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    for i, t in enumerate(triangles):
        for e in combinations(sorted(t), 2):
            edge_owners[e].append(i)
    if any(len(owners) > 2 for owners in edge_owners.values()):
        return False
    if not any(len(owners) == 1 for owners in edge_owners.values()):
        return False

    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(triangles)))
    adjacency.add_edges_from(tuple(o) for o in edge_owners.values() if len(o) == 2)
    if not nx.is_connected(adjacency):
        return False

    links: Dict[int, nx.Graph] = defaultdict(nx.Graph)
    for t in triangles:
        for v in t:
            a, b = (w for w in t if w != v)
            links[v].add_edge(a, b)
    for link in links.values():
        if not nx.is_connected(link) or max(d for _, d in link.degree) > 2:
            return False

    return _euler(triangles) == 1


def _shares_only_edges(t: Triangle, rest: Sequence[Triangle]) -> bool:
    """t 와 rest 의 교집합이 비어 있지 않은 모서리 합집합인지"""
    t_set = frozenset(t)
    shared = {frozenset(r) & t_set for r in rest}
    shared.discard(frozenset())
    maximal = [s for s in shared if not any(s < o for o in shared)]
    return bool(maximal) and all(len(s) == 2 for s in maximal)


def _shell_disc_combinatorial(triangles: Sequence[Triangle]) -> List[int]:
    """
    disc 삼각형 목록의 shelling 순서 (목록 인덱스)

    Raises:
        Not2Ball: 제거 가능한 삼각형이 없음
    """
    remaining = list(range(len(triangles)))
    reversed_order: List[int] = []
    while len(remaining) > 1:
        for idx in remaining:
            rest = [i for i in remaining if i != idx]
            rest_tris = [triangles[i] for i in rest]
            if _shares_only_edges(triangles[idx], rest_tris) and _is_disc(rest_tris):
                reversed_order.append(idx)
                remaining = rest
                break
        else:
            raise Not2Ball(
                "no removable triangle found", {"remaining": [list(triangles[i]) for i in remaining]}
            )
    reversed_order.append(remaining[0])
    return reversed_order[::-1]


def _check_verified(
    c: SimplicialComplex, order: List[int], universe: Optional[List[int]], error_cls
) -> Shelling:
    result = verify_shelling(c, order, universe)
    if isinstance(result, Violation):
        raise error_cls(
            f"constructed order failed verification at step {result.step}",
            {"order": order, "violation": result.model_dump()},
        )
    return result


def shell_2_ball(c: SimplicialComplex) -> Shelling:
    """
    2차원 simplicial ball 의 shelling

    Raises:
        Not2Ball: n != 2, pseudomanifold 아님, face 연결 아님, Euler 지표 != 1, disc 아님
    """
    if c.n != 2:
        raise Not2Ball(f"shell_2_ball needs n=2, got n={c.n}")
    try:
        Topology.classify_faces(c)
    except NotPseudomanifold as e:
        raise Not2Ball("complex is not a pseudomanifold", e.details) from e
    if not Topology.is_face_connected(c):
        raise Not2Ball("complex is not face-connected")
    chi = c.euler_characteristic()
    if chi != 1:
        raise Not2Ball(f"Euler characteristic {chi} != 1", {"euler_characteristic": chi})
    if not _is_disc(c.cells):
        raise Not2Ball("vertex links are not paths or cycles")

    order = _shell_disc_combinatorial(c.cells)
    log.debug(f"shell_2_ball: order={order}")
    return _check_verified(c, order, None, Not2Ball)


def _rotation_order(c: SimplicialComplex, s: Tuple[int, ...], cells: List[int]) -> List[int]:
    """codim-2 simplex 주위 셀의 회전 순서 (경로면 끝에서, 순환이면 최소 인덱스에서 시작)"""
    s_set = set(s)
    graph = nx.Graph()
    graph.add_nodes_from(cells)
    for a, b in combinations(cells, 2):
        shared = set(c.cells[a]) & set(c.cells[b])
        if len(shared) == c.n and s_set <= shared:
            graph.add_edge(a, b)
    if max((d for _, d in graph.degree), default=0) > 2 or not nx.is_connected(graph):
        raise StarNotShellable(f"cells around {s} do not form a path or cycle")

    ends = sorted(v for v, d in graph.degree if d <= 1)
    start = ends[0] if ends else min(cells)
    return list(nx.dfs_preorder_nodes(graph, source=start))


def shell_star(c: SimplicialComplex, s: Sequence[int]) -> Shelling:
    """
    st(s) 의 shelling (셀 인덱스는 전역)

    - n-셀: 자기 자신
    - (n-1)-face: cofaces
    - (n-2)-simplex: 회전 순서
    - n=3 정점: link (disc 또는 sphere) 의 shelling 에 대한 cone

    Raises:
        StarNotShellable: n > 3 또는 구성 실패
    """
    simplex = c.require(s)
    cells = c.cells_containing(simplex)
    d = len(simplex) - 1

    if d >= c.n - 1:
        order = sorted(cells)
    elif d == c.n - 2:
        order = _rotation_order(c, simplex, cells)
    elif c.n == 3 and d == 0:
        order = _vertex_star_order(c, simplex[0], cells)
    else:
        raise StarNotShellable(
            f"star shelling of a {d}-simplex in dimension {c.n} is not supported",
            {"simplex": list(simplex)},
        )
    return _check_verified(c, order, cells, StarNotShellable)


def _vertex_star_order(c: SimplicialComplex, v: int, cells: List[int]) -> List[int]:
    link: List[Triangle] = [tuple(w for w in c.cells[j] if w != v) for j in cells]
    try:
        if _is_disc(link):
            link_order = _shell_disc_combinatorial(link)
        else:
            # sphere: 삼각형 하나를 빼면 disc, 그 삼각형이 마지막
            first = min(range(len(link)), key=lambda i: cells[i])
            rest = [i for i in range(len(link)) if i != first]
            rest_tris = [link[i] for i in rest]
            if _euler(link) != 2 or not _is_disc(rest_tris):
                raise StarNotShellable(f"link of vertex {v} is neither a disc nor a sphere")
            link_order = [rest[i] for i in _shell_disc_combinatorial(rest_tris)] + [first]
    except Not2Ball as e:
        raise StarNotShellable(f"link of vertex {v} is not shellable", e.details) from e
    return [cells[i] for i in link_order]

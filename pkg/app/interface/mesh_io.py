"""
메쉬 텍스트 포맷 입출력

    # 주석은 '#' 부터 줄 끝까지
    n V C
    x_1 ... x_n        (V 줄)
    v_0 ... v_n        (C 줄, 0-based 정점 id)
"""
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

from app.exceptions import ParseError
from app.mesh_core.complex import SimplicialComplex, build_complex
from app.utils.logger import log


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """(1-based 라인 번호, 토큰) - 주석과 빈 줄 제외"""
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _numbers(tokens: Sequence[str], kind, line: int, what: str) -> list:
    try:
        return [kind(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected {what}, got {' '.join(tokens)!r}", line)


def parse_mesh_text(text: str, check_overlap: bool = True) -> SimplicialComplex:
    """
    텍스트에서 메쉬 생성

    Raises:
        ParseError: 헤더/좌표/셀 형식 오류 또는 줄 수 부족 (라인 번호 포함)
        MeshError: build_complex 검증 실패
    """
    lines = _content_lines(text)
    try:
        line, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty mesh file", 0)
    if len(tokens) != 3:
        raise ParseError("header must be 'n V C'", line)
    n, num_vertices, num_cells = _numbers(tokens, int, line, "three integers")
    if n < 1 or num_vertices < 1 or num_cells < 1:
        raise ParseError("header values must be positive", line)

    coords: List[List[float]] = []
    cells: List[List[int]] = []
    last = line
    for line, tokens in lines:
        last = line
        if len(coords) < num_vertices:
            if len(tokens) != n:
                raise ParseError(f"vertex needs {n} coordinates, got {len(tokens)}", line)
            coords.append(_numbers(tokens, float, line, "reals"))
        elif len(cells) < num_cells:
            if len(tokens) != n + 1:
                raise ParseError(f"cell needs {n + 1} vertex ids, got {len(tokens)}", line)
            cells.append(_numbers(tokens, int, line, "integer vertex ids"))
        else:
            raise ParseError("unexpected content after the last cell", line)

    if len(coords) < num_vertices or len(cells) < num_cells:
        raise ParseError(
            f"expected {num_vertices} vertices and {num_cells} cells, "
            f"found {len(coords)} and {len(cells)}",
            last,
        )
    return build_complex(n, coords, cells, check_overlap=check_overlap)


def parse_mesh(path: Union[str, Path], check_overlap: bool = True) -> SimplicialComplex:
    """파일에서 메쉬 읽기"""
    path = Path(path)
    c = parse_mesh_text(path.read_text(encoding="utf-8"), check_overlap=check_overlap)
    log.info(f"메쉬 로드: {path} (n={c.n}, vertices={c.num_vertices}, cells={c.num_cells})")
    return c


def format_mesh(c: SimplicialComplex, comment: str = "") -> str:
    """repr 정밀도 좌표로 직렬화 (parse_mesh_text 로 그대로 복원)"""
    out: List[str] = []
    if comment:
        out.append(f"# {comment}")
    out.append(f"{c.n} {c.num_vertices} {c.num_cells}")
    out.extend(" ".join(repr(float(x)) for x in point) for point in c.coords)
    out.extend(" ".join(str(v) for v in cell) for cell in c.cells)
    return "\n".join(out) + "\n"


def write_mesh(c: SimplicialComplex, path: Union[str, Path], comment: str = "") -> None:
    Path(path).write_text(format_mesh(c, comment), encoding="utf-8")


def parse_order(text: str) -> List[int]:
    """'0,1,2' 또는 공백 구분 셀 순서"""
    tokens = text.replace(",", " ").split()
    return _numbers(tokens, int, 1, "integer cell ids")

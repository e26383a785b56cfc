from app.interface.examples import (
    ANNULUS_STRIP_ORDER,
    EXAMPLES,
    TABLE_2D,
    TABLE_3D,
    example_mesh,
    example_names,
)
from app.interface.mesh_io import format_mesh, parse_mesh, parse_mesh_text, parse_order, write_mesh
from app.interface.report import (
    build_report,
    build_reports,
    emit_report,
    mesh_summary,
    ratio_entries,
    ref_tet_rows,
    report_json,
    report_schema,
    table_rows,
    tables,
    to_csv,
)

__all__ = [
    "ANNULUS_STRIP_ORDER",
    "EXAMPLES",
    "TABLE_2D",
    "TABLE_3D",
    "build_report",
    "build_reports",
    "emit_report",
    "example_mesh",
    "example_names",
    "format_mesh",
    "mesh_summary",
    "parse_mesh",
    "parse_mesh_text",
    "parse_order",
    "ratio_entries",
    "ref_tet_rows",
    "report_json",
    "report_schema",
    "table_rows",
    "tables",
    "to_csv",
    "write_mesh",
]

"""File formats, report serialization and the command line."""
from .cli import main, parse_complex
from .mmio import format_matrix_market, parse_matrix_market, read_matrix_market, write_matrix_market
from .report_io import emit_report, load_json, render

__all__ = [
    "emit_report", "format_matrix_market", "load_json", "main", "parse_complex",
    "parse_matrix_market", "read_matrix_market", "render", "write_matrix_market",
]

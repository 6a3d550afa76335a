# components/__init__.py
"""Pipeline stages, the Salamon parser and the example catalog."""

# Import all components for easier access
from components.salamon_parser import parse_salamon, format_salamon
from components.fp_builders import (
    FP1Data,
    FP2Data,
    fp1_construct,
    fp2_construct
)
from components.pipeline import PipelineInput, run_pipeline, exit_code
from components.catalog import (
    list_entries,
    build,
    run_entry,
    run_catalog
)
from components.report_export import dumps_report, summarize_catalog, export_summary_csv
from components.theorem_sweep import run_sweep

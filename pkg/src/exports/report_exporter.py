"""
CSV/JSON report exporter
Writes sweep rows, operating points, histograms, EVM and benchmark
reports with fixed column registries from config, so reruns are byte-identical.
"""
import csv
import json
from pathlib import Path
from typing import Dict, Iterable, List

import config


class ReportExporter:
    """Export result rows as CSV (fixed columns) or JSON"""

    SWEEP_COLUMNS = config.SWEEP_COLUMNS
    TABLE1_COLUMNS = config.TABLE1_COLUMNS
    HISTOGRAM_COLUMNS = config.HISTOGRAM_COLUMNS
    EVM_COLUMNS = config.EVM_COLUMNS
    BENCH_COLUMNS = config.BENCH_COLUMNS

    def __init__(self, output_dir: str = None):
        self.output_dir = output_dir or config.OUTPUT_DIR

    def resolve(self, name: str) -> Path:
        return Path(config.get_writable_path(self.output_dir)) / name

    def export_csv(self, rows: Iterable[Dict], columns: List[str], output_path) -> Path:
        """
        Write rows with exactly `columns` in order; missing keys become ''.
        """
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)

        count = 0
        with open(output_path, 'w', newline='', encoding='utf-8') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(row.get(col)) for col in columns])
                count += 1

        print(f"[CSV] {output_path.name} ({count} rows, {len(columns)} cols): {output_path}")
        return output_path

    def export_json(self, data, output_path) -> Path:
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write('\n')
        print(f"[JSON] {output_path.name}: {output_path}")
        return output_path

    def export_sweep(self, rows: List[Dict], output_path=None) -> Path:
        return self.export_csv(rows, self.SWEEP_COLUMNS, output_path or self.resolve(config.SWEEP_CSV_NAME))

    def export_table1(self, rows: List[Dict], output_path=None) -> Path:
        return self.export_csv(rows, self.TABLE1_COLUMNS, output_path or self.resolve(config.TABLE1_CSV_NAME))

    def export_histogram(self, rows: Iterable[Dict], output_path) -> Path:
        return self.export_csv(rows, self.HISTOGRAM_COLUMNS, output_path)


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if hasattr(value, 'value'):
        return value.value
    return value

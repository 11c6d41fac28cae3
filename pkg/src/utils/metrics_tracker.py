"""
Run metrics for the MFH toolkit
Tracks per-stage wall time and sweep row outcomes. Kept out of the
deterministic CSV/JSON outputs because timings differ between reruns.
"""
import json
from datetime import datetime, timezone
from pathlib import Path
from threading import Lock
from typing import Dict, Optional

import config


class RunMetricsTracker:
    """Thread-safe stage timing and row outcome counters"""

    def __init__(self, metrics_file: Optional[str] = None):
        if metrics_file is None:
            metrics_file = Path(config.get_writable_path(config.LOG_DIR)) / 'run_metrics.json'
        self.metrics_file = Path(metrics_file)
        self.lock = Lock()
        self.start_time = datetime.now(timezone.utc)

        self.metrics = {
            "start_time": self.start_time.isoformat(),
            "stages": {},
            "rows": {
                "total": 0,
                "success": 0,
                "failed": 0,
            },
            "errors": {
                "by_type": {},
                "last_error": None,
            },
        }

    def record_stage(self, stage: str, seconds: float):
        """Accumulate wall time for a named stage"""
        with self.lock:
            entry = self.metrics["stages"].setdefault(
                stage, {"count": 0, "total_seconds": 0.0, "max_seconds": 0.0}
            )
            entry["count"] += 1
            entry["total_seconds"] += seconds
            entry["max_seconds"] = max(entry["max_seconds"], seconds)

    def record_row(self, success: bool, error_type: Optional[str] = None,
                   error_message: Optional[str] = None):
        """Count a finished sweep row"""
        with self.lock:
            self.metrics["rows"]["total"] += 1
            if success:
                self.metrics["rows"]["success"] += 1
                return
            self.metrics["rows"]["failed"] += 1
            if error_type:
                by_type = self.metrics["errors"]["by_type"]
                by_type[error_type] = by_type.get(error_type, 0) + 1
                self.metrics["errors"]["last_error"] = {
                    "type": error_type,
                    "message": error_message,
                    "timestamp": datetime.now(timezone.utc).isoformat(),
                }

    def get_stage_seconds(self) -> Dict[str, float]:
        with self.lock:
            return {name: entry["total_seconds"] for name, entry in self.metrics["stages"].items()}

    def get_summary(self) -> Dict:
        """Snapshot of all metrics"""
        with self.lock:
            elapsed = (datetime.now(timezone.utc) - self.start_time).total_seconds()
            summary = json.loads(json.dumps(self.metrics))
            summary["elapsed_seconds"] = round(elapsed, 3)
            return summary

    def save(self):
        """Persist the summary next to the logs"""
        summary = self.get_summary()
        try:
            self.metrics_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.metrics_file, 'w', encoding='utf-8') as f:
                json.dump(summary, f, indent=2)
        except OSError as e:
            print(f"[WARNING] Could not save run metrics: {e}")

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Operating-Point Table Checker CLI Tool
Inverts every published channel count to effective QBs and checks that the
link budget gives back the published channel count and rate
"""
import sys
from pathlib import Path

# Fix encoding for Windows
if sys.platform == 'win32':
    import io
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')

# Add src to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / 'src'))

RATE_TOLERANCE_TBPS = 0.01


def check_table1() -> bool:
    """Print one line per cell; True when every cell is consistent"""
    from budget.link_budget import table1_consistency

    print("\n" + "=" * 80)
    print("MFH TOOLKIT - OPERATING-POINT TABLE CONSISTENCY")
    print("=" * 80 + "\n")

    all_ok = True
    for (qam_order, scheme), entry in table1_consistency().items():
        channels_ok = entry['channels'] == entry['published_channels']
        rate_ok = abs(entry['rate_tbps'] - entry['published_rate_tbps']) <= RATE_TOLERANCE_TBPS
        all_ok = all_ok and channels_ok and rate_ok
        status = "[OK]  " if channels_ok and rate_ok else "[FAIL]"
        print(
            f"{status} {qam_order:>5}-QAM {scheme:<8} "
            f"QB {entry['implied_qb']:.4f}  "
            f"channels {entry['channels']:>4} (published {entry['published_channels']:>4})  "
            f"rate {entry['rate_tbps']:.3f} (published {entry['published_rate_tbps']:.2f}) Tbit/s"
        )

    print("\n" + ("All cells consistent" if all_ok else "Inconsistent cells found"))
    return all_ok


if __name__ == '__main__':
    sys.exit(0 if check_table1() else 1)

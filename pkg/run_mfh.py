#!/usr/bin/env python3
"""
MFH Toolkit - Main Launcher
Sets up the src/ path and hands the arguments to the CLI
"""
import sys
from pathlib import Path

# Get project root directory
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT / 'src'))

# Fix encoding for Windows
if sys.stdout.encoding and sys.stdout.encoding.lower() != 'utf-8':
    import io
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')


def main():
    """Main entry point"""
    # Import after path is set
    from config import validate_config
    from errors import ConfigurationError
    from commands.cli import EXIT_CONFIG, main as cli_main

    try:
        validate_config()
    except ConfigurationError as e:
        print(f"[FAIL] {e}")
        return EXIT_CONFIG
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n[STOP] Interrupted by user")
        sys.exit(130)

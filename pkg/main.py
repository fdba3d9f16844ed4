"""
LorentzEig - Main Application
Lorentz cone spectra of 2x2 matrices and their linear preservers
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import run


def main():
    """Main entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()

"""
LorentzEig - System Verification Script
Verifies that all components are installed, configured and produce the
known spectra of the basis matrices
"""

import sys
from pathlib import Path
import importlib


def check_file_structure():
    """Verify project file structure"""
    print("Checking file structure...")

    required_files = [
        'main.py',
        'requirements.txt',
        'README.md',
        'config/config.yaml',
        'src/core.py',
        'src/lorentz_spectrum.py',
        'src/oracle.py',
        'src/preserver.py',
        'src/pareto_bridge.py',
        'src/cli.py',
        'utils/helpers.py'
    ]

    missing = []
    for file in required_files:
        if not Path(file).exists():
            missing.append(file)
            print(f"  ❌ Missing: {file}")
        else:
            print(f"  ✅ {file}")

    if missing:
        print(f"\n❌ Missing {len(missing)} files")
        return False

    print("\n✅ All files present")
    return True


def check_dependencies():
    """Check if required Python packages are installed"""
    print("\nChecking dependencies...")

    required_packages = {
        'numpy': 'numpy',
        'yaml': 'pyyaml',
        'dotenv': 'python-dotenv',
        'loguru': 'loguru',
        'colorama': 'colorama',
        'tqdm': 'tqdm'
    }

    missing = []
    for module, package in required_packages.items():
        try:
            importlib.import_module(module)
            print(f"  ✅ {package}")
        except ImportError:
            print(f"  ❌ {package} not installed")
            missing.append(package)

    if missing:
        print(f"\n❌ Missing packages: {', '.join(missing)}")
        print("Run: pip install -r requirements.txt")
        return False

    print("\n✅ All dependencies installed")
    return True


def check_modules():
    """Check if project modules can be imported"""
    print("\nChecking project modules...")

    sys.path.insert(0, str(Path(__file__).parent))

    modules = [
        'src.core',
        'src.lorentz_spectrum',
        'src.oracle',
        'src.preserver',
        'src.pareto_bridge',
        'src.cli',
        'utils.helpers'
    ]

    failed = []
    for module in modules:
        try:
            importlib.import_module(module)
            print(f"  ✅ {module}")
        except Exception as e:
            print(f"  ❌ {module}: {str(e)[:50]}")
            failed.append(module)

    if failed:
        print(f"\n❌ Failed to import {len(failed)} modules")
        return False

    print("\n✅ All modules imported successfully")
    return True


def check_configuration():
    """Check configuration file"""
    print("\nChecking configuration...")

    try:
        import yaml

        config_file = Path('config/config.yaml')
        if not config_file.exists():
            print("  ❌ config.yaml not found")
            return False

        with open(config_file, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}

        missing = []
        for section in ['system', 'tolerance', 'oracle', 'sampler',
                        'verification', 'output', 'logging']:
            if section in config:
                print(f"  ✅ {section}")
            else:
                print(f"  ❌ {section} section missing")
                missing.append(section)

        if missing:
            print(f"\n❌ Missing configuration sections: {', '.join(missing)}")
            return False

        from utils.helpers import tolerance_from_config
        tol = tolerance_from_config(config)
        print(f"  ✅ tolerances eq={tol.eq_tol:g} set={tol.set_tol:g} cone={tol.cone_tol:g}")

        print("\n✅ Configuration file valid")
        return True

    except Exception as e:
        print(f"  ❌ Error reading config: {e}")
        return False


def run_quick_test():
    """Compare the basis matrices against their known spectra"""
    print("\nRunning golden spectra test...")

    try:
        sys.path.insert(0, str(Path(__file__).parent))

        from src.core import E11, E12, E21, E22, H
        from src.lorentz_spectrum import l_spectrum
        from src.oracle import oracle_spectrum

        golden = {
            'E11': (E11, [0.0]),
            'E12': (E12, [-0.5]),
            'E21': (E21, [0.0, 0.5]),
            'E22': (E22, [0.5, 1.0]),
            'E12+E21': (H, [-1.0, 1.0])
        }

        ok = True
        for name, (A, expected) in golden.items():
            values = l_spectrum(A).values()
            found = oracle_spectrum(A).values()
            agree = (len(values) == len(expected)
                     and all(abs(v - e) <= 1e-9 for v, e in zip(values, expected))
                     and len(found) == len(values)
                     and all(abs(v - f) <= 1e-6 for v, f in zip(values, found)))
            print(f"  {'✅' if agree else '❌'} {name}: {values}")
            ok = ok and agree

        if not ok:
            print("\n❌ Golden spectra mismatch")
            return False

        print("\n✅ All core components functional")
        return True

    except Exception as e:
        print(f"  ❌ Test failed: {e}")
        return False


def main():
    """Main verification function"""
    print("=" * 70)
    print("LORENTZEIG SYSTEM VERIFICATION")
    print("=" * 70)

    checks = [
        ("File Structure", check_file_structure),
        ("Dependencies", check_dependencies),
        ("Project Modules", check_modules),
        ("Configuration", check_configuration),
        ("Golden Spectra", run_quick_test)
    ]

    results = {}
    for name, check_func in checks:
        print(f"\n{'=' * 70}")
        print(f"Check: {name}")
        print('=' * 70)
        results[name] = check_func()

    print("\n" + "=" * 70)
    print("VERIFICATION SUMMARY")
    print("=" * 70)

    for name, passed in results.items():
        status = "✅ PASSED" if passed else "❌ FAILED"
        print(f"{name:.<50} {status}")

    all_passed = all(results.values())

    print("\n" + "=" * 70)
    if all_passed:
        print("✅ ALL CHECKS PASSED!")
        print("\nNext steps:")
        print("  1. Run: python main.py spectrum '0,0;1,0'")
        print("  2. Run: python main.py verify --random 100 --seed 42")
        print("  3. Check examples: python examples.py")
    else:
        print("❌ SOME CHECKS FAILED")
        print("\nRun: python setup.py to install missing components")

    return all_passed


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)

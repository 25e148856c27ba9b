#!/usr/bin/env python
"""
Environment check script to verify dependencies and laboratory settings.
"""
import os
import sys
import importlib
from dotenv import load_dotenv


def check_module(module_name):
    """Check if a Python module is installed."""
    try:
        importlib.import_module(module_name)
        return True
    except ImportError:
        return False


def check_settings():
    """Load the laboratory settings and report the effective values."""
    if os.path.exists(".env"):
        load_dotenv()

    from config import settings

    names = [
        "SEARCH_MAX_N",
        "SEARCH_HARD_MAX_N",
        "WITNESS_CAP",
        "META_CLIQUE_BUDGET",
        "DEFAULT_SEED",
        "DEFAULT_WORKERS",
        "DEFAULT_TRIALS",
        "LOG_LEVEL",
        "SHOW_PROGRESS",
    ]
    return {name: getattr(settings, name) for name in names}


def print_result(name, status, message=None):
    """Print a formatted check result."""
    status_str = "OK  " if status else "FAIL"

    if message:
        print(f"{status_str} {name}: {message}")
    else:
        print(f"{status_str} {name}")


def main():
    """Run checks to verify environment setup."""
    print("K_r-Bootstrap Percolation Laboratory - Environment Check")
    print("=" * 60)

    py_version = sys.version.split()[0]
    is_compatible = sys.version_info >= (3, 10)
    print_result(
        "Python version",
        is_compatible,
        f"{py_version} {'(Compatible)' if is_compatible else '(Incompatible - need 3.10+ for int.bit_count)'}"
    )

    required_modules = [
        "dotenv",
        "pydantic",
        "numpy",
        "joblib",
        "tqdm",
        "colorama",
        "pytest",
    ]

    print("\nChecking required packages:")
    missing_modules = []
    for module in required_modules:
        is_installed = check_module(module)
        if not is_installed:
            missing_modules.append(module)
        print_result(f"  {module}", is_installed)

    print("\nEffective settings:")
    settings_ok = True
    try:
        for name, value in check_settings().items():
            print(f"  {name} = {value}")
    except (ImportError, ValueError) as e:
        settings_ok = False
        print_result("Settings", False, str(e))

    print("\nChecking directory structure:")
    directories = [
        "config",
        "src/graphs",
        "src/percolation",
        "src/families",
        "src/analysis",
        "src/search",
        "src/simulation",
        "src/utilities",
        "tests",
    ]

    missing_dirs = []
    for directory in directories:
        exists = os.path.isdir(directory)
        if not exists:
            missing_dirs.append(directory)
        print_result(f"  {directory}", exists)

    print("\n" + "=" * 60)
    if missing_modules or missing_dirs or not settings_ok:
        print("FAIL Environment setup incomplete. Please address the issues above.")
        return 1
    else:
        print("OK   Environment setup complete!")
        print("\nTry these commands:")
        print("  - Close a graph: python percolate.py close --r 4 --graph \"4 5;0 1;0 2;0 3;1 2;1 3\"")
        print("  - Build H_t: python percolate.py gen ht --r 5 --t 3")
        print("  - Search: python percolate.py search taumax --n 6 --r 4")
        return 0


if __name__ == "__main__":
    sys.exit(main())

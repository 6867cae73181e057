#!/usr/bin/env python3
"""
Pre-flight Check Script for laman-lcontact
Catches missing packages, broken configuration and import errors before a run
"""

import sys
from importlib import import_module
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent

# (module, minimum major version, what it is needed for)
PACKAGES = [
    ('pandas', 2, 'timing and batch tables'),
    ('networkx', 3, 'topological ranks, cycles, biconnectivity'),
    ('shapely', 2, 'representation validator'),
    ('hypothesis', 6, 'property tests'),
]

CORE_MODULES = ['plane_graph', 'laman', 'henneberg', 'angular', 'labeling', 'lcontact',
                'validator', 'pipeline', 'config_loader', 'main_enhanced']

errors = []
warnings = []
info = []


def check_python_version():
    """Python 3.8 or newer"""
    version = sys.version_info
    found = f"{version.major}.{version.minor}.{version.micro}"
    if version < (3, 8):
        errors.append(f"Python 3.8+ required, found {found}")
    else:
        info.append(f"✓ Python {found}")


def check_dependencies():
    """Every package in requirements.txt imports at a supported version"""
    missing = []
    for name, major, purpose in PACKAGES:
        try:
            module = import_module(name)
        except ImportError:
            missing.append(name)
            continue
        version = getattr(module, '__version__', '0')
        if int(version.split('.')[0]) < major:
            errors.append(f"{name} {major}.x+ needed for {purpose}, found {version}")
        else:
            info.append(f"✓ {name} {version} ({purpose})")

    if missing:
        errors.append(f"Missing packages: {', '.join(missing)}; run pip install -r requirements.txt")


def check_project_structure():
    """Source modules exist and data/output is available"""
    absent = [m for m in CORE_MODULES if not (PROJECT_ROOT / 'src' / f"{m}.py").exists()]
    if absent:
        errors.append(f"Missing source modules: {', '.join(absent)}")
    else:
        info.append(f"✓ {len(CORE_MODULES)} source modules present")

    output_dir = PROJECT_ROOT / 'data' / 'output'
    if not output_dir.exists():
        output_dir.mkdir(parents=True, exist_ok=True)
        warnings.append("Created data/output")


def check_configuration():
    """config/ loads without validation errors"""
    sys.path.insert(0, str(PROJECT_ROOT))
    if not (PROJECT_ROOT / "config").exists():
        info.append("✓ No config/ folder, defaults apply")
    try:
        from src.config_loader import ConfigLoader
        loader = ConfigLoader()
        if loader.load():
            info.append("✓ Configuration valid")
        errors.extend(f"Configuration: {error}" for error in loader.errors)
    except Exception as e:
        errors.append(f"Configuration could not load: {e}")


def check_imports():
    """Core modules import and the base triangle builds"""
    sys.path.insert(0, str(PROJECT_ROOT))
    try:
        for name in CORE_MODULES:
            import_module(f"src.{name}")
        from src.henneberg import random_sequence
        random_sequence(3, seed=1)
        info.append("✓ Core modules import, base triangle builds")
    except Exception as e:
        errors.append(f"Import check failed: {type(e).__name__}: {e}")


def print_results() -> bool:
    print("\n" + "=" * 60)
    print("🔍 LAMAN L-CONTACT - PRE-FLIGHT CHECK")
    print("=" * 60)

    for title, messages in (("✅ PASSED", info), ("⚠️  WARNINGS", warnings), ("❌ ERRORS", errors)):
        if messages:
            print(f"\n{title}:")
            for msg in messages:
                print(f"  {msg}")

    if errors:
        print("\n🛑 Fix the errors above before drawing")
    else:
        print("\n🎉 Ready. Try: python main.py generate --n 10 --out g.json")
    print("=" * 60 + "\n")
    return not errors


def main():
    """Run all checks"""
    check_python_version()
    check_dependencies()
    check_project_structure()
    check_configuration()
    if not errors:
        check_imports()

    sys.exit(0 if print_results() else 1)


if __name__ == "__main__":
    main()

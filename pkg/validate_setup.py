#!/usr/bin/env python3
"""
Setup Validator

Checks that the runtime packages import, that the engine modules load with
the current configuration, and that the worked examples reproduce before the
full suites are run.
"""

import os
import sys

from dotenv import load_dotenv


def main():
    """Validate setup"""
    print("🔧 Validating setup for HOCA Mobility")
    print("=" * 55)

    load_dotenv()

    if not os.path.exists('.env'):
        print("⚠️  .env file not found; using built-in defaults")
    else:
        print("✅ .env file found")

    if hasattr(sys, 'real_prefix') or (hasattr(sys, 'base_prefix') and sys.base_prefix != sys.prefix):
        print("✅ Running in virtual environment")
    else:
        print("⚠️  Not in virtual environment")

    print("\n📦 Testing package imports...")

    try:
        import numpy
        print(f"✅ NumPy {numpy.__version__} imported successfully")
    except ImportError:
        print("❌ NumPy import failed")
        return False

    try:
        import dotenv
        print("✅ python-dotenv imported successfully")
    except ImportError:
        print("❌ python-dotenv import failed")
        return False

    print("\n🚀 Testing engine import...")
    try:
        import config
        import cli
        print("✅ Engine modules imported successfully")
        print(f"✅ Seed {config.DEFAULT_SEED}, output format {config.OUTPUT_FORMAT}, log level {config.LOG_LEVEL}")
    except Exception as e:
        print(f"❌ Engine import failed: {e}")
        return False

    print("\n🧪 Running the worked examples...")
    from paper_examples import run_paper_examples

    report = run_paper_examples()
    if report["failed"]:
        for name in report["failed"]:
            print(f"❌ {name}")
        return False
    print(f"✅ {report['passed']} worked examples reproduced in {report['seconds']}s")

    print("\n" + "=" * 55)
    print("✅ All validation checks passed!")
    print("\nNext steps:")
    print("   python run_tests.py")
    print("   or")
    print("   python -m pytest -m 'not slow'")

    return True


if __name__ == '__main__':
    success = main()
    sys.exit(0 if success else 1)

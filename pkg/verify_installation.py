"""
dlp-qubo Installation Verification Script
Run this script to verify your environment is properly configured.
"""

import sys
import os


def print_header(text):
    """Print formatted header."""
    print("\n" + "=" * 70)
    print(f"  {text}")
    print("=" * 70 + "\n")


def check_python_version():
    """Check Python version."""
    print("✓ Checking Python version...")
    version = sys.version_info
    if version.major >= 3 and version.minor >= 10:
        print(f"  ✅ Python {version.major}.{version.minor}.{version.micro} - OK")
        return True
    else:
        print(f"  ❌ Python {version.major}.{version.minor}.{version.micro} - Need 3.10+")
        return False


def check_dependencies():
    """Check required packages."""
    print("\n✓ Checking dependencies...")

    required = {
        'numpy': 'numpy',
        'scipy': 'scipy',
        'dimod': 'dimod',
        'neal': 'dwave-neal',
        'pandas': 'pandas',
        'plotly': 'plotly',
        'pydantic': 'pydantic',
        'dotenv': 'python-dotenv',
        'pytest': 'pytest',
        'hypothesis': 'hypothesis',
    }

    all_ok = True
    for module_name, package in required.items():
        try:
            __import__(module_name)
            print(f"  ✅ {package} - OK")
        except ImportError:
            print(f"  ❌ {package} - NOT FOUND")
            all_ok = False

    return all_ok


def check_settings():
    """Check DLPQ_* settings (optional .env file)."""
    print("\n✓ Checking settings...")

    if os.path.exists('.env'):
        print("  ✅ .env file found")
    else:
        print("  ℹ️  No .env file; using built-in defaults (see .env.example)")

    try:
        from config.settings import settings
        settings.validate()
        print("  ✅ Settings valid")
        return True
    except ValueError as e:
        print(f"  ❌ {str(e)}")
        return False


def check_worked_example():
    """Run the GF(2^3) worked example end to end."""
    print("\n✓ Running GF(2^3) example (h = 110)...")

    try:
        from field.normal_basis import NbElement, build_field
        from reduction.dlp_transform import DlpInstance, decode_solution, transform
        from solver.qubo_solver import exhaustive_solve

        fp = build_field(3)
        result = transform(DlpInstance(fp, NbElement.from_display_string('110')))
        solved = exhaustive_solve(result.qubo)
        exponents = sorted({decode_solution(a, result) for a in solved.best_assignments})

        if solved.best_energy == 0 and exponents == [5]:
            print(f"  ✅ y=5 recovered from a {result.qubo.num_vars}-variable QUBO")
            return True
        print(f"  ❌ Unexpected result: energy {solved.best_energy}, exponents {exponents}")
        return False
    except Exception as e:
        print(f"  ❌ Error running example: {str(e)}")
        return False


def check_project_structure():
    """Check all required files exist."""
    print("\n✓ Checking project structure...")

    required_files = [
        'app.py',
        'requirements.txt',
        'README.md',
        'config/settings.py',
        'config/solver_config.py',
        'field/gf2_poly.py',
        'field/normal_basis.py',
        'reduction/pseudo_boolean.py',
        'reduction/dlp_transform.py',
        'solver/qubo_solver.py',
        'solver/qubo_io.py',
        'solver/executor.py',
        'analytics/verify_stats.py',
        'analytics/report.py',
        'cli/run_config.py',
        'cli/commands.py',
        'utils/logger.py',
        'utils/helpers.py',
        'utils/validators.py',
    ]

    all_present = True
    for file_path in required_files:
        if os.path.exists(file_path):
            print(f"  ✅ {file_path}")
        else:
            print(f"  ❌ {file_path} - MISSING")
            all_present = False

    return all_present


def main():
    """Run all verification checks."""
    print_header("dlp-qubo Installation Verification")

    checks = {
        "Python Version": check_python_version(),
        "Dependencies": check_dependencies(),
        "Project Structure": check_project_structure(),
    }

    # The example needs the numeric stack
    if checks["Dependencies"]:
        checks["Settings"] = check_settings()
        checks["Worked Example"] = check_worked_example()

    # Summary
    print_header("Verification Summary")

    for check_name, result in checks.items():
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"  {check_name}: {status}")

    print("\n")

    if all(checks.values()):
        print("🎉 All checks passed! You're ready to run the toolkit.")
        print("\nNext steps:")
        print("  1. Run: python app.py e2e --n 3 --h-nb 110")
        print("  2. Run: pytest")
    else:
        print("⚠️  Some checks failed. Please fix the issues above.")
        print("\nHelp:")
        print("  - pip install -r requirements.txt")
        print("  - Check .env.example for the DLPQ_* settings")

    return 0 if all(checks.values()) else 1


if __name__ == "__main__":
    sys.exit(main())

# backend/utils/__init__.py
"""
lorentz-check utilities: Lorentz quasi-norms of simple functions and
sequences, embedding constants, and the harness plumbing around them
"""

# Version info
__version__ = "1.0.0"

REQUIRED_PACKAGES = {
    'numpy': 'numpy',
    'marshmallow': 'marshmallow',
    'python-dotenv': 'dotenv',
    'tqdm': 'tqdm',
}


def check_dependencies():
    """Check if all required dependencies are available"""
    missing = []

    for package, module in REQUIRED_PACKAGES.items():
        try:
            __import__(module)
        except ImportError:
            missing.append(package)

    if missing:
        return {"status": "missing_dependencies", "missing": missing}
    return {"status": "all_dependencies_available"}

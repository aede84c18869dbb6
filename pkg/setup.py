from setuptools import setup

setup(
    name="hoca-mobility",
    version="1.0.0",
    description="Exact F2 algebra for HOCA-generated symmetry-enriched toric codes: mobility, fusion and brute-force verification",
    py_modules=[
        "cli",
        "config",
        "errors",
        "fusion",
        "gf2",
        "hoca",
        "mobility",
        "oracle",
        "paper_examples",
        "pauli",
        "polyring",
    ],
    install_requires=[
        "numpy>=1.21.0",
        "python-dotenv>=0.19.0",
    ],
    entry_points={
        "console_scripts": [
            "hoca-mobility=cli:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)

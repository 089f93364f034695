from setuptools import setup, find_packages

setup(
    name="group_geometry",
    version="0.1",
    packages=find_packages(exclude=("tests", "benchmarks", "examples*")),
    install_requires=[
        "numpy",
        "sympy",
    ],
    entry_points={
        "console_scripts": [
            "grpgeo=src.main:main",
        ],
    },
)

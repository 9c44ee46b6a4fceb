from setuptools import setup, find_packages

setup(
    name="pid-treedepth",
    version="0.1.0",
    description="Exact treedepth solver using positive-instance driven dynamic programming",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "rich>=13.0.0",
        "click>=8.0.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.0",
            "networkx>=3.0",
        ],
    },
    entry_points={"console_scripts": ["pid-treedepth=pid_treedepth.cli:main"]},
    python_requires=">=3.10",
    classifiers=[
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
    ],
)

from setuptools import setup, find_packages

setup(
    name="kleislikit",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    package_data={
        "kleislikit": ["data/*.json"],
        "kleislikit.pseudomonadkit": ["fixtures/*.pexpr"],
        "kleislikit.abskl2": ["fixtures/*.pexpr"],
    },
    install_requires=[
        "jsonschema",
    ],
    entry_points={
        "console_scripts": ["kleislikit = kleislikit.cli.main:main"],
    },
    description="Finite checker for abstract Kleisli structures in dimensions one and two.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
)

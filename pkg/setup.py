from pathlib import Path

from setuptools import find_packages, setup

install_requires = [
    "pydantic>=1.9.0,<2",
    "typer<0.16",
    "click<8.2",
    "rich",
    "fsspec>=2021.7.0",
    "pyyaml",
    "sympy>=1.9",
    "typing_extensions",
]

tests = [
    "pytest",
    "pytest-cov",
    "hypothesis>=6",
    "pylint<2.14",
    # we use this to suppress pytest-related false positives in our tests.
    "pylint-pytest",
]

extras = {
    "tests": tests,
}

extras["all"] = [_ for e in extras.values() for _ in e]

setup_args = dict(  # noqa: C408
    name="truncbt",
    use_scm_version=True,
    setup_requires=["setuptools_scm", "fastentrypoints>=0.12"],
    description="Invariants of truncated Barsotti-Tate groups: "
    "Kraft forms, Newton polygons and group-action orbits",
    long_description=(Path(__file__).parent / "README.md").read_text(
        encoding="utf8"
    ),
    long_description_content_type="text/markdown",
    license="Apache License 2.0",
    install_requires=install_requires,
    extras_require=extras,
    keywords="p-divisible groups dieudonne modules witt vectors"
    " newton polygons group actions",
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude=["tests*"]),
    include_package_data=True,
    entry_points={
        "console_scripts": ["truncbt = truncbt.cli:app"],
    },
    zip_safe=False,
)

if __name__ == "__main__":
    setup(**setup_args)

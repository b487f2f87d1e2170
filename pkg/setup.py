from setuptools import setup, find_packages

setup(
    name="annulus-cover",
    version="1.0.0",
    packages=find_packages(exclude=["UnitTest", "UnitTest.*", "examples", "examples.*"]),
    package_data={"annulus_cover": ["templates/*.j2"]},
    python_requires=">=3.8",
    install_requires=[
        "pydantic",
        "pydantic-settings",
        "python-dotenv",
        "filelock",
        "jinja2",
        "tabulate",
    ],
    entry_points={
        "console_scripts": ["annulus-cover=annulus_cover.cli:main"],
    },
)

from setuptools import setup, find_packages

try:
    with open("README.md", "r", encoding="utf-8") as fh:
        long_description = fh.read()
except FileNotFoundError:
    long_description = "Simulation and control of a cable slung between two quadrotors"

try:
    with open("requirements.txt", "r", encoding="utf-8") as fh:
        requirements = [
            line.strip() for line in fh
            if line.strip() and not line.startswith("#") and not line.startswith("pytest")
        ]
except FileNotFoundError:
    requirements = [
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "pandas>=2.0.0",
        "matplotlib>=3.7.0",
        "pydantic>=2.0.0",
        "PyYAML>=6.0",
        "python-dotenv>=1.0.0",
        "coloredlogs>=15.0",
    ]

setup(
    name="catenary-robot",
    version="1.0.0",
    author="Catenary Robot Team",
    author_email="team@catenary-robot.example.com",
    description="Simulation and control of a cable slung between two quadrotors",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/catenary-robot",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={
        "console_scripts": [
            "catenary-robot=catenary_robot.main:main",
        ],
    },
    include_package_data=True,
    package_data={
        "": ["*.md", "*.env.example"],
    },
)

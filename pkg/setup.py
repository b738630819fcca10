from setuptools import find_packages, setup

with open("requirements.txt", "r") as f:
    required_packages = [
        line for line in f.read().splitlines() if line and not line.startswith("#")
    ]

setup(
    name="qkrls-prognostics",
    version="0.1",
    packages=find_packages(include=["app", "app.*"]),
    install_requires=required_packages,
    entry_points={
        "console_scripts": [
            "qkrul=app.main:main",
        ],
    },
)

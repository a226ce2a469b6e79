from setuptools import setup,find_packages

def get_version() -> str:
    with open("mcpcast/version.py","r") as foo:
        version = foo.read().split("=")[-1].replace("'","").strip()
    return version

# load long description
with open("README.md", "r") as foo:
    long_description = foo.read()

# load requirements
with open("requirements.txt", "r") as foo:
    requirements = [line for line in foo.read().split("\n") if line.strip()]

# load docs requirements
with open("docs/requirements.txt", "r") as foo:
    docs_require = [line for line in foo.read().split("\n") if line.strip()]

test_require = [
    "pytest",
    "pytest-pylint",
    "pytest-cov"
]

extras_require = {
    "test": test_require,
    "docs": docs_require,
    "dev": test_require + docs_require,
    "all": test_require + docs_require,
}

setup(
    # package name `pip install mcpcast`
    name="mcpcast",
    # package version `major.minor.patch`
    version=get_version(),
    # small description
    description="Day-ahead electricity price forecasting with simulated market clearing prices",
    # long description
    long_description=long_description,
    # content type of long description
    long_description_content_type="text/markdown",
    # package license
    license='MIT',
    # package root directory
    packages=find_packages(exclude=["tests", "tests.*"]),

    # requirements
    install_requires=requirements,

    # extra requirements
    extras_require=extras_require,

    # command line entry point
    entry_points={
        "console_scripts": ["mcpcast=mcpcast.cli:main"]
    },

    include_package_data=True,
    package_data={"mcpcast": ["registry.yaml"]},
    # keywords that resemble this package
    keywords=["pytorch_lightning", "electricity price forecasting", "LASSO", "energy system model"],
    zip_safe=False,
    # classifiers for the package
    classifiers=[
        'Environment :: Console',
        'Natural Language :: English',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8'
    ]
)

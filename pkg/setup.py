from setuptools import setup, find_packages

DESCRIPTION = "forge builds finite witnesses for groups arising in dynamics " \
              "and verifies them in exact arithmetic"

LONG_DESCRIPTION = """
forge constructs finite approximations of infinite groups from dynamics
and checks every defining inequality and identity exactly, with integer
and rational arithmetic only.

forge provides pipelines for
* Sofic witnesses - finite maps which are almost multiplicative and far from
  the identity in normalized Hamming distance, and their amplification by
  tensor powers
* Compressed witnesses - sections of groups into the full group of the dyadic
  odometer, evaluated on the cyclic models Z_{2^n}
* LEF witnesses - exact permutation models of balls in topological full groups
  of minimal substitution subshifts
* Lamplighter embeddings - local embeddings of generalized lamplighter groups
  over Schreier graphs of free products of order two groups

Each pipeline writes a machine readable report in which every value is an
exact rational.
"""

setup(
    name='forge',
    version="2026.10.19",
    packages=find_packages(),
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    install_requires=["numpy>=1.18",
                      "networkx>=2.2",
                      "pandas>=0.24.2",
                      "monty>=3.0.2",
                      "autologging",
                      "docopt==0.6.2",
                      "tqdm",
                      ],
    extras_require={
        "tests": ["pytest",
                  "hypothesis",
                  "coverage",
                  "pylint",
                  "invoke"]
    },
    entry_points={
        "console_scripts": [
            "forge = forge.pipelines.runner:main"
        ]
    },
    classifiers=[
          "Programming Language :: Python :: 3",
          "License :: OSI Approved :: Apache Software License",
          "Operating System :: OS Independent",
    ],
    package_data={
        "forge": ["data/*.json", "data/*.txt", "data/*.dyadic",
                  "tests/test_files/*"],
    },
    include_package_data=True,
    license="Apache",
    keywords=[
        "group theory", "sofic groups", "symbolic dynamics",
        "substitution subshift", "full group", "Schreier graph",
        "lamplighter", "exact arithmetic"
    ],
    )

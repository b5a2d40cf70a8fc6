import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="teachlab",
    version="0.1.0",
    description="Exact teaching-dimension computations: TD, RTD, no-clash teaching, tournaments and Johnson-graph extremal search.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    classifiers=[
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    python_requires='>=3.10',
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.9',
        'networkx>=2.8',
    ],
    entry_points={
        'console_scripts': [
            'teachlab=teachlab.cli:main',
        ],
    },
)

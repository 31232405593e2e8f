"""linz-monomialdynamics setup module
"""

# Always prefer setuptools over distutils
from setuptools import setup, find_packages
# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'DESCRIPTION.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='linz-monomialdynamics',

    # Versions should comply with PEP440.
    version='1.0.0',

    description='LINZ.MonomialDynamics module - fixed point analysis of Boolean monomial systems',
    long_description=long_description,

    license='GPL',

    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'Programming Language :: Python :: 3',
    ],

    keywords='boolean networks dynamical systems graphs',

    packages=find_packages(exclude=['tests']),

    python_requires='>=3.8',

    # numpy for boolean matrix powers and state tables, networkx for the
    # dependency graph components, graphviz for DOT output
    install_requires=['numpy', 'networkx', 'graphviz'],

    # $ pip install -e .[test]
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },

    package_data={
    },

    entry_points={
        'console_scripts': [
            'monomialsystem=LINZ.MonomialDynamics.AnalyseSystem:main',
        ],
    },
)

"""
CAPTL
-----

Synthesis of context-switching protocols for probabilistic temporal
requirements over Markov decision processes.

A requirement is a graph of objectives (``Pmax``/``Pmin`` PCTL path
formulas) whose edges, the contexts, fire once the optimal probability
of the active objective falls into an interval. Two procedures are
provided: a general state-by-state synthesis and an exact one for
persistence requirements (``F G`` objectives with contexts covering an
initial segment of probabilities), which builds the product of the
model with the requirement and solves it as a Markov chain.

Links
`````

* `documentation <docs/index.rst>`_

"""
from setuptools import setup


setup(
    name='CAPTL',
    version='0.1.0',
    license='BSD',
    description='Protocol synthesis for context-aware probabilistic '
                'temporal logic requirements',
    long_description=__doc__,
    packages=['captl', 'captl.engine', 'captl.synthesis',
              'captl.casestudies'],
    package_data={'captl': ['templates/*.dot', 'templates/*.captl']},
    include_package_data=True,
    zip_safe=False,
    platforms='any',
    install_requires=[
        'numpy>=1.17',
        'networkx>=2.4',
        'lark>=1.1',
        'click>=8.0',
        'Jinja2>=2.11',
        'WTForms>=2.2',
    ],
    entry_points={
        'console_scripts': ['captl = captl.cli:main'],
    },
    test_suite='test_captl.suite',
    tests_require=[],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules'
    ]
)

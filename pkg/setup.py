from setuptools import setup, find_packages
from codecs import open
from os import path

"""
Release instruction:

Update changelog.

Check that tests run correctly and doc compiles without warning (make clean
first).

change __version__ in setup.py to new version name.

First upload to test pypi:
    mktmpenv (Python version should not matter)
    pip install twine
    python setup.py sdist
    twine upload dist/blabla.tar.gz -r testpypi

Check that install works on testpypi, then upload to pypi and check again.
to install from testpypi:
pip install --index-url https://test.pypi.org/simple/ --extra-index-url https://pypi.org/simple metalidar  # noqa
Doesn't hurt to check that the tests pass after installing from testpypi, and
that `metalidar verify` exits with 0.

push new release tag (commit last changes first if needed):
    git tag vX.Y.Z
    git push --tags
"""

__version__ = '0.1.0'

here = path.abspath(path.dirname(__file__))

# Get the long description from README.md
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# get the dependencies and installs
with open(path.join(here, 'requirements.txt'), encoding='utf-8') as f:
    all_reqs = f.read().split('\n')

install_requires = [x.strip() for x in all_reqs
                    if x.strip() and 'git+' not in x]
dependency_links = [x.strip().replace('git+', '')
                    for x in all_reqs if x.startswith('git+')]

setup(
    name='metalidar',

    description=('Simulation and processing of a metasurface enhanced '
                 'acousto-optic beam steering lidar.'),
    long_description=long_description,
    long_description_content_type='text/markdown',

    version=__version__,

    license='BSD-3-Clause',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python :: 3',
    ],
    keywords='lidar time-of-flight metasurface acousto-optic beam steering',

    python_requires='>=3.8',
    packages=find_packages(exclude=['tests*', 'examples*']),
    package_data={'metalidar': ['data/*.ini']},
    include_package_data=True,
    install_requires=install_requires,
    dependency_links=dependency_links,

    entry_points={'console_scripts':
                  ['metalidar = metalidar.__main__:main']},
)

# -*- coding: utf-8 -*-

from setuptools import setup, find_packages


setup(
    name='qmcforge',
    version='0.1',
    packages=find_packages(exclude=['*.tests']),
    author='The qmcforge developers',
    license='BSD',
    description='Component-by-component construction and error bound '
                'certificates for lattice and polynomial lattice rules',
    install_requires=['Trac >= 1.6', 'numpy'],
    entry_points = {
        'console_scripts': ['qmcforge = qmcforge.cli:main'],
        'trac.plugins': ['qmcforge = qmcforge']},
    test_suite = 'qmcforge.tests.test_suite',
    tests_require = [],
    )

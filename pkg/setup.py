from setuptools import find_packages, setup

setup(
    name='nilkit',
    version='0.1.0dev',
    packages=find_packages(exclude=('tests', 'tests.*')),
    license='MIT License',
    long_description=open('README.md').read(),
    install_requires=[
        'numpy>=1.17',
        'matplotlib>=3.1',
        'python-dateutil>=2.6.1',
        'gtimer>=1.0.0b5',
        'tabulate>=0.8',
        'sympy>=1.5',
    ],
    extras_require={
        'test': ['pytest>=6', 'hypothesis>=5'],
    },
    entry_points={
        'console_scripts': ['nilkit=nilkit.launchers.cli:main_entry'],
    },
)

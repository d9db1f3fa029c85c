from setuptools import setup, find_packages

console_scripts = [
    'tcurve=trustcurve.cli:main',
]


package_data = {
    'trustcurve': ['data/*.curve'],
}

packages = find_packages('python')

install_requires = [
    'absl-py',
    'numpy',
    'pandas',
    'setuptools',
    'sympy',
    'tqdm',
]


setup(
    name='trustcurve',
    version='1.0',
    packages=packages,
    package_dir = {'': 'python'},
    package_data=package_data,
    install_requires=install_requires,
    entry_points = {
        'console_scripts': console_scripts
    }
)

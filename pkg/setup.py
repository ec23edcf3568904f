# Copyright (c) 2023 Celonis SE
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Setuptools for pinchcert."""
from setuptools import setup

from pinchcert import cli

if __name__ == "__main__":
    setup(
        name="pinchcert",
        version=cli.__version__,
        description=("Certificates for the quantitative claims behind holomorphic pinching results"),
        license="MIT License",
        packages=[
            "pinchcert.cli",
            "pinchcert.common",
            "pinchcert.curvature_lab",
            "pinchcert.fiber_harmonics",
            "pinchcert.lie_arith",
            "pinchcert.numeric_core",
            "pinchcert.thresholds",
        ],
        install_requires=["numpy>=1.22", "sympy>=1.11", "gmpy2>=2.1"],
        python_requires=">=3.9",
        entry_points="""
            [console_scripts]
            pinchcert=pinchcert.cli.main:main
        """,
    )

"""
Setup for the fusetree package
"""

import setuptools

if __name__ == "__main__":
    setuptools.setup()

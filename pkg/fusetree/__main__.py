"""
The main entry point for the fusetree package
"""

import sys

import fusetree.command as command

def main():
    """Handles commands

    :param none:

    :return none:
    """

    sys.exit(command.run())

if __name__ == "__main__":
    main()

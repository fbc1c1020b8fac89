""" Computes bounds on the exact quantum query complexity of weight decision
functions and certifies the padded exact algorithm.

Try 'python run.py -h' for more details.
"""

import sys

from weightdec.cli import main


if __name__ == "__main__":
    sys.exit(main())

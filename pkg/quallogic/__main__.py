import sys

from quallogic.cli import run

sys.exit(run())

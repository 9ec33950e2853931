import sys

from .shellio.cli import main

sys.exit(main())

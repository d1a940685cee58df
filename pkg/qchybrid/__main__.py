import sys

from .scenario.cli import main

sys.exit(main())

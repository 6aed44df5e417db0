import sys

from gmpideals.cli import main

sys.exit(main())

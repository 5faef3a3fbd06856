import sys

from adapted_basis.cli import main

sys.exit(main())

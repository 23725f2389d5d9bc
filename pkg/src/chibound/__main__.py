import sys

from chibound.cli import main

sys.exit(main())

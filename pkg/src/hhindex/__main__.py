import sys

from hhindex.cli import main

sys.exit(main())

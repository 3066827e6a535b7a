import sys

from ldoi.cli import main

sys.exit(main())

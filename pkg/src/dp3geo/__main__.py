import sys

from dp3geo.cli import main

sys.exit(main())

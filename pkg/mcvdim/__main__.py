import sys

from mcvdim.harness.cli import main

sys.exit(main())

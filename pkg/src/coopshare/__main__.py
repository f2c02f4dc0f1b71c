import sys

from coopshare.cli import main

sys.exit(main())

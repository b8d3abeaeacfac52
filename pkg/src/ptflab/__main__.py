import sys

from ptflab.cli import main

sys.exit(main())

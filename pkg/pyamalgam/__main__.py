import sys

from pyamalgam.cli import main

sys.exit(main())

import sys

from polyshadow.cli import main

sys.exit(main())

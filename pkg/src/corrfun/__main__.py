import sys

from corrfun.cli import main

sys.exit(main())

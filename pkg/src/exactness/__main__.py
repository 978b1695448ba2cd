import sys

from exactness.cli import main

sys.exit(main())

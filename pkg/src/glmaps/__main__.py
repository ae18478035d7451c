import sys

from glmaps.cli import main

sys.exit(main())

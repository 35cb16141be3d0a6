import sys

from kparallel.cli import main

sys.exit(main())

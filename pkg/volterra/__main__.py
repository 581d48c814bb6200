import sys

from volterra.cli import main

sys.exit(main())

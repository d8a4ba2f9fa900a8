import sys

from hymcmc.cli.main import main

sys.exit(main())

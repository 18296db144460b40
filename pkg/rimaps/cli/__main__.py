import sys

from rimaps.cli.Main import main

sys.exit(main())

import sys

from telefid.cli import main

sys.exit(main())

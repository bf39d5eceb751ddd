import sys

from grundy_lab.main import main

sys.exit(main())

import sys

from permres.main import main

sys.exit(main())

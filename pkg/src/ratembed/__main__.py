from ratembed.cli import main
import sys

sys.exit(main())

from subwordkit.cli import main
import sys
sys.exit(main())

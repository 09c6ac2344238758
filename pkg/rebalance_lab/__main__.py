"""Run the rebalance-lab command line interface."""
from .cli import main

raise SystemExit(main())

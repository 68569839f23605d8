"""Entry point for ``python -m kctapes``."""

from kctapes.cli import main

raise SystemExit(main())

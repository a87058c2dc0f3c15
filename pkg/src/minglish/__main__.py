"""Allow running the toolkit as ``python -m minglish``."""

from .cli import main

main()

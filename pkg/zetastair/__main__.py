# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""Run as ``python -m zetastair``."""
from .cli import main

if __name__ == "__main__":
    main()

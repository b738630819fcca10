#!/usr/bin/env python3
"""
QKRLS prognostics: remaining useful life estimation for turbofan engine fleets.
"""

from app.main import main

if __name__ == "__main__":
    main()

"""
Specify the pclc release version.
"""

__version__ = "0.3.0"

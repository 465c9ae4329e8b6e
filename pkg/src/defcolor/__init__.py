"""Defective 2-colourings of planar graphs without 3-, 4- and 6-cycles."""

__version__ = "0.1.0"

"""Exact arithmetic on the bielliptic surface

    (x^2 + 1) y^2 = (x^2 + 2) z^2 = 3(t^4 - 54 t^2 - 117 t - 243):
number fields, genus-one covers and their twists, 2-isogeny descent,
bounded point searches and zero-cycles."""

__version__ = "0.1.0"

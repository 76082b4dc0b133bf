"""Direct images of line bundles on families of nodal genus-one curves."""

__version__ = "0.1.0"

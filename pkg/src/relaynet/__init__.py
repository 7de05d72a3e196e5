"""Two-hop ZS/ZZ relay-interference networks: exact deterministic capacity
regions and codecs, Gaussian outer/inner bounds with gap certification, and
a one-dimensional lattice neutralization simulator."""

__version__ = "0.1.0"

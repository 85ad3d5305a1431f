"""Spectral sequences of cosimplicial chain complexes over GF(2), with
homotopy orbits e(Y) and the operations on their pages."""

from .cosimplicial import Conormalization, UniversalExample, conormalize, universal_example
from .homotopy_orbit import HomotopyOrbit, homotopy_orbit
from .specseq import SpectralSequence, WindowUnderflow, spectral_sequence

__all__ = [
    "Conormalization",
    "HomotopyOrbit",
    "SpectralSequence",
    "UniversalExample",
    "WindowUnderflow",
    "conormalize",
    "homotopy_orbit",
    "spectral_sequence",
    "universal_example",
]

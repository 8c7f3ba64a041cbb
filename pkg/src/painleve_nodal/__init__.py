"""Root lattices, Painleve chart atlases and Riccati loci.

Modules:

- :mod:`rootlat` -- root subsystems of E8, embeddings and lattice checks
- :mod:`atlas` -- chart atlases and vector fields for ~E7, ~E6, ~D4
- :mod:`flow` -- complex-time integration with chart switching
- :mod:`riccati` -- Riccati loci, their scalar equations and configurations
- :mod:`verify` -- numbered acceptance checks
"""

__version__ = "0.1.0"

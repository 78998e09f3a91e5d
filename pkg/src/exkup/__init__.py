"""Exact tensor-network evaluation of Kuperberg brackets and Hennings invariants.

The package is organised bottom-up:

* :mod:`exkup.scalars` and :mod:`exkup.tensor` provide exact sparse tensors and
  deterministic network contraction.
* :mod:`exkup.hopf`, :mod:`exkup.double` and :mod:`exkup.reps` build and verify
  finite-dimensional Hopf algebras, Drinfeld doubles and their representations.
* :mod:`exkup.heegaard` encodes Heegaard diagrams with link curves, the diagram
  moves, the bridge-gadget construction and surgery.
* :mod:`exkup.bracket` and :mod:`exkup.hennings` evaluate the invariants.
"""

from .errors import ArtifactError, InputError, ObstructionError, RelationViolated

__all__ = ["ArtifactError", "InputError", "ObstructionError", "RelationViolated"]
__version__ = "0.1.0"

"""Exact verification of the coincidence between codimension-(n+2) linear
sections of G(2, n+3) and zero loci of sections of Q(1) on G(2, n+2),
together with their enumerative invariants."""

__version__ = "0.1.0"

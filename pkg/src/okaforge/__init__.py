"""Construct and certify proper holomorphic immersions and embeddings of
punctured planes and punctured circular domains into C x C*."""

__version__ = "0.1.0"

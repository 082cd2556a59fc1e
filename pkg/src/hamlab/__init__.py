"""Hamiltonicity of digraphs and matched bipartite graphs near the Woodall and
Las Vergnas degree-sum thresholds."""

from __future__ import annotations

__version__ = "0.1.0"
